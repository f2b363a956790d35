import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from pastures import is_isomorphic, krasner, sign_hyperfield
from pastures.cli import main
from pastures.io import parse_pasture

FIX = Path(__file__).parent / "fixtures"


def first(out):
    """The leading pasture document of a construction's output."""
    return parse_pasture(out.split("\n\n")[0])


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def _no_env_bound(monkeypatch):
    monkeypatch.delenv("PASTURES_MAX_SIZE", raising=False)


def test_validate_valid_file(capsys):
    code, out, _ = run(capsys, "validate", FIX / "f3.pasture")
    assert code == 0
    assert out.strip() == "pasture F3: valid"


def test_validate_broken_file(capsys):
    code, out, _ = run(capsys, "validate", FIX / "broken_no_zero_triple.pasture", FIX / "f2.pasture")
    assert code == 1
    assert "null-zero" in out and "pasture F2: valid" in out


def test_pushout_of_krasner_legs(capsys):
    leg = FIX / "k_leg.morphism"
    code, out, _ = run(capsys, "pushout", "--base", FIX / "f1pm.pasture", "--left", leg, "--right", leg)
    assert code == 0
    apex = first(out)
    assert apex.size == 2 and is_isomorphic(apex, krasner())
    assert "# fibered coproduct: 2 elements" in out


def test_hom_counts(capsys):
    code, out, _ = run(capsys, "hom", FIX / "f3.pasture", FIX / "sign.pasture")
    assert code == 0
    assert "0 morphisms" in out
    code, out, _ = run(capsys, "hom", "F1pm", "S")
    assert code == 0 and "# 1 morphisms F1pm -> S" in out
    assert "map 2 2" in out


def test_iso_exit_codes(capsys):
    assert run(capsys, "iso", FIX / "sign.pasture", "S")[0] == 0
    code, out, _ = run(capsys, "iso", "K", "F2")
    assert code == 1 and "not isomorphic" in out


def test_constructions(capsys, tmp_path):
    code, out, _ = run(capsys, "product", "S", "S")
    assert code == 0 and first(out).size == 5
    code, out, _ = run(capsys, "product")
    assert code == 0 and is_isomorphic(first(out), krasner())
    code, out, _ = run(capsys, "coproduct", "K", "K")
    assert code == 0 and is_isomorphic(first(out), krasner())
    doc = FIX / "parallel_sxs.doc"
    code, out, _ = run(capsys, "equalizer", "--f", "pi1", "--g", "pi2", "--lib", doc)
    assert code == 0 and is_isomorphic(first(out), sign_hyperfield())
    code, out, _ = run(capsys, "coequalizer", "--f", "pi1", "--g", "pi2", "--lib", doc)
    assert code == 0 and is_isomorphic(first(out), krasner())
    code, out, _ = run(capsys, "pullback", "--left", FIX / "s_to_k.morphism", "--right", FIX / "f3_to_k.morphism")
    assert code == 0 and first(out).size == 5
    target = tmp_path / "out.txt"
    code, out, _ = run(capsys, "limit", FIX / "pullback_s_k.doc", "--out", target)
    assert code == 0 and first(target.read_text()).size == 5
    assert "# limit: 5 elements" in out
    code, out, _ = run(capsys, "colimit", FIX / "pushout_f1pm.doc")
    assert code == 0 and is_isomorphic(first(out), krasner())


def test_base_must_match(capsys):
    code, _, err = run(capsys, "pushout", "--base", "S", "--left", FIX / "k_leg.morphism",
                       "--right", FIX / "k_leg.morphism")
    assert code == 2 and "does not start at" in err


def test_check_universal(capsys):
    code, out, _ = run(capsys, "check-universal", FIX / "pullback_s_k.doc")
    assert code == 0 and out.startswith("passed")
    code, out, _ = run(capsys, "check-universal", FIX / "parallel_sxs.doc", "--side", "colimit")
    assert code == 0


def test_check_universal_rejects_wrong_apex(capsys, tmp_path):
    legs = tmp_path / "legs.doc"
    legs.write_text(
        "morphism a K S\nmap 0 0\nmap 1 1\n\n"
        "morphism c K K\nmap 0 0\nmap 1 1\n"
    )
    code, _, err = run(capsys, "check-universal", FIX / "pullback_s_k.doc", "--apex", "K",
                       "--legs", "a", "a", "c", "--lib", legs)
    # a: K -> S does not commute with negation
    assert code == 1 and "leg a is not a morphism" in err
    code, out, _ = run(capsys, "check-universal", FIX / "pullback_s_k.doc", "--apex", "F1pm",
                       "--legs", "u", "u", "v", "--lib", _f1pm_legs(tmp_path))
    assert code == 1 and "FAIL probe" in out


def _f1pm_legs(tmp_path):
    p = tmp_path / "f1legs.doc"
    p.write_text("morphism u F1pm S\nmap 0 0\nmap 1 1\nmap 2 2\n\nmorphism v F1pm K\nmap 0 0\nmap 1 1\nmap 2 1\n")
    return p


def test_usage_and_capacity_errors(capsys, monkeypatch):
    assert run(capsys, "frobnicate")[0] == 2
    code, _, err = run(capsys, "validate", "no/such/file.pasture")
    assert code == 2 and "cannot find" in err
    code, _, err = run(capsys, "hom", "F5", "F5", "--max-size", "4")
    assert code == 2 and "capacity" in err
    monkeypatch.setenv("PASTURES_MAX_SIZE", "4")
    code, _, err = run(capsys, "hom", "F5", "F5")
    assert code == 2 and "capacity" in err
    code, _, err = run(capsys, "coproduct", "F5", "F5", "F5", "F5")
    assert code == 2 and "capacity" in err


def test_parse_error_exit(capsys, tmp_path):
    bad = tmp_path / "bad.pasture"
    bad.write_text("pasture F3 3\nmul 1 2 5\n")
    code, _, err = run(capsys, "validate", bad)
    assert code == 2 and "bad.pasture:2" in err


def test_show_is_canonical(capsys):
    code, out, _ = run(capsys, "show", FIX / "sign.pasture")
    assert code == 0
    assert out.splitlines()[:2] == ["pasture S 3", "names 0 1 -1"]


@pytest.mark.skipif(shutil.which("pastures") is None, reason="console script not installed")
def test_console_script():
    r = subprocess.run(["pastures", "validate", str(FIX / "f3.pasture")], capture_output=True, text=True)
    assert r.returncode == 0 and "valid" in r.stdout


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "pastures.cli", "hom", "F3", "S"], capture_output=True, text=True)
    assert r.returncode == 0 and "0 morphisms" in r.stdout
