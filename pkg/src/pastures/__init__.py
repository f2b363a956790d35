"""Finite pastures and their limits and colimits, with brute-force certification."""

from .colimits import (
    UnitPartition,
    coequalizer,
    copair,
    coproduct,
    coset_partition,
    fibered_coproduct,
    flip_partition,
    initial_map,
    pushout_partition,
)
from .core import (
    CapacityError,
    MismatchError,
    Pasture,
    PastureError,
    StructureError,
    ValidationReport,
    Violation,
    f1pm,
    from_prime_field,
    krasner,
    sign_hyperfield,
    standard_family,
    validate_pasture,
)
from .limits import equalizer, fibered_product, lift_into, product, terminal_map
from .morphism import Morphism, compose, enumerate_homs, identity, is_isomorphic, validate_morphism
from .universal import (
    Cocone,
    Cone,
    Diagram,
    VerificationResult,
    check_colimit_cocone,
    check_limit_cone,
    colimit,
    limit,
)

__version__ = "0.1.0"
