"""Exact combinatorics of toroidal group compactifications seen as moduli of
framed bundle chains: root data, stacky fans, stability, Cox and Vinberg data."""

from .chain_moduli import (
    EquivariantChainClass,
    SplittingType,
    StabilityWitness,
    canonicalize,
    clutching,
    enumerate_stable,
    is_stable,
    moduli_report,
    same_chamber_witnesses,
)
from .cox import (
    CoxData,
    all_stabilizers_finite,
    cox_sequence,
    equivariant_quotient_dims,
    git_flags,
    irrelevant_collections,
    stratum_stabilizer,
    vanishing_allowed,
)
from .root_datum import (
    RootDatum,
    WeylElement,
    build_root_datum,
    is_dominant,
    longest_element,
    simple_reflection,
    to_dominant,
    torus,
    weyl_group,
    weyl_orbit,
)
from .stacky_fan import (
    StackyFan,
    apply_longest,
    classify,
    complete_cone,
    completion_details,
    is_polar,
    orbit_poset,
    stacky_fan,
    support_is_full_chamber,
    validate,
    w_support_convex,
)
from .vinberg import VinbergLatticeData, abelianization_data, beta_to_A, cox_vinberg_dims

__version__ = "0.1.0"
