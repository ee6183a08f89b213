"""Chains, antichains, and periodic structure of finite semigroups."""

from .order import (
    CliqueBudgetExceeded,
    CompatGraph,
    antichain_graph,
    chain_graph,
    is_antichain,
    is_chain,
    is_semilattice,
    max_antichain,
    max_antichain_size,
    max_chain,
    max_chain_size,
    max_clique,
    min_chain_cover,
)
from .enumeration import canonical_form, enumerate_semigroups, random_semigroup
from .sgcore import (
    CayleyTable,
    Counterexample,
    ElementSet,
    MalformedTableError,
    NotASemigroupError,
    adjoin_identity,
    has_identity,
    left_translate,
    right_translate,
    validate_associativity,
)
from .structure import (
    HClass,
    PowerProfile,
    fiber_decomposition,
    h_class,
    h_classes,
    idempotents,
    is_group_hclass,
    power_profile,
    principal_left_ideal,
    principal_right_ideal,
)

__version__ = "0.1.0"
