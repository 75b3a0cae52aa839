"""Induced saturation of posets in the Boolean lattice, at desk scale."""

from .constructions import (
    Construction,
    audit_all,
    audit_C_T,
    construct_saturated_multipartite,
    normalize_layers,
    seed_family,
    verify_seed_free,
)
from .embedding import (
    EmbeddingWitness,
    find_copy_through,
    find_induced_copy,
    oracle_find_copy,
)
from .errors import (
    FamilyFormatError,
    PosatError,
    PosetSyntaxError,
    PreconditionError,
    SizeLimitError,
)
from .exact import SearchResult, enumerate_saturated, sat_star_exact, verify_theorem_bound
from .family import SubsetFamily, deserialize, serialize
from .poset import (
    BUTTERFLY,
    DIAMOND,
    EMPTY,
    POINT,
    Poset,
    antichain,
    chain,
    linear_sum,
    make_multipartite,
    parse_poset_expr,
    sum_of,
)
from .saturation import (
    SaturationReport,
    check_gluing_property,
    check_saturated,
    check_separating,
    greedy_saturate,
    is_free,
)
from .structure import (
    check_L_membership,
    check_Lstar_membership,
    compute_decomposition,
    f_empirical,
    verify_prelim_lemmas,
)

__version__ = "0.1.0"
