"""Combinatorial model of two-row Springer varieties.

Matchings, overlay diagrams, component subspaces, cell decompositions, the
homology presentation with its standard basis, the tabloid model, the
symmetric-group action (oracle, pole-flip, and skein routes), and a CLI.
"""
from .matchings import (
    DottedMatching,
    Matching,
    StandardTableau,
    complete,
    complete_dotted,
    enumerate_matchings,
    format_matching,
    matching_of,
    parse_matching,
    restrict,
    restrict_dotted,
    standard_dotted_matchings,
    standard_layout,
    tableau_of,
    validate,
)
from .diagrams import (
    compatible,
    arrow_successors,
    distance,
    glue,
    linear_order,
    meet,
    minimal_sequence,
)
from .subspaces import SignedPartitionSubspace, subspace_of
from .homology import (
    HomClass,
    betti,
    hom_class,
    presentation_betti,
    pushforward_inclusion,
    reduce_class,
    relation_instances,
)
from .tabloids import (
    TabloidVector,
    f_embed,
    irr_character,
    matching_vector,
    modules_equal,
    permute,
    polytabloid,
    zeta,
)
from .action import act, act_via_gamma, character_table_check, derive_chart, rep_matrix
from .skein import (
    ResolutionConvention,
    calibrate,
    flatten,
    resolve_evaluate,
    skein_act,
)
from .permutations import Permutation, parse_permutation

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
