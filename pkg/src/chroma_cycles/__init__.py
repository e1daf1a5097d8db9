"""Certified cycles in color-critical graphs."""

from .certs import CycleCert, PreconditionError, Tag, TheoremViolation, canonical_cycle, validate_cert
from .circular import extract_circular_bonus, extract_circular_cycle, inverse_mod, normalize
from .coloring import (
    CircularSpec,
    Coloring,
    chromatic_number,
    find_homomorphism,
    find_k_coloring,
    find_kd_coloring,
    is_edge_critical,
    is_valid_coloring,
)
from .graph import Digraph, Edge, Graph, edge_deleted, make_named, parse_named
from .graph6 import GraphFormatError, parse_graph6, parse_sparse6, write_graph6
from .oracle import (
    bad_ordering_count,
    enumerate_cycles,
    minty_check,
    random_orientation_search,
    residue_profile,
)
from .tuza import (
    CyclicPerm,
    extract_one_mod_r_cycles,
    extract_zero_mod_r_cycles,
    shift_recolor,
    sigma_subdigraph,
    sink_recolor_to_contradiction,
)

__version__ = "0.1.0"
