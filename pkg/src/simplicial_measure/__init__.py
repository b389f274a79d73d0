"""Path-integral measure for simplicial gravity with sharp metric jumps across 3-faces."""

from .simplicial import build_complex, edge_star_graph, triangle_star, validate
from .geometry import (
    ActionParams,
    PerSimplexLengths,
    deficit_angle,
    gram_matrix,
    hyperdihedral_angle,
    regge_action_global,
    regge_action_split,
    simplex_volume,
)
from .constraints import constraint_rank, delta_zero_ledger, enumerate_constraints, select_kept
from .measure import assemble_measure_report, evaluate_volume_factor

__version__ = "0.1.0"
