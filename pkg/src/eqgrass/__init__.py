"""Rank charts for equivariant Grassmannians: closed forms and a cell-by-cell solver."""

from .formulas import complexify, gr_2n2, gr_conj, gr_kn1, inf_gr2_rank, inf_kn1_rank, proj_space
from .mtwo import Bidegree, RankChart, free_rank_at, group_rank_at, kronholm_shift, m2_dim
from .schubert import CellTable, ingredient_table
from .solver import SolveOptions, SolveReport, admissible_pairs, candidate_outcomes, solve

__all__ = [
    "Bidegree",
    "CellTable",
    "RankChart",
    "SolveOptions",
    "SolveReport",
    "admissible_pairs",
    "candidate_outcomes",
    "complexify",
    "free_rank_at",
    "gr_2n2",
    "gr_conj",
    "gr_kn1",
    "group_rank_at",
    "inf_gr2_rank",
    "inf_kn1_rank",
    "ingredient_table",
    "kronholm_shift",
    "m2_dim",
    "proj_space",
    "solve",
]
