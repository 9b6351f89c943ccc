"""Exact linear algebra over Q and F_p: matrices, elimination, polynomial
certificates (univariate gcds, Groebner staircases, pencil full-rank scans)."""

from .fields import QQ, GF, BadReduction, FieldSpec, PrimeField, RationalField
from .groebner import (DEFAULT_SPOLY_BUDGET, GroebnerBudgetExceeded, buchberger,
                       normal_form, zero_locus_is_origin)
from .matrix import (Mat, block_diag, column_space_basis, det, kernel_basis,
                     kernel_basis_sparse, rank, rank_sparse, rref, solve)
from .multipoly import MultiPoly, degrevlex_key
from .pencil import (DEFAULT_MINOR_BUDGET, PencilBudgetExceeded,
                     pencil_full_rank_r2, pencil_minor_gcd)

__all__ = [
    "QQ", "GF", "BadReduction", "FieldSpec", "PrimeField", "RationalField",
    "Mat", "block_diag", "column_space_basis", "det", "kernel_basis",
    "kernel_basis_sparse", "rank", "rank_sparse", "rref", "solve",
    "MultiPoly", "degrevlex_key", "buchberger", "normal_form",
    "zero_locus_is_origin", "DEFAULT_SPOLY_BUDGET", "GroebnerBudgetExceeded",
    "pencil_full_rank_r2", "pencil_minor_gcd", "DEFAULT_MINOR_BUDGET",
    "PencilBudgetExceeded",
]
