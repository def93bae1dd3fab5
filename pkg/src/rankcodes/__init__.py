"""Rank-metric (Gabidulin) codes over GF(q^n): construction, bounded
rank-distance decoding, subspace and subfield subcodes, direct sums with
beyond-capability decoding, and seeded Monte Carlo experiments."""

from .directsum import (DirectSumCode, DirectSumDecodeResult, MonteCarloResult,
                        decode_experiment, direct_sum_violations,
                        rank_event_rate, rank_leq_probability,
                        sample_channel_error, success_probability)
from .field import FieldTower, find_irreducible, is_irreducible, is_prime
from .gabidulin import (DecodingFailure, GabidulinCode, default_generator,
                        dual_vector, moore_matrix)
from .linpoly import LinearizedPoly, min_subspace_poly
from .qlinalg import (CoordinateSolver, count_rank_matrices, ext_nullspace,
                      ext_rank, ext_solve, mat_inv_q, mat_mul_q, nullspace_q,
                      random_error, rank_of_vector, rank_q, solve_q)
from .subfield import (SubfieldEmbedding, SubfieldFactorization, annihilates,
                       block_diagonal, compute_factorization, expand_parity,
                       subfield_success_probability, verify_uniqueness)
from .subspace import SubspaceBasis, SubspaceSubcode, TrivialSubcodeError

__all__ = [
    "CoordinateSolver",
    "DecodingFailure",
    "DirectSumCode",
    "DirectSumDecodeResult",
    "FieldTower",
    "GabidulinCode",
    "LinearizedPoly",
    "MonteCarloResult",
    "SubfieldEmbedding",
    "SubfieldFactorization",
    "SubspaceBasis",
    "SubspaceSubcode",
    "TrivialSubcodeError",
    "annihilates",
    "block_diagonal",
    "compute_factorization",
    "count_rank_matrices",
    "decode_experiment",
    "default_generator",
    "direct_sum_violations",
    "dual_vector",
    "expand_parity",
    "ext_nullspace",
    "ext_rank",
    "ext_solve",
    "find_irreducible",
    "is_irreducible",
    "is_prime",
    "mat_inv_q",
    "mat_mul_q",
    "min_subspace_poly",
    "moore_matrix",
    "nullspace_q",
    "random_error",
    "rank_event_rate",
    "rank_leq_probability",
    "rank_of_vector",
    "rank_q",
    "sample_channel_error",
    "solve_q",
    "subfield_success_probability",
    "success_probability",
    "verify_uniqueness",
]

__version__ = "0.1.0"
