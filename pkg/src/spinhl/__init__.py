"""Exact arithmetic for spin Hall-Littlewood functions, Robbins polynomials,
and their Littlewood-type identities."""

from .arith import ParamPoint, PoleError, Rat, SpinParams, qpoch, rat, rat_str, sample_point
from .bijection import (
    degenerate_weight,
    ensemble_to_triangle,
    normalized_weight,
    robbins_parameters,
    strict_ensembles,
    triangle_to_ensemble,
    verify_lemma_connection,
)
from .identities import CheckReport, run_all, run_check
from .pfaffian import MGammaSpec, SkewMatrix, b_matrix, det, m_gamma, rhs_cor, rhs_main1, rhs_main2
from .robbins import (
    DAMT,
    MonotoneTriangle,
    count_monotone_triangles,
    damt_weight,
    damts,
    monotone_triangles,
    mt_weight,
    robbins_bialternant,
    robbins_star_bialternant,
    robbins_star_enum,
)
from .series import TruncSeries, f_lambda_series, series_diff, u_substitution
from .symfun import (
    Partition,
    antisymmetrize,
    f_lambda,
    f_lambda_recurrence_rhs,
    hall_littlewood_P,
    schur,
    symmetrize,
)
from .vertex import PathEnsemble, enumerate_ensembles, ensemble_weight, f_lambda_vertex, vertex_weight

__version__ = "0.1.0"
