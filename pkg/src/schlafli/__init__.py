"""Schlafli function of the regular spherical simplex on [n-1, n+1].

The regular part q_n of f_n is carried as a Chebyshev series whose
coefficients follow from those of q_{n-2} by a short backward recurrence,
so any n is reached in O(n N^2) work.
"""

from ._backend import BACKEND
from .asymptotics import AsymptoticEstimate, marshall_volume, rogers_asymptotic
from .bounds import BoundsReport, bounds_report, coxeter_bound, harmonic, quantizer_bound, rogers_bound
from .cheb import (ChebyshevSeries, clenshaw_eval, derivative_coeffs, fit, nodes, product_coeffs,
                   truncation_error)
from .errors import DomainError, EvaluationError, QuadratureError, SchlafliError, ShapeError
from .evaluate import (SchlafliValue, even_endpoint_identity, f_closed, f_n, identity_check_odd,
                       log_prefactor, simplex_content)
from .logreal import LogScaledReal
from .oracle import OracleResult, oracle_f, oracle_qn
from .recurrence import (DEFAULT_N, QnSolution, RecurrenceConfig, eval_qn, g_source, iter_chain,
                         run_pipeline, seed_q2, seed_q3, solve, solve_step)

__version__ = "0.1.0"
