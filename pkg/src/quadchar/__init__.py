"""quadchar: batch computation and empirical verification of large quadratic
character sums over fundamental discriminants."""

from . import arith, charsum, dickman, polya, pretend, rational
from .arith import (
    PrimeSieve,
    SmoothnessSieve,
    enumerate_fundamental,
    is_fundamental,
    kronecker,
    sieve_primes,
    smoothness_sieve,
)
from .charsum import char_values, max_partial_sum, normalized_m, partial_sum_at
from .constants import EULER_GAMMA, EXP_GAMMA, EXP_MGAMMA
from .dickman import B0_constant, DickmanTable, build_dickman, eta_constant
from .errors import AccuracyError, BudgetExceededError, DatasetError, QuadcharError
from .polya import c_x_membership, exp_sum, gauss_sum, polya_rhs, s_yz_max
from .pretend import distance_sq, nearest_primitive, primitive_characters, truncated_L
from .rational import RationalApprox, b0_of, best_approx, exponent_u

__version__ = "0.1.0"
