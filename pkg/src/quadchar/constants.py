"""Shared numeric constants.

The Euler–Mascheroni constant and its exponentials are hard-coded to 20
significant digits (gamma = lim_{n} (H_n - log n); the exponentials are
simply e^(+/-gamma) of that value).  Nothing recomputes gamma at runtime.
"""

import math

#: Euler–Mascheroni constant gamma.
EULER_GAMMA = 0.57721566490153286061

#: e^gamma.
EXP_GAMMA = 1.7810724179901979852

#: e^(-gamma).
EXP_MGAMMA = 0.56145948356688516982

TWO_PI = 2.0 * math.pi
SQRT3 = math.sqrt(3.0)
