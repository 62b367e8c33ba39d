"""Special functions used by the cylinder kernels."""

import math

import numpy as np
from scipy import special

SQRT_PI = math.sqrt(math.pi)


def erfc(x):
    """Complementary error function (2/√π)∫_x^∞ e^{-r²} dr, elementwise."""
    return special.erfc(x)


def erfcx(x):
    """Scaled complement e^{x²}·erfc(x); finite for large x where erfc underflows."""
    return special.erfcx(x)


def erfc_bound(x):
    """The Gaussian majorant (2/√π)e^{-x²} of erfc on x > 0."""
    return 2.0 / SQRT_PI * np.exp(-np.square(x))


def gaussian(t: float, distance):
    """1-D heat kernel (4πt)^{-1/2} e^{-d²/4t} at separation d."""
    return np.exp(-np.square(distance) / (4.0 * t)) / math.sqrt(4.0 * math.pi * t)
