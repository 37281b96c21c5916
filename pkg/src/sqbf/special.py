"""Exponential integral E1, exponentially scaled.

``expe1(x) = exp(x) * E1(x)`` stays finite for large ``x`` where ``E1``
underflows and ``exp`` overflows, which is the regime of ``M/P`` at low SNR.
"""
import math

EULER_GAMMA = 0.57721566490153286061

_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 500


def _e1_series(x):
    # E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
    total = 0.0
    term = 1.0
    for k in range(1, _MAX_ITER):
        term *= -x / k
        contrib = term / k
        total += contrib
        if abs(contrib) < _EPS * abs(total):
            break
    return -EULER_GAMMA - math.log(x) - total


def _expe1_contfrac(x):
    # modified Lentz evaluation of the continued fraction for exp(x) E1(x)
    b = x + 1.0
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        a = -float(i * i)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"continued fraction for E1({x}) did not converge")


def expe1(x: float) -> float:
    """Return ``exp(x) * E1(x)`` for ``x > 0``."""
    x = float(x)
    if not x > 0:
        raise ValueError(f"expe1 requires x > 0, got {x}")
    if x <= 1.0:
        return math.exp(x) * _e1_series(x)
    return _expe1_contfrac(x)


def e1(x: float) -> float:
    """Exponential integral E1(x) for ``x > 0``."""
    x = float(x)
    if x <= 1.0:
        if not x > 0:
            raise ValueError(f"e1 requires x > 0, got {x}")
        return _e1_series(x)
    return _expe1_contfrac(x) * math.exp(-x)
