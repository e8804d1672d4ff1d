"""Overflow- and cancellation-safe building blocks for the hyperbolic kernel."""

import numpy as np

LN2 = 0.6931471805599453


def logsinh(x):
    """log(sinh(x)) for x >= 0; returns -inf at x = 0."""
    x = np.asarray(x, dtype=float)
    small = x < 1e-4
    xs = np.where(small, 1.0, x)
    hi = xs - LN2 + np.log1p(-np.exp(-2.0 * xs))
    with np.errstate(divide="ignore"):
        lo = np.log(np.where(small, x, 1.0)) + x * x / 6.0
    return np.where(small, lo, hi)


def logcosh(x):
    """log(cosh(x)) for x >= 0."""
    x = np.asarray(x, dtype=float)
    return x - LN2 + np.log1p(np.exp(-2.0 * x))


def arccosh1p(y):
    """arccosh(1 + y) for y >= 0, stable near 0 and free of overflow."""
    y = np.asarray(y, dtype=float)
    huge = y > 1e300
    big = (y > 1.0) & ~huge
    yb = np.where(big, y, 1.0)
    ys = np.where(big | huge, 0.0, y)
    t = np.where(big, yb * np.sqrt(1.0 + 2.0 / yb), np.sqrt(ys * (ys + 2.0)))
    exact = np.log1p(np.where(huge, 0.0, y) + t)
    with np.errstate(divide="ignore"):
        return np.where(huge, LN2 + np.log(y), exact)


def log_tanh_half(r):
    """log(tanh(r/2)) for r > 0; strictly negative for all finite r."""
    e = np.exp(-np.asarray(r, dtype=float))
    return np.log1p(-e) - np.log1p(e)


def inv_log_tanh_half(u):
    """Inverse of :func:`log_tanh_half`: r = 2*atanh(exp(u)) for u < 0."""
    u = np.asarray(u, dtype=float)
    return np.log1p(np.exp(u)) - np.log(-np.expm1(u))
