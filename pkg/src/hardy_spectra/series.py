"""Truncated power-series arithmetic on dense complex coefficient arrays.

A series is a 1-d ``numpy`` array ``c`` representing ``sum c[k] z**k``;
all operations truncate to a requested order ``n`` (array length).
"""

import numpy as np

from .errors import SymbolError

__all__ = [
    "as_series",
    "series_add",
    "series_mul",
    "series_power",
    "series_reciprocal",
    "series_exp",
    "series_eval",
]


def as_series(coeffs, n):
    """Coefficient array padded or truncated to length ``n``."""
    c = np.asarray(coeffs, dtype=complex).ravel()
    out = np.zeros(n, dtype=complex)
    out[: min(n, c.size)] = c[:n]
    return out


def series_add(a, b, n):
    return as_series(a, n) + as_series(b, n)


def series_mul(a, b, n):
    """Cauchy product truncated to order ``n``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return np.convolve(a[:n], b[:n])[:n]


def series_power(a, k, n):
    """``a**k`` truncated to order ``n``, by binary exponentiation."""
    if k < 0:
        raise SymbolError("negative series power")
    out = as_series([1.0], n)
    base = as_series(a, n)
    while k:
        if k & 1:
            out = series_mul(out, base, n)
        base = series_mul(base, base, n)
        k >>= 1
    return out


def series_reciprocal(a, n):
    """``1 / a`` truncated to order ``n``; requires ``a[0] != 0``."""
    a = as_series(a, n)
    if a[0] == 0:
        raise SymbolError("series reciprocal needs a nonzero constant term")
    out = np.zeros(n, dtype=complex)
    out[0] = 1.0 / a[0]
    for m in range(1, n):
        out[m] = -np.dot(a[1 : m + 1], out[m - 1 :: -1]) / a[0]
    return out


def series_exp(a, n):
    """``exp(a)`` truncated to order ``n``.

    Uses the defining recurrence g' = a' g, i.e.
    ``m g[m] = sum_{k=1..m} k a[k] g[m-k]``.
    """
    a = as_series(a, n)
    out = np.zeros(n, dtype=complex)
    out[0] = np.exp(a[0])
    ka = np.arange(n) * a
    for m in range(1, n):
        out[m] = np.dot(ka[1 : m + 1], out[m - 1 :: -1]) / m
    return out


def series_eval(a, z):
    """Evaluate the truncated series at points ``z`` (Horner)."""
    a = np.asarray(a, dtype=complex)
    z = np.asarray(z, dtype=complex)
    out = np.full(z.shape, a[-1]) if a.size else np.zeros(z.shape, dtype=complex)
    for c in a[-2::-1]:
        out = out * z + c
    return out
