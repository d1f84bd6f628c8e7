"""Quadrature for integrals against the weight ``e^{-2t}`` on [0, inf).

The multiplier-matrix entries are integrals of the form

    2 * int_0^inf theta(t) L_m(2t) L_n(2t) e^{-2t} dt,

which after ``s = 2t`` become Gauss-Laguerre integrals in the normalized
Laguerre functions ``l_m(s) = e^{-s/2} L_m(s)``.  Everything here is phrased
in terms of those bounded functions: raw ``L_m`` values overflow double
precision long before the weight damps them, so the recurrence runs in
extended precision on ``l_m`` directly and weights are rebuilt from the
standard identity ``w_i = x_i / ((Q+1) L_{Q+1}(x_i))^2`` in the same scaled
form.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln, logsumexp

from .errors import NumericalError

#: default node count for a requested matrix dimension
def default_node_count(n):
    return max(2 * int(n), 128)


def laguerre_functions(nmax, x):
    """Table ``l_m(x) = e^{-x/2} L_m(x)`` for ``m < nmax`` at points ``x``.

    The three-term recurrence is linear, so it holds for the weighted
    functions as written; it is run in extended precision because the seed
    ``e^{-x/2}`` underflows double precision for the largest Gauss-Laguerre
    nodes while the later products are of order one.
    """
    xl = np.asarray(x, dtype=np.longdouble)
    out = np.empty((int(nmax), xl.size), dtype=np.longdouble)
    seed = np.exp(-xl / 2.0)
    out[0] = seed
    if nmax > 1:
        out[1] = (1.0 - xl) * seed
    for m in range(1, int(nmax) - 1):
        out[m + 1] = ((2 * m + 1 - xl) * out[m] - m * out[m - 1]) / (m + 1)
    return out


@dataclass(frozen=True)
class QuadratureScheme:
    """Nodes and weights for ``int_0^inf f(t) e^{-2t} dt``.

    ``nodes`` are the abscissae in the ``t`` variable; ``log_weights`` holds
    the logarithms of the positive weights (the raw weights underflow for
    large node counts).  ``scaled_nodes`` and ``scaled_weights`` give the
    ``s = 2t`` picture used by the Laguerre-function kernel:
    ``sum_i scaled_weights[i] g(scaled_nodes[i])`` approximates
    ``int_0^inf g(s) e^{-s} ds`` with the ``e^{-s}`` factor already folded
    into ``g`` written as products of ``l_m``.
    """

    nodes: np.ndarray
    log_weights: np.ndarray
    scaled_nodes: np.ndarray
    scaled_weights: np.ndarray
    tolerance: float

    @property
    def size(self):
        return self.nodes.size

    def integrate(self, f):
        """``int_0^inf f(t) e^{-2t} dt`` for a callable vectorized in ``t``."""
        vals = np.asarray(f(self.nodes), dtype=complex)
        return complex(np.sum(np.exp(self.log_weights) * vals))

    def moment_error(self, k):
        """Relative error on the moment ``int t^k e^{-2t} dt = k! / 2^{k+1}``.

        Computed fully in log space; the large-``k`` moments overflow any
        direct evaluation.
        """
        k = int(k)
        with np.errstate(divide="ignore"):
            logt = np.where(self.nodes > 0, np.log(self.nodes), -np.inf)
        log_quad = logsumexp(self.log_weights + k * logt)
        log_exact = gammaln(k + 1) - (k + 1) * np.log(2.0)
        return abs(np.expm1(log_quad - log_exact))

    def check_moments(self, kmax):
        """Raise unless all moments up to ``kmax`` meet the scheme tolerance."""
        worst_k, worst = 0, 0.0
        for k in range(0, int(kmax) + 1):
            err = self.moment_error(k)
            if err > worst:
                worst_k, worst = k, err
        if worst > self.tolerance:
            raise NumericalError(
                "quadrature scheme fails its moment test",
                diagnostics={"k": worst_k, "relative_error": worst,
                             "tolerance": self.tolerance},
            )
        return worst


@lru_cache(maxsize=16)
def _laguerre_nodes_scaled_weights(q):
    """Gauss-Laguerre nodes plus weights scaled by ``e^{x_i}`` (both finite).

    Nodes come from the symmetric tridiagonal Jacobi matrix (Golub-Welsch);
    the scaled weights use ``w_i e^{x_i} = x_i / ((Q+1) l_{Q+1}(x_i))^2``.
    """
    q = int(q)
    diag = 2.0 * np.arange(q) + 1.0
    off = np.arange(1.0, q)
    x = eigh_tridiagonal(diag, off, eigvals_only=True)
    table = laguerre_functions(q + 2, x)
    wex = (x / ((q + 1) ** 2 * table[q + 1] ** 2)).astype(float)
    x = np.asarray(x, dtype=float)
    x.setflags(write=False)
    wex.setflags(write=False)
    return x, wex


def gauss_laguerre_scheme(node_count, tolerance=1e-10, check_kmax=None):
    """Scheme for ``int_0^inf f(t) e^{-2t} dt`` with ``node_count`` nodes.

    The underlying rule integrates polynomials of degree ``2*node_count - 1``
    exactly; ``check_kmax`` (default ``node_count``) moments are verified at
    construction.
    """
    q = int(node_count)
    if q < 2:
        raise NumericalError("quadrature scheme needs at least two nodes")
    x, wex = _laguerre_nodes_scaled_weights(q)
    # t = s/2 and dt = ds/2: weights halve, nodes halve
    nodes = x / 2.0
    log_weights = np.log(wex) - x - np.log(2.0)
    scheme = QuadratureScheme(
        nodes=nodes,
        log_weights=log_weights,
        scaled_nodes=x,
        scaled_weights=wex,
        tolerance=float(tolerance),
    )
    scheme.check_moments(q if check_kmax is None else check_kmax)
    return scheme


@lru_cache(maxsize=8)
def _scheme_cached(q):
    return gauss_laguerre_scheme(q)


def scheme_for_dimension(n):
    """Shared scheme sized for dimension-``n`` multiplier matrices."""
    return _scheme_cached(default_node_count(n))


@lru_cache(maxsize=8)
def laguerre_kernel(nmax, q):
    """Matrix ``l_m(x_i)`` of Laguerre functions at the scheme's scaled nodes."""
    x, _ = _laguerre_nodes_scaled_weights(int(q))
    table = laguerre_functions(int(nmax), x).astype(float)
    table.setflags(write=False)
    return table


def adaptive_weighted_integral(f, tol=1e-10):
    """Adaptive fallback for ``int_0^inf f(t) e^{-2t} dt`` (oracle-grade).

    Used for cross-checks and diagnostics, not in the matrix fast path.
    """
    from scipy.integrate import quad

    def wrapped(t, part):
        v = np.asarray(f(np.array([float(t)])), dtype=complex).ravel()[0]
        v = v * np.exp(-2.0 * t)
        return v.real if part == 0 else v.imag

    out = 0.0 + 0.0j
    for a, b in ((0.0, 20.0), (20.0, 200.0)):
        re, re_err = quad(lambda t: wrapped(t, 0), a, b, limit=400, epsabs=tol)
        im, im_err = quad(lambda t: wrapped(t, 1), a, b, limit=400, epsabs=tol)
        if max(re_err, im_err) > 50 * tol:
            raise NumericalError(
                "adaptive quadrature did not reach the requested tolerance",
                diagnostics={"achieved": max(re_err, im_err), "requested": tol},
            )
        out += re + 1j * im
    return out
