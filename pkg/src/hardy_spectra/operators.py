"""Finite matrix models on the monomial basis ``z^0 .. z^{N-1}``.

Builders return dense complex ``numpy`` arrays: Toeplitz compressions of
boundary symbols, composition operators of analytic self-maps (column ``n``
holds the Taylor coefficients of the n-th power of the map), and Fourier
multipliers realized against the Laguerre-function basis of the half-line
picture.  A small expression algebra combines the generators into finite
sections of C*-algebra words.

Products of truncations are not truncations of products: entries of an
``N x N`` product are only trustworthy on principal blocks well inside the
dimension.  Accuracy statements elsewhere in the package are therefore made
on blocks of size at most ``N // 8``.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import toeplitz as _toeplitz

from .errors import InvalidSelfMapError, NumericalError, SymbolError
from .quadrature import laguerre_kernel, scheme_for_dimension
from .series import as_series, series_eval, series_mul, series_power, series_reciprocal
from .symbols import EtaMap, MultiplierSymbol, ParabolicParam, PiecewiseSymbol

#: default truncation dimensions: identities are checked at 256, norm and
#: compactness scans at 512; both can be overridden from the CLI
DEFAULT_IDENTITY_DIM = 256
DEFAULT_NORM_DIM = 512

#: default principal-block fraction for accuracy statements about products
DEFAULT_BLOCK_FRACTION = 16


def ensure_operator_matrix(mat):
    """Validate a dense square complex matrix and return it as complex128."""
    m = np.asarray(mat, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise SymbolError(f"operator matrix must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NumericalError("operator matrix contains non-finite entries")
    return m


# ---------------------------------------------------------------------------
# analytic symbols derived from an EtaMap (Toeplitz leaves of words)
# ---------------------------------------------------------------------------


class AnalyticSymbol:
    """Boundary symbol analytic on a neighbourhood of the closed disc.

    Carries three views used by different parts of the package: Taylor
    coefficients (for the Toeplitz matrix, which is lower triangular),
    pointwise evaluation on the closed disc, and the boundary-functional
    value at a circle point once the underlying map's boundary value ``w``
    there is known.
    """

    def __init__(self, taylor_fn, eval_fn, functional_fn, eta=None, label="analytic"):
        self._taylor = taylor_fn
        self._eval = eval_fn
        self._functional = functional_fn
        self.eta = eta
        self.label = label

    def taylor(self, n):
        return as_series(self._taylor(n), n)

    def eval(self, z):
        return self._eval(np.asarray(z, dtype=complex))

    def functional_value(self, lam, eta_value):
        """Value at the boundary functional over circle point ``lam``."""
        return complex(np.asarray(self._functional(complex(lam), eta_value)))

    def functional_values(self, lam, eta_values):
        """Vectorized :meth:`functional_value` over point arrays."""
        return np.asarray(self._functional(lam, eta_values), dtype=complex)

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_taylor(cls, coeffs, label=None):
        coeffs = np.asarray(coeffs, dtype=complex)
        return cls(
            lambda n: as_series(coeffs, n),
            lambda z: series_eval(coeffs, z),
            lambda lam, w: series_eval(coeffs, np.asarray(lam, dtype=complex)),
            eta=None,
            label=label or "poly",
        )

    @classmethod
    def prefactor(cls, eta):
        """``(2i + eta(z)(1-z)) / 2i``: carries the pure multiplier onto the
        composition operator of the induced self-map."""

        def taylor(n, eta=eta):
            e = eta.taylor(n)
            out = e - np.r_[0.0, e[:-1]]
            out[0] += 2j
            return out / 2j

        return cls(
            taylor,
            lambda z, eta=eta: (2j + eta(z) * (1.0 - z)) / 2j,
            lambda lam, w: (2j + w * (1.0 - lam)) / 2j,
            eta=eta,
            label=f"prefactor[{eta.label}]",
        )

    @classmethod
    def prefactor_inverse(cls, eta):
        """``2i / (2i + eta(z)(1-z))``: conjugates the composition operator
        back into the pure multiplier."""

        def taylor(n, eta=eta):
            e = eta.taylor(n)
            den = e - np.r_[0.0, e[:-1]]
            den[0] += 2j
            return 2j * series_reciprocal(den, n)

        return cls(
            taylor,
            lambda z, eta=eta: 2j / (2j + eta(z) * (1.0 - z)),
            lambda lam, w: 2j / (2j + w * (1.0 - lam)),
            eta=eta,
            label=f"prefactor_inv[{eta.label}]",
        )

    @classmethod
    def eta_power(cls, eta, alpha, n_power):
        """``(i alpha - eta(z))**n``: the n-th coefficient symbol of the
        multiplier expansion of a composition operator."""
        alpha = float(alpha)
        k = int(n_power)

        def taylor(n, eta=eta, alpha=alpha, k=k):
            base = -eta.taylor(n)
            base[0] += 1j * alpha
            return series_power(base, k, n)

        return cls(
            taylor,
            lambda z, eta=eta: (1j * alpha - eta(z)) ** k,
            lambda lam, w: (1j * alpha - w) ** k,
            eta=eta,
            label=f"(i{alpha}-{eta.label})^{k}",
        )

    def times_polynomial(self, poly, label=None):
        """This symbol multiplied by a fixed polynomial in ``z``."""
        poly = np.asarray(poly, dtype=complex)
        inner = self
        return AnalyticSymbol(
            lambda n: series_mul(inner._taylor(n), poly, n),
            lambda z: inner.eval(z) * series_eval(poly, z),
            lambda lam, w: np.asarray(inner._functional(lam, w))
            * series_eval(poly, np.asarray(lam, dtype=complex)),
            eta=inner.eta,
            label=label or f"({inner.label})*poly",
        )

    def __repr__(self):
        return f"AnalyticSymbol({self.label!r})"


# ---------------------------------------------------------------------------
# matrix builders
# ---------------------------------------------------------------------------


def toeplitz_matrix(symbol, n):
    """Toeplitz compression with entries ``(j, k) -> coeff(j - k)``."""
    n = int(n)
    if n < 1:
        raise SymbolError("dimension must be >= 1")
    if isinstance(symbol, AnalyticSymbol):
        col = symbol.taylor(n)
        row = np.zeros(n, dtype=complex)
        row[0] = col[0]
        return _toeplitz(col, row)
    if isinstance(symbol, PiecewiseSymbol):
        col = np.array([symbol.coefficient(j) for j in range(n)], dtype=complex)
        row = np.array([symbol.coefficient(-k) for k in range(n)], dtype=complex)
        return _toeplitz(col, row)
    raise SymbolError(f"unsupported Toeplitz symbol {symbol!r}")


def map_taylor(mapping, n):
    """Taylor coefficients of the induced disc self-map.

    For an analytic ``eta`` with positive imaginary part the self-map is
    ``(2iz + eta(z)(1-z)) / (2i + eta(z)(1-z))``; a raw parabolic parameter
    is the constant-eta case of the same family.
    """
    if isinstance(mapping, ParabolicParam):
        mapping = mapping.eta()
    if not isinstance(mapping, EtaMap):
        raise SymbolError(f"unsupported composition map {mapping!r}")
    e = mapping.taylor(n)
    one_minus_z = e - np.r_[0.0, e[:-1]]
    num = one_minus_z.copy()
    if n > 1:
        num[1] += 2j
    den = one_minus_z.copy()
    den[0] += 2j
    return series_mul(num, series_reciprocal(den, n), n)


def composition_matrix(mapping, n):
    """Composition-operator matrix: column ``k`` holds the Taylor
    coefficients of the k-th power of the self-map."""
    n = int(n)
    if n < 1:
        raise SymbolError("dimension must be >= 1")
    phi = map_taylor(mapping, n)
    if abs(phi[0]) >= 1.0 - 1e-12:
        raise InvalidSelfMapError(
            f"map sends 0 to modulus {abs(phi[0]):.6f}; not a strict self-map"
        )
    out = np.zeros((n, n), dtype=complex)
    out[0, 0] = 1.0
    col = np.zeros(n, dtype=complex)
    col[0] = 1.0
    for k in range(1, n):
        col = series_mul(col, phi, n)
        out[:, k] = col
    return out


def multiplier_matrix(theta, n, scheme=None):
    """Fourier-multiplier compression against the Laguerre-function basis.

    Entry ``(m, n) = 2 int_0^inf theta(t) L_m(2t) L_n(2t) e^{-2t} dt``;
    the Gauss-Laguerre rule is exact for the polynomial factor whenever the
    scheme has at least ``n`` nodes, so the unit symbol reproduces the
    identity to rounding error.
    """
    n = int(n)
    if n < 1:
        raise SymbolError("dimension must be >= 1")
    if not isinstance(theta, MultiplierSymbol):
        raise SymbolError("multiplier_matrix expects a MultiplierSymbol")
    scheme = scheme or scheme_for_dimension(n)
    if scheme.size < n:
        raise NumericalError(
            "quadrature scheme too small for the requested dimension",
            diagnostics={"nodes": scheme.size, "dimension": n},
        )
    kern = laguerre_kernel(n, scheme.size)
    vals = theta(scheme.nodes)
    if not np.all(np.isfinite(vals)):
        raise NumericalError(
            "multiplier symbol not finite at quadrature nodes",
            diagnostics={"symbol": theta.label},
        )
    mat = (kern * (scheme.scaled_weights * vals)) @ kern.T
    # both orderings estimate the same integral; symmetrizing makes the
    # complex symmetry (and Hermitian-ness for real symbols) exact
    return 0.5 * (mat + mat.T)


def singular_values(mat):
    """All singular values, descending; the first is the truncation norm."""
    m = ensure_operator_matrix(mat)
    try:
        return np.linalg.svd(m, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"singular value decomposition failed: {exc}") from exc


def operator_norm(mat):
    return float(singular_values(mat)[0])


def principal_block(mat, m):
    """Leading ``m x m`` block, the trustworthy part of truncated products."""
    m = int(m)
    mat = np.asarray(mat)
    if not 1 <= m <= mat.shape[0]:
        raise SymbolError(f"block size {m} out of range for dimension {mat.shape[0]}")
    return mat[:m, :m]


# ---------------------------------------------------------------------------
# expression algebra over the generators
# ---------------------------------------------------------------------------


class Expression:
    """Formal word in the generators; evaluate to a matrix or walk the tree."""

    def __add__(self, other):
        if isinstance(other, Expression):
            return Sum((self, other))
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, Expression):
            return Sum((self, Scalar(-1.0, other)))
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Expression):
            return Product((self, other))
        if isinstance(other, (int, float, complex)):
            return Scalar(other, self)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return Scalar(other, self)
        return NotImplemented

    def adjoint(self):
        return Adjoint(self)

    def leaves(self):
        yield self

    def describe(self):
        return type(self).__name__


@dataclass(frozen=True, eq=False)
class Identity(Expression):
    def describe(self):
        return "I"


@dataclass(frozen=True, eq=False)
class Toeplitz(Expression):
    symbol: object  # PiecewiseSymbol or AnalyticSymbol

    def __post_init__(self):
        if not isinstance(self.symbol, (PiecewiseSymbol, AnalyticSymbol)):
            raise SymbolError("Toeplitz leaf needs a boundary or analytic symbol")

    def describe(self):
        return f"T[{self.symbol.label}]"


@dataclass(frozen=True, eq=False)
class Multiplier(Expression):
    symbol: MultiplierSymbol

    def __post_init__(self):
        if not isinstance(self.symbol, MultiplierSymbol):
            raise SymbolError("Multiplier leaf needs a MultiplierSymbol")

    def describe(self):
        return f"D[{self.symbol.label}]"


@dataclass(frozen=True, eq=False)
class Composition(Expression):
    eta: EtaMap

    def __post_init__(self):
        eta = self.eta
        if isinstance(eta, ParabolicParam):
            object.__setattr__(self, "eta", eta.eta())
        elif not isinstance(eta, EtaMap):
            raise SymbolError("Composition leaf needs an EtaMap or ParabolicParam")

    def describe(self):
        return f"C[{self.eta.label}]"


@dataclass(frozen=True, eq=False)
class Sum(Expression):
    terms: tuple

    def leaves(self):
        for t in self.terms:
            yield from t.leaves()

    def describe(self):
        return "(" + " + ".join(t.describe() for t in self.terms) + ")"


@dataclass(frozen=True, eq=False)
class Product(Expression):
    factors: tuple

    def leaves(self):
        for f in self.factors:
            yield from f.leaves()

    def describe(self):
        return "(" + " * ".join(f.describe() for f in self.factors) + ")"


@dataclass(frozen=True, eq=False)
class Scalar(Expression):
    value: complex
    child: Expression

    def leaves(self):
        yield from self.child.leaves()

    def describe(self):
        return f"({self.value}) * {self.child.describe()}"


@dataclass(frozen=True, eq=False)
class Adjoint(Expression):
    child: Expression

    def leaves(self):
        yield from self.child.leaves()

    def describe(self):
        return f"adj({self.child.describe()})"


def evaluate_expression(expr, n, scheme=None):
    """Finite section of the word: leaves truncate to ``n x n``, sums and
    scalars act entrywise, products multiply the truncations, adjoints take
    the conjugate transpose."""
    n = int(n)
    if isinstance(expr, Identity):
        return np.eye(n, dtype=complex)
    if isinstance(expr, Toeplitz):
        return toeplitz_matrix(expr.symbol, n)
    if isinstance(expr, Multiplier):
        return multiplier_matrix(expr.symbol, n, scheme)
    if isinstance(expr, Composition):
        return composition_matrix(expr.eta, n)
    if isinstance(expr, Sum):
        out = np.zeros((n, n), dtype=complex)
        for t in expr.terms:
            out += evaluate_expression(t, n, scheme)
        return out
    if isinstance(expr, Product):
        out = None
        for f in expr.factors:
            m = evaluate_expression(f, n, scheme)
            out = m if out is None else out @ m
        return out
    if isinstance(expr, Scalar):
        return complex(expr.value) * evaluate_expression(expr.child, n, scheme)
    if isinstance(expr, Adjoint):
        return evaluate_expression(expr.child, n, scheme).conj().T
    raise SymbolError(f"unknown expression node {expr!r}")


def commutator(a, b):
    return Sum((Product((a, b)), Scalar(-1.0, Product((b, a)))))


def expression_etas(expr):
    """Distinct analytic maps referenced by the expression's leaves."""
    seen = []
    for leaf in expr.leaves():
        eta = None
        if isinstance(leaf, Composition):
            eta = leaf.eta
        elif isinstance(leaf, Toeplitz) and isinstance(leaf.symbol, AnalyticSymbol):
            eta = leaf.symbol.eta
        if eta is not None and all(e is not eta for e in seen):
            seen.append(eta)
    return seen
