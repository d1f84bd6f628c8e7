"""Boundary symbols on the unit circle, analytic disc maps, multiplier symbols.

The piecewise-continuous model is: a continuous part plus a finite linear
combination of canonical steps.  The canonical step anchored at angle
``theta0`` takes the value ``(theta - theta0)/2pi`` on the arc
``(theta0, theta0 + 2pi)``; it jumps by +1 when the anchor is crossed in the
negative direction, i.e. left limit minus right limit at the anchor is 1.
Pointwise evaluation is right-continuous at jump anchors.

All Fourier coefficients of the canonical forms (trigonometric polynomials,
linearly interpolated grids, steps, and pairwise products of these) are
computed in closed form; no coefficient is obtained by numerical quadrature.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NotFredholmError, NumericalError, SymbolError
from .series import as_series, series_eval, series_exp, series_mul, series_reciprocal

TWO_PI = 2.0 * math.pi

#: resolution used when deduplicating sampled point sets
DEDUP_TOL = 1e-9

#: |a| must stay above this margin on the sample grid for index computations
WINDING_MARGIN = 1e-8


def parse_complex(text):
    """Parse ``RE+IMi`` style literals ('1', '0+1i', '-2.5i', '1.5-2i')."""
    try:
        return complex(text.strip().replace("i", "j"))
    except ValueError as exc:
        raise SymbolError(f"bad complex literal {text!r}") from exc


def wrap_angle(theta):
    """Reduce an angle to [0, 2pi)."""
    t = math.fmod(float(theta), TWO_PI)
    return t + TWO_PI if t < 0 else t


def dedup_points(values, tol=DEDUP_TOL):
    """Collapse complex points that agree to resolution ``tol``.

    First occurrences win, so the output order follows the input sweep
    order and is deterministic.
    """
    vals = np.asarray(values, dtype=complex).ravel()
    if vals.size == 0:
        return vals
    keys_re = np.round(vals.real / tol).astype(np.int64)
    keys_im = np.round(vals.imag / tol).astype(np.int64)
    seen = {}
    for i in range(vals.size):
        k = (int(keys_re[i]), int(keys_im[i]))
        if k not in seen:
            seen[k] = vals[i]
    return np.array(list(seen.values()), dtype=complex)


# ---------------------------------------------------------------------------
# closed-form integrals of (polynomial in theta) * exp(i m theta)
# ---------------------------------------------------------------------------


def _poly_exp_integral(poly, m, a, b):
    """``int_a^b (poly[0] + poly[1] t + poly[2] t^2) e^{i m t} dt`` exactly."""
    p0, p1, p2 = (list(poly) + [0.0, 0.0, 0.0])[:3]
    if m == 0:
        return (
            p0 * (b - a)
            + p1 * (b * b - a * a) / 2.0
            + p2 * (b**3 - a**3) / 3.0
        )
    mu = 1j * m

    def prim(t):
        e = cmath.exp(mu * t)
        return e * (
            p0 / mu
            + p1 * (t / mu - 1.0 / mu**2)
            + p2 * (t * t / mu - 2.0 * t / mu**2 + 2.0 / mu**3)
        )

    return prim(b) - prim(a)


# ---------------------------------------------------------------------------
# continuous parts
# ---------------------------------------------------------------------------


class TrigPolynomial:
    """Finite trigonometric polynomial ``sum_k c_k e^{i k theta}``."""

    def __init__(self, coeffs):
        self.coeffs = {int(k): complex(c) for k, c in dict(coeffs).items() if c != 0}

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def analytic(cls, taylor):
        """Trig polynomial with nonnegative frequencies from Taylor coefficients."""
        return cls({k: c for k, c in enumerate(np.asarray(taylor, dtype=complex))})

    def coefficient(self, n):
        return self.coeffs.get(int(n), 0.0 + 0.0j)

    def eval(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(theta.shape, dtype=complex)
        for k, c in self.coeffs.items():
            out += c * np.exp(1j * k * theta)
        return out

    def sup_bound(self):
        # triangle inequality; exact for constants
        return float(sum(abs(c) for c in self.coeffs.values()))

    def __bool__(self):
        return bool(self.coeffs)


class GridInterpolant:
    """Periodic piecewise-linear interpolant of uniform samples in angle."""

    def __init__(self, samples):
        self.samples = np.asarray(samples, dtype=complex).ravel()
        if self.samples.size < 2:
            raise SymbolError("grid part needs at least two samples")

    @property
    def grid_size(self):
        return self.samples.size

    def eval(self, theta):
        theta = np.asarray(theta, dtype=float)
        g = self.grid_size
        pos = (theta % TWO_PI) / TWO_PI * g
        i0 = np.floor(pos).astype(int) % g
        frac = pos - np.floor(pos)
        v0 = self.samples[i0]
        v1 = self.samples[(i0 + 1) % g]
        return v0 + (v1 - v0) * frac

    def coefficient(self, n):
        # per-segment linear pieces, integrated in closed form
        g = self.grid_size
        step = TWO_PI / g
        total = 0.0 + 0.0j
        for i in range(g):
            a = i * step
            v0 = self.samples[i]
            v1 = self.samples[(i + 1) % g]
            slope = (v1 - v0) / step
            total += _poly_exp_integral((v0 - slope * a, slope), -n, a, a + step)
        return total / TWO_PI

    def sup_bound(self):
        return float(np.abs(self.samples).max())


class _CallablePart:
    """Continuous part backed by exact coefficient and evaluation callables."""

    def __init__(self, coeff_fn, eval_fn, sup):
        self._coeff = coeff_fn
        self._eval = eval_fn
        self._sup = sup

    def coefficient(self, n):
        return self._coeff(n)

    def eval(self, theta):
        return self._eval(np.asarray(theta, dtype=float))

    def sup_bound(self):
        return self._sup


# ---------------------------------------------------------------------------
# canonical step helpers
# ---------------------------------------------------------------------------


def step_coefficient(theta0, n):
    """Fourier coefficient of the canonical step anchored at ``theta0``.

    The anchored step is the rotation of the step at angle 0, whose
    coefficients are 1/2 at n=0 and i/(2 pi n) otherwise.
    """
    if n == 0:
        return 0.5 + 0.0j
    return cmath.exp(-1j * n * theta0) * (1j / (TWO_PI * n))


def step_value(theta0, theta):
    """Right-continuous pointwise value of the canonical step at ``theta``."""
    theta = np.asarray(theta, dtype=float)
    return ((theta - theta0) % TWO_PI) / TWO_PI


def _step_linear_on_arc(theta0, midpoint):
    """Coefficients (b, a) with u(theta) = b + a*theta on the arc containing
    ``midpoint`` (no anchor crossing inside the arc)."""
    a = 1.0 / TWO_PI
    b = ((midpoint - theta0) % TWO_PI) / TWO_PI - a * midpoint
    return b, a


# ---------------------------------------------------------------------------
# PiecewiseSymbol
# ---------------------------------------------------------------------------


class PiecewiseSymbol:
    """Piecewise-continuous boundary function: continuous part plus steps.

    Parameters
    ----------
    continuous : TrigPolynomial | GridInterpolant | _CallablePart | None
        Continuous-in-angle part.
    jumps : iterable of (angle, height)
        Anchors and complex heights of the canonical steps.  The height is
        the left limit minus the right limit at the anchor.
    label : str
        Human-readable tag used in CSV headers and error messages.
    """

    def __init__(self, continuous=None, jumps=(), label="symbol"):
        self.continuous = continuous if continuous is not None else TrigPolynomial.zero()
        cleaned = []
        for angle, height in jumps:
            h = complex(height)
            if h == 0:
                continue
            cleaned.append((wrap_angle(angle), h))
        cleaned.sort(key=lambda t: t[0])
        for (a1, _), (a2, _) in zip(cleaned, cleaned[1:]):
            if abs(a1 - a2) < 1e-15:
                raise SymbolError("jump locations must be pairwise distinct")
        self.jumps = tuple(cleaned)
        self.label = label

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c):
        return cls(TrigPolynomial({0: c}), label=f"const({c})")

    @classmethod
    def monomial(cls, n, c=1.0):
        return cls(TrigPolynomial({int(n): c}), label=f"mono({n})")

    @classmethod
    def trig(cls, coeffs, label="trig"):
        return cls(TrigPolynomial(coeffs), label=label)

    @classmethod
    def analytic(cls, taylor, label="analytic"):
        return cls(TrigPolynomial.analytic(taylor), label=label)

    @classmethod
    def step(cls, angle=0.0, height=1.0):
        return cls(None, [(angle, height)], label=f"step({angle}, {height})")

    @classmethod
    def from_grid(cls, samples, label="grid"):
        return cls(GridInterpolant(samples), label=label)

    # -- basic structure ----------------------------------------------------

    @property
    def is_continuous(self):
        return not self.jumps

    def value(self, theta):
        """Right-continuous pointwise value."""
        theta = np.asarray(theta, dtype=float)
        out = np.asarray(self.continuous.eval(theta), dtype=complex).copy()
        for angle, height in self.jumps:
            out = out + height * step_value(angle, theta)
        return out

    def one_sided(self, theta):
        """Pair (left, right) of one-sided limits at angle ``theta``."""
        t = wrap_angle(theta)
        base = complex(np.asarray(self.continuous.eval(t), dtype=complex))
        left = right = base
        for angle, height in self.jumps:
            if abs(t - angle) < 1e-15 or abs(abs(t - angle) - TWO_PI) < 1e-15:
                left += height * 1.0
                right += height * 0.0
            else:
                v = float(step_value(angle, t))
                left += height * v
                right += height * v
        return left, right

    def sup_bound(self):
        return self.continuous.sup_bound() + sum(abs(h) for _, h in self.jumps)

    def is_real_valued(self):
        """Heuristic reality check on a sample grid (used by tests only)."""
        theta = np.linspace(0.0, TWO_PI, 64, endpoint=False) + 1e-4
        return bool(np.abs(self.value(theta).imag).max() < 1e-12)

    # -- Fourier coefficients ------------------------------------------------

    def coefficient(self, n, max_index=1_000_000):
        """Fourier coefficient ``(1/2pi) int a(e^{i theta}) e^{-i n theta} dtheta``."""
        n = int(n)
        if abs(n) > max_index:
            raise SymbolError(f"coefficient index {n} exceeds configured maximum")
        total = complex(self.continuous.coefficient(n))
        for angle, height in self.jumps:
            total += height * step_coefficient(angle, n)
        return total

    def coefficients(self, nmax):
        """Array of coefficients for n = -(nmax-1) .. nmax-1."""
        return np.array(
            [self.coefficient(n) for n in range(-(nmax - 1), nmax)], dtype=complex
        )

    # -- algebra -------------------------------------------------------------

    def scaled(self, c):
        c = complex(c)
        part = self.continuous
        cont = _CallablePart(
            lambda n, p=part: c * p.coefficient(n),
            lambda th, p=part: c * np.asarray(p.eval(th), dtype=complex),
            abs(c) * part.sup_bound(),
        )
        jumps = [(a, c * h) for a, h in self.jumps]
        return PiecewiseSymbol(cont, jumps, label=f"({c})*{self.label}")

    def __add__(self, other):
        if not isinstance(other, PiecewiseSymbol):
            return NotImplemented
        p1, p2 = self.continuous, other.continuous
        cont = _CallablePart(
            lambda n: p1.coefficient(n) + p2.coefficient(n),
            lambda th: np.asarray(p1.eval(th), dtype=complex)
            + np.asarray(p2.eval(th), dtype=complex),
            p1.sup_bound() + p2.sup_bound(),
        )
        heights = {}
        for angle, h in self.jumps + other.jumps:
            heights[angle] = heights.get(angle, 0.0) + h
        return PiecewiseSymbol(
            cont,
            [(a, h) for a, h in sorted(heights.items())],
            label=f"{self.label}+{other.label}",
        )

    def __mul__(self, other):
        if not isinstance(other, PiecewiseSymbol):
            return NotImplemented
        return _symbol_product(self, other)

    def __repr__(self):
        return f"PiecewiseSymbol({self.label!r}, jumps={len(self.jumps)})"


def _require_trig(sym):
    if isinstance(sym.continuous, TrigPolynomial):
        return sym.continuous
    raise SymbolError(
        "symbol products are closed only over trig-polynomial continuous parts"
    )


def _product_coefficient(s1, s2, n):
    """Exact Fourier coefficient of the pointwise product ``s1 * s2``.

    On each arc between consecutive jump anchors both factors are a trig
    polynomial plus a linear function of the angle, so the product integrand
    is (quadratic polynomial) x (trig monomial) and integrates in closed form.
    """
    t1, t2 = _require_trig(s1), _require_trig(s2)
    anchors = sorted({a for a, _ in s1.jumps} | {a for a, _ in s2.jumps})
    if not anchors:
        total = 0.0 + 0.0j
        for k, c1 in t1.coeffs.items():
            c2 = t2.coeffs.get(n - k)
            if c2 is not None:
                total += c1 * c2
        return total
    cuts = anchors + [anchors[0] + TWO_PI]
    total = 0.0 + 0.0j
    for a, b in zip(cuts, cuts[1:]):
        mid = 0.5 * (a + b)
        lin = []
        for sym in (s1, s2):
            alpha = 0.0 + 0.0j
            beta = 0.0 + 0.0j
            for angle, height in sym.jumps:
                vb, va = _step_linear_on_arc(angle, mid)
                beta += height * vb
                alpha += height * va
            lin.append((beta, alpha))
        (b1, a1), (b2, a2) = lin
        # trig x trig
        for k, c1 in t1.coeffs.items():
            for l, c2 in t2.coeffs.items():
                total += c1 * c2 * _poly_exp_integral((1.0,), k + l - n, a, b)
        # trig x linear (both cross terms)
        for k, c1 in t1.coeffs.items():
            total += c1 * _poly_exp_integral((b2, a2), k - n, a, b)
        for l, c2 in t2.coeffs.items():
            total += c2 * _poly_exp_integral((b1, a1), l - n, a, b)
        # linear x linear
        total += _poly_exp_integral(
            (b1 * b2, a1 * b2 + a2 * b1, a1 * a2), -n, a, b
        )
    return total / TWO_PI


def _symbol_product(s1, s2):
    """Pointwise product as a PiecewiseSymbol with exact coefficients."""
    _require_trig(s1), _require_trig(s2)
    anchors = sorted({a for a, _ in s1.jumps} | {a for a, _ in s2.jumps})
    heights = {}
    for angle in anchors:
        l1, r1 = s1.one_sided(angle)
        l2, r2 = s2.one_sided(angle)
        h = l1 * l2 - r1 * r2
        if h != 0:
            heights[angle] = h
    jumps = sorted(heights.items())

    def coeff(n, s1=s1, s2=s2, jumps=tuple(jumps)):
        total = _product_coefficient(s1, s2, n)
        for angle, h in jumps:
            total -= h * step_coefficient(angle, n)
        return total

    def ev(theta, s1=s1, s2=s2, jumps=tuple(jumps)):
        out = s1.value(theta) * s2.value(theta)
        for angle, h in jumps:
            out = out - h * step_value(angle, theta)
        return out

    cont = _CallablePart(coeff, ev, s1.sup_bound() * s2.sup_bound())
    return PiecewiseSymbol(
        cont, jumps, label=f"({s1.label})*({s2.label})"
    )


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------


def one_sided_limits(symbol, theta):
    """One-sided limits ``(a(lambda-), a(lambda+))`` at boundary angle ``theta``."""
    if not isinstance(symbol, PiecewiseSymbol):
        raise SymbolError("one_sided_limits expects a PiecewiseSymbol")
    return symbol.one_sided(theta)


def fourier_coefficient(symbol, n):
    """n-th Fourier coefficient of the boundary symbol."""
    return symbol.coefficient(n)


def winding_index(symbol, samples=4096, margin=WINDING_MARGIN):
    """Fredholm index of the Toeplitz operator with continuous symbol.

    The index is minus the winding number of the symbol curve about the
    origin, computed from accumulated argument increments over a uniform
    sample grid.
    """
    if not symbol.is_continuous:
        raise SymbolError("winding index requires a continuous (jump-free) symbol")
    theta = np.linspace(0.0, TWO_PI, int(samples), endpoint=False)
    vals = symbol.value(theta)
    mods = np.abs(vals)
    if mods.min() <= margin:
        raise NotFredholmError(
            "symbol passes within the safety margin of 0; operator is not Fredholm",
            diagnostics={"min_modulus": float(mods.min()), "margin": margin},
        )
    ratios = np.roll(vals, -1) / vals
    increments = np.angle(ratios)
    if np.abs(increments).max() > 2.5:
        raise NumericalError(
            "argument increment too large; increase the sample count",
            diagnostics={"max_increment": float(np.abs(increments).max())},
        )
    total = float(increments.sum()) / TWO_PI
    winding = round(total)
    if abs(total - winding) > 1e-6:
        raise NumericalError(
            "winding number did not converge to an integer",
            diagnostics={"raw": total},
        )
    return -winding


# ---------------------------------------------------------------------------
# multiplier symbols: continuous functions on [0, infinity]
# ---------------------------------------------------------------------------


class MultiplierSymbol:
    """Continuous function on [0, inf] acting as a Fourier-multiplier symbol.

    ``evaluator`` must accept a numpy array of nonnegative reals.  The value
    at infinity is stored separately; approach to it is spot-checked on a
    logarithmic grid when the symbol is constructed from a raw callable.
    """

    def __init__(self, evaluator, value_at_infinity, label="theta", tag="generic",
                 sup_norm=None, tail_tol=1e-6, _validate=True):
        self.evaluator = evaluator
        self.value_at_infinity = complex(value_at_infinity)
        self.label = label
        self.tag = tag
        self._declared_sup = sup_norm
        self.tail_tol = float(tail_tol)
        if _validate:
            self._validate()

    def _validate(self):
        grid = np.logspace(2, 8, 13)
        vals = np.asarray(self.evaluator(grid), dtype=complex)
        if not np.all(np.isfinite(vals)):
            raise SymbolError(f"multiplier {self.label!r} is not finite on [0, inf)")
        if abs(vals[-1] - self.value_at_infinity) > self.tail_tol:
            raise SymbolError(
                f"multiplier {self.label!r} does not approach its declared value "
                f"at infinity (gap {abs(vals[-1] - self.value_at_infinity):.2e})"
            )

    def __call__(self, t):
        return np.asarray(self.evaluator(np.asarray(t, dtype=float)), dtype=complex)

    def value(self, t):
        """Scalar value with ``t = inf`` mapped to the declared limit."""
        if math.isinf(t):
            return self.value_at_infinity
        return complex(self(np.array([float(t)]))[0])

    def sup_norm(self):
        """Supremum of  |theta|  over [0, inf], from a dense grid and the limit."""
        if self._declared_sup is not None:
            return float(self._declared_sup)
        grid = np.r_[0.0, np.logspace(-4, 8, 2000)]
        vals = np.abs(self(grid))
        return float(max(vals.max(), abs(self.value_at_infinity)))

    def is_real_valued(self):
        grid = np.r_[0.0, np.logspace(-3, 4, 50)]
        return bool(
            np.abs(self(grid).imag).max() < 1e-13
            and abs(self.value_at_infinity.imag) < 1e-13
        )

    # -- closed forms --------------------------------------------------------

    @classmethod
    def constant(cls, c):
        c = complex(c)
        return cls(lambda t: np.full(np.shape(t), c), c,
                   label=f"const({c})", tag="constant", sup_norm=abs(c),
                   _validate=False)

    @classmethod
    def exponential(cls, a):
        """``e^{i a t}`` with Im a > 0; vanishes at infinity."""
        a = complex(a)
        if a.imag <= 0:
            raise SymbolError("exponential multiplier needs Im a > 0")
        return cls(lambda t: np.exp(1j * a * t), 0.0,
                   label=f"exp(i({a})t)", tag="exponential", sup_norm=1.0,
                   _validate=False)

    @classmethod
    def decay_term(cls, n, alpha):
        """``(-i t)^n e^{-alpha t} / n!`` for alpha > 0; vanishes at infinity."""
        n = int(n)
        alpha = float(alpha)
        if n < 0 or alpha <= 0:
            raise SymbolError("decay term needs n >= 0 and alpha > 0")
        fact = math.factorial(n)

        def ev(t, n=n, alpha=alpha, fact=fact):
            t = np.asarray(t, dtype=float)
            return ((-1j * t) ** n) * np.exp(-alpha * t) / fact

        sup = (n / (math.e * alpha)) ** n / fact if n else 1.0
        return cls(ev, 0.0, label=f"term(n={n}, alpha={alpha})",
                   tag="decay-term", sup_norm=sup, _validate=False)

    @classmethod
    def reciprocal_shift(cls):
        """``1/(1+t)``; vanishes at infinity."""
        return cls(lambda t: 1.0 / (1.0 + np.asarray(t, dtype=float)), 0.0,
                   label="1/(1+t)", tag="rational", sup_norm=1.0, _validate=False)

    def __repr__(self):
        return f"MultiplierSymbol({self.label!r})"


# ---------------------------------------------------------------------------
# analytic disc maps with positive imaginary part
# ---------------------------------------------------------------------------


class EtaMap:
    """Bounded analytic map on the disc with ``Im eta >= epsilon > 0``.

    Two representations are supported: a polynomial coefficient list, and the
    registered closed form ``2i + exp(-(1+z)/(1-z))`` whose boundary behaviour
    at angle 0 exercises nontrivial cluster sets.  ``sup_norm`` is a certified
    upper bound (coefficient sum for polynomials); the declared ``epsilon`` is
    spot-checked on a disc grid at construction.
    """

    SPOT_RADII = (0.0, 0.2, 0.4, 0.6, 0.8, 0.9, 0.95, 0.99, 0.999)
    SPOT_ANGLES = 96

    def __init__(self, kind, coeffs=None, epsilon=None, label="eta"):
        self.kind = kind
        self.label = label
        if kind == "poly":
            self.coeffs = np.asarray(coeffs, dtype=complex).ravel()
            if self.coeffs.size == 0:
                raise SymbolError("polynomial eta needs at least one coefficient")
            self.sup_norm = float(np.abs(self.coeffs).sum())
        elif kind == "exp-singular":
            self.coeffs = None
            self.sup_norm = 3.0  # |2i| + sup|exp(-w)| over the right half-plane
        else:
            raise SymbolError(f"unknown eta kind {kind!r}")
        self.epsilon = self._declare_epsilon(epsilon)

    def _declare_epsilon(self, declared):
        grid_min = self._grid_min_imag()
        if declared is None:
            if self.kind == "exp-singular":
                declared = 1.0  # Im(2i + w) >= 2 - |w| with |w| < 1
            elif self.is_constant:
                declared = float(self.coeffs[0].imag)
            else:
                declared = grid_min * (1.0 - 1e-9)
        declared = float(declared)
        if declared <= 0:
            raise SymbolError(f"eta {self.label!r} must have Im >= epsilon > 0")
        if grid_min < declared - 1e-12:
            raise SymbolError(
                f"declared epsilon {declared} violated on the spot-check grid "
                f"(min Im = {grid_min})"
            )
        return declared

    def _grid_min_imag(self):
        worst = math.inf
        angles = np.linspace(0.0, TWO_PI, self.SPOT_ANGLES, endpoint=False)
        for r in self.SPOT_RADII:
            z = r * np.exp(1j * angles)
            vals = self(z)
            worst = min(worst, float(vals.imag.min()))
        return worst

    @classmethod
    def polynomial(cls, coeffs, epsilon=None, label=None):
        coeffs = np.asarray(coeffs, dtype=complex).ravel()
        return cls("poly", coeffs, epsilon,
                   label=label or f"poly({', '.join(str(c) for c in coeffs)})")

    @classmethod
    def constant(cls, c, label=None):
        return cls("poly", [complex(c)], None, label=label or f"const({complex(c)})")

    @classmethod
    def exp_singular(cls):
        """The map ``2i + exp(-(1+z)/(1-z))`` (cluster-set workhorse)."""
        return cls("exp-singular", label="eta-exp")

    @property
    def is_constant(self):
        return self.kind == "poly" and self.coeffs.size == 1

    @property
    def constant_value(self):
        if not self.is_constant:
            raise SymbolError("eta is not constant")
        return complex(self.coeffs[0])

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if self.kind == "poly":
            return series_eval(self.coeffs, z)
        with np.errstate(over="ignore", invalid="ignore"):
            return 2j + np.exp(-(1.0 + z) / (1.0 - z))

    def taylor(self, n):
        """Taylor coefficients at 0 through order ``n-1``."""
        if self.kind == "poly":
            return as_series(self.coeffs, n)
        # exp of -(1+z)/(1-z) = exp(-1 - 2z - 2z^2 - ...)
        f = np.full(n, -2.0, dtype=complex)
        f[0] = -1.0
        out = series_exp(f, n)
        out[0] += 2j
        return out

    def continuous_at(self, angle):
        """Whether the boundary extension is continuous at the given angle."""
        if self.kind == "poly":
            return True
        return wrap_angle(angle) > 1e-12  # singular anchor sits at angle 0

    def boundary_value(self, angle):
        """Radial boundary value, defined where the map extends continuously."""
        if self.kind == "poly":
            return complex(series_eval(self.coeffs, np.exp(1j * angle)))
        if not self.continuous_at(angle):
            raise SymbolError("eta has no continuous boundary value at this angle")
        return complex(self(np.array([np.exp(1j * angle)]))[0])

    def __repr__(self):
        return f"EtaMap({self.label!r}, eps={self.epsilon})"


@dataclass(frozen=True)
class ParabolicParam:
    """Translation length ``a`` (Im a > 0) of a parabolic linear-fractional map.

    The induced disc self-map is ``((2i - a) z + a) / (-a z + a + 2i)``, which
    is the constant-eta special case of the general analytic family.
    """

    a: complex

    def __post_init__(self):
        if complex(self.a).imag <= 0:
            raise SymbolError("parabolic parameter needs Im a > 0")
        object.__setattr__(self, "a", complex(self.a))

    def eta(self):
        return EtaMap.constant(self.a, label=f"const({self.a})")

    def map_value(self, z):
        a = self.a
        z = np.asarray(z, dtype=complex)
        return ((2j - a) * z + a) / (-a * z + a + 2j)


# ---------------------------------------------------------------------------
# cluster sets via boundary approach paths
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PathConfig:
    """Approach-path families used to sample boundary behaviour near a point.

    Radial and Stolz families probe the nontangential limit (deep approach,
    depth ``deep_delta``); the tangential family probes oscillation at fixed
    decay levels, with the approach depth phase-locked so the sampled phases
    sweep a full period.  Tangential depths stay above ``tangential_delta``
    because forming ``1 - z`` in floating point loses the radial gap below
    roughly 1e-7.
    """

    stolz_angles: int = 21
    stolz_opening: float = 1.3
    deep_delta: float = 1e-9
    tangential_levels: int = 17
    tangential_level_range: tuple = (1e-3, 10.0)
    tangential_phases: int = 64
    tangential_delta: float = 1e-6

    def describe(self):
        return {
            "radial_paths": 1,
            "stolz_paths": self.stolz_angles,
            "tangential_paths": 2 * self.tangential_levels * self.tangential_phases,
            "deep_delta": self.deep_delta,
            "tangential_delta": self.tangential_delta,
        }


DEFAULT_PATHS = PathConfig()


def approach_points(lambda_angle, config=DEFAULT_PATHS):
    """Deterministic list of ``(path_id, z)`` surrogate evaluation points.

    Each entry is the deep end of one approach path toward the boundary
    point at ``lambda_angle``; together they stand in for the reachable
    boundary functionals at that point.
    """
    lam = cmath.exp(1j * wrap_angle(lambda_angle))
    out = [("radial", lam * (1.0 - config.deep_delta))]
    for psi in np.linspace(-config.stolz_opening, config.stolz_opening,
                           config.stolz_angles):
        z = lam * (1.0 - config.deep_delta * cmath.exp(1j * psi))
        out.append((f"stolz:{psi:+.4f}", z))
    lo, hi = config.tangential_level_range
    levels = np.geomspace(lo, hi, config.tangential_levels)
    base_t = 2.0 / config.tangential_delta
    for rho in levels:
        for sign in (1.0, -1.0):
            for j in range(config.tangential_phases):
                # delta chosen so Im((1+z)/(1-z)) ~ -sign*(base_t + 2pi j/J),
                # sweeping a full period of boundary phase at this level
                delta = 2.0 / (base_t + TWO_PI * j / config.tangential_phases)
                cos_psi = min(1.0, (rho + 1.0) * delta / 2.0)
                psi = sign * math.acos(cos_psi)
                z = lam * (1.0 - delta * cmath.exp(1j * psi))
                out.append((f"tangential:{'+' if sign > 0 else '-'}"
                            f":rho={rho:.6g}:j={j}", z))
    return out


@dataclass(frozen=True)
class ClusterSet:
    """Finite sample of the boundary cluster set of an analytic map."""

    points: np.ndarray
    descriptor: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "points", np.asarray(self.points, dtype=complex))

    def __len__(self):
        return self.points.size


def cluster_set(eta, lambda_angle, config=DEFAULT_PATHS, tol=DEDUP_TOL):
    """Sampled cluster set of ``eta`` at the boundary point ``e^{i angle}``.

    Values are taken at the deep end of every configured approach path and
    deduplicated to resolution ``tol``.  Non-finite evaluations (overflow
    very close to the boundary) are skipped and counted in the descriptor.
    """
    pts = approach_points(lambda_angle, config)
    zs = np.array([z for _, z in pts], dtype=complex)
    with np.errstate(over="ignore", invalid="ignore"):
        vals = eta(zs)
    finite = np.isfinite(vals)
    skipped = int((~finite).sum())
    values = dedup_points(vals[finite], tol)
    radius = eta.sup_norm * (1.0 + 1e-9) + 1e-12
    if values.size and np.abs(values).max() > radius:
        raise NumericalError(
            "cluster sample escapes the certified modulus bound",
            diagnostics={"max_modulus": float(np.abs(values).max()),
                         "bound": eta.sup_norm},
        )
    descriptor = dict(config.describe())
    descriptor.update({
        "lambda_angle": wrap_angle(lambda_angle),
        "samples": len(pts),
        "skipped": skipped,
        "tol": tol,
        "eta": eta.label,
    })
    return ClusterSet(values, descriptor)


# ---------------------------------------------------------------------------
# literals (shared by the CLI and config files)
# ---------------------------------------------------------------------------


def parse_circle_symbol(text):
    """Parse a boundary-symbol literal.

    Forms: ``const:RE+IMi``, ``mono:n``, ``step:angle:heightRE+IMi``,
    ``poly:c0,c1,...``.
    """
    text = text.strip()
    if text.startswith("const:"):
        return PiecewiseSymbol.constant(parse_complex(text[6:]))
    if text.startswith("mono:"):
        try:
            return PiecewiseSymbol.monomial(int(text[5:]))
        except ValueError as exc:
            raise SymbolError(f"bad monomial literal {text!r}") from exc
    if text.startswith("step:"):
        parts = text.split(":")
        if len(parts) != 3:
            raise SymbolError(f"bad step literal {text!r}")
        try:
            angle = float(parts[1])
        except ValueError as exc:
            raise SymbolError(f"bad step angle in {text!r}") from exc
        return PiecewiseSymbol.step(angle, parse_complex(parts[2]))
    if text.startswith("poly:"):
        coeffs = [parse_complex(c) for c in text[5:].split(",") if c.strip()]
        if not coeffs:
            raise SymbolError(f"empty polynomial literal {text!r}")
        return PiecewiseSymbol.analytic(coeffs, label=text)
    raise SymbolError(f"unknown symbol literal {text!r}")


def parse_eta(text):
    """Parse an analytic-map literal: ``const:``, ``poly:``, or ``eta-exp``."""
    text = text.strip()
    if text == "eta-exp":
        return EtaMap.exp_singular()
    if text.startswith("const:"):
        return EtaMap.constant(parse_complex(text[6:]))
    if text.startswith("poly:"):
        coeffs = [parse_complex(c) for c in text[5:].split(",") if c.strip()]
        if not coeffs:
            raise SymbolError(f"empty eta literal {text!r}")
        return EtaMap.polynomial(coeffs, label=text)
    raise SymbolError(f"unknown eta literal {text!r}")


def parse_multiplier(text):
    """Parse a multiplier literal: ``const:``, ``exp:a``, ``term:n:alpha``,
    or ``recip1p`` (the function 1/(1+t))."""
    text = text.strip()
    if text == "recip1p":
        return MultiplierSymbol.reciprocal_shift()
    if text.startswith("const:"):
        return MultiplierSymbol.constant(parse_complex(text[6:]))
    if text.startswith("exp:"):
        return MultiplierSymbol.exponential(parse_complex(text[4:]))
    if text.startswith("term:"):
        parts = text.split(":")
        if len(parts) != 3:
            raise SymbolError(f"bad term literal {text!r}")
        try:
            return MultiplierSymbol.decay_term(int(parts[1]), float(parts[2]))
        except ValueError as exc:
            raise SymbolError(f"bad term literal {text!r}") from exc
    raise SymbolError(f"unknown multiplier literal {text!r}")
