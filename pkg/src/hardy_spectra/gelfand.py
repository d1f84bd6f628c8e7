"""Sampled boundary functionals and essential-spectrum approximations.

The commutative quotient generated by Toeplitz operators with piecewise
symbols, parabolic-type composition operators, and continuous multipliers
has its functionals parameterized by a circle point ``lambda`` with a fiber
coordinate ``s`` in [0,1], a boundary-value assignment for each analytic
map (surrogated here by approach paths), and a half-line coordinate
``z`` in [0, inf]; a finite ``z`` forces ``lambda = 1``.  Leaf values:

* Toeplitz with piecewise symbol ``a``:  ``s a(l-) + (1-s) a(l+)``
  (the fiber coordinate weights the left limit);
* Toeplitz with an analytic symbol derived from a map ``eta``: the symbol
  evaluated with ``eta`` replaced by its assigned boundary value ``w``;
* multiplier ``theta``:  ``theta(z)``, the declared limit at ``z = inf``;
* composition with map ``eta``:  ``exp(i z w)``, which extends by 0 at
  ``z = inf`` because ``Im w >= epsilon > 0``.

Nodes evaluate homomorphically, so multiplicativity and adjoint-conjugation
hold to machine precision by construction.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, SymbolError
from .operators import (
    Adjoint,
    AnalyticSymbol,
    Composition,
    Expression,
    Identity,
    Multiplier,
    Product,
    Scalar,
    Sum,
    Toeplitz,
    expression_etas,
)
from .symbols import (
    DEDUP_TOL,
    DEFAULT_PATHS,
    EtaMap,
    PiecewiseSymbol,
    cluster_set,
    dedup_points,
    wrap_angle,
)

#: angle identified with the distinguished boundary point 1
_ANGLE_TOL = 1e-12


@dataclass(frozen=True)
class IdealPoint:
    """One sampled boundary functional.

    ``eta_values`` assigns the boundary value used for every registered
    analytic map; constant maps never need registration.  ``z`` is a
    nonnegative float or ``math.inf``; finite ``z`` requires the base point
    to be 1 (angle 0).
    """

    lambda_angle: float
    s: float
    z: float
    eta_values: dict = field(default_factory=dict)
    path_id: str = "radial"

    def __post_init__(self):
        angle = wrap_angle(self.lambda_angle)
        object.__setattr__(self, "lambda_angle", angle)
        if not -1e-12 <= self.s <= 1.0 + 1e-12:
            raise ConfigurationError(f"fiber coordinate s={self.s} outside [0, 1]")
        if not (math.isinf(self.z) or self.z >= 0.0):
            raise ConfigurationError(f"half-line coordinate z={self.z} invalid")
        if not math.isinf(self.z):
            if min(angle, abs(angle - 2 * math.pi)) > _ANGLE_TOL:
                raise ConfigurationError(
                    "finite half-line coordinate requires base point 1 (angle 0)"
                )

    @property
    def lam(self):
        return complex(np.exp(1j * self.lambda_angle))

    def eta_value(self, eta):
        if eta.is_constant:
            return eta.constant_value
        for key, val in self.eta_values.items():
            if key is eta:
                return complex(val)
        raise ConfigurationError(
            f"analytic map {eta.label!r} is not registered with this ideal point"
        )


def gelfand_evaluate(expr, point):
    """Value of the expression's coset at one sampled functional."""
    if isinstance(expr, Identity):
        return 1.0 + 0.0j
    if isinstance(expr, Toeplitz):
        sym = expr.symbol
        if isinstance(sym, PiecewiseSymbol):
            left, right = sym.one_sided(point.lambda_angle)
            return point.s * left + (1.0 - point.s) * right
        if isinstance(sym, AnalyticSymbol):
            w = point.eta_value(sym.eta) if sym.eta is not None else None
            return sym.functional_value(point.lam, w)
        raise SymbolError(f"unsupported Toeplitz symbol {sym!r}")
    if isinstance(expr, Multiplier):
        return expr.symbol.value(point.z)
    if isinstance(expr, Composition):
        if math.isinf(point.z):
            return 0.0 + 0.0j
        w = point.eta_value(expr.eta)
        return complex(np.exp(1j * point.z * w))
    if isinstance(expr, Sum):
        return sum(gelfand_evaluate(t, point) for t in expr.terms)
    if isinstance(expr, Product):
        out = 1.0 + 0.0j
        for f in expr.factors:
            out *= gelfand_evaluate(f, point)
        return out
    if isinstance(expr, Scalar):
        return complex(expr.value) * gelfand_evaluate(expr.child, point)
    if isinstance(expr, Adjoint):
        return gelfand_evaluate(expr.child, point).conjugate()
    raise SymbolError(f"unknown expression node {expr!r}")


# ---------------------------------------------------------------------------
# grids
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumGrids:
    """Sampling grids for the spectrum engines.

    The half-line grid is logarithmic on ``[t_min, t_max]`` with the points
    0 and infinity appended; by ``t_max = 40`` the composition factor has
    magnitude at most ``e^{-40 eps}``.  ``t_count`` defaults high enough
    that the sampled decay curve is closer than 1e-3 (Hausdorff) to its
    continuum image.  ``budget`` caps the raw sweep size by thinning the
    half-line grid deterministically; ``cluster_cap`` subsamples large
    cluster sets by a deterministic stride.
    """

    s_count: int = 101
    t_count: int = 4001
    t_min: float = 1e-3
    t_max: float = 40.0
    lambda_count: int = 512
    cluster_cap: int = 64
    tol: float = DEDUP_TOL
    budget: int = 2_000_000
    paths: object = DEFAULT_PATHS

    def s_grid(self):
        return np.linspace(0.0, 1.0, self.s_count)

    def t_grid(self):
        core = np.geomspace(self.t_min, self.t_max, self.t_count)
        return np.r_[0.0, core, np.inf]

    def lambda_grid(self, extra_angles=()):
        grid = np.linspace(0.0, 2.0 * math.pi, self.lambda_count, endpoint=False)
        if len(extra_angles):
            grid = np.unique(np.r_[grid, [wrap_angle(a) for a in extra_angles]])
        return grid

    def describe(self):
        return {
            "s_count": self.s_count,
            "t_count": self.t_count,
            "t_range": (self.t_min, self.t_max),
            "lambda_count": self.lambda_count,
            "cluster_cap": self.cluster_cap,
            "tol": self.tol,
        }


DEFAULT_GRIDS = SpectrumGrids()


@dataclass(frozen=True)
class SpectrumSet:
    """Finite approximation of a spectrum: points plus grid metadata."""

    points: np.ndarray
    grid: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "points", np.asarray(self.points, dtype=complex))

    def __len__(self):
        return self.points.size


def _capped_cluster_values(eta, angle, grids):
    values = cluster_set(eta, angle, grids.paths, grids.tol).points
    if values.size > grids.cluster_cap:
        stride = -(-values.size // grids.cluster_cap)
        values = values[::stride]
    return values


def _exp_factors(cluster_values, t_grid):
    """Values ``e^{i w t}`` over clusters and half-line grid, with the
    convention that the factor vanishes at ``t = inf``."""
    finite = t_grid[np.isfinite(t_grid)]
    prods = np.exp(1j * np.outer(cluster_values, finite)).ravel()
    if np.any(np.isinf(t_grid)):
        prods = np.r_[prods, 0.0 + 0.0j]
    return prods


def _fiber_values(symbol, angles, s_grid):
    """Fiber values ``s a(l-) + (1-s) a(l+)`` over angle and s grids."""
    lefts = np.empty(len(angles), dtype=complex)
    rights = np.empty(len(angles), dtype=complex)
    for i, ang in enumerate(angles):
        lefts[i], rights[i] = symbol.one_sided(ang)
    vals = np.outer(s_grid, lefts) + np.outer(1.0 - s_grid, rights)
    return vals.ravel()


def _thin_to_budget(grids, n_factors):
    """Half-line grid thinned so the raw sweep stays within the budget."""
    t = grids.t_grid()
    raw = n_factors * t.size
    if raw <= grids.budget:
        return t
    stride = -(-raw // grids.budget)
    core = t[1:-1][::stride]
    return np.r_[t[0], core, t[-1]]


def spectrum_product(symbol, eta, grids=DEFAULT_GRIDS):
    """Essential-spectrum sample for (Toeplitz with ``symbol``) x
    (composition with map ``eta``).

    The value set is ``(s a(1-) + (1-s) a(1+)) e^{i w t}`` over the fiber
    grid, the cluster sample of ``eta`` at 1, and the half-line grid.
    """
    fibers = dedup_points(_fiber_values(symbol, [0.0], grids.s_grid()), grids.tol)
    clusters = _capped_cluster_values(eta, 0.0, grids)
    t = _thin_to_budget(grids, max(1, fibers.size) * max(1, clusters.size))
    exps = dedup_points(_exp_factors(clusters, t), grids.tol)
    values = np.concatenate([f * exps for f in fibers]) if fibers.size else exps
    meta = grids.describe()
    meta.update({"kind": "product", "symbol": symbol.label, "eta": eta.label,
                 "cluster_values": int(clusters.size), "t_points": int(t.size)})
    return SpectrumSet(dedup_points(values, grids.tol), meta)


def spectrum_sum(symbol, eta, grids=DEFAULT_GRIDS):
    """Essential-spectrum sample for (Toeplitz with ``symbol``) +
    (composition with map ``eta``).

    The value set sweeps ``(s a(l-) + (1-s) a(l+)) + e^{i w t}`` with the
    circle point, fiber coordinate, cluster value at 1, and half-line
    coordinate all independent; the half-line point at infinity contributes
    the bare fiber values.
    """
    anchors = [a for a, _ in symbol.jumps]
    angles = grids.lambda_grid(extra_angles=anchors)
    fibers = dedup_points(_fiber_values(symbol, angles, grids.s_grid()), grids.tol)
    clusters = _capped_cluster_values(eta, 0.0, grids)
    t = _thin_to_budget(grids, max(1, fibers.size) * max(1, clusters.size))
    exps = dedup_points(_exp_factors(clusters, t), grids.tol)
    values = np.concatenate([f + exps for f in fibers])
    meta = grids.describe()
    meta.update({"kind": "sum", "symbol": symbol.label, "eta": eta.label,
                 "cluster_values": int(clusters.size), "t_points": int(t.size),
                 "lambda_points": int(angles.size)})
    return SpectrumSet(dedup_points(values, grids.tol), meta)


# ---------------------------------------------------------------------------
# general expressions: vectorized sweep over sampled functionals
# ---------------------------------------------------------------------------


def _vector_eval(expr, lam, s, z, eta_vals):
    """Vectorized twin of :func:`gelfand_evaluate` over point arrays."""
    n = lam.size
    if isinstance(expr, Identity):
        return np.ones(n, dtype=complex)
    if isinstance(expr, Toeplitz):
        sym = expr.symbol
        if isinstance(sym, PiecewiseSymbol):
            angles = np.angle(lam) % (2 * math.pi)
            uniq = np.unique(angles)
            out = np.empty(n, dtype=complex)
            for ang in uniq:
                left, right = sym.one_sided(ang)
                mask = angles == ang
                out[mask] = s[mask] * left + (1.0 - s[mask]) * right
            return out
        w = _lookup_eta(eta_vals, sym.eta) if sym.eta is not None else None
        if w is None:
            return np.asarray(sym.eval(lam), dtype=complex)
        return np.array(
            [sym.functional_value(l, wv) for l, wv in zip(lam, w)], dtype=complex
        )
    if isinstance(expr, Multiplier):
        out = np.full(n, expr.symbol.value_at_infinity, dtype=complex)
        finite = np.isfinite(z)
        if finite.any():
            out[finite] = expr.symbol(z[finite])
        return out
    if isinstance(expr, Composition):
        w = _lookup_eta(eta_vals, expr.eta)
        out = np.zeros(n, dtype=complex)
        finite = np.isfinite(z)
        if finite.any():
            out[finite] = np.exp(1j * z[finite] * w[finite])
        return out
    if isinstance(expr, Sum):
        out = np.zeros(n, dtype=complex)
        for t in expr.terms:
            out += _vector_eval(t, lam, s, z, eta_vals)
        return out
    if isinstance(expr, Product):
        out = np.ones(n, dtype=complex)
        for f in expr.factors:
            out *= _vector_eval(f, lam, s, z, eta_vals)
        return out
    if isinstance(expr, Scalar):
        return complex(expr.value) * _vector_eval(expr.child, lam, s, z, eta_vals)
    if isinstance(expr, Adjoint):
        return np.conj(_vector_eval(expr.child, lam, s, z, eta_vals))
    raise SymbolError(f"unknown expression node {expr!r}")


def _lookup_eta(eta_vals, eta):
    if eta.is_constant:
        return np.full(next(iter(eta_vals.values())).size if eta_vals else 0,
                       eta.constant_value, dtype=complex)
    for key, arr in eta_vals.items():
        if key is eta:
            return arr
    raise ConfigurationError(
        f"analytic map {eta.label!r} is not registered on this sweep"
    )


def _expression_anchor_angles(expr):
    out = set()
    for leaf in expr.leaves():
        if isinstance(leaf, Toeplitz) and isinstance(leaf.symbol, PiecewiseSymbol):
            out.update(a for a, _ in leaf.symbol.jumps)
    return sorted(out)


def sampled_ideal_points(expr, grids=DEFAULT_GRIDS):
    """Struct-of-arrays sweep over both strata of the functional space.

    Stratum one sits over the base point 1 with the full half-line grid and
    one functional per approach path; stratum two sweeps the whole circle at
    ``z = inf`` with a single deep radial surrogate per circle point (the
    composition factor vanishes there, so only analytic Toeplitz leaves see
    the surrogate value).
    """
    etas = [e for e in expression_etas(expr) if not e.is_constant]
    s_grid = grids.s_grid()
    blocks = []

    # stratum over the base point 1: finite and infinite z
    surrogates = [None]
    if etas:
        joint = {}
        from .symbols import approach_points

        pts = approach_points(0.0, grids.paths)
        if len(pts) > grids.cluster_cap:
            stride = -(-len(pts) // grids.cluster_cap)
            pts = pts[::stride]
        zs = np.array([p for _, p in pts], dtype=complex)
        for eta in etas:
            with np.errstate(over="ignore", invalid="ignore"):
                joint[eta] = np.asarray(eta(zs), dtype=complex)
        surrogates = list(range(len(pts)))
    t = _thin_to_budget(grids, grids.s_count * max(1, len(surrogates)))
    for si in surrogates:
        ss, tt = np.meshgrid(s_grid, t, indexing="ij")
        ss, tt = ss.ravel(), tt.ravel()
        lam = np.ones(ss.size, dtype=complex)
        ev = {}
        for eta in etas:
            ev[eta] = np.full(ss.size, joint[eta][si], dtype=complex)
        blocks.append((lam, ss, tt, ev))

    # stratum over the whole circle at z = inf
    angles = grids.lambda_grid(extra_angles=_expression_anchor_angles(expr))
    lam2, ss2 = np.meshgrid(np.exp(1j * angles), s_grid, indexing="ij")
    lam2, ss2 = lam2.ravel(), ss2.ravel()
    zz2 = np.full(lam2.size, np.inf)
    ev2 = {}
    if etas:
        deep = lam2 * (1.0 - grids.paths.deep_delta)
        for eta in etas:
            with np.errstate(over="ignore", invalid="ignore"):
                ev2[eta] = np.asarray(eta(deep), dtype=complex)
    blocks.append((lam2, ss2, zz2, ev2))

    lam = np.concatenate([b[0] for b in blocks])
    s = np.concatenate([b[1] for b in blocks])
    z = np.concatenate([b[2] for b in blocks])
    ev = {}
    for eta in etas:
        ev[eta] = np.concatenate([b[3][eta] for b in blocks])
    return lam, s, z, ev


def spectrum_general(expr, grids=DEFAULT_GRIDS):
    """Gelfand-value sample of an arbitrary expression over both strata."""
    if not isinstance(expr, Expression):
        raise SymbolError("spectrum_general expects an Expression")
    lam, s, z, ev = sampled_ideal_points(expr, grids)
    values = _vector_eval(expr, lam, s, z, ev)
    values = values[np.isfinite(values)]
    meta = grids.describe()
    meta.update({"kind": "general", "expression": expr.describe(),
                 "points_swept": int(lam.size)})
    return SpectrumSet(dedup_points(values, grids.tol), meta)


def gelfand_sup(expr, grids=DEFAULT_GRIDS):
    """Sup of |Gelfand values| over the sampled functionals."""
    lam, s, z, ev = sampled_ideal_points(expr, grids)
    values = _vector_eval(expr, lam, s, z, ev)
    values = values[np.isfinite(values)]
    return float(np.abs(values).max()) if values.size else 0.0


def hausdorff_distance(a, b):
    """Hausdorff distance between two finite nonempty planar point sets."""
    pa = a.points if isinstance(a, SpectrumSet) else np.asarray(a, dtype=complex)
    pb = b.points if isinstance(b, SpectrumSet) else np.asarray(b, dtype=complex)
    pa, pb = pa.ravel(), pb.ravel()
    if pa.size == 0 or pb.size == 0:
        raise ValueError("hausdorff distance needs nonempty sets")

    def directed(x, y):
        worst = 0.0
        for i in range(0, x.size, 1024):
            chunk = x[i : i + 1024]
            d = np.abs(chunk[:, None] - y[None, :]).min(axis=1).max()
            worst = max(worst, float(d))
        return worst

    return max(directed(pa, pb), directed(pb, pa))
