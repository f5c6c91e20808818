"""Coamoeba primitives, their differentials and the blowup-chart extension.

Angles are normalized so that the torus is ``[0, 1)^n``.  For ``n = 3`` the
plus region is the simplex ``{theta_i >= 0, sum <= 1}`` and the minus region
its antipode ``{theta_i <= 1, sum >= 2}``.  For ``n = 2`` the regions are the
triangles ``sum <= 1/2`` and ``sum >= 3/2``.

On either region the primitive is ``g = -+ lam * sqrt(F)`` where

    n = 3:  F = sin(pi*sum) * prod sin(pi*theta_i)
    n = 2:  F = cos(pi*sum) * prod sin(pi*theta_i)

with the minus sign on the plus region.  Array helpers take an ``(m, n)``
array of angles plus an ``(m,)`` array of signs (-1 on plus, +1 on minus).
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError
from .tropical import FOUR_VALENT_LEGS, distance_to_curve, standard_four_valent, tropical_pants

RADICAND_CLAMP = 1e-12
# angle arguments this close to a zero of a face factor count as on the face
FACE_SNAP = 1e-12
T_MAX = 0.2
VERTEX_MARGIN = 1e-3

PLUS, MINUS = "plus", "minus"
_SIGN = {PLUS: -1.0, MINUS: 1.0}


@dataclass(frozen=True)
class CoamoebaSpec:
    n: int = 3
    lam: float = 1.0

    def __post_init__(self):
        if self.n not in (2, 3):
            raise ValueError(f"only n = 2 and n = 3 are supported, got {self.n!r}")
        if not self.lam > 0:
            raise ValueError("lambda must be positive")

    @property
    def plus_bound(self) -> float:
        return 1.0 if self.n == 3 else 0.5

    @property
    def minus_bound(self) -> float:
        return 2.0 if self.n == 3 else 1.5


@dataclass(frozen=True)
class CoamoebaPoint:
    theta: tuple
    region: str

    def __post_init__(self):
        if self.region not in _SIGN:
            raise ValueError(f"region must be 'plus' or 'minus', got {self.region!r}")
        object.__setattr__(self, "theta", tuple(float(x) for x in self.theta))


def region_of(spec: CoamoebaSpec, theta: Sequence[float], tol: float = 1e-12) -> Optional[str]:
    """The closed region containing ``theta`` (taken in [0,1]^n), or None."""
    th = np.asarray(theta, dtype=float)
    s = th.sum()
    if np.all(th >= -tol) and s <= spec.plus_bound + tol:
        return PLUS
    if np.all(th <= 1 + tol) and s >= spec.minus_bound - tol:
        return MINUS
    return None


def _check_point(spec: CoamoebaSpec, p: CoamoebaPoint):
    if len(p.theta) != spec.n:
        raise ValueError(f"expected {spec.n} angles, got {len(p.theta)}")
    if region_of(spec, p.theta) != p.region:
        raise DomainError("region_violation", f"{p.theta} is not in the {p.region} region")


# -- vectorized formulas ---------------------------------------------------

def _face(spec: CoamoebaSpec, x):
    return np.sin(np.pi * x) if spec.n == 3 else np.cos(np.pi * x)


def _snapped_sinpi(x):
    # reduce to [-1/2, 1/2] exactly so that integers give an exact zero
    k = np.round(x)
    r = x - k
    r = np.where(np.abs(r) <= FACE_SNAP, 0.0, r)
    return np.where(np.mod(k, 2) == 0, 1.0, -1.0) * np.sin(np.pi * r)


def _snapped_face(spec: CoamoebaSpec, x):
    return _snapped_sinpi(x) if spec.n == 3 else _snapped_sinpi(x + 0.5)


def radicands(spec: CoamoebaSpec, theta: np.ndarray) -> np.ndarray:
    theta = np.atleast_2d(theta)
    return _face(spec, theta.sum(axis=1)) * np.prod(np.sin(np.pi * theta), axis=1)


def g_values(spec: CoamoebaSpec, theta: np.ndarray, signs: np.ndarray) -> np.ndarray:
    theta = np.atleast_2d(np.asarray(theta, dtype=float))
    f = _snapped_face(spec, theta.sum(axis=1)) * np.prod(_snapped_sinpi(theta), axis=1)
    if np.any(f < -RADICAND_CLAMP):
        raise DomainError("region_violation", f"negative radicand {f.min():.3g}")
    return signs * spec.lam * np.sqrt(np.clip(f, 0.0, None))


def dg_values(spec: CoamoebaSpec, theta: np.ndarray, signs: np.ndarray) -> np.ndarray:
    """Analytic gradient at strictly interior points, one row per point."""
    theta = np.atleast_2d(np.asarray(theta, dtype=float))
    sines = np.sin(np.pi * theta)
    total = theta.sum(axis=1)
    root = np.sqrt(radicands(spec, theta))
    out = np.empty_like(theta)
    for i in range(spec.n):
        others = np.prod(np.delete(sines, i, axis=1), axis=1)
        out[:, i] = others * _face(spec, total + theta[:, i])
    return (signs * spec.lam * np.pi / 2 / root)[:, None] * out


def g_eval(spec: CoamoebaSpec, p: CoamoebaPoint) -> float:
    _check_point(spec, p)
    return float(g_values(spec, np.array([p.theta]), np.array([_SIGN[p.region]]))[0])


def dg_eval(spec: CoamoebaSpec, p: CoamoebaPoint) -> np.ndarray:
    _check_point(spec, p)
    th = np.array([p.theta])
    if radicands(spec, th)[0] <= 0 or np.any(np.sin(np.pi * th) <= 0):
        raise DomainError("boundary_point", f"{p.theta} lies on a face; use the blowup charts")
    return dg_values(spec, th, np.array([_SIGN[p.region]]))[0]


# -- blowup charts ---------------------------------------------------------

EDGES = ("E1", "E2", "E3", "E12", "E13", "E23")

# vertex permutation sigma (0 is the origin, k is e_k) carrying the E3 chart to each edge
_EDGE_VERTEX_PERM = {
    "E3": (0, 1, 2, 3),
    "E1": (0, 2, 3, 1),
    "E2": (0, 3, 1, 2),
    "E12": (1, 0, 3, 2),
    "E13": (1, 0, 2, 3),
    "E23": (2, 0, 1, 3),
}


def _vertex(k: int) -> np.ndarray:
    v = np.zeros(3)
    if k:
        v[k - 1] = 1.0
    return v


def _affine(edge: str):
    sigma = _EDGE_VERTEX_PERM[edge]
    origin = _vertex(sigma[0])
    lin = np.column_stack([_vertex(sigma[k]) - origin for k in (1, 2, 3)])
    return origin, lin


@dataclass(frozen=True)
class BlowupChartPoint:
    """``(ratio, t, free)`` maps to ``(t*ratio, t, free)`` in the E3 chart, then by symmetry."""

    edge: str
    ratio: float
    t: float
    free: float

    def __post_init__(self):
        if self.edge not in _EDGE_VERTEX_PERM:
            raise ValueError(f"unknown edge {self.edge!r}; expected one of {EDGES}")


def _check_chart(q: BlowupChartPoint):
    r, t, f = q.ratio, q.t, q.free
    ok = 0 < r <= 1 and -T_MAX < t < T_MAX and 0 < f < 1
    if ok and t > 0:
        ok = t * r + t + f < 1
    elif ok and t < 0:
        ok = f + t * (1 + r) > 0
    if not ok:
        raise DomainError("out_of_range", f"chart point {q} is outside the chart")


def chart_image(q: BlowupChartPoint) -> tuple[np.ndarray, Optional[str]]:
    """Base point in [0,1)^3 and its region (None on the exceptional locus)."""
    _check_chart(q)
    origin, lin = _affine(q.edge)
    local = np.array([q.t * q.ratio, q.t, q.free])
    raw = origin + lin @ local
    if q.t < 0:
        # the minus region touches the far faces of the cube, so land in (0, 1]
        return 1.0 - np.mod(1.0 - raw, 1.0), MINUS
    return np.mod(raw, 1.0), (PLUS if q.t > 0 else None)


def _dg_e3(spec: CoamoebaSpec, r: float, t: float, f: float) -> np.ndarray:
    # np.sinc is sin(pi x) / (pi x) with value 1 at 0, so nothing here divides by t
    sin_f = math.sin(math.pi * f)
    sc_tr, sc_t = np.sinc(t * r), np.sinc(t)
    big = math.sin(math.pi * (t * r + t + f))
    denom = 2 * math.sqrt(r * sc_tr * sc_t * sin_f * big)
    d1 = -math.pi * sc_t * sin_f * math.sin(math.pi * (2 * t * r + t + f)) / denom
    d2 = -math.pi * r * sc_tr * sin_f * math.sin(math.pi * (t * r + 2 * t + f)) / denom
    d3 = -math.pi ** 2 * t * r * sc_tr * sc_t * math.sin(math.pi * (t * r + t + 2 * f)) / denom
    return spec.lam * np.array([d1, d2, d3])


def dg_extended(spec: CoamoebaSpec, q: BlowupChartPoint) -> np.ndarray:
    """The extension of dg across the blown-up edge, in torus coordinates."""
    if spec.n != 3:
        raise ValueError("blowup charts exist for n = 3 only")
    _check_chart(q)
    _, lin = _affine(q.edge)
    local = _dg_e3(spec, q.ratio, q.t, q.free)
    # g is invariant under the affine symmetry, so covectors move by the inverse transpose
    return np.linalg.solve(lin.T, local)


# cone generators for the image of each edge at t = 0
U = {0: np.array([1.0, 1.0, 1.0]), 1: np.array([-1.0, 0, 0]),
     2: np.array([0, -1.0, 0]), 3: np.array([0, 0, -1.0])}
CONE_OF_EDGE = {"E1": (2, 3), "E2": (1, 3), "E3": (1, 2),
                "E23": (0, 1), "E13": (0, 2), "E12": (0, 3)}


def distance_to_cone(w: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    """Euclidean distance from ``w`` to ``{s a + t b : s, t >= 0}``."""
    m = np.column_stack([a, b])
    coef, *_ = np.linalg.lstsq(m, w, rcond=None)
    if np.all(coef >= 0):
        return float(np.linalg.norm(w - m @ coef))
    best = float(np.linalg.norm(w))
    for u in (a, b):
        s = max(float(w @ u) / float(u @ u), 0.0)
        best = min(best, float(np.linalg.norm(w - s * u)))
    return best


@dataclass(frozen=True)
class ConeReport:
    residual: float
    member: bool
    image: tuple


def cone_membership(spec: CoamoebaSpec, q: BlowupChartPoint, tol: float = 1e-9) -> ConeReport:
    if q.t != 0:
        raise DomainError("out_of_range", "cone membership is checked on the exceptional locus t = 0")
    w = dg_extended(spec, q)
    j, k = CONE_OF_EDGE[q.edge]
    res = distance_to_cone(w, U[j], U[k])
    return ConeReport(res, res <= tol, tuple(float(x) for x in w))


# -- certification ---------------------------------------------------------

def interior_grid(spec: CoamoebaSpec, resolution: int) -> tuple[np.ndarray, np.ndarray]:
    """Grid points i/N (0 < i < N) strictly inside either region, with their signs."""
    n, res = spec.n, resolution
    idx = np.array(list(product(range(1, res), repeat=n)), dtype=np.int64)
    s = idx.sum(axis=1)
    if n == 3:
        plus, minus = s < res, s > 2 * res
    else:
        plus, minus = 2 * s < res, 2 * s > 3 * res
    keep = plus | minus
    signs = np.where(plus[keep], -1.0, 1.0)
    return idx[keep] / res, signs


@dataclass
class ClosednessReport:
    max_asymmetry: float
    worst_point: tuple
    passed: bool
    tol: float
    points: np.ndarray = field(repr=False)
    residuals: np.ndarray = field(repr=False)


GradientFn = Callable[[CoamoebaSpec, np.ndarray, np.ndarray], np.ndarray]

DEFAULT_STEP = 3e-5

# weights of the central stencils, indexed by offset in units of the step
_STENCILS = {2: {1: 1 / 2, -1: -1 / 2},
             4: {2: -1 / 12, 1: 8 / 12, -1: -8 / 12, -2: 1 / 12}}


def jacobian_asymmetry(spec: CoamoebaSpec, theta: np.ndarray, signs: np.ndarray,
                       step: float = DEFAULT_STEP, gradient: GradientFn = dg_values,
                       order: int = 4) -> np.ndarray:
    """Per point, max over i < j of |d_j(dg_i) - d_i(dg_j)| by central differences."""
    n = spec.n
    weights = _STENCILS[order]
    jac = np.zeros((len(theta), n, n))
    for j in range(n):
        for k, w in weights.items():
            e = np.zeros(n)
            e[j] = k * step
            jac[:, :, j] += w * gradient(spec, theta + e, signs)
    jac /= step
    asym = np.abs(jac - np.transpose(jac, (0, 2, 1)))
    return asym.reshape(len(theta), -1).max(axis=1)


def certify_closed(spec: CoamoebaSpec, resolution: int = 31, tol: float = 1e-7,
                   step: float = DEFAULT_STEP, gradient: GradientFn = dg_values,
                   order: int = 4) -> ClosednessReport:
    """``gradient`` is a test hook; the default is the analytic differential."""
    if resolution < 8:
        raise ValueError("resolution must be at least 8")
    pts, signs = interior_grid(spec, resolution)
    res = jacobian_asymmetry(spec, pts, signs, step, gradient, order)
    k = int(np.argmax(res))
    worst = float(res[k])
    return ClosednessReport(worst, tuple(float(x) for x in pts[k]), worst <= tol, tol, pts, res)


# -- sampling --------------------------------------------------------------

@dataclass
class ImmersionSample:
    spec: CoamoebaSpec
    base: np.ndarray  # angles in [0, 1)^n
    fiber: np.ndarray  # cotangent vectors
    source: list  # "plus", "minus", or an edge name


def _face_margin(q: BlowupChartPoint) -> float:
    return min(1 - (q.t * q.ratio + q.t + q.free), q.free + q.t * (1 + q.ratio))


def chart_grid(resolution: int) -> list[BlowupChartPoint]:
    """Chart points on every edge, t = 0 included, at least half a grid step off the faces."""
    out = []
    ts = np.linspace(-T_MAX, T_MAX, 2 * (resolution // 2) + 1)[1:-1]
    for edge in EDGES:
        for a in range(1, resolution + 1):
            for t in ts:
                for b in range(1, resolution):
                    q = BlowupChartPoint(edge, a / resolution, float(t), b / resolution)
                    try:
                        _check_chart(q)
                    except DomainError:
                        continue
                    if _face_margin(q) >= 0.5 / resolution:
                        out.append(q)
    return out


def _near_vertex(theta: np.ndarray, margin: float) -> np.ndarray:
    # every vertex of either simplex sits at a lattice point of the torus
    d = np.minimum(theta, 1 - theta)
    return np.linalg.norm(d, axis=1) < margin


def sample_immersion(spec: CoamoebaSpec, resolution: int = 16) -> ImmersionSample:
    pts, signs = interior_grid(spec, resolution)
    fibers = dg_values(spec, pts, signs)
    bases = [pts]
    fibs = [fibers]
    source = [PLUS if s < 0 else MINUS for s in signs]
    if spec.n == 3:
        cps = chart_grid(resolution)
        cb = np.array([chart_image(q)[0] for q in cps])
        cf = np.array([dg_extended(spec, q) for q in cps])
        keep = ~_near_vertex(cb, VERTEX_MARGIN)
        bases.append(cb[keep])
        fibs.append(cf[keep])
        source += [q.edge for q, k in zip(cps, keep) if k]
    return ImmersionSample(spec, np.vstack(bases), np.vstack(fibs), source)


def hausdorff_to_tropical(sample: ImmersionSample) -> float:
    """One-sided: max over the cloud of the distance from the fiber point to the tropical curve."""
    curve = standard_four_valent() if sample.spec.n == 3 else tropical_pants()
    return max(distance_to_curve(q, curve) for q in sample.fiber)


def leg_alignment(sample: ImmersionSample, legs: Sequence = None) -> np.ndarray:
    """Per sample, the best cosine between the fiber direction and a tropical leg."""
    if legs is None:
        legs = FOUR_VALENT_LEGS if sample.spec.n == 3 else ((-1, 0), (0, -1), (1, 1))
    dirs = np.array([np.asarray(u, float) / np.linalg.norm(u) for u in legs])
    norms = np.linalg.norm(sample.fiber, axis=1)
    unit = sample.fiber / np.where(norms > 0, norms, 1.0)[:, None]
    return (unit @ dirs.T).max(axis=1)


# -- export ----------------------------------------------------------------

def _fmt(x: float) -> str:
    return repr(float(x))


def sample_csv(sample: ImmersionSample) -> str:
    n = sample.spec.n
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"theta{i + 1}" for i in range(n)] + [f"q{i + 1}" for i in range(n)])
    for b, f in zip(sample.base, sample.fiber):
        w.writerow([_fmt(x) for x in b] + [_fmt(x) for x in f])
    return buf.getvalue()


def residual_csv(points: np.ndarray, residuals: np.ndarray) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["point", "residual"])
    for p, r in zip(points, residuals):
        w.writerow([";".join(_fmt(x) for x in p), _fmt(r)])
    return buf.getvalue()


def chart_cone_residuals(spec: CoamoebaSpec, resolution: int) -> float:
    worst = 0.0
    for q in chart_grid(resolution):
        if q.t == 0:
            worst = max(worst, cone_membership(spec, q).residual)
    return worst


def summary_json(max_curl: float, max_cone_residual: Optional[float], max_hausdorff: float) -> str:
    return json.dumps({"max_curl": max_curl, "max_cone_residual": max_cone_residual,
                       "max_hausdorff": max_hausdorff}, sort_keys=True)
