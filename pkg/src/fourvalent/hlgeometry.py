"""Harvey-Lawson cone data: link parametrization, fronts, and filling slopes."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .chainlink import LONGITUDES, meridian
from .errors import DomainError

CAUSTIC_THRESHOLD = 1e-12


@dataclass(frozen=True)
class LinkPoint:
    s: float
    t: float
    epsilon: float
    z: tuple  # three complex numbers


def link_point(s: float, t: float, epsilon: float) -> LinkPoint:
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    r = math.sqrt(epsilon / 3)
    z = (r * cmath.exp(1j * s), r * cmath.exp(1j * t), r * cmath.exp(-1j * (s + t)))
    return LinkPoint(s, t, epsilon, z)


def front_of(z) -> np.ndarray:
    """``exp(n . y) * n`` where ``z = x + iy`` and ``n = x / |x|``."""
    z = np.asarray(z, dtype=complex)
    x, y = z.real, z.imag
    norm = float(np.linalg.norm(x))
    if norm <= CAUSTIC_THRESHOLD:
        raise DomainError("caustic_point", f"|Re z| = {norm:.3g}")
    n = x / norm
    return math.exp(float(n @ y)) * n


def front_projection(s: float, t: float, epsilon: float) -> np.ndarray:
    return front_of(link_point(s, t, epsilon).z)


def caustic_vertices(epsilon: float) -> dict:
    """Labelled corners of the caustic tetrahedron, kept for export only."""
    r = math.sqrt(epsilon / 3)
    signs = {"ppp": (1, 1, 1), "pmm": (1, -1, -1), "mpm": (-1, 1, -1), "mmp": (-1, -1, 1)}
    return {k: tuple(r * c for c in v) for k, v in signs.items()}


BASE_CHANGE = tuple(tuple(Fraction(x, 4) for x in row)
                    for row in ((-1, 1, 1), (1, -1, 1), (1, 1, -1)))
FIBER_CHANGE = tuple(tuple(Fraction(x, 2) for x in row)
                     for row in ((0, 1, 1), (1, 0, 1), (1, 1, 0)))


def apply_change(v, which: str) -> tuple:
    """Multiply ``v`` by the base or fiber matrix; exact when ``v`` is rational."""
    try:
        m = {"base": BASE_CHANGE, "fiber": FIBER_CHANGE}[which]
    except KeyError:
        raise ValueError(f"which must be 'base' or 'fiber', got {which!r}") from None
    if len(v) != 3:
        raise ValueError("expected a 3-vector")
    return tuple(sum(a * x for a, x in zip(row, v)) for row in m)


@dataclass(frozen=True)
class SmoothingClass:
    index: int
    delta: float
    value: tuple


def smoothing_class(i: int, delta: float) -> SmoothingClass:
    if not delta > 0:
        raise ValueError("delta must be positive")
    a = math.pi * delta
    table = {1: (a, 0.0), 2: (0.0, a), 3: (-a, -a)}
    if i not in table:
        raise ValueError(f"smoothing index must be 1, 2 or 3, got {i!r}")
    return SmoothingClass(i, delta, table[i])


def link_cycle_classes() -> tuple:
    """The link torus generators m0 and -l0 in the meridian basis."""
    return meridian(0), tuple(-c for c in LONGITUDES[0])


@dataclass(frozen=True)
class FillingData:
    """Values of the deforming 1-form on m0 and l0, in units of epsilon."""

    alpha_m0: Fraction
    alpha_l0: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha_m0", Fraction(self.alpha_m0))
        object.__setattr__(self, "alpha_l0", Fraction(self.alpha_l0))


# per smoothing i = 1, 2, 3
FILLING_TABLE = {
    1: FillingData(0, 2),
    2: FillingData(2, -2),
    3: FillingData(-2, 0),
}


@dataclass(frozen=True)
class Slope:
    p: int
    q: int

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    def __str__(self):
        if self.q == 0:
            return "inf"
        return str(self.p) if self.q == 1 else f"{self.p}/{self.q}"


def filling_slope(d: FillingData) -> Slope:
    """The primitive class p*m0 + q*l0 killed by the 1-form, with q >= 0."""
    a, b = d.alpha_m0, d.alpha_l0
    if a == 0 and b == 0:
        raise DomainError("degenerate_filling", "alpha vanishes on both m0 and l0")
    # (p, q) proportional to (b, -a); clear denominators then divide by the gcd
    den = math.lcm(a.denominator, b.denominator)
    p, q = int(b * den), int(-a * den)
    g = math.gcd(p, q)
    p, q = p // g, q // g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return Slope(p, q)
