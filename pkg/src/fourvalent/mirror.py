"""Local systems on the immersed brane, their Plücker lines and Floer support.

Everything here is exact: inputs are Fractions or residues mod p and all
outputs stay in the same field.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .algebra import (
    GF, QQ, Field, FieldElement, GradedComplex, Matrix, cohomology_ranks,
    common_field, solve_affine,
)
from .chainlink import LONGITUDES, holonomy
from .errors import DomainError


@dataclass(frozen=True)
class LocalSystem:
    """Meridian holonomies mu0..mu4, all nonzero, in one field."""

    mu: tuple
    field: Field = QQ

    def __post_init__(self):
        if len(self.mu) != 5:
            raise ValueError(f"a local system has five holonomies, got {len(self.mu)}")
        mu = tuple(self.field(m) for m in self.mu)
        if any(m == 0 for m in mu):
            raise ValueError("holonomies must be nonzero")
        object.__setattr__(self, "mu", mu)

    @classmethod
    def of(cls, values: Sequence, field: Field | None = None) -> "LocalSystem":
        return cls(tuple(values), field if field is not None else common_field(values))

    def longitude_holonomy(self, i: int) -> FieldElement:
        return holonomy(LONGITUDES[i], self.mu)

    @property
    def lambdas(self) -> tuple:
        return tuple(self.longitude_holonomy(i) for i in range(5))


def curvature(ls: LocalSystem) -> FieldElement:
    """Teardrop count up to a unit; zero exactly when the brane is unobstructed."""
    m0, m1, _, _, m4 = ls.mu
    return 1 + 1 / m0 + m1 * m4 / m0


def is_unobstructed(ls: LocalSystem) -> bool:
    return curvature(ls) == 0


def restricted_holonomies(ls: LocalSystem, i: int) -> tuple:
    """Holonomies of the local system restricted to the i-th pants surface."""
    mu, lam = ls.mu, ls.lambdas
    if i == 1:
        return (1 / lam[3], mu[2])
    if i == 2:
        return (1 / (mu[3] * lam[3]), lam[1])
    if i == 3:
        return (mu[2] * lam[2], mu[1] * lam[1])
    raise ValueError(f"pants index must be 1, 2 or 3, got {i!r}")


# sign of the x_j term, the x_k term and the constant, as printed for each pants surface
DEFAULT_SIGNS = {1: (1, -1, 1), 2: (-1, 1, 1), 3: (1, -1, 1)}

_COMPLEMENT = {1: (2, 3), 2: (1, 3), 3: (1, 2)}


@dataclass(frozen=True)
class SupportRelation:
    """``a_j * x_j + a_k * x_k + c = 0`` in the two variables other than x_i."""

    index: int
    variables: tuple  # (j, k), 1-based
    coefficients: tuple  # (a_j, a_k, c)
    signs: tuple

    def evaluate(self, x: Sequence) -> FieldElement:
        j, k = self.variables
        a_j, a_k, c = self.coefficients
        return a_j * x[j - 1] + a_k * x[k - 1] + c

    def row(self) -> tuple:
        """Coefficient row over (x1, x2, x3) and the right-hand side."""
        j, k = self.variables
        a_j, a_k, c = self.coefficients
        zero = c - c
        row = [zero, zero, zero]
        row[j - 1], row[k - 1] = a_j, a_k
        return tuple(row), -c

    def __str__(self):
        from .algebra import format_element
        j, k = self.variables
        a_j, a_k, c = self.coefficients
        return f"({format_element(a_j)})*x{j} + ({format_element(a_k)})*x{k} + ({format_element(c)}) = 0"


def support_relation(ls: LocalSystem, i: int, signs: Sequence[int] | None = None) -> SupportRelation:
    signs = tuple(signs) if signs is not None else DEFAULT_SIGNS.get(i)
    rho_j, rho_k = restricted_holonomies(ls, i)
    s1, s2, s3 = signs
    one = ls.field.one
    return SupportRelation(i, _COMPLEMENT[i], (s1 / rho_j, s2 / rho_k, s3 * one), signs)


def support_relations(ls: LocalSystem) -> tuple:
    return tuple(support_relation(ls, i) for i in (1, 2, 3))


# -- Plücker coordinates -------------------------------------------------

PLUECKER_LABELS = ("12", "13", "14", "23", "24", "34")


@dataclass(frozen=True)
class PlueckerPoint:
    coords: tuple  # (phi12, phi13, phi14, phi23, phi24, phi34)
    field: Field = QQ

    def __post_init__(self):
        if len(self.coords) != 6:
            raise ValueError("a Plücker point has six coordinates")
        coords = tuple(self.field(c) for c in self.coords)
        if all(c == 0 for c in coords):
            raise ValueError("Plücker coordinates cannot all vanish")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, values: Sequence, field: Field | None = None) -> "PlueckerPoint":
        return cls(tuple(values), field if field is not None else common_field(values))

    @property
    def generic(self) -> bool:
        return all(c != 0 for c in self.coords)

    def scaled(self, factor) -> "PlueckerPoint":
        return PlueckerPoint(tuple(factor * c for c in self.coords), self.field)

    def __getitem__(self, label: str) -> FieldElement:
        return self.coords[PLUECKER_LABELS.index(label)]


def pluecker_embed(ls: LocalSystem) -> PlueckerPoint:
    m0, m1, m2, m3, m4 = ls.mu
    return PlueckerPoint(
        (
            m4 / (m1 * m2),
            -1 / (m1 * m2),
            1 / m1,
            m0 / (m1 * m2 * m3),
            1 / (m1 * m3),
            1 / m3,
        ),
        ls.field,
    )


def pluecker_relation(p: PlueckerPoint) -> FieldElement:
    p12, p13, p14, p23, p24, p34 = p.coords
    return p12 * p34 - p13 * p24 + p14 * p23


def normalize_line(p: PlueckerPoint) -> PlueckerPoint:
    """Rescale so that phi24 = phi14 * phi34, as on the image of the embedding."""
    if not p.generic:
        raise DomainError("non_generic_line", "all six Plücker coordinates must be nonzero")
    return p.scaled(p["24"] / (p["14"] * p["34"]))


def localsystem_from_line(p: PlueckerPoint) -> LocalSystem:
    q = normalize_line(p)
    if pluecker_relation(q) != 0:
        raise DomainError("not_a_line", "the Grassmann-Plücker relation does not vanish")
    p12, p13, p14, p23, _, p34 = q.coords
    mu = (
        -p23 / (p13 * p34),
        1 / p14,
        -p14 / p13,
        1 / p34,
        -p12 / p13,
    )
    return LocalSystem(mu, q.field)


# -- Floer complexes -----------------------------------------------------

def koszul_complex(alpha: Sequence, z: Sequence, field: Field | None = None) -> GradedComplex:
    """Exterior algebra on m generators with differential ``v ∧ -`` for ``v = z - alpha``."""
    if len(alpha) != len(z) or not alpha:
        raise ValueError("alpha and z must be nonempty and of equal length")
    field = field or common_field(list(alpha) + list(z))
    alpha = [field(a) for a in alpha]
    z = [field(x) for x in z]
    if any(a == 0 for a in alpha) or any(x == 0 for x in z):
        raise ValueError("holonomies must be nonzero")
    m = len(alpha)
    v = [x - a for x, a in zip(z, alpha)]
    bases = [list(itertools.combinations(range(m), d)) for d in range(m + 1)]
    diffs = []
    for d in range(m):
        src, dst = bases[d], bases[d + 1]
        where = {s: r for r, s in enumerate(dst)}
        rows = [[field.zero] * len(src) for _ in dst]
        for col, subset in enumerate(src):
            for i in range(m):
                if i in subset:
                    continue
                sign = -1 if sum(1 for j in subset if j < i) % 2 else 1
                target = tuple(sorted(subset + (i,)))
                rows[where[target]][col] = rows[where[target]][col] + sign * v[i]
        diffs.append(Matrix(len(dst), len(src), tuple(e for r in rows for e in r), field))
    return GradedComplex(0, tuple(comb(m, d) for d in range(m + 1)), tuple(diffs), field)


def koszul_hf(alpha: Sequence, z: Sequence, field: Field | None = None) -> dict:
    return cohomology_ranks(koszul_complex(alpha, z, field))


def pants_hf(rho: Sequence, z: Sequence, signs: Sequence[int] = (1, 1, 1), field: Field | None = None) -> tuple:
    """Ranks in degrees 0 and 1 of ``K --(s1 z1/rho1 + s2 z2/rho2 + s3)--> K``."""
    field = field or common_field(list(rho) + list(z))
    rho = [field(r) for r in rho]
    z = [field(x) for x in z]
    if any(r == 0 for r in rho) or any(x == 0 for x in z):
        raise ValueError("holonomies must be nonzero")
    s1, s2, s3 = signs
    entry = s1 * z[0] / rho[0] + s2 * z[1] / rho[1] + s3 * field.one
    ranks = cohomology_ranks(GradedComplex.two_term(entry, field))
    return ranks[0], ranks[1]


def _require_unobstructed(ls: LocalSystem):
    if not is_unobstructed(ls):
        raise DomainError("obstructed_brane", "curvature does not vanish")


def hf_support_check(ls: LocalSystem, x: Sequence) -> tuple:
    """Rank pairs of the three pants complexes against the torus local system ``x``."""
    _require_unobstructed(ls)
    x = [ls.field(c) for c in x]
    if len(x) != 3 or any(c == 0 for c in x):
        raise ValueError("x must be three nonzero field elements")
    out = []
    for i in (1, 2, 3):
        j, k = _COMPLEMENT[i]
        out.append(pants_hf(restricted_holonomies(ls, i), (x[j - 1], x[k - 1]),
                            DEFAULT_SIGNS[i], ls.field))
    return tuple(out)


def _prime_of(ls: LocalSystem, p: int | None) -> int:
    if p is None:
        if ls.field == QQ:
            raise ValueError("a prime is required for a rational local system")
        return ls.field.p
    return p


def _reduce(ls: LocalSystem, p: int) -> LocalSystem:
    return ls if ls.field == GF(p) else LocalSystem(ls.mu, GF(p))


def _sort_points(points) -> list:
    return sorted(points, key=lambda pt: tuple(int(c) for c in pt))


def support_points(ls: LocalSystem, p: int | None = None) -> list:
    """Points of (F_p^*)^3 satisfying all three support relations, sorted."""
    ls = _reduce(ls, _prime_of(ls, p))
    _require_unobstructed(ls)
    field = ls.field
    rows, rhs = zip(*(r.row() for r in support_relations(ls)))
    sol = solve_affine(Matrix.from_rows(rows, field), rhs)
    if sol is None:
        return []
    found = set()
    for coeffs in itertools.product(list(field.elements()), repeat=sol.dimension):
        pt = sol.point(coeffs)
        if all(c != 0 for c in pt):
            found.add(pt)
    return _sort_points(found)


def brute_force_support(ls: LocalSystem, p: int | None = None) -> list:
    ls = _reduce(ls, _prime_of(ls, p))
    _require_unobstructed(ls)
    rels = support_relations(ls)
    units = list(ls.field.units())
    hits = [x for x in itertools.product(units, repeat=3)
            if all(r.evaluate(x) == 0 for r in rels)]
    return _sort_points(hits)


def unobstructed_systems(p: int):
    """Every unobstructed local system over F_p, in lexicographic order of mu."""
    field = GF(p)
    for mu in itertools.product(list(field.units()), repeat=5):
        if curvature(LocalSystem(mu, field)) == 0:
            yield LocalSystem(mu, field)


# -- gradings ------------------------------------------------------------

TORUS_BETTI = (1, 2, 1)


def shift(ranks: dict, s: int) -> dict:
    """Apply [s]: a class in degree d moves to degree d - s."""
    return {d - s: r for d, r in ranks.items()}


@dataclass(frozen=True)
class GeneratorSpectrum:
    negative_sheet: dict
    positive_sheet: dict
    torus_summands: tuple  # (H*(T^2)[-2], H*(T^2)[1])

    @property
    def total(self) -> dict:
        out: dict = {}
        for part in (self.negative_sheet, self.positive_sheet, *self.torus_summands):
            for d, r in part.items():
                out[d] = out.get(d, 0) + r
        return {d: out[d] for d in sorted(out) if out[d]}


def generator_spectrum(morse_counts: Sequence[int]) -> GeneratorSpectrum:
    if len(morse_counts) != 3 or any(c < 0 for c in morse_counts):
        raise ValueError("need three nonnegative critical point counts")
    torus = dict(enumerate(TORUS_BETTI))
    return GeneratorSpectrum(
        {k + 1: c for k, c in enumerate(morse_counts) if c},
        {k - 1: c for k, c in enumerate(morse_counts) if c},
        (shift(torus, -2), shift(torus, 1)),
    )
