"""First homology of the five-chain link complement.

Classes are integer 5-vectors in the meridian basis m0..m4.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .algebra.fields import FieldElement

H1Class = tuple  # five ints, coefficients of m0..m4

LONGITUDES = (
    (0, -1, 0, 0, -1),
    (-1, 0, 1, 0, 0),
    (0, 1, 0, -1, 0),
    (0, 0, -1, 0, 1),
    (-1, 0, 0, 1, 0),
)

# images of m0..m4 in H1(T^3) = Z^3
MERIDIAN_TO_TORUS = (
    (0, 0, 0),
    (0, 1, -1),
    (0, 0, 1),
    (-1, 1, 0),
    (0, -1, 1),
)

# the printed longitude images, kept separately so the meridian table can be checked against them
LONGITUDE_TO_TORUS = (
    (0, 0, 0),
    (0, 0, 1),
    (1, 0, -1),
    (0, -1, 0),
    (-1, 1, 0),
)


def meridian(i: int) -> H1Class:
    if i not in range(5):
        raise ValueError(f"cusp index must be in 0..4, got {i!r}")
    return tuple(int(k == i) for k in range(5))


def longitude(i: int) -> H1Class:
    if i not in range(5):
        raise ValueError(f"cusp index must be in 0..4, got {i!r}")
    return LONGITUDES[i]


def _check_class(c: Sequence[int]) -> tuple:
    c = tuple(c)
    if len(c) != 5 or not all(isinstance(x, int) for x in c):
        raise ValueError(f"an H1 class is five integers, got {c!r}")
    return c


def push_to_torus(c: Sequence[int]) -> tuple:
    c = _check_class(c)
    return tuple(sum(ci * MERIDIAN_TO_TORUS[i][k] for i, ci in enumerate(c)) for k in range(3))


def holonomy(c: Sequence[int], mu: Sequence[FieldElement]) -> FieldElement:
    """Product of mu_i ** c_i; exact in the field of ``mu``."""
    c = _check_class(c)
    if len(mu) != 5:
        raise ValueError("a local system has five holonomies")
    if any(m == 0 for m in mu):
        raise ZeroDivisionError("holonomy must be nonzero")
    out = mu[0] ** 0
    for m, k in zip(mu, c):
        out = out * m ** k
    return out


# -- branching ---------------------------------------------------------

@dataclass(frozen=True)
class Tetrahedron:
    """Four vertex labels and six oriented edges ``(tail, head)``."""

    vertices: tuple
    edges: tuple

    def __post_init__(self):
        verts = tuple(self.vertices)
        edges = tuple(tuple(e) for e in self.edges)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)
        if len(set(verts)) != 4:
            raise ValueError("a tetrahedron needs four distinct vertices")
        pairs = [frozenset(e) for e in edges]
        expected = {frozenset(p) for p in combinations(verts, 2)}
        if len(edges) != 6 or set(pairs) != expected or any(len(e) != 2 for e in edges):
            raise ValueError("a tetrahedron needs exactly one oriented edge per vertex pair")

    @classmethod
    def ordered(cls, vertices: Sequence) -> "Tetrahedron":
        """Every edge points from the lower to the higher position in ``vertices``."""
        return cls(tuple(vertices), tuple(combinations(vertices, 2)))

    def in_degrees(self) -> dict:
        deg = {v: 0 for v in self.vertices}
        for _, head in self.edges:
            deg[head] += 1
        return deg


@dataclass(frozen=True)
class BranchingReport:
    valid: bool
    cyclic_faces: tuple  # (tetrahedron index, face vertex triple)


def check_branching(tetrahedra: Sequence[Tetrahedron]) -> BranchingReport:
    """Flag every triangular face whose three edges form a directed cycle."""
    bad = []
    for n, tet in enumerate(tetrahedra):
        heads = {frozenset(e): e[1] for e in tet.edges}
        for face in combinations(tet.vertices, 3):
            # a triangle is cyclic exactly when every vertex is the head of one face edge
            hs = {heads[frozenset(p)] for p in combinations(face, 2)}
            if len(hs) == 3:
                bad.append((n, face))
    return BranchingReport(not bad, tuple(bad))
