"""Rational tropical curves in R^n.

A curve is a list of rational vertices and a list of edges.  An edge is
either a ray ``v0 + R_{>=0} u`` or a segment ``[v0, v1]`` with
``v1 - v0`` a positive multiple of the primitive direction ``u``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Optional, Sequence

import numpy as np


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    v0: int
    direction: tuple
    weight: int = 1
    v1: Optional[int] = None

    @property
    def is_ray(self) -> bool:
        return self.v1 is None


@dataclass(frozen=True)
class TropicalCurve:
    dim: int
    vertices: tuple
    edges: tuple = field(default_factory=tuple)

    def __post_init__(self):
        verts = tuple(tuple(Fraction(x) for x in v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(self.edges))
        for v in verts:
            if len(v) != self.dim:
                raise CurveError(f"vertex {v} is not in R^{self.dim}")
        for e in self.edges:
            u = tuple(int(x) for x in e.direction)
            if len(u) != self.dim:
                raise CurveError(f"direction {u} is not in Z^{self.dim}")
            if reduce(math.gcd, u, 0) != 1:
                raise CurveError(f"direction {u} is not primitive")
            if e.weight < 1:
                raise CurveError(f"weight {e.weight} is not positive")
            for idx in (e.v0, e.v1):
                if idx is not None and not 0 <= idx < len(verts):
                    raise CurveError(f"edge references missing vertex {idx}")
            if e.v1 is not None:
                delta = [b - a for a, b in zip(verts[e.v0], verts[e.v1])]
                k = next(d / c for d, c in zip(delta, u) if c != 0)
                if k <= 0 or any(d != k * c for d, c in zip(delta, u)):
                    raise CurveError(
                        f"segment {e.v0}->{e.v1} is not a positive multiple of {u}"
                    )

    def segments_float(self):
        """Yield ``(start, direction, length)`` with ``length = inf`` for rays."""
        for e in self.edges:
            p = np.array([float(x) for x in self.vertices[e.v0]])
            u = np.array(e.direction, dtype=float)
            if e.v1 is None:
                yield p, u, math.inf
            else:
                q = np.array([float(x) for x in self.vertices[e.v1]])
                yield p, u / np.linalg.norm(u), float(np.linalg.norm(q - p))

    def lattice_length(self, edge: Edge) -> Fraction:
        if edge.v1 is None:
            raise CurveError("rays have infinite length")
        a, b = self.vertices[edge.v0], self.vertices[edge.v1]
        return next((y - x) / c for x, y, c in zip(a, b, edge.direction) if c != 0)

    def permute_coordinates(self, perm: Sequence[int]) -> "TropicalCurve":
        """New curve whose coordinate ``perm[k]`` is old coordinate ``k``."""
        def move(v):
            out = [None] * self.dim
            for k, x in enumerate(v):
                out[perm[k]] = x
            return tuple(out)
        return TropicalCurve(
            self.dim,
            tuple(move(v) for v in self.vertices),
            tuple(Edge(e.v0, move(e.direction), e.weight, e.v1) for e in self.edges),
        )

    # -- serialization -------------------------------------------------

    def to_dict(self) -> dict:
        def q(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"
        edges = []
        for e in self.edges:
            d = {"v0": e.v0, "dir": list(e.direction), "weight": e.weight}
            if e.v1 is not None:
                d["v1"] = e.v1
            edges.append(d)
        return {"dim": self.dim, "vertices": [[q(x) for x in v] for v in self.vertices], "edges": edges}

    @classmethod
    def from_dict(cls, doc: dict) -> "TropicalCurve":
        try:
            edges = tuple(
                Edge(int(e["v0"]), tuple(int(c) for c in e["dir"]), int(e.get("weight", 1)),
                     None if e.get("v1") is None else int(e["v1"]))
                for e in doc["edges"]
            )
            verts = tuple(tuple(Fraction(str(x)) for x in v) for v in doc["vertices"])
            return cls(int(doc["dim"]), verts, edges)
        except (KeyError, TypeError) as exc:
            raise CurveError(f"malformed curve document: {exc}") from None

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "TropicalCurve":
        return cls.from_dict(json.loads(text))


def check_balancing(c: TropicalCurve) -> list[tuple]:
    """Per-vertex sum of ``w * u`` over incident edges, oriented outward."""
    residual = [[0] * c.dim for _ in c.vertices]
    for e in c.edges:
        for k, u in enumerate(e.direction):
            residual[e.v0][k] += e.weight * u
            if e.v1 is not None:
                residual[e.v1][k] -= e.weight * u
    return [tuple(r) for r in residual]


def is_balanced(c: TropicalCurve) -> bool:
    return all(not any(r) for r in check_balancing(c))


# Leg directions u_1, u_2, u_3, u_0 of the four-valent vertex.
FOUR_VALENT_LEGS = ((-1, 0, 0), (0, -1, 0), (0, 0, -1), (1, 1, 1))


def standard_four_valent() -> TropicalCurve:
    """The curve V: four weight-one rays from the origin of R^3."""
    return TropicalCurve(3, ((0, 0, 0),), tuple(Edge(0, u) for u in FOUR_VALENT_LEGS))


def tropical_pants() -> TropicalCurve:
    return TropicalCurve(2, ((0, 0),), (Edge(0, (-1, 0)), Edge(0, (0, -1)), Edge(0, (1, 1))))


# V_i is V_3 with old coordinate 3 moved to position i.
_RESOLUTION_PERMS = {1: (1, 2, 0), 2: (2, 0, 1), 3: (0, 1, 2)}


def resolution(i: int, eps) -> TropicalCurve:
    """The resolution V_i of V: two trivalent vertices joined by an edge of lattice length 2*eps."""
    if i not in _RESOLUTION_PERMS:
        raise CurveError(f"resolution index must be 1, 2 or 3, got {i!r}")
    eps = Fraction(eps)
    if eps <= 0:
        raise CurveError("eps must be positive")
    v3 = TropicalCurve(
        3,
        ((-eps, -eps, 0), (eps, eps, 0)),
        (
            Edge(0, (-1, 0, 0)),
            Edge(0, (0, -1, 0)),
            Edge(0, (1, 1, 0), 1, 1),
            Edge(1, (0, 0, -1)),
            Edge(1, (1, 1, 1)),
        ),
    )
    return v3 if i == 3 else v3.permute_coordinates(_RESOLUTION_PERMS[i])


def _distance_to_piece(p: np.ndarray, start: np.ndarray, u: np.ndarray, length: float) -> float:
    u = u / np.linalg.norm(u)
    s = float(np.dot(p - start, u))
    s = min(max(s, 0.0), length)
    return float(np.linalg.norm(p - (start + s * u)))


def distance_to_curve(p: Sequence[float], c: TropicalCurve) -> float:
    """Euclidean distance from ``p`` to the union of the edges of ``c``."""
    p = np.asarray(p, dtype=float)
    if p.shape != (c.dim,):
        raise CurveError(f"point has dimension {p.shape}, curve lives in R^{c.dim}")
    best = math.inf
    for start, u, length in c.segments_float():
        best = min(best, _distance_to_piece(p, start, u, length))
    if not c.edges:
        best = min(float(np.linalg.norm(p - np.array([float(x) for x in v]))) for v in c.vertices)
    return best


def sample_curve(c: TropicalCurve, ray_length: float = 3.0, per_edge: int = 50) -> np.ndarray:
    """Points spread along every edge, rays truncated at ``ray_length``."""
    pts = []
    for start, u, length in c.segments_float():
        u = u / np.linalg.norm(u)
        top = ray_length if math.isinf(length) else length
        for s in np.linspace(0.0, top, per_edge):
            pts.append(start + s * u)
    return np.array(pts)
