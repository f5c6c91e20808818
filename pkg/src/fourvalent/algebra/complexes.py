"""Finite cochain complexes over an exact field."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .fields import Field, QQ
from .linalg import Matrix, rank


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class GradedComplex:
    """Cochain complex concentrated in degrees ``dmin .. dmin + len(dims) - 1``.

    ``diffs[k]`` is the differential out of degree ``dmin + k``, stored as a
    ``dims[k+1] x dims[k]`` matrix acting on column vectors.  The square of
    the differential is checked to vanish on construction.
    """

    dmin: int
    dims: tuple
    diffs: tuple
    field: Field = QQ

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "diffs", tuple(self.diffs))
        if any(d < 0 for d in dims):
            raise ComplexError("negative dimension")
        if len(self.diffs) != max(len(dims) - 1, 0):
            raise ComplexError(f"{len(dims)} degrees need {max(len(dims) - 1, 0)} differentials")
        for k, d in enumerate(self.diffs):
            if (d.rows, d.cols) != (dims[k + 1], dims[k]):
                raise ComplexError(
                    f"differential out of degree {self.dmin + k} is {d.rows}x{d.cols}, "
                    f"expected {dims[k + 1]}x{dims[k]}"
                )
            if d.field != self.field:
                raise ComplexError("differential over the wrong field")
        for k in range(len(self.diffs) - 1):
            if not (self.diffs[k + 1] @ self.diffs[k]).is_zero():
                raise ComplexError(f"d∘d != 0 at degree {self.dmin + k}")

    @property
    def dmax(self) -> int:
        return self.dmin + len(self.dims) - 1

    @classmethod
    def two_term(cls, entry, field: Field, dmin: int = 0) -> "GradedComplex":
        """The complex ``K --entry--> K`` in degrees ``dmin, dmin+1``."""
        return cls(dmin, (1, 1), (Matrix(1, 1, (field(entry),), field),), field)

    @classmethod
    def from_lists(cls, dmin: int, dims: Sequence[int], diffs: Sequence, field: Field) -> "GradedComplex":
        mats = []
        for k, rows in enumerate(diffs):
            mats.append(Matrix.from_rows(rows, field, cols=dims[k]) if rows
                        else Matrix.zeros(dims[k + 1], dims[k], field))
        return cls(dmin, tuple(dims), tuple(mats), field)


def cohomology_ranks(c: GradedComplex) -> dict[int, int]:
    """Map degree -> dimension of cohomology."""
    ranks = [rank(d) for d in c.diffs]
    out = {}
    for k, dim in enumerate(c.dims):
        r_out = ranks[k] if k < len(ranks) else 0
        r_in = ranks[k - 1] if k > 0 else 0
        h = dim - r_out - r_in
        assert h >= 0
        out[c.dmin + k] = h
    return out
