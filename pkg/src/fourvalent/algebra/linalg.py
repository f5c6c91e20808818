"""Dense matrices over an exact field: rank and affine solving."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .fields import Field, FieldElement, QQ, common_field


@dataclass(frozen=True)
class Matrix:
    """Row-major dense matrix; every entry lives in ``field``."""

    rows: int
    cols: int
    entries: tuple
    field: Field = QQ

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )
        found = common_field(self.entries)
        if found != self.field and any(not isinstance(e, int) for e in self.entries):
            raise ValueError(f"entries live in {found!r}, not {self.field!r}")
        object.__setattr__(self, "entries", tuple(self.field(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field | None = None, cols: int | None = None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        flat = [e for r in rows for e in r]
        if field is None:
            field = common_field(flat)
        return cls(len(rows), cols, tuple(flat), field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = QQ):
        return cls(rows, cols, (field.zero,) * (rows * cols), field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ):
        return cls(n, n, tuple(field.one if i == j else field.zero
                               for i in range(n) for j in range(n)), field)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[FieldElement]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        if self.field != other.field:
            raise ValueError("matrices over different fields")
        zero = self.field.zero
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                s = zero
                for k in range(self.cols):
                    s = s + self[i, k] * other[k, j]
                out.append(s)
        return Matrix(self.rows, other.cols, tuple(out), self.field)

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def apply(self, v: Sequence) -> list:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        v = [self.field(x) for x in v]
        zero = self.field.zero
        out = []
        for i in range(self.rows):
            s = zero
            for j in range(self.cols):
                s = s + self[i, j] * v[j]
            out.append(s)
        return out


def row_echelon(rows: list[list], rhs: list | None = None) -> list[int]:
    """Reduce ``rows`` in place to reduced row echelon form.

    The pivot in each column is the first nonzero entry at or below the
    current pivot row.  ``rhs`` is carried along when given.  Returns the
    list of pivot columns.
    """
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            if rhs is not None:
                rhs[r], rhs[piv] = rhs[piv], rhs[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        if rhs is not None:
            rhs[r] = rhs[r] / lead
        for i in range(n_rows):
            if i == r:
                continue
            f = rows[i][c]
            if f == 0:
                continue
            rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            if rhs is not None:
                rhs[i] = rhs[i] - f * rhs[r]
        pivots.append(c)
        r += 1
    return pivots


def rank(m: Matrix) -> int:
    """Exact rank by Gaussian elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(row_echelon(m.to_rows()))


@dataclass(frozen=True)
class AffineSolution:
    """The solution set ``basepoint + span(kernel)`` of a linear system."""

    basepoint: tuple
    kernel: tuple  # tuple of basis vectors (tuples)

    @property
    def dimension(self) -> int:
        return len(self.kernel)

    def point(self, coefficients: Sequence) -> tuple:
        if len(coefficients) != len(self.kernel):
            raise ValueError("need one coefficient per kernel vector")
        x = list(self.basepoint)
        for c, v in zip(coefficients, self.kernel):
            x = [a + c * b for a, b in zip(x, v)]
        return tuple(x)


def solve_affine(a: Matrix, b: Sequence) -> AffineSolution | None:
    """Parametrize ``{x : a x = b}`` exactly; ``None`` when inconsistent."""
    if len(b) != a.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {a.rows}")
    field = a.field
    rhs = [field(x) for x in b]
    rows = a.to_rows()
    pivots = row_echelon(rows, rhs) if a.rows and a.cols else []
    if any(rhs[i] != 0 for i in range(len(pivots), a.rows)):
        return None
    zero, one = field.zero, field.one
    base = [zero] * a.cols
    for r, c in enumerate(pivots):
        base[c] = rhs[r]
    free = [c for c in range(a.cols) if c not in pivots]
    kernel = []
    for f in free:
        v = [zero] * a.cols
        v[f] = one
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f]
        kernel.append(tuple(v))
    return AffineSolution(tuple(base), tuple(kernel))
