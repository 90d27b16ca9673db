"""Dense exact matrices over a cyclotomic field.

Entries are CycNum values sharing one order.  Elimination uses plain exact
Gaussian pivoting (first non-zero entry in the column), which is deterministic
and reproducible.  Matrices are immutable and all operations are pure.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .cyclotomic import CycNum
from .errors import OrderMismatchError, SingularMatrixError

Scalar = CycNum | Fraction | int


def _as_cyc(order: int, value: Scalar) -> CycNum:
    if isinstance(value, CycNum):
        if value.order != order:
            raise OrderMismatchError(f"entry of order {value.order} in matrix of order {order}")
        return value
    return CycNum.from_rational(order, value)


class ExactMat:
    """A rows x cols matrix over Q(zeta_order)."""

    __slots__ = ("order", "rows", "cols", "entries")

    def __init__(self, order: int, entries: Iterable[Iterable[Scalar]]):
        rows = tuple(tuple(_as_cyc(order, e) for e in row) for row in entries)
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMat is immutable")

    @classmethod
    def identity(cls, n: int, order: int) -> "ExactMat":
        return cls(order, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int, order: int) -> "ExactMat":
        return cls(order, [[0] * cols for _ in range(rows)])

    @classmethod
    def column(cls, order: int, values: Sequence[Scalar]) -> "ExactMat":
        return cls(order, [[v] for v in values])

    @classmethod
    def row(cls, order: int, values: Sequence[Scalar]) -> "ExactMat":
        return cls(order, [list(values)])

    def __getitem__(self, key: tuple[int, int]) -> CycNum:
        i, j = key
        return self.entries[i][j]

    def _check_same(self, other: "ExactMat", op: str):
        if self.order != other.order:
            raise OrderMismatchError(f"{op}: orders {self.order} and {other.order} differ")

    def __add__(self, other: "ExactMat") -> "ExactMat":
        self._check_same(other, "add")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("add: dimension mismatch")
        return ExactMat(self.order, [
            [a + b for a, b in zip(ra, rb)]
            for ra, rb in zip(self.entries, other.entries)
        ])

    def __sub__(self, other: "ExactMat") -> "ExactMat":
        return self + other.scale(-1)

    def __matmul__(self, other: "ExactMat") -> "ExactMat":
        self._check_same(other, "mul")
        if self.cols != other.rows:
            raise ValueError(f"mul: {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        zero = CycNum.zero(self.order)
        cols_t = list(zip(*other.entries))
        return ExactMat(self.order, [
            [sum((a * b for a, b in zip(row, col)), zero) for col in cols_t]
            for row in self.entries
        ])

    def scale(self, c: Scalar) -> "ExactMat":
        c = _as_cyc(self.order, c)
        return ExactMat(self.order, [[c * e for e in row] for row in self.entries])

    def transpose(self) -> "ExactMat":
        return ExactMat(self.order, list(zip(*self.entries)))

    def trace(self) -> CycNum:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        zero = CycNum.zero(self.order)
        return sum((self.entries[i][i] for i in range(self.rows)), zero)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def __eq__(self, other):
        if not isinstance(other, ExactMat):
            return NotImplemented
        return (self.order, self.entries) == (other.order, other.entries)

    def __hash__(self):
        return hash((self.order, self.entries))

    def __pow__(self, k: int) -> "ExactMat":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = ExactMat.identity(self.rows, self.order)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def rank(self) -> int:
        """Exact rank by Gaussian elimination over the field."""
        work = [list(row) for row in self.entries]
        r = 0
        for col in range(self.cols):
            pivot = next((i for i in range(r, self.rows) if not work[i][col].is_zero()), None)
            if pivot is None:
                continue
            work[r], work[pivot] = work[pivot], work[r]
            inv = work[r][col].inv()
            work[r] = [inv * e for e in work[r]]
            for i in range(self.rows):
                if i != r and not work[i][col].is_zero():
                    f = work[i][col]
                    work[i] = [a - f * b for a, b in zip(work[i], work[r])]
            r += 1
            if r == self.rows:
                break
        return r

    def inverse(self) -> "ExactMat":
        """Exact inverse by Gauss-Jordan elimination; raises on singular input."""
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        work = [list(row) for row in self.entries]
        aug = [[CycNum.from_rational(self.order, 1 if i == j else 0) for j in range(n)]
               for i in range(n)]
        for col in range(n):
            pivot = next((i for i in range(col, n) if not work[i][col].is_zero()), None)
            if pivot is None:
                raise SingularMatrixError("matrix is singular")
            work[col], work[pivot] = work[pivot], work[col]
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = work[col][col].inv()
            work[col] = [inv * e for e in work[col]]
            aug[col] = [inv * e for e in aug[col]]
            for i in range(n):
                if i != col and not work[i][col].is_zero():
                    f = work[i][col]
                    work[i] = [a - f * b for a, b in zip(work[i], work[col])]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
        return ExactMat(self.order, aug)

    def char_poly(self) -> tuple[CycNum, ...]:
        """Characteristic polynomial det(X*I - A), ascending coefficients, monic.

        Faddeev-LeVerrier: only divisions by the small integers 1..n occur.
        """
        if self.rows != self.cols:
            raise ValueError("char_poly of a non-square matrix")
        n = self.rows
        coeffs = [CycNum.one(self.order)]  # descending: leading first
        M = ExactMat.identity(n, self.order)
        for k in range(1, n + 1):
            AM = self @ M
            c = AM.trace() * Fraction(-1, k)
            coeffs.append(c)
            if k < n:
                M = AM + ExactMat.identity(n, self.order).scale(c)
        return tuple(reversed(coeffs))

    def det(self) -> CycNum:
        cp = self.char_poly()
        return cp[0] * (-1) ** self.rows

    def __str__(self):
        cells = [[str(e) for e in row] for row in self.entries]
        widths = [max(len(cells[i][j]) for i in range(self.rows)) for j in range(self.cols)]
        return "\n".join(
            "[ " + "  ".join(c.rjust(w) for c, w in zip(row, widths)) + " ]"
            for row in cells
        )

    def __repr__(self):
        return f"ExactMat({self.rows}x{self.cols} over Q(zeta_{self.order}))"

    def to_latex(self) -> str:
        """Body of a pmatrix: entries as polynomial expressions in zeta_N."""
        body = " \\\\\n".join(" & ".join(e.latex() for e in row) for row in self.entries)
        return f"\\begin{{pmatrix}}\n{body}\n\\end{{pmatrix}}"

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[e.to_json() for e in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ExactMat":
        mat = cls(obj["order"], [[CycNum.from_json(e) for e in row] for row in obj["entries"]])
        if (mat.rows, mat.cols) != (obj["rows"], obj["cols"]):
            raise ValueError("matrix JSON dimensions do not match entries")
        return mat


def poly_from_roots(order: int, roots: Sequence[CycNum]) -> tuple[CycNum, ...]:
    """Monic polynomial prod (X - r), ascending coefficients over Q(zeta_order)."""
    poly = [CycNum.one(order)]
    for r in roots:
        poly = [CycNum.zero(order)] + poly
        for i in range(len(poly) - 1):
            poly[i] = poly[i] - r * poly[i + 1]
    return tuple(poly)
