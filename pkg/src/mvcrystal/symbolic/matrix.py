"""Dense matrices over the fraction field Q(vars), plus exact linear solving."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import InconsistentSystemError, InvalidInputError, MismatchError, SingularMatrixError
from .polys import MPoly, PolyRing
from .ratfunc import RatFunc


class PolyMatrix:
    """Rectangular matrix of RatFunc entries (MPoly, int, Fraction and str inputs are lifted)."""

    def __init__(self, ring: PolyRing, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise InvalidInputError("matrix rows must be nonempty and of equal length")
        self.ring = ring
        self.rows = [[RatFunc.lift(v, ring) for v in r] for r in rows]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, ij) -> RatFunc:
        i, j = ij
        return self.rows[i][j]

    @classmethod
    def identity(cls, ring: PolyRing, n: int) -> "PolyMatrix":
        return cls(ring, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring: PolyRing, n: int, m: int) -> "PolyMatrix":
        return cls(ring, [[0] * m for _ in range(n)])

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise MismatchError("matrix shapes differ")
        return PolyMatrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise MismatchError("matrix shapes differ")
        return PolyMatrix(self.ring, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __mul__(self, other):
        if isinstance(other, PolyMatrix):
            n, k = self.shape
            k2, m = other.shape
            if k != k2:
                raise MismatchError(f"cannot multiply {self.shape} by {other.shape}")
            out = []
            for i in range(n):
                row = []
                for j in range(m):
                    acc = RatFunc.lift(0, self.ring)
                    for t in range(k):
                        a, b = self.rows[i][t], other.rows[t][j]
                        if a and b:
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return PolyMatrix(self.ring, out)
        return PolyMatrix(self.ring, [[a * other for a in r] for r in self.rows])

    def apply(self, vec: Sequence) -> list[RatFunc]:
        n, k = self.shape
        if len(vec) != k:
            raise MismatchError("vector length does not match the column count")
        vec = [RatFunc.lift(v, self.ring) for v in vec]
        out = []
        for r in self.rows:
            acc = RatFunc.lift(0, self.ring)
            for a, b in zip(r, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, [list(c) for c in zip(*self.rows)])

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    __hash__ = None

    def _require_square(self):
        if self.shape[0] != self.shape[1]:
            raise MismatchError("square matrix required")

    def determinant(self) -> RatFunc:
        """Gaussian elimination over the fraction field."""
        self._require_square()
        a = [list(r) for r in self.rows]
        n = len(a)
        det = RatFunc.lift(1, self.ring)
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                return RatFunc.lift(0, self.ring)
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = -det
            p = a[col][col]
            det = det * p
            inv = p.inverse()
            for r in range(col + 1, n):
                if a[r][col]:
                    factor = a[r][col] * inv
                    a[r] = [x - factor * y if y else x for x, y in zip(a[r], a[col])]
        return det

    def inverse(self) -> "PolyMatrix":
        self._require_square()
        n = self.shape[0]
        ident = PolyMatrix.identity(self.ring, n)
        a = [list(r) + list(e) for r, e in zip(self.rows, ident.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                raise SingularMatrixError("matrix is singular over the fraction field")
            a[col], a[piv] = a[piv], a[col]
            inv = a[col][col].inverse()
            a[col] = [x * inv for x in a[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    factor = a[r][col]
                    a[r] = [x - factor * y if y else x for x, y in zip(a[r], a[col])]
        return PolyMatrix(self.ring, [r[n:] for r in a])

    def is_polynomial(self) -> bool:
        return all(v.is_polynomial() for r in self.rows for v in r)

    def non_polynomial_entries(self) -> list[tuple[int, int, RatFunc]]:
        return [(i, j, v) for i, r in enumerate(self.rows) for j, v in enumerate(r) if not v.is_polynomial()]

    def is_polynomial_in(self, var: str) -> bool:
        """Entries lie in K[var] with K the fraction field of the other variables."""
        return all(v.den.degree(var) <= 0 for r in self.rows for v in r)

    def offending_entries(self, var: str) -> list[tuple[int, int, RatFunc]]:
        return [(i, j, v) for i, r in enumerate(self.rows) for j, v in enumerate(r) if v.den.degree(var) > 0]

    def degree_in(self, var: str) -> int:
        return max((v.num.degree(var) for r in self.rows for v in r), default=-1)

    def subs(self, mapping) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[v.subs(mapping) for v in r] for r in self.rows])

    def scalar_ratio(self, other: "PolyMatrix") -> RatFunc | None:
        """c with self = c * other when one exists (equality in PGL), else None."""
        if self.shape != other.shape:
            raise MismatchError("matrix shapes differ")
        ratio = None
        for r, s in zip(self.rows, other.rows):
            for a, b in zip(r, s):
                if not b:
                    if a:
                        return None
                    continue
                c = a / b
                if ratio is None:
                    ratio = c
                elif c != ratio:
                    return None
        return ratio

    def to_strings(self) -> list[list[str]]:
        return [[str(v) for v in r] for r in self.rows]

    def __repr__(self):
        return f"PolyMatrix({self.to_strings()})"


@dataclass(frozen=True)
class LinearSolution:
    particular: tuple[RatFunc, ...]
    kernel: tuple[tuple[RatFunc, ...], ...]
    rank: int

    @property
    def kernel_dimension(self) -> int:
        return len(self.kernel)


def linsolve_ratfunc(A: PolyMatrix, b: Sequence | None = None) -> LinearSolution:
    """Solve A v = b over the fraction field: one particular solution plus a kernel basis."""
    n, m = A.shape
    ring = A.ring
    zero = RatFunc.lift(0, ring)
    b = [zero] * n if b is None else [RatFunc.lift(v, ring) for v in b]
    if len(b) != n:
        raise MismatchError("right-hand side length does not match the row count")
    rows = [list(r) + [v] for r, v in zip(A.rows, b)]
    pivots: list[int] = []
    r = 0
    for col in range(m):
        piv = next((k for k in range(r, n) if rows[k][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for k in range(n):
            if k != r and rows[k][col]:
                factor = rows[k][col]
                rows[k] = [x - factor * y if y else x for x, y in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
        if r == n:
            break
    for k in range(r, n):
        if rows[k][m]:
            raise InconsistentSystemError(
                "linear system is inconsistent", certificate_row=k, residual=str(rows[k][m])
            )
    particular = [zero] * m
    for k, col in enumerate(pivots):
        particular[col] = rows[k][m]
    free = [c for c in range(m) if c not in pivots]
    kernel = []
    for fcol in free:
        vec = [zero] * m
        vec[fcol] = RatFunc.lift(1, ring)
        for k, col in enumerate(pivots):
            vec[col] = -rows[k][fcol]
        kernel.append(tuple(vec))
    return LinearSolution(tuple(particular), tuple(kernel), len(pivots))


def verify_solution(A: PolyMatrix, b: Sequence, sol: LinearSolution) -> bool:
    ring = A.ring
    b = [RatFunc.lift(v, ring) for v in b]
    if any(x != y for x, y in zip(A.apply(sol.particular), b)):
        return False
    return all(not v for vec in sol.kernel for v in A.apply(vec))


def matrix_from_strings(ring: PolyRing, rows: Sequence[Sequence[str]]) -> PolyMatrix:
    return PolyMatrix(ring, [[ring(s) if isinstance(s, str) else s for s in r] for r in rows])


def as_poly(v) -> MPoly:
    if isinstance(v, RatFunc):
        if not v.is_polynomial():
            raise InvalidInputError("entry is not a polynomial")
        return v.num * (1 / v.den.constant_value())
    return v
