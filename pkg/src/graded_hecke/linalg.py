"""Exact dense linear algebra over CycNum.

Pivot choice is deterministic (first nonzero entry scanning left-to-right,
top-to-bottom), so echelon forms, kernel bases and column-space bases are
reproducible across runs.  Kernel bases are normalized so the free-variable
coordinates form an identity pattern.
"""

from __future__ import annotations

from math import lcm

from .cyclo import CycNum, as_cycnum

Vector = tuple[CycNum, ...]


class Mat:
    __slots__ = ("rows", "cols", "entries", "conductor")

    def __init__(self, entries: tuple[tuple[CycNum, ...], ...]):
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        m = 1
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for e in row:
                m = lcm(m, e.conductor)
        coerced = tuple(
            tuple(e.to_conductor(m) if e.conductor != m else e for e in row)
            for row in entries
        )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", coerced)
        object.__setattr__(self, "conductor", m)

    def __setattr__(self, *a):
        raise AttributeError("Mat is immutable")

    @staticmethod
    def from_rows(rows, conductor: int = 1) -> "Mat":
        return Mat(tuple(tuple(as_cycnum(e, conductor) for e in row) for row in rows))

    @staticmethod
    def identity(n: int, conductor: int = 1) -> "Mat":
        one, zero = CycNum.one(conductor), CycNum.zero(conductor)
        return Mat(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @staticmethod
    def zeros(rows: int, cols: int, conductor: int = 1) -> "Mat":
        zero = CycNum.zero(conductor)
        return Mat(tuple((zero,) * cols for _ in range(rows)))

    @staticmethod
    def from_columns(columns: list[Vector]) -> "Mat":
        rows = len(columns[0]) if columns else 0
        return Mat(tuple(tuple(col[i] for col in columns) for i in range(rows)))

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "Mat":
        return Mat(tuple(tuple(self.entries[i][j] for i in range(self.rows))
                         for j in range(self.cols)))

    def __add__(self, other: "Mat") -> "Mat":
        return Mat(tuple(tuple(a + b for a, b in zip(r1, r2))
                         for r1, r2 in zip(self.entries, other.entries)))

    def __sub__(self, other: "Mat") -> "Mat":
        return Mat(tuple(tuple(a - b for a, b in zip(r1, r2))
                         for r1, r2 in zip(self.entries, other.entries)))

    def __neg__(self) -> "Mat":
        return Mat(tuple(tuple(-a for a in row) for row in self.entries))

    def scale(self, c) -> "Mat":
        c = as_cycnum(c)
        return Mat(tuple(tuple(c * a for a in row) for row in self.entries))

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        cols = other.transpose().entries
        return Mat(tuple(
            tuple(_dot(row, col) for col in cols) for row in self.entries
        ))

    def apply(self, v: Vector) -> Vector:
        return tuple(_dot(row, v) for row in self.entries)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            a == b for r1, r2 in zip(self.entries, other.entries) for a, b in zip(r1, r2)
        )

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(", ".join(repr(e) for e in row) for row in self.entries)
        return f"Mat[{body}]"


def dot(u, v) -> CycNum:
    acc = CycNum.zero()
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


_dot = dot


def rref(M: Mat) -> tuple[Mat, tuple[int, ...], int]:
    """Reduced row echelon form: returns (R, pivot columns, rank)."""
    rows = [list(r) for r in M.entries]
    pivots = []
    r = 0
    for c in range(M.cols):
        pivot_row = None
        for i in range(r, M.rows):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [inv * e for e in rows[r]]
        for i in range(M.rows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == M.rows:
            break
    return Mat(tuple(tuple(row) for row in rows)), tuple(pivots), len(pivots)


def rank(M: Mat) -> int:
    return rref(M)[2]


def kernel_basis(M: Mat) -> list[Vector]:
    """Canonical basis of the right null space of M."""
    R, pivots, rk = rref(M)
    zero, one = CycNum.zero(M.conductor), CycNum.one(M.conductor)
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * M.cols
        v[f] = one
        for r, pc in enumerate(pivots):
            v[pc] = -R[r, f]
        basis.append(tuple(v))
    assert rk + len(basis) == M.cols, "rank-nullity violated"
    return basis


def column_space_basis(M: Mat) -> list[Vector]:
    """Canonical basis of the column space (pivot-normalized)."""
    R, _, rk = rref(M.transpose())
    return [R.row(i) for i in range(rk)]


def det(M: Mat) -> CycNum:
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    rows = [list(r) for r in M.entries]
    n = M.rows
    result = CycNum.one(M.conductor)
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            return CycNum.zero(M.conductor)
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            result = -result
        p = rows[c][c]
        result = result * p
        inv = p.inverse()
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return result


def inverse(M: Mat) -> Mat:
    if M.rows != M.cols:
        raise ValueError("inverse of a non-square matrix")
    n = M.rows
    aug = Mat(tuple(
        M.entries[i] + Mat.identity(n, M.conductor).entries[i] for i in range(n)
    ))
    R, pivots, rk = rref(aug)
    if rk != n or pivots != tuple(range(n)):
        raise ValueError("matrix is singular")
    return Mat(tuple(R.row(i)[n:] for i in range(n)))


def solve_matrix(A: Mat, B: Mat) -> Mat:
    """Exact solution X of A X = B; raises if the system is inconsistent."""
    if A.rows != B.rows:
        raise ValueError("dimension mismatch in solve")
    aug = Mat(tuple(A.entries[i] + B.entries[i] for i in range(A.rows)))
    R, pivots, _ = rref(aug)
    zero = CycNum.zero(aug.conductor)
    for r, row in enumerate(R.entries):
        lead = next((c for c, e in enumerate(row) if e), None)
        if lead is not None and lead >= A.cols:
            raise ValueError("inconsistent linear system")
    X = [[zero] * B.cols for _ in range(A.cols)]
    for r, pc in enumerate(pivots):
        if pc < A.cols:
            for j in range(B.cols):
                X[pc][j] = R[r, A.cols + j]
    return Mat(tuple(tuple(row) for row in X))


def intersect_spans(span_a: list[Vector], span_b: list[Vector]) -> list[Vector]:
    """Canonical basis of span(A) intersected with span(B), vectors as columns."""
    if not span_a or not span_b:
        return []
    dim = len(span_a[0])
    cols = [list(v) for v in span_a] + [[-c for c in v] for v in span_b]
    M = Mat(tuple(tuple(cols[j][i] for j in range(len(cols))) for i in range(dim)))
    reps = []
    for k in kernel_basis(M):
        vec = [CycNum.zero(M.conductor)] * dim
        for j, coeff in enumerate(k[: len(span_a)]):
            if coeff:
                for i in range(dim):
                    vec[i] = vec[i] + coeff * span_a[j][i]
        reps.append(tuple(vec))
    if not reps:
        return []
    R, _, rk = rref(Mat(tuple(reps)))
    return [R.row(i) for i in range(rk)]
