"""Dense matrices of polynomials."""

from __future__ import annotations

from typing import Sequence

from .errors import ContextMismatch, DimensionMismatch, NotDivisible, NotGraded
from .ring import Poly, PolyRing, poly_divmod


class PolyMatrix:
    """Immutable rows x cols grid of polynomials over one ring.

    Zero-sized shapes are allowed, so the shape is stored explicitly:
    ``PolyMatrix(R, [[]])`` is 1 x 0 and ``PolyMatrix(R, [], (0, 3))`` is 0 x 3.
    """

    __slots__ = ("ring", "rows", "shape", "_hash")

    def __init__(self, ring: PolyRing, rows, shape=None):
        self.ring = ring
        conv = tuple(tuple(e if isinstance(e, Poly) and e.ring is ring else ring(e) for e in row)
                     for row in rows)
        if shape is None:
            shape = (len(conv), len(conv[0]) if conv else 0)
        nr, nc = shape
        if len(conv) != nr or any(len(r) != nc for r in conv):
            raise DimensionMismatch(f"ragged or mis-shaped matrix, expected {nr}x{nc}")
        self.rows = conv
        self.shape = (nr, nc)
        self._hash = None

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        z = ring.zero
        return cls(ring, [[z] * ncols for _ in range(nrows)], (nrows, ncols))

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, [[ring.one if i == j else ring.zero for j in range(n)]
                          for i in range(n)], (n, n))

    @classmethod
    def scalar(cls, ring, n, p):
        p = ring(p)
        return cls(ring, [[p if i == j else ring.zero for j in range(n)]
                          for i in range(n)], (n, n))

    @classmethod
    def from_columns(cls, ring, columns, nrows):
        columns = [tuple(c) for c in columns]
        return cls(ring, [[c[i] for c in columns] for i in range(nrows)], (nrows, len(columns)))

    @classmethod
    def block(cls, blocks):
        """Assemble from a grid of matrices with compatible shapes."""
        ring = blocks[0][0].ring
        rows = []
        for brow in blocks:
            h = brow[0].shape[0]
            if any(b.shape[0] != h for b in brow):
                raise DimensionMismatch("block row heights differ")
            for i in range(h):
                rows.append([e for b in brow for e in b.rows[i]])
        ncols = sum(b.shape[1] for b in blocks[0])
        for brow in blocks:
            if sum(b.shape[1] for b in brow) != ncols:
                raise DimensionMismatch("block column widths differ")
        return cls(ring, rows, (len(rows), ncols))

    @classmethod
    def block_diag(cls, *ms):
        ring = ms[0].ring
        nr = sum(m.shape[0] for m in ms)
        nc = sum(m.shape[1] for m in ms)
        rows = [[ring.zero] * nc for _ in range(nr)]
        r0 = c0 = 0
        for m in ms:
            for i, row in enumerate(m.rows):
                rows[r0 + i][c0:c0 + m.shape[1]] = row
            r0 += m.shape[0]
            c0 += m.shape[1]
        return cls(ring, rows, (nr, nc))

    @property
    def nrows(self):
        return self.shape[0]

    @property
    def ncols(self):
        return self.shape[1]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def hstack(self, *others):
        return PolyMatrix.block([[self, *others]])

    def vstack(self, *others):
        return PolyMatrix.block([[self]] + [[o] for o in others])

    def submatrix(self, rows, cols):
        rows, cols = list(rows), list(cols)
        return PolyMatrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows],
                          (len(rows), len(cols)))

    def _check(self, other):
        if not isinstance(other, PolyMatrix):
            return False
        if other.ring is not self.ring and other.ring != self.ring:
            raise ContextMismatch(f"{self.ring!r} vs {other.ring!r}")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return PolyMatrix(self.ring, [[a + b for a, b in zip(r, s)]
                                      for r, s in zip(self.rows, other.rows)], self.shape)

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return PolyMatrix(self.ring, [[a - b for a, b in zip(r, s)]
                                      for r, s in zip(self.rows, other.rows)], self.shape)

    def __neg__(self):
        return PolyMatrix(self.ring, [[-a for a in r] for r in self.rows], self.shape)

    def __matmul__(self, other):
        if not self._check(other):
            return NotImplemented
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        zero = self.ring.zero
        cols = other.columns()
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, out, (n, m))

    def __mul__(self, other):
        if isinstance(other, PolyMatrix):
            return self @ other
        p = self.ring(other)
        return PolyMatrix(self.ring, [[a * p for a in r] for r in self.rows], self.shape)

    def __rmul__(self, other):
        return self * other

    @property
    def T(self):
        return PolyMatrix(self.ring, [list(c) for c in self.columns()], (self.ncols, self.nrows))

    def map(self, fn):
        return PolyMatrix(self.ring, [[fn(a) for a in r] for r in self.rows], self.shape)

    def is_zero(self):
        return all(not a.terms for r in self.rows for a in r)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.rows))
        return self._hash

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.rows) + "]"

    def __repr__(self):
        return f"PolyMatrix({self.shape[0]}x{self.shape[1]}, {self})"


def mat_arith(a: PolyMatrix, b: PolyMatrix, op: str) -> PolyMatrix:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a @ b
    raise ValueError(f"unknown op {op!r}")


def divide_exact_by_f(m: PolyMatrix, f: Poly) -> PolyMatrix:
    """Return q with f*q == m entrywise; NotDivisible names the first bad entry."""
    if f.is_zero():
        raise ZeroDivisionError("f must be nonzero")
    out = []
    for i, row in enumerate(m.rows):
        new = []
        for j, a in enumerate(row):
            q, r = poly_divmod(a, f)
            if r.terms:
                raise NotDivisible((i, j), r)
            new.append(q)
        out.append(new)
    return PolyMatrix(m.ring, out, m.shape)


def reduce_matrix_mod(m: PolyMatrix, f: Poly) -> PolyMatrix:
    """Entrywise normal form modulo (f): the canonical lift of m read in S/(f)."""
    return m.map(lambda a: poly_divmod(a, f)[1] if a.terms else a)


def det(m: PolyMatrix) -> Poly:
    n = m.nrows
    if n != m.ncols:
        raise DimensionMismatch("determinant of a non-square matrix")
    if n == 0:
        return m.ring.one
    if n == 1:
        return m[0, 0]
    total = m.ring.zero
    for j in range(n):
        a = m[0, j]
        if a.terms:
            minor = m.submatrix(range(1, n), [k for k in range(n) if k != j])
            term = a * det(minor)
            total = total + term if j % 2 == 0 else total - term
    return total


def adjugate(m: PolyMatrix) -> PolyMatrix:
    """adj(m) with m @ adj(m) == det(m) * I."""
    n = m.nrows
    if n != m.ncols:
        raise DimensionMismatch("adjugate of a non-square matrix")
    if n == 0:
        return m
    if n == 1:
        return PolyMatrix.identity(m.ring, 1)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = m.submatrix([r for r in range(n) if r != i], [c for c in range(n) if c != j])
            c = det(minor)
            out[j][i] = c if (i + j) % 2 == 0 else -c
    return PolyMatrix(m.ring, out, (n, n))


def infer_degrees(m: PolyMatrix, row_degrees=None):
    """Generator (row) and relation (column) degrees making every column homogeneous.

    Each nonzero entry must be homogeneous and deg(m[i, j]) + row[i] == col[j].
    Rows not pinned by any entry default to degree 0.  Raises NotGraded.
    """
    nr, nc = m.shape
    rows = list(row_degrees) if row_degrees is not None else [None] * nr
    cols = [None] * nc
    edeg = {}
    for i, r in enumerate(m.rows):
        for j, a in enumerate(r):
            if a.terms:
                d = a.homogeneous_degree()
                if d is None:
                    raise NotGraded(f"entry ({i}, {j}) = {a} is not homogeneous")
                edeg[i, j] = d
    by_row = {}
    by_col = {}
    for (i, j) in edeg:
        by_row.setdefault(i, []).append(j)
        by_col.setdefault(j, []).append(i)

    def propagate(stack):
        while stack:
            kind, idx = stack.pop()
            if kind == "r":
                for j in by_row.get(idx, ()):
                    want = rows[idx] + edeg[idx, j]
                    if cols[j] is None:
                        cols[j] = want
                        stack.append(("c", j))
                    elif cols[j] != want:
                        raise NotGraded(f"column {j} is not homogeneous")
            else:
                for i in by_col.get(idx, ()):
                    want = cols[idx] - edeg[i, idx]
                    if rows[i] is None:
                        rows[i] = want
                        stack.append(("r", i))
                    elif rows[i] != want:
                        raise NotGraded(f"row {i} has inconsistent degree")

    propagate([("r", i) for i in range(nr) if rows[i] is not None])
    for i in range(nr):
        if rows[i] is None:
            rows[i] = 0
            propagate([("r", i)])
    for j in range(nc):
        if cols[j] is None:
            cols[j] = 0
    return rows, cols
