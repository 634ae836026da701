"""Dense exact linear algebra over a coefficient field.

Matrices are small (tens to a few hundred rows), so plain Gaussian
elimination with first-nonzero pivoting is enough.  Over Q each row is
scaled by the lcm of its denominators before elimination, which keeps
intermediate fractions from compounding.  Functions never mutate their
inputs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class Matrix:
    """Row-major dense matrix over a field object from injgen.field."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, rows, ncols=None):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
        else:
            self.ncols = 0 if ncols is None else ncols
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged rows")

    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero()
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n, n)
        one = field.one()
        for i in range(n):
            m.rows[i][i] = one
        return m

    @classmethod
    def from_columns(cls, field, cols, nrows=None):
        if not cols:
            return cls(field, [], 0) if nrows is None else cls.zeros(field, nrows, 0)
        n = len(cols[0])
        return cls(field, [[c[i] for c in cols] for i in range(n)])

    def column(self, j):
        return [r[j] for r in self.rows]

    def copy(self):
        return Matrix(self.field, self.rows, self.ncols)

    def transpose(self):
        return Matrix(self.field, [[self.rows[i][j] for i in range(self.nrows)]
                                   for j in range(self.ncols)], self.nrows)

    def mul(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        F = self.field
        z = F.zero()
        out = []
        orows = other.rows
        for row in self.rows:
            acc = [z] * other.ncols
            for k, a in enumerate(row):
                if F.is_zero(a):
                    continue
                orow = orows[k]
                for j, b in enumerate(orow):
                    if not F.is_zero(b):
                        acc[j] = F.add(acc[j], F.mul(a, b))
            out.append(acc)
        return Matrix(F, out, other.ncols)

    def apply(self, vec):
        """Matrix-vector product (vec indexed by columns)."""
        F = self.field
        z = F.zero()
        out = [z] * self.nrows
        for i, row in enumerate(self.rows):
            acc = z
            for a, x in zip(row, vec):
                if not (F.is_zero(a) or F.is_zero(x)):
                    acc = F.add(acc, F.mul(a, x))
            out[i] = acc
        return out

    def add(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        F = self.field
        return Matrix(F, [[F.add(a, b) for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.rows, other.rows)], self.ncols)

    def scale(self, c):
        F = self.field
        return Matrix(F, [[F.mul(c, a) for a in r] for r in self.rows], self.ncols)

    def is_zero(self):
        F = self.field
        return all(F.is_zero(a) for r in self.rows for a in r)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.nrows == other.nrows and self.ncols == other.ncols
                and self.rows == other.rows)

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field!r})"

    def to_lists(self):
        return [list(r) for r in self.rows]


def _clear_denominators(row):
    """Scale a rational row to integers (positive leading sign preserved)."""
    lcm = 1
    for a in row:
        if a:
            d = a.denominator
            lcm = lcm // gcd(lcm, d) * d
    if lcm == 1:
        return row
    return [a * lcm for a in row]


def rref(mat: Matrix):
    """Reduced row echelon form.

    Returns (R, pivots) where pivots lists the pivot column of each nonzero
    row.  Pivoting picks the first row with a nonzero entry in the current
    column (no magnitude heuristics: the arithmetic is exact).
    """
    F = mat.field
    rows = [list(r) for r in mat.rows]
    if F.kind == "q":
        rows = [_clear_denominators(r) for r in rows]
    nrows, ncols = len(rows), mat.ncols
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if not F.is_zero(rows[i][c]):
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = F.inv(rows[r][c])
        if inv != F.one():
            rows[r] = [F.mul(inv, a) for a in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if not F.is_zero(f):
                    ri = rows[i]
                    rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(ri, prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return Matrix(F, rows, ncols), pivots


def rank(mat: Matrix) -> int:
    return len(rref(mat)[1])


def kernel_basis(mat: Matrix):
    """Basis of the right kernel {v : mat @ v = 0}, as a list of vectors.

    Each basis vector has entry one at its free column and zeros at the
    other free columns, so coordinates w.r.t. this basis can be read off.
    """
    F = mat.field
    R, pivots = rref(mat)
    pivot_set = set(pivots)
    free = [c for c in range(mat.ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [F.zero()] * mat.ncols
        v[fc] = F.one()
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(R.rows[i][fc])
        basis.append(v)
    return basis


def inverse(mat: Matrix):
    """Inverse of a square matrix, or None if singular."""
    if mat.nrows != mat.ncols:
        raise ValueError("inverse of a non-square matrix")
    F = mat.field
    n = mat.nrows
    ident = Matrix.identity(F, n)
    aug = Matrix(F, [row + irow for row, irow in zip(mat.rows, ident.rows)], 2 * n)
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return Matrix(F, [row[n:] for row in R.rows[:n]], n)


def solve_linear(mat: Matrix, rhs):
    """One solution x of mat @ x = rhs, or None if inconsistent."""
    if len(rhs) != mat.nrows:
        raise ValueError("rhs length mismatch")
    F = mat.field
    aug = Matrix(F, [row + [b] for row, b in zip(mat.rows, rhs)] or [],
                 mat.ncols + 1)
    if mat.nrows == 0:
        return [F.zero()] * mat.ncols
    R, pivots = rref(aug)
    if mat.ncols in pivots:
        return None
    x = [F.zero()] * mat.ncols
    for i, pc in enumerate(pivots):
        x[pc] = R.rows[i][mat.ncols]
    return x


class Span:
    """Incrementally maintained subspace of k^n, rows kept in reduced form.

    Rows are stored echelon-reduced with unit pivots and cleared pivot
    columns, so membership and coordinates are cheap.  Insertion order is
    not preserved; basis() returns the reduced rows sorted by pivot.
    """

    def __init__(self, field, ncols):
        self.field = field
        self.ncols = ncols
        self._rows = []   # list of (pivot, row)

    def _reduce(self, v):
        F = self.field
        v = list(v)
        for p, row in self._rows:
            f = v[p]
            if not F.is_zero(f):
                v = [F.sub(a, F.mul(f, b)) for a, b in zip(v, row)]
        return v

    def add(self, v) -> bool:
        """Insert v; returns True if the span grew."""
        F = self.field
        v = self._reduce(v)
        pivot = None
        for c, a in enumerate(v):
            if not F.is_zero(a):
                pivot = c
                break
        if pivot is None:
            return False
        inv = F.inv(v[pivot])
        if inv != F.one():
            v = [F.mul(inv, a) for a in v]
        # clear the new pivot column in existing rows
        for k, (p, row) in enumerate(self._rows):
            f = row[pivot]
            if not F.is_zero(f):
                self._rows[k] = (p, [F.sub(a, F.mul(f, b)) for a, b in zip(row, v)])
        self._rows.append((pivot, v))
        self._rows.sort(key=lambda t: t[0])
        return True

    def contains(self, v) -> bool:
        F = self.field
        return all(F.is_zero(a) for a in self._reduce(v))

    def dim(self):
        return len(self._rows)

    def basis(self):
        return [list(row) for _, row in self._rows]

    def coordinates(self, v):
        """Coordinates of v over basis(), or None if v is outside."""
        F = self.field
        coords = [v[p] for p, _ in self._rows]
        if not self.contains(v):
            return None
        return coords


def row_space_reducer(mat: Matrix):
    """Precompute reduction modulo the row space of mat.

    Returns (reduce, free_cols) where reduce(v) maps a length-ncols vector
    to its coordinates over the free columns, after subtracting the unique
    row-space element matching v at the pivot columns.  This is the
    workhorse for quotient spaces: the classes of the free coordinates form
    a basis of k^ncols / rowspace(mat).
    """
    F = mat.field
    R, pivots = rref(mat)
    pivot_set = set(pivots)
    free = [c for c in range(mat.ncols) if c not in pivot_set]
    free_pos = {c: k for k, c in enumerate(free)}
    # row i of R has pivot 1 at pivots[i]; reduction subtracts R rows.
    prows = [R.rows[i] for i in range(len(pivots))]

    def reduce(v):
        out = [F.zero()] * len(free)
        for c in free:
            out[free_pos[c]] = v[c]
        for i, pc in enumerate(pivots):
            f = v[pc]
            if F.is_zero(f):
                continue
            prow = prows[i]
            for c in free:
                a = prow[c]
                if not F.is_zero(a):
                    k = free_pos[c]
                    out[k] = F.sub(out[k], F.mul(f, a))
        return out

    return reduce, free
