"""Balanced tensor products X (x)_A Y as explicit quotient spaces.

The carrier is the full pair grid X (x)_k Y; the quotient is by the span of
xa (x) y - x (x) ay for a running over a generating subset of A's basis
(sufficient: the balancing relation for a product follows from the two
factors').  Every relation vector is homogeneous, so Gaussian elimination
never mixes degrees and the quotient basis inherits well-defined degrees.
"""

from __future__ import annotations

from .algebra import (AlgebraError, GradedAlgebra, GradedBimodule, GradedModule,
                      ModuleHom)
from .linalg import Matrix, row_space_reducer


def _right_data(X, algebra):
    """(dim, action, degree) of X as a right module over algebra."""
    if isinstance(X, GradedBimodule):
        if X.right_algebra != algebra:
            raise AlgebraError("bimodule right algebra mismatch")
        return X.dim, X.right_action, X.degree
    if not isinstance(X, GradedModule) or X.side != "right" or X.algebra != algebra:
        raise AlgebraError("expected a right module over the tensor algebra")
    return X.dim, X.action, X.degree


def _left_data(Y, algebra):
    if isinstance(Y, GradedBimodule):
        if Y.left_algebra != algebra:
            raise AlgebraError("bimodule left algebra mismatch")
        return Y.dim, Y.left_action, Y.degree
    if not isinstance(Y, GradedModule) or Y.side != "left" or Y.algebra != algebra:
        raise AlgebraError("expected a left module over the tensor algebra")
    return Y.dim, Y.action, Y.degree


class TensorSpace:
    """Quotient presentation of X (x)_A Y.

    dim: quotient dimension; section: list of representative pairs (i, j)
    (one per quotient basis vector); project_pair(i, j) gives the quotient
    coordinates of the class of x_i (x) y_j.
    """

    def __init__(self, field, group, dimX, dimY, reduce, free_cols, degrees):
        self.field = field
        self.group = group
        self.dimX = dimX
        self.dimY = dimY
        self._reduce = reduce
        self.free_cols = free_cols
        self.dim = len(free_cols)
        self.section = [(c // dimY, c % dimY) for c in free_cols]
        self.degrees = degrees
        self._pair_cache = {}

    def pair_col(self, i, j):
        return i * self.dimY + j

    def project_vec(self, dense_pair_vec):
        return self._reduce(dense_pair_vec)

    def project_pair(self, i, j):
        key = (i, j)
        if key not in self._pair_cache:
            F = self.field
            v = [F.zero()] * (self.dimX * self.dimY)
            v[self.pair_col(i, j)] = F.one()
            self._pair_cache[key] = self._reduce(v)
        return self._pair_cache[key]

    def projection_matrix(self):
        m = Matrix.zeros(self.field, self.dim, self.dimX * self.dimY)
        for i in range(self.dimX):
            for j in range(self.dimY):
                col = self.pair_col(i, j)
                for k, c in enumerate(self.project_pair(i, j)):
                    m.rows[k][col] = c
        return m


def tensor_over_algebra(X, Y, algebra: GradedAlgebra) -> TensorSpace:
    dimX, Xact, degX = _right_data(X, algebra)
    dimY, Yact, degY = _left_data(Y, algebra)
    F = algebra.field
    group = algebra.group
    ncols = dimX * dimY
    rows = []
    gens = algebra.generators()
    for j in gens:
        for i in range(dimX):
            xa = Xact[i][j]
            for k in range(dimY):
                ay = Yact[k][j]
                if not xa and not ay:
                    continue
                row = [F.zero()] * ncols
                for l, c in xa.items():
                    col = l * dimY + k
                    row[col] = F.add(row[col], c)
                for q, c in ay.items():
                    col = i * dimY + q
                    row[col] = F.sub(row[col], c)
                if any(not F.is_zero(a) for a in row):
                    rows.append(row)
    rel = Matrix(F, rows, ncols)
    reduce, free = row_space_reducer(rel)
    degrees = [group.add(degX[c // dimY], degY[c % dimY]) for c in free]
    return TensorSpace(F, group, dimX, dimY, reduce, free, degrees)


def tensor_module_with_bimodule(X: GradedModule, P: GradedBimodule):
    """X (x)_A P for X a right A-module, P an (A, S)-bimodule.

    Returns (right S-module, TensorSpace).  The induced action
    (x (x) p) s = x (x) (p s) descends because the outer action maps
    balancing relations to balancing relations.
    """
    A = X.algebra
    T = tensor_over_algebra(X, P, A)
    S = P.right_algebra
    F = T.field
    action = []
    for (i, j) in T.section:
        row = []
        for s in range(S.dim):
            acc = [F.zero()] * T.dim
            for q, c in P.right_action[j][s].items():
                pv = T.project_pair(i, q)
                for k, a in enumerate(pv):
                    if not F.is_zero(a):
                        acc[k] = F.add(acc[k], F.mul(c, a))
            row.append({k: a for k, a in enumerate(acc) if not F.is_zero(a)})
        action.append(row)
    labels = [f"t{k}" for k in range(T.dim)]
    M = GradedModule(S, "right", labels, T.degrees, action)
    return M, T


def tensor_bimodule_with_module(P: GradedBimodule, Y: GradedModule):
    """P (x)_A Y for P an (S, A)-bimodule, Y a left A-module -> left S-module."""
    A = Y.algebra
    T = tensor_over_algebra(P, Y, A)
    S = P.left_algebra
    F = T.field
    action = []
    for (i, j) in T.section:
        row = []
        for s in range(S.dim):
            acc = [F.zero()] * T.dim
            for l, c in P.left_action[i][s].items():
                pv = T.project_pair(l, j)
                for k, a in enumerate(pv):
                    if not F.is_zero(a):
                        acc[k] = F.add(acc[k], F.mul(c, a))
            row.append({k: a for k, a in enumerate(acc) if not F.is_zero(a)})
        action.append(row)
    labels = [f"t{k}" for k in range(T.dim)]
    M = GradedModule(S, "left", labels, T.degrees, action)
    return M, T


def tensor_bimodules(P: GradedBimodule, Q: GradedBimodule):
    """P (x)_A Q for P an (R, A)- and Q an (A, S)-bimodule -> (R, S)-bimodule."""
    A = P.right_algebra
    if Q.left_algebra != A:
        raise AlgebraError("middle algebras disagree")
    T = tensor_over_algebra(P, Q, A)
    R, S = P.left_algebra, Q.right_algebra
    F = T.field
    left_action, right_action = [], []
    for (i, j) in T.section:
        lrow = []
        for r in range(R.dim):
            acc = [F.zero()] * T.dim
            for l, c in P.left_action[i][r].items():
                pv = T.project_pair(l, j)
                for k, a in enumerate(pv):
                    if not F.is_zero(a):
                        acc[k] = F.add(acc[k], F.mul(c, a))
            lrow.append({k: a for k, a in enumerate(acc) if not F.is_zero(a)})
        left_action.append(lrow)
        rrow = []
        for s in range(S.dim):
            acc = [F.zero()] * T.dim
            for q, c in Q.right_action[j][s].items():
                pv = T.project_pair(i, q)
                for k, a in enumerate(pv):
                    if not F.is_zero(a):
                        acc[k] = F.add(acc[k], F.mul(c, a))
            rrow.append({k: a for k, a in enumerate(acc) if not F.is_zero(a)})
        right_action.append(rrow)
    labels = [f"t{k}" for k in range(T.dim)]
    B = GradedBimodule(R, S, labels, T.degrees, left_action, right_action)
    return B, T


def bilinear_through_tensor(T: TensorSpace, raw_matrix: Matrix, target_dim):
    """Factor a bilinear map through the quotient T.

    raw_matrix sends the pair grid (column index i*dimY+j) to the target.
    Returns the induced matrix on T's basis, or None if the map does not
    kill the balancing relations (checked exactly).
    """
    F = T.field
    # induced matrix: evaluate on section representatives
    out = Matrix.zeros(F, target_dim, T.dim)
    for t, (i, j) in enumerate(T.section):
        col = T.pair_col(i, j)
        for k in range(target_dim):
            out.rows[k][t] = raw_matrix.rows[k][col]
    # well-definedness: raw must agree with induced-after-projection
    for i in range(T.dimX):
        for j in range(T.dimY):
            pv = T.project_pair(i, j)
            want = [raw_matrix.rows[k][T.pair_col(i, j)] for k in range(target_dim)]
            got = out.apply(pv)
            if want != got:
                return None
    return out
