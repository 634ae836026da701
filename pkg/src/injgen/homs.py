"""Hom spaces between modules and exact-or-sampled isomorphism search."""

from __future__ import annotations

import random

from .algebra import AlgebraError, GradedModule, ModuleHom
from .linalg import Matrix, kernel_basis, rank, rref, solve_linear


def hom_space(M: GradedModule, N: GradedModule, graded: bool = True):
    """Basis of Hom_A(M, N) (degree-preserving maps when graded=True).

    Linearity is imposed against a generating subset of the algebra basis;
    that is equivalent to imposing it against every basis element because
    h(m (ab)) = (h(m a)) b whenever both a- and b-linearity hold.
    """
    if M.algebra != N.algebra or M.side != N.side:
        raise AlgebraError("hom spaces need a common algebra and side")
    A = M.algebra
    F = M.field
    if graded:
        unknowns = [(k, i) for k in range(N.dim) for i in range(M.dim)
                    if N.degree[k] == M.degree[i]]
    else:
        unknowns = [(k, i) for k in range(N.dim) for i in range(M.dim)]
    if not unknowns:
        return []
    pos = {u: t for t, u in enumerate(unknowns)}
    rows = []
    gens = A.generators()
    for i in range(M.dim):
        for j in gens:
            # h(act(m_i, e_j)) - act(h(m_i), e_j) = 0, one row per target coord
            step = M.action[i][j]
            row_for = [dict() for _ in range(N.dim)]
            for l, c in step.items():
                for k in range(N.dim):
                    if (k, l) in pos:
                        d = row_for[k]
                        d[pos[(k, l)]] = F.add(d.get(pos[(k, l)], F.zero()), c)
            for k in range(N.dim):
                if (k, i) not in pos:
                    continue
                t = pos[(k, i)]
                for p, c in N.action[k][j].items():
                    d = row_for[p]
                    d[t] = F.sub(d.get(t, F.zero()), c)
            for p in range(N.dim):
                if row_for[p]:
                    dense = [F.zero()] * len(unknowns)
                    for t, c in row_for[p].items():
                        dense[t] = c
                    rows.append(dense)
    mat = Matrix(F, rows, len(unknowns))
    basis = kernel_basis(mat)
    homs = []
    for v in basis:
        m = Matrix.zeros(F, N.dim, M.dim)
        for t, (k, i) in enumerate(unknowns):
            m.rows[k][i] = v[t]
        homs.append(ModuleHom(M, N, m))
    return homs


class IsoReport:
    """Result of an isomorphism search.

    hom is None when no isomorphism was found; conclusive tells whether
    that absence is a proof (dimension mismatch, zero hom space, or a
    completed exhaustive search).  A found isomorphism is always
    conclusive.
    """

    def __init__(self, hom, conclusive, detail):
        self.hom = hom
        self.conclusive = conclusive
        self.detail = detail

    @property
    def found(self):
        return self.hom is not None

    def __repr__(self):
        return f"IsoReport(found={self.found}, conclusive={self.conclusive}, {self.detail!r})"


EXHAUSTIVE_LIMIT = 2 ** 16


def _is_invertible(F, mat):
    return mat.nrows == mat.ncols and rank(mat) == mat.nrows


def find_isomorphism(M: GradedModule, N: GradedModule, graded: bool = True,
                     seed: int = 17, samples: int = 200) -> IsoReport:
    if M.dim != N.dim:
        return IsoReport(None, True, "dimension mismatch")
    if graded and M.dims_by_degree() != N.dims_by_degree():
        return IsoReport(None, True, "dimension-per-degree mismatch")
    if M.dim == 0:
        return IsoReport(ModuleHom(M, N, Matrix.zeros(M.field, 0, 0)), True,
                         "zero modules")
    basis = hom_space(M, N, graded=graded)
    if not basis:
        return IsoReport(None, True, "hom space is zero")
    F = M.field
    d = len(basis)

    def combine(coeffs):
        m = Matrix.zeros(F, N.dim, M.dim)
        for c, h in zip(coeffs, basis):
            if F.is_zero(c):
                continue
            for k in range(N.dim):
                hrow = h.matrix.rows[k]
                mrow = m.rows[k]
                for i in range(M.dim):
                    if not F.is_zero(hrow[i]):
                        mrow[i] = F.add(mrow[i], F.mul(c, hrow[i]))
        return m

    # cheap candidates first: single basis homs and the all-ones sum
    one = F.one()
    cheap = [tuple(one if t == s else F.zero() for t in range(d)) for s in range(d)]
    cheap.append(tuple(one for _ in range(d)))
    for coeffs in cheap:
        m = combine(coeffs)
        if _is_invertible(F, m):
            return IsoReport(ModuleHom(M, N, m), True, "found")

    if F.size is not None and F.size ** d <= EXHAUSTIVE_LIMIT:
        # exhaustive over all coefficient tuples
        def tuples(k):
            if k == 0:
                yield ()
                return
            for rest in tuples(k - 1):
                for c in F.elements():
                    yield rest + (c,)
        for coeffs in tuples(d):
            if all(F.is_zero(c) for c in coeffs):
                continue
            m = combine(coeffs)
            if _is_invertible(F, m):
                return IsoReport(ModuleHom(M, N, m), True, "found")
        return IsoReport(None, True, "exhausted coefficient space")

    rng = random.Random(seed)
    for _ in range(samples):
        coeffs = [F.random(rng) for _ in range(d)]
        m = combine(coeffs)
        if _is_invertible(F, m):
            return IsoReport(ModuleHom(M, N, m), True, "found")
    return IsoReport(None, False, f"no isomorphism in {samples} samples")


def invert_hom(h: ModuleHom) -> ModuleHom:
    F = h.matrix.field
    n = h.matrix.nrows
    if n != h.matrix.ncols:
        raise AlgebraError("only square homs invert")
    aug = Matrix(F, [list(h.matrix.rows[i]) + list(Matrix.identity(F, n).rows[i])
                     for i in range(n)], 2 * n)
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        raise AlgebraError("hom is not invertible")
    inv = Matrix(F, [R.rows[i][n:] for i in range(n)], n)
    return ModuleHom(h.target, h.source, inv)


def is_module_hom(h: ModuleHom) -> bool:
    """Verify linearity on algebra generators (exact)."""
    M, N = h.source, h.target
    A = M.algebra
    for i in range(M.dim):
        for j in A.generators():
            lhs = h.apply(M.act_vec(M.basis_vec(i), A.basis_vec(j)))
            rhs = N.act_vec(h.apply(M.basis_vec(i)), A.basis_vec(j))
            if lhs != rhs:
                return False
    return True
