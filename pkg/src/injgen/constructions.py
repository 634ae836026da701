"""Ring-building constructions.

Matrix-pattern coverings of graded rings, Morita context assembly and
splitting, tuple modules over context rings, tensor rings of nilpotent
bimodules, multiplication-twisted extensions R + M, twisted tensor
products along a bicharacter, and the triangular/corner data attached to
a nonnegatively graded algebra.

Everything returned here is axiom-checked before it leaves the
constructor; a construction that cannot meet its own postcondition raises
ConstructionError with a witness instead of returning junk.
"""

from __future__ import annotations

from .algebra import (AlgebraError, ConstructionError, GradedAlgebra,
                      GradedBimodule, GradedModule, ModuleHom,
                      assert_valid_algebra, assert_valid_bimodule,
                      assert_valid_module, degree_zero_subalgebra,
                      regular_bimodule, trivially_graded, zero_module)
from .groups import TRIVIAL_GROUP, FiniteAbelianGroup
from .linalg import Matrix, Span, inverse
from .tensors import (bilinear_through_tensor, tensor_bimodule_with_module,
                      tensor_bimodules, tensor_module_with_bimodule)

__all__ = [
    "BimoduleHom", "bimodule_hom_violations",
    "CoveringData", "covering_ring", "covering_module",
    "covering_module_inverse",
    "MoritaContext", "morita_ring", "split_covering", "verify_zero_context",
    "TupleModule", "tuple_module",
    "TensorTower", "TensorRingData", "tensor_ring",
    "ThetaData", "theta_extension", "trivial_extension",
    "split_positively_graded",
    "Bicharacter", "twisted_tensor", "twisted_module",
    "tensor_product_algebra",
    "BeilinsonData", "beilinson",
    "CleftFunctors", "theta_cleft_functors",
]


def _sparse(field, vec):
    return {k: c for k, c in enumerate(vec) if not field.is_zero(c)}


def _gl(g):
    return ",".join(str(x) for x in g) if g else "0"


class BimoduleHom:
    """Linear map between bimodules, matrix indexed target x source."""

    def __init__(self, source: GradedBimodule, target: GradedBimodule, matrix: Matrix):
        if matrix.nrows != target.dim or matrix.ncols != source.dim:
            raise AlgebraError(f"hom matrix shape {matrix.nrows}x{matrix.ncols} "
                               f"does not match {target.dim}x{source.dim}")
        self.source = source
        self.target = target
        self.matrix = matrix

    def apply(self, vec):
        return self.matrix.apply(vec)

    def is_zero(self):
        return self.matrix.is_zero()

    def __repr__(self):
        return f"BimoduleHom({self.source.dim} -> {self.target.dim})"


def bimodule_hom_violations(h: BimoduleHom):
    """Two-sided linearity failures of h, as witness strings.

    Checked against algebra generators only; linearity at products follows.
    """
    out = []
    src_l = h.source.as_left_module()
    src_r = h.source.as_right_module()
    tgt_l = h.target.as_left_module()
    tgt_r = h.target.as_right_module()
    for j in h.source.left_algebra.generators():
        lhs = h.matrix.mul(src_l.action_matrix(j))
        rhs = tgt_l.action_matrix(j).mul(h.matrix)
        if lhs != rhs:
            out.append(f"left action of {h.source.left_algebra.labels[j]}")
    for j in h.source.right_algebra.generators():
        lhs = h.matrix.mul(src_r.action_matrix(j))
        rhs = tgt_r.action_matrix(j).mul(h.matrix)
        if lhs != rhs:
            out.append(f"right action of {h.source.right_algebra.labels[j]}")
    return out


# -- coverings ---------------------------------------------------------------


class CoveringData:
    """A graded ring spread out over a square of group-indexed blocks.

    basis_triples[i] = (g, h, base_index) with the base element's degree
    equal to h - g; block_index maps (g, h) to the covering indices of
    that block, and pos inverts basis_triples.
    """

    def __init__(self, algebra, base, basis_triples, block_index, pos):
        self.algebra = algebra
        self.base = base
        self.basis_triples = basis_triples
        self.block_index = block_index
        self.pos = pos

    def idempotent(self, g):
        """The diagonal unit block at g, as a covering vector."""
        F = self.base.field
        v = self.algebra.zero_vec()
        g = self.base.group.reduce(g)
        for i, c in enumerate(self.base.unit):
            if not F.is_zero(c):
                v[self.pos[(g, g, i)]] = c
        return v

    def __repr__(self):
        return f"CoveringData(dim={self.algebra.dim} over {self.base!r})"


def covering_ring(R: GradedAlgebra) -> CoveringData:
    """Square matrix pattern over the grading group.

    Entry slot (g, h) holds the degree h-g component of R; slots multiply
    like matrix units through R's structure constants.  The result is an
    ungraded algebra of dimension |group| * dim R.
    """
    assert_valid_algebra(R, "covering_ring input")
    group = R.group
    F = R.field
    els = group.elements()
    triples = []
    block_index = {}
    pos = {}
    for g in els:
        for h in els:
            idxs = []
            for i in R.component_indices(group.sub(h, g)):
                pos[(g, h, i)] = len(triples)
                idxs.append(len(triples))
                triples.append((g, h, i))
            block_index[(g, h)] = idxs
    dim = len(triples)
    mult = [[{} for _ in range(dim)] for _ in range(dim)]
    for p, (g, h, i) in enumerate(triples):
        for q, (g2, h2, j) in enumerate(triples):
            if h != g2:
                continue
            mult[p][q] = {pos[(g, h2, k)]: c for k, c in R.mult[i][j].items()}
    unit = [F.zero()] * dim
    for g in els:
        for i, c in enumerate(R.unit):
            if not F.is_zero(c):
                unit[pos[(g, g, i)]] = c
    labels = [f"({_gl(g)}>{_gl(h)}){R.labels[i]}" for (g, h, i) in triples]
    alg = GradedAlgebra(F, TRIVIAL_GROUP, labels, [()] * dim, unit, mult)
    assert_valid_algebra(alg, "covering_ring")
    return CoveringData(alg, R, triples, block_index, pos)


def covering_module(M: GradedModule, cov: CoveringData) -> GradedModule:
    """The graded module M as a module over the covering ring.

    Row-vector convention: a covering element in slot (g, h) eats the
    degree-g part of M and deposits the product in degree h.
    """
    if M.side != "right":
        raise ConstructionError("the covering correspondence uses row vectors; "
                                "pass a right module")
    if M.algebra != cov.base:
        raise ConstructionError("module is not over the covered ring")
    action = []
    for i in range(M.dim):
        gi = M.degree[i]
        action.append([dict(M.action[i][x]) if gi == g else {}
                       for (g, h, x) in cov.basis_triples])
    V = GradedModule(cov.algebra, "right", list(M.labels), [()] * M.dim, action)
    assert_valid_module(V, "covering_module")
    return V


def covering_module_inverse(V: GradedModule, cov: CoveringData) -> GradedModule:
    """Graded module recovered from a covering-ring module.

    The degree-g part is the image of the diagonal idempotent at g; the
    base ring acts through single-slot covering elements.
    """
    if V.side != "right" or V.algebra != cov.algebra:
        raise ConstructionError("input must be a right module over the covering ring")
    R = cov.base
    F = R.field
    group = R.group
    new_basis = []
    degrees = []
    for g in group.elements():
        u = cov.idempotent(g)
        seen = Span(F, V.dim)
        for i in range(V.dim):
            w = V.act_vec(V.basis_vec(i), u)
            if seen.add(w):
                new_basis.append(w)
                degrees.append(g)
    if len(new_basis) != V.dim:
        raise ConstructionError("idempotent images do not decompose the module")
    P = Matrix.from_columns(F, new_basis, V.dim)
    Pinv = inverse(P)
    if Pinv is None:
        raise ConstructionError("idempotent images do not decompose the module")
    action = []
    for i, v in enumerate(new_basis):
        gi = degrees[i]
        row = []
        for x in range(R.dim):
            slot = cov.pos[(gi, group.add(gi, R.degree[x]), x)]
            w = V.act_vec(v, V.algebra.basis_vec(slot))
            row.append(_sparse(F, Pinv.apply(w)))
        action.append(row)
    labels = [f"c{i}" for i in range(len(new_basis))]
    M = GradedModule(R, "right", labels, degrees, action)
    assert_valid_module(M, "covering_module_inverse")
    return M


# -- Morita contexts ---------------------------------------------------------


class MoritaContext:
    """Two rings glued along a pair of bimodules into one square ring.

    N is an (A, B)-bimodule, M a (B, A)-bimodule; psi maps N (x)_B M into
    A and phi maps M (x)_A N into B.  assembled carries the 2x2 block
    multiplication, basis ordered A, N, M, B.
    """

    def __init__(self, A, B, N, M, phi, psi, phi_raw, psi_raw, assembled):
        self.A = A
        self.B = B
        self.N = N
        self.M = M
        self.phi = phi
        self.psi = psi
        self.phi_raw = phi_raw
        self.psi_raw = psi_raw
        self.assembled = assembled
        self.offsets = (0, A.dim, A.dim + N.dim, A.dim + N.dim + M.dim)

    @property
    def is_zero_context(self):
        return self.phi_raw.is_zero() and self.psi_raw.is_zero()

    def _psi_pair(self, n, m):
        return self.psi_raw.column(n * self.M.dim + m)

    def _phi_pair(self, m, n):
        return self.phi_raw.column(m * self.N.dim + n)

    # tuple functors; modules here are left modules over the corners

    def T_A(self, X: GradedModule) -> "TupleModule":
        """Tuple with Y induced from X through the bimodule M."""
        _require_left_module(X, self.A, "T_A")
        Y, S_MX = tensor_bimodule_with_module(self.M, X)
        f = ModuleHom(Y, Y, Matrix.identity(X.field, Y.dim))
        g_raw = Matrix.zeros(X.field, X.dim, self.N.dim * Y.dim)
        for n in range(self.N.dim):
            for t in range(Y.dim):
                mt, xt = S_MX.section[t]
                val = X.act_vec(X.basis_vec(xt), self._psi_pair(n, mt))
                col = n * Y.dim + t
                for k, c in enumerate(val):
                    g_raw.rows[k][col] = c
        return _finish_tuple(self, X, Y, f, g_raw, S_MX)

    def T_B(self, Y: GradedModule) -> "TupleModule":
        _require_left_module(Y, self.B, "T_B")
        X, S_NY = tensor_bimodule_with_module(self.N, Y)
        g = ModuleHom(X, X, Matrix.identity(Y.field, X.dim))
        f_raw = Matrix.zeros(Y.field, Y.dim, self.M.dim * X.dim)
        for m in range(self.M.dim):
            for t in range(X.dim):
                nt, yt = S_NY.section[t]
                val = Y.act_vec(Y.basis_vec(yt), self._phi_pair(m, nt))
                col = m * X.dim + t
                for k, c in enumerate(val):
                    f_raw.rows[k][col] = c
        MX, S_MX = tensor_bimodule_with_module(self.M, X)
        f_mat = bilinear_through_tensor(S_MX, f_raw, Y.dim)
        if f_mat is None:
            raise ConstructionError("context data is inconsistent (T_B structure map)")
        f = ModuleHom(MX, Y, f_mat)
        return TupleModule(self, X, Y, f, g, S_MX, S_NY)

    def Z_A(self, X: GradedModule) -> "TupleModule":
        """X paired with the zero module; needs both context maps zero."""
        if not self.is_zero_context:
            raise ConstructionError("zero-partner tuples need phi = psi = 0")
        _require_left_module(X, self.A, "Z_A")
        Y = zero_module(self.B, "left")
        MX, S_MX = tensor_bimodule_with_module(self.M, X)
        NY, S_NY = tensor_bimodule_with_module(self.N, Y)
        f = ModuleHom(MX, Y, Matrix.zeros(X.field, 0, MX.dim))
        g = ModuleHom(NY, X, Matrix.zeros(X.field, X.dim, NY.dim))
        return TupleModule(self, X, Y, f, g, S_MX, S_NY)

    def Z_B(self, Y: GradedModule) -> "TupleModule":
        if not self.is_zero_context:
            raise ConstructionError("zero-partner tuples need phi = psi = 0")
        _require_left_module(Y, self.B, "Z_B")
        X = zero_module(self.A, "left")
        MX, S_MX = tensor_bimodule_with_module(self.M, X)
        NY, S_NY = tensor_bimodule_with_module(self.N, Y)
        f = ModuleHom(MX, Y, Matrix.zeros(Y.field, Y.dim, 0))
        g = ModuleHom(NY, X, Matrix.zeros(Y.field, 0, NY.dim))
        return TupleModule(self, X, Y, f, g, S_MX, S_NY)

    def U_A(self, t: "TupleModule") -> GradedModule:
        return t.X

    def U_B(self, t: "TupleModule") -> GradedModule:
        return t.Y

    def __repr__(self):
        return (f"MoritaContext(A={self.A.dim}, N={self.N.dim}, "
                f"M={self.M.dim}, B={self.B.dim})")


def _require_left_module(X, algebra, who):
    if X.side != "left" or X.algebra != algebra:
        raise ConstructionError(f"{who} expects a left module over the matching corner")


def _finish_tuple(ctx, X, Y, f, g_raw, S_MX):
    NY, S_NY = tensor_bimodule_with_module(ctx.N, Y)
    g_mat = bilinear_through_tensor(S_NY, g_raw, X.dim)
    if g_mat is None:
        raise ConstructionError("context data is inconsistent (tuple structure map)")
    g = ModuleHom(NY, X, g_mat)
    return TupleModule(ctx, X, Y, f, g, S_MX, S_NY)


class TupleModule:
    """(X, Y, f, g) over a Morita context.

    X is a left A-module, Y a left B-module, f maps M (x)_A X to Y and
    g maps N (x)_B Y to X.  Construction validates both structure maps
    and the two compatibility squares on all basis triples.
    """

    def __init__(self, ctx: MoritaContext, X, Y, f: ModuleHom, g: ModuleHom,
                 S_MX, S_NY):
        self.ctx = ctx
        self.X = X
        self.Y = Y
        self.f = f
        self.g = g
        self.S_MX = S_MX
        self.S_NY = S_NY
        self._mod = None
        self._validate()

    def _validate(self):
        from .homs import is_module_hom
        ctx, X, Y = self.ctx, self.X, self.Y
        F = X.field
        if self.f.source.dim != self.S_MX.dim or self.f.target.dim != Y.dim:
            raise ConstructionError("tuple map f has the wrong shape")
        if self.g.source.dim != self.S_NY.dim or self.g.target.dim != X.dim:
            raise ConstructionError("tuple map g has the wrong shape")
        if not is_module_hom(self.f):
            raise ConstructionError("tuple map f is not a module map")
        if not is_module_hom(self.g):
            raise ConstructionError("tuple map g is not a module map")
        # square over X: g(n (x) f(m (x) x)) = psi(n (x) m) x
        for n in range(ctx.N.dim):
            for m in range(ctx.M.dim):
                avec = ctx._psi_pair(n, m)
                for x in range(X.dim):
                    fv = self.f.apply(self.S_MX.project_pair(m, x))
                    dense = [F.zero()] * (ctx.N.dim * Y.dim)
                    for j, c in enumerate(fv):
                        dense[n * Y.dim + j] = c
                    lhs = self.g.apply(self.S_NY.project_vec(dense))
                    rhs = X.act_vec(X.basis_vec(x), avec)
                    if lhs != rhs:
                        raise ConstructionError(
                            f"tuple square fails at ({ctx.N.labels[n]}, "
                            f"{ctx.M.labels[m]}, {X.labels[x]})")
        # square over Y: f(m (x) g(n (x) y)) = phi(m (x) n) y
        for m in range(ctx.M.dim):
            for n in range(ctx.N.dim):
                bvec = ctx._phi_pair(m, n)
                for y in range(Y.dim):
                    gv = self.g.apply(self.S_NY.project_pair(n, y))
                    dense = [F.zero()] * (ctx.M.dim * X.dim)
                    for j, c in enumerate(gv):
                        dense[m * X.dim + j] = c
                    lhs = self.f.apply(self.S_MX.project_vec(dense))
                    rhs = Y.act_vec(Y.basis_vec(y), bvec)
                    if lhs != rhs:
                        raise ConstructionError(
                            f"tuple square fails at ({ctx.M.labels[m]}, "
                            f"{ctx.N.labels[n]}, {Y.labels[y]})")

    @property
    def dim(self):
        return self.X.dim + self.Y.dim

    def as_module(self) -> GradedModule:
        """The left module over the assembled ring carried by the tuple."""
        if self._mod is not None:
            return self._mod
        ctx, X, Y = self.ctx, self.X, self.Y
        F = X.field
        Lam = ctx.assembled
        oA, oN, oM, oB = ctx.offsets
        dX = X.dim
        dim = dX + Y.dim
        action = [[{} for _ in range(Lam.dim)] for _ in range(dim)]
        for i in range(dX):
            for a in range(ctx.A.dim):
                action[i][oA + a] = dict(X.action[i][a])
            for m in range(ctx.M.dim):
                out = self.f.apply(self.S_MX.project_pair(m, i))
                action[i][oM + m] = {dX + k: c for k, c in _sparse(F, out).items()}
        for j in range(Y.dim):
            for b in range(ctx.B.dim):
                action[dX + j][oB + b] = {dX + k: c
                                          for k, c in Y.action[j][b].items()}
            for n in range(ctx.N.dim):
                out = self.g.apply(self.S_NY.project_pair(n, j))
                action[dX + j][oN + n] = _sparse(F, out)
        labels = [f"x:{s}" for s in X.labels] + [f"y:{s}" for s in Y.labels]
        degrees = list(X.degree) + list(Y.degree)
        self._mod = GradedModule(Lam, "left", labels, degrees, action)
        assert_valid_module(self._mod, "tuple as_module")
        return self._mod

    def __repr__(self):
        return f"TupleModule(X={self.X.dim}, Y={self.Y.dim})"


def tuple_module(ctx: MoritaContext, X, Y, f_matrix: Matrix, g_matrix: Matrix):
    """Wrap user-supplied structure maps into a validated tuple.

    f_matrix maps the computed M (x)_A X onto Y's coordinates, g_matrix
    the computed N (x)_B Y onto X's.
    """
    _require_left_module(X, ctx.A, "tuple_module")
    _require_left_module(Y, ctx.B, "tuple_module")
    MX, S_MX = tensor_bimodule_with_module(ctx.M, X)
    NY, S_NY = tensor_bimodule_with_module(ctx.N, Y)
    f = ModuleHom(MX, Y, f_matrix)
    g = ModuleHom(NY, X, g_matrix)
    return TupleModule(ctx, X, Y, f, g, S_MX, S_NY)


class RightTupleModule:
    """(X, Y, f, g) presenting a right module over the assembled ring.

    X is a right A-module, Y a right B-module, f maps X (x)_A N to Y and
    g maps Y (x)_B M to X.  Mirror image of TupleModule; the same two
    compatibility squares are enforced on all basis triples.
    """

    def __init__(self, ctx: MoritaContext, X, Y, f: ModuleHom, g: ModuleHom,
                 S_XN, S_YM):
        self.ctx = ctx
        self.X = X
        self.Y = Y
        self.f = f
        self.g = g
        self.S_XN = S_XN
        self.S_YM = S_YM
        self._mod = None
        self._validate()

    def _validate(self):
        from .homs import is_module_hom
        ctx, X, Y = self.ctx, self.X, self.Y
        F = X.field
        if self.f.source.dim != self.S_XN.dim or self.f.target.dim != Y.dim:
            raise ConstructionError("tuple map f has the wrong shape")
        if self.g.source.dim != self.S_YM.dim or self.g.target.dim != X.dim:
            raise ConstructionError("tuple map g has the wrong shape")
        if not is_module_hom(self.f):
            raise ConstructionError("tuple map f is not a module map")
        if not is_module_hom(self.g):
            raise ConstructionError("tuple map g is not a module map")
        # square over X: g(f(x (x) n) (x) m) = x psi(n (x) m)
        for n in range(ctx.N.dim):
            for m in range(ctx.M.dim):
                avec = ctx._psi_pair(n, m)
                for x in range(X.dim):
                    fv = self.f.apply(self.S_XN.project_pair(x, n))
                    dense = [F.zero()] * (Y.dim * ctx.M.dim)
                    for j, c in enumerate(fv):
                        dense[j * ctx.M.dim + m] = c
                    lhs = self.g.apply(self.S_YM.project_vec(dense))
                    rhs = X.act_vec(X.basis_vec(x), avec)
                    if lhs != rhs:
                        raise ConstructionError(
                            f"tuple square fails at ({X.labels[x]}, "
                            f"{ctx.N.labels[n]}, {ctx.M.labels[m]})")
        # square over Y: f(g(y (x) m) (x) n) = y phi(m (x) n)
        for m in range(ctx.M.dim):
            for n in range(ctx.N.dim):
                bvec = ctx._phi_pair(m, n)
                for y in range(Y.dim):
                    gv = self.g.apply(self.S_YM.project_pair(y, m))
                    dense = [F.zero()] * (X.dim * ctx.N.dim)
                    for i, c in enumerate(gv):
                        dense[i * ctx.N.dim + n] = c
                    lhs = self.f.apply(self.S_XN.project_vec(dense))
                    rhs = Y.act_vec(Y.basis_vec(y), bvec)
                    if lhs != rhs:
                        raise ConstructionError(
                            f"tuple square fails at ({Y.labels[y]}, "
                            f"{ctx.M.labels[m]}, {ctx.N.labels[n]})")

    @property
    def dim(self):
        return self.X.dim + self.Y.dim

    def as_module(self) -> GradedModule:
        if self._mod is not None:
            return self._mod
        ctx, X, Y = self.ctx, self.X, self.Y
        F = X.field
        Lam = ctx.assembled
        oA, oN, oM, oB = ctx.offsets
        dX = X.dim
        dim = dX + Y.dim
        action = [[{} for _ in range(Lam.dim)] for _ in range(dim)]
        for i in range(dX):
            for a in range(ctx.A.dim):
                action[i][oA + a] = dict(X.action[i][a])
            for n in range(ctx.N.dim):
                out = self.f.apply(self.S_XN.project_pair(i, n))
                action[i][oN + n] = {dX + k: c for k, c in _sparse(F, out).items()}
        for j in range(Y.dim):
            for b in range(ctx.B.dim):
                action[dX + j][oB + b] = {dX + k: c
                                          for k, c in Y.action[j][b].items()}
            for m in range(ctx.M.dim):
                out = self.g.apply(self.S_YM.project_pair(j, m))
                action[dX + j][oM + m] = _sparse(F, out)
        labels = [f"x:{s}" for s in X.labels] + [f"y:{s}" for s in Y.labels]
        degrees = list(X.degree) + list(Y.degree)
        self._mod = GradedModule(Lam, "right", labels, degrees, action)
        assert_valid_module(self._mod, "right tuple as_module")
        return self._mod

    def __repr__(self):
        return f"RightTupleModule(X={self.X.dim}, Y={self.Y.dim})"


def _require_right_module(X, algebra, who):
    if X.side != "right" or X.algebra != algebra:
        raise ConstructionError(f"{who} expects a right module over the matching corner")


def right_tuple_module(ctx: MoritaContext, X, Y, f_matrix: Matrix, g_matrix: Matrix):
    """Wrap user-supplied structure maps into a validated right tuple."""
    _require_right_module(X, ctx.A, "right_tuple_module")
    _require_right_module(Y, ctx.B, "right_tuple_module")
    XN, S_XN = tensor_module_with_bimodule(X, ctx.N)
    YM, S_YM = tensor_module_with_bimodule(Y, ctx.M)
    f = ModuleHom(XN, Y, f_matrix)
    g = ModuleHom(YM, X, g_matrix)
    return RightTupleModule(ctx, X, Y, f, g, S_XN, S_YM)


def regular_right_tuple(ctx: MoritaContext) -> RightTupleModule:
    """The assembled ring as a right module over itself, in tuple form.

    X is the first block column A + M (a right A-module), Y the second
    block column N + B; the structure maps are the block multiplications.
    """
    F = ctx.A.field
    dA, dN, dM, dB = ctx.A.dim, ctx.N.dim, ctx.M.dim, ctx.B.dim
    xact = []
    for i in range(dA):
        xact.append([dict(ctx.A.mult[i][a]) for a in range(dA)])
    for j in range(dM):
        xact.append([{dA + k: c for k, c in ctx.M.right_action[j][a].items()}
                     for a in range(dA)])
    X = GradedModule(ctx.A, "right",
                     [f"a.{s}" for s in ctx.A.labels] + [f"m.{s}" for s in ctx.M.labels],
                     list(ctx.A.degree) + list(ctx.M.degree), xact)
    yact = []
    for i in range(dN):
        yact.append([dict(ctx.N.right_action[i][b]) for b in range(dB)])
    for j in range(dB):
        yact.append([{dN + k: c for k, c in ctx.B.mult[j][b].items()}
                     for b in range(dB)])
    Y = GradedModule(ctx.B, "right",
                     [f"n.{s}" for s in ctx.N.labels] + [f"b.{s}" for s in ctx.B.labels],
                     list(ctx.N.degree) + list(ctx.B.degree), yact)
    f_raw = Matrix.zeros(F, Y.dim, X.dim * dN)
    for n in range(dN):
        for i in range(dA):
            for k, c in ctx.N.left_action[n][i].items():
                f_raw.rows[k][i * dN + n] = c
        for j in range(dM):
            for k, c in _sparse(F, ctx._phi_pair(j, n)).items():
                f_raw.rows[dN + k][(dA + j) * dN + n] = c
    g_raw = Matrix.zeros(F, X.dim, Y.dim * dM)
    for m in range(dM):
        for i in range(dN):
            for k, c in _sparse(F, ctx._psi_pair(i, m)).items():
                g_raw.rows[k][i * dM + m] = c
        for j in range(dB):
            for k, c in ctx.M.left_action[m][j].items():
                g_raw.rows[dA + k][(dN + j) * dM + m] = c
    XN, S_XN = tensor_module_with_bimodule(X, ctx.N)
    YM, S_YM = tensor_module_with_bimodule(Y, ctx.M)
    f_mat = bilinear_through_tensor(S_XN, f_raw, Y.dim)
    g_mat = bilinear_through_tensor(S_YM, g_raw, X.dim)
    if f_mat is None or g_mat is None:
        raise ConstructionError("context data is inconsistent (regular tuple)")
    return RightTupleModule(ctx, X, Y, ModuleHom(XN, Y, f_mat),
                            ModuleHom(YM, X, g_mat), S_XN, S_YM)


def morita_ring(A, B, N, M, phi_raw=None, psi_raw=None) -> MoritaContext:
    """Assemble the square ring [[A, N], [M, B]].

    phi_raw: Matrix of shape dim B x (dim M * dim N), column m*dimN + n,
    giving the pairing M x N -> B on basis pairs; psi_raw likewise with
    shape dim A x (dim N * dim M), column n*dimM + m.  None means zero.
    Both pairings must descend to the balanced tensor product, be
    two-sided linear, and satisfy the mixed associativity constraints;
    violations raise with a witness.
    """
    if N.left_algebra != A or N.right_algebra != B:
        raise ConstructionError("N must be an (A, B)-bimodule")
    if M.left_algebra != B or M.right_algebra != A:
        raise ConstructionError("M must be a (B, A)-bimodule")
    assert_valid_algebra(A, "morita_ring corner A")
    assert_valid_algebra(B, "morita_ring corner B")
    assert_valid_bimodule(N, "morita_ring bimodule N")
    assert_valid_bimodule(M, "morita_ring bimodule M")
    F = A.field
    dA, dN, dM, dB = A.dim, N.dim, M.dim, B.dim
    if phi_raw is None:
        phi_raw = Matrix.zeros(F, dB, dM * dN)
    if psi_raw is None:
        psi_raw = Matrix.zeros(F, dA, dN * dM)
    if (phi_raw.nrows, phi_raw.ncols) != (dB, dM * dN):
        raise ConstructionError("phi matrix has the wrong shape")
    if (psi_raw.nrows, psi_raw.ncols) != (dA, dN * dM):
        raise ConstructionError("psi matrix has the wrong shape")

    T_NM, S_NM = tensor_bimodules(N, M)
    psi_ind = bilinear_through_tensor(S_NM, psi_raw, dA)
    if psi_ind is None:
        raise ConstructionError("psi is not balanced over B")
    psi = BimoduleHom(T_NM, regular_bimodule(A), psi_ind)
    bad = bimodule_hom_violations(psi)
    if bad:
        raise ConstructionError(f"psi is not two-sided linear: {bad[0]}")
    T_MN, S_MN = tensor_bimodules(M, N)
    phi_ind = bilinear_through_tensor(S_MN, phi_raw, dB)
    if phi_ind is None:
        raise ConstructionError("phi is not balanced over A")
    phi = BimoduleHom(T_MN, regular_bimodule(B), phi_ind)
    bad = bimodule_hom_violations(phi)
    if bad:
        raise ConstructionError(f"phi is not two-sided linear: {bad[0]}")

    # mixed associativity, on all basis triples
    for m in range(dM):
        for n in range(dN):
            bvec = phi_raw.column(m * dN + n)
            for m2 in range(dM):
                lhs = M.zero_vec()
                for b, c in _sparse(F, bvec).items():
                    for k, c2 in M.left_action[m2][b].items():
                        lhs[k] = F.add(lhs[k], F.mul(c, c2))
                avec = psi_raw.column(n * dM + m2)
                rhs = M.zero_vec()
                for a, c in _sparse(F, avec).items():
                    for k, c2 in M.right_action[m][a].items():
                        rhs[k] = F.add(rhs[k], F.mul(c, c2))
                if lhs != rhs:
                    raise ConstructionError(
                        f"context compatibility fails at ({M.labels[m]}, "
                        f"{N.labels[n]}, {M.labels[m2]})")
    for n in range(dN):
        for m in range(dM):
            avec = psi_raw.column(n * dM + m)
            for n2 in range(dN):
                bvec = phi_raw.column(m * dN + n2)
                lhs = N.zero_vec()
                for b, c in _sparse(F, bvec).items():
                    for k, c2 in N.right_action[n][b].items():
                        lhs[k] = F.add(lhs[k], F.mul(c, c2))
                rhs = N.zero_vec()
                for a, c in _sparse(F, avec).items():
                    for k, c2 in N.left_action[n2][a].items():
                        rhs[k] = F.add(rhs[k], F.mul(c, c2))
                if lhs != rhs:
                    raise ConstructionError(
                        f"context compatibility fails at ({N.labels[n]}, "
                        f"{M.labels[m]}, {N.labels[n2]})")

    oA, oN, oM, oB = 0, dA, dA + dN, dA + dN + dM
    dim = dA + dN + dM + dB
    mult = [[{} for _ in range(dim)] for _ in range(dim)]
    for i in range(dA):
        for j in range(dA):
            mult[oA + i][oA + j] = {oA + k: c for k, c in A.mult[i][j].items()}
        for j in range(dN):
            mult[oA + i][oN + j] = {oN + k: c for k, c in N.left_action[j][i].items()}
    for i in range(dN):
        for j in range(dM):
            mult[oN + i][oM + j] = {oA + k: c for k, c in
                                    _sparse(F, psi_raw.column(i * dM + j)).items()}
        for j in range(dB):
            mult[oN + i][oB + j] = {oN + k: c for k, c in N.right_action[i][j].items()}
    for i in range(dM):
        for j in range(dA):
            mult[oM + i][oA + j] = {oM + k: c for k, c in M.right_action[i][j].items()}
        for j in range(dN):
            mult[oM + i][oN + j] = {oB + k: c for k, c in
                                    _sparse(F, phi_raw.column(i * dN + j)).items()}
    for i in range(dB):
        for j in range(dM):
            mult[oB + i][oM + j] = {oM + k: c for k, c in M.left_action[j][i].items()}
        for j in range(dB):
            mult[oB + i][oB + j] = {oB + k: c for k, c in B.mult[i][j].items()}
    unit = ([c for c in A.unit] + [F.zero()] * (dN + dM) + [c for c in B.unit])
    labels = ([f"a:{s}" for s in A.labels] + [f"n:{s}" for s in N.labels]
              + [f"m:{s}" for s in M.labels] + [f"b:{s}" for s in B.labels])
    degrees = list(A.degree) + list(N.degree) + list(M.degree) + list(B.degree)
    assembled = GradedAlgebra(F, A.group, labels, degrees, unit, mult)
    assert_valid_algebra(assembled, "morita_ring")
    return MoritaContext(A, B, N, M, phi, psi, phi_raw, psi_raw, assembled)


def split_covering(cov: CoveringData, k=None) -> MoritaContext:
    """Cut a covering ring into a 2x2 context along the residue index.

    Rows and columns with residue <= k form the A corner; k defaults to
    the half split (group order a power of two, k = order/2 - 1).  The
    assembled context ring is checked to reproduce the covering's
    multiplication constant-for-constant under the block relabeling.
    """
    group = cov.base.group
    if len(group.factors) != 1:
        raise ConstructionError("splitting needs a cyclic grading group")
    m = group.factors[0]
    if k is None:
        if m & (m - 1):
            raise ConstructionError("default half split needs a 2-power order; pass k")
        k = m // 2 - 1
    if not 0 <= k <= m - 2:
        raise ConstructionError(f"split index {k} out of range for order {m}")
    top = {(r,) for r in range(k + 1)}
    F = cov.base.field

    def collect(rows_top, cols_top):
        out = []
        for idx, (g, h, _) in enumerate(cov.basis_triples):
            if (g in top) == rows_top and (h in top) == cols_top:
                out.append(idx)
        return out

    idxA, idxN, idxM, idxB = (collect(True, True), collect(True, False),
                              collect(False, True), collect(False, False))
    covm = cov.algebra.mult

    def subalgebra(indices):
        local = {gi: i for i, gi in enumerate(indices)}
        mult = [[{local[t]: c for t, c in covm[p][q].items()}
                 for q in indices] for p in indices]
        unit = [cov.algebra.unit[p] for p in indices]
        labels = [cov.algebra.labels[p] for p in indices]
        alg = GradedAlgebra(F, TRIVIAL_GROUP, labels, [()] * len(indices), unit, mult)
        return alg, local

    A_alg, locA = subalgebra(idxA)
    B_alg, locB = subalgebra(idxB)

    def subbimodule(indices, left_idx, right_idx):
        local = {gi: i for i, gi in enumerate(indices)}
        left = [[{local[t]: c for t, c in covm[p][q].items()}
                 for p in left_idx] for q in indices]
        right = [[{local[t]: c for t, c in covm[q][p].items()}
                  for p in right_idx] for q in indices]
        labels = [cov.algebra.labels[p] for p in indices]
        return labels, left, right

    labN, leftN, rightN = subbimodule(idxN, idxA, idxB)
    N_bim = GradedBimodule(A_alg, B_alg, labN, [()] * len(idxN), leftN, rightN)
    labM, leftM, rightM = subbimodule(idxM, idxB, idxA)
    M_bim = GradedBimodule(B_alg, A_alg, labM, [()] * len(idxM), leftM, rightM)

    dN, dM = len(idxN), len(idxM)
    psi_raw = Matrix.zeros(F, len(idxA), dN * dM)
    for n, gn in enumerate(idxN):
        for mm, gm in enumerate(idxM):
            for t, c in covm[gn][gm].items():
                psi_raw.rows[locA[t]][n * dM + mm] = c
    phi_raw = Matrix.zeros(F, len(idxB), dM * dN)
    for mm, gm in enumerate(idxM):
        for n, gn in enumerate(idxN):
            for t, c in covm[gm][gn].items():
                phi_raw.rows[locB[t]][mm * dN + n] = c

    ctx = morita_ring(A_alg, B_alg, N_bim, M_bim, phi_raw, psi_raw)
    relabel = idxA + idxN + idxM + idxB
    for p in range(ctx.assembled.dim):
        for q in range(ctx.assembled.dim):
            got = {relabel[t]: c for t, c in ctx.assembled.mult[p][q].items()}
            if got != covm[relabel[p]][relabel[q]]:
                raise ConstructionError("split does not reassemble the covering")
    ctx.block_relabel = relabel
    ctx.split_index = k
    return ctx


def verify_zero_context(ctx: MoritaContext) -> bool:
    """True iff both pairings of the context vanish identically."""
    return ctx.is_zero_context


# -- tensor rings ------------------------------------------------------------


class TensorTower:
    """Iterated products of a bimodule over its base ring.

    power(i) is the i-fold product (power(0) is the base as a bimodule
    over itself); mu(i, j) is the concatenation pairing
    power(i) x power(j) -> power(i+j) as a raw matrix on basis pairs,
    column u * dim power(j) + v.
    """

    def __init__(self, R: GradedAlgebra, M: GradedBimodule):
        if M.left_algebra != R or M.right_algebra != R:
            raise ConstructionError("tensor tower needs a bimodule over the base on both sides")
        self.base = R
        self.bim = M
        self.powers = [regular_bimodule(R), M]
        self.spaces = [None, None]
        self._mu = {}

    def power(self, i: int) -> GradedBimodule:
        while len(self.powers) <= i:
            prev = self.powers[-1]
            if prev.dim == 0:
                self.powers.append(GradedBimodule(self.base, self.base,
                                                  [], [], [], []))
                self.spaces.append(None)
                continue
            nxt, space = tensor_bimodules(prev, self.bim)
            self.powers.append(nxt)
            self.spaces.append(space)
        return self.powers[i]

    def mu(self, i: int, j: int) -> Matrix:
        key = (i, j)
        if key in self._mu:
            return self._mu[key]
        F = self.base.field
        Pi, Pj, Pij = self.power(i), self.power(j), self.power(i + j)
        out = Matrix.zeros(F, Pij.dim, Pi.dim * Pj.dim)
        if Pij.dim == 0 or Pi.dim == 0 or Pj.dim == 0:
            pass
        elif j == 0:
            for u in range(Pi.dim):
                for r in range(self.base.dim):
                    for k, c in Pi.right_action[u][r].items():
                        out.rows[k][u * Pj.dim + r] = c
        elif i == 0:
            for r in range(self.base.dim):
                for v in range(Pj.dim):
                    for k, c in Pj.left_action[v][r].items():
                        out.rows[k][r * Pj.dim + v] = c
        elif j == 1:
            space = self.spaces[i + 1]
            for u in range(Pi.dim):
                for v in range(Pj.dim):
                    col = u * Pj.dim + v
                    for k, c in enumerate(space.project_pair(u, v)):
                        out.rows[k][col] = c
        else:
            inner = self.mu(i, j - 1)
            outer = self.mu(i + j - 1, 1)
            space = self.spaces[j]
            dmid = self.power(i + j - 1).dim
            for v in range(Pj.dim):
                w, mlast = space.section[v]
                for u in range(Pi.dim):
                    col = u * Pj.dim + v
                    uw = inner.column(u * self.power(j - 1).dim + w)
                    acc = [F.zero()] * Pij.dim
                    for t in range(dmid):
                        c = uw[t]
                        if F.is_zero(c):
                            continue
                        piece = outer.column(t * self.bim.dim + mlast)
                        for k, a in enumerate(piece):
                            if not F.is_zero(a):
                                acc[k] = F.add(acc[k], F.mul(c, a))
                    for k, a in enumerate(acc):
                        out.rows[k][col] = a
        self._mu[key] = out
        return out


class TensorRingData:
    def __init__(self, algebra, tower, index, exponent, offsets):
        self.algebra = algebra
        self.tower = tower
        self.index = index        # first vanishing power
        self.exponent = exponent  # grading group has order 2**exponent
        self.offsets = offsets    # block start per power

    def __repr__(self):
        return f"TensorRingData(dim={self.algebra.dim}, index={self.index})"


def tensor_ring(R: GradedAlgebra, M: GradedBimodule, nilpotency_index: int) -> TensorRingData:
    """Direct sum of the powers of M below the vanishing index.

    The power at nilpotency_index must come out zero-dimensional (that is
    checked here, on the actual tensor powers); the result is graded by
    the cyclic 2-power group just large enough that the occupied degrees
    sit strictly inside the lower half.
    """
    k = int(nilpotency_index)
    if k < 1:
        raise ConstructionError("nilpotency index must be at least 1")
    tower = TensorTower(R, M)
    Pk = tower.power(k)
    if Pk.dim != 0:
        raise ConstructionError(
            f"power {k} of the bimodule has dimension {Pk.dim}; nilpotency not confirmed")
    n = 1
    while 2 ** (n - 1) < k:
        n += 1
    group = FiniteAbelianGroup((2 ** n,))
    F = R.field
    offsets = []
    labels = []
    degrees = []
    for i in range(k):
        offsets.append(len(labels))
        Pi = tower.power(i)
        labels.extend(f"t{i}:{s}" for s in Pi.labels)
        degrees.extend([(i,)] * Pi.dim)
    dim = len(labels)
    mult = [[{} for _ in range(dim)] for _ in range(dim)]
    for i in range(k):
        Pi = tower.power(i)
        for j in range(k - i):
            Pj = tower.power(j)
            if Pi.dim == 0 or Pj.dim == 0 or tower.power(i + j).dim == 0:
                continue
            m = tower.mu(i, j)
            for u in range(Pi.dim):
                for v in range(Pj.dim):
                    col = u * Pj.dim + v
                    cell = {offsets[i + j] + t: m.rows[t][col]
                            for t in range(m.nrows)
                            if not F.is_zero(m.rows[t][col])}
                    if cell:
                        mult[offsets[i] + u][offsets[j] + v] = cell
    unit = [F.zero()] * dim
    for t, c in enumerate(R.unit):
        unit[t] = c
    alg = GradedAlgebra(F, group, labels, degrees, unit, mult)
    assert_valid_algebra(alg, "tensor_ring")
    return TensorRingData(alg, tower, k, n, offsets)


# -- multiplication-twisted extensions ---------------------------------------


class ThetaData:
    """Extension of a ring by a bimodule with a chosen pairing on it.

    algebra has basis base then bimodule; theta is None exactly when the
    pairing is identically zero and was never materialized.
    """

    def __init__(self, algebra, base, bim, theta, theta_raw):
        self.algebra = algebra
        self.base = base
        self.bim = bim
        self.theta = theta
        self.theta_raw = theta_raw

    def __repr__(self):
        return f"ThetaData(dim={self.algebra.dim})"


def _theta_tables(R, M, theta_raw):
    F = R.field
    dR, dM = R.dim, M.dim
    dim = dR + dM
    mult = [[{} for _ in range(dim)] for _ in range(dim)]
    for i in range(dR):
        for j in range(dR):
            mult[i][j] = dict(R.mult[i][j])
        for j in range(dM):
            mult[i][dR + j] = {dR + k: c for k, c in M.left_action[j][i].items()}
    for i in range(dM):
        for j in range(dR):
            mult[dR + i][j] = {dR + k: c for k, c in M.right_action[i][j].items()}
        for j in range(dM):
            col = theta_raw.column(i * dM + j)
            mult[dR + i][dR + j] = {dR + k: c for k, c in _sparse(F, col).items()}
    unit = list(R.unit) + [F.zero()] * dM
    labels = [f"r:{s}" for s in R.labels] + [f"m:{s}" for s in M.labels]
    return GradedAlgebra(F, TRIVIAL_GROUP, labels, [()] * dim, unit, mult)


def theta_extension(R: GradedAlgebra, M: GradedBimodule, theta_raw=None) -> ThetaData:
    """Ring on R + M where two bimodule elements multiply through theta.

    theta_raw: Matrix of shape dim M x (dim M)^2, column i*dimM + j for
    the pair (m_i, m_j); None means the zero pairing.  theta must descend
    to the balanced product, be a two-sided module map, and associate
    with itself; each failure raises with a witness.
    """
    if M.left_algebra != R or M.right_algebra != R:
        raise ConstructionError("extension needs a bimodule over the base on both sides")
    F = R.field
    dM = M.dim
    if theta_raw is None:
        theta_raw = Matrix.zeros(F, dM, dM * dM)
    if (theta_raw.nrows, theta_raw.ncols) != (dM, dM * dM):
        raise ConstructionError("theta matrix has the wrong shape")
    theta = None
    if not theta_raw.is_zero():
        T_MM, S_MM = tensor_bimodules(M, M)
        ind = bilinear_through_tensor(S_MM, theta_raw, dM)
        if ind is None:
            raise ConstructionError("theta is not balanced over the base ring")
        theta = BimoduleHom(T_MM, M, ind)
        bad = bimodule_hom_violations(theta)
        if bad:
            raise ConstructionError(f"theta is not two-sided linear: {bad[0]}")
        # theta must associate with itself
        for i in range(dM):
            for j in range(dM):
                v = theta_raw.column(i * dM + j)
                for k in range(dM):
                    lhs = [F.zero()] * dM
                    for l, c in _sparse(F, v).items():
                        for t, a in _sparse(F, theta_raw.column(l * dM + k)).items():
                            lhs[t] = F.add(lhs[t], F.mul(c, a))
                    w = theta_raw.column(j * dM + k)
                    rhs = [F.zero()] * dM
                    for l, c in _sparse(F, w).items():
                        for t, a in _sparse(F, theta_raw.column(i * dM + l)).items():
                            rhs[t] = F.add(rhs[t], F.mul(c, a))
                    if lhs != rhs:
                        raise ConstructionError(
                            f"theta is not associative at ({M.labels[i]}, "
                            f"{M.labels[j]}, {M.labels[k]})")
    alg = _theta_tables(R, M, theta_raw)
    assert_valid_algebra(alg, "theta_extension")
    return ThetaData(alg, R, M, theta, theta_raw)


def trivial_extension(R: GradedAlgebra, M: GradedBimodule) -> ThetaData:
    """Square-zero extension of R by M (independent of the theta path)."""
    if M.left_algebra != R or M.right_algebra != R:
        raise ConstructionError("extension needs a bimodule over the base on both sides")
    zero = Matrix.zeros(R.field, M.dim, M.dim * M.dim)
    alg = _theta_tables(R, M, zero)
    assert_valid_algebra(alg, "trivial_extension")
    return ThetaData(alg, R, M, None, zero)


def split_positively_graded(Lam: GradedAlgebra):
    """Cut a cyclically graded algebra into degree zero plus the rest.

    Returns (ThetaData, perm) where theta is the multiplication of the
    positive part and perm maps the input basis indices to the extension's
    (degree-zero block first).  Products must stay inside the positive
    part; a wraparound into degree zero is rejected.
    """
    if len(Lam.group.factors) != 1:
        raise ConstructionError("positive splitting needs a cyclic grading group")
    F = Lam.field
    zero_idx = [i for i, d in enumerate(Lam.degree) if d == Lam.group.zero()]
    pos_idx = [i for i, d in enumerate(Lam.degree) if d != Lam.group.zero()]
    R0 = degree_zero_subalgebra(Lam)
    loc0 = {gi: i for i, gi in enumerate(zero_idx)}
    locp = {gi: i for i, gi in enumerate(pos_idx)}

    def restrict(row_global, local):
        out = {}
        for t, c in row_global.items():
            if t not in local:
                raise ConstructionError(
                    "positive part is not multiplicatively closed; re-embed the "
                    "grading in a larger cyclic group")
            out[local[t]] = c
        return out

    left = [[restrict(Lam.mult[g0][gp], locp) for g0 in zero_idx] for gp in pos_idx]
    right = [[restrict(Lam.mult[gp][g0], locp) for g0 in zero_idx] for gp in pos_idx]
    labels = [Lam.labels[i] for i in pos_idx]
    M = GradedBimodule(R0, R0, labels, [()] * len(pos_idx), left, right)
    assert_valid_bimodule(M, "split_positively_graded")
    dM = len(pos_idx)
    theta_raw = Matrix.zeros(F, dM, dM * dM)
    for i, gi in enumerate(pos_idx):
        for j, gj in enumerate(pos_idx):
            for t, c in restrict(Lam.mult[gi][gj], locp).items():
                theta_raw.rows[t][i * dM + j] = c
    td = theta_extension(R0, M, theta_raw)
    perm = [None] * Lam.dim
    for i, gi in enumerate(zero_idx):
        perm[gi] = i
    for i, gi in enumerate(pos_idx):
        perm[gi] = len(zero_idx) + i
    return td, perm


# -- twisted tensor products -------------------------------------------------


def _field_pow(F, v, e):
    out = F.one()
    acc = v
    e = int(e)
    while e:
        if e & 1:
            out = F.mul(out, acc)
        acc = F.mul(acc, acc)
        e >>= 1
    return out


class Bicharacter:
    """Pairing of two grading groups into the field's units.

    Specified by its values on the canonical cyclic generators; values
    elsewhere follow by biadditivity.  Well-definedness on residues
    requires each generator value to be a root of unity of the right
    orders, which is validated eagerly.
    """

    def __init__(self, field, group1: FiniteAbelianGroup,
                 group2: FiniteAbelianGroup, generator_values):
        self.field = field
        self.group1 = group1
        self.group2 = group2
        vals = [[v for v in row] for row in generator_values]
        if len(vals) != len(group1.factors) or any(len(r) != len(group2.factors)
                                                   for r in vals):
            raise ConstructionError("generator value table has the wrong shape")
        one = field.one()
        for i, n in enumerate(group1.factors):
            for j, m in enumerate(group2.factors):
                v = vals[i][j]
                if field.is_zero(v):
                    raise ConstructionError("bicharacter values must be units")
                if _field_pow(field, v, n) != one or _field_pow(field, v, m) != one:
                    raise ConstructionError(
                        f"value at generator pair ({i}, {j}) is not a root of "
                        f"unity matching orders ({n}, {m})")
        self.values = vals
        self._cache = {}

    @classmethod
    def trivial(cls, field, group1, group2):
        one = field.one()
        return cls(field, group1, group2,
                   [[one] * len(group2.factors) for _ in range(len(group1.factors))])

    def value(self, a, b):
        a = self.group1.reduce(a)
        b = self.group2.reduce(b)
        key = (a, b)
        if key not in self._cache:
            F = self.field
            out = F.one()
            for i, x in enumerate(a):
                for j, y in enumerate(b):
                    out = F.mul(out, _field_pow(F, self.values[i][j], x * y))
            self._cache[key] = out
        return self._cache[key]

    def to_json(self):
        return {"group1": self.group1.to_json(), "group2": self.group2.to_json(),
                "values": [[self.field.enc(v) for v in row] for row in self.values]}

    @classmethod
    def from_json(cls, field, obj):
        g1 = FiniteAbelianGroup.from_json(obj["group1"])
        g2 = FiniteAbelianGroup.from_json(obj["group2"])
        vals = [[field.dec(v) for v in row] for row in obj["values"]]
        return cls(field, g1, g2, vals)


def twisted_tensor(A: GradedAlgebra, B: GradedAlgebra, t: Bicharacter) -> GradedAlgebra:
    """Tensor product algebra with the cross-term commutation scaled by t.

    Basis pairs multiply by (a (x) b)(a' (x) b') =
    t(|a'|, |b|) (aa' (x) bb'), graded over the product group.
    """
    if A.field != B.field or A.field != t.field:
        raise ConstructionError("twisted product needs a common field")
    if t.group1 != A.group or t.group2 != B.group:
        raise ConstructionError("bicharacter groups do not match the factors")
    F = A.field
    group = A.group.product_with(B.group)
    dA, dB = A.dim, B.dim
    dim = dA * dB
    labels = [f"({la}|{lb})" for la in A.labels for lb in B.labels]
    degrees = [A.group.pair(da, db) for da in A.degree for db in B.degree]
    mult = [[{} for _ in range(dim)] for _ in range(dim)]
    for i in range(dA):
        for j in range(dB):
            row = i * dB + j
            for p in range(dA):
                coef = t.value(A.degree[p], B.degree[j])
                if F.is_zero(coef):
                    continue
                am = A.mult[i][p]
                if not am:
                    continue
                for q in range(dB):
                    bm = B.mult[j][q]
                    if not bm:
                        continue
                    cell = {}
                    for r, ca in am.items():
                        for s, cb in bm.items():
                            cell[r * dB + s] = F.mul(coef, F.mul(ca, cb))
                    mult[row][p * dB + q] = cell
    unit = [F.zero()] * dim
    for i, ca in enumerate(A.unit):
        if F.is_zero(ca):
            continue
        for j, cb in enumerate(B.unit):
            if not F.is_zero(cb):
                unit[i * dB + j] = F.mul(ca, cb)
    alg = GradedAlgebra(F, group, labels, degrees, unit, mult)
    assert_valid_algebra(alg, "twisted_tensor")
    return alg


def tensor_product_algebra(A: GradedAlgebra, B: GradedAlgebra) -> GradedAlgebra:
    """Plain tensor product algebra, same basis order as the twisted one."""
    F = A.field
    if A.field != B.field:
        raise ConstructionError("tensor product needs a common field")
    group = A.group.product_with(B.group)
    dA, dB = A.dim, B.dim
    dim = dA * dB
    labels = [f"({la}|{lb})" for la in A.labels for lb in B.labels]
    degrees = [A.group.pair(da, db) for da in A.degree for db in B.degree]
    mult = [[{} for _ in range(dim)] for _ in range(dim)]
    for i in range(dA):
        for j in range(dB):
            row = i * dB + j
            for p in range(dA):
                am = A.mult[i][p]
                if not am:
                    continue
                for q in range(dB):
                    bm = B.mult[j][q]
                    if not bm:
                        continue
                    mult[row][p * dB + q] = {r * dB + s: F.mul(ca, cb)
                                             for r, ca in am.items()
                                             for s, cb in bm.items()}
    unit = [F.zero()] * dim
    for i, ca in enumerate(A.unit):
        for j, cb in enumerate(B.unit):
            c = F.mul(ca, cb)
            if not F.is_zero(c):
                unit[i * dB + j] = c
    alg = GradedAlgebra(F, group, labels, degrees, unit, mult)
    assert_valid_algebra(alg, "tensor_product_algebra")
    return alg


def twisted_module(M: GradedModule, N: GradedModule, t: Bicharacter,
                   AtB: GradedAlgebra) -> GradedModule:
    """Right module M (x) N over the twisted product of the two algebras.

    (m (x) n)(a (x) b) = t(|a|, |n|) (ma (x) nb); pass the twisted algebra
    so repeated module constructions share one carrier.
    """
    A, B = M.algebra, N.algebra
    if M.side != "right" or N.side != "right":
        raise ConstructionError("twisted modules are built from right modules")
    if t.group1 != A.group or t.group2 != B.group:
        raise ConstructionError("bicharacter groups do not match the factors")
    if AtB.dim != A.dim * B.dim or AtB.group != A.group.product_with(B.group):
        raise ConstructionError("carrier algebra does not match the factors")
    F = A.field
    dB = B.dim
    dN = N.dim
    dim = M.dim * dN
    labels = [f"({lm}|{ln})" for lm in M.labels for ln in N.labels]
    degrees = [A.group.pair(dm, dn) for dm in M.degree for dn in N.degree]
    action = [[{} for _ in range(AtB.dim)] for _ in range(dim)]
    for p in range(M.dim):
        for q in range(dN):
            row = p * dN + q
            for k in range(A.dim):
                coef = t.value(A.degree[k], N.degree[q])
                ma = M.action[p][k]
                if not ma:
                    continue
                for l in range(dB):
                    nb = N.action[q][l]
                    if not nb:
                        continue
                    cell = {}
                    for r, cm in ma.items():
                        for s, cn in nb.items():
                            cell[r * dN + s] = F.mul(coef, F.mul(cm, cn))
                    action[row][k * dB + l] = cell
    out = GradedModule(AtB, "right", labels, degrees, action)
    assert_valid_module(out, "twisted_module")
    return out


# -- triangular data of a nonnegatively graded algebra -----------------------


class BeilinsonData:
    def __init__(self, algebra, bim, level):
        self.algebra = algebra  # the upper-triangular component pattern
        self.bim = bim          # the complementary lower pattern, a bimodule
        self.level = level

    def __repr__(self):
        return f"BeilinsonData(dim={self.algebra.dim}, level={self.level})"


def beilinson(Lam: GradedAlgebra, level: int) -> BeilinsonData:
    """Block-triangular algebra and bimodule cut from a graded algebra.

    The algebra part is the level x level upper-triangular pattern with
    slot (r, c) holding the degree c-r component; the bimodule part is
    the lower pattern with slot (r, c), c <= r, holding degree
    level - r + c.  Components above `level` must vanish.
    """
    group = Lam.group
    if len(group.factors) != 1:
        raise ConstructionError("triangular cut needs a cyclic grading group")
    m = group.factors[0]
    l = int(level)
    if l < 1 or l > m - 1:
        raise ConstructionError(f"level {l} out of range for order {m}")
    for i in range(l + 1, m):
        if Lam.component_indices((i,)):
            raise ConstructionError(f"component beyond the level is nonzero: degree {i}")
    if 2 * l - 1 >= m:
        raise ConstructionError("grading group too small for the block pattern; "
                                "re-embed in a larger cyclic group")
    F = Lam.field

    def build(slots, slot_degree):
        triples = []
        pos = {}
        for (r, c) in slots:
            for i in Lam.component_indices((slot_degree(r, c),)):
                pos[(r, c, i)] = len(triples)
                triples.append((r, c, i))
        return triples, pos

    upper = [(r, c) for r in range(l) for c in range(r, l)]
    btrip, bpos = build(upper, lambda r, c: c - r)
    dimb = len(btrip)
    mult = [[{} for _ in range(dimb)] for _ in range(dimb)]
    for p, (r, c, i) in enumerate(btrip):
        for q, (r2, c2, j) in enumerate(btrip):
            if c != r2:
                continue
            mult[p][q] = {bpos[(r, c2, k)]: v for k, v in Lam.mult[i][j].items()}
    unit = [F.zero()] * dimb
    for r in range(l):
        for i, v in enumerate(Lam.unit):
            if not F.is_zero(v):
                unit[bpos[(r, r, i)]] = v
    blabels = [f"b[{r},{c}]{Lam.labels[i]}" for (r, c, i) in btrip]
    balg = GradedAlgebra(F, TRIVIAL_GROUP, blabels, [()] * dimb, unit, mult)
    assert_valid_algebra(balg, "beilinson algebra part")

    lower = [(r, c) for r in range(l) for c in range(r + 1)]
    xtrip, xpos = build(lower, lambda r, c: l - r + c)
    dimx = len(xtrip)
    left = [[{} for _ in range(dimb)] for _ in range(dimx)]
    right = [[{} for _ in range(dimb)] for _ in range(dimx)]
    for q, (r, c, j) in enumerate(xtrip):
        for p, (r2, c2, i) in enumerate(btrip):
            # left: b-slot (r2, c2) times x-slot (r, c) lands at (r2, c)
            if c2 == r:
                cell = {}
                for k, v in Lam.mult[i][j].items():
                    if (r2, c, k) not in xpos:
                        raise ConstructionError("block pattern leak in the bimodule part")
                    cell[xpos[(r2, c, k)]] = v
                left[q][p] = cell
            # right: x-slot (r, c) times b-slot (r2, c2) lands at (r, c2)
            if c == r2:
                cell = {}
                for k, v in Lam.mult[j][i].items():
                    if (r, c2, k) not in xpos:
                        raise ConstructionError("block pattern leak in the bimodule part")
                    cell[xpos[(r, c2, k)]] = v
                right[q][p] = cell
    xlabels = [f"x[{r},{c}]{Lam.labels[i]}" for (r, c, i) in xtrip]
    xbim = GradedBimodule(balg, balg, xlabels, [()] * dimx, left, right)
    assert_valid_bimodule(xbim, "beilinson bimodule part")
    return BeilinsonData(balg, xbim, l)


# -- functor package for theta extensions -------------------------------------


class CleftFunctors:
    """Restriction and extension functors between a ring and its extension.

    All modules are right modules; graded inputs are flattened because the
    extension itself is ungraded.  T sends a base module up, U restricts
    back down, Z inflates through the quotient map, C collapses an
    extension module onto the base, F pairs with the bimodule.
    """

    def __init__(self, td: ThetaData):
        self.ext = td
        E = td.algebra
        R = td.base
        base = R if R.group.is_trivial else trivially_graded(R)
        self.base = base
        dR, dE = R.dim, E.dim
        left = [[dict(E.mult[j][i]) for j in range(dR)] for i in range(dE)]
        right = [[dict(E.mult[i][j]) for j in range(dE)] for i in range(dE)]
        self._up = GradedBimodule(base, E, E.labels, [()] * dE, left, right)
        assert_valid_bimodule(self._up, "cleft extension bimodule")
        lp = [[dict(base.mult[j][i]) if j < dR else {} for j in range(dE)]
              for i in range(dR)]
        rp = [[dict(base.mult[i][j]) for j in range(dR)] for i in range(dR)]
        self._down = GradedBimodule(E, base, base.labels, [()] * dR, lp, rp)
        assert_valid_bimodule(self._down, "cleft collapse bimodule")
        bm = td.bim
        self._pair = GradedBimodule(base, base, bm.labels, [()] * bm.dim,
                                    bm.left_action, bm.right_action)
        assert_valid_bimodule(self._pair, "cleft pairing bimodule")

    def _check_base(self, X):
        if X.side != "right" or X.algebra != self.base:
            raise ConstructionError("expected a right module over the base ring "
                                    "(grading forgotten)")

    def _check_ext(self, Y):
        if Y.side != "right" or Y.algebra != self.ext.algebra:
            raise ConstructionError("expected a right module over the extension")

    def T(self, X: GradedModule) -> GradedModule:
        """X paired up along the ring extension."""
        self._check_base(X)
        out, _ = tensor_module_with_bimodule(X, self._up)
        return out

    def C(self, Y: GradedModule) -> GradedModule:
        """Y collapsed onto the base through the quotient map."""
        self._check_ext(Y)
        out, _ = tensor_module_with_bimodule(Y, self._down)
        return out

    def U(self, Y: GradedModule) -> GradedModule:
        """Plain restriction along the inclusion of the base."""
        self._check_ext(Y)
        dR = self.base.dim
        action = [[dict(Y.action[i][j]) for j in range(dR)] for i in range(Y.dim)]
        out = GradedModule(self.base, "right", Y.labels, [()] * Y.dim, action)
        assert_valid_module(out, "cleft restriction")
        return out

    def Z(self, X: GradedModule) -> GradedModule:
        """Inflation: the bimodule part acts by zero."""
        self._check_base(X)
        dR = self.base.dim
        dE = self.ext.algebra.dim
        action = [[dict(X.action[i][j]) if j < dR else {} for j in range(dE)]
                  for i in range(X.dim)]
        out = GradedModule(self.ext.algebra, "right", X.labels, [()] * X.dim, action)
        assert_valid_module(out, "cleft inflation")
        return out

    def F(self, X: GradedModule) -> GradedModule:
        """X paired with the bimodule (stays over the base)."""
        self._check_base(X)
        out, _ = tensor_module_with_bimodule(X, self._pair)
        return out


def theta_cleft_functors(td: ThetaData) -> CleftFunctors:
    return CleftFunctors(td)
