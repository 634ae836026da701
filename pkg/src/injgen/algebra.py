"""Graded algebras and modules with explicit structure constants.

Everything is finite dimensional over an exact field, graded by a finite
abelian group.  An ungraded object is the same thing graded trivially (all
degrees zero, or the trivial group).  Multiplication tables are stored
sparsely: mult[i][j] is a dict {k: coeff} giving e_i * e_j = sum coeff e_k.

Axiom checking returns violation lists rather than raising: callers decide
whether a violation is an error.  Constructions treat any violation in
their own output as a hard bug.
"""

from __future__ import annotations

from .groups import FiniteAbelianGroup, TRIVIAL_GROUP
from .linalg import Matrix, Span, kernel_basis, rref, solve_linear


class AlgebraError(ValueError):
    pass


class ConstructionError(RuntimeError):
    """A construction produced an object violating its own axioms."""


class Violation:
    __slots__ = ("kind", "where", "detail")

    def __init__(self, kind, where, detail=""):
        self.kind = kind
        self.where = tuple(where)
        self.detail = detail

    def __repr__(self):
        return f"Violation({self.kind}, {self.where}, {self.detail!r})"

    def to_json(self):
        return {"kind": self.kind, "where": list(self.where), "detail": self.detail}


class AxiomReport:
    def __init__(self, violations):
        self.violations = list(violations)

    @property
    def passed(self):
        return not self.violations

    def __repr__(self):
        if self.passed:
            return "AxiomReport(ok)"
        return f"AxiomReport({len(self.violations)} violations, first={self.violations[0]!r})"

    def to_json(self):
        return {"passed": self.passed,
                "violations": [v.to_json() for v in self.violations[:20]],
                "violation_count": len(self.violations)}


def _sv_iter(d):
    return sorted(d.items())


def _sv_accumulate(F, acc, d, c):
    """acc += c * d for sparse dicts."""
    for k, v in d.items():
        w = F.mul(c, v)
        if k in acc:
            s = F.add(acc[k], w)
            if F.is_zero(s):
                del acc[k]
            else:
                acc[k] = s
        elif not F.is_zero(w):
            acc[k] = w


def _sv_clean(F, d):
    return {k: v for k, v in d.items() if not F.is_zero(v)}


class GradedAlgebra:
    def __init__(self, field, group: FiniteAbelianGroup, labels, degree, unit, mult):
        self.field = field
        self.group = group
        self.labels = [str(s) for s in labels]
        self.dim = len(self.labels)
        if self.dim == 0:
            raise AlgebraError("zero-dimensional algebras are not admitted")
        self.degree = [group.reduce(d) for d in degree]
        if len(self.degree) != self.dim:
            raise AlgebraError("degree list length mismatch")
        if len(unit) != self.dim:
            raise AlgebraError("unit vector length mismatch")
        self.unit = list(unit)
        if len(mult) != self.dim or any(len(row) != self.dim for row in mult):
            raise AlgebraError("mult table shape mismatch")
        self.mult = [[_sv_clean(field, dict(cell)) for cell in row] for row in mult]
        self._cache = {}

    # -- arithmetic on coefficient vectors ---------------------------------

    def zero_vec(self):
        return [self.field.zero()] * self.dim

    def basis_vec(self, i):
        v = self.zero_vec()
        v[i] = self.field.one()
        return v

    def mul_vec(self, u, v):
        F = self.field
        acc = {}
        for i, a in enumerate(u):
            if F.is_zero(a):
                continue
            mrow = self.mult[i]
            for j, b in enumerate(v):
                if F.is_zero(b):
                    continue
                _sv_accumulate(F, acc, mrow[j], F.mul(a, b))
        out = self.zero_vec()
        for k, c in acc.items():
            out[k] = c
        return out

    def left_mult_matrix(self, i):
        """Matrix of x -> e_i * x in the basis."""
        key = ("lm", i)
        if key not in self._cache:
            F = self.field
            m = Matrix.zeros(F, self.dim, self.dim)
            for j in range(self.dim):
                for k, c in self.mult[i][j].items():
                    m.rows[k][j] = c
            self._cache[key] = m
        return self._cache[key]

    def right_mult_matrix(self, j):
        key = ("rm", j)
        if key not in self._cache:
            F = self.field
            m = Matrix.zeros(F, self.dim, self.dim)
            for i in range(self.dim):
                for k, c in self.mult[i][j].items():
                    m.rows[k][i] = c
            self._cache[key] = m
        return self._cache[key]

    def component_indices(self, gamma):
        key = ("comp", gamma)
        if key not in self._cache:
            g = self.group.reduce(gamma)
            self._cache[key] = [i for i, d in enumerate(self.degree) if d == g]
        return self._cache[key]

    def generators(self):
        """Indices of a basis subset generating the algebra (with the unit).

        Greedy: walk the basis, keep an element whenever it falls outside
        the subalgebra generated so far.  Downstream linear systems only
        impose relations at these indices, which is enough because the
        balancing and linearity conditions are multiplicative.
        """
        if "gens" not in self._cache:
            F = self.field
            span = Span(F, self.dim)
            span.add(list(self.unit))
            basis_of_span = [list(self.unit)]
            gens = []
            for idx in range(self.dim):
                if span.contains(self.basis_vec(idx)):
                    continue
                gens.append(idx)
                queue = [self.basis_vec(idx)]
                while queue:
                    v = queue.pop()
                    if not span.add(v):
                        continue
                    basis_of_span.append(v)
                    for w in list(basis_of_span):
                        for p in (self.mul_vec(v, w), self.mul_vec(w, v)):
                            if not span.contains(p):
                                queue.append(p)
            self._cache["gens"] = gens
        return self._cache["gens"]

    def __eq__(self, other):
        return (isinstance(other, GradedAlgebra)
                and self.field == other.field and self.group == other.group
                and self.labels == other.labels and self.degree == other.degree
                and self.unit == other.unit and self.mult == other.mult)

    def __repr__(self):
        return f"GradedAlgebra(dim={self.dim}, group={self.group!r}, field={self.field!r})"


class GradedModule:
    """One-sided module with homogeneous basis.

    action[i][j] is the expansion of the action of algebra basis element
    e_j on module basis element m_i: m_i * e_j for side 'right' and
    e_j * m_i for side 'left'.
    """

    def __init__(self, algebra: GradedAlgebra, side, labels, degree, action):
        if side not in ("left", "right"):
            raise AlgebraError(f"bad side {side!r}")
        self.algebra = algebra
        self.field = algebra.field
        self.side = side
        self.labels = [str(s) for s in labels]
        self.dim = len(self.labels)
        self.degree = [algebra.group.reduce(d) for d in degree]
        if len(self.degree) != self.dim:
            raise AlgebraError("degree list length mismatch")
        if len(action) != self.dim or any(len(row) != algebra.dim for row in action):
            raise AlgebraError("action table shape mismatch")
        self.action = [[_sv_clean(self.field, dict(cell)) for cell in row] for row in action]
        self._cache = {}

    def zero_vec(self):
        return [self.field.zero()] * self.dim

    def basis_vec(self, i):
        v = self.zero_vec()
        v[i] = self.field.one()
        return v

    def act_vec(self, mvec, avec):
        """Action of algebra vector avec on module vector mvec."""
        F = self.field
        acc = {}
        for i, a in enumerate(mvec):
            if F.is_zero(a):
                continue
            arow = self.action[i]
            for j, b in enumerate(avec):
                if F.is_zero(b):
                    continue
                _sv_accumulate(F, acc, arow[j], F.mul(a, b))
        out = self.zero_vec()
        for k, c in acc.items():
            out[k] = c
        return out

    def action_matrix(self, j):
        """Matrix of the action of e_j on the module."""
        key = ("am", j)
        if key not in self._cache:
            m = Matrix.zeros(self.field, self.dim, self.dim)
            for i in range(self.dim):
                for k, c in self.action[i][j].items():
                    m.rows[k][i] = c
            self._cache[key] = m
        return self._cache[key]

    def _generated_dim(self, idxs, agens):
        span = Span(self.field, self.dim)
        queue = [self.basis_vec(i) for i in idxs]
        while queue:
            v = queue.pop()
            if not span.add(v):
                continue
            for j in agens:
                w = self.act_vec(v, self.algebra.basis_vec(j))
                if not span.contains(w):
                    queue.append(w)
        return span.dim()

    def generators(self):
        """Irredundant generating subset of the basis (indices)."""
        if "gens" not in self._cache:
            F = self.field
            span = Span(F, self.dim)
            agens = self.algebra.generators()
            gens = []
            for idx in range(self.dim):
                if span.contains(self.basis_vec(idx)):
                    continue
                gens.append(idx)
                queue = [self.basis_vec(idx)]
                while queue:
                    v = queue.pop()
                    if not span.add(v):
                        continue
                    for j in agens:
                        w = self.act_vec(v, self.algebra.basis_vec(j))
                        if not span.contains(w):
                            queue.append(w)
            # greedy picks depend on basis order and may overshoot; a
            # redundant pick inflates every later syzygy in a resolution
            for g in reversed(list(gens)):
                if len(gens) == 1:
                    break
                trial = [i for i in gens if i != g]
                if self._generated_dim(trial, agens) == self.dim:
                    gens = trial
            self._cache["gens"] = gens
        return self._cache["gens"]

    def dims_by_degree(self):
        out = {}
        for d in self.degree:
            out[d] = out.get(d, 0) + 1
        return out

    def __eq__(self, other):
        return (isinstance(other, GradedModule) and self.algebra == other.algebra
                and self.side == other.side and self.labels == other.labels
                and self.degree == other.degree and self.action == other.action)

    def __repr__(self):
        return f"GradedModule(side={self.side}, dim={self.dim})"


class GradedBimodule:
    """Bimodule over (left_algebra, right_algebra) with homogeneous basis.

    left_action[i][j] expands e_j * m_i (e_j in left_algebra);
    right_action[i][j] expands m_i * e_j (e_j in right_algebra).
    Both algebras must be graded by the same group.
    """

    def __init__(self, left_algebra, right_algebra, labels, degree,
                 left_action, right_action):
        if left_algebra.group != right_algebra.group:
            raise AlgebraError("bimodule requires a common grading group")
        if left_algebra.field != right_algebra.field:
            raise AlgebraError("bimodule requires a common field")
        self.left_algebra = left_algebra
        self.right_algebra = right_algebra
        self.field = left_algebra.field
        self.group = left_algebra.group
        self.labels = [str(s) for s in labels]
        self.dim = len(self.labels)
        self.degree = [self.group.reduce(d) for d in degree]
        F = self.field
        self.left_action = [[_sv_clean(F, dict(c)) for c in row] for row in left_action]
        self.right_action = [[_sv_clean(F, dict(c)) for c in row] for row in right_action]
        if (len(self.left_action) != self.dim
                or any(len(r) != left_algebra.dim for r in self.left_action)):
            raise AlgebraError("left action shape mismatch")
        if (len(self.right_action) != self.dim
                or any(len(r) != right_algebra.dim for r in self.right_action)):
            raise AlgebraError("right action shape mismatch")

    def as_left_module(self):
        """The underlying left module over left_algebra."""
        return GradedModule(self.left_algebra, "left", self.labels, self.degree,
                            self.left_action)

    def as_right_module(self):
        return GradedModule(self.right_algebra, "right", self.labels, self.degree,
                            self.right_action)

    def zero_vec(self):
        return [self.field.zero()] * self.dim

    def basis_vec(self, i):
        v = self.zero_vec()
        v[i] = self.field.one()
        return v

    def __eq__(self, other):
        return (isinstance(other, GradedBimodule)
                and self.left_algebra == other.left_algebra
                and self.right_algebra == other.right_algebra
                and self.labels == other.labels and self.degree == other.degree
                and self.left_action == other.left_action
                and self.right_action == other.right_action)

    def __repr__(self):
        return f"GradedBimodule(dim={self.dim})"


class ModuleHom:
    """Linear map between modules, matrix indexed target x source."""

    def __init__(self, source, target, matrix: Matrix):
        if matrix.nrows != target.dim or matrix.ncols != source.dim:
            raise AlgebraError(f"hom matrix shape {matrix.nrows}x{matrix.ncols} "
                               f"does not match {target.dim}x{source.dim}")
        self.source = source
        self.target = target
        self.matrix = matrix

    def apply(self, vec):
        return self.matrix.apply(vec)

    def compose(self, other: "ModuleHom"):
        """self after other."""
        return ModuleHom(other.source, self.target, self.matrix.mul(other.matrix))

    def is_zero(self):
        return self.matrix.is_zero()

    def __repr__(self):
        return f"ModuleHom({self.source.dim} -> {self.target.dim})"


# -- axiom checks ----------------------------------------------------------


def check_algebra_axioms(A: GradedAlgebra) -> AxiomReport:
    F = A.field
    group = A.group
    out = []
    zero_deg = group.zero()
    for i, c in enumerate(A.unit):
        if not F.is_zero(c) and A.degree[i] != zero_deg:
            out.append(Violation("unit-not-degree-zero", (i,)))
    # unit laws
    for i in range(A.dim):
        left = A.mul_vec(A.unit, A.basis_vec(i))
        if left != A.basis_vec(i):
            out.append(Violation("left-unit", (i,)))
        right = A.mul_vec(A.basis_vec(i), A.unit)
        if right != A.basis_vec(i):
            out.append(Violation("right-unit", (i,)))
    # grading of products
    for i in range(A.dim):
        di = A.degree[i]
        for j in range(A.dim):
            target = group.add(di, A.degree[j])
            for k in A.mult[i][j]:
                if A.degree[k] != target:
                    out.append(Violation("product-grading", (i, j, k)))
    # associativity; skip triples where both association orders are empty
    mult = A.mult
    for i in range(A.dim):
        mi = mult[i]
        for j in range(A.dim):
            mij = mi[j]
            mj = mult[j]
            for l in range(A.dim):
                mjl = mj[l]
                if not mij and not mjl:
                    continue
                acc1 = {}
                for k, c in mij.items():
                    _sv_accumulate(F, acc1, mult[k][l], c)
                acc2 = {}
                for k, c in mjl.items():
                    _sv_accumulate(F, acc2, mi[k], c)
                if acc1 != acc2:
                    out.append(Violation("associativity", (i, j, l)))
    return AxiomReport(out)


def check_module_axioms(M: GradedModule) -> AxiomReport:
    A = M.algebra
    F = M.field
    group = A.group
    out = []
    unit = A.unit
    for i in range(M.dim):
        if M.act_vec(M.basis_vec(i), unit) != M.basis_vec(i):
            out.append(Violation("unit-action", (i,)))
    for i in range(M.dim):
        di = M.degree[i]
        for j in range(A.dim):
            if M.side == "right":
                target = group.add(di, A.degree[j])
            else:
                target = group.add(A.degree[j], di)
            for k in M.action[i][j]:
                if M.degree[k] != target:
                    out.append(Violation("action-grading", (i, j, k)))
    # compatibility with multiplication:
    #   right: (m e_j) e_l = m (e_j e_l); left: e_j (e_l m) = (e_j e_l) m
    for i in range(M.dim):
        for j in range(A.dim):
            for l in range(A.dim):
                if M.side == "right":
                    step = M.action[i][j]
                    if not step and not A.mult[j][l]:
                        continue
                    acc1 = {}
                    for k, c in step.items():
                        _sv_accumulate(F, acc1, M.action[k][l], c)
                    acc2 = {}
                    for k, c in A.mult[j][l].items():
                        _sv_accumulate(F, acc2, M.action[i][k], c)
                else:
                    step = M.action[i][l]
                    if not step and not A.mult[j][l]:
                        continue
                    acc1 = {}
                    for k, c in step.items():
                        _sv_accumulate(F, acc1, M.action[k][j], c)
                    acc2 = {}
                    for k, c in A.mult[j][l].items():
                        _sv_accumulate(F, acc2, M.action[i][k], c)
                if acc1 != acc2:
                    out.append(Violation("action-associativity", (i, j, l)))
    return AxiomReport(out)


def check_bimodule_axioms(B: GradedBimodule) -> AxiomReport:
    out = []
    left = B.as_left_module()
    right = B.as_right_module()
    rl = check_module_axioms(left)
    rr = check_module_axioms(right)
    out.extend(Violation("left-" + v.kind, v.where, v.detail) for v in rl.violations)
    out.extend(Violation("right-" + v.kind, v.where, v.detail) for v in rr.violations)
    # (e_j m) e_l = e_j (m e_l)
    F = B.field
    for i in range(B.dim):
        for j in range(B.left_algebra.dim):
            lm = B.left_action[i][j]
            for l in range(B.right_algebra.dim):
                rm = B.right_action[i][l]
                if not lm and not rm:
                    continue
                acc1 = {}
                for k, c in lm.items():
                    _sv_accumulate(F, acc1, B.right_action[k][l], c)
                acc2 = {}
                for k, c in rm.items():
                    _sv_accumulate(F, acc2, B.left_action[k][j], c)
                if acc1 != acc2:
                    out.append(Violation("bimodule-compatibility", (i, j, l)))
    return AxiomReport(out)


def assert_valid_algebra(A, context=""):
    rep = check_algebra_axioms(A)
    if not rep.passed:
        raise ConstructionError(f"{context or 'algebra'}: {rep!r}")
    return A


def assert_valid_module(M, context=""):
    rep = check_module_axioms(M)
    if not rep.passed:
        raise ConstructionError(f"{context or 'module'}: {rep!r}")
    return M


def assert_valid_bimodule(B, context=""):
    rep = check_bimodule_axioms(B)
    if not rep.passed:
        raise ConstructionError(f"{context or 'bimodule'}: {rep!r}")
    return B


# -- basic constructions on modules ---------------------------------------


def regular_module(A: GradedAlgebra, side) -> GradedModule:
    if side == "right":
        action = [[dict(A.mult[i][j]) for j in range(A.dim)] for i in range(A.dim)]
    else:
        action = [[dict(A.mult[j][i]) for j in range(A.dim)] for i in range(A.dim)]
    return GradedModule(A, side, A.labels, A.degree, action)


def regular_bimodule(A: GradedAlgebra) -> GradedBimodule:
    left = [[dict(A.mult[j][i]) for j in range(A.dim)] for i in range(A.dim)]
    right = [[dict(A.mult[i][j]) for j in range(A.dim)] for i in range(A.dim)]
    return GradedBimodule(A, A, A.labels, A.degree, left, right)


def zero_module(A: GradedAlgebra, side) -> GradedModule:
    return GradedModule(A, side, [], [], [])


def twist(M: GradedModule, gamma) -> GradedModule:
    """Degree shift: the component of the twist at g is the component at
    gamma + g of M, so basis degrees drop by gamma."""
    g = M.algebra.group.reduce(gamma)
    degs = [M.algebra.group.sub(d, g) for d in M.degree]
    return GradedModule(M.algebra, M.side, M.labels, degs, M.action)


def opposite(A: GradedAlgebra) -> GradedAlgebra:
    """Opposite algebra: products reversed, degrees negated."""
    mult = [[dict(A.mult[j][i]) for j in range(A.dim)] for i in range(A.dim)]
    degs = [A.group.neg(d) for d in A.degree]
    return GradedAlgebra(A.field, A.group, A.labels, degs, A.unit, mult)


def dual(M: GradedModule) -> GradedModule:
    """Linear dual with the side swapped and degrees negated.

    For a right module the dual carries the left action
    (e_j f)(m) = f(m e_j), so a dual basis vector sits in degree -d when
    the original basis vector sits in degree d.  A left module over A is
    the same data as a right module over opposite(A); the side-swapped
    presentation keeps the grading of the action strict.
    """
    A = M.algebra
    dim = M.dim
    new_side = "left" if M.side == "right" else "right"
    action = [[{} for _ in range(A.dim)] for _ in range(dim)]
    for k in range(dim):
        for j in range(A.dim):
            for i, c in M.action[k][j].items():
                action[i][j][k] = c
    degs = [A.group.neg(d) for d in M.degree]
    labels = [s + "*" for s in M.labels]
    return GradedModule(A, new_side, labels, degs, action)


def direct_sum(mods):
    """Direct sum of modules over a common algebra and side."""
    mods = list(mods)
    if not mods:
        raise AlgebraError("direct sum needs at least one summand")
    A = mods[0].algebra
    side = mods[0].side
    for m in mods:
        if m.algebra != A or m.side != side:
            raise AlgebraError("direct sum requires equal algebra and side")
    labels, degree, action = [], [], []
    offsets = []
    off = 0
    for t, m in enumerate(mods):
        offsets.append(off)
        labels.extend(f"{s}#{t}" for s in m.labels)
        degree.extend(m.degree)
        for i in range(m.dim):
            action.append([{k + off: c for k, c in m.action[i][j].items()}
                           for j in range(A.dim)])
        off += m.dim
    return GradedModule(A, side, labels, degree, action), offsets


def vector_degree(group, degree_list, vec, field):
    """Degree of a homogeneous vector, or None if mixed or zero."""
    deg = None
    for i, c in enumerate(vec):
        if field.is_zero(c):
            continue
        if deg is None:
            deg = degree_list[i]
        elif degree_list[i] != deg:
            return None
    return deg


def submodule_closure(M: GradedModule, vectors):
    """Span basis of the submodule generated by the given vectors."""
    span = Span(M.field, M.dim)
    agens = M.algebra.generators()
    queue = [list(v) for v in vectors]
    while queue:
        v = queue.pop()
        if not span.add(v):
            continue
        for j in agens:
            queue.append(M.act_vec(v, M.algebra.basis_vec(j)))
    return span.basis()


def quotient_module(M: GradedModule, vectors, label="q"):
    """Quotient of M by the submodule generated by the given vectors.

    Each generator must be homogeneous (for the trivially graded case every
    vector is).  Returns (Q, projection hom M -> Q).
    """
    from .linalg import row_space_reducer
    closure = submodule_closure(M, vectors)
    for v in closure:
        if vector_degree(M.algebra.group, M.degree, v, M.field) is None:
            raise AlgebraError("quotient by a non-homogeneous submodule")
    rel = Matrix(M.field, closure, M.dim)
    reduce, free = row_space_reducer(rel)
    labels = [f"{label}{t}" for t in range(len(free))]
    degree = [M.degree[c] for c in free]
    qdim = len(free)
    # action on the class of coordinate c: act on e_c in M, then reduce
    action = []
    for t, c in enumerate(free):
        row = []
        for j in range(M.algebra.dim):
            img = M.act_vec(M.basis_vec(c), M.algebra.basis_vec(j))
            red = reduce(img)
            row.append({k: x for k, x in enumerate(red) if not M.field.is_zero(x)})
        action.append(row)
    Q = GradedModule(M.algebra, M.side, labels, degree, action)
    pm = Matrix.zeros(M.field, qdim, M.dim)
    for c in range(M.dim):
        red = reduce(M.basis_vec(c))
        for k, x in enumerate(red):
            pm.rows[k][c] = x
    return Q, ModuleHom(M, Q, pm)


def module_from_span(M: GradedModule, vectors, label="s"):
    """The submodule generated by the vectors, as an abstract module.

    Returns (S, inclusion hom S -> M).  Basis vectors of S are the span
    closure basis; coordinates are read off thanks to the Span normal form.
    """
    closure = submodule_closure(M, vectors)
    for v in closure:
        if vector_degree(M.algebra.group, M.degree, v, M.field) is None:
            raise AlgebraError("span of non-homogeneous vectors")
    span = Span(M.field, M.dim)
    for v in closure:
        span.add(v)
    basis = span.basis()
    sdim = len(basis)
    degree = [vector_degree(M.algebra.group, M.degree, v, M.field) or M.algebra.group.zero()
              for v in basis]
    labels = [f"{label}{t}" for t in range(sdim)]
    action = []
    for t, v in enumerate(basis):
        row = []
        for j in range(M.algebra.dim):
            img = M.act_vec(v, M.algebra.basis_vec(j))
            coords = span.coordinates(img)
            if coords is None:
                raise AlgebraError("span closure is not action stable (bug)")
            row.append({k: x for k, x in enumerate(coords) if not M.field.is_zero(x)})
        action.append(row)
    S = GradedModule(M.algebra, M.side, labels, degree, action)
    inc = Matrix.from_columns(M.field, basis, M.dim) if sdim else Matrix.zeros(M.field, M.dim, 0)
    return S, ModuleHom(S, M, inc)


def strongly_graded_check(A: GradedAlgebra):
    """Check R_g R_h = R_{g+h} as spans, for every pair of group elements.

    Returns (ok, failures) where failures lists pairs (g, h) with a strict
    inclusion.  The product span is always contained in the target
    component by gradedness, so only dimensions need comparing.
    """
    failures = []
    els = A.group.elements()
    for g in els:
        gi = A.component_indices(g)
        for h in els:
            hi = A.component_indices(h)
            target = A.component_indices(A.group.add(g, h))
            span = Span(A.field, A.dim)
            for i in gi:
                for j in hi:
                    vec = A.zero_vec()
                    for k, c in A.mult[i][j].items():
                        vec[k] = c
                    span.add(vec)
            if span.dim() != len(target):
                failures.append((g, h))
    return (not failures), failures


def degree_zero_subalgebra(A: GradedAlgebra) -> GradedAlgebra:
    """The degree-zero component as a trivially graded algebra."""
    idx = A.component_indices(A.group.zero())
    if not idx:
        raise AlgebraError("degree-zero component is zero; not an algebra")
    pos = {i: t for t, i in enumerate(idx)}
    labels = [A.labels[i] for i in idx]
    unit = [A.unit[i] for i in idx]
    mult = [[{pos[k]: c for k, c in A.mult[i][j].items()} for j in idx] for i in idx]
    degs = [() for _ in idx]
    return GradedAlgebra(A.field, TRIVIAL_GROUP, labels, degs, unit, mult)


def component_bimodule(A: GradedAlgebra, gamma, A0: GradedAlgebra | None = None):
    """The degree-gamma component of A as a bimodule over its degree-zero
    part (trivially graded).  A0 defaults to degree_zero_subalgebra(A)."""
    if A0 is None:
        A0 = degree_zero_subalgebra(A)
    zidx = A.component_indices(A.group.zero())
    cidx = A.component_indices(gamma)
    pos = {i: t for t, i in enumerate(cidx)}
    labels = [A.labels[i] for i in cidx]
    left = [[{pos[k]: c for k, c in A.mult[j][i].items()} for j in zidx] for i in cidx]
    right = [[{pos[k]: c for k, c in A.mult[i][j].items()} for j in zidx] for i in cidx]
    degs = [() for _ in cidx]
    return GradedBimodule(A0, A0, labels, degs, left, right)


def trivially_graded(A: GradedAlgebra) -> GradedAlgebra:
    """Forget the grading (same constants over the trivial group)."""
    degs = [() for _ in range(A.dim)]
    return GradedAlgebra(A.field, TRIVIAL_GROUP, A.labels, degs, A.unit, A.mult)
