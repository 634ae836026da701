"""Derivation engine for the injective-generation property.

A claim names a stored algebra and asserts that injective modules
generate its derived category.  Rules connect a claim to premise claims,
guarded by machine-checkable hypotheses; provenance records in the
registry decide which rules can fire.  Every rule that leans on a stored
construction re-runs it and compares content hashes, so a certificate
really is re-derivable from the stored structure constants alone.

Statuses form a ladder: Established needs every hypothesis verified and
every leaf a base fact; one inconclusive hypothesis anywhere drops the
grade to Refutation-free-but-Conditional; anything else is Unknown.  A
refuted hypothesis only disqualifies the rule application.  The engine
never concludes a negative.
"""

from __future__ import annotations

import random

from .algebra import (AlgebraError, ConstructionError, component_bimodule,
                      degree_zero_subalgebra, dual, quotient_module,
                      regular_module, strongly_graded_check)
from .constructions import (Bicharacter, beilinson, covering_ring,
                            morita_ring, tensor_ring, theta_extension,
                            trivial_extension, twisted_tensor)
from .homology import (DEFAULT_NIL_CUTOFF, DEFAULT_PD_CUTOFF, is_projective,
                       left_perfect_check, nilpotency_index,
                       projective_dimension)
from .serialize import matrix_from_json, object_hash, provenance_record

ESTABLISHED = "Established"
CONDITIONAL = "Refutation-free-but-Conditional"
UNKNOWN = "Unknown"

_GRADE = {UNKNOWN: 0, CONDITIONAL: 1, ESTABLISHED: 2}
_HYP_GRADE = {"refuted": 0, "inconclusive": 1, "verified": 2}


class ReductionError(Exception):
    pass


def _hyp(name, status, evidence):
    if status not in _HYP_GRADE:
        raise ReductionError(f"bad hypothesis status {status!r}")
    return {"name": name, "status": status, "evidence": evidence}


def _pd_hyp(name, verdict):
    status = "verified" if verdict.is_finite else "inconclusive"
    return _hyp(name, status, {"pd": verdict.to_json()})


def _nil_hyp(name, verdict):
    status = "verified" if verdict.kind == "index" else "inconclusive"
    return _hyp(name, status, {"nilpotency": verdict.to_json()})


def _perfect_hyp(name, report):
    status = {"LeftPerfect": "verified", "NotLeftPerfect": "refuted",
              "Inconclusive": "inconclusive"}[report.verdict]
    ev = {"verdict": report.verdict, "pd": report.pd.to_json(),
          "nilpotency": report.nilpotency.to_json()}
    if report.witness is not None:
        ev["witness"] = list(report.witness)
    if report.reason is not None:
        ev["reason"] = report.reason
    return _hyp(name, status, ev)


class Edge:
    """One candidate application of a rule at a fixed claim."""

    __slots__ = ("direction", "premises", "hypotheses", "cap")

    def __init__(self, direction, premises, hypotheses, cap=ESTABLISHED):
        self.direction = direction
        self.premises = list(premises)
        self.hypotheses = list(hypotheses)
        self.cap = cap

    @property
    def refuted(self):
        return any(h["status"] == "refuted" for h in self.hypotheses)

    @property
    def grade_cap(self):
        g = _GRADE[self.cap]
        if any(h["status"] == "inconclusive" for h in self.hypotheses):
            g = min(g, _GRADE[CONDITIONAL])
        return g


class Env:
    """Registry access plus caches and cutoffs shared by one derivation."""

    def __init__(self, reg, pd_cutoff=DEFAULT_PD_CUTOFF,
                 nil_cutoff=DEFAULT_NIL_CUTOFF, seed=17):
        self.reg = reg
        self.pd_cutoff = pd_cutoff
        self.nil_cutoff = nil_cutoff
        self.seed = seed
        self._rebuilt = {}
        self._deg0 = {}

    def obj(self, h):
        return self.reg.load(h)

    def prov(self, h):
        return self.reg.entry(h).get("provenance") or {}

    def claim(self, h):
        return {"hash": h, "label": self.reg.label_of(h)}

    def deg0_of(self, h):
        """Hash of the degree-zero subalgebra, registering it if new."""
        if h not in self._deg0:
            sub = degree_zero_subalgebra(self.obj(h))
            prov = provenance_record("degree_zero_subalgebra", [h])
            self._deg0[h] = self.reg.store_object(
                sub, label=self.reg.label_of(h) + ":deg0", provenance=prov)
        return self._deg0[h]

    def rebuild(self, h):
        """Re-run the stored construction for h.

        Returns (built, err) where built is the primary object (hash not
        yet compared) or None with an error string.  Results are cached;
        Morita rebuilds keep the whole context for corner hypotheses.
        """
        if h in self._rebuilt:
            return self._rebuilt[h]
        prov = self.prov(h)
        name = prov.get("construction")
        ins = prov.get("inputs", [])
        params = prov.get("params", {})
        try:
            built = self._run_construction(name, ins, params)
        except (AlgebraError, ConstructionError, KeyError, IndexError,
                TypeError, ValueError) as e:
            self._rebuilt[h] = (None, f"{type(e).__name__}: {e}")
            return self._rebuilt[h]
        self._rebuilt[h] = (built, None)
        return self._rebuilt[h]

    def _run_construction(self, name, ins, params):
        if name == "covering_ring":
            return covering_ring(self.obj(ins[0])).algebra
        if name == "degree_zero_subalgebra":
            return degree_zero_subalgebra(self.obj(ins[0]))
        if name == "tensor_ring":
            return tensor_ring(self.obj(ins[0]), self.obj(ins[1]),
                               params["nilpotency_index"]).algebra
        if name == "trivial_extension":
            return trivial_extension(self.obj(ins[0]), self.obj(ins[1])).algebra
        if name == "theta_extension":
            R, M = self.obj(ins[0]), self.obj(ins[1])
            theta = None
            if "theta" in params:
                theta = matrix_from_json(R.field, params["theta"], M.dim * M.dim)
            return theta_extension(R, M, theta).algebra
        if name == "morita_ring":
            return self._rebuild_morita(ins, params).assembled
        if name == "beilinson":
            bd = beilinson(self.obj(ins[0]), params["level"])
            return trivial_extension(bd.algebra, bd.bim).algebra
        if name == "twisted_tensor":
            A, B = self.obj(ins[0]), self.obj(ins[1])
            t = Bicharacter.from_json(A.field, params["t"])
            return twisted_tensor(A, B, t)
        raise ReductionError(f"no rebuild recipe for construction {name!r}")

    def _rebuild_morita(self, ins, params):
        A, B = self.obj(ins[0]), self.obj(ins[1])
        N, M = self.obj(ins[2]), self.obj(ins[3])
        phi = psi = None
        if "phi" in params:
            phi = matrix_from_json(A.field, params["phi"], M.dim * N.dim)
        if "psi" in params:
            psi = matrix_from_json(A.field, params["psi"], N.dim * M.dim)
        return morita_ring(A, B, N, M, phi, psi)

    def morita_ctx(self, h):
        built, err = self.rebuild(h)
        if err is not None or built is None:
            return None
        key = ("ctx", h)
        if key not in self._rebuilt:
            prov = self.prov(h)
            self._rebuilt[key] = self._rebuild_morita(
                prov.get("inputs", []), prov.get("params", {}))
        return self._rebuilt[key]

    def integrity_hyp(self, h):
        built, err = self.rebuild(h)
        if err is not None:
            return _hyp("construction-integrity", "refuted", {"error": err})
        got = object_hash(built)
        status = "verified" if got == h else "refuted"
        return _hyp("construction-integrity", status,
                    {"expected": h, "rebuilt": got})


class Rule:
    rule_id = ""
    citation = ""

    def edges(self, env: Env, h: str):
        raise NotImplementedError


def _is_algebra(env, h):
    return env.reg.entry(h).get("kind") == "algebra"


class CoveringRule(Rule):
    rule_id = "R-COV"
    citation = ("A ring graded by a finite abelian group and its covering "
                "ring have equivalent module theories, so injectives "
                "generate for one exactly when they do for the other.")

    def edges(self, env, h):
        out = []
        if env.prov(h).get("construction") == "covering_ring":
            out.append(Edge("forward", [env.prov(h)["inputs"][0]],
                            [env.integrity_hyp(h)]))
        for other, _e in env.reg.derived_from(h, "covering_ring"):
            out.append(Edge("backward", [other], [env.integrity_hyp(other)]))
        return out


class StronglyGradedRule(Rule):
    rule_id = "R-STR"
    citation = ("A ring strongly graded by a finite abelian group passes "
                "injective generation to and from its degree-zero subring.")

    def _strong_hyp(self, env, h):
        A = env.obj(h)
        if A.group.is_trivial:
            return None
        ok, failures = strongly_graded_check(A)
        ev = {"failures": [[list(g), list(k)] for g, k in failures[:8]],
              "failure_count": len(failures)}
        return _hyp("strongly-graded", "verified" if ok else "refuted", ev)

    def edges(self, env, h):
        out = []
        prov = env.prov(h)
        if prov.get("construction") == "degree_zero_subalgebra":
            parent = prov["inputs"][0]
            sh = self._strong_hyp(env, parent)
            if sh is not None:
                out.append(Edge("forward", [parent],
                                [env.integrity_hyp(h), sh]))
        A = env.obj(h)
        if not A.group.is_trivial:
            sh = self._strong_hyp(env, h)
            if sh is not None and sh["status"] != "refuted":
                out.append(Edge("backward", [env.deg0_of(h)], [sh]))
        return out


class TriangularRule(Rule):
    rule_id = "R-TRI"
    citation = ("For a triangular context with one vanishing corner "
                "bimodule, injective generation for both diagonal corners "
                "gives it for the whole ring, and the whole ring gives it "
                "for the corner away from the off-diagonal block.")

    @staticmethod
    def _zero_corner(env, prov):
        """None unless exactly the triangular shape; else 'N' or 'M' or 'both'."""
        ins = prov.get("inputs", [])
        if prov.get("construction") != "morita_ring" or len(ins) != 4:
            return None
        if not prov.get("params", {}).get("zero_context", False):
            return None
        ndim = len(env.reg.load_doc(ins[2])["basis"])
        mdim = len(env.reg.load_doc(ins[3])["basis"])
        if ndim == 0 and mdim == 0:
            return "both"
        if mdim == 0:
            return "M"
        if ndim == 0:
            return "N"
        return None

    def edges(self, env, h):
        out = []
        prov = env.prov(h)
        corner = self._zero_corner(env, prov)
        if corner is not None:
            ins = prov["inputs"]
            out.append(Edge("forward", [ins[0], ins[1]],
                            [env.integrity_hyp(h)]))
        for other, e in env.reg.derived_from(h, "morita_ring"):
            oprov = e.get("provenance") or {}
            c = self._zero_corner(env, oprov)
            if c is None:
                continue
            ins = oprov["inputs"]
            # the descent lands on the corner opposite the nonzero block
            targets = {"M": [ins[1]], "N": [ins[0]], "both": [ins[0], ins[1]]}[c]
            if h in targets:
                out.append(Edge("backward", [other], [env.integrity_hyp(other)]))
        return out


class MoritaRule(Rule):
    rule_id = "R-MOR"
    citation = ("For a context ring with both pairings zero: finite "
                "projective dimension of a glueing bimodule over a corner "
                "lets generation descend to that corner, and finite "
                "projective dimension of the two corner stalk tuples lets "
                "it ascend from both corners.")

    @staticmethod
    def _applies(env, h2):
        prov = env.prov(h2)
        return (prov.get("construction") == "morita_ring"
                and len(prov.get("inputs", [])) == 4
                and prov.get("params", {}).get("zero_context", False))

    def edges(self, env, h):
        out = []
        if self._applies(env, h):
            ctx = env.morita_ctx(h)
            hyps = [env.integrity_hyp(h)]
            if ctx is not None:
                za = ctx.Z_A(regular_module(ctx.A, "left")).as_module()
                zb = ctx.Z_B(regular_module(ctx.B, "left")).as_module()
                hyps.append(_pd_hyp("stalk-pd[A]",
                                    projective_dimension(za, env.pd_cutoff)))
                hyps.append(_pd_hyp("stalk-pd[B]",
                                    projective_dimension(zb, env.pd_cutoff)))
            ins = env.prov(h)["inputs"]
            out.append(Edge("forward", [ins[0], ins[1]], hyps))
        for other, e in env.reg.derived_from(h, "morita_ring"):
            if not self._applies(env, other):
                continue
            ins = (e.get("provenance") or {})["inputs"]
            ctx = env.morita_ctx(other)
            if ctx is None:
                continue
            if h == ins[0] and ctx.N.dim > 0:
                v = projective_dimension(ctx.N.as_left_module(), env.pd_cutoff)
                out.append(Edge("backward", [other],
                                [env.integrity_hyp(other),
                                 _pd_hyp("glueing-pd[N]", v)]))
            if h == ins[0] and ctx.N.dim == 0:
                out.append(Edge("backward", [other], [env.integrity_hyp(other)]))
            if h == ins[1] and ctx.M.dim > 0:
                v = projective_dimension(ctx.M.as_left_module(), env.pd_cutoff)
                out.append(Edge("backward", [other],
                                [env.integrity_hyp(other),
                                 _pd_hyp("glueing-pd[M]", v)]))
            if h == ins[1] and ctx.M.dim == 0:
                out.append(Edge("backward", [other], [env.integrity_hyp(other)]))
        return out


class BeilinsonRule(Rule):
    rule_id = "R-BEIL"
    citation = ("A positively and finitely graded ring generates injectives "
                "exactly when its upper-triangular pattern extension does.")

    def edges(self, env, h):
        out = []
        if env.prov(h).get("construction") == "beilinson":
            out.append(Edge("forward", [env.prov(h)["inputs"][0]],
                            [env.integrity_hyp(h)]))
        for other, _e in env.reg.derived_from(h, "beilinson"):
            out.append(Edge("backward", [other], [env.integrity_hyp(other)]))
        return out


def _bimodule_hyps(env, R, W):
    return [
        _nil_hyp("bimodule-nilpotent",
                 nilpotency_index(W, cutoff=env.nil_cutoff)),
        _perfect_hyp("bimodule-left-perfect",
                     left_perfect_check(R, W, pd_cutoff=env.pd_cutoff,
                                        nil_cutoff=env.nil_cutoff)),
    ]


class TensorRingRule(Rule):
    rule_id = "R-TEN"
    citation = ("The tensor ring of a nilpotent left perfect bimodule "
                "generates injectives exactly when its base ring does.")
    constructions = ("tensor_ring",)

    def edges(self, env, h):
        out = []
        prov = env.prov(h)
        if prov.get("construction") in self.constructions:
            ins = prov["inputs"]
            hyps = [env.integrity_hyp(h)]
            if hyps[0]["status"] == "verified":
                hyps += _bimodule_hyps(env, env.obj(ins[0]), env.obj(ins[1]))
            out.append(Edge("forward", [ins[0]], hyps))
        for cname in self.constructions:
            for other, e in env.reg.derived_from(h, cname):
                ins = (e.get("provenance") or {})["inputs"]
                if h != ins[0]:
                    continue
                hyps = [env.integrity_hyp(other)]
                if hyps[0]["status"] == "verified":
                    hyps += _bimodule_hyps(env, env.obj(ins[0]),
                                           env.obj(ins[1]))
                out.append(Edge("backward", [other], hyps))
        return out


class ThetaRule(TensorRingRule):
    rule_id = "R-THETA"
    citation = ("An extension along an associative pairing on a nilpotent "
                "left perfect bimodule generates injectives exactly when "
                "the base ring does.")
    constructions = ("theta_extension", "trivial_extension")


class PositivelyGradedRule(Rule):
    rule_id = "R-POSGR"
    citation = ("A ring graded in a positive window with every positive "
                "component nilpotent and left perfect over the degree-zero "
                "subring generates injectives exactly when that subring "
                "does.")

    @staticmethod
    def _window(A):
        """Positive degrees if the grading sits in the lower half of a
        cyclic 2-power group with nothing in the upper half."""
        fs = A.group.factors
        if len(fs) != 1:
            return None
        m = fs[0]
        if m < 2 or m & (m - 1):
            return None
        half = m // 2
        present = sorted({d[0] for d in A.degree})
        if any(d >= half for d in present):
            return None
        pos = [d for d in present if d > 0]
        return pos if pos else None

    def _hyps(self, env, A):
        pos = self._window(A)
        if pos is None:
            return None
        A0 = degree_zero_subalgebra(A)
        hyps = [_hyp("positive-window", "verified",
                     {"positive_degrees": pos,
                      "group_order": A.group.factors[0]})]
        for d in pos:
            W = component_bimodule(A, (d,), A0)
            hyps.append(_nil_hyp(f"component-nilpotent[{d}]",
                                 nilpotency_index(W, cutoff=env.nil_cutoff)))
            hyps.append(_perfect_hyp(
                f"component-left-perfect[{d}]",
                left_perfect_check(A0, W, pd_cutoff=env.pd_cutoff,
                                   nil_cutoff=env.nil_cutoff)))
        return hyps

    def edges(self, env, h):
        out = []
        A = env.obj(h)
        if self._window(A) is not None:
            hyps = self._hyps(env, A)
            out.append(Edge("forward", [env.deg0_of(h)], hyps))
        prov = env.prov(h)
        if prov.get("construction") == "degree_zero_subalgebra":
            parent = prov["inputs"][0]
            P = env.obj(parent)
            hyps = self._hyps(env, P)
            if hyps is not None:
                out.append(Edge("backward", [parent],
                                [env.integrity_hyp(h)] + hyps))
        return out


class TwistedTensorRule(Rule):
    rule_id = "R-TWIST"
    citation = ("A twisted tensor product of two finite dimensional graded "
                "algebras generates injectives when both factors do.")

    def edges(self, env, h):
        prov = env.prov(h)
        if prov.get("construction") != "twisted_tensor":
            return []
        ins = prov["inputs"]
        return [Edge("forward", [ins[0], ins[1]], [env.integrity_hyp(h)])]


class CommutativeBase(Rule):
    rule_id = "BASE-COMM"
    citation = ("Finite dimensional commutative algebras are commutative "
                "noetherian rings, for which injectives generate.")

    def edges(self, env, h):
        A = env.obj(h)
        bad = None
        for i in range(A.dim):
            for j in range(i + 1, A.dim):
                if A.mult[i][j] != A.mult[j][i]:
                    bad = [A.labels[i], A.labels[j]]
                    break
            if bad:
                break
        status = "refuted" if bad else "verified"
        ev = {"witness": bad} if bad else {"pairs_checked": A.dim * A.dim}
        return [Edge("base", [], [_hyp("commutative", status, ev)])]


class SelfInjectiveBase(Rule):
    rule_id = "BASE-SELFINJ"
    citation = ("When the regular module is injective every projective is "
                "already injective, so injectives generate.")

    def edges(self, env, h):
        A = env.obj(h)
        rep = is_projective(dual(regular_module(A, "right")))
        status = "verified" if rep.projective else "refuted"
        return [Edge("base", [],
                     [_hyp("regular-module-injective", status,
                           {"dual_of_regular_projective": rep.projective})])]


class SemisimpleSampleBase(Rule):
    rule_id = "BASE-SS"
    citation = ("All modules over a semisimple ring are injective; random "
                "cyclic quotients being projective is heuristic evidence "
                "of semisimplicity, so this grade is capped.")

    SAMPLES_PER_DEGREE = 2

    def edges(self, env, h):
        A = env.obj(h)
        rng = random.Random(f"{env.seed}:{h}")
        R = regular_module(A, "right")
        vectors = [R.basis_vec(i) for i in range(A.dim)]
        by_degree = {}
        for i, d in enumerate(A.degree):
            by_degree.setdefault(d, []).append(i)
        for idxs in by_degree.values():
            for _ in range(self.SAMPLES_PER_DEGREE):
                v = A.zero_vec()
                for i in idxs:
                    v[i] = A.field.random(rng)
                vectors.append(v)
        checked = 0
        witness = None
        for v in vectors:
            if all(A.field.is_zero(c) for c in v):
                continue
            Q, _ = quotient_module(R, [v])
            checked += 1
            if not is_projective(Q).projective:
                witness = [A.field.enc(c) for c in v]
                break
        if witness is not None:
            hyp = _hyp("cyclic-quotients-projective", "refuted",
                       {"witness_generator": witness})
        else:
            hyp = _hyp("cyclic-quotients-projective", "verified",
                       {"samples": checked})
        return [Edge("base", [], [hyp], cap=CONDITIONAL)]


RULES = [CoveringRule(), StronglyGradedRule(), TriangularRule(), MoritaRule(),
         BeilinsonRule(), TensorRingRule(), ThetaRule(),
         PositivelyGradedRule(), TwistedTensorRule(), CommutativeBase(),
         SelfInjectiveBase(), SemisimpleSampleBase()]

RULES_BY_ID = {r.rule_id: r for r in RULES}


class DerivationTree:
    def __init__(self, claim, status, step=None):
        self.claim = claim
        self.status = status
        self.step = step

    def to_json(self):
        steps = []
        if self.step is not None:
            s = dict(self.step)
            s["premises"] = [t.to_json() for t in self.step["premises"]]
            steps.append(s)
        return {"claim": self.claim, "status": self.status, "steps": steps}


def emit_certificate(tree: DerivationTree) -> dict:
    return tree.to_json()


def _derive(env, h, depth, stack):
    claim = env.claim(h)
    if h in stack or depth < 0:
        return DerivationTree(claim, UNKNOWN)
    best = DerivationTree(claim, UNKNOWN)
    best_grade = 0
    for rule in RULES:
        for edge in rule.edges(env, h):
            if edge.refuted:
                continue
            cap = edge.grade_cap
            if cap <= best_grade:
                continue
            subtrees = [_derive(env, p, depth - 1, stack | {h})
                        for p in edge.premises]
            grade = cap
            for t in subtrees:
                grade = min(grade, _GRADE[t.status])
            if grade <= best_grade:
                continue
            status = next(s for s, g in _GRADE.items() if g == grade)
            step = {"rule": rule.rule_id, "citation": rule.citation,
                    "direction": edge.direction,
                    "hypotheses": edge.hypotheses, "premises": subtrees}
            best = DerivationTree(claim, status, step)
            best_grade = grade
            if best_grade == _GRADE[ESTABLISHED]:
                return best
    return best


def derive(reg, target, max_depth=6, pd_cutoff=DEFAULT_PD_CUTOFF,
           nil_cutoff=DEFAULT_NIL_CUTOFF, seed=17) -> DerivationTree:
    env = Env(reg, pd_cutoff=pd_cutoff, nil_cutoff=nil_cutoff, seed=seed)
    h = reg.resolve(target)
    if reg.entry(h).get("kind") != "algebra":
        raise ReductionError("claims are about algebras; got a "
                             + str(reg.entry(h).get("kind")))
    return _derive(env, h, max_depth, frozenset())


def _match_edge(edges, direction, premise_hashes):
    for e in edges:
        if e.direction == direction and e.premises == premise_hashes:
            return e
    return None


def _revalidate(env, node, problems, path):
    claim = node.get("claim", {})
    h = claim.get("hash")
    status = node.get("status")
    steps = node.get("steps", [])
    where = path or "root"
    if h is None or h not in env.reg:
        problems.append(f"{where}: claim hash missing from the store")
        return UNKNOWN
    if not steps:
        if status != UNKNOWN:
            problems.append(f"{where}: status {status} with no derivation step")
        return UNKNOWN
    step = steps[0]
    rule = RULES_BY_ID.get(step.get("rule"))
    if rule is None:
        problems.append(f"{where}: unknown rule {step.get('rule')!r}")
        return UNKNOWN
    if step.get("citation") != rule.citation:
        problems.append(f"{where}: citation does not match rule {rule.rule_id}")
        return UNKNOWN
    premise_nodes = step.get("premises", [])
    premise_hashes = [p.get("claim", {}).get("hash") for p in premise_nodes]
    edge = _match_edge(rule.edges(env, h), step.get("direction"),
                       premise_hashes)
    if edge is None:
        problems.append(f"{where}: rule {rule.rule_id} no longer yields this "
                        "edge")
        return UNKNOWN
    fresh = {hy["name"]: hy for hy in edge.hypotheses}
    for rec in step.get("hypotheses", []):
        f = fresh.get(rec.get("name"))
        if f is None:
            problems.append(f"{where}: hypothesis {rec.get('name')!r} not "
                            "reproducible")
            return UNKNOWN
        if _HYP_GRADE[f["status"]] < _HYP_GRADE.get(rec.get("status"), 2):
            problems.append(
                f"{where}: hypothesis {rec['name']!r} degraded from "
                f"{rec.get('status')} to {f['status']}")
    if edge.refuted:
        problems.append(f"{where}: an edge hypothesis is now refuted")
        return UNKNOWN
    grade = edge.grade_cap
    for i, p in enumerate(premise_nodes):
        sub = _revalidate(env, p, problems, f"{where}.{i}")
        grade = min(grade, _GRADE[sub])
    recomputed = next(s for s, g in _GRADE.items() if g == grade)
    if grade < _GRADE.get(status, 0):
        problems.append(f"{where}: recorded status {status} but recomputed "
                        f"{recomputed}")
    return recomputed


def validate_cert(cert: dict, reg, pd_cutoff=DEFAULT_PD_CUTOFF,
                  nil_cutoff=DEFAULT_NIL_CUTOFF, seed=17):
    """Replay every step of a certificate against the store.

    Returns (ok, recomputed_status, problems).  ok means the recorded
    status is supported by freshly recomputed hypotheses and premises.
    """
    env = Env(reg, pd_cutoff=pd_cutoff, nil_cutoff=nil_cutoff, seed=seed)
    problems = []
    recomputed = _revalidate(env, cert, problems, "")
    return (not problems, recomputed, problems)
