"""Command line front end.

Objects live in a content-addressed store; commands accept a label, a
full hash, a unique hash prefix, or a path to a JSON document (which is
registered on the spot).  Exit codes: 0 success, 1 mathematical failure
or refutation, 2 malformed input, 3 inconclusive outcome under --strict.
"""

from __future__ import annotations

import json
import pathlib
import sys

import click

from .algebra import (AlgebraError, ConstructionError, GradedAlgebra,
                      GradedBimodule, GradedModule, check_algebra_axioms,
                      check_bimodule_axioms, check_module_axioms,
                      degree_zero_subalgebra)
from .bundled import load_corpus
from .constructions import (Bicharacter, covering_module,
                            covering_module_inverse, covering_ring,
                            morita_ring, split_covering, tensor_ring,
                            theta_extension, trivial_extension, twisted_tensor)
from .field import FieldError, field_from_spec
from .homology import (left_perfect_check, nilpotency_index,
                       projective_dimension, tor)
from .quiver import path_algebra_from_json
from .registry import Registry, RegistryError
from .reduction import (CONDITIONAL, ESTABLISHED, UNKNOWN, ReductionError,
                        derive, emit_certificate, validate_cert)
from .serialize import (SerializeError, content_hash, from_json,
                        matrix_from_json, matrix_to_json, object_kind,
                        provenance_record, to_json)
from .verify import check_names, run_suite

EXIT_MATH = 1
EXIT_INPUT = 2
EXIT_INCONCLUSIVE = 3


class Options:
    def __init__(self, store, pd_cutoff, nil_cutoff, seed, strict, field):
        self.store = store
        self.pd_cutoff = pd_cutoff
        self.nil_cutoff = nil_cutoff
        self.seed = seed
        self.strict = strict
        self.field = field
        self._reg = None

    @property
    def reg(self):
        if self._reg is None:
            self._reg = Registry(self.store)
        return self._reg


def _fail(code, msg):
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


def _load_ref(opts, ref):
    """Resolve a store reference or register a JSON file; returns hash."""
    p = pathlib.Path(ref)
    if p.suffix == ".json" or p.exists():
        try:
            doc = json.loads(p.read_text())
        except OSError as e:
            _fail(EXIT_INPUT, f"cannot read {ref}: {e}")
        except ValueError as e:
            _fail(EXIT_INPUT, f"{ref} is not JSON: {e}")
        try:
            from_json(doc)  # shape check before it enters the store
            return opts.reg.store(doc, label=p.stem)
        except SerializeError as e:
            _fail(EXIT_INPUT, str(e))
    try:
        return opts.reg.resolve(ref)
    except RegistryError as e:
        _fail(EXIT_INPUT, str(e))


def _obj(opts, ref):
    return opts.reg.load(_load_ref(opts, ref))


def _emit(doc, out):
    text = json.dumps(doc, indent=1, sort_keys=True)
    if out:
        pathlib.Path(out).write_text(text + "\n")
    else:
        click.echo(text)


def _register(opts, obj, label, provenance=None, out=None):
    h = opts.reg.store_object(obj, label=label, provenance=provenance)
    click.echo(f"{h}  {label or ''}".rstrip())
    if out:
        _emit(opts.reg.load_doc(h), out)
    return h


@click.group()
@click.option("--store", default=".injgen-store", show_default=True,
              envvar="INJGEN_STORE", help="object store directory")
@click.option("--pd-cutoff", default=24, show_default=True)
@click.option("--nil-cutoff", default=16, show_default=True)
@click.option("--seed", default=17, show_default=True)
@click.option("--strict", is_flag=True,
              help="exit 3 when the outcome is only inconclusive")
@click.option("--field", default=None, metavar="fp:<p>|q",
              help="field for constructions that need one")
@click.pass_context
def main(ctx, store, pd_cutoff, nil_cutoff, seed, strict, field):
    f = None
    if field is not None:
        try:
            f = field_from_spec(field)
        except FieldError as e:
            _fail(EXIT_INPUT, str(e))
    ctx.obj = Options(store, pd_cutoff, nil_cutoff, seed, strict, f)


@main.command()
@click.argument("path")
@click.pass_obj
def check(opts, path):
    """Validate the axioms of the object in a JSON document."""
    try:
        doc = json.loads(pathlib.Path(path).read_text())
        kind = object_kind(doc)
        obj = from_json(doc)
    except (OSError, ValueError) as e:
        _fail(EXIT_INPUT, f"cannot parse {path}: {e}")
    except SerializeError as e:
        _fail(EXIT_INPUT, str(e))
    checker = {"algebra": check_algebra_axioms, "module": check_module_axioms,
               "bimodule": check_bimodule_axioms}[kind]
    rep = checker(obj)
    click.echo(json.dumps({"kind": kind, "hash": content_hash(doc),
                           **rep.to_json()}, indent=1))
    if not rep.passed:
        sys.exit(EXIT_MATH)


@main.group()
def build():
    """Run a construction and register the result."""


def _construct(fn):
    """Map construction failures to the mathematical-failure exit code."""
    try:
        return fn()
    except (ConstructionError, AlgebraError) as e:
        _fail(EXIT_MATH, str(e))
    except SerializeError as e:
        _fail(EXIT_INPUT, str(e))


@build.command()
@click.argument("ring")
@click.option("--label", default=None)
@click.option("--out", default=None)
@click.pass_obj
def covering(opts, ring, label, out):
    """Covering ring of a graded algebra."""
    h = _load_ref(opts, ring)
    cov = _construct(lambda: covering_ring(opts.reg.load(h)))
    _register(opts, cov.algebra, label or opts.reg.label_of(h) + ":cover",
              provenance_record("covering_ring", [h]), out)


def _covering_of(opts, ref):
    h = _load_ref(opts, ref)
    prov = opts.reg.entry(h).get("provenance") or {}
    if prov.get("construction") != "covering_ring":
        _fail(EXIT_INPUT, "reference is not a registered covering ring")
    cov = _construct(lambda: covering_ring(opts.reg.load(prov["inputs"][0])))
    if content_hash(to_json(cov.algebra)) != h:
        _fail(EXIT_MATH, "stored covering does not match its base ring")
    return h, cov


@build.command("module-cover")
@click.argument("module")
@click.argument("cover")
@click.option("--label", default=None)
@click.option("--out", default=None)
@click.pass_obj
def module_cover(opts, module, cover, label, out):
    """View a graded module over the covering ring."""
    hm = _load_ref(opts, module)
    hc, cov = _covering_of(opts, cover)
    V = _construct(lambda: covering_module(opts.reg.load(hm), cov))
    _register(opts, V, label or opts.reg.label_of(hm) + ":covered",
              provenance_record("covering_module", [hm, hc]), out)


@build.command("module-uncover")
@click.argument("module")
@click.argument("cover")
@click.option("--label", default=None)
@click.option("--out", default=None)
@click.pass_obj
def module_uncover(opts, module, cover, label, out):
    """Recover the graded module from a covering-ring module."""
    hm = _load_ref(opts, module)
    hc, cov = _covering_of(opts, cover)
    M = _construct(lambda: covering_module_inverse(opts.reg.load(hm), cov))
    _register(opts, M, label or opts.reg.label_of(hm) + ":uncovered",
              provenance_record("covering_module_inverse", [hm, hc]), out)


def _matrix_opt(opts, field, spec, nrows, ncols):
    if spec is None or spec == "zero":
        return None
    try:
        rows = json.loads(pathlib.Path(spec).read_text()
                          if pathlib.Path(spec).exists() else spec)
        mat = matrix_from_json(field, rows, ncols)
    except (ValueError, OSError, SerializeError) as e:
        _fail(EXIT_INPUT, f"bad matrix: {e}")
    if mat.nrows != nrows:
        _fail(EXIT_INPUT, f"matrix needs {nrows} rows, got {mat.nrows}")
    return mat


@build.command()
@click.argument("a")
@click.argument("b")
@click.argument("n")
@click.argument("m")
@click.option("--phi", default=None, help="matrix JSON (file or inline) or 'zero'")
@click.option("--psi", default=None, help="matrix JSON (file or inline) or 'zero'")
@click.option("--label", default=None)
@click.option("--out", default=None)
@click.pass_obj
def morita(opts, a, b, n, m, phi, psi, label, out):
    """Context ring of two corners and two glueing bimodules."""
    ha, hb = _load_ref(opts, a), _load_ref(opts, b)
    hn, hm = _load_ref(opts, n), _load_ref(opts, m)
    A, B = opts.reg.load(ha), opts.reg.load(hb)
    N, M = opts.reg.load(hn), opts.reg.load(hm)
    pm = _matrix_opt(opts, A.field, phi, B.dim, M.dim * N.dim)
    sm = _matrix_opt(opts, A.field, psi, A.dim, N.dim * M.dim)
    ctx = _construct(lambda: morita_ring(A, B, N, M, pm, sm))
    params = {"zero_context": ctx.is_zero_context}
    if pm is not None and not pm.is_zero():
        params["phi"] = matrix_to_json(A.field, pm)
    if sm is not None and not sm.is_zero():
        params["psi"] = matrix_to_json(A.field, sm)
    _register(opts, ctx.assembled, label or "morita",
              provenance_record("morita_ring", [ha, hb, hn, hm], params), out)


@build.command()
@click.argument("cover")
@click.option("-k", "--split-index", default=None, type=int)
@click.option("--label", default=None)
@click.option("--out", default=None)
@click.pass_obj
def split(opts, cover, split_index, label, out):
    """Cut a covering ring into a Morita context and register the pieces."""
    hc, cov = _covering_of(opts, cover)
    ctx = _construct(lambda: split_covering(cov, split_index))
    stem = label or opts.reg.label_of(hc) + ":split"
    ha = opts.reg.store_object(ctx.A, label=stem + ":A")
    hb = opts.reg.store_object(ctx.B, label=stem + ":B")
    hn = opts.reg.store_object(ctx.N, label=stem + ":N")
    hm = opts.reg.store_object(ctx.M, label=stem + ":M")
    params = {"zero_context": ctx.is_zero_context}
    if not ctx.phi_raw.is_zero():
        params["phi"] = matrix_to_json(ctx.A.field, ctx.phi_raw)
    if not ctx.psi_raw.is_zero():
        params["psi"] = matrix_to_json(ctx.A.field, ctx.psi_raw)
    for piece, h in (("A", ha), ("B", hb), ("N", hn), ("M", hm)):
        click.echo(f"{h}  {stem}:{piece}")
    _register(opts, ctx.assembled, stem,
              provenance_record("morita_ring", [ha, hb, hn, hm], params), out)


@build.command("tensor-ring")
@click.argument("ring")
@click.argument("bimodule")
@click.option("-k", "--index", required=True, type=int,
              help="verified nilpotency index of the bimodule")
@click.option("--label", default=None)
@click.option("--out", default=None)
@click.pass_obj
def tensor_ring_cmd(opts, ring, bimodule, index, label, out):
    """Tensor ring of a nilpotent bimodule."""
    hr, hw = _load_ref(opts, ring), _load_ref(opts, bimodule)
    trd = _construct(lambda: tensor_ring(opts.reg.load(hr),
                                         opts.reg.load(hw), index))
    _register(opts, trd.algebra, label or "tensor-ring",
              provenance_record("tensor_ring", [hr, hw],
                                {"nilpotency_index": index}), out)


@build.command()
@click.argument("ring")
@click.argument("bimodule")
@click.option("--theta", default="zero",
              help="matrix JSON (file or inline) or 'zero'")
@click.option("--label", default=None)
@click.option("--out", default=None)
@click.pass_obj
def theta(opts, ring, bimodule, theta, label, out):
    """Extension of a ring by a bimodule along a pairing."""
    hr, hw = _load_ref(opts, ring), _load_ref(opts, bimodule)
    R, W = opts.reg.load(hr), opts.reg.load(hw)
    tm = _matrix_opt(opts, R.field, theta, W.dim, W.dim * W.dim)
    td = _construct(lambda: theta_extension(R, W, tm))
    params = None
    if tm is not None and not tm.is_zero():
        params = {"theta": matrix_to_json(R.field, tm)}
    _register(opts, td.algebra, label or "theta-ext",
              provenance_record("theta_extension", [hr, hw], params), out)


@build.command("trivial-ext")
@click.argument("ring")
@click.argument("bimodule")
@click.option("--label", default=None)
@click.option("--out", default=None)
@click.pass_obj
def trivial_ext(opts, ring, bimodule, label, out):
    """Square-zero extension of a ring by a bimodule."""
    hr, hw = _load_ref(opts, ring), _load_ref(opts, bimodule)
    td = _construct(lambda: trivial_extension(opts.reg.load(hr),
                                              opts.reg.load(hw)))
    _register(opts, td.algebra, label or "trivial-ext",
              provenance_record("trivial_extension", [hr, hw]), out)


@build.command()
@click.argument("a")
@click.argument("b")
@click.option("--t", "tvals", default="one",
              help="generator value matrix as JSON, or 'one'")
@click.option("--label", default=None)
@click.option("--out", default=None)
@click.pass_obj
def twisted(opts, a, b, tvals, label, out):
    """Twisted tensor product along a bicharacter."""
    ha, hb = _load_ref(opts, a), _load_ref(opts, b)
    A, B = opts.reg.load(ha), opts.reg.load(hb)

    def mk():
        if tvals == "one":
            t = Bicharacter.trivial(A.field, A.group, B.group)
        else:
            vals = json.loads(tvals)
            t = Bicharacter(A.field, A.group, B.group,
                            [[A.field.dec(v) for v in row] for row in vals])
        return t, twisted_tensor(A, B, t)

    t, alg = _construct(mk)
    _register(opts, alg, label or "twisted",
              provenance_record("twisted_tensor", [ha, hb],
                                {"t": t.to_json()}), out)


@build.command("beilinson")
@click.argument("ring")
@click.option("--level", required=True, type=int)
@click.option("--label", default=None)
@click.option("--out", default=None)
@click.pass_obj
def beilinson_cmd(opts, ring, level, label, out):
    """Pattern extension of a positively, finitely graded algebra."""
    from .constructions import beilinson
    h = _load_ref(opts, ring)

    def mk():
        bd = beilinson(opts.reg.load(h), level)
        return trivial_extension(bd.algebra, bd.bim).algebra

    alg = _construct(mk)
    _register(opts, alg, label or opts.reg.label_of(h) + ":pattern",
              provenance_record("beilinson", [h], {"level": level}), out)


@build.command("path-algebra")
@click.argument("path")
@click.option("--label", default=None)
@click.option("--out", default=None)
@click.pass_obj
def path_algebra_cmd(opts, path, label, out):
    """Path algebra of an acyclic quiver described in a JSON file."""
    try:
        doc = json.loads(pathlib.Path(path).read_text())
    except (OSError, ValueError) as e:
        _fail(EXIT_INPUT, f"cannot parse {path}: {e}")
    data = _construct(lambda: path_algebra_from_json(doc, field=opts.field))
    _register(opts, data.algebra, label or pathlib.Path(path).stem, None, out)


@build.command()
@click.argument("ring")
@click.option("--label", default=None)
@click.option("--out", default=None)
@click.pass_obj
def deg0(opts, ring, label, out):
    """Degree-zero subalgebra of a graded algebra."""
    h = _load_ref(opts, ring)
    sub = _construct(lambda: degree_zero_subalgebra(opts.reg.load(h)))
    _register(opts, sub, label or opts.reg.label_of(h) + ":deg0",
              provenance_record("degree_zero_subalgebra", [h]), out)


def _as_module(opts, ref, side):
    obj = _obj(opts, ref)
    if isinstance(obj, GradedBimodule):
        obj = obj.as_left_module() if side == "left" else obj.as_right_module()
    elif isinstance(obj, GradedAlgebra):
        _fail(EXIT_INPUT, "expected a module or bimodule reference")
    elif side and obj.side != side:
        _fail(EXIT_INPUT, f"module is {obj.side}-sided, not {side}")
    return obj


@main.command()
@click.argument("module")
@click.option("--side", default=None, type=click.Choice(["left", "right"]))
@click.pass_obj
def pd(opts, module, side):
    """Projective dimension of a stored module."""
    M = _as_module(opts, module, side)
    v = projective_dimension(M, cutoff=opts.pd_cutoff)
    click.echo(json.dumps({"pd": v.to_json()}))
    if not v.is_conclusive and opts.strict:
        sys.exit(EXIT_INCONCLUSIVE)


@main.command("tor")
@click.argument("x")
@click.argument("y")
@click.option("--imax", default=4, show_default=True)
@click.pass_obj
def tor_cmd(opts, x, y, imax):
    """Torsion pairing dimensions of a right and a left module."""
    X = _as_module(opts, x, "right")
    Y = _as_module(opts, y, "left")
    try:
        dims = tor(X, Y, imax)
    except (AlgebraError, ConstructionError) as e:
        _fail(EXIT_INPUT, str(e))
    click.echo(json.dumps({"tor": dims}))


@main.command()
@click.argument("bimodule")
@click.pass_obj
def nilpotency(opts, bimodule):
    """Nilpotency index of a stored bimodule."""
    W = _obj(opts, bimodule)
    if not isinstance(W, GradedBimodule):
        _fail(EXIT_INPUT, "expected a bimodule reference")
    v = nilpotency_index(W, cutoff=opts.nil_cutoff)
    click.echo(json.dumps({"nilpotency": v.to_json()}))
    if not v.is_conclusive and opts.strict:
        sys.exit(EXIT_INCONCLUSIVE)


@main.command()
@click.argument("bimodule")
@click.pass_obj
def perfect(opts, bimodule):
    """Left perfectness report of a stored bimodule."""
    W = _obj(opts, bimodule)
    if not isinstance(W, GradedBimodule):
        _fail(EXIT_INPUT, "expected a bimodule reference")
    if W.left_algebra != W.right_algebra:
        _fail(EXIT_INPUT, "perfectness needs one ring on both sides")
    rep = left_perfect_check(W.left_algebra, W, pd_cutoff=opts.pd_cutoff,
                             nil_cutoff=opts.nil_cutoff)
    click.echo(json.dumps(rep.to_json(), indent=1))
    if rep.verdict == "NotLeftPerfect":
        sys.exit(EXIT_MATH)
    if rep.verdict == "Inconclusive" and opts.strict:
        sys.exit(EXIT_INCONCLUSIVE)


@main.command("derive")
@click.argument("target")
@click.option("--depth", default=6, show_default=True)
@click.option("--out", default=None, help="write the certificate here")
@click.pass_obj
def derive_cmd(opts, target, depth, out):
    """Derive the injective-generation property for a stored algebra."""
    try:
        tree = derive(opts.reg, target, max_depth=depth,
                      pd_cutoff=opts.pd_cutoff, nil_cutoff=opts.nil_cutoff,
                      seed=opts.seed)
    except (RegistryError, ReductionError) as e:
        _fail(EXIT_INPUT, str(e))
    cert = emit_certificate(tree)
    _emit(cert, out)
    if out:
        click.echo(f"{tree.status}  {tree.claim['label']}")
    if tree.status != ESTABLISHED and opts.strict:
        sys.exit(EXIT_INCONCLUSIVE)


@main.command("validate-cert")
@click.argument("path")
@click.pass_obj
def validate_cert_cmd(opts, path):
    """Recheck every step of a stored certificate."""
    try:
        cert = json.loads(pathlib.Path(path).read_text())
    except (OSError, ValueError) as e:
        _fail(EXIT_INPUT, f"cannot parse {path}: {e}")
    ok, status, problems = validate_cert(cert, opts.reg,
                                         pd_cutoff=opts.pd_cutoff,
                                         nil_cutoff=opts.nil_cutoff,
                                         seed=opts.seed)
    click.echo(json.dumps({"valid": ok, "recomputed_status": status,
                           "problems": problems}, indent=1))
    if not ok:
        sys.exit(EXIT_MATH)


@main.command("verify-theorems")
@click.option("--only", multiple=True,
              help="run only the named checks (repeatable)")
@click.option("--out", default=None, help="write the full report here")
@click.pass_obj
def verify_theorems(opts, only, out):
    """Run the structural identity suite on the bundled corpus."""
    try:
        reports = run_suite(only=list(only) or None, seed=opts.seed)
    except ValueError as e:
        _fail(EXIT_INPUT, f"{e}; available: {', '.join(check_names())}")
    failed = 0
    for rep in reports:
        word = {True: "pass", False: "FAIL", None: "inconclusive"}[rep.ok]
        click.echo(f"{rep.name:20s} {word}")
        if rep.ok is not True:
            failed += 1
    if out:
        _emit([r.to_json() for r in reports], out)
    if failed:
        sys.exit(EXIT_MATH)


@main.command("corpus-load")
@click.pass_obj
def corpus_load(opts):
    """Register the bundled example corpus in the store."""
    for label, h in load_corpus(opts.reg).items():
        click.echo(f"{h}  {label}")


if __name__ == "__main__":
    main()
