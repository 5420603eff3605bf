"""Command-line front end.

Every command prints one JSON report ``{check, input, verdict, mode, ...}``
and exits 0 if the verification passed, 1 if it failed, 2 on malformed input
or usage, 3 when a degree/box cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import braidings, catalog
from .ncalg import (PresentationError, ResourceError, is_central, parse_nc, present,
                    reduce)
from .scalars import GenericityError, ParseError, check_generic, emit
from .symmetrizers import NotEven, build_tower, detect_even, poincare_dims
from .tensorspace import TensorOperator, load_matrix, partial_trace, specialize_op

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3

PROOF_COMMANDS = {"reduce", "central", "qdet", "cayley-hamilton", "yangian", "present", "detect-even",
                  "symmetrizers", "skew-inverse"}


class UsageError(ValueError):
    pass


@dataclass
class JobConfig:
    command: str
    inputs: dict = field(default_factory=dict)
    q_mode: str = "symbolic"
    q0: Fraction | None = None
    screen_only: bool = False
    degree_cap: int = 8
    truncation: int = 1
    fmt: str = "json"
    options: dict = field(default_factory=dict)
    out: str | None = None

    def validate(self) -> None:
        if self.q_mode == "numeric":
            if not self.screen_only:
                raise UsageError("numeric q-mode gives screen-grade results only; pass --screen-only")
            if self.command in PROOF_COMMANDS:
                raise UsageError(f"{self.command} is proof-only and has no numeric screen")


# ---------------------------------------------------------------------------
# inputs

def load_operator(source: str) -> TensorOperator:
    """A bundled name (flip, involutive_gl2, hecke_gl2) or a JSON matrix path."""
    if source in catalog.NAMED:
        return catalog.NAMED[source]()
    p = Path(source)
    if not p.exists():
        raise UsageError(f"no such matrix file or bundled name: {source}")
    try:
        return load_matrix(p)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON ({exc.msg})", source, exc.pos) from None


def resolve_F(source: str, R: TensorOperator) -> TensorOperator:
    if source == "rtt":
        return TensorOperator.flip(R.dim)
    if source == "re":
        return R
    return load_operator(source)


def _prep(cfg: JobConfig, op: TensorOperator) -> TensorOperator:
    if cfg.q_mode == "numeric":
        return specialize_op(op, cfg.q0)
    return op


def _dense(op: TensorOperator):
    return [[emit(x) for x in r] for r in op.to_dense()]


def _pres(cfg: JobConfig):
    R = _prep(cfg, load_operator(cfg.inputs["R"]))
    F = _prep(cfg, resolve_F(cfg.inputs.get("F", "rtt"), R))
    pres = present(R, F, cfg.options.get("system", "QMA"), degree_cap=cfg.degree_cap)
    return R, F, pres


def _input_label(cfg: JobConfig) -> dict:
    return dict(sorted(cfg.inputs.items()))


# ---------------------------------------------------------------------------
# commands

def cmd_check_braiding(cfg):
    op = _prep(cfg, load_operator(cfg.inputs["input"]))
    w = braidings.braid_witness(op)
    rep = {"braiding": w is None}
    if w is None:
        rep["kind"] = braidings.classify(op, with_skew=False).kind
        return True, rep, None
    return False, rep, {"entry": str(w)}


def cmd_classify(cfg):
    op = _prep(cfg, load_operator(cfg.inputs["input"]))
    prof = braidings.classify(op, with_skew=True)
    rep = {"kind": prof.kind, "skew_invertible": prof.skew_invertible,
           "hecke_parameter": None if prof.hecke_parameter is None else emit(prof.hecke_parameter)}
    if prof.c_matrix is not None:
        rep["C"] = _dense(prof.c_matrix)
    return prof.is_symmetry, rep, None


def cmd_check_compat(cfg):
    R = _prep(cfg, load_operator(cfg.inputs["R"]))
    F = _prep(cfg, resolve_F(cfg.inputs["F"], R))
    w = braidings.compatibility_witness(R, F)
    rep = {"compatible": w is None}
    return w is None, rep, None if w is None else {"relation": w[0], "entry": str(w[1])}


def cmd_skew_inverse(cfg):
    op = load_operator(cfg.inputs["input"])
    try:
        psi = braidings.solve_skew_inverse(op)
    except braidings.NotSkewInvertible as exc:
        return False, {"skew_invertible": False}, {"reason": str(exc)}
    C = partial_trace(psi, [2])
    ok = braidings.check_trace_identities(op, C)
    return ok, {"skew_invertible": True, "psi": _dense(psi), "C": _dense(C), "trace_identities": ok}, None


def cmd_baxterize_check(cfg):
    R = load_operator(cfg.inputs["input"])
    prof = braidings.classify(R, with_skew=False)
    flavor = cfg.options.get("flavor") or {"involutive": "rational", "hecke": "trigonometric"}.get(prof.kind)
    if flavor is None:
        raise UsageError("Baxterization needs an involutive or Hecke symmetry")
    cb = braidings.baxterize(R, flavor, prof)
    if cfg.q_mode == "numeric":
        ok = cb.screen(samples=20, seed=0, q0=cfg.q0)
        return ok, {"flavor": flavor, "screen_samples": 20}, None
    ok = cb.check_braid_symbolic()
    return ok, {"flavor": flavor, "parametric_braid": ok}, None


def cmd_symmetrizers(cfg):
    R = load_operator(cfg.inputs["input"])
    k = cfg.options.get("k_max") or R.dim + 2
    rep = {}
    for kind in ("symmetric", "skew"):
        rep[kind] = poincare_dims(build_tower(R, kind, k))
    return True, rep, None


def cmd_detect_even(cfg):
    R = load_operator(cfg.inputs["input"])
    k = cfg.options.get("k_max") or R.dim + 2
    tower = build_tower(R, "skew", k)
    try:
        cert = detect_even(tower)
    except NotEven as exc:
        return False, {"even": False, "dims": exc.profile}, {"reason": str(exc)}
    return True, {"even": True, "m": cert.m, "dims": cert.dims,
                  "u": [emit(x) for x in cert.u], "v": [emit(x) for x in cert.v]}, None


def cmd_present(cfg):
    _, _, pres = _pres(cfg)
    return True, {"presentation": pres.to_json()}, None


def cmd_reduce(cfg):
    _, _, pres = _pres(cfg)
    x = parse_nc(cfg.options["expr"], pres.alphabet)
    r = reduce(x, pres)
    rep = {"expr": pres.name(x), "reduces_to_zero": r.zero}
    return r.zero, rep, None if r.zero else {"residual": pres.name(r.residual)}


def cmd_central(cfg):
    _, _, pres = _pres(cfg)
    x = parse_nc(cfg.options["expr"], pres.alphabet)
    v = is_central(x, pres)
    rep = {"expr": pres.name(x), "central": v.central}
    return v.central, rep, None if v.central else {"generator": v.witness, "residual": pres.name(v.residual)}


def cmd_qdet(cfg):
    from .qdet import context, quantum_det

    R, F, pres = _pres(cfg)
    ctx = context(R, F, pres)
    forms = cfg.options.get("forms") or []
    rep = quantum_det(ctx, [parse_nc(f, pres.alphabet) for f in forms])
    body = rep.to_json(pres.alphabet)
    ok = all(p for _, p in rep.reduced_forms) and rep.e_m_factor_ok is not False
    witness = None if rep.central else {"generator": rep.central_witness}
    return ok, body, witness


def cmd_cayley_hamilton(cfg):
    from .qdet import cayley_hamilton, context

    R, F, pres = _pres(cfg)
    ctx = context(R, F, pres)
    kind = cfg.options.get("kind") or ("RE" if F == R else "general")
    rep = cayley_hamilton(ctx, kind)
    witness = None
    if not rep.ok:
        witness = {f"{i},{j}": pres.name(r) for (i, j), r in sorted(rep.residuals.items())}
    return rep.ok, {"kind": kind, "identity_holds": rep.ok}, witness


def cmd_yangian(cfg):
    from .qdet import context
    from .yangians import (bethe_commutativity, current_elementary, specialized_ratio_check,
                           yangian_relations)

    R = load_operator(cfg.inputs["R"])
    F = resolve_F(cfg.inputs.get("F", "re"), R)
    K = cfg.truncation
    pairs = cfg.options.get("pairs", "box")
    mode_cap = cfg.options.get("mode_cap") or (2 * K if pairs == "box" else K)
    Y = yangian_relations(R, F, cfg.options.get("flavor"), mode_cap, cfg.options.get("re_type"),
                          degree_cap=cfg.degree_cap)
    ctx = context(R, F)
    es = [current_elementary(Y, ctx.tower, ctx.C_F, k, K) for k in range(1, ctx.m + 1)]
    bethe = {}
    witness = None
    for j, a in enumerate(es, 1):
        for k, b in enumerate(es, 1):
            v = bethe_commutativity(Y, a, b, pairs)
            bethe[f"e{j},e{k}"] = v.ok
            if not v.ok and witness is None:
                witness = {"pair": f"e{j},e{k}", "orders": list(v.witness[:2]),
                           "residual": Y.pres.name(v.witness[2])}
    S = build_tower(R, "symmetric", 2).level(2)
    ratio = specialized_ratio_check(Y, K, S, ctx.tower.level(2))
    rep = {"flavor": Y.flavor, "truncation": K, "mode_cap": mode_cap, "re_type": Y.alphabet.re_type,
           "pairs": pairs, "relations": len(Y.pres.relations), "bethe": bethe,
           "specialized_ratio": ratio.orders}
    return all(bethe.values()) and ratio.ok, rep, witness


def cmd_corpus(cfg):
    summary = run_corpus(cfg.options.get("dir"))
    return summary["ok"], summary, None if summary["ok"] else {"failed": summary["failed"]}


COMMANDS = {
    "check-braiding": cmd_check_braiding,
    "classify": cmd_classify,
    "check-compat": cmd_check_compat,
    "skew-inverse": cmd_skew_inverse,
    "baxterize-check": cmd_baxterize_check,
    "symmetrizers": cmd_symmetrizers,
    "detect-even": cmd_detect_even,
    "present": cmd_present,
    "reduce": cmd_reduce,
    "central": cmd_central,
    "qdet": cmd_qdet,
    "cayley-hamilton": cmd_cayley_hamilton,
    "yangian": cmd_yangian,
    "corpus": cmd_corpus,
}


def run(cfg: JobConfig) -> tuple[int, dict]:
    report = {"check": cfg.command, "input": _input_label(cfg), "mode": cfg.q_mode}
    try:
        cfg.validate()
        ok, body, witness = COMMANDS[cfg.command](cfg)
    except (UsageError, ParseError, GenericityError) as exc:
        report.update(verdict="error", error=str(exc))
        return EXIT_INPUT, report
    except (ValueError, KeyError, PresentationError, NotEven) as exc:
        report.update(verdict="error", error=f"{type(exc).__name__}: {exc}")
        return EXIT_INPUT, report
    except ResourceError as exc:
        report.update(verdict="resource-cap", error=str(exc))
        return EXIT_RESOURCE, report
    report.update(body)
    report["verdict"] = bool(ok)
    if witness is not None:
        report["witness"] = witness
    return (EXIT_PASS if ok else EXIT_FAIL), report


def canonical(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def render_text(report: dict) -> str:
    lines = [f"{report['check']}: {report.get('verdict')} ({report['mode']})"]
    for k, v in sorted(report.items()):
        if k not in ("check", "verdict", "mode"):
            lines.append(f"  {k}: {json.dumps(v, sort_keys=True)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# regression corpus

def corpus_dir() -> Path:
    return Path(str(resources.files("qmatkit") / "corpus"))


def run_fixture(fx: dict) -> str:
    cfg = parse_args(fx["argv"])
    _, rep = run(cfg)
    return canonical(rep)


def run_corpus(directory=None) -> dict:
    d = Path(directory) if directory else corpus_dir()
    fixtures = sorted((d / "fixtures").glob("*.json")) if (d / "fixtures").is_dir() else []
    if not fixtures:
        raise UsageError(f"no fixtures found under {d}")
    failed, passed = [], []
    for path in fixtures:
        fx = json.loads(path.read_text())
        expected = d / "expected" / f"{fx['id']}.json"
        got = run_fixture(fx)
        if expected.exists() and expected.read_text() == got:
            passed.append(fx["id"])
        else:
            failed.append(fx["id"])
    return {"ok": not failed, "passed": len(passed), "failed": failed}


# ---------------------------------------------------------------------------
# argument parsing

def _q_mode(text: str):
    if text == "symbolic":
        return "symbolic", None
    if text.startswith("numeric:"):
        q0 = check_generic(Fraction(text.split(":", 1)[1]))
        return "numeric", q0
    raise argparse.ArgumentTypeError(f"bad --q-mode {text!r}; use symbolic or numeric:<q0>")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q-mode", default="symbolic")
    common.add_argument("--screen-only", action="store_true")
    common.add_argument("--degree-cap", type=int, default=8)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--out")

    p = argparse.ArgumentParser(prog="qmatkit", description="exact checks for quantum matrix algebras")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, *args):
        sp = sub.add_parser(name, parents=[common])
        for a in args:
            a(sp)
        return sp

    def inp(sp):
        sp.add_argument("--input", required=True, help="matrix JSON or bundled name")

    def pair(sp, default_F="rtt"):
        sp.add_argument("--R", required=True)
        sp.add_argument("--F", default=default_F, help="rtt (F=P), re (F=R) or a matrix")

    def system(sp):
        sp.add_argument("--system", choices=["QMA", "HQA", "HQA2"], default="QMA")

    def expr(sp):
        sp.add_argument("--expr", required=True)

    def kmax(sp):
        sp.add_argument("--k-max", type=int)

    add("check-braiding", inp)
    add("classify", inp)
    add("check-compat", lambda sp: pair(sp, None))
    add("skew-inverse", inp)
    add("baxterize-check", inp, lambda sp: sp.add_argument("--flavor", choices=["rational", "trigonometric"]))
    add("symmetrizers", inp, kmax)
    add("detect-even", inp, kmax)
    add("present", pair, system)
    add("reduce", pair, system, expr)
    add("central", pair, system, expr)
    add("qdet", pair, system, lambda sp: sp.add_argument("--form", action="append", dest="forms"))
    add("cayley-hamilton", pair, lambda sp: sp.add_argument("--kind", choices=["RE", "general"]))

    def yang(sp):
        sp.add_argument("--flavor", choices=["rational", "trigonometric"])
        sp.add_argument("--truncation", type=int, default=1)
        sp.add_argument("--mode-cap", type=int)
        sp.add_argument("--pairs", choices=["box", "triangle"], default="box")
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--re-type", dest="re_type", action="store_true", default=None)
        g.add_argument("--no-re-type", dest="re_type", action="store_false")

    add("yangian", lambda sp: pair(sp, "re"), yang)
    add("corpus", lambda sp: sp.add_argument("--dir"))
    return p


def parse_args(argv) -> JobConfig:
    ns = build_parser().parse_args(argv)
    mode, q0 = _q_mode(ns.q_mode)
    inputs = {k: getattr(ns, k) for k in ("input", "R", "F") if getattr(ns, k, None) is not None}
    opts = {}
    for k in ("system", "expr", "forms", "kind", "flavor", "pairs", "mode_cap", "re_type", "k_max", "dir"):
        if getattr(ns, k, None) is not None:
            opts[k] = getattr(ns, k)
    return JobConfig(ns.command, inputs, mode, q0, ns.screen_only, ns.degree_cap,
                     getattr(ns, "truncation", 1), ns.format, opts, ns.out)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
    except (GenericityError, ValueError, argparse.ArgumentTypeError) as exc:
        print(json.dumps({"verdict": "error", "error": str(exc)}), file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    code, report = run(cfg)
    text = canonical(report) if cfg.fmt == "json" else render_text(report)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
