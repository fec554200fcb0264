"""Command line interface.

Every command prints a ReportEnvelope as canonical JSON.  Exit codes: 0 on
success, 2 on input errors, 3 when ``--expect`` disagrees with the verdict.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
import warnings
from fractions import Fraction
from pathlib import Path

from . import __version__
from . import audit as A
from . import constructions as C
from . import gochecker as GC
from . import homspace as H
from . import liealg as L
from . import linalg as la
from .errors import GeoOrbitError, NumericFallbackWarning
from .report import canonical_json, jsonable
from .serialize import dump_algebra_file, parse_algebra_file

EXIT_OK, EXIT_INPUT, EXIT_EXPECT = 0, 2, 3

EXPECT = {
    "nr": (GC.CERTIFIED,),
    "go": (GC.CERTIFIED, GC.SAMPLED),
    "not-go": (GC.NOT_GO,),
}


class InputError(Exception):
    pass


class Envelope:
    def __init__(self, command: str, seed: int, digest: str | None):
        self.command = command
        self.seed = seed
        self.digest = digest
        self.verdicts: dict = {}
        self.audits: list = []
        self.results: dict = {}
        self.expect: dict | None = None
        self.start = time.perf_counter()

    def to_json_obj(self) -> dict:
        out = {
            "tool": "geoorbit",
            "version": __version__,
            "command": self.command,
            "input_digest": self.digest,
            "seed": self.seed,
            "verdicts": {k: v.to_json_obj() for k, v in self.verdicts.items()},
            "audits": [a.to_json_obj() for a in self.audits],
            "results": jsonable(self.results),
            "timing": {"seconds": round(time.perf_counter() - self.start, 6)},
        }
        if self.expect is not None:
            out["expect"] = self.expect
        return out


def _read(path: str) -> tuple[bytes, str]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return data, "sha256:" + hashlib.sha256(data).hexdigest()


def _load(args) -> tuple:
    data, digest = _read(args.file)
    return parse_algebra_file(data), digest


def _config(args) -> GC.SampleConfig:
    if args.samples < 0:
        raise InputError("--samples must be non-negative")
    return GC.SampleConfig(args.samples, args.seed, args.bound)


def _check_expect(env: Envelope, key: str, wanted: str | None) -> int:
    if wanted is None:
        return EXIT_OK
    got = env.verdicts[key].kind
    ok = got in EXPECT[wanted]
    env.expect = {"wanted": wanted, "verdict": got, "met": ok}
    return EXIT_OK if ok else EXIT_EXPECT


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _series_json(rep: L.SeriesReport) -> dict:
    return {"derived_series_dims": [s.dim for s in rep.derived_series],
            "lower_central_series_dims": [s.dim for s in rep.lower_central_series],
            "is_solvable": rep.is_solvable, "is_nilpotent": rep.is_nilpotent,
            "nilpotency_class": rep.nilpotency_class}


def _spectrum_json(spec: H.KillingOperatorSpectrum) -> dict:
    if spec.mode == "exact":
        return {"mode": "exact", "eigenvalues": list(spec.eigenvalues),
                "multiplicities": list(spec.multiplicities), "eigenspaces": list(spec.eigenspaces)}
    return {"mode": "numeric", "eigenvalues": [repr(round(x, 9)) for x in spec.eigenvalues],
            "multiplicities": list(spec.multiplicities)}


def cmd_analyze(args, env: Envelope) -> int:
    space, env.digest = _load(args)
    g = space.g
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NumericFallbackWarning)
        spec = H.killing_operator_decomposition(space)
        dec = H.submodule_decomposition(space, spec)
    env.results = {
        "dimension": g.dim, "dim_h": space.h.dim, "dim_m": space.m.dim,
        "series": _series_json(L.series_analysis(g)),
        "killing_form": L._killing_matrix(g),
        "radical": L.radical(g), "nilradical": L.nilradical(g), "center": L.center(g),
        "nilradical_in_m": L.nilradical(g) <= space.m,
        "spectrum": _spectrum_json(spec),
        "submodules": [{"module": m, "status": s, "eigenvalue": e}
                       for m, s, e in zip(dec.modules, dec.status, dec.eigenvalues)],
        "warnings": [str(w.message) for w in caught],
    }
    return EXIT_OK


def cmd_go_check(args, env: Envelope) -> int:
    space, env.digest = _load(args)
    env.verdicts["go"] = GC.go_check(space, _config(args))
    return _check_expect(env, "go", args.expect)


def cmd_nil_go_check(args, env: Envelope) -> int:
    space, env.digest = _load(args)
    if space.h.dim:
        raise InputError("nil-go-check needs a file with empty isotropy")
    # the metric on m = g, rewritten in the standard basis
    inv = la.inverse(la.transpose(space.m.rows))
    std = la.matmul(la.matmul(la.transpose(inv), space.ip), inv)
    env.verdicts["nil_go"] = GC.nil_go_check(space.g, std, _config(args))
    return _check_expect(env, "nil_go", args.expect)


def _vectors_arg(text: str | None):
    if text is None:
        return None
    try:
        rows = json.loads(text)
        return [tuple(Fraction(str(x)) for x in r) for r in rows]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse vector list {text!r}") from exc


def cmd_audit(args, env: Envelope) -> int:
    space, env.digest = _load(args)
    config = _config(args)
    g = space.g
    needs_verdict = args.suite in ("strucrad1", "strucnilr", "skew", "quotient", "eigenspace")
    verdict = GC.go_check(space, config) if needs_verdict else None
    if verdict is not None:
        env.verdicts["go"] = verdict
    if args.suite == "strucrad1":
        env.audits.append(A.strucrad1_audit(space, verdict, force=args.force))
    elif args.suite == "strucnilr":
        env.audits.append(A.strucnilr_audit(space, verdict, force=args.force))
    elif args.suite == "skew":
        env.audits.append(A.skew_centralizer_audit(space, verdict, config, force=args.force))
    elif args.suite == "quotient":
        res = A.quotient_go_construction(space, verdict, config, force=args.force)
        env.audits.append(res.report)
    elif args.suite == "eigenspace":
        spec = H.killing_operator_decomposition(space)
        env.audits.append(GC.eigenspace_bracket_audit(spec, verdict, config))
    elif args.suite == "irred1":
        p = _vectors_arg(args.p)
        modules = [H._as_subspace(g, p)] if p else list(H.submodule_decomposition(space).modules)
        env.audits.extend(A.irred1_audit(space, mod) for mod in modules)
    elif args.suite == "goodlevi":
        s = _vectors_arg(args.levi)
        if s is None:
            raise InputError("goodlevi needs --levi")
        k = _vectors_arg(args.k)
        k_sub = H._as_subspace(g, k) if k else H.normalizer_structures(space).k
        env.audits.append(A.goodlevi_audit(g, k_sub, s))
    failed = [a.audit_name for a in env.audits if a.failed]
    env.results = {"failed_audits": failed}
    return EXIT_OK


def cmd_quotient(args, env: Envelope) -> int:
    if not args.output:
        raise InputError("quotient needs -o <file> for the quotient space")
    space, env.digest = _load(args)
    config = _config(args)
    verdict = GC.go_check(space, config)
    env.verdicts["go"] = verdict
    res = A.quotient_go_construction(space, verdict, config, force=args.force)
    env.audits.append(res.report)
    if res.verdict is not None:
        env.verdicts["quotient_go"] = res.verdict
    if res.space is None:
        env.results = {"degenerate": True}
        return EXIT_OK
    Path(args.output).write_bytes(dump_algebra_file(res.space))
    env.results = {"degenerate": False, "dimension": res.space.g.dim, "dim_h": res.space.h.dim,
                   "dim_m": res.space.m.dim, "ideal": res.ideal}
    return EXIT_OK


def _param(text: str):
    key, sep, value = text.partition("=")
    if not sep:
        raise InputError(f"parameter {text!r} is not key=value")
    return key, value


def cmd_construct(args, env: Envelope) -> int:
    params = dict(_param(p) for p in args.param)
    for key in ("n", "m", "k"):
        if key in params:
            try:
                params[key] = int(params[key])
            except ValueError as exc:
                raise InputError(f"{key} must be an integer") from exc
    if args.kind == "htype":
        raise InputError("htype needs a Clifford module; use heisenberg3 or heisenberg13")
    try:
        space = C.construct(C.ConstructionParams(args.kind, params))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from exc
    Path(args.output).write_bytes(dump_algebra_file(space))
    env.results = {"kind": args.kind, "params": params, "dimension": space.g.dim,
                   "dim_h": space.h.dim, "dim_m": space.m.dim, "output": Path(args.output).name}
    return EXIT_OK


def render_text(doc: dict) -> str:
    lines = [f"{doc['tool']} {doc['version']}  {doc['command']}  seed={doc['seed']}"]
    if doc.get("input_digest"):
        lines.append(f"input {doc['input_digest']}")
    for key, v in sorted(doc.get("verdicts", {}).items()):
        lines.append(f"verdict {key}: {v['kind']} ({v['samples']} samples)")
        if v.get("witness") is not None:
            lines.append(f"  witness: {json.dumps(v['witness'], sort_keys=True)}")
    for a in doc.get("audits", []):
        lines.append(f"audit {a['audit_name']} on {a['target']} [{a['precondition']}]")
        for c in a["clauses"]:
            extra = f"  ({c['detail']})" if c.get("detail") else ""
            lines.append(f"  {c['claim_id']:>10}  {c['status']:<28} {c['anchor']}{extra}")
    if doc.get("expect"):
        e = doc["expect"]
        lines.append(f"expect {e['wanted']}: {'met' if e['met'] else 'NOT met'}")
    return "\n".join(lines) + "\n"


def cmd_report(args, env: Envelope):
    data = sys.stdin.buffer.read() if args.file == "-" else _read(args.file)[0]
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise InputError(f"report is not JSON: {exc}") from exc
    if args.format == "json":
        # already plain JSON; jsonable() would stringify the timing float
        return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"
    return render_text(doc)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geoorbit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"geoorbit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def sampling(p):
        p.add_argument("--samples", type=int, default=64)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--bound", type=int, default=10, help="coordinate bound for random samples")
        p.add_argument("-o", "--output", help="write the report here instead of stdout")

    p = sub.add_parser("analyze", help="series, radical, nilradical, Killing spectrum, submodules")
    p.add_argument("file")
    sampling(p)
    p.set_defaults(func=cmd_analyze)

    for name, func in (("go-check", cmd_go_check), ("nil-go-check", cmd_nil_go_check)):
        p = sub.add_parser(name)
        p.add_argument("file")
        p.add_argument("--expect", choices=sorted(EXPECT))
        sampling(p)
        p.set_defaults(func=func)

    p = sub.add_parser("audit")
    p.add_argument("file")
    p.add_argument("--suite", required=True, choices=A.SUITES)
    p.add_argument("--force", action="store_true", help="run GO-consequence audits without a GO verdict")
    p.add_argument("--p", help="JSON list of vectors spanning the submodule (irred1)")
    p.add_argument("--k", help="JSON list of vectors spanning k (goodlevi)")
    p.add_argument("--levi", help="JSON list of vectors spanning the Levi factor (goodlevi)")
    sampling(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("quotient")
    p.add_argument("file")
    p.add_argument("--force", action="store_true")
    sampling(p)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("construct")
    p.add_argument("kind", choices=C.KINDS)
    p.add_argument("param", nargs="*", help="key=value parameters, e.g. alpha=1/2")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("report", help="render a saved report")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_report)
    return parser


def run_command(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    env = Envelope(args.command, args.seed, None)
    try:
        code = args.func(args, env)
    except (InputError, GeoOrbitError) as exc:
        print(f"geoorbit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.command == "report":
        stdout.write(code)
        return EXIT_OK
    text = canonical_json(env) + "\n"
    out = getattr(args, "output", None)
    if out and args.command in ("analyze", "go-check", "nil-go-check", "audit"):
        Path(out).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run_command())
