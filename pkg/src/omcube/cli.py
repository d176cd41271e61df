"""Command-line surface: classify, complete, enumerate, generate, export.

Reports are JSON objects with a fixed field order (command echo, input
digest, result); timing information is attached only when --timings is
given, so default reports are byte-stable across runs and thread counts.
Exit codes: 0 success, 2 precondition/parse error, 3 resource guard or
expired budget, 4 domain verdict (NotCUOM / NoCompletionFound / oracle
exhausted).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from . import comstruct, complete, corpus, family as family_mod, pcube, signvec
from .errors import (
    DomainVerdict,
    OmcubeError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
)
from .family import Family, mask_to_str, vc_dim

__all__ = ["run", "main"]


class _Budget:
    def __init__(self, seconds):
        self.deadline = time.monotonic() + seconds if seconds else None

    def check(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ResourceLimitError("budget expired")


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _read_source(path: str) -> tuple[str, str]:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise PreconditionError(f"cannot read {path}: {exc}") from None
    return text, _digest(text)


def _load_family_text(text: str) -> Family:
    import io

    return corpus.load_family(io.StringIO(text))


def _family_json(f: Family) -> dict:
    return {
        "m": f.m,
        "bit_order": "msb_element_1",
        "vertices": [mask_to_str(v, f.m) for v in f],
    }


def _emit(args, payload: dict, digest: str, started: float, out) -> None:
    report = {
        "command": args.echo,
        "input_digest": digest,
        "result": payload,
        "timings": {"wall_s": round(time.monotonic() - started, 3)} if args.timings else None,
    }
    if args.format == "json":
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        _render_text(report, out)


def _render_text(obj, out, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                out.write(f"{pad}{k}:\n")
                _render_text(v, out, indent + 1)
            else:
                out.write(f"{pad}{k}: {v}\n")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                _render_text(v, out, indent + 1)
            else:
                out.write(f"{pad}- {v}\n")
    else:
        out.write(f"{pad}{obj}\n")


# ---------------------------------------------------------------------------
# subcommand implementations

def _cmd_classify(args, out):
    text, digest = _read_source(args.input)
    payload: dict = {}
    if args.covectors:
        system = signvec.SignSystem.from_text(text)
        rep = signvec.axiom_report(system)
        payload["axioms"] = rep.as_dict()
        if not rep.simple:
            if not args.simplify:
                raise PreconditionError(
                    f"system is not simple ({rep.failures.get('simple')}); rerun with --simplify"
                )
            system, removed = signvec.simplify(system)
            payload["simplified_away"] = list(removed)
            payload["axioms_after_simplify"] = signvec.axiom_report(system).as_dict()
        topes, _ = signvec.topes_and_cocircuits(system)
        fam = topes
        payload["topes"] = _family_json(fam)
    else:
        fam = _load_family_text(text)
    payload["classification"] = comstruct.classify(fam).as_dict()
    return payload, digest


def _cmd_vcdim(args, out):
    text, digest = _read_source(args.input)
    fam = _load_family_text(text)
    return {"vcd": vc_dim(fam)}, digest


def _cmd_faces(args, out):
    text, digest = _read_source(args.input)
    fam = _load_family_text(text)
    faces = comstruct.enumerate_faces(fam)
    return {
        "count": len(faces),
        "faces": [comstruct.face_report(f, faces) for f in faces],
    }, digest


def _cmd_complete(args, out):
    text, digest = _read_source(args.input)
    fam = _load_family_text(text)
    if args.mode == "uom":
        trace = complete.uom_to_amp(pcube.PCube(fam))
    elif args.mode == "om":
        trace = complete.om_to_amp(pcube.PCube(fam))
    else:
        trace = complete.cuom_to_amp(fam)
    return {"mode": args.mode, "trace": trace.as_dict()}, digest


def _cmd_oracle(args, out):
    text, digest = _read_source(args.input)
    fam = _load_family_text(text)
    found = complete.min_ample_completion(fam, args.dcap)
    if found is None:
        raise DomainVerdict(
            f"no ample completion with VC-dimension <= {args.dcap} exists"
        )
    d, witness = found
    return {"d_min": d, "witness": _family_json(witness)}, digest


def _cmd_naive_union(args, out):
    text, digest = _read_source(args.input)
    fam = _load_family_text(text)
    union, is_pc = complete.naive_facet_union(fam, stage=args.stage)
    return {
        "stage": args.stage,
        "union": _family_json(union),
        "is_partial_cube": is_pc,
    }, digest


def _oracle_scan_worker(job):
    span, code, dcap = job
    fam = corpus.family_from_key(corpus.CanonicalKey(span, code))
    found = complete.min_ample_completion(fam, dcap)
    if found is None:
        return span, code, None
    return span, code, found[0]


def _cmd_enumerate(args, out):
    digest = _digest(f"enumerate m={args.m}")
    if args.m >= 5 and not (args.slow or args.budget):
        raise ResourceLimitError(
            "enumeration at m >= 5 is a slow run: pass --slow or set --budget"
        )
    budget = _Budget(args.budget)
    checkpoint = args.checkpoint
    state = None
    if checkpoint and os.path.exists(checkpoint):
        with open(checkpoint, "r", encoding="utf-8") as fh:
            state = json.load(fh)
        if state.get("m") != args.m:
            state = None

    def save_state(obj):
        if checkpoint:
            with open(checkpoint, "w", encoding="utf-8") as fh:
                json.dump(obj, fh)

    if state and "classes" in state:
        classes = [corpus.CanonicalKey(s, c) for s, c in state["classes"]]
    else:
        def progress(level, done, total):
            budget.check()

        classes = [key for key, _ in corpus.enumerate_partial_cubes(args.m, progress)]
        save_state({"m": args.m, "classes": [[k.span, k.code] for k in classes]})

    summary: dict = {"m": args.m, "classes": len(classes)}
    emit_lines = []
    scan_results = state.get("scan", {}) if state else {}
    if args.find_counterexamples:
        if args.d is None:
            raise PreconditionError("--find-counterexamples needs --d")
        jobs = []
        for key in classes:
            fam = corpus.family_from_key(key)
            if vc_dim(fam) == args.d:
                jobs.append((key.span, key.code, args.d))
        done = {tuple(k): v for k, v in scan_results.get("done", [])} if scan_results else {}
        pending = [j for j in jobs if (j[0], j[1]) not in done]
        threads = args.threads
        if threads > 1 and pending:
            import multiprocessing as mp

            with mp.Pool(threads) as pool:
                for i, (s, c, d_min) in enumerate(
                    pool.imap(_oracle_scan_worker, pending, chunksize=8)
                ):
                    done[(s, c)] = d_min
                    if checkpoint and i % 50 == 49:
                        save_state({"m": args.m,
                                    "classes": [[k.span, k.code] for k in classes],
                                    "scan": {"done": [[list(k), v] for k, v in done.items()]}})
                    budget.check()
        else:
            for i, job in enumerate(pending):
                s, c, d_min = _oracle_scan_worker(job)
                done[(s, c)] = d_min
                if checkpoint and i % 50 == 49:
                    save_state({"m": args.m,
                                "classes": [[k.span, k.code] for k in classes],
                                "scan": {"done": [[list(k), v] for k, v in done.items()]}})
                budget.check()
        counterexamples = sorted(k for k, v in done.items() if v is None or v > args.d)
        summary["vcd_filter"] = args.d
        summary["scanned"] = len(done)
        summary["counterexamples"] = len(counterexamples)
        for s, c in counterexamples:
            fam = corpus.family_from_key(corpus.CanonicalKey(s, c))
            emit_lines.append({
                "key": [s, c],
                "family": _family_json(fam),
                "d_min": done[(s, c)],
            })
        save_state({"m": args.m,
                    "classes": [[k.span, k.code] for k in classes],
                    "scan": {"done": [[list(k), v] for k, v in done.items()]}})
    else:
        for key in classes:
            fam = corpus.family_from_key(key)
            line: dict = {"key": [key.span, key.code], "family": _family_json(fam)}
            if args.classify:
                line["classification"] = comstruct.classify(fam).as_dict()
            emit_lines.append(line)
            budget.check()

    for line in emit_lines:
        out.write(json.dumps(line) + "\n")
    return {"summary": summary}, digest


def _cmd_gen(args, out):
    if args.kind == "uniform-om":
        system, fam = corpus.gen_uniform_om(args.m, args.r, args.seed)
        digest = _digest(f"uniform-om m={args.m} r={args.r} seed={args.seed}")
        payload = {"family": _family_json(fam)}
        if args.with_covectors:
            payload["covectors"] = [str(x) for x in system]
    elif args.kind == "com":
        text, digest = _read_source(args.arrangement)
        try:
            arr = corpus.Arrangement.from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno)
        fam = corpus.gen_realizable_com(arr)
        payload = {"family": _family_json(fam)}
    elif args.kind == "product":
        ta, da = _read_source(args.a)
        tb, db = _read_source(args.b)
        fam = corpus.product(_load_family_text(ta), _load_family_text(tb))
        digest = _digest(da + db)
        payload = {"family": _family_json(fam)}
    else:  # named
        fam = corpus.named(args.name)
        digest = _digest(f"named {args.name}")
        payload = {"family": _family_json(fam)}
    if args.output:
        corpus.save_family(fam, args.output)
    return payload, digest


def _cmd_export_dot(args, out):
    text, digest = _read_source(args.input)
    fam = _load_family_text(text)
    dot = corpus.export_dot(fam)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(dot)
        return {"written": args.output}, digest
    return {"dot": dot}, digest


# ---------------------------------------------------------------------------
# argument parsing and dispatch

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--timings", action="store_true",
                        help="attach wall-clock timing (reports stop being byte-stable)")
    common.add_argument("--threads", type=int,
                        default=int(os.environ.get("OMCUBE_THREADS", "1")))
    common.add_argument("--budget", type=float, default=None,
                        help="abort with exit 3 after this many seconds")
    common.add_argument("--slow", action="store_true",
                        help="opt in to long exhaustive runs")

    p = argparse.ArgumentParser(prog="omcube", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("classify", parents=[common])
    s.add_argument("input")
    s.add_argument("--covectors", action="store_true",
                   help="input is a covector text file, not a family JSON")
    s.add_argument("--simplify", action="store_true",
                   help="delete redundant elements before classification")
    s.set_defaults(fn=_cmd_classify)

    s = sub.add_parser("vcdim", parents=[common])
    s.add_argument("input")
    s.set_defaults(fn=_cmd_vcdim)

    s = sub.add_parser("faces", parents=[common])
    s.add_argument("input")
    s.set_defaults(fn=_cmd_faces)

    s = sub.add_parser("complete", parents=[common])
    s.add_argument("input")
    s.add_argument("--mode", choices=("uom", "om", "cuom"), required=True)
    s.set_defaults(fn=_cmd_complete)

    s = sub.add_parser("oracle", parents=[common])
    s.add_argument("input")
    s.add_argument("--dcap", type=int, required=True)
    s.set_defaults(fn=_cmd_oracle)

    s = sub.add_parser("naive-union", parents=[common])
    s.add_argument("input")
    s.add_argument("--stage", choices=("uom", "amp"), default="amp")
    s.set_defaults(fn=_cmd_naive_union)

    s = sub.add_parser("enumerate", parents=[common])
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--classify", action="store_true")
    s.add_argument("--find-counterexamples", action="store_true")
    s.add_argument("--d", type=int, default=None)
    s.add_argument("--checkpoint", default=None)
    s.set_defaults(fn=_cmd_enumerate)

    s = sub.add_parser("gen", parents=[common])
    gsub = s.add_subparsers(dest="kind", required=True)
    g = gsub.add_parser("uniform-om", parents=[common])
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--r", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--with-covectors", action="store_true")
    g.add_argument("-o", "--output", default=None)
    g.set_defaults(fn=_cmd_gen, kind="uniform-om")
    g = gsub.add_parser("com", parents=[common])
    g.add_argument("arrangement")
    g.add_argument("-o", "--output", default=None)
    g.set_defaults(fn=_cmd_gen, kind="com")
    g = gsub.add_parser("product", parents=[common])
    g.add_argument("--a", required=True)
    g.add_argument("--b", required=True)
    g.add_argument("-o", "--output", default=None)
    g.set_defaults(fn=_cmd_gen, kind="product")
    g = gsub.add_parser("named", parents=[common])
    g.add_argument("--name", required=True)
    g.add_argument("-o", "--output", default=None)
    g.set_defaults(fn=_cmd_gen, kind="named")

    s = sub.add_parser("export-dot", parents=[common])
    s.add_argument("input")
    s.add_argument("-o", "--output", default=None)
    s.set_defaults(fn=_cmd_export_dot)

    return p


def run(argv, stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    args.echo = list(argv)
    started = time.monotonic()
    try:
        payload, digest = args.fn(args, out)
    except (ParseError, PreconditionError) as exc:
        err.write(f"error: {exc}\n")
        _emit(args, {"error": str(exc), "kind": type(exc).__name__}, "", started, out)
        return 2
    except ResourceLimitError as exc:
        err.write(f"resource guard: {exc}\n")
        _emit(args, {"error": str(exc), "kind": type(exc).__name__}, "", started, out)
        return 3
    except DomainVerdict as exc:
        err.write(f"verdict: {exc}\n")
        _emit(args, {"verdict": str(exc), "kind": type(exc).__name__}, "", started, out)
        return 4
    except OmcubeError as exc:
        err.write(f"error: {exc}\n")
        _emit(args, {"error": str(exc), "kind": type(exc).__name__}, "", started, out)
        return 2
    _emit(args, payload, digest, started, out)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))
