"""Command-line front end.

Every command prints ``key=value`` lines on stdout. Exit status is 0 when
everything checked passes, 1 on a validation or claim failure and 2 on
usage, input or resource errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from planedom.embed import natural_embedding
from planedom.instance import (
    GenerationError,
    GenParams,
    InstanceDecodeError,
    ResourceLimitError,
    check_pair_condition,
    decode,
    encode,
    generate,
    solve_sat,
    validate,
)
from planedom.planegraph import GraphDecodeError, PlaneGraph, export_dot, graph_from_json, graph_to_json
from planedom.reductions import blocked_groups_from_labels, build, is_blocked, necessity_sets, protected_from_labels
from planedom.solvers import min_dominating, min_power_dominating
from planedom.triangulate import CertificationError, TriangulationError, triangulate_with_log, verify_triangulation
from planedom.workbench import BatchParams, PipelineError, batch_verify, run_pipeline

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)
        print(f"wrote={path}")


def _instance(path: str):
    try:
        return decode(_read(path))
    except InstanceDecodeError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _graph(path: str) -> PlaneGraph:
    try:
        return graph_from_json(_read(path))
    except GraphDecodeError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _flag(b: bool) -> str:
    return "true" if b else "false"


def cmd_validate(args) -> int:
    try:
        inst = decode(_read(args.file))
    except InstanceDecodeError as exc:
        print("valid=false")
        print(f"error={exc}")
        return FAIL
    reports = [validate(inst), check_pair_condition(inst)]
    for rep in reports:
        for check in rep.checks:
            print(f"check={check.replace(' ', '_')} status={'fail' if rep.failed(check) else 'pass'}")
        for f in rep.findings:
            print(f"finding={f}")
    ok = all(r.passed for r in reports)
    print(f"valid={_flag(ok)}")
    return OK if ok else FAIL


def cmd_gen(args) -> int:
    params = GenParams(args.n, args.m, args.max_clause_size, args.polarity_mix, args.seed)
    try:
        inst = generate(params)
    except GenerationError as exc:
        print(f"error={exc}", file=sys.stderr)
        return USAGE
    _write(args.out, encode(inst))
    return OK


def cmd_reduce(args) -> int:
    inst = _instance(args.inp)
    r = build(args.mode, inst)
    G = natural_embedding(inst, r)
    _write(args.out, graph_to_json(G))
    print(f"vertices={G.n}")
    print(f"edges={G.num_edges}")
    print(f"protected={len(r.protected)}")
    return OK


def cmd_triangulate(args) -> int:
    G = _graph(args.inp)
    Z = protected_from_labels(G) if args.z_from_labels else frozenset()
    try:
        T, log = triangulate_with_log(G, Z, allow_fallback=not args.no_fallback)
    except CertificationError as exc:
        print("certified=false")
        for m in exc.report.messages():
            print(f"finding={m}")
        return FAIL
    except TriangulationError as exc:
        print("certified=true")
        print(f"error={exc}")
        return FAIL
    rep = verify_triangulation(G, T, Z)
    _write(args.out, graph_to_json(T))
    print("certified=true")
    print(f"protected={len(Z)}")
    print(f"chords={len(log.chords)}")
    print(f"fallback={_flag(log.used_fallback)}")
    print(f"edges_after={T.num_edges}")
    print(f"verified={_flag(rep.passed)}")
    return OK if rep.passed else FAIL


def cmd_solve(args) -> int:
    if args.what == "sat":
        a = solve_sat(_instance(args.inp))
        print(f"sat={_flag(a is not None)}")
        if a is not None:
            print("assignment=" + "".join("1" if x else "0" for x in a))
        return OK
    G = _graph(args.inp)
    if args.what == "dom":
        res = min_dominating(G, budget=args.budget)
        key = "gamma"
    else:
        groups = [g for g in blocked_groups_from_labels(G) if is_blocked(G, g)]
        res = min_power_dominating(G, budget=args.budget, necessity=necessity_sets(G, groups))
        key = "gamma_p"
    if res.exceeded:
        print(f"{key}=>{args.budget}")
        print("exceeded=true")
    else:
        print(f"{key}={res.size}")
        print("witness=" + ",".join(G.labels[v] or str(v) for v in sorted(res.witness)))
    print(f"nodes={res.nodes}")
    return OK


def cmd_verify(args) -> int:
    inst = _instance(args.inp)
    try:
        res = run_pipeline(args.mode, inst)
    except PipelineError as exc:
        print(f"stage={exc.stage}")
        print(f"error={exc}")
        return FAIL
    for line in res.lines():
        print(line)
    print(f"ok={_flag(res.ok)}")
    return OK if res.ok else FAIL


def cmd_batch(args) -> int:
    params = BatchParams(
        max_n=args.max_n,
        max_m=args.max_m,
        pdom_max_n=args.pdom_max_n,
        confirm_strict=args.confirm_strict,
    )
    try:
        summary = batch_verify(params, args.seed, args.count, Path(args.replay_dir) if args.replay_dir else None)
    except GenerationError as exc:
        print(f"error={exc}", file=sys.stderr)
        return USAGE
    sys.stdout.write(summary.text())
    return OK if summary.passed else FAIL


def cmd_export(args) -> int:
    G = _graph(args.inp)
    _write(args.out, export_dot(G) if args.format == "dot" else graph_to_json(G))
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="planedom", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check an instance file")
    s.add_argument("file")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("gen", help="generate a random instance")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-clause-size", type=int, default=3, choices=(2, 3))
    s.add_argument("--polarity-mix", type=float, default=0.5)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_gen)

    s = sub.add_parser("reduce", help="build and embed a reduction graph")
    s.add_argument("--mode", choices=("dom", "pdom"), required=True)
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_reduce)

    s = sub.add_parser("triangulate", help="triangulate a plane graph keeping Z's neighbourhoods")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--z-from-labels", action="store_true")
    s.add_argument("--no-fallback", action="store_true")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_triangulate)

    s = sub.add_parser("solve", help="SAT, domination or power domination number")
    s.add_argument("--what", choices=("sat", "dom", "pdom"), required=True)
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--budget", type=int)
    s.set_defaults(fn=cmd_solve)

    s = sub.add_parser("verify", help="run a full pipeline on one instance")
    s.add_argument("--mode", choices=("dom", "pdom"), required=True)
    s.add_argument("--in", dest="inp", required=True)
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("batch", help="run both pipelines on random instances")
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-n", type=int, default=4)
    s.add_argument("--max-m", type=int, default=4)
    s.add_argument("--pdom-max-n", type=int)
    s.add_argument("--confirm-strict", action="store_true")
    s.add_argument("--replay-dir")
    s.set_defaults(fn=cmd_batch)

    s = sub.add_parser("export", help="write a graph as DOT or JSON")
    s.add_argument("--format", choices=("dot", "json"), required=True)
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_export)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error={exc}", file=sys.stderr)
        return USAGE
    except ResourceLimitError as exc:
        print(f"error={exc}", file=sys.stderr)
        return USAGE
    except ValueError as exc:
        print(f"error={exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
