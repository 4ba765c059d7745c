"""Command-line interface.

Exit codes are shared by every command: 0 = yes / success, 1 = no /
check failed, 2 = error (bad input, precondition violated).
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Callable, Iterable, Optional, Sequence

from contractdom import claims as claims_mod
from contractdom.domination import gamma
from contractdom.generators import FAMILIES, GeneratorSpec, generate, manifest_line, write_fixture
from contractdom.graph import Graph, GraphError, format_edge_list, parse_edge_list
from contractdom.oracle import Decision, decide_bruteforce, decide_characterization
from contractdom.polyalgo import PreconditionError, decide_driver
from contractdom.report import EXIT_ERROR, EXIT_NO, EXIT_YES, RunReport, digest
from contractdom.structure import PatternSpec, StructuralViolation, is_free

log = logging.getLogger("contractdom")

METHODS = ("oracle", "characterization", "structural")
THREADS_ENV = "CONTRACTDOM_THREADS"


def worker_count() -> int:
    cap = os.environ.get(THREADS_ENV)
    n = os.cpu_count() or 1
    if cap:
        n = min(n, max(1, int(cap)))
    return n


def ordered_map(fn: Callable, items: Iterable, workers: Optional[int] = None) -> Iterable:
    """``map`` that fans out to processes when more than one worker is allowed.

    Results always come back in input order.
    """
    workers = worker_count() if workers is None else workers
    if workers <= 1:
        return map(fn, items)
    pool = ProcessPoolExecutor(max_workers=workers)
    try:
        return list(pool.map(fn, items, chunksize=256))
    finally:
        pool.shutdown()


def _load(path: str) -> tuple[Graph, str]:
    text = Path(path).read_text(encoding="utf-8")
    g = parse_edge_list(text)
    return g, digest(format_edge_list(g))


def _error_report(command: str, input_digest: str, exc: Exception, **extra) -> RunReport:
    return RunReport(command, input_digest, result={"error": str(exc), **extra}, exit_status=EXIT_ERROR)


# -- single-graph commands ------------------------------------------------------


def cmd_gamma(path: str) -> RunReport:
    try:
        g, dig = _load(path)
        res = gamma(g)
    except (OSError, GraphError) as exc:
        return _error_report("gamma", "", exc)
    return RunReport("gamma", dig, result={"n": g.n, "m": g.m, "gamma": res.gamma, "witness": res.as_list()})


def run_method(g: Graph, method: str, k: Optional[int] = None, *, check_free: bool = True,
               verify_witness: bool = False) -> Decision:
    if method == "oracle":
        return decide_bruteforce(g)
    if method == "characterization":
        return decide_characterization(g)
    if method == "structural":
        if k is None:
            raise ValueError("the structural method needs --k")
        return decide_driver(g, k, check_free=check_free, verify_witness=verify_witness)
    raise ValueError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")


def cmd_decide(path: str, method: str = "oracle", k: Optional[int] = None, *,
               skip_free_check: bool = False, verify_witness: bool = False) -> RunReport:
    try:
        g, dig = _load(path)
    except (OSError, GraphError) as exc:
        return _error_report("decide", "", exc)
    try:
        d = run_method(g, method, k, check_free=not skip_free_check, verify_witness=verify_witness)
    except PreconditionError as exc:
        witness = sorted(exc.witness) if exc.witness is not None else None
        return _error_report("decide", dig, exc, pattern_witness=witness)
    except (GraphError, ValueError, StructuralViolation) as exc:
        return _error_report("decide", dig, exc)
    body = d.to_dict()
    prov_keys = ("fired_step", "j", "A", "A_size", "f", "regular", "gamma_if_computed", "gamma")
    provenance = {key: body.pop(key) for key in prov_keys if key in body}
    provenance["method"] = body.pop("method")
    result = {"n": g.n, "m": g.m, **body}
    return RunReport("decide", dig, result=result, provenance=provenance,
                     exit_status=EXIT_YES if d.answer else EXIT_NO)


# -- corpus commands ----------------------------------------------------------


def _evaluate(job: tuple[int, Graph, tuple[str, ...], int]) -> dict[str, Any]:
    index, g, methods, k = job
    answers: dict[str, Optional[str]] = {}
    for m in methods:
        if m == "structural" and not is_free(g, PatternSpec.p3_plus(k)):
            answers[m] = None
            continue
        answers[m] = run_method(g, m, k, check_free=False).label
    return {"index": index, "answers": answers}


def cmd_crosscheck(spec: GeneratorSpec, methods: Sequence[str], dump_dir: Optional[str] = None) -> RunReport:
    """Run several deciders over a corpus; any disagreement fails the run.

    The structural method is skipped on instances that are not
    ``P3+kP2``-free for the spec's ``k``.
    """
    methods = tuple(methods)
    for m in methods:
        if m not in METHODS:
            return _error_report("crosscheck", digest(spec.label()), ValueError(f"unknown method {m!r}"))
    graphs: dict[int, Graph] = {}

    def jobs():
        for item in generate(spec):
            graphs[item.index] = item.graph
            yield item.index, item.graph, methods, spec.k

    tallies = {m: {"yes": 0, "no": 0, "skipped": 0} for m in methods}
    agree = evaluated = instances = 0
    disagreements = []
    try:
        for out in ordered_map(_evaluate, jobs()):
            instances += 1
            given = {m: a for m, a in out["answers"].items() if a is not None}
            for m, a in out["answers"].items():
                tallies[m]["skipped" if a is None else a] += 1
            g = graphs.pop(out["index"])
            if len(given) < 2:
                continue
            evaluated += 1
            if len(set(given.values())) == 1:
                agree += 1
                continue
            rec = {"index": out["index"], "answers": given, "edges": [list(e) for e in g.edges], "n": g.n}
            if dump_dir is not None:
                Path(dump_dir).mkdir(parents=True, exist_ok=True)
                fixture = Path(dump_dir) / f"disagreement_{out['index']}.txt"
                write_fixture(g, fixture)
                rec["fixture"] = str(fixture)
            disagreements.append(rec)
    except ValueError as exc:
        return _error_report("crosscheck", digest(spec.label()), exc)
    result = {
        "methods": list(methods),
        "instances": instances,
        "compared": evaluated,
        "agree": agree,
        "disagree": len(disagreements),
        "tallies": tallies,
        "disagreements": disagreements,
    }
    return RunReport("crosscheck", digest(spec.label()), result=result, provenance={"spec": spec.to_dict()},
                     exit_status=EXIT_YES if not disagreements else EXIT_NO)


def _claims_job(job: tuple[int, Graph, int]) -> tuple[int, dict, list]:
    index, g, k = job
    return index, claims_mod.check_claims(g, k), [list(e) for e in g.edges]


def cmd_check_claims(spec: GeneratorSpec, k: Optional[int] = None) -> RunReport:
    """Evaluate the claim suite on every ``P3+kP2``-free instance of the corpus."""
    k = spec.k if k is None else k
    pattern = PatternSpec.p3_plus(k)
    skipped = 0

    def jobs():
        nonlocal skipped
        for item in generate(spec):
            if item.free_checked and spec.k == k or is_free(item.graph, pattern):
                yield item.index, item.graph, k
            else:
                skipped += 1

    tally = claims_mod.ClaimTally()
    try:
        for index, outcomes, edges in ordered_map(_claims_job, jobs()):
            tally.add(index, outcomes, edges)
    except ValueError as exc:
        return _error_report("check-claims", digest(spec.label()), exc)
    result = {**tally.to_dict(), "skipped_not_free": skipped, "k": k}
    return RunReport("check-claims", digest(spec.label()), result=result, provenance={"spec": spec.to_dict()},
                     exit_status=EXIT_YES if tally.ok else EXIT_NO)


def cmd_generate(spec: GeneratorSpec, output: str) -> RunReport:
    count = 0
    with open(output, "w", encoding="utf-8") as fh:
        for item in generate(spec):
            fh.write(manifest_line(spec, item) + "\n")
            count += 1
    return RunReport("generate", digest(spec.label()), result={"instances": count, "output": output},
                     provenance={"spec": spec.to_dict()})


# -- argument parsing -------------------------------------------------------------


def _add_corpus_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", default="random-free", choices=("named", "exhaustive", "random-gnp", "random-free"))
    p.add_argument("--n", type=int, required=True, help="largest vertex count")
    p.add_argument("--n-min", type=int, default=None, help="smallest vertex count (default: --n)")
    p.add_argument("--p", type=float, default=0.5, help="edge probability for random kinds")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1, help="instances for random kinds")
    p.add_argument("--family", default="path", choices=FAMILIES)
    p.add_argument("--allow-large", action="store_true", help="permit exhaustive enumeration at n = 7")
    p.add_argument("--budget", type=int, default=10_000, help="rejection-sampling attempts per instance")


def _spec_from(args: argparse.Namespace) -> GeneratorSpec:
    return GeneratorSpec(kind=args.kind, n=args.n, n_min=args.n_min, p=args.p, k=args.k, seed=args.seed,
                         count=args.samples, family=args.family, allow_large=args.allow_large,
                         budget=args.budget)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="contractdom", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--json", action="store_true", help="print the report as JSON")
        p.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")

    p = sub.add_parser("gamma", help="domination number and a minimum dominating set")
    p.add_argument("--input", required=True)
    common(p)

    p = sub.add_parser("decide", help="does one edge contraction lower the domination number?")
    p.add_argument("--input", required=True)
    p.add_argument("--method", default="oracle", choices=METHODS)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--skip-free-check", action="store_true")
    p.add_argument("--verify-witness", action="store_true")
    common(p)

    p = sub.add_parser("crosscheck", help="compare deciders over a generated corpus")
    _add_corpus_args(p)
    p.add_argument("--methods", default="oracle,characterization")
    p.add_argument("--dump-dir", default="crosscheck-failures")
    common(p)

    p = sub.add_parser("check-claims", help="evaluate the structural claims over a corpus")
    _add_corpus_args(p)
    common(p)

    p = sub.add_parser("generate", help="write a JSONL corpus manifest")
    _add_corpus_args(p)
    p.add_argument("--output", required=True)
    common(p)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    start = time.perf_counter()
    try:
        if args.command == "gamma":
            report = cmd_gamma(args.input)
        elif args.command == "decide":
            report = cmd_decide(args.input, args.method, args.k, skip_free_check=args.skip_free_check,
                                verify_witness=args.verify_witness)
        else:
            spec = _spec_from(args)
            if args.command == "crosscheck":
                methods = [m.strip() for m in args.methods.split(",") if m.strip()]
                report = cmd_crosscheck(spec, methods, args.dump_dir)
            elif args.command == "check-claims":
                report = cmd_check_claims(spec, args.k)
            else:
                report = cmd_generate(spec, args.output)
    except (ValueError, OSError) as exc:
        report = _error_report(args.command, "", exc)
    if args.timing:
        report.timing = {"seconds": round(time.perf_counter() - start, 6)}
    print(report.to_json() if args.json else report.to_text())
    if report.exit_status == EXIT_ERROR and "error" in report.result:
        print(f"error: {report.result['error']}", file=sys.stderr)
    return report.exit_status


if __name__ == "__main__":
    sys.exit(main())
