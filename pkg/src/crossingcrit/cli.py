"""Command-line entry point: ``crossingcrit {gen,table1,solve,verify,export}``.

Every command that writes a report embeds a run manifest.  The manifest's
output digest covers the report body only (not the manifest itself, which
carries the wall time), so reruns with the same arguments and seed produce
identical digests.

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 budget
exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import tempfile
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

from . import __version__
from .drawing import Drawing, export_drawing
from .errors import BudgetExceeded, CrossingCritError
from .families import (
    FamilyParams,
    build_g13,
    build_g13_family,
    build_g13_k,
    build_k33,
    build_kochol,
    theorem3_build,
)
from .graphcore import WeightedMultigraph
from .proofcheck import enumerate_table1, format_table, in_canonical_order, table1_matches_golden
from .solver import SolverBudget, Status, exact_cr

log = logging.getLogger("crossingcrit")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
BUDGET_ENV = "CROSSINGCRIT_BUDGET_SEC"


class InputError(Exception):
    """Bad command-line input; reported with exit code 2."""


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def canonical_json(obj: object) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()


@dataclass
class RunManifest:
    command: str
    arguments: dict
    seed: int | None = None
    budget: dict | None = None
    tool_version: str = __version__
    input_digests: dict = field(default_factory=dict)
    output_digest: str | None = None
    wall_time: float = 0.0


def attach_manifest(body: dict, manifest: RunManifest) -> dict:
    body = json.loads(json.dumps(body))  # normalise keys to their on-disk form before hashing
    manifest.output_digest = _sha256(canonical_json(body))
    return {**body, "manifest": asdict(manifest)}


def check_report_digest(report: dict) -> bool:
    """Re-hash a loaded report (minus its manifest) and compare with the stored digest."""
    body = {k: v for k, v in report.items() if k != "manifest"}
    return report["manifest"]["output_digest"] == _sha256(canonical_json(body))


def _write(path: str | None, data: bytes) -> None:
    """Atomic write, so a failing command never leaves a partial file behind."""
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, target)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def _read(path: str) -> tuple[bytes, str]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return data, _sha256(data)


def _load_graph(path: str) -> tuple[WeightedMultigraph, str]:
    data, digest = _read(path)
    try:
        obj = json.loads(data)
        if "crossings" in obj:  # a drawing file carries its graph
            obj = obj["graph"]
        return WeightedMultigraph.from_dict(obj), digest
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{path} is not a graph JSON file: {exc}") from exc


def _default_budget() -> float:
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return 600.0
    try:
        return float(raw)
    except ValueError as exc:
        raise InputError(f"{BUDGET_ENV} must be a number of seconds, got {raw!r}") from exc


def _vars(args: argparse.Namespace) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


def _dump(obj: object) -> bytes:
    return (json.dumps(obj, indent=1, sort_keys=True) + "\n").encode()


# -- commands ------------------------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    t0 = time.monotonic()
    extra: dict = {}
    fam = args.family
    if fam == "g13":
        g = build_g13()
    elif fam == "g13p":
        if not args.ks:
            raise InputError("--family g13p needs --ks")
        params = FamilyParams.parse(args.ks)
        g = build_g13_family(params)
        extra["params"] = params.to_dict()
    elif fam == "g13k":
        g = build_g13_k(args.k)
    elif fam == "thm3":
        t = theorem3_build(args.q, args.d, args.c)
        g = t.graph
        extra.update(params=t.params.to_dict(), transforms=t.manifest)
    elif fam == "k33":
        g = build_k33()
    else:
        g = build_kochol(args.twists)
    if args.fmt == "dot":
        _write(args.out, g.to_dot().encode())
        return EXIT_OK
    body = {**g.to_dict(), **({"construction": extra} if extra else {})}
    if fam == "thm3" or args.manifest:
        manifest = RunManifest("gen", _vars(args), wall_time=round(time.monotonic() - t0, 3))
        body = attach_manifest(body, manifest)
    _write(args.out, _dump(body))
    return EXIT_OK


def cmd_table1(args: argparse.Namespace) -> int:
    rows = enumerate_table1()
    ok, diffs = table1_matches_golden(rows)
    low = min(r.total for r in rows)
    if args.json:
        out = _dump({"rows": [r.to_dict() for r in in_canonical_order(rows)], "min_total": low,
                     "golden_match": ok})
    else:
        out = (format_table(in_canonical_order(rows)) + f"\n\nrows: {len(rows)}  min total: {low}\n").encode()
    _write(args.out, out)
    if args.golden:
        for line in diffs:
            print(line, file=sys.stderr)
        print(f"golden: {'match' if ok else 'MISMATCH'}", file=sys.stderr)
        return EXIT_OK if ok and low == 12 else EXIT_FAIL
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    t0 = time.monotonic()
    g, digest = _load_graph(args.input)
    budget = SolverBudget(max_crossings=args.max_k, time_limit=args.time, node_limit=args.nodes,
                          restarts=args.restarts, seed=args.seed)
    res = exact_cr(g, budget)
    body = res.to_dict()
    body["stats"] = {k: v for k, v in body["stats"].items() if k != "seconds"}
    manifest = RunManifest("solve", _vars(args), args.seed, asdict(budget), input_digests={args.input: digest},
                           wall_time=round(time.monotonic() - t0, 3))
    _write(args.report, _dump(attach_manifest(body, manifest)))
    print(f"{res.status.value}: {res.lower_bound} <= cr <= {res.upper_bound}", file=sys.stderr)
    if res.status == Status.TIMEOUT:
        return EXIT_BUDGET
    return EXIT_OK if res.status == Status.EXACT else EXIT_FAIL


def cmd_verify(args: argparse.Namespace) -> int:
    from .verify import verify_criticality, verify_g13_lowerbound_pipeline, verify_theorem3

    t0 = time.monotonic()
    budget_sec = args.budget_sec if args.budget_sec is not None else _default_budget()
    budget = SolverBudget(time_limit=budget_sec, restarts=args.restarts, seed=args.seed)
    body: dict = {}
    ok = True
    if args.pipeline:
        body["pipeline"] = verify_g13_lowerbound_pipeline()
        ok &= body["pipeline"]["ok"]
    if args.theorem3:
        q, d = args.q, args.d
        body["theorem3"] = verify_theorem3(q, d, args.c)
        ok &= body["theorem3"]["ok"]
    if args.ks:
        rep = verify_criticality(FamilyParams.parse(args.ks), args.c, budget,
                                 decrements=not args.no_decrements, jobs=args.jobs)
        body["criticality"] = rep.to_dict(drawings=not args.summary)
        ok &= rep.verdict == "criticality-verified-at-desk-scale"
        for bad in rep.failures():
            print(f"no witness: {bad}", file=sys.stderr)
        print(f"verdict: {rep.verdict}", file=sys.stderr)
    if not body:
        raise InputError("nothing to verify: give --ks, --theorem3 or --pipeline")
    wall = round(time.monotonic() - t0, 3)
    manifest = RunManifest("verify", _vars(args), args.seed, asdict(budget), wall_time=wall)
    _write(args.report, _dump(attach_manifest(body, manifest)))
    if wall > budget_sec and not ok:
        return EXIT_BUDGET
    return EXIT_OK if ok else EXIT_FAIL


def cmd_export(args: argparse.Namespace) -> int:
    data, _ = _read(args.input)
    try:
        obj = json.loads(data)
    except ValueError as exc:
        raise InputError(f"{args.input} is not JSON: {exc}") from exc
    try:
        if isinstance(obj, dict) and "crossings" in obj:
            d = Drawing.from_dict(obj)
            out = export_drawing(d, "dot" if args.fmt == "dot" else "json")
        else:
            g = WeightedMultigraph.from_dict(obj)
            if args.fmt == "dot":
                out = g.to_dot().encode()
            elif args.fmt == "edgelist":
                out = g.to_edgelist().encode()
            else:
                out = _dump(g.to_dict())
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"{args.input}: unrecognised structure ({exc})") from exc
    _write(args.out, out)
    return EXIT_OK


# -- parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crossingcrit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a graph")
    g.add_argument("--family", choices=["g13", "g13p", "g13k", "thm3", "k33", "kochol"], default="g13")
    g.add_argument("--ks", help="half-integer parameters, e.g. 1,0.5,0.5,1")
    g.add_argument("--k", type=int, default=2)
    g.add_argument("--q", type=int, default=1)
    g.add_argument("--d", type=int, default=8)
    g.add_argument("--c", type=int, default=13)
    g.add_argument("--twists", "--tiles", dest="twists", type=int, default=4)
    g.add_argument("--fmt", choices=["json", "dot"], default="json")
    g.add_argument("--manifest", action="store_true", help="embed a run manifest")
    g.add_argument("--out", "-o")
    g.set_defaults(func=cmd_gen)

    t = sub.add_parser("table1", help="reproduce the blue-edge case table")
    t.add_argument("--golden", action="store_true", help="diff against the stored table")
    t.add_argument("--json", action="store_true")
    t.add_argument("--out", "-o")
    t.set_defaults(func=cmd_table1)

    s = sub.add_parser("solve", help="exact crossing number of a graph JSON file")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--max-k", type=int, default=64)
    s.add_argument("--time", type=float, default=60.0)
    s.add_argument("--nodes", type=int, default=2_000_000)
    s.add_argument("--restarts", type=int, default=8)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--report", "-o")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="criticality, degree-profile and proof-fragment checks")
    v.add_argument("--ks", help="family parameters; runs the criticality check")
    v.add_argument("--c", type=int, default=13)
    v.add_argument("--theorem3", action="store_true", help="check the degree construction for --q/--d/--c")
    v.add_argument("--q", type=int, default=1)
    v.add_argument("--d", type=int, default=8)
    v.add_argument("--pipeline", action="store_true", help="run the lower-bound proof fragments")
    v.add_argument("--budget-sec", type=float, default=None, help=f"default from ${BUDGET_ENV} or 600")
    v.add_argument("--restarts", type=int, default=8)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--no-decrements", action="store_true")
    v.add_argument("--summary", action="store_true", help="omit witness drawings from the report")
    v.add_argument("--report", "-o")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("export", help="convert a graph or drawing JSON file")
    e.add_argument("--in", dest="input", required=True)
    e.add_argument("--fmt", choices=["json", "dot", "edgelist"], default="dot")
    e.add_argument("--out", "-o")
    e.set_defaults(func=cmd_export)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, CrossingCritError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
