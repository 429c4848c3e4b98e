"""Command line front end: exact values, certified bounds, verification, generators.

Graphs arrive as graph6 lines or as edge lists (auto-detected, overridable
with --format).  Every command has a --json mode whose output is
deterministic for identical inputs and validates against the shipped schema
(src/cliquereg/schema/report.schema.json).
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys
import time
from pathlib import Path
from typing import List, Optional

from .errors import CapExceeded, ParseError
from .graph import Graph, bits
from .hochster import DEFAULT_EXACT_CAP, betti_table, regularity_exact
from .bounds import (
    DEFAULT_ENGINE_BUDGET,
    Strategy,
    analyze,
    certificate_to_json,
)
from .families import (
    PRNG_NAME,
    complete,
    complete_multipartite,
    cycle,
    edge_list_read,
    fan,
    graph6_decode,
    graph6_encode,
    kn2,
    path,
    random_bipartite_complement,
    random_chordal,
    random_gnp,
)
from .verify import SUITES

_GRAPH6_OK = set(chr(c) for c in range(63, 127))


def _sniff_format(text: str) -> str:
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if " " not in line and all(ch in _GRAPH6_OK for ch in line):
            return "graph6"
        return "edgelist"
    raise ParseError("empty input")


def _read_graphs(args) -> List[Graph]:
    if args.g6 is not None:
        text = args.g6
        fmt = "graph6" if args.format == "auto" else args.format
    else:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            text = Path(args.input).read_text()
        fmt = args.format
    if fmt == "auto":
        fmt = _sniff_format(text)
    if fmt == "graph6":
        graphs = [
            graph6_decode(line.strip())
            for line in text.splitlines()
            if line.strip()
        ]
        if not graphs:
            raise ParseError("no graph6 lines in input")
        return graphs
    return [edge_list_read(text)]


def _vertices(mask: int) -> List[int]:
    return list(bits(mask))


def _witness_json(witness) -> Optional[dict]:
    if witness is None:
        return None
    mask, degree = witness
    return {"subset": _vertices(mask), "degree": degree}


def _print_json(payloads: List[dict]) -> None:
    out = payloads[0] if len(payloads) == 1 else payloads
    print(json.dumps(out, sort_keys=True, indent=2))


def _format_witness(witness) -> str:
    if witness is None:
        return "no witness (every subset acyclic)"
    mask, degree = witness
    verts = ",".join(str(v) for v in bits(mask))
    return f"witness {{{verts}}} in degree {degree}"


def cmd_exact(args) -> int:
    started = time.monotonic()
    payloads = []
    for g in _read_graphs(args):
        res = regularity_exact(g, args.cap)
        payload = {
            "command": "exact",
            "graph6": graph6_encode(g),
            "n": g.n,
            "regularity": res.value,
            "witness": _witness_json(res.witness),
        }
        if args.betti:
            table = betti_table(g, args.cap)
            payload["betti"] = [
                {
                    "i": i,
                    "t": t,
                    "value": value,
                    "witness_subset": _vertices(table.witnesses[(i, t)]),
                }
                for (i, t), value in sorted(table.entries.items())
            ]
        payloads.append(payload)
    if args.json:
        _print_json(payloads)
        return 0
    for payload in payloads:
        line = (
            f"{payload['graph6']} n={payload['n']} "
            f"reg={payload['regularity']}"
        )
        res_witness = payload["witness"]
        if res_witness is not None:
            verts = ",".join(str(v) for v in res_witness["subset"])
            line += f" witness {{{verts}}} degree {res_witness['degree']}"
        print(line)
        if args.betti:
            for row in payload["betti"]:
                verts = ",".join(str(v) for v in row["witness_subset"])
                print(
                    f"  beta[{row['i']},{row['t']}] = {row['value']}"
                    f"  witness {{{verts}}}"
                )
    print(f"# {time.monotonic() - started:.3f}s", file=sys.stderr)
    return 0


def _theorem_json(entry) -> dict:
    return {
        "name": entry.name,
        "applicable": entry.applicable,
        "detail": entry.detail,
        "bound": entry.bound,
        "exact_claim": entry.exact_claim,
        "certificate": (
            certificate_to_json(entry.certificate)
            if entry.certificate is not None
            else None
        ),
    }


def cmd_bound(args) -> int:
    started = time.monotonic()
    strategy = Strategy(args.strategy)
    wanted = set(args.theorems.split(",")) if args.theorems else None
    payloads = []
    reports = []
    for g in _read_graphs(args):
        report = analyze(
            g, genus=args.genus, strategy=strategy, cap=args.cap,
            budget=args.budget,
        )
        reports.append(report)
        entries = [
            e for e in report.theorems if wanted is None or e.name in wanted
        ]
        payloads.append(
            {
                "command": "bound",
                "graph6": report.graph6,
                "n": report.n,
                "edge_count": report.edge_count,
                "recognizers": report.recognizers,
                "theorems": [_theorem_json(e) for e in entries],
                "best_bound": report.best_bound,
                "best_theorem": report.best_theorem,
                "best_certificate": certificate_to_json(report.best_certificate),
                "exact": (
                    {
                        "value": report.exact.value,
                        "witness": _witness_json(report.exact.witness),
                    }
                    if report.exact is not None
                    else None
                ),
                "strategy": strategy.value,
                "genus": args.genus,
            }
        )
    if args.json:
        _print_json(payloads)
        return 0
    for payload, report in zip(payloads, reports):
        print(
            f"{payload['graph6']} n={payload['n']} "
            f"edges={payload['edge_count']}"
        )
        print(
            f"  best bound {payload['best_bound']} via {payload['best_theorem']}"
        )
        if payload["exact"] is not None:
            print(f"  exact {payload['exact']['value']}")
        for entry in payload["theorems"]:
            if entry["applicable"]:
                claim = (
                    f" (exact {entry['exact_claim']})"
                    if entry["exact_claim"]
                    else ""
                )
                print(
                    f"  {entry['name']}: {entry['bound']}{claim}"
                    f" -- {entry['detail']}"
                )
            else:
                print(f"  {entry['name']}: inapplicable ({entry['detail']})")
    print(f"# {time.monotonic() - started:.3f}s", file=sys.stderr)
    return 0


# flags whose names differ from a suite's own parameter names
_VERIFY_FLAG_MAP = {
    "kn2": {"nmax": "mmax"},
    "corollaries": {"samples": "quota"},
}


def cmd_verify(args) -> int:
    started = time.monotonic()
    suite = SUITES[args.suite]
    accepted = set(inspect.signature(suite).parameters)
    rename = _VERIFY_FLAG_MAP.get(args.suite, {})
    kwargs = {}
    for flag in ("seed", "nmax", "samples", "jobs"):
        value = getattr(args, flag)
        if value is None:
            continue
        name = rename.get(flag, flag)
        if name not in accepted:
            print(
                f"error: suite {args.suite} does not take --{flag}",
                file=sys.stderr,
            )
            return 2
        kwargs[name] = value
    result = suite(**kwargs)
    if args.json:
        _print_json(
            [
                {
                    "command": "verify",
                    "suite": result.suite,
                    "passed": result.passed,
                    "checked": result.checked,
                    "failures": result.failures,
                    "failure_count": result.failure_count,
                    "params": result.params,
                }
            ]
        )
    else:
        print(result.summary())
        print(f"# {time.monotonic() - started:.3f}s", file=sys.stderr)
    return 0 if result.passed else 1


_RANDOM_KINDS = {"gnp", "chordal", "bipcomp"}


def _gen_graph(args):
    kind = args.kind
    params = args.params
    ints = []
    for tok in params:
        try:
            ints.append(int(tok))
        except ValueError:
            ints.append(None)

    def need(count, names):
        if len(params) != count:
            raise ValueError(
                f"{kind} takes {count} parameter(s): {' '.join(names)}"
            )

    if kind in _RANDOM_KINDS and args.seed is None:
        raise ValueError(f"{kind} needs --seed")
    if kind == "complete":
        need(1, ["n"])
        return complete(int(params[0])), {"n": int(params[0])}
    if kind == "path":
        need(1, ["n"])
        return path(int(params[0])), {"n": int(params[0])}
    if kind == "cycle":
        need(1, ["n"])
        return cycle(int(params[0])), {"n": int(params[0])}
    if kind == "kn2":
        need(1, ["m"])
        return kn2(int(params[0])), {"m": int(params[0])}
    if kind == "fan":
        need(1, ["i"])
        return fan(int(params[0])), {"i": int(params[0])}
    if kind == "multipartite":
        if not params:
            raise ValueError("multipartite takes part sizes s1 s2 ...")
        sizes = [int(tok) for tok in params]
        return complete_multipartite(sizes), {"sizes": sizes}
    if kind == "gnp":
        need(2, ["n", "p"])
        n, p = int(params[0]), float(params[1])
        return random_gnp(n, p, args.seed), {"n": n, "p": p}
    if kind == "chordal":
        need(1, ["n"])
        n = int(params[0])
        return random_chordal(n, args.seed), {"n": n}
    if kind == "bipcomp":
        need(3, ["nx", "ny", "p"])
        nx_, ny_, p = int(params[0]), int(params[1]), float(params[2])
        return (
            random_bipartite_complement(nx_, ny_, p, args.seed),
            {"nx": nx_, "ny": ny_, "p": p},
        )
    raise ValueError(f"unknown family kind {kind!r}")


def cmd_gen(args) -> int:
    g, params = _gen_graph(args)
    if args.json:
        _print_json(
            [
                {
                    "command": "gen",
                    "kind": args.kind,
                    "params": params,
                    "graph6": graph6_encode(g),
                    "seed": args.seed,
                    "prng": PRNG_NAME if args.kind in _RANDOM_KINDS else None,
                }
            ]
        )
    else:
        print(graph6_encode(g))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cliquereg",
        description=(
            "Exact regularity and certified bounds for non-edge ideals of"
            " graphs"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input_flags(p):
        p.add_argument(
            "input", nargs="?", default="-",
            help="input file, or - for stdin (default)",
        )
        p.add_argument("--g6", help="inline graph6 string")
        p.add_argument(
            "--format", choices=("auto", "graph6", "edgelist"),
            default="auto",
        )
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("exact", help="exact regularity via subset homology")
    add_input_flags(p)
    p.add_argument("--cap", type=int, default=DEFAULT_EXACT_CAP)
    p.add_argument(
        "--betti", action="store_true", help="print the full Betti table"
    )
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("bound", help="certified upper bounds and analysis")
    add_input_flags(p)
    p.add_argument(
        "--strategy",
        choices=[s.value for s in Strategy],
        default=Strategy.CHORDAL_NEIGHBORHOOD_FIRST.value,
    )
    p.add_argument("--genus", type=int)
    p.add_argument("--cap", type=int, default=DEFAULT_EXACT_CAP)
    p.add_argument("--budget", type=int, default=DEFAULT_ENGINE_BUDGET)
    p.add_argument(
        "--theorems", help="comma-separated theorem names to report"
    )
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--seed", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--jobs", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="emit a family graph as graph6")
    p.add_argument(
        "kind",
        choices=(
            "complete", "path", "cycle", "kn2", "fan", "multipartite",
            "gnp", "chordal", "bipcomp",
        ),
    )
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except (ParseError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
