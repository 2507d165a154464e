"""Command-line front end.

Every subcommand reads a .hg file (see hgio), computes with the library, and
prints one structured document: flattened `key = value` lines by default, or
JSON with sorted keys under --json.  All numbers are exact rational text.
Exit codes: 0 success, 1 domain error (e.g. the hypergraph is not an MCH),
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import hgio
from .capacity import (
    RateTuple,
    communication_complexity,
    constrained_capacity,
    in_region,
    region_spec,
    unconstrained_capacity,
)
from .errors import HyperkeyError, ParseError
from .hypergraph import Hypergraph
from .partitions import mmi, partition_connectivity
from .properties import lemma_violations, scheme_round_trip_violations
from .scheme import rates_of, synthesize, verify
from .simkit import brute_force_secrecy, quantize, random_mch_with_stats, run

__all__ = ["main", "console_main"]

SCHEMA_VERSION = 1


class UsageError(Exception):
    """Bad flag values discovered after argparse."""


def _flatten(value, prefix: str, out: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        for key in sorted(value):
            sub = f"{prefix}.{key}" if prefix else str(key)
            _flatten(value[key], sub, out)
    elif isinstance(value, (list, tuple)):
        plain = all(
            not isinstance(x, (dict, list, tuple))
            and not (isinstance(x, str) and any(c.isspace() for c in x))
            for x in value
        )
        if plain:
            out.append((prefix, " ".join(_scalar(x) for x in value)))
        else:
            for i, x in enumerate(value):
                _flatten(x, f"{prefix}[{i}]", out)
    else:
        out.append((prefix, _scalar(value)))


def _scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value)
    return str(value)


def render_text(document: dict) -> str:
    pairs: list[tuple[str, str]] = []
    _flatten(document, "", pairs)
    return "\n".join(f"{key} = {val}" for key, val in pairs) + "\n"


def _jsonable(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(x) for x in value]
    if isinstance(value, (set, frozenset)):
        return [_jsonable(x) for x in sorted(value)]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return str(value)


def render_json(document: dict) -> str:
    return json.dumps(_jsonable(document), sort_keys=True, indent=2) + "\n"


def _emit(document: dict, as_json: bool) -> None:
    sys.stdout.write(render_json(document) if as_json else render_text(document))


def _load(path: str) -> Hypergraph:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    try:
        return hgio.parse(text)
    except ParseError:
        raise
    except HyperkeyError as exc:
        # weight-domain failures inside a file are parse failures to the CLI
        raise ParseError(str(exc)) from None


def _rational_flag(text: str, flag: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{flag} expects a rational like 3 or 3/2, got {text!r}")


def _parse_orders(pairs: Sequence[str]) -> dict:
    orders = {}
    for text in pairs:
        if "=" not in text:
            raise UsageError(f"--order expects BLOCK=perm, got {text!r}")
        left, right = text.split("=", 1)
        block = tuple(v for v in left.split(",") if v)
        perm = tuple(v for v in right.split(",") if v)
        if not block or not perm:
            raise UsageError(f"--order expects BLOCK=perm, got {text!r}")
        orders[frozenset(block)] = perm
    return orders


def _parse_rates(text: str) -> dict[str, Fraction]:
    rates: dict[str, Fraction] = {}
    if not text:
        return rates
    for item in text.split(","):
        if ":" not in item:
            raise UsageError(f"--rates expects v:r pairs, got {item!r}")
        vertex, value = item.split(":", 1)
        rates[vertex] = _rational_flag(value, "--rates")
    return rates


def _edge_documents(h: Hypergraph) -> list[dict]:
    return [
        {"id": e.id, "members": sorted(e.members), "weight": e.weight}
        for e in h.edges
    ]


def _cmd_analyze(args) -> dict:
    h = _load(args.file)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "analyze",
        "vertex_count": len(h.vertices),
        "edge_count": len(h.edges),
        "vertices": sorted(h.vertices),
        "edges": _edge_documents(h),
        "component_count": h.component_count(),
        "is_mch": h.is_mch(),
        "is_connected_and_cycle_free": h.is_connected_and_cycle_free(),
    }
    doc["is_hypertree"] = h.is_hypertree() if len(h.vertices) >= 2 else False
    cycle = h.find_berge_cycle()
    if cycle is None:
        doc["berge_cycle"] = "none"
    else:
        walk = []
        for v, e in zip(cycle.vertices, cycle.edges):
            walk.extend([v, e])
        walk.append(cycle.vertices[-1])
        doc["berge_cycle"] = " ".join(walk)
    if len(h.vertices) >= 2:
        unit = partition_connectivity(h)
        weighted = mmi(h)
        doc["partition_connectivity"] = unit.value
        doc["fundamental_partition"] = [
            " ".join(block) for block in unit.fundamental.to_sorted_lists()
        ]
        doc["mmi"] = weighted.value
        doc["mmi_fundamental"] = [
            " ".join(block) for block in weighted.fundamental.to_sorted_lists()
        ]
    return doc


def _cmd_capacity(args) -> dict:
    h = _load(args.file)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "capacity",
        "unconstrained_capacity": unconstrained_capacity(h),
        "communication_complexity": communication_complexity(h),
    }
    if args.total_rate is not None:
        budget = _rational_flag(args.total_rate, "--total-rate")
        doc["total_rate"] = budget
        doc["constrained_capacity"] = constrained_capacity(h, budget)
    return doc


def _cmd_region(args) -> dict:
    h = _load(args.file)
    spec = region_spec(h)
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "region",
        "key_cap": spec.key_cap,
        "generator_blocks": [" ".join(sorted(b)) for b in spec.generator_blocks],
        "constraints": [
            {"subset": sorted(b), "coefficient": coeff}
            for b, coeff in spec.constraints
        ],
    }


def _cmd_check(args) -> dict:
    h = _load(args.file)
    key_rate = _rational_flag(args.key_rate, "--key-rate")
    given = _parse_rates(args.rates)
    per_user = {v: given.get(v, Fraction(0)) for v in h.vertices}
    extra = set(given) - h.vertices
    if extra:
        raise UsageError(f"--rates names unknown vertices: {sorted(extra)}")
    rt = RateTuple(key_rate=key_rate, per_user=per_user)
    outcome = in_region(h, rt)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "check",
        "key_rate": key_rate,
        "rates": {v: per_user[v] for v in sorted(per_user)},
        "in_region": outcome.ok,
    }
    if not outcome.ok:
        if outcome.key_cap_violated:
            doc["violated"] = "key_cap"
        else:
            subset, coeff = outcome.violated
            doc["violated"] = {
                "subset": sorted(subset),
                "coefficient": coeff,
                "required": coeff * key_rate,
                "actual": rt.over(subset),
            }
    return doc


def _scheme_document(h: Hypergraph, scheme, traces, key_rate: Fraction) -> dict:
    rates = rates_of(scheme, key_rate)
    report = verify(scheme)
    rows = []
    for (a, b), att in zip(scheme.row_pairs(), scheme.attributions):
        rows.append(
            {
                "pair": f"{a}^{b}",
                "user": att.vertex,
                "block": " ".join(sorted(att.block)),
                "step": att.step,
            }
        )
    return {
        "edge_order": list(scheme.edge_order),
        "key_edge": scheme.key_edge,
        "key_rate": key_rate,
        "row_count": len(scheme.rows),
        "rows": rows,
        "recovery": {v: e for v, e in scheme.recovery},
        "rates": {v: rates.per_user[v] for v in sorted(rates.per_user)},
        "total_rate": rates.total(),
        "verified": report.ok,
        "blocks": [
            {
                "block": " ".join(sorted(t.block)),
                "order": list(t.order),
                "representatives": sorted(t.representatives),
            }
            for t in traces
        ],
    }


def _cmd_scheme(args) -> dict:
    h = _load(args.file)
    key_rate = (
        _rational_flag(args.key_rate, "--key-rate")
        if args.key_rate is not None
        else unconstrained_capacity(h)
    )
    orders = _parse_orders(args.order or [])
    scheme, traces = synthesize(h, orders or None)
    doc = {"schema_version": SCHEMA_VERSION, "command": "scheme"}
    doc.update(_scheme_document(h, scheme, traces, key_rate))
    if args.emit_matrix:
        doc["matrix"] = [
            f"{a}^{b} @user={att.vertex}"
            for (a, b), att in zip(scheme.row_pairs(), scheme.attributions)
        ]
    return doc


def _cmd_simulate(args) -> dict:
    h = _load(args.file)
    key_rate = (
        _rational_flag(args.key_rate, "--key-rate")
        if args.key_rate is not None
        else unconstrained_capacity(h)
    )
    orders = _parse_orders(args.order or [])
    scheme, _ = synthesize(h, orders or None)
    shape = quantize(h, key_rate)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "simulate",
        "key_rate": key_rate,
        "scale": shape.scale,
        "key_length": shape.key_length,
        "edge_lengths": {eid: n for eid, n in shape.edge_lengths},
        "exhaustive": bool(args.exhaustive),
    }
    if args.exhaustive:
        outcome = run(h, scheme, key_rate, seed=args.seed, exhaustive=True)
        doc["trials"] = 1
        doc["realizations_checked"] = outcome.realizations_checked
        doc["zero_error"] = outcome.zero_error
        doc["secrecy_rank_ok"] = outcome.secrecy_rank_ok
        secrecy = brute_force_secrecy(h, scheme, key_rate)
        doc["perfect_secrecy"] = secrecy.perfect
        doc["key_entropy_bits"] = secrecy.key_entropy_bits
        if secrecy.conditional_entropy_bits is not None:
            doc["conditional_entropy_bits"] = secrecy.conditional_entropy_bits
    else:
        trials = max(1, args.trials)
        all_zero = True
        first: Optional[dict] = None
        checked = 0
        for t in range(trials):
            outcome = run(h, scheme, key_rate, seed=args.seed + t)
            checked += outcome.realizations_checked
            all_zero = all_zero and outcome.zero_error
            if first is None:
                first = {
                    "seed": outcome.seed,
                    "realized": {eid: val for eid, val in outcome.realized},
                    "messages": list(outcome.messages),
                    "recovered": {v: k for v, k in outcome.recovered},
                    "key": outcome.key,
                }
        doc["trials"] = trials
        doc["realizations_checked"] = checked
        doc["zero_error"] = all_zero
        doc["secrecy_rank_ok"] = outcome.secrecy_rank_ok
        doc["first_trial"] = first
    return doc


def _cmd_fuzz(args) -> tuple[dict, int]:
    if not 2 <= args.vertices <= 8:
        raise UsageError("--vertices must be between 2 and 8")
    if not 1 <= args.edges <= 6:
        raise UsageError("--edges must be between 1 and 6")
    if args.max_weight < 1:
        raise UsageError("--max-weight must be at least 1")
    cases = max(1, args.cases)
    instances = []
    counterexample = None
    for k in range(cases):
        h, stats = random_mch_with_stats(
            args.vertices, args.edges, args.max_weight, args.seed + k
        )
        violations = lemma_violations(h)
        if not violations:
            cap = unconstrained_capacity(h)
            for rate in (cap, cap / 2):
                violations = scheme_round_trip_violations(h, rate)
                if violations:
                    break
        instances.append(
            {
                "seed": args.seed + k,
                "attempts": stats.attempts,
                "edge_count": len(h.edges),
                "vertex_count": len(h.vertices),
                "ok": not violations,
            }
        )
        if violations and counterexample is None:
            counterexample = {
                "seed": args.seed + k,
                "violations": violations,
                "hypergraph": hgio.serialize(h),
            }
            break
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "fuzz",
        "cases_requested": cases,
        "cases_run": len(instances),
        "instances": instances,
        "ok": counterexample is None,
    }
    if counterexample is not None:
        doc["counterexample"] = counterexample
    return doc, 0 if counterexample is None else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperkey",
        description="Secret-key capacities and XOR discussion schemes for "
        "hypergraphical sources",
    )
    parser.add_argument("--json", action="store_true", help="render JSON output")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("analyze", help="structure, connectivity, partitions")
    p.add_argument("file")

    p = sub.add_parser("capacity", help="capacity formulas")
    p.add_argument("file")
    p.add_argument("--total-rate", default=None, help="discussion budget R")

    p = sub.add_parser("region", help="achievable rate region constraints")
    p.add_argument("file")

    p = sub.add_parser("check", help="test a rate tuple against the region")
    p.add_argument("file")
    p.add_argument("--key-rate", required=True)
    p.add_argument("--rates", default="", help="comma list v:r, others 0")

    p = sub.add_parser("scheme", help="synthesize the XOR discussion scheme")
    p.add_argument("file")
    p.add_argument("--key-rate", default=None)
    p.add_argument("--order", action="append", help="BLOCK=perm, repeatable")
    p.add_argument("--emit-matrix", action="store_true")

    p = sub.add_parser("simulate", help="run the protocol on sampled bits")
    p.add_argument("file")
    p.add_argument("--key-rate", default=None)
    p.add_argument("--order", action="append", help="BLOCK=perm, repeatable")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--trials", type=int, default=1)

    p = sub.add_parser("fuzz", help="random MCHs through the property suite")
    p.add_argument("--vertices", type=int, default=6)
    p.add_argument("--edges", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=20)
    p.add_argument("--max-weight", type=int, default=3)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2

    handlers = {
        "analyze": _cmd_analyze,
        "capacity": _cmd_capacity,
        "region": _cmd_region,
        "check": _cmd_check,
        "scheme": _cmd_scheme,
        "simulate": _cmd_simulate,
    }
    try:
        if args.subcommand == "fuzz":
            doc, code = _cmd_fuzz(args)
        else:
            doc = handlers[args.subcommand](args)
            code = 0
    except (UsageError, ParseError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except HyperkeyError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    _emit(doc, args.json)
    return code


def console_main() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    console_main()
