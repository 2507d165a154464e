"""Invariant suites used by the fuzz command and the property tests.

Each function returns a list of human-readable violation strings; an empty
list means every law held.  The checks are deterministic given the rng, so a
seed plus an instance reproduces any reported counterexample exactly.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Optional

from .capacity import (
    in_region,
    outer_bound_deficit,
    require_mch,
    unconstrained_capacity,
)
from .hypergraph import Hypergraph
from .partitions import Partition, mmi, partition_connectivity
from .polymatroid import RankFunction, extreme_point_for_order, verify_contra_polymatroid
from .scheme import rates_of, synthesize, verify
from .simkit import brute_force_secrecy, quantize, run, secrecy_by_rank

__all__ = ["lemma_violations", "scheme_round_trip_violations"]


def lemma_violations(
    h: Hypergraph,
    *,
    rng: Optional[random.Random] = None,
    subadditivity_samples: int = 50,
    check_prop2: bool = False,
) -> list[str]:
    """Check the structural laws an MCH and its fundamental partition obey.

    Covers: the component/degree identities over fundamental blocks, the
    hypertree shape of the merged hypergraph, the incident-restriction degree
    laws, per-block supermodularity, redundancy of constraints on arbitrary
    vertex sets (sampled), entropy monotonicity/submodularity, and agreement
    of the weighted capacity formula with the brute-force partition minimum.
    check_prop2 additionally brute-forces the maximal-subset characterization
    of non-singleton fundamental blocks (expensive; small grounds only).
    """
    require_mch(h)
    rng = rng or random.Random(0)
    bad: list[str] = []
    report = partition_connectivity(h)
    fundamental = report.fundamental
    edge_count = len(h.edges)

    if report.value <= 0:
        bad.append(f"I(H) = {report.value} is not positive on a connected MCH")
    for p in report.optimizers:
        if not fundamental.refines(p):
            bad.append(f"fundamental does not refine optimizer {p.to_sorted_lists()}")

    degree_sum = 0
    for block in fundamental.blocks:
        d = h.degree(block)
        degree_sum += d - 1
        k = h.remove_vertices(block).component_count()
        if k != d:
            bad.append(
                f"block {sorted(block)}: component count {k} != degree {d}"
            )
    if degree_sum != edge_count - 1:
        bad.append(
            f"sum of (degree-1) over blocks is {degree_sum}, expected {edge_count - 1}"
        )

    merged = h.merge(fundamental)
    if not merged.is_hypertree():
        bad.append("merging the fundamental partition did not give a hypertree")

    for block in fundamental.blocks:
        restriction = h.incident_restriction(block)
        label = sorted(block)
        if not restriction.is_mch():
            bad.append(f"incident restriction of {label} is not an MCH")
        for v in sorted(restriction.vertices - block):
            if restriction.degree({v}) != 1:
                bad.append(
                    f"outside vertex {v!r} has degree != 1 in the restriction of {label}"
                )
        if len(block) > 1:
            for v in sorted(block):
                if restriction.degree({v}) < 2:
                    bad.append(
                        f"block vertex {v!r} has degree < 2 in the restriction of {label}"
                    )
            for e in restriction.edges:
                degs = [restriction.degree({v}) for v in sorted(e.members)]
                if not any(d == 1 for d in degs) or not any(d > 1 for d in degs):
                    bad.append(
                        f"edge {e.id!r} of the restriction of {label} lacks a "
                        "degree-1 or a degree->1 member"
                    )

    for block in fundamental.blocks:
        result = verify_contra_polymatroid(RankFunction(h, block, Fraction(1)))
        if not result.ok:
            bad.append(
                f"rank function on block {sorted(block)} failed: {result}"
            )

    bad.extend(_redundancy_violations(h, fundamental, rng, subadditivity_samples))
    bad.extend(_entropy_shape_violations(h))

    cap = unconstrained_capacity(h)
    weighted = mmi(h)
    if cap != weighted.value:
        bad.append(
            f"minimum edge weight {cap} != brute-force weighted minimum {weighted.value}"
        )

    unit = Hypergraph(h.vertices, [(e.id, e.members, 1) for e in h.edges])
    unit_mmi = mmi(unit)
    if unit_mmi.value != report.value or set(unit_mmi.optimizers) != set(
        report.optimizers
    ):
        bad.append("unit-weight weighted minimum disagrees with partition connectivity")

    if check_prop2:
        bad.extend(_prop2_violations(h, report.value, fundamental))
    return bad


def _redundancy_violations(
    h: Hypergraph,
    fundamental: Partition,
    rng: random.Random,
    samples: int,
) -> list[str]:
    """r(B) >= (k(H/B)-1) r_K is implied blockwise: the component defect of an
    arbitrary B never exceeds the sum over blocks of the defects of B's traces."""
    bad: list[str] = []
    names = sorted(h.vertices)
    if len(names) < 2:
        return bad
    for _ in range(samples):
        size = rng.randrange(1, len(names))
        b = frozenset(rng.sample(names, size))
        whole = h.remove_vertices(b).component_count() - 1
        parts = 0
        for block in fundamental.blocks:
            trace = b & block
            if trace:
                parts += h.remove_vertices(trace).component_count() - 1
        if whole > parts:
            bad.append(
                f"defect {whole} of {sorted(b)} exceeds blockwise sum {parts}"
            )
    return bad


def _entropy_shape_violations(h: Hypergraph) -> list[str]:
    """Coverage entropy is monotone and submodular; checked exhaustively."""
    order = sorted(h.vertices)
    n = len(order)
    if n > 10:
        return []
    masks = []
    for e in h.edges:
        m = 0
        for i, v in enumerate(order):
            if v in e.members:
                m |= 1 << i
        masks.append((m, e.weight))
    values = [Fraction(0)] * (1 << n)
    for mask in range(1, 1 << n):
        values[mask] = sum(
            (w for m, w in masks if m & mask), Fraction(0)
        )
    for mask in range(1 << n):
        for i in range(n):
            if not mask >> i & 1 and values[mask | 1 << i] < values[mask]:
                return [f"entropy not monotone at mask {mask} plus {order[i]!r}"]
    for s in range(1 << n):
        for t in range(s, 1 << n):
            if values[s] + values[t] < values[s | t] + values[s & t]:
                return [f"entropy not submodular at masks {s}, {t}"]
    return []


def _prop2_violations(
    h: Hypergraph, value: Fraction, fundamental: Partition
) -> list[str]:
    names = sorted(h.vertices)
    if len(names) > 9:
        return ["prop2 brute force skipped: ground too large"]
    family: list[frozenset[str]] = []
    for size in range(2, len(names) + 1):
        for combo in combinations(names, size):
            sub = frozenset(combo)
            if partition_connectivity(h.induced(sub)).value > value:
                family.append(sub)
    maximal = {
        c for c in family if not any(c < other for other in family)
    }
    expected = {block for block in fundamental.blocks if len(block) > 1}
    if maximal != expected:
        return [
            "maximal subsets with larger connectivity "
            f"{sorted(sorted(c) for c in maximal)} != non-singleton blocks "
            f"{sorted(sorted(c) for c in expected)}"
        ]
    return []


def scheme_round_trip_violations(
    h: Hypergraph,
    key_rate: Fraction,
    orders: Optional[Mapping] = None,
    *,
    simulate_cap: int = 20,
) -> list[str]:
    """Synthesize a scheme and check every consequence the theory promises.

    Covers: verification, per-block rate telescoping against the extreme
    points, region membership, nonnegative outer-bound deficits on the tight
    (B, component-partition) family, the per-block spanning-tree shape of the
    pairing rows, and — when the quantized state space fits under the cap —
    exhaustive zero-error simulation plus agreement of both secrecy oracles.
    """
    rate = Fraction(key_rate)
    bad: list[str] = []
    scheme, traces = synthesize(h, orders)
    report = verify(scheme)
    if not report.ok:
        return [f"synthesized scheme failed verification: {report}"]

    rates = rates_of(scheme, rate)
    fundamental = partition_connectivity(h).fundamental
    if rates.total() != (len(h.edges) - 1) * rate:
        bad.append(
            f"total rate {rates.total()} != (edge count - 1) * key rate"
        )
    for trace in traces:
        fn = RankFunction(h, trace.block, rate)
        point = extreme_point_for_order(fn, trace.order)
        for v, r in point.rates:
            if rates.per_user[v] != r:
                bad.append(
                    f"rate of {v!r} is {rates.per_user[v]}, extreme point says {r}"
                )

    check = in_region(h, rates)
    if not check.ok:
        bad.append(f"synthesized rates fall outside the region: {check}")

    for block in fundamental.blocks:
        for size in range(1, len(block) + 1):
            for combo in combinations(sorted(block), size):
                b = frozenset(combo)
                if len(b) >= len(h.vertices) - 1:
                    continue
                remainder = h.remove_vertices(b)
                if remainder.component_count() < 2:
                    continue
                p = Partition.from_blocks(remainder.components())
                deficit = outer_bound_deficit(h, rates, b, p)
                if deficit < 0:
                    bad.append(
                        f"outer bound violated by {deficit} at B={sorted(b)}"
                    )

    bad.extend(_pairing_tree_violations(scheme, traces))

    shape = quantize(h, rate)
    if shape.total_bits() <= simulate_cap:
        outcome = run(h, scheme, rate, seed=0, exhaustive=True, max_state_bits=simulate_cap)
        if not outcome.zero_error:
            bad.append("exhaustive simulation found a recovery error")
        secrecy = brute_force_secrecy(h, scheme, rate, max_state_bits=simulate_cap)
        rank_verdict = secrecy_by_rank(scheme)
        if secrecy.perfect != rank_verdict:
            bad.append(
                f"secrecy oracles disagree: brute force {secrecy.perfect}, "
                f"rank {rank_verdict}"
            )
        if secrecy.key_entropy_bits != shape.key_length:
            bad.append(
                f"key entropy {secrecy.key_entropy_bits} != key length {shape.key_length}"
            )
        if secrecy.perfect and secrecy.conditional_entropy_bits != shape.key_length:
            bad.append(
                "perfect secrecy but conditional entropy "
                f"{secrecy.conditional_entropy_bits} != key length {shape.key_length}"
            )
    return bad


def _pairing_tree_violations(scheme, traces) -> list[str]:
    """Rows of one block pair that block's representative edges into a tree."""
    bad: list[str] = []
    for trace in traces:
        nodes: set[str] = set()
        pairs: list[tuple[str, str]] = []
        for record in trace.iterations:
            pairs.extend(record.emitted)
            for a, b in record.emitted:
                nodes.add(a)
                nodes.add(b)
        expected = len(trace.representatives)
        label = sorted(trace.block)
        if len(pairs) != expected - 1:
            bad.append(
                f"block {label} emitted {len(pairs)} rows, expected {expected - 1}"
            )
            continue
        if expected == 1:
            continue
        if len(nodes) != expected:
            bad.append(
                f"block {label} rows touch {len(nodes)} edges, expected {expected}"
            )
            continue
        parent = {n: n for n in nodes}

        def find(x: str) -> str:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        acyclic = True
        for a, b in pairs:
            ra, rb = find(a), find(b)
            if ra == rb:
                acyclic = False
                break
            parent[ra] = rb
        if not acyclic or len({find(n) for n in nodes}) != 1:
            bad.append(f"block {label} rows do not form a spanning tree")
    return bad
