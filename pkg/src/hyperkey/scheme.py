"""Synthesis and verification of the linear XOR discussion scheme.

The scheme broadcasts, per fundamental-partition block and per vertex of that
block in a chosen order, a chain of XORs of truncated edge variables.  At a
vertex i the representatives it shares an edge with split into reachability
classes once the order prefix is deleted; one edge is picked per class (least
representative, then least edge id) and consecutive picks are XORed, giving
one fewer message than classes.  Over the whole hypergraph this emits exactly
(edge count - 1) weight-two rows whose matrix has full row rank, and adding
any single edge indicator raises the rank to the edge count, which is at once
the zero-error recovery condition for every vertex and perfect secrecy of the
key edge: weight-two rows can never sum to a unit vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Optional, Sequence

from . import gf2
from .capacity import RateTuple, require_mch
from .errors import (
    NotFundamentalBlock,
    RankDefect,
    SubsetOutsideBlock,
    VertexNotInBlock,
    WeightsNotConvex,
)
from .hypergraph import Hypergraph
from .partitions import Partition, partition_connectivity

__all__ = [
    "RowAttribution",
    "IterationRecord",
    "BlockTrace",
    "DiscussionScheme",
    "VerificationReport",
    "CompositeScheme",
    "representatives",
    "shared_representatives",
    "synthesize",
    "verify",
    "rates_of",
    "compose_time_shared",
]


@dataclass(frozen=True)
class RowAttribution:
    """Which vertex broadcast a row, in which block, at which step (1-based)."""

    vertex: str
    block: frozenset[str]
    step: int


@dataclass(frozen=True)
class IterationRecord:
    """One vertex's turn: the representatives it shares an edge with, their
    classes after deleting the order prefix, and the XOR pairs emitted."""

    vertex: str
    shared: frozenset[str]
    classes: tuple[frozenset[str], ...]
    emitted: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class BlockTrace:
    block: frozenset[str]
    order: tuple[str, ...]
    representatives: frozenset[str]
    iterations: tuple[IterationRecord, ...]


@dataclass(frozen=True)
class DiscussionScheme:
    """A linear non-interactive discussion: weight-two XOR rows over edges.

    edge_order fixes the column layout (edge ids, lexicographic); rows are
    bitmasks over those columns; attributions align with rows; key_edge is the
    edge whose truncated variable is the key; recovery maps every vertex to
    the incident edge it solves the system with.
    """

    edge_order: tuple[str, ...]
    rows: tuple[int, ...]
    attributions: tuple[RowAttribution, ...]
    key_edge: str
    recovery: tuple[tuple[str, str], ...]

    @property
    def mu(self) -> int:
        return len(self.edge_order)

    def column(self, eid: str) -> int:
        return self.edge_order.index(eid)

    def row_pairs(self) -> tuple[tuple[str, str], ...]:
        out = []
        for mask in self.rows:
            ids = [self.edge_order[i] for i in range(self.mu) if mask >> i & 1]
            out.append(tuple(ids))
        return tuple(out)

    def recovery_map(self) -> dict[str, str]:
        return dict(self.recovery)

    def vertices(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.recovery)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of every scheme check; verification never raises.

    ok is the conjunction of: the row count is edge count minus one, every row
    has Hamming weight exactly two over valid columns, the matrix has full row
    rank, appending any single-edge indicator reaches full column rank (every
    vertex can recover every edge variable), and the key indicator in
    particular is outside the row space (perfect secrecy of the key).
    """

    ok: bool
    row_count_ok: bool
    row_weights_ok: bool
    bad_rows: tuple[int, ...]
    matrix_rank: int
    rank_ok: bool
    recovery_ok: bool
    unrecoverable_edges: tuple[str, ...]
    secrecy_ok: bool


def representatives(
    h: Hypergraph, c: Iterable[str], *, fundamental: Optional[Partition] = None
) -> frozenset[str]:
    """One degree-one vertex per component of the incident restriction of c
    with c deleted; the least vertex of each component is chosen."""
    block = frozenset(str(v) for v in c)
    _require_fundamental_block(h, block, fundamental)
    restriction = h.incident_restriction(block)
    return _representatives_of_restriction(restriction, block)


def _require_fundamental_block(
    h: Hypergraph, block: frozenset[str], fundamental: Optional[Partition]
) -> None:
    require_mch(h)
    if fundamental is None:
        fundamental = partition_connectivity(h).fundamental
    if block not in set(fundamental.blocks):
        raise NotFundamentalBlock(
            f"{sorted(block)} is not a block of the fundamental partition"
        )


def _representatives_of_restriction(
    restriction: Hypergraph, block: frozenset[str]
) -> frozenset[str]:
    outside = restriction.remove_vertices(block & restriction.vertices)
    reps = frozenset(min(comp) for comp in outside.components())
    for v in reps:
        if restriction.degree({v}) != 1:  # pragma: no cover - theorem guard
            raise RankDefect(f"representative {v!r} is not degree one")
    return reps


def shared_representatives(
    h: Hypergraph,
    c: Iterable[str],
    i: str,
    removed: Iterable[str],
    *,
    fundamental: Optional[Partition] = None,
) -> tuple[frozenset[str], ...]:
    """Classes of the representatives sharing an edge with i, grouped by
    reachability once `removed` (an order prefix containing i) is deleted.

    Classes are returned sorted by their least member.
    """
    block = frozenset(str(v) for v in c)
    vertex = str(i)
    prefix = frozenset(str(v) for v in removed)
    _require_fundamental_block(h, block, fundamental)
    if vertex not in block:
        raise VertexNotInBlock(f"{vertex!r} is not in block {sorted(block)}")
    if not prefix <= block or vertex not in prefix:
        raise SubsetOutsideBlock(
            "removed must be a subset of the block containing the vertex"
        )
    restriction = h.incident_restriction(block)
    reps = _representatives_of_restriction(restriction, block)
    return _classes(restriction, reps, vertex, prefix)


def _classes(
    restriction: Hypergraph,
    reps: frozenset[str],
    vertex: str,
    prefix: frozenset[str],
) -> tuple[frozenset[str], ...]:
    shared = frozenset(
        v
        for v in reps
        if any(
            vertex in e.members and v in e.members for e in restriction.edges
        )
    )
    if not shared:
        return ()
    remaining = restriction.remove_vertices(prefix & restriction.vertices)
    groups: dict[frozenset[str], set[str]] = {}
    for comp in remaining.components():
        hits = shared & comp
        if hits:
            groups[comp] = set(hits)
    classes = [frozenset(g) for g in groups.values()]
    classes.sort(key=min)
    return tuple(classes)


def _normalize_orders(
    fundamental: Partition,
    orders: Optional[Mapping] = None,
) -> dict[frozenset[str], tuple[str, ...]]:
    table: dict[frozenset[str], tuple[str, ...]] = {
        block: tuple(sorted(block)) for block in fundamental.blocks
    }
    if orders:
        known = set(table)
        for key, seq in orders.items():
            block = frozenset(str(v) for v in key)
            if block not in known:
                raise NotFundamentalBlock(
                    f"{sorted(block)} is not a block of the fundamental partition"
                )
            perm = tuple(str(v) for v in seq)
            if frozenset(perm) != block or len(perm) != len(block):
                raise VertexNotInBlock(
                    f"order {perm!r} is not a permutation of {sorted(block)}"
                )
            table[block] = perm
    return table


def synthesize(
    h: Hypergraph, orders: Optional[Mapping] = None
) -> tuple[DiscussionScheme, tuple[BlockTrace, ...]]:
    """Build the scheme for an MCH source with the given per-block orders.

    orders maps a block (any iterable of its vertices) to a permutation of it;
    blocks not mentioned use ascending order.  Rows appear block by block in
    canonical block order and, within a block, in the order's sequence.
    """
    require_mch(h)
    fundamental = partition_connectivity(h).fundamental
    table = _normalize_orders(fundamental, orders)
    edge_order = tuple(sorted(e.id for e in h.edges))
    column = {eid: k for k, eid in enumerate(edge_order)}

    rows: list[int] = []
    attributions: list[RowAttribution] = []
    traces: list[BlockTrace] = []
    for block in fundamental.blocks:
        restriction = h.incident_restriction(block)
        reps = _representatives_of_restriction(restriction, block)
        order = table[block]
        records: list[IterationRecord] = []
        prefix: set[str] = set()
        for step, vertex in enumerate(order, start=1):
            prefix.add(vertex)
            classes = _classes(restriction, reps, vertex, frozenset(prefix))
            picked: list[str] = []
            for cls in classes:
                rep = min(cls)
                eid = min(
                    e.id
                    for e in restriction.edges
                    if vertex in e.members and rep in e.members
                )
                picked.append(eid)
            emitted: list[tuple[str, str]] = []
            for a, b in zip(picked, picked[1:]):
                emitted.append((a, b))
                rows.append(1 << column[a] | 1 << column[b])
                attributions.append(
                    RowAttribution(vertex=vertex, block=block, step=step)
                )
            records.append(
                IterationRecord(
                    vertex=vertex,
                    shared=frozenset().union(*classes) if classes else frozenset(),
                    classes=classes,
                    emitted=tuple(emitted),
                )
            )
        traces.append(
            BlockTrace(
                block=block,
                order=order,
                representatives=reps,
                iterations=tuple(records),
            )
        )

    recovery = tuple(
        (v, min(e.id for e in h.edges if v in e.members))
        for v in sorted(h.vertices)
    )
    scheme = DiscussionScheme(
        edge_order=edge_order,
        rows=tuple(rows),
        attributions=tuple(attributions),
        key_edge=edge_order[0],
        recovery=recovery,
    )
    if len(rows) != len(edge_order) - 1:
        raise RankDefect(
            f"synthesized {len(rows)} rows for {len(edge_order)} edges"
        )
    report = verify(scheme)
    if not report.ok:
        raise RankDefect(f"synthesized scheme failed verification: {report}")
    return scheme, tuple(traces)


def verify(scheme: DiscussionScheme) -> VerificationReport:
    """Check every scheme property by exact GF(2) rank; never raises."""
    mu = scheme.mu
    valid = (1 << mu) - 1
    row_count_ok = len(scheme.rows) == mu - 1 and len(scheme.attributions) == len(
        scheme.rows
    )
    bad_rows = tuple(
        idx
        for idx, mask in enumerate(scheme.rows)
        if mask & ~valid or bin(mask & valid).count("1") != 2
    )
    row_weights_ok = not bad_rows
    matrix_rank = gf2.rank(scheme.rows)
    rank_ok = matrix_rank == mu - 1
    unrecoverable = tuple(
        scheme.edge_order[i]
        for i in range(mu)
        if gf2.rank_with(scheme.rows, 1 << i) != mu
    )
    recovery_ok = not unrecoverable
    key_bit = 1 << scheme.edge_order.index(scheme.key_edge)
    secrecy_ok = gf2.rank_with(scheme.rows, key_bit) == matrix_rank + 1
    ok = row_count_ok and row_weights_ok and rank_ok and recovery_ok and secrecy_ok
    return VerificationReport(
        ok=ok,
        row_count_ok=row_count_ok,
        row_weights_ok=row_weights_ok,
        bad_rows=bad_rows,
        matrix_rank=matrix_rank,
        rank_ok=rank_ok,
        recovery_ok=recovery_ok,
        unrecoverable_edges=unrecoverable,
        secrecy_ok=secrecy_ok,
    )


def rates_of(scheme: DiscussionScheme, key_rate: Fraction) -> RateTuple:
    """Discussion rate per vertex: its row count times the key rate."""
    counts: dict[str, int] = {v: 0 for v in scheme.vertices()}
    for att in scheme.attributions:
        counts[att.vertex] += 1
    rate = Fraction(key_rate)
    return RateTuple(
        key_rate=rate,
        per_user={v: n * rate for v, n in counts.items()},
    )


@dataclass(frozen=True)
class CompositeScheme:
    """A time-shared mixture of schemes: run part j for multipliers[j] blocks
    out of every blocklength_unit, so rates combine convexly."""

    parts: tuple[tuple[Fraction, DiscussionScheme], ...]
    blocklength_unit: int
    multipliers: tuple[int, ...]

    def rates(self, key_rate: Fraction) -> RateTuple:
        rate = Fraction(key_rate)
        combined: dict[str, Fraction] = {}
        for weight, scheme in self.parts:
            part = rates_of(scheme, rate)
            for v, r in part.per_user.items():
                combined[v] = combined.get(v, Fraction(0)) + weight * r
        return RateTuple(key_rate=rate, per_user=combined)


def compose_time_shared(
    h: Hypergraph, plan: Sequence[tuple[Fraction, Optional[Mapping]]]
) -> CompositeScheme:
    """Time share several order choices with positive weights summing to one."""
    if not plan:
        raise WeightsNotConvex("the plan must contain at least one entry")
    weights = [Fraction(w) for w, _ in plan]
    if any(w <= 0 for w in weights) or sum(weights) != 1:
        raise WeightsNotConvex(
            "weights must be positive rationals summing to one"
        )
    parts = []
    for (weight, orders), w in zip(plan, weights):
        scheme, _ = synthesize(h, orders)
        parts.append((w, scheme))
    unit = lcm(*(w.denominator for w in weights))
    multipliers = tuple(int(w * unit) for w in weights)
    return CompositeScheme(
        parts=tuple(parts), blocklength_unit=unit, multipliers=multipliers
    )
