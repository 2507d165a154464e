"""Partitions of vertex sets and partition-based connectivity functionals.

Two functionals share one minimization core: the unit-count version (crossing
count over proper partitions, normalized by block count minus one) and the
weighted version driven by the coverage entropy of the source (an edge
contributes its weight to every vertex set its members meet).  Both attain
their minimum on a unique finest partition; that partition is computed as the
meet of all minimizers and the meet-closure is checked, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator, Optional

from .errors import (
    Disconnected,
    EmptyVertexSet,
    GroundTooLarge,
    InvalidPartition,
    NotCycleFree,
    SemiLatticeViolation,
    UnknownVertex,
)
from .hypergraph import Hypergraph

__all__ = [
    "Partition",
    "ConnectivityReport",
    "enumerate_partitions",
    "crossing_count",
    "entropy",
    "partition_connectivity",
    "mmi",
    "chain_order",
]


@dataclass(frozen=True)
class Partition:
    """A partition of a ground set, blocks stored in canonical order.

    Canonical order sorts blocks by their smallest member (lexicographically).
    Construct via from_blocks / singletons so the order and the partition
    property are always enforced.
    """

    blocks: tuple[frozenset[str], ...]

    @staticmethod
    def from_blocks(
        blocks: Iterable[Iterable[str]], ground: Optional[frozenset[str]] = None
    ) -> "Partition":
        blist = [frozenset(str(v) for v in b) for b in blocks]
        if any(not b for b in blist):
            raise InvalidPartition("partition blocks must be nonempty")
        union: set[str] = set()
        total = 0
        for b in blist:
            union |= b
            total += len(b)
        if total != len(union):
            raise InvalidPartition("partition blocks must be disjoint")
        if ground is not None and union != ground:
            raise InvalidPartition(
                f"blocks cover {sorted(union)} but the ground set is {sorted(ground)}"
            )
        blist.sort(key=min)
        return Partition(tuple(blist))

    @staticmethod
    def singletons(ground: Iterable[str]) -> "Partition":
        return Partition.from_blocks([{v} for v in ground])

    def ground(self) -> frozenset[str]:
        out: set[str] = set()
        for b in self.blocks:
            out |= b
        return frozenset(out)

    def __iter__(self) -> Iterator[frozenset[str]]:
        return iter(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def is_singletons(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def block_of(self, v: str) -> frozenset[str]:
        for b in self.blocks:
            if v in b:
                return b
        raise KeyError(v)

    def refines(self, other: "Partition") -> bool:
        """True when every block of self sits inside a block of other."""
        return all(any(b <= c for c in other.blocks) for b in self.blocks)

    def common_refinement(self, other: "Partition") -> "Partition":
        blocks = [
            b & c for b in self.blocks for c in other.blocks if b & c
        ]
        return Partition.from_blocks(blocks)

    def to_sorted_lists(self) -> list[list[str]]:
        return [sorted(b) for b in self.blocks]


def enumerate_partitions(
    ground: Iterable[str], proper_only: bool = False, *, max_ground: int = 12
) -> Iterator[Partition]:
    """Yield every partition of ground exactly once, in restricted-growth
    order over the lexicographically sorted elements.

    With proper_only, the one-block partition is skipped.  Ground sets larger
    than max_ground are refused (the count grows as the Bell numbers).
    """
    elems = sorted(frozenset(str(v) for v in ground))
    n = len(elems)
    if n == 0:
        raise EmptyVertexSet("cannot partition an empty ground set")
    if n > max_ground:
        raise GroundTooLarge(
            f"partition enumeration over {n} elements exceeds cap {max_ground}"
        )
    # Restricted growth strings: a[0] = 0, a[i] <= max(a[:i]) + 1.
    code = [0] * n
    while True:
        nblocks = max(code) + 1
        if not (proper_only and nblocks == 1):
            blocks: list[set[str]] = [set() for _ in range(nblocks)]
            for i, b in enumerate(code):
                blocks[b].add(elems[i])
            yield Partition.from_blocks(blocks)
        # advance to the next restricted growth string
        i = n - 1
        while i > 0:
            prefix_max = max(code[:i])
            if code[i] <= prefix_max:
                code[i] += 1
                for j in range(i + 1, n):
                    code[j] = 0
                break
            i -= 1
        else:
            return


def _require_partition_of(h: Hypergraph, p: Partition) -> None:
    if p.ground() != h.vertices:
        raise InvalidPartition(
            f"partition covers {sorted(p.ground())} but the vertex set is "
            f"{sorted(h.vertices)}"
        )


def crossing_count(h: Hypergraph, p: Partition) -> int:
    """Sum of block degrees minus the edge count.

    Each edge contributes (number of blocks it meets) - 1, so the total counts
    block crossings: it is zero exactly when no edge crosses blocks.
    """
    _require_partition_of(h, p)
    return sum(h.degree(b) for b in p.blocks) - len(h.edges)


def entropy(h: Hypergraph, b: Iterable[str]) -> Fraction:
    """Coverage entropy of a vertex set: total weight of edges meeting it."""
    bset = frozenset(b)
    foreign = bset - h.vertices
    if foreign:
        raise UnknownVertex(f"unknown vertices: {sorted(foreign)}")
    if not bset:
        return Fraction(0)
    return sum(
        (e.weight for e in h.edges if not e.members.isdisjoint(bset)),
        Fraction(0),
    )


@dataclass(frozen=True)
class ConnectivityReport:
    """Minimum of a partition functional plus where it is attained.

    value       -- the minimum over proper partitions (exact rational)
    optimizers  -- every proper partition attaining it, in enumeration order
    fundamental -- the unique finest optimizer (meet of all optimizers)
    """

    value: Fraction
    optimizers: tuple[Partition, ...]
    fundamental: Partition


def _minimize_partition_functional(
    h: Hypergraph,
    edge_weights: tuple[Fraction, ...],
    *,
    max_ground: int,
) -> ConnectivityReport:
    """Minimize (sum of block coverage sums - total) / (|P| - 1) over proper
    partitions, where a block's coverage sum adds the weight of every edge
    meeting it.  Equivalently the numerator is sum_e w_e * (blocks met - 1).

    Runs on restricted-growth codes over bitmasks with the value kept as an
    integer pair, so the enumeration order matches enumerate_partitions while
    skipping per-partition set and Fraction allocation.
    """
    elems = sorted(h.vertices)
    n = len(elems)
    if n < 2:
        raise EmptyVertexSet("connectivity functionals need at least two vertices")
    if n > max_ground:
        raise GroundTooLarge(
            f"partition enumeration over {n} elements exceeds cap {max_ground}"
        )
    index = {v: i for i, v in enumerate(elems)}
    scale = 1
    for w in edge_weights:
        scale = scale * w.denominator // gcd(scale, w.denominator)
    weighted_masks = [
        (sum(1 << index[v] for v in e.members), int(w * scale))
        for e, w in zip(h.edges, edge_weights)
    ]

    best_num: Optional[int] = None
    best_den = 1
    opt_codes: list[tuple[int, ...]] = []
    code = [0] * n
    prefix_max = [0] * n  # prefix_max[i] = max(code[:i]) for i >= 1
    masks = [0] * n
    while True:
        last = code[n - 1]
        top = prefix_max[n - 1]
        nblocks = (top if top >= last else last) + 1
        if nblocks > 1:
            for k in range(nblocks):
                masks[k] = 0
            for i in range(n):
                masks[code[i]] |= 1 << i
            num = 0
            for em, w in weighted_masks:
                crossed = -1
                for k in range(nblocks):
                    if masks[k] & em:
                        crossed += 1
                num += w * crossed
            den = (nblocks - 1) * scale
            if best_num is None or num * best_den < best_num * den:
                best_num, best_den = num, den
                opt_codes = [tuple(code)]
            elif num * best_den == best_num * den:
                opt_codes.append(tuple(code))
        # advance to the next restricted growth string
        i = n - 1
        while i > 0 and code[i] > prefix_max[i]:
            i -= 1
        if i == 0:
            break
        code[i] += 1
        grown = prefix_max[i] if prefix_max[i] >= code[i] else code[i]
        for j in range(i + 1, n):
            code[j] = 0
            prefix_max[j] = grown
    assert best_num is not None and opt_codes

    def materialize(c: tuple[int, ...]) -> Partition:
        blocks: list[set[str]] = [set() for _ in range(max(c) + 1)]
        for i, b in enumerate(c):
            blocks[b].add(elems[i])
        return Partition.from_blocks(blocks)

    best = Fraction(best_num, best_den)
    opts = [materialize(c) for c in opt_codes]
    # The minimizers form a lower semi-lattice under refinement.  Fold the
    # meet across all of them and insist every intermediate meet is itself a
    # minimizer; a violation means the assumption broke, and that must fail
    # loudly rather than return a guess.
    opt_set = set(opts)
    meet = opts[0]
    for p in opts[1:]:
        meet = meet.common_refinement(p)
        if meet not in opt_set:
            raise SemiLatticeViolation(
                "minimizer set is not closed under common refinement"
            )
    return ConnectivityReport(value=best, optimizers=tuple(opts), fundamental=meet)


@lru_cache(maxsize=2048)
def _unit_connectivity(h: Hypergraph, max_ground: int) -> ConnectivityReport:
    return _minimize_partition_functional(
        h, tuple(Fraction(1) for _ in h.edges), max_ground=max_ground
    )


@lru_cache(maxsize=2048)
def _weighted_connectivity(h: Hypergraph, max_ground: int) -> ConnectivityReport:
    return _minimize_partition_functional(
        h, tuple(e.weight for e in h.edges), max_ground=max_ground
    )


def partition_connectivity(h: Hypergraph, *, max_ground: int = 12) -> ConnectivityReport:
    """Unit-count connectivity: min over proper partitions of
    crossing_count / (|P| - 1).

    Zero exactly when h is disconnected, in which case the fundamental
    partition is the partition into connected components.  Reports are
    cached per hypergraph value (everything involved is immutable).
    """
    return _unit_connectivity(h, max_ground)


def mmi(
    h: Hypergraph,
    restrict_to: Optional[Iterable[str]] = None,
    *,
    max_ground: int = 12,
) -> ConnectivityReport:
    """Weighted shared-information functional over proper partitions.

    For each proper partition P of the ground set, the value is
    (sum of block coverage entropies - total entropy) / (|P| - 1); the report
    carries the minimum, all minimizers, and the finest minimizer.  With
    restrict_to, the hypergraph is first restricted to that vertex set.
    """
    if restrict_to is not None:
        target = frozenset(str(v) for v in restrict_to)
        if not target:
            raise EmptyVertexSet("cannot restrict to an empty vertex set")
        hh = h.induced(target)
    else:
        hh = h
    return _weighted_connectivity(hh, max_ground)


def chain_order(
    h: Hypergraph, p: Partition, mode: str = "at-least-one"
) -> list[frozenset[str]]:
    """Order the blocks of p into a chain over shared edges.

    mode="at-least-one": returns C_1..C_q where each C_i shares at least one
    edge with the union of C_{i+1}..C_q.  Built back to front: the
    lexicographically least block is placed last, then each step prepends the
    least remaining block sharing an edge with what is already placed.
    Requires h connected.

    mode="exactly-one": returns C_1..C_q where each C_{i+1} shares exactly one
    edge with the union of C_1..C_i, built front to back with the same least-
    block rule.  Achievable precisely when the block-merged hypergraph is
    connected and cycle-free, so that is what is checked (for the singleton
    partition this is cycle-freeness of h itself).
    """
    _require_partition_of(h, p)
    if not h.is_connected():
        raise Disconnected("chain orders require a connected hypergraph")
    blocks = list(p.blocks)
    if len(blocks) == 1:
        return [blocks[0]]

    def shared_edges(block: frozenset[str], union: set[str]) -> list[str]:
        return [
            e.id
            for e in h.edges
            if not e.members.isdisjoint(block) and not e.members.isdisjoint(union)
        ]

    if mode == "at-least-one":
        placed = [blocks[0]]  # canonical least block goes last
        covered = set(blocks[0])
        remaining = blocks[1:]
        while remaining:
            pick = None
            for cand in remaining:
                if shared_edges(cand, covered):
                    pick = cand
                    break
            if pick is None:  # pragma: no cover - h is connected
                raise Disconnected("no remaining block shares an edge")
            remaining.remove(pick)
            placed.insert(0, pick)
            covered |= pick
        order = placed
    elif mode == "exactly-one":
        if h.merge(p).find_berge_cycle() is not None:
            raise NotCycleFree(
                "exactly-one chaining needs a cycle-free block structure"
            )
        order = [blocks[0]]
        covered = set(blocks[0])
        remaining = blocks[1:]
        while remaining:
            pick = None
            for cand in remaining:
                cnt = len(shared_edges(cand, covered))
                if cnt:
                    pick = cand
                    break
            if pick is None:  # pragma: no cover - h is connected
                raise Disconnected("no remaining block shares an edge")
            remaining.remove(pick)
            order.append(pick)
            covered |= pick
    else:
        raise ValueError(f"unknown chain mode {mode!r}")

    _verify_chain(h, order, mode)
    return order


def _verify_chain(h: Hypergraph, order: list[frozenset[str]], mode: str) -> None:
    """Post-check the sharing condition the construction promises."""
    for i in range(len(order) - 1):
        if mode == "at-least-one":
            block = order[i]
            rest: set[str] = set()
            for b in order[i + 1 :]:
                rest |= b
            count = sum(
                1
                for e in h.edges
                if not e.members.isdisjoint(block) and not e.members.isdisjoint(rest)
            )
            ok = count >= 1
        else:
            block = order[i + 1]
            prefix: set[str] = set()
            for b in order[: i + 1]:
                prefix |= b
            count = sum(
                1
                for e in h.edges
                if not e.members.isdisjoint(block) and not e.members.isdisjoint(prefix)
            )
            ok = count == 1
        if not ok:  # pragma: no cover - construction guarantees this
            raise NotCycleFree(
                f"chain condition failed at position {i} (shared edges: {count})"
            )
