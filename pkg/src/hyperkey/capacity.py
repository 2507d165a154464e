"""Secret-key capacities and the achievable rate region for MCH sources.

For a minimally connected hypergraphical source, the unconstrained key
capacity is the minimum edge weight, the capacity under a total discussion
budget R is min(R / (|E| - 1), unconstrained), and the minimum total
discussion for a maximum-rate key is (|E| - 1) times the unconstrained
capacity.  The discussion-rate region at key rate r_K is cut out by one
constraint per subset B of a fundamental-partition block with
component_count(h minus B) > 1:

    sum of r_i over B  >=  (component_count(h minus B) - 1) * r_K.

Subsets with component count one would give coefficient zero and are never
materialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .errors import (
    InvalidPartition,
    NegativeRate,
    NotMCH,
    SubsetTooLarge,
    UnknownVertex,
)
from .hypergraph import Hypergraph, removal_component_counts
from .partitions import Partition, entropy, partition_connectivity

__all__ = [
    "RateTuple",
    "RegionSpec",
    "RegionCheck",
    "require_mch",
    "unconstrained_capacity",
    "constrained_capacity",
    "communication_complexity",
    "region_spec",
    "in_region",
    "outer_bound_deficit",
]


def require_mch(h: Hypergraph) -> None:
    if not h.is_mch():
        raise NotMCH("hypergraph is not minimally connected")


@dataclass(frozen=True)
class RateTuple:
    """A key rate plus one discussion rate per vertex, all exact rationals."""

    key_rate: Fraction
    per_user: Mapping[str, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "key_rate", Fraction(self.key_rate))
        normalized = {str(v): Fraction(r) for v, r in dict(self.per_user).items()}
        object.__setattr__(self, "per_user", normalized)
        if self.key_rate < 0 or any(r < 0 for r in normalized.values()):
            raise NegativeRate("rates must be nonnegative")

    def total(self) -> Fraction:
        return sum(self.per_user.values(), Fraction(0))

    def over(self, subset: Iterable[str]) -> Fraction:
        out = Fraction(0)
        for v in subset:
            try:
                out += self.per_user[v]
            except KeyError:
                raise UnknownVertex(f"rate tuple has no entry for vertex {v!r}")
        return out


@dataclass(frozen=True)
class RegionSpec:
    """The rate region at unit key rate: cap on r_K plus linear constraints.

    constraints is a tuple of (subset, coefficient) meaning
    sum of r_i over subset >= coefficient * r_K, listed in canonical order
    (generator blocks by smallest member, subsets by size then sorted members).
    generator_blocks are the fundamental-partition blocks the subsets range
    over.
    """

    key_cap: Fraction
    constraints: tuple[tuple[frozenset[str], int], ...]
    generator_blocks: tuple[frozenset[str], ...]


@dataclass(frozen=True)
class RegionCheck:
    """Outcome of a membership test: ok, or the first violated constraint."""

    ok: bool
    key_cap_violated: bool = False
    violated: Optional[tuple[frozenset[str], int]] = None


def unconstrained_capacity(h: Hypergraph) -> Fraction:
    """Maximum key rate with unlimited discussion: the minimum edge weight."""
    require_mch(h)
    return h.min_weight()


def constrained_capacity(h: Hypergraph, total_rate: Fraction) -> Fraction:
    """Key capacity when the total discussion rate is capped at total_rate."""
    require_mch(h)
    budget = Fraction(total_rate)
    if budget < 0:
        raise NegativeRate("the discussion budget must be nonnegative")
    cap = h.min_weight()
    if len(h.edges) == 1:
        return cap
    return min(budget / (len(h.edges) - 1), cap)


def communication_complexity(h: Hypergraph) -> Fraction:
    """Least total discussion that still achieves the unconstrained capacity."""
    require_mch(h)
    return (len(h.edges) - 1) * h.min_weight()


def _canonical_subsets(block: frozenset[str]):
    """Nonempty subsets of a block, by size then lexicographic member order."""
    from itertools import combinations

    members = sorted(block)
    for size in range(1, len(members) + 1):
        for combo in combinations(members, size):
            yield frozenset(combo)


def region_spec(h: Hypergraph, *, max_block: int = 12) -> RegionSpec:
    require_mch(h)
    fundamental = partition_connectivity(h).fundamental
    constraints: list[tuple[frozenset[str], int]] = []
    for block in fundamental.blocks:
        order, counts = removal_component_counts(h, block, max_base=max_block)
        index = {v: i for i, v in enumerate(order)}
        for subset in _canonical_subsets(block):
            mask = 0
            for v in subset:
                mask |= 1 << index[v]
            kappa = counts[mask]
            if kappa > 1:
                constraints.append((subset, kappa - 1))
    return RegionSpec(
        key_cap=h.min_weight(),
        constraints=tuple(constraints),
        generator_blocks=fundamental.blocks,
    )


def in_region(
    h: Hypergraph, rt: RateTuple, *, spec: Optional[RegionSpec] = None
) -> RegionCheck:
    """Membership test; reports the first violated constraint if any.

    The key-rate cap is checked first, then the subset constraints in the
    spec's canonical order.  The rate tuple must carry an entry for every
    vertex of h.
    """
    if spec is None:
        spec = region_spec(h)
    missing = h.vertices - set(rt.per_user)
    if missing:
        raise UnknownVertex(f"rate tuple missing vertices: {sorted(missing)}")
    if rt.key_rate > spec.key_cap:
        return RegionCheck(ok=False, key_cap_violated=True)
    for subset, coeff in spec.constraints:
        if rt.over(subset) < coeff * rt.key_rate:
            return RegionCheck(ok=False, violated=(subset, coeff))
    return RegionCheck(ok=True)


def outer_bound_deficit(
    h: Hypergraph, rt: RateTuple, b: Iterable[str], p: Partition
) -> Fraction:
    """Slack of one converse inequality; nonnegative iff it is satisfied.

    For a vertex subset B with |B| < |V| - 1 and a proper partition P of the
    remaining vertices, any achievable tuple obeys

        r(B) >= (|P| - 1) * (r_K - I_P)

    where I_P is the weighted partition functional of the source restricted to
    the remaining vertices.  Returns r(B) minus the right-hand side.
    """
    bset = frozenset(str(v) for v in b)
    foreign = bset - h.vertices
    if foreign:
        raise UnknownVertex(f"unknown vertices: {sorted(foreign)}")
    if len(bset) >= len(h.vertices) - 1:
        raise SubsetTooLarge(
            "the bound needs at least two vertices outside the subset"
        )
    rest = h.remove_vertices(bset)
    if p.ground() != rest.vertices:
        raise InvalidPartition(
            "partition must cover exactly the vertices outside the subset"
        )
    if len(p) < 2:
        raise InvalidPartition("the bound needs a proper partition")
    block_sum = sum((entropy(rest, c) for c in p.blocks), Fraction(0))
    i_p = (block_sum - entropy(rest, rest.vertices)) / (len(p) - 1)
    return rt.over(bset) - (len(p) - 1) * (rt.key_rate - i_p)
