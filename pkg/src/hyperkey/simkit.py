"""Concrete bit-level realization of schemes plus randomized test inputs.

Quantization picks the least blocklength scale m that turns the key rate and
every edge weight into whole bit counts; an edge of weight w then carries
m * w uniform bits, and the key is the first m * key_rate bits (least
significant bits of the block integer) of the key edge's block.  Every
broadcast message is the XOR of two truncated blocks, so each message is
exactly the key length.

Two secrecy oracles are kept deliberately separate: the rank oracle (the key
indicator stays outside the row space over GF(2)) and the exhaustive oracle
(cell counts of the joint message/key table are flat).  Tests compare them;
nothing in this module derives one from the other.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from string import ascii_lowercase
from typing import Iterable, Mapping, Optional

from . import gf2
from .errors import (
    GenerationBudgetExhausted,
    GroundTooLarge,
    KeyRateExceedsCapacity,
    NegativeRate,
    SchemeUnverified,
    StateSpaceTooLarge,
)
from .hypergraph import Hypergraph
from .scheme import DiscussionScheme, verify

__all__ = [
    "QuantizedShape",
    "ProtocolRun",
    "SecrecyReport",
    "GenerationStats",
    "quantize",
    "run",
    "secrecy_by_rank",
    "brute_force_secrecy",
    "random_mch",
    "random_mch_with_stats",
]


@dataclass(frozen=True)
class QuantizedShape:
    """Blocklength scale plus per-edge bit lengths and the key length."""

    scale: int
    edge_lengths: tuple[tuple[str, int], ...]
    key_length: int

    def lengths_map(self) -> dict[str, int]:
        return dict(self.edge_lengths)

    def total_bits(self) -> int:
        return sum(n for _, n in self.edge_lengths)


def quantize(h: Hypergraph, key_rate: Fraction) -> QuantizedShape:
    """Least scale m making m * key_rate and every m * weight integral."""
    rate = Fraction(key_rate)
    if rate < 0:
        raise NegativeRate("key rate must be nonnegative")
    if rate > h.min_weight():
        raise KeyRateExceedsCapacity(
            f"key rate {rate} exceeds the minimum edge weight {h.min_weight()}"
        )
    scale = lcm(rate.denominator, *(e.weight.denominator for e in h.edges))
    lengths = tuple((e.id, int(e.weight * scale)) for e in h.edges)
    return QuantizedShape(
        scale=scale, edge_lengths=lengths, key_length=int(rate * scale)
    )


@dataclass(frozen=True)
class ProtocolRun:
    """One simulated execution (plus, optionally, an exhaustive sweep).

    The recorded realization, messages, per-vertex recoveries, and key always
    come from the seeded sample; with exhaustive=True the zero_error verdict
    quantifies over every realization of the quantized source instead of just
    the recorded one.
    """

    seed: int
    scale: int
    edge_lengths: tuple[tuple[str, int], ...]
    key_length: int
    realized: tuple[tuple[str, int], ...]
    messages: tuple[int, ...]
    recovered: tuple[tuple[str, int], ...]
    key: int
    zero_error: bool
    secrecy_rank_ok: bool
    exhaustive: bool
    realizations_checked: int


def _check_scheme_matches(h: Hypergraph, scheme: DiscussionScheme) -> None:
    if scheme.edge_order != tuple(sorted(e.id for e in h.edges)):
        raise SchemeUnverified("scheme edge order does not match the hypergraph")
    if set(scheme.vertices()) != h.vertices:
        raise SchemeUnverified("scheme recovery map does not cover the vertices")


def run(
    h: Hypergraph,
    scheme: DiscussionScheme,
    key_rate: Fraction,
    seed: int = 0,
    *,
    exhaustive: bool = False,
    max_state_bits: int = 20,
    allow_unverified: bool = False,
) -> ProtocolRun:
    """Sample the source, broadcast the scheme rows, and let every vertex
    solve for the key from the messages plus its own pivot edge.

    A scheme failing verification is refused unless allow_unverified is set
    (useful to demonstrate how defective schemes fail); underdetermined
    recoveries then zero their free coordinates.
    """
    _check_scheme_matches(h, scheme)
    if not allow_unverified and not verify(scheme).ok:
        raise SchemeUnverified("scheme failed verification")
    shape = quantize(h, key_rate)
    mu = scheme.mu
    lengths = [n for _, n in shape.edge_lengths]
    key_len = shape.key_length
    key_mask = (1 << key_len) - 1
    # truncation keeps the leading key_len bits of each edge block
    shifts = [n - key_len for n in lengths]
    key_idx = scheme.edge_order.index(scheme.key_edge)
    pivot_idx = {v: scheme.edge_order.index(e) for v, e in scheme.recovery}

    rng = random.Random(seed)
    sample = [rng.getrandbits(n) if n else 0 for n in lengths]

    def truncations(blocks: list[int]) -> list[int]:
        return [b >> s for b, s in zip(blocks, shifts)]

    def broadcast(trunc: list[int]) -> list[int]:
        out = []
        for mask in scheme.rows:
            acc = 0
            m = mask
            while m:
                low = m & -m
                acc ^= trunc[low.bit_length() - 1]
                m ^= low
            out.append(acc)
        return out

    def recover_all(trunc: list[int], msgs: list[int]) -> dict[str, int]:
        got: dict[str, int] = {}
        for v, idx in pivot_idx.items():
            stacked = [(m, p) for m, p in zip(scheme.rows, msgs)]
            stacked.append((1 << idx, trunc[idx]))
            values, _ = gf2.solve_with_payload(stacked, mu)
            got[v] = values[key_idx]
        return got

    trunc0 = truncations(sample)
    msgs0 = broadcast(trunc0)
    recovered0 = recover_all(trunc0, msgs0)
    true_key0 = trunc0[key_idx]
    zero_error = all(k == true_key0 for k in recovered0.values())
    checked = 1

    if exhaustive:
        total = shape.total_bits()
        if total > max_state_bits:
            raise StateSpaceTooLarge(
                f"{total} source bits exceed the exhaustive cap {max_state_bits}"
            )
        # one selector table per distinct pivot edge; falls back to the
        # generic solver when the scheme is rank-deficient
        selector_cache: dict[int, Optional[list[int]]] = {}
        for idx in set(pivot_idx.values()):
            stacked = list(scheme.rows) + [1 << idx]
            selector_cache[idx] = gf2.solve_square(stacked, mu)
        offsets = []
        at = 0
        for n in lengths:
            offsets.append(at)
            at += n
        zero_error = True
        checked = 1 << total
        for word in range(checked):
            trunc = [(word >> (offsets[j] + shifts[j])) & key_mask for j in range(mu)]
            msgs = broadcast(trunc)
            true_key = trunc[key_idx]
            for idx in set(pivot_idx.values()):
                selectors = selector_cache[idx]
                if selectors is None:
                    stacked = [(m, p) for m, p in zip(scheme.rows, msgs)]
                    stacked.append((1 << idx, trunc[idx]))
                    values, _ = gf2.solve_with_payload(stacked, mu)
                    got = values[key_idx]
                else:
                    rhs = msgs + [trunc[idx]]
                    sel = selectors[key_idx]
                    got = 0
                    s = sel
                    while s:
                        low = s & -s
                        got ^= rhs[low.bit_length() - 1]
                        s ^= low
                    got &= key_mask
                if got != true_key:
                    zero_error = False
                    break
            if not zero_error:
                break

    return ProtocolRun(
        seed=seed,
        scale=shape.scale,
        edge_lengths=shape.edge_lengths,
        key_length=key_len,
        realized=tuple(zip(scheme.edge_order, sample)),
        messages=tuple(msgs0),
        recovered=tuple(sorted(recovered0.items())),
        key=true_key0,
        zero_error=zero_error,
        secrecy_rank_ok=secrecy_by_rank(scheme),
        exhaustive=exhaustive,
        realizations_checked=checked,
    )


def secrecy_by_rank(scheme: DiscussionScheme) -> bool:
    """Perfect secrecy iff the key edge's indicator is outside the row space."""
    key_bit = 1 << scheme.edge_order.index(scheme.key_edge)
    return gf2.rank_with(scheme.rows, key_bit) == gf2.rank(scheme.rows) + 1


@dataclass(frozen=True)
class SecrecyReport:
    """Exhaustive joint tabulation of (messages, key) over all realizations.

    perfect means every message pattern splits the realizations evenly across
    all possible key values, which makes the conditional key entropy equal the
    key length with no logarithms of non-powers-of-two involved.  Entropies
    are in bits; conditional_entropy_bits is None when the slices are not
    uniform (then no exact rational value exists in general).
    """

    perfect: bool
    key_entropy_bits: Fraction
    conditional_entropy_bits: Optional[Fraction]
    realizations: int
    message_patterns: int
    min_cell: int
    max_cell: int
    cells: Optional[tuple[tuple[str, int], ...]]


def brute_force_secrecy(
    h: Hypergraph,
    scheme: DiscussionScheme,
    key_rate: Fraction,
    *,
    max_state_bits: int = 20,
    keep_cells_up_to: int = 4096,
) -> SecrecyReport:
    """Enumerate every realization and tabulate (message pattern, key) counts."""
    _check_scheme_matches(h, scheme)
    shape = quantize(h, key_rate)
    total = shape.total_bits()
    if total > max_state_bits:
        raise StateSpaceTooLarge(
            f"{total} source bits exceed the exhaustive cap {max_state_bits}"
        )
    mu = scheme.mu
    key_len = shape.key_length
    key_mask = (1 << key_len) - 1
    key_idx = scheme.edge_order.index(scheme.key_edge)
    lengths = [n for _, n in shape.edge_lengths]
    shifts = [n - key_len for n in lengths]
    offsets = []
    at = 0
    for n in lengths:
        offsets.append(at)
        at += n

    counts: dict[tuple[int, int], int] = {}
    key_marginal: dict[int, int] = {}
    for word in range(1 << total):
        trunc = [(word >> (offsets[j] + shifts[j])) & key_mask for j in range(mu)]
        fpack = 0
        for r, mask in enumerate(scheme.rows):
            acc = 0
            m = mask
            while m:
                low = m & -m
                acc ^= trunc[low.bit_length() - 1]
                m ^= low
            fpack |= acc << (r * key_len)
        key = trunc[key_idx]
        counts[(fpack, key)] = counts.get((fpack, key), 0) + 1
        key_marginal[key] = key_marginal.get(key, 0) + 1

    realizations = 1 << total
    key_values = 1 << key_len
    slices: dict[int, dict[int, int]] = {}
    for (fpack, key), n in counts.items():
        slices.setdefault(fpack, {})[key] = n

    perfect = True
    uniform_support: Optional[int] = None
    regular = True
    for fpack, table in slices.items():
        values = set(table.values())
        if len(values) != 1:
            regular = False
            perfect = False
            break
        support = len(table)
        if uniform_support is None:
            uniform_support = support
        elif uniform_support != support:
            regular = False
            perfect = False
            break
        if support != key_values:
            perfect = False

    # the key is a truncation of one uniform block, so its marginal is flat
    assert len(key_marginal) == key_values
    assert len(set(key_marginal.values())) == 1
    key_entropy = Fraction(key_len)

    conditional: Optional[Fraction] = None
    if regular and uniform_support is not None:
        bits = uniform_support.bit_length() - 1
        if 1 << bits == uniform_support:
            conditional = Fraction(bits)
    elif key_len == 0:
        conditional = Fraction(0)

    cell_list: Optional[tuple[tuple[str, int], ...]] = None
    if len(counts) <= keep_cells_up_to:
        cell_list = tuple(
            (f"messages={fpack:0{max(1, (mu - 1) * key_len)}b} key={key:0{max(1, key_len)}b}", n)
            for (fpack, key), n in sorted(counts.items())
        )
    return SecrecyReport(
        perfect=perfect,
        key_entropy_bits=key_entropy,
        conditional_entropy_bits=conditional,
        realizations=realizations,
        message_patterns=len(slices),
        min_cell=min(counts.values()),
        max_cell=max(counts.values()),
        cells=cell_list,
    )


@dataclass(frozen=True)
class GenerationStats:
    attempts: int
    rejected: int


def random_mch_with_stats(
    vertex_count: int,
    edge_count: int,
    max_weight: int = 1,
    seed: int = 0,
    *,
    max_attempts: int = 20000,
) -> tuple[Hypergraph, GenerationStats]:
    """Rejection-sample random hypergraphs until one is minimally connected.

    vertex_count and edge_count are exact; proposals are grown connected
    (every edge meets the earlier ones, every vertex enters through an edge)
    so rejection only has to find minimality.  Some shapes admit no MCH at all
    and exhaust the attempt budget.
    """
    if not 2 <= vertex_count <= 8:
        raise GroundTooLarge("vertex count must be between 2 and 8")
    if not 1 <= edge_count <= 6:
        raise GroundTooLarge("edge count must be between 1 and 6")
    if max_weight < 1:
        raise NegativeRate("max weight must be at least one")
    rng = random.Random(seed)
    names = [str(i + 1) for i in range(vertex_count)]
    for attempt in range(1, max_attempts + 1):
        proposal = _propose(rng, names, edge_count, max_weight)
        if proposal is not None and proposal.is_mch():
            return proposal, GenerationStats(attempts=attempt, rejected=attempt - 1)
    raise GenerationBudgetExhausted(
        f"no MCH with {vertex_count} vertices and {edge_count} edges found "
        f"in {max_attempts} attempts"
    )


def random_mch(
    vertex_count: int,
    edge_count: int,
    max_weight: int = 1,
    seed: int = 0,
    *,
    max_attempts: int = 20000,
) -> Hypergraph:
    h, _ = random_mch_with_stats(
        vertex_count, edge_count, max_weight, seed, max_attempts=max_attempts
    )
    return h


def _propose(
    rng: random.Random, names: list[str], edge_count: int, max_weight: int
) -> Optional[Hypergraph]:
    pool = list(names)
    rng.shuffle(pool)
    # distribute every vertex to the edge that introduces it
    intro: list[list[str]] = [[] for _ in range(edge_count)]
    intro[0].append(pool[0])
    for v in pool[1:]:
        intro[rng.randrange(edge_count)].append(v)
    existing: list[str] = []
    edges = []
    for j in range(edge_count):
        members = set(intro[j])
        if existing:
            span = len(existing)
            if rng.random() < 0.15:
                take = rng.randint(1, span)
            else:
                take = min(rng.randint(1, 3), span)
            if not members and take == 1 and span >= 2:
                take = 2  # avoid proposing loops, which are never minimal
            members.update(rng.sample(existing, take))
        if len(members) < 2:
            return None  # loops and empty edges never occur in an MCH
        weight = rng.randint(1, max_weight)
        edges.append((ascii_lowercase[j], sorted(members), weight))
        for v in intro[j]:
            existing.append(v)
    return Hypergraph(names, edges)
