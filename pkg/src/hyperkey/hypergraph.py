"""Weighted hypergraphs and their structural operations.

Vertex and edge ids are opaque strings; every canonical ordering used in this
package is plain lexicographic ordering of those strings.  Edge weights are
exact rationals (fractions.Fraction) and must be strictly positive.
Hypergraph values are immutable: every operation returns a new value and never
mutates its inputs.

A vertex may belong to no edge (it is then an isolated component).  Member
sets are nonempty subsets of the vertex set; distinct edges may have identical
member sets (parallel edges) and single-vertex edges (loops) are allowed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import (
    EmptyResult,
    EmptyVertexSet,
    InvalidPartition,
    NonpositiveWeight,
    UnknownVertex,
)

__all__ = [
    "Edge",
    "Hypergraph",
    "BergeCycle",
    "removal_component_counts",
]

WeightLike = Union[Fraction, int, str]


def as_weight(value: WeightLike) -> Fraction:
    """Coerce an int / string / Fraction to a positive exact rational."""
    w = Fraction(value)
    if w <= 0:
        raise NonpositiveWeight(f"edge weight must be positive, got {value!r}")
    return w


@dataclass(frozen=True)
class Edge:
    """One hyperedge: an id, a nonempty member set, and a positive weight."""

    id: str
    members: frozenset[str]
    weight: Fraction


@dataclass(frozen=True)
class BergeCycle:
    """A cycle witness: vertices v_1..v_l with v_1 = v_l and edges e_1..e_{l-1}.

    Consecutive vertices v_j, v_{j+1} both belong to e_j, the edges are
    pairwise distinct, and the internal vertices v_1..v_{l-1} are pairwise
    distinct, with l >= 3.
    """

    vertices: tuple[str, ...]
    edges: tuple[str, ...]

    def is_valid_in(self, h: "Hypergraph") -> bool:
        vs, es = self.vertices, self.edges
        if len(vs) < 3 or len(es) != len(vs) - 1:
            return False
        if vs[0] != vs[-1]:
            return False
        interior = vs[:-1]
        if len(set(interior)) != len(interior) or len(set(es)) != len(es):
            return False
        for j, eid in enumerate(es):
            members = h.edge(eid).members
            if vs[j] not in members or vs[j + 1] not in members:
                return False
        return True


class Hypergraph:
    """Immutable weighted hypergraph over string vertex and edge ids."""

    __slots__ = ("vertices", "edges", "_cache")

    def __init__(
        self,
        vertices: Iterable[str],
        edges: Iterable[Union[Edge, tuple[str, Iterable[str], WeightLike]]] = (),
    ):
        vset = frozenset(str(v) for v in vertices)
        if not vset:
            raise EmptyVertexSet("a hypergraph needs at least one vertex")
        normalized: list[Edge] = []
        seen_ids: set[str] = set()
        for item in edges:
            if isinstance(item, Edge):
                eid, members, weight = item.id, item.members, item.weight
            else:
                eid, raw_members, weight = item
                members = frozenset(str(m) for m in raw_members)
            eid = str(eid)
            if eid in seen_ids:
                raise ValueError(f"duplicate edge id {eid!r}")
            seen_ids.add(eid)
            if not members:
                raise ValueError(f"edge {eid!r} has an empty member set")
            foreign = members - vset
            if foreign:
                raise UnknownVertex(
                    f"edge {eid!r} uses unknown vertices: {sorted(foreign)}"
                )
            normalized.append(Edge(eid, frozenset(members), as_weight(weight)))
        normalized.sort(key=lambda e: e.id)
        object.__setattr__(self, "vertices", vset)
        object.__setattr__(self, "edges", tuple(normalized))
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("Hypergraph values are immutable")

    # -- basic accessors ----------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Hypergraph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph({sorted(self.vertices)}, {len(self.edges)} edges)"

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def edge(self, eid: str) -> Edge:
        try:
            return self._by_id[eid]
        except KeyError:
            raise KeyError(f"no edge with id {eid!r}") from None

    @property
    def _by_id(self) -> dict[str, Edge]:
        cache = self._cache
        if "by_id" not in cache:
            cache["by_id"] = {e.id: e for e in self.edges}
        return cache["by_id"]

    @property
    def _incident(self) -> dict[str, tuple[Edge, ...]]:
        """Vertex id -> incident edges, in edge id order."""
        cache = self._cache
        if "incident" not in cache:
            table: dict[str, list[Edge]] = {v: [] for v in self.vertices}
            for e in self.edges:
                for v in e.members:
                    table[v].append(e)
            cache["incident"] = {v: tuple(es) for v, es in table.items()}
        return cache["incident"]

    def min_weight(self) -> Fraction:
        if not self.edges:
            raise ValueError("hypergraph has no edges")
        return min(e.weight for e in self.edges)

    def _check_subset(self, c: Iterable[str]) -> frozenset[str]:
        cset = frozenset(c)
        foreign = cset - self.vertices
        if foreign:
            raise UnknownVertex(f"unknown vertices: {sorted(foreign)}")
        return cset

    # -- counting and restriction -------------------------------------------

    def degree(self, c: Iterable[str]) -> int:
        """Number of edges whose member set meets c (c may be empty)."""
        cset = self._check_subset(c)
        if not cset:
            return 0
        return sum(1 for e in self.edges if not e.members.isdisjoint(cset))

    def remove_vertices(self, c: Iterable[str]) -> "Hypergraph":
        """Drop the vertices in c, intersect member sets, drop emptied edges."""
        cset = self._check_subset(c)
        if not cset:
            return self
        remaining = self.vertices - cset
        if not remaining:
            raise EmptyResult("removing every vertex leaves no hypergraph")
        kept = [
            Edge(e.id, e.members - cset, e.weight)
            for e in self.edges
            if e.members - cset
        ]
        return Hypergraph(remaining, kept)

    def induced(self, c: Iterable[str]) -> "Hypergraph":
        """Restrict to the vertices in c (drop everything else)."""
        cset = frozenset(c)
        if not cset:
            raise EmptyVertexSet("cannot induce on an empty vertex set")
        self._check_subset(cset)
        return self.remove_vertices(self.vertices - cset)

    def incident_restriction(self, c: Iterable[str]) -> "Hypergraph":
        """Keep only the edges meeting c; vertices = union of their members."""
        cset = self._check_subset(c)
        if not cset:
            raise EmptyVertexSet("incident restriction needs a nonempty set")
        kept = [e for e in self.edges if not e.members.isdisjoint(cset)]
        support: set[str] = set()
        for e in kept:
            support |= e.members
        if not support:
            # c has no incident edges at all; keep c itself as isolated points
            support = set(cset)
        return Hypergraph(support, kept)

    def merge(self, blocks) -> "Hypergraph":
        """Contract each block of a partition of the vertex set to one vertex.

        The new vertex for a block is the comma-join of its sorted members, so
        labels are deterministic and distinct.  Edge ids, weights, and the
        number of edges are unchanged; member sets become sets of block labels.
        """
        block_list = _as_blocks(blocks)
        _check_partition(block_list, self.vertices)
        label: dict[str, str] = {}
        labels: list[str] = []
        for blk in block_list:
            name = ",".join(sorted(blk))
            labels.append(name)
            for v in blk:
                label[v] = name
        merged_edges = [
            Edge(e.id, frozenset(label[v] for v in e.members), e.weight)
            for e in self.edges
        ]
        return Hypergraph(labels, merged_edges)

    # -- connectivity --------------------------------------------------------

    def components(self) -> tuple[frozenset[str], ...]:
        """Connected components, sorted by their smallest member."""
        cache = self._cache
        if "components" in cache:
            return cache["components"]
        incident = self._incident
        seen: set[str] = set()
        out: list[frozenset[str]] = []
        for start in sorted(self.vertices):
            if start in seen:
                continue
            comp: set[str] = {start}
            queue = [start]
            while queue:
                v = queue.pop()
                for e in incident[v]:
                    for u in e.members:
                        if u not in comp:
                            comp.add(u)
                            queue.append(u)
            seen |= comp
            out.append(frozenset(comp))
        result = tuple(out)
        cache["components"] = result
        return result

    def component_count(self) -> int:
        return len(self.components())

    def is_connected(self) -> bool:
        return self.component_count() == 1

    def loop_edges(self) -> tuple[str, ...]:
        """Ids of single-vertex edges, in id order."""
        return tuple(e.id for e in self.edges if len(e.members) == 1)

    def find_berge_cycle(self) -> Optional[BergeCycle]:
        """First cycle witness in canonical depth-first order, if any.

        The search walks the bipartite incidence graph (vertex nodes and edge
        nodes), starting from vertices in lexicographic order and expanding
        neighbors in lexicographic order, with the incidence used to reach a
        node excluded on the way back.  A back edge closes a cycle; alternate
        node kinds along the stack then spell out the witness.
        """
        incident = self._incident
        by_id = self._by_id
        visited: set[tuple[str, str]] = set()
        for start in sorted(self.vertices):
            node = ("v", start)
            if node in visited:
                continue
            # Iterative DFS. path holds the current stack of nodes.
            path: list[tuple[str, str]] = [node]
            path_pos: dict[tuple[str, str], int] = {node: 0}
            iters = [iter(self._neighbors(node, incident, by_id))]
            parents: list[Optional[tuple[str, str]]] = [None]
            visited.add(node)
            while path:
                try:
                    nxt = next(iters[-1])
                except StopIteration:
                    dead = path.pop()
                    del path_pos[dead]
                    iters.pop()
                    parents.pop()
                    continue
                if nxt == parents[-1]:
                    continue
                if nxt in path_pos:
                    cycle_nodes = path[path_pos[nxt]:] + [nxt]
                    return _nodes_to_cycle(cycle_nodes)
                if nxt in visited:
                    continue
                visited.add(nxt)
                parents.append(path[-1])
                path.append(nxt)
                path_pos[nxt] = len(path) - 1
                iters.append(iter(self._neighbors(nxt, incident, by_id)))
        return None

    @staticmethod
    def _neighbors(node, incident, by_id):
        kind, name = node
        if kind == "v":
            return [("e", e.id) for e in incident[name]]
        return [("v", v) for v in sorted(by_id[name].members)]

    # -- shape predicates -----------------------------------------------------

    def is_connected_and_cycle_free(self) -> bool:
        """Connected with no cycle; loops are permitted."""
        return self.is_connected() and self.find_berge_cycle() is None

    def is_hypertree(self) -> bool:
        """Connected, loopless, and cycle-free."""
        if len(self.vertices) < 2:
            raise ValueError("shape predicates need at least two vertices")
        return (
            self.is_connected()
            and not self.loop_edges()
            and self.find_berge_cycle() is None
        )

    def is_mch(self) -> bool:
        """Connected, and removing any single edge (keeping all vertices)
        disconnects the hypergraph."""
        if len(self.vertices) < 2:
            raise ValueError("shape predicates need at least two vertices")
        if not self.is_connected():
            return False
        for skip in range(len(self.edges)):
            slim = Hypergraph(
                self.vertices,
                [e for k, e in enumerate(self.edges) if k != skip],
            )
            if slim.is_connected():
                return False
        return True


def _as_blocks(blocks) -> tuple[frozenset[str], ...]:
    """Accept a Partition-like (has .blocks) or an iterable of vertex sets."""
    raw = getattr(blocks, "blocks", blocks)
    return tuple(frozenset(b) for b in raw)


def _check_partition(block_list: Sequence[frozenset[str]], ground: frozenset[str]) -> None:
    if any(not b for b in block_list):
        raise InvalidPartition("partition blocks must be nonempty")
    union: set[str] = set()
    total = 0
    for b in block_list:
        union |= b
        total += len(b)
    if union != ground or total != len(ground):
        raise InvalidPartition("blocks must be disjoint and cover the vertex set")


def _nodes_to_cycle(cycle_nodes: list[tuple[str, str]]) -> BergeCycle:
    # cycle_nodes is a closed alternating walk; rotate so it starts (and
    # therefore ends) at a vertex node.
    if cycle_nodes[0][0] == "e":
        cycle_nodes = cycle_nodes[1:-1]
        cycle_nodes = cycle_nodes + [cycle_nodes[0]]
    vs = tuple(name for kind, name in cycle_nodes if kind == "v")
    es = tuple(name for kind, name in cycle_nodes if kind == "e")
    return BergeCycle(vertices=vs, edges=es)


def removal_component_counts(
    h: Hypergraph, base: Iterable[str], *, max_base: int = 12
) -> tuple[tuple[str, ...], list[int]]:
    """Component counts of h with every subset of `base` removed.

    Returns (order, counts) where order is the sorted tuple of base vertices
    and counts[mask] is the number of components of h after removing the
    subset selected by mask's bits over that order; counts[0] is the
    component count of h itself.  Requires base != vertices.
    """
    from .errors import GroundTooLarge

    order = tuple(sorted(h._check_subset(base)))
    if len(order) > max_base:
        raise GroundTooLarge(
            f"subset enumeration over {len(order)} vertices exceeds cap {max_base}"
        )
    if frozenset(order) == h.vertices:
        raise EmptyResult("cannot enumerate removals of the whole vertex set")
    counts: list[int] = []
    for mask in range(1 << len(order)):
        drop = frozenset(order[i] for i in range(len(order)) if mask >> i & 1)
        counts.append(h.remove_vertices(drop).component_count())
    return order, counts
