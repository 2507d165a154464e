"""Line-oriented text format for hypergraphs (the .hg files the CLI reads).

The format is strict and whitespace-tokenized, one statement per line:

    # full-line comments and blank lines are ignored
    format: 1
    vertices: 1 2 3 4 5 6
    edge a: 1 2 4 weight 1
    edge b: 2 3 5 weight 3/2

The `format:` line is optional and must come first if present.  Exactly one
`vertices:` line must appear before any edge.  Weights accept integers,
rationals ("3/2"), and decimals ("1.5"), all stored exactly.  Unknown
statements, unknown members, duplicate edge ids, and nonpositive weights are
rejected; errors carry 1-based line and column positions.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DuplicateEdgeId, NonpositiveWeight, ParseError
from .hypergraph import Edge, Hypergraph

__all__ = ["parse", "serialize"]


def _tokens(line: str) -> list[tuple[str, int]]:
    """Whitespace-split with 1-based column of each token's first character."""
    out = []
    col = 0
    for piece in line.split():
        col = line.index(piece, col)
        out.append((piece, col + 1))
        col += len(piece)
    return out


def _weight_token(token: str, lineno: int, column: int) -> Fraction:
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(
            f"invalid weight {token!r}", line=lineno, column=column
        ) from None
    if value <= 0:
        raise NonpositiveWeight(
            f"edge weight must be positive, got {token!r} (line {lineno})"
        )
    return value


def parse(text: str) -> Hypergraph:
    """Parse .hg text into a Hypergraph with exact rational weights."""
    vertices: list[str] | None = None
    edges: list[Edge] = []
    seen_ids: set[str] = set()
    saw_statement = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = _tokens(raw)
        head, head_col = toks[0]

        if head == "format:":
            if saw_statement:
                raise ParseError(
                    "format line must come first", line=lineno, column=head_col
                )
            if len(toks) != 2 or toks[1][0] != "1":
                raise ParseError(
                    "unsupported format version", line=lineno, column=head_col
                )
            saw_statement = True
            continue
        saw_statement = True

        if head == "vertices:":
            if vertices is not None:
                raise ParseError(
                    "duplicate vertices line", line=lineno, column=head_col
                )
            if len(toks) == 1:
                raise ParseError(
                    "vertices line declares no vertices",
                    line=lineno,
                    column=head_col,
                )
            names = [t for t, _ in toks[1:]]
            for (name, col) in toks[1:]:
                if names.count(name) > 1:
                    raise ParseError(
                        f"duplicate vertex {name!r}", line=lineno, column=col
                    )
            vertices = names
            continue

        if head == "edge":
            if vertices is None:
                raise ParseError(
                    "edge line before vertices line", line=lineno, column=head_col
                )
            if len(toks) < 2 or not toks[1][0].endswith(":"):
                raise ParseError(
                    "edge line needs an id followed by ':'",
                    line=lineno,
                    column=head_col,
                )
            eid, eid_col = toks[1][0][:-1], toks[1][1]
            if not eid:
                raise ParseError("empty edge id", line=lineno, column=eid_col)
            if eid in seen_ids:
                raise DuplicateEdgeId(
                    f"duplicate edge id {eid!r}", line=lineno, column=eid_col
                )
            body = toks[2:]
            if len(body) < 2 or body[-2][0] != "weight":
                raise ParseError(
                    "edge line must end with 'weight <value>'",
                    line=lineno,
                    column=head_col,
                )
            weight = _weight_token(body[-1][0], lineno, body[-1][1])
            members = body[:-2]
            if not members:
                raise ParseError(
                    f"edge {eid!r} has no members", line=lineno, column=eid_col
                )
            known = set(vertices)
            for name, col in members:
                if name not in known:
                    raise ParseError(
                        f"unknown member {name!r}", line=lineno, column=col
                    )
            seen_ids.add(eid)
            edges.append(
                Edge(
                    id=eid,
                    members=frozenset(name for name, _ in members),
                    weight=weight,
                )
            )
            continue

        raise ParseError(
            f"unknown statement {head!r}", line=lineno, column=head_col
        )

    if vertices is None:
        raise ParseError("missing vertices line", line=1, column=1)
    return Hypergraph(vertices, edges)


def serialize(h: Hypergraph) -> str:
    """Canonical .hg text; parse(serialize(h)) reproduces h exactly."""
    lines = ["format: 1"]
    lines.append("vertices: " + " ".join(sorted(h.vertices)))
    for e in h.edges:
        members = " ".join(sorted(e.members))
        lines.append(f"edge {e.id}: {members} weight {e.weight}")
    return "\n".join(lines) + "\n"
