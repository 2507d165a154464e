"""The .hg line format: parsing, serialization, and positioned errors."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hyperkey import (
    DuplicateEdgeId,
    Hypergraph,
    NonpositiveWeight,
    ParseError,
    parse,
    random_mch,
    serialize,
)


class TestRoundTrip:
    def test_serialize_h1(self, h1):
        assert serialize(h1) == (
            "format: 1\n"
            "vertices: 1 2 3 4 5 6\n"
            "edge a: 1 2 4 weight 1\n"
            "edge b: 2 3 5 weight 3\n"
            "edge c: 1 3 6 weight 2\n"
        )

    def test_parse_inverts_serialize(self, h1, h2, h3, h4, h5):
        for h in (h1, h2, h3, h4, h5):
            assert parse(serialize(h)) == h

    def test_fractional_weights_survive(self):
        h = Hypergraph("12", [("a", "12", Fraction(3, 2))])
        text = serialize(h)
        assert "weight 3/2" in text
        assert parse(text) == h

    def test_edgeless_hypergraph(self):
        h = Hypergraph("12", [])
        assert parse(serialize(h)) == h

    @given(st.integers(0, 40))
    def test_random_instances_round_trip(self, seed):
        menu = [(3, 2, 1), (5, 4, 3), (6, 3, 2), (8, 5, 4)]
        n, m, w = menu[seed % len(menu)]
        h = random_mch(n, m, w, seed=seed)
        assert parse(serialize(h)) == h


class TestParsing:
    def test_format_line_is_optional(self):
        bare = "vertices: 1 2\nedge x: 1 2 weight 1\n"
        assert parse(bare) == parse("format: 1\n" + bare)

    def test_comments_and_blanks_are_skipped(self):
        text = "# header\n\nvertices: 1 2\n  # indented comment\nedge x: 1 2 weight 1\n"
        assert len(parse(text).edges) == 1

    def test_decimal_weights_become_exact_rationals(self):
        h = parse("vertices: 1 2\nedge x: 1 2 weight 1.5")
        assert h.edge("x").weight == Fraction(3, 2)


class TestParseErrors:
    @pytest.mark.parametrize(
        "text,excerpt",
        [
            ("vertices: 1 2\nedge x: 1 7 weight 1", "line 2, column 11"),
            ("vertices: 1 2\nbogus: 3", "unknown statement 'bogus:' (line 2, column 1)"),
            ("edge x: 1 2 weight 1\nvertices: 1 2", "edge line before vertices line (line 1"),
            ("vertices: 1 2\nedge x 1 2 weight 1", "id followed by ':'"),
            ("vertices: 1 2\nedge x: 1 2 mass 1", "must end with 'weight <value>'"),
            ("vertices: 1 2\nedge x: 1 2 weight x/y", "invalid weight 'x/y' (line 2, column 20)"),
            ("vertices: 1 2\nvertices: 1 2", "duplicate vertices line (line 2"),
            ("vertices: 1 1 2", "duplicate vertex '1' (line 1, column 11)"),
            ("vertices: 1 2\nedge x: weight 1", "edge 'x' has no members"),
            ("format: 2\nvertices: 1 2", "unsupported format version"),
            ("vertices: 1 2\nformat: 1", "format line must come first"),
            ("", "missing vertices line"),
            ("# only a comment\n", "missing vertices line"),
        ],
    )
    def test_positioned_errors(self, text, excerpt):
        with pytest.raises(ParseError, match=None) as err:
            parse(text)
        assert excerpt in str(err.value)

    def test_duplicate_edge_id(self):
        with pytest.raises(DuplicateEdgeId) as err:
            parse("vertices: 1 2\nedge x: 1 2 weight 1\nedge x: 1 weight 1")
        assert "line 3, column 6" in str(err.value)

    def test_nonpositive_weight_is_a_domain_error(self):
        with pytest.raises(NonpositiveWeight):
            parse("vertices: 1 2\nedge x: 1 2 weight 0")
        with pytest.raises(NonpositiveWeight):
            parse("vertices: 1 2\nedge x: 1 2 weight -3")
