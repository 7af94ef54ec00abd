"""Tests for the text grammar, the JSON documents and rendering."""

import json
import logging
import random
from fractions import Fraction

import pytest

from conftest import SQUARE_TEXT, TRIANGLE_TEXT, square_two_pairs, triangle_graph
from generators import random_wr0_graph
from wrzero.model.graph import associated_system
from wrzero.model.parser import (
    ParseError,
    load_graph,
    load_system,
    parse_document,
    parse_system,
    render_monomial,
    render_system,
)
from wrzero.model.schemas import RealizationDocument, SystemDocument


class TestGrammar:
    def test_linear(self):
        sys = parse_system("dx1/dt = 1 - x1")
        assert sys.sources == ((0,), (1,))
        assert sys.net_vectors == ((1,), (-1,))

    def test_triangle(self):
        sys = parse_system(TRIANGLE_TEXT)
        assert sys.sources == ((1, 0, 0), (0, 2, 0), (0, 0, 2))
        assert [tuple(w) for w in sys.net_vectors] == [(-12, 14, 10), (0, -4, 4), (1, 8, -10)]

    def test_rational_and_decimal_coefficients(self):
        sys = parse_system("dx1/dt = -1/2*x1 + 0.25*x1^2")
        assert sys.net_vectors == ((Fraction(-1, 2),), (Fraction(1, 4),))

    def test_juxtaposition_and_semicolons(self):
        sys = parse_system("dx1/dt = 2 x1 x2 - x1; dx2/dt = -x1*x2  # comment")
        assert sys.index_of((1, 1)) == 1
        assert sys.net_vectors[sys.index_of((1, 1))] == (2, -1)

    def test_equal_monomials_are_merged(self):
        sys = parse_system("dx1/dt = x1 + 2*x1 - 1")
        assert sys.net_vectors[sys.index_of((1,))] == (3,)

    def test_cancelled_monomial_dropped_with_warning(self, caplog):
        with caplog.at_level(logging.WARNING, logger="wrzero.model.parser"):
            sys = parse_system("dx1/dt = 1 - x1 + x1^2 - x1^2")
        assert sys.sources == ((0,), (1,))
        assert "x1^2" in caplog.text

    def test_equations_in_any_order(self):
        sys = parse_system("dx2/dt = x1 - x2\ndx1/dt = x2 - x1")
        assert sys.n == 2


class TestGrammarErrors:
    def test_non_integer_exponent(self):
        with pytest.raises(ParseError, match="non-integer exponent"):
            parse_system("dx1/dt = x1^1.5")

    def test_unknown_character_reports_position(self):
        with pytest.raises(ParseError) as info:
            parse_system("dx1/dt = 1 - x1\ndx2/dt = y")
        assert info.value.line == 2
        assert info.value.column == 10

    def test_inconsistent_variable_count(self):
        with pytest.raises(ParseError, match="inconsistent variable count"):
            parse_system("dx1/dt = x2")

    def test_missing_equation(self):
        with pytest.raises(ParseError, match="inconsistent variable count"):
            parse_system("dx1/dt = 1; dx3/dt = x1")

    def test_duplicate_equation(self):
        with pytest.raises(ParseError, match="duplicate"):
            parse_system("dx1/dt = 1; dx1/dt = x1")

    def test_empty_input(self):
        with pytest.raises(ParseError):
            parse_system("  # nothing here\n")

    def test_everything_cancels(self):
        with pytest.raises(ParseError, match="empty system"):
            parse_system("dx1/dt = x1 - x1")

    def test_dangling_operator(self):
        with pytest.raises(ParseError):
            parse_system("dx1/dt = 1 -")

    def test_is_a_value_error(self):
        assert issubclass(ParseError, ValueError)


class TestRendering:
    def test_monomials(self):
        assert render_monomial((0, 0)) == "1"
        assert render_monomial((1, 0, 2)) == "x1*x3^2"

    def test_render_round_trip_on_examples(self):
        for text in (TRIANGLE_TEXT, SQUARE_TEXT, "dx1/dt = -1/2 + 3/7*x1^4"):
            sys = parse_system(text)
            assert parse_system(render_system(sys)) == sys

    def test_render_round_trip_on_random_systems(self):
        rng = random.Random(11)
        for _ in range(50):
            sys = associated_system(random_wr0_graph(rng))
            assert parse_system(render_system(sys)) == sys

    def test_zero_component_round_trips_quietly(self, caplog):
        sys = parse_system("dx1/dt = 0; dx2/dt = x2 - x2^2")
        text = render_system(sys)
        assert text.splitlines()[0] == "dx1/dt = 0"
        with caplog.at_level(logging.WARNING, logger="wrzero.model.parser"):
            assert parse_system(text) == sys
        assert "Dropping" not in caplog.text

    def test_literal_zero_terms_are_skipped(self, caplog):
        with caplog.at_level(logging.WARNING, logger="wrzero.model.parser"):
            sys = parse_system("dx1/dt = 1 - x1 + 0*x1^3")
        assert sys.sources == ((0,), (1,))
        assert caplog.text == ""


class TestDocuments:
    def test_system_document(self):
        text = json.dumps({"n": 1, "monomials": [[1], [0]], "W": [["-1"], [1]]})
        sys = parse_document(text)
        assert sys.sources == ((0,), (1,))
        assert sys.net_vectors == ((1,), (-1,))

    def test_system_document_from_system(self):
        sys = parse_system(TRIANGLE_TEXT)
        document = SystemDocument.from_system(sys)
        assert document.to_system() == sys

    def test_realization_document_round_trip(self, tmp_path):
        g = square_two_pairs()
        path = tmp_path / "realization.json"
        path.write_text(RealizationDocument.from_graph(g).model_dump_json(by_alias=True))
        assert load_graph(path) == g
        assert load_system(path) == associated_system(g)

    def test_realization_document_uses_from_and_to(self):
        data = json.loads(RealizationDocument.from_graph(triangle_graph()).model_dump_json(by_alias=True))
        assert data["edges"][0] == {"from": 0, "to": 1, "kappa": "7"}
        assert data["deficiency"] == 0
        assert data["components"] == [[0, 1, 2]]

    def test_invalid_json(self):
        with pytest.raises(ParseError):
            parse_document('{"n": 1, "monomials": [[1]]')

    def test_float_weights_rejected(self):
        with pytest.raises(ParseError):
            parse_document(json.dumps({"n": 1, "monomials": [[1]], "W": [[0.5]]}))

    def test_load_graph_needs_edges(self, tmp_path):
        path = tmp_path / "system.json"
        path.write_text(json.dumps({"n": 1, "monomials": [[1]], "W": [["1"]]}))
        with pytest.raises(ParseError):
            load_graph(path)

    def test_load_text_file(self, write_input):
        assert load_system(write_input(TRIANGLE_TEXT)) == parse_system(TRIANGLE_TEXT)
