from __future__ import annotations

import json
from fractions import Fraction

import pytest

from squarewatch.analysis import LEMMA_NAMES, analyze, batch, lemma_suite, rhs_json
from squarewatch.families import (
    make_atail_graph,
    make_btail_graph,
    make_collision_gadget,
    make_multitail_graph,
    make_peanut,
    make_snake,
    random_regular,
)
from squarewatch.graph import Graph
from squarewatch.io import decode_graph6, encode_graph6

FAMILIES = [
    ("snake", lambda: make_snake(7, 1, 1)[0]),
    ("snake9", lambda: make_snake(9, 2, 1)[0]),
    ("peanut", lambda: make_peanut(8)[0]),
    ("atail", lambda: make_atail_graph(9, 2, 2)[0]),
    ("btail", lambda: make_btail_graph(7, 1, 4)[0]),
    ("multitail", lambda: make_multitail_graph(11, [1, 1, 2])[0]),
    ("gadget", lambda: make_collision_gadget(10)[0]),
]


class TestAnalyze:
    def test_snake(self):
        rep = analyze(make_snake(7, 1, 1)[0], "s").to_json(timing=False)
        assert rep["status"] == "exception-snake"
        assert rep["sum_deg2"] == 44
        assert rep["e_g2"] - rep["e_g"] == 22

    def test_peanut(self):
        rep = analyze(make_peanut(8)[0]).to_json(timing=False)
        assert rep["status"] == "exception-peanut"
        assert rep["sum_deg2"] == 52
        assert rep["collisions"]["unresolved"] == 4

    def test_random_pass(self):
        rep = analyze(random_regular(100, 9, 42), "r").to_json(timing=False)
        assert rep["status"] == "pass"
        assert rep["theorem_rhs"] == {"numerator": 60, "denominator": 1, "decimal": "60.000000"}
        assert rep["census"] == {"Singleton": 100}

    @pytest.mark.parametrize("g,why", [
        (Graph.complete(8), "complete"),
        (Graph.from_edges(3, [(0, 1), (1, 2)]), "regular"),
        (random_regular(40, 5, 1), "d"),
    ])
    def test_out_of_scope(self, g, why):
        rep = analyze(g)
        assert rep.status == "out-of-scope"
        assert why in rep.reason

    def test_structured_pass(self):
        for name, make in FAMILIES[3:]:
            assert analyze(make(), name).status == "pass", name

    def test_json_stable(self):
        g = make_collision_gadget(8)[0]
        a = json.dumps(analyze(g).to_json(timing=False), sort_keys=True)
        b = json.dumps(analyze(g).to_json(timing=False), sort_keys=True)
        assert a == b
        assert "timing" in analyze(g).to_json()

    def test_rhs_json(self):
        assert rhs_json(Fraction(2, 3)) == {"numerator": 2, "denominator": 3, "decimal": "0.666667"}


class TestLemmaSuite:
    @pytest.mark.parametrize("name,make", FAMILIES)
    def test_families_pass(self, name, make):
        suite = lemma_suite(make())
        assert suite.refused is None
        assert not suite.failures, suite.failures
        assert set(suite.lemmas) == set(LEMMA_NAMES)

    def test_irregular_refused(self):
        g = make_snake(7, 1, 1)[0]
        first = next(iter(g.edges()))
        broken = Graph.from_edges(g.n, [e for e in g.edges() if e != first])
        suite = lemma_suite(broken)
        assert suite.refused and "regular" in suite.refused
        assert not suite.lemmas

    def test_peanut_core_lemmas(self):
        out = lemma_suite(make_peanut(8)[0]).to_json()
        for key in ("boundary_growth", "region_min_size", "region_max_size", "superregion_partition"):
            assert out[key]["status"] == "pass"


class TestBatch:
    def test_counts_and_order(self):
        graphs = [(str(i), random_regular(30, 7, i)) for i in range(10)]
        graphs.append(("snake", make_snake(7, 1, 1)[0]))
        out = list(batch(graphs, jobs=1, timing=False))
        assert [r["input_id"] for r in out[:-1]] == [i for i, _ in graphs]
        summary = out[-1]["summary"]
        assert summary["total"] == 11
        assert summary["statuses"]["exception-snake"] == 1

    def test_parallel_matches_serial(self):
        graphs = [(str(i), random_regular(30, 8, i)) for i in range(6)]
        assert list(batch(graphs, jobs=2, timing=False)) == list(batch(graphs, jobs=1, timing=False))

    def test_empty(self):
        (only,) = list(batch([], timing=False))
        assert only["summary"]["total"] == 0

    def test_parse_error_inline(self):
        items = [("1", decode_graph6(encode_graph6(Graph.complete(8)))), ("2", ValueError("bad"))]
        out = list(batch(items, timing=False))
        assert out[1]["status"] == "parse-error"
        assert out[-1]["summary"]["statuses"]["parse-error"] == 1
