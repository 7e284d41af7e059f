"""One test per acceptance criterion, each at its stated tolerance.

The terminal summary prints one PASS/FAIL line per criterion.  Criterion 8
runs on the bundled geng enumeration in ``fixtures/``; if that file is
missing it falls back to the criterion-3 corpus and says so in its title.
"""

from __future__ import annotations

import json
import random
import time
from pathlib import Path

import networkx as nx
import pytest

from conftest import from_nx, to_nx
from squarewatch.analysis import analyze, batch, lemma_suite
from squarewatch.decomposition import decompose, detect_peanut, detect_snake
from squarewatch.families import (
    make_atail_graph,
    make_btail_graph,
    make_multitail_graph,
    make_peanut,
    make_snake,
    random_corpus,
)
from squarewatch.graph import Graph, basic_checks, dist2_profile, graph_power
from squarewatch.io import decode_graph6, encode_graph6, iter_graph6
from squarewatch.pairbook import Tag, build_book, detect_collisions, resolve_collisions, theorem_rhs

FIXTURE = Path(__file__).parent / "fixtures" / "connected_7regular_upto12.g6"
CORPUS_DEGREES = range(7, 13)
CORPUS_SIZES = (30, 60, 120)
CORPUS_COUNT = 100
OK_STATUSES = {"pass", "exception-snake", "exception-peanut", "out-of-scope"}


def _corpus_seed(d: int, n: int) -> int:
    return 1000 * d + n


def _in_scope(g: Graph) -> bool:
    c = basic_checks(g, dist2_profile(g))
    return c.is_connected and not c.square_complete


def _corpus() -> list[tuple[str, Graph]]:
    out = []
    for d in CORPUS_DEGREES:
        for n in CORPUS_SIZES:
            for sub, g in random_corpus(n, d, CORPUS_COUNT, _corpus_seed(d, n), _in_scope):
                out.append((f"d{d}-n{n}-{sub}", g))
    return out


def _snakes():
    return [make_snake(d, ka, kb)[0] for d in (7, 9, 11) for ka in (1, 2) for kb in (1, 2)]


def _peanuts():
    return [make_peanut(d)[0] for d in (8, 10, 12)]


def _structured():
    out = []
    for d in (7, 9):
        for k in (1, 2):
            out += [(f"atail({d},{k},{x})", make_atail_graph(d, k, x)[0]) for x in range(0, d - 3, 2)]
            out += [(f"btail({d},{k},{x})", make_btail_graph(d, k, x)[0]) for x in range(2, d - 2, 2)]
        for counts in ([1, 1, 1], [1, 1, 2], [1, 2, 2], [2, 2, 2]):
            out.append((f"multitail({d},{counts})", make_multitail_graph(d, counts)[0]))
    return out


@pytest.fixture(scope="module")
def corpus_run():
    start = time.perf_counter()
    items = _corpus()
    lines = [json.dumps(r, sort_keys=True) for r in batch(items, timing=False)]
    return items, lines, time.perf_counter() - start


@pytest.mark.criterion(1, "snake exact n and sum of deg2, detectSnake (d in 7,9,11; kA,kB in 1,2)")
def test_criterion_1_snake_formulas():
    start = time.perf_counter()
    bad = []
    for d in (7, 9, 11):
        for ka in (1, 2):
            for kb in (1, 2):
                k = ka + kb
                g, _ = make_snake(d, ka, kb)
                total = dist2_profile(g).total_deg2
                if g.n != k * (d + 1) + 2:
                    bad.append(f"n({d},{ka},{kb})={g.n}")
                if total != (4 * k - 2) * (d - 1) + 8:
                    bad.append(f"sum({d},{ka},{kb})={total} != {(4 * k - 2) * (d - 1) + 8}")
                if detect_snake(g) != (d, k):
                    bad.append(f"detect({d},{ka},{kb})={detect_snake(g)}")
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"took {elapsed:.2f}s"
    assert not bad, "; ".join(bad)


@pytest.mark.criterion(2, "peanut n = 2d+3, sum of deg2 = 7d-4, detectPeanut (d in 8,10,12)")
def test_criterion_2_peanut_formulas():
    start = time.perf_counter()
    for d in (8, 10, 12):
        g, _ = make_peanut(d)
        assert g.n == 2 * d + 3
        assert dist2_profile(g).total_deg2 == 7 * d - 4
        assert detect_peanut(g) == d
    assert time.perf_counter() - start < 1.0


@pytest.mark.criterion(3, "bound holds exactly on 100 random graphs per (d, n), d 7..12, n 30/60/120")
def test_criterion_3_corpus_bound(corpus_run):
    items, lines, elapsed = corpus_run
    assert elapsed < 120, f"took {elapsed:.1f}s"
    per_cell: dict[tuple[int, int], int] = {}
    for (_, g), line in zip(items, lines):
        rep = json.loads(line)
        d = g.regular_degree()
        assert detect_snake(g) is None and detect_peanut(g) is None
        rhs = theorem_rhs(g.n, d)
        gap = graph_power(g, 2).num_edges - g.num_edges
        assert gap > rhs, (rep["input_id"], gap, rhs)
        assert rep["status"] == "pass", rep
        per_cell[(d, g.n)] = per_cell.get((d, g.n), 0) + 1
    assert len(per_cell) == 18
    assert all(c >= CORPUS_COUNT for c in per_cell.values())


@pytest.mark.criterion(4, "lemma oracles: zero counterexamples on criteria 1-3 graphs and tail closures")
def test_criterion_4_lemma_suite(corpus_run):
    start = time.perf_counter()
    failures = []
    graphs = [("snake", g) for g in _snakes()] + [("peanut", g) for g in _peanuts()]
    graphs += _structured()
    for name, g in graphs:
        suite = lemma_suite(g)
        assert suite.refused is None, (name, suite.refused)
        failures += [(name, lemma) for lemma in suite.failures]
    items, lines, _ = corpus_run
    for line in lines[:-1]:
        rep = json.loads(line)
        failures += [(rep["input_id"], k) for k, v in rep["lemmas"].items() if v["status"] == "fail"]
    assert time.perf_counter() - start < 120
    assert not failures, failures[:5]


@pytest.mark.criterion(5, "pair book: counts, distance 2, only (S4,S3) clashes, all resolved")
def test_criterion_5_pairbook():
    for name, g in _structured():
        dec = decompose(g)
        book = build_book(dec)
        assert not book.violations, (name, book.violations[:3])
        h = to_nx(g)
        for sr in dec.superregions:
            need = 4 * sum(1 for v in sr.vertices if dec.table.tags[v] == "V")
            assert len(book.pairs[sr.sid]) >= need, (name, sr.census_key)
        for p in book.all_pairs():
            assert nx.shortest_path_length(h, p.x, p.y) == 2, (name, p)
        for col in detect_collisions(book):
            assert sorted(col.tags) == [Tag.S3.value, Tag.S4.value], (name, col)
        book = resolve_collisions(dec, book)
        assert not book.unresolved and not book.violations, name
        assert all(len(owners) == 1 for owners in book.index().values()), name


@pytest.mark.criterion(6, "graph6 round trip on 1000 random graphs; agrees with networkx decoder")
def test_criterion_6_graph6():
    rng = random.Random(6)
    samples = []
    for _ in range(1000):
        n = rng.randint(1, 62)
        p = rng.random()
        g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])
        data = encode_graph6(g)
        assert encode_graph6(decode_graph6(data)) == data
        samples.append(data)
    reference = [b"C~", b"@"] + samples[:20]
    for data in reference:
        assert decode_graph6(data).adj == from_nx(nx.from_graph6_bytes(data)).adj
    assert decode_graph6(b"C~").adj == Graph.complete(4).adj
    assert decode_graph6(b"@").n == 1


@pytest.mark.criterion(7, "determinism: rerunning the criterion-3 corpus gives byte-identical JSON")
def test_criterion_7_determinism(corpus_run):
    _, lines, _ = corpus_run
    again = [json.dumps(r, sort_keys=True) for r in batch(_corpus(), timing=False)]
    assert "\n".join(again).encode() == "\n".join(lines).encode()


@pytest.mark.criterion(
    8,
    "all connected 7-regular graphs on <= 12 vertices (geng fixture): no violations"
    if FIXTURE.exists() else "FIXTURE MISSING: downgraded to the criterion-3 corpus",
)
def test_criterion_8_enumeration(corpus_run):
    if FIXTURE.exists():
        parsed = list(iter_graph6(FIXTURE.read_bytes().splitlines()))
        assert all(isinstance(g, Graph) for _, g in parsed)
        items = [(str(i), g) for i, g in parsed]
        assert len(items) == 1553
        assert all(g.regular_degree() == 7 and nx.is_connected(to_nx(g)) for _, g in items)
        reports = [analyze(g, i).status for i, g in items]
    else:
        _, lines, _ = corpus_run
        reports = [json.loads(line)["status"] for line in lines[:-1]]
    assert "violation" not in reports
    assert set(reports) <= OK_STATUSES
