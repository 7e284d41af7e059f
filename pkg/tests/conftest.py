from __future__ import annotations

import networkx as nx
import pytest

from squarewatch.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    h = nx.convert_node_labels_to_integers(h, ordering="sorted")
    return Graph.from_edges(h.number_of_nodes(), h.edges())


def oracle_n2(g: Graph) -> list[set[int]]:
    """N2 via networkx shortest paths."""
    h = to_nx(g)
    out = []
    for v in range(g.n):
        lengths = nx.single_source_shortest_path_length(h, v, cutoff=2)
        out.append({u for u, k in lengths.items() if k == 2})
    return out


def oracle_n2prime(g: Graph) -> list[set[int]]:
    h = to_nx(g)
    out = []
    for v in range(g.n):
        lengths = nx.single_source_shortest_path_length(h, v, cutoff=3)
        at3 = {u for u, k in lengths.items() if k == 3}
        out.append({u for u, k in lengths.items() if k == 2 and set(h[u]) & at3})
    return out


@pytest.fixture
def k10_minus_matching() -> Graph:
    return Graph.from_edges(10, [(u, v) for u in range(10) for v in range(u + 1, 10) if v != u + 5])


# ---------------------------------------------------------------- acceptance report

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    number, title = mark.args
    entry = _CRITERIA.setdefault(number, {"title": title, "ok": True, "notes": []})
    if call.excinfo is not None:
        entry["ok"] = False
        msg = str(call.excinfo.value).splitlines()
        entry["notes"].append(msg[0] if msg else call.excinfo.typename)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        line = f"criterion {number}: {'PASS' if entry['ok'] else 'FAIL'}  {entry['title']}"
        if entry["notes"]:
            line += f"  ({entry['notes'][0][:160]})"
        terminalreporter.write_line(line)
