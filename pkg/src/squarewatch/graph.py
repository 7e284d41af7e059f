"""Immutable simple graphs, BFS distances, graph powers and distance-2 profiles."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import GraphInputError


class Distance(enum.Enum):
    """Sentinel values for distances that are not finite integers."""

    INF = "inf"


INF = Distance.INF


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the sorted tuple of neighbours of ``v``.  Instances are
    validated on construction and never mutated afterwards.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    _nbrs: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphInputError(f"negative vertex count {self.n}")
        if len(self.adj) != self.n:
            raise GraphInputError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        nbrs = []
        for v, row in enumerate(self.adj):
            s = frozenset(row)
            if len(s) != len(row):
                raise GraphInputError(f"duplicate neighbour in adj({v})")
            if v in s:
                raise GraphInputError(f"loop at vertex {v}")
            for u in row:
                if not 0 <= u < self.n:
                    raise GraphInputError(f"neighbour {u} of {v} out of range")
            if list(row) != sorted(row):
                raise GraphInputError(f"adj({v}) is not sorted")
            nbrs.append(s)
        for v, s in enumerate(nbrs):
            for u in s:
                if v not in nbrs[u]:
                    raise GraphInputError(f"asymmetric adjacency: {v}->{u} without {u}->{v}")
        object.__setattr__(self, "_nbrs", tuple(nbrs))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphInputError(f"loop at vertex {u}")
            if v in rows[u]:
                raise GraphInputError(f"duplicate edge ({u}, {v})")
            rows[u].add(v)
            rows[v].add(u)
        return cls(n, tuple(tuple(sorted(r)) for r in rows))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, tuple(tuple(u for u in range(n) if u != v) for v in range(n)))

    def neighbors(self, v: int) -> frozenset[int]:
        return self._nbrs[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbrs[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.adj):
            for v in row:
                if u < v:
                    yield (u, v)

    @property
    def num_edges(self) -> int:
        return sum(len(row) for row in self.adj) // 2

    def regular_degree(self) -> Optional[int]:
        """Common degree if the graph is regular, else ``None``."""
        if self.n == 0:
            return 0
        degs = {len(row) for row in self.adj}
        return degs.pop() if len(degs) == 1 else None

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int32)
        for v, row in enumerate(self.adj):
            a[v, list(row)] = 1
        return a

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled to ``0..k-1`` in increasing vertex order."""
        verts = sorted(set(vertices))
        index = {v: i for i, v in enumerate(verts)}
        return Graph(
            len(verts),
            tuple(tuple(sorted(index[u] for u in self.adj[v] if u in index)) for v in verts),
        )

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.n
        rows = list(self.adj) + [tuple(u + shift for u in row) for row in other.adj]
        return Graph(self.n + other.n, tuple(rows))


def _check_vertex(g: Graph, v: int) -> None:
    if not isinstance(v, (int, np.integer)) or not 0 <= v < g.n:
        raise GraphInputError(f"vertex {v!r} out of range [0, {g.n})")


def bfs_distances(g: Graph, v: int) -> list[int | Distance]:
    """Distances from ``v``; unreachable vertices get :data:`INF`."""
    _check_vertex(g, v)
    dist: list[int | Distance] = [INF] * g.n
    dist[v] = 0
    queue = deque([v])
    while queue:
        x = queue.popleft()
        dx = dist[x]
        for y in g.adj[x]:
            if dist[y] is INF:
                dist[y] = dx + 1  # type: ignore[operator]
                queue.append(y)
    return dist


def components(g: Graph, removed: Iterable[int] = ()) -> list[list[int]]:
    """Connected components of ``g`` minus ``removed``, each sorted, ordered by minimum."""
    seen = set(removed)
    comps = []
    for s in range(g.n):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def component_of(g: Graph, v: int, removed: Iterable[int] = ()) -> frozenset[int]:
    """Vertex set of the component containing ``v`` in ``g`` minus ``removed``."""
    blocked = set(removed)
    if v in blocked:
        raise GraphInputError(f"vertex {v} is among the removed vertices")
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for y in g.adj[x]:
            if y not in seen and y not in blocked:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


def is_connected(g: Graph) -> bool:
    return g.n == 0 or len(component_of(g, 0)) == g.n


def _reach_matrix(g: Graph, k: int) -> np.ndarray:
    """Boolean matrix of pairs at distance <= k (diagonal included)."""
    a = g.adjacency_matrix().astype(np.float32)
    reach = np.eye(g.n, dtype=bool) | (a > 0)
    for _ in range(k - 1):
        nxt = reach | ((reach.astype(np.float32) @ a) > 0)
        if np.array_equal(nxt, reach):
            break
        reach = nxt
    return reach


def graph_power(g: Graph, k: int) -> Graph:
    """``G^k``: join every pair of distinct vertices at distance at most ``k``."""
    if not isinstance(k, int) or k < 1:
        raise GraphInputError(f"graph power needs k >= 1, got {k!r}")
    if k == 1:
        return g
    reach = _reach_matrix(g, k)
    np.fill_diagonal(reach, False)
    return Graph(g.n, tuple(tuple(int(u) for u in np.flatnonzero(reach[v])) for v in range(g.n)))


@dataclass(frozen=True)
class Dist2Profile:
    """Per-vertex distance-2 data.

    ``n2prime[v]`` holds the members of ``n2[v]`` that have a neighbour at
    distance 3 from ``v``.
    """

    deg2: tuple[int, ...]
    n2: tuple[frozenset[int], ...]
    n2prime: tuple[frozenset[int], ...]
    low_degree: tuple[bool, ...]

    @property
    def total_deg2(self) -> int:
        return sum(self.deg2)

    def within2(self, g: Graph, v: int) -> frozenset[int]:
        """Closed 2-ball ``{v} | N(v) | N2(v)``."""
        return frozenset({v}) | g.neighbors(v) | self.n2[v]


def dist2_profile(g: Graph) -> Dist2Profile:
    n = g.n
    if n == 0:
        return Dist2Profile((), (), (), ())
    a = g.adjacency_matrix().astype(np.float32)
    eye = np.eye(n, dtype=bool)
    adj = a > 0
    reach2 = eye | adj | ((a @ a) > 0)
    at2 = reach2 & ~adj & ~eye
    reach3 = reach2 | ((reach2.astype(np.float32) @ a) > 0)
    at3 = reach3 & ~reach2
    # u in N2(v) is a boundary vertex when some neighbour of u lies in N3(v)
    touches3 = (at3.astype(np.float32) @ a) > 0
    boundary = at2 & touches3
    n2 = tuple(frozenset(int(u) for u in np.flatnonzero(at2[v])) for v in range(n))
    n2p = tuple(frozenset(int(u) for u in np.flatnonzero(boundary[v])) for v in range(n))
    deg2 = tuple(len(s) for s in n2)
    return Dist2Profile(deg2, n2, n2p, tuple(x <= 3 for x in deg2))


@dataclass(frozen=True)
class BasicChecks:
    is_connected: bool
    is_regular: Optional[int]
    square_complete: bool


def basic_checks(g: Graph, profile: Optional[Dist2Profile] = None) -> BasicChecks:
    if profile is None:
        profile = dist2_profile(g)
    conn = is_connected(g)
    # every pair within distance 2 <=> deg + deg2 = n - 1 everywhere
    square_complete = all(g.degree(v) + profile.deg2[v] == g.n - 1 for v in range(g.n))
    return BasicChecks(conn, g.regular_degree(), square_complete)


def deg2_from_power(g: Graph) -> list[int]:
    """Independent deg2 route: degree in ``G^2`` minus degree in ``G``."""
    sq = graph_power(g, 2)
    return [sq.degree(v) - g.degree(v) for v in range(g.n)]


def relabel(n: int, edges: Sequence[tuple[object, object]]) -> tuple[Graph, dict[object, int]]:
    """Map arbitrary hashable labels to dense ids in first-seen order."""
    mapping: dict[object, int] = {}
    for u, v in edges:
        for x in (u, v):
            if x not in mapping:
                mapping[x] = len(mapping)
    if len(mapping) > n:
        raise GraphInputError(f"{len(mapping)} labels exceed declared n={n}")
    return Graph.from_edges(n, [(mapping[u], mapping[v]) for u, v in edges]), mapping
