"""Constructors for the named graph families, closure gadgets and random regular graphs.

Every constructor returns a :class:`~squarewatch.graph.Graph` together with a
:class:`FamilyMeta` naming the structurally important vertices, so tests can
cross-check the analyzer against what was actually built.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Optional, Sequence

from .errors import GraphInputError, RetryExhaustedError
from .graph import Graph

RANDOM_REGULAR_ATTEMPTS = 10_000


class FamilyKind(str, enum.Enum):
    SNAKE = "Snake"
    PEANUT = "Peanut"
    TAIL_CLOSURE = "TailClosure"
    ATAIL_CLOSURE = "ATailClosure"
    BTAIL_CLOSURE = "BTailClosure"
    MULTITAIL_CLOSURE = "MultitailClosure"
    RANDOM_REGULAR = "RandomRegular"
    COLLISION_GADGET = "CollisionGadget"


@dataclass(frozen=True)
class FamilyMeta:
    kind: FamilyKind
    d: int
    params: dict[str, Any]
    labeled: dict[str, Any]


class PartialGraph:
    """Graph under construction with a target degree ``d``.

    ``deficiency(v)`` is the number of edges ``v`` still needs.
    """

    def __init__(self, d: int) -> None:
        self.d = d
        self.adj: list[set[int]] = []
        self.roles: dict[str, Any] = {}

    @property
    def n(self) -> int:
        return len(self.adj)

    def add_vertices(self, count: int) -> list[int]:
        start = len(self.adj)
        self.adj.extend(set() for _ in range(count))
        return list(range(start, start + count))

    def add_edge(self, u: int, v: int) -> None:
        if u == v or v in self.adj[u]:
            raise GraphInputError(f"bad edge ({u}, {v})")
        self.adj[u].add(v)
        self.adj[v].add(u)
        if len(self.adj[u]) > self.d or len(self.adj[v]) > self.d:
            raise GraphInputError(f"edge ({u}, {v}) exceeds degree {self.d}")

    def add_clique_minus_matching(self, verts: Sequence[int], matched: int) -> None:
        """Clique on ``verts`` minus the matching pairing ``verts[0:2m]`` consecutively."""
        missing = {(verts[2 * i], verts[2 * i + 1]) for i in range(matched)}
        for i, u in enumerate(verts):
            for v in verts[i + 1 :]:
                if (u, v) not in missing:
                    self.add_edge(u, v)

    def deficiency(self, v: int) -> int:
        return self.d - len(self.adj[v])

    def deficient(self) -> dict[int, int]:
        return {v: self.deficiency(v) for v in range(self.n) if self.deficiency(v)}

    def to_graph(self) -> Graph:
        bad = self.deficient()
        if bad:
            raise GraphInputError(f"graph is not {self.d}-regular; deficiencies {bad}")
        return Graph(self.n, tuple(tuple(sorted(s)) for s in self.adj))

    def copy(self) -> "PartialGraph":
        p = PartialGraph(self.d)
        p.adj = [set(s) for s in self.adj]
        p.roles = dict(self.roles)
        return p


def make_clique_minus_matching(q: int, m: int) -> Graph:
    """``K_q`` with the matching ``{0,1}, {2,3}, ..., {2m-2, 2m-1}`` removed."""
    if q < 0 or m < 0 or 2 * m > q:
        raise GraphInputError(f"need 0 <= 2m <= q, got q={q}, m={m}")
    p = PartialGraph(max(q - 1, 0))
    p.add_clique_minus_matching(p.add_vertices(q), m)
    return Graph(q, tuple(tuple(sorted(s)) for s in p.adj))


def _require_odd(d: int, minimum: int) -> None:
    if d % 2 == 0:
        raise GraphInputError(f"tail structures need odd d, got {d}")
    if d < minimum:
        raise GraphInputError(f"need d >= {minimum}, got {d}")


def _append_tail(p: PartialGraph, k: int, prefix: str = "") -> int:
    """Append a ``k``-segment tail to ``p``; return its dangling vertex ``w_T``."""
    d = p.d
    # first segment: connector, d-1 matched vertices, then the two apex vertices
    seg = p.add_vertices(d + 2)
    conn, matched, apex = seg[0], seg[1:d], seg[d:]
    p.add_clique_minus_matching(matched + apex, (d - 1) // 2)
    for x in matched:
        p.add_edge(conn, x)
    connectors = [conn]
    for _ in range(k - 1):
        seg = p.add_vertices(d + 1)
        entry, out = seg[0], seg[1]
        p.add_clique_minus_matching(seg, 1)
        p.add_edge(connectors[-1], entry)
        connectors.append(out)
    p.roles[prefix + "y1"], p.roles[prefix + "y2"] = apex
    p.roles[prefix + "w_T"] = connectors[-1]
    p.roles[prefix + "connectors"] = connectors
    return connectors[-1]


def make_tail_fragment(d: int, k: int) -> PartialGraph:
    """A ``k``-segment tail whose last connector ``w_T`` lacks one edge."""
    _require_odd(d, 5)
    if k < 1:
        raise GraphInputError(f"need k >= 1 segments, got {k}")
    p = PartialGraph(d)
    _append_tail(p, k)
    return p


def mirror_close(p: PartialGraph) -> Graph:
    """Two disjoint copies of ``p`` with each deficient vertex joined to its mirror."""
    deficient = p.deficient()
    if not deficient or any(v != 1 for v in deficient.values()):
        raise GraphInputError(f"mirror_close needs every deficiency equal to 1, got {deficient}")
    q = PartialGraph(p.d)
    q.adj = [set(s) for s in p.adj] + [{u + p.n for u in s} for s in p.adj]
    for v in deficient:
        q.add_edge(v, v + p.n)
    return q.to_graph()


def make_snake(d: int, ka: int, kb: int) -> tuple[Graph, FamilyMeta]:
    _require_odd(d, 7)
    if ka < 1 or kb < 1:
        raise GraphInputError("both tails need at least one segment")
    p = PartialGraph(d)
    wa = _append_tail(p, ka, "A.")
    wb = _append_tail(p, kb, "B.")
    p.add_edge(wa, wb)
    meta = FamilyMeta(FamilyKind.SNAKE, d, {"ka": ka, "kb": kb, "k": ka + kb}, dict(p.roles))
    return p.to_graph(), meta


def make_peanut(d: int) -> tuple[Graph, FamilyMeta]:
    if d % 2 or d < 8:
        raise GraphInputError(f"peanut graphs need even d >= 8, got {d}")
    p = PartialGraph(d)
    r1 = p.add_vertices(d + 1)
    w1, w2 = r1[0], r1[1]
    p.add_clique_minus_matching(r1, 1)
    r2 = p.add_vertices(d + 2)
    u, v123, rest = r2[0], r2[1:4], r2[4:]
    p.add_clique_minus_matching(rest + v123, (d - 2) // 2)
    for x in rest:
        p.add_edge(u, x)
    p.add_edge(u, w1)
    p.add_edge(u, w2)
    labeled = {"u": u, "w1": w1, "w2": w2, "v1": v123[0], "v2": v123[1], "v3": v123[2],
               "R1": r1, "R2": r2}
    return p.to_graph(), FamilyMeta(FamilyKind.PEANUT, d, {}, labeled)


def clique_cap(p: PartialGraph, attach: int, r: int) -> PartialGraph:
    """Close ``attach`` (deficiency ``r``) with ``K_{d+1}`` minus an ``r/2``-matching."""
    if r % 2 or r < 2:
        raise GraphInputError(f"cap size must be even and >= 2, got {r}")
    if p.deficiency(attach) != r:
        raise GraphInputError(f"vertex {attach} has deficiency {p.deficiency(attach)}, not {r}")
    if r > p.d + 1:
        raise GraphInputError(f"cap size {r} exceeds d+1={p.d + 1}")
    q = p.copy()
    cap = q.add_vertices(q.d + 1)
    q.add_clique_minus_matching(cap, r // 2)
    for x in cap[:r]:
        q.add_edge(attach, x)
    q.roles.setdefault("caps", [])
    q.roles["caps"] = list(q.roles["caps"]) + [cap]
    return q


def make_atail_graph(d: int, k: int, x_prime: int) -> tuple[Graph, FamilyMeta]:
    _require_odd(d, 7)
    if k < 1:
        raise GraphInputError(f"need k >= 1 segments, got {k}")
    if x_prime % 2 or not 0 <= x_prime < d - 3:
        raise GraphInputError(f"A tail needs even 0 <= |X'| < d-3, got {x_prime}")
    p = PartialGraph(d)
    w_t = _append_tail(p, k)
    u_t, z, y1, y2 = p.add_vertices(4)
    xs = p.add_vertices(d - 2)
    p.add_edge(u_t, w_t)
    p.add_edge(u_t, z)
    for x in xs:
        p.add_edge(u_t, x)
    p.add_clique_minus_matching(xs, x_prime // 2)
    for x in xs:
        p.add_edge(x, y1)
        p.add_edge(x, y2)
    p.add_edge(y1, y2)
    p.add_edge(z, y1)
    p.add_edge(z, y2)
    for x in xs[:x_prime]:
        p.add_edge(x, z)
    p.roles.update(u_T=u_t, z=z, X=xs, X_prime=xs[:x_prime], head_y1=y1, head_y2=y2)
    p = clique_cap(p, z, d - x_prime - 3)
    meta = FamilyMeta(FamilyKind.ATAIL_CLOSURE, d, {"k": k, "x_prime": x_prime}, dict(p.roles))
    return p.to_graph(), meta


def make_btail_graph(d: int, k: int, x_prime: int) -> tuple[Graph, FamilyMeta]:
    _require_odd(d, 7)
    if k < 1:
        raise GraphInputError(f"need k >= 1 segments, got {k}")
    if x_prime % 2 or not 2 <= x_prime <= d - 3:
        raise GraphInputError(f"B tail needs even 2 <= |X'| <= d-3, got {x_prime}")
    p = PartialGraph(d)
    w_t = _append_tail(p, k)
    u_t, w, z = p.add_vertices(3)
    xs = p.add_vertices(d - 1)
    p.add_edge(u_t, w_t)
    p.add_clique_minus_matching(xs, x_prime // 2)
    for x in xs:
        p.add_edge(u_t, x)
        p.add_edge(w, x)
    for x in xs[:x_prime]:
        p.add_edge(z, x)
    p.add_edge(w, z)
    p.roles.update(u_T=u_t, w=w, z=z, X=xs, X_prime=xs[:x_prime])
    p = clique_cap(p, z, d - 1 - x_prime)
    meta = FamilyMeta(FamilyKind.BTAIL_CLOSURE, d, {"k": k, "x_prime": x_prime}, dict(p.roles))
    return p.to_graph(), meta


def make_multitail_graph(d: int, segment_counts: Sequence[int]) -> tuple[Graph, FamilyMeta]:
    _require_odd(d, 7)
    m = len(segment_counts)
    if not 2 <= m <= d - 2:
        raise GraphInputError(f"need 2 <= m <= d-2 tails, got {m}")
    if (d - m) % 2:
        raise GraphInputError(f"d - m = {d - m} is odd; the hub cannot be closed")
    if any(k < 1 for k in segment_counts):
        raise GraphInputError("every tail needs at least one segment")
    p = PartialGraph(d)
    ends = [_append_tail(p, k, f"T{i}.") for i, k in enumerate(segment_counts)]
    (u,) = p.add_vertices(1)
    for w in ends:
        p.add_edge(u, w)
    p.roles["u"] = u
    p = clique_cap(p, u, d - m)
    meta = FamilyMeta(FamilyKind.MULTITAIL_CLOSURE, d, {"segment_counts": list(segment_counts)},
                      dict(p.roles))
    return p.to_graph(), meta


def make_collision_gadget(d: int) -> tuple[Graph, FamilyMeta]:
    """Hand-built instance whose default pair choices collide.

    A C region hangs off ``u`` through two vertices ``a < b``; ``u`` also
    carries a low-degree vertex ``y`` whose distance-2 set is ``{a, b, r}``.
    A clique cap on ``r`` is an A region whose W-vertices collide with the
    pairs chosen for the low-degree neighbours of ``r``.  Needs even ``d``.
    """
    if d % 2 or d < 8:
        raise GraphInputError(f"collision gadget needs even d >= 8, got {d}")
    p = PartialGraph(d)
    # cap on r first so its W-vertices get the smallest ids
    e1, e2 = p.add_vertices(2)
    cap_rest = p.add_vertices(d - 1)
    p.add_clique_minus_matching([e1, e2] + cap_rest, 1)
    a, b = p.add_vertices(2)
    v_side = p.add_vertices(d)
    (u,) = p.add_vertices(1)
    (y,) = p.add_vertices(1)
    (r,) = p.add_vertices(1)
    s1, s2 = p.add_vertices(2)
    q = p.add_vertices(d - 3)
    # C region on a, b and d further vertices; complement is a-v0, a-v1, b-v2, b-v3 + matching
    comp = v_side[:4]
    cregion = [a, b] + v_side
    missing = {frozenset((a, comp[0])), frozenset((a, comp[1])),
               frozenset((b, comp[2])), frozenset((b, comp[3]))}
    rest = v_side[4:]
    missing |= {frozenset((rest[2 * i], rest[2 * i + 1])) for i in range(len(rest) // 2)}
    for i, x in enumerate(cregion):
        for z in cregion[i + 1 :]:
            if frozenset((x, z)) not in missing:
                p.add_edge(x, z)
    for x in (a, b, y, *q):
        p.add_edge(u, x)
    ys = [s1, s2] + q
    for x in ys:
        p.add_edge(y, x)
    # Y = {s1, s2} + Q: complement on Q is a matching on q[:-1]; q[-1] misses r
    q_missing = {frozenset((q[2 * i], q[2 * i + 1])) for i in range((d - 4) // 2)}
    for i, x in enumerate(ys):
        for z in ys[i + 1 :]:
            if frozenset((x, z)) not in q_missing:
                p.add_edge(x, z)
    for x in [s1, s2] + q[:-1]:
        p.add_edge(r, x)
    p.add_edge(r, e1)
    p.add_edge(r, e2)
    labeled = {"a": a, "b": b, "u": u, "y": y, "r": r, "s1": s1, "s2": s2, "q": q,
               "e1": e1, "e2": e2, "c_region": cregion}
    return p.to_graph(), FamilyMeta(FamilyKind.COLLISION_GADGET, d, {}, labeled)


def _pairing_attempt(n: int, d: int, rng: random.Random) -> Optional[set[tuple[int, int]]]:
    """One pairing run: pair free stubs, keep valid pairs, re-pair the leftovers.

    Returns ``None`` when the leftover stubs admit no valid pair.
    """
    edges: set[tuple[int, int]] = set()
    stubs = [v for v in range(n) for _ in range(d)]
    while stubs:
        rng.shuffle(stubs)
        leftover: list[int] = []
        it = iter(stubs)
        for s1, s2 in zip(it, it):
            e = (s1, s2) if s1 < s2 else (s2, s1)
            if s1 != s2 and e not in edges:
                edges.add(e)
            else:
                leftover += [s1, s2]
        if len(leftover) == len(stubs):
            return None
        if leftover:
            verts = sorted(set(leftover))
            if not any(
                (x, y) not in edges for i, x in enumerate(verts) for y in verts[i + 1 :]
            ):
                return None
        stubs = leftover
    return edges


def random_regular(n: int, d: int, seed: int) -> Graph:
    """Simple ``d``-regular graph on ``n`` vertices, deterministic in ``seed``."""
    if d < 0 or n < 1 or d >= n:
        raise GraphInputError(f"need 0 <= d < n, got n={n}, d={d}")
    if (n * d) % 2:
        raise GraphInputError(f"n*d = {n * d} is odd")
    rng = random.Random(seed)
    for _ in range(RANDOM_REGULAR_ATTEMPTS):
        edges = _pairing_attempt(n, d, rng)
        if edges is not None:
            return Graph.from_edges(n, sorted(edges))
    raise RetryExhaustedError(RANDOM_REGULAR_ATTEMPTS)


def random_corpus(
    n: int,
    d: int,
    count: int,
    seed: int,
    accept: Optional[Callable[[Graph], bool]] = None,
) -> Iterator[tuple[int, Graph]]:
    """Yield ``(subseed, graph)`` for ``count`` accepted random regular graphs.

    Subseeds come from a master RNG seeded with ``seed``, so the stream is
    reproducible.  ``accept`` filters candidates (default: accept all).
    """
    master = random.Random(seed)
    produced = 0
    tries = 0
    while produced < count:
        tries += 1
        if tries > RANDOM_REGULAR_ATTEMPTS + count:
            raise RetryExhaustedError(tries)
        sub = master.getrandbits(63)
        g = random_regular(n, d, sub)
        if accept is None or accept(g):
            produced += 1
            yield sub, g
