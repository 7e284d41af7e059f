"""Ordered distance-2 pairs charged to superregions, and the counting bound they give.

Every superregion ``R`` gets a list of ordered pairs ``(x, y)`` at distance
exactly 2, at least ``4 |R ∩ V|`` of them, each tagged by where ``x`` and
``y`` sit relative to ``R``:

* ``S1``: both in ``R``;
* ``S2``: ``x`` in ``R`` and in class V, ``y`` outside;
* ``S3``: ``y`` in ``R`` and in class V, ``x`` outside and in class U;
* ``S4``: ``x`` in ``R`` and designated W, ``y`` outside.

Two superregions can only claim the same pair as an ``S4``/``S3`` clash;
:func:`resolve_collisions` moves the ``S3`` copy to a different incoming
vertex when the local structure allows it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .decomposition import ClassTable, Decomposition, SuperKind, Superregion, detect_peanut, detect_snake
from .errors import StructureError
from .graph import Dist2Profile, Graph, graph_power


class Tag(str, enum.Enum):
    S1 = "S1"
    S2 = "S2"
    S3 = "S3"
    S4 = "S4"


@dataclass(frozen=True)
class OrderedPair:
    x: int
    y: int
    tag: Tag
    owner: int
    rule: str = ""


@dataclass(frozen=True)
class Collision:
    x: int
    y: int
    s4_owner: int
    s3_owner: int
    tags: tuple[str, ...]
    case: str = ""


@dataclass(frozen=True)
class Resolution:
    collision: Collision
    replacement: tuple[int, int]
    new_tag: Tag


@dataclass
class PairBook:
    pairs: dict[int, list[OrderedPair]]
    collisions: list[Collision] = field(default_factory=list)
    resolutions: list[Resolution] = field(default_factory=list)
    unresolved: list[Collision] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)

    def index(self) -> dict[tuple[int, int], list[OrderedPair]]:
        idx: dict[tuple[int, int], list[OrderedPair]] = {}
        for plist in self.pairs.values():
            for p in plist:
                idx.setdefault((p.x, p.y), []).append(p)
        return idx

    @property
    def total(self) -> int:
        return sum(len(v) for v in self.pairs.values())

    def all_pairs(self) -> Iterable[OrderedPair]:
        for sid in sorted(self.pairs):
            yield from self.pairs[sid]


# ---------------------------------------------------------------- tagging


def tag_pair(x: int, y: int, region: frozenset[int], table: ClassTable) -> Optional[Tag]:
    """Tag of ``(x, y)`` relative to ``region``, or ``None`` if no rule applies."""
    xin, yin = x in region, y in region
    if xin and yin:
        return Tag.S1
    if xin and table.tags[x] == "V":
        return Tag.S2
    if yin and table.tags[y] == "V" and x in table.u:
        return Tag.S3
    if xin and x in table.w:
        return Tag.S4
    return None


def choose_incoming(profile: Dist2Profile, v: int) -> tuple[int, ...]:
    """Boundary vertices charged as incoming pairs ``(a, v)`` for a low vertex ``v``.

    All of them when ``deg2(v) = 2``, the lowest id when ``deg2(v) = 3``.
    """
    boundary = sorted(profile.n2prime[v])
    if profile.deg2[v] == 2:
        return tuple(boundary)
    if profile.deg2[v] == 3:
        return tuple(boundary[:1])
    return ()


def _tail_core_pairs(profile: Dist2Profile, tail) -> list[tuple[int, int, str]]:
    verts = tail.vertices
    out = []
    for x in sorted(verts):
        if profile.deg2[x] != 2:
            continue
        for y in sorted(profile.n2[x] & verts):
            out.append((x, y, "tail-internal"))
            out.append((y, x, "tail-internal"))
    for x in sorted(verts):
        if profile.deg2[x] == 2 and tail.u_t in profile.n2[x]:
            out.append((x, tail.u_t, "tail-out"))
    for x in sorted(verts):
        if profile.deg2[x] == 2 and tail.u_t in profile.n2[x]:
            out.append((tail.u_t, x, "tail-in"))
    return out


def _raw_pairs(g: Graph, p: Dist2Profile, sr: Superregion, table: ClassTable) -> list[tuple[int, int, str]]:
    d = g.regular_degree() or 0
    R = sr.vertices
    vclass = lambda v: table.tags[v] == "V"  # noqa: E731
    ws, _ = table.per_super[sr.sid]
    out: list[tuple[int, int, str]] = []
    kind = sr.kind

    if kind is SuperKind.SINGLETON:
        (v,) = R
        if vclass(v):
            out += [(v, a, "singleton") for a in sorted(p.n2[v])]
        return out

    if kind is SuperKind.PLAIN_REGION:
        region = sr.regions[0]
        wit = region.witnesses
        if region.label in ("A", "B"):
            V, u, X = wit["V"], wit["u"], wit["X"]
            rest = sorted(X - ws)
            if len(V) < d - 2:
                out += [(x, y, "a-region:spread") for x in rest for y in sorted(p.n2[x])]
            extra = max(0, 4 - len(V))
            for x in rest:
                outside = sorted(p.n2[x] - R)[:extra]
                out += [(y, x, "a-region:incoming") for y in outside]
            out += [(v, u, "a-region:to-hub") for v in sorted(V)]
            out += [(u, v, "a-region:from-hub") for v in sorted(V)]
            out += [(w, y, "a-region:designated") for w in sorted(ws) for y in sorted(p.n2[w])]
            return out
        if region.label == "C":
            V, u, n_u = wit["V"], wit["u"], wit["N_u"]
            (w,) = ws
            X = sorted(n_u - {w})
            for x in sorted(V) + X:
                out += [(x, y, "c-region:inside") for y in sorted(p.n2[x] & R)]
            out += [(v, u, "c-region:to-hub") for v in sorted(V)]
            out += [(u, v, "c-region:from-hub") for v in sorted(V)]
            out += [(w, y, "c-region:designated") for y in sorted(p.n2[w])]
            if len(V) < d - 2:
                y1, y2 = sorted(g.neighbors(u) - R)[:2]
                out += [(x, y, "c-region:spread") for x in X for y in (y1, y2)]
            return out
        for v in sorted(R):
            if not vclass(v):
                continue
            out += [(v, a, "low-region:out") for a in sorted(p.n2[v])]
            out += [(a, v, "low-region:in") for a in choose_incoming(p, v)]
        return out

    if kind in (SuperKind.TAIL, SuperKind.MULTITAIL):
        for t in sr.tails:
            out += _tail_core_pairs(p, t)
            out += [(t.w_t, y, "tail-designated") for y in sorted(g.neighbors(t.u_t) - t.vertices)]
        return out

    (t,) = sr.tails
    s = sr.special
    X, Xp, z = s["X"], s["X_prime"], s["z"]
    plain = sorted(X - Xp)
    partner = {x: next(iter(X - g.neighbors(x) - {x})) for x in Xp}
    b1, b2 = sorted(g.neighbors(z) - R)[:2]
    out += _tail_core_pairs(p, t)
    if kind is SuperKind.ATAIL:
        u = s["u_T"]
        out += [(u, s["y1"], "a-tail:head"), (u, s["y2"], "a-tail:head")]
        out += [(u, q, "a-tail:designated") for q in sorted(g.neighbors(z) - R)]
        out += [(x, partner[x], "a-tail:matched") for x in sorted(Xp)]
        for x in plain:
            out += [(x, t.w_t, "a-tail:to-tail"), (t.w_t, x, "a-tail:from-tail")]
        out += [(x, z, "a-tail:to-z") for x in plain]
        out += [(z, x, "a-tail:from-z") for x in plain]
        for x in sorted(Xp):
            if vclass(x):
                out += [(x, t.w_t, "a-tail:to-tail"), (t.w_t, x, "a-tail:from-tail")]
                out += [(x, b1, "a-tail:spread"), (x, b2, "a-tail:spread")]
        return out
    w = s["w"]
    out += [(w, q, "b-tail:designated") for q in sorted(g.neighbors(z) - Xp - {w})]
    out += [(x, partner[x], "b-tail:matched") for x in sorted(Xp)]
    for x in sorted(X):
        out += [(x, t.w_t, "b-tail:to-tail"), (t.w_t, x, "b-tail:from-tail")]
    out += [(x, z, "b-tail:to-z") for x in plain]
    out += [(z, x, "b-tail:from-z") for x in plain]
    for x in sorted(Xp):
        if vclass(x):
            out += [(x, b1, "b-tail:spread"), (x, b2, "b-tail:spread")]
    return out


def build_pairs(g: Graph, profile: Dist2Profile, sr: Superregion,
                table: ClassTable) -> tuple[list[OrderedPair], list[dict]]:
    """Pairs for one superregion plus any violations found while tagging them."""
    violations: list[dict] = []
    seen: set[tuple[int, int]] = set()
    pairs = []
    for x, y, rule in _raw_pairs(g, profile, sr, table):
        if (x, y) in seen:
            continue
        seen.add((x, y))
        if y not in profile.n2[x]:
            violations.append({"kind": "not-distance-2", "sid": sr.sid, "pair": [x, y], "rule": rule})
            continue
        tag = tag_pair(x, y, sr.vertices, table)
        if tag is None:
            violations.append({"kind": "untaggable", "sid": sr.sid, "pair": [x, y], "rule": rule})
            continue
        pairs.append(OrderedPair(x, y, tag, sr.sid, rule))
    need = 4 * sum(1 for v in sr.vertices if table.tags[v] == "V")
    if len(pairs) < need:
        violations.append({"kind": "too-few-pairs", "sid": sr.sid, "superregion": sr.census_key,
                           "pairs": len(pairs), "needed": need})
    return pairs, violations


def refusal_reason(g: Graph) -> Optional[str]:
    if detect_snake(g) is not None:
        return "snake"
    if detect_peanut(g) is not None:
        return "peanut"
    return None


def build_book(dec: Decomposition, *, allow_exceptions: bool = False) -> PairBook:
    """Pairs for every superregion.  Snake and peanut graphs are refused by default."""
    if not allow_exceptions:
        why = refusal_reason(dec.graph)
        if why:
            raise StructureError(f"pair sets are not defined for {why} graphs")
    book = PairBook({})
    for sr in dec.superregions:
        pairs, bad = build_pairs(dec.graph, dec.profile, sr, dec.table)
        book.pairs[sr.sid] = pairs
        book.violations.extend(bad)
    return book


# ---------------------------------------------------------------- collisions


def detect_collisions(book: PairBook) -> list[Collision]:
    """Pairs claimed by more than one superregion.

    Only an ``S4`` copy against an ``S3`` copy is expected; anything else
    comes back with ``case="bad-overlap"``.
    """
    out = []
    for (x, y), owners in sorted(book.index().items()):
        if len(owners) < 2:
            continue
        tags = tuple(sorted(o.tag.value for o in owners))
        s4 = [o for o in owners if o.tag is Tag.S4]
        s3 = [o for o in owners if o.tag is Tag.S3]
        if len(owners) == 2 and len(s4) == 1 and len(s3) == 1:
            out.append(Collision(x, y, s4[0].owner, s3[0].owner, tags))
        else:
            out.append(Collision(x, y, owners[0].owner, owners[1].owner, tags, "bad-overlap"))
    return out


def _common_neighbor(g: Graph, a: int, b: int) -> Optional[int]:
    common = sorted(g.neighbors(a) & g.neighbors(b))
    return common[0] if common else None


def collision_case(dec: Decomposition, col: Collision) -> tuple[str, list[int]]:
    """Descriptive case label and replacement candidates for an ``S4``/``S3`` clash."""
    g, p = dec.graph, dec.profile
    srs = {sr.sid: sr for sr in dec.superregions}
    R = srs[col.s4_owner]
    x, y = col.x, col.y
    if R.kind is SuperKind.PLAIN_REGION and R.label in ("A", "B"):
        others = sorted(p.n2[y] - R.vertices)
        if len(others) == 1 and others[0] in p.n2prime[y]:
            return "a-region", others
        return "a-region-peanut", []
    if R.kind is SuperKind.PLAIN_REGION and R.label == "C":
        u = _common_neighbor(g, x, y)
        if u is None:
            return "c-region-no-hub", []
        return "c-region", sorted((R.vertices & g.neighbors(u) & p.n2[y]) - {x})
    if R.kind is SuperKind.MULTITAIL:
        return "multitail", []
    if R.kind in (SuperKind.ATAIL, SuperKind.BTAIL):
        return "a-or-b-tail", []
    if R.kind is SuperKind.TAIL:
        key = (p.deg2[y], len(p.n2prime[y]))
        if key == (3, 2):
            return "tail-boundary-2-of-3", sorted(p.n2prime[y] - {x})
        if key == (3, 3):
            return "tail-boundary-3-of-3", sorted(p.n2prime[y] - {x} - dec.table.w)
        return f"tail-deg2-{key[0]}-boundary-{key[1]}", []
    return f"unexpected-{R.census_key}", []


def resolve_collisions(dec: Decomposition, book: PairBook) -> PairBook:
    """Move each clashing ``S3`` pair to another incoming vertex, to a fixed point.

    A candidate ``c`` replaces ``(x, y)`` by ``(c, y)`` in the ``S3`` owner when
    ``(c, y)`` is unclaimed and still tags validly there.  Clashes with no
    applicable move stay in ``book.unresolved`` with their case label.
    """
    srs = {sr.sid: sr for sr in dec.superregions}
    limit = max(1, book.total)
    for _ in range(limit):
        cols = detect_collisions(book)
        book.collisions.extend(c for c in cols if c not in book.collisions)
        pending = [c for c in cols if c.case != "bad-overlap"]
        if not pending:
            break
        progressed = False
        stuck = []
        for col in pending:
            case, cands = collision_case(dec, col)
            col = Collision(col.x, col.y, col.s4_owner, col.s3_owner, col.tags, case)
            idx = book.index()
            owner = srs[col.s3_owner]
            chosen = None
            for c in cands:
                if (c, col.y) in idx or col.y not in dec.profile.n2[c]:
                    continue
                tag = tag_pair(c, col.y, owner.vertices, dec.table)
                if tag in (Tag.S1, Tag.S3):
                    chosen = (c, tag)
                    break
            if chosen is None:
                stuck.append(col)
                continue
            plist = book.pairs[col.s3_owner]
            for i, pr in enumerate(plist):
                if (pr.x, pr.y) == (col.x, col.y) and pr.tag is Tag.S3:
                    plist[i] = OrderedPair(chosen[0], col.y, chosen[1], col.s3_owner, pr.rule + "+moved")
                    break
            book.resolutions.append(Resolution(col, (chosen[0], col.y), chosen[1]))
            progressed = True
        if not progressed:
            book.unresolved = stuck
            break
    else:
        book.violations.append({"kind": "resolution-cycle", "passes": limit})
    bad = [c for c in detect_collisions(book) if c.case == "bad-overlap"]
    book.violations.extend({"kind": "bad-overlap", "pair": [c.x, c.y], "tags": list(c.tags)}
                           for c in bad)
    return book


# ---------------------------------------------------------------- bound


def theorem_rhs(n: int, d: int) -> Fraction:
    """``2n(1 - 2/(d+1) - 3/(d-3))`` as an exact rational."""
    if d <= 3:
        raise StructureError(f"bound undefined for d={d}")
    return 2 * n * (1 - Fraction(2, d + 1) - Fraction(3, d - 3))


@dataclass(frozen=True)
class BoundRecord:
    sum_pairs: int
    four_v: int
    direct_sum_deg2: int
    e_g: int
    e_g2: int
    theorem_rhs: Fraction
    high_class_shortcut: bool
    verdict: bool


def aggregate_bound(dec: Decomposition, book: Optional[PairBook] = None) -> BoundRecord:
    g = dec.graph
    d, n = dec.d, g.n
    if not dec.in_scope:
        raise StructureError("bound check needs a connected d-regular graph, d > 6, non-complete square")
    e_g = g.num_edges
    e_g2 = graph_power(g, 2).num_edges
    rhs = theorem_rhs(n, d)
    shortcut = len(dec.table.u) * (d - 3) >= 3 * n
    total = book.total if book is not None else 0
    verdict = e_g2 - e_g > rhs
    if shortcut:
        verdict = verdict and dec.profile.total_deg2 >= 4 * n
    return BoundRecord(total, 4 * len(dec.table.v), dec.profile.total_deg2, e_g, e_g2, rhs,
                       shortcut, verdict)


def incoming_s3_violations(dec: Decomposition, book: PairBook) -> list[dict]:
    """Low vertices receiving more than ``4 - deg2`` incoming ``S3`` pairs."""
    p = dec.profile
    out = []
    for sid, plist in book.pairs.items():
        count: dict[int, int] = {}
        for pr in plist:
            if pr.tag is Tag.S3:
                count[pr.y] = count.get(pr.y, 0) + 1
        for v, c in sorted(count.items()):
            if p.low_degree[v] and c > 4 - p.deg2[v]:
                out.append({"sid": sid, "vertex": v, "incoming": c, "limit": 4 - p.deg2[v]})
    return out
