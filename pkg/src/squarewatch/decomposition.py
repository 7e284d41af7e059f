"""Regions, tails and superregions of a regular graph, plus the U/W/N/V vertex table.

The pipeline is::

    profile -> low_degree_set -> region_equivalence -> build_and_classify_regions
            -> find_tails -> assemble_superregions -> build_class_table

:func:`decompose` runs all of it.  Structural claims that the theory
guarantees for connected ``d``-regular graphs with ``d > 6`` and a
non-complete square are asserted when ``strict=True``; outside that scope
the same discovery runs without assertions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

from .errors import StructureError
from .graph import Dist2Profile, Graph, basic_checks, component_of, components, dist2_profile

CLASS_BY_BOUNDARY = {1: "E", 2: "F", 3: "G"}


@dataclass(frozen=True)
class Region:
    """A class of low-degree vertices together with all their neighbours."""

    vertices: frozenset[int]
    core: frozenset[int]
    label: str
    witnesses: dict[str, Any] = field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def min_vertex(self) -> int:
        return min(self.vertices)


@dataclass(frozen=True)
class Tail:
    """A chain of segments starting at a B region.

    ``connectors[i]`` is the vertex of segment ``i`` that links forward;
    the last one is ``w_t``.  ``entries[i]`` is the vertex of segment
    ``i + 1`` joined to ``connectors[i]``.  ``apex`` are the two
    distance-2-degree-1 vertices of the first segment.
    """

    segments: tuple[frozenset[int], ...]
    connectors: tuple[int, ...]
    u_t: int
    apex: tuple[int, int]
    entries: tuple[int, ...] = ()

    @property
    def k(self) -> int:
        return len(self.segments)

    @property
    def w_t(self) -> int:
        return self.connectors[-1]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset().union(*self.segments)

    def prefixes(self) -> list["Tail"]:
        """All tails contained in this one (including itself), shortest first."""
        out = []
        for i in range(1, self.k + 1):
            u = self.u_t if i == self.k else self.entries[i - 1]
            out.append(Tail(self.segments[:i], self.connectors[:i], u, self.apex,
                            self.entries[: i - 1]))
        return out


class SuperKind(str, enum.Enum):
    SINGLETON = "Singleton"
    PLAIN_REGION = "PlainRegion"
    TAIL = "Tail"
    MULTITAIL = "Multitail"
    ATAIL = "ATail"
    BTAIL = "BTail"


@dataclass(frozen=True)
class Superregion:
    sid: int
    kind: SuperKind
    vertices: frozenset[int]
    regions: tuple[Region, ...] = ()
    tails: tuple[Tail, ...] = ()
    special: dict[str, Any] = field(default_factory=dict, compare=False)
    flags: tuple[str, ...] = ()

    @property
    def label(self) -> Optional[str]:
        if self.kind is SuperKind.PLAIN_REGION:
            return self.regions[0].label
        return None

    @property
    def census_key(self) -> str:
        if self.kind is SuperKind.PLAIN_REGION:
            return f"PlainRegion({self.label})"
        if self.kind is SuperKind.MULTITAIL:
            return f"Multitail({len(self.tails)})"
        return self.kind.value


@dataclass(frozen=True)
class ClassTable:
    """Vertex classes: high distance-2 degree (U), designated W and N, rest (V)."""

    u: frozenset[int]
    w: frozenset[int]
    n_set: frozenset[int]
    v: frozenset[int]
    tags: tuple[str, ...]
    per_super: dict[int, tuple[frozenset[int], frozenset[int]]]
    violations: tuple[dict[str, Any], ...] = ()


@dataclass(frozen=True)
class PartitionVerdict:
    ok: bool
    overlaps: tuple[tuple[int, tuple[int, ...]], ...] = ()
    uncovered: tuple[int, ...] = ()
    refused: Optional[str] = None


@dataclass
class Decomposition:
    graph: Graph
    profile: Dist2Profile
    d: int
    low: frozenset[int]
    classes: list[list[int]]
    regions: list[Region]
    tails: list[Tail]
    superregions: list[Superregion]
    table: ClassTable
    in_scope: bool
    flags: list[str] = field(default_factory=list)

    def superregion_of(self) -> dict[int, int]:
        owner = {}
        for sr in self.superregions:
            for v in sr.vertices:
                owner.setdefault(v, sr.sid)
        return owner

    def census(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for sr in self.superregions:
            out[sr.census_key] = out.get(sr.census_key, 0) + 1
        return dict(sorted(out.items()))


# ---------------------------------------------------------------- regions


def low_degree_set(profile: Dist2Profile) -> frozenset[int]:
    return frozenset(v for v, low in enumerate(profile.low_degree) if low)


def region_equivalence(
    g: Graph, low: Iterable[int], profile: Optional[Dist2Profile] = None
) -> list[list[int]]:
    """Classes of low-degree vertices chained by steps of distance at most 2."""
    if profile is None:
        profile = dist2_profile(g)
    members = set(low)
    seen: set[int] = set()
    classes = []
    for s in sorted(members):
        if s in seen:
            continue
        seen.add(s)
        cls = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x) | profile.n2[x]:
                if y in members and y not in seen:
                    seen.add(y)
                    cls.append(y)
                    stack.append(y)
        classes.append(sorted(cls))
    return classes


def _classify(g: Graph, p: Dist2Profile, core: frozenset[int], verts: frozenset[int],
              d: int) -> tuple[str, dict[str, Any]]:
    low = sorted(core)
    t_min = min(p.deg2[x] for x in low)
    if t_min == 1:
        v = next(x for x in low if p.deg2[x] == 1)
        (u,) = p.n2[v]
        g_v = component_of(g, v, removed=[u])
        t = len(g_v & g.neighbors(u))
        ones = frozenset(x for x in verts if p.deg2[x] == 1)
        wit = {"v": v, "u": u, "t": t, "g_v": g_v, "V": ones, "X": verts - ones - {u}}
        return ("B" if t == d - 1 else "A"), wit
    twos = [x for x in low if p.deg2[x] == 2]
    if twos:
        single = [x for x in twos if len(p.n2prime[x]) == 1]
        if single:
            v = single[0]
            (u,) = p.n2prime[v]
            g_v = component_of(g, v, removed=[u])
            wit = {"v": v, "u": u, "g_v": g_v, "V": g_v & p.n2[u],
                   "N_u": verts & g.neighbors(u)}
            return "C", wit
        return "D", {"v": twos[0]}
    k = min(len(p.n2prime[x]) for x in low)
    v = next(x for x in low if len(p.n2prime[x]) == k)
    return CLASS_BY_BOUNDARY.get(k, "unclassified"), {"v": v, "k": k}


def region_size_violations(g: Graph, p: Dist2Profile, region: Region, d: int) -> list[str]:
    """Which of the basic region bounds fail for ``region`` (empty when all hold)."""
    bad = []
    size = len(region.vertices)
    if size < d + 1:
        bad.append("min-size")
    for v in region.core:
        if not region.vertices <= p.within2(g, v):
            bad.append("two-ball")
            break
    t = min(p.deg2[x] for x in region.vertices)
    if size > d + t + 1:
        bad.append("size-vs-min-deg2")
    if size > d + 4:
        bad.append("max-size")
    return bad


def build_and_classify_regions(
    g: Graph, profile: Dist2Profile, classes: Sequence[Sequence[int]], *, strict: bool = True
) -> list[Region]:
    d = g.regular_degree()
    if d is None:
        if strict:
            raise StructureError("region classification needs a regular graph")
        d = max((g.degree(v) for v in range(g.n)), default=0)
    regions = []
    for cls in classes:
        core = frozenset(cls)
        verts = core.union(*(g.neighbors(x) for x in core))
        label, wit = _classify(g, profile, core, verts, d)
        region = Region(verts, core, label, wit)
        if strict:
            bad = region_size_violations(g, profile, region, d)
            if bad or label == "unclassified":
                raise StructureError(
                    f"region at {sorted(core)[:5]} violates {bad or ['classification']}",
                    witness=sorted(core),
                )
        regions.append(region)
    return regions


# ---------------------------------------------------------------- tails


def _b_region_parts(g: Graph, region: Region, d: int) -> Optional[tuple[int, int, tuple[int, int]]]:
    """``(connector, external neighbour, apex pair)`` of a well-formed B region."""
    if region.label != "B":
        return None
    u = region.witnesses["u"]
    g_v = region.witnesses["g_v"]
    if len(g_v) != d + 1 or region.vertices != g_v | {u}:
        return None
    matched = g_v & g.neighbors(u)
    if len(matched) != d - 1:
        return None
    for x in g_v:
        missing = g_v - g.neighbors(x) - {x}
        if x in matched:
            if len(missing) != 1 or not missing <= matched:
                return None
        elif missing:
            return None
    external = g.neighbors(u) - region.vertices
    if len(external) != 1:
        return None
    apex = tuple(sorted(g_v - matched))
    return u, next(iter(external)), (apex[0], apex[1])


def _segment_at(g: Graph, entry: int, prev: int, d: int) -> Optional[tuple[frozenset[int], int, int]]:
    """Match a (d+1)-clique minus the edge ``entry``-``out`` entered from ``prev``.

    Returns ``(segment, out, next)`` where ``next`` is the single vertex
    beyond ``out``.
    """
    nbrs = g.neighbors(entry)
    if prev not in nbrs:
        return None
    others = nbrs - {prev}
    if len(others) != d - 1:
        return None
    out = None
    for c in others:
        extra = g.neighbors(c) - others - {entry}
        if len(extra) != 1 or not (others - {c}) <= g.neighbors(c):
            return None
        (e,) = extra
        if out is None:
            out = e
        elif e != out:
            return None
    if out is None or out == prev or out in nbrs:
        return None
    beyond = g.neighbors(out) - others
    if not others <= g.neighbors(out) or len(beyond) != 1:
        return None
    (nxt,) = beyond
    seg = others | {entry, out}
    if nxt in seg:
        return None
    return frozenset(seg), out, nxt


def find_tails(g: Graph, regions: Sequence[Region], d: Optional[int] = None) -> list[Tail]:
    """Maximal (proper) tails, one per B region, extended segment by segment."""
    if d is None:
        d = g.regular_degree()
    if d is None or d % 2 == 0:
        return []
    tails = []
    for region in regions:
        parts = _b_region_parts(g, region, d)
        if parts is None:
            continue
        conn, ext, apex = parts
        segments = [region.vertices]
        connectors = [conn]
        entries: list[int] = []
        covered = set(region.vertices)
        while True:
            if ext in covered:
                break
            seg = _segment_at(g, ext, connectors[-1], d)
            if seg is None or seg[0] & covered:
                break
            entries.append(ext)
            segments.append(seg[0])
            connectors.append(seg[1])
            covered |= seg[0]
            ext = seg[2]
        tails.append(Tail(tuple(segments), tuple(connectors), ext, apex, tuple(entries)))
    return tails


def all_tails(tails: Sequence[Tail]) -> list[Tail]:
    """Proper tails together with every improper tail contained in them."""
    return [p for t in tails for p in t.prefixes()]


@dataclass(frozen=True)
class TailIntersection:
    ok: bool
    snake: bool
    violations: tuple[tuple[int, int], ...] = ()


def check_tail_intersection(tails: Sequence[Tail], g: Optional[Graph] = None) -> TailIntersection:
    """Intersecting tails must be nested unless the whole graph is a snake."""
    snake = g is not None and detect_snake(g) is not None
    bad = []
    verts = [t.vertices for t in tails]
    for i in range(len(tails)):
        for j in range(i + 1, len(tails)):
            a, b = verts[i], verts[j]
            if a & b and not (a <= b or b <= a):
                bad.append((i, j))
    return TailIntersection(ok=not bad or snake, snake=snake, violations=tuple(bad))


# ---------------------------------------------------------------- heads


def _missing_matching(g: Graph, xs: frozenset[int]) -> Optional[dict[int, int]]:
    """Complement of ``G[xs]`` as a partner map if it is a matching, else ``None``."""
    partner = {}
    for x in xs:
        miss = xs - g.neighbors(x) - {x}
        if len(miss) > 1:
            return None
        if miss:
            partner[x] = next(iter(miss))
    return partner


def match_atail_head(g: Graph, tail: Tail, d: int) -> list[dict[str, Any]]:
    """All ways the neighbourhood of ``u_t`` fits the A-tail head pattern."""
    u = tail.u_t
    others = g.neighbors(u) - {tail.w_t}
    if len(others) != d - 1:
        return []
    found = []
    for z in sorted(others):
        xs = others - {z}
        common = frozenset.intersection(*(g.neighbors(x) for x in xs)) - {u}
        if len(common) != 2 or z in common or common & tail.vertices:
            continue
        y1, y2 = sorted(common)
        if not (g.has_edge(y1, y2) and g.has_edge(z, y1) and g.has_edge(z, y2)):
            continue
        partner = _missing_matching(g, xs)
        if partner is None:
            continue
        xp = frozenset(partner)
        if len(xp) % 2 or len(xp) >= d - 3 or g.neighbors(z) & xs != xp:
            continue
        ok = all(
            g.neighbors(x) == (xs - {x, partner.get(x, x)}) | {u, y1, y2} | ({z} if x in xp else set())
            for x in xs
        ) and all(g.neighbors(y) == xs | {z, y1, y2} - {y} for y in (y1, y2))
        if ok:
            found.append({"u_T": u, "z": z, "X": xs, "X_prime": xp, "y1": y1, "y2": y2,
                          "head": xs | {u, z, y1, y2}})
    return found


def match_btail_head(g: Graph, tail: Tail, d: int) -> list[dict[str, Any]]:
    u = tail.u_t
    xs = g.neighbors(u) - {tail.w_t}
    if len(xs) != d - 1:
        return []
    common = frozenset.intersection(*(g.neighbors(x) for x in xs)) - {u}
    if len(common) != 1:
        return []
    (w,) = common
    beyond = g.neighbors(w) - xs
    if len(beyond) != 1:
        return []
    (z,) = beyond
    if z == u or z in tail.vertices:
        return []
    partner = _missing_matching(g, xs)
    if partner is None:
        return []
    xp = frozenset(partner)
    if len(xp) % 2 or len(xp) in (0, d - 1) or g.neighbors(z) & xs != xp:
        return []
    ok = all(
        g.neighbors(x) == (xs - {x, partner.get(x, x)}) | {u, w} | ({z} if x in xp else set())
        for x in xs
    )
    if not ok:
        return []
    return [{"u_T": u, "w": w, "z": z, "X": xs, "X_prime": xp, "head": xs | {u, w, z}}]


def link_vertex_u(g: Graph, head: frozenset[int]) -> tuple[Optional[int], str]:
    """Recover the attachment vertex of a head region from the head alone.

    A link vertex has exactly one neighbour outside the head, and that
    neighbour has no other neighbour in the head.  With link vertices
    present the answer is the unique one; otherwise it is the unique head
    vertex with more than one outside neighbour.
    """
    outside = {a: g.neighbors(a) - head for a in head}
    links = [a for a in sorted(head) if len(outside[a]) == 1
             and len(g.neighbors(next(iter(outside[a]))) & head) == 1]
    if links:
        return (links[0], "link") if len(links) == 1 else (None, "ambiguous-link")
    multi = [a for a in sorted(head) if len(outside[a]) > 1]
    return (multi[0], "multi") if len(multi) == 1 else (None, "ambiguous-multi")


# ---------------------------------------------------------------- superregions


def assemble_superregions(
    g: Graph, profile: Dist2Profile, regions: Sequence[Region], tails: Sequence[Tail]
) -> tuple[list[Superregion], list[str]]:
    """Group tails, heads and regions into superregions; everything else is a singleton.

    Returns the superregions (ids assigned in order of smallest vertex) and
    a list of review flags for patterns that could not be settled.
    """
    d = g.regular_degree() or 0
    flags: list[str] = []
    region_of = {}
    for r in regions:
        for v in r.vertices:
            region_of.setdefault(v, r)
    drafts: list[tuple[SuperKind, frozenset[int], tuple[Region, ...], tuple[Tail, ...], dict, tuple]] = []
    by_u: dict[int, list[Tail]] = {}
    for t in tails:
        by_u.setdefault(t.u_t, []).append(t)

    def tail_regions(t: Tail) -> tuple[Region, ...]:
        return tuple(region_of[min(s)] for s in t.segments if min(s) in region_of)

    for u in sorted(by_u):
        group = by_u[u]
        if len(group) >= 2:
            verts = frozenset().union(*(t.vertices for t in group))
            regs = tuple(r for t in group for r in tail_regions(t))
            drafts.append((SuperKind.MULTITAIL, verts, regs, tuple(group), {"u": u}, ()))
            continue
        (t,) = group
        heads = [(SuperKind.ATAIL, m) for m in match_atail_head(g, t, d)]
        heads += [(SuperKind.BTAIL, m) for m in match_btail_head(g, t, d)]
        if len(heads) > 1:
            flags.append(f"ambiguous-head@{u}")
            drafts.append((SuperKind.TAIL, t.vertices, tail_regions(t), (t,), {"u": u},
                           ("ambiguous-head",)))
            continue
        if heads:
            kind, m = heads[0]
            anchor = min(m["X"] - m["X_prime"])
            h_region = region_of.get(anchor)
            if h_region is None or u not in h_region.vertices or not (
                m["head"] - {m["z"]} <= h_region.vertices <= m["head"]
            ):
                flags.append(f"head-region-mismatch@{u}")
                drafts.append((SuperKind.TAIL, t.vertices, tail_regions(t), (t,), {"u": u},
                               ("head-region-mismatch",)))
                continue
            recovered, how = link_vertex_u(g, h_region.vertices)
            special = dict(m)
            special.update(head=h_region.vertices, z_in_head=m["z"] in h_region.vertices,
                           link_u=recovered, link_rule=how)
            sflags: tuple[str, ...] = ()
            if recovered != u:
                flags.append(f"link-vertex-mismatch@{u}")
                sflags = ("link-vertex-mismatch",)
            drafts.append((kind, t.vertices | h_region.vertices, tail_regions(t) + (h_region,),
                           (t,), special, sflags))
            continue
        drafts.append((SuperKind.TAIL, t.vertices, tail_regions(t), (t,), {"u": u}, ()))

    absorbed = set()
    for _, _, regs, _, _, _ in drafts:
        absorbed.update(id(r) for r in regs)
    for r in regions:
        if id(r) not in absorbed:
            drafts.append((SuperKind.PLAIN_REGION, r.vertices, (r,), (), {}, ()))
    covered = set().union(*(dr[1] for dr in drafts)) if drafts else set()
    for v in range(g.n):
        if v not in covered:
            drafts.append((SuperKind.SINGLETON, frozenset({v}), (), (), {}, ()))
    drafts.sort(key=lambda dr: (min(dr[1]), dr[0].value))
    out = [Superregion(i, kind, verts, regs, ts, special, fl)
           for i, (kind, verts, regs, ts, special, fl) in enumerate(drafts)]
    return out, flags


def verify_partition(g: Graph, superregions: Sequence[Superregion],
                     *, snake: Optional[bool] = None) -> PartitionVerdict:
    if snake is None:
        snake = detect_snake(g) is not None
    if snake:
        return PartitionVerdict(False, refused="snake graph: superregions need not partition")
    owners: dict[int, list[int]] = {}
    for sr in superregions:
        for v in sr.vertices:
            owners.setdefault(v, []).append(sr.sid)
    overlaps = tuple((v, tuple(s)) for v, s in sorted(owners.items()) if len(s) > 1)
    uncovered = tuple(v for v in range(g.n) if v not in owners)
    return PartitionVerdict(not overlaps and not uncovered, overlaps, uncovered)


# ---------------------------------------------------------------- vertex classes


def designated_sets(g: Graph, sr: Superregion) -> tuple[frozenset[int], frozenset[int]]:
    """The W- and N-vertices a superregion designates."""
    kind = sr.kind
    if kind is SuperKind.PLAIN_REGION:
        r = sr.regions[0]
        if r.label == "A":
            return frozenset(sorted(r.witnesses["X"])[:2]), frozenset()
        if r.label == "C":
            return frozenset(sorted(r.witnesses["N_u"])[:1]), frozenset()
        return frozenset(), frozenset()
    if kind in (SuperKind.TAIL, SuperKind.MULTITAIL):
        return (frozenset(t.w_t for t in sr.tails),
                frozenset(v for t in sr.tails for v in t.apex))
    if kind is SuperKind.ATAIL:
        (t,) = sr.tails
        return (frozenset({sr.special["u_T"]}),
                frozenset(t.apex) | {sr.special["y1"], sr.special["y2"]})
    if kind is SuperKind.BTAIL:
        (t,) = sr.tails
        return frozenset({sr.special["w"]}), frozenset(t.apex)
    return frozenset(), frozenset()


def build_class_table(g: Graph, profile: Dist2Profile,
                      superregions: Sequence[Superregion]) -> ClassTable:
    d = g.regular_degree() or 0
    u = frozenset(v for v in range(g.n) if profile.deg2[v] >= d - 2)
    w: set[int] = set()
    nn: set[int] = set()
    per = {}
    violations = []
    for sr in superregions:
        ws, ns = designated_sets(g, sr)
        per[sr.sid] = (ws, ns)
        w |= ws
        nn |= ns
        extra = len((ws | ns) - u)
        if extra * (d + 1) > 2 * len(sr.vertices):
            violations.append({"sid": sr.sid, "kind": sr.kind.value, "count": extra,
                               "limit": str(Fraction(2 * len(sr.vertices), d + 1))})
    wf, nf = frozenset(w), frozenset(nn)
    v = frozenset(range(g.n)) - u - wf - nf
    tags = tuple("U" if x in u else "W" if x in wf else "N" if x in nf else "V"
                 for x in range(g.n))
    return ClassTable(u, wf, nf, v, tags, per, tuple(violations))


# ---------------------------------------------------------------- exceptional families


def detect_snake(g: Graph, profile: Optional[Dist2Profile] = None) -> Optional[tuple[int, int]]:
    """``(d, k)`` if ``g`` is two tails joined at their ends, ``k`` segments in total."""
    d = g.regular_degree()
    if d is None or d % 2 == 0 or d < 3 or g.n == 0:
        return None
    if (g.n - 2) % (d + 1):
        return None
    if profile is None:
        profile = dist2_profile(g)
    low = low_degree_set(profile)
    if not low:
        return None
    regions = build_and_classify_regions(g, profile, region_equivalence(g, low, profile),
                                         strict=False)
    b_parts = {}
    for r in regions:
        parts = _b_region_parts(g, r, d)
        if parts is not None:
            b_parts[parts[0]] = (r, parts)
    if len(b_parts) != 2:
        return None
    tails = find_tails(g, [r for r, _ in b_parts.values()], d)
    t = min(tails, key=lambda t: min(t.vertices))
    # the chain must end at the other B region's connector, which links straight back
    if t.u_t not in b_parts:
        return None
    other_region, (conn, ext, _) = b_parts[t.u_t]
    if ext != t.w_t or t.vertices & other_region.vertices:
        return None
    if len(t.vertices) + len(other_region.vertices) != g.n:
        return None
    return d, t.k + 1


def detect_peanut(g: Graph) -> Optional[int]:
    """``d`` if ``g`` is the peanut graph of even degree ``d``."""
    d = g.regular_degree()
    if d is None or d % 2 or d < 4 or g.n != 2 * d + 3:
        return None
    for u in range(g.n):
        comps = components(g, removed=[u])
        if len(comps) != 2 or sorted(map(len, comps)) != [d + 1, d + 1]:
            continue
        nu = g.neighbors(u)
        small = [c for c in comps if len(nu & set(c)) == 2]
        if len(small) != 1:
            continue
        r1 = frozenset(small[0])
        c2 = frozenset(comps[1] if small[0] is comps[0] else comps[0])
        w1, w2 = sorted(nu & r1)
        if g.has_edge(w1, w2):
            continue
        if any(r1 - g.neighbors(x) - {x} != ({w2} if x == w1 else {w1} if x == w2 else set())
               for x in r1):
            continue
        vs = c2 - nu
        if len(vs) != 3:
            continue
        rest = c2 - vs
        if any(c2 - g.neighbors(x) - {x} for x in vs):
            continue
        partner = _missing_matching(g, rest)
        if partner is None or set(partner) != set(rest):
            continue
        if any((g.neighbors(x) & vs) != vs for x in rest):
            continue
        return d
    return None


# ---------------------------------------------------------------- pipeline


def decompose(g: Graph, profile: Optional[Dist2Profile] = None, *,
              strict: Optional[bool] = None) -> Decomposition:
    """Full decomposition.  ``strict`` defaults to whether ``g`` is in theorem scope."""
    if profile is None:
        profile = dist2_profile(g)
    checks = basic_checks(g, profile)
    d = checks.is_regular
    in_scope = bool(checks.is_connected and d is not None and d > 6 and not checks.square_complete)
    if strict is None:
        strict = in_scope
    low = low_degree_set(profile)
    classes = region_equivalence(g, low, profile)
    regions = build_and_classify_regions(g, profile, classes, strict=strict)
    tails = find_tails(g, regions, d) if d is not None else []
    superregions, flags = assemble_superregions(g, profile, regions, tails)
    for r in regions:
        if r.label == "A" and len(r.witnesses["V"]) < 3:
            flags.append(f"a-region-small-V@{r.witnesses['v']}")
    table = build_class_table(g, profile, superregions)
    return Decomposition(g, profile, d or 0, low, classes, regions, tails, superregions,
                         table, in_scope, flags)
