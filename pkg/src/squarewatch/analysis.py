"""Per-graph analysis: scope checks, decomposition, pair book, bound and lemma oracles.

:func:`analyze` never raises on graph content; every outcome is a status
in the returned :class:`Report`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Any, Iterable, Iterator, Optional

from .decomposition import (
    Decomposition,
    SuperKind,
    all_tails,
    check_tail_intersection,
    decompose,
    detect_peanut,
    detect_snake,
    region_size_violations,
    verify_partition,
)
from .errors import StructureError
from .graph import Graph, basic_checks, component_of, dist2_profile, graph_power
from .pairbook import (
    PairBook,
    Tag,
    aggregate_bound,
    build_book,
    detect_collisions,
    incoming_s3_violations,
    resolve_collisions,
    theorem_rhs,
)

STATUSES = ("pass", "exception-snake", "exception-peanut", "out-of-scope", "violation")

LEMMA_NAMES = (
    "boundary_growth",
    "region_min_size",
    "region_in_two_ball",
    "region_size_vs_min_deg2",
    "region_max_size",
    "region_disjoint",
    "c_region_cover",
    "c_region_component",
    "c_region_two_attachments",
    "designated_fraction",
    "pair_distance",
    "pair_count",
    "collision_types",
    "s3_incoming_bound",
    "tail_intersection",
    "head_link_vertex",
    "superregion_partition",
)


@dataclass
class LemmaResult:
    status: str  # pass | fail | skipped
    checked: int = 0
    counterexample: Any = None
    note: str = ""

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"status": self.status, "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.note:
            out["note"] = self.note
        return out


def _skip(note: str) -> LemmaResult:
    return LemmaResult("skipped", note=note)


class _Check:
    """Accumulates a pass/fail verdict and keeps the first counterexample."""

    def __init__(self) -> None:
        self.checked = 0
        self.first: Any = None

    def see(self, ok: bool, witness: Any) -> None:
        self.checked += 1
        if not ok and self.first is None:
            self.first = witness

    def result(self) -> LemmaResult:
        return LemmaResult("pass" if self.first is None else "fail", self.checked, self.first)


@dataclass
class SuiteOutcome:
    lemmas: dict[str, LemmaResult]
    refused: Optional[str] = None
    decomposition: Optional[Decomposition] = None
    book: Optional[PairBook] = None
    collisions_found: int = 0

    @property
    def failures(self) -> dict[str, LemmaResult]:
        return {k: v for k, v in self.lemmas.items() if v.status == "fail"}

    def to_json(self) -> dict[str, Any]:
        if self.refused:
            return {"refused": self.refused}
        return {k: v.to_json() for k, v in self.lemmas.items()}


def lemma_suite(g: Graph, dec: Optional[Decomposition] = None) -> SuiteOutcome:
    """Check every structural lemma over its full domain inside ``g``.

    Irregular graphs are refused.  Region lemmas need ``d > 6`` and a
    non-complete square; pair-book lemmas are skipped for snake graphs.
    """
    d = g.regular_degree()
    if d is None:
        return SuiteOutcome({}, refused="not d-regular")
    profile = dec.profile if dec is not None else dist2_profile(g)
    checks = basic_checks(g, profile)
    if dec is None:
        dec = decompose(g, profile, strict=False)
    p = profile
    res: dict[str, LemmaResult] = {}

    c = _Check()
    for v in range(g.n):
        for u in sorted(p.n2prime[v]):
            c.see(p.deg2[u] >= d - p.deg2[v] + 1, {"v": v, "u": u})
    res["boundary_growth"] = c.result()

    region_scope = d > 6 and not checks.square_complete
    if not region_scope:
        why = "needs d > 6" if d <= 6 else "square is complete"
        for name in LEMMA_NAMES[1:9]:
            res[name] = _skip(why)
    else:
        checks_by_part = {
            "region_min_size": "min-size",
            "region_in_two_ball": "two-ball",
            "region_size_vs_min_deg2": "size-vs-min-deg2",
            "region_max_size": "max-size",
        }
        per = {name: _Check() for name in checks_by_part}
        for r in dec.regions:
            bad = region_size_violations(g, p, r, d)
            for name, key in checks_by_part.items():
                per[name].see(key not in bad, sorted(r.core))
        for name in checks_by_part:
            res[name] = per[name].result()
        c = _Check()
        owner: dict[int, int] = {}
        for i, r in enumerate(dec.regions):
            for v in r.vertices:
                c.see(v not in owner, {"vertex": v, "regions": [owner.get(v), i]})
                owner.setdefault(v, i)
        res["region_disjoint"] = c.result()

        cover, comp, two = _Check(), _Check(), _Check()
        for r in dec.regions:
            if r.label != "C":
                continue
            w = r.witnesses
            u, V, n_u = w["u"], w["V"], w["N_u"]
            cover.see(r.vertices <= V | n_u | {u}, sorted(r.vertices - V - n_u - {u}))
            comp.see(component_of(g, w["v"], removed=[u]) == r.vertices and len(V) >= 4,
                     sorted(r.core))
            two.see(len(n_u) >= 2, {"v": w["v"], "u": u, "attachments": sorted(n_u)})
        res["c_region_cover"] = cover.result()
        res["c_region_component"] = comp.result()
        res["c_region_two_attachments"] = two.result()

    snake = detect_snake(g, p) is not None
    in_scope = checks.is_connected and region_scope

    c = _Check()
    for viol in dec.table.violations:
        c.see(False, viol)
    if not in_scope:
        res["designated_fraction"] = _skip("outside theorem scope")
    elif snake:
        res["designated_fraction"] = _skip("snake graph")
    else:
        c.checked = len(dec.superregions)
        res["designated_fraction"] = c.result()

    book = None
    found = 0
    if not in_scope or snake:
        why = "snake graph" if in_scope else "outside theorem scope"
        for name in ("pair_distance", "pair_count", "collision_types", "s3_incoming_bound"):
            res[name] = _skip(why)
    else:
        book = build_book(dec, allow_exceptions=True)
        dist = _Check()
        for pr in book.all_pairs():
            dist.see(pr.y in p.n2[pr.x], [pr.x, pr.y])
        res["pair_distance"] = dist.result()
        cnt = _Check()
        for sr in dec.superregions:
            need = 4 * sum(1 for v in sr.vertices if dec.table.tags[v] == "V")
            have = len(book.pairs[sr.sid])
            cnt.see(have >= need, {"sid": sr.sid, "kind": sr.census_key, "pairs": have, "needed": need})
        for viol in book.violations:
            cnt.see(False, viol)
        res["pair_count"] = cnt.result()
        cols = detect_collisions(book)
        found = len(cols)
        ct = _Check()
        for col in cols:
            ct.see(col.case != "bad-overlap", {"pair": [col.x, col.y], "tags": list(col.tags)})
        if not cols:
            ct.checked = book.total
        res["collision_types"] = ct.result()
        if detect_peanut(g) is None:
            resolve_collisions(dec, book)
        s3 = _Check()
        s3.checked = sum(1 for pr in book.all_pairs() if pr.tag is Tag.S3)
        for viol in incoming_s3_violations(dec, book):
            s3.see(False, viol)
        res["s3_incoming_bound"] = s3.result()

    if d % 2 == 0 or not dec.tails:
        res["tail_intersection"] = LemmaResult("pass", 0, note="no tails")
    else:
        every = all_tails(dec.tails)
        ti = check_tail_intersection(every, g)
        c = _Check()
        c.checked = len(every) * (len(every) - 1) // 2
        if ti.violations and not ti.snake:
            i, j = ti.violations[0]
            c.first = {"tails": [sorted(every[i].vertices)[:3], sorted(every[j].vertices)[:3]]}
        res["tail_intersection"] = c.result()

    attach = {t.u_t for t in all_tails(dec.tails)}
    c = _Check()
    for sr in dec.superregions:
        if sr.kind in (SuperKind.ATAIL, SuperKind.BTAIL):
            head = sr.special["head"]
            hits = sorted(head & attach)
            c.see(len(hits) == 1 and sr.special["link_u"] == sr.special["u_T"],
                  {"head": sorted(head), "attachments": hits, "recovered": sr.special["link_u"]})
    res["head_link_vertex"] = c.result()

    if snake:
        res["superregion_partition"] = _skip("snake graph")
    elif not in_scope:
        res["superregion_partition"] = _skip("outside theorem scope")
    else:
        verdict = verify_partition(g, dec.superregions, snake=False)
        c = _Check()
        c.checked = g.n
        if not verdict.ok:
            c.first = {"overlaps": [list(o) for o in verdict.overlaps[:3]],
                       "uncovered": list(verdict.uncovered[:5])}
        res["superregion_partition"] = c.result()

    ordered = {name: res[name] for name in LEMMA_NAMES if name in res}
    return SuiteOutcome(ordered, decomposition=dec, book=book, collisions_found=found)


# ---------------------------------------------------------------- reports


def rhs_json(rhs: Fraction) -> dict[str, Any]:
    dec = (Decimal(rhs.numerator) / Decimal(rhs.denominator)).quantize(Decimal("0.000001"))
    return {"numerator": rhs.numerator, "denominator": rhs.denominator, "decimal": str(dec)}


@dataclass
class Report:
    input_id: str
    n: int
    d: Optional[int]
    status: str
    e_g: int
    e_g2: int
    sum_deg2: int
    theorem_rhs: Optional[Fraction]
    census: Optional[dict[str, int]]
    lemmas: dict[str, Any]
    collisions: dict[str, int]
    witness: Any = None
    reason: Optional[str] = None
    timing: Optional[float] = None
    extras: dict[str, Any] = field(default_factory=dict)

    def to_json(self, *, timing: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {
            "input_id": self.input_id,
            "n": self.n,
            "d": self.d,
            "status": self.status,
            "e_g": self.e_g,
            "e_g2": self.e_g2,
            "sum_deg2": self.sum_deg2,
            "theorem_rhs": rhs_json(self.theorem_rhs) if self.theorem_rhs is not None else None,
            "census": self.census,
            "lemmas": self.lemmas,
            "collisions": self.collisions,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.reason:
            out["reason"] = self.reason
        if timing and self.timing is not None:
            out["timing"] = {"seconds": round(self.timing, 6)}
        return out


def analyze(g: Graph, input_id: str = "0") -> Report:
    start = time.perf_counter()
    profile = dist2_profile(g)
    checks = basic_checks(g, profile)
    d = checks.is_regular
    e_g = g.num_edges
    e_g2 = graph_power(g, 2).num_edges
    sum_deg2 = profile.total_deg2
    rhs = theorem_rhs(g.n, d) if d is not None and d > 3 else None
    cols = {"found": 0, "resolved": 0, "unresolved": 0}

    def done(status: str, census=None, lemmas=None, witness=None, reason=None) -> Report:
        return Report(input_id, g.n, d, status, e_g, e_g2, sum_deg2, rhs, census,
                      lemmas or {}, cols, witness, reason, time.perf_counter() - start)

    if 2 * (e_g2 - e_g) != sum_deg2:
        return done("violation", witness={"identity": [e_g, e_g2, sum_deg2]},
                    reason="e(G^2) - e(G) differs from half the distance-2 degree sum")

    if d is None:
        return done("out-of-scope", reason="not regular")
    reason = None
    if not checks.is_connected:
        reason = "disconnected"
    elif d <= 6:
        reason = f"degree {d} <= 6"
    elif checks.square_complete:
        reason = "square is complete"
    if reason:
        dec = decompose(g, profile, strict=False)
        suite = lemma_suite(g, dec)
        return done("out-of-scope", dec.census(), suite.to_json(), reason=reason)

    if detect_snake(g, profile) is not None:
        dec = decompose(g, profile, strict=False)
        suite = lemma_suite(g, dec)
        return done("exception-snake", dec.census(), suite.to_json())
    peanut = detect_peanut(g) is not None

    try:
        dec = decompose(g, profile, strict=True)
    except StructureError as exc:
        return done("violation", witness=exc.witness, reason=str(exc))
    suite = lemma_suite(g, dec)
    if suite.book is not None:
        cols = {"found": suite.collisions_found, "resolved": len(suite.book.resolutions),
                "unresolved": len(suite.book.unresolved)}
    if peanut:
        cols["unresolved"] = suite.collisions_found
        return done("exception-peanut", dec.census(), suite.to_json())

    failures = suite.failures
    if failures:
        name, first = next(iter(failures.items()))
        return done("violation", dec.census(), suite.to_json(), witness=first.counterexample,
                    reason=f"lemma check failed: {name}")
    if suite.book is not None and suite.book.unresolved:
        u = suite.book.unresolved[0]
        return done("violation", dec.census(), suite.to_json(), witness=[u.x, u.y],
                    reason=f"unresolved collision ({u.case})")
    bound = aggregate_bound(dec, suite.book)
    if not bound.verdict:
        return done("violation", dec.census(), suite.to_json(),
                    witness=sorted(dec.table.v)[:10], reason="distance-2 bound fails")
    return done("pass", dec.census(), suite.to_json())


def _analyze_item(item: tuple[str, Any]) -> dict[str, Any]:
    input_id, g = item
    if isinstance(g, Exception):
        return {"input_id": input_id, "status": "parse-error", "error": str(g)}
    return analyze(g, input_id).to_json(timing=True)


def batch(items: Iterable[tuple[str, Any]], *, jobs: int = 1, timing: bool = True) -> Iterator[dict[str, Any]]:
    """One report dict per input, in input order, followed by a summary dict."""
    counts = {s: 0 for s in STATUSES}
    counts["parse-error"] = 0
    total = 0

    def emit(rep: dict[str, Any]) -> dict[str, Any]:
        nonlocal total
        total += 1
        counts[rep["status"]] += 1
        if not timing:
            rep.pop("timing", None)
        return rep

    if jobs > 1:
        from multiprocessing import Pool

        with Pool(jobs) as pool:
            for rep in pool.imap(_analyze_item, items, chunksize=4):
                yield emit(rep)
    else:
        for item in items:
            yield emit(_analyze_item(item))
    yield {"summary": {"total": total, "statuses": counts}}
