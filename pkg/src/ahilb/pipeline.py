"""End-to-end orchestration and the verification report.

A run always builds every artifact (group, triangulation, charts,
decoration, relations, surfaces, bundles, pairing matrix); the `checks`
argument selects which verification results are enforced and reported.
Construction-time invariant failures surface through the owning check.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from . import intmat
from .charts import ChartSet
from .cohomology import (
    build_surfaces,
    build_virtual_bundles,
    check_bundle_degrees,
    duality_matrix,
    h2_basis_check,
    mckay_certificate,
)
from .errors import AHilbError, CorrespondenceError, InputError, InvariantViolationError
from .fan import triangulate
from .group import DEFAULT_MAX_ORDER, build_group, parse_group_spec
from .recipe import champion_identities, corner_region_characters, decorate, quiver_embedding
from .relations import completeness_check, derive_relations, verify_all_relations

CHECK_GROUPS = {
    "fan": ("euler", "basic", "ratios"),
    "recipe": ("decoration", "partition", "quiver"),
    "relations": ("relations", "completeness"),
    "cohomology": ("duality", "h2_basis"),
}
ALL_CHECKS = (
    "euler",
    "basic",
    "ratios",
    "decoration",
    "partition",
    "quiver",
    "relations",
    "completeness",
    "duality",
    "h2_basis",
    "certificate",
)


@dataclass
class RunReport:
    spec: str
    counts: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)  # console only, never serialized
    failure: dict | None = None

    @property
    def passed(self):
        return self.failure is None and all(
            c["status"] != "fail" for c in self.checks.values()
        )


@dataclass
class Artifacts:
    spec_text: str
    group: object
    triangulation: object = None
    charts: object = None
    decoration: object = None
    quiver: object = None
    relations: list = None
    surfaces: dict = None
    bundles: list = None
    duality: list = None
    h2: dict = None
    certificate: dict = None
    report: RunReport = None


def checks_for(which):
    if which == "all":
        return ALL_CHECKS
    if which in CHECK_GROUPS:
        return CHECK_GROUPS[which]
    raise InputError(f"unknown check group {which!r}; use all|fan|recipe|relations|cohomology")


def run_pipeline(spec, which="all", max_order=DEFAULT_MAX_ORDER, seed=0) -> Artifacts:
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    requested = checks_for(which)
    report = RunReport(spec.text())
    group = build_group(spec, max_order=max_order)
    art = Artifacts(spec.text(), group, report=report)
    rng = random.Random(seed)

    def stage(name, fn):
        t0 = time.perf_counter()
        try:
            detail = fn()
        except AHilbError as exc:
            report.timings[name] = time.perf_counter() - t0
            entry = {"status": "fail", "detail": {"error": str(exc), **exc.detail}}
            report.checks[name] = entry
            if report.failure is None:
                report.failure = {"check": name, "error": str(exc), "detail": exc.detail}
            return False
        report.timings[name] = time.perf_counter() - t0
        if name in requested or name == "certificate" and which == "all":
            report.checks[name] = {"status": "pass", "detail": detail or {}}
        else:
            report.checks[name] = {"status": "skipped", "detail": detail or {}}
        return True

    ok = stage("euler", lambda: _build_fan(art))
    ok = ok and stage("basic", lambda: _check_basic(art))
    ok = ok and stage("ratios", lambda: _check_ratios(art, rng))
    ok = ok and stage("decoration", lambda: _build_decoration(art))
    ok = ok and stage("partition", lambda: _check_partition(art))
    ok = ok and stage("quiver", lambda: _check_quiver(art))
    ok = ok and stage("relations", lambda: _check_relations(art))
    ok = ok and stage("completeness", lambda: _check_completeness(art))
    ok = ok and stage("duality", lambda: _check_duality(art))
    ok = ok and stage("h2_basis", lambda: _check_h2(art))
    if which == "all":
        ok = ok and stage("certificate", lambda: _check_certificate(art))
    for name in ALL_CHECKS:
        if name not in report.checks:
            report.checks[name] = {"status": "skipped", "detail": {}}
    report.counts = _counts(art)
    return art


def _counts(art):
    g = art.group
    counts = {"order": g.order}
    ages = g.age_counts()
    counts["junior"] = ages[1]
    counts["age2"] = ages[2]
    T = art.triangulation
    if T is not None:
        counts["triangles"] = len(T.triangles)
        counts["interior_vertices"] = len(T.interior_vertices())
        counts["boundary_vertices"] = len(T.boundary_vertices())
        counts["edges"] = len(T.edges)
        counts["lines"] = len(T.lines)
        counts["regular_triangles"] = len(T.regular_triangles)
    if art.certificate:
        counts["b2"] = art.certificate["b2"]
        counts["b4"] = art.certificate["b4"]
    elif T is not None:
        counts["b2"] = ages[1]
        counts["b4"] = ages[2]
    return counts


def _build_fan(art):
    art.triangulation = triangulate(art.group)
    T = art.triangulation
    order = art.group.order
    I = len(T.interior_vertices())
    B = len(T.boundary_vertices())
    if len(T.triangles) != order or 2 * I + B - 2 != order:
        raise InvariantViolationError("euler counts failed")
    return {"triangles": len(T.triangles), "interior": I, "boundary": B}


def _check_basic(art):
    T = art.triangulation
    order = art.group.order
    for t in T.triangles:
        if abs(intmat.det3(list(t.vertices))) != order * order:
            raise InvariantViolationError("non-basic triangle", detail={"triangle": t.vertices})
    return {"triangles": len(T.triangles)}


def _check_ratios(art, rng):
    """Minimality certificates for every line label plus seeded spot checks."""
    T = art.triangulation
    g = art.group
    for ln in T.lines:
        u = intmat.vec_sub(ln.plus, ln.minus)
        a, b = ln.endpoints
        if intmat.vec_dot(u, a) or intmat.vec_dot(u, b):
            raise InvariantViolationError("ratio does not vanish on its line")
        if g.weight(ln.plus) != g.weight(ln.minus):
            raise InvariantViolationError("ratio monomials differ in weight")
        if not g.is_invariant(u):
            raise InvariantViolationError("ratio is not invariant")
        k = intmat.content(u)
        for p in _prime_divisors(k):
            down = tuple(x // p for x in u)
            if g.is_invariant(down):
                raise InvariantViolationError("ratio is not the minimal invariant relation")
    corner_regions = 0
    for ri, reg in enumerate(T.regular_triangles):
        if reg.kind == "corner":
            corner_region_characters(T, ri)
            corner_regions += 1
        else:
            champion_identities(T, ri)
    chars = g.characters()
    for _ in range(64):
        m1 = tuple(rng.randrange(0, 2 * g.order + 1) for _ in range(3))
        m2 = tuple(rng.randrange(0, 2 * g.order + 1) for _ in range(3))
        lhs = g.weight(tuple(a + b for a, b in zip(m1, m2)))
        if lhs != g.char_add(g.weight(m1), g.weight(m2)):
            raise InvariantViolationError("weights are not multiplicative")
    return {"lines": len(T.lines), "corner_regions": corner_regions,
            "characters": len(chars)}


def _build_decoration(art):
    art.charts = ChartSet(art.triangulation)
    art.decoration = decorate(art.triangulation, art.charts)
    detail = _check_chart_properties(art)
    detail["vertices"] = len(art.decoration.vertex_marks)
    return detail


def _check_chart_properties(art):
    """Support-function convexity and the degree-one property of marked lines."""
    T = art.triangulation
    C = art.charts
    g = art.group
    chars = g.characters()
    graphs = C.agraphs
    for graph in graphs:
        if len(graph.table) != g.order:
            raise InvariantViolationError("chart basis of the wrong size")
    checked = 0
    for ei in T.interior_edges():
        e = T.edges[ei]
        t1, t2 = e.triangles
        w1 = next(v for v in T.triangles[t1].vertices if v not in (e.a, e.b))
        w2 = next(v for v in T.triangles[t2].vertices if v not in (e.a, e.b))
        tab1, tab2 = graphs[t1].table, graphs[t2].table
        for chi in chars:
            r1, r2 = tab1[chi], tab2[chi]
            if r1 is not r2 and r1 != r2:
                if intmat.vec_dot(r2, w2) > intmat.vec_dot(r1, w2) or intmat.vec_dot(
                    r1, w1
                ) > intmat.vec_dot(r2, w1):
                    raise InvariantViolationError(
                        "support function is not convex",
                        detail={"edge": (e.a, e.b), "character": chi},
                    )
        line = T.lines[e.line]
        if C.degree_on_curve(line.character, ei) != 1:
            raise InvariantViolationError(
                "marked line without degree one", detail={"edge": (e.a, e.b)}
            )
        checked += 1
    return {"interior_edges": checked}


def _check_partition(art):
    part = art.decoration.partition
    g = art.group
    sizes = {k: len(v) for k, v in part.items()}
    if sizes["line"] + sizes["vertex"] + sizes["second"] != g.order - 1:
        raise CorrespondenceError("partition does not cover the nontrivial characters")
    return sizes


def _check_quiver(art):
    art.quiver = quiver_embedding(art.triangulation, art.charts, art.decoration)
    return {"hexagons": len(art.quiver.placements), "chart": art.quiver.chart}


def _check_relations(art):
    art.relations = derive_relations(art.triangulation, art.decoration)
    verify_all_relations(art.charts, art.relations)
    return {"relations": len(art.relations)}


def _check_completeness(art):
    return completeness_check(art.triangulation, art.decoration, art.relations)


def _check_duality(art):
    art.surfaces = build_surfaces(art.triangulation, art.charts, art.decoration)
    art.bundles = build_virtual_bundles(art.group, art.decoration, art.relations)
    check_bundle_degrees(art.charts, art.bundles)
    art.duality = duality_matrix(art.group, art.bundles, art.surfaces)
    return {"size": len(art.duality)}


def _check_h2(art):
    art.h2 = h2_basis_check(art.group, art.charts, art.decoration, art.relations)
    return art.h2


def _check_certificate(art):
    art.certificate = mckay_certificate(
        art.group, art.triangulation, art.decoration, art.relations, art.duality, art.h2
    )
    art.report.counts = _counts(art)
    return art.certificate


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
