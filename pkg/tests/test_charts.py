import random
from fractions import Fraction

import pytest

from ahilb import intmat
from ahilb.charts import build_agraph, chart_coords
from ahilb.errors import InvariantViolationError
from ahilb.fan import triangulate
from ahilb.group import MONO_ONE, build_group
from ahilb.pipeline import run_pipeline
from conftest import chi


def test_trivial_chart_is_xyz(run_trivial):
    C = run_trivial.charts
    coords = {c for c in C.charts[0].coords}
    assert coords == {((1, 0, 0), (0, 0, 0)), ((0, 1, 0), (0, 0, 0)), ((0, 0, 1), (0, 0, 0))}


@pytest.mark.parametrize("spec", ["1/11(1,2,8)", "1/30(25,2,3)", "1/3(1,2,0);1/3(0,1,2)"])
def test_dual_basis_property(spec):
    g = build_group(spec)
    T = triangulate(g)
    for t in T.triangles:
        coords = chart_coords(g, t.vertices)
        for i, (num, den) in enumerate(coords):
            u = intmat.vec_sub(num, den)
            assert g.is_invariant(u)
            for j, P in enumerate(t.vertices):
                assert intmat.vec_dot(u, P) == (g.order if i == j else 0)


def test_explicit_chart_11(run11):
    """Frozen coordinates of an up triangle in the side-2 corner triangle."""
    T, C = run11.triangulation, run11.charts
    ti = next(
        i for i, t in enumerate(T.triangles)
        if t.vertices == ((6, 1, 4), (7, 3, 1), (11, 0, 0))
    )
    assert set(C.charts[ti].coords) == {
        ((0, 0, 3), (0, 1, 0)),   # z^3 / y
        ((0, 4, 0), (0, 0, 1)),   # y^4 / z
        ((1, 0, 0), (0, 2, 1)),   # x / y^2 z
    }


@pytest.mark.parametrize(
    "spec",
    ["1", "1/2(1,1,0)", "1/7(1,2,4)", "1/11(1,2,8)", "1/30(25,2,3)",
     "1/3(1,2,0);1/3(0,1,2)"],
)
def test_agraph_bijective_and_closed(spec):
    art = run_pipeline(spec, which="fan")
    g, C = art.group, art.charts
    for graph in C.agraphs:
        assert len(graph.table) == g.order
        assert graph.table[g.reduce(MONO_ONE)] == MONO_ONE
        assert len(set(graph.table.values())) == g.order
        for m in graph.members:
            for i in range(3):
                if m[i]:
                    d = tuple(m[j] - (j == i) for j in range(3))
                    assert d in graph.members


def test_generator_weights(run30):
    g, C = run30.group, run30.charts
    for graph in C.agraphs:
        for c, m in graph.table.items():
            assert g.weight(m) == c


def test_minimiser_consistency_brute_force():
    """Each generator pairs minimally against all three vertices among its class."""
    for spec in ["1/7(1,2,4)", "1/11(1,2,8)"]:
        g = build_group(spec)
        T = triangulate(g)
        _assert_minimisers(g, [t.vertices for t in T.triangles])


def test_minimiser_consistency_large_skew_group():
    # a staircase that once stressed the search: check one chart exhaustively
    g = build_group("1/151(77,71,3)")
    T = triangulate(g)
    _assert_minimisers(g, [T.triangles[0].vertices, T.triangles[77].vertices])


def _assert_minimisers(g, triangles):
    n = g.order
    box = [
        (i, j, k)
        for i in range(n + 1)
        for j in range(n + 1)
        for k in range(n + 1)
        if min(i, j, k) == 0
    ]
    by_char = {}
    for m in box:
        by_char.setdefault(g.reduce(m), []).append(m)
    for vertices in triangles:
        graph = build_agraph(g, 0, vertices)
        for c, gen in graph.table.items():
            pair = [intmat.vec_dot(gen, P) for P in vertices]
            for m in by_char[c]:
                assert all(
                    pair[i] <= intmat.vec_dot(m, P) for i, P in enumerate(vertices)
                )


def test_r3_equals_xy_on_four_triangles(run11):
    g, C = run11.group, run11.charts
    chi3 = chi(g, 3)
    assert len(C.conv_region(chi3, (1, 1, 0))) == 4


def test_six_conv_regions_chi3(run11):
    g, T, C = run11.group, run11.triangulation, run11.charts
    chi3 = chi(g, 3)
    regions = C.conv_regions(chi3)
    assert len(regions) == 6
    assert set(regions) == {
        (3, 0, 0), (1, 1, 0), (0, 7, 0), (1, 0, 3), (0, 0, 10), (0, 3, 1)
    }
    covered = sorted(ti for tis in regions.values() for ti in tis)
    assert covered == list(range(len(T.triangles)))
    for tis in regions.values():
        assert C.region_is_convex(tis)


def test_conv_region_trivial_character(run11):
    g, T, C = run11.group, run11.triangulation, run11.charts
    regions = C.conv_regions(g.reduce(MONO_ONE))
    assert set(regions) == {MONO_ONE}
    assert len(regions[MONO_ONE]) == len(T.triangles)


def test_conv_region_never_generator_is_empty(run11):
    g, C = run11.group, run11.charts
    # y^2 z^4 has weight chi_3 but generates nowhere (it is never minimal)
    chi3 = chi(g, 3)
    assert g.weight((0, 2, 4)) == chi3
    assert C.conv_region(chi3, (0, 2, 4)) == []


def test_degree_three_on_y_z3_curve(run11):
    g, T, C = run11.group, run11.triangulation, run11.charts
    chi3 = chi(g, 3)
    degs = []
    for ln in T.lines:
        if {ln.plus, ln.minus} == {(0, 1, 0), (0, 0, 3)}:
            for ei in ln.edges:
                if T.edges[ei].interior:
                    degs.append(C.degree_on_curve(chi3, ei))
    assert 3 in degs


def test_degree_zero_for_trivial_character(run11):
    g, T, C = run11.group, run11.triangulation, run11.charts
    triv = g.reduce(MONO_ONE)
    assert all(C.degree_on_curve(triv, ei) == 0 for ei in T.interior_edges())


def test_marked_line_degree_one(run30):
    g, T, C = run30.group, run30.triangulation, run30.charts
    for ei in T.interior_edges():
        line = T.lines[T.edges[ei].line]
        assert C.degree_on_curve(line.character, ei) == 1


def test_socle_trivial(run_trivial):
    assert run_trivial.charts.agraphs[0].socle == frozenset({(0, 0, 0)})


def test_socle_y2_at_valency3_vertex(run11):
    g, T, C = run11.group, run11.triangulation, run11.charts
    chi4 = chi(g, 4)
    v = (3, 6, 2)
    gens = set()
    for ti in T.triangles_at(v):
        graph = C.agraphs[ti]
        m = graph.table[chi4]
        assert m in graph.socle
        gens.add(m)
    assert (0, 2, 0) in gens  # y^2 = y^{2b} with b = 1


def test_vertex_mark_in_socle_everywhere(run30):
    T, C, D = run30.triangulation, run30.charts, run30.decoration
    for v, vm in D.vertex_marks.items():
        for ti in T.triangles_at(v):
            graph = C.agraphs[ti]
            for m in vm.marks:
                assert graph.table[m] in graph.socle


def test_corner_membership_iff_variable_absent():
    """A corner of the simplex lies in a region iff its variable misses the monomial."""
    rng = random.Random(13)
    specs = ["1/11(1,2,8)", "1/14(1,9,4)", "1/9(1,3,5)", "1/3(1,2,0);1/3(0,1,2)"]
    for spec in specs:
        art = run_pipeline(spec, which="fan")
        g, T, C = art.group, art.triangulation, art.charts
        corner_tris = [
            set(T.triangles_at(tuple(g.order if i == c else 0 for i in range(3))))
            for c in range(3)
        ]
        for c in g.characters():
            regions = C.conv_regions(c)
            for m, tis in regions.items():
                for corner in range(3):
                    touches = bool(corner_tris[corner] & set(tis))
                    assert touches == (m[corner] == 0)


def _clip(poly, a, b):
    """Half-plane clip keeping the left side of a->b, exact."""
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        sp = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
        sq = (b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0])
        if sp >= 0:
            out.append(p)
        if (sp > 0 and sq < 0) or (sp < 0 and sq > 0):
            t = Fraction(sp, sp - sq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _poly_area2(poly):
    s = 0
    for i in range(len(poly)):
        p, q = poly[i], poly[(i + 1) % len(poly)]
        s += p[0] * q[1] - p[1] * q[0]
    return s


def test_wedge_divisibility(run11):
    """If generators at a shared vertex are x^a z^c and y^b z^d, then
    z^min(c,d) divides the generator on every triangle meeting the wedge
    spanned by the vertex and the two corners e1, e2."""
    g, T, C = run11.group, run11.triangulation, run11.charts
    order = g.order
    E1, E2 = (order, 0, 0), (0, order, 0)
    for c in g.characters():
        regions = C.conv_regions(c)
        gen_at = {}
        for m, tis in regions.items():
            for ti in tis:
                gen_at[ti] = m
        for v in T.points:
            tis = T.triangles_at(v)
            pairs = [
                (gen_at[t1], gen_at[t2])
                for t1 in tis
                for t2 in tis
                if gen_at[t1][1] == 0 and gen_at[t2][0] == 0
                and gen_at[t1][0] > 0 and gen_at[t2][1] > 0
            ]
            for m1, m2 in pairs:
                zmin = min(m1[2], m2[2])
                if zmin == 0:
                    continue
                wedge = [(E1[0], E1[1]), (v[0], v[1]), (E2[0], E2[1])]
                if _poly_area2(wedge) < 0:
                    wedge.reverse()
                for ti, t in enumerate(T.triangles):
                    poly = [(p[0], p[1]) for p in t.vertices]
                    if _poly_area2(poly) < 0:
                        poly.reverse()
                    clipped = list(poly)
                    for i in range(3):
                        a, b = wedge[i], wedge[(i + 1) % 3]
                        clipped = _clip(clipped, a, b)
                        if not clipped:
                            break
                    if clipped and _poly_area2(clipped) > 0:
                        assert gen_at[ti][2] >= zmin


def test_support_convexity(run11):
    C = run11.charts
    for c in run11.group.characters():
        assert C.support_convexity_violations(c) == []


def test_non_basic_triangle_rejected():
    g = build_group("1/11(1,2,8)")
    with pytest.raises(InvariantViolationError):
        chart_coords(g, ((11, 0, 0), (0, 11, 0), (1, 2, 8)))
