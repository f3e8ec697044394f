"""Triangulation of the junior simplex.

Pipeline: per-corner line fans with continued-fraction strengths, the
knock-out tournament that partitions the simplex into regular triangles,
and the regular tesselation into basic triangles.  Every edge is labelled
with the minimal invariant monomial ratio vanishing on its line.

All geometry is exact.  Points live in the plane {sum = |A|} with integer
coordinates ("scaled" coordinates); the plane is embedded into Z^2 by
dropping the last coordinate, which preserves all incidence predicates.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import intmat
from .errors import InputError, InvariantViolationError
from .group import AbelianGroup, ratio_split

# ---------------------------------------------------------------------------
# lattice helpers


def proj2(p):
    return (p[0], p[1])


def unproj(order, q):
    return (q[0], q[1], order - q[0] - q[1])


def lattice_basis(group):
    """HNF rows of the scaled lattice |A|*N inside Z^3."""
    r = group.order
    gens = [(r, 0, 0), (0, r, 0), (0, 0, r)] + list(group.elements)
    H = intmat.hnf_rows(gens)
    if len(H) != 3:
        raise InvariantViolationError("scaled lattice is not of full rank")
    return [tuple(row) for row in H]


def direction_basis(group, basis=None):
    """Basis (2 rows) of the sum-zero directions inside the scaled lattice."""
    B = basis or lattice_basis(group)
    sums = [[sum(row)] for row in B]
    kern = intmat.left_kernel(sums)
    if len(kern) != 2:
        raise InvariantViolationError("direction lattice is not of rank 2")
    return [intmat.vec_mat(k, B) for k in kern]


def primitive_step(group, d):
    """Largest lattice vector with d = r*step; returns (step, r)."""
    c = intmat.content(d)
    for g in _divisors_desc(c):
        cand = tuple(x // g for x in d)
        if group.in_lattice(cand):
            return cand, g
    raise InvariantViolationError(f"direction {d} is not a lattice vector")


def _divisors_desc(n):
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out, reverse=True)


class QuotientMap:
    """Exact coordinates on (scaled lattice)/Z*w for a primitive lattice w."""

    def __init__(self, group, w, basis=None):
        B = basis or lattice_basis(group)
        coords = intmat.solve_int(B, w)
        if coords is None:
            raise InvariantViolationError(f"{w} is not a lattice point")
        if intmat.content(coords) != 1:
            raise InvariantViolationError(f"{w} is not primitive in the lattice")
        A, _ = intmat.complete_unimodular(coords)
        self.newbasis = [intmat.vec_mat(a, B) for a in A]  # rows; row 0 == w
        assert self.newbasis[0] == tuple(w)
        m = [list(row) for row in self.newbasis]
        d = intmat.det3(m)
        adj = intmat.adjugate3(m)
        self._den = d
        self._adj = adj  # p @ adj / d = coords of p in newbasis

    def proj(self, p):
        num = intmat.vec_mat(p, self._adj)
        out = []
        for x in num[1:]:
            q, rem = divmod(x, self._den)
            if rem:
                raise InvariantViolationError("point is not in the lattice")
            out.append(q)
        return (out[0], out[1])

    def lift(self, v):
        b1, b2 = self.newbasis[1], self.newbasis[2]
        return tuple(v[0] * a + v[1] * b for a, b in zip(b1, b2))


# ---------------------------------------------------------------------------
# step 1: corner fans

CORNERS = (0, 1, 2)


@dataclass
class CornerLine:
    corner: int
    dir2: tuple  # primitive direction in the corner quotient lattice
    step: tuple  # primitive lattice step in the simplex plane
    strength: int
    u: tuple  # canonical invariant normal (ratio key)
    plus: tuple
    minus: tuple
    path: list = field(default_factory=list)  # lattice points outward
    # knock-out results
    death_t: Fraction | None = None
    final_strength: int | None = None
    battles: list = field(default_factory=list)

    def endpoint(self):
        k = self.death_t if self.death_t is not None else len(self.path)
        return self.path[int(k) - 1]


def corner_fan(group, corner, basis=None):
    """Interior lines from one corner with Jung-Hirzebruch strengths.

    The rays are the lattice points on the compact boundary of the convex
    hull of the nonzero quotient-lattice points in the projected simplex
    cone; consecutive rays form bases, flats get strength 2.
    """
    order = group.order
    E = [tuple(order if i == c else 0 for i in range(3)) for c in CORNERS]
    qm = QuotientMap(group, E[corner], basis)
    others = [c for c in CORNERS if c != corner]
    PA = qm.proj(E[others[0]])
    PB = qm.proj(E[others[1]])
    if intmat.cross2(PA, PB) == 0:
        raise InvariantViolationError("degenerate corner cone")
    if intmat.cross2(PA, PB) < 0:
        PA, PB = PB, PA

    pts = _lattice_points_in_triangle(PA, PB)
    chain = _hull_chain(pts, PA, PB)

    lines = []
    for j in range(1, len(chain) - 1):
        a = intmat.cross2(chain[j - 1], chain[j + 1])
        # exactness of the recurrence v_{j-1} + v_{j+1} = a * v_j
        lhs = intmat.vec_add(chain[j - 1], chain[j + 1])
        if lhs != intmat.vec_scale(a, chain[j]):
            raise InvariantViolationError(
                "continued-fraction recurrence failed at corner fan",
                detail={"corner": corner, "ray": chain[j]},
            )
        if a < 2:
            raise InvariantViolationError(f"interior line of strength {a} < 2")
        lines.append(_make_corner_line(group, corner, E[corner], qm, chain[j], a))
    for j in range(len(chain) - 1):
        if intmat.cross2(chain[j], chain[j + 1]) != 1:
            raise InvariantViolationError("corner fan is not basic")
    return lines


def _make_corner_line(group, corner, Ec, qm, ray, strength):
    order = group.order
    w = qm.lift(ray)
    d = intmat.vec_sub(intmat.vec_scale(order, w), intmat.vec_scale(sum(w), Ec))
    step, _ = primitive_step(group, d)
    if all(step[i] <= 0 for i in CORNERS if i != corner):
        step = intmat.vec_neg(step)
    if any(step[i] <= 0 for i in CORNERS if i != corner):
        raise InvariantViolationError("corner line does not point into the simplex")
    path = []
    p = Ec
    while True:
        p = intmat.vec_add(p, step)
        if min(p) < 0:
            break
        path.append(p)
        if min(p) == 0:
            break
    if not path:
        raise InvariantViolationError("corner line leaves the simplex immediately")
    u, plus, minus = line_ratio(group, Ec, intmat.vec_add(Ec, step))
    return CornerLine(corner, ray, step, strength, u, plus, minus, path)


def _lattice_points_in_triangle(PA, PB):
    """Integer points of conv{0, PA, PB} except the origin."""
    verts = [(0, 0), PA, PB]
    xs = [v[0] for v in verts]
    out = []
    for x in range(min(xs), max(xs) + 1):
        lo, hi = None, None
        for i in range(3):
            a, b = verts[i], verts[(i + 1) % 3]
            if a[0] == b[0]:
                if a[0] == x:
                    ys = sorted((a[1], b[1]))
                    lo = ys[0] if lo is None else min(lo, ys[0])
                    hi = ys[1] if hi is None else max(hi, ys[1])
                continue
            if not (min(a[0], b[0]) <= x <= max(a[0], b[0])):
                continue
            y = Fraction(a[1] * (b[0] - x) + b[1] * (x - a[0]), b[0] - a[0])
            lo = y if lo is None else min(lo, y)
            hi = y if hi is None else max(hi, y)
        if lo is None:
            continue
        y0 = lo.__ceil__() if isinstance(lo, Fraction) else lo
        y1 = hi.__floor__() if isinstance(hi, Fraction) else hi
        for y in range(y0, y1 + 1):
            if (x, y) != (0, 0) and _in_triangle_2d((x, y), verts):
                out.append((x, y))
    return out


def _in_triangle_2d(p, verts):
    sgn = 0
    for i in range(3):
        a, b = verts[i], verts[(i + 1) % 3]
        c = intmat.cross2(intmat.vec_sub(b, a), intmat.vec_sub(p, a))
        if c == 0:
            continue
        s = 1 if c > 0 else -1
        if sgn == 0:
            sgn = s
        elif s != sgn:
            return False
    return True


def _hull_chain(points, PA, PB):
    """Radially visible boundary chain from ray PA to ray PB, flats kept."""
    by_ray = {}
    for p in points:
        d = intmat.primitive(p)
        cur = by_ray.get(d)
        if cur is None or abs(p[0]) + abs(p[1]) < abs(cur[0]) + abs(cur[1]):
            by_ray[d] = p
    reps = sorted(
        by_ray.values(),
        key=functools.cmp_to_key(lambda a, b: -intmat.cross2(a, b)),
    )
    vA = intmat.primitive(PA)
    vB = intmat.primitive(PB)
    if reps[0] != vA or reps[-1] != vB:
        raise InvariantViolationError("hull chain does not start and end on the sides")
    stack = []
    for p in reps:
        while len(stack) >= 2 and intmat.cross2(
            intmat.vec_sub(p, stack[-2]), intmat.vec_sub(stack[-1], stack[-2])
        ) <= 0:
            stack.pop()
        stack.append(p)
    # re-insert lattice points sitting on flat chain edges
    chain = []
    for i in range(len(stack) - 1):
        a, b = stack[i], stack[i + 1]
        chain.append(a)
        flats = []
        for q in by_ray.values():
            if q in (a, b):
                continue
            d1 = intmat.vec_sub(b, a)
            d2 = intmat.vec_sub(q, a)
            if intmat.cross2(d1, d2) == 0 and 0 < intmat.vec_dot(d1, d2) < intmat.vec_dot(d1, d1):
                flats.append(q)
        flats.sort(key=lambda q: intmat.vec_dot(intmat.vec_sub(b, a), intmat.vec_sub(q, a)))
        chain.extend(flats)
    chain.append(stack[-1])
    return chain


# ---------------------------------------------------------------------------
# ratios


def line_ratio(group, p, q):
    """Canonical (u, plus, minus) for the line through two plane points.

    u is the primitive invariant exponent vector vanishing on the line,
    signed so that the positive part beats the negative part in lex order;
    the ratio is plus : minus.
    """
    u0 = intmat.cross3(p, q)
    if u0 == (0, 0, 0):
        raise InvariantViolationError("points are collinear with the origin")
    u0 = intmat.primitive(u0)
    r = group.order
    g = r
    for e in group.scaled_generators:
        g = gcd(g, intmat.vec_dot(u0, e) % r)
    k = r // gcd(g, r) if g else 1
    u = intmat.vec_scale(k, u0)
    plus, minus = ratio_split(u)
    if plus < minus:
        u = intmat.vec_neg(u)
        plus, minus = minus, plus
    return u, plus, minus


def monomial_knockout(ratio_a, ratio_b):
    """Remark-style local rule: compare exponents of the shared variable.

    ratio_* is a (plus, minus) monomial pair.  Returns "first" or "second"
    for the line that extends, or "both_die" on an exact tie.
    """
    sup_a = {i for i in range(3) if ratio_a[0][i] or ratio_a[1][i]}
    sup_b = {i for i in range(3) if ratio_b[0][i] or ratio_b[1][i]}
    shared = sup_a & sup_b
    if len(shared) != 1:
        raise InputError(
            "knock-out rule needs ratios sharing exactly one monomial variable",
            detail={"shared": sorted(shared)},
        )
    s = shared.pop()
    ea = ratio_a[0][s] + ratio_a[1][s]
    eb = ratio_b[0][s] + ratio_b[1][s]
    if ea < eb:
        return "first"
    if eb < ea:
        return "second"
    return "both_die"


# ---------------------------------------------------------------------------
# step 2: knock-out


@dataclass
class Battle:
    point: tuple  # exact 2d point (Fractions); lattice once realized
    lattice_point: tuple | None
    participants: list  # line indices
    winner: int | None
    strengths: dict


@dataclass
class Partition:
    group: AbelianGroup
    corner_lines: list
    regular_triangles: list
    battles: list
    champion_point: tuple | None


@dataclass
class RegularTriangle:
    vertices: tuple  # CCW corner cycle
    side: int
    steps: tuple
    kind: str  # "corner" | "champion"
    corner: int | None


def knockout(group, fans=None, basis=None):
    """Run the tournament and cut the simplex into regular triangles."""
    basis = basis or lattice_basis(group)
    if fans is None:
        fans = [corner_fan(group, c, basis) for c in CORNERS]
    lines = [ln for fan in fans for ln in fan]
    order = group.order
    E = [tuple(order if i == c else 0 for i in range(3)) for c in CORNERS]

    # all pairwise crossings between lines from different corners
    point_parts = {}  # 2d fraction point -> {line index: param along that line}
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            li, lj = lines[i], lines[j]
            if li.corner == lj.corner:
                continue
            ci, cj = proj2(E[li.corner]), proj2(E[lj.corner])
            di, dj = proj2(li.step), proj2(lj.step)
            den = intmat.cross2(di, dj)
            if den == 0:
                raise InvariantViolationError("parallel interior lines cannot occur")
            dc = intmat.vec_sub(cj, ci)
            t = Fraction(intmat.cross2(dc, dj), den)
            s = Fraction(intmat.cross2(dc, di), den)
            if t <= 0 or s <= 0:
                raise InvariantViolationError("interior lines must cross inside")
            pt = (ci[0] + t * di[0], ci[1] + t * di[1])
            point_parts.setdefault(pt, {})[i] = t
            point_parts.setdefault(pt, {})[j] = s

    per_line = [
        sorted((t, pt) for pt, parts in point_parts.items() for k, t in parts.items() if k == i)
        for i in range(len(lines))
    ]

    death = [None] * len(lines)

    def reaches(k, pt):
        return death[k] is None or death[k] >= point_parts[pt][k]

    for _ in range(2 * len(lines) + 8):
        changed = False
        for i, ln in enumerate(lines):
            new_death = None
            for t, pt in per_line[i]:
                rivals = [k for k in point_parts[pt] if k != i and reaches(k, pt)]
                if not rivals:
                    continue
                if not all(
                    monomial_knockout((ln.plus, ln.minus), (lines[k].plus, lines[k].minus))
                    == "first"
                    for k in rivals
                ):
                    new_death = t
                    break
            if new_death != death[i]:
                death[i] = new_death
                changed = True
        if not changed:
            break
    else:
        raise InvariantViolationError("knock-out tournament did not stabilise")

    battles = _resolve_battles(group, lines, point_parts, death)
    champion_point = None
    for b in battles:
        if b.winner is None and len(b.participants) == 3:
            if champion_point is not None:
                raise InvariantViolationError("two side-0 champion meetings")
            champion_point = b.lattice_point

    for i, ln in enumerate(lines):
        ln.death_t = death[i]
        if death[i] is not None:
            if death[i] != int(death[i]):
                raise InvariantViolationError("line dies at a non-lattice parameter")
        else:
            exit_pt = ln.path[-1]
            if min(exit_pt) != 0:
                raise InvariantViolationError(
                    "surviving line leaves the simplex at a non-lattice point"
                )

    regular = _extract_faces(group, lines, battles, basis)
    total = sum(t.side * t.side for t in regular)
    if total != order:
        raise InvariantViolationError(
            f"regular partition covers {total} basic triangles, expected {order}"
        )
    return Partition(group, lines, regular, battles, champion_point)


def _resolve_battles(group, lines, point_parts, death):
    order = group.order
    battles = []
    defeats = {i: [] for i in range(len(lines))}

    def reaches(k, pt):
        return death[k] is None or death[k] >= point_parts[pt][k]

    realized = []
    for pt, parts in point_parts.items():
        ks = [k for k in parts if reaches(k, pt)]
        if len(ks) >= 2:
            realized.append((pt, ks))

    for pt, ks in realized:
        if len(ks) > 3 or len({lines[k].corner for k in ks}) != len(ks):
            raise InvariantViolationError("battle with repeated corners")
        if pt[0].denominator != 1 or pt[1].denominator != 1:
            raise InvariantViolationError(f"battle at non-lattice point {pt}")
        lp = unproj(order, (int(pt[0]), int(pt[1])))
        if not group.in_lattice(lp):
            raise InvariantViolationError(f"battle at non-lattice point {lp}")
        winner = None
        for i in ks:
            if all(
                monomial_knockout(
                    (lines[i].plus, lines[i].minus), (lines[k].plus, lines[k].minus)
                )
                == "first"
                for k in ks
                if k != i
            ):
                winner = i
                break
        for i in ks:
            if i != winner:
                if death[i] != point_parts[pt][i]:
                    raise InvariantViolationError("defeated line does not die in place")
        if winner is not None:
            defeats[winner].append((point_parts[pt][winner], len(ks) - 1))
        battles.append((pt, ks, winner, lp))

    out = []
    for pt, ks, winner, lp in sorted(battles, key=lambda b: (b[0][0], b[0][1])):
        strengths = {}
        for k in ks:
            t = point_parts[pt][k]
            strengths[k] = lines[k].strength - sum(c for tt, c in defeats[k] if tt < t)
        smax = max(strengths.values())
        top = [k for k, s in strengths.items() if s == smax]
        strength_winner = top[0] if len(top) == 1 else None
        if strength_winner != winner:
            raise InvariantViolationError(
                "strength rule disagrees with the monomial rule",
                detail={"point": lp, "strengths": strengths},
            )
        out.append(Battle(pt, lp, ks, winner, strengths))
        for k in ks:
            lines[k].battles.append((lp, strengths[k], winner == k))

    for i, ln in enumerate(lines):
        ln.final_strength = ln.strength - sum(c for _, c in defeats[i])
    return out


def _extract_faces(group, lines, battles, basis):
    order = group.order
    E = [tuple(order if i == c else 0 for i in range(3)) for c in CORNERS]

    segments = [(E[0], E[1]), (E[1], E[2]), (E[0], E[2])]
    for ln in lines:
        segments.append((E[ln.corner], ln.endpoint()))

    nodes = {proj2(E[c]) for c in CORNERS}
    for ln in lines:
        nodes.add(proj2(ln.endpoint()))
    for b in battles:
        nodes.add(proj2(b.lattice_point))

    adj = {}
    for a3, b3 in segments:
        a, b = proj2(a3), proj2(b3)
        d = intmat.vec_sub(b, a)
        onseg = []
        for p in nodes:
            w = intmat.vec_sub(p, a)
            if intmat.cross2(d, w) == 0 and 0 <= intmat.vec_dot(d, w) <= intmat.vec_dot(d, d):
                onseg.append((intmat.vec_dot(d, w), p))
        onseg.sort()
        for (_, p), (_, q) in zip(onseg, onseg[1:]):
            adj.setdefault(p, set()).add(q)
            adj.setdefault(q, set()).add(p)

    faces = _walk_faces(adj)
    dbasis = direction_basis(group, basis)
    regular = []
    champion_seen = False
    for cyc in faces:
        corners = _cycle_corners(cyc)
        if len(corners) != 3:
            raise InvariantViolationError(
                f"knock-out face with {len(corners)} corners is not a triangle"
            )
        tri = [unproj(order, c) for c in corners]
        reg = _regular_triangle(group, tri, dbasis)
        if reg.kind == "champion":
            if champion_seen:
                raise InvariantViolationError("two meeting-of-champions triangles")
            champion_seen = True
        regular.append(reg)
    regular.sort(key=lambda t: t.vertices)
    return regular


def _walk_faces(adj):
    def angle_cmp(d1, d2):
        h1 = 0 if (d1[1] > 0 or (d1[1] == 0 and d1[0] > 0)) else 1
        h2 = 0 if (d2[1] > 0 or (d2[1] == 0 and d2[0] > 0)) else 1
        if h1 != h2:
            return -1 if h1 < h2 else 1
        c = intmat.cross2(d1, d2)
        return -1 if c > 0 else (1 if c < 0 else 0)

    ordered = {}
    for v, nbrs in adj.items():
        ordered[v] = sorted(
            nbrs, key=functools.cmp_to_key(
                lambda a, b: angle_cmp(intmat.vec_sub(a, v), intmat.vec_sub(b, v))
            )
        )

    seen = set()
    faces = []
    for v in adj:
        for w in adj[v]:
            if (v, w) in seen:
                continue
            cyc = []
            a, b = v, w
            while (a, b) not in seen:
                seen.add((a, b))
                cyc.append(a)
                nbrs = ordered[b]
                idx = nbrs.index(a)
                c = nbrs[(idx - 1) % len(nbrs)]
                a, b = b, c
            area2 = 0
            for i in range(len(cyc)):
                p, q = cyc[i], cyc[(i + 1) % len(cyc)]
                area2 += intmat.cross2(p, q)
            if area2 > 0:
                faces.append(cyc)
    return faces


def _cycle_corners(cyc):
    n = len(cyc)
    corners = []
    for i in range(n):
        d1 = intmat.vec_sub(cyc[i], cyc[i - 1])
        d2 = intmat.vec_sub(cyc[(i + 1) % n], cyc[i])
        if intmat.cross2(d1, d2) != 0:
            corners.append(cyc[i])
    return corners


def _regular_triangle(group, tri, dbasis):
    order = group.order
    # canonical rotation: lex-smallest corner first, cyclic (CCW) order kept,
    # so the output is independent of where the face walk started
    start = min(range(3), key=lambda i: tri[i])
    tri = [tri[(start + i) % 3] for i in range(3)]
    E = {tuple(order if i == c else 0 for i in range(3)): c for c in CORNERS}
    steps = []
    sides = []
    for i in range(3):
        d = intmat.vec_sub(tri[(i + 1) % 3], tri[i])
        step, r = primitive_step(group, d)
        steps.append(step)
        sides.append(r)
    if len(set(sides)) != 1:
        raise InvariantViolationError(f"face with side counts {sides} is not regular")
    r = sides[0]
    s1 = intmat.vec_sub(tri[1], tri[0])
    s1 = tuple(x // r for x in s1)
    s2 = intmat.vec_sub(tri[2], tri[0])
    s2 = tuple(x // r for x in s2)
    c1 = intmat.solve_int(dbasis, s1)
    c2 = intmat.solve_int(dbasis, s2)
    if c1 is None or c2 is None:
        raise InvariantViolationError("regular triangle steps are not lattice vectors")
    if abs(c1[0] * c2[1] - c1[1] * c2[0]) != 1:
        raise InvariantViolationError("face is not a regular (unimodular) triangle")
    corner_hits = [E[v] for v in tri if v in E]
    if corner_hits:
        return RegularTriangle(tuple(tri), r, (s1, s2), "corner", min(corner_hits))
    return RegularTriangle(tuple(tri), r, (s1, s2), "champion", None)


# ---------------------------------------------------------------------------
# step 3: tesselation and the decorated triangulation


@dataclass
class Line:
    u: tuple
    plus: tuple
    minus: tuple
    character: tuple
    kind: str  # "corner" | "boundary" | "tesselating"
    corner: int | None
    strength: int | None
    final_strength: int | None
    edges: list
    endpoints: tuple


@dataclass
class Edge:
    a: tuple
    b: tuple
    line: int
    interior: bool
    triangles: list


@dataclass
class Triangle:
    vertices: tuple  # lex-sorted
    orientation: str  # "up" | "down" within its regular triangle
    regular: int


class Triangulation:
    def __init__(self, group, partition, basis):
        self.group = group
        self.partition = partition
        self.basis = basis
        self.regular_triangles = partition.regular_triangles
        self.triangles = []
        self.points = set()
        self._build_triangles()
        self._build_edges()
        self._group_lines()
        self._check_counts()

    # -- construction ---------------------------------------------------------

    def _build_triangles(self):
        for ri, reg in enumerate(self.regular_triangles):
            A = reg.vertices[0]
            s1, s2 = reg.steps
            r = reg.side
            for a in range(r):
                for b in range(r - a):
                    p = intmat.vec_add(A, intmat.vec_add(intmat.vec_scale(a, s1), intmat.vec_scale(b, s2)))
                    up = (p, intmat.vec_add(p, s1), intmat.vec_add(p, s2))
                    self.triangles.append(Triangle(tuple(sorted(up)), "up", ri))
                    if a + b <= r - 2:
                        down = (
                            intmat.vec_add(p, s1),
                            intmat.vec_add(p, s2),
                            intmat.vec_add(p, intmat.vec_add(s1, s2)),
                        )
                        self.triangles.append(Triangle(tuple(sorted(down)), "down", ri))
        self.triangles.sort(key=lambda t: t.vertices)
        for t in self.triangles:
            self.points.update(t.vertices)
        self.points = sorted(self.points)

    def _build_edges(self):
        pairs = {}
        for ti, t in enumerate(self.triangles):
            v = t.vertices
            for i in range(3):
                key = tuple(sorted((v[i], v[(i + 1) % 3])))
                pairs.setdefault(key, []).append(ti)
        self.edges = []
        self.edge_index = {}
        for key in sorted(pairs):
            a, b = key
            interior = not any(a[i] == 0 and b[i] == 0 for i in range(3))
            n = len(pairs[key])
            if interior and n != 2 or not interior and n != 1:
                raise InvariantViolationError(
                    f"edge {key} borders {n} triangles", detail={"interior": interior}
                )
            self.edge_index[key] = len(self.edges)
            self.edges.append(Edge(a, b, -1, interior, pairs[key]))

    def _group_lines(self):
        corner_by_u = {}
        for ln in self.partition.corner_lines:
            corner_by_u[ln.u] = ln
        groups = {}
        for ei, e in enumerate(self.edges):
            u, plus, minus = line_ratio(self.group, e.a, e.b)
            groups.setdefault((u, plus, minus), []).append(ei)
        self.lines = []
        self.line_index = {}
        for (u, plus, minus) in sorted(groups):
            eids = groups[(u, plus, minus)]
            chi = self.group.weight(plus)
            if chi != self.group.weight(minus):
                raise InvariantViolationError("ratio monomials have different weights")
            zero_coords = sum(1 for x in u if x == 0)
            cl = corner_by_u.get(u)
            if zero_coords >= 2:
                kind, corner, s0, s1 = "boundary", None, None, None
            elif cl is not None:
                kind, corner, s0, s1 = "corner", cl.corner, cl.strength, cl.final_strength
            else:
                kind, corner, s0, s1 = "tesselating", None, None, None
            pts = sorted({p for ei in eids for p in (self.edges[ei].a, self.edges[ei].b)})
            li = len(self.lines)
            self.lines.append(
                Line(u, plus, minus, chi, kind, corner, s0, s1, sorted(eids), (pts[0], pts[-1]))
            )
            self.line_index[u] = li
            for ei in eids:
                self.edges[ei].line = li

    def _check_counts(self):
        order = self.group.order
        if len(self.triangles) != order:
            raise InvariantViolationError(
                f"{len(self.triangles)} basic triangles for a group of order {order}"
            )
        for t in self.triangles:
            d = intmat.det3(list(t.vertices))
            if abs(d) != order * order:
                raise InvariantViolationError(
                    "triangle is not basic", detail={"vertices": t.vertices, "det": d}
                )
        juniors = set(self.group.junior_points())
        interior_pts = {p for p in self.points if min(p) > 0}
        boundary_pts = {p for p in self.points if min(p) == 0}
        if not juniors <= set(self.points) or len(self.points) != 3 + len(juniors):
            raise InvariantViolationError("fan vertices differ from the simplex lattice points")
        I, B = len(interior_pts), len(boundary_pts)
        if 2 * I + B - 2 != order:
            raise InvariantViolationError(
                f"vertex count identity failed: 2*{I} + {B} - 2 != {order}"
            )

    # -- queries ----------------------------------------------------------------

    def interior_vertices(self):
        return [p for p in self.points if min(p) > 0]

    def boundary_vertices(self):
        return [p for p in self.points if min(p) == 0]

    def vertex_edge_map(self):
        out = {}
        for ei, e in enumerate(self.edges):
            out.setdefault(e.a, []).append(ei)
            out.setdefault(e.b, []).append(ei)
        return out

    def interior_edges(self):
        if not hasattr(self, "_interior_edges"):
            self._interior_edges = [ei for ei, e in enumerate(self.edges) if e.interior]
        return self._interior_edges

    def triangles_at(self, v):
        return [ti for ti, t in enumerate(self.triangles) if v in t.vertices]


def triangulate(group) -> Triangulation:
    """Full pipeline: corner fans, knock-out, tesselation, ratio labels."""
    basis = lattice_basis(group)
    part = knockout(group, basis=basis)
    return Triangulation(group, part, basis)
