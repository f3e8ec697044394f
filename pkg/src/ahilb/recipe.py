"""Character decoration of the triangulation.

Interior lines are marked with the common weight of their ratio monomials.
Interior vertices get one mark (two at a triple intersection of straight
lines) determined by the valency case analysis; the triple-intersection
pair is computed from the socles of the six incident charts and verified
against the projection-monomial construction.  The result partitions the
nontrivial characters: each marks exactly one line, vertex, or is the
designated second character of a triple intersection.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import intmat
from .errors import InvariantViolationError, CorrespondenceError
from .group import MONO_ONE, monomial_mul

CASE_P2 = "P2"
CASE_SCROLL = "scroll"
CASE_BLOWNUP = "blownup_scroll"
CASE_DP6 = "dP6"

_CASE_NUMBER = {CASE_P2: 1, CASE_SCROLL: 2, CASE_BLOWNUP: 3, CASE_DP6: 4}


@dataclass
class VertexMark:
    vertex: tuple
    valency: int
    case: str
    marks: tuple  # one character, or the (type-iii, type-ii) ordered pair
    through: dict  # character -> sorted incident edge ids
    edge_ids: tuple

    @property
    def case_number(self):
        return _CASE_NUMBER[self.case]

    def mark_ii(self):
        """The character that indexes the virtual bundle at this vertex."""
        return self.marks[-1]

    def mark_iii(self):
        return self.marks[0] if self.case == CASE_DP6 else None


@dataclass
class Decoration:
    line_marks: dict  # line index -> character (interior lines only)
    vertex_marks: dict  # vertex -> VertexMark
    partition: dict  # "line" | "vertex" | "second" -> sorted character lists


def mark_lines(triangulation):
    """Characters of the interior lines, plus the connectivity of equal marks.

    Lines sharing a character must form a single chain through common
    vertices (they are then one line "passing through" those vertices).
    """
    T = triangulation
    marks = {}
    by_char = {}
    for li, ln in enumerate(T.lines):
        if ln.kind == "boundary":
            continue
        marks[li] = ln.character
        by_char.setdefault(ln.character, []).append(li)
    for chi, lis in by_char.items():
        if chi == T.group.reduce(MONO_ONE):
            raise InvariantViolationError("an interior line carries the trivial character")
        if len(lis) == 1:
            continue
        # union-find over shared endpoints of the line segments
        parent = {li: li for li in lis}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        pts = {}
        for li in lis:
            for ei in T.lines[li].edges:
                for p in (T.edges[ei].a, T.edges[ei].b):
                    pts.setdefault(p, []).append(li)
        for group in pts.values():
            for other in group[1:]:
                ra, rb = find(group[0]), find(other)
                if ra != rb:
                    parent[ra] = rb
        if len({find(li) for li in lis}) != 1:
            raise CorrespondenceError(
                "lines with one character do not form a single through-line",
                detail={"character": chi, "lines": lis},
            )
    return marks


def _vertex_edges(triangulation):
    out = {}
    for ei, e in enumerate(triangulation.edges):
        out.setdefault(e.a, []).append(ei)
        out.setdefault(e.b, []).append(ei)
    return out


def mark_vertex(triangulation, chart_set, vertex, edge_ids):
    """Apply the valency case analysis at one interior vertex."""
    T = triangulation
    g = T.group
    valency = len(edge_ids)
    if valency < 3 or valency > 6:
        raise InvariantViolationError(
            f"interior vertex of valency {valency}", detail={"vertex": vertex}
        )
    by_char = {}
    for ei in edge_ids:
        chi = T.lines[T.edges[ei].line].character
        by_char.setdefault(chi, []).append(ei)
    pattern = sorted(len(v) for v in by_char.values())
    pairs = [chi for chi, eis in by_char.items() if len(eis) == 2]

    if valency == 3:
        if pattern != [3]:
            raise InvariantViolationError(
                "valency-3 vertex whose three lines are not equally marked",
                detail={"vertex": vertex},
            )
        chi = next(iter(by_char))
        marks = (g.char_add(chi, chi),)
        case = CASE_P2
    elif valency == 4:
        if pattern != [2, 2]:
            raise InvariantViolationError(
                "valency-4 vertex without two marked pairs", detail={"vertex": vertex}
            )
        marks = (g.char_add(pairs[0], pairs[1]),)
        case = CASE_SCROLL
    elif valency == 5:
        if pattern != [1, 2, 2]:
            raise InvariantViolationError(
                "valency-5 vertex without two marked pairs", detail={"vertex": vertex}
            )
        marks = (g.char_add(pairs[0], pairs[1]),)
        case = CASE_BLOWNUP
    else:
        straight = pattern == [2, 2, 2] and all(
            len({T.edges[ei].line for ei in eis}) == 1 for eis in by_char.values()
        )
        if straight:
            case = CASE_DP6
            marks = _dp6_marks(T, chart_set, vertex, sorted(by_char))
        elif pattern == [1, 1, 2, 2]:
            case = CASE_BLOWNUP
            marks = (g.char_add(pairs[0], pairs[1]),)
        else:
            raise InvariantViolationError(
                "valency-6 vertex matching no marking case",
                detail={"vertex": vertex, "pattern": pattern},
            )

    if case != CASE_DP6:
        # the mark generator sits in the socle of every chart at the vertex
        chi = marks[0]
        for ti in _triangles_at(T, vertex):
            graph = chart_set.agraphs[ti]
            if graph.table[chi] not in graph.socle:
                raise InvariantViolationError(
                    "vertex mark generator missing from a socle",
                    detail={"vertex": vertex, "character": chi},
                )
    through = {chi: sorted(eis) for chi, eis in by_char.items()}
    return VertexMark(vertex, valency, case, marks, through, tuple(sorted(edge_ids)))


def _triangles_at(T, vertex):
    return [ti for ti, t in enumerate(T.triangles) if vertex in t.vertices]


def _dp6_marks(T, chart_set, vertex, line_chars):
    g = T.group
    tris = _triangles_at(T, vertex)
    if len(tris) != 6:
        raise InvariantViolationError("triple intersection without six triangles")
    socle_chars = None
    for ti in tris:
        graph = chart_set.agraphs[ti]
        chars = {chi for chi, m in graph.table.items() if m in graph.socle}
        socle_chars = chars if socle_chars is None else socle_chars & chars
    cands = socle_chars - set(line_chars) - {g.reduce(MONO_ONE)}
    if len(cands) != 2:
        raise InvariantViolationError(
            "socle method did not isolate two characters at a triple intersection",
            detail={"vertex": vertex, "candidates": sorted(cands)},
        )
    a, b = sorted(cands)
    if g.char_sum(line_chars) != g.char_add(a, b):
        raise InvariantViolationError(
            "triple-intersection marks do not sum to the through-line characters",
            detail={"vertex": vertex},
        )
    proj = projection_pair(T, chart_set, vertex)
    if proj != (a, b):
        raise InvariantViolationError(
            "socle method disagrees with the projection-monomial method",
            detail={"vertex": vertex, "socle": (a, b), "projection": proj},
        )
    # ordered: lex-smaller canonical representative first = kept in the
    # degree-2 cohomology basis; the other spawns the virtual bundle
    return (a, b)


def projection_pair(T, chart_set, vertex):
    """Marks of a triple intersection from the two plane-projection maps.

    Each of the three straight lines has a pure power of one variable on
    one ratio side; combining each pure side with the matching part of the
    next line's mixed side yields the two monomial triples defining the
    maps to the plane.  Their common weights are the two marks.
    """
    g = T.group
    vmap = _vertex_edges(T)
    lines = sorted({T.edges[ei].line for ei in vmap[vertex] if T.edges[ei].interior})
    pure = {}
    mixed = {}
    for li in lines:
        ln = T.lines[li]
        for side, other in ((ln.plus, ln.minus), (ln.minus, ln.plus)):
            support = [i for i in range(3) if side[i]]
            if len(support) == 1:
                v = support[0]
                if v in pure:
                    raise InvariantViolationError("two lines share a pure variable")
                pure[v] = side
                mixed[v] = other
                break
        else:
            raise InvariantViolationError("straight line without a pure ratio side")
    if sorted(pure) != [0, 1, 2]:
        raise InvariantViolationError("straight lines do not cover the three variables")

    def part(m, var):
        return tuple(m[i] if i == var else 0 for i in range(3))

    x, y, z = 0, 1, 2
    triple1 = (
        monomial_mul(pure[y], part(mixed[x], z)),
        monomial_mul(part(mixed[y], x), pure[z]),
        monomial_mul(pure[x], part(mixed[z], y)),
    )
    triple2 = (
        monomial_mul(pure[x], part(mixed[y], z)),
        monomial_mul(part(mixed[x], y), pure[z]),
        monomial_mul(part(mixed[z], x), pure[y]),
    )
    out = []
    for triple in (triple1, triple2):
        ws = {g.weight(m) for m in triple}
        if len(ws) != 1:
            raise InvariantViolationError(
                "projection monomials are not equally weighted",
                detail={"vertex": vertex, "triple": triple},
            )
        out.append(ws.pop())
    return tuple(sorted(out))


def decorate(triangulation, chart_set) -> Decoration:
    T = triangulation
    g = T.group
    line_marks = mark_lines(T)
    vmap = _vertex_edges(T)
    vertex_marks = {}
    for v in T.interior_vertices():
        edge_ids = sorted(ei for ei in vmap[v] if T.edges[ei].interior)
        if len(edge_ids) != len(vmap[v]):
            raise InvariantViolationError("interior vertex on a boundary edge")
        vertex_marks[v] = mark_vertex(T, chart_set, v, edge_ids)
    partition = classify_characters(T, line_marks, vertex_marks)
    return Decoration(line_marks, vertex_marks, partition)


def classify_characters(triangulation, line_marks, vertex_marks):
    """Exact cover of the nontrivial characters by line/vertex/second marks."""
    g = triangulation.group
    trivial = g.reduce(MONO_ONE)
    buckets = {"line": set(line_marks.values()), "vertex": set(), "second": set()}
    for vm in vertex_marks.values():
        if vm.case == CASE_DP6:
            buckets["second"].add(vm.marks[0])
            buckets["vertex"].add(vm.marks[1])
        else:
            buckets["vertex"].add(vm.marks[0])
    counts = {k: len(v) for k, v in buckets.items()}
    expected_vertex = len(vertex_marks)
    if counts["vertex"] != expected_vertex:
        raise CorrespondenceError(
            "vertex marks are not pairwise distinct",
            detail={"marked": counts["vertex"], "vertices": expected_vertex},
        )
    union = buckets["line"] | buckets["vertex"] | buckets["second"]
    total = counts["line"] + counts["vertex"] + counts["second"]
    nontrivial = set(g.characters()) - {trivial}
    if trivial in union or len(union) != total or union != nontrivial:
        missing = sorted(nontrivial - union)
        dup = sorted(
            c for c in union
            if (c in buckets["line"]) + (c in buckets["vertex"]) + (c in buckets["second"]) > 1
        )
        raise CorrespondenceError(
            "characters do not split into line/vertex/second marks",
            detail={"missing": missing, "duplicated": dup,
                    "trivial_marked": trivial in union},
        )
    return {k: sorted(v) for k, v in buckets.items()}


# ---------------------------------------------------------------------------
# corner-region character lists


def corner_region_characters(triangulation, regular_index):
    """Weights of the monomial rectangle attached to a corner regular triangle.

    Extracts the side ratios in the corner's frame, checks the index
    identities d-a = e-b-c = f = r, and returns the characters of
    z^(f-k) and x^(d-i) z^(f-k) for i,k = 0..r (in frame variables).
    """
    T = triangulation
    g = T.group
    reg = T.regular_triangles[regular_index]
    if reg.kind != "corner":
        raise InvariantViolationError("character rectangle needs a corner triangle")
    corner = reg.corner
    Ec = tuple(g.order if i == corner else 0 for i in range(3))
    side_lines = []
    for i in range(3):
        p, q = reg.vertices[i], reg.vertices[(i + 1) % 3]
        from .fan import line_ratio

        u, plus, minus = line_ratio(g, p, q)
        side_lines.append((frozenset((p, q)), u, plus, minus))
    through = [sl for sl in side_lines if Ec in sl[0]]
    across = [sl for sl in side_lines if Ec not in sl[0]]
    if len(through) != 2 or len(across) != 1:
        raise InvariantViolationError("corner triangle sides are mislabeled")

    others = [i for i in range(3) if i != corner]
    _, _, plus3, minus3 = across[0]
    # the far side carries the pure power of the corner variable
    for m_pure, m_other in ((plus3, minus3), (minus3, plus3)):
        if m_pure[corner] and all(m_pure[i] == 0 for i in others):
            break
    else:
        raise InvariantViolationError("far side of corner triangle has no pure power")
    f = m_pure[corner]
    support = [i for i in others if m_other[i]]
    if len(support) > 1 or m_other[corner]:
        raise InvariantViolationError("far side mixes both non-corner variables")
    r = reg.side

    def try_frame(xvar, yvar):
        c = m_other[yvar]
        if support and support[0] != yvar:
            return None
        exps = []
        for _, _, plus, minus in through:
            exps.append((plus[xvar] + minus[xvar], plus[yvar] + minus[yvar]))
        exps.sort()
        (a, e), (d, b) = exps
        if d - a == e - b - c == f == r:
            return a, b, c, d, e, xvar
        return None

    frame = try_frame(others[0], others[1]) or try_frame(others[1], others[0])
    if frame is None:
        raise InvariantViolationError(
            "corner triangle violates the side-ratio identities",
            detail={"regular": regular_index, "side": r},
        )
    a, b, c, d, e, xvar = frame

    def mono(xe, ze):
        m = [0, 0, 0]
        m[xvar] = xe
        m[corner] = ze
        return tuple(m)

    chars = []
    for k in range(r + 1):
        chars.append(g.weight(mono(0, f - k)))
        for i in range(r + 1):
            chars.append(g.weight(mono(d - i, f - k)))
    return chars


def champion_identities(triangulation, regular_index):
    """Check the cyclic side-ratio identities of a meeting of champions.

    The three sides are cut out by two-variable ratios covering the pairs
    {x,y}, {y,z}, {z,x}; for each variable the difference of its exponents
    in the two incident ratios must equal the side length, with one
    consistent cyclic orientation.
    """
    T = triangulation
    g = T.group
    reg = T.regular_triangles[regular_index]
    if reg.kind != "champion":
        raise InvariantViolationError("not a meeting of champions")
    from .fan import line_ratio

    by_pair = {}
    for i in range(3):
        p, q = reg.vertices[i], reg.vertices[(i + 1) % 3]
        _, plus, minus = line_ratio(g, p, q)
        exps = tuple(plus[j] + minus[j] for j in range(3))
        sup = frozenset(j for j in range(3) if exps[j])
        if len(sup) != 2 or sup in by_pair:
            raise InvariantViolationError("champion sides are not two-variable ratios")
        by_pair[sup] = exps
    if set(by_pair) != {frozenset((0, 1)), frozenset((1, 2)), frozenset((0, 2))}:
        raise InvariantViolationError("champion sides do not cover the variable pairs")
    r = reg.side
    xy, yz, zx = (by_pair[frozenset(p)] for p in ((0, 1), (1, 2), (0, 2)))
    diffs = (xy[0] - zx[0], yz[1] - xy[1], zx[2] - yz[2])
    if not (diffs == (r, r, r) or diffs == (-r, -r, -r)):
        raise InvariantViolationError(
            "champion triangle violates the cyclic side identities",
            detail={"differences": diffs, "side": r},
        )
    return True


# ---------------------------------------------------------------------------
# quiver fundamental domain


@dataclass
class QuiverEmbedding:
    chart: int  # triangle whose monomial basis supplies the representatives
    placements: dict  # character -> exponent representative


def quiver_embedding(triangulation, chart_set, decoration) -> QuiverEmbedding:
    """One hexagon per character in the plane of monomials mod (1,1,1).

    Representatives are the monomial basis of the chart containing the
    simplex barycentre: one monomial per character, closed under division,
    hence a connected fundamental domain of the periodic hexagon plane.
    """
    T = triangulation
    g = T.group
    order = g.order
    bc = (order, order, order)  # barycentre scaled by 3
    chosen = None
    for ti, tri in enumerate(T.triangles):
        v = [intmat.vec_scale(3, p) for p in tri.vertices]
        if _in_triangle_3(bc, v):
            chosen = ti
            break
    if chosen is None:
        raise InvariantViolationError("no chart contains the barycentre")
    table = chart_set.agraphs[chosen].table
    placements = {chi: table[chi] for chi in g.characters()}
    _check_embedding(g, placements)
    return QuiverEmbedding(chosen, placements)


def _in_triangle_3(p, verts):
    p2 = (p[0], p[1])
    v2 = [(v[0], v[1]) for v in verts]
    sgn = 0
    for i in range(3):
        a, b = v2[i], v2[(i + 1) % 3]
        c = intmat.cross2(intmat.vec_sub(b, a), intmat.vec_sub(p2, a))
        if c == 0:
            continue
        s = 1 if c > 0 else -1
        if sgn == 0:
            sgn = s
        elif s != sgn:
            return False
    return True


def hexagon_position(monomial):
    """Centre of a monomial's hexagon: the class modulo multiples of xyz."""
    return (monomial[0] - monomial[2], monomial[1] - monomial[2])


def _check_embedding(group, placements):
    if len(placements) != group.order:
        raise CorrespondenceError("quiver domain does not have |A| hexagons")
    seen = {}
    for chi, m in placements.items():
        if group.weight(m) != chi:
            raise CorrespondenceError("quiver representative has the wrong weight")
        pos = hexagon_position(m)
        if pos in seen:
            raise CorrespondenceError(
                "two characters share a hexagon",
                detail={"position": pos, "characters": [seen[pos], chi]},
            )
        seen[pos] = chi
    # connectivity under the six unit steps of the hexagon plane
    cells = set(seen)
    start = next(iter(cells))
    stack = [start]
    reached = {start}
    steps = [(1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1)]
    while stack:
        c = stack.pop()
        for dx, dy in steps:
            n = (c[0] + dx, c[1] + dy)
            if n in cells and n not in reached:
                reached.add(n)
                stack.append(n)
    if reached != cells:
        raise CorrespondenceError("quiver fundamental domain is disconnected")
