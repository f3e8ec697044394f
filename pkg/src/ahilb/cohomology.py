"""Virtual bundles, compact surfaces, and the duality certificate.

Each interior vertex carries a compact exceptional surface (the star of
its ray, a smooth complete toric surface) and a rank-0 virtual bundle
built from its relation.  The certificate is the integer pairing matrix
between second Chern classes and surfaces: it must be the identity, and
the degree rows of the surviving bundles must base the degree-2 lattice.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from . import intmat
from .errors import CorrespondenceError, InvariantViolationError
from .fan import QuotientMap, primitive_step
from .group import MONO_ONE
from .recipe import CASE_BLOWNUP, CASE_DP6, CASE_P2, CASE_SCROLL


@dataclass
class VirtualBundle:
    index: tuple  # the type-(ii) character
    vertex: tuple
    plus: tuple  # characters
    minus: tuple


@dataclass
class CompactSurface:
    vertex: tuple
    rays: tuple  # cyclically ordered primitive rays of the star fan
    edge_ids: tuple  # boundary curves, matching rays
    self_intersections: tuple
    surface_type: str


def virtual_bundle(group, vertex_mark, relation) -> VirtualBundle:
    """Rank-0, degree-0 formal difference attached to one interior vertex."""
    trivial = group.reduce(MONO_ONE)
    plus = tuple(sorted(relation.rhs))
    minus = tuple(sorted(relation.lhs + (trivial,)))
    if len(plus) != len(minus):
        raise InvariantViolationError("virtual bundle sides have different ranks")
    if group.char_sum(plus) != group.char_sum(minus):
        raise InvariantViolationError("virtual bundle has nonzero first Chern class")
    return VirtualBundle(vertex_mark.mark_ii(), vertex_mark.vertex, plus, minus)


def surface_star(triangulation, vertex, basis=None) -> CompactSurface:
    """Star fan of an interior vertex as a smooth complete toric surface."""
    T = triangulation
    g = T.group
    if min(vertex) == 0:
        raise InvariantViolationError("compact surfaces sit over interior vertices")
    qm = QuotientMap(g, vertex, basis or T.basis)
    vmap = {}
    for ei, e in enumerate(T.edges):
        if e.a == vertex:
            vmap[ei] = e.b
        elif e.b == vertex:
            vmap[ei] = e.a
    rays = []
    for ei, w in vmap.items():
        d = intmat.vec_sub(w, vertex)
        step, _ = primitive_step(g, d)
        rays.append((qm.proj(step), ei))

    def angle_cmp(a, b):
        d1, d2 = a[0], b[0]
        h1 = 0 if (d1[1] > 0 or (d1[1] == 0 and d1[0] > 0)) else 1
        h2 = 0 if (d2[1] > 0 or (d2[1] == 0 and d2[0] > 0)) else 1
        if h1 != h2:
            return -1 if h1 < h2 else 1
        c = intmat.cross2(d1, d2)
        return -1 if c > 0 else (1 if c < 0 else 0)

    rays.sort(key=functools.cmp_to_key(angle_cmp))
    n = len(rays)
    selfint = []
    for i in range(n):
        u_prev = rays[(i - 1) % n][0]
        u = rays[i][0]
        u_next = rays[(i + 1) % n][0]
        if intmat.cross2(u, u_next) != 1:
            raise InvariantViolationError(
                "star fan is not smooth and complete", detail={"vertex": vertex}
            )
        s = intmat.vec_add(u_prev, u_next)
        # wall relation u_prev + u_next = -(C^2) u: solve in the basis (u, u_next)
        a = intmat.cross2(s, u_next)
        b = intmat.cross2(u, s)
        if b != 0:
            raise InvariantViolationError(
                "wall relation failed in star fan", detail={"vertex": vertex}
            )
        selfint.append(-a)
    stype = _surface_type(selfint)
    if sum(selfint) != 12 - 3 * n:
        raise InvariantViolationError(
            "self-intersection cycle violates the Noether count",
            detail={"vertex": vertex, "cycle": selfint},
        )
    return CompactSurface(
        vertex,
        tuple(r[0] for r in rays),
        tuple(r[1] for r in rays),
        tuple(selfint),
        stype,
    )


def _surface_type(selfint):
    n = len(selfint)
    if n == 3:
        if tuple(selfint) != (1, 1, 1):
            raise InvariantViolationError("three-ray star fan that is not the plane")
        return CASE_P2
    if n == 4:
        cyc = list(selfint)
        for shift in range(4):
            c = cyc[shift:] + cyc[:shift]
            if c[0] == 0 and c[2] == 0 and c[1] == -c[3]:
                return CASE_SCROLL
        raise InvariantViolationError(f"four-ray star fan with cycle {selfint}")
    if n == 6 and all(c == -1 for c in selfint):
        return CASE_DP6
    if n in (5, 6):
        return CASE_BLOWNUP
    raise InvariantViolationError(f"star fan with {n} rays")


def intersection_matrix(surface):
    """Boundary-curve pairing: adjacency ones, the cycle on the diagonal."""
    n = len(surface.rays)
    Q = [[0] * n for _ in range(n)]
    for i in range(n):
        Q[i][i] = surface.self_intersections[i]
        Q[i][(i + 1) % n] += 1
        Q[(i + 1) % n][i] += 1
    return Q


class SurfaceCalculus:
    """Restriction classes and pairings on one compact surface."""

    def __init__(self, chart_set, surface):
        self.chart_set = chart_set
        self.surface = surface
        self.Q = intersection_matrix(surface)
        self._classes = {}
        self._degrees = {}

    def degrees(self, chi):
        hit = self._degrees.get(chi)
        if hit is None:
            C = self.chart_set
            hit = tuple(C.degree_on_curve(chi, ei) for ei in self.surface.edge_ids)
            self._degrees[chi] = hit
        return hit

    def restrict_c1(self, chi):
        """Integer curve-coefficient vector pairing to the boundary degrees."""
        hit = self._classes.get(chi)
        if hit is not None:
            return hit
        chi = self.chart_set.group.reduce(chi)
        if chi in self._classes:
            return self._classes[chi]
        d = self.degrees(chi)
        if not any(d):
            alpha = (0,) * len(d)
        else:
            alpha = intmat.solve_int(self.Q, d)
            if alpha is None:
                raise InvariantViolationError(
                    "degree vector is not realised by a divisor class",
                    detail={"vertex": self.surface.vertex, "character": chi},
                )
        self._classes[chi] = alpha
        return alpha

    def intersect(self, alpha, beta):
        return sum(
            alpha[i] * self.Q[i][j] * beta[j]
            for i in range(len(alpha))
            for j in range(len(beta))
        )

    def pair_chars(self, chi1, chi2):
        return self.intersect(self.restrict_c1(chi1), self.restrict_c1(chi2))

    def c2_pairing(self, bundle):
        """Second Chern number of a rank-0, c1-0 virtual bundle on the surface."""
        plus = [self.restrict_c1(c) for c in bundle.plus]
        minus = [self.restrict_c1(c) for c in bundle.minus]
        nplus = [a for a in plus if any(a)]
        if len(nplus) < 2 and len([a for a in minus if any(a)]) < 2:
            return 0
        total = 0
        for i in range(len(plus)):
            if not any(plus[i]):
                continue
            for j in range(i + 1, len(plus)):
                total += self.intersect(plus[i], plus[j])
        for i in range(len(minus)):
            if not any(minus[i]):
                continue
            for j in range(i + 1, len(minus)):
                total -= self.intersect(minus[i], minus[j])
        return total


def build_surfaces(triangulation, chart_set, decoration):
    out = {}
    for v in sorted(decoration.vertex_marks):
        surf = surface_star(triangulation, v)
        vm = decoration.vertex_marks[v]
        if surf.surface_type != vm.case:
            raise InvariantViolationError(
                "star-fan surface type disagrees with the marking case",
                detail={"vertex": v, "star": surf.surface_type, "mark": vm.case},
            )
        calc = SurfaceCalculus(chart_set, surf)
        calc.mark_char = vm.mark_ii()
        out[v] = calc
    return out


def build_virtual_bundles(group, decoration, relations):
    rel_by_vertex = {r.vertex: r for r in relations}
    out = []
    for v in sorted(decoration.vertex_marks):
        out.append(virtual_bundle(group, decoration.vertex_marks[v], rel_by_vertex[v]))
    return out


def check_bundle_degrees(chart_set, bundles):
    """Rank-0 bundles must have degree zero on every compact curve."""
    T = chart_set.triangulation
    n = len(T.interior_edges())
    for b in bundles:
        total = [0] * n
        for c in b.plus:
            for j, x in enumerate(chart_set.degree_row(c)):
                total[j] += x
        for c in b.minus:
            for j, x in enumerate(chart_set.degree_row(c)):
                total[j] -= x
        if any(total):
            raise InvariantViolationError(
                "virtual bundle has nonzero degree on a curve",
                detail={"index": b.index},
            )
    return True


def duality_matrix(group, bundles, surfaces):
    """Pairing of the virtual bundles against the compact surfaces.

    Rows and columns are ordered by vertex; the result must be the
    identity, and the first failing entry is reported by its characters.
    """
    verts = sorted(surfaces)
    matrix = []
    for b in bundles:
        row = []
        for v in verts:
            row.append(surfaces[v].c2_pairing(b))
        matrix.append(row)
    for i, b in enumerate(bundles):
        for j, v in enumerate(verts):
            expected = 1 if b.vertex == v else 0
            if matrix[i][j] != expected:
                raise CorrespondenceError(
                    "duality pairing is not the identity",
                    detail={
                        "m": group.char_label(b.index),
                        "n": group.char_label(surfaces[v].mark_char),
                        "entry": matrix[i][j],
                        "expected": expected,
                    },
                )
    return matrix


def h2_basis_check(group, chart_set, decoration, relations):
    """Degree rows of the surviving bundles base the degree-2 lattice.

    The matrix of curve degrees of the type (i)/(iii) characters must be
    surjective onto Z^b2 (all elementary divisors 1), and each type (ii)
    row must be the exact integer combination given by its relation.
    """
    T = chart_set.triangulation
    basis_chars = sorted(
        set(decoration.partition["line"]) | set(decoration.partition["second"])
    )
    edges = T.interior_edges()
    rows = {
        chi: chart_set.degree_row(chi)
        for chi in set(basis_chars)
        | {r for rel in relations for r in rel.lhs + rel.rhs}
    }
    b2 = len(basis_chars)
    if b2 == 0:
        return {"b2": 0, "unimodular": True, "relation_rows": True}
    columns = []
    for j in range(len(edges)):
        columns.append([rows[chi][j] for chi in basis_chars])
    if not intmat.columns_generate_full_lattice(columns, b2):
        raise CorrespondenceError(
            "degree matrix of surviving bundles is not a unimodular basis",
            detail={"b2": b2, "edges": len(edges)},
        )
    for rel in relations:
        total = [0] * len(edges)
        for chi in rel.rhs:
            for j, x in enumerate(rows[chi]):
                total[j] += x
        for chi in rel.lhs:
            for j, x in enumerate(rows[chi]):
                total[j] -= x
        if any(total):
            raise CorrespondenceError(
                "relation does not hold between degree rows",
                detail={"vertex": rel.vertex},
            )
    return {"b2": b2, "unimodular": True, "relation_rows": True}


def mckay_certificate(group, triangulation, decoration, relations, matrix, h2report):
    """Aggregate statement: characters biject with a cohomology basis."""
    ages = group.age_counts()
    b2 = len(decoration.partition["line"]) + len(decoration.partition["second"])
    b4 = len(decoration.partition["vertex"])
    ok = (
        len(matrix) == b4
        and all(
            matrix[i][j] == (1 if i == j else 0)
            for i in range(len(matrix))
            for j in range(len(matrix))
        )
        and h2report["unimodular"]
        and 1 + b2 + b4 == group.order
        and b2 == ages[1]
        and b4 == ages[2]
    )
    if not ok:
        raise CorrespondenceError(
            "certificate assembly failed",
            detail={"b2": b2, "b4": b4, "order": group.order},
        )
    return {
        "order": group.order,
        "h0": 1,
        "b2": b2,
        "b4": b4,
        "partition": {k: len(v) for k, v in decoration.partition.items()},
        "pass": True,
    }
