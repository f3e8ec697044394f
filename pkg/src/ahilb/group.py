"""Finite diagonal abelian subgroups of SL(3,C) and their character data.

A group element diag(eps^a1, eps^a2, eps^a3) is stored as the vector
(a1, a2, a3) scaled so that every element has denominator |A|: after
`build_group` each element is an integer triple with entries in [0, |A|).
The dual data is the rank-3 sublattice of exponent vectors fixed by the
action; characters are canonical coset representatives modulo that lattice.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd, lcm

from .errors import InputError, ResourceLimitError
from . import intmat

# x^i y^j z^k as a plain exponent triple
Monomial = tuple[int, int, int]
Character = tuple[int, int, int]

MONO_ONE: Monomial = (0, 0, 0)

DEFAULT_MAX_ORDER = 10**6

_GEN_RE = re.compile(r"^\s*1\s*/\s*(\d+)\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*$")


@dataclass(frozen=True)
class GroupSpec:
    """Generator list; each entry is (order, (a1, a2, a3))."""

    generators: tuple[tuple[int, tuple[int, int, int]], ...]

    def validate(self):
        for order, w in self.generators:
            if order < 1:
                raise InputError(f"generator order must be positive, got {order}")
            if any(a < 0 or a >= order for a in w):
                raise InputError(
                    f"weights {w} out of range for order {order} (need 0 <= a < r)"
                )
            if sum(w) % order != 0:
                raise InputError(
                    f"1/{order}{w} violates the determinant-1 condition: "
                    f"{w[0]}+{w[1]}+{w[2]} = {sum(w)} is not 0 mod {order}",
                    detail={"generator": [order, list(w)]},
                )

    def text(self):
        if not self.generators:
            return "1"
        return ";".join(f"1/{r}({a},{b},{c})" for r, (a, b, c) in self.generators)


def parse_group_spec(text: str) -> GroupSpec:
    """Parse `1/r(a,b,c)` or a semicolon-separated product of such factors.

    The bare string "1" denotes the trivial group.
    """
    text = text.strip()
    if text in ("1", ""):
        return GroupSpec(())
    gens = []
    for part in text.split(";"):
        m = _GEN_RE.match(part)
        if not m:
            raise InputError(f"cannot parse group factor {part!r}; expected 1/r(a,b,c)")
        r = int(m.group(1))
        w = (int(m.group(2)), int(m.group(3)), int(m.group(4)))
        gens.append((r, w))
    spec = GroupSpec(tuple(gens))
    spec.validate()
    return spec


class AbelianGroup:
    """Immutable once built; all queries are pure."""

    def __init__(self, spec, elements, order, dual_basis, distinguished):
        self.spec = spec
        self.order = order
        # integer triples scaled by `order`, sorted, identity first
        self.elements = elements
        self.element_set = frozenset(elements)
        # HNF rows (upper echelon) of the invariant exponent lattice
        self.dual_basis = dual_basis
        self.distinguished = distinguished  # scaled generator used for labels
        self.is_cyclic = distinguished is not None
        self.scaled_generators = tuple(
            tuple((a * order) // r for a in w) for r, w in spec.generators
        )
        self._char_list = None
        self._char_index = None

    # -- element-level queries ------------------------------------------------

    def age(self, element):
        s = sum(element)
        if s % self.order:
            raise InputError(f"{element} is not an element of the group")
        return s // self.order

    def junior_points(self):
        """Lattice points of the junior simplex other than its corners.

        Scaled coordinates: triples summing to |A| (the age-1 elements)."""
        return [e for e in self.elements if sum(e) == self.order]

    def age_counts(self):
        counts = {0: 0, 1: 0, 2: 0}
        for e in self.elements:
            counts[self.age(e)] += 1
        return counts

    def in_lattice(self, point):
        """Membership of an integer triple in the scaled lattice |A|*N."""
        r = self.order
        return (point[0] % r, point[1] % r, point[2] % r) in self.element_set

    # -- characters -------------------------------------------------------------

    def reduce(self, exponents) -> Character:
        """Canonical representative of an exponent triple modulo invariants."""
        v = list(exponents)
        H = self.dual_basis
        for i in range(3):
            p = H[i][i]
            q = v[i] // p
            if q:
                for j in range(3):
                    v[j] -= q * H[i][j]
        return (v[0], v[1], v[2])

    def weight(self, monomial) -> Character:
        return self.reduce(monomial)

    def is_invariant(self, exponents):
        return self.reduce(exponents) == MONO_ONE

    def char_add(self, a, b) -> Character:
        return self.reduce((a[0] + b[0], a[1] + b[1], a[2] + b[2]))

    def char_sum(self, chars) -> Character:
        t = [0, 0, 0]
        for c in chars:
            t[0] += c[0]
            t[1] += c[1]
            t[2] += c[2]
        return self.reduce(t)

    def characters(self):
        """All |A| characters, cyclic groups ordered by label index."""
        if self._char_list is None:
            H = self.dual_basis
            reps = []
            for i in range(H[0][0]):
                for j in range(H[1][1]):
                    for k in range(H[2][2]):
                        reps.append(self.reduce((i, j, k)))
            reps = sorted(set(reps))
            if len(reps) != self.order:
                raise InputError("character enumeration does not match group order")
            if self.is_cyclic:
                reps.sort(key=self.char_label_index)
            self._char_list = reps
            self._char_index = {c: n for n, c in enumerate(reps)}
        return self._char_list

    def char_id(self, chi) -> int:
        self.characters()
        return self._char_index[self.reduce(chi)]

    def char_label_index(self, chi):
        if not self.is_cyclic:
            raise InputError("label indices are defined for cyclic groups only")
        return intmat.vec_dot(chi, self.distinguished) % self.order

    def char_label(self, chi) -> str:
        chi = self.reduce(chi)
        if self.is_cyclic:
            return f"χ{self.char_label_index(chi)}"
        return "χ(" + ",".join(str(x) for x in chi) + ")"

    def __repr__(self):
        return f"AbelianGroup({self.spec.text()!r}, order={self.order})"


def build_group(spec, max_order=DEFAULT_MAX_ORDER) -> AbelianGroup:
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    spec.validate()

    L = 1
    for r, _ in spec.generators:
        L = lcm(L, r)
    bound = 1
    for r, _ in spec.generators:
        bound *= r
    if bound > max_order:
        raise ResourceLimitError(
            f"generator orders multiply to {bound}, above the cap {max_order}",
            detail={"bound": bound, "max_order": max_order},
        )

    # closure over triples scaled by the lcm of the generator orders
    gens_L = [tuple((L // r) * a for a in w) for r, w in spec.generators]
    identity = (0, 0, 0)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens_L:
                f = ((e[0] + g[0]) % L, (e[1] + g[1]) % L, (e[2] + g[2]) % L)
                if f not in seen:
                    seen.add(f)
                    nxt.append(f)
        frontier = nxt
        if len(seen) > max_order:
            raise ResourceLimitError(
                f"group closure exceeds the cap {max_order}",
                detail={"max_order": max_order},
            )
    order = len(seen)

    # rescale from denominator L to denominator |A| (orders divide |A|)
    elements = []
    for e in seen:
        scaled = []
        for a in e:
            num = a * order
            if num % L:
                raise InputError("element denominator does not divide the group order")
            scaled.append(num // L)
        elements.append(tuple(scaled))
    elements.sort()

    dual = _invariant_lattice(elements, order)

    distinguished = None
    for r, w in spec.generators:
        if r == order and _element_order(tuple((order // r) * a for a in w), order) == order:
            distinguished = tuple((order // r) * a for a in w)
            break
    if distinguished is None:
        for e in elements:
            if _element_order(e, order) == order:
                distinguished = e
                break

    g = AbelianGroup(spec, elements, order, dual, distinguished)
    # index checks: |A| = [N : Z^3] = [Z^3 : M]
    d = intmat.det3(dual)
    if abs(d) != order:
        raise InputError("invariant lattice index does not equal the group order")
    g.characters()  # sealed eagerly; reads are pure and thread-safe afterwards
    return g


def _element_order(e, order):
    g = gcd(gcd(e[0], e[1]), gcd(e[2], order))
    return order // gcd(g, order)


def _invariant_lattice(elements, order):
    """HNF rows of {m in Z^3 : m . e == 0 mod |A| for all elements e}."""
    gens = [e for e in elements if e != (0, 0, 0)]
    if not gens:
        return [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    # m with gens @ m ~ 0 mod order: right-kernel of [gens | order*I]
    k = len(gens)
    rows = []
    for i in range(3 + k):
        if i < 3:
            rows.append([g[i] for g in gens])
        else:
            rows.append([order if j == i - 3 else 0 for j in range(k)])
    kern = intmat.left_kernel(rows)
    basis = [v[:3] for v in kern]
    H = intmat.hnf_rows(basis)
    if len(H) != 3:
        raise InputError("invariant lattice has rank < 3")
    return [tuple(r) for r in H]


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return a[0] <= b[0] and a[1] <= b[1] and a[2] <= b[2]


def monomial_str(m: Monomial) -> str:
    if m == MONO_ONE:
        return "1"
    parts = []
    for name, e in zip("xyz", m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "".join(parts)


def ratio_split(u):
    """Split an invariant vector into (positive part, negative part)."""
    plus = tuple(x if x > 0 else 0 for x in u)
    minus = tuple(-x if x < 0 else 0 for x in u)
    return plus, minus
