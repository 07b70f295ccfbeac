"""Finite quadratic modules and the overlattice count behind the number of
derived partners.

The two discriminant forms in play are ``D(S)`` for ``S`` the rescaled
root lattice with Gram ``[[-4,2],[2,-4]]`` and ``D(T)`` for the orthogonal
complement side, which decomposes as the opposite form plus one extra
cyclic factor of order three.  Glueing subgroups of ``D(S) + D(T)`` --
graphs of anti-isometries of ``D(S)`` onto a subgroup of ``D(T)`` on which
the total quadratic form vanishes -- classify the even overlattices with
both summands saturated.  Three independent enumerations of them are
implemented (structured, brute force over all order-12 subgroups, and the
explicit two-parameter family), together with the isometry group action
whose orbit count yields the number of partners.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Dict, FrozenSet, List, Sequence, Tuple

Elem = Tuple[int, ...]


def smith_normal_form(mat: Sequence[Sequence[int]]):
    """(D, U, V) with U*mat*V = D diagonal, U, V unimodular over the integers."""
    m = [list(row) for row in mat]
    n = len(m)
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]
    t = 0
    while t < n:
        pivot = None
        for i in range(t, n):
            for j in range(t, n):
                if m[i][j] != 0 and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        m[t], m[pi] = m[pi], m[t]
        u[t], u[pi] = u[pi], u[t]
        for r in range(n):
            m[r][t], m[r][pj] = m[r][pj], m[r][t]
            v[r][t], v[r][pj] = v[r][pj], v[r][t]
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]
        clean = True
        for i in range(t + 1, n):
            q = m[i][t] // m[t][t]
            if q:
                for k in range(n):
                    m[i][k] -= q * m[t][k]
                    u[i][k] -= q * u[t][k]
            if m[i][t]:
                clean = False
        for j in range(t + 1, n):
            q = m[t][j] // m[t][t]
            if q:
                for r in range(n):
                    m[r][j] -= q * m[r][t]
                    v[r][j] -= q * v[r][t]
            if m[t][j]:
                clean = False
        if not clean:
            continue
        # enforce divisibility d_t | d_i
        fixed = True
        for i in range(t + 1, n):
            for j in range(t + 1, n):
                if m[i][j] % m[t][t] != 0:
                    for k in range(n):
                        m[t][k] += m[i][k]
                        u[t][k] += u[i][k]
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            t += 1
    return m, u, v


@dataclass
class FiniteQuadraticModule:
    """Finite abelian group with a quadratic form in Q/2Z.

    ``orders`` are the cyclic factor orders; ``gram[i][j]`` is the exact
    rational pairing of the i-th and j-th generators (diagonal entries read
    modulo 2, off-diagonal modulo 1)."""

    orders: Tuple[int, ...]
    gram: List[List[Fraction]]

    def zero(self) -> Elem:
        return (0,) * len(self.orders)

    def order(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out

    def elements(self) -> List[Elem]:
        return [tuple(e) for e in product(*[range(d) for d in self.orders])]

    def add(self, x: Elem, y: Elem) -> Elem:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def neg(self, x: Elem) -> Elem:
        return tuple((-a) % d for a, d in zip(x, self.orders))

    def scale(self, n: int, x: Elem) -> Elem:
        return tuple((n * a) % d for a, d in zip(x, self.orders))

    def element_order(self, x: Elem) -> int:
        out = 1
        for a, d in zip(x, self.orders):
            if a:
                out = out * (d // gcd(a, d)) // gcd(out, d // gcd(a, d))
        return out

    def q(self, x: Elem) -> Fraction:
        """Quadratic form value in [0, 2)."""
        acc = Fraction(0)
        n = len(x)
        for i in range(n):
            acc += self.gram[i][i] * x[i] * x[i]
            for j in range(i + 1, n):
                acc += 2 * self.gram[i][j] * x[i] * x[j]
        return acc % 2

    def b(self, x: Elem, y: Elem) -> Fraction:
        """Bilinear form value in [0, 1)."""
        acc = Fraction(0)
        n = len(x)
        for i in range(n):
            for j in range(n):
                acc += self.gram[i][j] * x[i] * y[j]
        return acc % 1

    def direct_sum(self, other: "FiniteQuadraticModule") -> "FiniteQuadraticModule":
        n, m = len(self.orders), len(other.orders)
        gram = [[Fraction(0)] * (n + m) for _ in range(n + m)]
        for i in range(n):
            for j in range(n):
                gram[i][j] = self.gram[i][j]
        for i in range(m):
            for j in range(m):
                gram[n + i][n + j] = other.gram[i][j]
        return FiniteQuadraticModule(self.orders + other.orders, gram)

    def primary_decomposition(self) -> "FiniteQuadraticModule":
        """Equivalent module with prime-power cyclic factors."""
        new_orders: List[int] = []
        new_gens: List[Elem] = []
        for idx, d in enumerate(self.orders):
            base = [0] * len(self.orders)
            rest = d
            parts = []
            p = 2
            while rest > 1:
                if rest % p == 0:
                    pk = 1
                    while rest % p == 0:
                        pk *= p
                        rest //= p
                    parts.append(pk)
                p += 1
            for pk in parts:
                c = (d // pk) * pow(d // pk, -1, pk)
                gen = base[:]
                gen[idx] = c % d
                new_orders.append(pk)
                new_gens.append(tuple(gen))
        gram = [[self._pair(x, y) for y in new_gens] for x in new_gens]
        return FiniteQuadraticModule(tuple(new_orders), gram)

    def _pair(self, x: Elem, y: Elem) -> Fraction:
        acc = Fraction(0)
        for i in range(len(self.orders)):
            for j in range(len(self.orders)):
                acc += self.gram[i][j] * x[i] * y[j]
        return acc


def discriminant_form(gram: Sequence[Sequence[int]]) -> FiniteQuadraticModule:
    """Discriminant module of an even lattice from its integer Gram matrix."""
    n = len(gram)
    for i in range(n):
        if gram[i][i] % 2 != 0:
            raise ValueError("Gram matrix must have even diagonal")
        for j in range(n):
            if gram[i][j] != gram[j][i]:
                raise ValueError("Gram matrix must be symmetric")
    from .linalg import Matrix
    from .fields import QQ
    qmat = Matrix(QQ, [[Fraction(x) for x in row] for row in gram])
    det = qmat.det()
    if det == 0:
        raise ValueError("Gram matrix is degenerate")
    d, u, _v = smith_normal_form(gram)
    inv_gram = qmat.inverse()
    uq = Matrix(QQ, [[Fraction(x) for x in row] for row in u])
    uinv = uq.inverse()
    orders = []
    gens = []
    for i in range(n):
        di = d[i][i]
        if di in (1, -1):
            continue
        col = [uinv.data[r][i] for r in range(n)]
        gen = inv_gram.apply_to_vector(col)
        orders.append(abs(di))
        gens.append(gen)
    gram_out = [[sum(gens[a][r] * Fraction(gram[r][c]) * gens[b][c]
                     for r in range(n) for c in range(n))
                 for b in range(len(gens))] for a in range(len(gens))]
    return FiniteQuadraticModule(tuple(orders), gram_out)


A2_GRAM = [[2, -1], [-1, 2]]


def rescale(gram: Sequence[Sequence[int]], c: int) -> List[List[int]]:
    return [[c * x for x in row] for row in gram]


def build_DS_DT() -> Tuple[FiniteQuadraticModule, FiniteQuadraticModule]:
    """The two discriminant forms, in primary coordinates.

    ``D(S)`` comes from the Gram matrix [[-4,2],[2,-4]] and has factors
    (Z/2, Z/2, Z/3).  ``D(T)`` is the opposite 12-element form plus an
    extra Z/3 generated by ``alpha`` with q(alpha) = 4/3, the value forced
    by evenness on the (-1)-rescaled side (its image in Q/Z is -1/3)."""
    ds = discriminant_form(rescale(A2_GRAM, -2)).primary_decomposition()
    dt12 = discriminant_form(rescale(A2_GRAM, 2)).primary_decomposition()
    alpha = FiniteQuadraticModule((3,), [[Fraction(4, 3)]])
    return ds, dt12.direct_sum(alpha)


@dataclass(frozen=True)
class GlueGroup:
    """An order-12 subgroup of D(S) + D(T), stored by its element set and a
    generating triple (two 2-torsion generators and one 3-torsion)."""

    elements: FrozenSet[Elem]
    generators: Tuple[Elem, ...]

    def __len__(self) -> int:
        return len(self.elements)


class GlueContext:
    """D(S) + D(T) with helpers shared by the enumerations."""

    def __init__(self):
        self.ds, self.dt = build_DS_DT()
        self.total = self.ds.direct_sum(self.dt)
        self.ns = len(self.ds.orders)
        self.nt = len(self.dt.orders)

    def join(self, s: Elem, t: Elem) -> Elem:
        return tuple(s) + tuple(t)

    def split(self, x: Elem) -> Tuple[Elem, Elem]:
        return x[: self.ns], x[self.ns:]

    def is_glue_group(self, elements: FrozenSet[Elem]) -> bool:
        """Order 12, total q vanishes, projection to D(S) bijective and to
        D(T) injective (the saturation conditions)."""
        if len(elements) != 12:
            return False
        s_parts = {self.split(x)[0] for x in elements}
        t_parts = {self.split(x)[1] for x in elements}
        if len(s_parts) != 12 or len(t_parts) != 12:
            return False
        return all(self.total.q(x) == 0 for x in elements)

    def span(self, gens: Sequence[Elem]) -> FrozenSet[Elem]:
        seen = {self.total.zero()}
        frontier = [self.total.zero()]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.total.add(x, g)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)


def _canonical_generators(ctx: GlueContext, elements: FrozenSet[Elem]) -> Tuple[Elem, ...]:
    two = sorted(x for x in elements if ctx.total.element_order(x) == 2)[:2]
    # ensure the pair generates the 2-part
    twos = [x for x in elements if ctx.total.element_order(x) == 2]
    for i in range(len(twos)):
        for j in range(i + 1, len(twos)):
            if twos[i] != twos[j] and ctx.total.add(twos[i], twos[j]) != ctx.total.zero():
                two = [twos[i], twos[j]]
                break
        else:
            continue
        break
    three = sorted(x for x in elements if ctx.total.element_order(x) == 3)[0]
    return (two[0], two[1], three)


def enumerate_glue_groups_structured(ctx: GlueContext) -> List[GlueGroup]:
    """Graphs of anti-isometries: for each subgroup of D(T) isomorphic to
    D(S), collect every injective homomorphism phi with
    q_T(phi(x)) = -q_S(x); each graph is one glueing subgroup."""
    ds, dt = ctx.ds, ctx.dt
    s_elems = ds.elements()
    order2_t = [x for x in dt.elements() if dt.element_order(x) in (1, 2)]
    order3_t = [x for x in dt.elements() if dt.element_order(x) in (1, 3)]
    # generators of D(S) in primary coordinates: two of order 2, one of order 3
    gens_s = []
    for i, d in enumerate(ds.orders):
        g = [0] * len(ds.orders)
        g[i] = 1
        gens_s.append(tuple(g))
    assert [ds.element_order(g) for g in gens_s] == [2, 2, 3]
    out: Dict[FrozenSet[Elem], GlueGroup] = {}
    for img1 in order2_t:
        for img2 in order2_t:
            for img3 in order3_t:
                images = (img1, img2, img3)
                # build phi on all of D(S)
                graph = set()
                ok = True
                for e in s_elems:
                    t = dt.zero()
                    for c, img in zip(e, images):
                        t = dt.add(t, dt.scale(c, img))
                    if (ds.q(e) + dt.q(t)) % 2 != 0:
                        ok = False
                        break
                    graph.add(ctx.join(e, t))
                if not ok:
                    continue
                elements = frozenset(graph)
                if ctx.is_glue_group(elements) and elements not in out:
                    out[elements] = GlueGroup(elements,
                                              _canonical_generators(ctx, elements))
    return sorted(out.values(), key=lambda g: sorted(g.elements))


def enumerate_glue_groups_bruteforce(ctx: GlueContext) -> List[GlueGroup]:
    """All order-12 subgroups of the 432-element group, assembled from an
    order-4 subgroup of the 2-torsion and an order-3 subgroup of the
    3-torsion, filtered by the glueing conditions."""
    total = ctx.total
    elems = total.elements()
    two_tors = [x for x in elems if total.element_order(x) == 2]
    three_tors = [x for x in elems if total.element_order(x) == 3]
    two_subs = set()
    for i in range(len(two_tors)):
        for j in range(i + 1, len(two_tors)):
            a, b = two_tors[i], two_tors[j]
            sub = frozenset({total.zero(), a, b, total.add(a, b)})
            if len(sub) == 4:
                two_subs.add(sub)
    three_subs = set()
    for x in three_tors:
        three_subs.add(frozenset({total.zero(), x, total.scale(2, x)}))
    out: Dict[FrozenSet[Elem], GlueGroup] = {}
    for s2 in two_subs:
        for s3 in three_subs:
            elements = frozenset(total.add(a, b) for a in s2 for b in s3)
            if ctx.is_glue_group(elements):
                out[elements] = GlueGroup(elements,
                                          _canonical_generators(ctx, elements))
    return sorted(out.values(), key=lambda g: sorted(g.elements))


GL2_F2 = [
    ((1, 0), (0, 1)), ((0, 1), (1, 0)), ((1, 1), (0, 1)),
    ((1, 0), (1, 1)), ((0, 1), (1, 1)), ((1, 1), (1, 0)),
]


def enumerate_glue_groups_family(ctx: GlueContext) -> List[GlueGroup]:
    """The explicit two-parameter family: for an automorphism ``alpha`` of
    the 2-part and a sign ``beta`` on the 3-part, the graph sending
    ``((a, b))`` to ``(alpha(a), beta(b), 0)`` or to ``(alpha(a), 0,
    beta(b))`` in the two 3-torsion slots of D(T)."""
    out: Dict[FrozenSet[Elem], GlueGroup] = {}
    for mat in GL2_F2:
        for beta in (1, 2):
            for slot in (0, 1):
                graph = set()
                for a1, a2, b in product(range(2), range(2), range(3)):
                    ia1 = (mat[0][0] * a1 + mat[0][1] * a2) % 2
                    ia2 = (mat[1][0] * a1 + mat[1][1] * a2) % 2
                    bb = (beta * b) % 3
                    t = (ia1, ia2, bb, 0) if slot == 0 else (ia1, ia2, 0, bb)
                    graph.add((a1, a2, b) + t)
                elements = frozenset(graph)
                if elements not in out:
                    out[elements] = GlueGroup(elements,
                                              _canonical_generators(ctx, elements))
    return sorted(out.values(), key=lambda g: sorted(g.elements))


def enumerate_glue_groups(ctx: GlueContext | None = None) -> List[GlueGroup]:
    """Structured enumeration, cross-checked against the brute-force oracle
    and the explicit family; all three must agree as sets."""
    ctx = ctx or GlueContext()
    structured = enumerate_glue_groups_structured(ctx)
    brute = enumerate_glue_groups_bruteforce(ctx)
    family = enumerate_glue_groups_family(ctx)
    sets = [{g.elements for g in lst} for lst in (structured, brute, family)]
    if not (sets[0] == sets[1] == sets[2]):
        raise AssertionError("glue-group enumerations disagree")
    return structured


def anti_isometric_subgroup_count(ctx: GlueContext | None = None) -> Tuple[int, int]:
    """(number of admissible order-3 target subgroups in D(T), number of
    anti-isometries onto each).  The diagonal order-3 subgroups are not
    anti-isometric and must not appear."""
    ctx = ctx or GlueContext()
    groups = enumerate_glue_groups_structured(ctx)
    targets = set()
    for g in groups:
        t3 = frozenset(ctx.split(x)[1][2:] for x in g.elements)
        targets.add(t3)
    counts = {t: 0 for t in targets}
    for g in groups:
        t3 = frozenset(ctx.split(x)[1][2:] for x in g.elements)
        counts[t3] += 1
    per = set(counts.values())
    if len(per) != 1:
        raise AssertionError("uneven distribution over target subgroups")
    return len(targets), per.pop()


def ds_isometry_group_order(ctx: GlueContext | None = None) -> int:
    """Order of the isometry group of D(S) (expected |GL2(F2)| * 2 = 12)."""
    ctx = ctx or GlueContext()
    ds = ctx.ds
    elems = ds.elements()
    count = 0
    order2 = [x for x in elems if ds.element_order(x) in (1, 2)]
    order3 = [x for x in elems if ds.element_order(x) in (1, 3)]
    gens = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    for i1 in order2:
        for i2 in order2:
            for i3 in order3:
                images = {gens[0]: i1, gens[1]: i2, gens[2]: i3}
                seen = {}
                ok = True
                for e in elems:
                    t = ds.zero()
                    for c, g in zip(e, gens):
                        t = ds.add(t, ds.scale(c, images[g]))
                    if ds.q(e) != ds.q(t) or t in seen:
                        ok = False
                        break
                    seen[t] = e
                if ok:
                    count += 1
    return count


@dataclass
class OrbitDecomposition:
    orbits: List[List[GlueGroup]]
    stabilizer_orders: List[int]
    stabilizers_contain_minus_id: bool
    fm_partner_count: int


def _group_elements():
    """(A, s, t): automorphism of the 2-part of D(S), sign on its 3-part,
    simultaneous sign on both 3-torsion slots of D(T)."""
    return [(mat, s, t) for mat in GL2_F2 for s in (1, -1) for t in (1, -1)]


def _act(ctx: GlueContext, g, x: Elem) -> Elem:
    mat, s, t = g
    a1, a2, b, c1, c2, d1, d2 = x
    na1 = (mat[0][0] * a1 + mat[0][1] * a2) % 2
    na2 = (mat[1][0] * a1 + mat[1][1] * a2) % 2
    return (na1, na2, (s * b) % 3, c1, c2, (t * d1) % 3, (t * d2) % 3)


def group_action_orbits(ctx: GlueContext | None = None) -> OrbitDecomposition:
    """Orbits and stabilizers of the isometry-group action on the glueing
    subgroups; the resulting partner count is |M| * 2 / |G|."""
    ctx = ctx or GlueContext()
    groups = enumerate_glue_groups(ctx)
    universe = {g.elements: g for g in groups}
    gelems = _group_elements()
    minus_id = (GL2_F2[0], -1, -1)
    remaining = set(universe)
    orbits: List[List[GlueGroup]] = []
    stab_orders: List[int] = []
    minus_ok = True
    for key in sorted(universe, key=lambda e: sorted(e)):
        if key not in remaining:
            continue
        orbit = set()
        for g in gelems:
            image = frozenset(_act(ctx, g, x) for x in key)
            if image not in universe:
                raise AssertionError("action does not preserve the glue groups")
            orbit.add(image)
        stab = [g for g in gelems
                if frozenset(_act(ctx, g, x) for x in key) == key]
        stab_orders.append(len(stab))
        if minus_id not in stab:
            minus_ok = False
        orbits.append([universe[e] for e in sorted(orbit, key=lambda e: sorted(e))])
        remaining -= orbit
    fibre = 2   # each nonempty fibre has exactly the two lifts +-id
    count = len(groups) * fibre // len(gelems)
    return OrbitDecomposition(orbits, stab_orders, minus_ok, count)
