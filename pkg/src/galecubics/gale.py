"""Determinant-plus-product cubic equations and the Gale duality transform.

A cubic fourfold of the class studied here has an equation
``det(M) + sign * L1*L2*L3 = 0`` with ``M`` a 3x3 matrix of linear forms in
six variables and ``L1, L2, L3`` further linear forms.  Collecting the
twelve coefficient vectors into a 6x12 matrix and passing to its kernel
produces the dual tuple in dual variables; the composition of the two
coefficient maps is exactly zero, and applying the transform twice returns
to the original row space.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import Element, Field
from .linalg import Matrix, det_cofactor
from .poly import MultiPoly, PolyRing, monomials_of_degree

DEFAULT_VARIABLES = ("X0", "X1", "X2", "X3", "X4", "X5")


def dual_variable_names(variables: Sequence[str]) -> Tuple[str, ...]:
    if all(v.endswith("'") for v in variables):
        return tuple(v[:-1] for v in variables)
    return tuple(v + "'" for v in variables)


@dataclass
class NonSyzygeticEquation:
    """The tuple (M, L1, L2, L3, sign) encoding det M + sign*L1*L2*L3 = 0.

    All twelve entries are homogeneous linear forms in the same six
    variables.  ``sign`` is +1 or -1.
    """

    field: Field
    variables: Tuple[str, ...]
    m: List[List[MultiPoly]]          # 3x3 of linear forms
    l_forms: List[MultiPoly]          # L1, L2, L3
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if len(self.variables) != 6:
            raise ValueError("need six variables")
        if len(self.m) != 3 or any(len(r) != 3 for r in self.m):
            raise ValueError("M must be 3x3")
        if len(self.l_forms) != 3:
            raise ValueError("need three L forms")
        for p in self.forms():
            if p.variables != tuple(self.variables):
                raise ValueError("all forms must share the variable list")
            if not p.is_homogeneous(1) and not p.is_zero():
                raise ValueError("entries must be homogeneous of degree 1")

    @classmethod
    def from_coefficients(cls, field: Field,
                          m_rows: Sequence[Sequence[Sequence[Element]]],
                          l_rows: Sequence[Sequence[Element]],
                          sign: int,
                          variables: Sequence[str] = DEFAULT_VARIABLES,
                          ) -> "NonSyzygeticEquation":
        """Build from 9 + 3 coefficient vectors (each of length six)."""
        mk = [[MultiPoly.linear_form(field, variables, m_rows[i][j])
               for j in range(3)] for i in range(3)]
        ls = [MultiPoly.linear_form(field, variables, row) for row in l_rows]
        return cls(field, tuple(variables), mk, ls, sign)

    def forms(self) -> List[MultiPoly]:
        """The twelve linear forms in the order M11,...,M33, L1, L2, L3."""
        return [self.m[i][j] for i in range(3) for j in range(3)] + list(self.l_forms)

    def coefficient_matrix(self) -> Matrix:
        """6x12 matrix whose j-th column is the coefficient vector of the
        j-th form, M entries ordered lexicographically."""
        return Matrix.from_columns(
            self.field, [f.linear_coefficients() for f in self.forms()]
        )

    def is_valid(self) -> bool:
        """At least two of L1, L2, L3 linearly independent (diagnostic)."""
        lmat = Matrix(self.field, [f.linear_coefficients() for f in self.l_forms])
        return lmat.rank() >= 2

    def cubic_polynomial(self) -> MultiPoly:
        ring = PolyRing(self.field, self.variables)
        det = det_cofactor(ring, self.m)
        prod = self.l_forms[0] * self.l_forms[1] * self.l_forms[2]
        return det + prod if self.sign == 1 else det - prod

    def plus_normalized(self) -> "NonSyzygeticEquation":
        """Equivalent tuple with sign +1 (folds a minus sign into L1)."""
        if self.sign == 1:
            return self
        neg_one = self.field.neg(self.field.one())
        ls = [self.l_forms[0].scale(neg_one)] + list(self.l_forms[1:])
        return NonSyzygeticEquation(self.field, self.variables,
                                    [row[:] for row in self.m], ls, 1)

    def permute_l_forms(self, perm: Sequence[int]) -> "NonSyzygeticEquation":
        ls = [self.l_forms[perm[i]] for i in range(3)]
        return NonSyzygeticEquation(self.field, self.variables,
                                    [row[:] for row in self.m], ls, self.sign)

    def change_coordinates(self, g: Matrix,
                           variables: Optional[Sequence[str]] = None,
                           ) -> "NonSyzygeticEquation":
        """Substitute x -> g*x (columns of g are the new basis vectors),
        i.e. each form's coefficient row is multiplied by g on the right."""
        names = tuple(variables) if variables is not None else self.variables
        images = [
            MultiPoly.linear_form(self.field, names, g.data[i])
            for i in range(6)
        ]
        def sub(p: MultiPoly) -> MultiPoly:
            return p.subs(images)
        mk = [[sub(self.m[i][j]) for j in range(3)] for i in range(3)]
        ls = [sub(f) for f in self.l_forms]
        return NonSyzygeticEquation(self.field, names, mk, ls, self.sign)

    @classmethod
    def random(cls, field: Field, rng, variables: Sequence[str] = DEFAULT_VARIABLES,
               require_rank6: bool = True) -> "NonSyzygeticEquation":
        """Random tuple; resamples until the coefficient map has rank 6."""
        while True:
            m_rows = [[[field.random(rng) for _ in range(6)] for _ in range(3)]
                      for _ in range(3)]
            l_rows = [[field.random(rng) for _ in range(6)] for _ in range(3)]
            eq = cls.from_coefficients(field, m_rows, l_rows,
                                       rng.choice((1, -1)), variables)
            if not require_rank6 or eq.coefficient_matrix().rank() == 6:
                return eq


class DegenerateTupleError(ValueError):
    pass


def coefficient_map(eq: NonSyzygeticEquation) -> Matrix:
    return eq.coefficient_matrix()


def gale_dual(eq: NonSyzygeticEquation) -> NonSyzygeticEquation:
    """The Gale dual tuple: kernel rows of the coefficient map, read as
    twelve linear forms in dual variables, with the opposite sign.

    Applied to a minus tuple, the first dual L form is negated internally so
    that the transform stays an involution on plus-normalised presentations.
    """
    plus = eq.plus_normalized()
    c = plus.coefficient_matrix()
    if c.rank() != 6:
        raise DegenerateTupleError("degenerate tuple: kernel dimension exceeds 6")
    kernel = c.kernel_basis()            # 12x6, canonical
    dual_vars = dual_variable_names(eq.variables)
    field = eq.field
    rows = [
        MultiPoly.linear_form(field, dual_vars, kernel.data[i])
        for i in range(12)
    ]
    sign_out = -eq.sign
    l1 = rows[9] if eq.sign == 1 else rows[9].scale(field.neg(field.one()))
    mk = [[rows[3 * i + j] for j in range(3)] for i in range(3)]
    return NonSyzygeticEquation(field, dual_vars, mk, [l1, rows[10], rows[11]],
                                sign_out)


def composition_is_zero(eq: NonSyzygeticEquation,
                        dual: NonSyzygeticEquation) -> bool:
    """Exact check that the coefficient maps annihilate each other:
    C * K = 0 with C the 6x12 coefficient matrix of ``eq`` and K the
    transposed coefficient matrix of ``dual``.  The internal L1 sign flip
    for minus tuples makes this hold for raw matrices on both sides."""
    c = eq.coefficient_matrix()
    k = dual.coefficient_matrix()
    return (c * k.transpose()).is_zero()


def cubic_polynomial(eq: NonSyzygeticEquation) -> MultiPoly:
    return eq.cubic_polynomial()


# -- multiplier systems -------------------------------------------------------

def solve_multiplier_system(field: Field, variables: Sequence[str],
                            target: MultiPoly,
                            factors: Sequence[Tuple[MultiPoly, int]],
                            ) -> Optional[List[MultiPoly]]:
    """Solve ``target = sum_k factor_k * h_k`` for unknown homogeneous
    polynomials ``h_k`` of the prescribed degrees, by exact elimination.

    Columns are ordered factor-major, monomial-minor, so solutions are
    reproducible.  Returns the multipliers, or None when unsolvable.
    """
    nvars = len(variables)
    columns: List[Dict[tuple, Element]] = []
    layout: List[Tuple[int, tuple]] = []
    for k_idx, (f, deg) in enumerate(factors):
        for mono in monomials_of_degree(nvars, deg):
            shifted: Dict[tuple, Element] = {}
            for fm, fc in f.terms.items():
                key = tuple(a + b for a, b in zip(fm, mono))
                acc = field.add(shifted.get(key, field.zero()), fc)
                if field.is_zero(acc):
                    shifted.pop(key, None)
                else:
                    shifted[key] = acc
            columns.append(shifted)
            layout.append((k_idx, mono))
    sol = solve_sparse_combination(field, columns, dict(target.terms))
    if sol is None:
        return None
    multipliers = [MultiPoly.zero(field, variables) for _ in factors]
    for (k_idx, mono), c in zip(layout, sol):
        if not field.is_zero(c):
            multipliers[k_idx] = multipliers[k_idx] + MultiPoly(
                field, variables, {mono: c})
    # independent verification by re-expansion
    acc = MultiPoly.zero(field, variables)
    for (f, _), h in zip(factors, multipliers):
        acc = acc + f * h
    if acc != target:
        return None
    return multipliers


def solve_sparse_combination(field: Field, columns: Sequence[Dict[tuple, Element]],
                             target: Dict[tuple, Element],
                             ) -> Optional[List[Element]]:
    """Exact solution of sum_j z_j * col_j = target over sparse columns keyed
    by arbitrary hashable row labels; incremental row elimination."""
    rows = sorted({m for col in columns for m in col} | set(target))
    n = len(columns)
    pivots: Dict[int, List[Element]] = {}  # pivot column -> reduced equation row
    zero, one = field.zero(), field.one()
    for label in rows:
        row = [col.get(label, zero) for col in columns]
        row.append(target.get(label, zero))
        for p in sorted(pivots):
            if not field.is_zero(row[p]):
                f = row[p]
                prow = pivots[p]
                row = [field.sub(a, field.mul(f, b)) for a, b in zip(row, prow)]
        lead = next((j for j in range(n) if not field.is_zero(row[j])), None)
        if lead is None:
            if not field.is_zero(row[n]):
                return None  # inconsistent equation 0 = c
            continue
        inv = field.inv(row[lead])
        pivots[lead] = [field.mul(inv, x) for x in row]
    # back substitution with free unknowns set to zero
    sol = [zero] * n
    for p in sorted(pivots, reverse=True):
        row = pivots[p]
        val = row[n]
        for j in range(p + 1, n):
            if not field.is_zero(row[j]) and not field.is_zero(sol[j]):
                val = field.sub(val, field.mul(row[j], sol[j]))
        sol[p] = val
    return sol


@dataclass
class ScrollCertificate:
    minors: List[MultiPoly]
    linear_multipliers: List[MultiPoly]
    quadric_multiplier: MultiPoly


def scroll_membership(eq: NonSyzygeticEquation, i: int,
                      rowpair: Sequence[Sequence[Element]],
                      ) -> Optional[ScrollCertificate]:
    """Decide whether the cubic lies in the ideal of the scroll cut out by
    the 2x2 minors of two generalised rows of M together with L_i.

    ``rowpair`` is a 2x3 coefficient matrix; the generalised rows are the
    corresponding combinations of the rows of M.  Returns the multipliers
    (cubic = sum minor_k * ell_k + L_i * q) on success, None on failure.
    """
    if i not in (1, 2, 3):
        raise ValueError("i must be 1, 2 or 3")
    if len(rowpair) != 2 or any(len(r) != 3 for r in rowpair):
        raise ValueError("rowpair must be 2x3")
    if Matrix(eq.field, [list(r) for r in rowpair]).rank() != 2:
        raise ValueError("generalised rows are linearly dependent")
    field = eq.field
    ring = PolyRing(field, eq.variables)
    rows = []
    for coeffs in rowpair:
        row = []
        for j in range(3):
            acc = ring.zero()
            for r in range(3):
                acc = acc + eq.m[r][j].scale(coeffs[r])
            row.append(acc)
        rows.append(row)
    minors = []
    for a, b in ((0, 1), (0, 2), (1, 2)):
        minors.append(rows[0][a] * rows[1][b] - rows[0][b] * rows[1][a])
    l_i = eq.l_forms[i - 1]
    factors = [(mq, 1) for mq in minors] + [(l_i, 2)]
    sol = solve_multiplier_system(field, eq.variables, eq.cubic_polynomial(), factors)
    if sol is None:
        return None
    return ScrollCertificate(minors, sol[:3], sol[3])


def scroll_point(eq: NonSyzygeticEquation, i: int,
                 rowpair: Sequence[Sequence[Element]], rng) -> Optional[List[Element]]:
    """A point on the scroll: solve s*g1 + t*g2 = 0 together with L_i = 0 for
    a random pencil member (s:t); the solution line consists of scroll points."""
    field = eq.field
    while True:
        s, t = field.random(rng), field.random(rng)
        if field.is_zero(s) and field.is_zero(t):
            continue
        forms = []
        for j in range(3):
            acc = MultiPoly.zero(field, eq.variables)
            for r in range(3):
                acc = acc + eq.m[r][j].scale(field.mul(s, rowpair[0][r]))
                acc = acc + eq.m[r][j].scale(field.mul(t, rowpair[1][r]))
            forms.append(acc)
        forms.append(eq.l_forms[i - 1])
        mat = Matrix(field, [f.linear_coefficients() for f in forms])
        ker = mat.kernel_basis()
        if ker.cols == 0:
            return None
        return ker.column(0)
