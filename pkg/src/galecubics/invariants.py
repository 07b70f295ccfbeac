"""The hat-basis frame on the grade-3 space and its invariant polynomials.

Polynomials on the 20-dimensional grade-3 space are written in the
``y0..y19`` coordinates dual to the block-lex wedge basis.  The frame
provides the twenty linear forms ``(M_E, L_E, M_F, L_F)`` in these
coordinates; out of them come the invariant quadric ``sigma``, the two big
cubic hypersurfaces, and the cone projections that recover a Gale dual pair
from an admissible subspace.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .exterior import (GRADE3_TRIPLES, frame_covector, induced_grade3_matrix,
                       lex3_coordinates, from_frame_coordinates)
from .fields import Element, Field
from .gale import NonSyzygeticEquation
from .lagrangian import (QPPresentation, RhoLagrangianData, adapted_presentation,
                         equations_from_hats)
from .linalg import Matrix, det_cofactor
from .poly import MultiPoly, PolyRing

LEX3_VARIABLES: Tuple[str, ...] = tuple(f"y{i}" for i in range(20))
PROJECTED_VARIABLES: Tuple[str, ...] = tuple(f"X{i}" for i in range(10))


@dataclass
class CoordinateFrame:
    """The twenty frame functionals as linear forms in the y coordinates,
    ordered (M_E, L_E, M_F, L_F) with matrix entries lexicographic."""

    field: Field
    functionals: List[MultiPoly]

    def evaluation_matrix(self) -> Matrix:
        """20x20 matrix of the functionals on the block-lex wedge basis."""
        return Matrix(self.field,
                      [f.linear_coefficients() for f in self.functionals])

    def evaluate(self, k: int, element) -> Element:
        """Value of the k-th functional (0-based) on a grade-3 element."""
        return self.functionals[k].evaluate(lex3_coordinates(element))

    def m_e(self) -> List[List[MultiPoly]]:
        return [[self.functionals[3 * i + j] for j in range(3)] for i in range(3)]

    def m_f(self) -> List[List[MultiPoly]]:
        return [[self.functionals[10 + 3 * i + j] for j in range(3)] for i in range(3)]

    def l_e(self) -> MultiPoly:
        return self.functionals[9]

    def l_f(self) -> MultiPoly:
        return self.functionals[19]


def build_frame(field: Field) -> CoordinateFrame:
    functionals = []
    for k in range(20):
        cov = frame_covector(field, k)
        coeffs = [cov.terms.get(t, field.zero()) for t in GRADE3_TRIPLES]
        functionals.append(MultiPoly.linear_form(field, LEX3_VARIABLES, coeffs))
    return CoordinateFrame(field, functionals)


def sigma_quadric(field: Field, frame: Optional[CoordinateFrame] = None) -> MultiPoly:
    """sum_i u_i * uhat_i as a 20-variable quadric."""
    frame = frame or build_frame(field)
    acc = MultiPoly.zero(field, LEX3_VARIABLES)
    for i in range(10):
        acc = acc + frame.functionals[i] * frame.functionals[10 + i]
    return acc


def trace_plus_product(field: Field, frame: Optional[CoordinateFrame] = None) -> MultiPoly:
    """tr(M_E M_F^t) + L_E L_F, assembled by actual matrix multiplication."""
    frame = frame or build_frame(field)
    me, mf = frame.m_e(), frame.m_f()
    acc = MultiPoly.zero(field, LEX3_VARIABLES)
    for i in range(3):
        for j in range(3):
            acc = acc + me[i][j] * mf[i][j]
    return acc + frame.l_e() * frame.l_f()


def big_cubics(field: Field, frame: Optional[CoordinateFrame] = None,
               ) -> Tuple[MultiPoly, MultiPoly]:
    """The cubics 2 det M_E - sigma L_E and 2 det M_F + sigma L_F."""
    frame = frame or build_frame(field)
    ring = PolyRing(field, LEX3_VARIABLES)
    sigma = sigma_quadric(field, frame)
    two = MultiPoly.constant(field, LEX3_VARIABLES, field.from_int(2))
    det_e = det_cofactor(ring, frame.m_e())
    det_f = det_cofactor(ring, frame.m_f())
    return (two * det_e - sigma * frame.l_e(),
            two * det_f + sigma * frame.l_f())


def apply_lex3_action(poly: MultiPoly, action: Matrix) -> MultiPoly:
    """Substitute y -> action * y (the polynomial pulled back along the map)."""
    field = poly.field
    images = [MultiPoly.linear_form(field, LEX3_VARIABLES, action.data[i])
              for i in range(20)]
    return poly.subs(images)


def block_diagonal6(field: Field, g: Sequence[Sequence[Element]],
                    h: Sequence[Sequence[Element]]) -> List[List[Element]]:
    z = field.zero()
    out = [[z] * 6 for _ in range(6)]
    for i in range(3):
        for j in range(3):
            out[i][j] = g[i][j]
            out[3 + i][3 + j] = h[i][j]
    return out


def observed_scalar(transformed: MultiPoly, original: MultiPoly) -> Optional[Element]:
    """c with transformed = c * original, or None if not proportional."""
    if original.is_zero() or transformed.is_zero():
        return None
    if set(transformed.terms) != set(original.terms):
        return None
    k = original.field
    mono = next(iter(original.terms))
    c = k.div(transformed.terms[mono], original.terms[mono])
    for m, v in original.terms.items():
        if transformed.terms[m] != k.mul(c, v):
            return None
    return c


@dataclass
class InvarianceReport:
    scalars: dict
    invariant: dict

    def all_invariant(self) -> bool:
        return all(self.invariant.values())


def invariance_report(field: Field, g: Sequence[Sequence[Element]],
                      h: Sequence[Sequence[Element]],
                      frame: Optional[CoordinateFrame] = None) -> InvarianceReport:
    """Observed scalar of each candidate generator under the induced action
    of (g, h); a scalar of one means the polynomial is fixed."""
    frame = frame or build_frame(field)
    ring = PolyRing(field, LEX3_VARIABLES)
    action = induced_grade3_matrix(field, block_diagonal6(field, g, h),
                                   coords="lex3")
    candidates = {
        "L_E": frame.l_e(),
        "L_F": frame.l_f(),
        "trace": trace_plus_product(field, frame) - frame.l_e() * frame.l_f(),
        "det_M_E": det_cofactor(ring, frame.m_e()),
        "det_M_F": det_cofactor(ring, frame.m_f()),
        "sigma": sigma_quadric(field, frame),
    }
    scalars, invariant = {}, {}
    one = field.one()
    for name, poly in candidates.items():
        c = observed_scalar(apply_lex3_action(poly, action), poly)
        scalars[name] = c
        invariant[name] = c == one
    return InvarianceReport(scalars, invariant)


def generator_invariance(field: Field, g: Sequence[Sequence[Element]],
                         h: Sequence[Sequence[Element]]) -> InvarianceReport:
    """Invariance of the five degree-<=3 generators under a unimodular pair;
    non-unimodular input is rejected (use invariance_report to observe the
    determinant twist instead)."""
    for name, m in (("g", g), ("h", h)):
        if Matrix(field, [list(r) for r in m]).det() != field.one():
            raise ValueError(f"{name} is not unimodular")
    return invariance_report(field, g, h)


@dataclass
class ProjectionReport:
    cone_e_ok: bool
    cone_f_ok: bool
    restriction_e_matches: bool
    restriction_f_matches: bool

    def ok(self) -> bool:
        return (self.cone_e_ok and self.cone_f_ok
                and self.restriction_e_matches and self.restriction_f_matches)


def project_cubics(data: RhoLagrangianData,
                   presentation: Optional[QPPresentation] = None,
                   ) -> Tuple[NonSyzygeticEquation, NonSyzygeticEquation,
                              ProjectionReport]:
    """Restrict the big cubics to an admissible subspace in an adapted basis.

    Verifies that each restriction is a cone over the expected vertex (the
    E-side restriction must not involve the A_F coordinates X0..X3 and vice
    versa) and that it equals twice the cubic of the corresponding normal
    form tuple.  Returns the pair (plus tuple in X4..X9 with the last two
    coordinates swapped, minus tuple in X0..X3, X8, X9), which is Gale dual.
    """
    field = data.field
    pres = presentation or adapted_presentation(data)
    basis = pres.adapted_basis()
    cols_lex = [lex3_coordinates(from_frame_coordinates(field, basis.column(j)))
                for j in range(10)]
    images = [MultiPoly.linear_form(field, PROJECTED_VARIABLES,
                                    [cols_lex[j][t] for j in range(10)])
              for t in range(20)]
    frame = build_frame(field)
    xt_e, xt_f = big_cubics(field, frame)
    restricted_e = xt_e.subs(images)
    restricted_f = xt_f.subs(images)
    cone_e_ok = all(restricted_e.degree_in(i) == 0 for i in range(4))
    cone_f_ok = all(restricted_f.degree_in(i) == 0 for i in range(4, 8))

    vars_e = ("X4", "X5", "X6", "X7", "X8", "X9")
    vars_f = ("X0", "X1", "X2", "X3", "X8", "X9")
    eq_plus, _ = equations_from_hats(field, pres.qhat, pres.phat, variables=vars_e)
    _, eq_minus = equations_from_hats(field, pres.qhat, pres.phat, variables=vars_e)
    eq_minus = _rename_tuple(eq_minus, vars_f)

    two = field.from_int(2)
    # eq_plus carries the involution swapping X8 and X9; undo it for the
    # comparison with the raw restriction.
    swap = list(range(10))
    swap[8], swap[9] = 9, 8
    expected_e = _embed10(eq_plus.cubic_polynomial(), vars_e).permute_variables(swap)
    expected_f = _embed10(eq_minus.cubic_polynomial(), vars_f)
    report = ProjectionReport(
        cone_e_ok, cone_f_ok,
        restricted_e == expected_e.scale(two),
        restricted_f == expected_f.scale(two),
    )
    return eq_plus, eq_minus, report


def _rename_tuple(eq: NonSyzygeticEquation, names) -> NonSyzygeticEquation:
    m = [[p.rename(names) for p in row] for row in eq.m]
    ls = [p.rename(names) for p in eq.l_forms]
    return NonSyzygeticEquation(eq.field, tuple(names), m, ls, eq.sign)


def _embed10(poly: MultiPoly, six_names: Sequence[str]) -> MultiPoly:
    """Re-express a polynomial in six of the X0..X9 coordinates as a
    10-variable polynomial."""
    field = poly.field
    images = [MultiPoly.variable(field, PROJECTED_VARIABLES,
                                 PROJECTED_VARIABLES.index(v))
              for v in six_names]
    return poly.subs(images)
