"""JSON interchange for instances: bit-exact round-tripping.

Rationals are ``"num/den"`` strings, prime-field elements integers in
``[0, p)``, cyclotomic elements ``[a, b]`` pairs meaning ``a + b*zeta``.
Polynomials are lists of ``[coefficient, exponent-vector]`` sorted by
exponent vector; matrices are row lists; a subspace spanning matrix is
stored column by column.
"""

from __future__ import annotations

from typing import Any, Dict, List, Optional, Sequence

from .equivariant import A4FamilyParams
from .fields import Field, parse_field
from .gale import NonSyzygeticEquation
from .lagrangian import RhoLagrangianData, validate
from .linalg import Matrix
from .poly import MultiPoly


def poly_to_json(p: MultiPoly) -> list:
    field = p.field
    return [[field.to_json(c), list(mono)] for mono, c in
            sorted(p.terms.items())]


def poly_from_json(field: Field, variables: Sequence[str], data: list) -> MultiPoly:
    terms = {}
    for coeff, mono in data:
        terms[tuple(int(e) for e in mono)] = field.from_json(coeff)
    return MultiPoly(field, variables, terms)


def matrix_to_json(m: Matrix) -> list:
    return [[m.field.to_json(x) for x in row] for row in m.data]


def matrix_from_json(field: Field, data: list) -> Matrix:
    return Matrix(field, [[field.from_json(x) for x in row] for row in data])


def vector_to_json(field: Field, v: Sequence) -> list:
    return [field.to_json(x) for x in v]


def vector_from_json(field: Field, data: list) -> List:
    return [field.from_json(x) for x in data]


def equation_to_json(eq: NonSyzygeticEquation) -> dict:
    field = eq.field
    return {
        "variables": list(eq.variables),
        "matrix": [vector_to_json(field, eq.m[i][j].linear_coefficients())
                   for i in range(3) for j in range(3)],
        "linear_forms": [vector_to_json(field, f.linear_coefficients())
                         for f in eq.l_forms],
        "sign": eq.sign,
    }


def equation_from_json(field: Field, data: dict) -> NonSyzygeticEquation:
    variables = tuple(data.get("variables",
                               ("X0", "X1", "X2", "X3", "X4", "X5")))
    rows = data["matrix"]
    if len(rows) != 9:
        raise ValueError("matrix must list 9 coefficient rows")
    m_rows = [[vector_from_json(field, rows[3 * i + j]) for j in range(3)]
              for i in range(3)]
    l_rows = [vector_from_json(field, r) for r in data["linear_forms"]]
    if len(l_rows) != 3:
        raise ValueError("need three linear forms")
    return NonSyzygeticEquation.from_coefficients(
        field, m_rows, l_rows, int(data.get("sign", 1)), variables)


def lagrangian_to_json(data: RhoLagrangianData) -> list:
    return [vector_to_json(data.field, data.matrix.column(j))
            for j in range(data.matrix.cols)]


def lagrangian_from_json(field: Field, columns: list) -> RhoLagrangianData:
    cols = [vector_from_json(field, col) for col in columns]
    for col in cols:
        if len(col) != 20:
            raise ValueError("subspace columns must have 20 coordinates")
    return validate(field, Matrix.from_columns(field, cols))


class InstanceFile:
    """Typed view of the interchange JSON object."""

    def __init__(self, payload: dict):
        if not isinstance(payload, dict):
            raise ValueError("instance must be a JSON object")
        self.payload = payload
        self.field: Field = parse_field(payload.get("field", "rationals"))

    def equation(self) -> NonSyzygeticEquation:
        if "equation" not in self.payload:
            raise ValueError("instance carries no equation")
        return equation_from_json(self.field, self.payload["equation"])

    def lagrangian(self) -> RhoLagrangianData:
        if "lagrangian" not in self.payload:
            raise ValueError("instance carries no lagrangian")
        return lagrangian_from_json(self.field, self.payload["lagrangian"])

    def point(self, override: Optional[str] = None):
        from .epw import EPWPoint
        if override is not None:
            vals = [self.field.from_json(_parse_scalar(tok))
                    for tok in override.split(",")]
            return EPWPoint.make(self.field, vals)
        if "point" not in self.payload:
            raise ValueError("no point given (instance field 'point' or --point)")
        return EPWPoint.make(self.field,
                             vector_from_json(self.field, self.payload["point"]))

    def line_points(self):
        if "line" not in self.payload:
            raise ValueError("no line given (instance field 'line': two points)")
        pts = self.payload["line"]
        if len(pts) != 2:
            raise ValueError("a line is given by two points")
        return [vector_from_json(self.field, p) for p in pts]

    def generators(self) -> List[Matrix]:
        return [matrix_from_json(self.field, g)
                for g in self.payload.get("generators", [])]

    def params(self) -> A4FamilyParams:
        raw = self.payload.get("params")
        if raw is None:
            raise ValueError("instance carries no family parameters")
        k = self.field
        xi = (k.from_json(raw["xi"]) if "xi" in raw
              else k.cube_root_of_unity())
        return A4FamilyParams(k, k.from_json(raw["alpha"]),
                              k.from_json(raw["beta"]), k.from_json(raw["gamma"]),
                              k.from_json(raw["delta"]), k.from_json(raw["lambda"]),
                              xi)


def _parse_scalar(token: str):
    token = token.strip()
    if "/" in token:
        return token
    try:
        return int(token)
    except ValueError:
        return token


def make_instance(field: Field, eq: Optional[NonSyzygeticEquation] = None,
                  lagrangian: Optional[RhoLagrangianData] = None,
                  extra: Optional[dict] = None) -> dict:
    out: Dict[str, Any] = {"field": field.descriptor}
    if eq is not None:
        out["equation"] = equation_to_json(eq)
        out["variables"] = list(eq.variables)
    if lagrangian is not None:
        out["lagrangian"] = lagrangian_to_json(lagrangian)
    if extra:
        out.update(extra)
    return out
