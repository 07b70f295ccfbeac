"""Exact multivariate polynomials with dense exponent vectors.

A :class:`MultiPoly` owns an ordered variable list and a term map from
exponent tuples to nonzero raw field elements.  Variable counts in this
package stay small (at most 20), so exponent vectors are stored densely.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import Element, Field

Monomial = Tuple[int, ...]


class MultiPoly:
    __slots__ = ("field", "variables", "terms")

    def __init__(self, field: Field, variables: Sequence[str],
                 terms: Optional[Dict[Monomial, Element]] = None):
        self.field = field
        self.variables: Tuple[str, ...] = tuple(variables)
        clean: Dict[Monomial, Element] = {}
        if terms:
            n = len(self.variables)
            for mono, c in terms.items():
                if len(mono) != n:
                    raise ValueError("exponent vector length mismatch")
                if not field.is_zero(c):
                    clean[tuple(mono)] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, field: Field, variables: Sequence[str]) -> "MultiPoly":
        return cls(field, variables)

    @classmethod
    def constant(cls, field: Field, variables: Sequence[str], c: Element) -> "MultiPoly":
        return cls(field, variables, {(0,) * len(variables): c})

    @classmethod
    def variable(cls, field: Field, variables: Sequence[str], index: int) -> "MultiPoly":
        mono = [0] * len(variables)
        mono[index] = 1
        return cls(field, variables, {tuple(mono): field.one()})

    @classmethod
    def linear_form(cls, field: Field, variables: Sequence[str],
                    coeffs: Sequence[Element]) -> "MultiPoly":
        n = len(variables)
        if len(coeffs) != n:
            raise ValueError("coefficient vector length mismatch")
        terms = {}
        for i, c in enumerate(coeffs):
            if not field.is_zero(c):
                mono = [0] * n
                mono[i] = 1
                terms[tuple(mono)] = c
        return cls(field, variables, terms)

    # -- predicates and access -------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono: Monomial) -> Element:
        return self.terms.get(tuple(mono), self.field.zero())

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        if not self.terms:
            return True
        degs = {sum(m) for m in self.terms}
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def linear_coefficients(self) -> List[Element]:
        """Coefficient vector of a homogeneous linear form (zero allowed)."""
        if not self.is_homogeneous(1) and not self.is_zero():
            raise ValueError("not a linear form")
        out = [self.field.zero()] * len(self.variables)
        for mono, c in self.terms.items():
            out[mono.index(1)] = c
        return out

    def degree_in(self, index: int) -> int:
        return max((m[index] for m in self.terms), default=0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.field == other.field
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field, self.variables, frozenset(self.terms.items())))

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if self.variables != other.variables or self.field != other.field:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        k = self.field
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            acc = k.add(terms.get(mono, k.zero()), c)
            if k.is_zero(acc):
                terms.pop(mono, None)
            else:
                terms[mono] = acc
        return MultiPoly(k, self.variables, terms)

    def __neg__(self) -> "MultiPoly":
        k = self.field
        return MultiPoly(k, self.variables, {m: k.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def scale(self, c: Element) -> "MultiPoly":
        k = self.field
        if k.is_zero(c):
            return MultiPoly.zero(k, self.variables)
        return MultiPoly(k, self.variables, {m: k.mul(c, v) for m, v in self.terms.items()})

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        k = self.field
        terms: Dict[Monomial, Element] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                prod = k.mul(c1, c2)
                acc = k.add(terms.get(mono, k.zero()), prod)
                if k.is_zero(acc):
                    terms.pop(mono, None)
                else:
                    terms[mono] = acc
        return MultiPoly(k, self.variables, terms)

    def __pow__(self, e: int) -> "MultiPoly":
        if e < 0:
            raise ValueError("negative power")
        out = MultiPoly.constant(self.field, self.variables, self.field.one())
        for _ in range(e):
            out = out * self
        return out

    def derivative(self, index: int) -> "MultiPoly":
        """Partial derivative; satisfies the Leibniz rule exactly."""
        k = self.field
        terms: Dict[Monomial, Element] = {}
        for mono, c in self.terms.items():
            e = mono[index]
            if e == 0:
                continue
            new = list(mono)
            new[index] = e - 1
            coeff = k.mul(k.from_int(e), c)
            if not k.is_zero(coeff):
                terms[tuple(new)] = coeff
        return MultiPoly(k, self.variables, terms)

    # -- evaluation and substitution ---------------------------------------

    def evaluate(self, point: Sequence[Element]) -> Element:
        k = self.field
        acc = k.zero()
        for mono, c in self.terms.items():
            val = c
            for e, x in zip(mono, point):
                for _ in range(e):
                    val = k.mul(val, x)
            acc = k.add(acc, val)
        return acc

    def subs(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute variable ``i`` by ``images[i]``; all images must share
        one ring, which becomes the ring of the result."""
        if len(images) != len(self.variables):
            raise ValueError("need one image per variable")
        if not images:
            raise ValueError("empty variable list")
        target_vars = images[0].variables
        k = self.field
        # memoized powers per variable
        powers: List[List[MultiPoly]] = []
        for i, img in enumerate(images):
            powers.append([MultiPoly.constant(k, target_vars, k.one())])
        out = MultiPoly.zero(k, target_vars)
        for mono, c in self.terms.items():
            term = MultiPoly.constant(k, target_vars, c)
            for i, e in enumerate(mono):
                while len(powers[i]) <= e:
                    powers[i].append(powers[i][-1] * images[i])
                if e:
                    term = term * powers[i][e]
            out = out + term
        return out

    def rename(self, variables: Sequence[str]) -> "MultiPoly":
        if len(variables) != len(self.variables):
            raise ValueError("variable count mismatch")
        return MultiPoly(self.field, variables, dict(self.terms))

    def permute_variables(self, perm: Sequence[int]) -> "MultiPoly":
        """Image under x_i -> x_perm[i], keeping the variable names."""
        terms = {}
        k = self.field
        for mono, c in self.terms.items():
            new = [0] * len(mono)
            for i, e in enumerate(mono):
                new[perm[i]] += e
            mono2 = tuple(new)
            acc = k.add(terms.get(mono2, k.zero()), c)
            terms[mono2] = acc
        return MultiPoly(k, self.variables, terms)

    # -- division ----------------------------------------------------------

    def divmod_linear(self, ell: "MultiPoly") -> Tuple["MultiPoly", "MultiPoly"]:
        """Exact division by a linear form: self = q*ell + r with the pivot
        variable of ``ell`` eliminated from r.  Division by a single
        polynomial, so r == 0 is equivalent to membership in (ell)."""
        self._check(ell)
        if not ell.is_homogeneous(1) or ell.is_zero():
            raise ValueError("divisor must be a nonzero linear form")
        k = self.field
        coeffs = ell.linear_coefficients()
        pivot = next(i for i, c in enumerate(coeffs) if not k.is_zero(c))
        c_piv = coeffs[pivot]
        rest = dict(ell.terms)
        piv_mono = tuple(1 if i == pivot else 0 for i in range(len(coeffs)))
        rest.pop(piv_mono)
        q_terms: Dict[Monomial, Element] = {}
        work = dict(self.terms)
        while True:
            cand = [m for m in work if m[pivot] > 0]
            if not cand:
                break
            m = max(cand, key=lambda t: t[pivot])
            c = work[m]
            u = list(m)
            u[pivot] -= 1
            u_mono = tuple(u)
            factor = k.div(c, c_piv)
            acc = k.add(q_terms.get(u_mono, k.zero()), factor)
            if k.is_zero(acc):
                q_terms.pop(u_mono, None)
            else:
                q_terms[u_mono] = acc
            # work -= factor * u * ell
            del work[m]
            for rm, rc in rest.items():
                mono = tuple(a + b for a, b in zip(u_mono, rm))
                val = k.sub(work.get(mono, k.zero()), k.mul(factor, rc))
                if k.is_zero(val):
                    work.pop(mono, None)
                else:
                    work[mono] = val
        return (
            MultiPoly(k, self.variables, q_terms),
            MultiPoly(k, self.variables, work),
        )

    # -- display -------------------------------------------------------------

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for mono in sorted(self.terms, reverse=True):
            c = self.terms[mono]
            factors = [
                v if e == 1 else f"{v}^{e}"
                for v, e in zip(self.variables, mono)
                if e
            ]
            body = "*".join(factors) if factors else "1"
            bits.append(f"({c})*{body}")
        return " + ".join(bits)


class PolyRing:
    """Ring-protocol adapter so matrix helpers can run on MultiPoly entries."""

    def __init__(self, field: Field, variables: Sequence[str]):
        self.field = field
        self.variables = tuple(variables)
        self.descriptor = f"poly({field.descriptor};{','.join(self.variables)})"

    def zero(self) -> MultiPoly:
        return MultiPoly.zero(self.field, self.variables)

    def one(self) -> MultiPoly:
        return MultiPoly.constant(self.field, self.variables, self.field.one())

    def add(self, a: MultiPoly, b: MultiPoly) -> MultiPoly:
        return a + b

    def sub(self, a: MultiPoly, b: MultiPoly) -> MultiPoly:
        return a - b

    def neg(self, a: MultiPoly) -> MultiPoly:
        return -a

    def mul(self, a: MultiPoly, b: MultiPoly) -> MultiPoly:
        return a * b

    def is_zero(self, a: MultiPoly) -> bool:
        return a.is_zero()


def monomials_of_degree(nvars: int, degree: int) -> List[Monomial]:
    """All exponent vectors of the given total degree, deterministic order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        mono = [0] * nvars
        for i in combo:
            mono[i] += 1
        out.append(tuple(mono))
    return out


def proportional(p: MultiPoly, q: MultiPoly) -> bool:
    """True when p = c*q for some nonzero scalar c (or both are zero)."""
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    if set(p.terms) != set(q.terms):
        return False
    k = p.field
    mono = next(iter(p.terms))
    c = k.div(p.terms[mono], q.terms[mono])
    return all(p.terms[m] == k.mul(c, q.terms[m]) for m in q.terms)


# -- univariate helpers (coefficient lists, low degree first) ---------------

def univariate_coeffs(p: MultiPoly) -> List[Element]:
    if len(p.variables) != 1:
        raise ValueError("not univariate")
    k = p.field
    d = p.total_degree()
    out = [k.zero()] * (d + 1)
    for mono, c in p.terms.items():
        out[mono[0]] = c
    return out


def univariate_from_coeffs(field: Field, var: str, coeffs: Sequence[Element]) -> MultiPoly:
    return MultiPoly(field, (var,), {(i,): c for i, c in enumerate(coeffs)})


def _trim(field: Field, coeffs: List[Element]) -> List[Element]:
    while coeffs and field.is_zero(coeffs[-1]):
        coeffs.pop()
    return coeffs


def univariate_gcd(field: Field, a: Sequence[Element], b: Sequence[Element]) -> List[Element]:
    """Monic gcd of univariate coefficient lists ([] encodes the zero poly)."""
    fa, fb = _trim(field, list(a)), _trim(field, list(b))
    while fb:
        fa = _poly_mod(field, fa, fb)
        fa, fb = fb, fa
    if fa:
        inv = field.inv(fa[-1])
        fa = [field.mul(inv, c) for c in fa]
    return fa


def _poly_mod(field: Field, a: List[Element], b: List[Element]) -> List[Element]:
    return univariate_divmod(field, a, b)[1]


def univariate_divmod(field: Field, a: Sequence[Element],
                      b: Sequence[Element]) -> Tuple[List[Element], List[Element]]:
    """Quotient and remainder of univariate coefficient lists (low first)."""
    b = _trim(field, list(b))
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = _trim(field, list(a))
    db, lead = len(b) - 1, b[-1]
    q = [field.zero()] * max(len(r) - db, 0)
    while r and len(r) - 1 >= db:
        f = field.div(r[-1], lead)
        shift = len(r) - 1 - db
        q[shift] = f
        for i, c in enumerate(b):
            r[shift + i] = field.sub(r[shift + i], field.mul(f, c))
        r = _trim(field, r)
    return _trim(field, q), r


def univariate_mul(field: Field, a: Sequence[Element],
                   b: Sequence[Element]) -> List[Element]:
    if not a or not b:
        return []
    out = [field.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if field.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(x, y))
    return _trim(field, out)


def univariate_sub(field: Field, a: Sequence[Element],
                   b: Sequence[Element]) -> List[Element]:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else field.zero()
        y = b[i] if i < len(b) else field.zero()
        out.append(field.sub(x, y))
    return _trim(field, out)


def lagrange_interpolate(field: Field, points: Sequence[Tuple[Element, Element]]) -> List[Element]:
    """Coefficients (low first) of the unique poly of degree < len(points)."""
    k = field
    result = [k.zero()] * len(points)
    for i, (xi, yi) in enumerate(points):
        basis = [k.one()]
        denom = k.one()
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            # basis *= (x - xj)
            nxt = [k.zero()] * (len(basis) + 1)
            for d, c in enumerate(basis):
                nxt[d + 1] = k.add(nxt[d + 1], c)
                nxt[d] = k.sub(nxt[d], k.mul(xj, c))
            basis = nxt
            denom = k.mul(denom, k.sub(xi, xj))
        f = k.div(yi, denom)
        for d, c in enumerate(basis):
            result[d] = k.add(result[d], k.mul(f, c))
    return _trim(field, result)
