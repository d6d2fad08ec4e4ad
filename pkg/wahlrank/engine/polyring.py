#!/usr/bin/env python3
"""
Bivariate polynomials over Q and the curve-adapted operators.

A BiPoly is a sparse map (a, b) -> coefficient standing for sum c * x^a * y^b.
Every section space the package touches (canonical and pluricanonical forms
of a plane curve, sections of O(a) on the line) is carried by BiPolys.

Operators relative to a curve F(x, y) = 0:

    delta(P, F)         = P_x F_y - P_y F_x
    r_operator(P, F, m) : R0 = P, R(m+1) = delta(Rm, F) F_y - (2m+1) Rm delta(F_y, F)
    normal_form(P, F)   : remainder of P divided by F as a polynomial in y

delta(P, F) / F_y is the derivative of P along the curve in the coordinate x,
and R(m) / F_y^(2m+1) is the m-th such derivative of P / F_y
(see docs/R_OPERATOR_DERIVATION.md).
"""
from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Any, Dict, Iterator, List, Mapping, Tuple

from wahlrank.engine.scalars import to_rat
from wahlrank.errors import NotYMonic

Monomial = Tuple[int, int]

# Degree reported for the zero polynomial; below every real degree.
ZERO_DEGREE = -1


class BiPoly:
    """
    Immutable sparse bivariate polynomial with Fraction coefficients.

    Business Rules:
    - no zero coefficient is ever stored
    - equality and hashing are by the term map
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Any] | None = None):
        clean: Dict[Monomial, Fraction] = {}
        for (a, b), c in (terms or {}).items():
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in monomial {(a, b)}")
            c = c if isinstance(c, Fraction) else to_rat(c)
            if c:
                clean[(int(a), int(b))] = c
        self._terms = clean

    @classmethod
    def _wrap(cls, terms: Dict[Monomial, Fraction]) -> "BiPoly":
        """Adopt a term dict that is already clean (Fractions, no zeros)."""
        out = cls.__new__(cls)
        out._terms = terms
        return out

    # Constructors
    @classmethod
    def const(cls, c: Any) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, a: int, b: int, c: Any = 1) -> "BiPoly":
        return cls({(a, b): c})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls.monomial(1, 0)

    @classmethod
    def y(cls) -> "BiPoly":
        return cls.monomial(0, 1)

    # Views
    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def coefficient(self, a: int, b: int) -> Fraction:
        return self._terms.get((a, b), Fraction(0))

    def monomials(self) -> List[Monomial]:
        """Monomials sorted by decreasing total degree, then decreasing x power."""
        return sorted(self._terms, key=lambda m: (-(m[0] + m[1]), -m[0]))

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def total_degree(self) -> int:
        return max((a + b for a, b in self._terms), default=ZERO_DEGREE)

    @property
    def deg_x(self) -> int:
        return max((a for a, _ in self._terms), default=ZERO_DEGREE)

    @property
    def deg_y(self) -> int:
        return max((b for _, b in self._terms), default=ZERO_DEGREE)

    def homogeneous_part(self, n: int) -> "BiPoly":
        return BiPoly._wrap({m: c for m, c in self._terms.items() if m[0] + m[1] == n})

    def evaluate(self, x0: Any, y0: Any) -> Fraction:
        x0, y0 = to_rat(x0), to_rat(y0)
        return sum((c * x0**a * y0**b for (a, b), c in self._terms.items()), Fraction(0))

    # Arithmetic
    def __add__(self, other: Any) -> "BiPoly":
        other = _coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return BiPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly._wrap({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Any) -> "BiPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: Any) -> "BiPoly":
        return _coerce(other) - self

    def __mul__(self, other: Any) -> "BiPoly":
        if not isinstance(other, BiPoly):
            return scale(self, other)
        out: Dict[Monomial, Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                m = (a1 + a2, b1 + b2)
                out[m] = out.get(m, 0) + c1 * c2
        return BiPoly._wrap({m: c for m, c in out.items() if c})

    def __rmul__(self, other: Any) -> "BiPoly":
        return scale(self, other)

    def __pow__(self, n: int) -> "BiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = BiPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BiPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == BiPoly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        from wahlrank.engine.parser import format_poly

        return f"BiPoly({format_poly(self)!r})"


def _coerce(value: Any) -> BiPoly:
    if isinstance(value, BiPoly):
        return value
    return BiPoly.const(value)


ZERO = BiPoly()
ONE = BiPoly.const(1)


def add(p: BiPoly, q: BiPoly) -> BiPoly:
    return p + q


def mul(p: BiPoly, q: BiPoly) -> BiPoly:
    return p * q


def scale(p: BiPoly, c: Any) -> BiPoly:
    c = to_rat(c)
    if not c:
        return ZERO
    return BiPoly._wrap({m: v * c for m, v in p._terms.items()})


def partial_x(p: BiPoly) -> BiPoly:
    return BiPoly._wrap({(a - 1, b): c * a for (a, b), c in p._terms.items() if a})


def partial_y(p: BiPoly) -> BiPoly:
    return BiPoly._wrap({(a, b - 1): c * b for (a, b), c in p._terms.items() if b})


def shift(p: BiPoly, da: int, db: int) -> BiPoly:
    """Multiply by the monomial x^da y^db."""
    return BiPoly._wrap({(a + da, b + db): c for (a, b), c in p._terms.items()})


def delta(p: BiPoly, f: BiPoly) -> BiPoly:
    """
    Jacobian pairing P_x F_y - P_y F_x.

    On the curve F = 0 the derivative of P with respect to x equals
    delta(P, F) / F_y. delta(., F) is a derivation, and delta(F, F) = 0.
    """
    return partial_x(p) * partial_y(f) - partial_y(p) * partial_x(f)


def r_operator(p: BiPoly, f: BiPoly, m: int) -> BiPoly:
    """
    Numerator of the m-th derivative of P / F_y along the curve F = 0.

    Args:
        p: polynomial numerator
        f: curve equation
        m: order of differentiation (m >= 0)

    Returns:
        R(m)(P) with D^m(P / F_y) = R(m)(P) / F_y^(2m+1) on the curve;
        total degree at most deg P + m (2 deg F - 3).
    """
    if m < 0:
        raise ValueError(f"m out of range [0,inf): {m}")
    fy = partial_y(f)
    d_fy = delta(fy, f)
    r = p
    for j in range(m):
        r = delta(r, f) * fy - scale(r * d_fy, 2 * j + 1)
    return r


def y_division_data(f: BiPoly) -> Tuple[int, Fraction, List[Tuple[Monomial, Fraction]]]:
    """
    Split F into its y-leading constant and the remaining terms.

    Returns:
        (n, lead, tail) with n = deg_y F, lead the coefficient of y^n and tail
        the other terms of F, all of y-degree below n.

    Raises:
        NotYMonic: F is zero or its leading coefficient in y involves x
    """
    if f.is_zero():
        raise NotYMonic("cannot reduce modulo the zero polynomial")
    n = f.deg_y
    top = [(a, c) for (a, b), c in f.items() if b == n]
    if len(top) != 1 or top[0][0] != 0:
        raise NotYMonic(
            f"leading coefficient in y must be a nonzero constant (deg_y = {n})"
        )
    tail = [(m, c) for m, c in f.items() if m != (0, n)]
    return n, top[0][1], tail


def divide_y(p: BiPoly, f: BiPoly) -> Tuple[BiPoly, BiPoly]:
    """
    Divide P by F as polynomials in y over Q[x].

    Returns:
        (quotient, remainder) with P = quotient * F + remainder and
        deg_y remainder < deg_y F.

    Raises:
        NotYMonic: F is not monic in y up to a constant
    """
    n, lead, tail = y_division_data(f)
    work: Dict[Monomial, Fraction] = dict(p._terms)
    quotient: Dict[Monomial, Fraction] = {}
    top = max((b for _, b in work), default=ZERO_DEGREE)
    for b in range(top, n - 1, -1):
        layer = [(a, c) for (a, bb), c in work.items() if bb == b]
        for a, c in layer:
            del work[(a, b)]
            q = c / lead
            quotient[(a, b - n)] = quotient.get((a, b - n), 0) + q
            for (ta, tb), tc in tail:
                key = (a + ta, b - n + tb)
                v = work.get(key, 0) - q * tc
                if v:
                    work[key] = v
                else:
                    work.pop(key, None)
    return BiPoly(quotient), BiPoly._wrap(work)


def normal_form(p: BiPoly, f: BiPoly) -> BiPoly:
    """
    Canonical representative of P in Q[x, y] / (F).

    The remainder of the y-division: linear in P, idempotent, of y-degree
    below deg_y F and of total degree at most that of P whenever
    deg F = deg_y F (true for every admissible plane curve).

    Raises:
        NotYMonic: F is not monic in y up to a constant
    """
    return divide_y(p, f)[1]


def substitute_diagonal(p: BiPoly) -> BiPoly:
    """P(x, x), returned as a polynomial in x alone."""
    out: Dict[Monomial, Fraction] = {}
    for (a, b), c in p._terms.items():
        out[(a + b, 0)] = out.get((a + b, 0), 0) + c
    return BiPoly._wrap({m: c for m, c in out.items() if c})
