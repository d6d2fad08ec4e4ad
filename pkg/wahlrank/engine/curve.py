#!/usr/bin/env python3
"""
Smooth plane curve model and its canonical section spaces.

A plane curve is given by an affine equation F(x, y) of total degree d >= 4.
Coordinates must be admissible:
- F is monic in y up to a constant (the coefficient of y^d is nonzero), so
  that reduction modulo F is a y-division with a canonical remainder
- the line at infinity meets the curve in d distinct points (the top form
  F_d has no repeated linear factor)

A generic linear change of coordinates makes any smooth curve admissible;
the package does not perform it.

With K_C = O_C(d - 3), the canonical forms are P dx / F_y for the
polynomials P of degree <= d - 3, and H0(K_C^m) is represented by the
polynomials of degree <= m(d - 3) reduced modulo F.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from functools import cached_property
from math import comb
from pathlib import Path
from typing import List, Sequence, Tuple

from wahlrank.engine.linalg import ExactMatrix, rank
from wahlrank.engine.parser import parse_poly
from wahlrank.engine.polyring import BiPoly, Monomial, partial_x, partial_y, y_division_data
from wahlrank.errors import (
    DegreeTooLow,
    InternalInconsistency,
    NotYMonic,
    ProbablySingular,
    SingularAtInfinity,
)

log = logging.getLogger(__name__)

SMOOTH_MODES = ("assume", "probabilistic")


@dataclass(frozen=True)
class Admissibility:
    """
    Record of the coordinate and smoothness checks a curve passed.

    Attributes:
        y_monic: coefficient of y^d is a nonzero constant
        transverse_at_infinity: top form has no repeated linear factor
        smooth_mode: "assume" or "probabilistic"
        resultants_checked: necessary smoothness conditions were evaluated
    """

    y_monic: bool
    transverse_at_infinity: bool
    smooth_mode: str
    resultants_checked: bool


@dataclass(frozen=True)
class PlaneCurve:
    F: BiPoly
    d: int
    genus: int
    admissibility: Admissibility

    @cached_property
    def fx(self) -> BiPoly:
        return partial_x(self.F)

    @cached_property
    def fy(self) -> BiPoly:
        return partial_y(self.F)


@dataclass(frozen=True)
class SectionBasis:
    """Ordered polynomial representatives of H0(C, K_C^power)."""

    power: int
    polys: Tuple[BiPoly, ...]
    dim: int


def genus_of_degree(d: int) -> int:
    return (d - 1) * (d - 2) // 2


# Univariate helpers (coefficient lists, highest degree first)
def _trim(coeffs: List) -> List:
    i = 0
    while i < len(coeffs) and coeffs[i] == 0:
        i += 1
    return coeffs[i:]


def _specialise(p: BiPoly, value: int, keep: str) -> List:
    """Coefficients of p with the other variable set to `value`, in `keep`."""
    if keep == "y":
        degree = p.deg_y
        coeffs = [0] * (degree + 1)
        for (a, b), c in p.items():
            coeffs[degree - b] += c * value**a
    else:
        degree = p.deg_x
        coeffs = [0] * (degree + 1)
        for (a, b), c in p.items():
            coeffs[degree - a] += c * value**b
    return coeffs


def sylvester_matrix(p: Sequence, q: Sequence) -> ExactMatrix:
    """
    Sylvester matrix of two univariate polynomials given as coefficient lists.

    For deg p = m and deg q = n the matrix is (m + n) x (m + n): n shifted
    copies of p above m shifted copies of q. Its determinant is Res(p, q).
    """
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(p) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(q) + [0] * (size - n - 1 - i))
    return ExactMatrix.from_rows(rows, cols=size)


def resultant_is_nonzero(p: Sequence, q: Sequence) -> bool:
    """Res(p, q) != 0, decided by full rank of the Sylvester matrix."""
    s = sylvester_matrix(p, q)
    return rank(s) == s.rows


def _check_resultant_y(f: BiPoly, fy: BiPoly, d: int) -> None:
    """Res_y(F, F_y) is a polynomial in x of degree <= d(d-1); sample it."""
    samples = d * (d - 1) + 1
    for x0 in range(samples):
        if resultant_is_nonzero(_specialise(f, x0, "y"), _specialise(fy, x0, "y")):
            log.debug("Res_y(F, F_y) nonzero at x = %d", x0)
            return
    raise ProbablySingular(
        f"Res_y(F, F_y) vanishes at {samples} sample points: F has a repeated factor"
    )


def _check_resultant_x(f: BiPoly, fx: BiPoly, d: int) -> None:
    """Res_x(F, F_x) sampled at y values where the x-degree of F is kept."""
    if fx.is_zero():
        raise ProbablySingular("F does not involve x: the curve is a union of lines")
    samples = d * (d - 1) + 1
    n = f.deg_x
    lead = BiPoly({(0, b): c for (a, b), c in f.items() if a == n})
    found = 0
    y0 = 0
    while found < samples:
        if lead.evaluate(0, y0) != 0:
            found += 1
            if resultant_is_nonzero(_specialise(f, y0, "x"), _specialise(fx, y0, "x")):
                log.debug("Res_x(F, F_x) nonzero at y = %d", y0)
                return
        y0 += 1
    raise ProbablySingular(
        f"Res_x(F, F_x) vanishes at {samples} sample points: F has a repeated factor"
    )


def _check_infinity(f: BiPoly, d: int) -> None:
    """
    F_d(x, y) = y^e * prod (x - r y) with e = d - deg F_d(t, 1).

    Transversality needs e <= 1 and F_d(t, 1) squarefree.
    """
    top = f.homogeneous_part(d)
    coeffs = _trim(_specialise(BiPoly({(a, 0): c for (a, b), c in top.items()}), 0, "x"))
    e = d - (len(coeffs) - 1)
    if e > 1:
        raise SingularAtInfinity(f"the line at infinity is tangent to the curve (y^{e} divides F_d)")
    if len(coeffs) > 2:
        derivative = [c * (len(coeffs) - 1 - i) for i, c in enumerate(coeffs[:-1])]
        if not resultant_is_nonzero(coeffs, derivative):
            raise SingularAtInfinity("top-degree form has a repeated linear factor")


def new_plane_curve(f: BiPoly, smooth_mode: str = "probabilistic") -> PlaneCurve:
    """
    Validate an affine equation and build a PlaneCurve.

    Args:
        f: affine equation F(x, y)
        smooth_mode: "assume" trusts smoothness, "probabilistic" checks the
            necessary resultant conditions for (F, F_y) and (F, F_x)

    Raises:
        DegreeTooLow: total degree below 4
        NotYMonic: coefficient of y^d is zero
        SingularAtInfinity: top form has a repeated linear factor
        ProbablySingular: a checked resultant vanished
    """
    if smooth_mode not in SMOOTH_MODES:
        raise ValueError(f"smooth_mode must be one of {SMOOTH_MODES}: {smooth_mode!r}")
    d = f.total_degree
    if d < 4:
        raise DegreeTooLow(f"plane curve degree must be >= 4, got {d}")
    if f.deg_y != d:
        raise NotYMonic(f"coefficient of y^{d} must be nonzero")
    y_division_data(f)
    curve = PlaneCurve(
        F=f,
        d=d,
        genus=genus_of_degree(d),
        admissibility=Admissibility(
            y_monic=True,
            transverse_at_infinity=True,
            smooth_mode=smooth_mode,
            resultants_checked=smooth_mode == "probabilistic",
        ),
    )
    # a repeated factor also repeats in the top form, so check it first
    if smooth_mode == "probabilistic":
        _check_resultant_y(f, curve.fy, d)
        _check_resultant_x(f, curve.fx, d)
    _check_infinity(f, d)
    log.debug("plane curve of degree %d, genus %d (%s)", d, curve.genus, smooth_mode)
    return curve


def fermat_curve(d: int, smooth_mode: str = "probabilistic") -> PlaneCurve:
    """The Fermat curve x^d + y^d + 1 = 0."""
    return new_plane_curve(BiPoly({(d, 0): 1, (0, d): 1, (0, 0): 1}), smooth_mode)


def load_curve_file(path: str | Path) -> PlaneCurve:
    """
    Read a curve file: {"F": "<polynomial>", "smooth_mode": "assume" | "probabilistic"}.

    smooth_mode defaults to "probabilistic".
    """
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    if not isinstance(data, dict) or not isinstance(data.get("F"), str):
        raise ValueError(f"{path}: curve file needs a string field 'F'")
    return new_plane_curve(parse_poly(data["F"]), data.get("smooth_mode", "probabilistic"))


def curve_from_spec(text: str) -> PlaneCurve:
    """Resolve "fermat:<d>" or a curve file path."""
    if text.startswith("fermat:"):
        raw = text.split(":", 1)[1]
        if not raw.strip().isdigit():
            raise ValueError(f"fermat degree must be an integer: {raw!r}")
        return fermat_curve(int(raw))
    return load_curve_file(text)


# Section spaces
def graded_monomials(max_degree: int, y_bound: int | None = None) -> List[Monomial]:
    """
    Monomials x^a y^b with a + b <= max_degree (and b < y_bound if given).

    Graded order: by total degree n, and within degree n
    x^n, x^(n-1) y, ..., y^n.
    """
    out = []
    for n in range(max_degree + 1):
        for b in range(n + 1):
            if y_bound is None or b < y_bound:
                out.append((n - b, b))
    return out


def canonical_basis(curve: PlaneCurve) -> SectionBasis:
    """Monomials of degree <= d - 3: a basis of H0(K_C) of size g."""
    polys = tuple(BiPoly.monomial(a, b) for a, b in graded_monomials(curve.d - 3))
    return SectionBasis(power=1, polys=polys, dim=len(polys))


def pluricanonical_basis(curve: PlaneCurve, m: int) -> SectionBasis:
    """
    Reduced monomials spanning H0(K_C^m): b < d and a + b <= m(d - 3).

    These are the normal forms of all monomials of degree <= m(d - 3), and
    they are independent on the curve.
    """
    if m < 1:
        raise ValueError(f"m out of range [1,inf): {m}")
    mons = graded_monomials(m * (curve.d - 3), y_bound=curve.d)
    polys = tuple(BiPoly.monomial(a, b) for a, b in mons)
    return SectionBasis(power=m, polys=polys, dim=len(polys))


def section_count(d: int, m: int) -> int:
    """C(M+2, 2) - C(M-d+2, 2) with M = m(d - 3), the second term 0 when M < d."""
    big = m * (d - 3)
    drop = comb(big - d + 2, 2) if big >= d else 0
    return comb(big + 2, 2) - drop


def pluricanonical_dim(curve: PlaneCurve, m: int) -> int:
    """
    dim H0(C, K_C^m), cross-checked against Riemann-Roch.

    Raises:
        InternalInconsistency: the plane count and g / (2m-1)(g-1) disagree
    """
    if m < 1:
        raise ValueError(f"m out of range [1,inf): {m}")
    count = section_count(curve.d, m)
    g = curve.genus
    expected = g if m == 1 else (2 * m - 1) * (g - 1)
    if count != expected:
        raise InternalInconsistency(
            f"h0(K^{m}) for d={curve.d}: plane count {count} != Riemann-Roch {expected}"
        )
    return count
