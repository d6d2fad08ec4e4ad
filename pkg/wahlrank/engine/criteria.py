#!/usr/bin/env python3
"""
Closed-form rank formulas and surjectivity criteria.

Every criterion here is one-directional: a predicate either names the case
that guarantees surjectivity or answers "no_conclusion". None of them ever
claims a map is not surjective.

Business Rules:
- inequalities with fractions are compared in cleared integer form
- plane-curve ranks are predicted only for 0 <= k <= (d - 6) / 2
- the product-surface criterion is stated for k >= 2
- phi of an Enriques polarization is an input, never computed
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Literal, Optional, Tuple

from wahlrank.engine.policy import QUOTED_MIN_GENUS
from wahlrank.errors import InternalInconsistency, KBelowTwo, NegativeGenus

log = logging.getLogger(__name__)

NO_CONCLUSION = "no_conclusion"

EinlazResult = Literal["surjective_by_i", "surjective_by_ii", "no_conclusion"]
ProductResult = Literal["case1", "case2", "case2_swapped", "no_conclusion"]


@dataclass(frozen=True)
class ProductData:
    """Genera g1, g2 of the factors, degrees d1, d2 of the divisors, order k."""

    g1: int
    g2: int
    d1: int
    d2: int
    k: int

    def __post_init__(self):
        for name in ("g1", "g2"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} out of range [0,inf): {getattr(self, name)}")
        for name in ("d1", "d2"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} out of range [1,inf): {getattr(self, name)}")
        if self.k < 0:
            raise ValueError(f"k out of range [0,inf): {self.k}")


@dataclass(frozen=True)
class EnriquesData:
    phi: int
    k: int

    def __post_init__(self):
        if self.phi < 1:
            raise ValueError(f"phi out of range [1,inf): {self.phi}")
        if self.k < 0:
            raise ValueError(f"k out of range [0,inf): {self.k}")


@dataclass(frozen=True)
class PlaneFormula:
    rank: Fraction
    corank: Fraction
    valid: bool


def plane_rank_formula(d: int, k: int) -> PlaneFormula:
    """
    Predicted rank and corank of the k-th Gaussian map of a smooth plane curve.

    rank = (2k+3)(d(d-3) - k(k+3)) / 2, corank = k(k+3)(2k+3) / 2, valid when
    k <= (d - 6) / 2.

    Raises:
        ValueError: d < 6 or k < 0
    """
    if d < 6:
        raise ValueError(f"d out of range [6,inf): {d}")
    if k < 0:
        raise ValueError(f"k out of range [0,inf): {k}")
    rank = Fraction((2 * k + 3) * (d * (d - 3) - k * (k + 3)), 2)
    corank = Fraction(k * (k + 3) * (2 * k + 3), 2)
    valid = 2 * k <= d - 6
    if valid and (rank.denominator != 1 or corank.denominator != 1):
        raise InternalInconsistency(f"non-integral prediction for d={d}, k={k}")
    return PlaneFormula(rank=rank, corank=corank, valid=valid)


def plane_rank_from_genus(g: int, k: int) -> Fraction:
    """Same rank written with 2g - 2 = d(d - 3)."""
    return Fraction((2 * k + 3) * (2 * g - 2 - k * (k + 3)), 2)


def p2_corank_formula(k: int) -> int:
    """Corank of the restriction step: k(k+3)(2k+3)/2."""
    if k < 0:
        raise ValueError(f"k out of range [0,inf): {k}")
    return k * (k + 3) * (2 * k + 3) // 2


def einlaz_predicate(
    g: int, d: int, m: int, k: int, hyperelliptic: Optional[bool] = None
) -> EinlazResult:
    """
    Surjectivity of the k-th Gaussian map of two line bundles of degrees d, m
    on a curve of genus g.

    Args:
        hyperelliptic: True, False, or None when unknown; the sharper case
            only applies when it is known to be False

    Business Rules:
    - both degrees must reach (k+1)(g+1)
    - case i: d + m >= (k+1)(2g+2) + 2g - 1
    - case ii (non-hyperelliptic): d + m >= (k+1)(2g+2) + 2g - 2
    """
    if k < 1:
        return NO_CONCLUSION
    floor = (k + 1) * (g + 1)
    if d < floor or m < floor:
        return NO_CONCLUSION
    base = (k + 1) * (2 * g + 2)
    if d + m >= base + 2 * g - 1:
        return "surjective_by_i"
    if hyperelliptic is False and d + m >= base + 2 * g - 2:
        return "surjective_by_ii"
    return NO_CONCLUSION


def _degree_bound(k: int, g: int) -> int:
    return k * g + k + 3


def product_predicate(p: ProductData) -> ProductResult:
    """
    Surjectivity case for a general curve C in |D1 x D2| on C1 x C2.

    Raises:
        KBelowTwo: k < 2
    """
    k = p.k
    if k < 2:
        raise KBelowTwo(f"k must be >= 2 for the product-surface criterion, got {k}")
    both_bounds = p.d1 >= _degree_bound(k, p.g1) and p.d2 >= _degree_bound(k, p.g2)
    genera_ok = (p.g1 >= 2 and p.g2 >= 1) or (p.g1 >= 1 and p.g2 >= 2)
    if genera_ok and both_bounds:
        return "case1"
    if (
        p.g1 == 0
        and p.g2 >= 2
        and p.d1 > 2 * (k + 1)
        and (p.g2 - 1) * p.d1 > k * p.d2
        and p.d2 >= _degree_bound(k, p.g2)
    ):
        return "case2"
    if (
        p.g2 == 0
        and p.g1 >= 2
        and p.d2 > 2 * (k + 1)
        and (p.g1 - 1) * p.d2 > k * p.d1
        and p.d1 >= _degree_bound(k, p.g1)
    ):
        return "case2_swapped"
    return NO_CONCLUSION


def product_surface_predicate(p: ProductData) -> bool:
    """
    Surjectivity of the k-th Gaussian map of X = C1 x C2 for H = K_X(C),
    C in |D1 x D2|: d_i >= k g_i + k + 3 for i = 1, 2.
    """
    if p.k < 1:
        raise ValueError(f"k out of range [1,inf): {p.k}")
    return p.d1 >= _degree_bound(p.k, p.g1) and p.d2 >= _degree_bound(p.k, p.g2)


def product_bundle_predicate(
    g1: int,
    l1: int,
    g2: int,
    l2: int,
    k: int,
    hyperelliptic1: Optional[bool] = None,
    hyperelliptic2: Optional[bool] = None,
) -> bool:
    """
    Surjectivity of the k-th Gaussian map of L = L1 x L2 on C1 x C2.

    Holds when each factor satisfies the two-bundle degree bound with
    d = m = deg L_i.
    """
    first = einlaz_predicate(g1, l1, l1, k, hyperelliptic1)
    second = einlaz_predicate(g2, l2, l2, k, hyperelliptic2)
    return first != NO_CONCLUSION and second != NO_CONCLUSION


def product_genus(g1: int, g2: int, d1: int, d2: int) -> int:
    """
    Genus of a smooth curve in |D1 x D2| on C1 x C2.

    Raises:
        NegativeGenus: the formula is negative for these inputs
    """
    g = 1 + (g2 - 1) * d1 + (g1 - 1) * d2 + d1 * d2
    if g < 0:
        raise NegativeGenus(f"genus formula is negative for {(g1, g2, d1, d2)}: {g}")
    return g


def enriques_predicate(e: EnriquesData) -> bool:
    """phi > 6 when k = 1, otherwise phi > 4(k + 2); both strict."""
    if e.k == 1:
        return e.phi > 6
    return e.phi > 4 * (e.k + 2)


def surjective_genera(
    g1: int, g2: int, k: int, bound: int
) -> List[Tuple[int, int, str, int]]:
    """
    Degree pairs 1 <= d1, d2 <= bound admitted by product_predicate.

    Returns:
        (d1, d2, case, genus) tuples in increasing (d1, d2) order; each genus
        is one for which the general curve has a surjective k-th Gaussian map.
    """
    if bound < 1:
        raise ValueError(f"bound out of range [1,inf): {bound}")
    out = []
    for d1 in range(1, bound + 1):
        for d2 in range(1, bound + 1):
            case = product_predicate(ProductData(g1, g2, d1, d2, k))
            if case != NO_CONCLUSION:
                out.append((d1, d2, case, product_genus(g1, g2, d1, d2)))
    return out


@dataclass(frozen=True)
class MinGenusSweep:
    g1: int
    g2: int
    k: int
    bound: int
    min_genus: Optional[int]
    d1: Optional[int]
    d2: Optional[int]
    case: Optional[str]
    admissible_pairs: int
    quoted_closed_form: int
    quoted_degrees_genus: int


def min_genus_sweep(g1: int, g2: int, k: int, bound: int) -> MinGenusSweep:
    """
    Smallest genus over every degree pair up to `bound` that the
    product-surface criterion admits.

    The closed form 6k^2 + 17k + 13 and the genus at the degrees it is quoted
    for (d1 = 3k + 3, d2 = 2k + 3, with g1 = 0, g2 = 2) are returned alongside
    for comparison; they are not used to pick the minimum.
    """
    hits = surjective_genera(g1, g2, k, bound)
    a, b, c = QUOTED_MIN_GENUS["coefficients"]
    quoted = a * k * k + b * k + c
    qd1 = QUOTED_MIN_GENUS["d1"][0] * k + QUOTED_MIN_GENUS["d1"][1]
    qd2 = QUOTED_MIN_GENUS["d2"][0] * k + QUOTED_MIN_GENUS["d2"][1]
    quoted_degrees = product_genus(0, 2, qd1, qd2)
    if not hits:
        log.info("no admissible degree pair up to %d for g1=%d, g2=%d, k=%d", bound, g1, g2, k)
        return MinGenusSweep(g1, g2, k, bound, None, None, None, None, 0, quoted, quoted_degrees)
    best = min(hits, key=lambda h: (h[3], h[0], h[1]))
    return MinGenusSweep(
        g1=g1,
        g2=g2,
        k=k,
        bound=bound,
        min_genus=best[3],
        d1=best[0],
        d2=best[1],
        case=best[2],
        admissible_pairs=len(hits),
        quoted_closed_form=quoted,
        quoted_degrees_genus=quoted_degrees,
    )
