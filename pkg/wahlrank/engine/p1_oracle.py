"""
Gaussian maps of O(a) and O(b) on the projective line.

In the affine chart a section of O(a) is a polynomial of degree <= a, so a
section of O(a) boxed with O(b) on P1 x P1 is G(x, y) with deg_x G <= a and
deg_y G <= b. G vanishes to order k along the diagonal exactly when
(x - y)^k divides G, and then the k-th Gaussian map sends G = (x - y)^k H to
H(x, x), a section of O(a + b - 2k).

Everything here is plain polynomial division: no quotient ring is involved,
so it checks the diagonal-vanishing logic of the plane-curve code
independently.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Sequence, Tuple

import numpy as np

from wahlrank.engine.linalg import ExactMatrix, kernel_basis, rank
from wahlrank.engine.polyring import BiPoly, divide_y, substitute_diagonal
from wahlrank.errors import NotInDomain

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class P1Tensor:
    """coeffs[i][j] multiplies x^i y^j; shape (a + 1) x (b + 1)."""

    a: int
    b: int
    coeffs: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError(f"degrees must be >= 0: a={self.a}, b={self.b}")
        if len(self.coeffs) != self.a + 1 or any(len(r) != self.b + 1 for r in self.coeffs):
            raise ValueError(f"coefficients must be {self.a + 1}x{self.b + 1}")

    @classmethod
    def from_poly(cls, a: int, b: int, p: BiPoly) -> "P1Tensor":
        if p.deg_x > a or p.deg_y > b:
            raise ValueError(f"polynomial exceeds bidegree ({a}, {b})")
        coeffs = tuple(
            tuple(p.coefficient(i, j) for j in range(b + 1)) for i in range(a + 1)
        )
        return cls(a, b, coeffs)

    def poly(self) -> BiPoly:
        return BiPoly(
            {(i, j): c for i, r in enumerate(self.coeffs) for j, c in enumerate(r)}
        )

    def swap_factors(self) -> "P1Tensor":
        """G(y, x): exchange the two factors."""
        coeffs = tuple(
            tuple(self.coeffs[i][j] for i in range(self.a + 1)) for j in range(self.b + 1)
        )
        return P1Tensor(self.b, self.a, coeffs)


@dataclass(frozen=True)
class P1Rank:
    a: int
    b: int
    k: int
    domain_dim: int
    rank: int
    codomain_dim: int
    surjective: bool


def diagonal_power(k: int) -> BiPoly:
    """(x - y)^k."""
    return (BiPoly.x() - BiPoly.y()) ** k


def p1_gauss(g: P1Tensor, k: int) -> BiPoly:
    """
    k-th Gaussian map of a tensor vanishing to order k on the diagonal.

    Returns:
        H(x, x) where G = (x - y)^k H, a polynomial in x of degree
        <= a + b - 2k.

    Raises:
        NotInDomain: (x - y)^k does not divide G
    """
    if k < 0:
        raise ValueError(f"k out of range [0,inf): {k}")
    quotient, remainder = divide_y(g.poly(), diagonal_power(k))
    if not remainder.is_zero():
        raise NotInDomain(f"(x - y)^{k} does not divide the tensor")
    return substitute_diagonal(quotient)


def _monomials(a: int, b: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(a + 1) for j in range(b + 1)]


def _coefficient_matrix(polys: Sequence[BiPoly], rows: Sequence[Tuple[int, int]]) -> ExactMatrix:
    index = {m: i for i, m in enumerate(rows)}
    data = np.empty((len(rows), len(polys)), dtype=object)
    data.fill(Fraction(0))
    for col, p in enumerate(polys):
        for mono, c in p.items():
            data[index[mono], col] = c
    return ExactMatrix(data)


def p1_domain(a: int, b: int, k: int) -> ExactMatrix:
    """
    Basis (rows over the monomials x^i y^j) of the tensors divisible by (x - y)^k.

    The conditions are the coefficients of the remainder of each monomial
    divided by (x - y)^k.
    """
    mons = _monomials(a, b)
    if k == 0:
        return ExactMatrix.identity(len(mons))
    dp = diagonal_power(k)
    remainders = [divide_y(BiPoly.monomial(i, j), dp)[1] for i, j in mons]
    support = sorted({m for r in remainders for m in r.terms})
    return kernel_basis(_coefficient_matrix(remainders, support))


def p1_gauss_rank(a: int, b: int, k: int) -> P1Rank:
    """
    Rank of the k-th Gaussian map O(a) x O(b) -> O(a + b - 2k) on the line.

    Surjectivity is measured against max(a + b - 2k + 1, 0).
    """
    for name, v in (("a", a), ("b", b), ("k", k)):
        if v < 0:
            raise ValueError(f"{name} out of range [0,inf): {v}")
    mons = _monomials(a, b)
    dp = diagonal_power(k)
    domain = p1_domain(a, b, k)
    codomain_dim = max(a + b - 2 * k + 1, 0)
    r = 0
    if domain.rows and codomain_dim:
        images = [substitute_diagonal(divide_y(BiPoly.monomial(i, j), dp)[0]) for i, j in mons]
        # single monomials may reach degree a + b - k; on the domain those
        # terms cancel down to degree a + b - 2k
        top = max((p.deg_x for p in images), default=0)
        rows = [(n, 0) for n in range(max(top, 0) + 1)]
        image_matrix = _coefficient_matrix(images, rows)
        r = rank(image_matrix.matmul(domain.transpose()))
    surjective = r == codomain_dim
    log.debug("p1 a=%d b=%d k=%d: domain %d, rank %d / %d", a, b, k, domain.rows, r, codomain_dim)
    return P1Rank(
        a=a,
        b=b,
        k=k,
        domain_dim=domain.rows,
        rank=r,
        codomain_dim=codomain_dim,
        surjective=surjective,
    )


def independent_domain_dim(a: int, b: int, k: int) -> int:
    """(a+1)(b+1) - sum_{m<k} (a + b - 2m + 1): the domain size when a, b >= k."""
    return (a + 1) * (b + 1) - sum(a + b - 2 * m + 1 for m in range(k))
