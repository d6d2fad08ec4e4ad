#!/usr/bin/env python3
"""
Higher Gaussian maps of the canonical bundle of a smooth plane curve.

With the canonical basis P_a (monomials of degree <= d - 3), a tensor
T = sum c_ab P_a (x) P_b is a section of K_C boxed with K_C on C x C. Write
f_a = P_a / F_y so that P_a dx / F_y are the canonical forms. Expanding the
second factor along the diagonal, T vanishes to order > m exactly when

    sum c_ab f_a D^m(f_b) = 0 on C,   D = d/dx along the curve,

and the k-th Gaussian map sends a tensor in the order-k domain to that sum
for m = k (up to a nonzero constant). Using D^m(P / F_y) = R(m)(P) / F_y^(2m+1)
and clearing the unit F_y^(2m+2), the m-th condition is the polynomial

    sum c_ab P_a R(m)(P_b)  reduced modulo F.

This twisted map differs from the k-th Gaussian map by multiplication by
F_y^k, injective on the quotient ring, so ranks and kernels agree.

Business Rules:
- domain of order k: chain (kernel of each condition restricted to the
  previous kernel) or direct (kernel of all conditions stacked)
- rank of the k-th map: rank of the k-th twisted matrix on the domain
- corank against h0(K^(k+2)); predictions only for 0 <= k <= (d - 6) / 2
- k > d - 3 is computed but logged as outside the chain framing
- modular modes work from S (conditions m < k stacked) and M (order k):
  the rank on the domain is rank [S; M] - rank S, mod p for the screen and
  over the integers for the confirmation
"""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from wahlrank.engine.criteria import plane_rank_formula
from wahlrank.engine.curve import (
    PlaneCurve,
    canonical_basis,
    graded_monomials,
    pluricanonical_basis,
    pluricanonical_dim,
)
from wahlrank.engine.linalg import (
    ExactMatrix,
    ModularRestriction,
    SparseEchelon,
    check_prime,
    integer_row_dicts,
    kernel_basis,
    rank,
    restricted_rank_mod_p,
    stack_all,
)
from wahlrank.engine.policy import DEFAULT_PRIMES
from wahlrank.engine.polyring import BiPoly, Monomial, normal_form, r_operator, shift
from wahlrank.errors import (
    BadPrime,
    DimensionMismatch,
    InternalInconsistency,
    ModularDisagreement,
)

log = logging.getLogger(__name__)

DOMAIN_METHODS = ("chain", "direct")
ARITHMETIC_MODES = ("exact", "modular", "modular-then-exact")


@dataclass(frozen=True)
class TensorElement:
    """
    Element sum c_ab P_a (x) P_b of H0(K_C) (x) H0(K_C).

    coeffs[a][b] multiplies P_a (x) P_b in the canonical basis.
    """

    genus: int
    coeffs: Tuple[Tuple[Fraction, ...], ...]
    curve: Optional[PlaneCurve] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if len(self.coeffs) != self.genus or any(len(r) != self.genus for r in self.coeffs):
            raise ValueError(f"tensor coefficients must be {self.genus}x{self.genus}")

    def row(self) -> List[Fraction]:
        """Flattened coefficients, index a * g + b."""
        return [c for r in self.coeffs for c in r]

    def transpose(self) -> "TensorElement":
        g = self.genus
        return TensorElement(
            g, tuple(tuple(self.coeffs[b][a] for b in range(g)) for a in range(g)), self.curve
        )

    def is_zero(self) -> bool:
        return not any(self.row())


def tensor_from_row(
    row: Sequence[Any], genus: int, curve: Optional[PlaneCurve] = None
) -> TensorElement:
    """Unflatten a row of g^2 coefficients."""
    if len(row) != genus * genus:
        raise ValueError(f"expected {genus * genus} coefficients, got {len(row)}")
    vals = [Fraction(v) for v in row]
    coeffs = tuple(tuple(vals[a * genus : (a + 1) * genus]) for a in range(genus))
    return TensorElement(genus, coeffs, curve)


def symmetry_split(t: TensorElement) -> Tuple[TensorElement, TensorElement]:
    """(symmetric part, antisymmetric part): S_ab = (c_ab + c_ba)/2, A_ab = (c_ab - c_ba)/2."""
    g = t.genus
    c = t.coeffs
    sym = tuple(tuple((c[a][b] + c[b][a]) / 2 for b in range(g)) for a in range(g))
    anti = tuple(tuple((c[a][b] - c[b][a]) / 2 for b in range(g)) for a in range(g))
    return TensorElement(g, sym, t.curve), TensorElement(g, anti, t.curve)


@dataclass(frozen=True)
class DomainSubspace:
    """Basis (rows = flattened tensors) of the tensors vanishing to order k."""

    k: int
    basis: ExactMatrix
    method: str

    @property
    def dim(self) -> int:
        return self.basis.rows


@dataclass(frozen=True)
class GaussReport:
    """One rank computation; field order is the report order."""

    d: int
    k: int
    genus: int
    domain_dim: int
    rank: int
    codomain_dim: int
    corank: int
    predicted_rank: Optional[int]
    predicted_corank: Optional[int]
    in_theorem_range: bool
    match: bool
    arithmetic: str

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class Arithmetic:
    """
    How ranks are computed.

    Attributes:
        mode: "exact", "modular" or "modular-then-exact"
        primes: screening primes for the modular modes
    """

    mode: str = "exact"
    primes: Tuple[int, ...] = DEFAULT_PRIMES

    def __post_init__(self):
        if self.mode not in ARITHMETIC_MODES:
            raise ValueError(f"arithmetic mode must be one of {ARITHMETIC_MODES}: {self.mode!r}")
        if self.mode != "exact":
            if not self.primes:
                raise ValueError("modular arithmetic needs at least one prime")
            for p in self.primes:
                check_prime(p)

    def label(self) -> str:
        if self.mode == "exact":
            return "exact"
        screen = "mod-p:" + ",".join(str(p) for p in self.primes)
        return screen + "+exact" if self.mode == "modular-then-exact" else screen


EXACT = Arithmetic()


# Matrix construction
def operator_degree_bound(d: int, m: int) -> int:
    """Total degree bound of P_a R(m)(P_b): 2(d - 3) + m(2d - 3)."""
    return 2 * (d - 3) + m * (2 * d - 3)


def codomain_monomials(curve: PlaneCurve, m: int) -> List[Monomial]:
    """Reduced monomials (y-degree < d) up to the operator degree bound."""
    return graded_monomials(operator_degree_bound(curve.d, m), y_bound=curve.d)


def _reduced_y_shifts(q: BiPoly, f: BiPoly, count: int) -> List[BiPoly]:
    """NF(y^j q) for j = 0..count, each from the previous one."""
    out = [q]
    for _ in range(count):
        out.append(normal_form(shift(out[-1], 0, 1), f))
    return out


@dataclass(frozen=True, eq=False)
class SparseBlock:
    """
    Nonzero entries of a matrix, built once and read back as an exact
    matrix, as a residue matrix or as sparse integer rows.
    """

    rows: int
    cols: int
    entries: Mapping[Tuple[int, int], Fraction]

    def exact(self) -> ExactMatrix:
        return ExactMatrix.from_entries(self.rows, self.cols, self.entries)

    def mod_p(self, p: int) -> ExactMatrix:
        return ExactMatrix.from_entries(self.rows, self.cols, self.entries, prime=p)

    def integer_rows(self) -> List[Dict[int, int]]:
        return integer_row_dicts(self.rows, self.entries)


def stack_blocks(blocks: Sequence[SparseBlock], cols: int) -> SparseBlock:
    """Rows of each block in turn (an empty list gives a 0-row block)."""
    entries: Dict[Tuple[int, int], Fraction] = {}
    offset = 0
    for block in blocks:
        if block.cols != cols:
            raise DimensionMismatch(f"cannot stack {block.cols} columns on {cols} columns")
        for (i, j), v in block.entries.items():
            entries[(offset + i, j)] = v
        offset += block.rows
    return SparseBlock(offset, cols, entries)


def twisted_block(curve: PlaneCurve, m: int) -> SparseBlock:
    """
    Entries of T -> NF(sum c_ab P_a R(m)(P_b), F).

    Columns are indexed a * g + b, rows by codomain_monomials(curve, m).
    Since reduction is Q[x]-linear, the column of P_a = x^i y^j is
    x^i NF(y^j NF(R(m)(P_b))).
    """
    if m < 0:
        raise ValueError(f"m out of range [0,inf): {m}")
    f = curve.F
    mons = graded_monomials(curve.d - 3)
    g = len(mons)
    index = {mono: i for i, mono in enumerate(codomain_monomials(curve, m))}
    entries: Dict[Tuple[int, int], Fraction] = {}
    max_j = curve.d - 3
    for b, pb in enumerate(canonical_basis(curve).polys):
        q = normal_form(r_operator(pb, f, m), f)
        shifted = _reduced_y_shifts(q, f, max_j)
        for a, (i, j) in enumerate(mons):
            col = a * g + b
            for (u, v), c in shifted[j].items():
                try:
                    entries[(index[(u + i, v)], col)] = c
                except KeyError:
                    raise InternalInconsistency(
                        f"image monomial x^{u + i} y^{v} outside the codomain for m={m}"
                    ) from None
    log.debug(
        "twisted block d=%d m=%d: %dx%d, %d nonzero", curve.d, m, len(index), g * g, len(entries)
    )
    return SparseBlock(len(index), g * g, entries)


def twisted_gauss_matrix(curve: PlaneCurve, m: int) -> ExactMatrix:
    """Exact matrix of the m-th twisted map; see twisted_block."""
    return twisted_block(curve, m).exact()


def condition_matrices(curve: PlaneCurve, k: int) -> List[ExactMatrix]:
    """Twisted matrices for m = 0..k-1 (the order-k vanishing conditions)."""
    return [twisted_gauss_matrix(curve, m) for m in range(k)]


def _restrict(m: ExactMatrix, basis: ExactMatrix) -> ExactMatrix:
    """Matrix of m on the subspace spanned by the rows of basis."""
    return m.matmul(basis.transpose())


def domain_subspace(
    curve: PlaneCurve,
    k: int,
    method: str = "chain",
    conditions: Optional[Sequence[ExactMatrix]] = None,
) -> DomainSubspace:
    """
    Basis of the tensors vanishing to order k along the diagonal.

    Args:
        curve: plane curve
        k: vanishing order (k >= 0)
        method: "chain" intersects kernels one order at a time; "direct"
            takes the kernel of all conditions at once
        conditions: precomputed condition_matrices(curve, k), optional
    """
    if k < 0:
        raise ValueError(f"k out of range [0,inf): {k}")
    if method not in DOMAIN_METHODS:
        raise ValueError(f"domain method must be one of {DOMAIN_METHODS}: {method!r}")
    g = curve.genus
    conds = list(conditions) if conditions is not None else condition_matrices(curve, k)
    if method == "direct":
        basis = kernel_basis(stack_all(conds, g * g)) if conds else ExactMatrix.identity(g * g)
    else:
        basis = ExactMatrix.identity(g * g)
        for m, cond in enumerate(conds):
            kernel = kernel_basis(_restrict(cond, basis))
            basis = kernel.matmul(basis)
            log.debug("chain step m=%d: domain dimension %d", m, basis.rows)
    return DomainSubspace(k=k, basis=basis, method=method)


def _modular_screen(
    conditions: SparseBlock, target: SparseBlock, primes: Sequence[int], what: str
) -> Dict[int, ModularRestriction]:
    """
    Restricted ranks of target on ker(conditions) modulo each prime.

    A prime dividing a denominator is logged and skipped. A prime under which
    the conditions have lower rank than under another prime is dropped too,
    so all kept primes share the largest rank of the conditions.

    Raises:
        BadPrime: no prime was usable
    """
    screen: Dict[int, ModularRestriction] = {}
    for p in primes:
        try:
            screen[p] = restricted_rank_mod_p(conditions.mod_p(p), target.mod_p(p), p)
        except BadPrime as exc:
            log.warning("%s: skipping prime %d: %s", what, p, exc)
    if not screen:
        log.error("%s: every screening prime is bad", what)
        raise BadPrime(f"{what}: none of the primes {list(primes)} is usable")
    top = max(s.base_rank for s in screen.values())
    for p in [p for p, s in screen.items() if s.base_rank < top]:
        log.warning(
            "%s: conditions have rank %d mod %d but %d mod another prime; skipping %d",
            what,
            screen[p].base_rank,
            p,
            top,
            p,
        )
        del screen[p]
    return screen


def _guided_order(rows: Sequence[Dict[int, int]], first: Sequence[int]) -> List[Dict[int, int]]:
    chosen = set(first)
    return [rows[i] for i in first] + [r for i, r in enumerate(rows) if i not in chosen]


def exact_restricted_rank(
    conditions: SparseBlock,
    target: SparseBlock,
    guide: Optional[ModularRestriction] = None,
) -> Tuple[int, int]:
    """
    Exact (rank S, rank of M on ker S) from one sparse integer echelon.

    rank of M on ker S is rank [S; M] - rank S. With a modular guide the rows
    that carried pivots mod p go in first, so the other rows are only reduced.
    """
    echelon = SparseEchelon(target.cols)
    base_first = guide.base_pivot_rows if guide is not None else ()
    target_first = guide.target_pivot_rows if guide is not None else ()
    base = echelon.extend(_guided_order(conditions.integer_rows(), base_first))
    extra = echelon.extend(_guided_order(target.integer_rows(), target_first))
    log.debug("exact echelon: conditions rank %d, restricted rank %d", base, extra)
    return base, extra


def _screen_against_exact(screen: Dict[int, int], exact: int, what: str) -> None:
    bad = [p for p, r in screen.items() if r != exact]
    for p in bad:
        log.warning("%s: rank mod %d is %d, exact rank is %d", what, p, screen[p], exact)
    if bad and len(bad) == len(screen):
        log.error("%s: every screening prime disagrees with the exact rank %d", what, exact)
        raise ModularDisagreement(f"{what}: all primes {sorted(screen)} disagree with exact rank {exact}")


def gamma_rank(
    curve: PlaneCurve,
    k: int,
    arithmetic: Arithmetic = EXACT,
    method: str = "chain",
) -> GaussReport:
    """
    Rank and corank of the k-th Gaussian map of the canonical bundle.

    Args:
        curve: plane curve
        k: order (k >= 0)
        arithmetic: exact, modular (largest rank over the primes) or
            modular-then-exact (screen, then an exact echelon seeded with the
            modular pivot rows)
        method: domain construction for the exact mode

    Returns:
        GaussReport with the prediction filled in when 0 <= 2k <= d - 6.
    """
    if k < 0:
        raise ValueError(f"k out of range [0,inf): {k}")
    if method not in DOMAIN_METHODS:
        raise ValueError(f"domain method must be one of {DOMAIN_METHODS}: {method!r}")
    d = curve.d
    if k > d - 3:
        log.warning("k=%d exceeds d-3=%d for d=%d: result is outside the chain framing", k, d - 3, d)
    what = f"d={d} k={k}"
    blocks = [twisted_block(curve, m) for m in range(k + 1)]
    target = blocks[-1]

    if arithmetic.mode == "exact":
        conds = [b.exact() for b in blocks[:-1]]
        domain = domain_subspace(curve, k, method, conditions=conds)
        domain_dim = domain.dim
        r = rank(_restrict(target.exact(), domain.basis)) if domain_dim else 0
    else:
        conditions = stack_blocks(blocks[:-1], target.cols)
        screen = _modular_screen(conditions, target, arithmetic.primes, what)
        ranks = {p: s.rank for p, s in screen.items()}
        log.debug("%s: modular screen %s", what, ranks)
        if arithmetic.mode == "modular":
            r = max(ranks.values())
            domain_dim = target.cols - next(iter(screen.values())).base_rank
        else:
            guide = max(screen.values(), key=lambda s: s.stacked_rank)
            base, r = exact_restricted_rank(conditions, target, guide)
            domain_dim = target.cols - base
            _screen_against_exact(ranks, r, what)

    codomain_dim = pluricanonical_dim(curve, k + 2)
    predicted_rank = predicted_corank = None
    in_range = 2 * k <= d - 6
    if in_range:
        formula = plane_rank_formula(d, k)
        predicted_rank = int(formula.rank)
        predicted_corank = int(formula.corank)
    corank = codomain_dim - r
    match = in_range and predicted_rank == r and predicted_corank == corank
    report = GaussReport(
        d=d,
        k=k,
        genus=curve.genus,
        domain_dim=domain_dim,
        rank=r,
        codomain_dim=codomain_dim,
        corank=corank,
        predicted_rank=predicted_rank,
        predicted_corank=predicted_corank,
        in_theorem_range=in_range,
        match=match,
        arithmetic=arithmetic.label(),
    )
    log.info("%s: rank %d, corank %d (%s)", what, r, corank, report.arithmetic)
    if in_range and not match:
        log.warning("%s: computed rank %d differs from predicted %d", what, r, predicted_rank)
    return report


# Self-tests of the machinery
def symmetric_subspace(g: int, sign: int) -> ExactMatrix:
    """
    Basis of the tensors with c_ba = sign * c_ab (sign = +1 or -1).

    Rows e_aa and e_ab + e_ba (a < b) for sign +1; e_ab - e_ba (a < b) for -1.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1: {sign}")
    rows = []
    for a in range(g):
        for b in range(a, g):
            if a == b and sign == -1:
                continue
            row = [0] * (g * g)
            row[a * g + b] = 1
            if a != b:
                row[b * g + a] = sign
            rows.append(row)
    return ExactMatrix.from_rows(rows, cols=g * g)


def parity_intersection(curve: PlaneCurve, k: int) -> ExactMatrix:
    """Tensors of symmetry sign (-1)^(k+1) that vanish to order k."""
    g = curve.genus
    sym = symmetric_subspace(g, (-1) ** (k + 1))
    conds = condition_matrices(curve, k)
    if not conds:
        return sym
    stacked = stack_all(conds, g * g)
    return kernel_basis(_restrict(stacked, sym)).matmul(sym)


def parity_kernel_check(curve: PlaneCurve, k: int) -> bool:
    """The k-th twisted map vanishes on the (-1)^(k+1)-symmetric part of its domain."""
    inter = parity_intersection(curve, k)
    if inter.rows == 0:
        return True
    return _restrict(twisted_gauss_matrix(curve, k), inter).is_zero()


def twist_matrix(curve: PlaneCurve, k: int) -> ExactMatrix:
    """
    Matrix of Q -> NF(F_y^k Q) on the reduced representatives of H0(K_C^(k+2)).

    Rows are indexed like twisted_gauss_matrix(curve, k).
    """
    f = curve.F
    twist = curve.fy**k
    index = {mono: i for i, mono in enumerate(codomain_monomials(curve, k))}
    mons = pluricanonical_basis(curve, k + 2).polys
    data = np.empty((len(index), len(mons)), dtype=object)
    data.fill(Fraction(0))
    for col, q in enumerate(mons):
        for mono, c in normal_form(twist * q, f).items():
            data[index[mono], col] = c
    return ExactMatrix(data)


def twist_is_injective(curve: PlaneCurve, k: int) -> bool:
    m = twist_matrix(curve, k)
    return rank(m) == m.cols
