#!/usr/bin/env python3
"""
Dense exact linear algebra over the rationals and over prime fields.

Matrices of the Gaussian maps have highly structured integer entries, so the
exact kernels work on integers: each row is scaled by the lcm of its
denominators (row scaling changes neither rank nor kernel) and eliminated
fraction-free. Rank uses one-step Bareiss elimination; kernel bases use the
fraction-free Gauss-Jordan variant, whose pivots all end up equal to a single
common denominator so that kernel vectors can be read off as integers.

Modular rank is an advisory fast path: rank mod p never exceeds the exact
rank, and equality holds for all but finitely many primes.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from sympy import isprime

from wahlrank.engine.scalars import denominator_lcm, integer_row, primitive_row, residue, to_rat
from wahlrank.errors import BadPrime, DimensionMismatch

log = logging.getLogger(__name__)

# Largest prime accepted by the int64 kernels: products of two residues must
# stay below 2**63.
MAX_PRIME = 2**31


class ExactMatrix:
    """
    Immutable dense matrix over Q (exact mode) or over F_p (mod-p mode).

    Attributes:
        rows: number of rows
        cols: number of columns
        prime: None in exact mode, otherwise the modulus p

    Exact entries are Fractions held in a read-only numpy object array;
    mod-p entries are residues in [0, p) held in a read-only int64 array.
    """

    __slots__ = ("rows", "cols", "prime", "_data")

    def __init__(self, data: np.ndarray, prime: Optional[int] = None):
        if data.ndim != 2:
            raise DimensionMismatch(f"expected a 2-d array, got shape {data.shape}")
        data = data.copy()
        data.flags.writeable = False
        self.rows, self.cols = data.shape
        self.prime = prime
        self._data = data

    # Construction
    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[Any]], cols: Optional[int] = None
    ) -> "ExactMatrix":
        """
        Build an exact matrix from nested sequences of ints, Fractions or
        "p/q" strings.

        Args:
            rows: row-major entries
            cols: column count, required only when `rows` is empty
        """
        rows = [list(r) for r in rows]
        width = len(rows[0]) if rows else (cols or 0)
        if cols is not None and rows and width != cols:
            raise DimensionMismatch(f"rows have {width} entries, expected {cols}")
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged rows")
        data = np.empty((len(rows), width), dtype=object)
        for i, r in enumerate(rows):
            for j, v in enumerate(r):
                data[i, j] = to_rat(v)
        return cls(data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        data = np.empty((rows, cols), dtype=object)
        data.fill(Fraction(0))
        return cls(data)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        data = np.empty((n, n), dtype=object)
        data.fill(Fraction(0))
        for i in range(n):
            data[i, i] = Fraction(1)
        return cls(data)

    @classmethod
    def from_integers(cls, data: np.ndarray) -> "ExactMatrix":
        """Wrap a numpy array of Python ints as an exact matrix."""
        out = np.empty(data.shape, dtype=object)
        for idx, v in np.ndenumerate(data):
            out[idx] = Fraction(int(v))
        return cls(out)

    @classmethod
    def from_entries(
        cls,
        rows: int,
        cols: int,
        entries: Mapping[Tuple[int, int], Any],
        prime: Optional[int] = None,
    ) -> "ExactMatrix":
        """
        Build a matrix from its nonzero entries {(i, j): value}.

        With a prime the entries are reduced straight into an int64 residue
        array, so no object array is ever materialised.

        Raises:
            BadPrime: the prime divides the denominator of an entry
        """
        if prime is None:
            data = np.empty((rows, cols), dtype=object)
            data.fill(Fraction(0))
            for (i, j), v in entries.items():
                data[i, j] = to_rat(v)
            return cls(data)
        check_prime(prime)
        data = np.zeros((rows, cols), dtype=np.int64)
        for (i, j), v in entries.items():
            data[i, j] = residue(to_rat(v), prime)
        return cls(data, prime)

    # Views
    @property
    def mode(self) -> str:
        """"exact" or "mod-p(<p>)"."""
        return "exact" if self.prime is None else f"mod-p({self.prime})"

    @property
    def entries(self) -> Tuple[Any, ...]:
        """Row-major entries."""
        return tuple(self._data.ravel().tolist())

    def to_rows(self) -> List[List[Any]]:
        return self._data.tolist()

    def array(self) -> np.ndarray:
        """Writable copy of the underlying array."""
        return self._data.copy()

    def row(self, i: int) -> List[Any]:
        return self._data[i].tolist()

    def __getitem__(self, idx: Tuple[int, int]) -> Any:
        return self._data[idx]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def is_zero(self) -> bool:
        return not any(self._data.ravel().tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.prime == other.prime
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.shape, self.prime, self.entries))

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols}, {self.mode})"

    # Structural operations
    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self._data.T, self.prime)

    def stack(self, other: "ExactMatrix") -> "ExactMatrix":
        """Rows of self followed by rows of other."""
        if self.cols != other.cols:
            raise DimensionMismatch(
                f"cannot stack {self.cols} columns on {other.cols} columns"
            )
        if self.prime != other.prime:
            raise DimensionMismatch("cannot stack matrices of different modes")
        return ExactMatrix(np.vstack([self._data, other._data]), self.prime)

    def select_rows(self, indices: Sequence[int]) -> "ExactMatrix":
        data = self._data[list(indices)] if indices else self._data[:0]
        return ExactMatrix(data, self.prime)

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        """
        Matrix product self · other.

        Integral exact matrices are multiplied as Python ints (the common case
        for kernel bases and twisted Gaussian matrices). Each output row only
        touches the rows of `other` selected by the nonzero entries of the
        corresponding row of self, so sparse left factors are cheap.
        """
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        if self.prime is not None or other.prime is not None:
            if self.prime != other.prime:
                raise DimensionMismatch("cannot multiply matrices of different modes")
            p = self.prime
            out = np.zeros((self.rows, other.cols), dtype=np.int64)
            for j in range(self.cols):
                out = (out + np.outer(self._data[:, j], other._data[j])) % p
            return ExactMatrix(out, p)
        left = _integral_or_none(self._data)
        right = _integral_or_none(other._data)
        integral = left is not None and right is not None
        if not integral:
            left, right = self._data, other._data
        out = np.empty((self.rows, other.cols), dtype=object)
        for i in range(self.rows):
            nz = [j for j, v in enumerate(left[i].tolist()) if v]
            if nz:
                out[i, :] = left[i, nz].dot(right[nz, :])
            else:
                out[i, :] = 0
        return ExactMatrix.from_integers(out) if integral else _fraction_matrix(out)

    def reduce_mod(self, p: int) -> "ExactMatrix":
        """
        Reduce an exact matrix modulo p.

        Raises:
            BadPrime: p is not a usable prime or divides a denominator
        """
        check_prime(p)
        if self.prime is not None:
            if self.prime != p:
                raise BadPrime(f"matrix is already reduced modulo {self.prime}")
            return self
        out = np.zeros(self.shape, dtype=np.int64)
        for idx, v in np.ndenumerate(self._data):
            if v:
                out[idx] = residue(v, p)
        return ExactMatrix(out, p)


def check_prime(p: int) -> None:
    """Raise BadPrime unless p is a prime the int64 kernels can handle."""
    if not isinstance(p, int) or p < 2 or p >= MAX_PRIME or not isprime(p):
        raise BadPrime(f"{p} is not a prime below 2**31")


def stack_all(matrices: Iterable[ExactMatrix], cols: int) -> ExactMatrix:
    """Stack any number of matrices with `cols` columns (empty stack allowed)."""
    out = ExactMatrix.zeros(0, cols)
    for m in matrices:
        out = out.stack(m)
    return out


def _fraction_matrix(data: np.ndarray) -> ExactMatrix:
    out = np.empty(data.shape, dtype=object)
    for idx, v in np.ndenumerate(data):
        out[idx] = v if isinstance(v, Fraction) else Fraction(v)
    return ExactMatrix(out)


def _integral_or_none(data: np.ndarray) -> Optional[np.ndarray]:
    """Object array of ints when every Fraction is integral, else None."""
    out = np.empty(data.shape, dtype=object)
    for idx, v in np.ndenumerate(data):
        if v.denominator != 1:
            return None
        out[idx] = v.numerator
    return out


def _integer_matrix(m: ExactMatrix) -> np.ndarray:
    """
    Integer object array spanning the same rows as m.

    Each row is scaled by its denominator lcm and all-zero rows are dropped.
    """
    rows = [integer_row(r) for r in m.to_rows() if any(r)]
    out = np.empty((len(rows), m.cols), dtype=object)
    for i, r in enumerate(rows):
        out[i, :] = r
    return out


def _pick_pivot(column: np.ndarray) -> Optional[int]:
    """
    Index of the pivot in a column slice.

    Smallest nonzero magnitude wins; ties go to the lowest row index.
    """
    best = None
    best_mag = None
    for i, v in enumerate(column.tolist()):
        if v:
            mag = abs(v)
            if best_mag is None or mag < best_mag:
                best, best_mag = i, mag
    return best


def _bareiss_rank(a: np.ndarray) -> int:
    """Rank of an integer object array by one-step fraction-free elimination."""
    a = a.copy()
    nrows, ncols = a.shape
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pick = _pick_pivot(a[r:, c])
        if pick is None:
            continue
        if pick:
            a[[r, r + pick]] = a[[r + pick, r]]
        pivot = a[r, c]
        if r + 1 < nrows and c + 1 < ncols:
            a[r + 1 :, c + 1 :] = (
                pivot * a[r + 1 :, c + 1 :] - np.outer(a[r + 1 :, c], a[r, c + 1 :])
            ) // prev
        a[r + 1 :, c] = 0
        prev = pivot
        r += 1
    return r


def _fraction_free_rref(a: np.ndarray) -> Tuple[np.ndarray, List[int], int]:
    """
    Fraction-free Gauss-Jordan elimination.

    Returns:
        (reduced, pivots, den) where reduced has one row per pivot, every pivot
        entry equals den, and reduced / den is the reduced row echelon form.
    """
    a = a.copy()
    nrows, ncols = a.shape
    prev = 1
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pick = _pick_pivot(a[r:, c])
        if pick is None:
            continue
        if pick:
            a[[r, r + pick]] = a[[r + pick, r]]
        pivot = a[r, c]
        others = [i for i in range(nrows) if i != r]
        if others:
            a[others] = (pivot * a[others] - np.outer(a[others, c], a[r])) // prev
        prev = pivot
        pivots.append(c)
        r += 1
    return a[:r], pivots, prev


def rank(m: ExactMatrix) -> int:
    """
    Rank of m over its scalar field.

    Exact mode uses fraction-free elimination on the integer-scaled rows;
    mod-p mode eliminates in int64.
    """
    if m.prime is not None:
        return _rank_residues(m.array(), m.prime)
    a = _integer_matrix(m)
    if a.shape[0] == 0:
        return 0
    if a.shape[0] > a.shape[1]:
        a = a.T.copy()
    r = _bareiss_rank(a)
    log.debug("exact rank of %dx%d matrix: %d", m.rows, m.cols, r)
    return r


def kernel_basis(m: ExactMatrix) -> ExactMatrix:
    """
    Basis of the right kernel {v : m v = 0}.

    Rows are primitive integer vectors, one per non-pivot column in increasing
    column order; the row count is cols - rank(m).

    Raises:
        DimensionMismatch: m is a mod-p matrix
    """
    if m.prime is not None:
        raise DimensionMismatch("kernel_basis requires an exact matrix")
    a = _integer_matrix(m)
    if a.shape[0] == 0:
        return ExactMatrix.identity(m.cols)
    reduced, pivots, den = _fraction_free_rref(a)
    pivot_set = set(pivots)
    basis: List[List[int]] = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [0] * m.cols
        v[f] = den
        for i, p in enumerate(pivots):
            v[p] = -reduced[i, f]
        basis.append(primitive_row(v))
    log.debug(
        "kernel of %dx%d matrix: rank %d, nullity %d",
        m.rows,
        m.cols,
        len(pivots),
        len(basis),
    )
    out = np.empty((len(basis), m.cols), dtype=object)
    for i, v in enumerate(basis):
        out[i, :] = v
    return ExactMatrix.from_integers(out)


def _echelon_residues(a: np.ndarray, p: int) -> Tuple[np.ndarray, List[int], List[int]]:
    """
    Row echelon form of an int64 residue array modulo p.

    Only the rows with a nonzero entry in the pivot column are updated, and
    only from the pivot column on.

    Returns:
        (echelon, pivot_cols, pivot_rows): one echelon row per pivot, scaled
        to 1 in its pivot column; pivot_rows are indices into the input.
    """
    a = a.astype(np.int64) % p
    nrows, ncols = a.shape
    order = list(range(nrows))
    pivot_cols: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        pick = r + int(nz[0])
        if pick != r:
            a[[r, pick]] = a[[pick, r]]
            order[r], order[pick] = order[pick], order[r]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = (a[r, c:] * inv) % p
        below = r + 1 + np.flatnonzero(a[r + 1 :, c])
        if below.size:
            a[below, c:] = (a[below, c:] - np.outer(a[below, c], a[r, c:]) % p) % p
        pivot_cols.append(c)
        r += 1
    return a[:r].copy(), pivot_cols, order[:r]


def _reduce_residues(
    a: np.ndarray, echelon: np.ndarray, pivot_cols: Sequence[int], p: int
) -> np.ndarray:
    """Rows of a minus their components along an echelon form, modulo p."""
    a = a.astype(np.int64) % p
    for row, c in zip(echelon, pivot_cols):
        hit = np.flatnonzero(a[:, c])
        if hit.size:
            a[hit, c:] = (a[hit, c:] - np.outer(a[hit, c], row[c:]) % p) % p
    return a


def _rank_residues(a: np.ndarray, p: int) -> int:
    """Rank of an int64 residue array modulo p; pivots are the lowest rows."""
    return len(_echelon_residues(a, p)[1])


def rank_mod_p(m: ExactMatrix, p: int) -> int:
    """
    Rank of m reduced modulo the prime p.

    Always at most the exact rank; used as advisory confirmation and as a
    fast pre-screen.

    Raises:
        BadPrime: p divides a stored denominator, or is not a usable prime
    """
    reduced = m.reduce_mod(p)
    r = _rank_residues(reduced.array(), p)
    log.debug("rank mod %d of %dx%d matrix: %d", p, m.rows, m.cols, r)
    return r


@dataclass(frozen=True)
class ModularRestriction:
    """
    Rank of a target matrix on the right kernel of a condition matrix, mod p.

    Attributes:
        prime: the modulus
        base_rank: rank of the conditions S
        stacked_rank: rank of S stacked on the target M
        base_pivot_rows: rows of S that carry the pivots
        target_pivot_rows: rows of M that carry the further pivots
    """

    prime: int
    base_rank: int
    stacked_rank: int
    base_pivot_rows: Tuple[int, ...]
    target_pivot_rows: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.stacked_rank - self.base_rank


def restricted_rank_mod_p(
    conditions: ExactMatrix, target: ExactMatrix, p: int
) -> ModularRestriction:
    """
    rank_p([S; M]) and rank_p(S) with a single elimination of S.

    The target rows are reduced against the echelon form of S and only the
    remainder is eliminated.

    Raises:
        BadPrime: p divides a stored denominator, or is not a usable prime
        DimensionMismatch: column counts differ
    """
    if conditions.cols != target.cols:
        raise DimensionMismatch(f"{conditions.cols} columns vs {target.cols} columns")
    base = conditions.reduce_mod(p).array()
    top = target.reduce_mod(p).array()
    echelon, pivot_cols, base_rows = _echelon_residues(base, p)
    rest = _reduce_residues(top, echelon, pivot_cols, p)
    _echelon, more_cols, target_rows = _echelon_residues(rest, p)
    out = ModularRestriction(
        prime=p,
        base_rank=len(pivot_cols),
        stacked_rank=len(pivot_cols) + len(more_cols),
        base_pivot_rows=tuple(base_rows),
        target_pivot_rows=tuple(target_rows),
    )
    log.debug("mod %d: conditions rank %d, restricted rank %d", p, out.base_rank, out.rank)
    return out


def integer_row_dicts(
    rows: int, entries: Mapping[Tuple[int, int], Any]
) -> List[Dict[int, int]]:
    """
    Sparse integer rows {column: value} spanning the same rows as the entries.

    Each row is scaled by the lcm of its denominators.
    """
    out: List[Dict[int, Fraction]] = [{} for _ in range(rows)]
    for (i, j), v in entries.items():
        v = to_rat(v)
        if v:
            out[i][j] = v
    scaled: List[Dict[int, int]] = []
    for row in out:
        scale = denominator_lcm(row.values())
        scaled.append({j: int(v * scale) for j, v in row.items()})
    return scaled


def _primitive_dict(row: Dict[int, int]) -> Dict[int, int]:
    g = math.gcd(*row.values())
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


class SparseEchelon:
    """
    Incremental fraction-free row echelon form over the integers.

    Rows are dicts {column: int} without zero entries. Each stored row is
    primitive and keyed by its leading column; an inserted row is reduced
    leading column by leading column until it vanishes or starts a new pivot.
    """

    def __init__(self, cols: int):
        self.cols = cols
        self._rows: Dict[int, Dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivot_cols(self) -> List[int]:
        return sorted(self._rows)

    def insert(self, row: Mapping[int, int]) -> bool:
        """Add a row; True when it is independent of the rows already held."""
        v = {j: int(x) for j, x in row.items() if x}
        if any(j < 0 or j >= self.cols for j in v):
            raise DimensionMismatch(f"row has a column outside [0,{self.cols})")
        while v:
            lead = min(v)
            e = self._rows.get(lead)
            if e is None:
                self._rows[lead] = _primitive_dict(v)
                return True
            a, b = e[lead], v[lead]
            g = math.gcd(a, b)
            a, b = a // g, b // g
            out = {j: a * x for j, x in v.items()}
            for j, x in e.items():
                y = out.get(j, 0) - b * x
                if y:
                    out[j] = y
                else:
                    out.pop(j, None)
            v = _primitive_dict(out) if out else out
        return False

    def extend(self, rows: Iterable[Mapping[int, int]]) -> int:
        """Insert rows in order; returns how many were independent."""
        return sum(1 for r in rows if self.insert(r))


def same_rowspace(a: ExactMatrix, b: ExactMatrix) -> bool:
    """
    True iff a and b have the same row space.

    Decided by rank(a) = rank(b) = rank(a stacked on b).

    Raises:
        DimensionMismatch: column counts differ
    """
    if a.cols != b.cols:
        raise DimensionMismatch(f"{a.cols} columns vs {b.cols} columns")
    ra = rank(a)
    rb = rank(b)
    if ra != rb:
        return False
    return rank(a.stack(b)) == ra


def rref(m: ExactMatrix) -> ExactMatrix:
    """Reduced row echelon form over Q (zero rows removed)."""
    a = _integer_matrix(m)
    if a.shape[0] == 0:
        return ExactMatrix.zeros(0, m.cols)
    reduced, _pivots, den = _fraction_free_rref(a)
    out = np.empty(reduced.shape, dtype=object)
    for idx, v in np.ndenumerate(reduced):
        out[idx] = Fraction(v, den)
    return ExactMatrix(out)
