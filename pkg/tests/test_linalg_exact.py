from fractions import Fraction

import numpy as np
import pytest

from wahlrank.engine.linalg import (
    ExactMatrix,
    kernel_basis,
    rank,
    SparseEchelon,
    integer_row_dicts,
    rank_mod_p,
    restricted_rank_mod_p,
    rref,
    same_rowspace,
)
from wahlrank.errors import BadPrime, DimensionMismatch


def random_integer_matrix(seed: int, rows: int, cols: int, bound: int = 4) -> ExactMatrix:
    rng = np.random.default_rng(seed)
    data = rng.integers(-bound, bound + 1, size=(rows, cols))
    return ExactMatrix.from_rows([[int(v) for v in r] for r in data])


def low_rank_matrix(seed: int, rows: int, cols: int, r: int) -> ExactMatrix:
    """Product of random rows x r and r x cols factors (rank <= r)."""
    left = random_integer_matrix(seed, rows, r)
    right = random_integer_matrix(seed + 1000, r, cols)
    return left.matmul(right)


def test_kernel_of_small_integer_matrix():
    m = ExactMatrix.from_rows([[2, 1, 3], [4, 1, 5]])

    kernel = kernel_basis(m)

    assert kernel.to_rows() == [[1, 1, -1]]
    assert rank(m) == 2


def test_kernel_rows_are_primitive_with_positive_lead():
    m = ExactMatrix.from_rows([[1, 2]])

    assert kernel_basis(m).to_rows() == [[2, -1]]


def test_rank_of_zero_and_identity():
    assert rank(ExactMatrix.zeros(3, 5)) == 0
    assert rank(ExactMatrix.identity(4)) == 4
    assert kernel_basis(ExactMatrix.identity(4)).rows == 0
    assert kernel_basis(ExactMatrix.zeros(2, 3)) == ExactMatrix.identity(3)


def test_rank_with_rational_entries():
    m = ExactMatrix.from_rows([["1/2", "1/3"], ["1/4", "1/6"]])
    assert rank(m) == 1

    m = ExactMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 5), Fraction(1, 7)]])
    assert rank(m) == 2


def test_floats_are_refused():
    with pytest.raises(ValueError):
        ExactMatrix.from_rows([[0.5, 1]])


@pytest.mark.parametrize("seed", range(6))
def test_rank_equals_rank_of_transpose(seed):
    m = low_rank_matrix(seed, 7, 9, 3 + seed % 3)
    assert rank(m) == rank(m.transpose())


@pytest.mark.parametrize("seed", range(6))
def test_kernel_is_annihilated_and_has_full_nullity(seed):
    m = low_rank_matrix(seed, 6, 10, 4)

    kernel = kernel_basis(m)

    assert kernel.rows == m.cols - rank(m)
    assert m.matmul(kernel.transpose()).is_zero()
    assert rank(kernel) == kernel.rows


def test_matmul_with_fractions_and_shapes():
    a = ExactMatrix.from_rows([["1/2", 0], [1, 3]])
    b = ExactMatrix.from_rows([[2, 4], [0, "1/3"]])

    assert a.matmul(b).to_rows() == [[1, 2], [2, 5]]
    with pytest.raises(DimensionMismatch):
        a.matmul(ExactMatrix.identity(3))


def test_rank_mod_p_drops_on_multiples_of_p():
    m = ExactMatrix.from_rows([[7, 0], [0, 1]])

    assert rank_mod_p(m, 7) == 1
    assert rank(m) == 2


def test_rank_mod_p_never_exceeds_exact_rank():
    for seed in range(4):
        m = low_rank_matrix(seed, 8, 8, 5)
        for p in (2, 3, 10007):
            assert rank_mod_p(m, p) <= rank(m)
        assert rank_mod_p(m, 1000003) == rank(m)


def test_rank_mod_p_rejects_denominator_multiples_and_non_primes():
    m = ExactMatrix.from_rows([["1/7", 1]])

    with pytest.raises(BadPrime):
        rank_mod_p(m, 7)
    with pytest.raises(BadPrime):
        rank_mod_p(m, 15)
    with pytest.raises(BadPrime):
        rank_mod_p(m, 2**31 + 11)
    assert rank_mod_p(m, 11) == 1


def test_reduced_matrix_reports_its_mode():
    m = ExactMatrix.from_rows([[3, 5]]).reduce_mod(3)

    assert m.mode == "mod-p(3)"
    assert m.to_rows() == [[0, 2]]
    assert rank(m) == 1


def test_same_rowspace():
    a = ExactMatrix.from_rows([[1, 0, 1], [0, 1, 1]])
    b = ExactMatrix.from_rows([[1, 1, 2], [1, -1, 0]])
    c = ExactMatrix.from_rows([[1, 0, 0], [0, 1, 1]])

    assert same_rowspace(a, b)
    assert not same_rowspace(a, c)
    assert not same_rowspace(a, a.select_rows([0]))
    with pytest.raises(DimensionMismatch):
        same_rowspace(a, ExactMatrix.identity(2))


def test_rref_spans_the_same_rows():
    m = low_rank_matrix(3, 5, 6, 3)

    reduced = rref(m)

    assert reduced.rows == rank(m)
    assert same_rowspace(reduced, m)
    for i in range(reduced.rows):
        lead = next(v for v in reduced.row(i) if v)
        assert lead == 1


def test_stack_checks_columns():
    a = ExactMatrix.identity(2)

    assert a.stack(a).shape == (4, 2)
    with pytest.raises(DimensionMismatch):
        a.stack(ExactMatrix.identity(3))
    with pytest.raises(DimensionMismatch):
        a.stack(a.reduce_mod(5))


def test_matrix_is_immutable():
    m = ExactMatrix.identity(2)
    data = m.array()
    data[0, 0] = Fraction(5)

    assert m[0, 0] == 1
    with pytest.raises(ValueError):
        m._data[0, 0] = Fraction(5)


def sparse_rows(m: ExactMatrix):
    entries = {(i, j): m[i, j] for i in range(m.rows) for j in range(m.cols) if m[i, j]}
    return integer_row_dicts(m.rows, entries)


@pytest.mark.parametrize("seed", range(6))
def test_sparse_echelon_rank_matches_bareiss(seed):
    m = low_rank_matrix(seed, 9, 7, 2 + seed % 4)
    echelon = SparseEchelon(m.cols)

    independent = echelon.extend(sparse_rows(m))

    assert independent == echelon.rank == rank(m)
    assert len(echelon.pivot_cols) == rank(m)


def test_sparse_echelon_keeps_dependent_rows_out():
    echelon = SparseEchelon(3)

    assert echelon.insert({0: 2, 1: 4})
    assert not echelon.insert({0: 3, 1: 6})
    assert echelon.insert({1: 1, 2: 5})
    assert not echelon.insert({})
    assert echelon.pivot_cols == [0, 1]
    with pytest.raises(DimensionMismatch):
        echelon.insert({3: 1})


def test_integer_row_dicts_clear_denominators_per_row():
    rows = integer_row_dicts(2, {(0, 0): Fraction(1, 2), (0, 2): Fraction(1, 3), (1, 1): 0})

    assert rows == [{0: 3, 2: 2}, {}]


def test_from_entries_builds_exact_and_residue_matrices():
    entries = {(0, 1): Fraction(1, 2), (1, 0): 3}

    exact = ExactMatrix.from_entries(2, 2, entries)
    residues = ExactMatrix.from_entries(2, 2, entries, prime=7)

    assert exact.to_rows() == [[0, Fraction(1, 2)], [3, 0]]
    assert residues.to_rows() == [[0, 4], [3, 0]]
    assert residues.prime == 7
    with pytest.raises(BadPrime):
        ExactMatrix.from_entries(2, 2, entries, prime=2)


@pytest.mark.parametrize("seed", range(4))
def test_restricted_rank_mod_p_is_a_rank_difference(seed):
    conditions = low_rank_matrix(seed, 5, 10, 3)
    target = random_integer_matrix(seed + 50, 6, 10)

    out = restricted_rank_mod_p(conditions, target, 1000003)

    assert out.base_rank == rank_mod_p(conditions, 1000003)
    assert out.stacked_rank == rank_mod_p(conditions.stack(target), 1000003)
    assert out.rank == out.stacked_rank - out.base_rank
    assert len(out.base_pivot_rows) == out.base_rank
    assert len(out.target_pivot_rows) == out.rank
    assert rank(conditions.select_rows(list(out.base_pivot_rows))) == out.base_rank


def test_restricted_rank_mod_p_with_no_conditions():
    target = ExactMatrix.from_rows([[1, 2], [2, 4]])

    out = restricted_rank_mod_p(ExactMatrix.zeros(0, 2), target, 10007)

    assert (out.base_rank, out.rank, out.target_pivot_rows) == (0, 1, (0,))
    with pytest.raises(DimensionMismatch):
        restricted_rank_mod_p(ExactMatrix.zeros(0, 3), target, 10007)
