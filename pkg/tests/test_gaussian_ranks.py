import logging
from fractions import Fraction

import pytest

from tests.test_curve_admissibility import fermat
from wahlrank.engine.curve import new_plane_curve
from wahlrank.engine.gaussian import (
    Arithmetic,
    SparseBlock,
    _modular_screen,
    _screen_against_exact,
    condition_matrices,
    domain_subspace,
    exact_restricted_rank,
    gamma_rank,
    stack_blocks,
    twisted_block,
    twisted_gauss_matrix,
)
from wahlrank.engine.linalg import ExactMatrix, rank, rank_mod_p, same_rowspace, stack_all
from wahlrank.engine.parser import parse_poly
from wahlrank.engine.policy import ACCEPTANCE_CASES, DEFAULT_PRIMES, SLOW_DEGREES
from wahlrank.errors import BadPrime, ModularDisagreement
from wahlrank.schema import keys


def acceptance_params():
    out = []
    for (d, k), expected in sorted(ACCEPTANCE_CASES.items()):
        marks = [pytest.mark.slow] if d in SLOW_DEGREES else []
        out.append(pytest.param(d, k, expected, marks=marks, id=f"d{d}-k{k}"))
    return out


@pytest.mark.parametrize("d, k, expected", acceptance_params())
def test_fermat_ranks_match_the_closed_form(d, k, expected):
    report = gamma_rank(fermat(d), k)

    assert (report.rank, report.corank) == expected
    assert report.in_theorem_range
    assert report.match
    assert (report.predicted_rank, report.predicted_corank) == expected
    assert report.genus == (d - 1) * (d - 2) // 2
    assert report.arithmetic == "exact"


@pytest.mark.parametrize("d", [4, 5, 6, 7])
def test_multiplication_map_is_onto_quadrics(d):
    report = gamma_rank(fermat(d), 0)
    g = report.genus

    assert report.domain_dim == g * g
    assert report.rank == 3 * (g - 1)
    assert report.corank == 0


@pytest.mark.parametrize("d, k, expected", [(6, 1, 73), (8, 1, 381)])
def test_domain_dimensions(d, k, expected):
    assert domain_subspace(fermat(d), k).dim == expected


def domain_grid():
    out = []
    for d in (6, 7, 8, 10):
        for k in range(1, min(d - 3, 3) + 1):
            marks = [pytest.mark.slow] if d in SLOW_DEGREES or k == 3 else []
            out.append(pytest.param(d, k, marks=marks, id=f"d{d}-k{k}"))
    return out


@pytest.mark.parametrize("d, k", domain_grid())
def test_chain_and_direct_domains_agree(d, k):
    chain = domain_subspace(fermat(d), k, "chain")
    direct = domain_subspace(fermat(d), k, "direct")

    assert chain.dim == direct.dim
    assert same_rowspace(chain.basis, direct.basis)


def test_domain_is_annihilated_by_every_lower_condition():
    c = fermat(6)
    domain = domain_subspace(c, 2)

    for m in range(2):
        assert twisted_gauss_matrix(c, m).matmul(domain.basis.transpose()).is_zero()


def test_domain_method_is_validated():
    with pytest.raises(ValueError):
        domain_subspace(fermat(5), 1, "sideways")
    with pytest.raises(ValueError):
        gamma_rank(fermat(5), -1)


def test_out_of_range_order_has_no_prediction():
    report = gamma_rank(fermat(7), 1)

    assert not report.in_theorem_range
    assert report.predicted_rank is None
    assert report.predicted_corank is None
    assert not report.match
    assert report.corank == report.codomain_dim - report.rank


def test_order_above_chain_framing_logs_warning(caplog):
    with caplog.at_level(logging.WARNING, logger="wahlrank"):
        report = gamma_rank(fermat(4), 2)

    assert report.codomain_dim == 7 * (report.genus - 1)
    assert any("outside the chain framing" in r.getMessage() for r in caplog.records)


def test_report_fields_follow_schema_order():
    report = gamma_rank(fermat(5), 0)

    assert list(report.as_dict()) == keys("plane")


def test_twisted_matrix_rank_mod_p_agrees_with_exact():
    m = twisted_gauss_matrix(fermat(6), 0)

    assert rank_mod_p(m, 10007) == rank(m) == 27


def test_modular_rank_matches_exact_in_range():
    modular = gamma_rank(fermat(8), 1, Arithmetic("modular"))

    assert (modular.domain_dim, modular.rank, modular.corank) == (381, 90, 10)
    assert modular.match
    assert modular.arithmetic.startswith("mod-p:1000003,")
    assert not modular.arithmetic.endswith("+exact")


@pytest.mark.parametrize("d, k", [(6, 1), (7, 1)])
def test_modular_then_exact_confirms_out_of_range_ranks(d, k):
    exact = gamma_rank(fermat(d), k)
    screened = gamma_rank(fermat(d), k, Arithmetic("modular-then-exact"))
    modular = gamma_rank(fermat(d), k, Arithmetic("modular"))

    assert screened.rank == exact.rank == modular.rank
    assert screened.domain_dim == exact.domain_dim == modular.domain_dim
    assert screened.arithmetic.endswith("+exact")


@pytest.mark.parametrize("d, k, expected", acceptance_params())
def test_screened_ranks_equal_the_exact_ones(d, k, expected):
    report = gamma_rank(fermat(d), k, Arithmetic("modular-then-exact"))

    assert (report.rank, report.corank) == expected
    assert report.match


@pytest.mark.parametrize("d, k, expected", acceptance_params())
def test_every_default_prime_agrees_with_the_exact_ranks(d, k, expected):
    c = fermat(d)
    conditions = stack_all(condition_matrices(c, k), c.genus**2)
    stacked = conditions.stack(twisted_gauss_matrix(c, k))
    base = rank(conditions)
    total = rank(stacked)

    assert total - base == expected[0]
    assert len(DEFAULT_PRIMES) >= 3
    for p in DEFAULT_PRIMES:
        assert rank_mod_p(conditions, p) == base
        assert rank_mod_p(stacked, p) == total


@pytest.mark.parametrize("d, k", [(6, 0), (6, 2), (7, 1), (8, 1)])
def test_sparse_exact_rank_matches_the_domain_rank(d, k):
    c = fermat(d)
    blocks = [twisted_block(c, m) for m in range(k + 1)]
    conditions = stack_blocks(blocks[:-1], c.genus**2)
    screen = _modular_screen(conditions, blocks[-1], DEFAULT_PRIMES[:1], f"d={d} k={k}")
    domain = domain_subspace(c, k)
    expected = rank(blocks[-1].exact().matmul(domain.basis.transpose())) if domain.dim else 0

    plain = exact_restricted_rank(conditions, blocks[-1])
    guided = exact_restricted_rank(conditions, blocks[-1], screen[DEFAULT_PRIMES[0]])

    assert plain == guided == (c.genus**2 - domain.dim, expected)


def thirds_sextic():
    """Smooth sextic whose reduction modulo F has denominators 3."""
    return new_plane_curve(parse_poly("3*y^6 + x^6 + 1"))


def test_prime_dividing_a_denominator_is_skipped(caplog):
    curve = thirds_sextic()
    exact = gamma_rank(curve, 1)

    with caplog.at_level(logging.WARNING, logger="wahlrank"):
        modular = gamma_rank(curve, 1, Arithmetic("modular", (3, 1000003, 1000033)))
        screened = gamma_rank(curve, 1, Arithmetic("modular-then-exact", (3, 1000003)))

    assert modular.rank == screened.rank == exact.rank
    assert modular.domain_dim == screened.domain_dim == exact.domain_dim
    assert any("skipping prime 3" in r.getMessage() for r in caplog.records)


def test_no_usable_prime_is_an_error(caplog):
    with caplog.at_level(logging.WARNING, logger="wahlrank"):
        with pytest.raises(BadPrime):
            gamma_rank(thirds_sextic(), 1, Arithmetic("modular", (3,)))

    assert any(r.levelno == logging.ERROR for r in caplog.records)


def test_prime_losing_rank_on_the_conditions_is_dropped(caplog):
    conditions = SparseBlock(2, 2, {(0, 0): Fraction(7), (1, 1): Fraction(1)})
    target = SparseBlock(1, 2, {(0, 0): Fraction(1), (0, 1): Fraction(1)})

    with caplog.at_level(logging.WARNING, logger="wahlrank"):
        screen = _modular_screen(conditions, target, (7, 11), "2x2")

    assert list(screen) == [11]
    assert screen[11].rank == 0
    assert exact_restricted_rank(conditions, target) == (2, 0)
    assert any("skipping 7" in r.getMessage() for r in caplog.records)


def test_stacked_blocks_keep_row_offsets():
    a = SparseBlock(1, 2, {(0, 1): Fraction(2)})
    b = SparseBlock(2, 2, {(1, 0): Fraction(5)})

    stacked = stack_blocks([a, b], 2)

    assert stacked.exact() == ExactMatrix.from_rows([[0, 2], [0, 0], [5, 0]])
    assert stack_blocks([], 3).rows == 0


def test_single_disagreeing_prime_only_warns(caplog):
    with caplog.at_level(logging.WARNING, logger="wahlrank"):
        _screen_against_exact({1000003: 5, 1000033: 4}, 5, "d=6 k=0")

    assert any("rank mod 1000033 is 4" in r.getMessage() for r in caplog.records)


def test_all_primes_disagreeing_is_an_error(caplog):
    with caplog.at_level(logging.WARNING, logger="wahlrank"):
        with pytest.raises(ModularDisagreement):
            _screen_against_exact({1000003: 4, 1000033: 4}, 5, "d=6 k=0")

    assert any(r.levelno == logging.ERROR for r in caplog.records)


def test_arithmetic_validates_mode_and_primes():
    assert Arithmetic().label() == "exact"
    assert Arithmetic("modular", (1000003,)).label() == "mod-p:1000003"
    with pytest.raises(ValueError):
        Arithmetic("approximate")
    with pytest.raises(ValueError):
        Arithmetic("modular", ())
    with pytest.raises(ValueError):
        Arithmetic("modular", (1000001,))
