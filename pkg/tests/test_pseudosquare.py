import math

import pytest

from utils.arith_core import is_perfect_square, prime_basis, sieve_primes
from utils.errors import BudgetExceeded, IdentityViolation, PreconditionError, SearchExhausted
from utils.pseudosquare import (
    DensityModel, Provenance, PseudosquareRecord, count_pseudosquares, is_pseudosquare,
    least_pseudosquare, period_count_sbar, pigeonhole_pseudosquare, pseudosquare_growth,
    symbol_vector, verify_period_count,
)
from utils.windows import Budget, Window


def naive_is_pseudosquare(n, x):
    if n % 8 != 1 or is_perfect_square(n):
        return False
    return all(pow(n, (p - 1) // 2, p) == 1 for p in prime_basis(x).odd_primes)


def naive_least(x):
    n = 1
    while not naive_is_pseudosquare(n, x):
        n += 8
    return n


def test_symbol_vector():
    assert symbol_vector(73, 5).symbols == (1, -1)
    assert symbol_vector(241, 5).key == ((1, 1), 1)
    assert set(symbol_vector(1, 7).symbols) == {1}


@pytest.mark.parametrize("n, x, expected", [(73, 3, True), (49, 3, False), (241, 5, True), (73, 5, False)])
def test_is_pseudosquare(n, x, expected):
    assert is_pseudosquare(n, x) is expected


def test_threshold_precondition():
    with pytest.raises(PreconditionError):
        is_pseudosquare(73, 2)


def test_record_rejects_non_member():
    with pytest.raises(IdentityViolation):
        PseudosquareRecord(n=49, x=3, provenance=Provenance.ENUMERATION)


@pytest.mark.parametrize("x, expected", [(3, 73), (5, 241), (7, 1009), (11, 2641), (13, 8089)])
def test_least_pseudosquare(x, expected):
    record = least_pseudosquare(x, segment_size=4096)
    assert record.n == expected
    assert record.provenance is Provenance.SIEVE_SEARCH


@pytest.mark.slow
@pytest.mark.parametrize("x", [3, 5, 7, 11, 13, 17, 19])
def test_least_pseudosquare_matches_naive_scan(x):
    assert least_pseudosquare(x).n == naive_least(x)


def test_least_pseudosquare_workers_agree():
    assert least_pseudosquare(13, segment_size=128, workers=4).n == 8089


def test_least_pseudosquares_strictly_increase():
    ns = [least_pseudosquare(x).n for x in sieve_primes(19)[1:]]
    assert ns == [73, 241, 1009, 2641, 8089, 18001, 53881]
    assert all(a < b for a, b in zip(ns, ns[1:]))


@pytest.mark.parametrize("budget, found", [(8 * 128 * 5, True), (8 * 128 * 5 - 1, False)])
@pytest.mark.parametrize("workers", [1, 4])
def test_least_pseudosquare_budget_refusal_ignores_workers(budget, found, workers):
    # N_13 = 8089 는 128 크기 세그먼트 8번째에 있음
    if found:
        assert least_pseudosquare(13, segment_size=128, workers=workers, budget=Budget(budget)).n == 8089
    else:
        with pytest.raises(BudgetExceeded):
            least_pseudosquare(13, segment_size=128, workers=workers, budget=Budget(budget))


def test_pigeonhole_respects_budget():
    with pytest.raises(BudgetExceeded):
        pigeonhole_pseudosquare(13, budget=Budget(1))


def test_pseudosquare_filter_is_monotone_in_threshold():
    thresholds = [3, 5, 7, 11, 13]
    for n in range(1, 20000):
        flags = [is_pseudosquare(n, x) for x in thresholds]
        # 큰 x 에서 통과하면 작은 x 에서도 통과
        assert all(flags[i] or not flags[j] for i in range(len(flags)) for j in range(i + 1, len(flags)))


def test_least_pseudosquare_exhausted():
    with pytest.raises(SearchExhausted):
        least_pseudosquare(7, search_bound=1000)


def test_pigeonhole_first_collision():
    result = pigeonhole_pseudosquare(3)
    assert result.record.n == 145
    assert result.factors == (5, 29)
    assert result.bound == 12
    assert result.within_bound is False


@pytest.mark.parametrize("x", [3, 5, 7, 11, 13])
@pytest.mark.parametrize("coprime", [False, True])
def test_pigeonhole_products_are_pseudosquares(x, coprime):
    result = pigeonhole_pseudosquare(x, coprime=coprime)
    l1, l2 = result.factors
    assert l1 < l2 and result.record.n == l1 * l2
    assert is_pseudosquare(result.record.n, x)
    assert result.within_bound == (l2 <= 2 ** prime_basis(x).pi_x * x)


def test_count_small_windows():
    report = count_pseudosquares(3, Window(0, 120))
    assert (report.count, report.count_closure) == (2, 5)
    report = count_pseudosquares(5, Window(0, 240))
    assert (report.count, report.count_closure) == (0, 4)
    assert count_pseudosquares(5, Window(17, 0)).count == 0


def test_density_model_value():
    model = DensityModel.for_threshold(3)
    assert 120 * model.predicted_density == pytest.approx(120 / (8 * math.exp(0.5772156649) * math.log(3)))
    assert count_pseudosquares(3, Window(0, 120)).model_prediction == pytest.approx(7.666, abs=1e-3)


def test_count_histogram_sums_and_matches_naive():
    window = Window(1000, 50000)
    report = count_pseudosquares(7, window, bins=8, segment_size=333)
    expected = sum(naive_is_pseudosquare(n, 7) for n in range(window.a + 1, window.end + 1))
    assert report.count == expected
    assert sum(b.count for b in report.bins) == report.count
    assert all(check.passed for check in report.identity_checks)


def test_count_respects_budget():
    with pytest.raises(BudgetExceeded):
        count_pseudosquares(7, Window(0, 10**6), budget=Budget(1000))


def test_count_equidistribution_report_x13():
    period = Window(0, 8 * prime_basis(13).m2_x)
    report = count_pseudosquares(13, period, bins=8)
    assert len(report.bins) == 8
    assert sum(b.count for b in report.bins) == report.count
    assert report.histogram_frame().columns.tolist() == ["bin_start", "bin_end", "count", "model"]
    assert report.notes["theorem_window"]["in_regime"] is False


@pytest.mark.parametrize("x", [3, 5, 7, 11])
def test_period_count(x):
    check = verify_period_count(x)
    assert check.passed
    assert check.rhs == period_count_sbar(x)


def test_period_count_values():
    assert period_count_sbar(3) == 1
    assert period_count_sbar(7) == 1 * 2 * 3


def test_growth_table():
    frame = pseudosquare_growth([3, 5, 7])
    assert frame["n_x"].tolist() == [73, 241, 1009]
    assert frame["ratio_vs_2pi"].iloc[0] == pytest.approx(math.log(73) / (2 * math.log(2)))
