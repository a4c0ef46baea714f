import numpy as np
import pytest

from utils.errors import BudgetExceeded, PreconditionError
from utils.windows import Budget, Progression, Window, iter_blocks, random_windows, run_partitioned


def test_window_bounds():
    window = Window(10, 5)
    assert window.end == 15
    assert 11 in window and 15 in window
    assert 10 not in window and 16 not in window
    assert str(window) == "(10, 15]"
    assert Window(3, 0).is_empty


@pytest.mark.parametrize("a, n_len", [(-1, 5), (0, -1)])
def test_window_rejects_negative(a, n_len):
    with pytest.raises(PreconditionError):
        Window(a, n_len)


def test_bin_edges_cover_window():
    edges = Window(0, 10).bin_edges(3)
    assert edges == [(0, 3), (3, 6), (6, 10)]
    assert Window(5, 2).bin_edges(4)[-1][1] == 7


def test_progression_within():
    progression = Progression.within(Window(0, 120), modulus=8, residue=1)
    assert progression.first == 1 and progression.terms == 15
    j = np.arange(progression.terms)
    assert progression.values(j)[-1] == 113
    assert Progression.within(Window(0, 0), modulus=8, residue=1).terms == 0


def test_progression_residues_beyond_int64():
    a = 10**30
    progression = Progression.within(Window(a, 100), modulus=8, residue=1)
    j = np.arange(progression.terms)
    values = progression.values(j)
    for p in (3, 5, 7, 13):
        assert progression.residues(j, p).tolist() == [v % p for v in values]


def test_bin_index_matches_edges():
    window = Window(7, 50)
    progression = Progression.within(window)
    j = np.arange(progression.terms)
    bins = 6
    edges = window.bin_edges(bins)
    for value, b in zip(progression.values(j), progression.bin_index(j, bins)):
        lo, hi = edges[b]
        assert lo < value <= hi


def test_budget_refuses_before_work():
    budget = Budget(100)
    budget.charge(60, "first")
    with pytest.raises(BudgetExceeded):
        budget.charge(41, "second")
    assert budget.used == 60
    assert budget.remaining == 40


def test_run_partitioned_is_ordered_and_worker_independent():
    progression = Progression.within(Window(0, 1000), modulus=3, residue=2)
    one = run_partitioned(lambda j: progression.values(j), progression, segment_size=17, workers=1)
    many = run_partitioned(lambda j: progression.values(j), progression, segment_size=17, workers=4)
    assert one == many
    flat = [v for chunk in one for v in chunk]
    assert flat == list(range(2, 1001, 3))


def test_iter_blocks():
    blocks = list(iter_blocks(1, 11, segment_size=4))
    assert [b.tolist() for b in blocks] == [[1, 2, 3, 4], [5, 6, 7, 8], [9, 10]]


def test_random_windows_reproducible():
    outer = Window(0, 10**6)
    first = random_windows(outer, 20, seed=0)
    assert first == random_windows(outer, 20, seed=0)
    assert first != random_windows(outer, 20, seed=1)
    assert all(w.a >= outer.a and w.end <= outer.end and w.n_len >= 1 for w in first)
