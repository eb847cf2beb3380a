import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from robustsub import (
    MatroidOracle,
    PartitionMatroid,
    UniformMatroid,
    random_partition_matroid,
)
from robustsub.harness import derive_rng

from conftest import square_partition


@st.composite
def partition_matroids(draw, max_n=10, max_budget=3):
    n = draw(st.integers(1, max_n))
    q = draw(st.integers(1, n))
    # Guarantee non-empty parts: first q elements pin one part each.
    part_of = list(range(q)) + [draw(st.integers(0, q - 1)) for _ in range(n - q)]
    budgets = [draw(st.integers(0, max_budget)) for _ in range(q)]
    return PartitionMatroid(part_of, budgets)


class TestIsIndependent:
    def test_empty_set_always_independent(self):
        assert square_partition().is_independent(set())

    def test_one_element_per_part(self):
        assert square_partition().is_independent({0, 2})

    def test_part_capacity_exceeded(self):
        assert not square_partition().is_independent({0, 1})

    def test_unknown_id_rejected(self):
        with pytest.raises(ValueError, match="unknown element"):
            square_partition().is_independent({0, 9})


class TestCanExtend:
    def test_empty_extends_anywhere_with_budgets(self):
        m = square_partition()
        assert all(m.can_extend(set(), e) for e in range(4))

    def test_full_part_blocks(self):
        assert not square_partition().can_extend({0}, 1)

    def test_other_part_open(self):
        assert square_partition().can_extend({0}, 3)

    def test_element_already_present(self):
        with pytest.raises(ValueError, match="already in"):
            square_partition().can_extend({0}, 0)

    def test_unknown_id(self):
        with pytest.raises(ValueError, match="unknown element"):
            square_partition().can_extend({0}, 7)


class TestRank:
    def test_partition_rank_sums_budgets(self):
        assert square_partition().rank() == 2

    def test_uniform_rank_is_capacity(self):
        assert UniformMatroid(8, 5).rank() == 5

    def test_three_parts_budget_five(self):
        m = PartitionMatroid([0] * 5 + [1] * 5 + [2] * 5, [5, 5, 5])
        assert m.rank() == 15


class TestViolationRatio:
    def test_empty_is_zero(self):
        assert square_partition().violation_ratio(set()) == 0

    def test_two_in_unit_part(self):
        assert square_partition().violation_ratio({0, 1, 2}) == 2

    def test_mixed_budgets(self):
        m = PartitionMatroid([0, 0, 0, 1, 1], [2, 1])
        assert m.violation_ratio({0, 1, 2, 3}) == 2

    def test_general_matroid_unsupported(self):
        class FreeMatroid(MatroidOracle):
            def is_independent(self, members):
                return True

            def rank(self):
                return self.n

        with pytest.raises(NotImplementedError):
            FreeMatroid(4).violation_ratio({0, 1})

    def test_one_iff_nonempty_independent(self):
        m = PartitionMatroid([0, 0, 1, 1, 1], [1, 2])
        for r in range(6):
            for members in itertools.combinations(range(5), r):
                members = set(members)
                nu = m.violation_ratio(members)
                if members and m.is_independent(members):
                    assert nu == 1
                else:
                    assert nu != 1 or not members


@given(partition_matroids(), st.data())
@settings(max_examples=100, deadline=None)
def test_downward_closure(m, data):
    members = data.draw(st.sets(st.integers(0, m.n - 1)))
    if not m.is_independent(members) or not members:
        return
    dropped = data.draw(st.sets(st.sampled_from(sorted(members))))
    assert m.is_independent(members - dropped)


def test_downward_closure_seeded_sweep():
    # 200 random subsets across random partition matroids with n <= 10.
    rng = derive_rng(7, 1)
    checked = 0
    while checked < 200:
        n = int(rng.integers(2, 11))
        m = random_partition_matroid(n, int(rng.integers(1, n + 1)), int(rng.integers(0, 3)), rng)
        members = {int(e) for e in rng.choice(n, size=int(rng.integers(0, n + 1)), replace=False)}
        if not m.is_independent(members):
            continue
        checked += 1
        for r in range(len(members) + 1):
            for sub in itertools.combinations(sorted(members), r):
                assert m.is_independent(sub)


@given(partition_matroids(), st.data())
@settings(max_examples=100, deadline=None)
def test_can_extend_matches_is_independent(m, data):
    members = data.draw(st.sets(st.integers(0, m.n - 1)))
    if not m.is_independent(members):
        return
    e = data.draw(st.integers(0, m.n - 1))
    if e in members:
        return
    assert m.can_extend(members, e) == m.is_independent(members | {e})


@given(partition_matroids(), st.data())
@settings(max_examples=60, deadline=None)
def test_union_of_feasible_sets_bounds_violation(m, data):
    rounds = data.draw(st.integers(1, 3))
    union = set()
    for _ in range(rounds):
        members = set()
        state = m.extension_state()
        for e in data.draw(st.lists(st.integers(0, m.n - 1), max_size=m.n)):
            if state.can_add(e):
                state.add(e)
                members.add(e)
        union |= members
    if union:
        assert m.violation_ratio(union) <= rounds


def test_extension_state_tracks_membership():
    m = PartitionMatroid([0, 0, 1, 1, 1], [1, 2])
    state = m.extension_state()
    taken = set()
    for e in range(5):
        if state.can_add(e):
            state.add(e)
            taken.add(e)
    assert taken == {0, 2, 3}
    assert m.is_independent(taken)
    for e in range(5):
        expected = e not in taken and m.is_independent(taken | {e})
        assert state.can_add(e) == expected


def test_extension_state_rejects_bad_add():
    m = square_partition()
    state = m.extension_state({0})
    with pytest.raises(ValueError):
        state.add(1)


class TestRandomPartition:
    def test_parts_nonempty_and_near_equal(self, rng):
        m = random_partition_matroid(10, 3, 1, rng)
        sizes = sorted(m.part_size(j) for j in range(m.num_parts))
        assert sizes == [3, 3, 4]

    def test_every_element_assigned_once(self, rng):
        m = random_partition_matroid(12, 4, 2, rng)
        assert sorted(e for j in range(4) for e in m.part_elements(j)) == list(range(12))

    def test_deterministic_given_seed(self):
        a = random_partition_matroid(15, 4, 1, np.random.default_rng(3))
        b = random_partition_matroid(15, 4, 1, np.random.default_rng(3))
        assert (a.part_of == b.part_of).all()

    def test_q_bounds(self, rng):
        with pytest.raises(ValueError):
            random_partition_matroid(3, 4, 1, rng)


def test_uniform_matroid_capacity_zero():
    m = UniformMatroid(4, 0)
    assert m.is_independent(set())
    assert not m.is_independent({0})
    assert m.rank() == 0
