import pytest
from hypothesis import given, settings, strategies as st

from tensorloc.errors import InvalidClosure
from tensorloc.lattices import (FiniteLattice, all_lattices, boolean_lattice, chain, check_closure, closure_criterion,
                                closure_operators, enumerate_lattices)


def test_lattice_counts_up_to_iso():
    assert [len(enumerate_lattices(n)) for n in range(1, 6)] == [1, 1, 1, 2, 5]


def test_boolean_square_meets_and_joins():
    sq = boolean_lattice(2)
    assert sq.n == 4 and sq.is_distributive()
    assert sq.meet(1, 2) == 0 and sq.join(1, 2) == 3


def test_from_order_relabels_with_bottom_first():
    lat, labels = FiniteLattice.from_order([frozenset({1}), frozenset(), frozenset({1, 2})], lambda a, b: a <= b)
    assert labels[0] == frozenset() and labels[-1] == frozenset({1, 2})
    assert lat == chain(3)


def test_closures_on_a_three_chain():
    assert sorted(closure_operators(chain(3))) == sorted([(0, 1, 2), (0, 2, 2), (1, 1, 2), (2, 2, 2)])


@pytest.mark.parametrize("table, why", [((0, 0, 2), "inflationary"), ((1, 2, 2), "idempotent")])
def test_bad_closure_tables_are_rejected(table, why):
    with pytest.raises(InvalidClosure, match=why):
        check_closure(chain(3), table)


def test_criterion_holds_on_chains():
    for c in closure_operators(chain(4)):
        assert closure_criterion(chain(4), c) is None


def test_criterion_fails_for_a_nonmodular_closure():
    sq = boolean_lattice(2)
    # sends the atom 1 up to top but leaves the bottom alone
    c = (0, 3, 2, 3)
    assert closure_criterion(sq, c) == (1, 2)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(all_lattices(5)))
def test_meet_and_join_are_bounds(lat):
    E = lat.elements
    for x in E:
        for y in E:
            m, j = lat.meet(x, y), lat.join(x, y)
            assert lat.leq(m, x) and lat.leq(m, y) and lat.leq(x, j) and lat.leq(y, j)
            assert all(lat.leq(z, m) for z in E if lat.leq(z, x) and lat.leq(z, y))
