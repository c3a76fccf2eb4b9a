import pytest

from tensorloc.central import is_stiff, zi_semilattice
from tensorloc.errors import MalformedTable
from tensorloc.monad import check_monad
from tensorloc.suites import process_instance
from tensorloc.zoo import (FiniteTopologySpec, ProcessCategory, build_state_monad, compare_truncated_restriction,
                           planted_nonstiff, pplus_monad, process_smc, sierpinski_pair)


def test_topology_must_be_closed_under_unions():
    with pytest.raises(MalformedTable):
        FiniteTopologySpec((1, 2, 3), (frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2, 3})))


def test_sierpinski_closure_table():
    lat, table, labels = sierpinski_pair().powerset_closure()
    closure = {labels[i]: labels[table[i]] for i in lat.elements}
    assert closure[frozenset({2})] == frozenset({2})
    assert closure[frozenset({1})] == frozenset({1, 2})
    open_lat, opens = sierpinski_pair().open_lattice()
    assert open_lat.n == 3 and opens[1] == frozenset({1})


def test_planted_category_is_not_stiff():
    s = planted_nonstiff()
    ok, where = is_stiff(s, zi_semilattice(s))
    assert not ok
    assert where[0] == 4


def test_state_monad_sizes():
    inst = build_state_monad(2, carriers=2, S=(2, 1))
    assert inst.monad.obj((1, 1)) == (4, 1)
    assert check_monad(inst.monad).ok


def test_process_objects_and_idempotents():
    s = process_smc(3, 1)
    z = zi_semilattice(s)
    # subterminal processes are the sieves 000 <= 001 <= 011 <= 111
    sizes = [e.dom.sizes for e in z.elements]
    assert sorted(sizes) == [(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)]
    order = sorted(range(4), key=lambda k: sizes[k])
    assert all(z.le(order[i], order[j]) == (i <= j) for i in range(4) for j in range(4))


def test_powerset_monad_on_two_stage_processes():
    cat = ProcessCategory(2, 2)
    T = pplus_monad(cat)
    two = next(a for a in cat.objects if a.sizes == (2, 2))
    assert T.obj(two).sizes == (3, 3)
    assert check_monad(T, [a for a in cat.objects if sum(a.sizes) <= 3]).ok


@pytest.mark.parametrize("start", [1, 2])
def test_truncated_restriction_matches_the_short_chain(start):
    ci, frag = process_instance()
    assert compare_truncated_restriction(ci, start, frag).ok
