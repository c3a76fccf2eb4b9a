from hypothesis import given, settings, strategies as st

from tensorloc.formal import (check_formal, check_graded, check_indexed, closure_family, formal_to_localisable,
                              graded_indexed_roundtrip, graded_to_indexed, indexed_to_graded, localisable_to_formal,
                              roundtrip_check, writer_family)
from tensorloc.lattices import all_lattices, boolean_lattice, chain, closure_criterion, closure_operators
from tensorloc.localisable import check_localisable
from tensorloc.zoo import build_state_monad, chain_closure_localisable, closure_localisable, state_family, state_localisable


def test_formal_monad_of_a_closure_is_valid():
    fm = localisable_to_formal(chain_closure_localisable(3, (1, 1, 2)))
    assert check_formal(fm).ok


def test_both_round_trips_on_the_chain():
    lm = chain_closure_localisable(3, (0, 2, 2))
    assert roundtrip_check(lm).ok
    assert roundtrip_check(localisable_to_formal(lm)).ok


def test_formal_strength_recovers_the_closure_strength():
    lm = closure_localisable(boolean_lattice(2), (1, 1, 3, 3))
    back = formal_to_localisable(localisable_to_formal(lm))
    assert back.report.ok
    assert back.strength.table() == lm.strength.table()


def test_formal_strength_recovers_the_curried_state_strength():
    lm = state_localisable(build_state_monad(2, carriers=1))
    back = formal_to_localisable(localisable_to_formal(lm))
    assert back.report.ok
    assert back.strength.table() == lm.strength.table()


def test_closure_and_writer_families_round_trip():
    for E in (chain(3), boolean_lattice(2)):
        for im in (closure_family(E), writer_family(E)):
            assert check_indexed(im).ok
            gm = indexed_to_graded(im)
            assert check_graded(gm).ok
            assert check_indexed(graded_to_indexed(gm)).ok
            assert graded_indexed_roundtrip(im).ok


def test_state_family_is_an_indexed_and_graded_monad():
    im = state_family()
    assert check_indexed(im).ok
    assert graded_indexed_roundtrip(im).ok


LOCALISABLE = [(lat, c) for lat in all_lattices(4) for c in closure_operators(lat) if closure_criterion(lat, c) is None]


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(LOCALISABLE))
def test_round_trip_on_random_closures(pair):
    lat, c = pair
    lm = closure_localisable(lat, c)
    assert roundtrip_check(lm).ok
    assert check_localisable(lm.monad, formal_to_localisable(localisable_to_formal(lm), check=False).strength).ok
