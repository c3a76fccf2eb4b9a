import pytest
from hypothesis import given, settings, strategies as st

from tensorloc.central import points, zi_semilattice
from tensorloc.errors import NotLocalisable
from tensorloc.lattices import all_lattices, boolean_lattice, chain, closure_criterion, closure_operators
from tensorloc.localisable import (LocalisableMonad, check_commutative, check_localisable, check_restriction_morphisms, restrict_monad,
                                   restriction_monad_morphism, stalk_monad, strength_from_closure)
from tensorloc.monad import check_monad
from tensorloc.suites import corrupted_state_strength
from tensorloc.zoo import (build_state_monad, chain_closure_localisable, closure_localisable, identity_localisable,
                           planted_order_sensitive_strength, sierpinski_pair, state_localisable)
from tensorloc.lattices import semilattice_smc


def test_identity_strength_satisfies_every_axiom():
    lm = identity_localisable(semilattice_smc(boolean_lattice(2)))
    rep = check_localisable(lm.monad, lm.strength)
    assert rep.ok and rep.failed() == []


def test_constant_top_closure_is_localisable():
    lm = chain_closure_localisable(3)
    assert check_localisable(lm.monad, lm.strength).ok


def test_sierpinski_closure_is_not_localisable():
    lat, table, labels = sierpinski_pair().powerset_closure()
    with pytest.raises(NotLocalisable) as err:
        strength_from_closure(lat, table)
    a, u = err.value.pair
    assert (labels[a], labels[u]) == (frozenset({1}), frozenset({2}))


@pytest.mark.parametrize("S", [(1, 1), (2, 2)])
def test_curried_state_strength(S):
    lm = state_localisable(build_state_monad(2, carriers=1, S=S))
    assert check_localisable(lm.monad, lm.strength).ok
    assert check_commutative(lm) == (True, None)


def test_order_sensitive_strength_breaks_the_hexagon():
    inst = build_state_monad(2, carriers=1)
    sf = planted_order_sensitive_strength(inst)
    ok, where = check_commutative(LocalisableMonad(inst.smc, inst.monad, sf))
    assert not ok and where is not None


def test_corrupted_entry_is_located():
    inst, sf = corrupted_state_strength()
    rep = check_localisable(inst.monad, sf)
    assert "eq6_natural_in_a" in rep.failed()
    assert rep.results["eq6_natural_in_a"].counterexample is not None


def test_restricted_monads_on_the_chain():
    lm = chain_closure_localisable(3, (1, 1, 2))
    for u in lm.zi.elements:
        assert check_monad(restrict_monad(lm, u)).ok


def test_restriction_to_top_is_the_monad_itself():
    lm = chain_closure_localisable(3, (1, 1, 2))
    top = lm.zi.elements[-1]
    Tu = restrict_monad(lm, top)
    assert [Tu.obj(a) for a in range(3)] == [lm.monad.obj(a) for a in range(3)]


def test_restriction_morphisms_compose_along_a_chain():
    lm = chain_closure_localisable(3, (0, 2, 2))
    n = len(lm.zi)
    for i in range(n):
        for j in range(i, n):
            assert check_restriction_morphisms(lm, restriction_monad_morphism(lm, i, j)).ok


def test_stalks_sit_below_every_neighbourhood():
    lm = closure_localisable(boolean_lattice(2), (1, 1, 3, 3))
    pts = points(lm.zi)
    assert pts
    for p in pts:
        st_ = stalk_monad(lm, p)
        assert check_monad(st_.monad).ok
        assert p in st_.morphisms
        assert all(check_monad(m.source).ok for m in st_.morphisms.values())


CLOSURES = [(lat, c) for lat in all_lattices(4) for c in closure_operators(lat)]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CLOSURES))
def test_closure_localisable_iff_criterion(pair):
    lat, c = pair
    bad = closure_criterion(lat, c)
    if bad is None:
        lm = closure_localisable(lat, c)
        assert check_localisable(lm.monad, lm.strength).ok
    else:
        with pytest.raises(NotLocalisable):
            strength_from_closure(lat, c)


def test_zi_of_a_lattice_is_the_lattice():
    z = zi_semilattice(semilattice_smc(chain(4)))
    assert [e.dom for e in z.elements] == [0, 1, 2, 3]
