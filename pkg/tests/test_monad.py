from hypothesis import given, settings, strategies as st

from tensorloc.category import identity_functor
from tensorloc.finset import finset_smc
from tensorloc.lattices import all_lattices, chain, closure_monad, closure_operators, semilattice_smc
from tensorloc.localisable import restriction_monad_morphism
from tensorloc.monad import (MonadMorphism, algebra_structures, build_em_category, build_kleisli, check_free_forgetful,
                             check_induced_algebra_functor, check_induced_kleisli_functor, check_monad,
                             check_monad_morphism, identity_monad)
from tensorloc.suites import flipped_state_morphism, magma_writer
from tensorloc.zoo import ProcessCategory, chain_closure_localisable, pplus_monad


def test_identity_monad_is_valid():
    assert check_monad(identity_monad(finset_smc(2).cat)).ok


def test_closure_operators_are_monads():
    for lat in all_lattices(4):
        s = semilattice_smc(lat)
        for c in closure_operators(lat):
            assert check_monad(closure_monad(lat, c, s)).ok


def test_non_associative_multiplication_is_named():
    rep = check_monad(magma_writer())
    assert rep.laws_failed() == ["associativity"]
    assert rep.violations[0] == ("associativity", (1,))


def test_identity_monad_morphism():
    c = finset_smc(2).cat
    T = identity_monad(c)
    mm = MonadMorphism(identity_functor(c), T, T, c.identity)
    assert check_monad_morphism(mm).ok


def test_restriction_morphisms_are_monad_morphisms():
    lm = chain_closure_localisable(3)
    rm = restriction_monad_morphism(lm, 1, 2)
    assert check_monad_morphism(rm.lax).ok
    assert check_monad_morphism(rm.oplax).ok


def test_broken_phi_fails_the_unit_diagram():
    rep = check_monad_morphism(flipped_state_morphism())
    assert "unit_diagram" in rep.laws_failed()


def test_identity_monad_algebras_and_kleisli_match_the_base():
    c = poset_cat = semilattice_smc(chain(3)).cat
    T = identity_monad(c)
    em = build_em_category(T)
    assert [a for a, _ in em.objects] == list(poset_cat.objects)
    kl = build_kleisli(T)
    assert all(len(kl.hom(a, b)) == len(c.hom(a, b)) for a in c.objects for b in c.objects)
    assert check_free_forgetful(T).ok


def test_closure_algebras_are_fixed_points():
    lat = chain(3)
    closure = (0, 2, 2)
    T = closure_monad(lat, closure)
    em = build_em_category(T)
    assert sorted(a for a, _ in em.objects) == [x for x in lat.elements if closure[x] == x]
    assert check_free_forgetful(T).ok


def test_powerset_kleisli_morphisms_are_total_relations():
    cat = ProcessCategory(1, 2)
    T = pplus_monad(cat)
    two = next(a for a in cat.objects if a.sizes == (2,))
    kl = build_kleisli(T)
    assert len(kl.hom(two, two)) == 3 ** 2
    assert check_monad(T).ok


def test_identity_morphism_induces_identity_functors():
    c = semilattice_smc(chain(3)).cat
    T = closure_monad(chain(3), (1, 1, 2))
    mm = MonadMorphism(identity_functor(c), T, T, c.identity)
    em = build_em_category(T)
    assert check_induced_algebra_functor(mm, em, em).ok


def test_restriction_morphisms_induce_algebra_and_kleisli_functors():
    lm = chain_closure_localisable(3, (1, 1, 2))
    rm = restriction_monad_morphism(lm, 1, 2)
    src = build_em_category(rm.large_monad)
    tgt = build_em_category(rm.small_monad)
    assert check_induced_algebra_functor(rm.lax, src, tgt).ok
    assert check_induced_kleisli_functor(rm.oplax, build_kleisli(rm.small_monad), build_kleisli(rm.large_monad)).ok


CLOSURES = [(lat, c) for lat in all_lattices(4) for c in closure_operators(lat)]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CLOSURES))
def test_free_then_forget_is_the_monad(pair):
    lat, c = pair
    T = closure_monad(lat, c)
    assert check_free_forgetful(T).ok
    for b in lat.elements:
        assert bool(algebra_structures(T, b)) == (c[b] == b)
