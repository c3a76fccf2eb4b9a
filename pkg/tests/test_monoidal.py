
import pytest
from hypothesis import given, settings, strategies as st

from tensorloc.errors import TypeMismatch
from tensorloc.finset import Fn, finset_smc, tensor_fn
from tensorloc.lattices import all_lattices, chain, semilattice_smc
from tensorloc.monoidal import MonoidObject, check_monoid, symmetry_for_permutation, validate_smc
from tensorloc.suites import broken_associativity_smc, wrong_symmetry_smc


def test_meet_semilattice_is_a_valid_smc():
    for lat in all_lattices(4):
        assert validate_smc(semilattice_smc(lat)).ok


def test_finite_sets_are_a_valid_smc():
    s = finset_smc(2)
    assert validate_smc(s).ok
    assert s.t(2, 3) == 6 and s.unit == 1


def test_non_natural_symmetry_names_morphisms():
    rep = validate_smc(wrong_symmetry_smc())
    law, (f, g) = next(v for v in rep.violations if v[0] == "symmetry_naturality")
    assert law == "symmetry_naturality"
    assert isinstance(f, Fn) and isinstance(g, Fn)


def test_non_associative_tensor_is_caught_on_objects():
    rep = validate_smc(broken_associativity_smc())
    assert rep.laws_failed() == ["assoc_strict_objects"]
    s = broken_associativity_smc()
    a, b, c = rep.violations[0][1]
    assert s.t(s.t(a, b), c) != s.t(a, s.t(b, c))


def test_tensor_word():
    s = semilattice_smc(chain(3))
    assert s.tensor_word([1]) == 1
    assert s.tensor_word([s.unit, 1]) == 1
    assert s.tensor_word([1, 2]) == 1 and s.tensor_word([0, 2]) == 0


def test_monoid_objects():
    s = finset_smc(2)
    trivial = MonoidObject(1, s.cat.identity(1), s.cat.identity(1))
    assert check_monoid(s, trivial)
    orm = MonoidObject(2, Fn(4, 2, (0, 1, 1, 1)), Fn(1, 2, (0,)))
    assert check_monoid(s, orm)
    bad = MonoidObject(2, Fn(4, 2, (1, 0, 0, 0)), Fn(1, 2, (0,)))
    assert not check_monoid(s, bad)
    with pytest.raises(TypeMismatch):
        check_monoid(s, MonoidObject(2, Fn(2, 2, (0, 1)), Fn(1, 2, (0,))))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=3), st.data())
def test_permuted_tensor_words_agree_after_symmetry(objs, data):
    s = finset_smc(3, cap=10**7)
    perm = data.draw(st.permutations(range(len(objs))))
    sym = symmetry_for_permutation(s, objs, perm)
    c = s.cat
    assert c.dom(sym) == s.tensor_word(objs)
    assert c.cod(sym) == s.tensor_word([objs[i] for i in perm])
    # sending the permuted word back gives the identity
    back = symmetry_for_permutation(s, [objs[i] for i in perm], [list(perm).index(i) for i in range(len(objs))])
    assert c.compose(back, sym) == c.identity(s.tensor_word(objs))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
def test_strict_hexagon(a, b, c):
    s = finset_smc(2)
    cat = s.cat
    lhs = s.sigma(a, s.t(b, c))
    rhs = cat.compose(tensor_fn(cat.identity(b), s.sigma(a, c)), tensor_fn(s.sigma(a, b), cat.identity(c)))
    assert lhs == rhs
