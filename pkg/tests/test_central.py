import itertools

from hypothesis import given, settings, strategies as st

from tensorloc.category import poset_category
from tensorloc.central import (enumerate_central_idempotents, functor_category_zi, has_universal_joins,
                               is_central_idempotent, is_local, is_stiff, order_isomorphism, points,
                               semilattice_from_order, zi_semilattice)
from tensorloc.finset import FinSet, finset_smc, swap_fn, tensor_fn
from tensorloc.lattices import all_lattices, boolean_lattice, chain, semilattice_smc
from tensorloc.monoidal import SmcStructure, product_smc
from tensorloc.zoo import build_chain_process, planted_nonstiff

LATTICES = all_lattices(5)


def pairs(carriers=2):
    return product_smc([finset_smc(carriers), finset_smc(carriers)])


def lattice_zi(lat):
    return semilattice_from_order(list(lat.elements), lat.leq)


def test_chain_has_three_classes_matching_the_lattice():
    z = zi_semilattice(semilattice_smc(chain(3)))
    assert len(z) == 3
    assert order_isomorphism(z, lattice_zi(chain(3))) is not None


def test_finite_sets_have_empty_and_singleton_classes():
    z = zi_semilattice(finset_smc(3))
    assert sorted(e.dom for e in z.elements) == [0, 1]


def test_pairs_of_finite_sets_have_four_classes():
    z = zi_semilattice(pairs(3))
    assert sorted(e.dom for e in z.elements) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert order_isomorphism(z, lattice_zi(boolean_lattice(2))) is not None


def test_meets_and_top():
    z = zi_semilattice(semilattice_smc(chain(3)))
    for i in range(len(z)):
        assert z.le(i, z.top)
    assert z.meet[(1, z.top)] == 1
    zp = zi_semilattice(pairs())
    idx = {e.dom: i for i, e in enumerate(zp.elements)}
    assert zp.elements[zp.meet[(idx[(1, 0)], idx[(0, 1)])]].dom == (0, 0)


def test_stiffness():
    for lat in all_lattices(4):
        assert is_stiff(semilattice_smc(lat))[0]
    assert is_stiff(pairs())[0]
    ok, (A, i, j) = is_stiff(planted_nonstiff())
    assert not ok and A == 4


def test_universal_joins():
    assert has_universal_joins(semilattice_smc(chain(3)))[0]
    assert has_universal_joins(pairs())[0]
    # positive sizes only: nothing is initial
    cat = FinSet(2, objects=[1, 2])
    s = SmcStructure(cat, 1, lambda a, b: a * b, tensor_fn, swap_fn)
    ok, reason = has_universal_joins(s)
    assert not ok and reason == "no initial object"


def test_locality():
    assert is_local(zi_semilattice(finset_smc(2)))
    assert not is_local(zi_semilattice(pairs()))
    assert is_local(zi_semilattice(semilattice_smc(chain(3))))


def test_points_of_a_chain_and_a_square():
    assert len(points(zi_semilattice(semilattice_smc(chain(3))))) == 2
    zp = zi_semilattice(pairs())
    assert sorted(zp.elements[p].dom for p in points(zp)) == [(0, 1), (1, 0)]


def test_functor_category_zi():
    fin = finset_smc(2)
    one = poset_category(["*"], lambda a, b: True)
    assert len(functor_category_zi(one, fin).semilattice) == 2
    three = poset_category(range(3), lambda a, b: a <= b)
    assert len(functor_category_zi(three, fin).semilattice) == 4
    anti = poset_category(range(2), lambda a, b: a == b)
    assert len(functor_category_zi(anti, fin).semilattice) == 4


def test_functor_zi_matches_the_materialized_functor_category():
    ci = build_chain_process(validate=False)
    direct = ci.localisable.zi
    three = poset_category(range(3), lambda a, b: a <= b)
    computed = functor_category_zi(three, finset_smc(2)).semilattice
    assert order_isomorphism(direct, computed) is not None


@settings(max_examples=len(LATTICES), deadline=None)
@given(st.sampled_from(LATTICES))
def test_zi_invariants(lat):
    s = semilattice_smc(lat)
    z = zi_semilattice(s)
    c = s.cat
    for e in z.elements:
        assert is_central_idempotent(s, e.dom, e.mor) is not None
    for i, a in enumerate(z.elements):
        for j, b in enumerate(z.elements):
            raw = any(c.compose(b.mor, m) == a.mor for m in c.hom(a.dom, b.dom))
            assert z.le(i, j) == raw
            assert z.meet[(i, j)] == z.meet[(j, i)]
        assert z.meet[(i, i)] == i
        assert z.meet[(i, z.top)] == i
    n = len(z)
    for i, j, k in itertools.product(range(n), repeat=3):
        assert z.meet[(z.meet[(i, j)], k)] == z.meet[(i, z.meet[(j, k)])]
    assert len(enumerate_central_idempotents(s)) >= n
