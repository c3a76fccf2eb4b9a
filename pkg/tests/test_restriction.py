from hypothesis import given, settings, strategies as st

from tensorloc.category import validate_category
from tensorloc.central import zi_semilattice
from tensorloc.finset import finset_smc
from tensorloc.lattices import all_lattices, boolean_lattice, chain, semilattice_smc
from tensorloc.monoidal import product_smc, validate_smc
from tensorloc.restriction import (RestrictionCategory, build_adjunction, build_restriction, check_adjunction,
                                   check_cokleisli_iso, check_comonad, check_decomposition,
                                   check_lower_strict_monoidal, check_remark_isos, check_upper_oplax,
                                   comonad_tensor_u)


def pairs(carriers=2):
    return product_smc([finset_smc(carriers), finset_smc(carriers)])


def by_dom(z):
    return {e.dom: (i, e) for i, e in enumerate(z.elements)}


def adjunction(s, z, U, V):
    (i, u), (j, v) = by_dom(z)[U], by_dom(z)[V]
    return build_adjunction(s, u, v, z.witness(i, j))


def test_restriction_at_top_is_the_base():
    s = pairs()
    z = zi_semilattice(s)
    r = RestrictionCategory(s, z.elements[z.top])
    for a in s.cat.objects:
        for b in s.cat.objects:
            assert [f.base for f in r.hom(a, b)] == list(s.cat.hom(a, b))
    assert validate_category(r).ok


def test_restriction_at_bottom_has_singleton_homs():
    for s in (pairs(), semilattice_smc(chain(3))):
        z = zi_semilattice(s)
        r = RestrictionCategory(s, z.elements[z.bottom])
        assert all(len(r.hom(a, b)) == 1 for a in r.objects for b in r.objects)


def test_first_coordinate_restriction_is_finite_sets():
    s = pairs()
    z = zi_semilattice(s)
    r, rs = build_restriction(s, by_dom(z)[(1, 0)][1])
    fin = finset_smc(2).cat
    for a in r.objects:
        for b in r.objects:
            assert len(r.hom(a, b)) == len(fin.hom(a[0], b[0]))
    assert validate_category(r).ok
    assert validate_smc(rs).ok
    assert check_remark_isos(r).ok


def test_trivial_adjunction_has_identity_unit():
    s = semilattice_smc(chain(3))
    z = zi_semilattice(s)
    adj = adjunction(s, z, 2, 2)
    assert check_adjunction(adj).ok
    for a in adj.small.objects:
        assert adj.unit[a] == adj.small.identity(a)


def test_chain_lower_functor_is_the_down_set():
    lat = chain(3)
    s = semilattice_smc(lat)
    z = zi_semilattice(s)
    adj = adjunction(s, z, 1, 2)
    assert check_adjunction(adj).ok
    for a in lat.elements:
        for b in lat.elements:
            assert bool(adj.small.hom(a, b)) == lat.leq(lat.meet(a, 1), b)


def test_upper_functor_zeroes_the_second_coordinate():
    s = pairs()
    z = zi_semilattice(s)
    adj = adjunction(s, z, (1, 0), (1, 1))
    assert adj.upper.obj((2, 2)) == (2, 0)
    assert check_adjunction(adj).ok
    assert check_lower_strict_monoidal(adj).ok
    assert check_upper_oplax(adj).ok
    counit = adj.counit[(2, 1)]
    assert counit.dom == (2, 0) and counit.cod == (2, 1)


def test_comonads_and_cokleisli():
    s = semilattice_smc(chain(3))
    z = zi_semilattice(s)
    for U in (1, 2):
        adj = adjunction(s, z, U, 2)
        cm = comonad_tensor_u(adj)
        assert check_comonad(cm).ok
        assert all(cm.functor.obj(x) == min(x, U) for x in range(3))
        assert check_cokleisli_iso(adj).ok
    sp = pairs()
    zp = zi_semilattice(sp)
    assert check_cokleisli_iso(adjunction(sp, zp, (1, 0), (1, 1))).ok


def test_decompositions():
    s = semilattice_smc(chain(3))
    z = zi_semilattice(s)
    top = z.elements[z.top]
    c = s.cat
    assert check_decomposition(s, ((top, top, top), (c.identity(2), c.identity(2)))).ok
    d = by_dom(z)
    (i0, u0), (i1, u1), (i2, u2) = d[0], d[1], d[2]
    assert check_decomposition(s, ((u0, u1, u2), (z.witness(i0, i1), z.witness(i1, i2)))).ok
    sq = semilattice_smc(boolean_lattice(2))
    zq = zi_semilattice(sq)
    lat = boolean_lattice(2)
    mid = next(x for x in lat.elements if x not in (lat.bottom, lat.top))
    dq = by_dom(zq)
    (a, ua), (b, ub), (t, ut) = dq[lat.bottom], dq[mid], dq[lat.top]
    assert check_decomposition(sq, ((ua, ub, ut), (zq.witness(a, b), zq.witness(b, t)))).ok


LATTICES = all_lattices(4)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(LATTICES), st.data())
def test_every_adjunction_on_a_lattice(lat, data):
    s = semilattice_smc(lat)
    z = zi_semilattice(s)
    i, j = data.draw(st.sampled_from(sorted(z.leq)))
    adj = build_adjunction(s, z.elements[i], z.elements[j], z.witness(i, j))
    assert check_adjunction(adj).ok
    assert check_cokleisli_iso(adj).ok
    assert check_remark_isos(adj.small).ok
