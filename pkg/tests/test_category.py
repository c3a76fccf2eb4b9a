import itertools

import pytest
from hypothesis import given, settings, strategies as st

from tensorloc.category import (FinCategory, Functor, NatTransform, Square, check_commutes, check_natural,
                                identity_functor, is_pullback, is_pushout, materialize, poset_category,
                                validate_category, validate_functor)
from tensorloc.central import stiffness_square, zi_semilattice
from tensorloc.errors import MalformedTable, NonCommutingSquare
from tensorloc.finset import finset_smc
from tensorloc.lattices import boolean_lattice
from tensorloc.monoidal import product_smc


def chain_cat(n=3):
    return poset_category(range(n), lambda a, b: a <= b)


def test_single_object_category_is_valid():
    c = FinCategory(["*"], {"id": ("*", "*")}, {"*": "id"}, {("id", "id"): "id"})
    assert validate_category(c).ok


def test_three_chain_is_valid():
    rep = validate_category(chain_cat())
    assert rep.ok and rep.checked > 0


def test_planted_associativity_failure_names_the_triple():
    # one object, morphisms id, e, f, g with e.e = f but (e.e).e != e.(e.e)
    mors = {m: ("*", "*") for m in ("id", "e", "f")}
    comp = {}
    for a in mors:
        comp[("id", a)] = a
        comp[(a, "id")] = a
    comp.update({("e", "e"): "f", ("e", "f"): "id", ("f", "e"): "e", ("f", "f"): "f"})
    c = FinCategory(["*"], mors, {"*": "id"}, comp)
    rep = validate_category(c)
    assert "associativity" in rep.laws_failed()
    law, triple = next(v for v in rep.violations if v[0] == "associativity")
    h, g, f = triple
    assert c.compose(h, c.compose(g, f)) != c.compose(c.compose(h, g), f)


def test_unknown_endpoint_is_malformed():
    with pytest.raises(MalformedTable):
        FinCategory(["a"], {"f": ("a", "b")}, {"a": "f"}, {})


def test_check_commutes():
    c = chain_cat()
    assert check_commutes(c, [c.identity(0)], [c.identity(0)])
    assert check_commutes(c, [(1, 2), (0, 1)], [(0, 2)])
    # two distinct parallel arrows
    two = FinCategory(["a", "b"], {"ia": ("a", "a"), "ib": ("b", "b"), "f": ("a", "b"), "g": ("a", "b")},
                      {"a": "ia", "b": "ib"},
                      {("ia", "ia"): "ia", ("ib", "ib"): "ib", ("f", "ia"): "f", ("g", "ia"): "g",
                       ("ib", "f"): "f", ("ib", "g"): "g"})
    assert validate_category(two).ok
    assert not check_commutes(two, ["f"], ["g"])


def test_naturality_legs_commute():
    c = chain_cat()
    shift = Functor(c, c, lambda a: min(a + 1, 2), lambda f: (min(f[0] + 1, 2), min(f[1] + 1, 2)))
    alpha = NatTransform(identity_functor(c), shift, lambda a: (a, min(a + 1, 2)))
    assert check_natural(alpha).ok
    for f in c.morphisms():
        a, b = f
        assert check_commutes(c, [alpha[b], f], [shift(f), alpha[a]])


def test_poset_pullback_is_meet():
    lat = boolean_lattice(2)
    c = poset_category(lat.elements, lat.leq)
    x, y = [e for e in lat.elements if e not in (lat.bottom, lat.top)]
    top = lat.top
    sq = Square(top=(lat.bottom, x), left=(lat.bottom, y), right=(x, top), bottom=(y, top))
    assert is_pullback(c, sq)
    assert is_pushout(c, Square(top=(lat.bottom, x), left=(lat.bottom, y), right=(x, top), bottom=(y, top)))


def test_missing_mediating_morphism_is_not_a_pullback():
    # c and d both lie below a and b, and are incomparable
    le = {("c", "a"), ("c", "b"), ("d", "a"), ("d", "b")}
    elems = ["a", "b", "c", "d", "t"]
    cat = poset_category(elems, lambda p, q: p == q or q == "t" or (p, q) in le)
    sq = Square(top=("c", "a"), left=("c", "b"), right=("a", "t"), bottom=("b", "t"))
    assert not is_pullback(cat, sq)


def test_non_commuting_square_raises():
    two = finset_smc(2).cat
    from tensorloc.finset import fn

    f = fn(1, 2, [0])
    with pytest.raises(NonCommutingSquare):
        is_pullback(two, Square(top=f, left=f, right=two.identity(2), bottom=fn(2, 2, [1, 0])))


def test_stiffness_square_in_finset_pairs_is_pullback():
    s = product_smc([finset_smc(2), finset_smc(2)])
    z = zi_semilattice(s)
    for A in [(1, 1), (2, 1), (2, 2)]:
        for u in z.elements:
            for v in z.elements:
                assert is_pullback(s.cat, stiffness_square(s, A, u, v))


def test_materialize_round_trips_a_fragment():
    c = finset_smc(2).cat
    m = materialize(c)
    assert validate_category(m).ok
    assert sorted(m.hom(2, 2)) == sorted(c.hom(2, 2))


def test_functor_composition_validates():
    c = chain_cat()
    up = Functor(c, c, lambda a: min(a + 1, 2), lambda f: (min(f[0] + 1, 2), min(f[1] + 1, 2)))
    assert validate_functor(up).ok
    assert validate_functor(up.then(up)).ok


@st.composite
def finite_orders(draw):
    n = draw(st.integers(1, 5))
    rel = {(i, j) for i in range(n) for j in range(n) if i < j and draw(st.booleans())}
    closure = set(rel)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(closure), repeat=2):
            if b == c and (a, d) not in closure:
                closure.add((a, d))
                changed = True
    return n, closure


@settings(max_examples=40, deadline=None)
@given(finite_orders())
def test_any_finite_order_is_a_category(order):
    n, rel = order
    c = poset_category(range(n), lambda a, b: a == b or (a, b) in rel)
    assert validate_category(c).ok


@settings(max_examples=40, deadline=None)
@given(finite_orders())
def test_pullbacks_in_a_poset_are_meets(order):
    n, rel = order
    le = lambda a, b: a == b or (a, b) in rel
    c = poset_category(range(n), le)
    for x, y, z in itertools.product(range(n), repeat=3):
        if not (le(x, z) and le(y, z)):
            continue
        lower = [w for w in range(n) if le(w, x) and le(w, y)]
        for w in lower:
            sq = Square(top=(w, x), left=(w, y), right=(x, z), bottom=(y, z))
            is_meet = all(le(v, w) for v in lower)
            assert is_pullback(c, sq) == is_meet
            # symmetric in the two legs
            flipped = Square(top=(w, y), left=(w, x), right=(y, z), bottom=(x, z))
            assert is_pullback(c, flipped) == is_pullback(c, sq)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(0, 3))
def test_composites_of_paths_have_matching_endpoints(n, length):
    from tensorloc.category import all_paths

    c = poset_category(range(n), lambda a, b: a <= b)
    for start in range(n):
        for path in all_paths(c, start, length):
            if not path:
                continue
            total = path[0]
            for f in path[1:]:
                total = c.compose(f, total)
            assert c.dom(total) == c.dom(path[0]) and c.cod(total) == c.cod(path[-1])
