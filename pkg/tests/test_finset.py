from hypothesis import given, settings, strategies as st

from tensorloc.finset import (FinSet, Fn, curry_fn, decode_exp, encode_exp, eval_fn, exp_obj, fn, swap_fn, tensor_fn,
                              uncurry_fn)


def functions(max_size=3):
    return st.integers(0, max_size).flatmap(
        lambda d: st.integers(1 if d else 0, max_size).flatmap(
            lambda c: st.lists(st.integers(0, max(c - 1, 0)), min_size=d, max_size=d).map(
                lambda img: Fn(d, c, tuple(img)))))


def test_hom_counts():
    c = FinSet(3)
    assert len(c.hom(2, 3)) == 9
    assert len(c.hom(0, 2)) == 1
    assert c.hom(2, 0) == []


def test_swap_is_an_involution():
    for a in range(4):
        for b in range(4):
            assert FinSet(16).compose(swap_fn(b, a), swap_fn(a, b)) == FinSet(16).identity(a * b)


@settings(max_examples=60, deadline=None)
@given(functions(), functions())
def test_tensor_is_functorial(f, g):
    c = FinSet(16)
    assert tensor_fn(c.identity(f.dom), c.identity(g.dom)) == c.identity(f.dom * g.dom)
    h = tensor_fn(f, g)
    assert (h.dom, h.cod) == (f.dom * g.dom, f.cod * g.cod)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 2), st.integers(0, 2), st.data())
def test_exponential_codes_round_trip(u, x, data):
    values = data.draw(st.lists(st.integers(0, max(x - 1, 0)), min_size=u, max_size=u)) if x else None
    if values is None:
        assert exp_obj(u, x) == 0
        return
    code = encode_exp(x, values)
    assert decode_exp(u, x, code) == tuple(values)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2), st.integers(1, 2), st.integers(0, 2), st.data())
def test_curry_uncurry(a, u, x, data):
    img = data.draw(st.lists(st.integers(0, max(x - 1, 0)), min_size=a * u, max_size=a * u)) if x or not a * u else None
    if img is None:
        return
    f = fn(a * u, x, img)
    g = curry_fn(f, a, u)
    assert uncurry_fn(g, u, x) == f
    c = FinSet(64)
    assert c.compose(eval_fn(u, x), tensor_fn(g, c.identity(u))) == f
