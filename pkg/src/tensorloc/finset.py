"""Skeletal finite sets as a strict symmetric monoidal closed category.

The object ``n`` is the set ``{0, ..., n-1}``. Products use the mixed-radix
encoding ``(x, y) -> x * |B| + y`` so the tensor is strictly associative and
unital; the function space ``X^U`` encodes ``h`` as ``sum h(i) * X**i``.
"""
from __future__ import annotations

import itertools
from typing import NamedTuple

from .category import Category, enumeration_cap
from .errors import SizeLimitError
from .monoidal import SmcStructure


class Fn(NamedTuple):
    dom: int
    cod: int
    img: tuple

    def __call__(self, x):
        return self.img[x]


def fn(dom, cod, images):
    images = tuple(images)
    assert len(images) == dom, (dom, images)
    return Fn(dom, cod, images)


class FinSet(Category):
    def __init__(self, max_size=3, objects=None, cap=None):
        self.objects = tuple(range(max_size + 1)) if objects is None else tuple(objects)
        self.cap = enumeration_cap(cap)

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def identity(self, a):
        return Fn(a, a, tuple(range(a)))

    def _compose(self, g, f):
        gi = g.img
        return Fn(f.dom, g.cod, tuple(gi[i] for i in f.img))

    def hom(self, a, b):
        if b ** a > self.cap:
            raise SizeLimitError(f"hom({a}, {b}) has {b ** a} elements, cap {self.cap}")
        return [Fn(a, b, img) for img in itertools.product(range(b), repeat=a)]

    def inverse(self, f):
        if f.dom != f.cod or len(set(f.img)) != f.dom:
            return None
        inv = [0] * f.dom
        for x, y in enumerate(f.img):
            inv[y] = x
        return Fn(f.cod, f.dom, tuple(inv))

    def size(self, a):
        return a


def tensor_fn(f: Fn, g: Fn) -> Fn:
    gd, gc, gi = g.dom, g.cod, g.img
    img = tuple(x * gc + y for x in f.img for y in gi)
    return Fn(f.dom * gd, f.cod * gc, img)


def swap_fn(a, b) -> Fn:
    """sigma_{a,b}: (x, y) -> (y, x)."""
    return Fn(a * b, b * a, tuple(y * a + x for x in range(a) for y in range(b)))


def finset_smc(max_size=3, objects=None, cap=None):
    cat = FinSet(max_size, objects, cap)
    return SmcStructure(cat, 1, lambda a, b: a * b, tensor_fn, swap_fn, initial=0, name="FinSet")


# -- closed structure ---------------------------------------------------------


def exp_obj(u, x):
    """The function space ``x^u``."""
    return x ** u


def decode_exp(u, x, code):
    out = []
    for _ in range(u):
        code, r = divmod(code, x)
        out.append(r)
    return tuple(out)


def encode_exp(x, values):
    code = 0
    for v in reversed(values):
        code = code * x + v
    return code


def eval_fn(u, x) -> Fn:
    """ev: x^u (x) u -> x."""
    n = exp_obj(u, x)
    img = []
    for code in range(n):
        vals = decode_exp(u, x, code)
        img.extend(vals[i] for i in range(u))
    return Fn(n * u, x, tuple(img))


def curry_fn(f: Fn, a, u) -> Fn:
    """Transpose ``f: a (x) u -> x`` to ``a -> x^u``."""
    x = f.cod
    return Fn(a, exp_obj(u, x), tuple(encode_exp(x, [f.img[i * u + j] for j in range(u)]) for i in range(a)))


def uncurry_fn(g: Fn, u, x) -> Fn:
    a = g.dom
    img = []
    for i in range(a):
        vals = decode_exp(u, x, g.img[i])
        img.extend(vals)
    return Fn(a * u, x, tuple(img))
