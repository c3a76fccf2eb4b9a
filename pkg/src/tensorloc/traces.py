"""Two agents with silent synchronisation steps.

Objects are pairs ``(A, B)`` of finite sets. A morphism is a pair of functions
together with the number of silent steps taken; a silent step at an object
with an empty component is trivial. This is the normal-form model of words
over pairs and silent steps ``tau_X`` under the oriented rewrite rules below,
and ``check_confluence`` confirms by brute force that the rules decide equality
of words up to a length bound.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

from .category import Category, Functor, ValidationReport, order_key, validate_category
from .errors import NonConfluentAt, SizeLimitError, TensorlocError
from .finset import FinSet, Fn, swap_fn, tensor_fn
from .monad import MonadData
from .monoidal import MonoidObject, SmcStructure, check_monoid, validate_smc


def _has_zero(x):
    return x[0] == 0 or x[1] == 0


class TraceMor(NamedTuple):
    dom: tuple
    cod: tuple
    left: Fn
    right: Fn
    silent: int


class TraceCategory(Category):
    """Pairs of finite sets; homs list silent counts up to ``bound``."""

    def __init__(self, component_objects=(0, 1, 2), bound=3, objects=None):
        self.fin = FinSet(max(component_objects))
        self.bound = bound
        if objects is None:
            objects = itertools.product(component_objects, repeat=2)
        self.objects = tuple(sorted(objects, key=order_key))

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def identity(self, a):
        return TraceMor(a, a, self.fin.identity(a[0]), self.fin.identity(a[1]), 0)

    def _compose(self, g, f):
        n = 0 if _has_zero(f.dom) else f.silent + g.silent
        return TraceMor(f.dom, g.cod, self.fin._compose(g.left, f.left), self.fin._compose(g.right, f.right), n)

    def hom(self, a, b):
        counts = [0] if _has_zero(a) else range(self.bound + 1)
        return [TraceMor(a, b, f, g, n)
                for f in self.fin.hom(a[0], b[0]) for g in self.fin.hom(a[1], b[1]) for n in counts]

    def inverse(self, f):
        if f.silent:
            return None
        l, r = self.fin.inverse(f.left), self.fin.inverse(f.right)
        if l is None or r is None:
            return None
        return TraceMor(f.cod, f.dom, l, r, 0)

    def size(self, a):
        return a[0] + a[1]

    def tau(self, x):
        """The silent step at ``x``."""
        return TraceMor(x, x, self.fin.identity(x[0]), self.fin.identity(x[1]), 0 if _has_zero(x) else 1)

    def pair(self, f: Fn, g: Fn):
        return TraceMor((f.dom, g.dom), (f.cod, g.cod), f, g, 0)


def trace_smc(component_objects=(0, 1, 2), bound=3, objects=None) -> SmcStructure:
    cat = TraceCategory(component_objects, bound, objects)

    def t(a, b):
        return (a[0] * b[0], a[1] * b[1])

    def tm(f, g):
        dom = t(f.dom, g.dom)
        n = 0 if _has_zero(dom) else f.silent + g.silent
        return TraceMor(dom, t(f.cod, g.cod), tensor_fn(f.left, g.left), tensor_fn(f.right, g.right), n)

    def sigma(a, b):
        return TraceMor(t(a, b), t(b, a), swap_fn(a[0], b[0]), swap_fn(a[1], b[1]), 0)

    return SmcStructure(cat, (1, 1), t, tm, sigma, initial=(0, 0), name="Trace")


# -- words and rewriting ---------------------------------------------------------------------


class Pair(NamedTuple):
    left: Fn
    right: Fn

    @property
    def dom(self):
        return (self.left.dom, self.right.dom)

    @property
    def cod(self):
        return (self.left.cod, self.right.cod)

    def is_identity(self):
        return self.left.img == tuple(range(self.left.dom)) and self.left.dom == self.left.cod \
            and self.right.img == tuple(range(self.right.dom)) and self.right.dom == self.right.cod


class Tau(NamedTuple):
    obj: tuple


def _letter_cod(x):
    return x.obj if isinstance(x, Tau) else x.cod


def rewrite_steps(word):
    """All one-step rewrites of a word (letters in diagrammatic order).

    merge:    p q        -> (q . p)
    vanish:   tau_X      -> ()          when X has an empty component
    commute:  tau_X p    -> p tau_Y     with Y = cod(p)
    absorb:   p tau_Y    -> p           when dom(p) has an empty component
    unit:     id         -> ()
    """
    out = []
    n = len(word)
    for i, x in enumerate(word):
        if isinstance(x, Tau) and _has_zero(x.obj):
            out.append(("vanish", i, word[:i] + word[i + 1:]))
        if isinstance(x, Pair) and x.is_identity():
            out.append(("unit", i, word[:i] + word[i + 1:]))
        if i + 1 < n:
            y = word[i + 1]
            if isinstance(x, Pair) and isinstance(y, Pair):
                fin_l = Fn(x.left.dom, y.left.cod, tuple(y.left.img[v] for v in x.left.img))
                fin_r = Fn(x.right.dom, y.right.cod, tuple(y.right.img[v] for v in x.right.img))
                out.append(("merge", i, word[:i] + (Pair(fin_l, fin_r),) + word[i + 2:]))
            elif isinstance(x, Tau) and isinstance(y, Pair):
                out.append(("commute", i, word[:i] + (y, Tau(y.cod)) + word[i + 2:]))
            elif isinstance(x, Pair) and isinstance(y, Tau) and _has_zero(x.dom):
                out.append(("absorb", i, word[:i] + (x,) + word[i + 2:]))
    return out


def termination_measure(word):
    """``(length, silent steps standing before a pair)``; every rule decreases it lexicographically."""
    inversions = sum(1 for i, x in enumerate(word) if isinstance(x, Tau)
                     for y in word[i + 1:] if isinstance(y, Pair))
    return (len(word), inversions)


def normal_forms(word, _memo=None):
    """Every normal form reachable from ``word`` under any rewrite order."""
    memo = {} if _memo is None else _memo
    if word in memo:
        return memo[word]
    steps = rewrite_steps(word)
    if not steps:
        result = frozenset([word])
    else:
        result = frozenset()
        for _, _, w in steps:
            if termination_measure(w) >= termination_measure(word):
                raise AssertionError(f"rewrite does not decrease the measure at {word!r}")
            result |= normal_forms(w, memo)
    memo[word] = result
    return result


def interpret(cat: TraceCategory, dom, word) -> TraceMor:
    m = cat.identity(dom)
    for x in word:
        step = cat.tau(x.obj) if isinstance(x, Tau) else cat.pair(x.left, x.right)
        m = cat.compose(step, m)
    return m


def letters_from(cat: TraceCategory, x):
    out = [Tau(x)]
    for b in cat.objects:
        for f in cat.fin.hom(x[0], b[0]):
            for g in cat.fin.hom(x[1], b[1]):
                out.append(Pair(f, g))
    return out


def typed_words(cat: TraceCategory, max_len):
    """``(dom, word)`` for every composable word of length ``<= max_len`` over the fragment."""
    letters = {x: letters_from(cat, x) for x in cat.objects}
    frontier = [(x, x, ()) for x in cat.objects]
    for dom, _, w in frontier:
        yield dom, w
    for _ in range(max_len):
        nxt = []
        for dom, end, w in frontier:
            for letter in letters.get(end, ()):
                cod = _letter_cod(letter)
                if cod not in letters:
                    continue
                nw = w + (letter,)
                nxt.append((dom, cod, nw))
                yield dom, nw
        frontier = nxt


@dataclass
class ConfluenceReport:
    words: int
    normal_forms: int
    critical_pairs: int
    sound: bool


def check_confluence(cat: TraceCategory, max_len=3) -> ConfluenceReport:
    """Every bounded word has one normal form and the normal form means the same morphism.

    Raises ``NonConfluentAt`` with the offending word otherwise.
    """
    memo = {}
    words = crit = 0
    seen_nf = {}
    for dom, w in typed_words(cat, max_len):
        words += 1
        if len(rewrite_steps(w)) > 1:
            crit += 1
        nfs = normal_forms(w, memo)
        if len(nfs) != 1:
            raise NonConfluentAt(f"word of length {len(w)} has {len(nfs)} normal forms", term=(dom, w))
        nf = next(iter(nfs))
        meaning = interpret(cat, dom, w)
        if interpret(cat, dom, nf) != meaning:
            raise NonConfluentAt("normal form changes the denoted morphism", term=(dom, w))
        prev = seen_nf.setdefault(meaning, (dom, nf))
        if prev != (dom, nf):
            raise NonConfluentAt("two normal forms denote the same morphism", term=(dom, w))
    return ConfluenceReport(words, len(seen_nf), crit, True)


# -- the monoid, the writer monad and the local pieces ---------------------------------------------


TWO_ELEMENT_MONOIDS = {
    "or": (Fn(4, 2, (0, 1, 1, 1)), Fn(1, 2, (0,))),
    "xor": (Fn(4, 2, (0, 1, 1, 0)), Fn(1, 2, (0,))),
}


@dataclass
class TraceSpec:
    monoid1: str = "or"
    monoid2: str = "or"
    component_objects: tuple = (0, 1, 2)
    bound: int = 3


@dataclass
class TraceInstance:
    spec: TraceSpec
    smc: SmcStructure
    u1: object
    u2: object
    monoid: MonoidObject
    writer: MonadData


def writer_monad(s: SmcStructure, m: MonoidObject) -> MonadData:
    c = s.cat
    M = m.carrier
    return MonadData(
        c,
        lambda a: s.t(M, a),
        lambda f: s.tm(c.identity(M), f),
        lambda a: s.tm(m.unit_mor, c.identity(a)),
        lambda a: s.tm(m.mult, c.identity(a)),
        name="writer",
    )


def build_trace_category(spec: TraceSpec | None = None, check=True) -> TraceInstance:
    from .central import CentralIdempotent, is_central_idempotent

    spec = spec or TraceSpec()
    s = trace_smc(spec.component_objects, spec.bound)
    c = s.cat
    for name in (spec.monoid1, spec.monoid2):
        if name not in TWO_ELEMENT_MONOIDS:
            raise SizeLimitError(f"unknown component monoid {name!r}")
    (m1, e1), (m2, e2) = TWO_ELEMENT_MONOIDS[spec.monoid1], TWO_ELEMENT_MONOIDS[spec.monoid2]
    monoid = MonoidObject((2, 2), c.pair(m1, m2), c.pair(e1, e2))
    us = []
    for U in ((1, 0), (0, 1)):
        u = TraceMor(U, (1, 1), Fn(U[0], 1, (0,) * U[0]), Fn(U[1], 1, (0,) * U[1]), 0)
        inv = is_central_idempotent(s, U, u)
        if inv is None:
            raise NonConfluentAt(f"{U!r} is not a central idempotent", term=U)
        us.append(CentralIdempotent(U, u, inv))
    if check:
        check_confluence(c, spec.bound)
        frag = trace_fragment(s)
        for what, rep in (("trace category", validate_category(c, frag)), ("trace tensor", validate_smc(s, frag))):
            if not rep.ok:
                raise TensorlocError(f"{what} failed validation: {rep.violations[:3]!r}")
        if not check_monoid(s, monoid):
            raise NonConfluentAt("the pair of component monoids is not a monoid", term=monoid)
    return TraceInstance(spec, s, us[0], us[1], monoid, writer_monad(s, monoid))


def trace_fragment(s: SmcStructure, max_total=3):
    """Objects whose two components add up to at most ``max_total``."""
    return [a for a in s.cat.objects if sum(a) <= max_total]


def component_functor(inst: TraceInstance, i: int, restricted) -> Functor:
    """``C|u_i -> C_i``: keep the i-th component of objects and base morphisms."""
    fin = inst.smc.cat.fin
    side = "left" if i == 0 else "right"
    return Functor(restricted, fin, lambda a: a[i], lambda f: getattr(f.base, side), name=f"component{i + 1}")


def check_component_iso(inst: TraceInstance, i: int) -> ValidationReport:
    """``C|u_i`` and ``C_i`` agree: bijective on homs, functorial, monoidal, and the monoid localises to ``M_i``."""
    from .restriction import RMor, RestrictionCategory, restriction_smc

    s = inst.smc
    u = (inst.u1, inst.u2)[i]
    r = RestrictionCategory(s, u)
    rs = restriction_smc(r)
    P = component_functor(inst, i, r)
    fin = s.cat.fin
    rep = ValidationReport()
    objs = r.objects
    for a in objs:
        for b in objs:
            rep.checked += 1
            hom = r.hom(a, b)
            images = [P(f) for f in hom]
            if sorted(images) != sorted(fin.hom(a[i], b[i])):
                rep.add("hom_bijection", (a, b))
            for f in hom:
                for c in objs:
                    for g in r.hom(b, c):
                        if P(r.compose(g, f)) != fin.compose(P(g), P(f)):
                            rep.add("functorial", (g, f))
                for a2 in objs:
                    for b2 in (objs[0], objs[-1]):
                        for g in r.hom(a2, b2)[:1]:
                            lhs = P(rs.tm(f, g))
                            if lhs != tensor_fn(P(f), P(g)):
                                rep.add("monoidal", (f, g))
        if P(r.identity(a)) != fin.identity(a[i]):
            rep.add("identity", (a,))
    # the monoid seen from C|u_i is M_i
    M = inst.monoid
    for mor, want in ((M.mult, (M.mult.left, M.mult.right)[i]), (M.unit_mor, (M.unit_mor.left, M.unit_mor.right)[i])):
        lowered = RMor(s.cat.dom(mor), s.cat.cod(mor), s.cat.compose(mor, s.lw(s.cat.dom(mor), u.mor)))
        rep.checked += 1
        if P(lowered) != want:
            rep.add("monoid_localises", (i, mor))
    return rep
