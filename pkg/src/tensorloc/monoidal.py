"""Strict symmetric monoidal structure on a finite (or fragment-enumerated) category.

Associators and unitors are identities on the nose; builders are responsible
for strict encodings (e.g. mixed-radix products of finite sets).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

from .category import Category, MalformedTable, ValidationReport, order_key
from .errors import TypeMismatch


class SmcStructure:
    """A strict symmetric monoidal category.

    ``tensor_obj``, ``tensor_mor`` and ``symmetry`` are callables; table-backed
    instances wrap dicts via ``from_tables``. ``initial`` optionally names an
    object 0 that is initial and absorbs the tensor.
    """

    def __init__(self, cat: Category, unit, tensor_obj, tensor_mor, symmetry, initial=None, name=None):
        self.cat = cat
        self.unit = unit
        self._tensor_obj = tensor_obj
        self._tensor_mor = tensor_mor
        self._symmetry = symmetry
        self.initial = initial
        self.name = name

    @classmethod
    def from_tables(cls, cat, unit, tensor_obj: dict, tensor_mor: dict, symmetry: dict, initial=None, name=None):
        def lookup(table, what):
            def get(*key):
                try:
                    return table[key]
                except KeyError:
                    raise MalformedTable(f"{what} table has no entry for {key!r}") from None
            return get

        return cls(cat, unit, lookup(tensor_obj, "tensor_obj"), lookup(tensor_mor, "tensor_mor"),
                   lookup(symmetry, "symmetry"), initial=initial, name=name)

    def t(self, a, b):
        return self._tensor_obj(a, b)

    def tm(self, f, g):
        return self._tensor_mor(f, g)

    def sigma(self, a, b):
        return self._symmetry(a, b)

    def id(self, a):
        return self.cat.identity(a)

    def lw(self, a, f):
        """``A (x) f``."""
        return self.tm(self.cat.identity(a), f)

    def rw(self, f, a):
        """``f (x) A``."""
        return self.tm(f, self.cat.identity(a))

    def tensor_word(self, objs):
        if not objs:
            return self.unit
        return reduce(self.t, objs)

    def tensor_mors(self, mors):
        return reduce(self.tm, mors)


def validate_smc(s: SmcStructure, objects=None) -> ValidationReport:
    """Strictness, bifunctoriality, symmetry and initial-object laws over the fragment.

    Laws on morphisms are checked on whiskerings ``f (x) X`` and ``X (x) f``
    plus the interchange law ``f (x) g = (f (x) B') . (A (x) g) = (B (x) g) . (f (x) A')``;
    together these imply the laws for arbitrary tensors of morphisms while
    keeping the check quadratic rather than cubic in the number of morphisms.
    """
    rep = ValidationReport()
    c = s.cat
    objs = list(c.objects if objects is None else objects)
    homs = {(a, b): list(c.hom(a, b)) for a in objs for b in objs}
    mors = [f for hs in homs.values() for f in hs]
    I = s.unit
    idI = c.identity(I)

    for a in objs:
        if s.t(I, a) != a or s.t(a, I) != a:
            rep.add("unit_strict_objects", (a,))
    for a, b, d in itertools.product(objs, repeat=3):
        if s.t(s.t(a, b), d) != s.t(a, s.t(b, d)):
            rep.add("assoc_strict_objects", (a, b, d))
    if rep.violations:
        # the morphism laws below compose along these object equations
        return rep
    for a in objs:
        for b in objs:
            if s.tm(c.identity(a), c.identity(b)) != c.identity(s.t(a, b)):
                rep.add("tensor_identity", (a, b))

    for f in mors:
        if s.tm(idI, f) != f or s.tm(f, idI) != f:
            rep.add("unit_strict_morphisms", (f,))
        a, b = c.dom(f), c.cod(f)
        for x in objs:
            rep.checked += 1
            fx, xf = s.rw(f, x), s.lw(x, f)
            if c.dom(fx) != s.t(a, x) or c.cod(fx) != s.t(b, x) or c.dom(xf) != s.t(x, a) or c.cod(xf) != s.t(x, b):
                rep.add("tensor_typing", (f, x))
                continue
            # symmetry natural in each variable
            if c.compose(s.sigma(b, x), fx) != c.compose(xf, s.sigma(a, x)):
                rep.add("symmetry_naturality", (f, c.identity(x)))
            for y in objs:
                if s.rw(s.rw(f, x), y) != s.rw(f, s.t(x, y)):
                    rep.add("assoc_strict_morphisms", (f, x, y))
                if s.rw(s.lw(x, f), y) != s.lw(x, s.rw(f, y)):
                    rep.add("assoc_strict_morphisms", (x, f, y))
                if s.lw(s.t(x, y), f) != s.lw(x, s.lw(y, f)):
                    rep.add("assoc_strict_morphisms", (x, y, f))
    # functoriality of each whiskering
    for f in mors:
        for g in (g for cc in objs for g in homs.get((c.cod(f), cc), ())):
            gf = c.compose(g, f)
            for x in objs:
                rep.checked += 1
                if s.rw(gf, x) != c.compose(s.rw(g, x), s.rw(f, x)) or \
                        s.lw(x, gf) != c.compose(s.lw(x, g), s.lw(x, f)):
                    rep.add("bifunctoriality", (g, f, x))
    # interchange
    for f in mors:
        a, b = c.dom(f), c.cod(f)
        for g in mors:
            rep.checked += 1
            a2, b2 = c.dom(g), c.cod(g)
            fg = s.tm(f, g)
            if fg != c.compose(s.rw(f, b2), s.lw(a, g)) or fg != c.compose(s.lw(b, g), s.rw(f, a2)):
                rep.add("bifunctoriality", (f, g))
    for a in objs:
        for b in objs:
            sab = s.sigma(a, b)
            if c.dom(sab) != s.t(a, b) or c.cod(sab) != s.t(b, a):
                rep.add("symmetry_typing", (a, b))
                continue
            if c.compose(s.sigma(b, a), sab) != c.identity(s.t(a, b)):
                rep.add("symmetry_involution", (a, b))
        if s.sigma(a, I) != c.identity(a):
            rep.add("symmetry_unit", (a,))
    for a, b, d in itertools.product(objs, repeat=3):
        lhs = s.sigma(a, s.t(b, d))
        rhs = c.compose(s.lw(b, s.sigma(a, d)), s.rw(s.sigma(a, b), d))
        if lhs != rhs:
            rep.add("hexagon", (a, b, d))
    if s.initial is not None:
        z = s.initial
        for a in objs:
            if len(homs.get((z, a), c.hom(z, a))) != 1:
                rep.add("initial_unique", (a,))
            if s.t(a, z) != z or s.t(z, a) != z:
                rep.add("initial_absorbs", (a,))
    return rep


def symmetry_for_permutation(s: SmcStructure, objs, perm):
    """Composite of adjacent symmetries sending ``tensor_word(objs)`` to ``tensor_word([objs[i] for i in perm])``."""
    c = s.cat
    cur = list(objs)
    order = list(range(len(objs)))
    mor = c.identity(s.tensor_word(cur))
    target = list(perm)
    # bubble sort on positions, each swap an adjacent symmetry whiskered by the rest
    for i in range(len(target)):
        j = order.index(target[i])
        while j > i:
            left, a, b, right = cur[:j - 1], cur[j - 1], cur[j], cur[j + 1:]
            swap = s.sigma(a, b)
            step = s.tm(s.tm(c.identity(s.tensor_word(left)), swap), c.identity(s.tensor_word(right)))
            mor = c.compose(step, mor)
            cur[j - 1], cur[j] = b, a
            order[j - 1], order[j] = order[j], order[j - 1]
            j -= 1
    return mor


@dataclass(frozen=True)
class MonoidObject:
    carrier: object
    mult: object
    unit_mor: object


def check_monoid(s: SmcStructure, m: MonoidObject) -> bool:
    c = s.cat
    M = m.carrier
    MM = s.t(M, M)
    if c.dom(m.mult) != MM or c.cod(m.mult) != M:
        raise TypeMismatch(f"multiplication must be {MM!r} -> {M!r}")
    if c.dom(m.unit_mor) != s.unit or c.cod(m.unit_mor) != M:
        raise TypeMismatch(f"unit must be {s.unit!r} -> {M!r}")
    idM = c.identity(M)
    assoc = c.compose(m.mult, s.tm(m.mult, idM)) == c.compose(m.mult, s.tm(idM, m.mult))
    left = c.compose(m.mult, s.tm(m.unit_mor, idM)) == idM
    right = c.compose(m.mult, s.tm(idM, m.unit_mor)) == idM
    return assoc and left and right


# -- products -----------------------------------------------------------------


class ProductCategory(Category):
    """Finite product of categories; objects and morphisms are tuples."""

    def __init__(self, factors, objects=None):
        self.factors = tuple(factors)
        if objects is None:
            objects = itertools.product(*(f.objects for f in self.factors))
        self.objects = tuple(sorted(objects, key=order_key))

    def dom(self, f):
        return tuple(c.dom(x) for c, x in zip(self.factors, f))

    def cod(self, f):
        return tuple(c.cod(x) for c, x in zip(self.factors, f))

    def identity(self, a):
        return tuple(c.identity(x) for c, x in zip(self.factors, a))

    def _compose(self, g, f):
        return tuple(c._compose(y, x) for c, y, x in zip(self.factors, g, f))

    def hom(self, a, b):
        return list(itertools.product(*(c.hom(x, y) for c, x, y in zip(self.factors, a, b))))

    def inverse(self, f):
        parts = []
        for c, x in zip(self.factors, f):
            inv = c.inverse(x)
            if inv is None:
                return None
            parts.append(inv)
        return tuple(parts)

    def size(self, a):
        return sum(c.size(x) for c, x in zip(self.factors, a))


def product_smc(smcs, objects=None, name=None):
    smcs = tuple(smcs)
    cat = ProductCategory([s.cat for s in smcs], objects)
    initial = None
    if all(s.initial is not None for s in smcs):
        initial = tuple(s.initial for s in smcs)
    return SmcStructure(
        cat,
        tuple(s.unit for s in smcs),
        lambda a, b: tuple(s.t(x, y) for s, x, y in zip(smcs, a, b)),
        lambda f, g: tuple(s.tm(x, y) for s, x, y in zip(smcs, f, g)),
        lambda a, b: tuple(s.sigma(x, y) for s, x, y in zip(smcs, a, b)),
        initial=initial,
        name=name,
    )
