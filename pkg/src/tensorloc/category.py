"""Finite categories, functors, natural transformations and brute-force limit checks.

Two kinds of category share one interface. ``FinCategory`` is an explicit
table (objects, morphism ids, identities, composition). Computed categories
(skeletal finite sets, products, functor categories, restrictions) subclass
``Category`` and compute composites on demand; their ``objects`` attribute is
the enumerated *fragment* that exhaustive checks quantify over.

Composition is written in the usual order: ``compose(g, f)`` is ``g . f``.
"""
from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Sequence

from .errors import MalformedTable, NonCommutingSquare, NotComposable, SizeLimitError

DEFAULT_CAP = 10**6


def enumeration_cap(cap=None):
    """Resolve an enumeration cap: explicit value, else ``TENSORLOC_CAP``, else 10**6."""
    if cap is not None:
        return int(cap)
    env = os.environ.get("TENSORLOC_CAP")
    return int(env) if env else DEFAULT_CAP


def order_key(x):
    """Total deterministic order on the ids we use (ints, strings, nested tuples)."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(order_key(y) for y in x))
    if isinstance(x, frozenset):
        return (3, tuple(sorted(order_key(y) for y in x)))
    if x is None:
        return (-1,)
    return (4, repr(x))


@dataclass
class ValidationReport:
    """Outcome of an exhaustive law check: every violated instance, by name."""

    violations: list = field(default_factory=list)
    checked: int = 0
    skipped: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def add(self, law, instance):
        self.violations.append((law, instance))

    def merge(self, other, prefix=""):
        self.violations.extend((prefix + law, inst) for law, inst in other.violations)
        self.skipped.extend(prefix + s for s in other.skipped)
        self.checked += other.checked
        return self

    def laws_failed(self):
        return sorted({law for law, _ in self.violations})

    def to_json(self):
        return {
            "ok": self.ok,
            "checked": self.checked,
            "violations": [{"law": law, "instance": _jsonable(inst)} for law, inst in self.violations],
            "skipped": list(self.skipped),
        }


def _jsonable(x):
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    if isinstance(x, frozenset):
        return sorted((_jsonable(y) for y in x), key=repr)
    return repr(x)


class Category:
    """Interface for categories whose hom-sets can be enumerated."""

    objects: tuple = ()

    def dom(self, f):
        raise NotImplementedError

    def cod(self, f):
        raise NotImplementedError

    def identity(self, a):
        raise NotImplementedError

    def _compose(self, g, f):
        raise NotImplementedError

    def hom(self, a, b) -> Sequence:
        raise NotImplementedError

    def size(self, a) -> int:
        """Rough cardinality used by enumeration caps; table categories are small."""
        return 1

    def compose(self, g, f):
        if self.cod(f) != self.dom(g):
            raise NotComposable(f"cannot compose {g!r} after {f!r}: {self.cod(f)!r} != {self.dom(g)!r}")
        return self._compose(g, f)

    def chain(self, *ms):
        """``chain(h, g, f)`` is ``h . g . f``."""
        if not ms:
            raise NotComposable("empty path")
        out = ms[-1]
        for m in reversed(ms[:-1]):
            out = self.compose(m, out)
        return out

    def morphisms(self, objects=None):
        objs = self.objects if objects is None else objects
        for a in objs:
            for b in objs:
                yield from self.hom(a, b)

    def inverse(self, f):
        """Two-sided inverse of ``f`` or ``None``, by search of the reverse hom-set."""
        a, b = self.dom(f), self.cod(f)
        ida, idb = self.identity(a), self.identity(b)
        for g in self.hom(b, a):
            if self._compose(g, f) == ida and self._compose(f, g) == idb:
                return g
        return None

    def is_iso(self, f):
        return self.inverse(f) is not None

    def isomorphisms(self, a, b):
        return [f for f in self.hom(a, b) if self.inverse(f) is not None]


class FinCategory(Category):
    """A category given by explicit tables.

    ``morphisms`` maps id -> (dom, cod); ``compose`` maps (g, f) -> g.f for
    every composable pair.
    """

    def __init__(self, objects, morphisms, identities, compose, name=None):
        self.objects = tuple(objects)
        self.morphism_table = dict(morphisms)
        self.identities = dict(identities)
        self.compose_table = dict(compose)
        self.name = name
        self._hom = {}
        obj_set = set(self.objects)
        for m, (d, c) in self.morphism_table.items():
            if d not in obj_set or c not in obj_set:
                raise MalformedTable(f"morphism {m!r} has unknown endpoint")
            self._hom.setdefault((d, c), []).append(m)
        for a, i in self.identities.items():
            if i not in self.morphism_table:
                raise MalformedTable(f"identity of {a!r} is unknown morphism {i!r}")
        for (g, f), h in self.compose_table.items():
            for x in (g, f, h):
                if x not in self.morphism_table:
                    raise MalformedTable(f"compose table references unknown id {x!r}")
        for k in self._hom:
            self._hom[k].sort(key=order_key)

    def dom(self, f):
        try:
            return self.morphism_table[f][0]
        except KeyError:
            raise MalformedTable(f"unknown morphism {f!r}") from None

    def cod(self, f):
        try:
            return self.morphism_table[f][1]
        except KeyError:
            raise MalformedTable(f"unknown morphism {f!r}") from None

    def identity(self, a):
        try:
            return self.identities[a]
        except KeyError:
            raise MalformedTable(f"no identity for {a!r}") from None

    def _compose(self, g, f):
        try:
            return self.compose_table[(g, f)]
        except KeyError:
            raise MalformedTable(f"composable pair ({g!r}, {f!r}) missing from table") from None

    def hom(self, a, b):
        return self._hom.get((a, b), [])

    def morphisms(self, objects=None):
        if objects is None:
            return sorted(self.morphism_table, key=order_key)
        return super().morphisms(objects)


def poset_category(elements, leq: Callable[[Any, Any], bool], name=None):
    """Thin category of a finite preorder; the morphism x -> y is the id ``(x, y)``."""
    elements = list(elements)
    morphisms = {(x, y): (x, y) for x in elements for y in elements if leq(x, y)}
    identities = {x: (x, x) for x in elements}
    compose = {}
    for (x, y) in morphisms:
        for (y2, z) in morphisms:
            if y2 == y:
                compose[((y, z), (x, y))] = (x, z)
    return FinCategory(elements, morphisms, identities, compose, name=name)


def materialize(cat: Category, objects=None, name=None):
    """Copy the fragment of a computed category into an explicit ``FinCategory``."""
    objs = list(cat.objects if objects is None else objects)
    mors = {}
    for a in objs:
        for b in objs:
            for f in cat.hom(a, b):
                mors[f] = (a, b)
    compose = {}
    by_dom = {}
    for f, (a, b) in mors.items():
        by_dom.setdefault(a, []).append(f)
    for f, (a, b) in mors.items():
        for g in by_dom.get(b, ()):
            compose[(g, f)] = cat.compose(g, f)
    return FinCategory(objs, mors, {a: cat.identity(a) for a in objs}, compose, name=name)


# -- validation ---------------------------------------------------------------


def validate_category(c: Category, objects=None, cap=None) -> ValidationReport:
    """Exhaustive identity/associativity/typing check over the fragment."""
    rep = ValidationReport()
    objs = list(c.objects if objects is None else objects)
    cap = enumeration_cap(cap)
    homs = {}
    total = 0
    for a in objs:
        for b in objs:
            hs = list(c.hom(a, b))
            total += len(hs)
            if total > cap:
                raise SizeLimitError(f"fragment has more than {cap} morphisms")
            homs[(a, b)] = hs
    for a in objs:
        ida = c.identity(a)
        if c.dom(ida) != a or c.cod(ida) != a:
            rep.add("identity_typing", (a,))
    for (a, b), hs in homs.items():
        for f in hs:
            rep.checked += 1
            if c.dom(f) != a or c.cod(f) != b:
                rep.add("hom_typing", (f,))
                continue
            if c.compose(c.identity(b), f) != f:
                rep.add("left_identity", (f,))
            if c.compose(f, c.identity(a)) != f:
                rep.add("right_identity", (f,))
    for a in objs:
        for b in objs:
            for f in homs[(a, b)]:
                for cc in objs:
                    for g in homs[(b, cc)]:
                        gf = c.compose(g, f)
                        if c.dom(gf) != a or c.cod(gf) != cc:
                            rep.add("composite_typing", (g, f))
                            continue
                        for d in objs:
                            for h in homs[(cc, d)]:
                                rep.checked += 1
                                if c.compose(h, gf) != c.compose(c.compose(h, g), f):
                                    rep.add("associativity", (h, g, f))
    return rep


def check_commutes(c: Category, path1: Sequence, path2: Sequence) -> bool:
    """Whether two composable paths (each listed as for ``chain``) have equal composites."""
    p1, p2 = c.chain(*path1), c.chain(*path2)
    return p1 == p2


# -- functors and transformations ---------------------------------------------


class Functor:
    def __init__(self, source: Category, target: Category, obj, mor, name=None):
        self.source = source
        self.target = target
        self._obj = obj
        self._mor = mor
        self.name = name

    @classmethod
    def from_tables(cls, source, target, obj_map: dict, mor_map: dict, name=None):
        def obj(a):
            try:
                return obj_map[a]
            except KeyError:
                raise MalformedTable(f"functor {name} undefined on object {a!r}") from None

        def mor(f):
            try:
                return mor_map[f]
            except KeyError:
                raise MalformedTable(f"functor {name} undefined on morphism {f!r}") from None

        return cls(source, target, obj, mor, name)

    def obj(self, a):
        return self._obj(a)

    def __call__(self, f):
        return self._mor(f)

    def mor(self, f):
        return self._mor(f)

    def then(self, other: "Functor", name=None):
        """``self`` followed by ``other``."""
        return Functor(self.source, other.target, lambda a: other.obj(self.obj(a)),
                       lambda f: other(self(f)), name=name)


def identity_functor(c: Category):
    return Functor(c, c, lambda a: a, lambda f: f, name="Id")


def validate_functor(F: Functor, objects=None) -> ValidationReport:
    rep = ValidationReport()
    src, tgt = F.source, F.target
    objs = list(src.objects if objects is None else objects)
    homs = {(a, b): list(src.hom(a, b)) for a in objs for b in objs}
    for a in objs:
        if F(src.identity(a)) != tgt.identity(F.obj(a)):
            rep.add("preserves_identity", (a,))
    for (a, b), hs in homs.items():
        for f in hs:
            rep.checked += 1
            Ff = F(f)
            if tgt.dom(Ff) != F.obj(a) or tgt.cod(Ff) != F.obj(b):
                rep.add("preserves_typing", (f,))
                continue
            for cc in objs:
                for g in homs[(b, cc)]:
                    if F(src.compose(g, f)) != tgt.compose(F(g), Ff):
                        rep.add("preserves_composition", (g, f))
    return rep


class NatTransform:
    def __init__(self, source: Functor, target: Functor, component, name=None):
        self.source = source
        self.target = target
        self._component = component
        self.name = name

    def __getitem__(self, a):
        return self._component(a)


def check_natural(alpha: NatTransform, objects=None) -> ValidationReport:
    rep = ValidationReport()
    F, G = alpha.source, alpha.target
    c, d = F.source, F.target
    objs = list(c.objects if objects is None else objects)
    for a in objs:
        comp = alpha[a]
        if d.dom(comp) != F.obj(a) or d.cod(comp) != G.obj(a):
            rep.add("component_typing", (a,))
    for a in objs:
        for b in objs:
            for f in c.hom(a, b):
                rep.checked += 1
                if d.compose(alpha[b], F(f)) != d.compose(G(f), alpha[a]):
                    rep.add("naturality", (f,))
    return rep


# -- limits -------------------------------------------------------------------


@dataclass(frozen=True)
class Square:
    """A commutative square ``right . top == bottom . left``.

        apex --top--> x
          |           |
        left        right
          v           v
          y --bottom--> corner
    """

    top: Hashable
    left: Hashable
    right: Hashable
    bottom: Hashable


def _square_commutes(c, sq):
    return c.compose(sq.right, sq.top) == c.compose(sq.bottom, sq.left)


def is_pullback(c: Category, sq: Square, objects=None) -> bool:
    """Universal property of the apex, decided by enumerating every cone over the fragment."""
    if not _square_commutes(c, sq):
        raise NonCommutingSquare(f"square does not commute: {sq}")
    apex, x, y = c.dom(sq.top), c.cod(sq.top), c.cod(sq.left)
    objs = list(c.objects if objects is None else objects)
    for q in objs:
        by_image = {}
        for q2 in c.hom(q, y):
            by_image.setdefault(c.compose(sq.bottom, q2), []).append(q2)
        mediated = Counter((c.compose(sq.top, h), c.compose(sq.left, h)) for h in c.hom(q, apex))
        if any(n > 1 for n in mediated.values()):
            # two mediators for the same (necessarily commuting) cone
            return False
        for q1 in c.hom(q, x):
            for q2 in by_image.get(c.compose(sq.right, q1), ()):
                if (q1, q2) not in mediated:
                    return False
    return True


def is_pushout(c: Category, sq: Square, objects=None) -> bool:
    """Dual of ``is_pullback``: the corner is universal among cocones."""
    if not _square_commutes(c, sq):
        raise NonCommutingSquare(f"square does not commute: {sq}")
    corner, x, y = c.cod(sq.right), c.cod(sq.top), c.cod(sq.left)
    objs = list(c.objects if objects is None else objects)
    for q in objs:
        by_image = {}
        for q2 in c.hom(y, q):
            by_image.setdefault(c.compose(q2, sq.left), []).append(q2)
        mediated = Counter((c.compose(h, sq.right), c.compose(h, sq.bottom)) for h in c.hom(corner, q))
        if any(n > 1 for n in mediated.values()):
            return False
        for q1 in c.hom(x, q):
            for q2 in by_image.get(c.compose(q1, sq.top), ()):
                if (q1, q2) not in mediated:
                    return False
    return True


def all_paths(c: Category, start, length: int, objects=None) -> Iterable[tuple]:
    """Composable paths of exactly ``length`` morphisms starting at ``start`` (listed first-applied first)."""
    objs = list(c.objects if objects is None else objects)
    if length == 0:
        yield ()
        return
    for b in objs:
        for f in c.hom(start, b):
            for rest in all_paths(c, b, length - 1, objs):
                yield (f,) + rest
