"""Monads given by callables, their laws, monad morphisms, and Eilenberg-Moore / Kleisli categories."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .category import Category, Functor, ValidationReport, enumeration_cap, validate_functor
from .errors import SizeLimitError


class MonadData:
    """A monad ``(T, eta, mu)`` on ``cat``.

    ``obj(A)`` and ``mor(f)`` give the endofunctor; ``unit(A)`` is
    ``eta_A: A -> T A`` and ``mult(A)`` is ``mu_A: T T A -> T A``.
    """

    def __init__(self, cat: Category, obj, mor, unit, mult, name=None):
        self.cat = cat
        self.obj = obj
        self.mor = mor
        self.unit = unit
        self.mult = mult
        self.name = name

    @property
    def functor(self):
        return Functor(self.cat, self.cat, self.obj, self.mor, name=self.name)

    @classmethod
    def from_tables(cls, cat, obj_map, mor_map, unit, mult, name=None):
        return cls(cat, obj_map.__getitem__, mor_map.__getitem__, unit.__getitem__, mult.__getitem__, name)

    def table(self, objects=None):
        """Explicit tables over the fragment, for exact comparisons."""
        c = self.cat
        objs = list(c.objects if objects is None else objects)
        return {
            "obj": {a: self.obj(a) for a in objs},
            "mor": {f: self.mor(f) for a in objs for b in objs for f in c.hom(a, b)},
            "unit": {a: self.unit(a) for a in objs},
            "mult": {a: self.mult(a) for a in objs},
        }


def identity_monad(c: Category) -> MonadData:
    return MonadData(c, lambda a: a, lambda f: f, c.identity, c.identity, name="Id")


def _too_big(c, obj, cap):
    try:
        return c.size(obj) > cap
    except (TypeError, OverflowError):
        return True


def check_monad(m: MonadData, objects=None, cap=None) -> ValidationReport:
    """Functor laws, naturality of eta and mu, unit laws and associativity over the fragment.

    Instances whose carrier ``T^3 A`` exceeds ``cap`` elements are listed in
    ``skipped`` rather than silently dropped.
    """
    cap = enumeration_cap(cap)
    c, T = m.cat, m.obj
    objs = list(c.objects if objects is None else objects)
    rep = ValidationReport()
    rep.merge(validate_functor(m.functor, objs), "functor.")
    for a in objs:
        ta = T(a)
        eta, mu = m.unit(a), m.mult(a)
        if c.dom(eta) != a or c.cod(eta) != ta:
            rep.add("unit_typing", (a,))
            continue
        if c.dom(mu) != T(ta) or c.cod(mu) != ta:
            rep.add("mult_typing", (a,))
            continue
        rep.checked += 1
        if c.compose(mu, m.unit(ta)) != c.identity(ta):
            rep.add("left_unit", (a,))
        if c.compose(mu, m.mor(eta)) != c.identity(ta):
            rep.add("right_unit", (a,))
        if _too_big(c, T(T(ta)), cap):
            rep.skipped.append(f"associativity at {a!r}: T^3 carrier exceeds cap {cap}")
        elif c.compose(mu, m.mult(ta)) != c.compose(mu, m.mor(mu)):
            rep.add("associativity", (a,))
    for a in objs:
        for b in objs:
            for f in c.hom(a, b):
                rep.checked += 1
                tf = m.mor(f)
                if c.compose(m.unit(b), f) != c.compose(tf, m.unit(a)):
                    rep.add("unit_naturality", (f,))
                if _too_big(c, T(T(a)), cap):
                    rep.skipped.append(f"mult naturality at {f!r}: T^2 carrier exceeds cap {cap}")
                elif c.compose(m.mult(b), m.mor(tf)) != c.compose(tf, m.mult(a)):
                    rep.add("mult_naturality", (f,))
    return rep


# -- monad morphisms ------------------------------------------------------------


@dataclass
class MonadMorphism:
    """``functor: C -> D`` from ``source`` (on C) to ``target`` (on D).

    lax:   ``transform[A]: T F A -> F S A``
    oplax: ``transform[A]: F S A -> T F A``
    """

    functor: Functor
    source: MonadData
    target: MonadData
    transform: object
    kind: str = "lax"

    def __getitem__(self, a):
        return self.transform(a)


def check_monad_morphism(mm: MonadMorphism, objects=None) -> ValidationReport:
    F, S, T = mm.functor, mm.source, mm.target
    c, d = S.cat, T.cat
    objs = list(c.objects if objects is None else objects)
    rep = ValidationReport()
    lax = mm.kind == "lax"
    for a in objs:
        rep.checked += 1
        t = mm[a]
        fa = F.obj(a)
        want = (T.obj(fa), F.obj(S.obj(a))) if lax else (F.obj(S.obj(a)), T.obj(fa))
        if (d.dom(t), d.cod(t)) != want:
            rep.add("transform_typing", (a,))
            continue
        if lax:
            if d.compose(t, T.unit(fa)) != F(S.unit(a)):
                rep.add("unit_diagram", (a,))
            lhs = d.compose(t, T.mult(fa))
            rhs = d.chain(F(S.mult(a)), mm[S.obj(a)], T.mor(t))
            if lhs != rhs:
                rep.add("mult_diagram", (a,))
        else:
            if d.compose(t, F(S.unit(a))) != T.unit(fa):
                rep.add("unit_diagram", (a,))
            lhs = d.compose(t, F(S.mult(a)))
            rhs = d.chain(T.mult(fa), T.mor(t), mm[S.obj(a)])
            if lhs != rhs:
                rep.add("mult_diagram", (a,))
    for a in objs:
        for b in objs:
            for f in c.hom(a, b):
                rep.checked += 1
                if lax:
                    ok = d.compose(mm[b], T.mor(F(f))) == d.compose(F(S.mor(f)), mm[a])
                else:
                    ok = d.compose(T.mor(F(f)), mm[a]) == d.compose(mm[b], F(S.mor(f)))
                if not ok:
                    rep.add("naturality", (f,))
    return rep


# -- Eilenberg-Moore and Kleisli --------------------------------------------------


class Tagged(NamedTuple):
    dom: object
    cod: object
    base: object


def algebra_structures(m: MonadData, b, cap=None):
    """Every ``theta: T B -> B`` satisfying the two algebra laws."""
    cap = enumeration_cap(cap)
    c = m.cat
    tb = m.obj(b)
    cands = c.hom(tb, b)
    if len(cands) > cap:
        raise SizeLimitError(f"{len(cands)} candidate structure maps on {b!r} exceed cap {cap}")
    out = []
    for th in cands:
        if c.compose(th, m.unit(b)) != c.identity(b):
            continue
        if c.compose(th, m.mor(th)) != c.compose(th, m.mult(b)):
            continue
        out.append(th)
    return out


def is_algebra(m: MonadData, b, theta):
    c = m.cat
    return (c.dom(theta) == m.obj(b) and c.cod(theta) == b
            and c.compose(theta, m.unit(b)) == c.identity(b)
            and c.compose(theta, m.mor(theta)) == c.compose(theta, m.mult(b)))


class EMCategory(Category):
    """Algebras ``(B, theta)`` over the fragment; morphisms are algebra maps."""

    def __init__(self, m: MonadData, objects=None, cap=None):
        self.monad = m
        objs = list(m.cat.objects if objects is None else objects)
        self.objects = tuple((b, th) for b in objs for th in algebra_structures(m, b, cap))

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def identity(self, a):
        return Tagged(a, a, self.monad.cat.identity(a[0]))

    def _compose(self, g, f):
        return Tagged(f.dom, g.cod, self.monad.cat.compose(g.base, f.base))

    def hom(self, a, b):
        c, m = self.monad.cat, self.monad
        (x, th), (y, th2) = a, b
        return [Tagged(a, b, f) for f in c.hom(x, y)
                if c.compose(f, th) == c.compose(th2, m.mor(f))]


def em_free_forgetful(em: EMCategory):
    m, c = em.monad, em.monad.cat
    free = Functor(c, em, lambda a: (m.obj(a), m.mult(a)),
                   lambda f: Tagged((m.obj(c.dom(f)), m.mult(c.dom(f))), (m.obj(c.cod(f)), m.mult(c.cod(f))), m.mor(f)),
                   name="free")
    forget = Functor(em, c, lambda a: a[0], lambda f: f.base, name="forget")
    return free, forget


class KleisliCategory(Category):
    """``hom(A, B) = hom(A, T B)`` with composition ``mu . T g . f``."""

    def __init__(self, m: MonadData, objects=None):
        self.monad = m
        self.objects = tuple(m.cat.objects if objects is None else objects)

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def identity(self, a):
        return Tagged(a, a, self.monad.unit(a))

    def _compose(self, g, f):
        m, c = self.monad, self.monad.cat
        return Tagged(f.dom, g.cod, c.chain(m.mult(g.cod), m.mor(g.base), f.base))

    def hom(self, a, b):
        return [Tagged(a, b, k) for k in self.monad.cat.hom(a, self.monad.obj(b))]


def kleisli_free_forgetful(kl: KleisliCategory):
    m, c = kl.monad, kl.monad.cat
    free = Functor(c, kl, lambda a: a,
                   lambda f: Tagged(c.dom(f), c.cod(f), c.compose(m.unit(c.cod(f)), f)), name="free")
    forget = Functor(kl, c, m.obj, lambda k: c.compose(m.mult(k.cod), m.mor(k.base)), name="forget")
    return free, forget


def build_em_category(m: MonadData, objects=None, cap=None) -> EMCategory:
    return EMCategory(m, objects, cap)


def build_kleisli(m: MonadData, objects=None) -> KleisliCategory:
    return KleisliCategory(m, objects)


def check_free_forgetful(m: MonadData, objects=None, cap=None) -> ValidationReport:
    """Both categories validate, and ``forget . free`` is ``T`` on objects and morphisms."""
    from .category import validate_category

    rep = ValidationReport()
    objs = list(m.cat.objects if objects is None else objects)
    em = build_em_category(m, objs, cap)
    kl = build_kleisli(m, objs)
    rep.merge(validate_category(em), "em.")
    rep.merge(validate_category(kl), "kleisli.")
    for free, forget, tag in (em_free_forgetful(em) + ("em",), kleisli_free_forgetful(kl) + ("kleisli",)):
        rep.merge(validate_functor(forget), f"{tag}.forget.")
        for a in objs:
            if forget.obj(free.obj(a)) != m.obj(a):
                rep.add(f"{tag}.free_then_forget_objects", (a,))
            for b in objs:
                for f in m.cat.hom(a, b):
                    rep.checked += 1
                    if forget(free(f)) != m.mor(f):
                        rep.add(f"{tag}.free_then_forget", (f,))
    em_objs = set(em.objects)
    for a in objs:
        if (m.obj(a), m.mult(a)) not in em_objs and m.obj(a) in objs:
            rep.add("em.free_algebra_missing", (a,))
    return rep


def induced_algebra_functor(mm: MonadMorphism, source_em: EMCategory, target_em: EMCategory) -> Functor:
    """For lax ``(F, phi)`` from S to T: ``(B, theta) -> (F B, F theta . phi_B)``."""
    if mm.kind != "lax":
        raise ValueError("algebra functors are induced by lax monad morphisms")
    F, d = mm.functor, mm.target.cat

    def obj(alg):
        b, th = alg
        return (F.obj(b), d.compose(F(th), mm[b]))

    return Functor(source_em, target_em, obj, lambda f: Tagged(obj(f.dom), obj(f.cod), F(f.base)),
                   name="induced_algebra")


def check_induced_algebra_functor(mm: MonadMorphism, source_em: EMCategory, target_em: EMCategory) -> ValidationReport:
    rep = ValidationReport()
    H = induced_algebra_functor(mm, source_em, target_em)
    T = mm.target
    for alg in source_em.objects:
        rep.checked += 1
        fb, th = H.obj(alg)
        if not is_algebra(T, fb, th):
            rep.add("image_not_algebra", (alg,))
    if rep.ok:
        d = T.cat
        for a in source_em.objects:
            for b in source_em.objects:
                for f in source_em.hom(a, b):
                    rep.checked += 1
                    Hf = H(f)
                    (_, th), (_, th2) = Hf.dom, Hf.cod
                    if d.compose(Hf.base, th) != d.compose(th2, T.mor(Hf.base)):
                        rep.add("image_not_algebra_map", (f,))
                    # commutes with the forgetful functors: U_T H = F U_S
                    if Hf.base != mm.functor(f.base):
                        rep.add("forgetful_compatibility", (f,))
        rep.merge(validate_functor(H, list(source_em.objects)), "functor.")
    return rep


def induced_kleisli_functor(mm: MonadMorphism, source_kl: KleisliCategory, target_kl: KleisliCategory,
                            inverse_transform=None) -> Functor:
    """Kleisli categories map along oplax ``(F, psi)``: ``k -> psi_B . F k``.

    A lax morphism with invertible ``phi`` is accepted when ``inverse_transform``
    supplies ``phi^-1``.
    """
    F, d = mm.functor, mm.target.cat
    if mm.kind == "oplax":
        psi = mm.transform
    elif inverse_transform is not None:
        psi = inverse_transform
    else:
        raise ValueError("a lax morphism needs an inverse transform to act on Kleisli categories")
    return Functor(source_kl, target_kl, F.obj,
                   lambda k: Tagged(F.obj(k.dom), F.obj(k.cod), d.compose(psi(k.cod), F(k.base))),
                   name="induced_kleisli")


def check_induced_kleisli_functor(mm, source_kl, target_kl, inverse_transform=None) -> ValidationReport:
    H = induced_kleisli_functor(mm, source_kl, target_kl, inverse_transform)
    rep = validate_functor(H, list(source_kl.objects))
    # compatibility with the free functors: H . free_S = free_T . F
    free_s, _ = kleisli_free_forgetful(source_kl)
    free_t, _ = kleisli_free_forgetful(target_kl)
    c = mm.source.cat
    for a in source_kl.objects:
        for b in source_kl.objects:
            for f in c.hom(a, b):
                rep.checked += 1
                if H(free_s(f)) != free_t(mm.functor(f)):
                    rep.add("free_compatibility", (f,))
    return rep

