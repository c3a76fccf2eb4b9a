"""Restriction ``C|u`` to a central idempotent, the adjunction between restrictions, and the comonad ``- (x) U``.

A morphism ``A -> B`` of ``C|u`` is a base morphism ``A (x) U -> B``, tagged
with its endpoints in ``C|u`` (see ``RMor``); equality is equality of tags
and base morphism.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .category import Category, Functor, NatTransform, ValidationReport, check_natural, validate_functor
from .central import CentralIdempotent
from .errors import MissingInverse, NotLeq
from .monoidal import SmcStructure


class RMor(NamedTuple):
    dom: object
    cod: object
    base: object


class RestrictionCategory(Category):
    """``C|u`` computed on demand over the base fragment."""

    def __init__(self, s: SmcStructure, u: CentralIdempotent, objects=None):
        self.base = s
        self.u = u
        self.U = u.dom
        self.objects = tuple(s.cat.objects if objects is None else objects)
        self._inv = {}
        c = s.cat
        self._uinv = u.inv_witness if u.inv_witness is not None else c.inverse(s.lw(self.U, u.mor))
        if self._uinv is None:
            raise MissingInverse(f"U (x) u is not invertible for U = {self.U!r}", obj=self.U)

    def absorb_inverse(self, a):
        """``(A (x) U (x) u)^-1 : A (x) U -> A (x) U (x) U``, cached per object."""
        if a not in self._inv:
            s, c = self.base, self.base.cat
            inv = s.lw(a, self._uinv)
            fwd = s.lw(s.t(a, self.U), self.u.mor)
            if (c.compose(fwd, inv) != c.identity(s.t(a, self.U))
                    or c.compose(inv, fwd) != c.identity(c.dom(fwd))):
                inv = c.inverse(fwd)
                if inv is None:
                    raise MissingInverse(f"A (x) U (x) u is not invertible at A = {a!r}", obj=a)
            self._inv[a] = inv
        return self._inv[a]

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def identity(self, a):
        return RMor(a, a, self.base.lw(a, self.u.mor))

    def _compose(self, g, f):
        s, c = self.base, self.base.cat
        a = f.dom
        base = c.chain(g.base, s.rw(f.base, self.U), self.absorb_inverse(a))
        return RMor(a, g.cod, base)

    def hom(self, a, b):
        s = self.base
        return [RMor(a, b, f) for f in s.cat.hom(s.t(a, self.U), b)]

    def tag(self, a, b, base):
        """Wrap a base morphism ``A (x) U -> B`` as a morphism of ``C|u``."""
        return RMor(a, b, base)

    def size(self, a):
        # carriers are those of the base object; the cap guards work on T(A), not on A (x) U
        return self.base.cat.size(a)


def restriction_smc(r: RestrictionCategory) -> SmcStructure:
    """The symmetric monoidal structure on ``C|u``."""
    s, c, U = r.base, r.base.cat, r.U

    def tensor_mor(f, g):
        a, a2 = f.dom, g.dom
        base = c.chain(
            s.tm(f.base, g.base),
            s.lw(a, s.rw(s.sigma(a2, U), U)),
            r.absorb_inverse(s.t(a, a2)),
        )
        return RMor(s.t(a, a2), s.t(f.cod, g.cod), base)

    def symmetry(a, b):
        ab = s.t(a, b)
        return RMor(ab, s.t(b, a), c.compose(s.sigma(a, b), s.lw(ab, r.u.mor)))

    return SmcStructure(r, s.unit, s.t, tensor_mor, symmetry, initial=s.initial,
                        name=f"{s.name or 'C'}|{r.U!r}")


def build_restriction(s: SmcStructure, u: CentralIdempotent, objects=None):
    """``(C|u as a category, its SMC structure)``."""
    r = RestrictionCategory(s, u, objects)
    for a in r.objects:
        r.absorb_inverse(a)
    return r, restriction_smc(r)


def remark_iso(r: RestrictionCategory, a):
    """The isomorphism ``A ~ A (x) U`` in ``C|u`` and its inverse."""
    s = r.base
    au = s.t(a, r.U)
    fwd = RMor(a, au, s.cat.identity(au))
    bwd = RMor(au, a, s.lw(a, s.tm(r.u.mor, r.u.mor)))
    return fwd, bwd


def check_remark_isos(r: RestrictionCategory) -> ValidationReport:
    rep = ValidationReport()
    for a in r.objects:
        rep.checked += 1
        fwd, bwd = remark_iso(r, a)
        if r.compose(bwd, fwd) != r.identity(a):
            rep.add("remark_iso_left", (a,))
        if r.compose(fwd, bwd) != r.identity(r.base.t(a, r.U)):
            rep.add("remark_iso_right", (a,))
    return rep


# -- the adjunction between C|u and C|v ---------------------------------------


@dataclass
class RestrictionFunctors:
    """``upper -| lower`` between ``C|u`` (small) and ``C|v`` (large)."""

    small: RestrictionCategory
    large: RestrictionCategory
    m: object
    lower: Functor          # C|v -> C|u
    upper: Functor          # C|u -> C|v
    unit: NatTransform      # Id => lower.upper on C|u
    counit: NatTransform    # upper.lower => Id on C|v

    def comparison(self, a, b):
        """Oplax comparison ``F(A (x) B) -> F(A) (x) F(B)`` in ``C|v``."""
        s, c = self.small.base, self.small.base.cat
        U, v = self.small.U, self.large.u.mor
        ab = s.t(a, b)
        base = c.chain(
            s.lw(a, s.rw(s.sigma(b, U), U)),
            self.small.absorb_inverse(ab),
            s.lw(s.t(ab, U), v),
        )
        return RMor(s.t(ab, U), s.t(s.t(a, U), s.t(b, U)), base)

    def counit_comparison(self):
        """Oplax counit ``F(I) = U -> I`` in ``C|v``."""
        s = self.small.base
        return RMor(self.small.U, s.unit, s.tm(self.small.u.mor, self.large.u.mor))


def lower_functor(small: RestrictionCategory, large: RestrictionCategory, m) -> Functor:
    s = small.base
    return Functor(large, small, lambda a: a,
                   lambda f: RMor(f.dom, f.cod, s.cat.compose(f.base, s.lw(f.dom, m))),
                   name=f"lower[{small.U!r}<={large.U!r}]")


def upper_functor(small: RestrictionCategory, large: RestrictionCategory) -> Functor:
    s, c = small.base, small.base.cat
    U, v = small.U, large.u.mor

    def mor(f):
        a = f.dom
        # A (x) u (x) U equals A (x) U (x) u by centrality, so the cached inverse serves
        base = c.chain(s.rw(f.base, U), small.absorb_inverse(a), s.lw(s.t(a, U), v))
        return RMor(s.t(a, U), s.t(f.cod, U), base)

    return Functor(small, large, lambda a: s.t(a, U), mor, name=f"upper[{small.U!r}<={large.U!r}]")


def build_adjunction(s: SmcStructure, u: CentralIdempotent, v: CentralIdempotent, m,
                     small: RestrictionCategory | None = None, large: RestrictionCategory | None = None,
                     objects=None) -> RestrictionFunctors:
    c = s.cat
    if c.dom(m) != u.dom or c.cod(m) != v.dom or c.compose(v.mor, m) != u.mor:
        raise NotLeq(f"{m!r} does not witness u = v . m")
    small = small or RestrictionCategory(s, u, objects)
    large = large or RestrictionCategory(s, v, objects)
    G = lower_functor(small, large, m)
    F = upper_functor(small, large)
    GF = F.then(G)
    FG = G.then(F)
    U = u.dom
    unit = NatTransform(identity_like(small), GF, lambda a: RMor(a, s.t(a, U), c.identity(s.t(a, U))), name="unit")
    counit = NatTransform(FG, identity_like(large),
                          lambda b: RMor(s.t(b, U), b, s.lw(b, s.tm(u.mor, v.mor))), name="counit")
    return RestrictionFunctors(small, large, m, G, F, unit, counit)


def identity_like(c: Category) -> Functor:
    return Functor(c, c, lambda a: a, lambda f: f, name="Id")


def check_adjunction(adj: RestrictionFunctors, objects=None) -> ValidationReport:
    """Functor laws, naturality, triangle identities, and invertibility of the unit."""
    rep = ValidationReport()
    objs = list(adj.small.objects if objects is None else objects)
    rep.merge(validate_functor(adj.lower, objs), "lower.")
    rep.merge(validate_functor(adj.upper, objs), "upper.")
    rep.merge(check_natural(adj.unit, objs), "unit.")
    rep.merge(check_natural(adj.counit, objs), "counit.")
    F, G, small, large = adj.upper, adj.lower, adj.small, adj.large
    for a in objs:
        rep.checked += 1
        # counit_{F A} . F(unit_A) = id_{F A}
        if large.compose(adj.counit[F.obj(a)], F(adj.unit[a])) != large.identity(F.obj(a)):
            rep.add("triangle_upper", (a,))
        # G(counit_B) . unit_{G B} = id_{G B}
        if small.compose(G(adj.counit[a]), adj.unit[G.obj(a)]) != small.identity(a):
            rep.add("triangle_lower", (a,))
        if small.inverse(adj.unit[a]) is None:
            rep.add("unit_invertible", (a,))
    return rep


def check_lower_strict_monoidal(adj: RestrictionFunctors, objects=None) -> ValidationReport:
    rep = ValidationReport()
    objs = list(adj.small.objects if objects is None else objects)
    sv, su = restriction_smc(adj.large), restriction_smc(adj.small)
    G = adj.lower
    mors = [f for a in objs for b in objs for f in adj.large.hom(a, b)]
    for f in mors:
        for g in mors:
            rep.checked += 1
            if G(sv.tm(f, g)) != su.tm(G(f), G(g)):
                rep.add("lower_preserves_tensor", (f, g))
    for a in objs:
        for b in objs:
            if G(sv.sigma(a, b)) != su.sigma(a, b):
                rep.add("lower_preserves_symmetry", (a, b))
    return rep


def check_upper_oplax(adj: RestrictionFunctors, objects=None) -> ValidationReport:
    """Naturality, coassociativity and counitality of the oplax structure of ``upper``."""
    rep = ValidationReport()
    objs = list(adj.small.objects if objects is None else objects)
    sv, su = restriction_smc(adj.large), restriction_smc(adj.small)
    F, L = adj.upper, adj.large
    e = adj.counit_comparison()
    I = su.unit
    for a in objs:
        rep.checked += 1
        fa = L.identity(F.obj(a))
        if L.compose(sv.tm(e, fa), adj.comparison(I, a)) != fa:
            rep.add("oplax_left_counit", (a,))
        if L.compose(sv.tm(fa, e), adj.comparison(a, I)) != fa:
            rep.add("oplax_right_counit", (a,))
    for a in objs:
        for b in objs:
            d = adj.comparison(a, b)
            for a2 in objs:
                for b2 in objs:
                    for f in adj.small.hom(a, a2):
                        for g in adj.small.hom(b, b2):
                            rep.checked += 1
                            lhs = L.compose(sv.tm(F(f), F(g)), d)
                            rhs = L.compose(adj.comparison(a2, b2), F(su.tm(f, g)))
                            if lhs != rhs:
                                rep.add("oplax_naturality", (f, g))
            for c3 in objs:
                rep.checked += 1
                ab_c = L.compose(sv.tm(d, L.identity(F.obj(c3))), adj.comparison(su.t(a, b), c3))
                a_bc = L.compose(sv.tm(L.identity(F.obj(a)), adj.comparison(b, c3)), adj.comparison(a, su.t(b, c3)))
                if ab_c != a_bc:
                    rep.add("oplax_coassociativity", (a, b, c3))
    return rep


def check_decomposition(s: SmcStructure, chain3, objects=None) -> ValidationReport:
    """The three functor identities for ``u <= v <= w``.

    ``chain3 = ((u, v, w), (m_uv, m_vw))``; the outer witness is ``m_vw . m_uv``.
    """
    (u, v, w), (m_uv, m_vw) = chain3
    c = s.cat
    ru, rv, rw = (RestrictionCategory(s, x, objects) for x in (u, v, w))
    uv = build_adjunction(s, u, v, m_uv, ru, rv)
    vw = build_adjunction(s, v, w, m_vw, rv, rw)
    uw = build_adjunction(s, u, w, c.compose(m_vw, m_uv), ru, rw)
    rep = ValidationReport()
    objs = list(ru.objects)
    for a in objs:
        for b in objs:
            for f in ru.hom(a, b):
                rep.checked += 1
                if vw.upper(uv.upper(f)) != uw.upper(f):
                    rep.add("upper_composite", (f,))
                if vw.lower(uw.upper(f)) != uv.upper(f):
                    rep.add("upper_through_lower", (f,))
            for f in rw.hom(a, b):
                rep.checked += 1
                if uv.lower(vw.lower(f)) != uw.lower(f):
                    rep.add("lower_composite", (f,))
    return rep


# -- the comonad (x) U on C|v and its co-Kleisli category -------------------------------


@dataclass
class ComonadData:
    cat: Category
    functor: Functor
    counit: NatTransform
    comult: NatTransform


def comonad_tensor_u(adj: RestrictionFunctors) -> ComonadData:
    """``- (x) U = upper . lower`` on ``C|v`` with counit and ``delta = upper(unit_lower)``."""
    F, G = adj.upper, adj.lower
    W = G.then(F)
    delta = NatTransform(W, W.then(W), lambda a: F(adj.unit[G.obj(a)]), name="delta")
    return ComonadData(adj.large, W, adj.counit, delta)


def check_comonad(cm: ComonadData, objects=None) -> ValidationReport:
    rep = ValidationReport()
    c, W = cm.cat, cm.functor
    objs = list(c.objects if objects is None else objects)
    rep.merge(validate_functor(W, objs), "functor.")
    rep.merge(check_natural(cm.counit, objs), "counit.")
    rep.merge(check_natural(cm.comult, objs), "comult.")
    for a in objs:
        rep.checked += 1
        d = cm.comult[a]
        idw = c.identity(W.obj(a))
        if c.compose(cm.counit[W.obj(a)], d) != idw:
            rep.add("counit_left", (a,))
        if c.compose(W(cm.counit[a]), d) != idw:
            rep.add("counit_right", (a,))
        if c.compose(cm.comult[W.obj(a)], d) != c.compose(W(d), d):
            rep.add("coassociativity", (a,))
    return rep


class CoKleisli(Category):
    """Co-Kleisli category: ``hom(A, B) = hom(W A, B)``; morphisms tagged ``(A, B, k)``."""

    def __init__(self, cm: ComonadData):
        self.cm = cm
        self.objects = cm.cat.objects

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def identity(self, a):
        return RMor(a, a, self.cm.counit[a])

    def _compose(self, g, f):
        c, W = self.cm.cat, self.cm.functor
        return RMor(f.dom, g.cod, c.chain(g.base, W(f.base), self.cm.comult[f.dom]))

    def hom(self, a, b):
        return [RMor(a, b, k) for k in self.cm.cat.hom(self.cm.functor.obj(a), b)]


def cokleisli_iso(adj: RestrictionFunctors):
    """Identity-on-objects functors ``C|u -> coKl`` (``f -> counit . F f``) and back (``k -> G k . unit``)."""
    cm = comonad_tensor_u(adj)
    K = CoKleisli(cm)
    small, large = adj.small, adj.large
    F, G = adj.upper, adj.lower
    to_k = Functor(small, K, lambda a: a,
                   lambda f: RMor(f.dom, f.cod, large.compose(adj.counit[f.cod], F(f))), name="to_cokleisli")

    from_k = Functor(K, small, lambda a: a,
                     lambda k: small.compose(G(k.base), adj.unit[k.dom]), name="from_cokleisli")
    return K, to_k, from_k


def check_cokleisli_iso(adj: RestrictionFunctors, objects=None) -> ValidationReport:
    K, to_k, from_k = cokleisli_iso(adj)
    objs = list(adj.small.objects if objects is None else objects)
    rep = ValidationReport()
    rep.merge(check_comonad(comonad_tensor_u(adj), objs), "comonad.")
    rep.merge(validate_functor(to_k, objs), "to.")
    rep.merge(validate_functor(from_k, objs), "from.")
    for a in objs:
        if to_k.obj(a) != a or from_k.obj(a) != a:
            rep.add("identity_on_objects", (a,))
        for b in objs:
            for f in adj.small.hom(a, b):
                rep.checked += 1
                if from_k(to_k(f)) != f:
                    rep.add("roundtrip_small", (f,))
            for k in K.hom(a, b):
                rep.checked += 1
                if to_k(from_k(k)) != k:
                    rep.add("roundtrip_cokleisli", (k,))
    return rep

