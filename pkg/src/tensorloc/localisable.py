"""Strength families over central idempotents, the localisable-monad axioms, and restricted monads."""
from __future__ import annotations

from dataclasses import dataclass, field

from .category import ValidationReport, order_key
from .central import CentralIdempotent, ZiSemilattice, points, zi_semilattice
from .errors import IllTypedStrength, NotLocalisable
from .lattices import FiniteLattice, closure_monad, semilattice_smc
from .monad import MonadData, MonadMorphism, check_monad_morphism
from .monoidal import SmcStructure
from .restriction import RMor, RestrictionCategory, build_adjunction, restriction_smc

EQUATIONS = ("eq1_unitor", "eq2_associator", "eq3_unit", "eq4_multiplication", "eq5_natural_in_u", "eq6_natural_in_a")


class StrengthFamily:
    """``str_{A,U}: T(A) (x) U -> T(A (x) U)`` for ZI representatives ``U``.

    ``component(A, k)`` returns the morphism for object ``A`` and the k-th
    representative. Explicit tables wrap a dict keyed by ``(A, k)``.
    """

    def __init__(self, smc: SmcStructure, monad: MonadData, zi: ZiSemilattice, component, name=None):
        self.smc = smc
        self.monad = monad
        self.zi = zi
        self._component = component
        self.name = name
        self._cache = {}

    @classmethod
    def from_table(cls, smc, monad, zi, table: dict, name=None):
        def get(a, k):
            try:
                return table[(a, k)]
            except KeyError:
                raise IllTypedStrength(f"strength table has no entry for object {a!r}, idempotent #{k}") from None
        return cls(smc, monad, zi, get, name)

    def with_overrides(self, table: dict, name=None):
        """The same family with the ``(A, k)`` entries in ``table`` replaced."""
        base = self
        return StrengthFamily(self.smc, self.monad, self.zi,
                              lambda a, k: table[(a, k)] if (a, k) in table else base(a, k), name or self.name)

    def __call__(self, a, k):
        key = (a, k)
        if key not in self._cache:
            self._cache[key] = self._component(a, k)
        return self._cache[key]

    def at(self, a, U, u):
        """Strength at an arbitrary central idempotent ``u: U -> I``, transported from its representative."""
        k, m = self.zi.classify(U, u)
        rep = self.zi.elements[k]
        if rep.dom == U and rep.mor == u:
            return self(a, k)
        s, T, c = self.smc, self.monad, self.smc.cat
        m_inv = c.inverse(m)
        return c.chain(T.mor(s.lw(a, m_inv)), self(a, k), s.lw(T.obj(a), m))

    def table(self, objects=None):
        objs = list(self.smc.cat.objects if objects is None else objects)
        return {(a, k): self(a, k) for a in objs for k in range(len(self.zi))}


@dataclass
class LocalisableMonad:
    smc: SmcStructure
    monad: MonadData
    strength: StrengthFamily
    report: "AxiomReport | None" = None

    @property
    def zi(self):
        return self.strength.zi


@dataclass
class EquationResult:
    checked: int = 0
    failures: int = 0
    counterexample: object = None
    strictified: bool = False

    @property
    def ok(self):
        return self.failures == 0

    def record(self, holds, instance):
        self.checked += 1
        if not holds:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = instance


@dataclass
class AxiomReport:
    results: dict = field(default_factory=lambda: {e: EquationResult(strictified=e in EQUATIONS[:2]) for e in EQUATIONS})
    skipped: list = field(default_factory=list)

    @property
    def ok(self):
        return all(r.ok for r in self.results.values())

    def failed(self):
        return [e for e in EQUATIONS if not self.results[e].ok]

    def first_failure(self):
        for e in EQUATIONS:
            if not self.results[e].ok:
                return e, self.results[e].counterexample
        return None

    def to_json(self):
        from .io import encode_value

        return {
            "ok": self.ok,
            "equations": {
                e: {
                    "status": "pass" if r.ok else "fail",
                    "checked": r.checked,
                    "failures": r.failures,
                    "counterexample": None if r.counterexample is None else encode_value(r.counterexample),
                    **({"form": "strictified"} if r.strictified else {}),
                }
                for e, r in self.results.items()
            },
            "skipped": self.skipped,
        }


def _check_typing(sf: StrengthFamily, objs):
    s, T, c = sf.smc, sf.monad, sf.smc.cat
    for a in objs:
        for k, u in enumerate(sf.zi.elements):
            st = sf(a, k)
            want = (s.t(T.obj(a), u.dom), T.obj(s.t(a, u.dom)))
            if (c.dom(st), c.cod(st)) != want:
                raise IllTypedStrength(f"str at ({a!r}, #{k}) has type {c.dom(st)!r} -> {c.cod(st)!r}, expected {want[0]!r} -> {want[1]!r}")


def check_localisable(m: MonadData, sf: StrengthFamily, objects=None) -> AxiomReport:
    """All six equations, exhaustively over the fragment; first failures in lexicographic instance order."""
    s, c, T = sf.smc, sf.smc.cat, m
    z = sf.zi
    objs = sorted(c.objects if objects is None else objects, key=order_key)
    _check_typing(sf, objs)
    rep = AxiomReport()
    R = rep.results
    I = s.unit
    reps = list(enumerate(z.elements))
    for a in objs:
        ta = T.obj(a)
        # (1) strictified: str_{A,I} = id
        R["eq1_unitor"].record(sf.at(a, I, c.identity(I)) == c.identity(ta), (a,))
        for k, u in reps:
            U = u.dom
            st = sf(a, k)
            au = s.t(a, U)
            # (3)
            R["eq3_unit"].record(T.unit(au) == c.compose(st, s.rw(T.unit(a), U)), (a, k))
            # (4)
            lhs = c.chain(T.mult(au), T.mor(st), sf(ta, k))
            rhs = c.compose(st, s.rw(T.mult(a), U))
            R["eq4_multiplication"].record(lhs == rhs, (a, k))
            for j, v in reps:
                V = v.dom
                # (2) strictified: str_{A,U(x)V} = str_{A(x)U,V} . (str_{A,U} (x) V)
                lhs = sf.at(a, s.t(U, V), s.tm(u.mor, v.mor))
                rhs = c.compose(sf(au, j), s.rw(st, V))
                R["eq2_associator"].record(lhs == rhs, (a, k, j))
                # (5) over every witness m with u = v . m
                for mm in z.leq.get((k, j), ()):
                    lhs = c.compose(sf(a, j), s.lw(ta, mm))
                    rhs = c.compose(T.mor(s.lw(a, mm)), st)
                    R["eq5_natural_in_u"].record(lhs == rhs, (a, k, j, mm))
        # (5) for non-representative class members against their representative
        for k, members in enumerate(z.members):
            for mem in members[1:]:
                for mm in [x for x in c.hom(mem.dom, z.elements[k].dom)
                           if c.compose(z.elements[k].mor, x) == mem.mor]:
                    lhs = c.compose(sf(a, k), s.lw(ta, mm))
                    rhs = c.compose(T.mor(s.lw(a, mm)), sf.at(a, mem.dom, mem.mor))
                    R["eq5_natural_in_u"].record(lhs == rhs, (a, ("member", k, mem.dom), k, mm))
    # (6) over every morphism of the fragment
    for a in objs:
        for b in objs:
            for f in c.hom(a, b):
                tf = T.mor(f)
                for k, u in reps:
                    U = u.dom
                    lhs = c.compose(sf(b, k), s.rw(tf, U))
                    rhs = c.compose(T.mor(s.rw(f, U)), sf(a, k))
                    R["eq6_natural_in_a"].record(lhs == rhs, (a, b, f, k))
    return rep


def check_commutative(lm: LocalisableMonad, objects=None):
    """``(True, None)`` or ``(False, (A, k, j))`` for the hexagon relating the two strength orders."""
    s, c, T, sf = lm.smc, lm.smc.cat, lm.monad, lm.strength
    objs = sorted(c.objects if objects is None else objects, key=order_key)
    reps = list(enumerate(lm.zi.elements))
    for a in objs:
        ta = T.obj(a)
        for k, u in reps:
            for j, v in reps:
                U, V = u.dom, v.dom
                top = c.compose(sf(s.t(a, U), j), s.rw(sf(a, k), V))
                bottom = c.chain(
                    T.mor(s.lw(a, s.sigma(V, U))),
                    sf(s.t(a, V), k),
                    s.rw(sf(a, j), U),
                    s.lw(ta, s.sigma(U, V)),
                )
                if top != bottom:
                    return False, (a, k, j)
    return True, None


# -- constructions of strengths ---------------------------------------------------


def strength_from_closure(lat: FiniteLattice, c, smc: SmcStructure | None = None):
    """The unique strength for a closure operator, or ``NotLocalisable`` naming ``(a, u)``.

    Thin categories have at most one candidate per component, so the search
    is over hom-sets: the first ``(a, u)`` with an empty hom is reported.
    """
    smc = smc or semilattice_smc(lat)
    m = closure_monad(lat, c, smc)
    z = zi_semilattice(smc)
    cat = smc.cat
    table = {}
    for a in sorted(cat.objects, key=order_key):
        for k, u in enumerate(z.elements):
            hom = cat.hom(smc.t(m.obj(a), u.dom), m.obj(smc.t(a, u.dom)))
            if not hom:
                raise NotLocalisable(f"no morphism closure({a}) /\\ {u.dom} -> closure({a} /\\ {u.dom})",
                                     pair=(a, u.dom))
            table[(a, k)] = hom[0]
    return StrengthFamily.from_table(smc, m, z, table, name="closure")


def identity_strength(smc: SmcStructure, monad: MonadData, zi: ZiSemilattice | None = None):
    """Identity components; well typed when ``T(A) (x) U = T(A (x) U)`` on the nose."""
    z = zi or zi_semilattice(smc)
    return StrengthFamily(smc, monad, z, lambda a, k: smc.cat.identity(smc.t(monad.obj(a), z.elements[k].dom)),
                          name="identity")


def strength_by_currying(inst, zi: ZiSemilattice | None = None) -> StrengthFamily:
    """Strength of ``T = S -o (- (x) S)`` as the curry of

    ``T(A) (x) U (x) S --T(A) (x) sigma--> T(A) (x) S (x) U --ev (x) U--> A (x) S (x) U --A (x) sigma--> A (x) U (x) S``.

    ``inst`` provides ``smc``, ``monad``, ``S``, ``ev(X)`` and ``curry(f, A)``.
    """
    s, c, S = inst.smc, inst.smc.cat, inst.S
    z = zi or zi_semilattice(s)
    T = inst.monad

    def comp(a, k):
        U = z.elements[k].dom
        ta = T.obj(a)
        body = c.chain(
            s.lw(a, s.sigma(S, U)),
            s.rw(inst.ev(s.t(a, S)), U),
            s.lw(ta, s.sigma(U, S)),
        )
        return inst.curry(body, s.t(ta, U))

    return StrengthFamily(s, T, z, comp, name="curried")


# -- restricted monads and the morphisms between them ---------------------------------


def restricted_strength(lm: LocalisableMonad, r: RestrictionCategory, a, k):
    """Strength of ``T|u`` at ``(A, w_k)`` as a morphism of ``C|u``: ``str_{A,W} . (T(A) (x) W (x) u)``."""
    s, T = lm.smc, lm.monad
    W = lm.zi.elements[k].dom
    ta = T.obj(a)
    base = s.cat.compose(lm.strength(a, k), s.lw(s.t(ta, W), r.u.mor))
    return RMor(s.t(ta, W), T.obj(s.t(a, W)), base)


def _strength_for(lm: LocalisableMonad, u: CentralIdempotent):
    k, _ = lm.zi.classify(u.dom, u.mor)
    rep = lm.zi.elements[k]
    if rep.dom == u.dom and rep.mor == u.mor:
        return lambda a: lm.strength(a, k)
    return lambda a: lm.strength.at(a, u.dom, u.mor)


def restrict_monad(lm: LocalisableMonad, u: CentralIdempotent, r: RestrictionCategory | None = None) -> MonadData:
    """``T|u``: same objects, ``T(f) . str_{A,U}`` on morphisms, ``eta (x) u`` and ``mu (x) u``."""
    s, T = lm.smc, lm.monad
    r = r or RestrictionCategory(s, u)
    st = _strength_for(lm, u)
    return MonadData(
        r,
        T.obj,
        lambda f: RMor(T.obj(f.dom), T.obj(f.cod), s.cat.compose(T.mor(f.base), st(f.dom))),
        lambda a: RMor(a, T.obj(a), s.tm(T.unit(a), u.mor)),
        lambda a: RMor(T.obj(T.obj(a)), T.obj(a), s.tm(T.mult(a), u.mor)),
        name=f"{T.name or 'T'}|{u.dom!r}",
    )


@dataclass
class RestrictionMorphisms:
    adjunction: object
    small_monad: MonadData
    large_monad: MonadData
    lax: MonadMorphism
    oplax: MonadMorphism


def restriction_monad_morphism(lm: LocalisableMonad, i: int, j: int, m=None, objects=None) -> RestrictionMorphisms:
    """Lax ``(lower, phi_A = T(A) (x) u)`` from ``T|v`` to ``T|u`` and oplax ``(upper, psi_A = str_{A,U})`` back."""
    s, T, c, z = lm.smc, lm.monad, lm.smc.cat, lm.zi
    u, v = z.elements[i], z.elements[j]
    m = m if m is not None else z.witness(i, j)
    adj = build_adjunction(s, u, v, m, objects=objects)
    Tu = restrict_monad(lm, u, adj.small)
    Tv = restrict_monad(lm, v, adj.large)
    U = u.dom
    lax = MonadMorphism(adj.lower, Tv, Tu,
                        lambda a: RMor(T.obj(a), T.obj(a), s.lw(T.obj(a), u.mor)), kind="lax")
    oplax = MonadMorphism(adj.upper, Tu, Tv,
                          lambda a: RMor(s.t(T.obj(a), U), T.obj(s.t(a, U)),
                                         c.compose(lm.strength(a, i), s.lw(s.t(T.obj(a), U), v.mor))),
                          kind="oplax")
    return RestrictionMorphisms(adj, Tu, Tv, lax, oplax)


def check_localisable_square(lm: LocalisableMonad, rm: RestrictionMorphisms, objects=None) -> ValidationReport:
    """The square relating strengths of ``T|v`` and ``T|u`` along the lax morphism (lower is strict monoidal)."""
    rep = ValidationReport()
    small, large = rm.adjunction.small, rm.adjunction.large
    su = restriction_smc(small)
    G = rm.lax.functor
    objs = sorted(small.objects if objects is None else objects, key=order_key)
    for a in objs:
        for k, w in enumerate(lm.zi.elements):
            rep.checked += 1
            W = w.dom
            top = small.compose(rm.lax[su.t(a, W)], restricted_strength(lm, small, a, k))
            bottom = small.compose(G(restricted_strength(lm, large, a, k)),
                                   su.tm(rm.lax[a], small.identity(W)))
            if top != bottom:
                rep.add("localisable_morphism_square", (a, k))
    return rep


def check_restriction_morphisms(lm: LocalisableMonad, rm: RestrictionMorphisms, objects=None) -> ValidationReport:
    rep = ValidationReport()
    rep.merge(check_monad_morphism(rm.lax, objects), "lax.")
    rep.merge(check_localisable_square(lm, rm, objects), "lax.")
    rep.merge(check_monad_morphism(rm.oplax, objects), "oplax.")
    return rep


# -- stalks ------------------------------------------------------------------------


@dataclass
class StalkMonad:
    point: int
    least_open: int
    monad: MonadData
    morphisms: dict      # open k containing the point -> lax morphism T|k -> T|point


def stalk_monad(lm: LocalisableMonad, point: int, objects=None) -> StalkMonad:
    """Stalk at a point ``up(x)`` of the finite spectrum: the restriction at the least open ``x``."""
    z = lm.zi
    if point not in points(z):
        raise ValueError(f"#{point} does not generate a prime filter")
    least = point
    base = restrict_monad(lm, z.elements[least])
    morphisms = {}
    for k in z.ups(point):
        morphisms[k] = restriction_monad_morphism(lm, least, k, objects=objects).lax
    return StalkMonad(point, least, base, morphisms)
