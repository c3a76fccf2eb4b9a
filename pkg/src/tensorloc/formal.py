"""Formal monads as ZI-indexed families of monads on restrictions, and graded versus indexed monads.

The family is stored pointwise: one monad on each ``C|u`` plus the lower
functors between restrictions. The top of ZI is always taken as ``id_I`` so
that ``C|1`` is literally ``C`` with tagged morphisms.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .category import ValidationReport, order_key
from .central import CentralIdempotent, ZiSemilattice
from .lattices import FiniteLattice
from .localisable import LocalisableMonad, StrengthFamily, check_localisable, restrict_monad
from .monad import MonadData, check_monad
from .monoidal import SmcStructure
from .restriction import RMor, RestrictionCategory, build_adjunction


@dataclass
class FormalMonad:
    smc: SmcStructure
    zi: ZiSemilattice
    idempotents: dict       # k -> CentralIdempotent (top replaced by id_I)
    restrictions: dict      # k -> RestrictionCategory
    monads: dict            # k -> MonadData on C|u_k
    adjunctions: dict = field(default_factory=dict)   # (i, j), i <= j -> RestrictionFunctors

    @property
    def top(self):
        return self.zi.top

    def lower(self, i, j):
        return self.adjunctions[(i, j)].lower


def _scaffold(s: SmcStructure, z: ZiSemilattice, objects=None):
    c = s.cat
    ids = {k: e for k, e in enumerate(z.elements)}
    ids[z.top] = CentralIdempotent(s.unit, c.identity(s.unit), c.identity(s.unit))
    rs = {k: RestrictionCategory(s, u, objects) for k, u in ids.items()}
    adjs = {}
    for (i, j) in sorted(z.leq):
        m = ids[i].mor if j == z.top else z.witness(i, j)
        adjs[(i, j)] = build_adjunction(s, ids[i], ids[j], m, small=rs[i], large=rs[j])
    return ids, rs, adjs


def localisable_to_formal(lm: LocalisableMonad, objects=None) -> FormalMonad:
    """The family ``u -> T|u`` with the restriction adjunctions between them."""
    s, z = lm.smc, lm.zi
    ids, rs, adjs = _scaffold(s, z, objects)
    monads = {k: restrict_monad(lm, ids[k], rs[k]) for k in ids}
    return FormalMonad(s, z, ids, rs, monads, adjs)


def check_formal(fm: FormalMonad, objects=None, check_monads=True) -> ValidationReport:
    """Per-u monad laws, the two modification squares and naturality on objects and morphisms."""
    rep = ValidationReport()
    if check_monads:
        for k in sorted(fm.monads):
            rep.merge(check_monad(fm.monads[k], objects), f"monad[{k}].")
    for (i, j), adj in sorted(fm.adjunctions.items()):
        G, Tu, Tv = adj.lower, fm.monads[i], fm.monads[j]
        large = adj.large
        objs = sorted(large.objects if objects is None else objects, key=order_key)
        for a in objs:
            rep.checked += 1
            if Tu.obj(G.obj(a)) != G.obj(Tv.obj(a)):
                rep.add("naturality_objects", (i, j, a))
            if G(Tv.unit(a)) != Tu.unit(G.obj(a)):
                rep.add("modification_unit", (i, j, a))
            if Tu.mult(G.obj(a)) != G(Tv.mult(a)):
                rep.add("modification_mult", (i, j, a))
        for a in objs:
            for b in objs:
                for f in large.hom(a, b):
                    rep.checked += 1
                    if Tu.mor(G(f)) != G(Tv.mor(f)):
                        rep.add("naturality_morphisms", (i, j, f))
    return rep


def formal_strength(fm: FormalMonad, a, k):
    """``eps_{T1 F G A} . F T|u (eta_{G A})`` at ``v = 1``, as a morphism of ``C|1`` (base in ``C``)."""
    top = fm.top
    if k == top:
        return fm.restrictions[top].identity(fm.monads[top].obj(a))
    adj = fm.adjunctions[(k, top)]
    F, Tu, T1 = adj.upper, fm.monads[k], fm.monads[top]
    large = adj.large
    eta = adj.unit[adj.lower.obj(a)]
    return large.compose(adj.counit[T1.obj(F.obj(adj.lower.obj(a)))], F(Tu.mor(eta)))


def base_monad(fm: FormalMonad) -> MonadData:
    """``T|1`` read as a monad on ``C`` (``C|1`` morphisms have bases ``A (x) I = A -> B``)."""
    c = fm.smc.cat
    T1 = fm.monads[fm.top]
    return MonadData(
        c,
        T1.obj,
        lambda f: T1.mor(RMor(c.dom(f), c.cod(f), f)).base,
        lambda a: T1.unit(a).base,
        lambda a: T1.mult(a).base,
        name=T1.name,
    )


def formal_to_localisable(fm: FormalMonad, check=True) -> LocalisableMonad:
    s, z = fm.smc, fm.zi
    T = base_monad(fm)
    sf = StrengthFamily(s, T, z, lambda a, k: formal_strength(fm, a, k).base, name="formal")
    lm = LocalisableMonad(s, T, sf)
    if check:
        lm.report = check_localisable(T, sf)
    return lm


# -- round trips ----------------------------------------------------------------


@dataclass
class RoundtripResult:
    ok: bool
    mismatch: tuple | None = None     # (table, key, expected, got)
    checked: int = 0

    def to_json(self):
        from .io import encode_value

        out = {"ok": self.ok, "checked": self.checked}
        if self.mismatch is not None:
            out["mismatch"] = {
                "table": self.mismatch[0],
                "key": encode_value(self.mismatch[1]),
                "expected": encode_value(self.mismatch[2]),
                "got": encode_value(self.mismatch[3]),
            }
        return out


class _Cmp:
    def __init__(self):
        self.checked = 0
        self.mismatch = None

    def eq(self, table, key, want, got):
        self.checked += 1
        if want != got and self.mismatch is None:
            self.mismatch = (table, key, want, got)

    def result(self):
        return RoundtripResult(self.mismatch is None, self.mismatch, self.checked)


def _compare_monads(cmp: _Cmp, prefix, m1: MonadData, m2: MonadData, objs):
    c = m1.cat
    for a in objs:
        cmp.eq(f"{prefix}obj", a, m1.obj(a), m2.obj(a))
        cmp.eq(f"{prefix}unit", a, m1.unit(a), m2.unit(a))
        cmp.eq(f"{prefix}mult", a, m1.mult(a), m2.mult(a))
    for a in objs:
        for b in objs:
            for f in c.hom(a, b):
                cmp.eq(f"{prefix}mor", f, m1.mor(f), m2.mor(f))


def strength_chain(lm: LocalisableMonad, fm: FormalMonad, a, k):
    """The three equal expressions for the strength recovered from the family, as base morphisms."""
    s, c, T = lm.smc, lm.smc.cat, lm.monad
    U, u = fm.idempotents[k].dom, fm.idempotents[k].mor
    st = lm.strength(a, k)
    ta = T.obj(a)
    inv = s.lw(ta, c.inverse(s.lw(U, u)))
    middle = c.chain(s.lw(T.obj(s.t(a, U)), u), s.rw(st, U), inv)
    return [formal_strength(fm, a, k).base, middle, st]


def roundtrip_localisable(lm: LocalisableMonad, objects=None) -> RoundtripResult:
    """loc -> formal -> loc reproduces the functor, unit, multiplication and strength tables."""
    c = lm.smc.cat
    objs = sorted(c.objects if objects is None else objects, key=order_key)
    fm = localisable_to_formal(lm, objects)
    lm2 = formal_to_localisable(fm, check=False)
    cmp = _Cmp()
    _compare_monads(cmp, "", lm.monad, lm2.monad, objs)
    for a in objs:
        for k in range(len(lm.zi)):
            cmp.eq("strength", (a, k), lm.strength(a, k), lm2.strength(a, k))
            exprs = strength_chain(lm, fm, a, k)
            for step, e in enumerate(exprs[1:], start=1):
                cmp.eq("strength_chain", (a, k, step), exprs[step - 1], e)
    return cmp.result()


def appendix_chain(fm: FormalMonad, f: RMor, k):
    """The seven expressions from ``T1(f^C) . str`` to ``(T|u f)^C`` for ``f: A -> B`` in ``C|u``."""
    top = fm.top
    adj = fm.adjunctions[(k, top)]
    F, G, eps, eta = adj.upper, adj.lower, adj.counit, adj.unit
    Tu, T1 = fm.monads[k], fm.monads[top]
    big = adj.large
    a, b = f.dom, f.cod
    ga = G.obj(a)

    def up(x):      # x^C = eps . F x
        return big.compose(eps[x.cod], F(x))

    st = formal_strength(fm, a, k)
    FTu_eta_GA = F(Tu.mor(eta[ga]))
    t1b = T1.obj(b)
    return [
        big.compose(T1.mor(up(f)), st),
        big.chain(T1.mor(eps[b]), T1.mor(F(f)), eps[T1.obj(F.obj(ga))], FTu_eta_GA),
        big.chain(eps[t1b], F(G(T1.mor(eps[b]))), F(G(T1.mor(F(f)))), FTu_eta_GA),
        big.chain(eps[t1b], F(Tu.mor(G(eps[b]))), F(Tu.mor(G(F(f)))), FTu_eta_GA),
        big.chain(eps[t1b], F(Tu.mor(G(eps[b]))), F(Tu.mor(eta[G.obj(b)])), F(Tu.mor(f))),
        big.compose(eps[t1b], F(Tu.mor(f))),
        up(Tu.mor(f)),
    ]


def roundtrip_formal(fm: FormalMonad, objects=None) -> RoundtripResult:
    """formal -> loc -> formal reproduces every per-u functor, unit and multiplication."""
    lm = formal_to_localisable(fm, check=False)
    fm2 = localisable_to_formal(lm, objects)
    cmp = _Cmp()
    for k in sorted(fm.monads):
        r = fm.restrictions[k]
        objs = sorted(r.objects if objects is None else objects, key=order_key)
        _compare_monads(cmp, f"T|{k}.", fm.monads[k], fm2.monads[k], objs)
        if k == fm.top:
            continue
        for a in objs:
            for b in objs:
                for f in r.hom(a, b):
                    exprs = appendix_chain(fm, f, k)
                    for step in range(1, len(exprs)):
                        cmp.eq(f"appendix_chain[{k}]", (f, step), exprs[step - 1], exprs[step])
    return cmp.result()


def roundtrip_check(x, objects=None) -> RoundtripResult:
    if isinstance(x, FormalMonad):
        return roundtrip_formal(x, objects)
    return roundtrip_localisable(x, objects)


# -- graded and indexed monads over a join-semilattice ---------------------------------


@dataclass
class IndexedMonad:
    """``u -> (T_u, eta_u, mu_u)`` over the join-semilattice ``E`` with ``maps(u, v, A): T_u A -> T_v A`` for ``u <= v``."""

    cat: object
    grades: FiniteLattice
    monads: dict
    maps: object
    name: str | None = None


@dataclass
class GradedMonad:
    """``T_u`` with ``eta: A -> T_0 A`` and ``mult(u, v, A): T_u T_v A -> T_{u v v} A``."""

    cat: object
    grades: FiniteLattice
    functors: dict      # u -> MonadData-like (only obj / mor used)
    unit: object
    mult: object
    maps: object
    name: str | None = None


def _grade_pairs(E: FiniteLattice):
    return [(u, v) for u in E.elements for v in E.elements if E.leq(u, v)]


def check_indexed(im: IndexedMonad, objects=None) -> ValidationReport:
    c, E = im.cat, im.grades
    objs = sorted(c.objects if objects is None else objects, key=order_key)
    rep = ValidationReport()
    for u in E.elements:
        rep.merge(check_monad(im.monads[u], objs), f"monad[{u}].")
    for u, v in _grade_pairs(E):
        Tu, Tv = im.monads[u], im.monads[v]
        for a in objs:
            rep.checked += 1
            t = im.maps(u, v, a)
            if (c.dom(t), c.cod(t)) != (Tu.obj(a), Tv.obj(a)):
                rep.add("map_typing", (u, v, a))
                continue
            if u == v and t != c.identity(Tu.obj(a)):
                rep.add("functorial_identity", (u, a))
            if c.compose(t, Tu.unit(a)) != Tv.unit(a):
                rep.add("morphism_unit", (u, v, a))
            both = c.compose(im.maps(u, v, Tv.obj(a)), Tu.mor(t))
            if c.compose(t, Tu.mult(a)) != c.compose(Tv.mult(a), both):
                rep.add("morphism_mult", (u, v, a))
            for w in E.elements:
                if E.leq(v, w):
                    if c.compose(im.maps(v, w, a), t) != im.maps(u, w, a):
                        rep.add("functorial_composite", (u, v, w, a))
        for a in objs:
            for b in objs:
                for f in c.hom(a, b):
                    rep.checked += 1
                    if c.compose(im.maps(u, v, b), Tu.mor(f)) != c.compose(Tv.mor(f), im.maps(u, v, a)):
                        rep.add("map_naturality", (u, v, f))
    return rep


def check_graded(gm: GradedMonad, objects=None) -> ValidationReport:
    c, E = gm.cat, gm.grades
    j, zero = E.join, E.bottom
    objs = sorted(c.objects if objects is None else objects, key=order_key)
    rep = ValidationReport()
    T = gm.functors
    G = E.elements
    for a in objs:
        for u in G:
            Tu = T[u]
            rep.checked += 1
            ida = c.identity(Tu.obj(a))
            if c.compose(gm.mult(zero, u, a), gm.unit(Tu.obj(a))) != ida:
                rep.add("left_unit", (u, a))
            if c.compose(gm.mult(u, zero, a), Tu.mor(gm.unit(a))) != ida:
                rep.add("right_unit", (u, a))
            for v in G:
                for w in G:
                    lhs = c.compose(gm.mult(j(u, v), w, a), gm.mult(u, v, T[w].obj(a)))
                    rhs = c.compose(gm.mult(u, j(v, w), a), Tu.mor(gm.mult(v, w, a)))
                    if lhs != rhs:
                        rep.add("associativity", (u, v, w, a))
    for u, u2 in _grade_pairs(E):
        for v, v2 in _grade_pairs(E):
            for a in objs:
                rep.checked += 1
                # (T_{u<=u2} * T_{v<=v2}) then mult, against mult then T_{uv<=u2v2}
                horiz = c.compose(gm.maps(u, u2, T[v2].obj(a)), T[u].mor(gm.maps(v, v2, a)))
                lhs = c.compose(gm.mult(u2, v2, a), horiz)
                rhs = c.compose(gm.maps(j(u, v), j(u2, v2), a), gm.mult(u, v, a))
                if lhs != rhs:
                    rep.add("grade_naturality", (u, u2, v, v2, a))
    for u, v in _grade_pairs(E):
        for a in objs:
            rep.checked += 1
            if u == v and gm.maps(u, v, a) != c.identity(T[u].obj(a)):
                rep.add("functorial_identity", (u, a))
            for w in G:
                if E.leq(v, w) and c.compose(gm.maps(v, w, a), gm.maps(u, v, a)) != gm.maps(u, w, a):
                    rep.add("functorial_composite", (u, v, w, a))
            for b in objs:
                for f in c.hom(a, b):
                    if c.compose(gm.maps(u, v, b), T[u].mor(f)) != c.compose(T[v].mor(f), gm.maps(u, v, a)):
                        rep.add("map_naturality", (u, v, f))
    for u in G:
        for v in G:
            for a in objs:
                for b in objs:
                    for f in c.hom(a, b):
                        rep.checked += 1
                        lhs = c.compose(gm.mult(u, v, b), T[u].mor(T[v].mor(f)))
                        rhs = c.compose(T[j(u, v)].mor(f), gm.mult(u, v, a))
                        if lhs != rhs:
                            rep.add("mult_naturality", (u, v, f))
    return rep


def indexed_to_graded(im: IndexedMonad) -> GradedMonad:
    """``eta = eta_0`` and ``mu_{u,v} = mu_{u v v} . (T_{u <= u v v} * T_{v <= u v v})``; needs 0 initial."""
    c, E = im.cat, im.grades
    zero = E.bottom
    if not all(E.leq(zero, x) for x in E.elements):
        raise ValueError("the grade unit is not initial")
    T = im.monads

    def mult(u, v, a):
        w = E.join(u, v)
        horiz = c.compose(im.maps(u, w, T[w].obj(a)), T[u].mor(im.maps(v, w, a)))
        return c.compose(T[w].mult(a), horiz)

    return GradedMonad(c, E, dict(T), T[zero].unit, mult, im.maps, name=im.name)


def graded_to_indexed(gm: GradedMonad) -> IndexedMonad:
    """``mu_u = T_nabla . mu_{u,u}`` (``nabla`` is the identity since ``u v u = u``) and ``eta_u = T_{0<=u} . eta``."""
    c, E = gm.cat, gm.grades
    zero = E.bottom
    monads = {}
    for u in E.elements:
        Tu = gm.functors[u]
        monads[u] = MonadData(
            c, Tu.obj, Tu.mor,
            (lambda u: lambda a: c.compose(gm.maps(zero, u, a), gm.unit(a)))(u),
            (lambda u: lambda a: c.compose(gm.maps(E.join(u, u), u, a), gm.mult(u, u, a)))(u),
            name=f"{gm.name or 'T'}_{u}",
        )
    return IndexedMonad(c, E, monads, gm.maps, name=gm.name)


def graded_indexed_roundtrip(im: IndexedMonad, objects=None) -> RoundtripResult:
    """indexed -> graded -> indexed and graded -> indexed -> graded are table-exact identities."""
    c, E = im.cat, im.grades
    objs = sorted(c.objects if objects is None else objects, key=order_key)
    gm = indexed_to_graded(im)
    im2 = graded_to_indexed(gm)
    gm2 = indexed_to_graded(im2)
    cmp = _Cmp()
    for u in E.elements:
        _compare_monads(cmp, f"indexed[{u}].", im.monads[u], im2.monads[u], objs)
    for a in objs:
        cmp.eq("graded.unit", a, gm.unit(a), gm2.unit(a))
        for u in E.elements:
            for v in E.elements:
                cmp.eq("graded.mult", (u, v, a), gm.mult(u, v, a), gm2.mult(u, v, a))
    return cmp.result()


# -- families of indexed monads ------------------------------------------------------


def closure_family(E: FiniteLattice, base: FiniteLattice | None = None) -> IndexedMonad:
    """``T_u(x) = x v u`` on the thin category of ``base`` (default ``E`` itself)."""
    from .lattices import closure_monad, semilattice_smc

    L = base or E
    if L is not E:
        raise ValueError("closure family needs grades inside the base lattice")
    s = semilattice_smc(L)
    monads = {u: closure_monad(L, tuple(L.join(x, u) for x in L.elements), s) for u in E.elements}
    maps = lambda u, v, a: (L.join(a, u), L.join(a, v))
    return IndexedMonad(s.cat, E, monads, maps, name="closure")


def writer_family(E: FiniteLattice, max_size=2) -> IndexedMonad:
    """``T_u(X) = X x down(u)`` on finite sets, writing into the monoid ``(down(u), v, 0)``."""
    from .finset import FinSet, Fn

    cat = FinSet(max_size)
    downs = {u: [x for x in E.elements if E.leq(x, u)] for u in E.elements}
    pos = {u: {x: i for i, x in enumerate(d)} for u, d in downs.items()}

    def make(u):
        d, p = downs[u], pos[u]
        n = len(d)
        zero = p[E.bottom]

        def mor(f):
            return Fn(f.dom * n, f.cod * n, tuple(f.img[x] * n + j for x in range(f.dom) for j in range(n)))

        def unit(a):
            return Fn(a, a * n, tuple(x * n + zero for x in range(a)))

        def mult(a):
            # ((x, m1), m2) -> (x, m1 v m2)
            img = tuple(x * n + p[E.join(d[j1], d[j2])]
                        for x in range(a) for j1 in range(n) for j2 in range(n))
            return Fn(a * n * n, a * n, img)

        return MonadData(cat, lambda a: a * n, mor, unit, mult, name=f"writer_{u}")

    monads = {u: make(u) for u in E.elements}

    def maps(u, v, a):
        nu, nv = len(downs[u]), len(downs[v])
        return Fn(a * nu, a * nv, tuple(x * nv + pos[v][m] for x in range(a) for m in downs[u]))

    return IndexedMonad(cat, E, monads, maps, name="writer")
