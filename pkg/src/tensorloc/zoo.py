"""Builders for the example families, each validated before it is returned."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache, reduce

from .category import Category, ValidationReport, order_key, poset_category, validate_category
from .errors import MalformedTable, TensorlocError
from .finset import FinSet, Fn, curry_fn, decode_exp, encode_exp, eval_fn, exp_obj, finset_smc, tensor_fn
from .lattices import FiniteLattice, check_closure, closure_monad, semilattice_smc
from .localisable import (LocalisableMonad, StrengthFamily, identity_strength, restrict_monad, strength_by_currying,
                          strength_from_closure)
from .monad import MonadData, check_monad
from .monoidal import SmcStructure, product_smc, validate_smc
from .traces import TraceInstance, TraceSpec, build_trace_category  # noqa: F401  (re-exported)


def _require(report, what):
    if not report.ok:
        raise TensorlocError(f"{what} failed validation: {report.violations[:3]!r}")
    return report


# -- semilattices and closures ------------------------------------------------------------


def build_semilattice_category(lat: FiniteLattice, validate=True) -> SmcStructure:
    s = semilattice_smc(lat)
    if validate:
        _require(validate_category(s.cat), "semilattice category")
        _require(validate_smc(s), "semilattice tensor")
    return s


def build_closure_monad(lat: FiniteLattice, closure, smc: SmcStructure | None = None) -> MonadData:
    m = closure_monad(lat, closure, smc)
    _require(check_monad(m), "closure monad")
    return m


def closure_localisable(lat: FiniteLattice, closure, smc=None) -> LocalisableMonad:
    sf = strength_from_closure(lat, closure, smc)
    return LocalisableMonad(sf.smc, sf.monad, sf)


@dataclass
class FiniteTopologySpec:
    points: tuple
    opens: tuple          # frozensets

    def __post_init__(self):
        pts = frozenset(self.points)
        opens = {frozenset(o) for o in self.opens}
        if frozenset() not in opens or pts not in opens:
            raise MalformedTable("a topology contains the empty set and the whole space")
        for a in opens:
            if not a <= pts:
                raise MalformedTable(f"open set {sorted(a)!r} is not a subset of the points")
            for b in opens:
                if a | b not in opens or a & b not in opens:
                    raise MalformedTable(f"opens not closed under union and intersection at {sorted(a)!r}, {sorted(b)!r}")
        self.opens = tuple(sorted(opens, key=lambda o: (len(o), sorted(o))))

    def closure(self, subset):
        pts = frozenset(self.points)
        closed = [pts - o for o in self.opens]
        return reduce(frozenset.intersection, [c for c in closed if subset <= c], pts)

    def open_lattice(self):
        """The lattice of opens (the semilattice of central idempotents of sheaves)."""
        return FiniteLattice.from_order(self.opens, lambda a, b: a <= b)

    def powerset_closure(self):
        """The full powerset lattice with topological closure: ``(lattice, closure table, labels)``."""
        pts = sorted(self.points)
        subsets = [frozenset(c) for r in range(len(pts) + 1) for c in itertools.combinations(pts, r)]
        lat, labels = FiniteLattice.from_order(subsets, lambda a, b: a <= b)
        index = {x: i for i, x in enumerate(labels)}
        table = tuple(index[self.closure(x)] for x in labels)
        return lat, check_closure(lat, table), labels


def sierpinski_pair() -> FiniteTopologySpec:
    """Points {1, 2} with opens {}, {1}, {1, 2}."""
    return FiniteTopologySpec((1, 2), (frozenset(), frozenset({1}), frozenset({1, 2})))


# -- a thin category that is not stiff -------------------------------------------------------

PLANTED_ORDER = ((True, True, True, True, True),
                 (False, True, True, True, True),
                 (False, False, True, False, True),
                 (False, False, False, True, True),
                 (False, False, False, False, True))


def planted_nonstiff() -> SmcStructure:
    """Five elements ``0 < 1 < {2, 3} < 4`` with a tensor that is not the meet.

    ``2 (x) 2 = 2``, ``3 (x) 3 = 3``, every other product of non-units is 0
    and 4 is the unit. The central idempotents are 0, 2, 3 and 4; the square
    for ``u = 2``, ``v = 3`` at ``A = 4`` is not a pullback: its corner is 0,
    yet 1 sits below both 2 and 3.
    """
    le = PLANTED_ORDER
    n = len(le)

    def t(a, b):
        if a == 4:
            return b
        if b == 4:
            return a
        if a == b and a in (2, 3):
            return a
        return 0

    cat = poset_category(range(n), lambda x, y: le[x][y], name="planted")
    s = SmcStructure(cat, 4, t, lambda f, g: (t(f[0], g[0]), t(f[1], g[1])),
                     lambda a, b: (t(a, b), t(b, a)), initial=0, name="planted")
    _require(validate_category(cat), "planted category")
    _require(validate_smc(s), "planted tensor")
    return s


# -- state monads on Set^n ------------------------------------------------------------


def _state_fn_monad(cat: FinSet, S: int) -> MonadData:
    """``X -> (X x S)^S`` on skeletal finite sets."""

    def obj(x):
        return exp_obj(S, x * S)

    def mor(f):
        xs, ys = f.dom * S, f.cod * S
        fs = tensor_fn(f, cat.identity(S))
        img = tuple(encode_exp(ys, [fs.img[v] for v in decode_exp(S, xs, h)]) for h in range(obj(f.dom)))
        return Fn(obj(f.dom), obj(f.cod), img)

    def unit(x):
        return Fn(x, obj(x), tuple(encode_exp(x * S, [a * S + s for s in range(S)]) for a in range(x)))

    def mult(x):
        tx = obj(x)
        inner = x * S
        img = []
        for h in range(obj(tx)):
            outs = []
            for s, v in enumerate(decode_exp(S, tx * S, h)):
                g, s2 = divmod(v, S)
                outs.append(decode_exp(S, inner, g)[s2])
            img.append(encode_exp(inner, outs))
        return Fn(obj(tx), tx, tuple(img))

    return MonadData(cat, obj, mor, unit, mult, name=f"State[{S}]")


@dataclass
class StateInstance:
    smc: SmcStructure
    monad: MonadData
    S: tuple
    carriers: int
    factors: tuple = field(default_factory=tuple)

    def ev(self, x):
        return tuple(eval_fn(s, xi) for s, xi in zip(self.S, x))

    def curry(self, f, a):
        return tuple(curry_fn(fi, ai, s) for fi, ai, s in zip(f, a, self.S))

    def exp(self, u, x):
        return tuple(exp_obj(ui, xi) for ui, xi in zip(u, x))


def build_state_monad(n=2, carriers=2, S=None, validate=True) -> StateInstance:
    """The state monad ``S -o (- x S)`` on ``Set^n``, objects tuples of sizes ``<= carriers``."""
    S = tuple(S) if S is not None else (2,) * n
    if len(S) != n:
        raise MalformedTable(f"state object {S!r} does not have {n} coordinates")
    factors = tuple(finset_smc(carriers) for _ in range(n))
    s = product_smc(factors, name=f"Set^{n}")
    comps = [_state_fn_monad(f.cat, si) for f, si in zip(factors, S)]
    T = MonadData(
        s.cat,
        lambda a: tuple(m.obj(x) for m, x in zip(comps, a)),
        lambda f: tuple(m.mor(x) for m, x in zip(comps, f)),
        lambda a: tuple(m.unit(x) for m, x in zip(comps, a)),
        lambda a: tuple(m.mult(x) for m, x in zip(comps, a)),
        name=f"State{S}",
    )
    inst = StateInstance(s, T, S, carriers, tuple(comps))
    if validate:
        _require(check_monad(T), "state monad")
    return inst


def state_localisable(inst: StateInstance, zi=None) -> LocalisableMonad:
    sf = strength_by_currying(inst, zi)
    return LocalisableMonad(inst.smc, inst.monad, sf)


def planted_order_sensitive_strength(inst: StateInstance, zi=None) -> StrengthFamily:
    """The curried strength followed by "overwrite the state with ``k mod 2``" for the k-th idempotent.

    Running the two strengths in either order leaves different final states
    wherever both idempotents are nonzero, so the hexagon fails.
    """
    base = strength_by_currying(inst, zi)
    T, S = inst.monad, inst.S

    def overwrite(x, s_count, value):
        inner = x * s_count
        img = []
        for h in range(exp_obj(s_count, inner)):
            outs = [(v // s_count) * s_count + value for v in decode_exp(s_count, inner, h)]
            img.append(encode_exp(inner, outs))
        return Fn(len(img), len(img), tuple(img))

    def comp(a, k):
        st = base(a, k)
        U = base.zi.elements[k].dom
        au = inst.smc.t(a, U)
        post = tuple(overwrite(x, si, k % si) for x, si in zip(au, S))
        return inst.smc.cat.compose(post, st)

    return StrengthFamily(inst.smc, T, base.zi, comp, name="order-sensitive")


# -- chain processes: functors from a finite chain into finite sets ------------------------


class Process(tuple):
    """Stage sizes and the maps between consecutive stages: ``(sizes, maps)``."""

    __slots__ = ()

    def __new__(cls, sizes, maps):
        return super().__new__(cls, (tuple(sizes), tuple(maps)))

    @property
    def sizes(self):
        return self[0]

    @property
    def maps(self):
        return self[1]

    def __repr__(self):
        return f"Process{self.sizes!r}"


class ProcessMor(tuple):
    """A natural transformation between processes, one function per stage."""

    __slots__ = ()

    def __new__(cls, dom, cod, comps):
        return super().__new__(cls, (dom, cod, tuple(comps)))

    @property
    def dom(self):
        return self[0]

    @property
    def cod(self):
        return self[1]

    @property
    def comps(self):
        return self[2]


class ProcessCategory(Category):
    """``[chain_k, FinSet]`` over processes with every stage of size ``<= max_size``."""

    def __init__(self, k, max_size=2, objects=None):
        self.k = k
        self.fin = FinSet(max(max_size, 1))
        if objects is None:
            objects = []
            for sizes in itertools.product(range(max_size + 1), repeat=k):
                homs = [self.fin.hom(sizes[i], sizes[i + 1]) for i in range(k - 1)]
                objects.extend(Process(sizes, maps) for maps in itertools.product(*homs))
        self.objects = tuple(sorted(objects, key=order_key))
        self._homs = {}

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def identity(self, a):
        return ProcessMor(a, a, tuple(self.fin.identity(x) for x in a.sizes))

    def _compose(self, g, f):
        return ProcessMor(f.dom, g.cod, tuple(self.fin._compose(y, x) for y, x in zip(g.comps, f.comps)))

    def hom(self, a, b):
        key = (a, b)
        if key not in self._homs:
            fin = self.fin
            out = []
            for comps in itertools.product(*(fin.hom(x, y) for x, y in zip(a.sizes, b.sizes))):
                if all(fin._compose(b.maps[i], comps[i]) == fin._compose(comps[i + 1], a.maps[i])
                       for i in range(self.k - 1)):
                    out.append(ProcessMor(a, b, comps))
            self._homs[key] = out
        return self._homs[key]

    def inverse(self, f):
        invs = [self.fin.inverse(x) for x in f.comps]
        if any(x is None for x in invs):
            return None
        return ProcessMor(f.cod, f.dom, invs)

    def size(self, a):
        return sum(a.sizes)


def process_smc(k, max_size=2, objects=None) -> SmcStructure:
    cat = ProcessCategory(k, max_size, objects)
    fin = cat.fin

    def t(a, b):
        return Process([x * y for x, y in zip(a.sizes, b.sizes)],
                       [tensor_fn(f, g) for f, g in zip(a.maps, b.maps)])

    def tm(f, g):
        return ProcessMor(t(f.dom, g.dom), t(f.cod, g.cod), [tensor_fn(x, y) for x, y in zip(f.comps, g.comps)])

    def sigma(a, b):
        from .finset import swap_fn

        return ProcessMor(t(a, b), t(b, a), [swap_fn(x, y) for x, y in zip(a.sizes, b.sizes)])

    one = Process([1] * k, [fin.identity(1)] * (k - 1))
    zero = Process([0] * k, [fin.identity(0)] * (k - 1))
    return SmcStructure(cat, one, t, tm, sigma, initial=zero, name=f"Proc{k}")


def _pplus_size(n):
    return 2 ** n - 1


@lru_cache(maxsize=None)
def _pplus_fn(f: Fn) -> Fn:
    img = []
    for mask in range(1, 2 ** f.dom):
        out = 0
        for x in range(f.dom):
            if mask >> x & 1:
                out |= 1 << f.img[x]
        img.append(out - 1)
    return Fn(_pplus_size(f.dom), _pplus_size(f.cod), tuple(img))


@lru_cache(maxsize=None)
def _pplus_unit(n) -> Fn:
    return Fn(n, _pplus_size(n), tuple((1 << x) - 1 for x in range(n)))


@lru_cache(maxsize=None)
def _pplus_mult(n) -> Fn:
    inner = _pplus_size(n)
    img = []
    for mask in range(1, 2 ** inner):
        out = 0
        for code in range(inner):
            if mask >> code & 1:
                out |= code + 1
        img.append(out - 1)
    return Fn(_pplus_size(inner), inner, tuple(img))


def pplus_monad(cat: ProcessCategory) -> MonadData:
    """Nonempty powerset applied stagewise."""

    @lru_cache(maxsize=None)
    def obj(a):
        return Process([_pplus_size(x) for x in a.sizes], [_pplus_fn(f) for f in a.maps])

    def mor(f):
        return ProcessMor(obj(f.dom), obj(f.cod), [_pplus_fn(x) for x in f.comps])

    return MonadData(
        cat, obj, mor,
        lambda a: ProcessMor(a, obj(a), [_pplus_unit(x) for x in a.sizes]),
        lambda a: ProcessMor(obj(obj(a)), obj(a), [_pplus_mult(x) for x in a.sizes]),
        name="P+",
    )


@dataclass
class ChainProcessSpec:
    k: int = 3
    max_size: int = 2


@dataclass
class ChainProcessInstance:
    spec: ChainProcessSpec
    smc: SmcStructure
    monad: MonadData
    localisable: LocalisableMonad


def build_chain_process(spec: ChainProcessSpec | None = None, validate=True) -> ChainProcessInstance:
    spec = spec or ChainProcessSpec()
    s = process_smc(spec.k, spec.max_size)
    T = pplus_monad(s.cat)
    if validate:
        frag = process_validation_fragment(s)
        _require(validate_smc(s, frag), "process tensor")
        _require(check_monad(T, process_validation_fragment(s, 4)), "stagewise nonempty powerset")
    lm = LocalisableMonad(s, T, identity_strength(s, T))
    return ChainProcessInstance(spec, s, T, lm)


def truncate_process(a: Process, start: int) -> Process:
    return Process(a.sizes[start:], a.maps[start:])


def truncate_mor(f: ProcessMor, start: int, dom: Process, cod: Process) -> ProcessMor:
    return ProcessMor(truncate_process(dom, start), truncate_process(cod, start), f.comps[start:])


def process_validation_fragment(s: SmcStructure, max_total=3):
    """Processes of total size ``<= max_total``; the tensor laws are checked there."""
    return [a for a in s.cat.objects if sum(a.sizes) <= max_total]


def compare_truncated_restriction(ci: ChainProcessInstance, start: int, objects=None) -> ValidationReport:
    """``T|n`` on the restriction at stage ``start`` against the instance built on the later stages alone."""
    from .restriction import RestrictionCategory

    s, lm = ci.smc, ci.localisable
    z = lm.zi
    target = [k for k, e in enumerate(z.elements)
              if e.dom.sizes == tuple(0 if i < start else 1 for i in range(ci.spec.k))]
    if not target:
        raise KeyError(f"no central idempotent starts at stage {start}")
    u = z.elements[target[0]]
    r = RestrictionCategory(s, u, objects)
    Tu = restrict_monad(lm, u, r)
    short = build_chain_process(ChainProcessSpec(ci.spec.k - start, ci.spec.max_size), validate=False)
    Ts, sc = short.monad, short.smc.cat
    rep = ValidationReport()
    objs = r.objects
    for a in objs:
        ta = truncate_process(a, start)
        rep.checked += 1
        if truncate_process(Tu.obj(a), start) != Ts.obj(ta):
            rep.add("objects", (a,))
        eta = Tu.unit(a)
        if truncate_mor(eta.base, start, a, Tu.obj(a)).comps != Ts.unit(ta).comps:
            rep.add("unit", (a,))
        mu = Tu.mult(a)
        if truncate_mor(mu.base, start, Tu.obj(Tu.obj(a)), Tu.obj(a)).comps != Ts.mult(ta).comps:
            rep.add("mult", (a,))
        for b in objs:
            tb = truncate_process(b, start)
            hom = r.hom(a, b)
            truncated = sorted(f.base.comps[start:] for f in hom)
            if truncated != sorted(f.comps for f in sc.hom(ta, tb)):
                rep.add("hom_bijection", (a, b))
            for f in hom:
                rep.checked += 1
                if Tu.mor(f).base.comps[start:] != Ts.mor(ProcessMor(ta, tb, f.base.comps[start:])).comps:
                    rep.add("functor", (f,))
    return rep


# -- named examples --------------------------------------------------------------------


def chain_closure_localisable(n=3, closure=None) -> LocalisableMonad:
    """The chain ``0 < a < 1`` (for n = 3) with a closure operator, default constant top."""
    from .lattices import chain

    lat = chain(n)
    closure = closure if closure is not None else tuple([n - 1] * n)
    return closure_localisable(lat, closure)


def identity_localisable(s: SmcStructure) -> LocalisableMonad:
    from .monad import identity_monad

    T = identity_monad(s.cat)
    return LocalisableMonad(s, T, identity_strength(s, T))


def trace_localisable(inst: TraceInstance) -> LocalisableMonad:
    return LocalisableMonad(inst.smc, inst.writer, identity_strength(inst.smc, inst.writer))


def state_family(n=2, carriers=1, S=2):
    """State monads on ``Set^n`` indexed by the subsets of coordinates that carry state.

    Grade ``u`` gives coordinate ``i`` the state set ``S`` when the i-th atom is
    below ``u`` and a singleton otherwise; for ``u <= v`` the map is the
    identity on shared coordinates and the state unit on the new ones.
    """
    from .formal import IndexedMonad
    from .lattices import boolean_lattice

    E = boolean_lattice(n)
    atoms = [x for x in E.elements if x != E.bottom and all(y in (E.bottom, x) for y in E.elements if E.leq(y, x))]
    factors = [finset_smc(carriers) for _ in range(n)]
    s = product_smc(factors, name=f"Set^{n}")
    small = [_state_fn_monad(f.cat, 1) for f in factors]
    big = [_state_fn_monad(f.cat, S) for f in factors]
    bits = {u: tuple(E.leq(at, u) for at in atoms) for u in E.elements}

    def monad(u):
        comps = [b if on else m for on, b, m in zip(bits[u], big, small)]
        return MonadData(
            s.cat,
            lambda a: tuple(m.obj(x) for m, x in zip(comps, a)),
            lambda f: tuple(m.mor(x) for m, x in zip(comps, f)),
            lambda a: tuple(m.unit(x) for m, x in zip(comps, a)),
            lambda a: tuple(m.mult(x) for m, x in zip(comps, a)),
            name=f"State{tuple(S if on else 1 for on in bits[u])}",
        )

    def maps(u, v, a):
        out = []
        for bu, bv, b, m, x in zip(bits[u], bits[v], big, small, a):
            if bu or not bv:
                side = b if bu else m
                out.append(Fn(side.obj(x), side.obj(x), tuple(range(side.obj(x)))))
            else:
                out.append(b.unit(x))
        return tuple(out)

    return IndexedMonad(s.cat, E, {u: monad(u) for u in E.elements}, maps, name="state")
