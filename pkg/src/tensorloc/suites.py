"""Acceptance batteries: twelve criteria plus the planted-failure battery.

Each check returns a :class:`CheckResult`; ``run_suite`` runs a named group of
them in a fixed order. Large instances are checked on documented object
fragments so that each suite stays well under a minute.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache

from .category import identity_functor, poset_category
from .central import (is_central_idempotent, is_stiff, order_isomorphism,
                      semilattice_from_order, zi_semilattice, functor_category_zi)
from .errors import NotLocalisable, TensorlocError
from .finset import Fn, decode_exp, encode_exp, exp_obj, finset_smc
from .formal import (check_graded, check_indexed, closure_family, graded_indexed_roundtrip, graded_to_indexed,
                     indexed_to_graded, roundtrip_check, localisable_to_formal, writer_family)
from .lattices import (all_lattices, boolean_lattice, chain, closure_criterion, closure_operators, enumerate_lattices, semilattice_smc)
from .localisable import (LocalisableMonad, StrengthFamily, check_commutative, check_localisable,
                          check_restriction_morphisms, restrict_monad, restriction_monad_morphism,
                          strength_from_closure)
from .monad import MonadData, MonadMorphism, check_monad, check_monad_morphism
from .monoidal import MonoidObject, SmcStructure, product_smc, validate_smc
from .restriction import RestrictionCategory, build_adjunction, check_adjunction, check_cokleisli_iso
from .traces import check_component_iso, check_confluence, trace_fragment, writer_monad
from .zoo import (build_chain_process, build_semilattice_category, build_state_monad,
                  build_trace_category, chain_closure_localisable, closure_localisable, compare_truncated_restriction,
                  identity_localisable, planted_nonstiff, planted_order_sensitive_strength, process_validation_fragment,
                  sierpinski_pair, state_family, state_localisable, trace_localisable)


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self, timing=True):
        from .category import _jsonable

        out = {"check": self.name, "status": "pass" if self.ok else "fail", "detail": _jsonable(self.detail)}
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


class _Tally:
    """Counts sub-checks and keeps the first few failures."""

    def __init__(self):
        self.checked = 0
        self.failures = []

    def expect(self, holds, what, **info):
        self.checked += 1
        if not holds:
            self.failures.append({"what": what, **info})
        return holds

    def report(self, rep, what, **info):
        return self.expect(rep.ok, what, violations=rep.violations[:2], **info)

    def detail(self, **extra):
        return {"checked": self.checked, "failures": self.failures[:5], **extra}


# -- shared instances ------------------------------------------------------------------------


@lru_cache(maxsize=None)
def state_instance():
    """The 2-bit state monad on ``Set^2`` (carriers up to 2)."""
    inst = build_state_monad(2, 2, (2, 2))
    return inst, state_localisable(inst)


@lru_cache(maxsize=None)
def process_instance():
    ci = build_chain_process()
    return ci, process_validation_fragment(ci.smc, 3)


@lru_cache(maxsize=None)
def trace_instance():
    inst = build_trace_category()
    return inst, trace_localisable(inst)


def zoo_instances():
    """``(name, localisable monad, objects or None)`` for every localisable zoo instance."""
    out = []
    for c in ((0, 1, 2), (1, 1, 2), (2, 2, 2)):
        out.append((f"chain3-closure{c}", chain_closure_localisable(3, c), None))
    lat = boolean_lattice(2)
    s = semilattice_smc(lat)
    for c in closure_operators(lat):
        if closure_criterion(lat, c) is None:
            out.append((f"square-closure{c}", closure_localisable(lat, c, s), None))
    out.append(("identity-on-square", identity_localisable(s), None))
    out.append(("state-2bit", state_instance()[1], None))
    ci, frag = process_instance()
    out.append(("chain-process", ci.localisable, frag))
    inst, lm = trace_instance()
    out.append(("trace-writer", lm, trace_fragment(inst.smc)))
    return out


def _timed(name, fn):
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except TensorlocError as e:
        ok, detail = False, {"error": type(e).__name__, "message": str(e)}
    return CheckResult(name, ok, detail, time.perf_counter() - t0)


# -- criteria -----------------------------------------------------------------------------


def _c1():
    t = _Tally()
    for lat in all_lattices(5):
        z = zi_semilattice(build_semilattice_category(lat))
        ref = semilattice_from_order(list(lat.elements), lat.leq)
        t.expect(order_isomorphism(z, ref) is not None, "order_isomorphism", lattice=lat.le)
    return not t.failures, t.detail(lattices=len(all_lattices(5)))


def _c2():
    t = _Tally()
    s = product_smc([finset_smc(3), finset_smc(3)], name="Set^2")
    z = zi_semilattice(s)
    t.expect(len(z) == 4, "class_count", got=len(z))
    ref = semilattice_from_order(list(boolean_lattice(2).elements), boolean_lattice(2).leq)
    t.expect(order_isomorphism(z, ref) is not None, "order_isomorphism")
    return not t.failures, t.detail(classes=[e.dom for e in z.elements])


def _c3():
    t = _Tally()
    closures = 0
    for lat in all_lattices(4):
        s = semilattice_smc(lat)
        for c in closure_operators(lat):
            closures += 1
            criterion = closure_criterion(lat, c) is None
            try:
                sf = strength_from_closure(lat, c, s)
                verdict = check_localisable(sf.monad, sf).ok
            except NotLocalisable:
                verdict = False
            t.expect(verdict == criterion, "verdict_matches_criterion", lattice=lat.le, closure=c,
                     criterion=criterion, verdict=verdict)
    return not t.failures, t.detail(closures=closures)


def _restricted(lm, u, objects):
    return restrict_monad(lm, u, RestrictionCategory(lm.smc, u, objects))


def _c4():
    t = _Tally()
    for name, lm, objs in zoo_instances():
        for k, u in enumerate(lm.zi.elements):
            t.report(check_monad(_restricted(lm, u, objs), objs), "restricted_monad", instance=name, u=k)
    # the chain closure restricted to u is the closure x -> c(x) /\ u on the down-set of u
    lat = chain(3)
    for c in ((0, 1, 2), (1, 1, 2), (2, 2, 2)):
        lm = chain_closure_localisable(3, c)
        for k, u in enumerate(lm.zi.elements):
            U = u.dom
            Tu = restrict_monad(lm, u)
            for a in lat.elements:
                got = lat.meet(Tu.obj(a), U)
                want = lat.meet(c[lat.meet(a, U)], U)
                t.expect(got == want, "downset_table", closure=c, u=U, a=a, got=got, want=want)
                for b in lat.elements:
                    t.expect(bool(Tu.cat.hom(a, b)) == lat.leq(lat.meet(a, U), b), "downset_hom", closure=c, u=U, a=a, b=b)
    return not t.failures, t.detail()


def _c5():
    t = _Tally()
    for name, lm, objs in zoo_instances():
        z, s = lm.zi, lm.smc
        for (i, j) in sorted(z.leq):
            adj = build_adjunction(s, z.elements[i], z.elements[j], z.witness(i, j), objects=objs)
            t.report(check_adjunction(adj, objs), "adjunction", instance=name, pair=(i, j))
            t.report(check_cokleisli_iso(adj, objs), "cokleisli_iso", instance=name, pair=(i, j))
    return not t.failures, t.detail()


def _c6():
    t = _Tally()
    ci, frag = process_instance()
    cases = [
        ("identity-on-square", identity_localisable(semilattice_smc(boolean_lattice(2))), None),
        ("chain3-closure", chain_closure_localisable(3), None),
        ("chain3-closure(1,1,2)", chain_closure_localisable(3, (1, 1, 2)), None),
        ("state-2bit", state_instance()[1], None),
        ("chain-process", ci.localisable, frag),
    ]
    for name, lm, objs in cases:
        r1 = roundtrip_check(lm, objs)
        t.expect(r1.ok, "loc_formal_loc", instance=name, mismatch=r1.mismatch)
        fm = localisable_to_formal(lm, objs)
        r2 = roundtrip_check(fm, objs)
        t.expect(r2.ok, "formal_loc_formal", instance=name, mismatch=r2.mismatch)
    return not t.failures, t.detail()


def _c7():
    t = _Tally()
    for name, lm, objs in zoo_instances():
        for (i, j) in sorted(lm.zi.leq):
            rm = restriction_monad_morphism(lm, i, j, objects=objs)
            t.report(check_restriction_morphisms(lm, rm, objs), "lax_oplax_square", instance=name, pair=(i, j))
    return not t.failures, t.detail()


def _c8():
    t = _Tally()
    for n in range(1, 5):
        for E in enumerate_lattices(n):
            for im in (closure_family(E), writer_family(E)):
                tag = {"family": im.name, "E": E.le}
                t.report(check_indexed(im), "indexed_laws", **tag)
                gm = indexed_to_graded(im)
                t.report(check_graded(gm), "graded_laws", **tag)
                t.report(check_indexed(graded_to_indexed(gm)), "indexed_again_laws", **tag)
                r = graded_indexed_roundtrip(im)
                t.expect(r.ok, "roundtrip", mismatch=r.mismatch, **tag)
    # the pairs state family over the square
    im = state_family()
    gm = indexed_to_graded(im)
    t.report(check_graded(gm), "graded_laws", family="state")
    t.report(check_indexed(graded_to_indexed(gm)), "indexed_again_laws", family="state")
    r = graded_indexed_roundtrip(im)
    t.expect(r.ok, "roundtrip", family="state", mismatch=r.mismatch)
    return not t.failures, t.detail()


def _c9():
    t = _Tally()
    inst, lm = state_instance()
    ok, triple = check_commutative(lm)
    t.expect(ok, "state_commutative", counterexample=triple)
    planted = planted_order_sensitive_strength(inst, lm.zi)
    ok2, triple2 = check_commutative(LocalisableMonad(inst.smc, inst.monad, planted))
    t.expect(not ok2 and triple2 is not None, "planted_detected", counterexample=triple2)
    return not t.failures, t.detail(planted_counterexample=triple2)


def _c10():
    t = _Tally()
    inst, lm = trace_instance()
    s = inst.smc
    for u in (inst.u1, inst.u2):
        t.expect(is_central_idempotent(s, u.dom, u.mor) is not None, "central_idempotent", U=u.dom)
    for i in (0, 1):
        t.report(check_component_iso(inst, i), "component_iso", component=i + 1)
    conf = check_confluence(s.cat, inst.spec.bound)
    t.expect(conf.sound, "rewrite_sound")
    t.report(check_monad(inst.writer), "writer_monad")
    t.expect(check_localisable(lm.monad, lm.strength).ok, "writer_localisable")
    return not t.failures, t.detail(words=conf.words, critical_pairs=conf.critical_pairs,
                                    zi=[e.dom for e in lm.zi.elements])


def _c11():
    t = _Tally()
    ci, frag = process_instance()
    index = poset_category(range(3), lambda a, b: a <= b, name="chain3")
    fz = functor_category_zi(index, finset_smc(2))
    upsets = sorted(tuple(sorted(o for o, v in m.items() if v == fz.target_zi.top)) for m in fz.assignments)
    t.expect(upsets == [(), (0, 1, 2), (1, 2), (2,)], "upward_closed", got=upsets)
    z = ci.localisable.zi
    sizes = sorted(e.dom.sizes for e in z.elements)
    t.expect(sizes == [(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)], "process_zi", got=sizes)
    r = check_localisable(ci.monad, ci.localisable.strength)
    t.expect(r.ok, "identity_strengths", first_failure=r.first_failure())
    for start in (1, 2):
        t.report(compare_truncated_restriction(ci, start, frag), "truncated_restriction", start=start)
    return not t.failures, t.detail(upsets=upsets)


# -- planted failures ------------------------------------------------------------------------


MAGMA = ((0, 1, 2), (1, 0, 1), (2, 1, 0))
"""Commutative with unit 0 but not associative: ``(1.1).2 = 2`` while ``1.(1.2) = 0``."""


def broken_associativity_smc() -> SmcStructure:
    """The discrete category on three objects, tensored by :data:`MAGMA`."""
    cat = poset_category(range(3), lambda a, b: a == b, name="discrete3")
    t = lambda a, b: MAGMA[a][b]
    return SmcStructure(cat, 0, t, lambda f, g: (t(f[0], g[0]), t(f[1], g[1])),
                        lambda a, b: (t(a, b), t(b, a)), name="magma-tensor")


def magma_writer() -> MonadData:
    """``M x -`` on finite sets for the three-element magma; the monad associativity law fails."""
    s = finset_smc(2)
    m = MonoidObject(3, Fn(9, 3, tuple(MAGMA[i][j] for i in range(3) for j in range(3))), Fn(1, 3, (0,)))
    return writer_monad(s, m)


def wrong_symmetry_smc() -> SmcStructure:
    """Finite sets with the identity in place of the swap on ``A (x) A``."""
    s = finset_smc(2)
    sigma = lambda a, b: s.cat.identity(s.t(a, b)) if a == b else s.sigma(a, b)
    return SmcStructure(s.cat, s.unit, s.t, s.tm, sigma, initial=s.initial, name="wrong-symmetry")


def flipped_state_morphism():
    """The 1-bit state monad mapped to itself by flipping the stored bit after every run."""
    inst = build_state_monad(1, 2, (2,))
    T, S = inst.monad, 2

    def flip(a):
        (x,) = a
        inner = x * S
        img = []
        for h in range(exp_obj(S, inner)):
            outs = [(v // S) * S + (1 - v % S) for v in decode_exp(S, inner, h)]
            img.append(encode_exp(inner, outs))
        return (Fn(len(img), len(img), tuple(img)),)

    return MonadMorphism(identity_functor(inst.smc.cat), T, T, flip, kind="lax")


def corrupted_state_strength(a=(1, 1), k=1):
    """The curried state strength with the ``(a, k)`` entry replaced by a constant map."""
    inst, lm = state_instance()
    z = lm.zi
    sf = lm.strength

    def comp(x, j):
        st = sf(x, j)
        if x == a and j == k:
            return tuple(Fn(f.dom, f.cod, (0,) * f.dom) for f in st)
        return st

    return inst, StrengthFamily(inst.smc, inst.monad, z, comp, name="corrupted")


def _first_law(rep):
    return rep.violations[0] if rep.violations else None


def _n_assoc():
    rep = validate_smc(broken_associativity_smc())
    law = _first_law(rep)
    return "assoc_strict_objects" in rep.laws_failed(), {"caught": law, "laws": rep.laws_failed()}


def _n_magma():
    rep = check_monad(magma_writer())
    return "associativity" in rep.laws_failed(), {"caught": _first_law(rep), "laws": rep.laws_failed()}


def _n_symmetry():
    rep = validate_smc(wrong_symmetry_smc())
    return "symmetry_naturality" in rep.laws_failed(), {"caught": _first_law(rep), "laws": rep.laws_failed()}


def _n_closure():
    lat, table, labels = sierpinski_pair().powerset_closure()
    try:
        strength_from_closure(lat, table)
    except NotLocalisable as e:
        pair = tuple(sorted(labels[x]) for x in e.pair)
        return pair == ([1], [2]), {"caught": "NotLocalisable", "pair": pair}
    return False, {"caught": None}


def _n_phi():
    rep = check_monad_morphism(flipped_state_morphism())
    return "unit_diagram" in rep.laws_failed(), {"caught": _first_law(rep), "laws": rep.laws_failed()}


def _n_strength():
    inst, sf = corrupted_state_strength()
    rep = check_localisable(inst.monad, sf)
    eq6 = rep.results["eq6_natural_in_a"]
    return not eq6.ok, {"caught": ("eq6_natural_in_a", eq6.counterexample), "failed": rep.failed()}


def _n_stiff():
    ok, square = is_stiff(planted_nonstiff())
    return not ok and square is not None, {"caught": square}


NEGATIVE = [
    ("broken-associativity", _n_assoc),
    ("non-associative-writer", _n_magma),
    ("non-natural-symmetry", _n_symmetry),
    ("non-localisable-closure", _n_closure),
    ("broken-phi", _n_phi),
    ("corrupted-strength", _n_strength),
    ("planted-nonstiff", _n_stiff),
]


def _c12():
    results = [_timed(name, fn) for name, fn in NEGATIVE]
    missed = [r.name for r in results if not r.ok]
    return not missed, {"detected": {r.name: r.detail for r in results}, "missed": missed}


CRITERIA = {
    1: ("zi-semilattices", _c1),
    2: ("zi-set-squared", _c2),
    3: ("closure-criterion", _c3),
    4: ("restricted-monads", _c4),
    5: ("adjunction-cokleisli", _c5),
    6: ("roundtrips", _c6),
    7: ("restriction-morphisms", _c7),
    8: ("graded-indexed", _c8),
    9: ("commutativity", _c9),
    10: ("trace-category", _c10),
    11: ("chain-processes", _c11),
    12: ("negative-battery", _c12),
}


def run_criterion(n: int) -> CheckResult:
    name, fn = CRITERIA[n]
    return _timed(f"criterion-{n}:{name}", fn)


SUITES = {
    "paper-examples": [1, 2, 3, 9, 10, 11],
    "restrictions": [4, 5, 7],
    "roundtrips": [6, 8],
    "acceptance": list(CRITERIA),
}


def run_suite(name: str) -> list[CheckResult]:
    if name == "negative":
        return [_timed(n, fn) for n, fn in NEGATIVE]
    if name not in SUITES:
        raise KeyError(name)
    return [run_criterion(n) for n in SUITES[name]]


def suite_names():
    return sorted([*SUITES, "negative"])
