"""Central idempotents, the semilattice ZI(C), and the stiffness / joins / locality predicates."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .category import Category, NonCommutingSquare, Square, is_pullback, is_pushout, order_key
from .monoidal import SmcStructure


@dataclass(frozen=True)
class CentralIdempotent:
    dom: object
    mor: object
    inv_witness: object = field(compare=False, default=None)


def is_central_idempotent(s: SmcStructure, U, u):
    """Return the inverse of ``U (x) u`` when ``u: U -> I`` is a central idempotent, else ``None``."""
    c = s.cat
    if c.dom(u) != U or c.cod(u) != s.unit:
        return None
    left = s.lw(U, u)
    if left != s.rw(u, U):
        return None
    return c.inverse(left)


def _raw_central(s: SmcStructure, objects=None):
    c = s.cat
    objs = sorted(c.objects if objects is None else objects, key=order_key)
    out = []
    for U in objs:
        for u in c.hom(U, s.unit):
            inv = is_central_idempotent(s, U, u)
            if inv is not None:
                out.append(CentralIdempotent(U, u, inv))
    return out


def identification_witnesses(c: Category, a: CentralIdempotent, b: CentralIdempotent):
    """All isomorphisms ``m: A -> B`` with ``a = b . m``."""
    return [m for m in c.hom(a.dom, b.dom)
            if c.compose(b.mor, m) == a.mor and c.inverse(m) is not None]


@dataclass
class ZiSemilattice:
    """The meet-semilattice of identification classes.

    ``leq[(i, j)]`` lists every witness ``m`` with ``u_i = u_j . m``; a key is
    present iff ``i <= j``. ``join`` holds least upper bounds where they exist.
    """

    elements: list
    leq: dict
    meet: dict
    top: int
    bottom: int | None = None
    join: dict = field(default_factory=dict)
    members: list = field(default_factory=list)
    multiplicity: dict = field(default_factory=dict)
    smc: SmcStructure | None = None

    def __len__(self):
        return len(self.elements)

    def le(self, i, j):
        return (i, j) in self.leq

    def witness(self, i, j):
        ws = self.leq.get((i, j))
        if not ws:
            raise KeyError((i, j))
        return ws[0]

    def has_all_joins(self):
        n = len(self.elements)
        return all((i, j) in self.join for i in range(n) for j in range(n))

    def index(self, ci: CentralIdempotent):
        for k, e in enumerate(self.elements):
            if e == ci:
                return k
        raise KeyError(ci)

    def classify(self, U, u):
        """Index of the class of ``u: U -> I`` and an identifying iso ``m: U -> R`` with ``u = r . m``."""
        c = self.smc.cat
        probe = CentralIdempotent(U, u)
        for k, rep in enumerate(self.elements):
            ws = identification_witnesses(c, probe, rep)
            if ws:
                return k, ws[0]
        raise KeyError(f"{u!r} is not a central idempotent of this category")

    def ups(self, i):
        return [j for j in range(len(self.elements)) if self.le(i, j)]

    def downs(self, i):
        return [j for j in range(len(self.elements)) if self.le(j, i)]

    def to_json(self):
        from .io import encode_value  # local import: io depends on this module

        n = len(self.elements)
        return {
            "elements": [encode_value(e.dom) if isinstance(e, CentralIdempotent) else encode_value(e)
                         for e in self.elements],
            "order": [[i, j] for i in range(n) for j in range(n) if self.le(i, j)],
            "meets": [[i, j, self.meet[(i, j)]] for i in range(n) for j in range(n)],
            "joins": [[i, j, self.join[(i, j)]] for i in range(n) for j in range(n) if (i, j) in self.join],
            "top": self.top,
            "bottom": self.bottom,
            "witness_multiplicity": {f"{i}<={j}": len(ws) for (i, j), ws in sorted(self.leq.items())},
        }


def _lub_table(n, le):
    join = {}
    for i in range(n):
        for j in range(n):
            ubs = [k for k in range(n) if le(i, k) and le(j, k)]
            least = [k for k in ubs if all(le(k, x) for x in ubs)]
            if least:
                join[(i, j)] = least[0]
    return join


def enumerate_central_idempotents(s: SmcStructure, objects=None):
    """One representative per identification class (least domain first)."""
    return _classes(s, objects)[0]


def _classes(s, objects=None):
    c = s.cat
    reps, members, mult = [], [], {}
    for ci in _raw_central(s, objects):
        for k, rep in enumerate(reps):
            ws = identification_witnesses(c, ci, rep)
            if ws:
                members[k].append(ci)
                mult[(k, len(members[k]) - 1)] = len(ws)
                break
        else:
            reps.append(ci)
            members.append([ci])
    return reps, members, mult


def zi_semilattice(s: SmcStructure, objects=None) -> ZiSemilattice:
    c = s.cat
    reps, members, mult = _classes(s, objects)
    n = len(reps)
    leq = {}
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            ws = [m for m in c.hom(a.dom, b.dom) if c.compose(b.mor, m) == a.mor]
            if ws:
                leq[(i, j)] = ws
    z = ZiSemilattice(reps, leq, {}, top=-1, members=members, multiplicity=mult, smc=s)
    top_ci = CentralIdempotent(s.unit, c.identity(s.unit))
    z.top = z.classify(top_ci.dom, top_ci.mor)[0]
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            z.meet[(i, j)] = z.classify(s.t(a.dom, b.dom), s.tm(a.mor, b.mor))[0]
    bottoms = [i for i in range(n) if all(z.le(i, j) for j in range(n))]
    z.bottom = bottoms[0] if bottoms else None
    z.join = _lub_table(n, z.le)
    return z


def semilattice_from_order(labels, le) -> ZiSemilattice:
    """A ZiSemilattice over arbitrary labels, given only the order (meets/joins derived)."""
    n = len(labels)
    leq = {(i, j): [True] for i in range(n) for j in range(n) if le(labels[i], labels[j])}
    lef = lambda i, j: (i, j) in leq
    meet = {}
    for i in range(n):
        for j in range(n):
            lbs = [k for k in range(n) if lef(k, i) and lef(k, j)]
            greatest = [k for k in lbs if all(lef(x, k) for x in lbs)]
            meet[(i, j)] = greatest[0] if greatest else None
    tops = [i for i in range(n) if all(lef(j, i) for j in range(n))]
    bottoms = [i for i in range(n) if all(lef(i, j) for j in range(n))]
    return ZiSemilattice(list(labels), leq, meet, top=tops[0] if tops else None,
                         bottom=bottoms[0] if bottoms else None, join=_lub_table(n, lef))


def order_isomorphism(z1: ZiSemilattice, z2: ZiSemilattice):
    """A bijection ``i -> p[i]`` preserving and reflecting the order, or ``None``."""
    n = len(z1)
    if n != len(z2):
        return None
    for perm in itertools.permutations(range(n)):
        if all(z1.le(i, j) == z2.le(perm[i], perm[j]) for i in range(n) for j in range(n)):
            return perm
    return None


# -- predicates ---------------------------------------------------------------


def stiffness_square(s: SmcStructure, A, u: CentralIdempotent, v: CentralIdempotent) -> Square:
    U, V = u.dom, v.dom
    return Square(
        top=s.lw(A, s.rw(u.mor, V)),        # A(x)U(x)V -> A(x)V
        left=s.lw(s.t(A, U), v.mor),        # A(x)U(x)V -> A(x)U
        right=s.lw(A, v.mor),               # A(x)V -> A
        bottom=s.lw(A, u.mor),              # A(x)U -> A
    )


def is_stiff(s: SmcStructure, z: ZiSemilattice | None = None, objects=None):
    """``(True, None)`` or ``(False, (A, i, j))`` naming the first failing square."""
    z = z or zi_semilattice(s)
    objs = sorted(s.cat.objects if objects is None else objects, key=order_key)
    for A in objs:
        for i, u in enumerate(z.elements):
            for j, v in enumerate(z.elements):
                if not is_pullback(s.cat, stiffness_square(s, A, u, v), objs):
                    return False, (A, i, j)
    return True, None


def find_initial(c: Category, objects=None):
    objs = sorted(c.objects if objects is None else objects, key=order_key)
    for z in objs:
        if all(len(c.hom(z, a)) == 1 for a in objs):
            return z
    return None


def has_universal_joins(s: SmcStructure, z: ZiSemilattice | None = None, objects=None):
    """``(bool, reason)``: initial absorbing 0, binary joins in ZI, and pullback+pushout squares."""
    c = s.cat
    objs = sorted(c.objects if objects is None else objects, key=order_key)
    zero = s.initial if s.initial is not None else find_initial(c, objs)
    if zero is None or any(len(c.hom(zero, a)) != 1 for a in objs):
        return False, "no initial object"
    for A in objs:
        if not c.isomorphisms(s.t(A, zero), zero):
            return False, f"A (x) 0 not isomorphic to 0 at {A!r}"
    z = z or zi_semilattice(s, objs)
    if not z.has_all_joins():
        return False, "ZI lacks binary joins"
    for A in objs:
        for i, u in enumerate(z.elements):
            for j, v in enumerate(z.elements):
                k = z.join[(i, j)]
                m_u, m_v = z.witness(i, k), z.witness(j, k)
                sq = Square(
                    top=s.lw(A, s.rw(u.mor, v.dom)),
                    left=s.lw(s.t(A, u.dom), v.mor),
                    right=s.lw(A, m_v),
                    bottom=s.lw(A, m_u),
                )
                try:
                    if not is_pullback(c, sq, objs):
                        return False, f"join square not a pullback at {(A, i, j)!r}"
                    if not is_pushout(c, sq, objs):
                        return False, f"join square not a pushout at {(A, i, j)!r}"
                except NonCommutingSquare:
                    return False, f"join square does not commute at {(A, i, j)!r}"
    return True, None


def is_local(z: ZiSemilattice) -> bool:
    """``u v v = 1`` forces ``u = 1`` or ``v = 1``."""
    for (i, j), k in z.join.items():
        if k == z.top and i != z.top and j != z.top:
            return False
    return True


def points(z: ZiSemilattice):
    """Prime principal filters ``up(x)``, reported by their generator ``x``."""
    n = len(z)
    out = []
    for x in range(n):
        if z.bottom is not None and x == z.bottom and n > 1:
            continue
        filt = set(z.ups(x))
        if len(filt) == n and n > 1:
            continue
        prime = all(i in filt or j in filt
                    for (i, j), k in z.join.items() if k in filt)
        if prime:
            out.append(x)
    return out


@dataclass
class FunctorZi:
    """Central idempotents of a functor category, as monotone maps into ZI(target)."""

    semilattice: ZiSemilattice
    assignments: list          # per element: dict index-object -> ZI(target) index
    target_zi: ZiSemilattice


def functor_category_zi(index: Category, target: SmcStructure, target_zi: ZiSemilattice | None = None) -> FunctorZi:
    tz = target_zi or zi_semilattice(target)
    objs = sorted(index.objects, key=order_key)
    arrows = [(index.dom(f), index.cod(f)) for f in index.morphisms()]
    maps = []
    for choice in itertools.product(range(len(tz)), repeat=len(objs)):
        assign = dict(zip(objs, choice))
        if all(tz.le(assign[a], assign[b]) for a, b in arrows):
            maps.append(assign)
    labels = [tuple(m[o] for o in objs) for m in maps]
    sl = semilattice_from_order(labels, lambda p, q: all(tz.le(x, y) for x, y in zip(p, q)))
    return FunctorZi(sl, maps, tz)
