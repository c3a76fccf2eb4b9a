"""Finite lattices: enumeration up to isomorphism, closure operators, and the meet SMC."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .category import poset_category
from .errors import InvalidClosure
from .monoidal import SmcStructure


@dataclass(frozen=True)
class FiniteLattice:
    """Elements ``0..n-1`` with ``le[i][j]``; naturally labelled so 0 is bottom and n-1 top."""

    le: tuple

    @property
    def n(self):
        return len(self.le)

    @property
    def elements(self):
        return tuple(range(self.n))

    def leq(self, x, y):
        return self.le[x][y]

    @cached_property
    def meet_table(self):
        return {(x, y): _extremum(self, x, y, lower=True) for x in self.elements for y in self.elements}

    @cached_property
    def join_table(self):
        return {(x, y): _extremum(self, x, y, lower=False) for x in self.elements for y in self.elements}

    def meet(self, x, y):
        return self.meet_table[(x, y)]

    def join(self, x, y):
        return self.join_table[(x, y)]

    @property
    def top(self):
        return self.n - 1

    @property
    def bottom(self):
        return 0

    def is_distributive(self):
        E = self.elements
        return all(self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z))
                   for x in E for y in E for z in E)

    @classmethod
    def from_order(cls, elements, leq):
        """Relabel an arbitrary finite lattice; returns ``(lattice, labels)`` with ``labels[i]`` the original element."""
        elements = list(elements)
        labels = sorted(elements, key=lambda x: (sum(leq(y, x) for y in elements), repr(x)))
        le = tuple(tuple(leq(a, b) for b in labels) for a in labels)
        lat = cls(le)
        lat.meet_table  # fails early if meets/joins are missing
        lat.join_table
        return lat, labels


def _extremum(lat, x, y, lower):
    E = lat.elements
    if lower:
        bounds = [z for z in E if lat.le[z][x] and lat.le[z][y]]
        best = [z for z in bounds if all(lat.le[w][z] for w in bounds)]
    else:
        bounds = [z for z in E if lat.le[x][z] and lat.le[y][z]]
        best = [z for z in bounds if all(lat.le[z][w] for w in bounds)]
    if len(best) != 1:
        raise ValueError(f"not a lattice: no {'meet' if lower else 'join'} of {x} and {y}")
    return best[0]


def chain(n):
    return FiniteLattice(tuple(tuple(i <= j for j in range(n)) for i in range(n)))


def boolean_lattice(k):
    """Subsets of ``{0..k-1}`` as bitmasks, relabelled naturally."""
    lat, _ = FiniteLattice.from_order(range(2 ** k), lambda a, b: a & ~b == 0)
    return lat


def _canonical(le):
    n = len(le)
    best = None
    for p in itertools.permutations(range(n)):
        key = tuple(le[p[i]][p[j]] for i in range(n) for j in range(n))
        if best is None or key < best:
            best = key
    return best


def _is_lattice(le):
    n = len(le)
    for x in range(n):
        for y in range(n):
            for lower in (True, False):
                if lower:
                    bounds = [z for z in range(n) if le[z][x] and le[z][y]]
                    best = [z for z in bounds if all(le[w][z] for w in bounds)]
                else:
                    bounds = [z for z in range(n) if le[x][z] and le[y][z]]
                    best = [z for z in bounds if all(le[z][w] for w in bounds)]
                if len(best) != 1:
                    return False
    return True


def enumerate_lattices(n):
    """All lattices with ``n`` elements up to isomorphism (n=1..5 gives 1, 1, 1, 2, 5)."""
    if n <= 0:
        return []
    if n == 1:
        return [FiniteLattice(((True,),))]
    # bottom 0, top n-1; choose the strict order among the middle elements,
    # restricted to naturally labelled (i < j only) transitive relations
    mids = list(range(1, n - 1))
    pairs = [(i, j) for i in mids for j in mids if i < j]
    seen, out = set(), []
    for bits in itertools.product((False, True), repeat=len(pairs)):
        rel = {p for p, b in zip(pairs, bits) if b}
        if any((i, j) in rel and (j, k) in rel and (i, k) not in rel
               for i in mids for j in mids for k in mids):
            continue
        le = tuple(tuple(i == j or i == 0 or j == n - 1 or (i, j) in rel for j in range(n)) for i in range(n))
        if not _is_lattice(le):
            continue
        key = _canonical(le)
        if key in seen:
            continue
        seen.add(key)
        out.append(FiniteLattice(le))
    return out


def all_lattices(max_size):
    return [lat for n in range(1, max_size + 1) for lat in enumerate_lattices(n)]


# -- closure operators ------------------------------------------------------------


def check_closure(lat: FiniteLattice, c):
    """Raise ``InvalidClosure`` unless ``c`` is monotone, inflationary and idempotent."""
    E = lat.elements
    c = tuple(c)
    if len(c) != lat.n or any(not (0 <= v < lat.n) for v in c):
        raise InvalidClosure(f"closure table {c!r} is not a map on {lat.n} elements")
    for x in E:
        if not lat.leq(x, c[x]):
            raise InvalidClosure(f"not inflationary at {x}")
        if c[c[x]] != c[x]:
            raise InvalidClosure(f"not idempotent at {x}")
        for y in E:
            if lat.leq(x, y) and not lat.leq(c[x], c[y]):
                raise InvalidClosure(f"not monotone at {x} <= {y}")
    return c


def closure_operators(lat: FiniteLattice):
    out = []
    for c in itertools.product(lat.elements, repeat=lat.n):
        try:
            out.append(check_closure(lat, c))
        except InvalidClosure:
            pass
    return out


def closure_criterion(lat: FiniteLattice, c):
    """First pair ``(a, u)`` with ``c(a) /\\ u  not<=  c(a /\\ u)``, or ``None``."""
    for a in lat.elements:
        for u in lat.elements:
            if not lat.leq(lat.meet(c[a], u), c[lat.meet(a, u)]):
                return (a, u)
    return None


# -- the meet SMC ---------------------------------------------------------------


def semilattice_smc(lat: FiniteLattice, name=None) -> SmcStructure:
    """Thin category of ``lat`` with tensor = meet, unit = top, initial = bottom."""
    cat = poset_category(lat.elements, lat.leq, name=name)
    m = lat.meet
    return SmcStructure(
        cat,
        lat.top,
        m,
        lambda f, g: (m(f[0], g[0]), m(f[1], g[1])),
        lambda a, b: (m(a, b), m(a, b)),
        initial=lat.bottom,
        name=name or f"L{lat.n}",
    )


def closure_monad(lat: FiniteLattice, c, smc: SmcStructure | None = None):
    """The monad on the thin category of ``lat`` given by a closure operator."""
    from .monad import MonadData

    c = check_closure(lat, c)
    s = smc or semilattice_smc(lat)
    return MonadData(
        s.cat,
        lambda x: c[x],
        lambda f: (c[f[0]], c[f[1]]),
        lambda x: (x, c[x]),
        lambda x: (c[x], c[x]),
        name="closure",
    )
