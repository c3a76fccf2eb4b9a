"""JSON documents for categories, monads and strengths.

A document either names a builder (``{"builder": "state", "params": {...}}``)
or spells out finite tables. Structured values (functions between finite sets,
tagged morphisms, processes) use a small tagged encoding; plain JSON lists
decode to tuples.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .category import FinCategory
from .central import CentralIdempotent, zi_semilattice
from .errors import MalformedTable
from .finset import Fn
from .lattices import FiniteLattice, boolean_lattice, chain, closure_monad
from .localisable import StrengthFamily, identity_strength, strength_by_currying, strength_from_closure
from .monad import MonadData, identity_monad
from .monoidal import SmcStructure
from .restriction import RMor

# -- values ----------------------------------------------------------------------------


def encode_value(x):
    from .traces import TraceMor
    from .zoo import Process, ProcessMor

    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fn):
        return {"fn": [x.dom, x.cod, list(x.img)]}
    if isinstance(x, TraceMor):
        return {"trace": [encode_value(x.dom), encode_value(x.cod), encode_value(x.left),
                          encode_value(x.right), x.silent]}
    if isinstance(x, RMor):
        return {"rmor": [encode_value(x.dom), encode_value(x.cod), encode_value(x.base)]}
    if isinstance(x, ProcessMor):
        return {"pmor": [encode_value(x.dom), encode_value(x.cod), [encode_value(f) for f in x.comps]]}
    if isinstance(x, Process):
        return {"process": [list(x.sizes), [encode_value(f) for f in x.maps]]}
    if isinstance(x, CentralIdempotent):
        return {"idempotent": [encode_value(x.dom), encode_value(x.mor)]}
    if isinstance(x, frozenset):
        return {"set": sorted((encode_value(y) for y in x), key=json.dumps)}
    if isinstance(x, (tuple, list)):
        return [encode_value(y) for y in x]
    if isinstance(x, dict):
        return {str(k): encode_value(v) for k, v in x.items()}
    return repr(x)


def decode_value(x):
    from .traces import TraceMor
    from .zoo import Process, ProcessMor

    if isinstance(x, list):
        return tuple(decode_value(y) for y in x)
    if isinstance(x, dict):
        if len(x) != 1:
            raise MalformedTable(f"tagged value must have exactly one key, got {sorted(x)!r}")
        (tag, body), = x.items()
        try:
            if tag == "fn":
                dom, cod, img = body
                if len(img) != dom or any(not (0 <= v < cod) for v in img):
                    raise MalformedTable(f"function table {body!r} is not a map {dom} -> {cod}")
                return Fn(dom, cod, tuple(img))
            if tag == "trace":
                d, c, left, right, n = body
                return TraceMor(decode_value(d), decode_value(c), decode_value(left), decode_value(right), n)
            if tag == "rmor":
                return RMor(*(decode_value(y) for y in body))
            if tag == "pmor":
                d, c, comps = body
                return ProcessMor(decode_value(d), decode_value(c), [decode_value(f) for f in comps])
            if tag == "process":
                sizes, maps = body
                return Process(sizes, [decode_value(f) for f in maps])
            if tag == "set":
                return frozenset(decode_value(y) for y in body)
        except (TypeError, ValueError) as e:
            raise MalformedTable(f"bad {tag!r} value: {e}") from None
        raise MalformedTable(f"unknown value tag {tag!r}")
    return x


def dumps(obj) -> str:
    """Deterministic compact JSON."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def read_json(path):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise MalformedTable(f"cannot read {path}: {e.strerror or e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedTable(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


def digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# -- lattices ----------------------------------------------------------------------------


def load_lattice(doc) -> FiniteLattice:
    """``{"chain": n}``, ``{"boolean": k}`` or ``{"order": [[bool]]}`` (any labelling)."""
    if "chain" in doc:
        return chain(int(doc["chain"]))
    if "boolean" in doc:
        return boolean_lattice(int(doc["boolean"]))
    if "order" in doc:
        le = doc["order"]
        n = len(le)
        if any(len(row) != n for row in le):
            raise MalformedTable("order matrix must be square")
        try:
            lat, _ = FiniteLattice.from_order(range(n), lambda a, b: bool(le[a][b]))
        except ValueError as e:
            raise MalformedTable(str(e)) from None
        return lat
    raise MalformedTable("lattice needs one of 'chain', 'boolean', 'order'")


def lattice_doc(lat: FiniteLattice):
    return {"order": [[bool(v) for v in row] for row in lat.le]}


# -- category documents -------------------------------------------------------------------


@dataclass
class Context:
    """A loaded category plus whatever its builder knows (lattice, state instance, ...)."""

    smc: SmcStructure
    builder: str | None = None
    params: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)


CATEGORY_BUILDERS = ("semilattice", "state", "chain-process", "trace", "planted-nonstiff", "finset")


def _build_category(name, params) -> Context:
    from . import zoo
    from .finset import finset_smc

    if name == "semilattice":
        lat = load_lattice(params)
        return Context(zoo.build_semilattice_category(lat), name, params, {"lattice": lat})
    if name == "state":
        inst = zoo.build_state_monad(int(params.get("n", 2)), int(params.get("carriers", 2)),
                                     params.get("S"), validate=False)
        return Context(inst.smc, name, params, {"state": inst})
    if name == "chain-process":
        spec = zoo.ChainProcessSpec(int(params.get("k", 3)), int(params.get("max_size", 2)))
        ci = zoo.build_chain_process(spec, validate=False)
        return Context(ci.smc, name, params, {"process": ci})
    if name == "trace":
        spec = zoo.TraceSpec(params.get("monoid1", "or"), params.get("monoid2", "or"),
                             tuple(params.get("component_objects", (0, 1, 2))), int(params.get("bound", 3)))
        inst = zoo.build_trace_category(spec)
        return Context(inst.smc, name, params, {"trace": inst})
    if name == "planted-nonstiff":
        return Context(zoo.planted_nonstiff(), name, params)
    if name == "finset":
        return Context(finset_smc(int(params.get("max_size", 3))), name, params)
    raise MalformedTable(f"unknown category builder {name!r}; known: {', '.join(CATEGORY_BUILDERS)}")


def _table(rows, arity, what):
    out = {}
    for row in rows:
        if not isinstance(row, list) or len(row) != arity + 1:
            raise MalformedTable(f"{what} rows must have {arity + 1} entries, got {row!r}")
        key = tuple(decode_value(v) for v in row[:arity])
        out[key if arity > 1 else key[0]] = decode_value(row[arity])
    return out


def load_category(doc) -> Context:
    """Builder reference, or explicit tables with an optional monoidal part."""
    if not isinstance(doc, dict):
        raise MalformedTable("a category document is a JSON object")
    if "builder" in doc:
        return _build_category(doc["builder"], doc.get("params", {}))
    try:
        objects = [decode_value(o) for o in doc["objects"]]
        morphisms = {decode_value(k): tuple(decode_value(v)) for k, v in doc["morphisms"]}
        identities = _table(doc["identities"], 1, "identities")
        compose = _table(doc["compose"], 2, "compose")
    except KeyError as e:
        raise MalformedTable(f"category document lacks {e.args[0]!r}") from None
    except (TypeError, ValueError) as e:
        raise MalformedTable(f"malformed category tables: {e}") from None
    cat = FinCategory(objects, morphisms, identities, compose, name=doc.get("name"))
    if "unit" not in doc:
        return Context(SmcStructure(cat, None, None, None, None, name=doc.get("name")))
    tobj = _table(doc["tensor_obj"], 2, "tensor_obj")
    tmor = _table(doc["tensor_mor"], 2, "tensor_mor")
    sym = _table(doc["symmetry"], 2, "symmetry")
    s = SmcStructure.from_tables(cat, decode_value(doc["unit"]), tobj, tmor, sym,
                                 initial=decode_value(doc.get("initial")), name=doc.get("name"))
    return Context(s)


def category_doc(s: SmcStructure, objects=None):
    """Explicit tables for a finite fragment closed under tensor."""
    c = s.cat
    objs = list(c.objects if objects is None else objects)
    mors = [(f, a, b) for a in objs for b in objs for f in c.hom(a, b)]
    ids = {f: i for i, (f, _, _) in enumerate(mors)}

    def mid(f):
        if f not in ids:
            raise MalformedTable(f"fragment not closed: {f!r}")
        return ids[f]

    doc = {
        "objects": [encode_value(a) for a in objs],
        "morphisms": [[i, [encode_value(a), encode_value(b)]] for i, (f, a, b) in enumerate(mors)],
        "identities": [[encode_value(a), mid(c.identity(a))] for a in objs],
        "compose": [[mid(g), mid(f), mid(c.compose(g, f))]
                    for f, a, b in mors for g, b2, _ in mors if b2 == b],
        "name": s.name,
    }
    if s.unit is not None:
        doc["unit"] = encode_value(s.unit)
        doc["initial"] = encode_value(s.initial)
        doc["tensor_obj"] = [[encode_value(a), encode_value(b), encode_value(s.t(a, b))] for a in objs for b in objs]
        doc["tensor_mor"] = [[mid(f), mid(g), mid(s.tm(f, g))] for f, _, _ in mors for g, _, _ in mors]
        doc["symmetry"] = [[encode_value(a), encode_value(b), mid(s.sigma(a, b))] for a in objs for b in objs]
    return doc


# -- monads and strengths ---------------------------------------------------------------


# monad builder -> (context extra, attribute holding the monad)
MONAD_BUILDERS = {"state": ("state", "monad"), "powerset": ("process", "monad"), "writer": ("trace", "writer")}


def load_monad(doc, ctx: Context) -> MonadData:
    if "builder" in doc:
        name, params = doc["builder"], doc.get("params", {})
        if name == "identity":
            return identity_monad(ctx.smc.cat)
        if name == "closure":
            lat = ctx.extras.get("lattice")
            if lat is None:
                raise MalformedTable("closure monads need a semilattice category")
            return closure_monad(lat, tuple(params["closure"]), ctx.smc)
        if name not in MONAD_BUILDERS:
            raise MalformedTable(f"unknown monad builder {name!r}")
        key, attr = MONAD_BUILDERS[name]
        if key not in ctx.extras:
            raise MalformedTable(f"monad builder {name!r} does not fit category builder {ctx.builder!r}")
        return getattr(ctx.extras[key], attr)
    try:
        obj = _table(doc["obj"], 1, "obj")
        mor = _table(doc["mor"], 1, "mor")
        unit = _table(doc["unit"], 1, "unit")
        mult = _table(doc["mult"], 1, "mult")
    except KeyError as e:
        raise MalformedTable(f"monad document lacks {e.args[0]!r}") from None
    return MonadData.from_tables(ctx.smc.cat, obj, mor, unit, mult, name=doc.get("name"))


def load_strength(doc, ctx: Context, monad: MonadData, zi=None) -> StrengthFamily:
    s = ctx.smc
    z = zi or zi_semilattice(s)
    if "builder" in doc:
        sf = _strength_builder(doc["builder"], doc.get("params", {}), ctx, monad, z)
        if "overrides" in doc:
            sf = sf.with_overrides(_strength_rows(doc["overrides"], z), name=doc.get("name", "overridden"))
        return sf
    if "entries" not in doc:
        raise MalformedTable("strength document lacks 'entries'")
    return StrengthFamily.from_table(s, monad, z, _strength_rows(doc["entries"], z), name=doc.get("name"))


def _strength_builder(name, params, ctx: Context, monad, z):
    from . import zoo

    needs = {"closure": "lattice", "curried": "state", "order-sensitive": "state"}
    if name in needs and needs[name] not in ctx.extras:
        raise MalformedTable(f"strength builder {name!r} does not fit category builder {ctx.builder!r}")
    if name == "identity":
        return identity_strength(ctx.smc, monad, z)
    if name == "closure":
        return strength_from_closure(ctx.extras["lattice"], tuple(params["closure"]), ctx.smc)
    if name == "curried":
        return strength_by_currying(ctx.extras["state"], z)
    if name == "order-sensitive":
        return zoo.planted_order_sensitive_strength(ctx.extras["state"], z)
    raise MalformedTable(f"unknown strength builder {name!r}")


def _strength_rows(rows, z):
    table = {}
    for row in rows:
        if not isinstance(row, list) or len(row) != 3:
            raise MalformedTable(f"strength rows are [object, idempotent-domain, morphism], got {row!r}")
        a, U, mor = (decode_value(v) for v in row)
        k = next((i for i, e in enumerate(z.elements) if e.dom == U), None)
        if k is None:
            raise MalformedTable(f"{U!r} is not the domain of a representative central idempotent")
        table[(a, k)] = mor
    return table


def strength_doc(sf: StrengthFamily, objects=None):
    objs = list(sf.smc.cat.objects if objects is None else objects)
    return {"entries": [[encode_value(a), encode_value(u.dom), encode_value(sf(a, k))]
                        for a in objs for k, u in enumerate(sf.zi.elements)]}
