"""Named zoo examples as JSON documents (category, monad, strength)."""
from __future__ import annotations

from pathlib import Path

from .errors import MalformedTable


def _semilattice(lattice_doc):
    return {"builder": "semilattice", "params": lattice_doc}


def _closure(lattice_doc, table):
    return (_semilattice(lattice_doc),
            {"builder": "closure", "params": {"closure": list(table)}},
            {"builder": "closure", "params": {"closure": list(table)}})


def chain_closure(params):
    n = int(params.get("n", 3))
    table = params.get("closure", [n - 1] * n)
    return _closure({"chain": n}, table)


def square_closure(params):
    return _closure({"boolean": 2}, params.get("closure", [1, 1, 3, 3]))


def sierpinski_closure(params):
    """Topological closure on the subsets of {1, 2}; not localisable."""
    from .io import lattice_doc
    from .zoo import sierpinski_pair

    lat, table, _ = sierpinski_pair().powerset_closure()
    return _closure(lattice_doc(lat), table)


def identity_chain(params):
    return _semilattice({"chain": int(params.get("n", 3))}), {"builder": "identity"}, {"builder": "identity"}


def _state_params(params):
    return {"n": int(params.get("n", 2)), "carriers": int(params.get("carriers", 2)),
            "S": list(params.get("S", [2] * int(params.get("n", 2))))}


def state(params):
    return {"builder": "state", "params": _state_params(params)}, {"builder": "state"}, {"builder": "curried"}


def state_corrupted(params):
    """As ``state``, with the strength at ``A = (1, .., 1)`` and ``U = (0, .., 0, 1)`` made constant."""
    from .finset import Fn
    from .io import encode_value, load_category
    from .localisable import strength_by_currying

    cat, monad, _ = state(params)
    inst = load_category(cat).extras["state"]
    sf = strength_by_currying(inst)
    n = len(inst.S)
    a, U = (1,) * n, (0,) * (n - 1) + (1,)
    k = next(i for i, e in enumerate(sf.zi.elements) if e.dom == U)
    mor = tuple(Fn(f.dom, f.cod, (0,) * f.dom) for f in sf(a, k))
    return cat, monad, {"builder": "curried", "overrides": [[encode_value(a), encode_value(U), encode_value(mor)]]}


def state_order_sensitive(params):
    return {"builder": "state", "params": _state_params(params)}, {"builder": "state"}, {"builder": "order-sensitive"}


def chain_process(params):
    cat = {"builder": "chain-process", "params": {"k": int(params.get("k", 3)), "max_size": int(params.get("max_size", 2))}}
    return cat, {"builder": "powerset"}, {"builder": "identity"}


def trace_writer(params):
    cat = {"builder": "trace", "params": {"monoid1": params.get("monoid1", "or"), "monoid2": params.get("monoid2", "or"),
                                          "component_objects": list(params.get("component_objects", [0, 1, 2])),
                                          "bound": int(params.get("bound", 3))}}
    return cat, {"builder": "writer"}, {"builder": "identity"}


def planted_nonstiff(params):
    return {"builder": "planted-nonstiff"}, None, None


EXAMPLES = {
    "chain-closure": chain_closure,
    "square-closure": square_closure,
    "sierpinski-closure": sierpinski_closure,
    "identity-chain": identity_chain,
    "state": state,
    "state-corrupted": state_corrupted,
    "state-order-sensitive": state_order_sensitive,
    "chain-process": chain_process,
    "trace-writer": trace_writer,
    "planted-nonstiff": planted_nonstiff,
}


# the parameter that ``--bound`` overrides, per example
BOUND_PARAM = {"state": "carriers", "state-corrupted": "carriers", "state-order-sensitive": "carriers",
               "chain-process": "max_size", "trace-writer": "bound"}


def example_docs(name, params=None, bound=None):
    if name not in EXAMPLES:
        raise MalformedTable(f"unknown example {name!r}; known: {', '.join(sorted(EXAMPLES))}")
    params = dict(params or {})
    if bound is not None and name in BOUND_PARAM:
        params[BOUND_PARAM[name]] = bound
    return EXAMPLES[name](params)


def write_example(name, out: Path, params=None, bound=None):
    from .io import dumps

    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for stem, doc in zip(("category", "monad", "strength"), example_docs(name, params, bound)):
        if doc is None:
            continue
        p = out / f"{stem}.json"
        p.write_text(dumps(doc) + "\n")
        paths.append(p)
    return paths
