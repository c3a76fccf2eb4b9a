import json

import pytest
from hypothesis import given, strategies as st

from tensorloc.central import zi_semilattice
from tensorloc.errors import MalformedTable
from tensorloc.finset import Fn
from tensorloc.io import (category_doc, decode_value, digest, encode_value, lattice_doc, load_category, load_lattice,
                          load_monad, load_strength, read_json, strength_doc)
from tensorloc.lattices import boolean_lattice, chain
from tensorloc.localisable import check_localisable
from tensorloc.monad import check_monad
from tensorloc.monoidal import validate_smc
from tensorloc.zoo import ProcessCategory, chain_closure_localisable, planted_nonstiff

values = st.recursive(
    st.integers(-5, 5) | st.booleans() | st.text(max_size=3)
    | st.builds(lambda img, cod: Fn(len(img), cod, tuple(min(v, cod - 1) for v in img)),
                st.lists(st.integers(0, 3), max_size=3), st.integers(4, 5)),
    lambda inner: st.lists(inner, max_size=3).map(tuple) | st.frozensets(st.integers(0, 3), max_size=3),
    max_leaves=8,
)


@given(values)
def test_encode_decode_round_trip(x):
    assert decode_value(json.loads(json.dumps(encode_value(x)))) == x


def test_processes_survive_encoding():
    for a in ProcessCategory(2, 2).objects[:6]:
        assert decode_value(encode_value(a)) == a


@pytest.mark.parametrize("bad", [{"fn": [2, 1, [0, 1]]}, {"fn": [1, 1]}, {"nope": 1}, {"fn": 1, "set": 2}])
def test_bad_tagged_values(bad):
    with pytest.raises(MalformedTable):
        decode_value(bad)


def test_lattice_documents():
    assert load_lattice({"chain": 3}) == chain(3)
    assert load_lattice(lattice_doc(boolean_lattice(2))) == boolean_lattice(2)
    with pytest.raises(MalformedTable):
        load_lattice({"order": [[True, False]]})
    with pytest.raises(MalformedTable):
        load_lattice({"poset": 3})


def test_explicit_tables_round_trip():
    s = planted_nonstiff()
    ctx = load_category(json.loads(json.dumps(category_doc(s))))
    assert validate_smc(ctx.smc).ok
    assert len(zi_semilattice(ctx.smc)) == len(zi_semilattice(s))


def test_explicit_monad_and_strength_tables():
    lm = chain_closure_localisable(3, (1, 1, 2))
    base = lm.smc.cat
    ctx = load_category(category_doc(lm.smc))
    objs = base.objects
    # loaded morphisms are numbered in the order the document lists them
    ids = {f: i for i, f in enumerate(f for a in objs for b in objs for f in base.hom(a, b))}
    T = lm.monad
    mdoc = {
        "obj": [[a, T.obj(a)] for a in objs],
        "mor": [[i, ids[T.mor(f)]] for f, i in ids.items()],
        "unit": [[a, ids[T.unit(a)]] for a in objs],
        "mult": [[a, ids[T.mult(a)]] for a in objs],
    }
    m = load_monad(json.loads(json.dumps(mdoc)), ctx)
    assert check_monad(m).ok
    sdoc = {"entries": [[a, u.dom, ids[lm.strength(a, k)]] for a in objs for k, u in enumerate(lm.zi.elements)]}
    sf = load_strength(json.loads(json.dumps(sdoc)), ctx, m)
    assert check_localisable(m, sf).ok
    assert strength_doc(sf)["entries"] == sdoc["entries"]


def test_builder_mismatches_are_malformed():
    ctx = load_category({"builder": "semilattice", "params": {"chain": 2}})
    with pytest.raises(MalformedTable):
        load_monad({"builder": "writer"}, ctx)
    with pytest.raises(MalformedTable):
        load_strength({"builder": "curried"}, ctx, load_monad({"builder": "identity"}, ctx))
    with pytest.raises(MalformedTable):
        load_category({"builder": "nothing"})
    with pytest.raises(MalformedTable):
        load_category({"objects": []})


def test_reading_files(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    with pytest.raises(MalformedTable, match="invalid JSON"):
        read_json(p)
    with pytest.raises(MalformedTable, match="cannot read"):
        read_json(tmp_path / "missing.json")
    p.write_text("{}")
    assert read_json(p) == {} and len(digest(p)) == 64
