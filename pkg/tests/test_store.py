import json
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vitpoly import hull, store
from vitpoly.classify import classify_catalog
from vitpoly.model import MarkovChain, Sequence, WeightScheme
from vitpoly.propagate import enumerate_catalog


@given(st.fractions())
def test_fraction_strings_roundtrip(x):
    assert store.parse_frac(store.frac_str(x)) == x


def test_fraction_strings_reject_floats():
    with pytest.raises(store.SchemaError):
        store.parse_frac(0.5)


def test_type_encodings():
    s = Sequence.parse("0120", 3)
    assert store.encode_sequence(s) == {"k": 3, "states": [0, 1, 2, 0]}
    assert store.decode_sequence(store.encode_sequence(s)) == s
    c = MarkovChain(2, (1, 0), ((F(1, 3), F(2, 3)), (1, 0)))
    enc = store.encode_chain(c)
    assert enc["p"][0] == ["1/3", "2/3"] and store.decode_chain(enc) == c
    ws = WeightScheme.from_flat([3, F(-1, 2), 4, 5], omega=(0, 1))
    assert store.decode_weights(store.encode_weights(ws)) == ws


def test_catalog_roundtrip_and_determinism(tmp_path):
    cat = classify_catalog(enumerate_catalog(2, 5))
    p = tmp_path / "c.json"
    store.save_catalog(p, cat)
    first = p.read_bytes()
    assert store.load_catalog(p) == cat
    store.save_catalog(p, store.load_catalog(p))
    assert p.read_bytes() == first


def test_schema_version_rejected(tmp_path):
    cat = enumerate_catalog(2, 3)
    d = store.catalog_to_json(cat)
    d["schema_version"] = 0
    p = tmp_path / "old.json"
    p.write_text(json.dumps(d))
    with pytest.raises(store.SchemaError, match="schema_version"):
        store.load_catalog(p)
    p.write_text("{not json")
    with pytest.raises(store.SchemaError):
        store.load_catalog(p)


def test_store_manifest(tmp_path):
    st_ = store.CatalogStore(tmp_path)
    enumerate_catalog(2, 4, cache=st_)
    names = sorted(x.name for x in tmp_path.iterdir())
    assert "manifest.json" in names and "catalog_k2_n4_s0.json" in names
    assert st_.lengths(2) == [1, 2, 3, 4] and st_.best_resume(2, 3).n == 3
    assert st_.best_resume(3, 5) is None


def test_cache_dir_env(monkeypatch, tmp_path):
    monkeypatch.setenv(store.CACHE_ENV, str(tmp_path / "x"))
    assert store.CatalogStore().root == tmp_path / "x"


def test_polytope_exports():
    ps = hull.PointSet.of([(0, 0), (1, 0), (0, 1), (1, 1)])
    rep = hull.full_report(ps)
    d = store.polytope_to_json(ps, rep)
    assert d["dim"] == 2 and d["f_vector"] == [4, 4] and len(d["edges"]) == 4
    assert set(d) >= {"dim", "points", "vertex_flags", "witnesses", "edges", "f_vector"}
    text = store.poly_text(ps, rep)
    assert "POINTS\n1 0 0\n1 1 0\n" in text
