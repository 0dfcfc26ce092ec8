import json

import pytest

from conftest import K13, K3K1, P4
from deckrecon.canon import canonical_form
from deckrecon.catalog import (Catalog, DeckVector, complement_map, complement_vector,
                               enumerate_by_augmentation, enumerate_by_subsets,
                               enumerate_catalog, get_catalog, read_catalog, singleton,
                               write_catalog)
from deckrecon.graph import Graph, complement, num_slots
from oracles import classes


def test_small_catalogs():
    assert len(enumerate_catalog(4, 0)) == 1
    cat = enumerate_catalog(4, 3)
    assert {cat.index_of(g) for g in (K3K1, P4, K13)} == {0, 1, 2}


def test_sizes_n4_and_n5_match_brute_force():
    assert [len(get_catalog(4, m)) for m in range(7)] == [1, 1, 2, 3, 2, 1, 1]
    assert [len(get_catalog(4, m)) for m in range(7)] == [len(classes(4, m)) for m in range(7)]
    sizes5 = [len(get_catalog(5, m)) for m in range(11)]
    assert sizes5 == [len(classes(5, m)) for m in range(11)]
    assert sum(sizes5) == 34


@pytest.mark.parametrize("n", [4, 5])
def test_reps_are_orbit_minima(n):
    for m in range(num_slots(n) + 1):
        assert list(get_catalog(n, m).codes) == classes(n, m)


@pytest.mark.parametrize("n", range(1, 8))
def test_complement_symmetry_of_counts(n):
    N = num_slots(n)
    sizes = [len(get_catalog(n, m)) for m in range(N + 1)]
    assert sizes == sizes[::-1]


def test_totals_n6_n7():
    assert sum(len(get_catalog(6, m)) for m in range(16)) == 156
    assert sum(len(get_catalog(7, m)) for m in range(22)) == 1044


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_subsets_and_augmentation_agree(n):
    for m in range(num_slots(n) + 1):
        assert enumerate_by_subsets(n, m) == enumerate_by_augmentation(n, m)


def test_catalog_invariants():
    cat = get_catalog(5, 4)
    assert list(cat.codes) == sorted(cat.codes)
    for g in cat:
        assert g.edge_count == 4 and g.n == 5
        assert canonical_form(g).code == g.bits


def test_enumerate_rejects_bad_m():
    with pytest.raises(ValueError):
        enumerate_catalog(4, 7)
    with pytest.raises(ValueError):
        enumerate_catalog(4, -1)


def test_singleton():
    cat = get_catalog(4, 3)
    v = singleton(cat, K13)
    assert v.total == 1
    assert v.counts[cat.index_of(K13)] == 1
    assert singleton(cat, K13.relabel([3, 1, 0, 2])) == v
    with pytest.raises(ValueError):
        singleton(cat, Graph.complete(4))


def test_difference_vector_is_signed():
    cat = get_catalog(4, 3)
    X = singleton(cat, K13) - singleton(cat, P4)
    assert X.signed and X.total == 0
    assert not singleton(cat, P4).signed


def test_vector_catalog_mismatch():
    with pytest.raises(ValueError):
        singleton(get_catalog(4, 3), K13) + DeckVector.zero(get_catalog(4, 2))


def test_complement_map():
    src = get_catalog(4, 3)
    dst, fwd = complement_map(src)
    assert dst is get_catalog(4, 3)
    assert sorted(fwd) == list(range(len(src)))
    back = complement_map(dst)[1]
    assert [back[fwd[i]] for i in range(len(src))] == list(range(len(src)))
    # complement of a triangle plus isolated vertex is the star
    assert fwd[src.index_of(K3K1)] == dst.index_of(K13)
    assert fwd[src.index_of(P4)] == dst.index_of(P4)
    empty_dst, m0 = complement_map(get_catalog(4, 0))
    assert empty_dst.m == 6 and empty_dst[m0[0]] == Graph.complete(4)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_complement_map_matches_direct_complement(n):
    for m in range(num_slots(n) + 1):
        src = get_catalog(n, m)
        dst, fwd = complement_map(src)
        for i, g in enumerate(src):
            assert fwd[i] == dst.index_of(complement(g))


def test_complement_vector_linear():
    cat = get_catalog(5, 4)
    v = DeckVector(cat, range(len(cat)))
    w = complement_vector(v)
    assert w.total == v.total
    assert complement_vector(w) == v


def test_export_and_cache_roundtrip(tmp_path):
    cat = get_catalog(5, 5)
    write_catalog(cat, tmp_path / "u55")
    meta = json.loads((tmp_path / "u55.json").read_text())
    assert meta == {"n": 5, "m": 5, "count": 6, "format_version": 1}
    assert (tmp_path / "u55.g6").read_text().splitlines() == cat.graph6_lines()
    assert read_catalog(tmp_path / "u55") == cat

    fresh = get_catalog(4, 2, cache_dir=tmp_path)
    assert (tmp_path / "catalog-n4-m2.g6").exists()
    assert read_catalog(tmp_path / "catalog-n4-m2") == fresh


def test_corrupt_cache_is_rejected(tmp_path):
    write_catalog(get_catalog(4, 3), tmp_path / "bad")
    (tmp_path / "bad.g6").write_text("Cs\nCw\n")
    with pytest.raises(ValueError):
        read_catalog(tmp_path / "bad")


def test_deck_vector_json_roundtrip():
    cat = get_catalog(4, 3)
    v = DeckVector(cat, [2, 0, 5])
    assert DeckVector.from_json(v.to_json()) == v
    # any labeling of a member is accepted on input
    data = {"n": 4, "m": 3, "entries": [{"graph6": "Cs", "count": 1}, {"graph6": "CF", "count": 2}]}
    u = DeckVector.from_json(data)
    assert u.total == 3


def test_catalog_equality_and_hash():
    a = Catalog(4, 3, [13, 7, 11])
    assert a == get_catalog(4, 3) and hash(a) == hash(get_catalog(4, 3))
    with pytest.raises(ValueError):
        Catalog(4, 3, [7, 7])
