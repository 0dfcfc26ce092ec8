import json
from math import comb

import pytest

from conftest import C4, K13, K3K1, P4, P3K1, TWO_K2
from deckrecon.catalog import DeckVector, get_catalog, singleton
from deckrecon.graph import num_slots
from deckrecon.operators import (D_or_zero, Delta_or_zero, OperatorError, OperatorMatrix,
                                 _check_column_sums, apply, build_D, build_d, build_Delta,
                                 deck_of_collection, modified_deck)
from oracles import naive_d, naive_D, naive_Delta

# frozen from the brute-force oracles; columns [K3K1, K13, P4]
D1_43 = [[3, 3, 2], [0, 0, 1]]
BIGD1_43 = [[0, 3, 2], [3, 0, 2], [6, 6, 5]]
DELTA1_43 = [[3, 3, 2], [3, 3, 2], [6, 6, 8]]
DELTA2_43 = [[6, 6, 6], [6, 6, 6], [18, 18, 18]]
D1_44 = [[1, 0], [1, 0], [2, 4]]


def test_frozen_small_matrices():
    assert build_d(4, 3, 1).to_dense() == D1_43
    assert build_D(4, 3, 1).to_dense() == BIGD1_43
    assert build_Delta(4, 3, 1).to_dense() == DELTA1_43
    assert build_Delta(4, 3, 2).to_dense() == DELTA2_43
    assert build_d(4, 4, 1).to_dense() == D1_44


def test_frozen_values_agree_with_oracle():
    assert naive_d(4, 3, 1) == D1_43
    assert naive_D(4, 3, 1) == BIGD1_43
    assert naive_Delta(4, 3, 1) == DELTA1_43
    assert naive_Delta(4, 3, 2) == DELTA2_43
    assert naive_d(4, 4, 1) == D1_44


def _grid(n, imax=2):
    N = num_slots(n)
    for m in range(N + 1):
        for i in range(imax + 1):
            yield m, i


@pytest.mark.parametrize("n", [4, 5])
def test_d_matches_oracle(n):
    for m, k in _grid(n):
        if k <= m:
            assert build_d(n, m, k).to_dense() == naive_d(n, m, k), (m, k)


@pytest.mark.parametrize("n", [4, 5])
def test_D_matches_oracle(n):
    N = num_slots(n)
    for m, i in _grid(n):
        if i <= min(m, N - m):
            assert build_D(n, m, i).to_dense() == naive_D(n, m, i), (m, i)


@pytest.mark.parametrize("n", [4, 5])
def test_Delta_matches_oracle(n):
    for m, i in _grid(n):
        if i <= m:
            assert build_Delta(n, m, i).to_dense() == naive_Delta(n, m, i), (m, i)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_column_sums(n):
    N = num_slots(n)
    for m in range(N + 1):
        for i in range(min(m, 3) + 1):
            assert set(build_d(n, m, i).column_sums()) == {comb(m, i)}
            assert set(build_Delta(n, m, i).column_sums()) == {comb(m, i) * comb(N - m + i, i)}
            if i <= N - m:
                assert set(build_D(n, m, i).column_sums()) == {comb(m, i) * comb(N - m, i)}


def test_column_sum_check_rejects_tampering():
    M = build_d(4, 3, 1)
    bad = OperatorMatrix(M.rows, M.cols, {**M.entries, (0, 0): 4}, "d", 1)
    with pytest.raises(OperatorError):
        _check_column_sums(bad, 3)


@pytest.mark.parametrize("n", [4, 5, 6])
@pytest.mark.parametrize("r", [2, 3])
def test_kelly_composition(n, r):
    for m in range(r, num_slots(n) + 1):
        lhs = build_d(n, m - r + 1, 1) @ build_d(n, m, r - 1)
        assert lhs == r * build_d(n, m, r), m


def test_order_zero_is_identity():
    for m in range(7):
        I = OperatorMatrix.identity(get_catalog(4, m))
        assert build_d(4, m, 0) == I
        assert build_D(4, m, 0) == I
        assert build_Delta(4, m, 0) == I


def test_range_errors():
    with pytest.raises(ValueError):
        build_d(4, 2, 3)
    with pytest.raises(ValueError):
        build_D(4, 5, 2)
    with pytest.raises(ValueError):
        build_Delta(4, 7, 1)
    assert D_or_zero(4, 5, 2).entries == {}
    assert Delta_or_zero(4, 0, 1).entries == {}


def test_negative_entries_rejected():
    cat = get_catalog(4, 3)
    with pytest.raises(OperatorError):
        OperatorMatrix(cat, cat, {(0, 0): -1}, "Delta", 1)
    assert OperatorMatrix(cat, cat, {(0, 0): -1})[0, 0] == -1


def test_arithmetic():
    A, B = build_Delta(4, 3, 1), build_D(4, 3, 1)
    assert (A - B + B) == A
    assert (-A).to_dense() == [[-x for x in row] for row in DELTA1_43]
    assert (2 * A).to_dense() == (A + A).to_dense()
    with pytest.raises(OperatorError):
        build_d(4, 3, 1) + A
    with pytest.raises(OperatorError):
        A @ build_d(4, 3, 1)


def test_composition_matches_dense_product():
    A, B = build_d(5, 6, 2), build_Delta(5, 6, 1)
    a, b = A.to_dense(), B.to_dense()
    dense = [[sum(a[r][k] * b[k][c] for k in range(len(b))) for c in range(len(b[0]))]
             for r in range(len(a))]
    assert (A @ B).to_dense() == dense


def test_json_roundtrip():
    for M in (build_d(5, 4, 2), build_Delta(5, 4, 2), build_D(4, 3, 1)):
        data = json.loads(M.dumps())
        assert OperatorMatrix.from_json(data) == M
        assert data["triplets"] == sorted(data["triplets"], key=lambda t: (t[1], t[0]))
    data = build_d(4, 3, 1).to_json()
    data["rows_hash"] = "0" * 64
    with pytest.raises(OperatorError):
        OperatorMatrix.from_json(data)


def test_decks_of_named_graphs():
    cat3 = get_catalog(4, 3)
    assert deck_of_collection(singleton(cat3, K13), 1) == DeckVector.from_graphs(
        get_catalog(4, 2), [P3K1] * 3)
    deck = deck_of_collection(singleton(cat3, P4), 1)
    assert deck == DeckVector.from_graphs(get_catalog(4, 2), [P3K1, P3K1, TWO_K2])
    assert deck_of_collection(singleton(get_catalog(4, 4), C4), 1) == DeckVector.from_graphs(
        get_catalog(4, 3), [P4] * 4)


def test_edge_deck_collision_pair():
    cat = get_catalog(4, 3)
    a, b = singleton(cat, K3K1), singleton(cat, K13)
    assert deck_of_collection(a, 1) == deck_of_collection(b, 1)
    assert modified_deck(a, 1) == modified_deck(b, 1)
    assert modified_deck(a, 1, disjoint=True) != modified_deck(b, 1, disjoint=True)


def test_deck_of_collection_is_linear_and_rejects_signed():
    cat = get_catalog(5, 5)
    P = DeckVector(cat, [i % 3 for i in range(len(cat))])
    Q = DeckVector(cat, [1] * len(cat))
    assert deck_of_collection(P + Q, 2) == deck_of_collection(P, 2) + deck_of_collection(Q, 2)
    with pytest.raises(ValueError):
        deck_of_collection(P - Q, 1)


def test_apply_checks_catalog():
    with pytest.raises(OperatorError):
        apply(build_d(4, 3, 1), singleton(get_catalog(4, 2), P3K1))
    v = singleton(get_catalog(4, 3), K13)
    assert build_d(4, 3, 1) @ v == apply(build_d(4, 3, 1), v)
