import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from affine_fpf.zlattice import (
    EVIDENCE_LABEL, conjecture_reports, coordinates, degree_partitions, fpf_span, hnf,
    positive_basis_search, span_contains, span_equal,
)

matrices = st.integers(1, 4).flatmap(lambda d: st.lists(
    st.lists(st.integers(-6, 6), min_size=d, max_size=d), min_size=1, max_size=5))


def is_hnf(L):
    piv = L.pivots()
    if piv != sorted(set(piv)):
        return False
    for k, (row, c) in enumerate(zip(L.basis, piv)):
        if row[c] <= 0 or any(row[:c]):
            return False
        if any(not 0 <= L.basis[m][c] < row[c] for m in range(k)):
            return False
    return True


@given(matrices)
def test_hnf_shape_and_idempotence(M):
    L = hnf(M, dim=len(M[0]))
    assert is_hnf(L)
    assert hnf(L.basis, dim=L.dim) == L
    assert all(span_contains(L, r) for r in M)


@given(matrices, st.data())
def test_unimodular_invariance(M, data):
    # row operations: swap, negate, add an integer multiple of another row
    R = [list(r) for r in M]
    for _ in range(data.draw(st.integers(0, 6))):
        a = data.draw(st.integers(0, len(R) - 1))
        b = data.draw(st.integers(0, len(R) - 1))
        op = data.draw(st.sampled_from(["swap", "neg", "add"]))
        if op == "swap":
            R[a], R[b] = R[b], R[a]
        elif op == "neg":
            R[a] = [-x for x in R[a]]
        elif a != b:
            k = data.draw(st.integers(-3, 3))
            R[a] = [x + k * y for x, y in zip(R[a], R[b])]
    d = len(M[0])
    assert span_equal(hnf(M, dim=d), hnf(R, dim=d))


def test_saturation_and_membership():
    L = hnf([[2, 0], [0, 2]])
    assert span_contains(L, [4, 2]) and not span_contains(L, [1, 0])
    assert not span_equal(L, hnf([[1, 0], [0, 1]]))
    assert hnf([[4, 6], [6, 9]]).basis == ((2, 3),)
    assert hnf([], dim=3).rank == 0
    with pytest.raises(ValueError):
        hnf([])


def test_coordinates():
    assert coordinates([[1, 1], [0, 2]], [3, 5]) == [Fraction(3), Fraction(1)]
    assert coordinates([[1, 0]], [0, 1]) is None


def test_positive_basis_search():
    res = positive_basis_search([[2, 1], [1, 2], [1, 1]])
    assert res["status"] == "not-found" and res["subsets_tried"] == 3
    res = positive_basis_search([[1, 0], [1, 1], [2, 1]])
    assert res["status"] == "found" and res["basis"] == [[1, 1], [1, 0]]
    assert positive_basis_search([[2, 1], [1, 2], [1, 1]], max_subsets=1)["status"] == "search-bound-exhausted"


def test_n2_spans_have_rank_one():
    for d in range(4):
        assert degree_partitions(2, d) == [(1,) * d]
        assert fpf_span(2, d, d).rank == 1
    with pytest.raises(ValueError):
        fpf_span(3, 1, 1)


def test_reports_small():
    rep = conjecture_reports(4, 2)
    assert rep["label"] == EVIDENCE_LABEL
    assert [d["rank"] for d in rep["degrees"]] == [1, 1, 1]
    assert rep["omega_plus_invariance"]["verdict"] == "consistent"
    assert rep["all_involutions_equal_fpf"]["verdict"] == "out-of-scope"
    assert json.dumps(rep, sort_keys=True) == json.dumps(conjecture_reports(4, 2), sort_keys=True)
    nest = conjecture_reports(2, 2, nesting=True)["fpf_nesting"]
    assert nest["verdict"] in {"consistent", "no-witness-within-bound"}
