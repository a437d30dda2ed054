import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from affine_fpf.fpf import conj_simple, theta
from affine_fpf.hecke import (
    CanonicalBasisError, LaurentPoly, ModuleElement, act, act_word, bar, bar_basis,
    bar_via_chain, basis, canonical_basis, canonical_basis_json, cells, descent_chains,
    molecules, mu, strongly_connected_components, tau, w_graph,
)
from affine_fpf.order import build_universe

U4 = build_universe(4, 1, 3)
U4M = build_universe(4, -1, 3)
ONE = LaurentPoly.const(1)
V = LaurentPoly.mono(1)
VI = LaurentPoly.mono(-1)

polys = st.dictionaries(st.integers(-3, 3), st.integers(-4, 4), max_size=3).map(LaurentPoly)


@st.composite
def module_elements(draw, variant=None):
    variant = variant or draw(st.sampled_from("MN"))
    zs = draw(st.lists(st.sampled_from(U4.elements), min_size=1, max_size=4))
    return ModuleElement(variant, {z: draw(polys) for z in zs})


def test_laurent_poly_basics():
    p = LaurentPoly({1: 2, -1: -3})
    assert p.bar() == LaurentPoly({-1: 2, 1: -3})
    assert p.bar().bar() == p
    assert (p * V).coeff(2) == 2
    assert p.negative_part() == LaurentPoly({-1: -3})
    assert LaurentPoly.from_json(p.to_json()) == p
    assert (V - VI) * (V + VI) == LaurentPoly({2: 1, -2: -1})


def test_theta_action():
    th = theta(4, 1)
    assert act(1, basis("M", th)) == basis("M", th).scale(V)
    assert act(1, basis("N", th)) == basis("N", th).scale(-VI)
    assert act(2, basis("M", th)) == basis("M", conj_simple(th, 2))


@given(module_elements(), st.integers(1, 4))
def test_quadratic_relation(e, s):
    # (H_s - v)(H_s + v^{-1}) = 0
    lhs = act(s, act(s, e))
    rhs = act(s, e).scale(V - VI) + e
    assert lhs == rhs


@given(module_elements(), st.integers(1, 4))
def test_braid_relations(e, i):
    j = i % 4 + 1
    assert act_word([i, j, i], e) == act_word([j, i, j], e)
    k = (i + 1) % 4 + 1
    assert act_word([i, k], e) == act_word([k, i], e)


@given(module_elements(), st.integers(1, 4))
def test_bar_is_antilinear_involution_compatible_with_action(e, s):
    assert bar(bar(e)) == e
    # bar(H_s e) = H_s^{-1} bar(e) = (H_s - (v - v^{-1})) bar(e)
    be = bar(e)
    assert bar(act(s, e)) == act(s, be) - be.scale(V - VI)


def test_bar_chain_independence():
    for variant in "MN":
        for U in (U4, U4M):
            for z in U.elements:
                chains = descent_chains(z)
                assert chains
                vals = {bar_via_chain(variant, z, c) for c in chains}
                assert vals == {bar_basis(variant, z)}
    with pytest.raises(ValueError):
        bar_via_chain("M", U4.elements[-1], ())


def test_height_one_canonical_element():
    th = theta(4, 1)
    z = conj_simple(th, 2)
    cb = canonical_basis(U4, "M")
    assert cb[z] == basis("M", z) + basis("M", th).scale(VI)
    assert mu(cb, th, z) == 1


@pytest.mark.parametrize("variant", "MN")
def test_canonical_basis_bar_fixed_unitriangular(variant):
    cb = canonical_basis(U4, variant)
    for x, c in cb.items():
        assert bar(c) == c
        assert c.coeff(x) == ONE
        for w in c.support():
            if w != x:
                assert w.height < x.height
                p = c.coeff(w)
                assert all(e < 0 for e in p.c)
    assert len(canonical_basis_json(cb)) == len(U4)


def test_canonical_basis_error_type():
    assert issubclass(CanonicalBasisError, AssertionError)


def test_tau_is_non_strict():
    th = theta(4, 1)
    assert tau("M", th) == {1, 3}
    assert tau("N", th) == {1, 2, 3, 4}


def reach(vertices, succ):
    R = {}
    for v in vertices:
        seen, todo = {v}, [v]
        while todo:
            x = todo.pop()
            for y in succ.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        R[v] = seen
    return R


@given(st.integers(1, 12).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))))
def test_tarjan_matches_reachability(data):
    n, edges = data
    vs = list(range(n))
    succ = {v: [b for a, b in edges if a == v] for v in vs}
    R = reach(vs, succ)
    expect = {frozenset(w for w in vs if w in R[v] and v in R[w]) for v in vs}
    comps = strongly_connected_components(vs, succ)
    assert {frozenset(c) for c in comps} == expect
    assert sorted(v for c in comps for v in c) == vs


def test_tarjan_deep_path_is_iterative():
    n = 5000
    succ = {k: [k + 1] for k in range(n - 1)}
    succ[n - 1] = [0]
    assert len(strongly_connected_components(list(range(n)), succ)) == 1


def test_n2_cells():
    Us = [build_universe(2, s, 5) for s in (1, -1)]
    gM = w_graph(Us, "M")
    assert len(cells(gM)) == 2
    assert {frozenset(c) for c in cells(gM)} == {frozenset(U.elements) for U in Us}
    gN = w_graph(Us, "N")
    # the minimal elements have tau = all generators, so no edge enters them
    assert len(cells(gN)) == 4
    assert sorted(len(c) for c in cells(gN)) == [1, 1, 5, 5]
    assert len(molecules(gM)) == 2
    assert gM.to_json()["truncated"] is True
