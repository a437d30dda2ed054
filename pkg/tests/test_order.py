import itertools

import pytest

from affine_fpf.affine_group import bruhat_leq, compose, length, simple, transposition
from affine_fpf.fpf import FpfInvolution, conj_simple, fpf_from_window, height, theta
from affine_fpf.order import (
    ResourceLimitError, atom_cover_check, bruhat_leq_F, build_universe, covers_down,
    covers_up_bound, refinement_check, scan_completeness_check, verify_qp1, verify_qp2,
)

Y = fpf_from_window(4, [6, -3, 8, -1])
Z = fpf_from_window(4, [4, -5, 10, 1])


@pytest.fixture(scope="module")
def U():
    return build_universe(4, 1, 3)


def test_small_universes():
    assert build_universe(4, 1, 0).elements == (theta(4, 1),)
    th = theta(4, 1)
    U1 = build_universe(4, 1, 1)
    expect = {th} | {conj_simple(th, i) for i in range(1, 5)}
    assert set(U1.elements) == expect
    for s in (1, -1):
        U2 = build_universe(2, s, 5)
        assert [height(z) for z in U2.elements] == list(range(6))


def test_universe_counts():
    for s in (1, -1):
        assert [sum(1 for z in build_universe(4, s, 3).elements if z.height == h)
                for h in range(4)] == [1, 2, 3, 4]


def test_resource_limit():
    with pytest.raises(ResourceLimitError):
        build_universe(6, 1, 6, max_elements=50)


def test_universe_invariants(U):
    for z in U.elements:
        for i in range(1, 5):
            y = conj_simple(z, i)
            if y.height <= z.height:
                assert y in U
        cov = U.covers_down(z)
        assert bool(cov) == (z.height > 0)
        for (i, j), y in cov:
            assert 1 <= i <= 4 and i < j
            assert y.height == z.height - 1
            assert length(z.perm) - length(y.perm) == 2


def test_cover_example():
    cov = covers_down(Z)
    assert Y in {y for _, y in cov}
    # t_{1,4} fixes z because z(1) = 4; the covering reflections are (3,5) and (4,6)
    assert {t for t, y in cov if y == Y} == {(3, 5), (4, 6)}
    t = transposition(4, 1, 4)
    assert FpfInvolution(compose(t, compose(Z.perm, t))) == Z
    assert covers_down(theta(4, 1)) == frozenset()
    assert covers_down(Y) and all(y.height == Y.height - 1 for _, y in covers_down(Y))


def test_up_bound_covers_all_upward_covers():
    U = build_universe(4, 1, 4)
    for y in U.elements:
        if y.height == 4:
            continue
        B = covers_up_bound(y)
        for t, z in U.covers_up(y):
            # normalize the cover reflection so it starts at a position of y
            i, j = t
            assert j - i <= B


def test_qp_axioms():
    for s in (1, -1):
        for n, L in ((4, 3), (2, 5)):
            V = build_universe(n, s, L)
            assert verify_qp1(V).ok and verify_qp2(V).ok
            assert scan_completeness_check(V).ok


def test_qp1_negative_control(U):
    rep = verify_qp1(U, height_fn=lambda z: 0)
    assert not rep.ok and rep.witness is not None


def test_bruhat_F(U):
    th = theta(4, 1)
    assert all(bruhat_leq_F(U, th, z) for z in U.elements)
    V = build_universe(4, 1, 5)
    assert bruhat_leq_F(V, Y, Z)
    assert not bruhat_leq_F(V, Z, Y)
    h1 = [z for z in U.elements if z.height == 1]
    assert len(h1) == 2
    assert not bruhat_leq_F(U, h1[0], h1[1]) and not bruhat_leq_F(U, h1[1], h1[0])
    with pytest.raises(KeyError):
        bruhat_leq_F(U, Z, th)


def test_order_is_graded_antisymmetric_and_refines_bruhat(U):
    for a, b in itertools.product(U.elements, repeat=2):
        if a != b and bruhat_leq_F(U, a, b):
            assert not bruhat_leq_F(U, b, a) and a.height < b.height
    for s in (1, -1):
        assert refinement_check(build_universe(4, s, 3)).ok
    assert refinement_check(build_universe(2, 1, 4)).ok


def test_atom_cover_correspondence():
    for s in (1, -1):
        assert atom_cover_check(build_universe(4, s, 3)).ok
    assert atom_cover_check(build_universe(2, 1, 4)).ok
    assert atom_cover_check(build_universe(4, 1, 0)).ok


def test_to_json(U):
    d = U.to_json()
    assert d["sign"] == "+" and len(d["elements"]) == len(U)
    assert all(U.elements[c[2]].height == U.elements[c[0]].height - 1 for c in d["covers"])
