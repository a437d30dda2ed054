"""
The ten acceptance criteria.  Each test enforces its own time limit and the
terminal summary prints one PASS/FAIL line per criterion.
"""

import json
import random
import time

import pytest

from affine_fpf.affine_group import (
    code, elements_by_length, from_window, inverse, length, shape,
)
from affine_fpf.fpf import (
    alpha_max, alpha_min, atom_poset, atoms, atoms_brute_force, atoms_by_closure, beta,
    fpf_code, fpf_from_window, fpf_stanley, lattice_check, nu,
)
from affine_fpf.hecke import (
    LaurentPoly, ModuleElement, act, act_word, bar, bar_basis, bar_via_chain, canonical_basis,
    cells, descent_chains, w_graph,
)
from affine_fpf.order import build_universe, scan_completeness_check, verify_qp1, verify_qp2
from affine_fpf.symfunc import MonomialExpansion, dominance_leq, omega_plus, stanley_expand
from affine_fpf.transition import check_transition_affine, check_transition_fpf
from affine_fpf.zlattice import conjecture_reports


def criterion(number, title, limit):
    return pytest.mark.criterion(number, title, limit)


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"


def M(n, d, coeffs):
    return MonomialExpansion(n, d, coeffs)


EX23 = M(4, 4, {(1, 1, 1, 1): 4, (2, 1, 1): 2, (2, 2): 1})


@criterion(1, "expansion of [3,0,5,2]", 1)
def test_criterion_1():
    with Timer(1):
        assert stanley_expand(from_window(4, [3, 0, 5, 2])) == EX23


@criterion(2, "codes, shapes and expansions of [-3,3,4,6] and its inverse", 1)
def test_criterion_2():
    with Timer(1):
        pi = from_window(4, [-3, 3, 4, 6])
        assert code(pi) == (0, 1, 1, 2) and code(inverse(pi)) == (4, 0, 0, 0)
        assert shape(pi) == (1, 1, 1, 1) and shape(inverse(pi)) == (3, 1)
        assert stanley_expand(pi) == M(4, 4, {(1, 1, 1, 1): 1})
        assert stanley_expand(inverse(pi)) == M(4, 4, {(3, 1): 1, (2, 2): 1, (2, 1, 1): 1, (1, 1, 1, 1): 1})


@criterion(3, "beta, atoms, FPF code, nu and FPF expansion of [6,-3,8,-1]", 1)
def test_criterion_3():
    with Timer(1):
        z = fpf_from_window(4, [6, -3, 8, -1])
        assert beta(z) == 2
        assert alpha_min(z) == alpha_max(z) == from_window(4, [3, 0, 5, 2])
        assert fpf_code(z) == (2, 0, 2, 0) and nu(z) == (2, 2)
        assert fpf_stanley(z) == EX23


@criterion(4, "FPF transition example at y=[6,-3,8,-1], p=1", 10)
def test_criterion_4():
    with Timer(10):
        y = fpf_from_window(4, [6, -3, 8, -1])
        rep = check_transition_fpf(y, 1)
        W = lambda *ws: {fpf_from_window(4, w) for w in ws}
        assert rep.left == W([-5, -4, 9, 10], [4, -5, 10, 1])
        assert rep.right == W([7, 8, -3, -2], [8, -1, 6, -3])
        target = M(4, 5, {(1,) * 5: 12, (2, 1, 1, 1): 6, (2, 2, 1): 3, (3, 1, 1): 2, (3, 2): 1})
        assert rep.left_sum == rep.right_sum == target
        assert rep.rescan_agrees


@criterion(5, "QP1/QP2 on U(4,±,3) and U(2,±,5) with scan completeness", 300)
def test_criterion_5():
    with Timer(300):
        for n, L in ((4, 3), (2, 5)):
            for s in (1, -1):
                U = build_universe(n, s, L)
                for rep in (verify_qp1(U), verify_qp2(U), scan_completeness_check(U)):
                    assert rep.ok and rep.checked > 0, rep.to_json()


@criterion(6, "atoms by recursion, closure and brute force on U(4,±,3), U(6,±,2)", 600)
def test_criterion_6():
    with Timer(600):
        count = 0
        for n, L in ((4, 3), (6, 2)):
            for s in (1, -1):
                for z in build_universe(n, s, L).elements:
                    A = atoms(z)
                    assert atoms_by_closure(z)[0] == A == atoms_brute_force(z), z
                    p = atom_poset(z)
                    assert p.minimum == alpha_min(z) and p.maximum == alpha_max(z)
                    assert lattice_check(p)[0]
                    count += 1
        assert count > 0


@criterion(7, "transition sweeps: affine with len <= 4 at n=4, FPF on U(4,±,3)", 900)
def test_criterion_7():
    with Timer(900):
        cases = 0
        for layer in elements_by_length(4, 4):
            for a in layer:
                for r in range(1, 5):
                    rep = check_transition_affine(a, r)
                    assert rep.equal and rep.rescan_agrees, (a, r)
                    cases += 1
        assert cases == 4 * sum(len(l) for l in elements_by_length(4, 4))
        fcases = 0
        for s in (1, -1):
            for y in build_universe(4, s, 3).elements:
                for p in range(1, 5):
                    if p < y(p):
                        rep = check_transition_fpf(y, p)
                        assert rep.equal and rep.rescan_agrees, (y, p)
                        fcases += 1
        assert fcases > 0


@criterion(8, "Hecke relations, bar involution, canonical basis, n=2 cells", 300)
def test_criterion_8():
    with Timer(300):
        rng = random.Random(20261019)
        U = build_universe(4, 1, 3)
        V = LaurentPoly.mono(1)
        VI = LaurentPoly.mono(-1)
        for variant in "MN":
            for _ in range(40):
                zs = rng.sample(U.elements, 3)
                e = ModuleElement(variant, {z: LaurentPoly({rng.randint(-2, 2): rng.randint(-3, 3)}) for z in zs})
                s = rng.randint(1, 4)
                t = s % 4 + 1
                u = (s + 1) % 4 + 1
                assert act(s, act(s, e)) == act(s, e).scale(V - VI) + e
                assert act_word([s, t, s], e) == act_word([t, s, t], e)
                assert act_word([s, u], e) == act_word([u, s], e)
                assert bar(bar(e)) == e
            for z in U.elements:
                assert {bar_via_chain(variant, z, c) for c in descent_chains(z)} == {bar_basis(variant, z)}
        cb = canonical_basis(U, "M")
        for x, c in cb.items():
            assert bar(c) == c and c.coeff(x) == LaurentPoly.const(1)
            for w in c.support():
                if w != x:
                    assert w.height < x.height and all(k < 0 for k in c.coeff(w).c)
        g = w_graph([build_universe(2, s, 5) for s in (1, -1)], "M")
        assert len(cells(g)) == 2


@criterion(9, "omega+(F_a) = F_(a^-1) for len <= 5; leading term at nu on U(4,±,4)", 600)
def test_criterion_9():
    with Timer(600):
        for layer in elements_by_length(4, 5):
            for a in layer:
                assert omega_plus(stanley_expand(a)) == stanley_expand(inverse(a)), a
        for s in (1, -1):
            for z in build_universe(4, s, 4).elements:
                f = fpf_stanley(z)
                lam = nu(z)
                assert f[lam] == 1
                assert all(dominance_leq(mu, lam) for mu in f.coeffs)


@criterion(10, "conjecture_reports(4,4) deterministic, omega+ status reported", 600)
def test_criterion_10():
    with Timer(600):
        first = json.dumps(conjecture_reports(4, 4), sort_keys=True, separators=(",", ":"))
        second = json.dumps(conjecture_reports(4, 4), sort_keys=True, separators=(",", ":"))
        assert first == second
        rep = json.loads(first)
        status = rep["omega_plus_invariance"]
        assert status["verdict"] in {"consistent", "falsified"}
        if status["verdict"] == "falsified":
            assert status["witness"] is not None
        print(f"omega+ invariance: {status['verdict']} on {status['checked']} elements")
