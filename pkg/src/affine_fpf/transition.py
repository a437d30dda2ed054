"""
Transition identities for affine Stanley functions and their FPF analogue.

`phi_sets(a, r)` collects the Bruhat covers `a t_{ir}` (i < r) and `a t_{rj}`
(j > r); `pi_sets(y, p)` collects the FPF covers `t y t` with `t` moving `p`
to the left or right.  The check functions compare both sides exactly.

>>> from affine_fpf.fpf import parse_fpf
>>> rep = check_transition_fpf(parse_fpf("[6,-3,8,-1]"), 1)
>>> rep.equal, sorted(str(z) for z in rep.left)
(True, ['[-5,-4,9,10]', '[4,-5,10,1]'])
>>> print(rep.left_sum)
m[3,2] + 2*m[3,1,1] + 3*m[2,2,1] + 6*m[2,1,1,1] + 12*m[1,1,1,1,1]
"""

from __future__ import annotations

__all__ = [
    "TransitionReport", "phi_sets", "pi_sets", "check_transition_affine", "check_transition_fpf",
    "atom_bijection_check", "phi_subset_check", "theta_involution_check", "reflection_pairs_check",
    "normalize_reflection",
]

from dataclasses import dataclass, field

from .affine_group import AffinePerm, compose, inversion_span, length, transposition
from .fpf import FpfInvolution, atoms, fpf_stanley
from .order import CheckReport, covers_up_bound
from .symfunc import MonomialExpansion, stanley_expand


def normalize_reflection(n: int, i: int, j: int) -> tuple[int, int]:
    """The representative `(i', j')` of `t_{ij}` with `i' < j'` and `i'` in `[n]`."""
    i, j = min(i, j), max(i, j)
    k = (i - 1) // n
    return i - k * n, j - k * n


def _conj(y: FpfInvolution, t: AffinePerm) -> FpfInvolution:
    return FpfInvolution(compose(t, compose(y.perm, t)))


def _bruhat_up_gap(a: AffinePerm) -> int:
    # a < a t with gap d needs len(t) <= 2 len(a) + 1, and len(t) >= (d - 1) / 2
    return 4 * length(a) + 3


@dataclass
class TransitionReport:
    kind: str
    left: frozenset
    right: frozenset
    left_sum: MonomialExpansion
    right_sum: MonomialExpansion
    witnesses: list = field(default_factory=list)
    scan_bound: int = 0
    rescan_agrees: bool = True

    @property
    def equal(self) -> bool:
        return self.left_sum == self.right_sum

    def to_json(self) -> dict:
        key = lambda x: (x.height, x.window) if isinstance(x, FpfInvolution) else (length(x), x.window)
        return {
            "kind": self.kind,
            "equal": self.equal,
            "left": [list(x.window) for x in sorted(self.left, key=key)],
            "right": [list(x.window) for x in sorted(self.right, key=key)],
            "left_sum": self.left_sum.to_json(),
            "right_sum": self.right_sum.to_json(),
            "witnesses": sorted(self.witnesses),
            "scan_bound": self.scan_bound,
            "rescan_agrees": self.rescan_agrees,
        }


def _phi_scan(a: AffinePerm, r: int, B: int):
    n = a.n
    ell = length(a)
    minus, plus, wit = set(), set(), []
    for d in range(1, B + 1):
        if d % n == 0:
            continue
        for side, (i, j) in (("-", (r - d, r)), ("+", (r, r + d))):
            s = compose(a, transposition(n, i, j))
            if length(s) == ell + 1:
                (minus if side == "-" else plus).add(s)
                wit.append([side, [i, j], list(s.window)])
    return frozenset(minus), frozenset(plus), wit


def phi_sets(a: AffinePerm, r: int, bound: int | None = None) -> tuple[frozenset, frozenset]:
    """`(Phi^-_r(a), Phi^+_r(a))`: covers `a t_{ir}` with `i < r` and `a t_{rj}` with `j > r`."""
    B = bound if bound is not None else max(a.n * (2 + inversion_span(a)), _bruhat_up_gap(a))
    minus, plus, _ = _phi_scan(a, r, B)
    return minus, plus


def check_transition_affine(a: AffinePerm, r: int) -> TransitionReport:
    """Sum of `F` over `Phi^-_r(a)` against the sum over `Phi^+_r(a)`."""
    B = max(a.n * (2 + inversion_span(a)), _bruhat_up_gap(a))
    minus, plus, wit = _phi_scan(a, r, B)
    wide = _phi_scan(a, r, 2 * B)
    deg = length(a) + 1
    lhs = MonomialExpansion.zero(a.n, deg)
    for s in sorted(minus, key=lambda w: w.window):
        lhs = lhs + stanley_expand(s)
    rhs = MonomialExpansion.zero(a.n, deg)
    for s in sorted(plus, key=lambda w: w.window):
        rhs = rhs + stanley_expand(s)
    return TransitionReport("affine", minus, plus, lhs, rhs, wit, B,
                            wide[0] == minus and wide[1] == plus)


def _pi_scan(y: FpfInvolution, r: int, B: int):
    n = y.n
    excluded = {r % n, y(r) % n}
    minus, plus, wit = set(), set(), []
    for d in range(1, B + 1):
        for side, (i, j) in (("-", (r - d, r)), ("+", (r, r + d))):
            other = i if side == "-" else j
            if other % n in excluded:
                continue
            z = _conj(y, transposition(n, i, j))
            if z.height == y.height + 1:
                (minus if side == "-" else plus).add(z)
                wit.append([side, [i, j], list(z.window)])
    return frozenset(minus), frozenset(plus), wit


def _pi_bound(y: FpfInvolution) -> int:
    return max(y.n * (2 + inversion_span(y.perm)), covers_up_bound(y))


def pi_sets(y: FpfInvolution, p: int, bound: int | None = None) -> tuple[frozenset, frozenset]:
    """`(Pi^-(y, p), Pi^+(y, p))`."""
    minus, plus, _ = _pi_scan(y, p, bound if bound is not None else _pi_bound(y))
    return minus, plus


def check_transition_fpf(y: FpfInvolution, p: int) -> TransitionReport:
    """Sum over `Pi^-(y, p)` against the sum over `Pi^+(y, q)` with `q = y(p) > p`."""
    q = y(p)
    if not p < q:
        raise ValueError(f"need p < y(p), got p = {p}, y(p) = {q}")
    B = _pi_bound(y)
    left, _, wl = _pi_scan(y, p, B)
    _, right, wr = _pi_scan(y, q, B)
    wide_left = _pi_scan(y, p, 2 * B)[0]
    wide_right = _pi_scan(y, q, 2 * B)[1]
    wit = [w for w in wl if w[0] == "-"] + [w for w in wr if w[0] == "+"]
    deg = y.height + 1
    lhs = MonomialExpansion.zero(y.n, deg)
    for z in sorted(left, key=FpfInvolution.sort_key):
        lhs = lhs + fpf_stanley(z)
    rhs = MonomialExpansion.zero(y.n, deg)
    for z in sorted(right, key=FpfInvolution.sort_key):
        rhs = rhs + fpf_stanley(z)
    return TransitionReport("fpf", left, right, lhs, rhs, wit, B,
                            wide_left == left and wide_right == right)


def _up_covers(pi: AffinePerm):
    """All `(i, j, pi t_{ij})` with `i` in `[n]` and length one more."""
    n = pi.n
    ell = length(pi)
    for i in range(1, n + 1):
        for j in range(i + 1, i + _bruhat_up_gap(pi) + 1):
            if (j - i) % n == 0:
                continue
            s = compose(pi, transposition(n, i, j))
            if length(s) == ell + 1:
                yield i, j, s


def atom_bijection_check(y: FpfInvolution, z: FpfInvolution) -> CheckReport:
    """`(pi, t) -> pi t` maps pairs with `pi < pi t`, `z = t y t` bijectively onto atoms of `z`."""
    if z.height != y.height + 1 or z.sign != y.sign:
        raise ValueError(f"{z} does not cover {y}")
    rep = CheckReport("atom-bijection")
    images = []
    for pi in sorted(atoms(y), key=lambda w: w.window):
        for i, j, s in _up_covers(pi):
            if _conj(y, transposition(y.n, i, j)) == z:
                images.append(s)
    if not images:
        raise ValueError(f"{z} does not cover {y}")
    rep.checked = len(images)
    if len(set(images)) != len(images):
        return rep.fail(y=y, z=z, reason="not injective")
    if set(images) != set(atoms(z)):
        return rep.fail(y=y, z=z, reason="image differs from the atoms of z",
                        image=sorted(str(w) for w in images), atoms=sorted(str(w) for w in atoms(z)))
    return rep


def phi_subset_check(y: FpfInvolution, p: int) -> CheckReport:
    """`Pi^+(y, p) <= Pi^+(y, q)` and `Pi^-(y, q) <= Pi^-(y, p)` for `q = y(p) > p`."""
    q = y(p)
    if not p < q:
        raise ValueError(f"need p < y(p), got p = {p}, y(p) = {q}")
    rep = CheckReport("pi-subset")
    mp, pp = pi_sets(y, p)
    mq, pq = pi_sets(y, q)
    rep.checked = len(pp) + len(mq)
    if not pp <= pq:
        return rep.fail(y=y, p=p, extra=sorted(str(z) for z in pp - pq), side="+")
    if not mq <= mp:
        return rep.fail(y=y, p=p, extra=sorted(str(z) for z in mq - mp), side="-")
    return rep


def _n_sets(y: FpfInvolution, p: int):
    q = y(p)
    n = y.n
    pq = {p % n, q % n}
    neg, pos = set(), set()
    for pi in atoms(y):
        B = _bruhat_up_gap(pi)
        for j in (p, q):
            for i in range(j - B, j):
                if i % n in pq:
                    continue
                t = transposition(n, i, j)
                if length(compose(pi, t)) == length(pi) + 1 and _conj(y, t).height != y.height + 1:
                    neg.add((pi, i, j))
        for i in (p, q):
            for j in range(i + 1, i + B + 1):
                if j % n in pq:
                    continue
                t = transposition(n, i, j)
                if length(compose(pi, t)) == length(pi) + 1 and _conj(y, t).height != y.height + 1:
                    pos.add((pi, i, j))
    return neg, pos


def _theta_map(y: FpfInvolution, triple):
    pi, i, j = triple
    k, l = sorted((y(i), y(j)))
    return compose(pi, compose(transposition(y.n, i, j), transposition(y.n, k, l))), k, l


def theta_involution_check(y: FpfInvolution, p: int) -> CheckReport:
    """
    `(pi, i, j) -> (pi t_{ij} t_{kl}, k, l)` with `{k, l} = {y(i), y(j)}` is an
    involution carrying the left exceptional triples onto the right ones, with
    `pi t_{ij}` preserved.
    """
    if not p < y(p):
        raise ValueError(f"need p < y(p), got p = {p}, y(p) = {y(p)}")
    rep = CheckReport("theta-involution")
    neg, pos = _n_sets(y, p)
    image = set()
    A = atoms(y)
    for tr in neg:
        rep.checked += 1
        im = _theta_map(y, tr)
        pi, i, j = tr
        pi2, k, l = im
        if pi2 not in A or pi2 == pi:
            return rep.fail(y=y, p=p, triple=[str(pi), i, j], reason="image is not another atom")
        if _theta_map(y, im) != tr:
            return rep.fail(y=y, p=p, triple=[str(pi), i, j], reason="not an involution")
        if compose(pi, transposition(y.n, i, j)) != compose(pi2, transposition(y.n, k, l)):
            return rep.fail(y=y, p=p, triple=[str(pi), i, j], reason="product changed")
        image.add(im)
    if len(image) != len(neg) or image != pos:
        return rep.fail(y=y, p=p, reason="not a bijection onto the right triples",
                        left=len(neg), right=len(pos), image=len(image))
    return rep


def reflection_pairs_check(y: FpfInvolution, i: int, j: int) -> CheckReport:
    """
    For `t = t_{ij}` with `t y t != y`: the reflections `r` with `r y r = t y t`
    are `{t}` when `y(i) = j mod n`, and `{t, y t y}` otherwise.
    """
    n = y.n
    t = transposition(n, i, j)
    target = _conj(y, t)
    if target == y:
        raise ValueError(f"t({i},{j}) commutes with {y}")
    rep = CheckReport("reflection-pairs")
    expected = {normalize_reflection(n, i, j)}
    if (y(i) - j) % n:
        expected.add(normalize_reflection(n, y(i), y(j)))
    gap = max(abs(b - a) for a, b in expected) + n
    found = set()
    for a in range(1, n + 1):
        for b in range(a + 1, a + gap + 1):
            if (b - a) % n == 0:
                continue
            rep.checked += 1
            if _conj(y, transposition(n, a, b)) == target:
                found.add((a, b))
    if found != expected:
        return rep.fail(y=y, t=[i, j], found=sorted(found), expected=sorted(expected))
    return rep
