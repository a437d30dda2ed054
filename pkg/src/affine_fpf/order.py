"""
Bounded universes of FPF involutions and the Bruhat order on them.

A `Universe` holds every FPF involution of one sign class up to a height
bound, together with its downward covers `y = t z t` (height drops by one).
The quasiparabolic axioms and the atom/cover correspondence are checked
exhaustively on it.

>>> U = build_universe(4, 1, 1)
>>> [str(z) for z in U.elements]
['[2,1,4,3]', '[-1,0,5,6]', '[3,4,1,2]']
>>> verify_qp1(U).ok and verify_qp2(U).ok
True
"""

from __future__ import annotations

__all__ = [
    "Universe", "ResourceLimitError", "CheckReport",
    "build_universe", "covers_down", "covers_up_bound", "bruhat_lower_covers",
    "verify_qp1", "verify_qp2", "bruhat_leq_F", "atom_cover_check",
    "scan_completeness_check", "refinement_check",
]

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .affine_group import (
    AffinePerm, bruhat_leq, compose, inversion_span, length, simple, transposition,
)
from .fpf import FpfInvolution, atoms, conj_by_reflection, conjugate, theta

DEFAULT_MAX_ELEMENTS = 200_000


class ResourceLimitError(RuntimeError):
    """Raised when a computation would exceed a configured size cap."""


@dataclass
class CheckReport:
    name: str
    ok: bool = True
    checked: int = 0
    witness: dict | None = None

    def fail(self, **witness) -> CheckReport:
        self.ok = False
        self.witness = {k: str(v) if not isinstance(v, (int, list, tuple)) else v
                        for k, v in witness.items()}
        return self

    def to_json(self) -> dict:
        return {"check": self.name, "ok": self.ok, "checked": self.checked, "witness": self.witness}


def covers_down(z: FpfInvolution, bound: int | None = None) -> frozenset:
    """
    Pairs `((i, j), t z t)` with `i` in `[n]`, `i < j`, and height one less.
    A height drop forces `z(i) > z(j)`, so `j - i` is below the inversion span
    of `z`; `bound` overrides that for self-checks.
    """
    n = z.n
    B = inversion_span(z.perm) if bound is None else bound
    out = set()
    for i in range(1, n + 1):
        for j in range(i + 1, i + B + 1):
            if (j - i) % n == 0:
                continue
            y, d = conj_by_reflection(z, i, j)
            if d == -1:
                out.add(((i, j), y))
    return frozenset(out)


def covers_up_bound(y: FpfInvolution) -> int:
    """
    A gap `j - i` large enough to contain every upward cover `t_{ij} y t_{ij}`.

    Some atom `w` of `y` has `w < w t'` with `t' in {t, y t y}`, so
    `len(t') <= 2 len(w) + 1`.  A reflection with gap `d` has length at least
    `(d - 1) / 2`, and passing from `t` to `y t y` moves the gap by at most the
    inversion span of `y`.
    """
    return 4 * y.height + 3 + inversion_span(y.perm)


@dataclass
class Universe:
    n: int
    sign: int
    Lmax: int
    elements: tuple
    covers: dict = field(repr=False)

    def __post_init__(self):
        self.index = {z: k for k, z in enumerate(self.elements)}
        self._below: dict = {}

    def __contains__(self, z) -> bool:
        return z in self.index

    def __len__(self):
        return len(self.elements)

    def covers_down(self, z: FpfInvolution) -> frozenset:
        return self.covers[z]

    def covers_up(self, y: FpfInvolution) -> list:
        return [(t, z) for z in self.elements for t, w in self.covers[z] if w == y]

    def spread(self) -> int:
        return max(inversion_span(z.perm) for z in self.elements)

    def below(self, z: FpfInvolution) -> frozenset:
        """All `y` with `y <=_F z`, by reachability through downward covers."""
        if z not in self._below:
            seen = {z}
            todo = [z]
            while todo:
                x = todo.pop()
                for _, y in self.covers[x]:
                    if y not in seen:
                        seen.add(y)
                        todo.append(y)
            self._below[z] = frozenset(seen)
        return self._below[z]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "sign": "+" if self.sign > 0 else "-",
            "Lmax": self.Lmax,
            "elements": [list(z.window) for z in self.elements],
            "covers": sorted([self.index[z], list(t), self.index[y]]
                             for z in self.elements for t, y in self.covers[z]),
        }


def build_universe(n: int, sign: int, Lmax: int, max_elements: int = DEFAULT_MAX_ELEMENTS) -> Universe:
    """All FPF involutions of the given sign with height at most `Lmax`."""
    if Lmax < 0:
        raise ValueError(f"Lmax must be nonnegative, got {Lmax}")
    start = theta(n, sign)
    seen = {start}
    queue = deque([start])
    while queue:
        z = queue.popleft()
        if z.height == Lmax:
            continue
        for i in range(1, n + 1):
            s = simple(n, i)
            y = FpfInvolution(compose(s, compose(z.perm, s)))
            if y.height <= Lmax and y not in seen:
                seen.add(y)
                if len(seen) > max_elements:
                    raise ResourceLimitError(
                        f"universe ({n}, {sign:+d}, {Lmax}) exceeds {max_elements} elements")
                queue.append(y)
    elements = tuple(sorted(seen, key=FpfInvolution.sort_key))
    covers = {z: covers_down(z) for z in elements}
    for z in elements:
        for _, y in covers[z]:
            if y not in seen:
                raise AssertionError(f"cover {y} of {z} missing from the universe")
    return Universe(n, sign, Lmax, elements, covers)


def _reflections(n: int, gap: int) -> list[tuple[int, int, AffinePerm]]:
    return [(i, j, transposition(n, i, j))
            for i in range(1, n + 1) for j in range(i + 1, i + gap + 1) if (j - i) % n]


def _conj(x: FpfInvolution, r: AffinePerm) -> FpfInvolution:
    return FpfInvolution(compose(r, compose(x.perm, r)))


def _qp_gap(U: Universe) -> int:
    return U.n * (2 + U.spread())


def verify_qp1(U: Universe, height_fn: Callable[[FpfInvolution], int] | None = None,
               gap: int | None = None) -> CheckReport:
    """If `ht(rxr) == ht(x)` for a reflection `r` then `rxr == x`."""
    ht = height_fn or (lambda z: z.height)
    rep = CheckReport("QP1")
    for x in U.elements:
        hx = ht(x)
        for i, j, r in _reflections(U.n, gap or _qp_gap(U)):
            rep.checked += 1
            rx = _conj(x, r)
            if ht(rx) == hx and rx != x:
                return rep.fail(x=x, r=[i, j], rx=rx)
    return rep


def verify_qp2(U: Universe, height_fn: Callable[[FpfInvolution], int] | None = None,
               gap: int | None = None) -> CheckReport:
    """If `ht(rx) > ht(x)` and `ht(srx) < ht(sx)` then `rx == sx`."""
    ht = height_fn or (lambda z: z.height)
    rep = CheckReport("QP2")
    gens = [simple(U.n, k) for k in range(1, U.n + 1)]
    for x in U.elements:
        hx = ht(x)
        sxs = [(_conj(x, s), s) for s in gens]
        for i, j, r in _reflections(U.n, gap or _qp_gap(U)):
            rx = _conj(x, r)
            if ht(rx) <= hx:
                rep.checked += len(gens)
                continue
            for k, (sx, s) in enumerate(sxs, 1):
                rep.checked += 1
                if ht(_conj(rx, s)) < ht(sx) and rx != sx:
                    return rep.fail(x=x, r=[i, j], s=k, rx=rx, sx=sx)
    return rep


def bruhat_leq_F(U: Universe, y: FpfInvolution, z: FpfInvolution) -> bool:
    for v in (y, z):
        if v not in U:
            raise KeyError(f"{v} is not in the universe")
    return y in U.below(z)


def bruhat_lower_covers(w: AffinePerm) -> list[tuple[tuple[int, int], AffinePerm]]:
    """All `(ij, w t_{ij})` with length one less, `i` in `[n]`."""
    n = w.n
    B = inversion_span(w)
    ell = length(w)
    out = []
    for i in range(1, n + 1):
        for j in range(i + 1, i + B + 1):
            if (j - i) % n == 0 or w(i) < w(j):
                continue
            v = compose(w, transposition(n, i, j))
            if length(v) == ell - 1:
                out.append(((i, j), v))
    return out


def atom_cover_check(U: Universe) -> CheckReport:
    """
    For every `z` in `U` and every atom `w` of `z`: the `y` admitting an atom
    `v < w` (Bruhat cover) are exactly the downward covers of `z`.
    """
    rep = CheckReport("atom-cover")
    th = theta(U.n, U.sign)
    for z in U.elements:
        expected = {y for _, y in U.covers[z]}
        for w in atoms(z):
            found = set()
            for _, v in bruhat_lower_covers(w):
                y = conjugate(th, v)
                if y.height == length(v):
                    found.add(y)
            rep.checked += 1
            if found != expected:
                return rep.fail(z=z, w=w, extra=sorted(map(str, found - expected)),
                                missing=sorted(map(str, expected - found)))
    return rep


def scan_completeness_check(U: Universe, widen: int | None = None) -> CheckReport:
    """Rescan every downward cover with a wider reflection window and compare."""
    rep = CheckReport("cover-scan-completeness")
    for z in U.elements:
        B = inversion_span(z.perm) + (widen if widen is not None else U.n)
        rep.checked += 1
        wide = covers_down(z, bound=B)
        if wide != U.covers[z]:
            return rep.fail(z=z, extra=sorted(str(y) for _, y in wide - U.covers[z]))
    return rep


def refinement_check(U: Universe) -> CheckReport:
    """`y <=_F z` implies `y <= z` in the ordinary Bruhat order; heights grade the order."""
    rep = CheckReport("bruhat-refinement")
    for z in U.elements:
        for y in U.below(z):
            rep.checked += 1
            if y != z and y.height >= z.height:
                return rep.fail(y=y, z=z, reason="not graded")
            if not bruhat_leq(y.perm, z.perm):
                return rep.fail(y=y, z=z, reason="not below in Bruhat order")
    return rep
