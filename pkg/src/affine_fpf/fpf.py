"""
Fixed-point-free affine involutions, their atoms and their Stanley functions.

An FPF involution `z` of period `n` (n even) satisfies `z(z(i)) = i` and
`z(i) != i` for every integer `i`.  Its atoms are the minimal-length `w` with
`w^{-1} Theta w = z`, where `Theta` is the base point of the sign class of `z`.

>>> z = parse_fpf("[6,-3,8,-1]")
>>> z.sign, z.height, beta(z)
(1, 4, 2)
>>> print(alpha_min(z), fpf_code(z), nu(z))
[3,0,5,2] (2, 0, 2, 0) (2, 2)
>>> print(fpf_stanley(z))
m[2,2] + 2*m[2,1,1] + 4*m[1,1,1,1]
>>> print(parse_fpf("t(1,6)t(3,8)", n=4))
[6,-3,8,-1]
"""

from __future__ import annotations

__all__ = [
    "FpfInvolution", "NotFpfError",
    "fpf_from_window", "fpf_from_cycles", "parse_fpf", "theta", "is_theta",
    "cycles", "beta", "beta_from_cycles", "sgn", "height",
    "conjugate", "conj_simple", "alpha_min", "alpha_max",
    "atoms", "atoms_by_closure", "atoms_brute_force", "atom_moves", "atom_poset",
    "lattice_check", "fpf_code", "visible_descents", "nu", "fpf_stanley",
    "is_321_avoiding", "conj_height_delta", "conj_length_formula", "conj_by_reflection",
]

import functools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .affine_group import (
    AffinePerm, InvalidWindowError, compose, count_after_below, delta, elements_by_length,
    from_shifted_window, from_window, identity, inverse, inversion_span, length,
    parse_window, right_descents, simple, transpose_partition, transposition,
)
from .symfunc import MonomialExpansion, stanley_expand


class NotFpfError(ValueError):
    """Raised when a window is not a fixed-point-free involution."""


@dataclass(frozen=True)
class FpfInvolution:
    perm: AffinePerm
    sign: int = field(init=False, compare=False)
    height: int = field(init=False, compare=False)

    def __post_init__(self):
        p = self.perm
        n = p.n
        if n % 2:
            raise NotFpfError(f"FPF involutions need even n, got {n}")
        for i in range(1, n + 1):
            if p(i) == i:
                raise NotFpfError(f"{p} fixes {i}")
            if p(p(i)) != i:
                raise NotFpfError(f"{p} is not an involution: z(z({i})) = {p(p(i))}")
        h2 = length(p) - n // 2
        if h2 < 0 or h2 % 2:
            raise AssertionError(f"{p} has length {length(p)}, not n/2 plus an even number")
        object.__setattr__(self, "height", h2 // 2)
        object.__setattr__(self, "sign", -1 if _beta_def(p) % 2 else 1)

    @property
    def n(self) -> int:
        return self.perm.n

    @property
    def window(self) -> tuple[int, ...]:
        return self.perm.window

    def __call__(self, i: int) -> int:
        return self.perm(i)

    def __str__(self):
        return str(self.perm)

    def __repr__(self):
        return f"FpfInvolution({self.perm.n}, {list(self.perm.window)})"

    def sort_key(self):
        return (self.height, self.window)


def fpf_from_window(n_or_values, values: Sequence[int] | None = None) -> FpfInvolution:
    """`fpf_from_window([2,1,4,3])` or `fpf_from_window(4, [2,1,4,3])`."""
    if values is None:
        values = list(n_or_values)
        n = len(values)
    else:
        n = n_or_values
    return FpfInvolution(from_window(n, values))


def fpf_from_cycles(n: int, pairs: Iterable[tuple[int, int]]) -> FpfInvolution:
    """The FPF involution with the given cycles `(a, b)` (and their translates)."""
    image: dict[int, int] = {}
    for a, b in pairs:
        if (a - b) % n == 0:
            raise NotFpfError(f"cycle ({a},{b}) joins congruent integers mod {n}")
        for x, y in ((a, b), (b, a)):
            r = (x - 1) % n + 1
            v = y + (r - x)
            if image.get(r, v) != v:
                raise NotFpfError(f"cycles overlap at residue {r}")
            image[r] = v
    if len(image) != n:
        missing = sorted(set(range(1, n + 1)) - set(image))
        raise NotFpfError(f"cycles leave residues {missing} unassigned")
    try:
        return FpfInvolution(from_window(n, [image[i] for i in range(1, n + 1)]))
    except InvalidWindowError as e:
        raise NotFpfError(str(e)) from e


_CYCLE_RE = re.compile(r"t\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def parse_fpf(text: str, n: int | None = None) -> FpfInvolution:
    """Parse a window `"[6,-3,8,-1]"` or a cycle list `"t(1,6)t(3,8)"` (needs `n`)."""
    s = text.strip()
    if s.startswith("["):
        values = parse_window(s)
        if n is not None and n != len(values):
            raise InvalidWindowError(f"window has {len(values)} entries but n = {n}")
        return fpf_from_window(values)
    pairs = _CYCLE_RE.findall(s)
    if not pairs or _CYCLE_RE.sub("", s).strip():
        raise InvalidWindowError(f"cannot parse FPF involution {text!r}")
    if n is None:
        raise InvalidWindowError("cycle notation needs an explicit n")
    return fpf_from_cycles(n, [(int(a), int(b)) for a, b in pairs])


@functools.lru_cache(maxsize=None)
def theta(n: int, sign: int = 1) -> FpfInvolution:
    """
    `Theta+ = s_1 s_3 ... s_{n-1}` and `Theta- = s_2 s_4 ... s_n`.

    >>> print(theta(4, 1), theta(4, -1))
    [2,1,4,3] [0,3,2,5]
    """
    if n % 2 or n < 2:
        raise NotFpfError(f"Theta needs positive even n, got {n}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    w = identity(n)
    for i in range(1 if sign == 1 else 2, n + 1, 2):
        w = compose(w, simple(n, i))
    z = FpfInvolution(w)
    if z.sign != sign or z.height != 0:
        raise AssertionError(f"Theta{'+' if sign > 0 else '-'} came out as {z}")
    return z


def is_theta(z: FpfInvolution) -> bool:
    return z.height == 0


def height(z: FpfInvolution) -> int:
    return z.height


def cycles(z: FpfInvolution) -> list[tuple[int, int]]:
    """Pairs `(a, z(a))` with `a` in `[n]` and `a < z(a)`, sorted by `a`."""
    return [(a, z(a)) for a in range(1, z.n + 1) if a < z(a)]


def _beta_def(p: AffinePerm) -> int:
    n = p.n
    total = sum(abs(v - ((v - 1) % n + 1)) for v in p.window)
    b = Fraction(total, 2 * n)
    if b.denominator != 1:
        raise AssertionError(f"beta({p}) = {b} is not an integer")
    return int(b)


def beta(z: FpfInvolution) -> int:
    """`(1/2n) * sum |z(i) - r_n(z(i))|`, with `r_n` the residue in `[n]`."""
    return _beta_def(z.perm)


def beta_from_cycles(z: FpfInvolution) -> int:
    """Same number through the cycle formula `(1/n) sum (a_i + b_i) - (n+1)/2`."""
    b = Fraction(sum(a + c for a, c in cycles(z)), z.n) - Fraction(z.n + 1, 2)
    if b.denominator != 1:
        raise AssertionError(f"cycle formula gives non-integer beta {b} for {z}")
    return int(b)


def sgn(z: FpfInvolution) -> int:
    return z.sign


def conjugate(z: FpfInvolution, w: AffinePerm) -> FpfInvolution:
    """`w^{-1} z w`."""
    return FpfInvolution(compose(inverse(w), compose(z.perm, w)))


def conj_simple(z: FpfInvolution, i: int) -> FpfInvolution:
    s = simple(z.n, i)
    return FpfInvolution(compose(s, compose(z.perm, s)))


def alpha_min(z: FpfInvolution) -> AffinePerm:
    """`[a_1, b_1, ..., a_l, b_l]^{-1}` read as a shifted window, with `(a_i, b_i)` the cycles."""
    flat = [v for pair in cycles(z) for v in pair]
    return inverse(from_shifted_window(z.n, flat))


def alpha_max(z: FpfInvolution) -> AffinePerm:
    """`[c_1, d_1, ..., c_l, d_l]^{-1}` where `d_1 < ... < d_l` are the `d` in `[n]` with `z(d) < d`."""
    flat = []
    for d in range(1, z.n + 1):
        if z(d) < d:
            flat += [z(d), d]
    return inverse(from_shifted_window(z.n, flat))


@functools.lru_cache(maxsize=100_000)
def atoms(z: FpfInvolution) -> frozenset[AffinePerm]:
    """Atoms of `z` by the descent recursion over height-lowering simple conjugations."""
    if z.height == 0:
        return frozenset([identity(z.n)])
    out = set()
    for i in range(1, z.n + 1):
        y = conj_simple(z, i)
        if y.height != z.height - 1:
            continue
        s = simple(z.n, i)
        for v in atoms(y):
            vs = compose(v, s)
            if length(vs) == length(v) + 1:
                out.add(vs)
    return frozenset(out)


def _swap_positions(x: AffinePerm, p: int, values: Sequence[int]) -> AffinePerm:
    # the window of x starting at position p, with its first four entries replaced
    win = [x(p + k) for k in range(x.n)]
    win[:4] = values
    return from_shifted_window(x.n, win)


def atom_moves(z: FpfInvolution, u: AffinePerm, require_cycles: bool = True) -> list[AffinePerm]:
    """
    All `v` with `u < v` by one swap `[.., a, d, b, c, ..]^{-1} -> [.., b, c, a, d, ..]^{-1}`
    with `a < b < c < d`, tried at every starting position in `[n]`.  With
    `require_cycles` the swap is only applied when `z(a) = d` and `z(b) = c`.
    """
    n = z.n
    if n < 4:
        return []
    x = inverse(u)
    out = []
    for p in range(1, n + 1):
        a, d, b, c = (x(p + k) for k in range(4))
        if not a < b < c < d:
            continue
        if require_cycles and (z(a) != d or z(b) != c):
            continue
        out.append(inverse(_swap_positions(x, p, (b, c, a, d))))
    return out


def atoms_by_closure(z: FpfInvolution, require_cycles: bool = True) -> tuple[frozenset[AffinePerm], set]:
    """
    Closure of `{alpha_min(z)}` under `atom_moves`.  Without `require_cycles`
    every pattern occurrence is tried and results that are not atoms are dropped.
    Returns the node set and the generating edges.
    """
    start = alpha_min(z)
    theta_z = theta(z.n, z.sign)
    seen = {start}
    edges = set()
    stack = [start]
    while stack:
        u = stack.pop()
        for v in atom_moves(z, u, require_cycles):
            if not require_cycles:
                if length(v) != z.height or conjugate(theta_z, v) != z:
                    continue
            edges.add((u, v))
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return frozenset(seen), edges


def atoms_brute_force(z: FpfInvolution) -> frozenset[AffinePerm]:
    """Minimal-length `w` with `w^{-1} Theta w = z`, by search through length layers."""
    theta_z = theta(z.n, z.sign)
    for k in range(z.height + 1):
        found = [w for w in elements_by_length(z.n, k)[k] if conjugate(theta_z, w) == z]
        if found:
            return frozenset(found)
    raise AssertionError(f"no conjugator of length <= {z.height} for {z}")


@dataclass
class AtomPoset:
    z: FpfInvolution
    nodes: frozenset
    edges: set
    minimum: AffinePerm | None
    maximum: AffinePerm | None


def _closure(nodes, edges) -> dict:
    up = {u: {u} for u in nodes}
    succ: dict = {u: [] for u in nodes}
    for u, v in edges:
        succ[u].append(v)
    # nodes all have the same length, so order by a reachability fixpoint
    changed = True
    while changed:
        changed = False
        for u in nodes:
            for v in succ[u]:
                if not up[v] <= up[u]:
                    up[u] |= up[v]
                    changed = True
    return up


def atom_poset(z: FpfInvolution) -> AtomPoset:
    nodes, edges = atoms_by_closure(z)
    up = _closure(nodes, edges)
    minimum = [u for u in nodes if up[u] == set(nodes)]
    maximum = [u for u in nodes if all(u in up[v] for v in nodes)]
    return AtomPoset(z, nodes, edges,
                     minimum[0] if len(minimum) == 1 else None,
                     maximum[0] if len(maximum) == 1 else None)


def lattice_check(poset: AtomPoset) -> tuple[bool, tuple | None]:
    """Every pair has a unique meet and join.  Returns `(ok, failing pair)`."""
    nodes = list(poset.nodes)
    up = _closure(poset.nodes, poset.edges)
    down = {u: {v for v in nodes if u in up[v]} for u in nodes}
    for x in nodes:
        for y in nodes:
            lower = down[x] & down[y]
            meets = [m for m in lower if lower <= down[m]]
            upper = up[x] & up[y]
            joins = [j for j in upper if upper <= up[j]]
            if len(meets) != 1 or len(joins) != 1:
                return False, (x, y)
    return True, None


def fpf_code(z: FpfInvolution) -> tuple[int, ...]:
    """`c_i = #{j > i : z(j) < min(i, z(i))}`."""
    return tuple(count_after_below(z.perm, i, min(i, z(i))) for i in range(1, z.n + 1))


def visible_descents(z: FpfInvolution) -> set[int]:
    return {i for i in range(1, z.n + 1) if min(i, z(i)) > z(i + 1)}


def nu(z: FpfInvolution) -> tuple[int, ...]:
    return transpose_partition(sorted(fpf_code(z), reverse=True))


def fpf_stanley(z: FpfInvolution) -> MonomialExpansion:
    total = MonomialExpansion.zero(z.n, z.height)
    for a in sorted(atoms(z), key=lambda w: w.window):
        total = total + stanley_expand(a)
    return total


def is_321_avoiding(z: FpfInvolution) -> bool:
    """
    No `i < j < k` with `z(i) > z(j) > z(k)`.  Both inversions `(i, j)` and
    `(j, k)` have gap below the inversion span, and by periodicity `j` may be
    taken in `[n]`.
    """
    B = inversion_span(z.perm)
    for j in range(1, z.n + 1):
        v = z(j)
        if any(z(i) > v for i in range(j - B, j)) and any(z(k) < v for k in range(j + 1, j + B + 1)):
            return False
    return True


def conj_height_delta(z: FpfInvolution, i: int) -> int:
    """Change of height under `z -> s_i z s_i`, by the three-case rule."""
    a, b = z(i), z(i + 1)
    if a == i + 1:
        return 0
    return -1 if a > b else 1


def conj_length_formula(z: FpfInvolution, i: int, j: int) -> int:
    """`len(t z t)` for `t = t_{ij}`, via the reflection-length case analysis."""
    n = z.n
    if not i < j or (j - i) % n == 0:
        raise ValueError(f"need i < j with j != i mod {n}, got ({i}, {j})")
    p = z.perm
    t = transposition(n, i, j)
    tz, zt = compose(t, p), compose(p, t)
    tzt = compose(tz, t)
    ell = length(p)
    up = ell + 2 * delta(tz, i, j) + 2 * delta(p, i, j) + 2
    mid = ell + 2 * delta(tz, i, j) - 2 * delta(zt, i, j)
    down = ell - 2 * delta(tzt, i, j) - 2 * delta(zt, i, j) - 2
    if (p(i) - j) % n:
        return up if p(i) < p(j) else down
    m = (p(i) - j) // n
    if 2 * n * m < -(j - i):
        return up
    if 2 * n * m > j - i:
        return down
    return mid


def conj_by_reflection(z: FpfInvolution, i: int, j: int) -> tuple[FpfInvolution, int]:
    """`(t z t, height change)` for `t = t_{ij}`; the formula is checked against recomputation."""
    t = transposition(z.n, i, j)
    y = FpfInvolution(compose(t, compose(z.perm, t)))
    predicted = conj_length_formula(z, i, j)
    if predicted != length(y.perm):
        raise AssertionError(f"length formula gives {predicted}, actual {length(y.perm)} for {z}, t({i},{j})")
    return y, y.height - z.height
