"""
Affine permutations of period `n`, stored by their base window.

An affine permutation is a bijection `w` of the integers with
`w(i + n) = w(i) + n` and `w(1) + ... + w(n) = 1 + ... + n`.  It is determined
by its base window `[w(1), ..., w(n)]`.

>>> w = from_window(4, [3, 0, 5, 2])
>>> length(w), code(w)
(4, (2, 0, 2, 0))
>>> inverse(from_window(4, [-3, 3, 4, 6]))
AffinePerm(4, [5, 0, 2, 3])
>>> transposition(4, 1, 6)(1), transposition(4, 1, 6)(2)
(6, -3)
"""

from __future__ import annotations

__all__ = [
    "AffinePerm", "InvalidWindowError", "InvalidInversionSetError",
    "from_window", "from_shifted_window", "identity", "parse_window",
    "compose", "inverse", "apply", "simple", "transposition",
    "length", "inversions", "code", "shape", "from_code",
    "right_descents", "is_grassmannian", "star", "rotate",
    "delta", "length_after_right_mult", "from_inversion_set",
    "project_finite", "inversion_span", "reflection_of", "count_after_below",
    "reduced_word", "bruhat_interval", "bruhat_leq", "bruhat_leq_lifting",
    "elements_by_length", "transpose_partition",
]

import functools
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class InvalidWindowError(ValueError):
    """Raised when a sequence of integers is not a base window."""


class InvalidInversionSetError(ValueError):
    """Raised when a set of pairs is not the inversion set of an affine permutation."""


@dataclass(frozen=True)
class AffinePerm:
    n: int
    window: tuple[int, ...]
    _length: int | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "window", tuple(self.window))
        _check_window(self.n, self.window)

    def __repr__(self):
        return f"AffinePerm({self.n}, {list(self.window)})"

    def __str__(self):
        return format_window(self.window)

    def __call__(self, i: int) -> int:
        q, r = divmod(i - 1, self.n)
        return self.window[r] + q * self.n

    def __mul__(self, other: AffinePerm) -> AffinePerm:
        return compose(self, other)

    def inverse(self) -> AffinePerm:
        return inverse(self)

    def length(self) -> int:
        if self._length is None:
            object.__setattr__(self, "_length", sum(code(self)))
        return self._length

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.window, 1))


def _check_window(n: int, values: Sequence[int]) -> None:
    if n < 1:
        raise InvalidWindowError(f"period must be positive, got {n}")
    if len(values) != n:
        raise InvalidWindowError(f"window has {len(values)} entries, expected {n}")
    residues = {}
    for pos, v in enumerate(values, 1):
        r = v % n
        if r in residues:
            raise InvalidWindowError(
                f"residue collision mod {n}: positions {residues[r]} and {pos} "
                f"(values {values[residues[r] - 1]} and {v})")
        residues[r] = pos
    total = sum(values)
    if total != n * (n + 1) // 2:
        raise InvalidWindowError(f"window sum {total} != {n * (n + 1) // 2}")


def format_window(values: Iterable[int]) -> str:
    return "[" + ",".join(str(v) for v in values) + "]"


_WINDOW_RE = re.compile(r"^\s*\[\s*(-?\d+(\s*,\s*-?\d+)*)?\s*\]\s*$")


def parse_window(text: str) -> list[int]:
    """
    Parse the bracketed window format.

    >>> parse_window(" [6, -3,8,-1] ")
    [6, -3, 8, -1]
    """
    if not _WINDOW_RE.match(text):
        raise InvalidWindowError(f"malformed window {text!r}")
    body = text.strip()[1:-1].strip()
    return [int(tok) for tok in body.split(",")] if body else []


def from_window(n: int, values: Sequence[int]) -> AffinePerm:
    return AffinePerm(n, tuple(values))


def from_shifted_window(n: int, values: Sequence[int]) -> AffinePerm:
    """
    The affine permutation having `values` as the window `[w(k+1), ..., w(k+n)]`
    for some (unique) shift `k`, read off from the sum of the values.

    >>> from_shifted_window(4, [1, 6, 3, 8])
    AffinePerm(4, [-1, 4, 1, 6])
    """
    if len(values) != n:
        raise InvalidWindowError(f"window has {len(values)} entries, expected {n}")
    excess = sum(values) - n * (n + 1) // 2
    if excess % n:
        raise InvalidWindowError(f"window sum {sum(values)} is not a shifted window sum")
    k = excess // n
    base = [0] * n
    for pos, v in enumerate(values, k + 1):
        q, r = divmod(pos - 1, n)
        base[r] = v - q * n
    return AffinePerm(n, tuple(base))


def identity(n: int) -> AffinePerm:
    return AffinePerm(n, tuple(range(1, n + 1)))


def apply(a: AffinePerm, i: int) -> int:
    return a(i)


def compose(a: AffinePerm, b: AffinePerm) -> AffinePerm:
    """The product `ab`, acting as `i -> a(b(i))`."""
    if a.n != b.n:
        raise ValueError(f"period mismatch {a.n} != {b.n}")
    return AffinePerm(a.n, tuple(a(v) for v in b.window))


def inverse(a: AffinePerm) -> AffinePerm:
    n = a.n
    out = [0] * n
    for i, v in enumerate(a.window, 1):
        q, r = divmod(v - 1, n)
        out[r] = i - q * n
    return AffinePerm(n, tuple(out))


def simple(n: int, i: int) -> AffinePerm:
    """The simple reflection `s_i` (indices taken mod n)."""
    if n < 2:
        raise ValueError("simple reflections need n >= 2")
    i = (i - 1) % n + 1
    w = list(range(1, n + 1))
    if i < n:
        w[i - 1], w[i] = w[i], w[i - 1]
    else:
        w[0], w[n - 1] = 0, n + 1
    return AffinePerm(n, tuple(w))


def transposition(n: int, i: int, j: int) -> AffinePerm:
    """The reflection `t_{ij}` exchanging `i + kn` and `j + kn` for all `k`."""
    if not i < j:
        raise ValueError(f"transposition needs i < j, got ({i}, {j})")
    if (j - i) % n == 0:
        raise ValueError(f"transposition needs j != i mod {n}, got ({i}, {j})")
    d = j - i
    ri, rj = i % n, j % n
    w = []
    for p in range(1, n + 1):
        if p % n == ri:
            w.append(p + d)
        elif p % n == rj:
            w.append(p - d)
        else:
            w.append(p)
    return AffinePerm(n, tuple(w))


def reflection_of(w: AffinePerm) -> tuple[int, int] | None:
    """Return `(i, j)` with `i` in `[n]` if `w == t_{ij}`, else None."""
    n = w.n
    moved = [p for p in range(1, n + 1) if w(p) != p]
    if len(moved) != 2:
        return None
    p, q = moved
    i, j = (p, w(p)) if w(p) > p else (q, w(q))
    if (j - i) % n == 0 or transposition(n, i, j) != w:
        return None
    return i, j


def count_after_below(a: AffinePerm, i: int, threshold: int) -> int:
    # #{j > i : a(j) < threshold}, exactly, one residue class at a time
    n = a.n
    total = 0
    for j0, v in enumerate(a.window, 1):
        k_lo = (i - j0) // n + 1
        k_hi = -((v - threshold) // n) - 1
        if k_hi >= k_lo:
            total += k_hi - k_lo + 1
    return total


def code(a: AffinePerm) -> tuple[int, ...]:
    """`c_i = #{j > i : a(i) > a(j)}` for `i = 1..n`."""
    return tuple(count_after_below(a, i, a(i)) for i in range(1, a.n + 1))


def length(a: AffinePerm) -> int:
    return a.length()


def inversion_span(a: AffinePerm) -> int:
    """
    `max(a(k) - k) - min(a(k) - k)`.  Every inversion `(i, j)` has `j - i` strictly
    below this, which makes it the scan bound for inversions and covers.
    """
    offsets = [v - i for i, v in enumerate(a.window, 1)]
    return max(offsets) - min(offsets)


def inversions(a: AffinePerm) -> list[tuple[int, int]]:
    """Class representatives `(i, j)` of `Inv(a)` with `i` in `[n]`."""
    span = inversion_span(a)
    return [(i, j) for i in range(1, a.n + 1)
            for j in range(i + 1, i + span + 1) if a(i) > a(j)]


def transpose_partition(parts: Sequence[int]) -> tuple[int, ...]:
    parts = [p for p in parts if p > 0]
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > k) for k in range(max(parts)))


def shape(a: AffinePerm) -> tuple[int, ...]:
    """Transpose of the partition sorting the code of the inverse."""
    return transpose_partition(sorted(code(inverse(a)), reverse=True))


def from_code(c: Sequence[int]) -> AffinePerm:
    """
    Inverse of `code` on vectors with at least one zero entry.

    >>> from_code((4, 0, 0, 0))
    AffinePerm(4, [5, 0, 2, 3])
    """
    c = list(c)
    n = len(c)
    if any(x < 0 for x in c):
        raise ValueError(f"code entries must be nonnegative: {c}")
    if n == 0 or all(x > 0 for x in c):
        raise ValueError(f"code must have a zero entry: {c}")
    peeled = []
    while any(c):
        # smallest cyclic strict descent; one exists since c has a zero and is nonzero
        i = next(i for i in range(n) if c[i] > c[(i + 1) % n])
        k = (i + 1) % n
        c[i], c[k] = c[k], c[i] - 1
        peeled.append(i + 1)
    w = identity(n)
    for i in reversed(peeled):
        w = compose(w, simple(n, i))
    return w


def right_descents(a: AffinePerm) -> frozenset[int]:
    return frozenset(i for i in range(1, a.n + 1) if a(i) > a(i + 1))


def is_grassmannian(a: AffinePerm) -> bool:
    inv = inverse(a).window
    return all(inv[k] < inv[k + 1] for k in range(a.n - 1))


def star(a: AffinePerm) -> AffinePerm:
    """The automorphism `s_i -> s_{n-i}`: conjugation by `x -> n + 1 - x`."""
    n = a.n
    return AffinePerm(n, tuple(n + 1 - a(n + 1 - i) for i in range(1, n + 1)))


def rotate(a: AffinePerm) -> AffinePerm:
    """The automorphism `s_i -> s_{i+1}`: conjugation by `x -> x + 1`."""
    return AffinePerm(a.n, tuple(a(i - 1) + 1 for i in range(1, a.n + 1)))


def _check_reflection_indices(n: int, i: int, j: int) -> None:
    if not i < j or (j - i) % n == 0:
        raise ValueError(f"need i < j with j != i mod {n}, got ({i}, {j})")


def delta(w: AffinePerm, i: int, j: int) -> int:
    """`#{k : i < k < j, k != i mod n, w(k) strictly between w(i) and w(j)}`."""
    _check_reflection_indices(w.n, i, j)
    lo, hi = sorted((w(i), w(j)))
    return sum(1 for k in range(i + 1, j)
               if (k - i) % w.n and lo < w(k) < hi)


def length_after_right_mult(w: AffinePerm, i: int, j: int) -> int:
    """`length(w * t_{ij})` from the two-case delta formula."""
    _check_reflection_indices(w.n, i, j)
    if w(i) < w(j):
        return length(w) + 2 * delta(w, i, j) + 1
    wt = compose(w, transposition(w.n, i, j))
    return length(w) - 2 * delta(wt, i, j) - 1


def _normalize_pair(n: int, a: int, b: int) -> tuple[int, int]:
    shift = (a - 1) // n * n
    return a - shift, b - shift


def from_inversion_set(n: int, generators: Iterable[tuple[int, int]]) -> AffinePerm:
    """
    The unique affine permutation whose inversion set is the closure of
    `generators` under `(i, j) -> (i + n, j + n)`.

    The four closure conditions are checked first; a failure names the
    condition and a witness.  The permutation is then rebuilt by peeling
    adjacent inversions `(i, i+1)`.
    """
    inv = {_normalize_pair(n, a, b) for a, b in generators}
    _check_inversion_conditions(n, inv)
    peeled = []
    while inv:
        i = next((a for a, b in sorted(inv) if b == a + 1), None)
        if i is None:  # pragma: no cover - excluded by condition (4)
            raise InvalidInversionSetError("no adjacent inversion in a nonempty set")
        s = simple(n, i)
        inv = {_normalize_pair(n, s(a), s(b)) for a, b in inv if (a, b) != (i, i + 1)}
        peeled.append(i)
    w = identity(n)
    for i in reversed(peeled):
        w = compose(w, simple(n, i))
    return w


def _check_inversion_conditions(n: int, inv: set[tuple[int, int]]) -> None:
    def has(a, b):
        return _normalize_pair(n, a, b) in inv

    for a, b in sorted(inv):
        if not a < b or (b - a) % n == 0:
            raise InvalidInversionSetError(f"condition (1) fails: ({a}, {b})")
    by_first = {}
    for c, d in inv:
        by_first.setdefault(c % n, []).append((c, d))
    for a, b in sorted(inv):
        for c, d in by_first.get(b % n, ()):
            e = d + (b - c)
            if not has(a, e):
                raise InvalidInversionSetError(
                    f"condition (3) fails: ({a}, {b}) and ({b}, {e}) present, ({a}, {e}) missing")
    for a, c in sorted(inv):
        for b in range(a + 1, c):
            if not (has(a, b) or has(b, c)):
                raise InvalidInversionSetError(
                    f"condition (4) fails: ({a}, {c}) present but neither ({a}, {b}) nor ({b}, {c})")


def project_finite(a: AffinePerm) -> AffinePerm:
    """The finite permutation `i -> r_n(a(i))`, as an element of `S_n`."""
    n = a.n
    return AffinePerm(n, tuple((v - 1) % n + 1 for v in a.window))


def reduced_word(a: AffinePerm) -> tuple[int, ...]:
    """A reduced word `(i_1, ..., i_l)` with `a = s_{i_1} ... s_{i_l}`, by peeling right descents."""
    word = []
    w = a
    while not w.is_identity():
        i = min(right_descents(w))
        word.append(i)
        w = compose(w, simple(w.n, i))
    return tuple(reversed(word))


@functools.lru_cache(maxsize=4096)
def bruhat_interval(a: AffinePerm) -> frozenset[AffinePerm]:
    """All subword products of a reduced word of `a`, i.e. the Bruhat interval `[1, a]`."""
    n = a.n
    found = {identity(n)}
    for i in reduced_word(a):
        s = simple(n, i)
        found |= {compose(x, s) for x in found}
    return frozenset(found)


def bruhat_leq(u: AffinePerm, w: AffinePerm) -> bool:
    """Ordinary Bruhat order via the subword criterion."""
    if length(u) > length(w):
        return False
    return u in bruhat_interval(w)


def bruhat_leq_lifting(u: AffinePerm, w: AffinePerm) -> bool:
    """Ordinary Bruhat order via the lifting property (independent check of `bruhat_leq`)."""
    while True:
        if length(u) > length(w):
            return False
        if w.is_identity():
            return u.is_identity()
        i = min(right_descents(w))
        s = simple(w.n, i)
        if u(i) > u(i + 1):
            u = compose(u, s)
        w = compose(w, s)


@functools.lru_cache(maxsize=64)
def elements_by_length(n: int, max_length: int) -> tuple[frozenset[AffinePerm], ...]:
    """Layers `L_0, ..., L_max` of all affine permutations of each length."""
    layers = [frozenset({identity(n)})]
    gens = [simple(n, i) for i in range(1, n + 1)]
    for k in range(1, max_length + 1):
        nxt = set()
        for w in layers[-1]:
            for s in gens:
                ws = compose(w, s)
                if length(ws) == k:
                    nxt.add(ws)
        layers.append(frozenset(nxt))
    return tuple(layers)
