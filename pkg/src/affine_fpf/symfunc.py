"""
Affine Stanley symmetric functions in the monomial basis.

A `MonomialExpansion` is a finite integer combination of monomial symmetric
functions `m_lam` with every part of `lam` at most `n - 1`.  `stanley_expand`
counts length-additive factorizations into cyclically decreasing factors.

>>> from affine_fpf.affine_group import from_window
>>> print(stanley_expand(from_window(4, [3, 0, 5, 2])))
m[2,2] + 2*m[2,1,1] + 4*m[1,1,1,1]
"""

from __future__ import annotations

__all__ = [
    "Partition", "MonomialExpansion",
    "partitions", "dominance_leq", "transpose", "star_partition",
    "grassmannian_of_shape", "cyclically_decreasing", "cyclically_decreasing_elements",
    "stanley_expand", "affine_schur", "to_schur_basis", "from_schur_basis", "omega_plus",
]

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .affine_group import (
    AffinePerm, compose, from_code, identity, inverse, length, shape, simple, star,
    transpose_partition,
)

Partition = tuple[int, ...]


def _as_partition(parts: Iterable[int]) -> Partition:
    lam = tuple(parts)
    if any(p <= 0 for p in lam) or any(lam[k] < lam[k + 1] for k in range(len(lam) - 1)):
        raise ValueError(f"not a partition: {lam}")
    return lam


def partitions(total: int, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of `total` with parts at most `max_part`, lexicographically decreasing."""
    if max_part is None:
        max_part = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in partitions(total - first, first):
            yield (first,) + rest


def dominance_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """`a <= b` in dominance order (prefix sums)."""
    if sum(a) != sum(b):
        raise ValueError(f"dominance needs equal weights: {tuple(a)} vs {tuple(b)}")
    sa = sb = 0
    for k in range(max(len(a), len(b))):
        sa += a[k] if k < len(a) else 0
        sb += b[k] if k < len(b) else 0
        if sa > sb:
            return False
    return True


def transpose(a: Sequence[int]) -> Partition:
    return transpose_partition(a)


def _check_par_n(n: int, lam: Partition) -> None:
    if lam and lam[0] > n - 1:
        raise ValueError(f"{lam} is not in Par^{n}: parts must be at most {n - 1}")


@functools.lru_cache(maxsize=None)
def grassmannian_of_shape(n: int, lam: Partition) -> AffinePerm:
    """The Grassmannian element of shape `lam`: its inverse has the increasing code `sort(lam^T)`."""
    lam = _as_partition(lam)
    _check_par_n(n, lam)
    col = sorted(transpose(lam))
    inv_code = [0] * (n - len(col)) + col
    return inverse(from_code(inv_code))


def star_partition(n: int, lam: Sequence[int]) -> Partition:
    """`lam*`, defined as the shape of `star` of the Grassmannian element of shape `lam`."""
    return shape(star(grassmannian_of_shape(n, tuple(lam))))


def cyclically_decreasing(n: int, support: Iterable[int]) -> AffinePerm:
    """
    The cyclically decreasing element with the given support: a product over
    maximal cyclic intervals `[a, b]` of `s_b s_{b-1} ... s_a`.
    """
    A = frozenset((i - 1) % n + 1 for i in support)
    if len(A) >= n:
        raise ValueError(f"support must be a proper subset of 1..{n}")
    w = identity(n)
    for a in range(1, n + 1):
        if a not in A or (a - 2) % n + 1 in A:
            continue
        # a starts a maximal cyclic interval
        block = [a]
        while block[-1] % n + 1 in A:
            block.append(block[-1] % n + 1)
        for i in reversed(block):
            w = compose(w, simple(n, i))
    return w


@functools.lru_cache(maxsize=None)
def cyclically_decreasing_elements(n: int) -> dict[int, tuple[AffinePerm, ...]]:
    """Inverses of all cyclically decreasing elements, grouped by length."""
    out: dict[int, list[AffinePerm]] = {}
    for k in range(n):
        for A in itertools.combinations(range(1, n + 1), k):
            d = cyclically_decreasing(n, A)
            if length(d) != k:
                raise AssertionError(f"cyclically decreasing element for {A} has length {length(d)}")
            out.setdefault(k, []).append(inverse(d))
    return {k: tuple(v) for k, v in out.items()}


@dataclass(frozen=True)
class MonomialExpansion:
    n: int
    degree: int
    coeffs: Mapping[Partition, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for lam, c in self.coeffs.items():
            lam = _as_partition(lam)
            if c == 0:
                continue
            _check_par_n(self.n, lam)
            if sum(lam) != self.degree:
                raise ValueError(f"{lam} has weight {sum(lam)}, expansion degree is {self.degree}")
            clean[lam] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items(), reverse=True)))

    def __eq__(self, other):
        if not isinstance(other, MonomialExpansion):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, tuple(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, lam) -> int:
        return self.coeffs.get(tuple(lam), 0)

    def _combine(self, other: MonomialExpansion, sign: int) -> MonomialExpansion:
        if self.n != other.n:
            raise ValueError("period mismatch")
        if self and other and self.degree != other.degree:
            raise ValueError("cannot add expansions of different degree")
        degree = self.degree if self else other.degree
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            out[lam] = out.get(lam, 0) + sign * c
        return MonomialExpansion(self.n, degree, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return MonomialExpansion(self.n, self.degree, {k: -c for k, c in self.coeffs.items()})

    def __mul__(self, c: int):
        return MonomialExpansion(self.n, self.degree, {k: c * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def leading(self) -> Partition | None:
        """Lexicographically largest partition in the support."""
        return next(iter(self.coeffs), None)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "degree": self.degree,
            "basis": "m",
            "terms": [{"partition": list(lam), "coeff": c} for lam, c in self.coeffs.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> MonomialExpansion:
        if data.get("basis", "m") != "m":
            raise ValueError(f"unsupported basis {data['basis']!r}")
        return cls(data["n"], data["degree"],
                   {tuple(t["partition"]): t["coeff"] for t in data["terms"]})

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for lam, c in self.coeffs.items():
            mono = "m[" + ",".join(map(str, lam)) + "]"
            parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)

    @classmethod
    def zero(cls, n: int, degree: int = 0) -> MonomialExpansion:
        return cls(n, degree, {})


def stanley_expand(a: AffinePerm) -> MonomialExpansion:
    """
    Monomial expansion of the affine Stanley symmetric function of `a`.

    The coefficient of `m_lam` is the number of length-additive factorizations
    `a = d_1 d_2 ... d_k` into cyclically decreasing factors with `len(d_i) = lam_i`.
    """
    return _stanley_cached(a)


@functools.lru_cache(maxsize=200_000)
def _stanley_cached(a: AffinePerm) -> MonomialExpansion:
    n = a.n
    ell = length(a)
    dec = cyclically_decreasing_elements(n)
    memo: dict[tuple[AffinePerm, Partition], int] = {}

    def count(w: AffinePerm, parts: Partition) -> int:
        if not parts:
            return 1 if w.is_identity() else 0
        key = (w, parts)
        if key in memo:
            return memo[key]
        k = parts[0]
        target = length(w) - k
        total = 0
        for d_inv in dec.get(k, ()):
            rest = compose(d_inv, w)
            if length(rest) == target:
                total += count(rest, parts[1:])
        memo[key] = total
        return total

    coeffs = {lam: count(a, lam) for lam in partitions(ell, n - 1)}
    return MonomialExpansion(n, ell, coeffs)


@functools.lru_cache(maxsize=None)
def affine_schur(n: int, lam: Partition) -> MonomialExpansion:
    lam = _as_partition(lam)
    return stanley_expand(grassmannian_of_shape(n, lam))


def to_schur_basis(e: MonomialExpansion) -> dict[Partition, int]:
    """
    Coefficients of `e` in the affine Schur basis, by peeling lexicographically
    largest terms (lex order extends dominance, and affine Schur functions are
    unitriangular with respect to it).
    """
    rest = e
    out: dict[Partition, int] = {}
    while rest:
        lam = rest.leading()
        c = rest[lam]
        f = affine_schur(e.n, lam)
        if f[lam] != 1 or f.leading() != lam:
            raise AssertionError(f"affine Schur function for {lam} is not unitriangular")
        out[lam] = c
        rest = rest - c * f
    return out


def from_schur_basis(n: int, degree: int, coeffs: Mapping[Partition, int]) -> MonomialExpansion:
    total = MonomialExpansion.zero(n, degree)
    for lam, c in coeffs.items():
        total = total + c * affine_schur(n, tuple(lam))
    return total


def omega_plus(e: MonomialExpansion) -> MonomialExpansion:
    """The involution sending each affine Schur function `F_lam` to `F_{lam*}`."""
    schur = to_schur_basis(e)
    starred = {star_partition(e.n, lam): c for lam, c in schur.items()}
    return from_schur_basis(e.n, e.degree, starred)
