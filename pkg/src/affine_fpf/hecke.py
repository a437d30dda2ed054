"""
The Hecke modules spanned by FPF involutions, their bar involution and
canonical bases, and the W-graphs built from them.

Module elements are maps `z -> LaurentPoly`; the variant `"M"` or `"N"`
selects how `H_s` acts when `s z s = z`.

>>> from affine_fpf.fpf import theta, conj_simple
>>> th = theta(4, 1)
>>> print(act(1, basis("M", th)))
(v) M[2,1,4,3]
>>> z = conj_simple(th, 2)
>>> print(bar(basis("M", z)))
(v^-1 - v) M[2,1,4,3] + (1) M[3,4,1,2]
"""

from __future__ import annotations

__all__ = [
    "LaurentPoly", "ModuleElement", "basis", "act", "act_word", "bar", "bar_basis",
    "bar_via_chain", "descent_chains", "canonical_basis", "CanonicalBasisError",
    "mu", "tau", "WGraph", "w_graph", "cells", "molecules", "strongly_connected_components",
    "canonical_basis_json",
]

import functools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .fpf import FpfInvolution, conj_simple


class LaurentPoly:
    """Integer Laurent polynomial in `v`, stored as `{exponent: coefficient}`."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.c = {int(e): int(a) for e, a in (coeffs or {}).items() if a}

    @classmethod
    def const(cls, a: int) -> LaurentPoly:
        return cls({0: a})

    @classmethod
    def mono(cls, e: int, a: int = 1) -> LaurentPoly:
        return cls({e: a})

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return isinstance(other, LaurentPoly) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        out = dict(self.c)
        for e, a in other.c.items():
            out[e] = out.get(e, 0) + a
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({e: -a for e, a in self.c.items()})

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly({e: a * other for e, a in self.c.items()})
        out: dict[int, int] = {}
        for e1, a1 in self.c.items():
            for e2, a2 in other.c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + a1 * a2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def bar(self) -> LaurentPoly:
        return LaurentPoly({-e: a for e, a in self.c.items()})

    def coeff(self, e: int) -> int:
        return self.c.get(e, 0)

    def negative_part(self) -> LaurentPoly:
        return LaurentPoly({e: a for e, a in self.c.items() if e < 0})

    def to_json(self) -> dict[str, int]:
        return {str(e): a for e, a in sorted(self.c.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> LaurentPoly:
        return cls({int(e): a for e, a in data.items()})

    def __repr__(self):
        return f"LaurentPoly({self.c})"

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for e, a in sorted(self.c.items()):
            mono = "" if e == 0 else ("v" if e == 1 else f"v^{e}")
            if not mono:
                parts.append(str(a))
            elif a == 1:
                parts.append(mono)
            elif a == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{a}{mono}")
        return " + ".join(parts).replace("+ -", "- ")


ONE = LaurentPoly.const(1)
V = LaurentPoly.mono(1)
V_INV = LaurentPoly.mono(-1)
V_MINUS_VINV = V - V_INV


@dataclass(frozen=True)
class ModuleElement:
    variant: str
    terms: Mapping[FpfInvolution, LaurentPoly] = field(default_factory=dict)

    def __post_init__(self):
        if self.variant not in ("M", "N"):
            raise ValueError(f"variant must be 'M' or 'N', got {self.variant!r}")
        clean = {z: p for z, p in self.terms.items() if p}
        keys = {(z.n, z.sign) for z in clean}
        if len({k[0] for k in keys}) > 1:
            raise ValueError("module element mixes different n")
        object.__setattr__(self, "terms", clean)

    def __eq__(self, other):
        return (isinstance(other, ModuleElement) and self.variant == other.variant
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.variant, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, z: FpfInvolution) -> LaurentPoly:
        return self.terms.get(z, LaurentPoly())

    def _check(self, other: ModuleElement):
        if other.variant != self.variant:
            raise ValueError("cannot combine elements of different modules")

    def __add__(self, other: ModuleElement) -> ModuleElement:
        self._check(other)
        out = dict(self.terms)
        for z, p in other.terms.items():
            out[z] = out[z] + p if z in out else p
        return ModuleElement(self.variant, out)

    def __sub__(self, other: ModuleElement) -> ModuleElement:
        return self + other.scale(LaurentPoly.const(-1))

    def scale(self, p: LaurentPoly) -> ModuleElement:
        return ModuleElement(self.variant, {z: c * p for z, c in self.terms.items()})

    def support(self) -> list[FpfInvolution]:
        return sorted(self.terms, key=FpfInvolution.sort_key)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({self.terms[z]}) {self.variant}{z}" for z in self.support())


def basis(variant: str, z: FpfInvolution) -> ModuleElement:
    return ModuleElement(variant, {z: ONE})


def act(s: int, e: ModuleElement) -> ModuleElement:
    """`H_{s_i} e` by the three-case rule on heights of `z` and `s z s`."""
    out: dict[FpfInvolution, LaurentPoly] = {}

    def add(z, p):
        out[z] = out[z] + p if z in out else p

    for z, c in e.terms.items():
        if not 1 <= s <= z.n:
            raise ValueError(f"simple index {s} out of range 1..{z.n}")
        y = conj_simple(z, s)
        if y.height > z.height:
            add(y, c)
        elif y.height == z.height:
            add(z, c * (V if e.variant == "M" else -V_INV))
        else:
            add(y, c)
            add(z, c * V_MINUS_VINV)
    return ModuleElement(e.variant, out)


def act_word(word: Sequence[int], e: ModuleElement) -> ModuleElement:
    """`H_{w_1} H_{w_2} ... H_{w_k} e` (rightmost acts first)."""
    for s in reversed(word):
        e = act(s, e)
    return e


def _bar_hs(s: int, e: ModuleElement) -> ModuleElement:
    # bar(H_s) = H_s^{-1} = H_s - (v - v^{-1})
    return act(s, e) - e.scale(V_MINUS_VINV)


def bar_via_chain(variant: str, z: FpfInvolution, chain: Sequence[int]) -> ModuleElement:
    """`bar(M_z)` computed along `M_z = H_{c_1} ... H_{c_k} M_Theta`."""
    y = z
    for s in chain:
        y = conj_simple(y, s)
    if y.height != 0 or len(chain) != z.height:
        raise ValueError(f"chain {chain} does not descend from {z} to Theta")
    e = basis(variant, y)
    for s in reversed(chain):
        e = _bar_hs(s, e)
    return e


@functools.lru_cache(maxsize=None)
def bar_basis(variant: str, z: FpfInvolution) -> ModuleElement:
    if z.height == 0:
        return basis(variant, z)
    for s in range(1, z.n + 1):
        y = conj_simple(z, s)
        if y.height < z.height:
            return _bar_hs(s, bar_basis(variant, y))
    raise AssertionError(f"{z} has positive height but no descent")


def bar(e: ModuleElement) -> ModuleElement:
    """The antilinear involution fixing `M_Theta`."""
    out = ModuleElement(e.variant)
    for z, c in e.terms.items():
        out = out + bar_basis(e.variant, z).scale(c.bar())
    return out


def descent_chains(z: FpfInvolution) -> list[tuple[int, ...]]:
    """Every sequence of height-lowering simple conjugations from `z` down to Theta."""
    if z.height == 0:
        return [()]
    out = []
    for s in range(1, z.n + 1):
        y = conj_simple(z, s)
        if y.height < z.height:
            out += [(s,) + rest for rest in descent_chains(y)]
    return out


class CanonicalBasisError(AssertionError):
    """The triangular correction hit an inconsistent coefficient."""


def _vertices(U) -> list[FpfInvolution]:
    universes = U if isinstance(U, (list, tuple)) else [U]
    out = set()
    for u in universes:
        out.update(u.elements)
    return sorted(out, key=FpfInvolution.sort_key)


def canonical_basis(U, variant: str = "M") -> dict[FpfInvolution, ModuleElement]:
    """
    The bar-invariant basis `M_x + sum_{w < x} v^{-1} Z[v^{-1}] M_w` over the
    elements of one universe (or a list of universes).

    For each `x`, the coefficients `m_w` are found in decreasing height of `w`
    from `m_w - bar(m_w) = sum_{u > w} bar(m_u) r_{w,u}`, where `r_{w,u}` is
    the coefficient of `M_w` in `bar(M_u)`.
    """
    verts = _vertices(U)
    r = {u: bar_basis(variant, u) for u in verts}
    out = {}
    for x in verts:
        m: dict[FpfInvolution, LaurentPoly] = {x: ONE}
        lower = [w for w in verts if w.height < x.height and w.sign == x.sign]
        for w in sorted(lower, key=lambda y: (-y.height, y.window)):
            q = LaurentPoly()
            for u, mu_ in m.items():
                q = q + mu_.bar() * r[u].coeff(w)
            if q.coeff(0) or q.bar() != -q:
                raise CanonicalBasisError(f"correction term {q} at {w} for {x} is not antisymmetric")
            if q:
                m[w] = q.negative_part()
        out[x] = ModuleElement(variant, m)
    return out


def canonical_basis_json(cb: Mapping[FpfInvolution, ModuleElement]) -> list[dict]:
    return [
        {"z": list(x.window),
         "terms": [{"w": list(w.window), "poly": cb[x].terms[w].to_json()} for w in cb[x].support()]}
        for x in sorted(cb, key=FpfInvolution.sort_key)
    ]


def mu(cb: Mapping[FpfInvolution, ModuleElement], x: FpfInvolution, y: FpfInvolution) -> int:
    """Coefficient of `v^{-1}` in the coefficient of `x` in the canonical element of `y`."""
    if y not in cb:
        return 0
    return cb[y].coeff(x).coeff(-1)


def tau(variant: str, x: FpfInvolution) -> frozenset[int]:
    """`{s : s x s <=_F x}` for M and `{s : x <=_F s x s}` for N (non-strict)."""
    out = set()
    for s in range(1, x.n + 1):
        h = conj_simple(x, s).height
        if (h <= x.height) if variant == "M" else (h >= x.height):
            out.add(s)
    return frozenset(out)


@dataclass
class WGraph:
    variant: str
    vertices: list
    tau: dict
    edges: dict          # (x, y) -> omega(x, y), nonzero only
    truncated: bool

    def to_json(self) -> dict:
        idx = {v: k for k, v in enumerate(self.vertices)}
        return {
            "variant": self.variant,
            "truncated": self.truncated,
            "vertices": [{"z": list(v.window), "tau": sorted(self.tau[v])} for v in self.vertices],
            "edges": sorted([idx[x], idx[y], w] for (x, y), w in self.edges.items()),
        }


def w_graph(U, variant: str = "M", cb: Mapping | None = None) -> WGraph:
    """
    Edges `x -> y` weighted by `omega(x, y) = mu(x, y) + mu(y, x)` when
    `tau(x)` is not contained in `tau(y)`, and 0 otherwise.
    """
    verts = _vertices(U)
    cb = cb if cb is not None else canonical_basis(U, variant)
    taus = {x: tau(variant, x) for x in verts}
    edges = {}
    for x in verts:
        for y in verts:
            if x == y or taus[x] <= taus[y]:
                continue
            w = mu(cb, x, y) + mu(cb, y, x)
            if w:
                edges[(x, y)] = w
    vs = set(verts)
    truncated = any(conj_simple(x, s) not in vs for x in verts for s in range(1, x.n + 1))
    return WGraph(variant, verts, taus, edges, truncated)


def strongly_connected_components(vertices: Sequence, succ: Mapping) -> list[list]:
    """Iterative Tarjan; components and their members come out in a deterministic order."""
    order = {v: k for k, v in enumerate(vertices)}
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    comps: list[list] = []
    counter = 0
    for root in vertices:
        if root in index:
            continue
        work = [(root, iter(succ.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp, key=order.__getitem__))
    return sorted(comps, key=lambda c: order[c[0]])


def cells(g: WGraph) -> list[list]:
    succ: dict = {v: [] for v in g.vertices}
    for x, y in g.edges:
        succ[x].append(y)
    return strongly_connected_components(g.vertices, succ)


def molecules(g: WGraph) -> list[list]:
    """Connected components of the graph keeping only edges present in both directions."""
    succ: dict = {v: [] for v in g.vertices}
    for x, y in g.edges:
        if (y, x) in g.edges:
            succ[x].append(y)
    return strongly_connected_components(g.vertices, succ)
