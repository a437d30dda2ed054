"""
Integer lattices in row Hermite normal form, and the spans of FPF Stanley
functions they are used to study.

>>> L = hnf([[2, 0], [0, 2]])
>>> L.rank, span_contains(L, [4, 2]), span_contains(L, [1, 0])
(2, True, False)
>>> span_equal(L, hnf([[1, 0], [0, 1]]))
False
>>> hnf([[4, 6], [6, 9]]).basis
((2, 3),)
"""

from __future__ import annotations

__all__ = [
    "IntLattice", "hnf", "span_contains", "span_equal", "coordinates",
    "coefficient_vector", "degree_partitions", "fpf_generators", "fpf_span",
    "positive_basis_search", "conjecture_reports", "EVIDENCE_LABEL",
]

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .fpf import FpfInvolution, atoms, fpf_stanley
from .order import DEFAULT_MAX_ELEMENTS, build_universe
from .symfunc import MonomialExpansion, omega_plus, partitions, stanley_expand

EVIDENCE_LABEL = "evidence, not proof"


@dataclass(frozen=True)
class IntLattice:
    dim: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def pivots(self) -> list[int]:
        return [next(c for c, x in enumerate(row) if x) for row in self.basis]


def hnf(rows: Iterable[Sequence[int]], dim: int | None = None) -> IntLattice:
    """
    Row Hermite normal form: echelon rows, positive pivots, and entries above
    each pivot reduced into `[0, pivot)`.  Zero rows are dropped.
    """
    M = [list(map(int, r)) for r in rows]
    if dim is None:
        if not M:
            raise ValueError("empty matrix needs an explicit dim")
        dim = len(M[0])
    for r in M:
        if len(r) != dim:
            raise ValueError(f"row of length {len(r)} in a matrix of width {dim}")
    out: list[list[int]] = []
    pivots: list[int] = []
    rest = [r for r in M if any(r)]
    for c in range(dim):
        active = [r for r in rest if r[c]]
        if not active:
            continue
        others = [r for r in rest if not r[c]]
        # Euclid on column c until one row is left with a nonzero entry
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[c] // piv[c]
                r2 = [a - q * b for a, b in zip(r, piv)]
                if r2[c]:
                    nxt.append(r2)
                elif any(r2):
                    others.append(r2)
            active = nxt
        piv = active[0]
        if piv[c] < 0:
            piv = [-a for a in piv]
        for k, prev in enumerate(out):
            q = prev[c] // piv[c]
            if q:
                out[k] = [a - q * b for a, b in zip(prev, piv)]
        out.append(piv)
        pivots.append(c)
        rest = others
    return IntLattice(dim, tuple(tuple(r) for r in out))


def span_contains(L: IntLattice, v: Sequence[int]) -> bool:
    if len(v) != L.dim:
        raise ValueError(f"vector of length {len(v)} against lattice of dim {L.dim}")
    v = list(v)
    for row, c in zip(L.basis, L.pivots()):
        if any(v[:c]):
            return False
        q, r = divmod(v[c], row[c])
        if r:
            return False
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def span_equal(A: IntLattice, B: IntLattice) -> bool:
    if A.dim != B.dim:
        raise ValueError(f"dimension mismatch {A.dim} != {B.dim}")
    return A.basis == B.basis


def coordinates(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[Fraction] | None:
    """Rational `x` with `sum x_k basis_k = v` for independent `basis`, or None."""
    r = len(basis)
    dim = len(v)
    # columns are basis vectors; augmented with v
    A = [[Fraction(basis[k][i]) for k in range(r)] + [Fraction(v[i])] for i in range(dim)]
    row = 0
    piv_cols = []
    for c in range(r):
        p = next((i for i in range(row, dim) if A[i][c]), None)
        if p is None:
            return None
        A[row], A[p] = A[p], A[row]
        inv = 1 / A[row][c]
        A[row] = [a * inv for a in A[row]]
        for i in range(dim):
            if i != row and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[row])]
        piv_cols.append(c)
        row += 1
    if any(A[i][r] for i in range(row, dim)):
        return None
    return [A[k][r] for k in range(r)]


def degree_partitions(n: int, degree: int) -> list[tuple[int, ...]]:
    """Coordinates for degree-`degree` vectors: partitions with parts `< n`, lex decreasing."""
    return list(partitions(degree, n - 1))


def coefficient_vector(e: MonomialExpansion, parts: Sequence[tuple[int, ...]]) -> tuple[int, ...]:
    return tuple(e[lam] for lam in parts)


def fpf_generators(n: int, Lmax: int, degree: int, restrict_finite: bool = False,
                   max_elements: int = DEFAULT_MAX_ELEMENTS) -> list[FpfInvolution]:
    """All FPF involutions of both signs with height at most `max(Lmax, degree)`."""
    H = max(Lmax, degree)
    out = []
    for sign in (1, -1):
        U = build_universe(n, sign, H, max_elements)
        out += [z for z in U.elements
                if not restrict_finite or all(1 <= v <= n for v in z.window)]
    return sorted(out, key=FpfInvolution.sort_key)


def fpf_span(n: int, Lmax: int, degree: int, restrict_finite: bool = False,
             max_elements: int = DEFAULT_MAX_ELEMENTS) -> IntLattice:
    """Lattice spanned by the degree-`degree` coefficient vectors of the FPF Stanley functions."""
    if n % 2:
        raise ValueError(f"n must be even, got {n}")
    parts = degree_partitions(n, degree)
    rows = []
    for z in fpf_generators(n, Lmax, degree, restrict_finite, max_elements):
        e = fpf_stanley(z)
        if e.degree == degree:
            rows.append(coefficient_vector(e, parts))
    return hnf(rows, dim=len(parts))


def positive_basis_search(vectors: Sequence[Sequence[int]], max_subsets: int = 100_000) -> dict:
    """
    Look for a subset of `vectors` that is a basis of their span in which every
    vector has nonnegative integer coordinates.
    """
    distinct = sorted(set(tuple(v) for v in vectors if any(v)), reverse=True)
    if not distinct:
        return {"status": "found", "basis": [], "subsets_tried": 0}
    dim = len(distinct[0])
    target = hnf(distinct, dim=dim)
    r = target.rank
    tried = 0
    for subset in itertools.combinations(distinct, r):
        tried += 1
        if tried > max_subsets:
            return {"status": "search-bound-exhausted", "basis": None, "subsets_tried": tried - 1}
        if not span_equal(hnf(subset, dim=dim), target) or hnf(subset, dim=dim).rank != r:
            continue
        ok = True
        for v in distinct:
            x = coordinates(subset, v)
            if x is None or any(c < 0 or c.denominator != 1 for c in x):
                ok = False
                break
        if ok:
            return {"status": "found", "basis": [list(v) for v in subset], "subsets_tried": tried}
    return {"status": "not-found", "basis": None, "subsets_tried": tried}


def _omega_checks(z: FpfInvolution) -> tuple[bool, bool]:
    f = fpf_stanley(z)
    inv_sum = MonomialExpansion.zero(z.n, z.height)
    for a in sorted(atoms(z), key=lambda w: w.window):
        inv_sum = inv_sum + stanley_expand(a.inverse())
    return omega_plus(f) == f, inv_sum == f


def conjecture_reports(n: int, Dmax: int, max_subsets: int = 100_000,
                       nesting: bool = False, max_elements: int = DEFAULT_MAX_ELEMENTS) -> dict:
    """
    Per-degree lattice ranks and bounded checks of the open questions about
    FPF Stanley functions, through degree `Dmax`.  Every degree component is
    computed exactly (only height-`d` elements contribute in degree `d`), but
    the conclusions are finite evidence only.
    """
    if n % 2:
        raise ValueError(f"n must be even, got {n}")
    gens = fpf_generators(n, Dmax, Dmax, max_elements=max_elements)
    degrees = []
    omega_fail = None
    omega_checked = 0
    pos = []
    for d in range(Dmax + 1):
        parts = degree_partitions(n, d)
        layer = [z for z in gens if z.height == d]
        vecs = [coefficient_vector(fpf_stanley(z), parts) for z in layer]
        finite = [v for z, v in zip(layer, vecs) if all(1 <= x <= n for x in z.window)]
        L = hnf(vecs, dim=len(parts))
        Lf = hnf(finite, dim=len(parts))
        bad = []
        for z in layer:
            omega_checked += 1
            inv_ok, sum_ok = _omega_checks(z)
            if not (inv_ok and sum_ok):
                bad.append(list(z.window))
        if bad and omega_fail is None:
            omega_fail = bad[0]
        search = positive_basis_search(vecs, max_subsets)
        pos.append({"degree": d, **{k: search[k] for k in ("status", "subsets_tried")}})
        degrees.append({
            "n": n,
            "degree": d,
            "rank": L.rank,
            "rank_finite": Lf.rank,
            "ambient": len(parts),
            "finite_equals_full": span_equal(L, Lf),
            "generators": len(layer),
            "truncation": {"n": n, "Lmax": Dmax, "degree": d},
            "verdict": "falsified" if bad else "consistent",
            "witness": bad[0] if bad else None,
        })
    report = {
        "label": EVIDENCE_LABEL,
        "n": n,
        "Dmax": Dmax,
        "degrees": degrees,
        "omega_plus_invariance": {
            "statement": "omega+ fixes every FPF Stanley function; equivalently the sum over inverse atoms agrees",
            "checked": omega_checked,
            "truncation": {"n": n, "Lmax": Dmax},
            "verdict": "falsified" if omega_fail else "consistent",
            "witness": omega_fail,
        },
        "positive_basis": {
            "statement": "some subset of the FPF Stanley functions is a basis with nonnegative integer expansions",
            "note": "bounded subset search per degree; a basis of a graded span splits by degree",
            "per_degree": pos,
            "found_in_every_degree": all(p["status"] == "found" for p in pos),
        },
        "all_involutions_equal_fpf": {
            "verdict": "out-of-scope",
            "note": "needs Stanley functions of general affine involutions, which are not implemented",
        },
        "odd_nesting": {
            "verdict": "out-of-scope",
            "note": "needs Stanley functions of general affine involutions, which are not implemented",
        },
    }
    if nesting:
        report["fpf_nesting"] = _nesting_report(n, Dmax, max_elements)
    return report


def _nesting_report(n: int, Dmax: int, max_elements: int) -> dict:
    """Does the degree-`d` span for `n` fail to sit inside the span for `n + 2`?"""
    per = []
    witness = None
    for d in range(Dmax + 1):
        big_parts = degree_partitions(n + 2, d)
        small = [coefficient_vector(fpf_stanley(z), big_parts)
                 for z in fpf_generators(n, d, d, max_elements=max_elements) if z.height == d]
        L = fpf_span(n + 2, d, d, max_elements=max_elements)
        outside = [v for v in small if not span_contains(L, v)]
        per.append({"degree": d, "not_contained": bool(outside)})
        if outside and witness is None:
            witness = {"degree": d, "vector": list(outside[0])}
    return {
        "statement": f"the FPF span for n={n} is not contained in the FPF span for n={n + 2}",
        "per_degree": per,
        "verdict": "consistent" if witness else "no-witness-within-bound",
        "witness": witness,
    }
