"""
Command-line interface.

Every verb builds a JSON-serializable payload plus a short text rendering.
Payloads are cached on disk under a content address made from the verb, its
canonical arguments and the library version; a random sample of cache hits is
recomputed and compared.

Exit codes: 0 success or pass, 1 falsification or inequality, 2 usage or
internal error.
"""

from __future__ import annotations

__all__ = ["main", "build_parser", "run", "ResultCache", "UsageError"]

import argparse
import hashlib
import json
import os
import random
import sys
from pathlib import Path
from typing import Callable

from . import __version__
from .affine_group import (
    InvalidWindowError, bruhat_leq, code, from_window, length, parse_window, right_descents, shape,
)
from .fpf import (
    NotFpfError, alpha_max, alpha_min, atom_poset, atoms, fpf_code, fpf_stanley, nu, parse_fpf,
    visible_descents,
)
from .hecke import canonical_basis, canonical_basis_json, cells, molecules, w_graph
from .order import (
    DEFAULT_MAX_ELEMENTS, ResourceLimitError, build_universe, bruhat_leq_F,
    scan_completeness_check, verify_qp1, verify_qp2,
)
from .symfunc import stanley_expand
from .transition import check_transition_affine, check_transition_fpf
from .zlattice import conjecture_reports

CACHE_ENV = "AFFINE_FPF_CACHE"
AUDIT_ENV = "AFFINE_FPF_AUDIT"
DEFAULT_MAX_HEIGHT = 8
DEFAULT_AUDIT_RATE = 0.1


class UsageError(ValueError):
    """Bad arguments that argparse itself cannot detect."""


def dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


class ResultCache:
    def __init__(self, root: Path | None, audit_rate: float = DEFAULT_AUDIT_RATE):
        self.root = root
        self.audit_rate = audit_rate

    @staticmethod
    def key(verb: str, args: dict) -> str:
        blob = dumps({"verb": verb, "args": args, "version": __version__})
        return hashlib.sha256(blob.encode()).hexdigest()

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def get(self, key: str):
        if self.root is None:
            return None
        p = self._path(key)
        if not p.exists():
            return None
        try:
            return json.loads(p.read_text())
        except (OSError, json.JSONDecodeError):
            return None

    def put(self, key: str, entry: dict) -> None:
        if self.root is None:
            return
        p = self._path(key)
        p.parent.mkdir(parents=True, exist_ok=True)
        tmp = p.with_suffix(".tmp")
        tmp.write_text(dumps(entry))
        tmp.replace(p)

    def drop(self, key: str) -> None:
        if self.root is not None:
            self._path(key).unlink(missing_ok=True)


def _default_cache_dir() -> Path:
    if os.environ.get(CACHE_ENV):
        return Path(os.environ[CACHE_ENV])
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "affine-fpf"


def _perm(text: str, n: int | None):
    values = parse_window(text)
    if n is not None and n != len(values):
        raise UsageError(f"window {text} has {len(values)} entries but --n is {n}")
    return from_window(len(values), values)


def _sign(text: str) -> int:
    if text in ("+", "+1", "1", "plus"):
        return 1
    if text in ("-", "-1", "minus"):
        return -1
    raise UsageError(f"sign must be + or -, got {text!r}")


def _check_height(h: int, opts) -> None:
    if h > opts.max_height:
        raise ResourceLimitError(f"height {h} exceeds --max-height {opts.max_height}")


def _fmt_set(xs) -> str:
    return "{" + ", ".join(str(x) for x in xs) + "}"


# each handler returns (payload, text, exit_code)

def cmd_expand(a, opts):
    w = _perm(a.w, a.n)
    _check_height(length(w), opts)
    e = stanley_expand(w)
    return e.to_json(), str(e), 0


def cmd_fpf_expand(a, opts):
    z = parse_fpf(a.w, a.n)
    _check_height(z.height, opts)
    e = fpf_stanley(z)
    return e.to_json(), str(e), 0


def cmd_atoms(a, opts):
    z = parse_fpf(a.w, a.n)
    _check_height(z.height, opts)
    P = atom_poset(z)
    A = sorted(atoms(z), key=lambda w: w.window)
    payload = {
        "z": list(z.window),
        "height": z.height,
        "sign": z.sign,
        "atoms": [list(w.window) for w in A],
        "alpha_min": list(alpha_min(z).window),
        "alpha_max": list(alpha_max(z).window),
        "covers": sorted([list(u.window), list(v.window)] for u, v in P.edges),
    }
    text = "\n".join([f"{len(A)} atoms of {z} (height {z.height}, sign {z.sign:+d})"]
                     + [f"  {w}" for w in A]
                     + [f"min {alpha_min(z)}  max {alpha_max(z)}"])
    return payload, text, 0


def cmd_code(a, opts):
    if a.fpf:
        z = parse_fpf(a.w, a.n)
        c, d = fpf_code(z), sorted(visible_descents(z))
        payload = {"z": list(z.window), "code": list(c), "descents": d, "shape": list(nu(z))}
        return payload, f"code {c}  visible descents {_fmt_set(d)}  nu {nu(z)}", 0
    w = _perm(a.w, a.n)
    c, d = code(w), sorted(right_descents(w))
    payload = {"w": list(w.window), "code": list(c), "descents": d, "shape": list(shape(w))}
    return payload, f"code {c}  descents {_fmt_set(d)}  shape {shape(w)}", 0


def cmd_shape(a, opts):
    if a.fpf:
        z = parse_fpf(a.w, a.n)
        return {"z": list(z.window), "shape": list(nu(z))}, str(nu(z)), 0
    w = _perm(a.w, a.n)
    return {"w": list(w.window), "shape": list(shape(w))}, str(shape(w)), 0


def _universe(a, opts, sign=None):
    _check_height(a.Lmax, opts)
    return build_universe(a.n, _sign(a.sign) if sign is None else sign, a.Lmax, opts.max_elements)


def cmd_universe(a, opts):
    U = _universe(a, opts)
    text = "\n".join(f"{z} height {z.height}: covers {_fmt_set(sorted(str(y) for _, y in U.covers[z]))}"
                     for z in U.elements)
    return U.to_json(), text, 0


def cmd_qp_verify(a, opts):
    U = _universe(a, opts)
    reps = [verify_qp1(U), verify_qp2(U), scan_completeness_check(U)]
    ok = all(r.ok for r in reps)
    payload = {"n": U.n, "sign": a.sign, "Lmax": U.Lmax, "elements": len(U),
               "checks": [r.to_json() for r in reps], "ok": ok}
    text = "\n".join(f"{r.name}: {'pass' if r.ok else 'FAIL ' + dumps(r.witness)} ({r.checked} checked)"
                     for r in reps)
    return payload, text, 0 if ok else 1


def cmd_bruhat(a, opts):
    if a.fpf:
        y, z = parse_fpf(a.y, a.n), parse_fpf(a.z, a.n)
        if y.n != z.n:
            raise UsageError("y and z have different n")
        if y.sign != z.sign:
            leq_f = False
        else:
            h = max(y.height, z.height)
            _check_height(h, opts)
            U = build_universe(y.n, y.sign, h, opts.max_elements)
            leq_f = bruhat_leq_F(U, y, z)
        leq = bruhat_leq(y.perm, z.perm)
        payload = {"y": list(y.window), "z": list(z.window), "leq_F": leq_f, "leq": leq}
        return payload, f"y <=_F z: {leq_f}   y <= z: {leq}", 0
    y, z = _perm(a.y, a.n), _perm(a.z, a.n)
    leq = bruhat_leq(y, z)
    return {"y": list(y.window), "z": list(z.window), "leq": leq}, f"y <= z: {leq}", 0


def cmd_canonical_basis(a, opts):
    U = _universe(a, opts)
    cb = canonical_basis(U, a.variant)
    data = canonical_basis_json(cb)
    text = "\n".join(f"{x}: {cb[x]}" for x in U.elements)
    return {"variant": a.variant, "basis": data}, text, 0


def cmd_wgraph_cells(a, opts):
    if a.sign == "both":
        Us = [_universe(a, opts, 1), _universe(a, opts, -1)]
    else:
        Us = _universe(a, opts)
    g = w_graph(Us, a.variant)
    cs, ms = cells(g), molecules(g)
    payload = {"graph": g.to_json(),
               "cells": [[list(v.window) for v in c] for c in cs],
               "molecules": [[list(v.window) for v in c] for c in ms],
               "truncated": g.truncated}
    text = "\n".join([f"{len(cs)} cells{' (truncated universe)' if g.truncated else ''}"]
                     + [f"  {_fmt_set(c)}" for c in cs])
    return payload, text, 0


def cmd_transition(a, opts):
    if a.kind == "fpf":
        y = parse_fpf(a.y, a.n)
        _check_height(y.height + 1, opts)
        rep = check_transition_fpf(y, a.p)
        lhs_name, rhs_name = f"Pi-(y,{a.p})", f"Pi+(y,{y(a.p)})"
    else:
        w = _perm(a.w, a.n)
        _check_height(length(w) + 1, opts)
        rep = check_transition_affine(w, a.r)
        lhs_name, rhs_name = f"Phi-_{a.r}", f"Phi+_{a.r}"
    key = lambda x: x.window
    text = "\n".join([
        f"{lhs_name} = {_fmt_set(sorted(rep.left, key=key))}",
        f"{rhs_name} = {_fmt_set(sorted(rep.right, key=key))}",
        f"left  = {rep.left_sum}",
        f"right = {rep.right_sum}",
        "equal" if rep.equal else "NOT EQUAL",
    ])
    ok = rep.equal and rep.rescan_agrees
    return rep.to_json(), text, 0 if ok else 1


def cmd_conjectures(a, opts):
    _check_height(a.Dmax, opts)
    r = conjecture_reports(a.n, a.Dmax, max_subsets=a.max_subsets, nesting=a.nesting,
                           max_elements=opts.max_elements)
    lines = [f"[{r['label']}] n={r['n']} Dmax={r['Dmax']}"]
    for d in r["degrees"]:
        lines.append(f"  degree {d['degree']}: rank {d['rank']} of {d['ambient']} "
                     f"(finite part {d['rank_finite']}), omega+ check {d['verdict']}")
    lines.append(f"omega+ invariance: {r['omega_plus_invariance']['verdict']}")
    lines.append(f"positive basis found in every degree: {r['positive_basis']['found_in_every_degree']}")
    falsified = r["omega_plus_invariance"]["verdict"] == "falsified"
    return r, "\n".join(lines), 1 if falsified else 0


VERBS: dict[str, Callable] = {
    "expand": cmd_expand,
    "fpf-expand": cmd_fpf_expand,
    "atoms": cmd_atoms,
    "code": cmd_code,
    "shape": cmd_shape,
    "universe": cmd_universe,
    "qp-verify": cmd_qp_verify,
    "bruhat": cmd_bruhat,
    "canonical-basis": cmd_canonical_basis,
    "wgraph-cells": cmd_wgraph_cells,
    "transition": cmd_transition,
    "conjectures": cmd_conjectures,
}


def build_parser() -> argparse.ArgumentParser:
    def common_options(suppress: bool) -> argparse.ArgumentParser:
        # subcommands repeat the global options; SUPPRESS keeps them from
        # overwriting values given before the verb
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        c = argparse.ArgumentParser(add_help=False)
        c.add_argument("--json", action="store_true", default=d(False), help="emit canonical JSON")
        c.add_argument("--max-elements", type=int, default=d(DEFAULT_MAX_ELEMENTS),
                       help=f"cap on universe size (default {DEFAULT_MAX_ELEMENTS})")
        c.add_argument("--max-height", type=int, default=d(DEFAULT_MAX_HEIGHT),
                       help=f"cap on heights and lengths (default {DEFAULT_MAX_HEIGHT})")
        c.add_argument("--cache-dir", type=Path, default=d(None),
                       help=f"result cache directory (default ${CACHE_ENV} or ~/.cache/affine-fpf)")
        c.add_argument("--no-cache", action="store_true", default=d(False),
                       help="do not read or write the cache")
        return c

    common = common_options(True)

    p = argparse.ArgumentParser(prog="affine-fpf", parents=[common_options(False)],
                                description="Affine FPF-involution Stanley symmetric functions.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, help_):
        return sub.add_parser(name, help=help_, description=help_, parents=[common])

    def window_args(sp, fpf_flag=False, name="--w"):
        sp.add_argument(name, required=True, help='window like "[3,0,5,2]"'
                        + (' or cycles like "t(1,6)t(3,8)"' if fpf_flag else ""))
        sp.add_argument("--n", type=int, default=None, help="period (needed for cycle notation)")

    sp = verb("expand", "monomial expansion of an affine Stanley function")
    window_args(sp)
    sp = verb("fpf-expand", "monomial expansion of an FPF-involution Stanley function")
    window_args(sp, True)
    sp = verb("atoms", "atoms of an FPF involution and their order")
    window_args(sp, True)
    for name, help_ in (("code", "code, descents and shape"), ("shape", "shape partition")):
        sp = verb(name, help_)
        window_args(sp, True)
        sp.add_argument("--fpf", action="store_true", help="treat the input as an FPF involution")

    def universe_args(sp, both=False):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--sign", default="+", help="+ or -" + (" or both" if both else ""))
        sp.add_argument("--Lmax", type=int, required=True, help="height bound")

    universe_args(verb("universe", "bounded universe with its cover relation"))
    universe_args(verb("qp-verify", "check the quasiparabolic axioms on a bounded universe"))
    sp = verb("bruhat", "compare two elements in Bruhat order")
    sp.add_argument("--y", required=True)
    sp.add_argument("--z", required=True)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--fpf", action="store_true", help="also compare in the FPF order")
    sp = verb("canonical-basis", "canonical basis of the M or N module on a bounded universe")
    universe_args(sp)
    sp.add_argument("--variant", choices=["M", "N"], default="M")
    sp = verb("wgraph-cells", "cells and molecules of the W-graph on a bounded universe")
    universe_args(sp, both=True)
    sp.add_argument("--variant", choices=["M", "N"], default="M")

    sp = verb("transition", "check a transition identity")
    tsub = sp.add_subparsers(dest="kind", required=True)
    tf = tsub.add_parser("fpf", parents=[common], help="FPF version: Pi-(y,p) against Pi+(y,y(p))")
    tf.add_argument("--y", required=True)
    tf.add_argument("--p", type=int, required=True)
    tf.add_argument("--n", type=int, default=None)
    tl = tsub.add_parser("lam", parents=[common], help="affine version: Phi-_r(w) against Phi+_r(w)")
    tl.add_argument("--w", required=True)
    tl.add_argument("--r", type=int, required=True)
    tl.add_argument("--n", type=int, default=None)

    sp = verb("conjectures", "bounded evidence for the open questions on FPF spans")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--Dmax", type=int, required=True)
    sp.add_argument("--max-subsets", type=int, default=100_000)
    sp.add_argument("--nesting", action="store_true", help="also compare against n + 2")
    return p


_OPTION_KEYS = {"json", "max_elements", "max_height", "cache_dir", "no_cache", "verb"}


def _canonical_args(ns: argparse.Namespace) -> dict:
    out = {}
    for k, v in sorted(vars(ns).items()):
        if k in _OPTION_KEYS:
            continue
        if isinstance(v, str) and v.lstrip().startswith("["):
            v = parse_window(v)
        out[k] = v
    return out


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    handler = VERBS[ns.verb]
    cache = ResultCache(None if ns.no_cache else (ns.cache_dir or _default_cache_dir()),
                        float(os.environ.get(AUDIT_ENV, DEFAULT_AUDIT_RATE)))
    try:
        key = ResultCache.key(ns.verb, _canonical_args(ns))
        entry = cache.get(key)
        if entry is not None and random.random() < cache.audit_rate:
            payload, text, code_ = handler(ns, ns)
            fresh = {"payload": payload, "text": text, "exit": code_}
            if json.loads(dumps(fresh)) != entry:
                cache.drop(key)
                print("internal error: cached result differs from recomputation; entry dropped", file=err)
                return 2
        if entry is None:
            payload, text, code_ = handler(ns, ns)
            entry = json.loads(dumps({"payload": payload, "text": text, "exit": code_}))
            try:
                cache.put(key, entry)
            except OSError as e:
                print(f"warning: could not write cache: {e}", file=err)
    except (InvalidWindowError, NotFpfError, UsageError, ResourceLimitError) as e:
        print(f"error: {e}", file=err)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=err)
        return 2
    except Exception as e:  # pragma: no cover - reported, never a partial answer
        print(f"internal error: {type(e).__name__}: {e}", file=err)
        return 2
    print(dumps(entry["payload"]) if ns.json else entry["text"], file=out)
    return entry["exit"]


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
