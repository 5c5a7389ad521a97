"""Command-line front end.

One binary, subcommand style.  Every subcommand takes ``--json`` for a
schema-stable machine-readable report (keys sorted, two-space indent,
byte-identical across repeated runs with the same inputs and seed) and
renders a short human summary otherwise.  Exit codes: 0 success, 1
domain error (structured ``{"error", "detail"}`` under ``--json``), 2
usage error.  ``--verify-oracle`` reruns the matching brute-force
oracle and exits 1 on any disagreement.

Group arguments accept presets before file paths: ``trivial``,
``cyclicN``, ``dihedralN`` (order 2N), ``symmetricN`` (N <= 4),
``quaternion8``/``q8``, ``klein4``, products of cyclics like ``c2xc4``,
and otherwise a path to a JSON file ``{"name": ..., "table": [[...]]}``.

JSON expression grammar used by ``resolution``: level-1 words are
``[[symbol, +-1], ...]``, level-2 crossed elements are
``[[word, generator, +-1], ...]``, level-3 module sums are
``[[word, generator, coefficient], ...]``.

Complex files: ``{"objects": [...], "dim": N, "levels": [{"n": 1,
"groupoid": {"src": [...], "tgt": [...], "comp": [[...]]}}, {"n": 2,
"groups": {"x": [[...]]}, "boundary": {"x": [...]}, "action":
{"arrow": [...]}}, ...]}``.  Morphism files: ``{"source": <complex>,
"target": <complex>, "morphism": {"obj_map": [...], "arrow_map":
[...], "maps": {"n": {"x": [...]}}}}``.

``XCC_NO_NUMBA=1`` forces the pure-numpy kernels, ``XCC_THREADS``
caps the numba thread pool; ``xcc bench`` times both kernel paths.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time

import numpy as np

from . import __version__
from ._accel import HAS_NUMBA, USE_NUMBA
from .complexes import (CrossedComplex, CrsMorphism, is_fibration,
                        is_trivial_fibration, validate_complex,
                        validate_morphism)
from .errors import DomainError
from .exactseq import exact_sequence
from .extensions import (abstract_kernel, classify_extensions,
                         obstruction_class, outer_actions)
from .groups import (FiniteGroup, GroupHom, direct_product, inversion_module,
                     make_group, make_module, preset_group, trivial_module)
from .groupoids import FiniteGroupoid
from .homotopy import cohomology_group
from .oracle import (bar_cocycle_cohomology, brute_force_factor_sets,
                     exhaustive_isomorphism, find_any_factor_set)
from .resolutions import cyclic_resolution, standard_resolution


# ---------------------------------------------------------------------------
# input parsing

def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise DomainError("FileNotFound", path) from None
    except json.JSONDecodeError as e:
        raise DomainError("BadInputFile", f"{path}: {e}") from None


_CYCLIC_RE = re.compile(r"^c(?:yclic)?(\d+)$")
_DIHEDRAL_RE = re.compile(r"^d(?:ihedral)?(\d+)$")
_SYMMETRIC_RE = re.compile(r"^s(?:ymmetric)?(\d+)$")


def resolve_group(spec: str) -> FiniteGroup:
    """Preset name first, JSON file second."""
    s = spec.strip().lower()
    if s in ("trivial", "c1"):
        return preset_group("trivial")
    if s == "klein4":
        return preset_group("klein4")
    if s in ("q8", "quaternion8"):
        return preset_group("quaternion8")
    if "x" in s and all(_CYCLIC_RE.match(p) for p in s.split("x")):
        parts = [preset_group(f"cyclic {int(_CYCLIC_RE.match(p).group(1))}")
                 for p in s.split("x")]
        g = direct_product(*parts)
        g.name = "x".join(p.name for p in parts)
        return g
    for rx, kind in ((_CYCLIC_RE, "cyclic"), (_DIHEDRAL_RE, "dihedral"),
                     (_SYMMETRIC_RE, "symmetric")):
        m = rx.match(s)
        if m:
            return preset_group(f"{kind} {int(m.group(1))}")
    doc = _load_json(spec)
    if "table" not in doc:
        raise DomainError("BadInputFile", f"{spec}: no multiplication table")
    return make_group(doc["table"], name=doc.get("name", ""))


def complex_from_json(doc: dict) -> CrossedComplex:
    try:
        nobj = len(doc["objects"])
        dim = int(doc["dim"])
        levels = {int(lv["n"]): lv for lv in doc["levels"]}
        gpd = levels[1]["groupoid"]
        c1 = FiniteGroupoid(nobj, gpd["src"], gpd["tgt"], gpd["comp"])
        groups, boundary, action = {}, {}, {}
        for n in range(2, dim + 1):
            lv = levels[n]
            for x, tbl in lv["groups"].items():
                groups[(n, int(x))] = make_group(tbl)
            for x, b in lv["boundary"].items():
                boundary[(n, int(x))] = np.asarray(b, dtype=np.int64)
            for a, perm in lv["action"].items():
                action[(n, int(a))] = np.asarray(perm, dtype=np.int64)
    except (KeyError, TypeError, ValueError) as e:
        raise DomainError("BadInputFile", f"complex JSON: {e}") from None
    C = CrossedComplex(c1, dim, groups, boundary, action,
                       name=doc.get("name", ""))
    validate_complex(C)
    return C


def morphism_from_json(doc: dict) -> CrsMorphism:
    try:
        dom = complex_from_json(doc["source"])
        cod = complex_from_json(doc["target"])
        m = doc["morphism"]
        maps = {}
        for n, per_obj in m.get("maps", {}).items():
            for x, arr in per_obj.items():
                maps[(int(n), int(x))] = np.asarray(arr, dtype=np.int64)
        p = CrsMorphism(dom, cod, np.asarray(m["obj_map"], dtype=np.int64),
                        np.asarray(m["arrow_map"], dtype=np.int64), maps,
                        name=doc.get("name", ""))
    except (KeyError, TypeError, ValueError) as e:
        raise DomainError("BadInputFile", f"morphism JSON: {e}") from None
    validate_morphism(p)
    return p


def complex_to_json(C: CrossedComplex) -> dict:
    """Inverse of ``complex_from_json``, for writing input files."""
    doc = {"name": C.name, "objects": list(range(C.nobj)), "dim": C.dim,
           "levels": [{"n": 1, "groupoid": {"src": C.c1.src.tolist(),
                                            "tgt": C.c1.tgt.tolist(),
                                            "comp": C.c1.comp.tolist()}}]}
    for n in range(2, C.dim + 1):
        doc["levels"].append({
            "n": n,
            "groups": {str(x): C.group(n, x).table.tolist()
                       for x in range(C.nobj)},
            "boundary": {str(x): C.bmap(n, x).tolist()
                         for x in range(C.nobj)},
            "action": {str(a): C.act(n, a).tolist()
                       for a in range(C.c1.n_arrows)}})
    return doc


def morphism_to_json(p: CrsMorphism) -> dict:
    """Inverse of ``morphism_from_json``, for writing input files."""
    return {"name": p.name,
            "source": complex_to_json(p.dom),
            "target": complex_to_json(p.cod),
            "morphism": {"obj_map": p.obj_map.tolist(),
                         "arrow_map": p.arrow_map.tolist(),
                         "maps": {str(n): {str(x): p.map(n, x).tolist()
                                           for x in range(p.dom.nobj)}
                                  for n in range(2, p.dom.dim + 1)}}}


def _module_for(coeff: FiniteGroup, actor: FiniteGroup, action: str):
    if action == "trivial":
        return trivial_module(coeff, actor)
    if action == "inversion":
        return inversion_module(coeff, actor)
    doc = _load_json(action)
    if "act" not in doc:
        raise DomainError("BadInputFile", f"{action}: no act table")
    return make_module(coeff, actor, np.asarray(doc["act"], dtype=np.int64))


# ---------------------------------------------------------------------------
# rendering

def _emit(args, payload: dict, lines: list[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for ln in lines:
            print(ln)


def _cyclic_name(factors) -> str:
    if not factors:
        return "0"
    return " x ".join(f"Z/{f}" for f in factors)


def _word_json(w) -> list:
    return [[int(s), int(e)] for s, e in w.letters]


def _crossed_json(fc) -> list:
    return [[_word_json(t.conj), int(t.gen), int(t.sign)] for t in fc.terms]


def _sum_json(fs) -> list:
    items = sorted(fs.coeffs.items(),
                   key=lambda kv: (kv[0][0], kv[0][1].letters))
    return [[_word_json(w), int(g), int(c)] for (g, w), c in items]


# ---------------------------------------------------------------------------
# subcommands

def _cmd_check_complex(args) -> int:
    C = complex_from_json(_load_json(args.file))
    payload = {"ok": True, "dim": C.dim, "objects": C.nobj,
               "arrows": C.c1.n_arrows,
               "level_orders": {str(n): int(C.group(n, 0).order)
                                for n in range(2, C.dim + 1)},
               "reduced": bool(C.is_reduced)}
    _emit(args, payload,
          [f"complex: ok (dim {C.dim}, {C.nobj} object(s), "
           f"{C.c1.n_arrows} arrow(s))"])
    return 0


def _cmd_check_fibration(args) -> int:
    p = morphism_from_json(_load_json(args.file))
    fib = is_fibration(p)
    triv = is_trivial_fibration(p)
    payload = {"fibration": bool(fib), "fibration_reason": fib.reason,
               "trivial": bool(triv), "trivial_reason": triv.reason}
    yn = {True: "yes", False: "no"}
    _emit(args, payload,
          [f"fibration: {yn[bool(fib)]}, trivial: {yn[bool(triv)]}"]
          + ([f"  reason: {fib.reason}"] if not fib and fib.reason else [])
          + ([f"  trivial fails: {triv.reason}"] if fib and not triv and triv.reason else []))
    return 0


def _cmd_exactseq(args) -> int:
    p = morphism_from_json(_load_json(args.file))
    rep = exact_sequence(p)
    payload = rep.to_json()
    lines = [f"terms: {' -> '.join(t.label for t in rep.terms)}",
             f"exact: {'yes' if rep.ok else 'no'}"]
    lines += [f"  failure: {f}" for f in rep.failures]
    _emit(args, payload, lines)
    return 0


def _cmd_resolution(args) -> int:
    G = resolve_group(args.group)
    if args.style == "cyclic":
        F = cyclic_resolution(G, args.depth)
    else:
        F = standard_resolution(G, args.depth)
    payload = {"group": G.name, "style": args.style, "depth": F.depth,
               "basis_sizes": {str(n): len(F.basis[n])
                               for n in range(1, F.depth + 1)},
               "boundaries": {}}
    if F.depth >= 2:
        payload["boundaries"]["2"] = [_word_json(w) for w in F.d2]
    if F.depth >= 3:
        payload["boundaries"]["3"] = [_crossed_json(fc) for fc in F.d3]
    if F.depth >= 4:
        payload["boundaries"]["4"] = [_sum_json(s) for s in F.d4]
    lines = [f"{args.style} resolution of {G.name}, depth {F.depth}"]
    lines += [f"  level {n}: {len(F.basis[n])} generator(s)"
              for n in range(1, F.depth + 1)]
    _emit(args, payload, lines)
    return 0


def _cmd_cohomology(args) -> int:
    G = resolve_group(args.group)
    A = resolve_group(args.coeff)
    mod = _module_for(A, G, args.action)
    if args.theta == "id":
        theta = GroupHom(G, G, np.arange(G.order, dtype=np.int64))
    else:
        doc = _load_json(args.theta)
        theta = GroupHom(G, G, np.asarray(doc["image"], dtype=np.int64))
    if args.resolution == "cyclic":
        F = cyclic_resolution(G, args.dim + 1)
    else:
        F = standard_resolution(G, args.dim + 1)
    H = cohomology_group(F, theta, mod, args.dim)
    payload = H.to_json()
    payload.update({"group": G.name, "coeff": A.name, "action": args.action,
                    "dim": args.dim, "resolution": args.resolution,
                    "method": "kernel/image of resolution boundary systems"})
    lines = [_cyclic_name(H.factors)]
    if args.verify_oracle:
        rep = bar_cocycle_cohomology(A, G, mod.act, args.dim)
        payload["oracle"] = rep.to_json()
        agree = list(rep.verdict) == [int(f) for f in H.factors]
        payload["oracle_agrees"] = agree
        lines.append(f"oracle: {_cyclic_name(rep.verdict)} "
                     f"({'agrees' if agree else 'DISAGREES'})")
        if not agree:
            _emit(args, payload, lines)
            raise DomainError("OracleDisagreement",
                              f"pipeline {H.factors} vs oracle {rep.verdict}")
    _emit(args, payload, lines)
    return 0


def _outer_selection(K: FiniteGroup, G: FiniteGroup, spec: str):
    acts = outer_actions(K, G)
    if spec == "all":
        return list(enumerate(acts))
    try:
        idx = int(spec)
    except ValueError:
        raise DomainError("UnknownPreset",
                          f"--outer must be an index or 'all', got {spec!r}") from None
    if idx < 0 or idx >= len(acts):
        raise DomainError("BadShape",
                          f"outer action index {idx} out of range (found {len(acts)})")
    return [(idx, acts[idx])]


def _cmd_extensions_classify(args) -> int:
    K = resolve_group(args.kernel)
    G = resolve_group(args.quotient)
    chosen = _outer_selection(K, G, args.outer)
    reports = []
    lines = []
    for idx, act in chosen:
        kernel = abstract_kernel(K, G, act)
        r = classify_extensions(kernel)
        doc = r.to_json()
        doc["outer_index"] = idx
        doc["method"] = {
            "obstruction": "level-3 defect of the lifted outer action, "
                           "classified in H^3 of the centre module",
            "classes": "torsor orbit of a coboundary-corrected seed "
                       "factor set under H^2",
        }
        if args.verify_oracle:
            found = find_any_factor_set(K, G, act.image)
            agree = bool(found.verdict) == bool(r.obstruction.is_zero)
            doc["oracle_existence"] = found.to_json()
            if agree and r.obstruction.is_zero:
                part = brute_force_factor_sets(K, G, act.image)
                doc["oracle_classes"] = part.to_json()
                agree = part.verdict == len(r.classes)
            doc["oracle_agrees"] = agree
            if not agree:
                reports.append(doc)
                _emit(args, {"reports": reports}, ["oracle DISAGREES"])
                raise DomainError("OracleDisagreement",
                                  f"outer index {idx}: pipeline and oracle differ")
        reports.append(doc)
        lines.append(f"outer {idx} (psi {list(int(x) for x in act.image)}): "
                     f"obstruction {'zero' if r.obstruction.is_zero else 'NONZERO'}, "
                     f"{len(r.classes)} class(es)")
        for c in r.classes:
            lines.append(f"  {c.name} (order {c.extension.group.order})")
    _emit(args, {"kernel": K.name, "quotient": G.name, "reports": reports},
          lines)
    return 0


def _cmd_obstruction(args) -> int:
    K = resolve_group(args.kernel)
    G = resolve_group(args.quotient)
    chosen = _outer_selection(K, G, args.outer)
    rng = None if args.seed is None else np.random.default_rng(args.seed)
    reports = []
    lines = []
    if args.seed is not None:
        lines.append(f"seed: {args.seed}")
    for idx, act in chosen:
        kernel = abstract_kernel(K, G, act)
        cls = obstruction_class(kernel, rng)
        h3 = kernel.h3()
        reports.append({"outer_index": idx,
                        "psi": [int(x) for x in act.image],
                        "coords": [int(c) for c in cls.coords],
                        "is_zero": bool(cls.is_zero),
                        "h3_invariant_factors": [int(f) for f in h3.factors],
                        "seed": args.seed,
                        "method": "level-3 defect of the lifted outer action"})
        lines.append(f"outer {idx}: obstruction "
                     f"{'zero' if cls.is_zero else f'nonzero {list(cls.coords)}'} "
                     f"in {_cyclic_name(h3.factors)}")
    _emit(args, {"kernel": K.name, "quotient": G.name, "reports": reports},
          lines)
    return 0


def _cmd_oracle_iso(args) -> int:
    A = resolve_group(args.left)
    B = resolve_group(args.right)
    rep = exhaustive_isomorphism(A, B)
    _emit(args, rep.to_json(),
          [f"{A.name} {'=' if rep.isomorphic else '/='} {B.name} "
           f"({rep.searched} candidate(s) tried)"])
    return 0


def _cmd_oracle_cohomology(args) -> int:
    G = resolve_group(args.group)
    A = resolve_group(args.coeff)
    mod = _module_for(A, G, args.action)
    rep = bar_cocycle_cohomology(A, G, mod.act, args.dim)
    _emit(args, rep.to_json(), [_cyclic_name(rep.verdict)])
    return 0


def _cmd_oracle_factor_sets(args) -> int:
    K = resolve_group(args.kernel)
    G = resolve_group(args.quotient)
    chosen = _outer_selection(K, G, args.outer)
    reports = []
    lines = []
    for idx, act in chosen:
        rep = brute_force_factor_sets(K, G, act.image)
        doc = rep.to_json()
        doc["outer_index"] = idx
        reports.append(doc)
        lines.append(f"outer {idx}: {rep.counts['valid']} factor set(s), "
                     f"{rep.verdict} class(es)")
    _emit(args, {"reports": reports}, lines)
    return 0


def _cmd_oracle_find_factor_set(args) -> int:
    K = resolve_group(args.kernel)
    G = resolve_group(args.quotient)
    chosen = _outer_selection(K, G, args.outer)
    reports = []
    lines = []
    for idx, act in chosen:
        rep = find_any_factor_set(K, G, act.image)
        doc = rep.to_json()
        doc["outer_index"] = idx
        reports.append(doc)
        lines.append(f"outer {idx}: "
                     f"{'found' if rep.verdict else 'none exists'}")
    _emit(args, {"reports": reports}, lines)
    return 0


def _bench_cases():
    from .groups import preset_group as pg
    from .oracle import (_bar_rows, _dfs_packed, _left_act_perms, _pack_rows,
                         _scan_linear_jit, _scan_linear_py, _dfs_linear_jit,
                         _dfs_linear_py, DFS_MAX_OUT, ENUM_CAP)
    C2, C3, C4 = pg("cyclic 2"), pg("cyclic 3"), pg("cyclic 4")

    lp = _left_act_perms(C4, C3, trivial_module(C4, C3).act)
    packed = _pack_rows(_bar_rows(C3, 2))
    scan_args = (4, 9, C4.table, C4.inverse, lp) + tuple(packed)

    rows3 = _bar_rows(C4, 3)
    rl, tp, tps, tsg = _pack_rows(rows3)
    last_ptr, row_ids, row_ptr = _dfs_packed(rows3, 64)
    lp2 = _left_act_perms(C2, C4, trivial_module(C2, C4).act)
    dfs_args = (2, 64, C2.table, C2.inverse, lp2, row_ptr, tp, tps, tsg,
                last_ptr, row_ids, ENUM_CAP, DFS_MAX_OUT)

    return [
        ("flat scan, 262144 degree-2 cochains of C3 over C4",
         _scan_linear_jit, _scan_linear_py, scan_args,
         lambda r: list(int(x) for x in r)),
        ("pruned DFS, degree-3 cocycles of C4 over C2",
         _dfs_linear_jit, _dfs_linear_py, dfs_args,
         lambda r: list(int(x) for x in r[0])),
    ]


def _cmd_bench(args) -> int:
    cases = []
    lines = [f"numba available: {HAS_NUMBA}, active: {USE_NUMBA} "
             f"(XCC_NO_NUMBA disables, XCC_THREADS caps threads)"]
    for name, jit_fn, py_fn, fargs, norm in _bench_cases():
        t0 = time.perf_counter()
        ref = norm(py_fn(*fargs))
        t_py = time.perf_counter() - t0
        best_py = t_py
        for _ in range(args.repeat - 1):
            t0 = time.perf_counter()
            py_fn(*fargs)
            best_py = min(best_py, time.perf_counter() - t0)
        entry = {"case": name, "python_s": round(best_py, 6),
                 "numba_s": None, "speedup": None, "agree": None}
        if USE_NUMBA:
            got = norm(jit_fn(*fargs))          # includes compile on first call
            best_jit = None
            for _ in range(max(args.repeat, 1)):
                t0 = time.perf_counter()
                got = norm(jit_fn(*fargs))
                dt = time.perf_counter() - t0
                best_jit = dt if best_jit is None else min(best_jit, dt)
            entry["numba_s"] = round(best_jit, 6)
            entry["agree"] = got == ref
            if best_jit > 0:
                entry["speedup"] = round(best_py / best_jit, 1)
            if not entry["agree"]:
                raise DomainError("OracleDisagreement",
                                  f"bench case {name!r}: paths disagree")
        cases.append(entry)
        lines.append(f"  {name}")
        lines.append(f"    python {entry['python_s']:.4f}s"
                     + (f", numba {entry['numba_s']:.4f}s "
                        f"(x{entry['speedup']}, results agree)"
                        if entry["numba_s"] is not None else
                        " (numba inactive)"))
    _emit(args, {"numba_available": HAS_NUMBA, "numba_active": USE_NUMBA,
                 "repeat": args.repeat, "cases": cases}, lines)
    return 0


# ---------------------------------------------------------------------------
# argument wiring

def _add_json(sp):
    sp.add_argument("--json", action="store_true",
                    help="machine-readable report on stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="xcc",
        description="crossed-complex calculator: fibrations, resolutions, "
                    "cohomology, and extension classification")
    ap.add_argument("--version", action="version", version=f"xcc {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    chk = sub.add_parser("check", help="validate structures from JSON files")
    chks = chk.add_subparsers(dest="what", required=True)
    cc = chks.add_parser("complex", help="validate a crossed complex file")
    cc.add_argument("file")
    _add_json(cc)
    cc.set_defaults(fn=_cmd_check_complex)
    cf = chks.add_parser("fibration", help="fibration / trivial fibration check")
    cf.add_argument("file", help="JSON with source, target, morphism")
    _add_json(cf)
    cf.set_defaults(fn=_cmd_check_fibration)

    ex = sub.add_parser("exactseq", help="fibration exact sequence report")
    ex.add_argument("file", help="JSON with source, target, morphism")
    _add_json(ex)
    ex.set_defaults(fn=_cmd_exactseq)

    rs = sub.add_parser("resolution", help="dump a free crossed resolution")
    rs.add_argument("--group", required=True)
    rs.add_argument("--depth", type=int, default=4)
    rs.add_argument("--style", choices=("standard", "cyclic"),
                    default="standard")
    _add_json(rs)
    rs.set_defaults(fn=_cmd_resolution)

    ch = sub.add_parser("cohomology", help="H^n with module coefficients")
    ch.add_argument("--group", required=True)
    ch.add_argument("--coeff", required=True)
    ch.add_argument("--action", default="trivial",
                    help="trivial, inversion, or a JSON file with an act table")
    ch.add_argument("--theta", default="id",
                    help="id or a JSON file with an image array")
    ch.add_argument("--dim", type=int, choices=(2, 3), required=True)
    ch.add_argument("--resolution", choices=("standard", "cyclic"),
                    default="standard")
    ch.add_argument("--verify-oracle", action="store_true")
    _add_json(ch)
    ch.set_defaults(fn=_cmd_cohomology)

    et = sub.add_parser("extensions", help="extension classification")
    ets = et.add_subparsers(dest="what", required=True)
    ec = ets.add_parser("classify", help="classes of extensions of K by G")
    ec.add_argument("--kernel", required=True)
    ec.add_argument("--quotient", required=True)
    ec.add_argument("--outer", default="all",
                    help="outer action index, or 'all'")
    ec.add_argument("--verify-oracle", action="store_true")
    _add_json(ec)
    ec.set_defaults(fn=_cmd_extensions_classify)

    ob = sub.add_parser("obstruction", help="degree-3 obstruction class")
    ob.add_argument("--kernel", required=True)
    ob.add_argument("--quotient", required=True)
    ob.add_argument("--outer", default="all")
    ob.add_argument("--seed", type=int, default=None,
                    help="randomize the lift choices (class must not change)")
    _add_json(ob)
    ob.set_defaults(fn=_cmd_obstruction)

    orc = sub.add_parser("oracle", help="independent brute-force checks")
    orcs = orc.add_subparsers(dest="what", required=True)
    oi = orcs.add_parser("iso", help="exhaustive isomorphism test")
    oi.add_argument("--left", required=True)
    oi.add_argument("--right", required=True)
    _add_json(oi)
    oi.set_defaults(fn=_cmd_oracle_iso)
    oc = orcs.add_parser("cohomology", help="bar-cochain enumeration")
    oc.add_argument("--group", required=True)
    oc.add_argument("--coeff", required=True)
    oc.add_argument("--action", default="trivial")
    oc.add_argument("--dim", type=int, choices=(2, 3), required=True)
    _add_json(oc)
    oc.set_defaults(fn=_cmd_oracle_cohomology)
    of = orcs.add_parser("factor-sets", help="enumerate and partition factor sets")
    of.add_argument("--kernel", required=True)
    of.add_argument("--quotient", required=True)
    of.add_argument("--outer", default="all")
    _add_json(of)
    of.set_defaults(fn=_cmd_oracle_factor_sets)
    oe = orcs.add_parser("find-factor-set", help="existence-only DFS")
    oe.add_argument("--kernel", required=True)
    oe.add_argument("--quotient", required=True)
    oe.add_argument("--outer", default="all")
    _add_json(oe)
    oe.set_defaults(fn=_cmd_oracle_find_factor_set)

    bn = sub.add_parser("bench", help="time numba kernels against the fallbacks")
    bn.add_argument("--repeat", type=int, default=1)
    _add_json(bn)
    bn.set_defaults(fn=_cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except DomainError as e:
        if getattr(args, "json", False):
            print(json.dumps({"error": e.tag, "detail": e.detail},
                             sort_keys=True, indent=2))
        else:
            print(f"error[{e.tag}]: {e.detail}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
