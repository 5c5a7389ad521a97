"""Brute-force oracles.

Everything here re-derives its answers by exhaustive search so the main
pipeline can be checked against an implementation that shares nothing
with it beyond the FiniteGroup type.  Conventions that form the public
interface (element 0 is the identity, automorphisms are image tuples in
lexicographic order, outer classes are indexed by their smallest
member) are deliberately re-implemented here rather than imported; if
the two constructions ever drifted apart, the cross-checks would fail
loudly instead of silently agreeing.

Every search is cap-checked and raises SearchSpaceTooLarge rather than
running unbounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product

import numpy as np

from ._accel import njit, pick
from .errors import DomainError, SearchSpaceTooLarge
from .groups import FiniteGroup

ENUM_CAP = 10_000_000
FLAT_CAP = 1_000_000       # above this, exact DFS enumeration replaces the flat scan
ISO_ORDER_CAP = 24
AUT_ORDER_CAP = 8


@dataclass
class OracleReport:
    """What a brute-force search did and what it concluded."""

    method: str
    searched: int
    counts: dict = field(default_factory=dict)
    verdict: object = None
    details: object = None

    @property
    def isomorphic(self) -> bool:
        return bool(self.verdict)

    def to_json(self) -> dict:
        def clean(x):
            if isinstance(x, (np.integer,)):
                return int(x)
            if isinstance(x, np.ndarray):
                return [clean(v) for v in x.tolist()]
            if isinstance(x, (list, tuple)):
                return [clean(v) for v in x]
            if isinstance(x, dict):
                return {str(k): clean(v) for k, v in x.items()}
            if isinstance(x, (bool, int, float, str)) or x is None:
                return x
            return str(x)

        return {
            "method": self.method,
            "searched": int(self.searched),
            "counts": clean(self.counts),
            "verdict": clean(self.verdict),
            "details": clean(self.details),
        }


# ---------------------------------------------------------------------------
# exhaustive isomorphism testing

def exhaustive_isomorphism(G: FiniteGroup, H: FiniteGroup) -> OracleReport:
    """Decide G = H by backtracking over generator images.

    Orders up to 24 only.  A mismatch in order or element-order
    statistics short-circuits to a negative verdict; otherwise every
    order-respecting assignment of generator images is tried and each
    induced map is verified on the full table.
    """
    if G.order != H.order:
        return OracleReport("exhaustive_isomorphism", 0,
                            {"reason": "OrderMismatch"}, False)
    if G.order > ISO_ORDER_CAP:
        raise SearchSpaceTooLarge(
            f"isomorphism search is capped at order {ISO_ORDER_CAP}, got {G.order}")
    ordsG = sorted(int(o) for o in G.element_orders())
    ordsH = sorted(int(o) for o in H.element_orders())
    if ordsG != ordsH:
        return OracleReport("exhaustive_isomorphism", 0,
                            {"reason": "OrderStatisticsMismatch"}, False)

    gens = G.generating_sequence()
    if not gens:
        return OracleReport("exhaustive_isomorphism", 1, {}, True,
                            details={"mapping": [0]})

    # order elements of G as words in the generators
    words = [(0, -1, -1)]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for gi, g in enumerate(gens):
                b = int(G.table[a, g])
                if b not in seen:
                    seen.add(b)
                    words.append((b, a, gi))
                    nxt.append(b)
        frontier = nxt

    ordG = G.element_orders()
    ordH = H.element_orders()
    cands = [[h for h in range(H.order) if ordH[h] == ordG[g]] for g in gens]
    tried = 0
    for gen_images in product(*cands):
        tried += 1
        img = np.full(G.order, -1, dtype=np.int64)
        img[0] = 0
        for elt, parent, gi in words[1:]:
            img[elt] = H.table[img[parent], gen_images[gi]]
        if len(np.unique(img)) != G.order:
            continue
        if np.array_equal(img[G.table], H.table[img[:, None], img[None, :]]):
            return OracleReport("exhaustive_isomorphism", tried, {}, True,
                                details={"mapping": img.tolist()})
    return OracleReport("exhaustive_isomorphism", tried, {}, False)


# ---------------------------------------------------------------------------
# abelian structure from order statistics

def invariant_factors_from_orders(orders) -> tuple[int, ...]:
    """Invariant factors of a finite abelian group, reconstructed from
    the multiset of its element orders.

    For each prime p, the counts of elements killed by p^k determine
    the partition of the p-part; the per-prime partitions are then
    zipped into an ascending divisor chain.
    """
    orders = [int(o) for o in orders]
    n = len(orders)
    if n == 1:
        return ()
    m = n
    primes = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            primes.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        primes.append(m)

    per_prime: list[list[int]] = []
    for p in primes:
        # killed[k] = |{x : ord(x) divides p^k}| = p^(sum_i min(lam_i, k)),
        # so the log-p increments are the conjugate of the partition lam
        killed = [1]
        k = 1
        while True:
            c = sum(1 for o in orders if (p ** k) % o == 0)
            if c == killed[-1]:
                break
            killed.append(c)
            k += 1
        conj = []
        for k in range(1, len(killed)):
            ratio = killed[k] // killed[k - 1]
            e = 0
            while ratio > 1:
                ratio //= p
                e += 1
            conj.append(e)
        lam = [0] * (max(conj) if conj else 0)
        for parts in conj:
            for i in range(parts):
                lam[i] += 1
        per_prime.append([p ** e for e in sorted(lam, reverse=True)])

    width = max(len(lam) for lam in per_prime)
    factors = []
    for i in range(width):
        d = 1
        for lam in per_prime:
            if i < len(lam):
                d *= lam[i]
        factors.append(d)
    return tuple(sorted(factors))


# ---------------------------------------------------------------------------
# flat scans (numba + numpy fallback)

def _scan_linear_py(base, npos, atab, ainv, perms,
                    row_len, term_perm, term_pos, term_sign):
    """Numpy fallback: filter all maps positions -> A against additive rows."""
    total = base ** npos
    divisors = base ** np.arange(npos - 1, -1, -1, dtype=np.int64)
    hits = []
    chunk = 65536
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // divisors[None, :]) % base
        ok = np.ones(idx.shape[0], dtype=bool)
        t = 0
        for r in range(row_len.shape[0]):
            acc = np.zeros(idx.shape[0], dtype=np.int64)
            for _ in range(row_len[r]):
                val = perms[term_perm[t]][digits[:, term_pos[t]]]
                if term_sign[t] < 0:
                    val = ainv[val]
                acc = atab[acc, val]
                t += 1
            ok &= acc == 0
        hits.append(idx[ok])
    return np.concatenate(hits) if hits else np.empty(0, dtype=np.int64)


@njit
def _scan_linear_jit(base, npos, atab, ainv, perms,
                     row_len, term_perm, term_pos, term_sign):  # pragma: no cover
    total = 1
    for _ in range(npos):
        total *= base
    out = np.empty(total, dtype=np.int64)
    count = 0
    digits = np.zeros(npos, dtype=np.int64)
    for it in range(total):
        ok = True
        t = 0
        for r in range(row_len.shape[0]):
            acc = 0
            for _ in range(row_len[r]):
                val = perms[term_perm[t], digits[term_pos[t]]]
                if term_sign[t] < 0:
                    val = ainv[val]
                acc = atab[acc, val]
                t += 1
            if acc != 0:
                ok = False
                t = term_pos.shape[0]
                break
        if ok:
            out[count] = it
            count += 1
        # odometer increment
        for p in range(npos - 1, -1, -1):
            digits[p] += 1
            if digits[p] < base:
                break
            digits[p] = 0
    return out[:count]


DFS_MAX_OUT = 1_000_000


def _dfs_packed(rows, npos):
    """Index rows by the last position they mention, in packed-array form."""
    by_last: list[list[int]] = [[] for _ in range(npos)]
    for r, row in enumerate(rows):
        by_last[max(p for (_, p, _) in row)].append(r)
    last_ptr = np.zeros(npos + 1, dtype=np.int64)
    for p in range(npos):
        last_ptr[p + 1] = last_ptr[p] + len(by_last[p])
    row_ids = np.array([r for p in range(npos) for r in by_last[p]],
                       dtype=np.int64)
    lens = np.array([len(r) for r in rows], dtype=np.int64)
    row_ptr = np.zeros(len(rows) + 1, dtype=np.int64)
    np.cumsum(lens, out=row_ptr[1:])
    return last_ptr, row_ids, row_ptr


@njit
def _dfs_linear_jit(base, npos, atab, ainv, perms, row_ptr, term_perm,
                    term_pos, term_sign, last_ptr, row_ids,
                    budget, max_out):  # pragma: no cover
    digits = np.full(npos, -1, dtype=np.int64)
    out = np.empty(max_out, dtype=np.int64)
    n_out = 0
    nodes = 0
    pos = 0
    while pos >= 0:
        digits[pos] += 1
        if digits[pos] >= base:
            digits[pos] = -1
            pos -= 1
            continue
        nodes += 1
        if nodes > budget:
            return out[:0], -1, nodes
        ok = True
        for ri in range(last_ptr[pos], last_ptr[pos + 1]):
            r = row_ids[ri]
            acc = 0
            for t in range(row_ptr[r], row_ptr[r + 1]):
                v = perms[term_perm[t], digits[term_pos[t]]]
                if term_sign[t] < 0:
                    v = ainv[v]
                acc = atab[acc, v]
            if acc != 0:
                ok = False
                break
        if not ok:
            continue
        if pos == npos - 1:
            if n_out >= max_out:
                return out[:0], -2, nodes
            code = 0
            for p in range(npos):
                code = code * base + digits[p]
            out[n_out] = code
            n_out += 1
            continue
        pos += 1
    return out[:n_out], n_out, nodes


def _dfs_linear_py(base, npos, atab, ainv, perms, row_ptr, term_perm,
                   term_pos, term_sign, last_ptr, row_ids, budget, max_out):
    """Same backtracker on plain python lists (numpy scalar reads are slow)."""
    atab_l = atab.tolist()
    ainv_l = ainv.tolist()
    perms_l = perms.tolist()
    rp = row_ptr.tolist()
    tperm = term_perm.tolist()
    tpos = term_pos.tolist()
    tsign = term_sign.tolist()
    lp = last_ptr.tolist()
    rids = row_ids.tolist()
    digits = [-1] * npos
    out = []
    nodes = 0
    pos = 0
    while pos >= 0:
        digits[pos] += 1
        if digits[pos] >= base:
            digits[pos] = -1
            pos -= 1
            continue
        nodes += 1
        if nodes > budget:
            return np.empty(0, dtype=np.int64), -1, nodes
        ok = True
        for ri in range(lp[pos], lp[pos + 1]):
            r = rids[ri]
            acc = 0
            for t in range(rp[r], rp[r + 1]):
                v = perms_l[tperm[t]][digits[tpos[t]]]
                if tsign[t] < 0:
                    v = ainv_l[v]
                acc = atab_l[acc][v]
            if acc != 0:
                ok = False
                break
        if not ok:
            continue
        if pos == npos - 1:
            if len(out) >= max_out:
                return np.empty(0, dtype=np.int64), -2, nodes
            code = 0
            for p in range(npos):
                code = code * base + digits[p]
            out.append(code)
            continue
        pos += 1
    return np.array(out, dtype=np.int64), len(out), nodes


def _dfs_linear(base, npos, atab, ainv, perms, rows, budget):
    """Exact DFS enumeration of the same solution set as the flat scan.

    Positions are assigned in order and a row is checked as soon as
    its last position gets a value, so dead branches die early; the
    budget caps the number of assignments tried, making oversized
    searches fail loudly instead of running away.
    """
    row_len, term_perm, term_pos, term_sign = _pack_rows(rows)
    last_ptr, row_ids, row_ptr = _dfs_packed(rows, npos)
    dfs = pick(_dfs_linear_jit, _dfs_linear_py)
    out, n_out, nodes = dfs(base, npos, atab, ainv, perms, row_ptr,
                            term_perm, term_pos, term_sign,
                            last_ptr, row_ids, budget, DFS_MAX_OUT)
    if n_out == -1:
        raise SearchSpaceTooLarge(f"DFS exceeded its node budget of {budget}")
    if n_out == -2:
        raise SearchSpaceTooLarge(f"solution set exceeds {DFS_MAX_OUT}")
    return np.sort(out), nodes


# ---------------------------------------------------------------------------
# bar-resolution cohomology

def _left_act_perms(A: FiniteGroup, Q: FiniteGroup, act: np.ndarray) -> np.ndarray:
    """Permutation table for the left action g.a := act[g^-1][a].

    ``act`` composes diagrammatically (a^(q1 q2) = (a^q1)^q2), so
    precomposing with inversion is what makes the usual left-action law
    g.(h.a) = (gh).a come out true.
    """
    return act[Q.inverse]


def _tuple_index(nQ: int, n: int):
    """Lexicographic position of an n-tuple over 0..nQ-1."""
    def pos(*gs):
        code = 0
        for g in gs:
            code = code * nQ + g
        return code
    return pos


def _bar_rows(Q: FiniteGroup, m: int) -> list[list[tuple[int, int, int]]]:
    """The bar boundary formula on m-cochains, one term list per output.

    Terms are (actor_element, position, sign), the actor acting on the
    left.  Requiring every row to vanish on an m-cochain is the
    m-cocycle condition, and evaluating the same rows on an m-cochain
    produces its coboundary in degree m+1, so both sides of a
    cohomology computation come from one table.
    """
    nQ = Q.order
    t = Q.table
    pos = _tuple_index(nQ, m)
    rows = []
    if m == 1:
        for g in range(nQ):
            for h in range(nQ):
                rows.append([
                    (g, pos(h), +1),
                    (0, pos(int(t[g, h])), -1),
                    (0, pos(g), +1),
                ])
    elif m == 2:
        for g in range(nQ):
            for h in range(nQ):
                for k in range(nQ):
                    rows.append([
                        (g, pos(h, k), +1),
                        (0, pos(int(t[g, h]), k), -1),
                        (0, pos(g, int(t[h, k])), +1),
                        (0, pos(g, h), -1),
                    ])
    elif m == 3:
        for g in range(nQ):
            for h in range(nQ):
                for k in range(nQ):
                    for l in range(nQ):
                        rows.append([
                            (g, pos(h, k, l), +1),
                            (0, pos(int(t[g, h]), k, l), -1),
                            (0, pos(g, int(t[h, k]), l), +1),
                            (0, pos(g, h, int(t[k, l])), -1),
                            (0, pos(g, h, k), +1),
                        ])
    else:
        raise DomainError("BadDimension", f"bar boundary handles degrees 1..3, got {m}")
    return rows


def _pack_rows(rows):
    row_len = np.array([len(r) for r in rows], dtype=np.int64)
    term_perm = np.array([x[0] for r in rows for x in r], dtype=np.int64)
    term_pos = np.array([x[1] for r in rows for x in r], dtype=np.int64)
    term_sign = np.array([x[2] for r in rows for x in r], dtype=np.int64)
    return row_len, term_perm, term_pos, term_sign


def _decode(code: int, base: int, npos: int) -> tuple[int, ...]:
    digits = []
    for _ in range(npos):
        digits.append(code % base)
        code //= base
    return tuple(reversed(digits))


def bar_cocycle_cohomology(A: FiniteGroup, Q: FiniteGroup, act: np.ndarray,
                           n: int, cap: int = ENUM_CAP) -> OracleReport:
    """H^n (n = 2 or 3) by enumerating bar cocycles and coboundaries.

    Cochains are raw maps Q^n -> A.  The full solution set of the
    cocycle conditions is enumerated (flat scan when the space is
    small, exact DFS otherwise), coboundaries are images of the full
    (n-1)-cochain space, and the quotient's structure is read off the
    element-order statistics, so no linear algebra is shared with the
    pipeline.
    """
    nA, nQ = A.order, Q.order
    if not A.is_abelian:
        raise DomainError("NotAbelian", "bar oracle needs abelian coefficients")
    lperms = _left_act_perms(A, Q, np.asarray(act, dtype=np.int64))
    zpos = nQ ** n
    bpos = nQ ** (n - 1)
    if nA ** bpos > cap:
        raise SearchSpaceTooLarge(
            f"coboundary space |A|^(|Q|^{n-1}) = {nA}**{bpos} exceeds cap {cap}")

    rows = _bar_rows(Q, n)
    searched = 0
    if nA ** zpos <= FLAT_CAP:
        packed = _pack_rows(rows)
        scan = pick(_scan_linear_jit, _scan_linear_py)
        codes = scan(nA, zpos, A.table, A.inverse, lperms, *packed)
        searched += nA ** zpos
    else:
        codes, nodes = _dfs_linear(nA, zpos, A.table, A.inverse, lperms, rows, cap)
        searched += nodes
    cocycles = [_decode(int(c), nA, zpos) for c in codes]
    zset = set(cocycles)

    # coboundaries: push every (n-1)-cochain through the boundary formula,
    # chunk-vectorised because |A|^(|Q|^(n-1)) can reach a few hundred thousand
    low_rows = _bar_rows(Q, n - 1)
    total_low = nA ** bpos
    divisors = nA ** np.arange(bpos - 1, -1, -1, dtype=np.int64)
    cob_set = set()
    chunk = 65536
    for start in range(0, total_low, chunk):
        idx = np.arange(start, min(start + chunk, total_low), dtype=np.int64)
        digits = (idx[:, None] // divisors[None, :]) % nA
        vals = np.empty((idx.shape[0], len(low_rows)), dtype=np.int64)
        for r, row in enumerate(low_rows):
            acc = np.zeros(idx.shape[0], dtype=np.int64)
            for (pi, pp, sg) in row:
                v = lperms[pi][digits[:, pp]]
                if sg < 0:
                    v = A.inverse[v]
                acc = A.table[acc, v]
            vals[:, r] = acc
        cob_set.update(map(tuple, vals.tolist()))
        searched += idx.shape[0]

    if not cob_set <= zset:
        raise DomainError("OracleInconsistent",
                          "a coboundary failed the cocycle conditions")

    # partition Z into cosets of B, reading off coset orders as we go
    def add_maps(u, v):
        return tuple(int(A.table[a, b]) for a, b in zip(u, v))

    visited = set()
    class_orders = []
    reps = []
    for z in sorted(zset):
        if z in visited:
            continue
        coset = sorted(add_maps(z, b) for b in cob_set)
        visited.update(coset)
        reps.append(coset[0])
        acc = z
        order = 1
        while acc not in cob_set:
            acc = add_maps(acc, z)
            order += 1
        class_orders.append(order)

    invariants = invariant_factors_from_orders(class_orders)
    return OracleReport(
        "bar_cocycle_cohomology", searched,
        {"cocycles": len(zset), "coboundaries": len(cob_set),
         "classes": len(reps)},
        verdict=list(invariants),
        details={"representatives": [list(r) for r in reps[:16]],
                 "degree": n},
    )


# ---------------------------------------------------------------------------
# automorphism scaffolding for the extension oracles

@dataclass
class _AutScaffold:
    perms: list[tuple[int, ...]]
    index: dict
    table: np.ndarray
    inv: np.ndarray
    chi_idx: np.ndarray          # element k -> index of conjugation by k
    out_rep: np.ndarray          # aut index -> smallest member of its coset
    out_index: np.ndarray        # aut index -> outer class number
    out_table: np.ndarray
    n_inn: int


def _aut_scaffold(K: FiniteGroup) -> _AutScaffold:
    """Aut(K) by filtering all permutations that fix the identity.

    Deliberately the dumbest possible construction (hence the order cap
    of 8).  Image tuples are sorted lexicographically and outer classes
    are labelled by their smallest member, the same interface
    convention the pipeline documents, so indices are comparable.
    """
    n = K.order
    if n > AUT_ORDER_CAP:
        raise SearchSpaceTooLarge(
            f"permutation filter for Aut is capped at order {AUT_ORDER_CAP}, got {n}")
    perms = []
    for rest in permutations(range(1, n)):
        p = np.array((0,) + rest, dtype=np.int64)
        if np.array_equal(p[K.table], K.table[p[:, None], p[None, :]]):
            perms.append(tuple(int(x) for x in p))
    perms.sort()
    index = {p: i for i, p in enumerate(perms)}
    m = len(perms)
    arr = np.array(perms, dtype=np.int64)
    table = np.empty((m, m), dtype=np.int64)
    for a in range(m):
        for b in range(m):
            table[a, b] = index[tuple(int(x) for x in arr[b][arr[a]])]
    inv = np.empty(m, dtype=np.int64)
    for a in range(m):
        inv[a] = int(np.nonzero(table[a] == 0)[0][0])
    chi_idx = np.empty(n, dtype=np.int64)
    for k in range(n):
        conj = tuple(int(K.table[K.table[K.inverse[k], x], k]) for x in range(n))
        chi_idx[k] = index[conj]
    inn = sorted(set(int(i) for i in chi_idx))
    out_rep = np.empty(m, dtype=np.int64)
    for a in range(m):
        out_rep[a] = min(int(table[h, a]) for h in inn)
    reps = sorted(set(int(r) for r in out_rep))
    rep_no = {r: i for i, r in enumerate(reps)}
    out_index = np.array([rep_no[int(out_rep[a])] for a in range(m)], dtype=np.int64)
    q = len(reps)
    out_table = np.empty((q, q), dtype=np.int64)
    for i, r in enumerate(reps):
        for j, s in enumerate(reps):
            out_table[i, j] = out_index[table[r, s]]
    return _AutScaffold(perms, index, table, inv, chi_idx,
                        out_rep, out_index, out_table, len(inn))


def _check_outer_hom(sc: _AutScaffold, G: FiniteGroup, psi: np.ndarray) -> None:
    if psi.shape != (G.order,) or psi[0] != 0:
        raise DomainError("NotAHomomorphism", "outer map must send identity to identity")
    for g in range(G.order):
        for h in range(G.order):
            if sc.out_table[psi[g], psi[h]] != psi[G.table[g, h]]:
                raise DomainError("NotAHomomorphism",
                                  f"outer map breaks at ({g}, {h})")


def _phi_lift_sets(sc: _AutScaffold, G: FiniteGroup, psi: np.ndarray) -> list[list[int]]:
    """Per-element automorphism lifts of an outer map; identity pinned at e."""
    lifts = []
    m = len(sc.perms)
    for g in range(G.order):
        if g == 0:
            lifts.append([0])
        else:
            lifts.append([a for a in range(m) if sc.out_index[a] == psi[g]])
    return lifts


def _compat_coset(K: FiniteGroup, sc: _AutScaffold, target_aut: int) -> list[int]:
    """Elements of K whose conjugation realises a given inner automorphism."""
    return [k for k in range(K.order) if sc.chi_idx[k] == target_aut]


def _d_transform(K: FiniteGroup, sc: _AutScaffold, G: FiniteGroup,
                 phi: tuple[int, ...], f: tuple[int, ...],
                 d: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The reparametrisation of a factor set by a map d: G -> K.

    This realises the isomorphism (k, g) -> (k d(g), g) between the
    extensions the two factor sets build, and is re-implemented here
    on purpose (it defines the oracle's notion of equivalence).
    """
    n = G.order
    kt, ki = K.table, K.inverse
    phi2 = tuple(int(sc.table[sc.inv[sc.chi_idx[d[g]]], phi[g]]) for g in range(n))
    arr = np.array(sc.perms, dtype=np.int64)
    f2 = []
    for g1 in range(n):
        pinv = arr[sc.inv[phi2[g1]]]
        for g2 in range(n):
            x = int(pinv[d[g2]])
            val = int(kt[ki[x], kt[ki[d[g1]], kt[f[g1 * n + g2], d[int(G.table[g1, g2])]]]])
            f2.append(val)
    return phi2, tuple(f2)


def _factor_set_valid(K: FiniteGroup, sc: _AutScaffold, G: FiniteGroup,
                      phi: tuple[int, ...], f: tuple[int, ...]) -> bool:
    """Raw check: compatibility with conjugation plus the cocycle law."""
    n = G.order
    kt = K.table
    arr = np.array(sc.perms, dtype=np.int64)
    for g in range(n):
        for h in range(n):
            lhs = sc.chi_idx[f[g * n + h]]
            rhs = sc.table[sc.table[phi[g], phi[h]], sc.inv[phi[int(G.table[g, h])]]]
            if lhs != rhs:
                return False
    for g in range(n):
        pinv = arr[sc.inv[phi[g]]]
        for h in range(n):
            gh = int(G.table[g, h])
            for k in range(n):
                hk = int(G.table[h, k])
                lhs = int(kt[f[g * n + h], f[gh * n + k]])
                rhs = int(kt[pinv[f[h * n + k]], f[g * n + hk]])
                if lhs != rhs:
                    return False
    return True


def brute_force_factor_sets(K: FiniteGroup, G: FiniteGroup, psi,
                            cap: int = ENUM_CAP) -> OracleReport:
    """All factor sets realising an outer map, grouped into equivalence
    classes by exhausting the reparametrisation maps d: G -> K.

    The lift of the outer map is enumerated elementwise over inner
    cosets (the identity's lift is pinned to the identity), the central
    freedom in each f-cell is enumerated flat, and every candidate pair
    is checked against the raw definitions.
    """
    psi = np.asarray(psi, dtype=np.int64)
    sc = _aut_scaffold(K)
    _check_outer_hom(sc, G, psi)
    n = G.order
    kt = K.table
    centre = [z for z in range(K.order)
              if all(kt[z, x] == kt[x, z] for x in range(K.order))]
    nz = len(centre)

    lifts = _phi_lift_sets(sc, G, psi)
    n_lift = 1
    for ls in lifts:
        n_lift *= len(ls)
    total = n_lift * nz ** (n * n) + K.order ** n
    if total > cap:
        raise SearchSpaceTooLarge(
            f"{n_lift} lifts x {nz}^{n * n} cells + {K.order}^{n} maps = {total} > {cap}")

    arr = np.array(sc.perms, dtype=np.int64)
    valid: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    searched = 0
    for phi in product(*lifts):
        # conjugation pins each f-cell to a coset of the centre
        cells = []
        feasible = True
        for g in range(n):
            for h in range(n):
                target = int(sc.table[sc.table[phi[g], phi[h]],
                                      sc.inv[phi[int(G.table[g, h])]]])
                cell = _compat_coset(K, sc, target)
                if not cell:
                    feasible = False
                    break
                cells.append(cell)
            if not feasible:
                break
        if not feasible:
            continue
        for f in product(*cells):
            searched += 1
            if _factor_set_valid(K, sc, G, phi, f):
                valid.append((phi, f))

    index = {vf: i for i, vf in enumerate(valid)}
    parent = list(range(len(valid)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    # d(e) must stay central: both factor sets pin the lift of the
    # identity to the identity automorphism, and the transformed lift at
    # e is conjugation by d(e).  Restricted this way, the d-maps trace
    # out exactly the equivalences between normalised factor sets.
    for i, (phi, f) in enumerate(valid):
        for d in product(centre, *([range(K.order)] * (n - 1))):
            searched += 1
            other = _d_transform(K, sc, G, phi, f, d)
            j = index.get(other)
            if j is None:
                raise DomainError("OracleInconsistent",
                                  "reparametrisation left the valid set")
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)

    classes: dict[int, list] = {}
    for i in range(len(valid)):
        classes.setdefault(find(i), []).append(valid[i])
    reps = sorted(min(members) for members in classes.values())
    return OracleReport(
        "brute_force_factor_sets", searched,
        {"valid": len(valid), "classes": len(classes),
         "lifts": n_lift, "centre": nz},
        verdict=len(classes),
        details={"representatives": [
            {"phi": list(phi), "f": [list(f[i * n:(i + 1) * n]) for i in range(n)]}
            for phi, f in reps
        ]},
    )


def find_any_factor_set(K: FiniteGroup, G: FiniteGroup, psi) -> OracleReport:
    """Existence-only search: is there any factor set realising psi?

    Runs a DFS over the f-cells (their central freedom) for each lift
    of the outer map, checking each cocycle constraint as soon as all
    three cells it mentions are assigned.  Complete: if the DFS finds
    nothing for any lift, no factor set exists.
    """
    psi = np.asarray(psi, dtype=np.int64)
    sc = _aut_scaffold(K)
    _check_outer_hom(sc, G, psi)
    n = G.order
    kt = K.table
    arr = np.array(sc.perms, dtype=np.int64)
    searched = 0

    # constraint (g,h,k) touches cells (g,h), (gh,k), (h,k), (g,hk)
    by_last: list[list[tuple[int, int, int]]] = [[] for _ in range(n * n)]
    for g in range(n):
        for h in range(n):
            for k in range(n):
                gh = int(G.table[g, h])
                hk = int(G.table[h, k])
                last = max(g * n + h, gh * n + k, h * n + k, g * n + hk)
                by_last[last].append((g, h, k))

    for phi in product(*_phi_lift_sets(sc, G, psi)):
        cells = []
        feasible = True
        for g in range(n):
            for h in range(n):
                target = int(sc.table[sc.table[phi[g], phi[h]],
                                      sc.inv[phi[int(G.table[g, h])]]])
                cell = _compat_coset(K, sc, target)
                if not cell:
                    feasible = False
                    break
                cells.append(cell)
            if not feasible:
                break
        if not feasible:
            continue
        pinv_tab = {g: arr[sc.inv[phi[g]]] for g in range(n)}
        f = [-1] * (n * n)
        count_box = [searched]

        def rec(pos: int) -> bool:
            if pos == n * n:
                return True
            for v in cells[pos]:
                f[pos] = v
                count_box[0] += 1
                ok = True
                for (g, h, k) in by_last[pos]:
                    gh = int(G.table[g, h])
                    hk = int(G.table[h, k])
                    lhs = int(kt[f[g * n + h], f[gh * n + k]])
                    rhs = int(kt[pinv_tab[g][f[h * n + k]], f[g * n + hk]])
                    if lhs != rhs:
                        ok = False
                        break
                if ok and rec(pos + 1):
                    return True
            f[pos] = -1
            return False

        if rec(0):
            searched = count_box[0]
            return OracleReport(
                "find_any_factor_set", searched, {"found": 1}, True,
                details={"phi": list(phi),
                         "f": [f[i * n:(i + 1) * n] for i in range(n)]})
        searched = count_box[0]

    return OracleReport("find_any_factor_set", searched, {"found": 0}, False)
