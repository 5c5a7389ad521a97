"""Integer linear algebra over products of cyclic groups.

Everything here runs on plain integer matrices.  The central tool is a
Smith normal form with tracked transforms; on top of it sit a solver
for linear congruence systems, kernel generators for such systems,
coordinates on a finite abelian group, and the invariant factors of a
subquotient presented by generators.

Coordinate convention: a vector of moduli (d_1, ..., d_r) describes
Z/d_1 x ... x Z/d_r, with 0 meaning a free integer coordinate where a
function accepts that.  Vectors are integer arrays reduced
componentwise by the moduli.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import DomainError
from .groups import FiniteGroup

OVERFLOW_LIMIT = 1 << 48


def _as_matrix(M) -> np.ndarray:
    A = np.array(M, dtype=np.int64)
    if A.ndim != 2:
        raise DomainError("BadShape", f"expected a matrix, got ndim {A.ndim}")
    return A


def _guard(*arrays) -> None:
    for a in arrays:
        if a is not None and a.size and int(np.abs(a).max()) > OVERFLOW_LIMIT:
            raise DomainError("Overflow",
                              "entries grew past the safe integer range")


@dataclass
class SNFResult:
    """D = U @ M @ V with U, V unimodular and D diagonal, each
    diagonal entry nonnegative and dividing the next."""

    D: np.ndarray
    U: np.ndarray | None
    V: np.ndarray | None
    carry: np.ndarray | None
    Uinv: np.ndarray | None = None

    def diagonal(self) -> list[int]:
        m, n = self.D.shape
        return [int(self.D[i, i]) for i in range(min(m, n))]


def smith_normal_form(M, want_u: bool = True, want_v: bool = True,
                      carry=None, modulus: int | None = None,
                      want_uinv: bool = False) -> SNFResult:
    """Diagonalize an integer matrix by unimodular row and column moves.

    Row operations are optionally mirrored on ``carry`` (for solving
    M x = b without materializing U).  Pivots are chosen smallest in
    absolute value, which keeps entries tame; growth past
    OVERFLOW_LIMIT raises rather than wrapping.

    ``want_uinv`` additionally tracks the inverse row transform, so
    U @ Uinv = I without any post-hoc inversion.

    ``modulus`` reduces A, U, and Uinv into symmetric residues after
    every round.  Reducing the working matrix adds multiples of
    modulus * e_i to its columns, so the quantity preserved is the
    column lattice plus modulus * Z^m, not the lattice itself; the
    returned diagonal is therefore gcd'd with the modulus, and it
    describes colspan(M) + modulus * Z^m.  Callers must only use the
    modular path when that enlarged lattice is the one they mean
    (quotient relation lattices qualify, with modulus twice the
    ambient exponent).  U and Uinv come back reduced, which is all
    their downstream mod-exponent uses need.  Incompatible with V or
    carry tracking, which would need exact transforms.
    """
    A = _as_matrix(M).copy()
    m, n = A.shape
    U = np.eye(m, dtype=np.int64) if want_u else None
    W = np.eye(m, dtype=np.int64) if want_uinv else None
    V = np.eye(n, dtype=np.int64) if want_v else None
    C = None
    if carry is not None:
        C = np.array(carry, dtype=np.int64)
        if C.ndim == 1:
            C = C[:, None]
        if C.shape[0] != m:
            raise DomainError("BadShape", "carry rows must match the matrix")
        C = C.copy()
    if modulus is not None and (want_v or C is not None):
        raise DomainError("BadShape",
                          "modular reduction cannot track V or a carry")

    def reduce_all():
        if modulus is None:
            return
        half = modulus // 2
        for X in (A, U, W):
            if X is not None:
                X %= modulus
                X[X > half] -= modulus

    def row_swap(i, j):
        A[[i, j]] = A[[j, i]]
        if U is not None:
            U[[i, j]] = U[[j, i]]
        if W is not None:
            W[:, [i, j]] = W[:, [j, i]]
        if C is not None:
            C[[i, j]] = C[[j, i]]

    def col_swap(i, j):
        A[:, [i, j]] = A[:, [j, i]]
        if V is not None:
            V[:, [i, j]] = V[:, [j, i]]

    t = 0
    rounds = 0
    limit = 1000 * (m + n + 10)
    while t < min(m, n):
        rounds += 1
        if rounds > limit:
            raise DomainError("NoConvergence", "normal form did not stabilize")
        reduce_all()
        sub = A[t:, t:]
        nz = np.nonzero(sub)
        if nz[0].size == 0:
            break
        k = int(np.argmin(np.abs(sub[nz])))
        i, j = int(nz[0][k]) + t, int(nz[1][k]) + t
        if i != t:
            row_swap(t, i)
        if j != t:
            col_swap(t, j)
        if A[t, t] < 0:
            A[t] = -A[t]
            if U is not None:
                U[t] = -U[t]
            if W is not None:
                W[:, t] = -W[:, t]
            if C is not None:
                C[t] = -C[t]
        d = int(A[t, t])

        q = A[t + 1:, t] // d
        if np.any(q):
            A[t + 1:] -= q[:, None] * A[t]
            if U is not None:
                U[t + 1:] -= q[:, None] * U[t]
            if W is not None:
                W[:, t] += W[:, t + 1:] @ q
            if C is not None:
                C[t + 1:] -= q[:, None] * C[t]
            _guard(A, U, W, C)
            if np.any(A[t + 1:, t]):
                continue
        qc = A[t, t + 1:] // d
        if np.any(qc):
            A[:, t + 1:] -= A[:, [t]] * qc[None, :]
            if V is not None:
                V[:, t + 1:] -= V[:, [t]] * qc[None, :]
            _guard(A, V)
            if np.any(A[t, t + 1:]):
                continue
        if np.any(A[t + 1:, t]):
            continue
        rem = A[t + 1:, t + 1:] % d
        bad = np.nonzero(rem)
        if bad[0].size:
            i = int(bad[0][0]) + t + 1
            A[t] += A[i]
            if U is not None:
                U[t] += U[i]
            if W is not None:
                W[:, i] -= W[:, t]
            if C is not None:
                C[t] += C[i]
            continue
        t += 1

    reduce_all()
    if modulus is not None:
        # elimination may consume the columns witnessing modulus * e_i,
        # so a raw diagonal entry only pins the factor up to that
        # witness: the invariant factor of the enlarged lattice is its
        # gcd with the modulus (which also absorbs symmetric-residue
        # signs, and turns a vanished trailing entry into the modulus)
        for i in range(min(m, n)):
            A[i, i] = int(np.gcd(int(A[i, i]), modulus))
    return SNFResult(A, U, V, C, W)


def solve_system(M, b, col_mods=None, row_mods=None) -> np.ndarray | None:
    """One solution x of M x = b, each row read modulo row_mods[i] and
    each unknown reduced modulo col_mods[j] (0 = over the integers).

    Returns None when the system has no solution.  A returned solution
    is verified against the original congruences before it leaves.
    """
    M = _as_matrix(M)
    m, n = M.shape
    b = np.array(b, dtype=np.int64)
    if b.shape != (m,):
        raise DomainError("BadShape", f"right side must have length {m}")
    row_mods = np.zeros(m, dtype=np.int64) if row_mods is None \
        else np.array(row_mods, dtype=np.int64)
    col_mods = np.zeros(n, dtype=np.int64) if col_mods is None \
        else np.array(col_mods, dtype=np.int64)

    N = _finite_setup(M, col_mods, row_mods)
    if N == 1:
        x = np.zeros(n, dtype=np.int64)
        return x if not np.any(b % row_mods) else None
    if N is not None:
        return _finite_solve(M, b, col_mods, row_mods, N)

    slack_rows = np.nonzero(row_mods)[0]
    if slack_rows.size:
        S = np.zeros((m, slack_rows.size), dtype=np.int64)
        for c, r in enumerate(slack_rows):
            S[r, c] = int(row_mods[r])
        aug = np.hstack([M, S])
    else:
        aug = M
    res = smith_normal_form(aug, want_u=False, want_v=True, carry=b)
    D, V, bp = res.D, res.V, res.carry[:, 0]
    ncols = aug.shape[1]
    z = np.zeros(ncols, dtype=np.int64)
    for i in range(m):
        d = int(D[i, i]) if i < min(m, ncols) else 0
        if d == 0:
            if bp[i] != 0:
                return None
        else:
            if bp[i] % d != 0:
                return None
            z[i] = bp[i] // d
    x = (V @ z)[:n]
    pos = _reducible_cols(M, col_mods, row_mods)
    x[pos] %= col_mods[pos]
    resid = M @ x - b
    rpos = row_mods > 0
    resid[rpos] %= row_mods[rpos]
    if np.any(resid):
        raise DomainError("SolverCheckFailed", "candidate solution does not verify")
    return x


def _reducible_cols(M, col_mods, row_mods) -> np.ndarray:
    """Columns whose unknown may be reduced by its modulus without
    disturbing any row congruence: shifting x_j by col_mods[j] must move
    every row value by a multiple of its modulus (by zero for exact
    rows)."""
    shift = M * col_mods[None, :]
    exact = row_mods == 0
    ok = np.ones_like(col_mods, dtype=bool) & (col_mods > 0)
    if np.any(exact):
        ok &= ~np.any(shift[exact], axis=0)
    rest = ~exact
    if np.any(rest):
        ok &= ~np.any(shift[rest] % row_mods[rest, None], axis=0)
    return ok


# ---------------------------------------------------------------------------
# bounded-entry elimination for fully finite systems
#
# When every row and column modulus is positive the system lives over
# Z/N for N the least common multiple, and exact integer transforms
# are overkill: entry growth during elimination is what blows up the
# Smith route on large cochain matrices.  A Howell form over Z/N keeps
# every entry below N and still supports complete kernel extraction
# and membership tests, because its row span is closed under taking
# leading-zero sections.

def _xgcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _howell_rows(G, N: int) -> np.ndarray:
    """Howell form of the row span of G over Z/N.

    Rows come back with strictly increasing leading columns.  On top
    of row echelon shape, the span stays closed under annihilator
    multiples: for each returned row with leading entry p, the row
    (N / gcd(p, N)) * row lies in the span of the later rows.  That
    closure is what makes greedy reduction against the rows a complete
    membership test over Z/N.
    """
    G = _as_matrix(G) % N
    width = G.shape[1]
    cap = max(8, G.shape[0] * 2 + 8)
    buf = np.zeros((cap, width), dtype=np.int64)
    buf[:G.shape[0]] = G
    n_rows = G.shape[0]
    alive = np.zeros(cap, dtype=bool)
    alive[:n_rows] = True
    out_idx: list[int] = []

    def push(row) -> None:
        nonlocal buf, alive, cap, n_rows
        if n_rows == cap:
            cap *= 2
            buf = np.vstack([buf, np.zeros((cap - n_rows, width), dtype=np.int64)])
            alive = np.concatenate([alive, np.zeros(cap - n_rows, dtype=bool)])
        buf[n_rows] = row
        alive[n_rows] = True
        n_rows += 1

    for c in range(width):
        idx = np.nonzero(alive[:n_rows] & (buf[:n_rows, c] != 0))[0]
        while idx.size > 1:
            half = idx.size // 2
            I, J = idx[:half], idx[half:2 * half]
            S = np.empty(half, dtype=np.int64)
            T = np.empty(half, dtype=np.int64)
            AG = np.empty(half, dtype=np.int64)
            BG = np.empty(half, dtype=np.int64)
            for p in range(half):
                a, b = int(buf[I[p], c]), int(buf[J[p], c])
                g, s, t = _xgcd(a, b)
                S[p], T[p], AG[p], BG[p] = s, t, a // g, b // g
            old = buf[I].copy()
            buf[I] = (S[:, None] * old + T[:, None] * buf[J]) % N
            buf[J] = (AG[:, None] * buf[J] - BG[:, None] * old) % N
            idx = np.concatenate([I, idx[2 * half:]])
        if idx.size == 1:
            i = int(idx[0])
            alive[i] = False
            out_idx.append(i)
            piv = int(buf[i, c])
            ann = N // int(np.gcd(piv, N))
            shadow = (buf[i] * ann) % N
            if shadow.any():
                push(shadow)
    if not out_idx:
        return np.zeros((0, width), dtype=np.int64)
    return buf[out_idx]


def _finite_scaled(M, row_mods, N: int) -> np.ndarray:
    scale = N // row_mods
    return ((M % row_mods[:, None]) * scale[:, None]) % N


def _finite_setup(M, col_mods, row_mods):
    """N and the graph matrix for the finite path, or None when the
    system is not a map of finite coordinate modules."""
    if np.any(col_mods <= 0) or np.any(row_mods <= 0):
        return None
    N = 1
    for v in sorted({int(x) for x in col_mods} | {int(x) for x in row_mods}):
        N = N * v // int(np.gcd(N, v))
    if np.any((M * col_mods[None, :]) % row_mods[:, None]):
        return None
    return N


def _finite_kernel(M, col_mods, row_mods, N: int) -> np.ndarray:
    m, n = M.shape
    G = np.hstack([_finite_scaled(M, row_mods, N).T,
                   np.eye(n, dtype=np.int64)])
    H = _howell_rows(G, N)
    gens = []
    for row in H:
        if np.any(row[:m]):
            continue
        x = row[m:] % col_mods
        if not np.any(x):
            continue
        if np.any((M @ x) % row_mods):
            raise DomainError("SolverCheckFailed",
                              "kernel generator does not verify")
        gens.append(x)
    if not gens:
        return np.zeros((0, n), dtype=np.int64)
    return np.array(gens, dtype=np.int64)


def _finite_solve(M, b, col_mods, row_mods, N: int) -> np.ndarray | None:
    m, n = M.shape
    G = np.hstack([_finite_scaled(M, row_mods, N).T,
                   np.eye(n, dtype=np.int64)])
    H = _howell_rows(G, N)
    v = ((b % row_mods) * (N // row_mods)) % N
    x = np.zeros(n, dtype=np.int64)
    for row in H:
        nz = np.nonzero(row[:m])[0]
        if nz.size == 0:
            break
        c = int(nz[0])
        if v[c] == 0:
            continue
        p = int(row[c])
        g = int(np.gcd(p, N))
        if v[c] % g:
            return None
        lam = (int(v[c]) // g) * pow(p // g, -1, N // g) % (N // g)
        v = (v - lam * row[:m]) % N
        x = (x + lam * row[m:]) % N
    if np.any(v):
        return None
    x %= col_mods
    if np.any((M @ x - b) % row_mods):
        raise DomainError("SolverCheckFailed",
                          "candidate solution does not verify")
    return x


def kernel_generators(M, col_mods=None, row_mods=None) -> np.ndarray:
    """Generators of the solution group of M x = 0, rows read modulo
    row_mods, unknowns living in the coordinate modules col_mods.

    Fully finite well-defined systems go through the bounded Howell
    form; otherwise the integer kernel of the slack-augmented matrix
    projects onto all solutions, so its basis vectors, reduced by
    col_mods, generate the solution subgroup.  Every returned
    generator is verified.
    """
    M = _as_matrix(M)
    m, n = M.shape
    row_mods = np.zeros(m, dtype=np.int64) if row_mods is None \
        else np.array(row_mods, dtype=np.int64)
    col_mods = np.zeros(n, dtype=np.int64) if col_mods is None \
        else np.array(col_mods, dtype=np.int64)

    N = _finite_setup(M, col_mods, row_mods)
    if N == 1:
        return np.zeros((0, n), dtype=np.int64)
    if N is not None:
        return _finite_kernel(M, col_mods, row_mods, N)

    slack_rows = np.nonzero(row_mods)[0]
    if slack_rows.size:
        S = np.zeros((m, slack_rows.size), dtype=np.int64)
        for c, r in enumerate(slack_rows):
            S[r, c] = int(row_mods[r])
        aug = np.hstack([M, S])
    else:
        aug = M
    res = smith_normal_form(aug, want_u=False, want_v=True)
    D, V = res.D, res.V
    ncols = aug.shape[1]
    gens = []
    pos = _reducible_cols(M, col_mods, row_mods)
    rpos = row_mods > 0
    for j in range(ncols):
        d = int(D[j, j]) if j < min(m, ncols) else 0
        if d != 0:
            continue
        x = V[:, j][:n].copy()
        x[pos] %= col_mods[pos]
        if not np.any(x):
            continue
        resid = (M @ x).copy()
        resid[rpos] %= row_mods[rpos]
        if np.any(resid):
            raise DomainError("SolverCheckFailed", "kernel generator does not verify")
        gens.append(x)
    if not gens:
        return np.zeros((0, n), dtype=np.int64)
    return np.array(gens, dtype=np.int64)


# ---------------------------------------------------------------------------
# coordinates on a finite abelian group

@dataclass
class AbelianBasis:
    """Invariant-factor coordinates for a finite abelian group.

    ``factors`` lists the nontrivial invariant factors in divisibility
    order; ``coord_table[x]`` is the coordinate vector of element x,
    and coords determine elements uniquely.
    """

    group: FiniteGroup
    factors: list[int]
    coord_table: np.ndarray
    _by_coords: dict[tuple, int]

    @property
    def rank(self) -> int:
        return len(self.factors)

    def coords(self, x: int) -> np.ndarray:
        return self.coord_table[x]

    def element(self, coords) -> int:
        key = tuple(int(c) % f for c, f in zip(coords, self.factors))
        return self._by_coords[key]


_BASIS_CACHE: dict[int, tuple[FiniteGroup, AbelianBasis]] = {}


def abelian_basis(A: FiniteGroup) -> AbelianBasis:
    """Coordinates identifying A with a product of cyclic groups.

    Generators come from a greedy generating sequence; a walk of the
    Cayley graph assigns every element an exponent vector, all walk
    relations span the relation lattice, and its Smith form turns
    exponent vectors into canonical coordinates.
    """
    hit = _BASIS_CACHE.get(id(A))
    if hit is not None and hit[0] is A:
        return hit[1]
    if not A.is_abelian:
        raise DomainError("NotAbelian", f"{A.name} is not abelian")
    order = A.order
    if order == 1:
        basis = AbelianBasis(A, [], np.zeros((1, 0), dtype=np.int64), {(): 0})
        _BASIS_CACHE[id(A)] = (A, basis)
        return basis
    gens = [int(g) for g in A.generating_sequence()]
    k = len(gens)
    rep = np.zeros((order, k), dtype=np.int64)
    seen = np.zeros(order, dtype=bool)
    seen[0] = True
    queue = [0]
    while queue:
        x = queue.pop()
        for i, g in enumerate(gens):
            y = int(A.table[x, g])
            if not seen[y]:
                seen[y] = True
                rep[y] = rep[x]
                rep[y, i] += 1
                queue.append(y)
    if not seen.all():
        raise DomainError("NotGenerating", "generating sequence misses elements")
    rows = []
    for x in range(order):
        for i, g in enumerate(gens):
            y = int(A.table[x, g])
            v = rep[x].copy()
            v[i] += 1
            v -= rep[y]
            if np.any(v):
                rows.append(v)
    R = np.array(rows, dtype=np.int64).T if rows else np.zeros((k, 0), dtype=np.int64)
    res = smith_normal_form(R, want_u=True, want_v=False)
    d = res.diagonal() + [0] * (k - min(R.shape))
    if any(di <= 0 for di in d):
        raise DomainError("NotFinite", "relation lattice is not full rank")
    total = 1
    for di in d:
        total *= di
    if total != order:
        raise DomainError("SolverCheckFailed",
                          f"coordinate volume {total} != order {order}")
    kept = [i for i, di in enumerate(d) if di != 1]
    factors = [int(d[i]) for i in kept]
    U = res.U
    coord_table = np.zeros((order, len(kept)), dtype=np.int64)
    for x in range(order):
        full = U @ rep[x]
        coord_table[x] = [int(full[i]) % d[i] for i in kept]
    by_coords = {tuple(int(c) for c in coord_table[x]): x for x in range(order)}
    if len(by_coords) != order:
        raise DomainError("SolverCheckFailed", "coordinates are not injective")
    basis = AbelianBasis(A, factors, coord_table, by_coords)
    _BASIS_CACHE[id(A)] = (A, basis)
    return basis


def hom_matrix(src: AbelianBasis, dst: AbelianBasis, f_table) -> np.ndarray:
    """The matrix of an additive map in coordinate bases.

    ``f_table[x]`` is the image element of x.  Additivity is verified
    on every element, so a non-homomorphic table raises instead of
    producing a wrong matrix.
    """
    f = np.array(f_table, dtype=np.int64)
    r, s = src.rank, dst.rank
    mat = np.zeros((s, r), dtype=np.int64)
    for j in range(r):
        coords = np.zeros(r, dtype=np.int64)
        coords[j] = 1
        x = src.element(coords)
        mat[:, j] = dst.coords(int(f[x]))
    dmods = np.array(dst.factors, dtype=np.int64)
    for x in range(src.group.order):
        want = dst.coords(int(f[x]))
        got = (mat @ src.coords(x)) % dmods if s else want
        if s and np.any((got - want) % dmods):
            raise DomainError("NotAdditive",
                              f"table is not additive at element {x}")
    return mat


# ---------------------------------------------------------------------------
# subquotients of coordinate modules

@dataclass
class QuotientData:
    """Invariant factors and coordinates for Z/B inside a coordinate
    module, where Z and B are given by generators with B <= Z."""

    mods: np.ndarray
    factors: list[int]
    order: int
    zgens: np.ndarray
    _umat: np.ndarray
    _dfull: list[int]
    _kept: list[int]
    _rep_vecs: np.ndarray
    _exp: int

    def is_member(self, x) -> bool:
        return self._express(x) is not None

    def _express(self, x):
        x = np.array(x, dtype=np.int64)
        if self.zgens.shape[0] == 0:
            red = x % self.mods
            return np.zeros(0, dtype=np.int64) if not np.any(red) else None
        cmods = np.full(self.zgens.shape[0], self._exp, dtype=np.int64)
        return solve_system(self.zgens.T, x, col_mods=cmods, row_mods=self.mods)

    def class_coords(self, x) -> tuple | None:
        """Coordinates of the class of x, or None when x is not in Z."""
        w = self._express(x)
        if w is None:
            return None
        if not self._kept:
            return ()
        full = self._umat @ w
        return tuple(int(full[i]) % self._dfull[i] for i in self._kept)

    def rep(self, coords) -> np.ndarray:
        """An ambient vector whose class has the given coordinates."""
        x = np.zeros(len(self.mods), dtype=np.int64)
        for c, v in zip(coords, self._rep_vecs):
            x += int(c) * v
        return x % self.mods

    def same_class(self, x, y) -> bool:
        diff = np.array(x, dtype=np.int64) - np.array(y, dtype=np.int64)
        c = self.class_coords(diff % self.mods)
        return c is not None and not any(c)

    def all_coords(self):
        return product(*(range(f) for f in self.factors))


def quotient_structure(mods, zgens, bgens) -> QuotientData:
    """The quotient of the span of zgens by the span of bgens, inside
    the coordinate module described by mods.

    Relations of the quotient are exponent vectors w with sum w_i z_i
    in the span of bgens; their lattice is the projected kernel of a
    combined congruence system, and its Smith form yields invariant
    factors, class coordinates, and class representatives.
    """
    mods = np.array(mods, dtype=np.int64)
    if np.any(mods <= 0):
        raise DomainError("BadShape", "ambient moduli must be positive")
    Z = np.array(zgens, dtype=np.int64).reshape(len(zgens), len(mods)) \
        if len(zgens) else np.zeros((0, len(mods)), dtype=np.int64)
    B = np.array(bgens, dtype=np.int64).reshape(len(bgens), len(mods)) \
        if len(bgens) else np.zeros((0, len(mods)), dtype=np.int64)
    Z %= mods
    B %= mods
    k, t = Z.shape[0], B.shape[0]
    if k == 0:
        if t:
            raise DomainError("BadShape", "bgens present with no zgens")
        return QuotientData(mods, [], 1, Z, np.eye(0, dtype=np.int64), [], [],
                            np.zeros((0, len(mods)), dtype=np.int64), 1)
    exp = 1
    for m in sorted({int(v) for v in mods}):
        exp = exp * m // np.gcd(exp, m)
    for b in B:
        if solve_system(Z.T, b, col_mods=np.full(k, exp, dtype=np.int64),
                        row_mods=mods) is None:
            raise DomainError("BadShape", "a bgen falls outside the span of zgens")

    # exp * e_i is always a relation (exp kills the ambient), so relation
    # generators can be reduced modulo exp with exp * I appended; this
    # keeps the Smith form's transforms small
    M = np.hstack([Z.T, B.T]) if t else Z.T
    ker = kernel_generators(M, col_mods=np.full(k + t, exp, dtype=np.int64),
                            row_mods=mods)
    L = ker[:, :k] % exp if ker.shape[0] else np.zeros((0, k), dtype=np.int64)
    L = np.vstack([L, exp * np.eye(k, dtype=np.int64)])
    Crel = L.T
    res = smith_normal_form(Crel, want_u=True, want_v=False,
                            modulus=2 * exp, want_uinv=True)
    d = res.diagonal() + [0] * (k - min(Crel.shape))
    if any(di <= 0 for di in d):
        raise DomainError("NotFinite", "quotient relation lattice not full rank")
    kept = [i for i, di in enumerate(d) if di != 1]
    factors = [int(d[i]) for i in kept]
    order = 1
    for f in factors:
        order *= f
    U, uinv = res.U, res.Uinv
    ident = (U @ uinv - np.eye(k, dtype=np.int64)) % exp if exp > 1 \
        else np.zeros((k, k), dtype=np.int64)
    if np.any(ident):
        raise DomainError("SolverCheckFailed", "inverse transform check failed")

    rep_vecs = np.zeros((len(kept), len(mods)), dtype=np.int64)
    for row, i in enumerate(kept):
        w = uinv[:, i]
        rep_vecs[row] = (w @ Z) % mods
    return QuotientData(mods, factors, order, Z, U, [int(x) for x in d],
                        kept, rep_vecs, exp)
