"""Morphisms out of free presentations, homotopies between them, and
the cohomology groups they compute.

A morphism assignment is a ResMorphism: basis images into a finite
reduced complex.  A homotopy is degree-one data H_n: basis_n -> C_{n+1}
together with the derived morphism it produces; two assignments are
homotopic when some degree-one data carries one to the other.  The
derivation rules are fixed by the requirement that the derived
assignment is again a morphism for every choice of data:

    m'(x)   = m(x) * d2(H1(x))                        on level-1 symbols
    m'_n(b) = m_n(b) * H~_{n-1}(d_n b) * d_{n+1}(H_n(b))   for n >= 2

where H~ extends H along formal expressions, twisted on level 1 as a
derivation over the original assignment: H~(uv) = H~(u)^{m(v)} * H~(v).

Cohomology of a presentation with coefficients in a module over the
resolved group is computed from the same formulas by integer linear
algebra: cocycles are the kernel of the top derivation matrix,
coboundaries the column span of the lower one, and the quotient's
invariant factors come from the Smith normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .complexes import CrossedComplex, PiOneData, pi1
from .errors import DomainError, SearchSpaceTooLarge
from .formal import FormalCrossed, FormalSum, FormalWord
from .groups import FiniteGroup, GModule, GroupHom, enumerate_homs
from .linalg import (QuotientData, abelian_basis, hom_matrix,
                     kernel_generators, quotient_structure, solve_system)
from .resolutions import (FreeCrsPresentation, ResMorphism,
                          validate_res_morphism)

MorphismAssignment = ResMorphism

SEARCH_CAP = 1_000_000


# ---------------------------------------------------------------------------
# induced maps and derivation values

def induced_theta(m: ResMorphism) -> tuple[PiOneData, tuple[int, ...]]:
    """The pi1 class of every level-1 symbol image."""
    pd = pi1(m.target, 0)
    return pd, tuple(pd.class_of_arrow(m.image(1, i))
                     for i in range(len(m.pres.basis[1])))


def _loop_rep(pd: PiOneData, q: int) -> int:
    """An arrow representing fundamental-group class q."""
    i = int(np.nonzero(pd.proj == q)[0][0])
    return int(pd.loops[i])


def _word_h_value(m: ResMorphism, H1, w: FormalWord) -> int:
    """The twisted-derivation extension of H1 along a word."""
    C = m.target
    G2 = C.group(2, 0)
    out = 0
    for s, e in w.letters:
        a = m.image(1, s)
        if e == -1:
            a = C.c1.inv(a)
            h = G2.inv(int(C.act(2, a)[int(H1[s])]))
        else:
            h = int(H1[s])
        out = G2.mul(int(C.act(2, a)[out]), h)
    return out


def _crossed_h_value(m: ResMorphism, H2, fc: FormalCrossed) -> int:
    """H2 pushed along an ordered product of conjugated generators."""
    C = m.target
    G3 = C.group(3, 0)
    out = 0
    for t in fc.terms:
        v = int(C.act(3, m.eval_word(t.conj))[int(H2[t.gen])])
        out = G3.mul(out, v if t.sign == 1 else G3.inv(v))
    return out


def _sum_h_value(m: ResMorphism, H3, fs: FormalSum, level: int) -> int:
    """H3 pushed along an integer combination, landing one level up."""
    C = m.target
    Gn = C.group(level, 0)
    out = 0
    for (g, w), c in fs.coeffs.items():
        v = int(C.act(level, m.eval_word(w))[int(H3[g])])
        out = Gn.mul(out, Gn.power(v, c))
    return out


def _h_on_boundary(m: ResMorphism, H: dict, n: int, i: int) -> int:
    """H~_{n-1} applied to the formal boundary of basis element i."""
    pres = m.pres
    if n == 2:
        return _word_h_value(m, H[1], pres.d2[i])
    if n == 3:
        return _crossed_h_value(m, H[2], pres.d3[i])
    return _sum_h_value(m, H[3], pres.d4[i], n)


@dataclass
class HomotopyAssignment:
    """Degree-one data carrying ``base`` to ``derived``."""

    base: ResMorphism
    data: dict[int, np.ndarray]
    derived: ResMorphism


def derived_morphism(m: ResMorphism, H: dict, check: bool = True) -> ResMorphism:
    """Apply degree-one data to a morphism assignment.

    ``H[n]`` maps basis_n into the target's level n+1; missing levels
    mean trivial data there.
    """
    C = m.target
    pres = m.pres
    full = {}
    for n in range(1, pres.depth + 1):
        size = len(pres.basis[n])
        if n in H and H[n] is not None:
            full[n] = np.asarray(H[n], dtype=np.int64)
            if full[n].shape != (size,):
                raise DomainError("BadShape", f"degree-one data at level {n}")
        else:
            full[n] = np.zeros(size, dtype=np.int64)

    images: dict[int, list[int]] = {}
    c1 = C.c1
    b2 = C.bmap(2, 0)
    images[1] = [c1.mul(m.image(1, i), int(b2[int(full[1][i])]))
                 for i in range(len(pres.basis[1]))]
    for n in range(2, pres.depth + 1):
        Gn = C.group(n, 0)
        vals = []
        for i in range(len(pres.basis[n])):
            v = Gn.mul(m.image(n, i), _h_on_boundary(m, full, n, i))
            if n + 1 <= C.dim:
                v = Gn.mul(v, C.boundary_of(n + 1, 0, int(full[n][i])))
            vals.append(v)
        images[n] = vals
    out = ResMorphism(pres, C, images, name=f"{m.name}~" if m.name else "")
    if check:
        validate_res_morphism(out)
    return out


# ---------------------------------------------------------------------------
# target shape detection

def _coefficient_level(C: CrossedComplex) -> int | None:
    """The single nontrivial level >= 2 of a coefficient-style target,
    None when all levels above 1 are trivial, and -1 when the target is
    not of coefficient shape (several levels, or nontrivial boundary).
    """
    levels = [n for n in range(2, C.dim + 1) if C.group(n, 0).order > 1]
    if not levels:
        return None
    if len(levels) > 1:
        return -1
    n0 = levels[0]
    b = C.bmap(n0, 0)
    if n0 == 2:
        idx = int(C.c1.id_arrow[0])
        if np.any(b != idx):
            return -1
    elif np.any(b != 0):
        return -1
    return n0


# ---------------------------------------------------------------------------
# enumeration

def _morphism_key(m: ResMorphism) -> tuple:
    return tuple(tuple(int(v) for v in m.images[n])
                 for n in sorted(m.images))


def _span_elements(gens: np.ndarray, mods: np.ndarray, cap: int) -> list:
    """All elements of the subgroup generated by gens inside the
    coordinate module, BFS over generator additions."""
    seen = {tuple(np.zeros(len(mods), dtype=np.int64))}
    frontier = [np.zeros(len(mods), dtype=np.int64)]
    while frontier:
        v = frontier.pop()
        for g in gens:
            w = (v + g) % mods
            t = tuple(int(x) for x in w)
            if t not in seen:
                if len(seen) >= cap:
                    raise SearchSpaceTooLarge(
                        f"solution span exceeds {cap} elements")
                seen.add(t)
                frontier.append(w)
    return sorted(seen)


def enumerate_morphisms(F: FreeCrsPresentation, C: CrossedComplex,
                        theta: GroupHom | None = None,
                        cap: int = SEARCH_CAP) -> list[ResMorphism]:
    """Every morphism assignment F -> C, optionally restricted to those
    inducing a given map on fundamental groups.

    Coefficient-style targets are handled by the linear cocycle system;
    anything else falls back to bounded search over basis images.
    """
    if not C.is_reduced:
        raise DomainError("NotReduced", "enumeration needs a reduced target")
    pd = pi1(C, 0)
    if theta is not None:
        theta.validate()
        if theta.dom.order != F.group.order or theta.cod.order != pd.group.order:
            raise DomainError("IncompatibleTheta",
                              "theta endpoints do not match source group and pi1")

    n0 = _coefficient_level(C)
    out: list[ResMorphism] = []
    if n0 != -1:
        homs = [theta] if theta is not None else enumerate_homs(F.group, pd.group)
        for th in homs:
            arrows = [_loop_rep(pd, int(th.image[F.symbol_image[i]]))
                      for i in range(len(F.basis[1]))]
            images = {1: arrows}
            for n in range(2, F.depth + 1):
                images[n] = [0] * len(F.basis[n])
            base = ResMorphism(F, C, images)
            if n0 is None or n0 > F.depth:
                validate_res_morphism(base)
                out.append(base)
                continue
            A = C.group(n0, 0)
            basisA = abelian_basis(A)
            r = basisA.rank
            if r == 0:
                validate_res_morphism(base)
                out.append(base)
                continue
            mat, rows_mods, cols_mods = _cocycle_matrix(F, C, th, basisA, n0)
            gens = kernel_generators(mat, cols_mods, rows_mods)
            for vec in _span_elements(gens, cols_mods, cap):
                vals = _vector_to_values(np.array(vec), basisA)
                m = ResMorphism(F, C, {**{k: list(v) for k, v in images.items()},
                                       n0: [int(x) for x in vals]})
                validate_res_morphism(m)
                out.append(m)
        out.sort(key=_morphism_key)
        return out

    # general bounded search
    g1 = C.c1
    loops = [a for a in range(g1.n_arrows)
             if int(g1.src[a]) == 0 and int(g1.tgt[a]) == 0]
    nsym = len(F.basis[1])
    if len(loops) ** nsym > cap:
        raise SearchSpaceTooLarge(f"{len(loops)}^{nsym} level-1 assignments")
    pre: dict[int, dict[int, list[int]]] = {}
    for n in range(2, F.depth + 1):
        Gn = C.group(n, 0)
        table: dict[int, list[int]] = {}
        for c in range(Gn.order):
            table.setdefault(C.boundary_of(n, 0, c), []).append(c)
        pre[n] = table
    for combo in product(loops, repeat=nsym):
        if theta is not None:
            want = tuple(int(theta.image[F.symbol_image[i]]) for i in range(nsym))
            got = tuple(pd.class_of_arrow(a) for a in combo)
            if got != want:
                continue
        m = ResMorphism(F, C, {1: list(combo)})
        out.extend(_extend_levels(m, 2, pre, cap))
        if len(out) > cap:
            raise SearchSpaceTooLarge(f"morphism count exceeds {cap}")
    out.sort(key=_morphism_key)
    return out


def _extend_levels(m: ResMorphism, n: int, pre: dict,
                   cap: int) -> list[ResMorphism]:
    """All completions of a partial assignment from level n upward."""
    F, C = m.pres, m.target
    if n > F.depth:
        validate_res_morphism(m)
        return [m]
    sets = []
    total = 1
    for i in range(len(F.basis[n])):
        want = m.eval_boundary(n, i)
        cands = pre[n].get(want, [])
        if not cands:
            return []
        total *= len(cands)
        if total > cap:
            raise SearchSpaceTooLarge(f"level-{n} completion space exceeds {cap}")
        sets.append(cands)
    out = []
    for combo in product(*sets):
        m2 = ResMorphism(F, C, {**m.images, n: list(combo)})
        out.extend(_extend_levels(m2, n + 1, pre, cap))
        if len(out) > cap:
            raise SearchSpaceTooLarge(f"morphism count exceeds {cap}")
    return out


# ---------------------------------------------------------------------------
# homotopy decision

def is_homotopic(m: ResMorphism, m2: ResMorphism,
                 cap: int = SEARCH_CAP) -> HomotopyAssignment | None:
    """A homotopy witness carrying m to m2, or None.

    Raises AmbientMismatch when the assignments do not share source and
    target, and IncompatibleTheta when their induced fundamental-group
    maps differ (no homotopy can repair that).
    """
    if m.pres is not m2.pres or m.target is not m2.target:
        raise DomainError("AmbientMismatch",
                          "assignments do not share source and target")
    C = m.target
    pd, th1 = induced_theta(m)
    _, th2 = induced_theta(m2)
    if th1 != th2:
        raise DomainError("IncompatibleTheta",
                          "assignments induce different maps on pi1")

    F = m.pres
    n0 = _coefficient_level(C)
    if n0 is not None and n0 != -1 and n0 <= F.depth:
        return _is_homotopic_coefficient(m, m2, n0)

    # bounded level-by-level search
    g2 = C.group(2, 0)
    b2 = C.bmap(2, 0)
    c1 = C.c1
    sets1 = []
    for i in range(len(F.basis[1])):
        a, b = m.image(1, i), m2.image(1, i)
        cands = [h for h in range(g2.order)
                 if c1.mul(a, int(b2[h])) == b]
        if not cands:
            return None
        sets1.append(cands)
    total = 1
    for s in sets1:
        total *= len(s)
    if total > cap:
        raise SearchSpaceTooLarge(f"homotopy search space exceeds {cap}")
    for combo in product(*sets1):
        H = {1: np.array(combo, dtype=np.int64)}
        found = _complete_homotopy(m, m2, H, 2, cap)
        if found is not None:
            derived = derived_morphism(m, found)
            if _morphism_key(derived) == _morphism_key(m2):
                return HomotopyAssignment(m, found, derived)
    return None


def _complete_homotopy(m: ResMorphism, m2: ResMorphism, H: dict,
                       n: int, cap: int) -> dict | None:
    """Extend degree-one data upward so the derived morphism matches m2."""
    F, C = m.pres, m.target
    if n > F.depth:
        return H
    Gn = C.group(n, 0)
    size = len(F.basis[n])
    need = []
    for i in range(size):
        v = Gn.mul(m.image(n, i), _h_on_boundary(m, H, n, i))
        need.append(Gn.mul(Gn.inv(v), m2.image(n, i)))
    if n + 1 > C.dim:
        if any(need):
            return None
        H2 = dict(H)
        H2[n] = np.zeros(size, dtype=np.int64)
        return _complete_homotopy(m, m2, H2, n + 1, cap)
    table: dict[int, list[int]] = {}
    Gup = C.group(n + 1, 0)
    for c in range(Gup.order):
        table.setdefault(C.boundary_of(n + 1, 0, c), []).append(c)
    sets = []
    total = 1
    for r in need:
        cands = table.get(r, [])
        if not cands:
            return None
        total *= len(cands)
        if total > cap:
            raise SearchSpaceTooLarge(f"homotopy level-{n} space exceeds {cap}")
        sets.append(cands)
    for combo in product(*sets):
        H2 = dict(H)
        H2[n] = np.array(combo, dtype=np.int64)
        found = _complete_homotopy(m, m2, H2, n + 1, cap)
        if found is not None:
            return found
    return None


def _is_homotopic_coefficient(m: ResMorphism, m2: ResMorphism,
                              n0: int) -> HomotopyAssignment | None:
    """Linear solve for targets with one coefficient level."""
    F, C = m.pres, m.target
    for n in range(1, F.depth + 1):
        if n == n0:
            continue
        if list(m.images[n]) != list(m2.images[n]):
            return None
    A = C.group(n0, 0)
    basisA = abelian_basis(A)
    r = basisA.rank
    size = len(F.basis[n0])
    if r == 0:
        return HomotopyAssignment(m, {}, derived_morphism(m, {}))
    diff = np.zeros(size * r, dtype=np.int64)
    for i in range(size):
        d = A.mul(A.inv(m.image(n0, i)), m2.image(n0, i))
        diff[i * r:(i + 1) * r] = basisA.coords(d)
    th = _theta_of(m)
    if n0 == 2:
        mat, rmods, cmods = _derivation_matrix_level1(F, C, th, basisA)
    else:
        mat, rmods, cmods = _crossed_matrix(F, C, th, basisA)
    sol = solve_system(mat, diff, cmods, rmods)
    if sol is None:
        return None
    Hvals = _vector_to_values(sol, basisA)
    H = {n0 - 1: np.array([int(x) for x in Hvals], dtype=np.int64)}
    derived = derived_morphism(m, H)
    if _morphism_key(derived) != _morphism_key(m2):
        raise DomainError("SolverCheckFailed",
                          "homotopy solve produced a non-matching witness")
    return HomotopyAssignment(m, H, derived)


def _theta_of(m: ResMorphism) -> GroupHom:
    """The induced hom from the resolved group to pi1 of the target."""
    pd, classes = induced_theta(m)
    F = m.pres
    image = np.zeros(F.group.order, dtype=np.int64)
    seen = np.zeros(F.group.order, dtype=bool)
    for i in range(len(F.basis[1])):
        g = F.symbol_image[i]
        image[g] = classes[i]
        seen[g] = True
    # symbols may not cover the group; close multiplicatively
    changed = True
    while changed and not seen.all():
        changed = False
        for a in range(F.group.order):
            if not seen[a]:
                continue
            for b in range(F.group.order):
                if seen[b]:
                    c = int(F.group.table[a, b])
                    if not seen[c]:
                        image[c] = int(pd.group.table[image[a], image[b]])
                        seen[c] = True
                        changed = True
    if not seen.all():
        raise DomainError("InvalidMorphism", "symbols do not generate the group")
    th = GroupHom(F.group, pd.group, image)
    th.validate()
    return th


# ---------------------------------------------------------------------------
# homotopy classes

def homotopy_classes(F: FreeCrsPresentation, C: CrossedComplex,
                     theta: GroupHom | None = None,
                     cap: int = SEARCH_CAP) -> list[list[ResMorphism]]:
    """The partition of enumerate_morphisms by homotopy.

    Each class lists its members with the lexicographically least
    first; classes are sorted by those representatives.
    """
    morphisms = enumerate_morphisms(F, C, theta, cap)
    by_theta: dict[tuple, list[ResMorphism]] = {}
    for m in morphisms:
        _, th = induced_theta(m)
        by_theta.setdefault(th, []).append(m)
    classes: list[list[ResMorphism]] = []
    for th in sorted(by_theta):
        group = by_theta[th]
        parent = list(range(len(group)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                if find(i) == find(j):
                    continue
                if is_homotopic(group[i], group[j], cap) is not None:
                    parent[find(j)] = find(i)
        buckets: dict[int, list[ResMorphism]] = {}
        for i, m in enumerate(group):
            buckets.setdefault(find(i), []).append(m)
        for members in buckets.values():
            members.sort(key=_morphism_key)
            classes.append(members)
    classes.sort(key=lambda ms: _morphism_key(ms[0]))
    return classes


# ---------------------------------------------------------------------------
# cohomology

def _vector_to_values(vec: np.ndarray, basisA) -> list[int]:
    r = basisA.rank
    if r == 0:
        return []
    size = len(vec) // r
    return [basisA.element(vec[i * r:(i + 1) * r]) for i in range(size)]


def _values_to_vector(values, basisA) -> np.ndarray:
    r = basisA.rank
    out = np.zeros(len(values) * r, dtype=np.int64)
    for i, v in enumerate(values):
        out[i * r:(i + 1) * r] = basisA.coords(int(v))
    return out


def _action_matrices(mod: GModule, basisA) -> list[np.ndarray]:
    return [hom_matrix(basisA, basisA, mod.act[q])
            for q in range(mod.actor.order)]


def _derivation_matrix_level1(F, C_or_mod, theta: GroupHom, basisA):
    """Matrix of the twisted-derivation coboundary from level-1 data to
    level-2 values, in coefficient coordinates."""
    mod = C_or_mod if isinstance(C_or_mod, GModule) else _module_of(C_or_mod)
    P = _action_matrices(mod, basisA)
    r = basisA.rank
    G = F.group
    rows = len(F.basis[2]) * r
    cols = len(F.basis[1]) * r
    mat = np.zeros((rows, cols), dtype=np.int64)
    for bi, w in enumerate(F.d2):
        tail = 0
        for s, e in reversed(w.letters):
            g = F.symbol_image[s]
            if e == 1:
                q = theta.image[tail]
                blk = P[int(q)]
                letter = g
            else:
                q = theta.image[int(G.table[G.inv(g), tail])]
                blk = -P[int(q)]
                letter = G.inv(g)
            mat[bi * r:(bi + 1) * r, s * r:(s + 1) * r] += blk
            tail = int(G.table[letter, tail])
    rmods = np.tile(basisA.factors, len(F.basis[2])).astype(np.int64)
    cmods = np.tile(basisA.factors, len(F.basis[1])).astype(np.int64)
    return mat, rmods, cmods


def _crossed_matrix(F, C_or_mod, theta: GroupHom, basisA):
    """Matrix of evaluation of level-3 formal boundaries against
    level-2 data (used both as a cocycle system and a coboundary)."""
    mod = C_or_mod if isinstance(C_or_mod, GModule) else _module_of(C_or_mod)
    P = _action_matrices(mod, basisA)
    r = basisA.rank
    rows = len(F.basis[3]) * r
    cols = len(F.basis[2]) * r
    mat = np.zeros((rows, cols), dtype=np.int64)
    for bi, fc in enumerate(F.d3):
        for t in fc.terms:
            q = theta.image[F.word_image(t.conj)]
            blk = P[int(q)] * t.sign
            mat[bi * r:(bi + 1) * r, t.gen * r:(t.gen + 1) * r] += blk
    rmods = np.tile(basisA.factors, len(F.basis[3])).astype(np.int64)
    cmods = np.tile(basisA.factors, len(F.basis[2])).astype(np.int64)
    return mat, rmods, cmods


def _sum_matrix(F, mod: GModule, theta: GroupHom, basisA):
    """Matrix of evaluation of level-4 formal boundaries against
    level-3 data."""
    P = _action_matrices(mod, basisA)
    r = basisA.rank
    rows = len(F.basis[4]) * r
    cols = len(F.basis[3]) * r
    mat = np.zeros((rows, cols), dtype=np.int64)
    for bi, fs in enumerate(F.d4):
        for (g, w), c in fs.coeffs.items():
            q = theta.image[F.word_image(w)]
            mat[bi * r:(bi + 1) * r, g * r:(g + 1) * r] += c * P[int(q)]
    rmods = np.tile(basisA.factors, len(F.basis[4])).astype(np.int64)
    cmods = np.tile(basisA.factors, len(F.basis[3])).astype(np.int64)
    return mat, rmods, cmods


def _module_of(C: CrossedComplex) -> GModule:
    """The coefficient module of a coefficient-style target."""
    n0 = _coefficient_level(C)
    if n0 is None or n0 == -1:
        raise DomainError("BadShape", "target has no single coefficient level")
    pd = pi1(C, 0)
    A = C.group(n0, 0)
    act = np.zeros((pd.group.order, A.order), dtype=np.int64)
    done = set()
    for i, loop in enumerate(pd.loops):
        q = int(pd.proj[i])
        if q in done:
            continue
        done.add(q)
        act[q] = C.act(n0, int(loop))
    return GModule(A, pd.group, act)


def _cocycle_matrix(F, C: CrossedComplex, theta: GroupHom, basisA, n0: int):
    """The linear system whose kernel is the set of level-n0 cocycle
    assignments into a coefficient target."""
    mod = _module_of(C)
    if n0 + 1 > F.depth:
        r = basisA.rank
        cols = len(F.basis[n0]) * r
        mat = np.zeros((0, cols), dtype=np.int64)
        return mat, np.zeros(0, dtype=np.int64), \
            np.tile(basisA.factors, len(F.basis[n0])).astype(np.int64)
    if n0 == 2:
        return _crossed_matrix(F, mod, theta, basisA)
    if n0 == 3:
        return _sum_matrix(F, mod, theta, basisA)
    raise DomainError("BadDimension", f"no cocycle system at level {n0}")


@dataclass(frozen=True)
class CohomologyClass:
    """A class in a computed cohomology group, held by coordinates."""

    group: "CohomologyGroup"
    coords: tuple

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def values(self) -> list[int]:
        return self.group.representative(self)

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        return class_arithmetic(self, other)

    def __neg__(self) -> "CohomologyClass":
        return negate(self)


@dataclass
class CohomologyGroup:
    """H^n of a presentation with module coefficients.

    Cocycles are value assignments basis_n -> A; classes are tuples of
    coordinates against the invariant factors.  ``class_of`` rejects
    non-cocycles, and representatives are reproducible (built from the
    Smith-form transform, not search).
    """

    pres: FreeCrsPresentation
    theta: GroupHom
    module: GModule
    n: int
    factors: list[int]
    order: int
    quotient: QuotientData
    basisA: object

    @property
    def zero(self) -> CohomologyClass:
        return CohomologyClass(self, tuple(0 for _ in self.factors))

    def class_of(self, values) -> CohomologyClass:
        if self.basisA.rank == 0:
            return self.zero
        vec = _values_to_vector(values, self.basisA)
        coords = self.quotient.class_coords(vec)
        if coords is None:
            raise DomainError("NotACocycle",
                              "value assignment fails the cocycle conditions")
        return CohomologyClass(self, coords)

    def is_cocycle(self, values) -> bool:
        if self.basisA.rank == 0:
            return True
        vec = _values_to_vector(values, self.basisA)
        return self.quotient.class_coords(vec) is not None

    def representative(self, cls: CohomologyClass) -> list[int]:
        if cls.group is not self:
            raise DomainError("AmbientMismatch", "class from another group")
        if self.basisA.rank == 0:
            return [0] * len(self.pres.basis[self.n])
        vec = self.quotient.rep(cls.coords)
        return _vector_to_values(vec, self.basisA)

    def all_classes(self) -> list[CohomologyClass]:
        return [CohomologyClass(self, c) for c in self.quotient.all_coords()]

    def to_json(self) -> dict:
        reps = []
        if self.order <= 512:
            for cls in self.all_classes():
                reps.append([int(v) for v in self.representative(cls)])
        return {"invariant_factors": [int(f) for f in self.factors],
                "order": int(self.order),
                "representatives": reps}


def class_arithmetic(a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    if a.group is not b.group:
        raise DomainError("AmbientMismatch", "classes from different groups")
    f = a.group.factors
    return CohomologyClass(a.group, tuple((x + y) % d
                                          for x, y, d in zip(a.coords, b.coords, f)))


def negate(a: CohomologyClass) -> CohomologyClass:
    f = a.group.factors
    return CohomologyClass(a.group, tuple((-x) % d for x, d in zip(a.coords, f)))


def cohomology_group(F: FreeCrsPresentation, theta: GroupHom, mod: GModule,
                     n: int) -> CohomologyGroup:
    """H^n of the presentation over theta, coefficients in the module.

    Cocycles come from the kernel of the level-(n+1) evaluation matrix,
    coboundaries from the columns of the level-(n-1) one, and the
    quotient from the Smith normal form; the containment of
    coboundaries in cocycles is verified on the way (a failed check
    would mean the boundary formulas are wrong, so it raises).
    """
    if n not in (2, 3):
        raise DomainError("BadDimension", f"cohomology implemented for n in 2..3, got {n}")
    if F.depth < n + 1:
        raise DomainError("DepthTooShallow",
                          f"depth {F.depth} cannot support H^{n} (needs {n + 1})")
    theta.validate()
    if theta.dom.order != F.group.order:
        raise DomainError("IncompatibleTheta", "theta domain is not the resolved group")
    if theta.cod.order != mod.actor.order:
        raise DomainError("IncompatibleTheta", "theta codomain is not the module actor")
    mod.validate()
    basisA = abelian_basis(mod.coeff)
    r = basisA.rank
    tile_n = np.tile(basisA.factors, len(F.basis[n])).astype(np.int64)
    if r == 0:
        qd = quotient_structure(np.ones(max(len(F.basis[n]), 1), dtype=np.int64),
                                [], [])
        return CohomologyGroup(F, theta, mod, n, [], 1, qd, basisA)

    if n == 2:
        upmat, uprows, upcols = _crossed_matrix(F, mod, theta, basisA)
        lomat, lorows, locols = _derivation_matrix_level1(F, mod, theta, basisA)
    else:
        upmat, uprows, upcols = _sum_matrix(F, mod, theta, basisA)
        lomat, lorows, locols = _crossed_matrix(F, mod, theta, basisA)

    zgens = kernel_generators(upmat, upcols, uprows)
    bgens = []
    seen = set()
    for j in range(lomat.shape[1]):
        col = lomat[:, j] % tile_n
        t = tuple(int(x) for x in col)
        if any(t) and t not in seen:
            seen.add(t)
            bgens.append(col)
    qd = quotient_structure(tile_n, list(zgens), bgens)
    return CohomologyGroup(F, theta, mod, n, qd.factors, qd.order, qd, basisA)


def coboundary_witness(F: FreeCrsPresentation, theta: GroupHom, mod: GModule,
                       n: int, values) -> list[int] | None:
    """A level-(n-1) assignment whose twisted coboundary equals the
    given level-n assignment, or None when there is none.

    This is the constructive half of ``class_of(values).is_zero``: when
    a class vanishes, the witness realizes the vanishing as an explicit
    correction term one level down.
    """
    if n not in (2, 3):
        raise DomainError("BadDimension",
                          f"witnesses implemented for n in 2..3, got {n}")
    if F.depth < n:
        raise DomainError("DepthTooShallow",
                          f"depth {F.depth} has no level {n}")
    theta.validate()
    if theta.dom.order != F.group.order:
        raise DomainError("IncompatibleTheta", "theta domain is not the resolved group")
    if theta.cod.order != mod.actor.order:
        raise DomainError("IncompatibleTheta", "theta codomain is not the module actor")
    mod.validate()
    if len(values) != len(F.basis[n]):
        raise DomainError("BadShape",
                          "need one value per level-%d basis element" % n)
    basisA = abelian_basis(mod.coeff)
    if basisA.rank == 0:
        return [0] * len(F.basis[n - 1])
    if n == 2:
        lomat, lorows, locols = _derivation_matrix_level1(F, mod, theta, basisA)
    else:
        lomat, lorows, locols = _crossed_matrix(F, mod, theta, basisA)
    vec = _values_to_vector(values, basisA)
    sol = solve_system(lomat, vec, locols, lorows)
    if sol is None:
        return None
    return _vector_to_values(np.asarray(sol, dtype=np.int64), basisA)
