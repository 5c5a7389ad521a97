"""Extensions of one finite group by another, via factor sets.

An extension of K by G with prescribed outer action psi: G -> Out(K)
is encoded by a factor set: a pointwise automorphism lift phi of psi
together with a table f: G x G -> K measuring how far phi is from
multiplicative.  Validity is two laws, both stated diagrammatically
(a*b means a then b, evaluation k^a is a right action):

  conjugation compatibility   chi(f(g, h)) = phi(g) phi(h) phi(gh)^-1
  cocycle law                 f(g, h) f(gh, k) = f(h, k)^{phi(g)^-1} f(g, hk)

plus the pinning phi(e) = id.  A factor set is exactly a resolution
morphism from the standard free resolution of G into the conjugation
crossed module of K, which is how this module computes: equivalence of
factor sets is homotopy of morphisms, the extension itself is a twisted
product rebuilt from the table, and whether a bare outer action admits
any factor set at all is decided by a degree-three cohomology class
read off through the aspherical-cover splitting.  Everything is
verified against the independent enumeration oracle in the test suite.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .complexes import CrossedComplex, SplitData, aut_crossed_module, xi_zeta_split
from .errors import DomainError, SearchSpaceTooLarge
from .groups import (AutData, FiniteGroup, GModule, GroupHom,
                     automorphism_group, center, enumerate_homs,
                     group_fingerprint, identify, make_group, make_module)
from .homotopy import (CohomologyClass, CohomologyGroup, coboundary_witness,
                       cohomology_group)
from .resolutions import (FreeCrsPresentation, ResMorphism,
                          standard_resolution, then_morphism,
                          validate_res_morphism)

SEARCH_CAP = 1_000_000

# Caches keyed by object identity; each entry keeps its key object
# alive so an id cannot be recycled while the cache holds it.  Shared
# instances matter beyond speed: homotopy comparisons insist that two
# morphisms literally share their source presentation and target
# complex.
_AUT_CACHE: dict[int, tuple[FiniteGroup, AutData]] = {}
_SPLIT_CACHE: dict[int, tuple[FiniteGroup, CrossedComplex, SplitData]] = {}
_RES_CACHE: dict[int, tuple[FiniteGroup, FreeCrsPresentation]] = {}


def _aut_of(K: FiniteGroup) -> AutData:
    hit = _AUT_CACHE.get(id(K))
    if hit is not None and hit[0] is K:
        return hit[1]
    ad = automorphism_group(K)
    _AUT_CACHE[id(K)] = (K, ad)
    return ad


def _split_of(K: FiniteGroup) -> tuple[CrossedComplex, SplitData]:
    hit = _SPLIT_CACHE.get(id(K))
    if hit is not None and hit[0] is K:
        return hit[1], hit[2]
    C = aut_crossed_module(_aut_of(K))
    split = xi_zeta_split(C, 2)
    _SPLIT_CACHE[id(K)] = (K, C, split)
    return C, split


def _std_res(G: FiniteGroup) -> FreeCrsPresentation:
    hit = _RES_CACHE.get(id(G))
    if hit is not None and hit[0] is G:
        return hit[1]
    F = standard_resolution(G, 4)
    _RES_CACHE[id(G)] = (G, F)
    return F


# ---------------------------------------------------------------------------
# abstract kernels

@dataclass
class AbstractKernel:
    """A kernel group, a quotient group, and an outer action tying them.

    Carries everything the obstruction and classification machinery
    needs: the automorphism structure of K, the centre as a module over
    G (inner ambiguity in the lifts acts trivially on the centre, so
    the action is well defined), and cached cohomology of the standard
    resolution of G with those coefficients.
    """

    K: FiniteGroup
    G: FiniteGroup
    psi: GroupHom
    aut: AutData
    centre: FiniteGroup
    embed: np.ndarray
    pos: np.ndarray
    module: GModule
    theta: GroupHom
    lift_of_out: np.ndarray
    _h2: CohomologyGroup | None = field(default=None, repr=False)
    _h3: CohomologyGroup | None = field(default=None, repr=False)

    def resolution(self) -> FreeCrsPresentation:
        return _std_res(self.G)

    def h2(self) -> CohomologyGroup:
        if self._h2 is None:
            self._h2 = cohomology_group(self.resolution(), self.theta,
                                        self.module, 2)
        return self._h2

    def h3(self) -> CohomologyGroup:
        if self._h3 is None:
            self._h3 = cohomology_group(self.resolution(), self.theta,
                                        self.module, 3)
        return self._h3

    @property
    def name(self) -> str:
        return f"{self.K.name}-by-{self.G.name}"


def abstract_kernel(K: FiniteGroup, G: FiniteGroup, psi) -> AbstractKernel:
    """Package an outer action psi: G -> Out(K) with its derived data.

    ``psi`` may be a GroupHom or a plain image array; either way it is
    validated.  The centre module records the action of G on Z(K)
    through the smallest automorphism lift of each outer class.
    """
    aut = _aut_of(K)
    if isinstance(psi, GroupHom):
        image = np.asarray(psi.image, dtype=np.int64)
    else:
        image = np.asarray(psi, dtype=np.int64)
    psi_hom = GroupHom(G, aut.out, image)
    psi_hom.validate()

    centre, embed = center(K)
    pos = np.full(K.order, -1, dtype=np.int64)
    pos[embed] = np.arange(embed.size, dtype=np.int64)
    for a in aut.inn:
        if not np.array_equal(aut.perms[a][embed], embed):
            raise DomainError("KernelMismatch",
                              f"inner automorphism {a} moves the centre")

    lift_of_out = np.full(aut.out.order, -1, dtype=np.int64)
    for a in range(aut.aut.order):
        o = int(aut.proj.image[a])
        if lift_of_out[o] < 0:
            lift_of_out[o] = a

    act = np.empty((G.order, centre.order), dtype=np.int64)
    for g in range(G.order):
        perm = aut.perms[lift_of_out[image[g]]]
        act[g] = pos[perm[embed]]
    module = make_module(centre, G, act)
    theta = GroupHom(G, G, np.arange(G.order, dtype=np.int64))
    return AbstractKernel(K, G, psi_hom, aut, centre, embed, pos,
                          module, theta, lift_of_out)


def outer_actions(K: FiniteGroup, G: FiniteGroup) -> list[GroupHom]:
    """All outer actions G -> Out(K), deterministically ordered."""
    return enumerate_homs(G, _aut_of(K).out)


# ---------------------------------------------------------------------------
# factor sets

@dataclass
class FactorSet:
    """An automorphism lift with its defect table.

    ``phi[g]`` indexes an automorphism of K, ``f[g, h]`` an element of
    K; validity is checked by :func:`validate_factor_set`.  The table
    is not assumed normalised: ``f(e, e)`` may be any central element,
    the laws then force ``f(e, k) = f(e, e)`` for every k.
    """

    K: FiniteGroup
    G: FiniteGroup
    aut: AutData
    phi: np.ndarray
    f: np.ndarray

    def __post_init__(self):
        self.phi = np.asarray(self.phi, dtype=np.int64)
        self.f = np.asarray(self.f, dtype=np.int64)

    def key(self) -> tuple:
        """Total order on factor sets over a fixed (K, G)."""
        return tuple(int(x) for x in self.phi) + \
            tuple(int(x) for x in self.f.reshape(-1))

    def induced_psi(self) -> np.ndarray:
        """Outer class of each lift; a homomorphism image when valid."""
        return self.aut.proj.image[self.phi]

    def to_json(self) -> dict:
        return {"phi": [int(a) for a in self.phi],
                "f": [[int(v) for v in row] for row in self.f]}


def validate_factor_set(fs: FactorSet) -> None:
    """Check the two factor-set laws and the identity pinning.

    Raises InvalidFactorSet naming the violated law and a witness
    tuple.
    """
    K, G, aut = fs.K, fs.G, fs.aut
    n = G.order
    if fs.phi.shape != (n,) or fs.f.shape != (n, n):
        raise DomainError("InvalidFactorSet", "phi or f has the wrong shape")
    if fs.phi.min() < 0 or fs.phi.max() >= aut.aut.order:
        raise DomainError("InvalidFactorSet", "phi indexes outside Aut(K)")
    if fs.f.min() < 0 or fs.f.max() >= K.order:
        raise DomainError("InvalidFactorSet", "f indexes outside K")
    if fs.phi[0] != 0:
        raise DomainError("InvalidFactorSet",
                          "the identity must lift to the identity automorphism")
    at, ai = aut.aut.table, aut.aut.inverse
    chi = aut.chi.image
    f, phi = fs.f, fs.phi
    target = at[at[phi[:, None], phi[None, :]], ai[phi[G.table]]]
    bad = np.argwhere(chi[f] != target)
    if bad.size:
        g, h = bad[0]
        raise DomainError(
            "InvalidFactorSet",
            f"conjugation compatibility fails at (g, h) = ({g}, {h})")
    kt = K.table
    for g in range(n):
        pinv = aut.perms[ai[phi[g]]]
        lhs = kt[f[g][:, None], f[G.table[g]]]
        rhs = kt[pinv[f], f[g][G.table]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            h, k = bad[0]
            raise DomainError(
                "InvalidFactorSet",
                f"cocycle law fails at (g, h, k) = ({g}, {h}, {k})")


def transform_factor_set(fs: FactorSet, d) -> FactorSet:
    """Reparametrise a factor set by a map d: G -> K with d(e) central.

    This is precisely the deformation making (k, g) -> (k d(g), g) an
    isomorphism between the extensions the two factor sets build, which
    fixes K pointwise and induces the identity on G.  Centrality of
    d(e) keeps the identity lift pinned.
    """
    K, G, aut = fs.K, fs.G, fs.aut
    n = G.order
    d = np.asarray(d, dtype=np.int64)
    if d.shape != (n,) or d.min() < 0 or d.max() >= K.order:
        raise DomainError("BadShape", "d must assign one element of K per element of G")
    at, ai = aut.aut.table, aut.aut.inverse
    chi = aut.chi.image
    if chi[d[0]] != 0:
        raise DomainError("NotCentral",
                          "the deformation must be central at the identity")
    kt, ki = K.table, K.inverse
    phi2 = at[ai[chi[d]], fs.phi]
    f2 = np.empty((n, n), dtype=np.int64)
    for g1 in range(n):
        pinv = aut.perms[ai[phi2[g1]]]
        inner = kt[ki[d[g1]], kt[fs.f[g1], d[G.table[g1]]]]
        f2[g1] = kt[ki[pinv[d]], inner]
    return FactorSet(K, G, aut, phi2, f2)


def _same_tables(A: FiniteGroup, B: FiniteGroup) -> bool:
    return A is B or (A.order == B.order and np.array_equal(A.table, B.table))


def _deformation_space(fs: FactorSet):
    """Iterator over admissible d-maps plus the size of the space."""
    K = fs.K
    centre_els = [int(z) for z in K.center_elements()]
    n = fs.G.order
    total = len(centre_els) * K.order ** (n - 1)
    pools = [centre_els] + [range(K.order)] * (n - 1)
    return product(*pools), total


def equivalent_factor_sets(a: FactorSet, b: FactorSet,
                           cap: int = SEARCH_CAP
                           ) -> tuple[bool, np.ndarray | None]:
    """Decide equivalence; on success also return the deformation.

    Raises KernelMismatch when the two factor sets do not even live
    over the same pair of groups.  Factor sets inducing different
    outer actions are inequivalent (no deformation moves the induced
    action), so those return False without searching.
    """
    if not _same_tables(a.K, b.K):
        raise DomainError("KernelMismatch", "the kernel groups differ")
    if not _same_tables(a.G, b.G):
        raise DomainError("KernelMismatch", "the quotient groups differ")
    validate_factor_set(a)
    validate_factor_set(b)
    if not np.array_equal(a.induced_psi(), b.induced_psi()):
        return False, None
    space, total = _deformation_space(a)
    if total > cap:
        raise SearchSpaceTooLarge(
            f"{total} deformations exceed the cap {cap}")
    want = b.key()
    for d in space:
        if transform_factor_set(a, d).key() == want:
            return True, np.array(d, dtype=np.int64)
    return False, None


def normalize_factor_set(fs: FactorSet) -> FactorSet:
    """The equivalent factor set with f(e, .) = f(., e) = identity.

    Deforming by d(e) = f(e, e) and d(g) = e elsewhere clears the
    identity row and column in one step.
    """
    validate_factor_set(fs)
    d = np.zeros(fs.G.order, dtype=np.int64)
    d[0] = fs.f[0, 0]
    out = transform_factor_set(fs, d)
    if np.any(out.f[0]) or np.any(out.f[:, 0]):
        raise DomainError("InvalidFactorSet",
                          "normalisation failed to clear the identity cells")
    return out


def canonical_factor_set(fs: FactorSet, cap: int = SEARCH_CAP) -> FactorSet:
    """The lexicographically least member of the equivalence class.

    Deterministic class representative: exhausts the deformation space
    and keeps the smallest (phi, f) key.
    """
    validate_factor_set(fs)
    space, total = _deformation_space(fs)
    if total > cap:
        raise SearchSpaceTooLarge(
            f"{total} deformations exceed the cap {cap}")
    best = fs
    best_key = fs.key()
    for d in space:
        t = transform_factor_set(fs, d)
        k = t.key()
        if k < best_key:
            best, best_key = t, k
    return best


# ---------------------------------------------------------------------------
# the morphism bridge

def _is_standard_shape(F: FreeCrsPresentation) -> bool:
    n = F.group.order
    if len(F.basis[1]) != n or len(F.basis[2]) != n * n:
        return False
    if not all(int(F.symbol_image[s]) == s for s in range(n)):
        return False
    return list(F.basis[2]) == [(g, h) for g in range(n) for h in range(n)]


def _check_conjugation_target(C: CrossedComplex, aut: AutData) -> None:
    K = aut.base
    ok = (C.dim == 2 and C.c1.nobj == 1
          and C.c1.n_arrows == aut.aut.order
          and np.array_equal(C.c1.comp, aut.aut.table)
          and np.array_equal(C.bmap(2, 0), aut.chi.image)
          and all(np.array_equal(C.act(2, a), aut.perms[a])
                  for a in range(aut.aut.order)))
    if not ok:
        raise DomainError(
            "InvalidMorphism",
            f"target is not the conjugation crossed module of {K.name}")


def morphism_from_factor_set(fs: FactorSet) -> ResMorphism:
    """The resolution morphism a factor set is: phi on symbols, f on
    pairs, zero above (the cocycle law is exactly the level-3 boundary
    condition there)."""
    validate_factor_set(fs)
    C, _ = _split_of(fs.K)
    F = _std_res(fs.G)
    images = {1: [int(a) for a in fs.phi],
              2: [int(v) for v in fs.f.reshape(-1)],
              3: [0] * len(F.basis[3]),
              4: [0] * len(F.basis[4])}
    m = ResMorphism(F, C, images, name=f"fs({fs.K.name},{fs.G.name})")
    validate_res_morphism(m)
    return m


def factor_set_from_morphism(m: ResMorphism) -> FactorSet:
    """Read a factor set off a morphism into a conjugation crossed
    module; inverse to :func:`morphism_from_factor_set`.

    The source must have the standard-resolution shape (one symbol per
    group element, pairs at level 2) and the identity symbol must land
    on the identity automorphism.
    """
    C = m.target
    K = C.group(2, 0)
    aut = _aut_of(K)
    _check_conjugation_target(C, aut)
    F = m.pres
    if not _is_standard_shape(F):
        raise DomainError("InvalidMorphism",
                          "source presentation does not have the standard shape")
    validate_res_morphism(m)
    n = F.group.order
    phi = np.array([m.image(1, s) for s in range(n)], dtype=np.int64)
    f = np.array([m.image(2, i) for i in range(n * n)],
                 dtype=np.int64).reshape(n, n)
    fs = FactorSet(K, F.group, aut, phi, f)
    validate_factor_set(fs)
    return fs


# ---------------------------------------------------------------------------
# rebuilding the extension

@dataclass
class ExtensionData:
    """A group extension presented by its total group and the two
    structure maps (kernel embedding and quotient projection).

    ``pairs[x]`` recovers the twisted-product coordinates (k, g) of
    element x, and ``pair_label[k, g]`` inverts that; together they
    expose the product structure the group was built from.
    """

    group: FiniteGroup
    embed: GroupHom
    project: GroupHom
    pairs: np.ndarray
    pair_label: np.ndarray

    def __iter__(self):
        return iter((self.group, self.embed, self.project))


def extension_from_factor_set(fs: FactorSet) -> ExtensionData:
    """The twisted product of K and G the factor set describes.

    Elements are pairs (k, g) multiplied by
    (k1, g1)(k2, g2) = (k1 k2^{phi(g1)^-1} f(g1, g2), g1 g2); the
    table is validated as a group, the embedding k -> (k u^-1, e) with
    u = f(e, e) and the projection (k, g) -> g are validated as
    homomorphisms with exact kernel, and the rebuilt conjugation action
    on K is checked to induce exactly the factor set's outer action.
    """
    validate_factor_set(fs)
    K, G, aut = fs.K, fs.G, fs.aut
    nK, nG = K.order, G.order
    kt, ki = K.table, K.inverse
    ai = aut.aut.inverse

    def pair(k: int, g: int) -> int:
        return k * nG + g

    raw = np.empty((nK * nG, nK * nG), dtype=np.int64)
    for g1 in range(nG):
        pinv = aut.perms[ai[fs.phi[g1]]]
        for k1 in range(nK):
            row = pair(k1, g1)
            for g2 in range(nG):
                cell = int(fs.f[g1, g2])
                gg = int(G.table[g1, g2])
                for k2 in range(nK):
                    k = int(kt[kt[k1, pinv[k2]], cell])
                    raw[row, pair(k2, g2)] = pair(k, gg)

    u = int(fs.f[0, 0])
    e_idx = pair(int(ki[u]), 0)
    relabel = np.arange(nK * nG, dtype=np.int64)
    relabel[e_idx], relabel[0] = 0, e_idx
    table = np.empty_like(raw)
    table[relabel[:, None], relabel[None, :]] = relabel[raw]
    E = make_group(table, name=f"ext({K.name},{G.name})")

    i_img = np.array([relabel[pair(int(kt[k, ki[u]]), 0)] for k in range(nK)],
                     dtype=np.int64)
    i = GroupHom(K, E, i_img)
    i.validate()
    if len(set(int(x) for x in i_img)) != nK:
        raise DomainError("InvalidFactorSet", "kernel embedding is not injective")

    p_img = np.empty(nK * nG, dtype=np.int64)
    for k in range(nK):
        for g in range(nG):
            p_img[relabel[pair(k, g)]] = g
    p = GroupHom(E, G, p_img)
    p.validate()
    if len(set(int(x) for x in p_img)) != nG:
        raise DomainError("InvalidFactorSet", "projection is not surjective")
    if set(int(x) for x in i_img) != set(int(x) for x in p.kernel_elements()):
        raise DomainError("KernelMismatch",
                          "embedded kernel does not match the projection kernel")

    iinv = {int(v): k for k, v in enumerate(i_img)}
    psi = fs.induced_psi()
    for g in range(nG):
        y = int(relabel[pair(0, g)])
        perm = [iinv[E.conj(int(i_img[k]), y)] for k in range(nK)]
        a = aut.find(perm)
        if a < 0 or int(aut.proj.image[a]) != int(psi[g]):
            raise DomainError("InvalidFactorSet",
                              f"rebuilt conjugation induces the wrong outer class at g = {g}")

    pairs = np.empty((nK * nG, 2), dtype=np.int64)
    pair_label = np.empty((nK, nG), dtype=np.int64)
    for k in range(nK):
        for g in range(nG):
            lab = int(relabel[pair(k, g)])
            pairs[lab] = (k, g)
            pair_label[k, g] = lab
    return ExtensionData(E, i, p, pairs, pair_label)


# ---------------------------------------------------------------------------
# obstruction and classification

def _choose(rng, options):
    if rng is None:
        return options[0]
    return options[int(rng.integers(len(options)))]


def _realize(kernel: AbstractKernel, rng=None):
    """Lift the outer action as far as it goes and measure the failure.

    Chooses an automorphism lift of psi pointwise and a compatible
    defect table cell by cell (smallest choices by default, random
    under ``rng``), builds the resulting morphism into the
    kernel-adjoined cover of the conjugation crossed module, pushes it
    to the coefficient complex of the splitting, and reads off the
    level-3 values.  Those values are a central 3-cocycle; their class
    does not depend on the choices.
    """
    K, G, aut = kernel.K, kernel.G, kernel.aut
    n = G.order
    C, split = _split_of(K)
    if not np.array_equal(split.xi.bmap(3, 0), kernel.embed):
        raise DomainError("KernelMismatch",
                          "centre indexing of the splitting disagrees with the kernel")
    F = kernel.resolution()
    psi = kernel.psi.image
    at, ai = aut.aut.table, aut.aut.inverse
    chi = aut.chi.image

    nA = aut.aut.order
    fibers = [[k for k in range(K.order) if int(chi[k]) == a]
              for a in range(nA)]
    phi = np.empty(n, dtype=np.int64)
    phi[0] = 0
    for g in range(1, n):
        options = [a for a in range(nA) if int(aut.proj.image[a]) == int(psi[g])]
        phi[g] = _choose(rng, options)
    f = np.empty((n, n), dtype=np.int64)
    for g in range(n):
        for h in range(n):
            target = int(at[at[phi[g], phi[h]], ai[phi[int(G.table[g, h])]]])
            coset = fibers[target]
            if not coset:
                raise DomainError("InvalidFactorSet",
                                  f"no element realises the inner class at ({g}, {h})")
            f[g, h] = _choose(rng, coset)

    partial = ResMorphism(F, split.xi,
                          {1: [int(a) for a in phi],
                           2: [int(v) for v in f.reshape(-1)]},
                          name=f"lift({kernel.name})")
    defects = []
    for i in range(len(F.basis[3])):
        v = partial.eval_crossed(F.d3[i])
        z = int(kernel.pos[v])
        if z < 0:
            raise DomainError("InvalidFactorSet",
                              "compatibility defect left the centre")
        defects.append(z)
    images = {1: partial.images[1], 2: partial.images[2],
              3: defects, 4: [0] * len(F.basis[4])}
    m = ResMorphism(F, split.xi, images, name=f"lift({kernel.name})")
    validate_res_morphism(m)
    pushed = then_morphism(m, split.q)
    return phi, f, [int(v) for v in pushed.images[3]]


def obstruction_class(kernel: AbstractKernel, rng=None) -> CohomologyClass:
    """The degree-three class blocking the outer action from being a
    factor set; zero exactly when an extension inducing psi exists."""
    _, _, vals = _realize(kernel, rng)
    return kernel.h3().class_of(vals)


def _shift(fs: FactorSet, embed: np.ndarray, vals) -> FactorSet:
    """Multiply the defect table pointwise by central values (one per
    level-2 pair, in centre indexing)."""
    n = fs.G.order
    f2 = fs.f.copy()
    for g in range(n):
        for h in range(n):
            f2[g, h] = fs.K.table[f2[g, h], embed[int(vals[g * n + h])]]
    return FactorSet(fs.K, fs.G, fs.aut, fs.phi.copy(), f2)


@dataclass
class ExtensionClass:
    """One equivalence class of extensions: its canonical factor set,
    the rebuilt total group with structure maps, and a name."""

    kernel: AbstractKernel
    factor_set: FactorSet
    extension: ExtensionData
    name: str

    def to_json(self) -> dict:
        return {"factor_set": self.factor_set.to_json(),
                "group_order": int(self.extension.group.order),
                "name": self.name}


@dataclass
class ExtensionClassification:
    """Everything the classification run established for one kernel."""

    kernel: AbstractKernel
    obstruction: CohomologyClass
    h2: CohomologyGroup
    h3: CohomologyGroup
    classes: list[ExtensionClass]
    torsor: list[list[int]]

    def to_json(self) -> dict:
        return {
            "kernel": self.kernel.K.name,
            "quotient": self.kernel.G.name,
            "psi": [int(x) for x in self.kernel.psi.image],
            "obstruction": {"coords": [int(c) for c in self.obstruction.coords],
                            "is_zero": bool(self.obstruction.is_zero)},
            "h2": {"invariant_factors": [int(x) for x in self.h2.factors],
                   "order": int(self.h2.order)},
            "h3": {"invariant_factors": [int(x) for x in self.h3.factors],
                   "order": int(self.h3.order)},
            "classes": [c.to_json() for c in self.classes],
            "torsor": [[int(j) for j in row] for row in self.torsor],
        }


def _name_extension(E: FiniteGroup) -> str:
    got = identify(E)
    if got is not None:
        return got
    fp = hashlib.sha1(repr(group_fingerprint(E)).encode()).hexdigest()[:8]
    return f"order{E.order}_{fp}"


def _class_from_factor_set(kernel: AbstractKernel, fs: FactorSet,
                           cap: int) -> ExtensionClass:
    can = canonical_factor_set(fs, cap)
    ext = extension_from_factor_set(can)
    return ExtensionClass(kernel, can, ext, _name_extension(ext.group))


def classify_extensions(kernel: AbstractKernel,
                        cap: int = SEARCH_CAP) -> ExtensionClassification:
    """All extensions of K by G inducing psi, up to equivalence.

    When the obstruction class vanishes, a seed factor set is produced
    by correcting the measured defect with an explicit coboundary
    witness, and the full class list is the orbit of the seed under
    the degree-two cohomology torsor.  When it does not vanish the
    class list is empty.
    """
    h2 = kernel.h2()
    h3 = kernel.h3()
    phi, f, vals = _realize(kernel)
    obstruction = h3.class_of(vals)
    if not obstruction.is_zero:
        return ExtensionClassification(kernel, obstruction, h2, h3, [], [])

    F = kernel.resolution()
    wit = coboundary_witness(F, kernel.theta, kernel.module, 3, vals)
    if wit is None:
        raise DomainError("SolverCheckFailed",
                          "vanishing obstruction without a coboundary witness")
    n = kernel.G.order
    fseed = f.copy()
    for g in range(n):
        for h in range(n):
            z = int(kernel.embed[int(wit[g * n + h])])
            fseed[g, h] = kernel.K.table[fseed[g, h], kernel.K.inverse[z]]
    seed = FactorSet(kernel.K, kernel.G, kernel.aut, phi, fseed)
    validate_factor_set(seed)

    classes = []
    keys: dict[tuple, int] = {}
    for cls2 in h2.all_classes():
        shifted = _shift(seed, kernel.embed, h2.representative(cls2))
        ec = _class_from_factor_set(kernel, shifted, cap)
        k = ec.factor_set.key()
        if k in keys:
            raise DomainError("SolverCheckFailed",
                              "two cohomology classes produced the same extension class")
        keys[k] = len(classes)
        classes.append(ec)

    torsor = []
    for cls2 in h2.all_classes():
        rep = h2.representative(cls2)
        row = []
        for ec in classes:
            moved = canonical_factor_set(
                _shift(ec.factor_set, kernel.embed, rep), cap)
            j = keys.get(moved.key())
            if j is None:
                raise DomainError("SolverCheckFailed",
                                  "torsor action left the class list")
            row.append(j)
        torsor.append(row)
    return ExtensionClassification(kernel, obstruction, h2, h3, classes, torsor)


def torsor_act(c: CohomologyClass, cls: ExtensionClass,
               cap: int = SEARCH_CAP) -> ExtensionClass:
    """Act on an extension class by a degree-two cohomology class.

    The class must live in H^2 of the same kernel (AmbientMismatch
    otherwise); the result is returned in canonical form, so acting by
    zero reproduces the class representative exactly.
    """
    kernel = cls.kernel
    if c.group.n != 2 or c.group.module is not kernel.module:
        raise DomainError("AmbientMismatch",
                          "the class does not live in H^2 of this kernel")
    shifted = _shift(cls.factor_set, kernel.embed, c.values())
    return _class_from_factor_set(kernel, shifted, cap)
