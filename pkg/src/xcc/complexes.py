"""Crossed complexes over finite groupoids, up to dimension 5.

A complex stores a groupoid at level 1 and, for each level n >= 2 and
each object x, a finite group together with a boundary map down one
level and an action of the level-1 arrows.  Levels above the declared
dimension are implicitly trivial: accessors hand back an order-1 group,
so dimension bookkeeping never leaks into the algorithms.

Conventions, fixed package-wide:
  * actions are right actions written c^a, and a groupoid arrow
    a: x -> y sends elements at x to elements at y;
  * the boundary of a level-2 element at x is a loop at x;
  * conjugation c^g means g^-1 c g.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .groupoids import FiniteGroupoid, from_group
from .groups import FiniteGroup, GModule, quotient_group, subgroup_group

MAX_DIM = 5

_TRIVIAL = FiniteGroup(np.zeros((1, 1), dtype=np.int64), "1")


class CrossedComplex:
    """See the module docstring for the data layout.

    ``groups[(n, x)]``, ``boundary[(n, x)]`` and ``action[(n, a)]`` are
    stored for 2 <= n <= dim only; the accessors fill in trivial data
    above the dimension.
    """

    def __init__(self, c1: FiniteGroupoid, dim: int,
                 groups: dict, boundary: dict, action: dict, name: str = ""):
        if dim < 1 or dim > MAX_DIM:
            raise DomainError("BadDimension", f"dimension must be 1..{MAX_DIM}, got {dim}")
        self.c1 = c1
        self.dim = int(dim)
        self.groups = groups
        self.boundary = boundary
        self.action = action
        self.name = name or f"crs({c1.name})"

    def __repr__(self):
        return f"CrossedComplex({self.name}, dim={self.dim})"

    @property
    def nobj(self) -> int:
        return self.c1.nobj

    @property
    def is_reduced(self) -> bool:
        return self.c1.nobj == 1

    def group(self, n: int, x: int = 0) -> FiniteGroup:
        if n < 2 or n > self.dim:
            return _TRIVIAL
        return self.groups[(n, x)]

    def bmap(self, n: int, x: int = 0) -> np.ndarray:
        """Boundary values: arrow indices for n = 2, element indices above."""
        if n > self.dim:
            return np.zeros(1, dtype=np.int64) if n > 2 else \
                np.array([self.c1.id_arrow[x]], dtype=np.int64)
        if n == 2 and (2, x) not in self.boundary:
            return np.array([self.c1.id_arrow[x]], dtype=np.int64)
        return self.boundary[(n, x)]

    def act(self, n: int, a: int) -> np.ndarray:
        if n < 2 or n > self.dim:
            return np.zeros(1, dtype=np.int64)
        return self.action[(n, a)]

    def boundary_of(self, n: int, x: int, c: int) -> int:
        """delta_n(c) for c at object x: an arrow if n = 2, else an element."""
        if n > self.dim:
            return int(self.c1.id_arrow[x]) if n == 2 else 0
        return int(self.bmap(n, x)[c])


def _hom_ok(dom: FiniteGroup, cod: FiniteGroup, image: np.ndarray):
    """First multiplicative failure (a, b) or None."""
    lhs = image[dom.table]
    rhs = cod.table[image[:, None], image[None, :]]
    if np.array_equal(lhs, rhs):
        return None
    a, b = np.argwhere(lhs != rhs)[0]
    return int(a), int(b)


def validate_complex(C: CrossedComplex) -> None:
    """Check every crossed complex axiom, with tagged failures.

    Tags: NonAbelianHigh, BoundaryComposite, CM1 (level-2
    equivariance), CM2 (the Peiffer rule), Equivariance (level >= 3),
    PeifferActionHigh (boundaries of level 2 acting above level 2).
    """
    g1 = C.c1
    for n in range(2, C.dim + 1):
        for x in range(C.nobj):
            if (n, x) not in C.groups:
                raise DomainError("BadDimension", f"missing group at level {n}, object {x}")
            G = C.groups[(n, x)]
            if n >= 3 and not G.is_abelian:
                raise DomainError("NonAbelianHigh",
                                  f"level {n} at object {x} is not abelian")

    # boundaries are homomorphisms landing in the right place
    for x in range(C.nobj):
        if C.dim >= 2:
            G2 = C.group(2, x)
            b2 = C.bmap(2, x)
            if b2.shape != (G2.order,):
                raise DomainError("BoundaryComposite", f"level-2 boundary shape at {x}")
            for c in range(G2.order):
                a = int(b2[c])
                if g1.src[a] != x or g1.tgt[a] != x:
                    raise DomainError("BoundaryComposite",
                                      f"boundary of level-2 element {c} is not a loop at {x}")
            for c in range(G2.order):
                for d in range(G2.order):
                    if int(g1.comp[b2[c], b2[d]]) != int(b2[G2.table[c, d]]):
                        raise DomainError("BoundaryComposite",
                                          f"level-2 boundary not multiplicative at ({c}, {d})")
        for n in range(3, C.dim + 1):
            Gn, Gm = C.group(n, x), C.group(n - 1, x)
            bn = C.bmap(n, x)
            if bn.shape != (Gn.order,) or (Gn.order and bn.max() >= Gm.order):
                raise DomainError("BoundaryComposite", f"level-{n} boundary shape at {x}")
            bad = _hom_ok(Gn, Gm, bn)
            if bad:
                raise DomainError("BoundaryComposite",
                                  f"level-{n} boundary not a homomorphism at {bad}")

    # composites vanish
    for x in range(C.nobj):
        if C.dim >= 3:
            b3, b2 = C.bmap(3, x), C.bmap(2, x)
            for c in range(C.group(3, x).order):
                if int(b2[b3[c]]) != int(g1.id_arrow[x]):
                    raise DomainError("BoundaryComposite",
                                      f"delta2(delta3({c})) is not the identity at {x}")
        for n in range(4, C.dim + 1):
            bn, bm = C.bmap(n, x), C.bmap(n - 1, x)
            for c in range(C.group(n, x).order):
                if int(bm[bn[c]]) != 0:
                    raise DomainError("BoundaryComposite",
                                      f"delta{n - 1}(delta{n}({c})) is nonzero at {x}")

    # arrow actions: isomorphisms, functorial in the arrow
    for n in range(2, C.dim + 1):
        for a in range(g1.n_arrows):
            xs, xt = int(g1.src[a]), int(g1.tgt[a])
            Gs, Gt = C.group(n, xs), C.group(n, xt)
            if (n, a) not in C.action:
                raise DomainError("Equivariance", f"missing action of arrow {a} at level {n}")
            m = C.action[(n, a)]
            if m.shape != (Gs.order,) or len(np.unique(m)) != Gs.order or Gs.order != Gt.order:
                raise DomainError("Equivariance",
                                  f"arrow {a} does not act bijectively at level {n}")
            bad = _hom_ok(Gs, Gt, m)
            if bad:
                raise DomainError("Equivariance",
                                  f"arrow {a} acts non-multiplicatively at level {n}")
        for x in range(C.nobj):
            ida = int(g1.id_arrow[x])
            if not np.array_equal(C.action[(n, ida)],
                                  np.arange(C.group(n, x).order)):
                raise DomainError("Equivariance",
                                  f"identity arrow at {x} acts nontrivially at level {n}")
        for a in range(g1.n_arrows):
            for b in range(g1.n_arrows):
                c = int(g1.comp[a, b])
                if c < 0:
                    continue
                seq = C.action[(n, b)][C.action[(n, a)]]
                if not np.array_equal(C.action[(n, c)], seq):
                    raise DomainError("Equivariance",
                                      f"action of composite arrow ({a}, {b}) at level {n}")

    # CM1: delta2(c^a) = a^-1 delta2(c) a
    if C.dim >= 2:
        for a in range(g1.n_arrows):
            xs, xt = int(g1.src[a]), int(g1.tgt[a])
            b2s, b2t = C.bmap(2, xs), C.bmap(2, xt)
            ai = int(g1.inverse[a])
            m = C.action[(2, a)]
            for c in range(C.group(2, xs).order):
                lhs = int(b2t[m[c]])
                rhs = int(g1.comp[g1.comp[ai, b2s[c]], a])
                if lhs != rhs:
                    raise DomainError("CM1",
                                      f"boundary of {c}^(arrow {a}) is not the conjugate")

    # CM2: c^(delta2 c') = c'^-1 c c'
    if C.dim >= 2:
        for x in range(C.nobj):
            G2 = C.group(2, x)
            b2 = C.bmap(2, x)
            for cp in range(G2.order):
                m = C.action[(2, int(b2[cp]))]
                for c in range(G2.order):
                    rhs = G2.table[G2.table[G2.inverse[cp], c], cp]
                    if int(m[c]) != int(rhs):
                        raise DomainError("CM2",
                                          f"Peiffer rule fails for ({c}, {cp}) at object {x}")

    # equivariance of higher boundaries, and level-2 boundaries acting
    # trivially above level 2
    for n in range(3, C.dim + 1):
        for a in range(g1.n_arrows):
            xs = int(g1.src[a])
            bn_s = C.bmap(n, xs)
            bn_t = C.bmap(n, int(g1.tgt[a]))
            mn = C.action[(n, a)]
            mm = C.action[(n - 1, a)]
            for c in range(C.group(n, xs).order):
                if int(bn_t[mn[c]]) != int(mm[bn_s[c]]):
                    raise DomainError("Equivariance",
                                      f"level-{n} boundary of {c}^(arrow {a})")
        for x in range(C.nobj):
            b2 = C.bmap(2, x)
            for cp in range(C.group(2, x).order):
                m = C.action[(n, int(b2[cp]))]
                if not np.array_equal(m, np.arange(C.group(n, x).order)):
                    raise DomainError("PeifferActionHigh",
                                      f"delta2({cp}) acts nontrivially at level {n}")


# ---------------------------------------------------------------------------
# morphisms

@dataclass
class CrsMorphism:
    """A morphism of crossed complexes.

    ``obj_map`` and ``arrow_map`` give the level-0/1 functor; ``maps``
    holds the level-n component at each object, keyed (n, x).  Levels
    above the source dimension are implicitly zero.
    """

    dom: CrossedComplex
    cod: CrossedComplex
    obj_map: np.ndarray
    arrow_map: np.ndarray
    maps: dict = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        self.obj_map = np.asarray(self.obj_map, dtype=np.int64)
        self.arrow_map = np.asarray(self.arrow_map, dtype=np.int64)

    def map(self, n: int, x: int = 0) -> np.ndarray:
        if n > self.dom.dim:
            return np.zeros(1, dtype=np.int64)
        return self.maps[(n, x)]

    def apply(self, n: int, x: int, c: int) -> int:
        if n == 1:
            return int(self.arrow_map[c])
        return int(self.map(n, x)[c])


def validate_morphism(p: CrsMorphism) -> None:
    E, B = p.dom, p.cod
    ge, gb = E.c1, B.c1
    if p.obj_map.shape != (ge.nobj,) or p.arrow_map.shape != (ge.n_arrows,):
        raise DomainError("InvalidMorphism", "level-0/1 map shapes are wrong")
    for a in range(ge.n_arrows):
        fa = int(p.arrow_map[a])
        if fa < 0 or fa >= gb.n_arrows:
            raise DomainError("InvalidMorphism", f"arrow image {a} out of range")
        if int(gb.src[fa]) != int(p.obj_map[ge.src[a]]) or \
           int(gb.tgt[fa]) != int(p.obj_map[ge.tgt[a]]):
            raise DomainError("InvalidMorphism", f"arrow {a} image has wrong endpoints")
    for a in range(ge.n_arrows):
        for b in range(ge.n_arrows):
            c = int(ge.comp[a, b])
            if c >= 0:
                if int(gb.comp[p.arrow_map[a], p.arrow_map[b]]) != int(p.arrow_map[c]):
                    raise DomainError("InvalidMorphism",
                                      f"composition not preserved at ({a}, {b})")
    for x in range(ge.nobj):
        if int(p.arrow_map[ge.id_arrow[x]]) != int(gb.id_arrow[p.obj_map[x]]):
            raise DomainError("InvalidMorphism", f"identity at {x} not preserved")

    for n in range(2, E.dim + 1):
        for x in range(ge.nobj):
            ox = int(p.obj_map[x])
            src_g = E.group(n, x)
            cod_g = B.group(n, ox)
            m = p.map(n, x)
            if m.shape != (src_g.order,) or (m.size and m.max() >= cod_g.order):
                raise DomainError("InvalidMorphism", f"level-{n} map shape at {x}")
            bad = _hom_ok(src_g, cod_g, m)
            if bad:
                raise DomainError("InvalidMorphism",
                                  f"level-{n} map at {x} not a homomorphism at {bad}")
            # boundary compatibility
            if n == 2:
                for c in range(src_g.order):
                    if int(B.bmap(2, ox)[m[c]]) != int(p.arrow_map[E.bmap(2, x)[c]]):
                        raise DomainError("InvalidMorphism",
                                          f"level-2 boundary not preserved at ({x}, {c})")
            else:
                mm = p.map(n - 1, x)
                for c in range(src_g.order):
                    if int(B.bmap(n, ox)[m[c]]) != int(mm[E.bmap(n, x)[c]]):
                        raise DomainError("InvalidMorphism",
                                          f"level-{n} boundary not preserved at ({x}, {c})")
        for a in range(ge.n_arrows):
            xs = int(ge.src[a])
            ms, mt = p.map(n, xs), p.map(n, int(ge.tgt[a]))
            fa = int(p.arrow_map[a])
            for c in range(E.group(n, xs).order):
                if int(mt[E.act(n, a)[c]]) != int(B.act(n, fa)[ms[c]]):
                    raise DomainError("InvalidMorphism",
                                      f"level-{n} action not preserved at arrow {a}")


def identity_morphism(C: CrossedComplex) -> CrsMorphism:
    maps = {}
    for n in range(2, C.dim + 1):
        for x in range(C.nobj):
            maps[(n, x)] = np.arange(C.group(n, x).order, dtype=np.int64)
    return CrsMorphism(C, C, np.arange(C.nobj), np.arange(C.c1.n_arrows),
                       maps, name=f"id_{C.name}")


def compose_morphisms(f: CrsMorphism, g: CrsMorphism) -> CrsMorphism:
    """Diagrammatic composite: f then g."""
    if f.cod is not g.dom:
        raise DomainError("InvalidMorphism", "composition endpoints disagree")
    maps = {}
    for n in range(2, f.dom.dim + 1):
        for x in range(f.dom.nobj):
            ox = int(f.obj_map[x])
            maps[(n, x)] = g.map(n, ox)[f.map(n, x)]
    return CrsMorphism(f.dom, g.cod, g.obj_map[f.obj_map],
                       g.arrow_map[f.arrow_map], maps)


# ---------------------------------------------------------------------------
# constructions

def _trivial_levels(c1: FiniteGroupoid, lo: int, hi: int):
    groups, boundary, action = {}, {}, {}
    for n in range(lo, hi + 1):
        for x in range(c1.nobj):
            groups[(n, x)] = _TRIVIAL
            if n == 2:
                boundary[(n, x)] = np.array([c1.id_arrow[x]], dtype=np.int64)
            else:
                boundary[(n, x)] = np.zeros(1, dtype=np.int64)
        for a in range(c1.n_arrows):
            action[(n, a)] = np.zeros(1, dtype=np.int64)
    return groups, boundary, action


def em_complex(G, name: str = "") -> CrossedComplex:
    """The complex with a group (or groupoid) at level 1 and nothing above."""
    c1 = from_group(G) if isinstance(G, FiniteGroup) else G
    return CrossedComplex(c1, 1, {}, {}, {}, name=name or f"K({c1.name},1)")


def twisted_em(mod: GModule, n: int, name: str = "") -> CrossedComplex:
    """The complex with the module's actor at level 1 and its coefficient
    group at level n, all boundaries trivial."""
    if n < 2:
        raise DomainError("BadDimension", f"coefficient level must be >= 2, got {n}")
    if n > MAX_DIM:
        raise DomainError("BadDimension", f"coefficient level must be <= {MAX_DIM}")
    c1 = from_group(mod.actor)
    groups, boundary, action = _trivial_levels(c1, 2, n - 1)
    groups[(n, 0)] = mod.coeff
    if n == 2:
        boundary[(n, 0)] = np.full(mod.coeff.order, c1.id_arrow[0], dtype=np.int64)
    else:
        boundary[(n, 0)] = np.zeros(mod.coeff.order, dtype=np.int64)
    for a in range(c1.n_arrows):
        action[(n, a)] = mod.act[a].copy()
    C = CrossedComplex(c1, n, groups, boundary, action,
                       name=name or f"K({mod.actor.name},1;{mod.coeff.name},{n})")
    validate_complex(C)
    return C


def aut_crossed_module(autdata) -> CrossedComplex:
    """The conjugation crossed module of a group, as a dim-2 complex.

    Level 1 is the automorphism group, level 2 the group itself, the
    boundary sends an element to conjugation by it, and automorphisms
    act by evaluation.
    """
    K = autdata.base
    c1 = from_group(autdata.aut)
    groups = {(2, 0): K}
    boundary = {(2, 0): autdata.chi.image.copy()}
    action = {(2, a): autdata.perms[a].copy() for a in range(autdata.aut.order)}
    C = CrossedComplex(c1, 2, groups, boundary, action, name=f"AUT({K.name})")
    validate_complex(C)
    return C


# ---------------------------------------------------------------------------
# invariants

def pi0(C: CrossedComplex) -> np.ndarray:
    return C.c1.components()


@dataclass
class PiOneData:
    group: FiniteGroup
    loops: np.ndarray      # arrow index of each vertex-group element
    proj: np.ndarray       # vertex-group element -> class index

    def class_of_arrow(self, a: int) -> int:
        hits = np.nonzero(self.loops == a)[0]
        return int(self.proj[hits[0]])


def pi1(C: CrossedComplex, x: int = 0) -> PiOneData:
    """Fundamental group at x: loops modulo level-2 boundaries."""
    V, loops = C.c1.vertex_group(x)
    b2 = C.bmap(2, x)
    pos = {int(a): i for i, a in enumerate(loops)}
    normal = {pos[int(b2[c])] for c in range(C.group(2, x).order)}
    normal.add(0)
    Q, proj = quotient_group(V, sorted(normal), name=f"pi1({C.name},{x})")
    return PiOneData(Q, loops, proj)


@dataclass
class HomologyData:
    group: FiniteGroup
    kernel: np.ndarray     # level-n element indices in the kernel, sorted
    proj: np.ndarray       # kernel position -> class index

    def class_of(self, c: int) -> int:
        hits = np.searchsorted(self.kernel, c)
        if hits >= len(self.kernel) or self.kernel[hits] != c:
            raise DomainError("NotACycle", f"element {c} is not in the kernel")
        return int(self.proj[hits])


def homology(C: CrossedComplex, n: int, x: int = 0) -> HomologyData:
    """H_n at x (n >= 2): boundary kernel modulo the image from above."""
    if n < 2:
        raise DomainError("BadDimension", "homology is defined for levels >= 2")
    if n > C.dim:
        return HomologyData(_TRIVIAL, np.zeros(1, dtype=np.int64),
                            np.zeros(1, dtype=np.int64))
    Gn = C.group(n, x)
    bn = C.bmap(n, x)
    if n == 2:
        ker = [c for c in range(Gn.order) if int(bn[c]) == int(C.c1.id_arrow[x])]
    else:
        ker = [c for c in range(Gn.order) if int(bn[c]) == 0]
    Ksub, embed = subgroup_group(Gn, ker, name=f"Z{n}")
    pos = {int(e): i for i, e in enumerate(embed)}
    img = {0}
    if n < C.dim:
        bn1 = C.bmap(n + 1, x)
        for c in range(C.group(n + 1, x).order):
            img.add(pos[int(bn1[c])])
    H, proj = quotient_group(Ksub, sorted(img), name=f"H{n}({C.name},{x})")
    return HomologyData(H, embed, proj)


def is_aspherical(C: CrossedComplex) -> bool:
    return all(homology(C, n, x).group.order == 1
               for n in range(2, C.dim + 1) for x in range(C.nobj))


# ---------------------------------------------------------------------------
# fibrations

@dataclass
class FibrationReport:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def is_fibration(p: CrsMorphism) -> FibrationReport:
    """Star-surjective at level 1, surjective at every higher level."""
    E, B = p.dom, p.cod
    for x in range(E.nobj):
        ox = int(p.obj_map[x])
        star_imgs = {int(p.arrow_map[a]) for a in E.c1.star(x)}
        want = {int(b) for b in B.c1.star(ox)}
        if not want <= star_imgs:
            missing = sorted(want - star_imgs)[0]
            return FibrationReport(False,
                                   f"arrow {missing} from object {ox} has no lift at {x}")
    for n in range(2, max(E.dim, B.dim) + 1):
        for x in range(E.nobj):
            ox = int(p.obj_map[x])
            imgs = set(p.map(n, x).tolist()) if n <= E.dim else {0}
            if len(imgs) != B.group(n, ox).order:
                return FibrationReport(False,
                                       f"level {n} not surjective over object {ox}")
    return FibrationReport(True)


def fibre_subcomplex(p: CrsMorphism, xb: int):
    """The fibre of p over an object of the base.

    Contains the objects over xb, the arrows over its identity, and at
    higher levels the kernels of p.  Returns the fibre and embeddings:
    (complex, objects, arrows, element_embeddings[(n, fibre_x)]).
    """
    E, B = p.dom, p.cod
    objs = [x for x in range(E.nobj) if int(p.obj_map[x]) == xb]
    if not objs:
        raise DomainError("EmptyFibre", f"no objects over {xb}")
    opos = {x: i for i, x in enumerate(objs)}
    idb = int(B.c1.id_arrow[xb])
    arrows = [a for a in range(E.c1.n_arrows)
              if int(p.arrow_map[a]) == idb and int(E.c1.src[a]) in opos]
    apos = {a: i for i, a in enumerate(arrows)}
    m = len(arrows)
    comp = np.full((m, m), -1, dtype=np.int64)
    for i, a in enumerate(arrows):
        for j, b in enumerate(arrows):
            c = int(E.c1.comp[a, b])
            if c >= 0:
                comp[i, j] = apos[c]
    c1f = FiniteGroupoid(len(objs),
                         [opos[int(E.c1.src[a])] for a in arrows],
                         [opos[int(E.c1.tgt[a])] for a in arrows],
                         comp, name=f"fib({p.name or 'p'})")

    groups, boundary, action, embeds = {}, {}, {}, {}
    for n in range(2, E.dim + 1):
        for x in objs:
            ker = [c for c in range(E.group(n, x).order)
                   if int(p.map(n, x)[c]) == 0]
            sub, embed = subgroup_group(E.group(n, x), ker)
            groups[(n, opos[x])] = sub
            embeds[(n, opos[x])] = embed
        for x in objs:
            fx = opos[x]
            embed = embeds[(n, fx)]
            pos = {int(e): i for i, e in enumerate(embed)}
            if n == 2:
                vals = []
                for e in embed:
                    be = int(E.bmap(2, x)[e])
                    if be not in apos:
                        raise DomainError("InvalidMorphism",
                                          "fibre boundary leaves the fibre")
                    vals.append(apos[be])
                boundary[(2, fx)] = np.array(vals, dtype=np.int64)
            else:
                lower = {int(e): i for i, e in enumerate(embeds[(n - 1, fx)])}
                boundary[(n, fx)] = np.array(
                    [lower[int(E.bmap(n, x)[e])] for e in embed], dtype=np.int64)
        for i, a in enumerate(arrows):
            xs, xt = opos[int(E.c1.src[a])], opos[int(E.c1.tgt[a])]
            tpos = {int(e): j for j, e in enumerate(embeds[(n, xt)])}
            action[(n, i)] = np.array(
                [tpos[int(E.act(n, a)[e])] for e in embeds[(n, xs)]],
                dtype=np.int64)

    F = CrossedComplex(c1f, E.dim, groups, boundary, action,
                       name=f"fibre({E.name}->{B.name}@{xb})")
    return F, np.array(objs, dtype=np.int64), np.array(arrows, dtype=np.int64), embeds


def is_weak_equivalence(p: CrsMorphism) -> FibrationReport:
    """Bijective on components, isomorphisms on pi1 and all homology."""
    E, B = p.dom, p.cod
    ce, cb = pi0(E), pi0(B)
    img = {}
    for x in range(E.nobj):
        img[int(ce[x])] = int(cb[p.obj_map[x]])
    if len(set(img.values())) != len(set(ce.tolist())):
        return FibrationReport(False, "component map is not injective")
    if set(img.values()) != set(cb.tolist()):
        return FibrationReport(False, "component map is not surjective")

    for x in range(E.nobj):
        ox = int(p.obj_map[x])
        pe, pb = pi1(E, x), pi1(B, ox)
        if pe.group.order != pb.group.order:
            return FibrationReport(False, f"pi1 order differs at object {x}")
        seen = set()
        for i, loop in enumerate(pe.loops):
            cls = pb.class_of_arrow(int(p.arrow_map[loop]))
            seen.add((int(pe.proj[i]), cls))
        if len({a for a, _ in seen}) != len(seen) or \
           len({b for _, b in seen}) != pe.group.order:
            return FibrationReport(False, f"pi1 map not bijective at object {x}")
        for n in range(2, max(E.dim, B.dim) + 1):
            he, hb = homology(E, n, x), homology(B, n, ox)
            if he.group.order != hb.group.order:
                return FibrationReport(False, f"H{n} order differs at object {x}")
            pairs = set()
            for i, c in enumerate(he.kernel):
                pc = int(p.map(n, x)[c]) if n <= E.dim else 0
                pairs.add((int(he.proj[i]), hb.class_of(pc)))
            if len({a for a, _ in pairs}) != len(pairs) or \
               len({b for _, b in pairs}) != he.group.order:
                return FibrationReport(False, f"H{n} map not bijective at object {x}")
    return FibrationReport(True)


def is_trivial_fibration(p: CrsMorphism) -> FibrationReport:
    fib = is_fibration(p)
    if not fib:
        return FibrationReport(False, f"not a fibration: {fib.reason}")
    weq = is_weak_equivalence(p)
    if not weq:
        return FibrationReport(False, f"not a weak equivalence: {weq.reason}")
    return FibrationReport(True)


def rlp_check(p: CrsMorphism, m: int) -> FibrationReport:
    """Right lifting property against the m-sphere boundary inclusion.

    Concretely: m = 0 asks the object map to be onto; m = 1 asks every
    base arrow between images to lift with prescribed endpoints; m >= 2
    asks every pair (e, b) of a potential boundary e in the total
    complex and a base element b with matching boundary to be filled.
    Levels above both dimensions are trivial, so large m degenerate to
    kernel conditions at the top, and beyond that hold vacuously.
    """
    E, B = p.dom, p.cod
    if m == 0:
        onto = set(int(o) for o in p.obj_map)
        if len(onto) != B.nobj:
            missing = sorted(set(range(B.nobj)) - onto)[0]
            return FibrationReport(False, f"object {missing} is not hit")
        return FibrationReport(True)
    if m == 1:
        for x in range(E.nobj):
            for y in range(E.nobj):
                have = {int(p.arrow_map[a]) for a in range(E.c1.n_arrows)
                        if int(E.c1.src[a]) == x and int(E.c1.tgt[a]) == y}
                for b in B.c1.hom_set(int(p.obj_map[x]), int(p.obj_map[y])):
                    if int(b) not in have:
                        return FibrationReport(
                            False, f"arrow {int(b)} has no lift from {x} to {y}")
        return FibrationReport(True)

    for x in range(E.nobj):
        ox = int(p.obj_map[x])
        Bn = B.group(m, ox)
        bmB = B.bmap(m, ox)
        if m == 2:
            # boundary data: any loop e at x; need e' over b with boundary e
            filled = {}
            for c in range(E.group(2, x).order):
                filled[(int(p.map(2, x)[c]), int(E.bmap(2, x)[c]))] = c
            for e in E.c1.hom_set(x, x):
                for b in range(Bn.order):
                    if int(bmB[b]) == int(p.arrow_map[e]):
                        if (b, int(e)) not in filled:
                            return FibrationReport(
                                False,
                                f"level-2 filler missing over object {x} "
                                f"for base element {b} with boundary arrow {int(e)}")
        else:
            Em1 = E.group(m - 1, x)
            bmE = E.bmap(m - 1, x)
            idx = int(E.c1.id_arrow[x])
            spheres = [e for e in range(Em1.order)
                       if (int(bmE[e]) == idx if m - 1 == 2 else int(bmE[e]) == 0)]
            filled = set()
            for c in range(E.group(m, x).order):
                filled.add((int(p.map(m, x)[c]) if m <= E.dim else 0,
                            int(E.bmap(m, x)[c]) if m <= E.dim else 0))
            pm1 = p.map(m - 1, x)
            for e in spheres:
                for b in range(Bn.order):
                    if int(bmB[b]) == int(pm1[e]):
                        if (b, e) not in filled:
                            return FibrationReport(
                                False,
                                f"level-{m} filler missing over object {x} "
                                f"for base element {b} with boundary {e}")
    return FibrationReport(True)


# ---------------------------------------------------------------------------
# splitting an aspherical top level off a reduced complex

def top_homology_module(C: CrossedComplex, n: int) -> tuple[GModule, np.ndarray, PiOneData]:
    """The level-n boundary kernel as a module over pi1.

    Returns the module, the embedding of its coefficient group into the
    level-n group, and the pi1 data used for the actor.
    """
    if not C.is_reduced:
        raise DomainError("NotReduced", "module extraction needs a reduced complex")
    if n < 2:
        raise DomainError("BadDimension", "no module below level 2")
    Gt = C.group(n, 0)
    bt = C.bmap(n, 0)
    if n == 2:
        idx = int(C.c1.id_arrow[0])
        ker = [c for c in range(Gt.order) if int(bt[c]) == idx]
    else:
        ker = [c for c in range(Gt.order) if int(bt[c]) == 0]
    A, embed = subgroup_group(Gt, ker, name=f"Z{n}({C.name})")
    pd = pi1(C, 0)
    pos = {int(e): i for i, e in enumerate(embed)}
    act = np.empty((pd.group.order, A.order), dtype=np.int64)
    done = set()
    for i, loop in enumerate(pd.loops):
        q = int(pd.proj[i])
        if q in done:
            continue
        done.add(q)
        perm = C.act(n, int(loop))
        act[q] = [pos[int(perm[int(e)])] for e in embed]
    mod = GModule(A, pd.group, act)
    mod.validate()
    return mod, embed, pd


@dataclass
class SplitData:
    """Output of xi_zeta_split: the kernel-adjoined cover, the
    coefficient complex, the inclusion into the cover, the quotient
    fibration, and the coefficient module itself."""

    xi: CrossedComplex
    zeta: CrossedComplex
    j: CrsMorphism
    q: CrsMorphism
    module: GModule
    pi1: PiOneData

    def __iter__(self):
        return iter((self.xi, self.zeta, self.j, self.q))


def xi_zeta_split(C: CrossedComplex, n: int | None = None) -> SplitData:
    """Split a reduced complex, aspherical below level n, into an
    aspherical cover and a coefficient-level complex.

    The cover adjoins the level-n boundary kernel one level up with the
    inclusion as boundary (killing all homology); the coefficient
    complex concentrates that kernel, as a module over pi1, at level
    n + 1; the quotient morphism from cover to coefficient complex is a
    fibration.  Raises NotAspherical if there is homology below level
    n, DimensionMismatch if anything lives above n or there is no room
    one level up.
    """
    if not C.is_reduced:
        raise DomainError("NotReduced", "the splitting needs a reduced complex")
    if n is None:
        n = C.dim
    if n < 2:
        raise DomainError("BadDimension", "the splitting needs a level >= 2")
    if n + 1 > MAX_DIM:
        raise DomainError("DimensionMismatch",
                          f"no room above level {n} (cap {MAX_DIM})")
    for m in range(n + 1, C.dim + 1):
        if C.group(m, 0).order != 1:
            raise DomainError("DimensionMismatch",
                              f"level {m} is nontrivial above the splitting level {n}")
    for m in range(2, n):
        if homology(C, m, 0).group.order != 1:
            raise DomainError("NotAspherical", f"H{m} is nontrivial")

    mod, embed, pd = top_homology_module(C, n)
    A = mod.coeff
    pos = {int(e): i for i, e in enumerate(embed)}

    groups, boundary, action = _trivial_levels(C.c1, 2, n)
    for key, g in C.groups.items():
        if key[0] <= n:
            groups[key] = g
    for key, b in C.boundary.items():
        if key[0] <= n:
            boundary[key] = b
    for key, a in C.action.items():
        if key[0] <= n:
            action[key] = a
    groups[(n + 1, 0)] = A
    boundary[(n + 1, 0)] = embed.copy()
    for a in range(C.c1.n_arrows):
        perm = C.act(n, a)
        action[(n + 1, a)] = np.array(
            [pos[int(perm[int(e)])] for e in embed], dtype=np.int64)
    xi = CrossedComplex(C.c1, n + 1, groups, boundary, action,
                        name=f"xi({C.name})")
    validate_complex(xi)

    jmaps = {}
    for m in range(2, C.dim + 1):
        jmaps[(m, 0)] = np.arange(C.group(m, 0).order, dtype=np.int64)
    j = CrsMorphism(C, xi, np.zeros(1, dtype=np.int64),
                    np.arange(C.c1.n_arrows), jmaps, name=f"j({C.name})")
    validate_morphism(j)

    zeta = twisted_em(mod, n + 1, name=f"zeta({C.name})")

    arrow_map = np.array([pd.class_of_arrow(a) for a in range(C.c1.n_arrows)],
                         dtype=np.int64)
    maps = {}
    for m in range(2, n + 1):
        maps[(m, 0)] = np.zeros(xi.group(m, 0).order, dtype=np.int64)
    maps[(n + 1, 0)] = np.arange(A.order, dtype=np.int64)
    q = CrsMorphism(xi, zeta, np.zeros(1, dtype=np.int64), arrow_map, maps,
                    name=f"q({C.name})")
    validate_morphism(q)
    return SplitData(xi, zeta, j, q, mod, pd)


def collapse_to_em(C: CrossedComplex):
    """The quotient of a reduced complex onto the level-1 classifying
    complex of its fundamental group.

    Kills everything above level 1 and projects loops to their pi1
    classes.  When C is aspherical this morphism is a trivial
    fibration, which makes it the canonical source of lifting targets.
    """
    if not C.is_reduced:
        raise DomainError("NotReduced", "the collapse needs a reduced complex")
    pd = pi1(C, 0)
    B = em_complex(pd.group)
    arrow_map = np.array([pd.class_of_arrow(a) for a in range(C.c1.n_arrows)],
                         dtype=np.int64)
    maps = {}
    for m in range(2, C.dim + 1):
        maps[(m, 0)] = np.zeros(C.group(m, 0).order, dtype=np.int64)
    p = CrsMorphism(C, B, np.zeros(1, dtype=np.int64), arrow_map, maps,
                    name=f"collapse({C.name})")
    validate_morphism(p)
    return B, p, pd
