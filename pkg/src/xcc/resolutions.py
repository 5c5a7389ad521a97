"""Free crossed resolutions of finite groups, carried by their bases.

A presentation stores, per level, a list of basis labels and the formal
boundary of each basis element: a level-1 word for level 2, an ordered
product of conjugated generators for level 3, and an integer
combination for level 4.  Morphisms out of such a presentation into a
finite reduced crossed complex are determined by basis images, so they
are stored and validated that way, and lifting through a trivial
fibration works basis element by basis element.

Two resolutions are built here:

  * the standard resolution of a finite group, with one level-1 symbol
    per group element and one level-n basis element per n-tuple; its
    level-2 boundaries spell out the multiplication table and the
    higher boundaries alternate translated faces;
  * the small resolution of a cyclic group, with a single basis element
    in every level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .complexes import CrossedComplex, CrsMorphism, is_trivial_fibration
from .complexes import rlp_check  # noqa: F401  (lifting squares live with the model cells)
from .errors import DomainError
from .formal import CrossedTerm, FormalCrossed, FormalSum, FormalWord
from .groups import FiniteGroup


@dataclass
class FreeCrsPresentation:
    """A free crossed resolution of ``group``, by bases and boundaries."""

    group: FiniteGroup
    depth: int
    basis: dict[int, list]
    symbol_image: list[int]          # level-1 symbol -> group element
    d2: list[FormalWord] = field(default_factory=list)
    d3: list[FormalCrossed] = field(default_factory=list)
    d4: list[FormalSum] = field(default_factory=list)
    name: str = ""

    def boundary(self, n: int, i: int):
        if n == 2:
            return self.d2[i]
        if n == 3:
            return self.d3[i]
        if n == 4:
            return self.d4[i]
        raise DomainError("BadDimension", f"no stored boundary at level {n}")

    def word_image(self, w: FormalWord) -> int:
        """Push a level-1 word down to the resolved group."""
        G = self.group
        out = 0
        for s, e in w.letters:
            g = self.symbol_image[s]
            out = G.mul(out, g if e == 1 else G.inv(g))
        return out


def standard_resolution(G: FiniteGroup, depth: int = 4) -> FreeCrsPresentation:
    """The resolution with one level-n basis element per n-tuple.

    Level-1 symbols are the group elements themselves (the identity
    symbol included), level-2 boundaries read off the multiplication
    table, and the boundaries above are the alternating translated
    faces familiar from the bar construction.
    """
    if depth < 2 or depth > 4:
        raise DomainError("BadDimension", f"depth must be 2..4, got {depth}")
    n = G.order
    basis: dict[int, list] = {1: list(range(n))}
    pres = FreeCrsPresentation(G, depth, basis, list(range(n)),
                               name=f"std({G.name})")

    basis[2] = list(product(range(n), repeat=2))
    idx2 = {t: i for i, t in enumerate(basis[2])}
    for g, h in basis[2]:
        w = FormalWord.gen(g) * FormalWord.gen(h) * \
            FormalWord.gen(int(G.table[g, h]), -1)
        pres.d2.append(w)

    if depth >= 3:
        basis[3] = list(product(range(n), repeat=3))
        idx3 = {t: i for i, t in enumerate(basis[3])}
        for g, h, k in basis[3]:
            hk = int(G.table[h, k])
            gh = int(G.table[g, h])
            pres.d3.append(FormalCrossed((
                (idx2[(h, k)], 1, FormalWord.gen(g, -1)),
                (idx2[(g, hk)], 1, FormalWord()),
                (idx2[(gh, k)], -1, FormalWord()),
                (idx2[(g, h)], -1, FormalWord()),
            )))

    if depth >= 4:
        basis[4] = list(product(range(n), repeat=4))
        for g, h, k, l in basis[4]:
            gh = int(G.table[g, h])
            hk = int(G.table[h, k])
            kl = int(G.table[k, l])
            pres.d4.append(
                FormalSum({(idx3[(h, k, l)], FormalWord.gen(g, -1)): 1})
                - FormalSum.gen(idx3[(gh, k, l)])
                + FormalSum.gen(idx3[(g, hk, l)])
                - FormalSum.gen(idx3[(g, h, kl)])
                + FormalSum.gen(idx3[(g, h, k)]))
    return pres


def cyclic_resolution(G: FiniteGroup, depth: int = 4) -> FreeCrsPresentation:
    """The one-generator resolution of a cyclic group.

    Takes the generator x = 1, one basis element per level, boundaries
    x^m, then a^x * a^-1, then the sum of b translated over all powers
    of x.
    """
    if depth < 2 or depth > 4:
        raise DomainError("BadDimension", f"depth must be 2..4, got {depth}")
    m = G.order
    orders = [int(o) for o in G.element_orders()]
    if m > 1 and orders.count(m) == 0:
        raise DomainError("NotCyclic", f"{G.name} has no generator")
    gen = 1 if m > 1 and orders[1] == m else \
        next(i for i, o in enumerate(orders) if o == m)
    x = FormalWord.gen(0)
    basis = {1: ["x"], 2: ["a"], 3: ["b"], 4: ["c"]}
    pres = FreeCrsPresentation(G, depth, basis, [gen], name=f"cyc({G.name})")
    pres.d2.append(x ** m)
    if depth >= 3:
        pres.d3.append(FormalCrossed(((0, 1, x), (0, -1, FormalWord()))))
    if depth >= 4:
        pres.d4.append(FormalSum({(0, x ** i): 1 for i in range(m)}))
    return pres


def validate_presentation(pres: FreeCrsPresentation) -> None:
    """Check that consecutive boundaries compose to the trivial element.

    The level-3-into-2 composite is checked by free reduction of the
    resulting level-1 word.  The level-4-into-3 composite lands in the
    centre of the free crossed module, where triviality is equivalent
    to vanishing of the induced combination over (generator, pushed
    word) pairs; that is checked by accumulation.  Level-2 boundaries
    are also required to push down to the identity of the group.
    """
    for i, w in enumerate(pres.d2):
        if pres.word_image(w) != 0:
            raise DomainError("BoundaryComposite",
                              f"level-2 boundary {i} does not collapse in the group")
    if pres.depth >= 3:
        for i, fc in enumerate(pres.d3):
            word = FormalWord()
            for t in fc.terms:
                d = pres.d2[t.gen]
                if t.sign == -1:
                    d = d.inverse()
                word = word * (t.conj.inverse() * d * t.conj)
            if not word.is_identity:
                raise DomainError("BoundaryComposite",
                                  f"level-3 boundary {i} has nontrivial image word")
    if pres.depth >= 4:
        for i, fs in enumerate(pres.d4):
            acc: dict[tuple[int, int], int] = {}
            for (g, w), c in fs.coeffs.items():
                for t in pres.d3[g].terms:
                    key = (t.gen, pres.word_image(t.conj * w))
                    acc[key] = acc.get(key, 0) + c * t.sign
            if any(v != 0 for v in acc.values()):
                raise DomainError("BoundaryComposite",
                                  f"level-4 boundary {i} survives abelianisation")


# ---------------------------------------------------------------------------
# model cells

@dataclass(frozen=True)
class ModelCell:
    """A free complex described by its generating cells only.

    These are the shapes behind the lifting-square checks: the level-n
    condition of rlp_check fills a sphere of dimension n - 1 to a disc
    of dimension n.  As honest complexes the models are infinite (they
    are free on their cells), so only generators and attachments are
    stored.
    """

    name: str
    dim: int                            # -1 for the empty complex
    objects: tuple[str, ...]
    cells: dict[int, tuple[str, ...]]   # level -> generator names
    attach: dict[str, tuple]            # generator -> boundary data


def disc_sphere(n: int):
    """The model disc of dimension n, its boundary sphere, and the
    inclusion of generators.

    The disc has one cell in dimensions n and n - 1 with the lower cell
    as boundary of the upper; at n = 1 it is instead the interval, two
    endpoints and one arrow, and at n = 0 a single point over the empty
    sphere.  The sphere misses exactly the top cell.  The inclusion
    maps every sphere generator to the disc generator of the same name.
    """
    if n < 0 or n > 5:
        raise DomainError("BadDimension",
                          f"model cells exist for 0 <= n <= 5, got {n}")
    if n == 0:
        disc = ModelCell("disc0", 0, ("v",), {}, {})
        sphere = ModelCell("sphere-1", -1, (), {}, {})
        return disc, sphere, {}
    if n == 1:
        disc = ModelCell("disc1", 1, ("v0", "v1"), {1: ("a",)},
                         {"a": ("v0", "v1")})
        sphere = ModelCell("sphere0", 0, ("v0", "v1"), {}, {})
        return disc, sphere, {"v0": "v0", "v1": "v1"}
    if n == 2:
        disc = ModelCell("disc2", 2, ("v",), {1: ("s",), 2: ("c",)},
                         {"s": ("v", "v"), "c": ("s",)})
        sphere = ModelCell("sphere1", 1, ("v",), {1: ("s",)},
                           {"s": ("v", "v")})
        return disc, sphere, {"v": "v", "s": "s"}
    disc = ModelCell(f"disc{n}", n, ("v",), {n - 1: ("s",), n: ("c",)},
                     {"c": ("s",)})
    sphere = ModelCell(f"sphere{n - 1}", n - 1, ("v",), {n - 1: ("s",)}, {})
    return disc, sphere, {"v": "v", "s": "s"}


# ---------------------------------------------------------------------------
# morphisms into finite complexes

@dataclass
class ResMorphism:
    """A morphism from a free presentation into a finite reduced complex,
    stored as basis images: arrows for level 1, group elements above."""

    pres: FreeCrsPresentation
    target: CrossedComplex
    images: dict[int, list[int]]
    name: str = ""

    def image(self, n: int, i: int) -> int:
        if n not in self.images or i >= len(self.images[n]):
            raise DomainError("MissingBasisValue",
                              f"no image for basis element {i} at level {n}")
        return int(self.images[n][i])

    # evaluation of formal expressions through the basis images

    def eval_word(self, w: FormalWord) -> int:
        g1 = self.target.c1
        out = int(g1.id_arrow[0])
        for s, e in w.letters:
            a = self.image(1, s)
            out = g1.mul(out, a if e == 1 else g1.inv(a))
        return out

    def eval_crossed(self, fc: FormalCrossed) -> int:
        C = self.target
        G2 = C.group(2, 0)
        out = 0
        for t in fc.terms:
            v = self.image(2, t.gen)
            v = int(C.act(2, self.eval_word(t.conj))[v])
            if t.sign == -1:
                v = G2.inv(v)
            out = G2.mul(out, v)
        return out

    def eval_sum(self, fs: FormalSum, level: int) -> int:
        C = self.target
        Gn = C.group(level, 0)
        out = 0
        for (g, w), c in fs.coeffs.items():
            v = self.image(level, g)
            v = int(C.act(level, self.eval_word(w))[v])
            out = Gn.mul(out, Gn.power(v, c))
        return out

    def eval_boundary(self, n: int, i: int) -> int:
        """The target value of the pushed-down boundary of basis element
        i at level n; an arrow for n = 2, an element otherwise."""
        if n == 2:
            return self.eval_word(self.pres.d2[i])
        if n == 3:
            return self.eval_crossed(self.pres.d3[i])
        return self.eval_sum(self.pres.d4[i], n - 1)


def validate_res_morphism(m: ResMorphism) -> None:
    C = m.target
    if not C.is_reduced:
        raise DomainError("NotReduced", "resolution morphisms need a reduced target")
    pres = m.pres
    g1 = C.c1
    for i in range(len(pres.basis[1])):
        a = m.image(1, i)
        if int(g1.src[a]) != 0 or int(g1.tgt[a]) != 0:
            raise DomainError("InvalidMorphism",
                              f"level-1 image of symbol {i} is not a loop at the base")
    for n in range(2, pres.depth + 1):
        for i in range(len(pres.basis[n])):
            v = m.image(n, i)
            if v < 0 or v >= C.group(n, 0).order:
                raise DomainError("InvalidMorphism",
                                  f"level-{n} image of basis element {i} out of range")
            want = m.eval_boundary(n, i)
            got = C.boundary_of(n, 0, v)
            if got != want:
                raise DomainError("InvalidMorphism",
                                  f"boundary mismatch at level {n}, basis element {i}: "
                                  f"image has boundary {got}, formula gives {want}")


def then_morphism(m: ResMorphism, p: CrsMorphism, name: str = "") -> ResMorphism:
    """Compose basis images with a morphism of finite complexes."""
    if m.target is not p.dom:
        raise DomainError("InvalidMorphism", "composition endpoints disagree")
    images = {1: [int(p.arrow_map[a]) for a in m.images[1]]}
    for n in range(2, m.pres.depth + 1):
        images[n] = [int(p.map(n, 0)[v]) for v in m.images[n]]
    return ResMorphism(m.pres, p.cod, images, name=name or f"{m.name};{p.name}")


def lift_through_trivial_fibration(f: ResMorphism, q: CrsMorphism,
                                   check: bool = True) -> ResMorphism:
    """Lift f through the trivial fibration q, basis element by basis
    element, always taking the smallest admissible image.

    At level 1 any preimage loop works; above, the image must sit over
    the prescribed base element and have the boundary already built one
    level down.  For a genuine trivial fibration a filler always
    exists; a missing one raises LiftFailed with the offending basis
    element.
    """
    E, B = q.dom, q.cod
    if f.target is not B:
        raise DomainError("InvalidMorphism", "the morphism does not land in the base")
    if not (E.is_reduced and B.is_reduced):
        raise DomainError("NotReduced", "lifting is implemented for reduced complexes")
    if check:
        verdict = is_trivial_fibration(q)
        if not verdict:
            raise DomainError("NotTrivialFibration", verdict.reason)

    pres = f.pres
    lifted = ResMorphism(pres, E, {}, name=f"lift({f.name or 'f'})")

    level1 = []
    ge = E.c1
    for i in range(len(pres.basis[1])):
        want = f.image(1, i)
        for a in range(ge.n_arrows):
            if int(ge.src[a]) == 0 and int(ge.tgt[a]) == 0 and \
               int(q.arrow_map[a]) == want:
                level1.append(a)
                break
        else:
            raise DomainError("LiftFailed", f"no loop over level-1 symbol {i}")
    lifted.images[1] = level1

    for n in range(2, pres.depth + 1):
        vals = []
        for i in range(len(pres.basis[n])):
            want_base = f.image(n, i)
            want_boundary = lifted.eval_boundary(n, i)
            Gn = E.group(n, 0)
            for c in range(Gn.order):
                over = int(q.map(n, 0)[c]) if n <= E.dim else 0
                if over == want_base and E.boundary_of(n, 0, c) == want_boundary:
                    vals.append(c)
                    break
            else:
                raise DomainError(
                    "LiftFailed",
                    f"no filler at level {n} for basis element {i} "
                    f"(base {want_base}, boundary {want_boundary})")
        lifted.images[n] = vals
    return lifted
