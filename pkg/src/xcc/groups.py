"""Finite groups given by multiplication tables.

Elements of a group of order n are the integers 0..n-1 and the identity
is always 0.  Composition is read diagrammatically throughout the
package: for permutations or automorphisms, ``a*b`` means "apply a,
then b".  With that reading, evaluation ``c^a = a(c)`` is a right
action, which is the orientation every higher layer (crossed modules,
module actions, factor sets) relies on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .errors import DomainError


class FiniteGroup:
    """A finite group presented by its full multiplication table.

    ``table[a, b]`` is the product a*b.  The table is trusted here;
    use :func:`make_group` to validate untrusted input.
    """

    def __init__(self, table: np.ndarray, name: str = ""):
        self.table = np.asarray(table, dtype=np.int64)
        self.order = int(self.table.shape[0])
        self.name = name or f"group{self.order}"
        self.inverse = np.empty(self.order, dtype=np.int64)
        for a in range(self.order):
            hits = np.nonzero(self.table[a] == 0)[0]
            self.inverse[a] = hits[0] if hits.size else -1
        self._orders: np.ndarray | None = None
        self._center: np.ndarray | None = None
        self._derived: np.ndarray | None = None

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, a: int, x: int) -> int:
        """a^x = x^-1 * a * x."""
        return int(self.table[self.table[self.inverse[x], a], x])

    def commutator(self, a: int, b: int) -> int:
        """[a, b] = a^-1 b^-1 a b."""
        t = self.table
        return int(t[t[t[self.inverse[a], self.inverse[b]], a], b])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out = 0
        for _ in range(k):
            out = int(self.table[out, a])
        return out

    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            orders = np.empty(self.order, dtype=np.int64)
            for a in range(self.order):
                x, k = a, 1
                while x != 0:
                    x = int(self.table[x, a])
                    k += 1
                orders[a] = k
            self._orders = orders
        return self._orders

    def element_order(self, a: int) -> int:
        return int(self.element_orders()[a])

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def exponent(self) -> int:
        return int(reduce(np.lcm, self.element_orders()))

    def center_elements(self) -> np.ndarray:
        if self._center is None:
            self._center = np.nonzero((self.table == self.table.T).all(axis=1))[0]
        return self._center

    def derived_elements(self) -> np.ndarray:
        """Elements of the commutator subgroup."""
        if self._derived is None:
            comms = {self.commutator(a, b)
                     for a in range(self.order) for b in range(self.order)}
            self._derived = np.array(self.closure(sorted(comms)), dtype=np.int64)
        return self._derived

    def closure(self, gens) -> list[int]:
        """Sorted subgroup generated by ``gens``."""
        seen = {0}
        frontier = [0]
        gens = [int(g) for g in gens]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = int(self.table[a, g])
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return sorted(seen)

    def generating_sequence(self) -> list[int]:
        """Deterministic small generating list: scan 0..n-1, keep extenders."""
        gens: list[int] = []
        span = [0]
        for a in range(1, self.order):
            if a not in span:
                gens.append(a)
                span = self.closure(gens)
                if len(span) == self.order:
                    break
        return gens

    def relabel(self, perm: np.ndarray, name: str = "") -> "FiniteGroup":
        """Rename elements by ``old -> perm[old]``; perm[0] must be 0."""
        perm = np.asarray(perm, dtype=np.int64)
        if perm[0] != 0:
            raise DomainError("NoIdentityAtZero",
                              "relabelling must keep the identity at index 0")
        new = np.empty_like(self.table)
        new[perm[:, None], perm[None, :]] = perm[self.table]
        return FiniteGroup(new, name or self.name)


def make_group(table, name: str = "") -> FiniteGroup:
    """Validate a multiplication table and wrap it.

    Raises DomainError with tag NoIdentityAtZero, MissingInverse or
    NotAssociative (naming a witness) when the table is not a group
    with identity 0.
    """
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise DomainError("NotAssociative", "table must be a nonempty square matrix")
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise DomainError("NotAssociative", "table entries out of range")
    bad = np.nonzero(t[0] != np.arange(n))[0]
    if bad.size:
        raise DomainError("NoIdentityAtZero", f"0 * {bad[0]} != {bad[0]}")
    bad = np.nonzero(t[:, 0] != np.arange(n))[0]
    if bad.size:
        raise DomainError("NoIdentityAtZero", f"{bad[0]} * 0 != {bad[0]}")
    for a in range(n):
        if not (t[a] == 0).any():
            raise DomainError("MissingInverse", f"element {a} has no inverse")
    left = t[t]            # left[a,b,c] = t[t[a,b],c]
    right = t[:, t]        # right[a,b,c] = t[a,t[b,c]]
    if not np.array_equal(left, right):
        a, b, c = np.argwhere(left != right)[0]
        raise DomainError("NotAssociative", f"({a}*{b})*{c} != {a}*({b}*{c})")
    return FiniteGroup(t, name)


# ---------------------------------------------------------------------------
# presets

MAX_ORDER = 192


def _cyclic_table(n: int) -> np.ndarray:
    i = np.arange(n)
    return (i[:, None] + i[None, :]) % n


def _dihedral_table(n: int) -> np.ndarray:
    # element r^a s^b  <->  index a + n*b;  s r s = r^-1
    m = 2 * n
    t = np.empty((m, m), dtype=np.int64)
    for a in range(n):
        for b in range(2):
            for c in range(n):
                for d in range(2):
                    rot = (a + c) % n if b == 0 else (a - c) % n
                    t[a + n * b, c + n * d] = rot + n * ((b + d) % 2)
    return t


def _perm_group_table(perms: list[tuple[int, ...]]) -> np.ndarray:
    index = {p: i for i, p in enumerate(perms)}
    m = len(perms)
    t = np.empty((m, m), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            t[i, j] = index[tuple(q[x] for x in p)]   # apply p, then q
    return t


def _symmetric_table(n: int) -> np.ndarray:
    from itertools import permutations
    return _perm_group_table(sorted(permutations(range(n))))


def _quaternion8_table() -> np.ndarray:
    # 0..7 = 1, i, j, k, -1, -i, -j, -k
    base = {
        (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
        (1, 0): (1, 1), (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
        (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (0, -1), (2, 3): (1, 1),
        (3, 0): (3, 1), (3, 1): (2, 1), (3, 2): (1, -1), (3, 3): (0, -1),
    }
    t = np.empty((8, 8), dtype=np.int64)
    for a in range(8):
        for b in range(8):
            unit, sign = base[(a % 4, b % 4)]
            sign *= (-1) ** (a // 4 + b // 4)
            t[a, b] = unit + (4 if sign < 0 else 0)
    return t


def direct_product(*groups: FiniteGroup, name: str = "") -> FiniteGroup:
    """Direct product with lexicographic element indexing, identity first."""
    if not groups:
        return FiniteGroup(np.zeros((1, 1), dtype=np.int64), name or "C1")
    out = groups[0]
    for g in groups[1:]:
        n1, n2 = out.order, g.order
        t = np.empty((n1 * n2, n1 * n2), dtype=np.int64)
        for a1 in range(n1):
            for a2 in range(n2):
                t[a1 * n2 + a2] = (out.table[a1][:, None] * n2
                                   + g.table[a2][None, :]).reshape(-1)
        out = FiniteGroup(t, f"{out.name}x{g.name}")
    if name:
        out.name = name
    return out


def preset_group(spec: str) -> FiniteGroup:
    """Build a named preset: trivial, cyclic n, dihedral n (order 2n),
    symmetric n (n <= 4), quaternion8, klein4."""
    parts = spec.strip().lower().split()
    kind = parts[0] if parts else ""
    arg = None
    if len(parts) == 2:
        try:
            arg = int(parts[1])
        except ValueError:
            raise DomainError("UnknownPreset", spec) from None
    elif len(parts) > 2:
        raise DomainError("UnknownPreset", spec)

    if kind == "trivial" and arg is None:
        return FiniteGroup(np.zeros((1, 1), dtype=np.int64), "C1")
    if kind == "klein4" and arg is None:
        g = direct_product(preset_group("cyclic 2"), preset_group("cyclic 2"))
        g.name = "C2xC2"
        return g
    if kind == "quaternion8" and arg is None:
        return FiniteGroup(_quaternion8_table(), "Q8")
    if kind == "cyclic":
        if arg is None or arg < 1:
            raise DomainError("UnknownPreset", spec)
        if arg > MAX_ORDER:
            raise DomainError("UnsupportedSize", f"cyclic {arg} exceeds order {MAX_ORDER}")
        return FiniteGroup(_cyclic_table(arg), f"C{arg}")
    if kind == "dihedral":
        if arg is None or arg < 1:
            raise DomainError("UnknownPreset", spec)
        if 2 * arg > MAX_ORDER:
            raise DomainError("UnsupportedSize", f"dihedral {arg} exceeds order {MAX_ORDER}")
        return FiniteGroup(_dihedral_table(arg), f"D{arg}")
    if kind == "symmetric":
        if arg is None or arg < 1:
            raise DomainError("UnknownPreset", spec)
        if arg > 4:
            raise DomainError("UnsupportedSize", "symmetric n is supported for n <= 4")
        return FiniteGroup(_symmetric_table(arg), f"S{arg}")
    raise DomainError("UnknownPreset", spec)


def subgroup_group(G: FiniteGroup, elements, name: str = "") -> tuple[FiniteGroup, np.ndarray]:
    """The subgroup on ``elements`` as its own group plus the embedding array.

    Elements are re-indexed in increasing order, so the identity stays
    at 0.  ``embed[i]`` is the index in G of subgroup element i.
    """
    embed = np.array(sorted(int(e) for e in elements), dtype=np.int64)
    if embed.size == 0 or embed[0] != 0:
        raise DomainError("NoIdentityAtZero", "subgroup must contain the identity")
    pos = {int(e): i for i, e in enumerate(embed)}
    k = embed.size
    t = np.empty((k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            p = int(G.table[embed[i], embed[j]])
            if p not in pos:
                raise DomainError("MissingInverse", f"set not closed: {embed[i]}*{embed[j]}")
            t[i, j] = pos[p]
    return FiniteGroup(t, name or f"sub{k}of{G.name}"), embed


def center(G: FiniteGroup) -> tuple[FiniteGroup, np.ndarray]:
    """Centre of G as a group plus its embedding into G."""
    return subgroup_group(G, G.center_elements(), name=f"Z({G.name})")


def quotient_group(G: FiniteGroup, normal_elements,
                   name: str = "") -> tuple[FiniteGroup, np.ndarray]:
    """G modulo a normal subgroup, given by its element set.

    Cosets are labelled 0.. in order of their smallest member, which
    puts the coset of the identity at index 0.  Returns the quotient
    and the projection array.  Normality is checked.
    """
    nset = set(int(x) for x in normal_elements)
    if 0 not in nset:
        raise DomainError("NoIdentityAtZero", "normal subgroup must contain 0")
    for h in nset:
        for g in range(G.order):
            if G.conj(h, g) not in nset:
                raise DomainError("NotNormal", f"conjugate of {h} by {g} escapes")
    coset_min = np.empty(G.order, dtype=np.int64)
    for a in range(G.order):
        coset_min[a] = min(int(G.table[h, a]) for h in nset)
    reps = sorted(set(int(r) for r in coset_min))
    rep_no = {r: i for i, r in enumerate(reps)}
    proj = np.array([rep_no[int(coset_min[a])] for a in range(G.order)],
                    dtype=np.int64)
    q = len(reps)
    table = np.empty((q, q), dtype=np.int64)
    for i, r in enumerate(reps):
        for j, s in enumerate(reps):
            table[i, j] = proj[G.table[r, s]]
    return FiniteGroup(table, name or f"{G.name}/N"), proj


# ---------------------------------------------------------------------------
# homomorphisms

@dataclass
class GroupHom:
    """A homomorphism dom -> cod stored as the image array."""

    dom: FiniteGroup
    cod: FiniteGroup
    image: np.ndarray

    def __post_init__(self):
        self.image = np.asarray(self.image, dtype=np.int64)

    def validate(self) -> None:
        img = self.image
        if img.shape != (self.dom.order,):
            raise DomainError("NotAHomomorphism", "image array has wrong length")
        if img.min() < 0 or img.max() >= self.cod.order:
            raise DomainError("NotAHomomorphism", "image values out of range")
        lhs = img[self.dom.table]
        rhs = self.cod.table[img[:, None], img[None, :]]
        if not np.array_equal(lhs, rhs):
            a, b = np.argwhere(lhs != rhs)[0]
            raise DomainError("NotAHomomorphism", f"f({a}*{b}) != f({a})*f({b})")

    def __call__(self, a: int) -> int:
        return int(self.image[a])

    def then(self, g: "GroupHom") -> "GroupHom":
        """Diagrammatic composite: apply self, then g."""
        return GroupHom(self.dom, g.cod, g.image[self.image])

    def kernel_elements(self) -> np.ndarray:
        return np.nonzero(self.image == 0)[0]

    def image_elements(self) -> np.ndarray:
        return np.unique(self.image)

    @property
    def is_injective(self) -> bool:
        return len(np.unique(self.image)) == self.dom.order

    @property
    def is_surjective(self) -> bool:
        return len(np.unique(self.image)) == self.cod.order

    @property
    def is_isomorphism(self) -> bool:
        return self.dom.order == self.cod.order and self.is_injective


def _bfs_words(G: FiniteGroup, gens: list[int]) -> list[tuple[int, int, int]]:
    """Order all elements as words in ``gens``.

    Returns a list of (element, parent_element, gen_index) in BFS order,
    starting from the identity (whose entry is (0, -1, -1)).  Each
    element first appears as parent * gens[gen_index], which lets a
    homomorphism be evaluated on every element from generator images
    alone.
    """
    out = [(0, -1, -1)]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for gi, g in enumerate(gens):
                b = int(G.table[a, g])
                if b not in seen:
                    seen.add(b)
                    out.append((b, a, gi))
                    nxt.append(b)
        frontier = nxt
    return out


def _hom_from_gen_images(G: FiniteGroup, H: FiniteGroup, gens: list[int],
                         words: list[tuple[int, int, int]],
                         gen_images: tuple[int, ...]) -> np.ndarray | None:
    """Extend generator images along BFS words; None if not a homomorphism."""
    img = np.full(G.order, -1, dtype=np.int64)
    img[0] = 0
    for elt, parent, gi in words[1:]:
        img[elt] = H.table[img[parent], gen_images[gi]]
    lhs = img[G.table]
    rhs = H.table[img[:, None], img[None, :]]
    if np.array_equal(lhs, rhs):
        return img
    return None


def enumerate_homs(G: FiniteGroup, H: FiniteGroup) -> list[GroupHom]:
    """All homomorphisms G -> H, deterministically ordered by image tuple.

    Backtracks over generator images (candidates filtered by element
    order divisibility), then verifies the induced map on the whole
    table.  Sizes in this package keep the candidate space tiny.
    """
    gens = G.generating_sequence()
    if not gens:
        return [GroupHom(G, H, np.zeros(1, dtype=np.int64))]
    words = _bfs_words(G, gens)
    ordsG = G.element_orders()
    ordsH = H.element_orders()
    candidates = [
        [h for h in range(H.order) if ordsG[g] % ordsH[h] == 0]
        for g in gens
    ]
    found = []
    from itertools import product
    for gen_images in product(*candidates):
        img = _hom_from_gen_images(G, H, gens, words, gen_images)
        if img is not None:
            found.append(img)
    found.sort(key=lambda im: im.tolist())
    return [GroupHom(G, H, im) for im in found]


# ---------------------------------------------------------------------------
# automorphisms

@dataclass
class AutData:
    """The automorphism structure of a group K, with conjugation data.

    ``perms[a]`` is the permutation of K performed by automorphism a;
    automorphism composition is diagrammatic (a*b = a then b), which
    makes evaluation a right action.  ``chi`` sends k to conjugation by
    k (x -> k^-1 x k), ``inn`` lists the inner automorphism indices,
    ``out`` is the quotient by them and ``proj`` the projection.
    """

    base: FiniteGroup
    aut: FiniteGroup
    perms: np.ndarray
    chi: GroupHom
    inn: np.ndarray
    out: FiniteGroup
    proj: GroupHom
    index_of: dict = field(repr=False, default_factory=dict)

    def apply(self, a: int, k: int) -> int:
        """k^a, the automorphism a evaluated on the element k."""
        return int(self.perms[a, k])

    def find(self, perm) -> int:
        """Index of an automorphism given as an image tuple; -1 if absent."""
        return self.index_of.get(tuple(int(x) for x in perm), -1)


def _automorphism_perms(K: FiniteGroup) -> list[tuple[int, ...]]:
    gens = K.generating_sequence()
    if not gens:
        return [(0,)]
    words = _bfs_words(K, gens)
    orders = K.element_orders()
    candidates = [
        [h for h in range(K.order) if orders[h] == orders[g]]
        for g in gens
    ]
    perms = []
    from itertools import product
    for gen_images in product(*candidates):
        img = _hom_from_gen_images(K, K, gens, words, gen_images)
        if img is not None and len(np.unique(img)) == K.order:
            perms.append(tuple(int(x) for x in img))
    return sorted(perms)


def _automorphism_perms_bruteforce(K: FiniteGroup) -> list[tuple[int, ...]]:
    """Filter all permutations fixing 0; self-check route for tiny groups."""
    from itertools import permutations
    out = []
    for rest in permutations(range(1, K.order)):
        p = np.array((0,) + rest, dtype=np.int64)
        if np.array_equal(p[K.table], K.table[p[:, None], p[None, :]]):
            out.append(tuple(int(x) for x in p))
    return sorted(out)


def automorphism_group(K: FiniteGroup) -> AutData:
    """Aut(K) with conjugation, inner subgroup and outer quotient.

    Automorphisms are found by backtracking over generator images; for
    orders up to 8 the result is cross-checked against a plain filter
    of all permutations.  The sorted list of image tuples fixes the
    element order of Aut(K), and the identity lands at index 0.
    """
    perm_list = _automorphism_perms(K)
    if K.order <= 8:
        if perm_list != _automorphism_perms_bruteforce(K):
            raise DomainError("AutSelfCheckFailed",
                              f"backtracking and full enumeration disagree on {K.name}")
    perms = np.array(perm_list, dtype=np.int64)
    m = perms.shape[0]
    index_of = {p: i for i, p in enumerate(perm_list)}
    table = np.empty((m, m), dtype=np.int64)
    for a in range(m):
        for b in range(m):
            table[a, b] = index_of[tuple(int(x) for x in perms[b][perms[a]])]
    aut = FiniteGroup(table, f"Aut({K.name})")

    chi_img = np.empty(K.order, dtype=np.int64)
    for k in range(K.order):
        conj = tuple(K.conj(x, k) for x in range(K.order))
        chi_img[k] = index_of[conj]
    chi = GroupHom(K, aut, chi_img)
    chi.validate()

    inn = np.unique(chi_img)
    inn_set = set(int(i) for i in inn)
    coset_rep = np.empty(m, dtype=np.int64)
    for a in range(m):
        coset_rep[a] = min(int(table[h, a]) for h in inn_set)
    reps = sorted(set(int(r) for r in coset_rep))
    rep_index = {r: i for i, r in enumerate(reps)}
    proj_img = np.array([rep_index[int(coset_rep[a])] for a in range(m)],
                        dtype=np.int64)
    q = len(reps)
    out_table = np.empty((q, q), dtype=np.int64)
    for i, r in enumerate(reps):
        for j, s in enumerate(reps):
            out_table[i, j] = proj_img[table[r, s]]
    out = FiniteGroup(out_table, f"Out({K.name})")
    proj = GroupHom(aut, out, proj_img)
    proj.validate()
    return AutData(base=K, aut=aut, perms=perms, chi=chi, inn=inn,
                   out=out, proj=proj, index_of=index_of)


# ---------------------------------------------------------------------------
# modules

@dataclass
class GModule:
    """An abelian group A with a right action of a finite group Q.

    ``act[q]`` is the permutation of A by q, and composition is again
    diagrammatic: a^(q1*q2) = (a^q1)^q2 means act[q1*q2] = act[q1]
    followed by act[q2].
    """

    coeff: FiniteGroup
    actor: FiniteGroup
    act: np.ndarray

    def __post_init__(self):
        self.act = np.asarray(self.act, dtype=np.int64)

    def apply(self, q: int, a: int) -> int:
        return int(self.act[q, a])

    def validate(self) -> None:
        A, Q = self.coeff, self.actor
        if not A.is_abelian:
            raise DomainError("NotAbelian", "coefficients must be abelian")
        if self.act.shape != (Q.order, A.order):
            raise DomainError("ActionNotAutomorphism", "action table has wrong shape")
        for q in range(Q.order):
            p = self.act[q]
            if len(np.unique(p)) != A.order:
                raise DomainError("ActionNotAutomorphism", f"actor element {q} is not a bijection")
            if not np.array_equal(p[A.table], A.table[p[:, None], p[None, :]]):
                raise DomainError("ActionNotAutomorphism", f"actor element {q} is not a homomorphism")
        for q1 in range(Q.order):
            for q2 in range(Q.order):
                composed = self.act[q2][self.act[q1]]
                if not np.array_equal(self.act[Q.table[q1, q2]], composed):
                    raise DomainError("ActionNotHomomorphism",
                                      f"action of {q1}*{q2} differs from acting in sequence")


def make_module(coeff: FiniteGroup, actor: FiniteGroup, act) -> GModule:
    m = GModule(coeff, actor, act)
    m.validate()
    return m


def trivial_module(coeff: FiniteGroup, actor: FiniteGroup) -> GModule:
    act = np.tile(np.arange(coeff.order), (actor.order, 1))
    return make_module(coeff, actor, act)


def inversion_module(coeff: FiniteGroup, actor: FiniteGroup) -> GModule:
    """The actor inverts the coefficients through its sign map.

    The sign map is the homomorphism onto {+1, -1} sending every
    element of the deterministic generating sequence to -1; for cyclic
    actors of even order this is the parity map.  Actors without such
    a map (odd order, or mixed-parity generators forced by relations)
    are rejected.
    """
    c2 = FiniteGroup(_cyclic_table(2), "C2")
    gens = actor.generating_sequence()
    for h in enumerate_homs(actor, c2):
        if all(int(h.image[g]) == 1 for g in gens):
            act = np.empty((actor.order, coeff.order), dtype=np.int64)
            for q in range(actor.order):
                act[q] = np.arange(coeff.order) if h.image[q] == 0 \
                    else coeff.inverse
            return make_module(coeff, actor, act)
    raise DomainError("ActionNotHomomorphism",
                      f"{actor.name} has no inversion action")


# ---------------------------------------------------------------------------
# fingerprints and identification

def group_fingerprint(G: FiniteGroup) -> tuple:
    """Cheap isomorphism invariants: order, abelianness, element order
    multiset, centre size, derived subgroup size."""
    return (
        G.order,
        G.is_abelian,
        tuple(sorted(int(o) for o in G.element_orders())),
        int(G.center_elements().size),
        int(G.derived_elements().size),
    )


_CATALOGUE: list[tuple[str, FiniteGroup]] | None = None
_IDENTIFY_MAX = 24


def _cyclic_product(factors: tuple[int, ...]) -> tuple[str, FiniteGroup]:
    g = direct_product(*(preset_group(f"cyclic {d}") for d in factors))
    name = "x".join(f"C{d}" for d in factors)
    g.name = name
    return name, g


def _build_catalogue() -> list[tuple[str, FiniteGroup]]:
    """Named groups of order <= 24, preferred names first.

    S3 precedes D3 and S3xC2 precedes D6, so identification reports the
    conventional name for those orders.  Isomorphic duplicates are
    dropped at build time via the exhaustive search oracle.
    """
    entries: list[tuple[str, FiniteGroup]] = [("C1", preset_group("trivial"))]
    for n in range(2, _IDENTIFY_MAX + 1):
        entries.append((f"C{n}", preset_group(f"cyclic {n}")))
    # abelian, as invariant-factor chains d1 | d2 | ... with product <= 24
    for factors in [(2, 2), (2, 4), (2, 2, 2), (3, 3), (2, 6), (2, 8),
                    (4, 4), (2, 2, 4), (2, 2, 2, 2), (2, 10), (2, 12),
                    (3, 6), (2, 2, 6)]:
        entries.append(_cyclic_product(factors))
    entries.append(("S3", preset_group("symmetric 3")))
    entries.append(("S4", preset_group("symmetric 4")))
    entries.append(("Q8", preset_group("quaternion8")))
    s3c2 = direct_product(preset_group("symmetric 3"), preset_group("cyclic 2"))
    s3c2.name = "S3xC2"
    entries.append(("S3xC2", s3c2))
    s4 = preset_group("symmetric 4")
    a4, _ = subgroup_group(s4, s4.derived_elements(), name="A4")
    entries.append(("A4", a4))
    d4c2 = direct_product(preset_group("dihedral 4"), preset_group("cyclic 2"))
    d4c2.name = "D4xC2"
    entries.append(("D4xC2", d4c2))
    q8c2 = direct_product(preset_group("quaternion8"), preset_group("cyclic 2"))
    q8c2.name = "Q8xC2"
    entries.append(("Q8xC2", q8c2))
    for n in range(3, _IDENTIFY_MAX // 2 + 1):
        entries.append((f"D{n}", preset_group(f"dihedral {n}")))

    from .oracle import exhaustive_isomorphism
    kept: list[tuple[str, FiniteGroup]] = []
    seen: dict[tuple, list[int]] = {}
    for name, g in entries:
        fp = group_fingerprint(g)
        dup = False
        for i in seen.get(fp, []):
            if exhaustive_isomorphism(kept[i][1], g).isomorphic:
                dup = True
                break
        if not dup:
            seen.setdefault(fp, []).append(len(kept))
            kept.append((name, g))
    return kept


def identify(G: FiniteGroup) -> str | None:
    """Name of G in the small-group catalogue, or None.

    Fingerprints narrow the candidates; an exhaustive isomorphism
    search settles each remaining one.  Groups of order above 24 are
    outside the search cap and come back None.
    """
    if G.order > _IDENTIFY_MAX:
        return None
    global _CATALOGUE
    if _CATALOGUE is None:
        _CATALOGUE = _build_catalogue()
    from .oracle import exhaustive_isomorphism
    fp = group_fingerprint(G)
    for name, H in _CATALOGUE:
        if group_fingerprint(H) == fp and exhaustive_isomorphism(G, H).isomorphic:
            return name
    return None


def small_groups(max_order: int) -> list[tuple[str, FiniteGroup]]:
    """One representative per isomorphism class of order <= max_order,
    drawn from the catalogue.  Complete for max_order <= 11 (the
    catalogue skips the dicyclic group of order 12 and beyond)."""
    if max_order > 11:
        raise DomainError("UnsupportedSize",
                          f"catalogue is only complete through order 11, got {max_order}")
    global _CATALOGUE
    if _CATALOGUE is None:
        _CATALOGUE = _build_catalogue()
    out = [(name, g) for name, g in _CATALOGUE if g.order <= max_order]
    out.sort(key=lambda item: (item[1].order, item[0]))
    return out
