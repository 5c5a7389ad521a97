"""Finite groupoids with explicitly tabulated composition.

Arrows are integers with source/target arrays and a partial composition
table; ``comp[a, b]`` is "a then b" and is -1 unless tgt(a) = src(b).
Only as much groupoid generality is kept as the non-reduced parts of
the package need: vertex groups, stars, components, disjoint unions and
full subgroupoids.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .groups import FiniteGroup


class FiniteGroupoid:
    def __init__(self, nobj: int, src, tgt, comp, name: str = ""):
        self.nobj = int(nobj)
        self.src = np.asarray(src, dtype=np.int64)
        self.tgt = np.asarray(tgt, dtype=np.int64)
        self.comp = np.asarray(comp, dtype=np.int64)
        self.n_arrows = int(self.src.shape[0])
        self.name = name or f"groupoid{self.nobj}o{self.n_arrows}a"
        self._validate()

    def _validate(self):
        m = self.n_arrows
        if self.tgt.shape != (m,) or self.comp.shape != (m, m):
            raise DomainError("InvalidGroupoid", "array shapes disagree")
        if m and (min(self.src.min(), self.tgt.min()) < 0
                  or max(self.src.max(), self.tgt.max()) >= self.nobj):
            raise DomainError("InvalidGroupoid", "object indices out of range")
        for a in range(m):
            for b in range(m):
                c = int(self.comp[a, b])
                if (c >= 0) != (self.tgt[a] == self.src[b]):
                    raise DomainError("InvalidGroupoid",
                                      f"composability of ({a}, {b}) mismatches src/tgt")
                if c >= 0:
                    if c >= m:
                        raise DomainError("InvalidGroupoid", "composite out of range")
                    if self.src[c] != self.src[a] or self.tgt[c] != self.tgt[b]:
                        raise DomainError("InvalidGroupoid",
                                          f"composite of ({a}, {b}) has wrong endpoints")
        for a in range(m):
            for b in range(m):
                for c in range(m):
                    if self.tgt[a] == self.src[b] and self.tgt[b] == self.src[c]:
                        if self.comp[self.comp[a, b], c] != self.comp[a, self.comp[b, c]]:
                            raise DomainError("InvalidGroupoid",
                                              f"associativity fails at ({a}, {b}, {c})")
        self.id_arrow = np.full(self.nobj, -1, dtype=np.int64)
        for x in range(self.nobj):
            loops = [a for a in range(m)
                     if self.src[a] == x and self.tgt[a] == x]
            for e in loops:
                if all(self.comp[e, b] == b for b in range(m) if self.src[b] == x) and \
                   all(self.comp[b, e] == b for b in range(m) if self.tgt[b] == x):
                    self.id_arrow[x] = e
                    break
            if self.id_arrow[x] < 0:
                raise DomainError("InvalidGroupoid", f"object {x} has no identity arrow")
        self.inverse = np.full(m, -1, dtype=np.int64)
        for a in range(m):
            e = self.id_arrow[self.src[a]]
            for b in range(m):
                if self.comp[a, b] == e:
                    self.inverse[a] = b
                    break
            if self.inverse[a] < 0:
                raise DomainError("InvalidGroupoid", f"arrow {a} has no inverse")

    def __repr__(self):
        return f"FiniteGroupoid({self.name})"

    def mul(self, a: int, b: int) -> int:
        c = int(self.comp[a, b])
        if c < 0:
            raise DomainError("InvalidGroupoid", f"arrows {a} and {b} do not compose")
        return c

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def star(self, x: int) -> np.ndarray:
        """Arrows leaving x."""
        return np.nonzero(self.src == x)[0]

    def hom_set(self, x: int, y: int) -> np.ndarray:
        return np.nonzero((self.src == x) & (self.tgt == y))[0]

    def vertex_group(self, x: int) -> tuple[FiniteGroup, np.ndarray]:
        """The loop group at x, plus the arrow index of each element.

        Loops are re-indexed with the identity first, then by arrow
        index, so element 0 is the identity as FiniteGroup requires.
        """
        loops = [int(a) for a in self.hom_set(x, x)]
        e = int(self.id_arrow[x])
        loops = [e] + [a for a in loops if a != e]
        pos = {a: i for i, a in enumerate(loops)}
        k = len(loops)
        t = np.empty((k, k), dtype=np.int64)
        for i, a in enumerate(loops):
            for j, b in enumerate(loops):
                t[i, j] = pos[int(self.comp[a, b])]
        return FiniteGroup(t, f"{self.name}({x},{x})"), np.array(loops, dtype=np.int64)

    def components(self) -> np.ndarray:
        """Component label (smallest member object) for every object."""
        label = np.arange(self.nobj, dtype=np.int64)

        def find(x):
            while label[x] != x:
                label[x] = label[label[x]]
                x = label[x]
            return x

        for a in range(self.n_arrows):
            rx, ry = find(int(self.src[a])), find(int(self.tgt[a]))
            if rx != ry:
                label[max(rx, ry)] = min(rx, ry)
        return np.array([find(x) for x in range(self.nobj)], dtype=np.int64)

    def full_subgroupoid(self, objects) -> tuple["FiniteGroupoid", np.ndarray, np.ndarray]:
        """Restriction to a subset of objects.

        Returns the subgroupoid plus the object and arrow embeddings.
        """
        objs = sorted(int(x) for x in objects)
        opos = {x: i for i, x in enumerate(objs)}
        arrows = [a for a in range(self.n_arrows)
                  if int(self.src[a]) in opos and int(self.tgt[a]) in opos]
        apos = {a: i for i, a in enumerate(arrows)}
        m = len(arrows)
        comp = np.full((m, m), -1, dtype=np.int64)
        for i, a in enumerate(arrows):
            for j, b in enumerate(arrows):
                c = int(self.comp[a, b])
                if c >= 0:
                    comp[i, j] = apos[c]
        sub = FiniteGroupoid(
            len(objs),
            [opos[int(self.src[a])] for a in arrows],
            [opos[int(self.tgt[a])] for a in arrows],
            comp,
            name=f"{self.name}|{len(objs)}",
        )
        return sub, np.array(objs, dtype=np.int64), np.array(arrows, dtype=np.int64)


def from_group(G: FiniteGroup) -> FiniteGroupoid:
    """A group as a one-object groupoid; arrow indices are the elements."""
    return FiniteGroupoid(1, np.zeros(G.order, dtype=np.int64),
                          np.zeros(G.order, dtype=np.int64), G.table, name=G.name)


def indiscrete(nobj: int) -> FiniteGroupoid:
    """One arrow between every ordered pair of objects."""
    n = nobj
    src = np.repeat(np.arange(n), n)
    tgt = np.tile(np.arange(n), n)
    m = n * n
    comp = np.full((m, m), -1, dtype=np.int64)
    for a in range(m):
        for b in range(m):
            if tgt[a] == src[b]:
                comp[a, b] = src[a] * n + tgt[b]
    return FiniteGroupoid(n, src, tgt, comp, name=f"indiscrete{n}")


def disjoint_union(*gpds: FiniteGroupoid) -> FiniteGroupoid:
    nobj = sum(g.nobj for g in gpds)
    src, tgt = [], []
    ooff = 0
    blocks = []
    for g in gpds:
        src.extend((g.src + ooff).tolist())
        tgt.extend((g.tgt + ooff).tolist())
        blocks.append(g)
        ooff += g.nobj
    m = len(src)
    comp = np.full((m, m), -1, dtype=np.int64)
    aoff = 0
    for g in gpds:
        k = g.n_arrows
        block = g.comp.copy()
        mask = block >= 0
        block[mask] += aoff
        comp[aoff:aoff + k, aoff:aoff + k] = block
        aoff += k
    return FiniteGroupoid(nobj, src, tgt, comp,
                          name="+".join(g.name for g in gpds))
