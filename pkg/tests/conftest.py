"""Shared builders for the test suite.

Two constructions carry most of the integration tests:

  * ``product_with_disc`` multiplies a contractible two-level piece
    (a group A at levels n and n + 1 with the identity boundary) into a
    reduced base complex and returns the projection, which is a trivial
    fibration whatever the base;
  * ``random_base_morphism`` produces a valid morphism from a depth-3
    standard resolution into such a base, using cocycle representatives
    where the level demands them.

Both are deterministic functions of the seed they are handed.
"""

from __future__ import annotations

import sys

import numpy as np
import pytest

from xcc.complexes import (CrossedComplex, CrsMorphism, em_complex,
                           twisted_em, validate_complex, validate_morphism)
from xcc.groups import (FiniteGroup, GroupHom, enumerate_homs, make_group,
                        make_module, preset_group, small_groups,
                        trivial_module)
from xcc.homotopy import cohomology_group
from xcc.resolutions import ResMorphism, standard_resolution


# ---------------------------------------------------------------------------
# group inventories

def catalogue(max_order: int) -> list[tuple[str, FiniteGroup]]:
    """Every group of order up to the bound, with its name."""
    return small_groups(max_order)


def all_modules(G: FiniteGroup, A: FiniteGroup):
    """Every G-module structure on A, one per hom into the symmetries."""
    from xcc.groups import automorphism_group
    aut = automorphism_group(A)
    perms = np.asarray(aut.perms, dtype=np.int64)
    mods = []
    for hom in enumerate_homs(G, aut.aut):
        act = perms[hom.image]
        mods.append(make_module(A, G, act))
    return mods


# ---------------------------------------------------------------------------
# product-with-disc trivial fibrations

def _pair_group(B1: FiniteGroup, B2: FiniteGroup) -> FiniteGroup:
    n2 = B2.order
    size = B1.order * n2
    table = np.empty((size, size), dtype=np.int64)
    for a in range(size):
        for b in range(size):
            table[a, b] = B1.table[a // n2, b // n2] * n2 + \
                B2.table[a % n2, b % n2]
    return make_group(table, name=f"{B1.name}*{B2.name}")


def product_with_disc(B: CrossedComplex, A: FiniteGroup, n: int):
    """The projection (B x disc) -> B, a trivial fibration.

    The disc factor puts A at levels n and n + 1 with the identity
    boundary between them, trivial boundary below and trivial actions,
    so it changes no homotopy invariant of the base.  Requires a
    reduced base and abelian A; n >= 2.
    """
    assert n >= 2 and B.is_reduced and A.is_abelian
    triv = preset_group("trivial")
    dim_e = max(B.dim, n + 1)
    disc = {k: (A if k in (n, n + 1) else triv) for k in range(2, dim_e + 1)}
    groups, boundary, action, maps = {}, {}, {}, {}
    for k in range(2, dim_e + 1):
        bk, dk = B.group(k, 0), disc[k]
        groups[(k, 0)] = _pair_group(bk, dk)
        if k == 2:
            boundary[(k, 0)] = np.repeat(B.bmap(2, 0), dk.order)
        else:
            dl = disc[k - 1].order
            bnd = np.empty(bk.order * dk.order, dtype=np.int64)
            for b in range(bk.order):
                for d in range(dk.order):
                    down = d if k == n + 1 else 0
                    bnd[b * dk.order + d] = B.boundary_of(k, 0, b) * dl + down
            boundary[(k, 0)] = bnd
        for a in range(B.c1.n_arrows):
            base = B.act(k, a)
            perm = np.empty(bk.order * dk.order, dtype=np.int64)
            for b in range(bk.order):
                perm[b * dk.order:(b + 1) * dk.order] = \
                    base[b] * dk.order + np.arange(dk.order)
            action[(k, a)] = perm
        maps[(k, 0)] = np.repeat(np.arange(bk.order, dtype=np.int64),
                                 dk.order)
    E = CrossedComplex(B.c1, dim_e, groups, boundary, action,
                       name=f"{B.name}x(disc{n})")
    validate_complex(E)
    q = CrsMorphism(E, B, np.arange(B.nobj, dtype=np.int64),
                    np.arange(B.c1.n_arrows, dtype=np.int64), maps,
                    name=f"proj({E.name})")
    validate_morphism(q)
    return E, q


# ---------------------------------------------------------------------------
# random inputs for the lifting tests

_BASE_GROUPS = ("cyclic 2", "cyclic 3", "cyclic 4", "klein4", "symmetric 3")
_RES_GROUPS = ("cyclic 2", "cyclic 3", "klein4")
_DISC_GROUPS = ("cyclic 2", "cyclic 3", "cyclic 4")


def random_lifting_instance(seed: int):
    """A (morphism, trivial fibration) pair over a random reduced base.

    The base is an aspherical one-level complex or a two-level one with
    module coefficients; the source presentation has depth 3; the
    fibration is a product-with-disc projection.  Everything downstream
    of the seed is deterministic.
    """
    rng = np.random.default_rng(seed)
    H = preset_group(_BASE_GROUPS[int(rng.integers(len(_BASE_GROUPS)))])
    G = preset_group(_RES_GROUPS[int(rng.integers(len(_RES_GROUPS)))])
    A = preset_group(_DISC_GROUPS[int(rng.integers(len(_DISC_GROUPS)))])
    F = standard_resolution(G, 3)
    homs = enumerate_homs(G, H)
    theta = homs[int(rng.integers(len(homs)))]
    kind = int(rng.integers(3))

    if kind == 0:
        B = em_complex(H)
        images = {1: [int(a) for a in theta.image],
                  2: [0] * len(F.basis[2]), 3: [0] * len(F.basis[3])}
    else:
        mods = all_modules(H, preset_group(
            _DISC_GROUPS[int(rng.integers(len(_DISC_GROUPS)))]))
        mod = mods[int(rng.integers(len(mods)))]
        if kind == 1:
            B = twisted_em(mod, 2)
            pulled = make_module(mod.coeff, G, mod.act[theta.image])
            id_g = GroupHom(G, G, np.arange(G.order, dtype=np.int64))
            h2 = cohomology_group(F, id_g, pulled, 2)
            classes = h2.all_classes()
            rep = h2.representative(
                classes[int(rng.integers(len(classes)))])
            images = {1: [int(a) for a in theta.image], 2: rep,
                      3: [0] * len(F.basis[3])}
        else:
            B = twisted_em(mod, 3)
            vals = [int(rng.integers(mod.coeff.order))
                    for _ in F.basis[3]]
            images = {1: [int(a) for a in theta.image],
                      2: [0] * len(F.basis[2]), 3: vals}

    f = ResMorphism(F, B, images, name=f"instance{seed}")
    n_disc = 2 + int(rng.integers(2))
    E, q = product_with_disc(B, A, n_disc)
    return f, q


# ---------------------------------------------------------------------------
# morphism corpus for the lifting-property comparisons

def fibration_corpus(max_level_order: int = 8):
    """A mixed bag of morphisms between reduced complexes: identities,
    projections, classifying-space surjections, collapses, inclusions.

    Labels make failures readable; every entry keeps level orders at or
    under the bound.
    """
    from xcc.complexes import (aut_crossed_module, collapse_to_em,
                               identity_morphism, xi_zeta_split)
    from xcc.groups import automorphism_group, inversion_module

    corpus = []
    for name in ("cyclic 2", "cyclic 5", "symmetric 3", "quaternion8"):
        C = em_complex(preset_group(name))
        corpus.append((f"id K({name},1)", identity_morphism(C)))
    mod24 = inversion_module(preset_group("cyclic 4"), preset_group("cyclic 2"))
    tw2 = twisted_em(mod24, 2)
    tw3 = twisted_em(mod24, 3)
    corpus.append(("id twisted n=2", identity_morphism(tw2)))

    for B, label in ((em_complex(preset_group("cyclic 3")), "K(C3,1)"),
                     (tw2, "twisted n=2"), (tw3, "twisted n=3")):
        for A_name in ("cyclic 2", "cyclic 4"):
            for n in (2, 3):
                _, q = product_with_disc(B, preset_group(A_name), n)
                corpus.append((f"proj disc({A_name},{n}) over {label}", q))

    for gname, qname in (("cyclic 4", "cyclic 2"), ("symmetric 3", "cyclic 2"),
                         ("quaternion8", "klein4"), ("cyclic 6", "cyclic 3")):
        G = preset_group(gname)
        Q = preset_group(qname)
        for hom in enumerate_homs(G, Q):
            if len(set(hom.image.tolist())) == Q.order:
                E, Bc = em_complex(G), em_complex(Q)
                p = CrsMorphism(E, Bc, np.zeros(1, dtype=np.int64),
                                hom.image.copy(), {},
                                name=f"K({gname},1)->K({qname},1)")
                validate_morphism(p)
                corpus.append((p.name, p))
                break

    # collapses onto the classifying space of the bottom level
    corpus.append(("collapse twisted n=2", collapse_to_em(tw2)[1]))
    corpus.append(("collapse twisted n=3", collapse_to_em(tw3)[1]))

    # symmetry crossed modules and their aspherical covers
    for kname in ("cyclic 3", "klein4"):
        C = aut_crossed_module(automorphism_group(preset_group(kname)))
        sp = xi_zeta_split(C, 2)
        corpus.append((f"cover split q, symmetries of {kname}", sp.q))
        corpus.append((f"centre inclusion j, symmetries of {kname}", sp.j))

    # a non-surjective level-1 map: subgroup inclusion of classifying spaces
    C2, C4 = preset_group("cyclic 2"), preset_group("cyclic 4")
    incl = [h for h in enumerate_homs(C2, C4)
            if len(set(h.image.tolist())) == 2][0]
    p = CrsMorphism(em_complex(C2), em_complex(C4),
                    np.zeros(1, dtype=np.int64), incl.image.copy(), {},
                    name="K(C2,1)->K(C4,1) inclusion")
    validate_morphism(p)
    corpus.append((p.name, p))
    return corpus


# ---------------------------------------------------------------------------
# acceptance reporting

def criterion_report(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(line, file=sys.__stderr__, flush=True)
    assert ok, line


@pytest.fixture(scope="session")
def warm_kernels():
    """Compile the accelerated kernels once (both the flat scan and the
    backtracker) so timed assertions do not pay the one-off cost."""
    from xcc.oracle import bar_cocycle_cohomology
    C2 = preset_group("cyclic 2")
    C4 = preset_group("cyclic 4")
    bar_cocycle_cohomology(C2, C2, trivial_module(C2, C2).act, 2)
    bar_cocycle_cohomology(C2, C4, trivial_module(C2, C4).act, 3)
    return True
