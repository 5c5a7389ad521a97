"""Homotopies of resolution morphisms and twisted cohomology groups."""

import itertools

import numpy as np
import pytest
from conftest import all_modules

from xcc.complexes import twisted_em
from xcc.errors import DomainError
from xcc.groups import (GroupHom, enumerate_homs, inversion_module,
                        preset_group, trivial_module)
from xcc.homotopy import (class_arithmetic, coboundary_witness,
                          cohomology_group, derived_morphism,
                          enumerate_morphisms, homotopy_classes, induced_theta,
                          is_homotopic, negate)
from xcc.oracle import bar_cocycle_cohomology
from xcc.resolutions import cyclic_resolution, standard_resolution

C2 = preset_group("cyclic 2")
C3 = preset_group("cyclic 3")
C4 = preset_group("cyclic 4")


def ident(G):
    return GroupHom(G, G, np.arange(G.order))


# ---------------------------------------------------------------------------
# cohomology groups against textbook values

def test_known_cohomology_of_c2():
    # H^2 and H^3 of C2 with untwisted Z/2 coefficients are both Z/2
    F = standard_resolution(C2, depth=4)
    for n in (2, 3):
        g = cohomology_group(F, ident(C2), trivial_module(C2, C2), n)
        assert g.factors == [2]
        assert g.order == 2


def test_known_cohomology_of_cyclic_groups():
    # for cyclic C_m with untwisted Z/k coefficients every positive
    # degree gives Z/gcd(m, k)
    for m, k in [(2, 3), (3, 3), (4, 2), (3, 2), (4, 4)]:
        G = preset_group(f"cyclic {m}")
        A = preset_group(f"cyclic {k}")
        want = np.gcd(m, k)
        F = standard_resolution(G, depth=4)
        for n in (2, 3):
            g = cohomology_group(F, ident(G), trivial_module(A, G), n)
            assert g.order == want, (m, k, n)
            assert g.factors == ([] if want == 1 else [int(want)])


def test_inversion_action_kills_cohomology():
    # C2 inverting Z/3: invariants are trivial and the norm map is
    # zero, so both implemented degrees vanish
    F = standard_resolution(C2, depth=4)
    mod = inversion_module(C3, C2)
    for n in (2, 3):
        g = cohomology_group(F, ident(C2), mod, n)
        assert g.order == 1
        assert g.factors == []


def test_bar_oracle_agreement_spot_cases():
    cases = [(C2, C2), (C2, C3), (C3, C3), (C2, C4)]
    for G, A in cases:
        for mod in all_modules(G, A):
            F = standard_resolution(G, depth=4)
            for n in (2, 3):
                g = cohomology_group(F, ident(G), mod, n)
                rep = bar_cocycle_cohomology(A, G, mod.act, n)
                assert list(rep.verdict) == [int(f) for f in g.factors], \
                    (G.order, A.order, n)


def test_resolution_independence_spot_case():
    # the one-generator resolution of C4 and the full standard one must
    # agree on every module and both implemented degrees
    Fs = standard_resolution(C4, depth=4)
    Fc = cyclic_resolution(C4, depth=4)
    for A in (C2, C3, C4):
        for mod in all_modules(C4, A):
            for n in (2, 3):
                gs = cohomology_group(Fs, ident(C4), mod, n)
                gc = cohomology_group(Fc, ident(C4), mod, n)
                assert gs.factors == gc.factors, (A.order, n)


# ---------------------------------------------------------------------------
# classes, representatives, and arithmetic

def test_class_representative_round_trip():
    F = standard_resolution(C2, depth=4)
    for mod in (trivial_module(C2, C2), trivial_module(C4, C2),
                inversion_module(C4, C2)):
        for n in (2, 3):
            g = cohomology_group(F, ident(C2), mod, n)
            for cls in g.all_classes():
                vals = g.representative(cls)
                assert g.is_cocycle(vals)
                assert g.class_of(vals).coords == cls.coords


def test_class_arithmetic_group_laws():
    F = standard_resolution(C2, depth=4)
    g = cohomology_group(F, ident(C2), inversion_module(C4, C2), 2)
    assert g.order == 2
    classes = g.all_classes()
    for a in classes:
        assert class_arithmetic(a, negate(a)).is_zero
        assert (a + g.zero).coords == a.coords
        for b in classes:
            assert (a + b).coords == (b + a).coords

    other = cohomology_group(F, ident(C2), trivial_module(C2, C2), 2)
    with pytest.raises(DomainError) as e:
        class_arithmetic(g.all_classes()[0], other.zero)
    assert e.value.tag == "AmbientMismatch"


def test_cocycle_counting_is_consistent():
    # over all 16 assignments basis_2 -> Z/2: cocycles split into
    # |H^2| classes of equal size, and exactly the witnessed ones are
    # coboundaries
    F = standard_resolution(C2, depth=4)
    mod = trivial_module(C2, C2)
    g = cohomology_group(F, ident(C2), mod, 2)
    n2 = len(F.basis[2])
    cocycles, coboundaries = [], []
    for vals in itertools.product(range(2), repeat=n2):
        vals = list(vals)
        w = coboundary_witness(F, ident(C2), mod, 2, vals)
        if w is not None:
            coboundaries.append(vals)
            assert g.is_cocycle(vals)
            assert g.class_of(vals).is_zero
        if g.is_cocycle(vals):
            cocycles.append(vals)
    assert len(cocycles) == g.order * len(coboundaries)
    seen = {g.class_of(v).coords for v in cocycles}
    assert len(seen) == g.order


def test_witness_exists_exactly_for_zero_classes():
    F = standard_resolution(C3, depth=4)
    mod = trivial_module(C3, C3)
    for n in (2, 3):
        g = cohomology_group(F, ident(C3), mod, n)
        assert g.order == 3
        for cls in g.all_classes():
            vals = g.representative(cls)
            w = coboundary_witness(F, ident(C3), mod, n, vals)
            assert (w is None) == (not cls.is_zero)
            assert len(w or []) in (0, len(F.basis[n - 1]))


def test_non_cocycle_is_rejected():
    F = standard_resolution(C2, depth=4)
    mod = trivial_module(C2, C2)
    g = cohomology_group(F, ident(C2), mod, 2)
    bad = next(list(v) for v in itertools.product(range(2),
                                                  repeat=len(F.basis[2]))
               if not g.is_cocycle(list(v)))
    with pytest.raises(DomainError) as e:
        g.class_of(bad)
    assert e.value.tag == "NotACocycle"


def test_cohomology_group_guards():
    F = standard_resolution(C2, depth=2)
    mod = trivial_module(C2, C2)
    with pytest.raises(DomainError) as e:
        cohomology_group(F, ident(C2), mod, 2)
    assert e.value.tag == "DepthTooShallow"
    F4 = standard_resolution(C2, depth=4)
    with pytest.raises(DomainError) as e:
        cohomology_group(F4, ident(C2), mod, 4)
    assert e.value.tag == "BadDimension"
    with pytest.raises(DomainError) as e:
        cohomology_group(F4, ident(C3), mod, 2)
    assert e.value.tag == "IncompatibleTheta"


def test_to_json_shape():
    F = standard_resolution(C2, depth=4)
    g = cohomology_group(F, ident(C2), trivial_module(C2, C2), 2)
    doc = g.to_json()
    assert doc["invariant_factors"] == [2]
    assert doc["order"] == 2
    assert len(doc["representatives"]) == 2
    for rep in doc["representatives"]:
        assert g.is_cocycle(rep)


# ---------------------------------------------------------------------------
# morphism enumeration and homotopy

def test_morphism_count_matches_cocycle_count():
    # maps into a coefficient target with fixed theta are exactly the
    # twisted cocycles, so the counts must line up
    F = standard_resolution(C2, depth=4)
    mod = trivial_module(C2, C2)
    C = twisted_em(mod, 2)
    ms = enumerate_morphisms(F, C, ident(C2))
    g = cohomology_group(F, ident(C2), mod, 2)
    n2 = len(F.basis[2])
    n_cocycles = sum(1 for vals in itertools.product(range(2), repeat=n2)
                     if g.is_cocycle(list(vals)))
    assert len(ms) == n_cocycles
    for m in ms:
        _, th = induced_theta(m)
        assert list(th) == [0, 1]


def test_homotopy_classes_count_cohomology():
    # per induced theta the homotopy classes are a torsor under the
    # twisted cohomology; with untwisted Z/2 coefficients both thetas
    # contribute |H^2| = 2
    F = standard_resolution(C2, depth=4)
    mod = trivial_module(C2, C2)
    C = twisted_em(mod, 2)
    classes = homotopy_classes(F, C)
    assert len(classes) == 4
    by_theta = {}
    for members in classes:
        _, th = induced_theta(members[0])
        by_theta.setdefault(th, 0)
        by_theta[th] += 1
    assert sorted(by_theta.values()) == [2, 2]


def test_is_homotopic_respects_classes():
    F = standard_resolution(C2, depth=4)
    mod = trivial_module(C2, C2)
    C = twisted_em(mod, 2)
    classes = homotopy_classes(F, C, ident(C2))
    assert len(classes) == 2
    a, b = classes[0][0], classes[1][0]
    assert is_homotopic(a, b) is None
    w = is_homotopic(a, classes[0][-1])
    assert w is not None
    assert w.base is a


def test_derived_morphism_is_homotopic_to_base():
    F = standard_resolution(C3, depth=4)
    mod = trivial_module(C3, C3)
    C = twisted_em(mod, 2)
    base = enumerate_morphisms(F, C, ident(C3))[0]
    rng = np.random.default_rng(7)
    for _ in range(5):
        H = {1: rng.integers(0, C.group(2, 0).order, size=len(F.basis[1]))}
        moved = derived_morphism(base, H)
        w = is_homotopic(base, moved)
        assert w is not None
        got = {n: [int(v) for v in vals] for n, vals in w.derived.images.items()}
        want = {n: [int(v) for v in vals] for n, vals in moved.images.items()}
        assert got == want


def test_is_homotopic_guards():
    F = standard_resolution(C2, depth=4)
    mod = trivial_module(C2, C2)
    C = twisted_em(mod, 2)
    Cother = twisted_em(mod, 3)
    ms = enumerate_morphisms(F, C)
    thetas = {}
    for m in ms:
        _, th = induced_theta(m)
        thetas.setdefault(th, m)
    (t1, m1), (t2, m2) = sorted(thetas.items())[:2]
    with pytest.raises(DomainError) as e:
        is_homotopic(m1, m2)
    assert e.value.tag == "IncompatibleTheta"
    mo = enumerate_morphisms(F, Cother)[0]
    with pytest.raises(DomainError) as e:
        is_homotopic(m1, mo)
    assert e.value.tag == "AmbientMismatch"
