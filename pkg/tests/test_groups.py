"""Group layer: constructors, presets, homs, symmetries, modules."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xcc.errors import DomainError
from xcc.groups import (GroupHom, automorphism_group, center, direct_product,
                        enumerate_homs, group_fingerprint, identify,
                        inversion_module, make_group, make_module,
                        preset_group, quotient_group, small_groups,
                        subgroup_group, trivial_module)

C2 = preset_group("cyclic 2")
C3 = preset_group("cyclic 3")
C4 = preset_group("cyclic 4")
K4 = preset_group("klein4")
S3 = preset_group("symmetric 3")
D4 = preset_group("dihedral 4")
Q8 = preset_group("quaternion8")


# ---------------------------------------------------------------------------
# construction and presets

def test_preset_orders_and_commutativity():
    # textbook sizes and abelianness
    assert (C2.order, C3.order, C4.order, K4.order) == (2, 3, 4, 4)
    assert (S3.order, D4.order, Q8.order) == (6, 8, 8)
    assert C4.is_abelian and K4.is_abelian
    assert not (S3.is_abelian or D4.is_abelian or Q8.is_abelian)


def test_identity_sits_at_zero():
    for g in (C2, C4, S3, D4, Q8):
        assert np.array_equal(g.table[0], np.arange(g.order))
        assert np.array_equal(g.table[:, 0], np.arange(g.order))


def test_make_group_rejects_bad_tables():
    with pytest.raises(DomainError):
        make_group([[0, 1], [1, 1]])           # not a latin square
    with pytest.raises(DomainError):
        make_group([[1, 0], [0, 1]])           # no identity at index 0
    t = np.array([[0, 1, 2], [1, 2, 0], [2, 1, 0]])
    with pytest.raises(DomainError):
        make_group(t)                          # latin but not associative


def test_inverse_and_power():
    for g in (C4, S3, Q8):
        for a in range(g.order):
            assert g.mul(a, g.inv(a)) == 0
            assert g.power(a, g.order) == g.power(a, 0) == 0
    # a cube in C3 collapses, a square does not
    assert C3.power(1, 3) == 0 and C3.power(1, 2) != 0


def test_conjugation_is_a_right_action():
    # conj(a, x) = x^-1 a x, so conj by xy equals conj by x then by y
    for g in (S3, D4):
        for a in range(g.order):
            for x in range(g.order):
                for y in range(g.order):
                    assert g.conj(g.conj(a, x), y) == g.conj(a, g.mul(x, y))


def test_element_orders_statistics():
    # Q8 has one involution and six elements of order 4
    orders = sorted(Q8.element_orders().tolist())
    assert orders == [1, 2, 4, 4, 4, 4, 4, 4]
    assert sorted(S3.element_orders().tolist()) == [1, 2, 2, 2, 3, 3]


def test_relabel_round_trip():
    perm = np.array([0, 2, 1, 4, 3, 5], dtype=np.int64)
    h = S3.relabel(perm)
    assert identify(h) == "S3"
    with pytest.raises(DomainError):
        S3.relabel(np.array([1, 0, 2, 3, 4, 5], dtype=np.int64))


def test_centre_and_derived_subgroups():
    assert len(S3.center_elements()) == 1
    assert len(D4.center_elements()) == 2
    assert len(Q8.center_elements()) == 2
    # derived subgroup of S3 is the rotation subgroup, of Q8 its centre
    assert len(S3.derived_elements()) == 3
    assert len(Q8.derived_elements()) == 2


def test_subgroup_quotient_and_centre_helpers():
    Z, embed = center(D4)
    assert Z.order == 2 and embed[0] == 0
    Qg, proj = quotient_group(D4, D4.center_elements())
    assert identify(Qg) == "C2xC2"           # D4 over its centre is klein
    hom = GroupHom(D4, Qg, proj)
    hom.validate()
    rot, _ = subgroup_group(S3, S3.derived_elements())
    assert identify(rot) == "C3"
    with pytest.raises(DomainError):
        quotient_group(S3, [0, 1])           # not closed, not normal


def test_direct_product():
    P = direct_product(C2, C3)
    assert P.order == 6 and P.is_abelian
    assert identify(P) == "C6"


# ---------------------------------------------------------------------------
# homomorphisms

def test_hom_validation():
    GroupHom(C4, C2, np.array([0, 1, 0, 1])).validate()
    with pytest.raises(DomainError):
        GroupHom(C4, C2, np.array([0, 1, 1, 0])).validate()


def test_hom_counts_on_known_pairs():
    # counts fixed by elementary counting of generator images
    assert len(enumerate_homs(C2, C2)) == 2
    assert len(enumerate_homs(C4, C2)) == 2
    assert len(enumerate_homs(C2, C4)) == 2
    assert len(enumerate_homs(S3, C2)) == 2
    assert len(enumerate_homs(K4, C2)) == 4
    assert len(enumerate_homs(C3, C3)) == 3
    assert len(enumerate_homs(C3, C2)) == 1


def test_hom_enumeration_is_sorted_and_valid():
    homs = enumerate_homs(K4, K4)
    images = [h.image.tolist() for h in homs]
    assert images == sorted(images)
    for h in homs:
        h.validate()


def test_hom_composition_and_kernel():
    p = [h for h in enumerate_homs(C4, C2)
         if len(set(h.image.tolist())) == 2][0]
    q = [h for h in enumerate_homs(C2, C2)
         if len(set(h.image.tolist())) == 2][0]
    comp = p.then(q)
    comp.validate()
    assert sorted(p.kernel_elements()) == [0, 2]
    assert sorted(comp.image_elements()) == [0, 1]


# ---------------------------------------------------------------------------
# automorphisms

def test_automorphism_group_orders():
    # classical symmetry group sizes
    for g, n in ((C3, 2), (C4, 2), (K4, 6), (S3, 6), (D4, 8), (Q8, 24)):
        assert automorphism_group(g).aut.order == n


def test_automorphism_conventions():
    aut = automorphism_group(S3)
    # identity automorphism at index 0
    assert tuple(aut.perms[0]) == tuple(range(6))
    # evaluation is a right action: applying a then b composes the perms
    for a in range(aut.aut.order):
        for b in range(aut.aut.order):
            ab = aut.aut.mul(a, b)
            for k in range(6):
                assert aut.apply(ab, k) == aut.apply(b, aut.apply(a, k))
    aut.chi.validate()
    aut.proj.validate()
    # S3 is complete: all automorphisms inner, outer group trivial
    assert len(aut.inn) == 6 and aut.out.order == 1


def test_outer_group_of_quaternions():
    aut = automorphism_group(Q8)
    assert identify(aut.out) == "S3"
    assert len(aut.inn) == 4


# ---------------------------------------------------------------------------
# modules

def test_trivial_and_inversion_modules():
    trivial_module(C4, S3).validate()
    mod = inversion_module(C4, C2)
    mod.validate()
    assert mod.act[1].tolist() == [0, 3, 2, 1]
    with pytest.raises(DomainError):
        inversion_module(C4, C3)             # inversion has order 2, C3 has none


def test_module_rejects_non_action():
    act = np.array([[0, 1, 2, 3], [1, 0, 3, 2]])   # not by automorphisms
    with pytest.raises(DomainError):
        make_module(C4, C2, act)


# ---------------------------------------------------------------------------
# identification

def test_identify_presets():
    for name, g in small_groups(8):
        assert identify(g) == name
    assert identify(make_group(preset_group("dihedral 3").table)) == "S3"


def test_small_groups_census():
    # 14 isomorphism classes of order at most 8
    names = [n for n, _ in small_groups(8)]
    assert len(names) == 14 and len(set(names)) == 14
    with pytest.raises(DomainError):
        small_groups(12)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9))
def test_fingerprint_is_relabel_invariant(seed):
    rng = np.random.default_rng(seed)
    g = (S3, D4, Q8, C4, K4)[int(rng.integers(5))]
    perm = np.concatenate([[0], 1 + rng.permutation(g.order - 1)])
    assert group_fingerprint(g.relabel(perm)) == group_fingerprint(g)
    assert identify(g.relabel(perm)) == identify(g)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9))
def test_product_inverse_rule(seed):
    rng = np.random.default_rng(seed)
    g = (S3, D4, Q8)[int(rng.integers(3))]
    a, b = int(rng.integers(g.order)), int(rng.integers(g.order))
    assert g.inv(g.mul(a, b)) == g.mul(g.inv(b), g.inv(a))
