"""Crossed complexes: axioms, invariants, fibrations, the cover splitting."""

import numpy as np
import pytest
from conftest import product_with_disc

from xcc.complexes import (aut_crossed_module, collapse_to_em, em_complex,
                           fibre_subcomplex, homology, identity_morphism,
                           is_aspherical, is_fibration, is_trivial_fibration,
                           is_weak_equivalence, pi0, pi1, rlp_check,
                           twisted_em, validate_complex, xi_zeta_split)
from xcc.errors import DomainError
from xcc.groups import (automorphism_group, identify, inversion_module,
                        preset_group, trivial_module)

C2 = preset_group("cyclic 2")
C3 = preset_group("cyclic 3")
C4 = preset_group("cyclic 4")
S3 = preset_group("symmetric 3")
Q8 = preset_group("quaternion8")
MOD42 = inversion_module(C4, C2)


# ---------------------------------------------------------------------------
# structural validation

def test_em_complex_invariants():
    C = em_complex(S3)
    validate_complex(C)
    assert C.dim == 1 and C.is_reduced
    assert identify(pi1(C).group) == "S3"
    assert pi0(C).tolist() == [0]
    assert is_aspherical(C)


def test_twisted_em_invariants():
    for n in (2, 3, 4):
        C = twisted_em(MOD42, n)
        validate_complex(C)
        assert pi1(C).group.order == 2
        for k in range(2, n):
            assert homology(C, k).group.order == 1
        assert identify(homology(C, n).group) == "C4"


def test_accessors_above_the_dimension_are_trivial():
    C = twisted_em(MOD42, 2)
    assert C.group(5, 0).order == 1
    assert C.boundary_of(7, 0, 0) == 0
    assert homology(C, 9).group.order == 1


def test_aut_crossed_module_satisfies_the_axioms():
    # boundary equivariance and the Peiffer rule are part of validation
    for g in (C3, preset_group("klein4"), S3, preset_group("dihedral 4"), Q8):
        C = aut_crossed_module(automorphism_group(g))
        validate_complex(C)
        assert C.dim == 2


def test_aut_crossed_module_shape():
    aut = automorphism_group(C3)
    C = aut_crossed_module(aut)
    # one object, arrows the symmetries, level 2 the group itself
    assert C.c1.n_arrows == aut.aut.order == 2
    assert C.group(2, 0).order == 3
    # boundary sends an element to conjugation by it: trivial for abelian
    assert C.bmap(2, 0).tolist() == [0, 0, 0]


# ---------------------------------------------------------------------------
# homotopy invariants

def test_pi1_quotients_by_boundaries():
    C = twisted_em(trivial_module(C4, C2), 2)
    # boundary is trivial, so pi1 stays the actor group
    assert pi1(C).group.order == 2
    D = aut_crossed_module(automorphism_group(S3))
    # all symmetries of S3 are conjugations, so pi1 collapses
    assert pi1(D).group.order == 1


def test_homology_of_aut_complex_is_the_centre():
    for g, z in ((S3, 1), (preset_group("dihedral 4"), 2), (Q8, 2)):
        C = aut_crossed_module(automorphism_group(g))
        assert homology(C, 2).group.order == z


# ---------------------------------------------------------------------------
# fibrations

def test_identity_is_a_trivial_fibration():
    p = identity_morphism(em_complex(S3))
    assert is_fibration(p).ok
    assert is_weak_equivalence(p).ok
    assert is_trivial_fibration(p).ok
    assert all(rlp_check(p, m).ok for m in range(5))


def test_projection_with_disc_factor(subtests=None):
    B = twisted_em(MOD42, 2)
    E, q = product_with_disc(B, C3, 3)
    assert is_trivial_fibration(q).ok
    # and the fibre over the basepoint is the contractible disc piece
    F, objs, arrows, _ = fibre_subcomplex(q, 0)
    assert len(objs) == 1 and len(arrows) == 1
    assert is_aspherical(F)


def test_surjection_is_a_fibration_but_not_trivial():
    from xcc.groups import enumerate_homs
    from xcc.complexes import CrsMorphism, validate_morphism
    hom = [h for h in enumerate_homs(C4, C2)
           if len(set(h.image.tolist())) == 2][0]
    p = CrsMorphism(em_complex(C4), em_complex(C2),
                    np.zeros(1, dtype=np.int64), hom.image.copy(), {})
    validate_morphism(p)
    assert is_fibration(p).ok
    rep = is_trivial_fibration(p)
    assert not rep.ok and rep.reason


def test_non_star_surjective_map_is_not_a_fibration():
    from xcc.groups import enumerate_homs
    from xcc.complexes import CrsMorphism, validate_morphism
    incl = [h for h in enumerate_homs(C2, C4)
            if len(set(h.image.tolist())) == 2][0]
    p = CrsMorphism(em_complex(C2), em_complex(C4),
                    np.zeros(1, dtype=np.int64), incl.image.copy(), {})
    validate_morphism(p)
    rep = is_fibration(p)
    assert not rep.ok


def test_rlp_failure_level_pins_the_missing_filler():
    # collapsing the coefficient level leaves a 2-cycle with no filler,
    # so the lifting property fails exactly from level 3 on
    C = twisted_em(MOD42, 2)
    _, collapse, _ = collapse_to_em(C)
    assert rlp_check(collapse, 0).ok
    assert rlp_check(collapse, 1).ok
    assert rlp_check(collapse, 2).ok
    assert not rlp_check(collapse, 3).ok


# ---------------------------------------------------------------------------
# the aspherical cover splitting

def test_xi_zeta_split_shapes():
    C = aut_crossed_module(automorphism_group(C3))
    sp = xi_zeta_split(C, 2)
    validate_complex(sp.xi)
    validate_complex(sp.zeta)
    # the cover carries the centre one level up with an injective boundary
    assert sp.xi.dim == 3
    assert sp.xi.group(3, 0).order == 3
    assert is_aspherical(sp.xi)
    # the collapsed complex keeps the centre at the top
    assert identify(sp.module.coeff) == "C3"
    assert is_fibration(sp.q).ok
    assert not is_weak_equivalence(sp.q).ok


def test_xi_zeta_split_nonabelian_kernel():
    C = aut_crossed_module(automorphism_group(Q8))
    sp = xi_zeta_split(C, 2)
    assert sp.xi.group(3, 0).order == 2          # centre of the quaternions
    assert is_aspherical(sp.xi)
    assert sp.pi1.group.order == 6               # outer symmetry group S3


def test_split_needs_a_reduced_complex():
    src = np.array([0, 1])
    tgt = np.array([0, 1])
    comp = np.array([[0, -1], [-1, 1]])
    from xcc.groupoids import FiniteGroupoid
    from xcc.complexes import CrossedComplex
    g = FiniteGroupoid(2, src, tgt, comp)
    C = CrossedComplex(g, 1, {}, {}, {})
    with pytest.raises(DomainError):
        xi_zeta_split(C, 2)
