"""Free crossed resolutions: shapes, boundary composites, morphisms."""

import numpy as np
import pytest
from conftest import catalogue

from xcc.complexes import em_complex, twisted_em
from xcc.errors import DomainError
from xcc.formal import FormalWord
from xcc.groups import enumerate_homs, inversion_module, preset_group
from xcc.resolutions import (ResMorphism, cyclic_resolution, disc_sphere,
                             standard_resolution, then_morphism,
                             validate_presentation, validate_res_morphism)

C2 = preset_group("cyclic 2")
C3 = preset_group("cyclic 3")
C6 = preset_group("cyclic 6")
S3 = preset_group("symmetric 3")


# ---------------------------------------------------------------------------
# resolution construction

def test_standard_resolution_shapes():
    F = standard_resolution(S3, 4)
    assert [len(F.basis[n]) for n in (1, 2, 3, 4)] == [6, 36, 216, 1296]
    assert F.symbol_image == list(range(6))


def test_cyclic_resolution_shapes():
    F = cyclic_resolution(C6, 4)
    assert [len(F.basis[n]) for n in (1, 2, 3, 4)] == [1, 1, 1, 1]
    # the single level-2 boundary is the order-collapsing power word
    assert F.d2[0] == FormalWord.gen(0) ** 6


def test_cyclic_resolution_needs_a_cyclic_group():
    with pytest.raises(DomainError):
        cyclic_resolution(S3, 3)


def test_boundary_composites_vanish_everywhere():
    # the composite of consecutive boundaries dies: in the free group
    # for levels (3, 2) and in the abelianisation for (4, 3)
    for _, g in catalogue(8):
        validate_presentation(standard_resolution(g, 4))
    for m in (2, 3, 4, 5, 6):
        validate_presentation(cyclic_resolution(preset_group(f"cyclic {m}"), 4))


def test_level2_words_spell_the_multiplication_table():
    F = standard_resolution(C3, 2)
    for i, (a, b) in enumerate(F.basis[2]):
        assert F.word_image(F.d2[i]) == 0     # relator words collapse


def test_depth_bounds():
    with pytest.raises(DomainError):
        standard_resolution(C2, 5)
    with pytest.raises(DomainError):
        standard_resolution(C2, 1)


# ---------------------------------------------------------------------------
# model cells

def test_disc_sphere_inventory():
    disc, sphere, incl = disc_sphere(2)
    assert disc.dim == 2 and sphere.dim == 1
    assert set(sphere.cells.get(1, ())) == {"s"}
    assert "c" in disc.cells[2]
    with pytest.raises(DomainError):
        disc_sphere(9)


# ---------------------------------------------------------------------------
# morphisms out of a presentation

def test_res_morphism_validation_and_errors():
    F = standard_resolution(C2, 3)
    B = em_complex(C2)
    good = ResMorphism(F, B, {1: [0, 1], 2: [0] * 4, 3: [0] * 8})
    validate_res_morphism(good)
    with pytest.raises(DomainError) as err:
        ResMorphism(F, B, {1: [0, 1]}).image(2, 0)
    assert err.value.tag == "MissingBasisValue"
    # a level-1 image that breaks the relator boundary is rejected
    bad = ResMorphism(F, B, {1: [0, 0], 2: [0] * 4, 3: [0] * 8})
    validate_res_morphism(bad)    # constant map is a fine morphism
    B3 = em_complex(C3)
    with pytest.raises(DomainError):
        # symbol of order 2 sent to an element of order 3: the relator
        # word no longer collapses, so some boundary check fails
        validate_res_morphism(
            ResMorphism(F, B3, {1: [0, 1], 2: [0] * 4, 3: [0] * 8}))


def test_then_morphism_composes_images():
    F = standard_resolution(C2, 3)
    mod = inversion_module(preset_group("cyclic 4"), C2)
    E = twisted_em(mod, 2)
    f = ResMorphism(F, E, {1: [0, 1], 2: [0] * 4, 3: [0] * 8})
    validate_res_morphism(f)
    from xcc.complexes import collapse_to_em
    _, collapse, _ = collapse_to_em(E)
    g = then_morphism(f, collapse)
    validate_res_morphism(g)
    assert g.images[1] == [0, 1]
    with pytest.raises(DomainError):
        then_morphism(g, collapse)           # endpoints no longer match


def test_eval_boundary_matches_direct_evaluation():
    F = standard_resolution(C3, 3)
    B = em_complex(C3)
    hom = enumerate_homs(C3, C3)[1]
    f = ResMorphism(F, B, {1: [int(a) for a in hom.image],
                           2: [0] * 9, 3: [0] * 27})
    validate_res_morphism(f)
    for i, w in enumerate(F.d2):
        assert f.eval_boundary(2, i) == f.eval_word(w)
