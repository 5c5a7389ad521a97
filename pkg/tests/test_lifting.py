"""Lifting through trivial fibrations, and the lifting-property checks."""

import numpy as np
import pytest
from conftest import (fibration_corpus, product_with_disc,
                      random_lifting_instance)

from xcc.complexes import (em_complex, is_trivial_fibration, rlp_check,
                           twisted_em)
from xcc.errors import DomainError
from xcc.groups import inversion_module, preset_group
from xcc.resolutions import (ResMorphism, lift_through_trivial_fibration,
                             standard_resolution, then_morphism,
                             validate_res_morphism)

C2 = preset_group("cyclic 2")
C3 = preset_group("cyclic 3")
C4 = preset_group("cyclic 4")


def test_lift_round_trip_on_a_fixed_instance():
    B = em_complex(C3)
    E, q = product_with_disc(B, C4, 2)
    F = standard_resolution(C3, 3)
    f = ResMorphism(F, B, {1: [0, 1, 2], 2: [0] * 9, 3: [0] * 27})
    validate_res_morphism(f)
    lifted = lift_through_trivial_fibration(f, q)
    validate_res_morphism(lifted)
    back = then_morphism(lifted, q)
    assert all(back.images[n] == f.images[n] for n in (1, 2, 3))


def test_lift_rejects_non_trivial_fibrations():
    from conftest import fibration_corpus
    from xcc.complexes import CrsMorphism, validate_morphism
    from xcc.groups import enumerate_homs
    hom = [h for h in enumerate_homs(C4, C2)
           if len(set(h.image.tolist())) == 2][0]
    p = CrsMorphism(em_complex(C4), em_complex(C2),
                    np.zeros(1, dtype=np.int64), hom.image.copy(), {})
    validate_morphism(p)
    F = standard_resolution(C2, 3)
    f = ResMorphism(F, p.cod, {1: [0, 1], 2: [0] * 4, 3: [0] * 8})
    with pytest.raises(DomainError) as err:
        lift_through_trivial_fibration(f, p)
    assert err.value.tag == "NotTrivialFibration"


def test_lift_requires_matching_base():
    B = em_complex(C3)
    _, q = product_with_disc(B, C4, 2)
    F = standard_resolution(C2, 3)
    other = em_complex(C2)
    f = ResMorphism(F, other, {1: [0, 1], 2: [0] * 4, 3: [0] * 8})
    with pytest.raises(DomainError):
        lift_through_trivial_fibration(f, q)


def test_lift_fills_nontrivial_coefficient_assignments():
    # base with coefficient content: the lift must reproduce cocycle
    # values through the disc factor, not just zeros
    mod = inversion_module(C4, C2)
    B = twisted_em(mod, 2)
    E, q = product_with_disc(B, C3, 2)
    F = standard_resolution(C2, 3)
    from xcc.groups import GroupHom
    from xcc.homotopy import cohomology_group
    theta = GroupHom(C2, C2, np.arange(2, dtype=np.int64))
    h2 = cohomology_group(F, theta, mod, 2)
    cls = [c for c in h2.all_classes() if not c.is_zero][0]
    rep = h2.representative(cls)
    f = ResMorphism(F, B, {1: [0, 1], 2: rep, 3: [0] * 8})
    validate_res_morphism(f)
    lifted = lift_through_trivial_fibration(f, q)
    back = then_morphism(lifted, q)
    assert back.images[2] == rep


def test_hundred_seeded_instances_lift_cleanly():
    failures = []
    for seed in range(100):
        f, q = random_lifting_instance(seed)
        try:
            lifted = lift_through_trivial_fibration(f, q)
            validate_res_morphism(lifted)
            back = then_morphism(lifted, q)
            if any(back.images[n] != f.images[n] for n in (1, 2, 3)):
                failures.append((seed, "composite differs"))
        except DomainError as e:
            failures.append((seed, e.tag))
    assert not failures, failures


def test_lifting_property_matches_the_trivial_fibration_predicate():
    disagreements = []
    for label, p in fibration_corpus():
        top = max(p.dom.dim, p.cod.dim) + 2
        rlp_all = all(rlp_check(p, m).ok for m in range(top + 1))
        if rlp_all != is_trivial_fibration(p).ok:
            disagreements.append(label)
    assert not disagreements, disagreements
