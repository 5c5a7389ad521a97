"""Fibration sequences: terms, induced maps, exactness verdicts."""

import numpy as np
import pytest

from xcc.complexes import (CrsMorphism, aut_crossed_module, em_complex,
                           identity_morphism, twisted_em, validate_morphism,
                           xi_zeta_split)
from xcc.errors import DomainError
from xcc.exactseq import exact_sequence
from xcc.groups import (automorphism_group, enumerate_homs, inversion_module,
                        preset_group)

C2 = preset_group("cyclic 2")
C3 = preset_group("cyclic 3")
C4 = preset_group("cyclic 4")
S3 = preset_group("symmetric 3")


def surjection_morphism(G, Q):
    hom = [h for h in enumerate_homs(G, Q)
           if len(set(h.image.tolist())) == Q.order][0]
    p = CrsMorphism(em_complex(G), em_complex(Q),
                    np.zeros(1, dtype=np.int64), hom.image.copy(), {},
                    name=f"K({G.name},1)->K({Q.name},1)")
    validate_morphism(p)
    return p


def test_identity_sequence_is_exact():
    rep = exact_sequence(identity_morphism(em_complex(S3)))
    assert rep.ok and not rep.failures
    labels = [t.label for t in rep.terms]
    assert labels[:3] == ["pi1(fibre)", "pi1(total)", "pi1(base)"]


def test_classifying_space_surjection():
    rep = exact_sequence(surjection_morphism(C4, C2))
    assert rep.ok
    sizes = {t.label: t.size for t in rep.terms}
    # fibre carries the kernel C2, base pi1 is C2, components are points
    assert sizes["pi1(fibre)"] == 2
    assert sizes["pi1(total)"] == 4
    assert sizes["pi1(base)"] == 2
    assert sizes["pi0(fibre)"] == 1


def test_nonabelian_quotient_sequence():
    rep = exact_sequence(surjection_morphism(S3, C2))
    assert rep.ok
    sizes = {t.label: t.size for t in rep.terms}
    assert sizes["pi1(fibre)"] == 3


def test_higher_terms_from_coefficient_level():
    mod = inversion_module(C4, C2)
    C = twisted_em(mod, 2)
    p = identity_morphism(C)
    rep = exact_sequence(p)
    assert rep.ok
    labels = [t.label for t in rep.terms]
    assert "H2(fibre)" in labels or any("2" in s for s in labels)


def test_cover_collapse_sequence_of_symmetry_complex():
    # the aspherical cover maps onto the collapsed complex; its fibre
    # carries the centre one level up
    C = aut_crossed_module(automorphism_group(C3))
    sp = xi_zeta_split(C, 2)
    rep = exact_sequence(sp.q)
    assert rep.ok
    sizes = {t.label: t.size for t in rep.terms}
    assert sizes["pi1(total)"] == sizes["pi1(base)"]


def test_non_fibration_is_rejected():
    hom = [h for h in enumerate_homs(C2, C4)
           if len(set(h.image.tolist())) == 2][0]
    p = CrsMorphism(em_complex(C2), em_complex(C4),
                    np.zeros(1, dtype=np.int64), hom.image.copy(), {})
    validate_morphism(p)
    with pytest.raises(DomainError) as err:
        exact_sequence(p)
    assert err.value.tag == "NotAFibration"
