from fractions import Fraction

import pytest

from qorbital.cyclotomic import Cyclo
from qorbital.errors import LayoutError
from qorbital.kac_paljutkin import (REP_IDS, kp_catalog, kp_d4_obstruction, kp_hopf, kp_orbitals,
                                    kp_projection, kp_variants, omega)
from qorbital.magic import equivalent, is_transitive_magic_rep, permute_conjugate, verify_magic


def test_projection():
    p = kp_projection()
    assert p * p == p
    assert kp_projection(True) * kp_projection(True) == kp_projection(True)


def test_hopf_axioms():
    assert kp_hopf().check() == []


@pytest.mark.parametrize("name", REP_IDS)
def test_catalog_transitive(name):
    u = kp_catalog()[name]
    assert verify_magic(u) == []
    ok, why = is_transitive_magic_rep(u, kp_hopf())
    assert ok, why


def test_haar_of_x():
    x = kp_catalog()["x"]
    assert kp_hopf().haar(x.entries[0][0]) == Cyclo(Fraction(1, 2))


@pytest.mark.parametrize("variant,base,witness", [("u0_i3", "u0", (2, 3, 0, 1)), ("w_E22", "w", (0, 1, 3, 2))])
def test_variant_witnesses(variant, base, witness):
    v, u = kp_variants()[variant], kp_catalog()[base]
    assert permute_conjugate(u, witness) == v or permute_conjugate(v, witness) == u
    assert equivalent(u, v) is not None


def test_omega_group():
    elems = {omega(*b) for b in [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]}
    assert len(elems) == 8


def test_d4_obstruction():
    rep = kp_d4_obstruction(["u0"])
    assert rep["group_order"] == 8 and not rep["abelian"]
    assert rep["classical_version"].order == 4
    assert rep["obstructed"]
    with pytest.raises(LayoutError):
        kp_d4_obstruction(["w", "x"])


def test_full_layout_orbitals():
    orb, rep = kp_orbitals(["u0", "w", "x", "y", "z", "one"])
    assert rep["classes"] == 54
    assert rep["type_counts"]["VwaVwa"] == [3]
    assert rep["type_counts"]["V0Vw"] == [2]
