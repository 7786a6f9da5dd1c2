import pytest

from qorbital.errors import TheoremViolation
from qorbital.h2plus import (ONE_SUM, SYMBOLS, ZERO_SUM, SymSum, h2p_engine, h2p_pattern, h2p_xprime_check,
                             section8_partial)
from qorbital.kac_paljutkin import kp_layout


def test_rewriting_is_complete():
    P = h2p_pattern()
    assert P.completeness() == []
    assert P.model_violations() == []
    assert len(P.forced_zero) == 40


def test_specific_products():
    P = h2p_pattern()
    assert P.symbol_product_nonzero("p11", "q11") is False
    assert P.symbol_product_nonzero("p11", "p21") is False
    assert P.symbol_product_nonzero("p11", "p22") is True
    assert P.product_nonzero(ZERO_SUM, ONE_SUM) is False
    assert P.product_nonzero(ONE_SUM, SymSum(("p11",))) is True


def test_symsum_canonical():
    assert SymSum(("q11", "p11")) == SymSum(("p11", "q11"))
    assert repr(ZERO_SUM) == "0"
    assert set(SYMBOLS) == {t for t in h2p_pattern().model if t != "1"}


def test_engine_orbitals():
    rep = h2p_engine()
    assert rep["model_violations"] == []
    orb = rep["orbitals"]
    assert len(orb) == 3
    box = frozenset({(0, 1), (1, 0), (2, 3), (3, 2)})
    assert box in orb.classes


def test_classical_version_is_d4():
    G = h2p_pattern().classical_version()
    assert G.order == 8 and not G.is_abelian()


def test_xprime():
    assert h2p_xprime_check()["ok"]


@pytest.mark.parametrize("reps", [["u0"], ["u0", "x"], ["u0", "x", "one"], ["u0", "u0"]])
def test_section8(reps):
    rep = section8_partial(kp_layout(reps))
    assert rep["match"]


def test_section8_needs_u0():
    with pytest.raises((TheoremViolation, ValueError)):
        section8_partial(kp_layout(["w", "x"]))
