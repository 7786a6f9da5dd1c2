import pytest

from qorbital.duals import (builtin_group, dual_embedding, free_product_lift, k_matrix_test, liberation,
                            parse_element, rep_equivalent, total_theorem_generators, totality_check)
from qorbital.errors import DomainError, ParseError
from qorbital.orbitals import orbitals


@pytest.mark.parametrize("label,order", [("Z1", 1), ("Z4", 4), ("S3", 6), ("D4", 8), ("Q8", 8), ("A4", 12),
                                         ("A5", 60), ("2I", 120)])
def test_builtin_orders(label, order):
    assert builtin_group(label).order == order


def test_unknown_group():
    with pytest.raises(DomainError):
        builtin_group("Z0x")


def test_parse_element_forms():
    S3 = builtin_group("S3")
    assert S3.element_order(parse_element(S3, "(123)")) == 3
    assert parse_element(S3, "e") == S3.identity
    Q8 = builtin_group("Q8")
    assert Q8.element_order(parse_element(Q8, "-1")) == 2
    assert Q8.element_order(parse_element(Q8, "i")) == 4
    with pytest.raises((ParseError, DomainError)):
        parse_element(S3, "(1234)")


def test_rep_equivalence():
    S3 = builtin_group("S3")
    a, b = parse_element(S3, "(123)"), parse_element(S3, "(132)")
    assert rep_equivalent(S3, a, b)
    assert not rep_equivalent(S3, parse_element(S3, "(12)"), a)


@pytest.mark.parametrize("label,total", [("S3", True), ("D4", False), ("Q8", False), ("Z6", False), ("Z5", True)])
def test_totality(label, total):
    rep = totality_check(builtin_group(label))
    assert rep["total"] is total
    assert bool(rep["witnesses"]) is not total


def test_k_matrix():
    S3 = builtin_group("S3")
    assert k_matrix_test(S3, parse_element(S3, "(12)"), parse_element(S3, "(123)"))


def test_total_generators_and_lift():
    S3 = builtin_group("S3")
    emb = dual_embedding(S3, [parse_element(S3, "(12)"), parse_element(S3, "(123)")])
    H = total_theorem_generators(emb)
    assert H.order == 12
    lifted = free_product_lift(emb)
    assert orbitals(lifted.u).as_partition() == orbitals(emb.u).as_partition()


def test_liberation_requires_perfect():
    with pytest.raises(DomainError):
        liberation(builtin_group("S3"), builtin_group("S3"))


def test_liberation_s3_a5():
    lib = liberation(builtin_group("S3"), builtin_group("A5"))
    assert lib.u.n == 12
    chars, perms, table, hom = lib.character_group()
    assert len(chars) == 6 and hom
    assert len(set(perms)) == 6
