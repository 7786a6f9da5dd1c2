from fractions import Fraction

import pytest

from qorbital.algebra import (MultiMatrixAlgebra, SpanBuilder, characters, classical_version,
                              convolve_characters, counit_character, derive_hopf_from_magic, function_algebra,
                              group_algebra, is_projection, multiply, tensor_algebra)
from qorbital.cyclotomic import ONE, root_of_unity
from qorbital.duals import builtin_group
from qorbital.errors import IncompatibleOperands
from qorbital.groups import FreeProductGroup
from qorbital.magic import MagicUnitary, fourier_magic


def test_matrix_units():
    A = MultiMatrixAlgebra([1, 2])
    E11, E12, E21 = A.named("E11"), A.named("E12"), A.named("E21")
    assert E12 * E21 == E11
    assert (E21 * E21).is_zero()
    assert E12.star() == E21
    assert A.one() * E12 == E12
    assert is_projection(E11)
    assert not is_projection(E12)


def test_projection_over_cyclotomics():
    A = MultiMatrixAlgebra([2])
    half = Fraction(1, 2)
    z = root_of_unity(8)
    p = A.named("E11") * half + A.named("E12") * (z.conj() * half) + A.named("E21") * (z * half) + A.named("E22") * half
    assert p * p == p and p.star() == p


def test_incompatible_operands():
    A, B = MultiMatrixAlgebra([1]), MultiMatrixAlgebra([2])
    with pytest.raises(IncompatibleOperands):
        multiply(A.one(), B.one())


@pytest.mark.parametrize("build", [
    lambda: function_algebra(builtin_group("S3")).hopf,
    lambda: group_algebra(builtin_group("S3")).hopf,
    lambda: group_algebra(builtin_group("Q8")).hopf,
    lambda: tensor_algebra(function_algebra(builtin_group("Z2")), group_algebra(builtin_group("Z3"))).hopf,
])
def test_hopf_axioms(build):
    h = build()
    assert h.check() == []
    assert h.check_multiplicative(h.algebra.basis()) == []


def test_free_product_hopf_on_words():
    F = FreeProductGroup([2, 3])
    A = group_algebra(F)
    a, b = F.generator(0), F.generator(1)
    words = [(), a, b, F.mul(a, b), F.mul(F.mul(b, a), b)]
    assert A.hopf.check(words, multiplicative=True) == []
    with pytest.raises(ValueError):
        A.hopf.check()


def test_haar_on_group_algebra():
    G = builtin_group("S3")
    A = group_algebra(G)
    assert A.hopf.haar(A.one()) == 1
    g = [x for x in G if x != G.identity][0]
    assert A.hopf.haar(A.g(g)) == 0


def test_derive_reproduces_function_algebra():
    # C(Z3) from its Fourier-dual magic unitary of the regular action
    G = builtin_group("Z3")
    C = function_algebra(G)
    rows = [[C.element({(s, 0, 0): ONE for s in G if G.mul(s, j) == i}) for j in G] for i in G]
    u = MagicUnitary(rows, None, C)
    h = derive_hopf_from_magic(C, u, C.hopf.haar_label)
    assert h.check() == []
    for lab in C.basis():
        assert h.delta_label(lab) == C.hopf.delta_label(lab)


def test_span_builder():
    sb = SpanBuilder(order=lambda k: k)
    assert sb.add({0: ONE, 1: ONE})
    assert sb.add({1: ONE})
    assert not sb.add({0: ONE * 3})
    assert sb.rank == 2
    assert sb.express({0: ONE}) is not None


def test_characters_of_s3_dual():
    G = builtin_group("S3")
    A = group_algebra(G)
    chars = characters(A)
    assert len(chars) == 2
    eps = counit_character(A.hopf)
    for c in chars:
        assert convolve_characters(A.hopf, c, eps).signature() == c.signature()


def test_classical_version_cyclic_dual():
    G = builtin_group("Z4")
    A = group_algebra(G)
    u = fourier_magic(A, G.symbols["g"])
    cl = classical_version(u)
    assert cl.order == 4 and cl.is_abelian()
