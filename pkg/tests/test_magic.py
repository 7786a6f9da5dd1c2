import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qorbital.algebra import group_algebra
from qorbital.duals import builtin_group, parse_element
from qorbital.errors import LayoutError
from qorbital.kac_paljutkin import kp_catalog, kp_layout
from qorbital.magic import (EmbeddingLayout, MagicUnitary, block_diag, direct_sum, enumerate_layouts,
                            equivalent, fourier_inversion, fourier_magic, is_circulant,
                            is_transitive_magic_rep, permute_conjugate, verify_magic)


@pytest.mark.parametrize("label,token", [("Z5", "g"), ("S3", "(123)"), ("D4", "r"), ("Q8", "i"), ("A4", "(12)(34)")])
def test_fourier_blocks(label, token):
    G = builtin_group(label)
    A = group_algebra(G)
    g = parse_element(G, token)
    u = fourier_magic(A, g)
    assert u.n == G.element_order(g)
    assert verify_magic(u) == []
    assert is_circulant(u)
    assert fourier_inversion(u) == A.g(g)
    ok, why = is_transitive_magic_rep(u, A.hopf)
    assert ok, why


def test_non_magic_detected():
    A = group_algebra(builtin_group("Z2"))
    bad = MagicUnitary([[A.one(), A.one()], [A.zero(), A.one()]], A.hopf, A)
    assert verify_magic(bad)


def test_layout_basics():
    L = kp_layout(["u0", "x", "x", "one"])
    assert L.N == 9
    assert L.blocks == [("u0", 1), ("x", 2), ("one", 1)]
    assert [r[1:] for r in L.vertex_ranges] == [(0, 4), (4, 6), (6, 8), (8, 9)]
    assert str(L) == "diag(u0, x, x, one)"
    with pytest.raises(LayoutError):
        EmbeddingLayout([("q", 1)], {})


def test_enumerate_layouts_counts():
    cat = [(k, v) for k, v in kp_catalog().items()]
    six = enumerate_layouts(cat, 6, require_generation=True)
    found = sorted(sorted(name for name, k in L.blocks for _ in range(k)) for L in six)
    assert found == [["one", "one", "u0"], ["u0", "x"], ["u0", "y"], ["u0", "z"]]


def test_equivalence_witness():
    cat = kp_catalog()
    u = cat["w"]
    sigma = (2, 0, 3, 1)
    v = permute_conjugate(u, sigma)
    tau = equivalent(u, v)
    assert tau is not None and permute_conjugate(u, tau) == v
    assert equivalent(cat["u0"], cat["w"]) is None


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from(["u0", "w", "x", "y", "z", "one"]), min_size=1, max_size=3), st.data())
def test_magic_preserved(reps, data):
    u = direct_sum(kp_layout(reps), kp_catalog())
    assert verify_magic(u) == []
    sigma = data.draw(st.permutations(range(u.n)))
    assert verify_magic(permute_conjugate(u, sigma)) == []


def test_block_diag_sizes():
    G = builtin_group("S3")
    A = group_algebra(G)
    u = block_diag([fourier_magic(A, parse_element(G, "(12)")), fourier_magic(A, parse_element(G, "(123)"))])
    assert u.n == 5 and verify_magic(u) == []
    assert u.entries[0][3].is_zero()
