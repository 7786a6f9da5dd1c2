"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line with its runtime; the summary is printed
at the end of the session.  Time budgets are part of the checks.
"""

import json
import random
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import numpy as np

from qorbital.algebra import classical_version, function_algebra, group_algebra, tensor_algebra
from qorbital.cyclotomic import Cyclo, root_of_unity
from qorbital.dsl import build
from qorbital.duals import (builtin_group, dual_embedding, free_product_lift, liberation, parse_element,
                            totality_check)
from qorbital.graphs import (automorphism_group, automorphisms_backtrack, automorphisms_naive,
                             frucht_graph, frucht_obstruction, invariant_graphs, is_isomorphic_to,
                             orbital_preserving_group)
from qorbital.groups import FreeProductGroup, PermGroup, parse_cycles
from qorbital.h2plus import h2p_engine, section8_partial, ten_vertex_experiment
from qorbital.kac_paljutkin import (SIZES, block_pair_classes, kp_algebra, kp_catalog, kp_d4_obstruction,
                                    kp_embedding, kp_hopf, kp_layout, kp_orbitals, v0_cross_orbitals,
                                    W_ORBITALS)
from qorbital.magic import (direct_sum, fourier_magic, generates, is_transitive_magic_rep,
                            permute_conjugate, verify_magic)
from qorbital.orbitals import haar_orbit_check, orbitals, orbits

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "qorbital" / "fixtures"

S3_LAYOUT = "dual(S3){(12),(123)}"
A4_LAYOUT = "dual(A4){(123),(12)(34)}"


def _zero_based(pairs):
    return frozenset((i - 1, k - 1) for i, k in pairs)


def _box(rows, cols):
    return {(a, b) for a in rows for b in cols}


def test_criterion_01_s3_dual(criterion):
    criterion(1, "S3 dual inside S5+: orbits, five orbitals, eight graphs, Z2xS3, obstruction")
    b = build(S3_LAYOUT)
    u = b.u
    assert [sorted(s) for s in orbits(u).as_sets()] == [[1, 2], [3, 4, 5]]
    orb = orbitals(u)
    expected = {
        _zero_based({(1, 2), (2, 1)}),
        _zero_based(_box({1, 2}, {3, 4, 5})),
        _zero_based(_box({3, 4, 5}, {1, 2})),
        _zero_based({(3, 4), (4, 5), (5, 3)}),
        _zero_based({(3, 5), (5, 4), (4, 3)}),
    }
    assert {orb.classes[i] for i in orb.nondiagonal()} == expected
    assert len(orb.nondiagonal()) == 5
    assert len(invariant_graphs(u, orb)) == 8
    pres = orbital_preserving_group(u, orb=orb)
    assert pres.order % 12 == 0
    z2xs3 = PermGroup(5, [parse_cycles("(12)", 5), parse_cycles("(345)", 5), parse_cycles("(34)", 5)])
    assert z2xs3.order == 12 and pres.contains_group(z2xs3)
    assert frucht_obstruction(u, orb)["obstructed"] is True
    assert criterion.elapsed < 1.0


def test_criterion_02_h2plus_pattern(criterion):
    criterion(2, "H2+ pattern: two orbitals, four graphs, D4 preserving group, no obstruction")
    eng = h2p_engine()
    assert eng["model_violations"] == []
    orb = eng["orbitals"]
    u = eng["magic"]
    o1 = _zero_based({(1, 3), (1, 4), (2, 3), (2, 4), (3, 1), (3, 2), (4, 1), (4, 2)})
    o2 = _zero_based({(1, 2), (2, 1), (3, 4), (4, 3)})
    assert {orb.classes[i] for i in orb.nondiagonal()} == {o1, o2}
    assert len(invariant_graphs(u, orb)) == 4
    pres = orbital_preserving_group(u, orb=orb)
    d4 = PermGroup(4, [parse_cycles("(1324)", 4), parse_cycles("(12)", 4)])
    assert pres.order == 8 and not pres.is_abelian() and pres.structure() == "D4"
    assert set(pres.elements) == set(d4.elements)
    cl = eng["pattern"].classical_version()
    assert set(cl.elements) == set(d4.elements)
    assert frucht_obstruction(u, orb, cl)["obstructed"] is False
    assert criterion.elapsed < 1.0


def test_criterion_03_kp_catalog(criterion):
    criterion(3, "Kac-Paljutkin catalog: transitive reps, derived Delta facts, generation, Haar law")
    cat = kp_catalog()
    assert sorted(cat) == sorted(["u0", "w", "x", "y", "z", "one"])
    h = kp_hopf()
    for name, u in cat.items():
        assert verify_magic(u) == [], name
        ok, why = is_transitive_magic_rep(u, h)
        assert ok, (name, why)
        assert haar_orbit_check(u, h) == [], name
    A = kp_algebra()
    f = [A.named(f"f{i}") for i in range(1, 5)]
    E = {nm: next(iter(A.named(nm).sorted_items()))[0] for nm in ("E11", "E12", "E21", "E22")}
    half = Cyclo(Fraction(1, 2))
    i_half = root_of_unity(4) * Fraction(1, 2)
    for x in (f[0], f[3]):
        assert h.delta(x).get((E["E11"], E["E11"])) == half
    for x in (f[1], f[2]):
        c = h.delta(x).get((E["E21"], E["E12"]))
        assert c in (i_half, -i_half)
    assert generates(cat["w"]) == (False, 4)
    assert generates(cat["u0"]) == (True, 8)
    assert criterion.elapsed < 5.0


def test_criterion_04_kp_orbital_catalogs(criterion):
    criterion(4, "Kac-Paljutkin orbital catalogs against listed and transcribed sets")
    fx = json.loads((FIXTURES / "kp_orbitals.json").read_text())["types"]
    assert len(fx) == 12
    # explicitly listed sets
    orb, _ = kp_orbitals(["u0", "u0"])
    L = kp_layout(["u0", "u0"])
    cross = [p for p in block_pair_classes(orb, L) if (p["a"], p["b"]) == (0, 1)][0]
    assert {frozenset(c) for c in cross["classes"]} == {frozenset(s) for s in v0_cross_orbitals().values()}
    orb, _ = kp_orbitals(["w"])
    nd = {frozenset((i + 1, k + 1) for i, k in orb.classes[j]) for j in orb.nondiagonal()}
    assert nd == {frozenset(s) for s in W_ORBITALS}
    orb, _ = kp_orbitals(["w", "w"])
    pc = [p for p in block_pair_classes(orb, kp_layout(["w", "w"])) if (p["a"], p["b"]) == (0, 1)][0]
    assert len(pc["classes"]) == 4
    for r in ("x", "y", "z"):
        orb, _ = kp_orbitals([r, r])
        pc = [p for p in block_pair_classes(orb, kp_layout([r, r])) if (p["a"], p["b"]) == (0, 1)][0]
        assert len(pc["classes"]) == 2, r
    # counts and transcribed sets for the twelve non-total types
    for key, t in fx.items():
        orb, _ = kp_orbitals(t["layout"])
        pcs = block_pair_classes(orb, kp_layout(t["layout"]))
        pc = [p for p in pcs if [p["a"], p["b"]] == t["blocks"]][0]
        assert pc["type"] == key
        assert len(pc["classes"]) == t["count"], key
        if "classes" in t:
            got = sorted(sorted(list(x) for x in c) for c in pc["classes"])
            assert got == t["classes"], key
    assert criterion.elapsed < 30.0


def test_criterion_05_kp_d4_obstruction(criterion):
    criterion(5, "Kac-Paljutkin D4 obstruction on three layouts")
    for reps in (["u0"], ["u0", "u0"], ["u0", "w", "x", "y", "z", "one"]):
        rep = kp_d4_obstruction(reps)
        assert len(rep["sigmas"]) == 8
        assert rep["group_order"] == 8 and rep["abelian"] is False
        assert rep["classical_structure"] == "Z2xZ2"
        assert rep["classical_version"].order == 4
        assert rep["obstructed"] is True
        assert rep["witness"] is not None and rep["witness"][1] not in rep["classical_version"]
    assert criterion.elapsed < 30.0


def _has_witness(rep, p, q, i, j, k, l_):
    return {"p": p, "q": q, "i": i, "j": j, "k": k, "l": l_} in rep["witnesses"]


def test_criterion_06_totality(criterion):
    criterion(6, "totality: S3, A4, A5 total; D4, Q8 and 2I witnesses")
    failures = []
    for label in ("S3", "A4", "A5"):
        rep = totality_check(builtin_group(label))
        if not rep["total"]:
            failures.append(f"{label} not total")
    D4 = builtin_group("D4")
    rep = totality_check(D4)
    if not _has_witness(rep, "r", "r^2", 1, 1, 2, 1):
        failures.append("D4 witness u^r_11 u^{r^2}_21 = 0 missing")
    Q8 = builtin_group("Q8")
    rep = totality_check(Q8)
    if not _has_witness(rep, "j", "k", 1, 1, 2, 1):
        failures.append("Q8 witness u^j_11 u^k_21 = 0 missing")
    G = builtin_group("2I")
    s, t = G.symbols["s"], G.symbols["t"]
    if G.order != 120:
        failures.append(f"|2I| = {G.order}")
    if G.element_order(s) != 6 or G.element_order(t) != 10:
        failures.append(f"ord(s), ord(t) = {G.element_order(s)}, {G.element_order(t)}")
    A = group_algebra(G)
    us, ut = fourier_magic(A, s), fourier_magic(A, t)
    if not (us.entries[0][0] * ut.entries[4][0]).is_zero():
        failures.append("u^s_11 u^t_51 is nonzero")
    assert not failures, "; ".join(failures)
    assert criterion.elapsed < 120.0


def test_criterion_07_frucht_builder(criterion):
    criterion(7, "Frucht builder for Z3 and S3 certified by two searches")
    Z3 = builtin_group("Z3")
    X = frucht_graph(Z3, [Z3.symbols["g"]])
    aut = automorphism_group(X, bound=64)
    assert aut.order == 3 and is_isomorphic_to(aut, Z3)
    assert automorphisms_backtrack(X) == set(aut.elements)
    if X.n <= 12:
        assert automorphisms_naive(X) == set(aut.elements)
    S3 = builtin_group("S3")
    X = frucht_graph(S3, [parse_element(S3, "(12)"), parse_element(S3, "(123)")])
    aut = automorphism_group(X, bound=64)
    assert aut.order == 6 and is_isomorphic_to(aut, S3)
    assert automorphisms_backtrack(X) == set(aut.elements)
    if X.n <= 12:
        assert automorphisms_naive(X) == set(aut.elements)
    assert criterion.elapsed < 60.0


def test_criterion_08_classical_and_liberation(criterion):
    criterion(8, "classical versions and liberations through A5")
    for reps in (["u0"], ["u0", "u0"], ["u0", "w"], ["u0", "x", "one"], ["u0", "w", "x", "y", "z", "one"]):
        cl = classical_version(kp_embedding(reps))
        assert cl.order == 4 and cl.structure() == "Z2xZ2", reps
    cl = classical_version(build(S3_LAYOUT).u)
    assert cl.order == 2
    A5 = builtin_group("A5")
    for label, order, shape in (("Z2", 2, "Z2"), ("S3", 6, "S3")):
        G = builtin_group(label)
        lib = liberation(G, A5)
        chars, perms, table, hom_ok = lib.character_group()
        assert hom_ok, label
        assert len(perms) == order and all(v >= 0 for row in table for v in row)
        H = PermGroup.from_elements(lib.u.n, perms)
        assert H.order == order and H.structure() == shape
        assert is_isomorphic_to(H, G)
    assert criterion.elapsed < 60.0


def _commutator_rows(u):
    """Exact coordinates of ``[A_e, u]`` for each edge ``e``, as integer rows."""
    n = u.n
    E = u.entries
    edges = list(combinations(range(n), 2))
    per_edge = []
    for a, b in edges:
        # (A_e u - u A_e)_ij with A_e the adjacency of the single edge {a, b}
        comm = {}
        for i in range(n):
            for j in range(n):
                x = u.algebra.zero()
                if i == a:
                    x = x + E[b][j]
                if i == b:
                    x = x + E[a][j]
                if j == a:
                    x = x - E[i][b]
                if j == b:
                    x = x - E[i][a]
                if not x.is_zero():
                    comm[(i, j)] = x
        per_edge.append(comm)
    cond, den = 1, 1
    keys = set()
    for comm in per_edge:
        for ij, x in comm.items():
            for lab, c in x.sorted_items():
                keys.add((ij, lab))
                cond = np.lcm(cond, c.n)
                den = np.lcm(den, c.den)
    cond, den = int(cond), int(den)
    keys = sorted(keys, key=repr)
    width = len(root_of_unity(cond).lift(cond)) if cond > 1 else 1
    col = {k: idx for idx, k in enumerate(keys)}
    M = np.zeros((len(edges), max(1, len(keys) * width)), dtype=np.int64)
    for r, comm in enumerate(per_edge):
        for ij, x in comm.items():
            for lab, c in x.sorted_items():
                base = col[(ij, lab)] * width
                for q, v in enumerate(c.lift(cond)):
                    M[r, base + q] = v * (den // c.den)
    return edges, M


def _brute_force_graphs(u):
    edges, M = _commutator_rows(u)
    m = len(edges)
    masks = np.arange(1 << m, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(m)) & 1).astype(np.int64)
    ok = ~(bits @ M).any(axis=1)
    out = set()
    for mask in masks[ok]:
        out.add(frozenset(edges[t] for t in range(m) if mask >> t & 1))
    return out


def _catalog_layouts(max_n):
    layouts = []
    reps = ["u0", "w", "x", "y", "z", "one"]

    def rec(idx, remaining, chosen):
        if chosen:
            layouts.append(list(chosen))
        for j in range(idx, len(reps)):
            if SIZES[reps[j]] <= remaining:
                rec(j, remaining - SIZES[reps[j]], chosen + [reps[j]])

    rec(0, max_n, [])
    return layouts


def test_criterion_09_exhaustive_small_n(criterion):
    criterion(9, "invariant graphs equal the brute-force du=ud set for every catalog layout with N <= 6")
    duals = ["dual(S3){(12),(123)}", "dual(Z2){g}", "dual(Z3){g}", "dual(Z4){g}", "dual(Z5){g}",
             "dual(Z6){g}", "dual(S3){(123)}", "dual(S3){(12),(12),(12)}", "dual(A4){(123),(12)(34)}",
             "dual(A4){(123)}", "dual(D4){r,s}", "dual(Q8){i}", "dual(Q8){-1,i}", "dual(Z1){}"]
    cases = [(f"kp{{{','.join(r)}}}", kp_embedding(r)) for r in _catalog_layouts(6)]
    cases += [(d, build(d).u) for d in duals]
    assert len(cases) > 40
    for name, u in cases:
        assert u.n <= 6
        got = {X.edges for X in invariant_graphs(u)}
        assert got == _brute_force_graphs(u), name
    assert criterion.elapsed < 120.0


def test_criterion_10_free_product_lift(criterion):
    criterion(10, "free-product lift keeps the orbital partition")
    for text in (S3_LAYOUT, A4_LAYOUT):
        b = build(text)
        lifted = free_product_lift(b.extra["embedding"])
        assert isinstance(lifted.group, FreeProductGroup)
        before, after = orbitals(b.u), orbitals(lifted.u)
        assert before.classes == after.classes
    assert criterion.elapsed < 10.0


def _section8_layouts():
    out = []
    for a in range(1, 3):
        for x in range(0, 6):
            for one in range(0, 11):
                if 4 * a + 2 * x + one <= 10:
                    out.append(["u0"] * a + ["x"] * x + ["one"] * one)
    return out


def test_criterion_11_section8(criterion):
    criterion(11, "H2+ replacement keeps orbitals up to N = 10; ten-vertex experiment reports")
    layouts = _section8_layouts()
    assert len(layouts) == 20
    for reps in layouts:
        rep = section8_partial(reps)
        assert rep["match"], reps
    exp = ten_vertex_experiment()
    assert exp["graphs"] == 2 ** exp["nondiagonal_pairs"] == len(exp["rows"])
    for row in exp["rows"]:
        assert row["g0_acts"] is True
        assert row["h2p_acts"] in ("true", "false", "undecidable")
    assert criterion.elapsed < 60.0


def _hopf_cases():
    S3 = builtin_group("S3")
    CG = function_algebra(S3)
    CS = group_algebra(S3)
    T = tensor_algebra(function_algebra(builtin_group("Z2")), group_algebra(builtin_group("Z3")))
    F = FreeProductGroup([2, 3])
    CF = group_algebra(F)
    a, b = F.generator(0), F.generator(1)
    words = [(), a, b, F.mul(a, b), F.mul(b, a), F.mul(F.mul(a, b), b), F.power(b, 2)]
    return [
        ("C(S3)", CG.hopf, None),
        ("C*(S3)", CS.hopf, None),
        ("C(Z2)xC*(Z3)", T.hopf, None),
        ("C*(Z2*Z3)", CF.hopf, words),
        ("C(G0)", kp_hopf(), None),
        ("C*(Q8)", group_algebra(builtin_group("Q8")).hopf, None),
    ]


def _random_layout(rng):
    kind = rng.random()
    if kind < 0.5:
        reps = [rng.choice(["u0", "w", "x", "y", "z", "one"]) for _ in range(rng.randint(1, 4))]
        return f"kp{{{','.join(reps)}}}", kp_embedding(reps)
    label, pool = rng.choice([
        ("S3", ["(12)", "(123)", "(13)", "e"]),
        ("A4", ["(123)", "(12)(34)", "(134)"]),
        ("Z6", ["g", "g^2", "g^3"]),
        ("D4", ["r", "s", "r^2", "rs"]),
    ])
    G = builtin_group(label)
    gens = [rng.choice(pool) for _ in range(rng.randint(1, 3))]
    return f"dual({label}){{{','.join(gens)}}}", dual_embedding(G, [parse_element(G, t) for t in gens]).u


def test_criterion_12_property_suites(criterion):
    criterion(12, "Hopf axioms, magic invariants and orbital invariants on random layouts")
    for name, h, labels in _hopf_cases():
        assert h.check(labels) == [], name
        lab = labels if labels is not None else h.algebra.basis()
        assert h.check_multiplicative(lab[:8]) == [], name
    rng = random.Random(20261014)
    for _ in range(50):
        name, u = _random_layout(rng)
        assert verify_magic(u) == [], name
        sigma = list(range(u.n))
        rng.shuffle(sigma)
        v = permute_conjugate(u, sigma)
        assert verify_magic(v) == [], name
        orb = orbitals(u)
        assert orb.anomalies == [] and not orb.closure_needed, name
        cover = sorted(p for c in orb.classes for p in c)
        assert cover == [(i, k) for i in range(u.n) for k in range(u.n)], name
        for idx, c in enumerate(orb.classes):
            diag = {i == k for i, k in c}
            assert len(diag) == 1, name
            inv = frozenset((k, i) for i, k in c)
            assert orb.classes[orb.inverse[idx]] == inv, name
        diag_classes = sorted(sorted(i for i, _ in orb.classes[j]) for j in range(len(orb)) if orb.diagonal[j])
        assert diag_classes == sorted(orbits(u).classes), name
        # conjugation relabels the orbitals
        ov = orbitals(v)
        moved = {frozenset((sigma[i], sigma[k]) for i, k in c) for c in orb.classes}
        assert set(ov.classes) == moved, name
    cat = kp_catalog()
    for _ in range(10):
        reps = [rng.choice(sorted(cat)) for _ in range(rng.randint(1, 3))]
        assert verify_magic(direct_sum(kp_layout(reps), cat)) == []
