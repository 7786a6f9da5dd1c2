"""The Kac-Paljutkin quantum group G0: algebra, catalog, orbitals and the D4 obstruction.

``C(G0) = C + C + C + C + M_2(C)`` with basis ``f1..f4, E11, E12, E21, E22``.
Its comultiplication is not transcribed; it is derived from ``u0``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct

from .algebra import MultiMatrixAlgebra, classical_version, derive_hopf_from_magic
from .cyclotomic import ONE, ZERO, Cyclo, root_of_unity
from .errors import CatalogMismatch, LayoutError, TheoremViolation
from .groups import PermGroup, compose, cycle_string, parse_cycles
from .magic import EmbeddingLayout, MagicUnitary, direct_sum
from .orbitals import OrbitalPartition, orbitals

REP_IDS = ("u0", "w", "x", "y", "z", "one")
SIZES = {"u0": 4, "w": 4, "x": 2, "y": 2, "z": 2, "one": 1}


@lru_cache(maxsize=None)
def kp_algebra() -> MultiMatrixAlgebra:
    return MultiMatrixAlgebra([1, 1, 1, 1, 2])


def kp_haar_values() -> dict:
    A = kp_algebra()
    vals = {}
    for lab in A.basis():
        b, r, c = lab
        if b < 4:
            vals[lab] = Cyclo(Fraction(1, 8))
        else:
            vals[lab] = Cyclo(Fraction(1, 4)) if r == c else ZERO
    return vals


def _names():
    A = kp_algebra()
    f = [A.named(f"f{i}") for i in range(1, 5)]
    E = {(r, c): A.named(f"E{r}{c}") for r in (1, 2) for c in (1, 2)}
    return A, f, E


def kp_projection(transpose: bool = False):
    """``p = 0+0+0+0+[[1/2, w8^7/2], [w8/2, 1/2]]`` (or its transpose)."""
    A, _, E = _names()
    half = Fraction(1, 2)
    z, zb = root_of_unity(8), root_of_unity(8, 7)
    if transpose:
        z, zb = zb, z
    return E[1, 1] * half + E[1, 2] * (zb * half) + E[2, 1] * (z * half) + E[2, 2] * half


def _u0_rows(variant: int = 2):
    A, f, E = _names()
    I2 = E[1, 1] + E[2, 2]
    p, pt = kp_projection(), kp_projection(True)
    if variant == 2:
        return [
            [f[0] + f[1], f[2] + f[3], p, I2 - p],
            [f[2] + f[3], f[0] + f[1], I2 - p, p],
            [pt, I2 - pt, f[0] + f[2], f[1] + f[3]],
            [I2 - pt, pt, f[1] + f[3], f[0] + f[2]],
        ]
    # the variant with f1+f3 in the leading block
    return [
        [f[0] + f[2], f[1] + f[3], pt, I2 - pt],
        [f[1] + f[3], f[0] + f[2], I2 - pt, pt],
        [p, I2 - p, f[0] + f[1], f[2] + f[3]],
        [I2 - p, p, f[2] + f[3], f[0] + f[1]],
    ]


def _w_rows(q: str = "E11"):
    A, f, E = _names()
    a, b = (E[1, 1], E[2, 2]) if q == "E11" else (E[2, 2], E[1, 1])
    s, t = f[0] + f[3], f[1] + f[2]
    return [
        [s, t, a, b],
        [t, s, b, a],
        [a, b, s, t],
        [b, a, t, s],
    ]


@lru_cache(maxsize=None)
def kp_hopf():
    A = kp_algebra()
    u0 = MagicUnitary(_u0_rows(), None, A)
    return derive_hopf_from_magic(A, u0, kp_haar_values())


@lru_cache(maxsize=None)
def _catalog():
    A, f, E = _names()
    h = kp_hopf()
    one = A.one()
    F = f[0] + f[1] + f[2] + f[3]
    I2 = E[1, 1] + E[2, 2]
    a, b = f[0] + f[3], f[1] + f[2]
    mats = {
        "u0": _u0_rows(),
        "w": _w_rows(),
        "x": [[F, I2], [I2, F]],
        "y": [[a + E[1, 1], b + E[2, 2]], [b + E[2, 2], a + E[1, 1]]],
        "z": [[a + E[2, 2], b + E[1, 1]], [b + E[1, 1], a + E[2, 2]]],
        "one": [[one]],
    }
    return {k: MagicUnitary(v, h, A) for k, v in mats.items()}


def kp_catalog() -> dict[str, MagicUnitary]:
    """The six transitive magic representations ``u0, w, x, y, z, one``."""
    return dict(_catalog())


def kp_variants() -> dict[str, MagicUnitary]:
    h = kp_hopf()
    A = kp_algebra()
    return {
        "u0_i3": MagicUnitary(_u0_rows(3), h, A),
        "w_E22": MagicUnitary(_w_rows("E22"), h, A),
    }


def kp_layout(reps) -> EmbeddingLayout:
    for r in reps:
        if r not in SIZES:
            raise LayoutError(f"unknown Kac-Paljutkin representation {r!r}")
    return EmbeddingLayout.from_sequence(list(reps), SIZES, source="kp")


def kp_embedding(layout: EmbeddingLayout | list) -> MagicUnitary:
    if not isinstance(layout, EmbeddingLayout):
        layout = kp_layout(layout)
    return direct_sum(layout, _catalog())


# -- orbital catalogs ------------------------------------------------------------------

# Explicitly listed orbital sets, in local 1-based block coordinates.
W_ORBITALS = [
    {(1, 2), (2, 1), (3, 4), (4, 3)},
    {(1, 3), (2, 4), (3, 1), (4, 2)},
    {(1, 4), (2, 3), (3, 2), (4, 1)},
]


def v0_cross_orbitals() -> dict[str, set]:
    """``o_d, o_b, o_s`` between two ``u0`` blocks, as (row, col) pairs in 1..4 x 1..4."""
    return {
        "o_d": {(j, j) for j in range(1, 5)},
        "o_b": {(1, 2), (2, 1), (3, 4), (4, 3)},
        "o_s": {(a, b) for a in (1, 2) for b in (3, 4)} | {(a, b) for a in (3, 4) for b in (1, 2)},
    }


def type_key(ra: str, rb: str, same_instance: bool) -> str:
    """Name of the orbital type for blocks of representations ``ra`` and ``rb``."""
    tag = {"u0": "V0", "w": "Vw", "x": "Vx", "y": "Vy", "z": "Vz", "one": "V1"}
    order = list(REP_IDS)
    if ra == rb:
        t = tag[ra]
        return f"{t}a{t}a" if same_instance else f"{t}a{t}b"
    a, b = sorted((ra, rb), key=order.index)
    return tag[a] + tag[b]


def block_pair_classes(orb: OrbitalPartition, layout: EmbeddingLayout) -> list[dict]:
    """Orbitals restricted to each ordered pair of block instances, in local coordinates."""
    out = []
    ranges = layout.vertex_ranges
    for a, (ra, sa, ea) in enumerate(ranges):
        for b, (rb, sb, eb) in enumerate(ranges):
            classes = orb.restricted(range(sa, ea), range(sb, eb))
            local = [frozenset((i - sa + 1, k - sb + 1) for i, k in c) for c in classes]
            if a == b:
                # drop the diagonal classes
                local = [c for c in local if not all(i == k for i, k in c)]
            out.append({"a": a, "b": b, "ra": ra, "rb": rb, "type": type_key(ra, rb, a == b),
                        "classes": sorted(local, key=lambda c: sorted(c))})
    return out


def kp_orbitals(layout: EmbeddingLayout | list) -> tuple[OrbitalPartition, dict]:
    """Orbitals of a catalog layout, checked against the explicitly listed sets."""
    if not isinstance(layout, EmbeddingLayout):
        layout = kp_layout(layout)
    u = kp_embedding(layout)
    orb = orbitals(u)
    pairs = block_pair_classes(orb, layout)
    counts: dict = {}
    mismatches = []
    for pc in pairs:
        key = pc["type"]
        classes = {frozenset(c) for c in pc["classes"]}
        counts.setdefault(key, set()).add(len(classes))
        if key == "VwaVwa" and classes != {frozenset(s) for s in W_ORBITALS}:
            mismatches.append(f"w block {pc['a']}: orbitals differ from the listed o1, o2, o3")
        if key == "V0aV0b" and classes != {frozenset(s) for s in v0_cross_orbitals().values()}:
            mismatches.append(f"u0 blocks {pc['a']},{pc['b']}: cross orbitals differ from o_d, o_b, o_s")
    if mismatches:
        raise CatalogMismatch("; ".join(mismatches))
    report = {
        "layout": str(layout),
        "n": u.n,
        "classes": len(orb),
        "nondiagonal": len(orb.nondiagonal()),
        "type_counts": {k: sorted(v) for k, v in sorted(counts.items())},
        "block_pairs": pairs,
        "closure_needed": orb.closure_needed,
        "anomalies": orb.anomalies,
    }
    return orb, report


# -- the D4 obstruction ------------------------------------------------------------------

D4_S = parse_cycles("(14)(23)", 4)
D4_T12 = parse_cycles("(12)", 4)
D4_T34 = parse_cycles("(34)", 4)
W_FLIP = parse_cycles("(13)(24)", 4)


def omega(b1: int, b2: int, b3: int) -> tuple[int, ...]:
    """``(34)^b3 (12)^b2 s^b1`` with ``s = (14)(23)``."""
    x = tuple(range(4))
    if b1:
        x = compose(D4_S, x)
    if b2:
        x = compose(D4_T12, x)
    if b3:
        x = compose(D4_T34, x)
    return x


def sigma_for_layout(layout: EmbeddingLayout, b: tuple[int, int, int]) -> tuple[int, ...]:
    b1, b2, b3 = b
    img = list(range(layout.N))
    for rep, s, e in layout.vertex_ranges:
        if rep == "u0":
            local = omega(b1, b2, b3)
        elif rep == "w":
            local = W_FLIP if b1 else (0, 1, 2, 3)
        elif rep in ("x", "z"):
            local = (1, 0) if b1 else (0, 1)
        else:
            local = tuple(range(e - s))
        for t in range(e - s):
            img[s + t] = s + local[t]
    return tuple(img)


def kp_d4_obstruction(layout: EmbeddingLayout | list, orb: OrbitalPartition | None = None) -> dict:
    from .graphs import preserves_orbitals

    if not isinstance(layout, EmbeddingLayout):
        layout = kp_layout(layout)
    if "u0" not in layout.instances:
        raise LayoutError("the obstruction needs a u0 block")
    u = kp_embedding(layout)
    orb = orb if orb is not None else orbitals(u)
    sigmas = {}
    failures = []
    for b in iproduct((0, 1), repeat=3):
        s = sigma_for_layout(layout, b)
        sigmas[b] = s
        if not preserves_orbitals(s, orb):
            failures.append(b)
    if failures:
        raise TheoremViolation(f"sigma{failures[0]} does not preserve the orbitals")
    H = PermGroup(layout.N, list(sigmas.values()))
    if H.order != 8 or H.is_abelian():
        raise TheoremViolation(f"sigma group has order {H.order}, expected non-abelian of order 8")
    cl = classical_version(u)
    witness = None
    for b, s in sigmas.items():
        if s not in cl:
            witness = (b, s)
            break
    return {
        "layout": str(layout),
        "sigmas": sigmas,
        "group_order": H.order,
        "group": H,
        "abelian": H.is_abelian(),
        "classical_version": cl,
        "classical_structure": cl.structure(),
        "obstructed": witness is not None,
        "witness": witness,
        "witness_cycles": cycle_string(witness[1]) if witness else None,
    }
