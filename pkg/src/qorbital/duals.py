"""Group duals: the built-in group zoo, totality, free-product lifts and liberations."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .algebra import (
    GroupAlgebra,
    TensorAlgebra,
    characters,
    convolve_characters,
    function_algebra,
    group_algebra,
    phi_permutation,
    tensor_algebra,
)
from .cyclotomic import ONE, PHI, ZERO, Cyclo
from .errors import DomainError, TheoremViolation
from .groups import (
    FiniteGroup,
    FreeProductGroup,
    GroupError,
    PermGroup,
    abelianization,
    compose,
    cyclic_group,
    identity_perm,
    parse_cycles,
)
from .magic import EmbeddingLayout, MagicUnitary, block_diag, equivalent, fourier_magic
from .orbitals import OrbitalPartition, orbitals


class Quaternion:
    """``a + b i + c j + d k`` with cyclotomic coordinates."""

    __slots__ = ("q",)

    def __init__(self, a=0, b=0, c=0, d=0):
        self.q = tuple(x if isinstance(x, Cyclo) else Cyclo(x) for x in (a, b, c, d))

    def __mul__(self, o: "Quaternion") -> "Quaternion":
        a1, b1, c1, d1 = self.q
        a2, b2, c2, d2 = o.q
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __neg__(self):
        return Quaternion(*(-x for x in self.q))

    def conj(self) -> "Quaternion":
        a, b, c, d = self.q
        return Quaternion(a, -b, -c, -d)

    def norm(self) -> Cyclo:
        return sum((x * x for x in self.q), ZERO)

    def __eq__(self, o):
        return isinstance(o, Quaternion) and self.q == o.q

    def __hash__(self):
        return hash(self.q)

    def __repr__(self):
        return "Quaternion(" + ", ".join(str(x) for x in self.q) + ")"


Q_ONE = Quaternion(1)
Q_I = Quaternion(0, 1)
Q_J = Quaternion(0, 0, 1)
Q_K = Quaternion(0, 0, 0, 1)


def _word_names(G: FiniteGroup, symbols: dict[str, int], limit: int = 6) -> dict[int, str]:
    """Shortest-word names for every element over the named generators."""
    names = {G.identity: "e"}
    frontier = [(G.identity, "")]
    while frontier and len(names) < G.order:
        nxt = []
        for g, w in frontier:
            for s, x in symbols.items():
                if len(s) > 1 and not s.isalpha():
                    continue
                h = G.mul(g, x)
                if h not in names:
                    names[h] = _compress(w + s)
                    nxt.append((h, w + s))
        frontier = nxt
    return names


def _compress(word: str) -> str:
    return re.sub(r"([a-z])\1+", lambda m: f"{m.group(1)}^{len(m.group(0))}", word)


def _perm_group(gens: Sequence[str], degree: int, label: str) -> FiniteGroup:
    G = FiniteGroup.from_perms([parse_cycles(g, degree) for g in gens], degree, label)
    G.symbols = {}
    return G


@lru_cache(maxsize=None)
def builtin_group(label: str) -> FiniteGroup:
    """Named groups: ``Z_n``, ``S_3..S_5``, ``A_4``, ``A_5``, ``D_4``, ``Q_8``, ``2I``."""
    key = label.replace("_", "").upper()
    m = re.fullmatch(r"Z(\d+)", key)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise GroupError("Z_n needs n >= 1")
        G = cyclic_group(n, f"Z{n}")
        G.symbols = {"g": 1 % n}
        return G
    if key in ("S3", "S4", "S5"):
        d = int(key[1])
        gens = ["(12)", "(" + "".join(str(i) for i in range(1, d + 1)) + ")"]
        return _perm_group(gens, d, key)
    if key == "S1" or key == "S2":
        d = int(key[1])
        return _perm_group(["(12)"] if d == 2 else [], d, key)
    if key == "A4":
        return _perm_group(["(123)", "(12)(34)"], 4, key)
    if key == "A5":
        return _perm_group(["(123)", "(345)"], 5, key)
    if key == "D4":
        G = _perm_group(["(1234)", "(13)"], 4, key)
        G.symbols = {"r": G.index(parse_cycles("(1234)", 4)), "s": G.index(parse_cycles("(13)", 4))}
        G.names = _word_names(G, G.symbols)
        return G
    if key == "Q8":
        G = FiniteGroup.from_generators([Q_I, Q_J], lambda a, b: a * b, Q_ONE, "Q8")
        sym = {"i": G.index(Q_I), "j": G.index(Q_J), "k": G.index(Q_K), "-1": G.index(-Q_ONE)}
        G.symbols = sym
        names = {G.identity: "1", sym["-1"]: "-1"}
        for s in "ijk":
            names[sym[s]] = s
            names[G.mul(sym["-1"], sym[s])] = "-" + s
        G.names = names
        return G
    if key == "2I":
        half = Fraction(1, 2)
        s = Quaternion(half, half, half, half)
        t = Quaternion(PHI * half, PHI.inv() * half, half, 0)
        G = FiniteGroup.from_generators([s, t], lambda a, b: a * b, Q_ONE, "2I", limit=200)
        G.symbols = {"s": G.index(s), "t": G.index(t), "-1": G.index(-Q_ONE)}
        G.names = _word_names(G, {"s": G.symbols["s"], "t": G.symbols["t"]})
        return G
    raise DomainError(f"unknown group {label!r}")


_TOKEN = re.compile(r"([a-z])(?:\^(-?\d+))?")


def parse_element(G: FiniteGroup, token: str) -> int:
    """Resolve a DSL token: cycle notation for permutation groups, words otherwise."""
    token = token.strip()
    if token in ("e", "1", ""):
        return G.identity
    if token.startswith("("):
        degree = getattr(G, "degree", None)
        if degree is None:
            raise GroupError(f"{G.label} is not a permutation group")
        return G.index(parse_cycles(token, degree))
    symbols = getattr(G, "symbols", {})
    x = G.identity
    if token.startswith("-"):
        if "-1" not in symbols:
            raise GroupError(f"no central -1 in {G.label}")
        x = symbols["-1"]
        token = token[1:]
        if token == "1":
            return x
    pos = 0
    while pos < len(token):
        m = _TOKEN.match(token, pos)
        if not m or m.group(1) not in symbols:
            raise GroupError(f"cannot parse element {token!r} of {G.label}")
        e = int(m.group(2)) if m.group(2) else 1
        x = G.mul(x, G.power(symbols[m.group(1)], e))
        pos = m.end()
    return x


# -- dual embeddings ------------------------------------------------------------------


@dataclass
class DualEmbedding:
    group: object
    gens: list
    algebra: GroupAlgebra
    u: MagicUnitary
    blocks: list[MagicUnitary] = field(default_factory=list)

    @property
    def layout(self) -> EmbeddingLayout:
        names = [self.group.name(g) for g in self.gens]
        sizes = {nm: b.n for nm, b in zip(names, self.blocks)}
        return EmbeddingLayout.from_sequence(names, sizes)

    @property
    def ranges(self) -> list[tuple[int, int]]:
        out, pos = [], 0
        for b in self.blocks:
            out.append((pos, pos + b.n))
            pos += b.n
        return out


def dual_embedding(gamma, gens: Sequence, algebra: GroupAlgebra | None = None) -> DualEmbedding:
    """``diag(u^{g_1}, ..., u^{g_k})`` over ``C*(Gamma)``; no blocks means the trivial one."""
    A = algebra if algebra is not None else group_algebra(gamma)
    gens = list(gens) or [gamma.identity]
    blocks = [fourier_magic(A, g) for g in gens]
    return DualEmbedding(gamma, gens, A, block_diag(blocks), blocks)


def rep_equivalent(gamma, g, h, algebra: GroupAlgebra | None = None) -> bool:
    A = algebra if algebra is not None else group_algebra(gamma)
    if gamma.element_order(g) != gamma.element_order(h):
        return False
    return equivalent(fourier_magic(A, g), fourier_magic(A, h)) is not None


def _rep_classes(gamma, reps, A) -> list[list]:
    """Group ``reps`` into equivalence classes of their Fourier blocks."""
    blocks = {g: fourier_magic(A, g) for g in reps}
    buckets: dict = {}
    for g in reps:
        key = (blocks[g].n, frozenset(blocks[g].distinct_entries()))
        buckets.setdefault(key, []).append(g)
    classes = []
    for members in buckets.values():
        pending = list(members)
        while pending:
            head = pending.pop(0)
            cls = [head]
            rest = []
            for g in pending:
                (cls if equivalent(blocks[head], blocks[g]) is not None else rest).append(g)
            pending = rest
            classes.append(cls)
    classes.sort(key=lambda c: (blocks[c[0]].n, _sort_key(c[0])))
    return classes


def _sort_key(g):
    return g if isinstance(g, int) else (len(g), g)


def totality_check(gamma, reps: Sequence | None = None, algebra: GroupAlgebra | None = None) -> dict:
    """Vanishing products ``u^p_ij u^q_kl`` between inequivalent Fourier blocks.

    Fourier blocks are circulant, so a product only depends on ``(i-j, k-l)``;
    each vanishing difference pair is expanded to all index quadruples.
    """
    A = algebra if algebra is not None else group_algebra(gamma)
    if reps is None:
        reps = list(gamma)
    classes = _rep_classes(gamma, list(reps), A)
    reprs = [c[0] for c in classes]
    blocks = {g: fourier_magic(A, g) for g in reprs}
    witnesses = []
    for a in range(len(reprs)):
        for b in range(len(reprs)):
            if a == b:
                continue
            p, q = reprs[a], reprs[b]
            up, uq = blocks[p], blocks[q]
            Np, Nq = up.n, uq.n
            for d1 in range(Np):
                x = up.entries[d1][0]
                for d2 in range(Nq):
                    if (x * uq.entries[d2][0]).is_zero():
                        for j in range(Np):
                            for l_ in range(Nq):
                                witnesses.append({
                                    "p": gamma.name(p), "q": gamma.name(q),
                                    "i": (j + d1) % Np + 1, "j": j + 1,
                                    "k": (l_ + d2) % Nq + 1, "l": l_ + 1,
                                })
    return {
        "group": getattr(gamma, "label", None),
        "classes": [[gamma.name(g) for g in c] for c in classes],
        "total": not witnesses,
        "witnesses": witnesses,
    }


def k_matrix_test(gamma, g, h) -> bool:
    """True when some element occurs exactly once in ``K = [g^m h^n]``."""
    Ng, Nh = gamma.element_order(g), gamma.element_order(h)
    counts: dict = {}
    for m in range(1, Ng + 1):
        gm = gamma.power(g, m)
        for n in range(1, Nh + 1):
            x = gamma.mul(gm, gamma.power(h, n))
            counts[x] = counts.get(x, 0) + 1
    return any(c == 1 for c in counts.values())


def _shift_perm(N: int, ranges, shifts) -> tuple[int, ...]:
    img = list(range(N))
    for (s, e), l_ in zip(ranges, shifts):
        n = e - s
        for t in range(n):
            img[s + t] = s + (t + l_) % n
    return tuple(img)


def total_theorem_generators(emb: DualEmbedding, orb: OrbitalPartition | None = None) -> PermGroup:
    """Shifts inside blocks of each type, plus the S3 reflection on lone size-3 blocks."""
    from .graphs import preserves_orbitals

    rep = totality_check(emb.group, emb.gens, emb.algebra)
    if not rep["total"]:
        raise DomainError("the generators are not total")
    orb = orb if orb is not None else orbitals(emb.u)
    N = emb.u.n
    types: list = []
    for g in emb.gens:
        if g not in types:
            types.append(g)
    gens = []
    for t in types:
        shifts = [1 if g == t else 0 for g in emb.gens]
        if all(emb.blocks[k].n == 1 for k, g in enumerate(emb.gens) if g == t):
            continue
        sigma = _shift_perm(N, emb.ranges, shifts)
        if not preserves_orbitals(sigma, orb):
            raise TheoremViolation(f"block shift for {emb.group.name(t)} moves an orbital")
        gens.append(sigma)
    for t in types:
        idx = [k for k, g in enumerate(emb.gens) if g == t]
        if len(idx) == 1 and emb.blocks[idx[0]].n == 3:
            s, _ = emb.ranges[idx[0]]
            img = list(range(N))
            img[s + 1], img[s + 2] = s + 2, s + 1
            tau = tuple(img)
            if not preserves_orbitals(tau, orb, symmetric=True):
                raise TheoremViolation("S3 reflection does not preserve the undirected orbitals")
            gens.append(tau)
    if not gens:
        gens = [identity_perm(N)]
    return PermGroup(N, gens)


def free_product_lift(emb: DualEmbedding) -> DualEmbedding:
    """Replace each ``u^{g_i}`` by ``u^{h_i}`` over ``Z_{N_1} * ... * Z_{N_k}``."""
    types: list = []
    for g in emb.gens:
        if g not in types:
            types.append(g)
    orders = [emb.group.element_order(g) for g in types]
    F = FreeProductGroup(orders)
    A = group_algebra(F)
    lifted = [F.generator(types.index(g)) for g in emb.gens]
    blocks = [fourier_magic(A, h) if h else MagicUnitary([[A.one()]], A.hopf, A) for h in lifted]
    out = DualEmbedding(F, lifted, A, block_diag(blocks), blocks)
    if orbitals(out.u).as_partition() != orbitals(emb.u).as_partition():
        raise TheoremViolation("free-product lift changed the orbital partition")
    return out


def regular_action(G: FiniteGroup) -> list[tuple[int, ...]]:
    """Left-multiplication permutations ``x -> g x`` indexed like ``G``."""
    return [tuple(G.mul(g, x) for x in G) for g in G]


@dataclass
class Liberation:
    u: MagicUnitary
    algebra: TensorAlgebra
    G: FiniteGroup
    gamma: FiniteGroup
    action: list

    def character_group(self):
        """Characters, their permutation images and the convolution table."""
        chars = characters(self.algebra)
        perms = [phi_permutation(self.u, c) for c in chars]
        index = {p: i for i, p in enumerate(perms)}
        table = []
        hom_ok = True
        for c1, p1 in zip(chars, perms):
            row = []
            for c2, p2 in zip(chars, perms):
                conv = convolve_characters(self.algebra.hopf, c1, c2)
                pc = phi_permutation(self.u, conv)
                hom_ok = hom_ok and pc == compose(p1, p2)
                row.append(index.get(pc, -1))
            table.append(row)
        return chars, perms, table, hom_ok


def liberation(G: FiniteGroup, gamma: FiniteGroup, gens: Sequence[int] | None = None,
               action: Sequence[Sequence[int]] | None = None) -> Liberation:
    """``diag(u^G (x) 1, 1 (x) u^Gamma)`` over ``C(G) (x) C*(Gamma)`` for perfect ``Gamma``."""
    Q, _ = abelianization(gamma)
    if Q.order != 1:
        raise DomainError(f"{gamma.label or 'group'} is not perfect (abelianization of order {Q.order})")
    if gens is None:
        gens = [parse_element(gamma, "(123)"), parse_element(gamma, "(345)")] if gamma.label == "A5" else []
    action = [tuple(p) for p in (action if action is not None else regular_action(G))]
    N = len(action[0])
    CG = function_algebra(G)
    CH = group_algebra(gamma)
    T = tensor_algebra(CG, CH)
    # u^G_ij is the indicator of {sigma : sigma(j) = i}
    uG = [[CG.element({(s, 0, 0): ONE for s in G if action[s][j] == i}) for j in range(N)] for i in range(N)]
    top = MagicUnitary([[T.left(x) for x in row] for row in uG], T.hopf, T)
    blocks = [top]
    for h in gens:
        f = fourier_magic(CH, h)
        blocks.append(MagicUnitary([[T.right(x) for x in row] for row in f.entries], T.hopf, T))
    return Liberation(block_diag(blocks), T, G, gamma, action)
