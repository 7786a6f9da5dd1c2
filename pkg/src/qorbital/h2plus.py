"""The hyperoctahedral quantum group H2+ through its universal 4x4 pattern.

Degree-2 vanishing questions are settled by two sound rules only: a product
of distinct projections sharing a row or column of the pattern is zero, and a
product that is nonzero in the concrete model is nonzero.  Anything else is
reported as undecided.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product as iproduct
from typing import Iterable, Sequence

from .algebra import MultiMatrixAlgebra
from .cyclotomic import ONE
from .errors import TheoremViolation, Undecided
from .groups import PermGroup
from .magic import EmbeddingLayout, MagicUnitary, verify_magic
from .orbitals import OrbitalPartition, orbitals_from_table

SYMBOLS = ("p11", "q11", "p12", "q12", "p21", "q21", "p22", "q22")

PATTERN = (
    ("p11", "q11", "p12", "q12"),
    ("q11", "p11", "q12", "p12"),
    ("p21", "q21", "p22", "q22"),
    ("q21", "p21", "q22", "p22"),
)

UNIT = "1"


class SymSum:
    """A sum of pattern symbols, or the unit."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[str]):
        self.terms = tuple(sorted(terms))

    @property
    def is_unit(self) -> bool:
        return self.terms == (UNIT,)

    def __eq__(self, other):
        return isinstance(other, SymSum) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        return "+".join(self.terms) if self.terms else "0"


ZERO_SUM = SymSum(())
ONE_SUM = SymSum((UNIT,))


class H2PlusPattern:
    """Rewriting table plus a concrete model over ``M_2 + M_2``."""

    def __init__(self):
        self.forced_zero = set()
        for line in list(PATTERN) + [tuple(r[j] for r in PATTERN) for j in range(4)]:
            for a in line:
                for b in line:
                    if a != b:
                        self.forced_zero.add((a, b))
        self.algebra = MultiMatrixAlgebra([2, 2])
        self.model = self._model()
        self._decided: dict = {}

    def _model(self) -> dict:
        A = self.algebra
        half = Fraction(1, 2)

        def rank_one(b, r):
            return A.basis_element((b, r, r))

        def diag45(b, sign):
            return A.element({(b, 0, 0): half, (b, 1, 1): half, (b, 0, 1): sign * half, (b, 1, 0): sign * half})

        return {
            "p11": rank_one(0, 0), "q11": rank_one(0, 1),
            "p22": diag45(0, 1), "q22": diag45(0, -1),
            "p12": rank_one(1, 0), "q12": rank_one(1, 1),
            "p21": diag45(1, 1), "q21": diag45(1, -1),
            UNIT: A.one(),
        }

    def value(self, s: SymSum):
        out = self.algebra.zero()
        for t in s.terms:
            out = out + self.model[t]
        return out

    def pattern_magic(self) -> "SymbolicMagic":
        return SymbolicMagic(self, [[SymSum((s,)) for s in row] for row in PATTERN])

    def model_magic(self) -> MagicUnitary:
        return MagicUnitary([[self.model[s] for s in row] for row in PATTERN], None, self.algebra)

    def symbol_product_nonzero(self, a: str, b: str) -> bool | None:
        """Decide ``a*b != 0`` for symbols, ``None`` when undecided."""
        if a == b:
            return not self.model[a].is_zero() or None
        if (a, b) in self.forced_zero:
            return False
        if not (self.model[a] * self.model[b]).is_zero():
            return True
        return None

    def product_nonzero(self, x: SymSum, y: SymSum) -> bool | None:
        key = (x, y)
        if key in self._decided:
            return self._decided[key]
        if not x.terms or not y.terms:
            res = False
        elif x.is_unit or y.is_unit:
            other = y if x.is_unit else x
            res = True if other.is_unit else self._sum_nonzero(other)
        elif all((a, b) in self.forced_zero for a in x.terms for b in y.terms):
            res = False
        elif not (self.value(x) * self.value(y)).is_zero():
            res = True
        else:
            res = None
        self._decided[key] = res
        return res

    def _sum_nonzero(self, x: SymSum) -> bool | None:
        if not self.value(x).is_zero():
            return True
        return None

    def completeness(self) -> list[tuple[str, str]]:
        """Ordered symbol pairs neither rule decides (should be empty)."""
        return [(a, b) for a in SYMBOLS for b in SYMBOLS if self.symbol_product_nonzero(a, b) is None]

    def model_violations(self) -> list[str]:
        return verify_magic(self.model_magic())

    def classical_perms(self, m: "SymbolicMagic | None" = None) -> list[tuple[int, ...]]:
        """Permutation images of the characters: 0/1 symbol assignments giving permutation matrices."""
        m = m or self.pattern_magic()
        out = []
        for bits in iproduct((0, 1), repeat=len(SYMBOLS)):
            val = dict(zip(SYMBOLS, bits))
            val[UNIT] = 1
            M = [[sum(val[t] for t in x.terms) for x in row] for row in m.entries]
            if all(sorted(r) == [0] * (m.n - 1) + [1] for r in M) and all(
                    sorted(M[i][j] for i in range(m.n)) == [0] * (m.n - 1) + [1] for j in range(m.n)):
                perm = [0] * m.n
                for i in range(m.n):
                    for j in range(m.n):
                        if M[i][j]:
                            perm[j] = i
                out.append(tuple(perm))
        return sorted(set(out))

    def classical_version(self, m: "SymbolicMagic | None" = None) -> PermGroup:
        m = m or self.pattern_magic()
        return PermGroup.from_elements(m.n, self.classical_perms(m))


@lru_cache(maxsize=None)
def h2p_pattern() -> H2PlusPattern:
    return H2PlusPattern()


class SymbolicMagic:
    """Magic matrix whose entries are symbol sums of one H2+ pattern."""

    def __init__(self, pattern: H2PlusPattern, entries: Sequence[Sequence[SymSum]]):
        self.pattern = pattern
        self.entries = [list(r) for r in entries]
        self.n = len(self.entries)
        self.hopf = None

    @property
    def concrete(self) -> MagicUnitary:
        return MagicUnitary([[self.pattern.value(x) for x in row] for row in self.entries], None,
                            self.pattern.algebra)

    def product_table(self, strict: bool = True):
        ids: dict = {}
        ent = [[ids.setdefault(x, len(ids)) for x in row] for row in self.entries]
        elems = list(ids)
        nz = []
        for a in elems:
            row = []
            for b in elems:
                d = self.pattern.product_nonzero(a, b)
                if d is None and strict:
                    raise Undecided(f"cannot decide whether ({a})({b}) vanishes")
                row.append(d)
            nz.append(row)
        return ent, nz

    def entry_nonzero(self) -> list[bool]:
        ids: dict = {}
        for row in self.entries:
            for x in row:
                ids.setdefault(x, len(ids))
        out = []
        for x in ids:
            if not x.terms:
                out.append(False)
            else:
                d = self.pattern._sum_nonzero(x) if not x.is_unit else True
                if d is None:
                    raise Undecided(f"cannot decide whether {x} vanishes")
                out.append(d)
        return out

    def conjugate(self, sigma: Sequence[int]) -> "SymbolicMagic":
        inv = [0] * self.n
        for i, v in enumerate(sigma):
            inv[v] = i
        return SymbolicMagic(self.pattern, [[self.entries[inv[i]][inv[j]] for j in range(self.n)]
                                            for i in range(self.n)])

    def __eq__(self, other):
        return isinstance(other, SymbolicMagic) and self.entries == other.entries

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.entries))


def symbolic_block_diag(blocks: Sequence[SymbolicMagic]) -> SymbolicMagic:
    N = sum(b.n for b in blocks)
    rows = [[ZERO_SUM] * N for _ in range(N)]
    pos = 0
    for b in blocks:
        for i in range(b.n):
            for j in range(b.n):
                rows[pos + i][pos + j] = b.entries[i][j]
        pos += b.n
    return SymbolicMagic(blocks[0].pattern, rows)


def xprime(pattern: H2PlusPattern | None = None) -> SymbolicMagic:
    """``x' = [[p11+q11, p12+q12], [p21+q21, p22+q22]]``."""
    P = pattern or h2p_pattern()
    return SymbolicMagic(P, [[SymSum((f"p{i}{j}", f"q{i}{j}")) for j in (1, 2)] for i in (1, 2)])


def unit_block(pattern: H2PlusPattern | None = None) -> SymbolicMagic:
    return SymbolicMagic(pattern or h2p_pattern(), [[ONE_SUM]])


def h2p_engine() -> dict:
    """Pattern, model checks, completeness and the orbital partition."""
    P = h2p_pattern()
    u = P.pattern_magic()
    undecided = P.completeness()
    if undecided:
        raise Undecided(f"undecided symbol pairs: {undecided}")
    orb = orbitals_from_table(*u.product_table())
    return {"pattern": P, "magic": u, "model_violations": P.model_violations(),
            "forced_zero": sorted(P.forced_zero), "orbitals": orb}


def _position_of(symbol: str) -> tuple[int, int]:
    for i, row in enumerate(PATTERN):
        for j, s in enumerate(row):
            if s == symbol:
                return i, j
    raise KeyError(symbol)


def h2p_xprime_check() -> dict:
    """``x'`` is magic and compatible with ``Delta``, ``epsilon`` and ``S`` of the pattern."""
    P = h2p_pattern()
    x = xprime(P)
    report = {"magic": [], "delta": {}, "epsilon": {}, "antipode": {}}
    # magic: entries are sums of pairwise orthogonal symbols, rows/columns regroup pattern rows
    for i in range(2):
        for j in range(2):
            t = x.entries[i][j].terms
            if not all((a, b) in P.forced_zero for a in t for b in t if a != b):
                report["magic"].append(f"x'_{i + 1}{j + 1} is not a sum of orthogonal projections")
    for i in range(2):
        row = Counter(t for j in range(2) for t in x.entries[i][j].terms)
        if row != Counter(PATTERN[2 * i]):
            report["magic"].append(f"row {i + 1} of x' is not a pattern row")
        col = Counter(t for r in range(2) for t in x.entries[r][i].terms)
        if col != Counter(r[2 * i] for r in PATTERN):
            report["magic"].append(f"column {i + 1} of x' is not a pattern column")
    for i in range(2):
        for j in range(2):
            # Delta(u_ab) = sum_c u_ac (x) u_cb, summed over the symbols of x'_ij
            lhs = Counter()
            for s in x.entries[i][j].terms:
                a, b = _position_of(s)
                # a symbol occurs twice in the pattern; both give the same Delta
                for c in range(4):
                    lhs[(PATTERN[a][c], PATTERN[c][b])] += 1
            rhs = Counter()
            for k in range(2):
                for s in x.entries[i][k].terms:
                    for t in x.entries[k][j].terms:
                        rhs[(s, t)] += 1
            report["delta"][(i + 1, j + 1)] = {"terms": sum(lhs.values()), "ok": lhs == rhs}
            eps = sum(1 for s in x.entries[i][j].terms if _position_of(s)[0] == _position_of(s)[1])
            report["epsilon"][(i + 1, j + 1)] = eps
            anti = SymSum(PATTERN[_position_of(s)[1]][_position_of(s)[0]] for s in x.entries[i][j].terms)
            report["antipode"][(i + 1, j + 1)] = anti == x.entries[j][i]
    bad = list(report["magic"])
    bad += [f"Delta fails at {k}" for k, v in report["delta"].items() if not v["ok"]]
    bad += [f"epsilon fails at {k}" for k, v in report["epsilon"].items() if v != (1 if k[0] == k[1] else 0)]
    bad += [f"S fails at {k}" for k, v in report["antipode"].items() if not v]
    if bad:
        raise TheoremViolation("; ".join(bad))
    report["ok"] = True
    return report


def replacement(layout: EmbeddingLayout) -> SymbolicMagic:
    """``u0 -> u^{H2+}``, ``x -> x'``, ``one -> 1``."""
    P = h2p_pattern()
    table = {"u0": P.pattern_magic(), "x": xprime(P), "one": unit_block(P)}
    blocks = []
    for r in layout.instances:
        if r not in table:
            raise ValueError(f"representation {r!r} has no H2+ replacement")
        blocks.append(table[r])
    return symbolic_block_diag(blocks)


def section8_partial(layout: EmbeddingLayout | list) -> dict:
    """The H2+ replacement of a ``{u0, x, one}`` layout has the same orbitals as the G0 layout."""
    from .kac_paljutkin import kp_embedding, kp_layout
    from .orbitals import orbitals

    if not isinstance(layout, EmbeddingLayout):
        layout = kp_layout(layout)
    g0 = orbitals(kp_embedding(layout))
    h = orbitals_from_table(*replacement(layout).product_table())
    same = g0.as_partition() == h.as_partition()
    if not same:
        raise TheoremViolation(f"orbitals of the H2+ replacement differ for {layout}")
    return {"layout": str(layout), "n": layout.N, "classes": len(g0), "match": same}


# the graph drawn in the ten-vertex illustration, 1-based
FIGURE_EDGES = [
    (1, 2), (2, 9), (2, 5), (1, 9), (1, 5), (6, 8), (6, 9), (2, 6), (1, 6), (5, 9),
    (5, 7), (8, 10), (4, 8), (3, 8), (7, 10), (4, 10), (3, 10), (3, 7), (4, 7), (3, 4),
]


def replacement_family(layout: EmbeddingLayout) -> list[SymbolicMagic]:
    """Symbol-consistent H2+ candidates for a layout over ``{u0, w, x, one}``.

    The first ``u0`` block keeps ``u^{H2+}``; every other size-4 block ranges
    over the distinct conjugates of ``u^{H2+}``; ``x`` ranges over ``x'``
    and its ``(12)``-conjugate.
    """
    P = h2p_pattern()
    base = P.pattern_magic()
    conj4 = list(dict.fromkeys(base.conjugate(s) for s in permutations(range(4))))
    xs = list(dict.fromkeys([xprime(P), xprime(P).conjugate((1, 0))]))
    options = []
    first = True
    for r in layout.instances:
        if r == "u0" and first:
            options.append([base])
            first = False
        elif r in ("u0", "w"):
            options.append(conj4)
        elif r in ("x", "y", "z"):
            options.append(xs)
        elif r == "one":
            options.append([unit_block(P)])
        else:
            raise ValueError(f"no replacement for {r!r}")
    return [symbolic_block_diag(list(c)) for c in iproduct(*options)]


def ten_vertex_experiment(with_aut: bool = True) -> dict:
    """Which G0-invariant graphs on ten vertices also carry an H2+ action from the family."""
    from .graphs import (Graph, acts_on_batch, automorphism_group, bichon_partial_batch,
                         invariant_graphs, orbital_preserving_group)
    from .kac_paljutkin import kp_embedding, kp_layout
    from .orbitals import orbitals

    layout = kp_layout(["u0", "w", "x"])
    u = kp_embedding(layout)
    orb = orbitals(u)
    graphs = invariant_graphs(u, orb, verify=False)
    g0 = acts_on_batch(u, graphs)
    family = replacement_family(layout)
    verdicts = ["false"] * len(graphs)
    witness: list = [None] * len(graphs)
    pending = set(range(len(graphs)))
    for w_idx, m in enumerate(family):
        ent, nz = m.product_table(strict=False)
        res = bichon_partial_batch(ent, nz, graphs)
        for g_idx in sorted(pending):
            if res[g_idx]:
                verdicts[g_idx], witness[g_idx] = "true", w_idx
                pending.discard(g_idx)
            elif res[g_idx] is None:
                verdicts[g_idx] = "undecidable"
    # the concrete model of a certified witness must act as well
    certified = [i for i in range(len(graphs)) if witness[i] is not None]
    by_member: dict = {}
    for i in certified:
        by_member.setdefault(witness[i], []).append(i)
    for w_idx, idxs in by_member.items():
        m = family[w_idx]
        table = m.product_table(strict=False)
        table = (table[0], [[bool(v) for v in r] for r in table[1]])
        if not all(acts_on_batch(m.concrete, [graphs[i] for i in idxs], table)):
            raise TheoremViolation("model contradicts a certified H2+ action")
    figure = Graph.from_one_based(10, FIGURE_EDGES)
    fig_degrees = sorted(figure.degrees())
    full = len(graphs) - 1
    aut: dict = {}
    rows = []
    for idx, X in enumerate(graphs):
        order = None
        if with_aut:
            # a graph and its complement inside the layout have the same symmetries
            key = min(idx, full ^ idx)
            if key not in aut:
                aut[key] = automorphism_group(X).order
            order = aut[key]
        rows.append({
            "graph": idx,
            "edges": len(X.edges),
            "g0_acts": g0[idx],
            "h2p_acts": verdicts[idx],
            "h2p_witness": witness[idx],
            "aut_order": order,
            "matches_figure_degrees": sorted(X.degrees()) == fig_degrees,
            "is_figure": X == figure,
        })
    pres = orbital_preserving_group(u, orb=orb)
    return {
        "layout": str(layout),
        "nondiagonal_pairs": len(orb.inverse_pairs()),
        "graphs": len(graphs),
        "family_size": len(family),
        "orbital_preserving_order": pres.order,
        "rows": rows,
    }
