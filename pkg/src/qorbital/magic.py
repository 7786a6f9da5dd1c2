"""Magic unitaries: checks, Fourier blocks, layouts and equivalence."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import (
    Algebra,
    Element,
    GroupAlgebra,
    HopfData,
    generated_span,
    group_algebra,
    is_projection,
    t_add,
    t_simple,
    _distinct,
)
from .cyclotomic import ONE, ZERO, Cyclo, root_of_unity
from .errors import LayoutError
from .groups import perm_inverse


class MagicUnitary:
    """An ``n x n`` matrix of elements of one algebra, with optional Hopf data."""

    def __init__(self, entries: Sequence[Sequence[Element]], hopf: HopfData | None = None,
                 algebra: Algebra | None = None):
        self.entries = [list(row) for row in entries]
        self.n = len(self.entries)
        if any(len(row) != self.n for row in self.entries):
            raise LayoutError("magic unitary must be square")
        if algebra is None:
            if not self.n:
                raise LayoutError("empty matrix needs an explicit algebra")
            algebra = self.entries[0][0].alg
        self.algebra = algebra
        self.hopf = hopf

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, MagicUnitary):
            return NotImplemented
        return self.n == other.n and all(
            a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb))

    def __hash__(self):
        return hash(tuple(tuple(row) for row in self.entries))

    def __repr__(self):
        return f"MagicUnitary(n={self.n}, algebra={self.algebra!r})"

    def distinct_entries(self) -> list[Element]:
        return _distinct(x for row in self.entries for x in row)

    def product_table(self):
        """Entry ids and the nonzero table of pairwise entry products."""
        ids: dict = {}
        ent = []
        for row in self.entries:
            r = []
            for x in row:
                if x not in ids:
                    ids[x] = len(ids)
                r.append(ids[x])
            ent.append(r)
        elems = list(ids)
        nz = [[(not a.is_zero()) and (not b.is_zero()) and not (a * b).is_zero() for b in elems]
              for a in elems]
        return ent, nz

    @property
    def concrete(self) -> "MagicUnitary":
        return self

    def is_magic(self) -> bool:
        return not verify_magic(self)

    def pretty(self) -> str:
        return "\n".join(" | ".join(str(x) for x in row) for row in self.entries)


def verify_magic(u: MagicUnitary) -> list[str]:
    """Every violated projection, row-sum and column-sum condition."""
    out = []
    one = u.algebra.one()
    for i, row in enumerate(u.entries):
        for j, x in enumerate(row):
            if not is_projection(x):
                out.append(f"entry ({i + 1},{j + 1}) is not a projection")
    for i in range(u.n):
        s = u.algebra.zero()
        for j in range(u.n):
            s = s + u.entries[i][j]
        if s != one:
            out.append(f"row {i + 1} does not sum to 1")
    for j in range(u.n):
        s = u.algebra.zero()
        for i in range(u.n):
            s = s + u.entries[i][j]
        if s != one:
            out.append(f"column {j + 1} does not sum to 1")
    return out


def fourier_magic(gamma, g, algebra: GroupAlgebra | None = None) -> MagicUnitary:
    """``u_kl = (1/N) sum_{m=1..N} w**((k-l)m) g**m`` with ``w = exp(2 pi i/N)``."""
    if isinstance(gamma, GroupAlgebra):
        algebra, gamma = gamma, gamma.group
    if algebra is None:
        algebra = group_algebra(gamma)
    N = gamma.element_order(g)
    if N is None:
        raise ValueError("Fourier blocks need an element of finite order")
    powers = [gamma.power(g, m) for m in range(N)]
    inv = Fraction(1, N)
    rows = []
    for k in range(N):
        row = []
        for l_ in range(N):
            coords = {}
            for m in range(N):
                coords[powers[m]] = root_of_unity(N, (k - l_) * m) * inv
            row.append(algebra.element(coords))
        rows.append(row)
    return MagicUnitary(rows, algebra.hopf, algebra)


def fourier_inversion(u: MagicUnitary) -> Element:
    """``sum_k w**(1-k) u_k1`` (1-based ``k``), which recovers ``g``."""
    N = u.n
    out = u.algebra.zero()
    for k in range(N):
        out = out + u.entries[k][0] * root_of_unity(N, -k)
    return out


def is_circulant(u: MagicUnitary) -> bool:
    n = u.n
    return all(u.entries[i][j] == u.entries[(i + s) % n][(j + s) % n]
               for i in range(n) for j in range(n) for s in range(1, n))


# -- layouts -------------------------------------------------------------------------


@dataclass
class EmbeddingLayout:
    """Block-diagonal arrangement: ``blocks`` lists ``(rep_id, multiplicity)``."""

    blocks: list[tuple[str, int]]
    sizes: dict[str, int]
    generation: bool | None = None
    source: str = ""

    def __post_init__(self):
        self.blocks = [(str(r), int(m)) for r, m in self.blocks if int(m) > 0]
        for r, _ in self.blocks:
            if r not in self.sizes:
                raise LayoutError(f"size of representation {r!r} unknown")

    @classmethod
    def from_sequence(cls, reps: Sequence[str], sizes: dict[str, int], **kw) -> "EmbeddingLayout":
        blocks: list[list] = []
        for r in reps:
            if blocks and blocks[-1][0] == r:
                blocks[-1][1] += 1
            else:
                blocks.append([r, 1])
        return cls([tuple(b) for b in blocks], dict(sizes), **kw)

    @property
    def instances(self) -> list[str]:
        return [r for r, m in self.blocks for _ in range(m)]

    @property
    def vertex_ranges(self) -> list[tuple[str, int, int]]:
        """``(rep_id, start, stop)`` per block instance, 0-based half-open."""
        out, pos = [], 0
        for r in self.instances:
            out.append((r, pos, pos + self.sizes[r]))
            pos += self.sizes[r]
        return out

    @property
    def N(self) -> int:
        return sum(self.sizes[r] * m for r, m in self.blocks)

    def __str__(self):
        return "diag(" + ", ".join(self.instances) + ")"


def direct_sum(layout: EmbeddingLayout, catalog: dict) -> MagicUnitary:
    blocks = [catalog[r] for r in layout.instances]
    if not blocks:
        raise LayoutError("empty layout")
    alg = blocks[0].algebra
    for r, b in zip(layout.instances, blocks):
        if b.n != layout.sizes[r]:
            raise LayoutError(f"block {r!r} has size {b.n}, layout says {layout.sizes[r]}")
        if not b.algebra.same(alg):
            raise LayoutError("catalog entries live over different algebras")
    return block_diag(blocks)


def block_diag(blocks: Sequence[MagicUnitary]) -> MagicUnitary:
    alg = blocks[0].algebra
    N = sum(b.n for b in blocks)
    zero = alg.zero()
    rows = [[zero] * N for _ in range(N)]
    pos = 0
    for b in blocks:
        for i in range(b.n):
            for j in range(b.n):
                rows[pos + i][pos + j] = b.entries[i][j]
        pos += b.n
    return MagicUnitary(rows, blocks[0].hopf, alg)


def trivial_magic(alg: Algebra, hopf: HopfData | None = None) -> MagicUnitary:
    return MagicUnitary([[alg.one()]], hopf if hopf is not None else alg.hopf, alg)


def permute_conjugate(u: MagicUnitary, sigma: Sequence[int]) -> MagicUnitary:
    """``P u P^-1`` where ``P`` sends basis vector ``j`` to ``sigma[j]``."""
    inv = perm_inverse(sigma)
    rows = [[u.entries[inv[i]][inv[j]] for j in range(u.n)] for i in range(u.n)]
    return MagicUnitary(rows, u.hopf, u.algebra)


def equivalent(u: MagicUnitary, v: MagicUnitary) -> tuple[int, ...] | None:
    """A permutation ``sigma`` with ``permute_conjugate(u, sigma) == v``, or ``None``."""
    n = u.n
    if v.n != n or not u.algebra.same(v.algebra):
        return None
    ids: dict = {}
    U = [[ids.setdefault(x, len(ids)) for x in row] for row in u.entries]
    V = [[ids.setdefault(x, len(ids)) for x in row] for row in v.entries]
    # v[sigma a][sigma b] == u[a][b]
    row_sig_u = [sorted(r) for r in U]
    row_sig_v = [sorted(r) for r in V]
    col_sig_u = [sorted(U[i][j] for i in range(n)) for j in range(n)]
    col_sig_v = [sorted(V[i][j] for i in range(n)) for j in range(n)]
    cands = [[b for b in range(n)
              if V[b][b] == U[a][a] and row_sig_v[b] == row_sig_u[a] and col_sig_v[b] == col_sig_u[a]]
             for a in range(n)]
    img = [-1] * n
    used = [False] * n

    def extend(a):
        if a == n:
            return True
        for b in cands[a]:
            if used[b]:
                continue
            if all(V[b][img[c]] == U[a][c] and V[img[c]][b] == U[c][a] for c in range(a)):
                img[a] = b
                used[b] = True
                if extend(a + 1):
                    return True
                used[b] = False
        img[a] = -1
        return False

    return tuple(img) if extend(0) else None


def is_transitive_magic_rep(u: MagicUnitary, h: HopfData | None = None) -> tuple[bool, list[str]]:
    """Nonzero entries plus compatibility with ``Delta``, ``epsilon`` and ``S``."""
    h = h if h is not None else u.hopf
    if h is None:
        raise ValueError("no Hopf data to check against")
    reasons = []
    n = u.n
    for i in range(n):
        for j in range(n):
            x = u.entries[i][j]
            tag = f"({i + 1},{j + 1})"
            if x.is_zero():
                reasons.append(f"entry {tag} is zero")
                continue
            D: dict = {}
            for k in range(n):
                D = t_add(D, t_simple(u.entries[i][k], u.entries[k][j]))
            if h.delta(x) != D:
                reasons.append(f"comultiplication fails at {tag}")
            if h.epsilon(x) != (ONE if i == j else ZERO):
                reasons.append(f"counit fails at {tag}")
            if h.antipode(x) != u.entries[j][i]:
                reasons.append(f"antipode fails at {tag}")
    return not reasons, reasons


def generates(u: MagicUnitary | Iterable[MagicUnitary]) -> tuple[bool, int]:
    """Whether the entries generate the whole algebra, and the generated dimension."""
    us = [u] if isinstance(u, MagicUnitary) else list(u)
    alg = us[0].algebra
    gens = _distinct(x for m in us for row in m.entries for x in row)
    span, _ = generated_span(alg, gens)
    dim = alg.dim
    return (dim is not None and span.rank == dim), span.rank


def enumerate_layouts(catalog: Sequence[tuple], N: int, require_generation: bool = False,
                      generation_test=None) -> list[EmbeddingLayout]:
    """All layouts with ``sum m_p N_p = N`` over pairwise inequivalent catalog reps.

    Catalog items are ``(rep_id, size)`` or ``(rep_id, MagicUnitary)``.  With
    ``require_generation`` a layout is kept only when the entries of the reps it
    uses generate the algebra (``generation_test`` overrides that test; it
    receives the set of rep ids in use).
    """
    if N < 1:
        raise LayoutError("N must be positive")
    items = []
    reps = {}
    for rid, data in catalog:
        if isinstance(data, MagicUnitary):
            reps[rid] = data
            items.append((rid, data.n))
        else:
            items.append((rid, int(data)))
    items.sort(key=lambda t: (t[1], t[0]))
    sizes = dict(items)
    cache: dict = {}

    def gen_ok(used: frozenset) -> bool:
        if used not in cache:
            if generation_test is not None:
                cache[used] = bool(generation_test(used))
            else:
                if any(r not in reps for r in used):
                    raise LayoutError("generation test needs magic unitaries in the catalog")
                cache[used] = generates([reps[r] for r in sorted(used)])[0]
        return cache[used]

    out = []

    def rec(idx, remaining, mults):
        if remaining == 0:
            blocks = [(items[i][0], m) for i, m in enumerate(mults) if m]
            used = frozenset(r for r, _ in blocks)
            flag = gen_ok(used) if require_generation else None
            if not require_generation or flag:
                out.append(EmbeddingLayout(blocks, sizes, generation=flag))
            return
        if idx == len(items):
            return
        size = items[idx][1]
        for m in range(remaining // size, -1, -1):
            rec(idx + 1, remaining - m * size, mults + [m])

    rec(0, N, [])
    out.sort(key=lambda L: [(sizes[r], r, -m) for r, m in L.blocks])
    return out
