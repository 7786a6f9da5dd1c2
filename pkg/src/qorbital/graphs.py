"""Graphs, quantum actions on them, and classical symmetry searches."""

from __future__ import annotations

import math
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

from . import _accel
from .cyclotomic import ONE
from .errors import ConstructionBug, InconsistencyError, InvalidGeneratingSet, ResourceError
from .groups import FiniteGroup, PermGroup, identity_perm
from .orbitals import OrbitalPartition, orbitals


class Graph:
    """Finite simple graph on ``0..n-1``; edges are stored as ``(i, j)`` with ``i < j``."""

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        self.n = n
        es = set()
        for e in edges:
            i, j = e
            if i == j:
                raise ValueError("loops are not allowed")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge {e} out of range")
            es.add((min(i, j), max(i, j)))
        self.edges = frozenset(es)
        self.adj = [set() for _ in range(n)]
        for i, j in self.edges:
            self.adj[i].add(j)
            self.adj[j].add(i)

    @classmethod
    def from_one_based(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, [(i - 1, j - 1) for i, j in edges])

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adj[i]

    def adjacency(self) -> list[list[int]]:
        return [[1 if j in self.adj[i] else 0 for j in range(self.n)] for i in range(self.n)]

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={len(self.edges)})"

    def sorted_edges(self, one_based: bool = True) -> list[tuple[int, int]]:
        s = 1 if one_based else 0
        return [(i + s, j + s) for i, j in sorted(self.edges)]

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        return cls.from_one_based(int(data["n"]), data["edges"])

    def relabel(self, sigma: Sequence[int]) -> "Graph":
        return Graph(self.n, [(sigma[i], sigma[j]) for i, j in self.edges])


def export_dot(X: Graph) -> str:
    lines = ["graph {"]
    for v in range(X.n):
        if not X.adj[v]:
            lines.append(f"  {v + 1};")
    for i, j in X.sorted_edges():
        lines.append(f"  {i} -- {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- quantum actions -----------------------------------------------------------------


def _commutes_exact(u, X: Graph) -> bool:
    """Method A: compare ``du`` and ``ud`` entry by entry."""
    n = u.n
    E = u.entries
    for i in range(n):
        for j in range(n):
            du = u.algebra.zero()
            for k in X.adj[i]:
                du = du + E[k][j]
            ud = u.algebra.zero()
            for k in X.adj[j]:
                ud = ud + E[i][k]
            if du != ud:
                return False
    return True


def _commutes_bichon(table, X: Graph) -> bool:
    """Method B: ``u_ij u_kl = 0`` whenever exactly one of ``ik``, ``jl`` is an edge."""
    ent, nz = table
    n = len(ent)
    for i in range(n):
        for k in range(n):
            eik = X.has_edge(i, k)
            for j in range(n):
                row = nz[ent[i][j]]
                for l_ in range(n):
                    if eik != X.has_edge(j, l_) and row[ent[k][l_]]:
                        return False
    return True


def acts_on(u, X: Graph, table=None) -> bool:
    """Whether the magic unitary commutes with the adjacency matrix of ``X``.

    Two independent computations must agree; disagreement is an engine bug.
    """
    if u.n != X.n:
        raise ValueError(f"size mismatch: magic unitary {u.n}, graph {X.n}")
    a = _commutes_exact(u.concrete, X)
    b = _commutes_bichon(table if table is not None else u.product_table(), X)
    if a != b:
        raise InconsistencyError(f"du=ud test disagrees with the vanishing criterion on {X!r}")
    return a


def entry_tensor(u) -> np.ndarray:
    """Integer array ``T[i, j, q]``: the entries of ``u`` scaled to a common denominator.

    ``q`` runs over (basis label, power-basis index) at the lcm conductor, so
    linear identities among entries can be tested exactly.
    """
    E = u.entries
    n = u.n
    labels, cond, den = {}, 1, 1
    for row in E:
        for x in row:
            for lab, c in x.sorted_items():
                labels.setdefault(lab, len(labels))
                cond = cond * c.n // math.gcd(cond, c.n)
                den = den * c.den // math.gcd(den, c.den)
    phi = len(ONE.lift(cond)) if cond > 1 else 1
    T = np.zeros((n, n, max(1, len(labels) * phi)), dtype=object)
    for i in range(n):
        for j in range(n):
            for lab, c in E[i][j].sorted_items():
                base = labels[lab] * phi
                for q, v in enumerate(c.lift(cond)):
                    T[i, j, base + q] = v * (den // c.den)
    if all(abs(int(v)) < 1 << 40 for v in T.flat):
        T = T.astype(np.int64)
    return T


def _adjacency_stack(graphs: Sequence[Graph], n: int) -> np.ndarray:
    A = np.zeros((len(graphs), n, n), dtype=np.int64)
    for b, X in enumerate(graphs):
        for i, j in X.edges:
            A[b, i, j] = A[b, j, i] = 1
    return A


def _constant_on(roots: Sequence[int], A: np.ndarray) -> np.ndarray:
    """Which adjacency matrices are constant on every pair class."""
    flat = A.reshape(len(A), -1)
    return (flat == flat[:, np.asarray(roots)]).all(axis=1)


def acts_on_batch(u, graphs: Sequence[Graph], table=None, chunk: int = 512) -> list[bool]:
    """``acts_on`` for many graphs at once, with the same two independent methods."""
    graphs = list(graphs)
    if not graphs:
        return []
    n = u.n
    if any(X.n != n for X in graphs):
        raise ValueError(f"size mismatch: magic unitary {n}")
    ent, nz = table if table is not None else u.product_table()
    roots, _ = _accel.pair_classes(ent, nz, n)
    T = entry_tensor(u.concrete)
    out = []
    for s in range(0, len(graphs), chunk):
        A = _adjacency_stack(graphs[s:s + chunk], n)
        AT = A.astype(T.dtype)
        du = np.einsum("bik,kjq->bijq", AT, T)
        ud = np.einsum("bkj,ikq->bijq", AT, T)
        a = (du == ud).reshape(len(A), -1).all(axis=1)
        b = _constant_on(roots, A)
        if (a != b).any():
            raise InconsistencyError("du=ud test disagrees with the vanishing criterion")
        out.extend(bool(v) for v in a)
    return out


def bichon_partial_batch(ent, nz, graphs: Sequence[Graph]) -> list[bool | None]:
    """Vanishing criterion with a tri-state product table (``None`` = undecided).

    True when no possibly-nonzero product joins pairs of different edge
    status, False when a certified nonzero one does, None otherwise.
    """
    n = len(ent)
    sure = [[v is True for v in row] for row in nz]
    maybe = [[v is not False for v in row] for row in nz]
    r_sure, _ = _accel.pair_classes(ent, sure, n)
    r_maybe = r_sure if sure == maybe else _accel.pair_classes(ent, maybe, n)[0]
    A = _adjacency_stack(list(graphs), n)
    ok = _constant_on(r_maybe, A)
    bad = ~_constant_on(r_sure, A)
    return [True if o else (False if x else None) for o, x in zip(ok, bad)]


def graph_of_orbitals(orb: OrbitalPartition, idxs: Iterable[int]) -> Graph:
    edges = []
    for o in idxs:
        for c in (o, orb.inverse[o]):
            edges.extend((i, k) for i, k in orb.classes[c] if i != k)
    return Graph(orb.n, edges)


def invariant_graphs(u, orb: OrbitalPartition | None = None, verify: bool = True) -> list[Graph]:
    """Every graph the embedding acts on: unions of inverse-closed orbital pairs."""
    orb = orb if orb is not None else orbitals(u)
    pairs = [o for o, _ in orb.inverse_pairs()]
    out = [graph_of_orbitals(orb, [pairs[b] for b in range(len(pairs)) if mask >> b & 1])
           for mask in range(1 << len(pairs))]
    if verify:
        for mask, ok in enumerate(acts_on_batch(u, out)):
            if not ok:
                raise InconsistencyError(f"orbital union {mask:b} is not invariant")
    return out


# -- symmetry search on edge-colored structures ----------------------------------------


class _Structure:
    """Complete directed graph with integer colors on ordered pairs (diagonal included)."""

    def __init__(self, C: Sequence[Sequence[int]]):
        self.C = [list(r) for r in C]
        self.n = len(C)

    def _refine(self, colors: list[int], n2: int) -> list[int]:
        """Joint colour refinement on two copies of the structure.

        ``colors`` has length ``2n``; vertex ``v`` of copy ``c`` is ``c*n + v``.
        """
        n, C = self.n, self.C
        cur = colors
        ncls = len(set(cur))
        while True:
            sigs = []
            for x in range(n2):
                base = (x // n) * n
                v = x - base
                row = C[v]
                col = [C[w][v] for w in range(n)]
                sig = (cur[x], tuple(sorted((row[w], col[w], cur[base + w]) for w in range(n))))
                sigs.append(sig)
            ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
            new = [ranks[s] for s in sigs]
            if len(ranks) == ncls:
                return new
            cur, ncls = new, len(ranks)

    def _search(self, pairs: list[tuple[int, int]]):
        """An automorphism extending the partial map ``pairs``, or ``None``."""
        n = self.n
        init = [0] * (2 * n)
        for k, (a, b) in enumerate(pairs):
            init[a] = k + 1
            init[n + b] = k + 1
        col = self._refine(init, 2 * n)
        left: dict = {}
        right: dict = {}
        for v in range(n):
            left.setdefault(col[v], []).append(v)
            right.setdefault(col[n + v], []).append(v)
        if {c: len(vs) for c, vs in left.items()} != {c: len(vs) for c, vs in right.items()}:
            return None
        cells = [c for c, vs in left.items() if len(vs) > 1]
        if not cells:
            img = [0] * n
            for c, vs in left.items():
                img[vs[0]] = right[c][0]
            C = self.C
            if all(C[img[i]][img[j]] == C[i][j] for i in range(n) for j in range(n)):
                return tuple(img)
            return None
        c = min(cells, key=lambda c: (len(left[c]), c))
        a = left[c][0]
        for b in right[c]:
            found = self._search(pairs + [(a, b)])
            if found is not None:
                return found
        return None

    def group(self) -> PermGroup:
        """Automorphism group via a stabilizer chain: order is the product of basic orbit sizes."""
        n = self.n
        base: list[int] = []
        gens: list[tuple] = []
        order = 1
        ident = identity_perm(n)
        while True:
            fixed = [(b, b) for b in base]
            init = [0] * (2 * n)
            for k, (a, _) in enumerate(fixed):
                init[a] = init[n + a] = k + 1
            col = self._refine(init, 2 * n)[:n]
            cells: dict = {}
            for v in range(n):
                cells.setdefault(col[v], []).append(v)
            open_cells = [vs for vs in cells.values() if len(vs) > 1]
            if not open_cells:
                break
            cell = min(open_cells, key=lambda vs: (len(vs), vs[0]))
            v = cell[0]
            level_gens = [g for g in gens if all(g[b] == b for b in base)]
            orbit = _orbit(v, level_gens)
            for w in cell:
                if w in orbit:
                    continue
                g = self._search(fixed + [(v, w)])
                if g is not None:
                    gens.append(g)
                    level_gens.append(g)
                    orbit = _orbit(v, level_gens)
            order *= len(orbit)
            base.append(v)
        gens = [g for g in gens if g != ident]
        return PermGroup(n, gens, order=order)


def _orbit(v: int, gens: Sequence[Sequence[int]]) -> set[int]:
    orb = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in orb:
                orb.add(y)
                stack.append(y)
    return orb


def automorphism_group(X: Graph, bound: int = 32) -> PermGroup:
    if X.n > bound:
        raise ResourceError(f"graph has {X.n} vertices, bound is {bound}")
    n = X.n
    C = [[2 if i == j else (1 if X.has_edge(i, j) else 0) for j in range(n)] for i in range(n)]
    return _Structure(C).group()


def automorphisms_naive(X: Graph) -> set[tuple[int, ...]]:
    """All automorphisms by scanning every permutation (small graphs only)."""
    if X.n > 9:
        raise ResourceError("naive permutation scan is limited to 9 vertices")
    E = X.edges
    out = set()
    for p in permutations(range(X.n)):
        if all((min(p[i], p[j]), max(p[i], p[j])) in E for i, j in E):
            out.add(p)
    return out


def automorphisms_backtrack(X: Graph, limit: int = 10 ** 6) -> set[tuple[int, ...]]:
    """All automorphisms by plain vertex-by-vertex backtracking.

    No refinement: candidates are only filtered by degree and by adjacency to
    the vertices mapped so far, so this stays independent of the refined search.
    """
    n = X.n
    order: list[int] = []
    seen = set()
    for s in range(n):
        if s in seen:
            continue
        queue = [s]
        seen.add(s)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(X.adj[v]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    deg = X.degrees()
    img = [-1] * n
    used = [False] * n
    out: set = set()

    def rec(k):
        if len(out) > limit:
            raise ResourceError("too many automorphisms")
        if k == n:
            out.add(tuple(img))
            return
        v = order[k]
        for w in range(n):
            if used[w] or deg[w] != deg[v]:
                continue
            if all(X.has_edge(v, order[t]) == X.has_edge(w, img[order[t]]) for t in range(k)):
                img[v] = w
                used[w] = True
                rec(k + 1)
                used[w] = False
                img[v] = -1

    rec(0)
    return out


def _class_matrix(orb: OrbitalPartition, symmetric: bool) -> list[list[int]]:
    M = orb.matrix()
    if symmetric:
        M = [[min(M[i][k], orb.inverse[M[i][k]]) for k in range(orb.n)] for i in range(orb.n)]
    return M


def orbital_preserving_group(u, symmetric: bool = True, orb: OrbitalPartition | None = None,
                             drop: int | None = None) -> PermGroup:
    """All permutations mapping every orbital to itself.

    With ``symmetric`` (the default) the constraint is on the undirected
    classes ``o u o^-1``, which is what a graph built from orbitals can see.
    ``drop`` removes one orbital class from the constraints (it is merged
    with its complement's colour 0 bucket) for the all-but-one check.
    """
    orb = orb if orb is not None else orbitals(u)
    M = _class_matrix(orb, symmetric)
    if drop is not None:
        dropped = {drop, orb.inverse[drop]} if symmetric else {drop}
        M = [[-1 if x in dropped else x for x in row] for row in M]
    return _Structure(M).group()


def preserves_orbitals(sigma: Sequence[int], orb: OrbitalPartition, symmetric: bool = False) -> bool:
    M = _class_matrix(orb, symmetric)
    n = orb.n
    return all(M[sigma[i]][sigma[k]] == M[i][k] for i in range(n) for k in range(n))


def frucht_obstruction(u, orb: OrbitalPartition | None = None, classical: PermGroup | None = None) -> dict:
    from .algebra import classical_version

    pres = orbital_preserving_group(u, orb=orb)
    cl = classical if classical is not None else classical_version(u)
    witness = None
    obstructed = not cl.contains_group(pres)
    if obstructed:
        if pres.order <= 5040:
            witness = min(g for g in pres.elements if g not in cl)
        else:
            witness = next(g for g in pres.generators if g not in cl)
    return {"preserving_group": pres, "classical_version": cl, "obstructed": obstructed, "witness": witness}


# -- Frucht graphs ---------------------------------------------------------------------


def default_schedule(k: int) -> tuple[int, int, int]:
    """Pendant path lengths for colour ``k``: two for directed gadgets, one for involutions."""
    return k, k + 1, k + 2


def frucht_graph(G: FiniteGroup, S: Sequence[int], schedule=default_schedule, verify: bool = True) -> Graph:
    """A graph whose automorphism group is ``G``, built from the Cayley digraph of ``(G, S)``.

    Vertex ``g`` of the result is group element ``g``; each colour-``k``
    directed edge ``g -> g s_k`` is replaced by a path ``g - a - b - g s_k``
    with pendant paths on ``a`` and ``b`` whose lengths encode colour and
    direction.  Involutions give one undirected edge subdivided once, the
    middle vertex carrying a longer pendant.
    """
    S = list(S)
    if G.identity in S:
        raise InvalidGeneratingSet("generating set contains the identity")
    if len(set(S)) != len(S):
        raise InvalidGeneratingSet("repeated generator")
    for s in S:
        if G.inv(s) != s and G.inv(s) in S:
            raise InvalidGeneratingSet("generating set contains a non-involution and its inverse")
    if len(G.generated(S)) != G.order:
        raise InvalidGeneratingSet("elements do not generate the group")
    edges: list[tuple[int, int]] = []
    nxt = G.order

    def new():
        nonlocal nxt
        nxt += 1
        return nxt - 1

    def pendant(v, length):
        prev = v
        for _ in range(length):
            w = new()
            edges.append((prev, w))
            prev = w

    for k, s in enumerate(S, start=1):
        la, lb, lm = schedule(k)
        if G.inv(s) == s:
            done = set()
            for g in G:
                h = G.mul(g, s)
                if (h, g) in done:
                    continue
                done.add((g, h))
                m = new()
                edges += [(g, m), (m, h)]
                pendant(m, lm)
        else:
            for g in G:
                h = G.mul(g, s)
                a, b = new(), new()
                edges += [(g, a), (a, b), (b, h)]
                pendant(a, la)
                pendant(b, lb)
    X = Graph(nxt, edges)
    if verify:
        aut = automorphism_group(X, bound=max(32, X.n))
        if aut.order != G.order:
            raise ConstructionBug(f"automorphism group has order {aut.order}, expected {G.order}")
        left = {tuple(G.mul(h, g) for g in G) for h in G}
        got = {tuple(p[:G.order]) for p in aut.elements}
        if got != left:
            raise ConstructionBug("automorphisms do not restrict to left translations")
    return X


def is_isomorphic_to(P: PermGroup, G: FiniteGroup) -> bool:
    from .groups import is_isomorphic_small

    return is_isomorphic_small(P.as_finite_group(), G)

