"""Finite groups, free products of cyclic groups and permutation groups."""

from __future__ import annotations

import re
from collections import deque
from math import gcd
from typing import Callable, Hashable, Iterable, Sequence

from .errors import DomainError


class GroupError(DomainError):
    pass


# -- permutations ------------------------------------------------------------
# A permutation of {0..n-1} is a tuple p with p[i] the image of i.


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """``p o q``: apply ``q`` first."""
    return tuple(p[x] for x in q)


def perm_inverse(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def identity_perm(n: int) -> tuple[int, ...]:
    return tuple(range(n))


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int | None = None) -> tuple[int, ...]:
    """Parse 1-based cycle notation such as ``(12)(345)`` or ``(1,10)``.

    ``e`` is the identity.  Without ``n`` the degree is the largest point.
    """
    text = text.strip()
    cycles: list[list[int]] = []
    if text not in ("e", "()", ""):
        pos = 0
        for m in _CYCLE.finditer(text):
            if m.start() != pos:
                raise GroupError(f"bad cycle notation {text!r}")
            body = m.group(1)
            pts = body.split(",") if "," in body else list(body)
            try:
                cyc = [int(x) - 1 for x in pts if x.strip()]
            except ValueError:
                raise GroupError(f"bad cycle notation {text!r}") from None
            if any(x < 0 for x in cyc) or len(set(cyc)) != len(cyc):
                raise GroupError(f"bad cycle {body!r}")
            cycles.append(cyc)
            pos = m.end()
        if pos != len(text):
            raise GroupError(f"bad cycle notation {text!r}")
    top = max((x for c in cycles for x in c), default=-1) + 1
    if n is None:
        n = top
    elif top > n:
        raise GroupError(f"{text!r} moves points beyond degree {n}")
    img = list(range(n))
    # cycles compose right to left, like the permutations they denote
    for cyc in reversed(cycles):
        step = list(range(n))
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            step[a] = b
        img = [step[x] for x in img]
    return tuple(img)


def cycle_string(p: Sequence[int]) -> str:
    """1-based cycle notation, ``e`` for the identity."""
    seen = set()
    out = []
    wide = len(p) >= 10
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = p[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = p[x]
        sep = "," if wide else ""
        out.append("(" + sep.join(str(c + 1) for c in cyc) + ")")
    return "".join(out) or "e"


def perm_order(p: Sequence[int]) -> int:
    order, seen = 1, set()
    for start in range(len(p)):
        if start in seen:
            continue
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            x = p[x]
            length += 1
        order = order * length // gcd(order, length)
    return order


def closure(gens: Iterable[Hashable], mul: Callable, identity: Hashable, limit: int | None = None) -> list:
    """All products of ``gens``, identity first, in breadth-first order."""
    gens = list(gens)
    seen = {identity: None}
    out = [identity]
    frontier = deque([identity])
    while frontier:
        a = frontier.popleft()
        for g in gens:
            c = mul(a, g)
            if c not in seen:
                seen[c] = None
                out.append(c)
                frontier.append(c)
                if limit is not None and len(out) > limit:
                    raise GroupError(f"group closure exceeded {limit} elements")
    return out


# -- table-backed finite groups ----------------------------------------------


class FiniteGroup:
    """A finite group with elements numbered ``0..order-1``.

    ``labels[i]`` is any hashable description of element ``i`` (a permutation
    tuple, a quaternion, ...).  Multiplication is a lookup table.
    """

    def __init__(self, labels: Sequence[Hashable], table: Sequence[Sequence[int]], identity: int = 0,
                 label: str | None = None, names: dict[int, str] | None = None):
        self.labels = list(labels)
        self.table = [list(row) for row in table]
        self.identity = identity
        self.label = label
        self.names = dict(names or {})
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        n = len(self.labels)
        self._inv = [0] * n
        for a in range(n):
            row = self.table[a]
            for b in range(n):
                if row[b] == identity:
                    self._inv[a] = b
                    break

    @classmethod
    def from_generators(cls, gens: Sequence[Hashable], mul: Callable, identity: Hashable,
                        label: str | None = None, limit: int = 100000) -> "FiniteGroup":
        elems = closure(gens, mul, identity, limit=limit)
        index = {e: i for i, e in enumerate(elems)}
        table = [[index[mul(a, b)] for b in elems] for a in elems]
        return cls(elems, table, 0, label)

    @classmethod
    def from_perms(cls, gens: Sequence[Sequence[int]], degree: int | None = None,
                   label: str | None = None) -> "FiniteGroup":
        gens = [tuple(g) for g in gens]
        if degree is None:
            degree = max((len(g) for g in gens), default=1)
        grp = cls.from_generators(gens, compose, identity_perm(degree), label)
        grp.degree = degree
        return grp

    def __len__(self):
        return len(self.labels)

    @property
    def order(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(range(len(self.labels)))

    def __repr__(self):
        return f"FiniteGroup({self.label or '?'}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def power(self, a: int, m: int) -> int:
        if m < 0:
            a, m = self._inv[a], -m
        x = self.identity
        for _ in range(m):
            x = self.table[x][a]
        return x

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def index(self, lab: Hashable) -> int:
        try:
            return self._index[lab]
        except KeyError:
            raise GroupError(f"{lab!r} is not an element of {self.label or 'the group'}") from None

    def name(self, a: int) -> str:
        if a in self.names:
            return self.names[a]
        lab = self.labels[a]
        if isinstance(lab, tuple) and all(isinstance(x, int) for x in lab):
            return cycle_string(lab)
        return str(lab)

    def generated(self, gens: Iterable[int]) -> list[int]:
        return closure(list(gens), self.mul, self.identity)

    def generates(self, gens: Iterable[int]) -> bool:
        return len(self.generated(gens)) == self.order

    def check_axioms(self) -> list[str]:
        """Violated group axioms; associativity is checked exhaustively."""
        n, e, t = self.order, self.identity, self.table
        bad = []
        for a in range(n):
            if t[a][e] != a or t[e][a] != a:
                bad.append(f"identity law fails at {self.name(a)}")
            if t[a][self._inv[a]] != e or t[self._inv[a]][a] != e:
                bad.append(f"inverse law fails at {self.name(a)}")
        if n <= 200:
            for a in range(n):
                ta = t[a]
                for b in range(n):
                    ab = ta[b]
                    tb = t[b]
                    tab = t[ab]
                    for c in range(n):
                        if tab[c] != ta[tb[c]]:
                            bad.append(f"associativity fails at {a},{b},{c}")
                            return bad
        return bad

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))


def cyclic_group(n: int, label: str | None = None) -> FiniteGroup:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    names = {k: ("e" if k == 0 else "g" if k == 1 else f"g^{k}") for k in range(n)}
    return FiniteGroup(list(range(n)), table, 0, label or f"Z{n}", names)


def direct_product(G: FiniteGroup, H: FiniteGroup, label: str | None = None) -> FiniteGroup:
    pairs = [(a, b) for a in G for b in H]
    index = {p: i for i, p in enumerate(pairs)}
    table = [[index[(G.mul(a, c), H.mul(b, d))] for (c, d) in pairs] for (a, b) in pairs]
    return FiniteGroup(pairs, table, index[(G.identity, H.identity)], label)


def abelianization(G: FiniteGroup) -> tuple[FiniteGroup, list[int]]:
    """Quotient of ``G`` by its commutator subgroup, with the quotient map."""
    comms = {G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))) for a in G for b in G}
    K = set(G.generated(sorted(comms)))
    qmap = [-1] * G.order
    reps = []
    for g in G:
        if qmap[g] < 0:
            idx = len(reps)
            reps.append(g)
            for k in K:
                qmap[G.mul(g, k)] = idx
    table = [[qmap[G.mul(a, b)] for b in reps] for a in reps]
    Q = FiniteGroup(list(range(len(reps))), table, qmap[G.identity],
                    f"ab({G.label})" if G.label else None)
    return Q, qmap


def is_isomorphic_small(G: FiniteGroup, H: FiniteGroup) -> bool:
    """Isomorphism test by backtracking over generator images (small groups)."""
    if G.order != H.order or G.is_abelian() != H.is_abelian():
        return False
    if sorted(G.element_order(a) for a in G) != sorted(H.element_order(a) for a in H):
        return False
    gens: list[int] = []
    span = {G.identity}
    for a in G:
        if a not in span:
            gens.append(a)
            span = set(G.generated(gens))
    return _find_hom(G, H, gens, {G.identity: H.identity}, 0) is not None


def _find_hom(G, H, gens, partial, depth):
    if depth == len(gens):
        return partial
    g = gens[depth]
    for h in H:
        if H.element_order(h) != G.element_order(g):
            continue
        trial = _extend_hom(G, H, gens[: depth + 1], {**partial, g: h}, partial)
        if trial is not None:
            found = _find_hom(G, H, gens, trial, depth + 1)
            if found is not None:
                return found
    return None


def _extend_hom(G, H, gens, seeds, base):
    hom = dict(base)
    hom.update(seeds)
    frontier = deque(hom)
    while frontier:
        a = frontier.popleft()
        for g in gens:
            c = G.mul(a, g)
            img = H.mul(hom[a], hom[g])
            if c in hom:
                if hom[c] != img:
                    return None
            else:
                hom[c] = img
                frontier.append(c)
    if len(set(hom.values())) != len(hom):
        return None
    return hom


# -- free products of cyclic groups -------------------------------------------


class FreeProductGroup:
    """``Z_{N_1} * ... * Z_{N_k}`` with elements as reduced words.

    A word is a tuple of ``(factor, exponent)`` letters, exponents in
    ``1..N_factor-1`` and no two adjacent letters from the same factor.
    """

    def __init__(self, orders: Sequence[int], label: str | None = None):
        if any(n < 1 for n in orders):
            raise GroupError("factor orders must be positive")
        self.orders = tuple(orders)
        self.identity: tuple = ()
        self.label = label or "*".join(f"Z{n}" for n in self.orders)

    def __repr__(self):
        return f"FreeProductGroup({self.label})"

    def generator(self, i: int) -> tuple:
        if self.orders[i] == 1:
            return ()
        return ((i, 1),)

    def mul(self, a: tuple, b: tuple) -> tuple:
        out = list(a)
        for f, e in b:
            if out and out[-1][0] == f:
                e2 = (out[-1][1] + e) % self.orders[f]
                out.pop()
                if e2:
                    out.append((f, e2))
            else:
                out.append((f, e))
        return tuple(out)

    def inv(self, a: tuple) -> tuple:
        return tuple((f, (-e) % self.orders[f]) for f, e in reversed(a))

    def power(self, a: tuple, m: int) -> tuple:
        if m < 0:
            a, m = self.inv(a), -m
        x: tuple = ()
        for _ in range(m):
            x = self.mul(x, a)
        return x

    def element_order(self, a: tuple) -> int | None:
        """Order of ``a``; ``None`` when infinite."""
        if not a:
            return 1
        # conjugate down to a cyclically reduced word
        w = list(a)
        while len(w) > 1 and w[0][0] == w[-1][0]:
            f = w[0][0]
            e = (w[0][1] + w[-1][1]) % self.orders[f]
            w = w[1:-1] if not e else [(f, e)] + w[1:-1]
        if len(w) == 1:
            f, e = w[0]
            n = self.orders[f]
            return n // gcd(n, e)
        return None if w else 1

    def name(self, a: tuple) -> str:
        if not a:
            return "e"
        return "".join(f"h{f + 1}" + (f"^{e}" if e != 1 else "") for f, e in a)

    def check_reduced(self, a: tuple) -> bool:
        return all(0 < e < self.orders[f] for f, e in a) and all(
            x[0] != y[0] for x, y in zip(a, a[1:]))


# -- permutation groups ----------------------------------------------------------


class PermGroup:
    """A permutation group of degree ``n`` with its full element set."""

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = (), elements=None,
                 order: int | None = None):
        self.degree = degree
        self._order = order
        self.generators = [tuple(g) for g in generators]
        for g in self.generators:
            if len(g) != degree:
                raise GroupError("generator degree mismatch")
        if elements is not None:
            self._elements = frozenset(tuple(e) for e in elements)
        else:
            self._elements = None

    @classmethod
    def from_elements(cls, degree: int, elements: Iterable[Sequence[int]]) -> "PermGroup":
        elems = sorted({tuple(e) for e in elements})
        ident = identity_perm(degree)
        gens: list[tuple] = []
        span = {ident}
        for e in elems:
            if e not in span:
                gens.append(e)
                span = set(closure(gens, compose, ident))
        grp = cls(degree, gens, elems)
        if span != set(elems):
            raise GroupError("element set is not closed under composition")
        return grp

    @property
    def elements(self) -> frozenset:
        if self._elements is None:
            self._elements = frozenset(closure(self.generators, compose, identity_perm(self.degree)))
        return self._elements

    @property
    def order(self) -> int:
        if self._order is None:
            self._order = len(self.elements)
        return self._order

    def __len__(self):
        return self.order

    def __contains__(self, p):
        return tuple(p) in self.elements

    def contains_group(self, other: "PermGroup") -> bool:
        """``other <= self``, tested on generators."""
        return other.degree == self.degree and all(g in self for g in other.generators)

    def structure(self) -> str:
        """Short isomorphism-type description for small groups."""
        return describe_group(self)

    def __iter__(self):
        return iter(sorted(self.elements))

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"

    def issubset(self, other: "PermGroup") -> bool:
        if other.degree != self.degree:
            return False
        return self.elements <= other.elements

    def is_abelian(self) -> bool:
        gens = self.generators or list(self.elements)
        return all(compose(a, b) == compose(b, a) for a in gens for b in gens)

    def as_finite_group(self, label: str | None = None) -> FiniteGroup:
        grp = FiniteGroup.from_generators(self.generators, compose, identity_perm(self.degree), label)
        grp.degree = self.degree
        return grp


def describe_group(G: PermGroup) -> str:
    n = G.order
    if n == 1:
        return "1"
    orders = sorted(perm_order(g) for g in G.elements)
    if G.is_abelian():
        if orders[-1] == n:
            return f"Z{n}"
        if all(o <= 2 for o in orders):
            k = n.bit_length() - 1
            return "x".join(["Z2"] * k)
        return f"abelian({n})"
    if n == 6:
        return "S3"
    if n == 8:
        return "D4" if orders.count(2) == 5 else "Q8"
    if n == 12 and orders.count(2) == 7 and orders.count(6) == 2:
        return "Z2xS3"
    return f"group({n})"
