"""Finite-dimensional *-algebras with exact cyclotomic coefficients.

Every algebra here has a monomial basis: the product of two basis labels is
either zero or another basis label with coefficient 1.  Matrix units of a
multimatrix algebra, group elements of a group algebra and pairs of those in
``C(G) (x) C*(Gamma)`` all fit this shape, so a single sparse element type
covers them.  Elements of ``A (x) A`` are plain dicts keyed by label pairs.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from typing import Callable, Hashable, Iterable, Sequence

from .cyclotomic import ONE, ZERO, Cyclo, root_of_unity
from .errors import (
    GenerationFailure,
    IllDefinedHopf,
    IncompatibleOperands,
    InconsistencyError,
)
from .groups import FiniteGroup, FreeProductGroup, PermGroup, abelianization

Label = Hashable
Tensor = dict  # (label, label) -> Cyclo


def _scalar(c) -> Cyclo:
    return c if isinstance(c, Cyclo) else Cyclo(c)


def _coef_str(c: Cyclo) -> str:
    s = str(c)
    return f"({s})" if (" " in s) else s


class Algebra:
    """Base class.  Subclasses define the label product, star and unit."""

    key: tuple = ()
    hopf: "HopfData | None" = None

    def basis(self) -> list | None:
        """All basis labels, or ``None`` for an infinite basis."""
        return None

    @property
    def dim(self) -> int | None:
        b = self.basis()
        return None if b is None else len(b)

    def product(self, a: Label, b: Label) -> Label | None:
        raise NotImplementedError

    def out_key(self, a: Label):
        """``a*b`` can be nonzero only if ``out_key(a) == in_key(b)``."""
        return None

    def in_key(self, b: Label):
        return None

    def star_label(self, a: Label) -> Label:
        raise NotImplementedError

    def unit_coords(self) -> dict:
        raise NotImplementedError

    def label_name(self, a: Label) -> str:
        return str(a)

    def sort_key(self, a: Label):
        return repr(a)

    # -- element constructors --------------------------------------------

    def element(self, coords: dict | Iterable = ()) -> "Element":
        items = coords.items() if hasattr(coords, "items") else coords
        out: dict = {}
        for lab, c in items:
            c = _scalar(c)
            if lab in out:
                c = out[lab] + c
            if c.is_zero():
                out.pop(lab, None)
            else:
                out[lab] = c
        return Element(self, out)

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return Element(self, dict(self.unit_coords()))

    def basis_element(self, lab: Label) -> "Element":
        return Element(self, {lab: ONE})

    def scalar(self, c) -> "Element":
        return self.one() * c

    def same(self, other: "Algebra") -> bool:
        return self is other or (self.key and self.key == other.key)

    def __repr__(self):
        return f"{type(self).__name__}{self.key[1:] if self.key else ''}"


class Element:
    """A finite linear combination of basis labels."""

    __slots__ = ("alg", "coords", "_hash")

    def __init__(self, alg: Algebra, coords: dict):
        self.alg = alg
        self.coords = coords
        self._hash = None

    def _check(self, other: "Element"):
        if not self.alg.same(other.alg):
            raise IncompatibleOperands(f"cannot combine elements of {self.alg!r} and {other.alg!r}")

    def _lift(self, other):
        if isinstance(other, Element):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Cyclo)):
            return self.alg.one() * other
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.coords)
        for lab, c in other.coords.items():
            if lab in out:
                s = out[lab] + c
                if s.is_zero():
                    del out[lab]
                else:
                    out[lab] = s
            else:
                out[lab] = c
        return Element(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.alg, {lab: -c for lab, c in self.coords.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "Element":
        c = _scalar(c)
        if c.is_zero():
            return Element(self.alg, {})
        return Element(self.alg, {lab: v * c for lab, v in self.coords.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        if isinstance(other, (int, Fraction, Cyclo)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            return self.scale(_scalar(other).inv())
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not defined")
        out = self.alg.one()
        for _ in range(e):
            out = out * self
        return out

    def star(self) -> "Element":
        alg = self.alg
        return Element(alg, {alg.star_label(lab): c.conj() for lab, c in self.coords.items()})

    def is_zero(self) -> bool:
        return not self.coords

    def __bool__(self):
        return bool(self.coords)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            other = self.alg.one() * other
        if not isinstance(other, Element):
            return NotImplemented
        if not self.alg.same(other.alg):
            return False
        return self.coords == other.coords

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.coords.items()))
        return self._hash

    def coefficient(self, lab: Label) -> Cyclo:
        return self.coords.get(lab, ZERO)

    def sorted_items(self) -> list:
        key = self.alg.sort_key
        return sorted(self.coords.items(), key=lambda kv: key(kv[0]))

    def __str__(self):
        if not self.coords:
            return "0"
        parts = []
        for lab, c in self.sorted_items():
            name = self.alg.label_name(lab)
            if c == 1:
                parts.append(name)
            elif c == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{_coef_str(c)}*{name}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Element({self})"

    def to_json(self) -> list:
        return [[_label_json(lab), c.to_json()] for lab, c in self.sorted_items()]


def _label_json(lab):
    if isinstance(lab, tuple):
        return [_label_json(x) for x in lab]
    return lab


def multiply(a: Element, b: Element) -> Element:
    """Product in the common algebra of ``a`` and ``b``."""
    if not isinstance(a, Element) or not isinstance(b, Element):
        raise IncompatibleOperands("multiply expects two algebra elements")
    a._check(b)
    alg = a.alg
    if not a.coords or not b.coords:
        return Element(alg, {})
    buckets: dict = {}
    in_key = alg.in_key
    for lab, c in b.coords.items():
        buckets.setdefault(in_key(lab), []).append((lab, c))
    out: dict = {}
    prod, out_key = alg.product, alg.out_key
    for la, ca in a.coords.items():
        for lb, cb in buckets.get(out_key(la), ()):
            lc = prod(la, lb)
            if lc is None:
                continue
            v = ca * cb
            if lc in out:
                v = out[lc] + v
            out[lc] = v
    return Element(alg, {k: v for k, v in out.items() if not v.is_zero()})


def is_projection(a: Element) -> bool:
    return a * a == a and a.star() == a


# -- concrete algebras ----------------------------------------------------------


class MultiMatrixAlgebra(Algebra):
    """``M_{d_1} + ... + M_{d_k}`` with matrix units ``(block, row, col)``."""

    def __init__(self, blocks: Sequence[int], names: dict | None = None):
        blocks = tuple(int(d) for d in blocks)
        if not blocks or any(d < 1 for d in blocks):
            raise ValueError("block dimensions must be positive")
        self.blocks = blocks
        self.key = ("mm", blocks)
        self._basis = [(b, r, c) for b, d in enumerate(blocks) for r in range(d) for c in range(d)]
        self._index = {lab: i for i, lab in enumerate(self._basis)}
        self._names = names if names is not None else self._default_names()
        self._by_name = {v: k for k, v in self._names.items()}

    def _default_names(self) -> dict:
        big = [b for b, d in enumerate(self.blocks) if d > 1]
        small = [b for b, d in enumerate(self.blocks) if d == 1]
        names = {}
        for i, b in enumerate(small):
            names[(b, 0, 0)] = f"f{i + 1}"
        for b in big:
            tag = "E" if len(big) == 1 else f"E{b}_"
            for r in range(self.blocks[b]):
                for c in range(self.blocks[b]):
                    names[(b, r, c)] = f"{tag}{r + 1}{c + 1}"
        return names

    def basis(self):
        return list(self._basis)

    def product(self, a, b):
        if a[0] == b[0] and a[2] == b[1]:
            return (a[0], a[1], b[2])
        return None

    def out_key(self, a):
        return (a[0], a[2])

    def in_key(self, b):
        return (b[0], b[1])

    def star_label(self, a):
        return (a[0], a[2], a[1])

    def unit_coords(self):
        return {(b, i, i): ONE for b, d in enumerate(self.blocks) for i in range(d)}

    def label_name(self, a):
        return self._names.get(a, str(a))

    def sort_key(self, a):
        return self._index[a]

    def named(self, name: str) -> Element:
        return self.basis_element(self._by_name[name])

    def from_blocks(self, blocks: Sequence) -> Element:
        """Element from per-block data: scalars for 1x1 blocks, nested lists otherwise."""
        if len(blocks) != len(self.blocks):
            raise ValueError("wrong number of blocks")
        coords = {}
        for b, (d, data) in enumerate(zip(self.blocks, blocks)):
            if d == 1 and not isinstance(data, (list, tuple)):
                data = [[data]]
            for r in range(d):
                for c in range(d):
                    coords[(b, r, c)] = data[r][c]
        return self.element(coords)

    def block(self, x: Element, b: int) -> list[list[Cyclo]]:
        d = self.blocks[b]
        return [[x.coefficient((b, r, c)) for c in range(d)] for r in range(d)]


class GroupAlgebra(Algebra):
    """Formal finite sums over a table-backed or free-product group."""

    def __init__(self, group: FiniteGroup | FreeProductGroup):
        self.group = group
        self.key = ("group", id(group))
        self.finite = isinstance(group, FiniteGroup)

    def basis(self):
        return list(self.group) if self.finite else None

    def product(self, a, b):
        return self.group.mul(a, b)

    def star_label(self, a):
        return self.group.inv(a)

    def unit_coords(self):
        return {self.group.identity: ONE}

    def label_name(self, a):
        return self.group.name(a)

    def sort_key(self, a):
        return a if self.finite else (len(a), a)

    def g(self, a) -> Element:
        return self.basis_element(a)


class TensorAlgebra(Algebra):
    """``C(G) (x) C*(Gamma)`` with basis labels ``(sigma, h)``."""

    def __init__(self, A: MultiMatrixAlgebra, B: GroupAlgebra):
        if getattr(A, "kind", None) != "function" or not isinstance(B, GroupAlgebra):
            raise NotImplementedError("only C(G) (x) C*(Gamma) tensor products are supported")
        self.A, self.B = A, B
        self.G = A.group
        self.key = ("tensor", A.key, B.key)

    def basis(self):
        hs = self.B.basis()
        if hs is None:
            return None
        return [(s, h) for s in self.G for h in hs]

    def product(self, a, b):
        if a[0] != b[0]:
            return None
        return (a[0], self.B.group.mul(a[1], b[1]))

    def out_key(self, a):
        return a[0]

    in_key = out_key

    def star_label(self, a):
        return (a[0], self.B.group.inv(a[1]))

    def unit_coords(self):
        e = self.B.group.identity
        return {(s, e): ONE for s in self.G}

    def label_name(self, a):
        return f"d[{self.G.name(a[0])}]@{self.B.label_name(a[1])}"

    def sort_key(self, a):
        return (a[0], self.B.sort_key(a[1]))

    def left(self, x: Element) -> Element:
        """``x (x) 1``."""
        e = self.B.group.identity
        return self.element({(lab[0], e): c for lab, c in x.coords.items()})

    def right(self, y: Element) -> Element:
        """``1 (x) y``."""
        return self.element({(s, h): c for s in self.G for h, c in y.coords.items()})


# -- tensors in A (x) A ---------------------------------------------------------------


def t_add(X: Tensor, Y: Tensor, scale=None) -> Tensor:
    out = dict(X)
    for k, v in Y.items():
        if scale is not None:
            v = v * scale
        if k in out:
            v = out[k] + v
        if v.is_zero():
            out.pop(k, None)
        else:
            out[k] = v
    return out


def t_simple(x: Element, y: Element) -> Tensor:
    return {(a, b): ca * cb for a, ca in x.coords.items() for b, cb in y.coords.items()}


def t_mul(alg: Algebra, X: Tensor, Y: Tensor) -> Tensor:
    buckets: dict = {}
    for (b1, b2), c in Y.items():
        buckets.setdefault((alg.in_key(b1), alg.in_key(b2)), []).append((b1, b2, c))
    out: dict = {}
    prod = alg.product
    for (a1, a2), ca in X.items():
        for b1, b2, cb in buckets.get((alg.out_key(a1), alg.out_key(a2)), ()):
            l1 = prod(a1, b1)
            if l1 is None:
                continue
            l2 = prod(a2, b2)
            if l2 is None:
                continue
            v = ca * cb
            k = (l1, l2)
            if k in out:
                v = out[k] + v
            out[k] = v
    return {k: v for k, v in out.items() if not v.is_zero()}


def t_clean(X: dict) -> dict:
    return {k: v for k, v in X.items() if not v.is_zero()}


# -- Hopf data --------------------------------------------------------------------


class HopfData:
    """Comultiplication, counit, antipode and Haar state given on basis labels.

    ``delta(label)`` returns a :data:`Tensor`, ``epsilon`` and ``haar`` return
    scalars and ``antipode`` returns an :class:`Element`.  Results are cached.
    """

    def __init__(self, algebra: Algebra, delta: Callable, epsilon: Callable,
                 antipode: Callable, haar: Callable | None = None):
        self.algebra = algebra
        self._delta, self._eps, self._anti, self._haar = delta, epsilon, antipode, haar
        self._cache: dict = {}

    def _memo(self, tag, fn, lab):
        key = (tag, lab)
        try:
            return self._cache[key]
        except KeyError:
            val = self._cache[key] = fn(lab)
            return val

    def delta_label(self, lab) -> Tensor:
        return self._memo("d", self._delta, lab)

    def eps_label(self, lab) -> Cyclo:
        return _scalar(self._memo("e", self._eps, lab))

    def antipode_label(self, lab) -> Element:
        return self._memo("s", self._anti, lab)

    def haar_label(self, lab) -> Cyclo:
        if self._haar is None:
            raise ValueError("no Haar state attached to this Hopf data")
        return _scalar(self._memo("h", self._haar, lab))

    @property
    def has_haar(self) -> bool:
        return self._haar is not None

    def delta(self, x: Element) -> Tensor:
        out: Tensor = {}
        for lab, c in x.coords.items():
            out = t_add(out, self.delta_label(lab), c)
        return out

    def epsilon(self, x: Element) -> Cyclo:
        return sum((c * self.eps_label(lab) for lab, c in x.coords.items()), ZERO)

    def antipode(self, x: Element) -> Element:
        out = self.algebra.zero()
        for lab, c in x.coords.items():
            out = out + self.antipode_label(lab) * c
        return out

    def haar(self, x: Element) -> Cyclo:
        return sum((c * self.haar_label(lab) for lab, c in x.coords.items()), ZERO)

    # -- verification ----------------------------------------------------

    def check(self, labels: Iterable | None = None, multiplicative: bool = False) -> list[str]:
        """Violated Hopf axioms on the given labels (default: the whole basis)."""
        alg = self.algebra
        if labels is None:
            labels = alg.basis()
            if labels is None:
                raise ValueError("infinite basis: pass the labels to check")
        labels = list(labels)
        bad: list[str] = []
        unit = alg.one()
        if self.has_haar and self.haar(unit) != 1:
            bad.append("haar(1) != 1")
        for lab in labels:
            name = alg.label_name(lab)
            D = self.delta_label(lab)
            # coassociativity
            left: dict = {}
            right: dict = {}
            for (a, b), c in D.items():
                for (a1, a2), c1 in self.delta_label(a).items():
                    k = (a1, a2, b)
                    left[k] = left.get(k, ZERO) + c * c1
                for (b1, b2), c2 in self.delta_label(b).items():
                    k = (a, b1, b2)
                    right[k] = right.get(k, ZERO) + c * c2
            if t_clean(left) != t_clean(right):
                bad.append(f"coassociativity fails on {name}")
            # counit
            el = alg.zero()
            er = alg.zero()
            for (a, b), c in D.items():
                ea, eb = self.eps_label(a), self.eps_label(b)
                if not ea.is_zero():
                    el = el + alg.basis_element(b) * (c * ea)
                if not eb.is_zero():
                    er = er + alg.basis_element(a) * (c * eb)
            target = alg.basis_element(lab)
            if el != target or er != target:
                bad.append(f"counit law fails on {name}")
            # antipode
            sl = alg.zero()
            sr = alg.zero()
            for (a, b), c in D.items():
                sl = sl + (self.antipode_label(a) * alg.basis_element(b)) * c
                sr = sr + (alg.basis_element(a) * self.antipode_label(b)) * c
            target = unit * self.eps_label(lab)
            if sl != target or sr != target:
                bad.append(f"antipode law fails on {name}")
            # invariance of the Haar state
            if self.has_haar:
                hl = alg.zero()
                hr = alg.zero()
                for (a, b), c in D.items():
                    ha, hb = self.haar_label(a), self.haar_label(b)
                    if not ha.is_zero():
                        hl = hl + alg.basis_element(b) * (c * ha)
                    if not hb.is_zero():
                        hr = hr + alg.basis_element(a) * (c * hb)
                target = unit * self.haar_label(lab)
                if hl != target or hr != target:
                    bad.append(f"Haar invariance fails on {name}")
        if multiplicative:
            bad.extend(self.check_multiplicative(labels))
        return bad

    def check_multiplicative(self, labels: Iterable, pairs: Iterable | None = None) -> list[str]:
        """Delta and epsilon multiplicative, S anti-multiplicative, all *-compatible."""
        alg = self.algebra
        labels = list(labels)
        if pairs is None:
            pairs = iproduct(labels, labels)
        bad = []
        for a, b in pairs:
            c = alg.product(a, b)
            ab = alg.zero() if c is None else alg.basis_element(c)
            Dab = self.delta(ab)
            if Dab != t_mul(alg, self.delta_label(a), self.delta_label(b)):
                bad.append(f"Delta not multiplicative on ({alg.label_name(a)}, {alg.label_name(b)})")
            if self.epsilon(ab) != self.eps_label(a) * self.eps_label(b):
                bad.append(f"epsilon not multiplicative on ({alg.label_name(a)}, {alg.label_name(b)})")
            if self.antipode(ab) != self.antipode_label(b) * self.antipode_label(a):
                bad.append(f"S not anti-multiplicative on ({alg.label_name(a)}, {alg.label_name(b)})")
        for a in labels:
            sa = alg.star_label(a)
            Dstar = {(alg.star_label(x), alg.star_label(y)): c.conj() for (x, y), c in self.delta_label(a).items()}
            if t_clean(Dstar) != t_clean(self.delta_label(sa)):
                bad.append(f"Delta not *-compatible on {alg.label_name(a)}")
        return bad


def function_algebra(G: FiniteGroup) -> MultiMatrixAlgebra:
    """``C(G)`` with the group-law comultiplication."""
    n = G.order
    names = {(s, 0, 0): f"d[{G.name(s)}]" for s in G}
    A = MultiMatrixAlgebra([1] * n, names)
    A.kind = "function"
    A.group = G
    A.key = ("function", id(G))

    def delta(lab):
        s = lab[0]
        return {((a, 0, 0), (G.mul(G.inv(a), s), 0, 0)): ONE for a in G}

    def epsilon(lab):
        return ONE if lab[0] == G.identity else ZERO

    def antipode(lab):
        return A.basis_element((G.inv(lab[0]), 0, 0))

    haar_val = Cyclo(Fraction(1, n))
    A.hopf = HopfData(A, delta, epsilon, antipode, lambda lab: haar_val)
    return A


def delta_fn(A: MultiMatrixAlgebra, s: int) -> Element:
    """The indicator function of ``s`` in ``C(G)``."""
    return A.basis_element((s, 0, 0))


def group_algebra(group: FiniteGroup | FreeProductGroup) -> GroupAlgebra:
    """``C*(Gamma)`` with ``Delta(g) = g (x) g``."""
    A = GroupAlgebra(group)
    e = group.identity
    A.hopf = HopfData(
        A,
        lambda g: {(g, g): ONE},
        lambda g: ONE,
        lambda g: A.basis_element(group.inv(g)),
        lambda g: ONE if g == e else ZERO,
    )
    return A


def tensor_algebra(A: Algebra, B: Algebra) -> TensorAlgebra:
    T = TensorAlgebra(A, B)
    G, grp = T.G, B.group
    e = grp.identity
    inv_n = Cyclo(Fraction(1, G.order))

    def delta(lab):
        s, h = lab
        return {((a, h), (G.mul(G.inv(a), s), h)): ONE for a in G}

    def epsilon(lab):
        return ONE if lab[0] == G.identity else ZERO

    def antipode(lab):
        return T.basis_element((G.inv(lab[0]), grp.inv(lab[1])))

    def haar(lab):
        return inv_n if lab[1] == e else ZERO

    T.hopf = HopfData(T, delta, epsilon, antipode, haar)
    return T


# -- linear algebra over the basis ---------------------------------------------------


class SpanBuilder:
    """Incremental row reduction of sparse vectors, tracking combinations.

    Each stored row remembers how it was obtained as a linear combination of
    the tags passed to :meth:`add`.
    """

    def __init__(self, order: Callable):
        self.order = order
        self.rows: list[tuple] = []  # (pivot, vector, combination)
        self._pivots: set = set()

    def reduce(self, vec: dict, combo: dict | None = None):
        vec = dict(vec)
        combo = dict(combo or {})
        for piv, row, rc in self.rows:
            c = vec.get(piv)
            if c is None:
                continue
            for k, v in row.items():
                nv = vec.get(k, ZERO) - c * v
                if nv.is_zero():
                    vec.pop(k, None)
                else:
                    vec[k] = nv
            for k, v in rc.items():
                nv = combo.get(k, ZERO) - c * v
                if nv.is_zero():
                    combo.pop(k, None)
                else:
                    combo[k] = nv
        return vec, combo

    def add(self, vec: dict, tag=None) -> bool:
        vec, combo = self.reduce(vec, {tag: ONE} if tag is not None else {})
        if not vec:
            return False
        piv = min(vec, key=self.order)
        inv = vec[piv].inv()
        vec = {k: v * inv for k, v in vec.items()}
        combo = {k: v * inv for k, v in combo.items()}
        self.rows.append((piv, vec, combo))
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def express(self, vec: dict) -> dict | None:
        """Combination of tags equal to ``vec``, or ``None`` outside the span."""
        rest, combo = self.reduce(vec)
        if rest:
            return None
        return {k: -v for k, v in combo.items()}


def _distinct(entries: Iterable[Element]) -> list[Element]:
    seen: dict = {}
    for x in entries:
        if x not in seen:
            seen[x] = None
    return list(seen)


def generated_span(alg: Algebra, gens: Sequence[Element], max_dim: int | None = None):
    """Breadth-first word span of the unital subalgebra generated by ``gens``.

    Returns the :class:`SpanBuilder` (tags are words as tuples of generator
    indices) and a dict word -> element for the words that entered the basis.
    """
    basis = alg.basis()
    if max_dim is None:
        max_dim = len(basis) if basis is not None else 10000
    order = alg.sort_key
    span = SpanBuilder(order)
    words: dict = {}
    one = alg.one()
    span.add(one.coords, ())
    words[()] = one
    frontier = [((), one)]
    while frontier:
        nxt = []
        for w, x in frontier:
            for gi, g in enumerate(gens):
                y = x * g
                if span.add(y.coords, w + (gi,)):
                    words[w + (gi,)] = y
                    nxt.append((w + (gi,), y))
                    if span.rank > max_dim:
                        raise GenerationFailure("span exceeded the dimension bound", span.rank)
        frontier = nxt
    return span, words


def derive_hopf_from_magic(alg: Algebra, u, haar: Callable | dict | None = None) -> HopfData:
    """Hopf data on ``alg`` determined by ``u`` being its fundamental magic unitary.

    Uses ``Delta(u_ij) = sum_k u_ik (x) u_kj``, ``epsilon(u_ij) = delta_ij`` and
    ``S(u_ij) = u_ji``, extended multiplicatively (anti-multiplicatively for
    ``S``) through an explicit word expression of every basis label.
    """
    entries = u.entries if hasattr(u, "entries") else u
    n = len(entries)
    basis = alg.basis()
    if basis is None:
        raise ValueError("derive_hopf_from_magic needs a finite-dimensional algebra")
    gens = _distinct(x for row in entries for x in row)
    gid = {g: i for i, g in enumerate(gens)}
    g_delta: dict[int, Tensor] = {}
    g_eps: dict[int, Cyclo] = {}
    g_anti: dict[int, Element] = {}
    for i in range(n):
        for j in range(n):
            k = gid[entries[i][j]]
            D: Tensor = {}
            for m in range(n):
                D = t_add(D, t_simple(entries[i][m], entries[m][j]))
            e = ONE if i == j else ZERO
            s = entries[j][i]
            if k in g_delta:
                if g_delta[k] != D or g_eps[k] != e or g_anti[k] != s:
                    raise IllDefinedHopf(
                        f"entry at ({i + 1},{j + 1}) repeats another entry with different structure maps")
            else:
                g_delta[k], g_eps[k], g_anti[k] = D, e, s

    span, words = generated_span(alg, gens)
    if span.rank < len(basis):
        raise GenerationFailure(
            f"entries generate a proper subalgebra of dimension {span.rank} < {len(basis)}", span.rank)

    unit = alg.one()
    unit_t = t_simple(unit, unit)
    w_delta: dict = {}
    w_eps: dict = {}
    w_anti: dict = {}
    for w in words:
        D, e, s = unit_t, ONE, unit
        for gi in w:
            D = t_mul(alg, D, g_delta[gi])
            e = e * g_eps[gi]
            s = g_anti[gi] * s
        w_delta[w], w_eps[w], w_anti[w] = D, e, s

    expr = {}
    for lab in basis:
        combo = span.express({lab: ONE})
        if combo is None:
            raise IllDefinedHopf(f"basis label {alg.label_name(lab)} not in the word span")
        expr[lab] = combo

    def delta(lab):
        out: Tensor = {}
        for w, c in expr[lab].items():
            out = t_add(out, w_delta[w], c)
        return out

    def epsilon(lab):
        return sum((c * w_eps[w] for w, c in expr[lab].items()), ZERO)

    def antipode(lab):
        out = alg.zero()
        for w, c in expr[lab].items():
            out = out + w_anti[w] * c
        return out

    if isinstance(haar, dict):
        table = dict(haar)
        haar = lambda lab: table.get(lab, ZERO)  # noqa: E731
    h = HopfData(alg, delta, epsilon, antipode, haar)

    # the extension must be consistent with the products it came from
    bad = h.check_multiplicative(basis)
    for k, g in enumerate(gens):
        if h.delta(g) != g_delta[k] or h.epsilon(g) != g_eps[k] or h.antipode(g) != g_anti[k]:
            bad.append(f"structure maps not reproduced on generator {g}")
    if bad:
        raise IllDefinedHopf("; ".join(bad[:5]))
    return h


# -- characters -----------------------------------------------------------------------


class Character:
    """A unital multiplicative *-functional, evaluated lazily on labels."""

    def __init__(self, alg: Algebra, value: Callable, name: str = "chi", support: Sequence | None = None):
        self.alg = alg
        self._value = value
        self._cache: dict = {}
        self.name = name
        # labels that pin the character down (a basis, or group generators)
        self.support = support

    def value(self, lab) -> Cyclo:
        try:
            return self._cache[lab]
        except KeyError:
            v = self._cache[lab] = _scalar(self._value(lab))
            return v

    def __call__(self, x: Element) -> Cyclo:
        return sum((c * self.value(lab) for lab, c in x.coords.items()), ZERO)

    def signature(self) -> tuple:
        support = self.support if self.support is not None else self.alg.basis()
        return tuple(self.value(lab) for lab in support)

    def __eq__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        return self.alg.same(other.alg) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        return f"Character({self.name})"

    def check(self, pairs: Iterable | None = None) -> list[str]:
        alg = self.alg
        labels = self.support if self.support is not None else alg.basis()
        bad = []
        if self(alg.one()) != 1:
            bad.append("chi(1) != 1")
        for a in labels:
            if self.value(alg.star_label(a)) != self.value(a).conj():
                bad.append(f"not *-preserving at {alg.label_name(a)}")
        if pairs is None:
            pairs = iproduct(labels, labels)
        for a, b in pairs:
            c = alg.product(a, b)
            v = ZERO if c is None else self.value(c)
            if v != self.value(a) * self.value(b):
                bad.append(f"not multiplicative at ({alg.label_name(a)}, {alg.label_name(b)})")
                break
        return bad


def _abelian_homs(Q: FiniteGroup) -> tuple[int, list[list[int]]]:
    """All homomorphisms ``Q -> Z_E`` for abelian ``Q``, as value lists.

    ``E`` is the exponent of ``Q``; a value ``v`` stands for ``zeta_E**v``.
    """
    E = 1
    for a in Q:
        o = Q.element_order(a)
        E = E * o // _gcd(E, o)
    gens: list[int] = []
    span = {Q.identity}
    for a in Q:
        if a not in span:
            gens.append(a)
            span = set(Q.generated(gens))
    homs = []
    choices = [range(Q.element_order(g)) for g in gens]
    for ks in iproduct(*choices):
        vals = {Q.identity: 0}
        ok = True
        frontier = [Q.identity]
        while frontier and ok:
            nxt = []
            for a in frontier:
                for g, k in zip(gens, ks):
                    c = Q.mul(a, g)
                    v = (vals[a] + k * (E // Q.element_order(g))) % E
                    if c in vals:
                        if vals[c] != v:
                            ok = False
                            break
                    else:
                        vals[c] = v
                        nxt.append(c)
                if not ok:
                    break
            frontier = nxt
        if ok:
            homs.append([vals[a] for a in Q])
    if len(homs) != Q.order:
        raise InconsistencyError(f"found {len(homs)} characters of an abelian group of order {Q.order}")
    return E, homs


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def group_homs_to_circle(group: FiniteGroup | FreeProductGroup) -> list[Callable]:
    """All homomorphisms to roots of unity, as label -> Cyclo functions."""
    if isinstance(group, FreeProductGroup):
        out = []
        for ks in iproduct(*(range(n) for n in group.orders)):
            def chi(word, ks=ks):
                v = ONE
                for f, e in word:
                    v = v * root_of_unity(group.orders[f], ks[f] * e)
                return v
            out.append(chi)
        return out
    Q, qmap = abelianization(group)
    E, homs = _abelian_homs(Q)
    return [(lambda g, vals=vals: root_of_unity(E, vals[qmap[g]])) for vals in homs]


def characters(alg: Algebra) -> list[Character]:
    if isinstance(alg, TensorAlgebra):
        out = []
        G = alg.G
        grp = alg.B.group
        for s in G:
            for k, hom in enumerate(group_homs_to_circle(grp)):
                def val(lab, s=s, hom=hom):
                    return hom(lab[1]) if lab[0] == s else ZERO
                support = alg.basis() if alg.basis() is not None else None
                out.append(Character(alg, val, f"(ev[{G.name(s)}],chi{k})", support))
        return out
    if isinstance(alg, GroupAlgebra):
        grp = alg.group
        if alg.finite:
            support = alg.basis()
        else:
            support = [grp.generator(i) for i in range(len(grp.orders))]
        return [Character(alg, hom, f"chi{k}", support) for k, hom in enumerate(group_homs_to_circle(grp))]
    if isinstance(alg, MultiMatrixAlgebra):
        out = []
        for b, d in enumerate(alg.blocks):
            if d == 1:
                out.append(Character(alg, lambda lab, b=b: ONE if lab[0] == b else ZERO,
                                     f"ev[{alg.label_name((b, 0, 0))}]"))
        return out
    raise NotImplementedError(f"characters of {alg!r}")


def counit_character(hopf: HopfData) -> Character:
    alg = hopf.algebra
    return Character(alg, hopf.eps_label, "epsilon", _support(alg))


def _support(alg):
    if isinstance(alg, GroupAlgebra) and not alg.finite:
        return [alg.group.generator(i) for i in range(len(alg.group.orders))]
    return None


def convolve_characters(hopf: HopfData, chi1: Character, chi2: Character, check: bool = False) -> Character:
    """``(chi1 (x) chi2) o Delta``."""
    alg = hopf.algebra

    def val(lab):
        return sum((c * chi1.value(a) * chi2.value(b) for (a, b), c in hopf.delta_label(lab).items()), ZERO)

    chi = Character(alg, val, f"{chi1.name}*{chi2.name}", chi1.support)
    if check:
        bad = chi.check()
        if bad:
            raise InconsistencyError(f"convolution of characters is not a character: {bad[0]}")
    return chi


def phi_matrix(u, chi: Character) -> list[list[Cyclo]]:
    """``[chi(u_ij)]``; raises unless it is a permutation matrix."""
    entries = u.entries if hasattr(u, "entries") else u
    M = [[chi(x) for x in row] for row in entries]
    _matrix_perm(M)
    return M


def _matrix_perm(M) -> tuple[int, ...]:
    n = len(M)
    perm = [-1] * n
    for i in range(n):
        for j in range(n):
            v = M[i][j]
            if v == 1:
                if perm[j] >= 0:
                    raise InconsistencyError("character image is not a permutation matrix")
                perm[j] = i
            elif not v.is_zero():
                raise InconsistencyError(f"character image has entry {v} outside {{0,1}}")
    if sorted(perm) != list(range(n)):
        raise InconsistencyError("character image is not a permutation matrix")
    return tuple(perm)


def phi_permutation(u, chi: Character) -> tuple[int, ...]:
    """The permutation ``s`` with ``chi(u_ij) = 1`` exactly when ``i = s(j)``."""
    return _matrix_perm(phi_matrix(u, chi))


def classical_version(u, check_hom: bool = True) -> PermGroup:
    """The permutation group ``{Phi(chi)}`` over all characters of the algebra of ``u``."""
    from .groups import compose

    chars = characters(u.algebra)
    perms = [phi_permutation(u, chi) for chi in chars]
    if len(set(perms)) != len(perms):
        raise InconsistencyError("distinct characters with the same permutation image")
    grp = PermGroup.from_elements(u.n, perms)
    if check_hom and u.hopf is not None:
        for c1, p1 in zip(chars, perms):
            for c2, p2 in zip(chars, perms):
                conv = convolve_characters(u.hopf, c1, c2)
                if phi_permutation(u, conv) != compose(p1, p2):
                    raise InconsistencyError("Phi is not a homomorphism on the character group")
    return grp
