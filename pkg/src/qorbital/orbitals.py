"""Orbits and orbitals of magic unitaries."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from . import _accel
from .cyclotomic import ZERO, Cyclo


class OrbitPartition:
    def __init__(self, n: int, classes: Iterable[Iterable[int]]):
        self.n = n
        self.classes = sorted((sorted(c) for c in classes), key=lambda c: c[0])
        self._of = [0] * n
        for idx, c in enumerate(self.classes):
            for i in c:
                self._of[i] = idx

    def class_of(self, i: int) -> int:
        return self._of[i]

    def size_of(self, i: int) -> int:
        return len(self.classes[self._of[i]])

    def __len__(self):
        return len(self.classes)

    def as_sets(self) -> list[set[int]]:
        """1-based classes."""
        return [{i + 1 for i in c} for c in self.classes]

    def to_json(self) -> dict:
        return {"n": self.n, "orbits": [[i + 1 for i in c] for c in self.classes]}


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def orbits(u) -> OrbitPartition:
    """Classes of ``i ~ j`` generated by ``u_ij != 0``."""
    ent, nz = u.product_table()
    n = len(ent)
    nonzero = _entry_nonzero(u, ent, nz)
    parent = list(range(n))
    for i in range(n):
        for j in range(n):
            if nonzero[ent[i][j]]:
                a, b = _find(parent, i), _find(parent, j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups: dict = {}
    for i in range(n):
        groups.setdefault(_find(parent, i), []).append(i)
    return OrbitPartition(n, groups.values())


def _entry_nonzero(u, ent, nz):
    if hasattr(u, "entry_nonzero"):
        return u.entry_nonzero()
    # a projection p is nonzero iff p*p != 0
    return [nz[k][k] for k in range(len(nz))]


class OrbitalPartition:
    """Partition of ``{0..n-1}^2`` into orbitals, with inverse and diagonal data."""

    def __init__(self, n: int, classes: Iterable[Iterable[tuple[int, int]]], closure_needed: bool = False):
        self.n = n
        cls = [frozenset(c) for c in classes]
        cls.sort(key=lambda c: min(c))
        self.classes: list[frozenset] = cls
        self._of = {}
        for idx, c in enumerate(cls):
            for p in c:
                self._of[p] = idx
        self.closure_needed = closure_needed
        self.anomalies: list[str] = []
        self.diagonal: list[bool] = []
        for idx, c in enumerate(cls):
            diag = [i == k for i, k in c]
            if all(diag):
                self.diagonal.append(True)
            else:
                self.diagonal.append(False)
                if any(diag):
                    self.anomalies.append(f"orbital {idx} meets the diagonal without lying inside it")
        self.inverse: list[int] = []
        for idx, c in enumerate(cls):
            inv = frozenset((k, i) for i, k in c)
            j = self._of[min(inv)]
            if cls[j] != inv:
                self.anomalies.append(f"inverse of orbital {idx} is not an orbital")
            self.inverse.append(j)
        if closure_needed:
            self.anomalies.append("raw relation u_ij u_kl != 0 is not an equivalence")

    def class_of(self, i: int, k: int) -> int:
        return self._of[(i, k)]

    def __len__(self):
        return len(self.classes)

    def nondiagonal(self) -> list[int]:
        return [i for i, d in enumerate(self.diagonal) if not d]

    def inverse_pairs(self) -> list[tuple[int, int]]:
        """One ``(o, o^-1)`` entry per inverse-closed pair of non-diagonal classes."""
        return [(i, self.inverse[i]) for i in self.nondiagonal() if self.inverse[i] >= i]

    def sets(self, idxs: Iterable[int] | None = None, one_based: bool = True) -> list[frozenset]:
        idxs = range(len(self.classes)) if idxs is None else idxs
        s = 1 if one_based else 0
        return [frozenset((i + s, k + s) for i, k in self.classes[j]) for j in idxs]

    def as_partition(self) -> frozenset:
        return frozenset(self.classes)

    def restricted(self, rows: Iterable[int], cols: Iterable[int]) -> list[frozenset]:
        """Classes meeting ``rows x cols``, cut down to that rectangle."""
        rows, cols = set(rows), set(cols)
        out = []
        for c in self.classes:
            part = frozenset(p for p in c if p[0] in rows and p[1] in cols)
            if part:
                out.append(part)
        return out

    def matrix(self) -> list[list[int]]:
        return [[self._of[(i, k)] for k in range(self.n)] for i in range(self.n)]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "orbitals": [
                {"pairs": sorted([i + 1, k + 1] for i, k in c), "diagonal": d, "inverse": inv}
                for c, d, inv in zip(self.classes, self.diagonal, self.inverse)
            ],
            "closure_needed": self.closure_needed,
        }


def orbitals_from_table(ent, nz) -> OrbitalPartition:
    n = len(ent)
    roots, raw = _accel.pair_classes(ent, nz, n)
    groups: dict = {}
    for flat, r in enumerate(roots):
        groups.setdefault(r, []).append(divmod(flat, n))
    closure = raw != sum(len(g) ** 2 for g in groups.values())
    return OrbitalPartition(n, groups.values(), closure)


def orbitals(u) -> OrbitalPartition:
    """Classes of ``(i,k) ~ (j,l)`` generated by ``u_ij u_kl != 0``."""
    ent, nz = u.product_table()
    return orbitals_from_table(ent, nz)


def is_transitive(u) -> bool:
    return len(orbits(u)) == 1


def is_doubly_transitive(u) -> bool:
    return len(orbitals(u)) == 2


def haar_orbit_check(u, hopf=None) -> list[str]:
    """Violations of ``int u_ij = 1/|orbit|`` inside an orbit and ``0`` outside."""
    h = hopf if hopf is not None else u.hopf
    orb = orbits(u)
    bad = []
    for i in range(u.n):
        for j in range(u.n):
            val = h.haar(u.entries[i][j])
            want = Cyclo(Fraction(1, orb.size_of(j))) if orb.class_of(i) == orb.class_of(j) else ZERO
            if val != want:
                bad.append(f"integral of u_{i + 1}{j + 1} is {val}, expected {want}")
    return bad


def shift_class(c: Iterable[tuple[int, int]], da: int, db: int) -> frozenset:
    return frozenset((i + da, k + db) for i, k in c)


def block_shift_check(u, layout, orb: OrbitalPartition | None = None) -> dict:
    """Orbitals between equal blocks are shifts of the in-block orbitals.

    For each ordered pair of distinct instances of the same representation,
    the cross classes must be exactly the in-block classes of the first
    instance with the second coordinate moved to the second instance.
    """
    orb = orb if orb is not None else orbitals(u)
    ranges = layout.vertex_ranges
    report = {"pairs": [], "violations": []}
    for a, (ra, sa, ea) in enumerate(ranges):
        inblock = orb.restricted(range(sa, ea), range(sa, ea))
        for b, (rb, sb, eb) in enumerate(ranges):
            if a == b or ra != rb:
                continue
            cross = set(orb.restricted(range(sa, ea), range(sb, eb)))
            expected = {shift_class(c, 0, sb - sa) for c in inblock}
            ok = cross == expected
            report["pairs"].append({"blocks": [a, b], "rep": ra, "classes": len(cross), "ok": ok})
            if not ok:
                report["violations"].append(f"blocks {a} and {b} ({ra}): cross orbitals are not block shifts")
            # every cross class must be a full orbital in its own right
            for c in cross:
                full = orb.classes[orb.class_of(*min(c))]
                if full != c:
                    report["violations"].append(f"blocks {a} and {b}: orbital leaks outside V_a x V_b")
                    break
    return report
