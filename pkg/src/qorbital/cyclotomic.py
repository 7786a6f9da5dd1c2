"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored as integer coordinates over the power basis
``1, z, ..., z**(phi(n)-1)`` of ``Q(zeta_n)`` together with one positive
common denominator.  Operands with different conductors are lifted to the
lcm of the two conductors, so no global conductor is needed.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

from qorbital import _accel
from qorbital.errors import DomainError


class InvalidConductor(DomainError):
    pass


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def _mobius(n: int) -> int:
    result, p, m = 1, 2, n
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, constant term first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        div = cyclotomic_polynomial(d)
        # exact division by a monic integer polynomial
        out = [0] * (len(poly) - len(div) + 1)
        rem = list(poly)
        for i in range(len(out) - 1, -1, -1):
            c = rem[i + len(div) - 1]
            out[i] = c
            if c:
                for j, dj in enumerate(div):
                    rem[i + j] -= c * dj
        assert not any(rem), "cyclotomic division left a remainder"
        poly = out
    return tuple(poly)


class _Field:
    __slots__ = ("n", "phi", "table", "conj_rows", "weights", "_lifts", "_galois")

    def __init__(self, n: int):
        self.n = n
        poly = cyclotomic_polynomial(n)
        phi = len(poly) - 1
        self.phi = phi
        rows = []
        for e in range(max(n, 2 * phi - 1)):
            if e < phi:
                row = [0] * phi
                row[e] = 1
            else:
                prev = rows[e - 1]
                top = prev[phi - 1]
                row = [0] + list(prev[: phi - 1])
                if top:
                    for t in range(phi):
                        row[t] -= top * poly[t]
            rows.append(tuple(row))
        self.table = tuple(rows)
        self.conj_rows = tuple(rows[(n - k) % n] for k in range(phi))
        self.weights = tuple(
            Fraction(_mobius(n // gcd(n, k)), totient(n // gcd(n, k))) for k in range(phi)
        )
        self._lifts: dict[int, tuple] = {}
        self._galois: dict[int, tuple] = {}

    def lift_rows(self, m: int) -> tuple:
        rows = self._lifts.get(m)
        if rows is None:
            target = field(m)
            step = m // self.n
            rows = tuple(target.table[(k * step) % m] for k in range(self.phi))
            self._lifts[m] = rows
        return rows

    def galois_rows(self, a: int) -> tuple:
        rows = self._galois.get(a)
        if rows is None:
            rows = tuple(self.table[(a * k) % self.n] for k in range(self.phi))
            self._galois[a] = rows
        return rows


@lru_cache(maxsize=None)
def field(n: int) -> _Field:
    if n < 1:
        raise InvalidConductor(f"conductor must be a positive integer, got {n}")
    return _Field(n)


def _apply_rows(num, rows, width):
    out = [0] * width
    for k, c in enumerate(num):
        if c:
            for t, r in enumerate(rows[k]):
                if r:
                    out[t] += c * r
    return out


class Cyclo:
    """An element of Q(zeta_n) in canonical reduced form.

    Instances are immutable.  ``int`` and ``Fraction`` operands are accepted
    anywhere a ``Cyclo`` is.
    """

    __slots__ = ("n", "num", "den", "_hash")

    def __init__(self, value=0):
        if isinstance(value, Cyclo):
            self.n, self.num, self.den = value.n, value.num, value.den
        else:
            q = Fraction(value)
            self.n, self.num, self.den = 1, (q.numerator,), q.denominator
        self._hash = None

    @classmethod
    def _make(cls, n: int, num, den: int) -> "Cyclo":
        g = den
        for c in num:
            if c:
                g = gcd(g, c)
                if g == 1:
                    break
        if den < 0:
            g = -g
        if g != 1:
            num = [c // g for c in num]
            den //= g
        obj = cls.__new__(cls)
        obj._hash = None
        if not any(num[1:]):
            if num[0] == 0:
                den = 1
            obj.n, obj.num, obj.den = 1, (num[0],), den
        else:
            obj.n, obj.num, obj.den = n, tuple(num), den
        return obj

    @classmethod
    def from_exponents(cls, n: int, coeffs, den: int = 1) -> "Cyclo":
        """Build ``sum(c * zeta_n**k for k, c in coeffs) / den``.

        ``coeffs`` maps integer exponents (any range) to integer coefficients.
        """
        F = field(n)
        width = max(n, 2 * F.phi - 1)
        dense = [0] * width
        for k, c in (coeffs.items() if hasattr(coeffs, "items") else coeffs):
            dense[k % n] += c
        return cls._make(n, _accel.reduce_exponents(dense, F.table, F.phi), den)

    # -- conversions -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Cyclo):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return Cyclo(other)
        return NotImplemented

    def _at(self, m: int):
        if self.n == m:
            return list(self.num)
        F = field(self.n)
        return _apply_rows(self.num, F.lift_rows(m), field(m).phi)

    def lift(self, m: int) -> list[int]:
        """Numerators at conductor ``m`` (a multiple of ``self.n``); shares ``self.den``."""
        if m % self.n:
            raise InvalidConductor(f"{m} is not a multiple of conductor {self.n}")
        return self._at(m)

    def is_rational(self) -> bool:
        return self.n == 1

    def to_fraction(self) -> Fraction:
        if self.n != 1:
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def coefficients(self) -> list[tuple[int, Fraction]]:
        """Nonzero ``(k, coefficient of zeta_n**k)`` pairs in the power basis."""
        return [(k, Fraction(c, self.den)) for k, c in enumerate(self.num) if c]

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.n == 1 and other.num[0] == 0:
            return self
        if self.n == 1 and self.num[0] == 0:
            return other
        m = self.n if self.n == other.n else _lcm(self.n, other.n)
        a, b = self._at(m), other._at(m)
        da, db = self.den, other.den
        if da == db:
            return Cyclo._make(m, [x + y for x, y in zip(a, b)], da)
        return Cyclo._make(m, [x * db + y * da for x, y in zip(a, b)], da * db)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo._make(self.n, [-c for c in self.num], self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.n == 1:
            c = other.num[0]
            if c == 0:
                return ZERO
            return Cyclo._make(self.n, [c * x for x in self.num], self.den * other.den)
        if self.n == 1:
            return other * self
        m = self.n if self.n == other.n else _lcm(self.n, other.n)
        F = field(m)
        prod = _accel.poly_mulmod(self._at(m), other._at(m), F.table, F.phi)
        return Cyclo._make(m, prod, self.den * other.den)

    __rmul__ = __mul__

    def conj(self) -> "Cyclo":
        """Complex conjugate (zeta -> zeta**-1)."""
        if self.n == 1:
            return self
        F = field(self.n)
        return Cyclo._make(self.n, _apply_rows(self.num, F.conj_rows, F.phi), self.den)

    def galois(self, a: int) -> "Cyclo":
        """Image under the automorphism zeta_n -> zeta_n**a, gcd(a, n) = 1."""
        if gcd(a, self.n) != 1:
            raise ValueError(f"{a} is not a unit modulo {self.n}")
        if self.n == 1:
            return self
        F = field(self.n)
        return Cyclo._make(self.n, _apply_rows(self.num, F.galois_rows(a % self.n), F.phi), self.den)

    def inv(self) -> "Cyclo":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.n == 1:
            return Cyclo(Fraction(self.den, self.num[0]))
        n = self.n
        others = ONE
        for a in range(2, n):
            if gcd(a, n) == 1:
                others = others * self.galois(a)
        norm = self * others
        return others * Cyclo(1 / norm.to_fraction())

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparisons -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.n == 1 and self.num[0] == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.n == other.n:
            return self.den == other.den and self.num == other.num
        if self.n == 1 or other.n == 1:
            # canonical forms demote rationals to conductor 1
            return False
        return (self - other).is_zero()

    def _trace(self) -> Fraction:
        w = field(self.n).weights
        return sum((c * w[k] for k, c in enumerate(self.num) if c), Fraction(0)) / self.den

    def __hash__(self):
        # normalized traces do not depend on the conductor
        if self._hash is None:
            if self.n == 1:
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash((self._trace(), (self * self.conj())._trace()))
        return self._hash

    # -- display / serialization ------------------------------------------

    def __repr__(self):
        return f"Cyclo({self})"

    def __str__(self):
        if self.n == 1:
            return str(Fraction(self.num[0], self.den))
        parts = []
        for k, q in self.coefficients():
            if k == 0:
                parts.append(str(q))
            else:
                z = f"z{self.n}" if k == 1 else f"z{self.n}^{k}"
                parts.append(z if q == 1 else f"-{z}" if q == -1 else f"{q}*{z}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"n": self.n, "c": [[k, str(q)] for k, q in self.coefficients()]}

    @classmethod
    def from_json(cls, data: dict) -> "Cyclo":
        n = int(data["n"])
        total = ZERO
        for k, q in data["c"]:
            total = total + root_of_unity(n, int(k)) * Fraction(q)
        return total


ZERO = Cyclo(0)
ONE = Cyclo(1)


def root_of_unity(n: int, k: int = 1) -> Cyclo:
    """``zeta_n ** k``, with ``zeta_n = exp(2*pi*i/n)``."""
    if not isinstance(n, int) or n < 1:
        raise InvalidConductor(f"conductor must be a positive integer, got {n!r}")
    return Cyclo.from_exponents(n, {k % n: 1})


def arith(op: str, x, y=None) -> Cyclo:
    x = Cyclo(x)
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "conj":
        return x.conj()
    if op == "inv":
        return x.inv()
    raise ValueError(f"unknown operation {op!r}")


def is_zero(x) -> bool:
    return Cyclo(x).is_zero()


I = root_of_unity(4)
SQRT2 = root_of_unity(8) + root_of_unity(8, 7)
# quadratic Gauss sum at p = 5
SQRT5 = 1 + 2 * root_of_unity(5) + 2 * root_of_unity(5, 4)
PHI = (1 + SQRT5) * Fraction(1, 2)
