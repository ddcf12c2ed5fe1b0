"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Numbers are stored in canonical form: a polynomial in zeta of degree
< phi(N), reduced modulo the N-th cyclotomic polynomial.  Equality,
conjugation and unitarity checks are therefore exact and decidable.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rat = Union[int, Fraction]


def _poly_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Division of coefficient lists (low degree first); den must be monic."""
    num = list(num)
    dd = len(den) - 1
    if dd < 0 or den[-1] != 1:
        raise ValueError("denominator must be monic")
    quot = [Fraction(0)] * max(len(num) - dd, 0)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    while num and num[-1] == 0:
        num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[Fraction, ...]:
    """Coefficients (low first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    # Phi_n = (z^n - 1) / prod_{d | n, d < n} Phi_d
    poly = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            if rem:
                raise AssertionError("cyclotomic division must be exact")
    return tuple(poly)


class CyclotomicNumber:
    """An element of Q(zeta_N) with exact rational coordinates."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs: Iterable[Rat], _canonical: bool = False):
        if order < 1:
            raise ValueError("cyclotomic order must be positive")
        self.order = order
        cs = [Fraction(c) for c in coeffs]
        if not _canonical:
            cs = self._reduce(order, cs)
        phi = len(cyclotomic_polynomial(order)) - 1
        cs += [Fraction(0)] * (phi - len(cs))
        self.coeffs = tuple(cs)
        self._hash = None

    @staticmethod
    def _reduce(order: int, cs: list[Fraction]) -> list[Fraction]:
        # first fold exponents mod N (zeta^N = 1), then reduce mod Phi_N
        folded = [Fraction(0)] * order
        for k, c in enumerate(cs):
            folded[k % order] += c
        _, rem = _poly_divmod(folded, list(cyclotomic_polynomial(order)))
        return rem

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "CyclotomicNumber":
        return cls(order, [])

    @classmethod
    def one(cls, order: int) -> "CyclotomicNumber":
        return cls.from_rational(order, 1)

    @classmethod
    def from_rational(cls, order: int, value: Rat) -> "CyclotomicNumber":
        return cls(order, [Fraction(value)])

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> "CyclotomicNumber":
        cs = [Fraction(0)] * (power % order) + [Fraction(1)]
        return cls(order, cs)

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            if other.order != self.order:
                raise ValueError("mixed cyclotomic orders")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.from_rational(self.order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CyclotomicNumber(
            self.order,
            [a + b for a, b in zip(self.coeffs, other.coeffs)],
            _canonical=True,
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, [-a for a in self.coeffs], _canonical=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prod = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    prod[i + j] += a * b
        return CyclotomicNumber(self.order, prod)

    __rmul__ = __mul__

    def conjugate(self) -> "CyclotomicNumber":
        """Complex conjugation, the field map zeta -> zeta^(N-1)."""
        n = self.order
        out = [Fraction(0)] * n
        for k, c in enumerate(self.coeffs):
            out[(k * (n - 1)) % n] += c
        return CyclotomicNumber(n, out)

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def is_real(self) -> bool:
        return self.conjugate() == self

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def to_complex(self) -> complex:
        z = cmath.exp(2j * math.pi / self.order)
        return sum(float(c) * z**k for k, c in enumerate(self.coeffs))

    # -- dunder plumbing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_rational(self.order, other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.order, self.coeffs))
        return self._hash

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*z" if c != 1 else "z")
            else:
                terms.append(f"{c}*z^{k}" if c != 1 else f"z^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"Cyc({self.order}: {body})"


CycVector = tuple  # tuple of CyclotomicNumber


def vec(order: int, entries: Sequence) -> CycVector:
    out = []
    for e in entries:
        if isinstance(e, CyclotomicNumber):
            out.append(e)
        else:
            out.append(CyclotomicNumber.from_rational(order, e))
    return tuple(out)


def vec_add(u: CycVector, v: CycVector) -> CycVector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: CycVector, v: CycVector) -> CycVector:
    return tuple(a - b for a, b in zip(u, v))


def vec_norm_sq(u: CycVector) -> CyclotomicNumber:
    """|u|^2 = sum u_i conj(u_i); a real cyclotomic number."""
    if not u:
        raise ValueError("empty vector")
    acc = CyclotomicNumber.zero(u[0].order)
    for a in u:
        acc = acc + a * a.conjugate()
    return acc


class CycMatrix:
    """Square matrix with CyclotomicNumber entries (row-major)."""

    __slots__ = ("order", "n", "rows", "_hash")

    def __init__(self, order: int, rows: Sequence[Sequence]):
        self.order = order
        self.n = len(rows)
        fixed = []
        for row in rows:
            if len(row) != self.n:
                raise ValueError("matrix must be square")
            fixed.append(vec(order, row))
        self.rows = tuple(fixed)
        self._hash = None

    @classmethod
    def identity(cls, order: int, n: int) -> "CycMatrix":
        return cls(order, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        if self.n != other.n or self.order != other.order:
            raise ValueError("incompatible matrices")
        n = self.n
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = CyclotomicNumber.zero(self.order)
                for k in range(n):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            rows.append(row)
        return CycMatrix(self.order, rows)

    def apply(self, v: CycVector) -> CycVector:
        if len(v) != self.n:
            raise ValueError("dimension mismatch")
        out = []
        for i in range(self.n):
            acc = CyclotomicNumber.zero(self.order)
            for k in range(self.n):
                acc = acc + self.rows[i][k] * v[k]
            out.append(acc)
        return tuple(out)

    def conjugate_transpose(self) -> "CycMatrix":
        return CycMatrix(
            self.order,
            [[self.rows[j][i].conjugate() for j in range(self.n)] for i in range(self.n)],
        )

    def is_unitary(self) -> bool:
        return self @ self.conjugate_transpose() == CycMatrix.identity(self.order, self.n)

    def is_identity(self) -> bool:
        return self == CycMatrix.identity(self.order, self.n)

    def inverse_unitary(self) -> "CycMatrix":
        """Inverse of a unitary matrix (conjugate transpose)."""
        return self.conjugate_transpose()

    def column(self, j: int) -> CycVector:
        return tuple(self.rows[i][j] for i in range(self.n))

    def __eq__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        return self.order == other.order and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.order, self.rows))
        return self._hash

    def __repr__(self):
        return f"CycMatrix({self.order}, {[list(r) for r in self.rows]})"


def compare_real(x: CyclotomicNumber, bound: Rat) -> int:
    """Sign of (x - bound) for a real cyclotomic x.

    Exact when x is rational; otherwise decided through the complex
    embedding (entries at desk scale, well away from float noise).
    """
    if not x.is_real():
        raise ValueError("comparison requires a real cyclotomic number")
    if x.is_rational():
        d = x.as_fraction() - Fraction(bound)
        return (d > 0) - (d < 0)
    d = x.to_complex().real - float(Fraction(bound))
    if abs(d) < 1e-9:
        return 0
    return 1 if d > 0 else -1
