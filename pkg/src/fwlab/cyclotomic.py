"""Exact values in Z[zeta_p] and the character sums built on them.

Every additive character sum in this package is a histogram of trace
values: ``sum chi(f(x)) = sum_j #{x : Tr f(x) = j} * zeta^j``.  Keeping the
histogram as a :class:`CycInt` makes the sums exact for any prime p.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import InconsistentS, NonIntegerCoefficient
from .field import Field, SubsetTables, build_subsets, extension_field


class CycInt:
    """An element sum_j c_j zeta_p^j of Z[zeta_p], stored canonically.

    The canonical form has c_{p-1} = 0, using 1 + zeta + ... + zeta^{p-1} = 0.
    For p = 2 this leaves a single integer.
    """

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Iterable[int]):
        c = [int(v) for v in coeffs]
        if len(c) != p:
            raise ValueError(f"need {p} coefficients, got {len(c)}")
        top = c[-1]
        self.p = p
        self.coeffs = tuple(v - top for v in c)

    @classmethod
    def integer(cls, p: int, n: int) -> "CycInt":
        return cls(p, [n] + [0] * (p - 1))

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> "CycInt":
        c = [0] * p
        c[k % p] = 1
        return cls(p, c)

    @classmethod
    def from_histogram(cls, p: int, hist) -> "CycInt":
        return cls(p, [int(v) for v in hist])

    def _check(self, other: "CycInt") -> None:
        if other.p != self.p:
            raise ValueError(f"mixing Z[zeta_{self.p}] and Z[zeta_{other.p}]")

    def __add__(self, other):
        if isinstance(other, int):
            other = CycInt.integer(self.p, other)
        self._check(other)
        return CycInt(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % p] += a * b
        return CycInt(p, out)

    __rmul__ = __mul__

    def scale(self, k: int) -> "CycInt":
        return CycInt(self.p, [k * a for a in self.coeffs])

    def __pow__(self, e: int) -> "CycInt":
        if e < 0:
            raise ValueError("negative exponent")
        result = CycInt.integer(self.p, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycInt.integer(self.p, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"CycInt(p={self.p}, {list(self.coeffs)})"

    def __str__(self):
        if self.is_rational_integer():
            return str(self.coeffs[0])
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                mono = "1" if j == 0 else (f"z" if j == 1 else f"z^{j}")
                terms.append(f"{c}*{mono}" if j else str(c))
        return " + ".join(terms)

    def is_rational_integer(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_integer(self) -> int:
        if not self.is_rational_integer():
            raise ValueError(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def to_complex(self) -> complex:
        return sum(c * cmath.exp(2j * math.pi * k / self.p) for k, c in enumerate(self.coeffs) if c)

    def __abs__(self) -> float:
        return abs(self.to_complex())


# Functional spellings of the ring operations.
def cyc_add(x: CycInt, y: CycInt) -> CycInt:
    return x + y


def cyc_mul(x: CycInt, y: CycInt) -> CycInt:
    return x * y


def cyc_pow(x: CycInt, e: int) -> CycInt:
    return x**e


def cyc_scale(x: CycInt, k: int) -> CycInt:
    return x.scale(k)


def char_value(field: Field, x: int) -> CycInt:
    """chi(x) = zeta^Tr(x)."""
    return CycInt.zeta(field.p, field.abs_trace(x))


def char_sum(field: Field, xs) -> CycInt:
    """sum over xs of chi(x), computed as a trace histogram."""
    tr = field.trace_arr(np.asarray(xs, dtype=np.int64).ravel())
    return CycInt.from_histogram(field.p, np.bincount(tr, minlength=field.p))


@lru_cache(maxsize=None)
def _ext(p: int, l: int) -> Field:
    return extension_field(p, l)


def kloosterman(p: int, l: int, a: int, field: Field | None = None) -> CycInt:
    """K_l(a) = sum_{x in F_{p^l}^*} chi_l(a x + 1/x).

    ``a`` is an element int of GF(p^l) (built from the default polynomial
    unless ``field`` is passed).  Prime-field values 0..p-1 mean the same
    thing in every such field.
    """
    f = field if field is not None else _ext(p, l)
    if f.p != p or f.m != l:
        raise ValueError("field does not match (p, l)")
    xs = np.arange(1, f.q, dtype=np.int64)
    inv = f._exp[(-f._log[xs]) % (f.q - 1)]
    vals = f.add_arr(f.mul_arr(a, xs), inv)
    return char_sum(f, vals)


def kloosterman_in_subfield(field: Field, a: int, tables: SubsetTables | None = None) -> CycInt:
    """K_t(a) for a in the subfield F_{p^t} of ``field``.

    Uses the subfield's own trace Tr_1^t, computed inside ``field``, so no
    separate model of F_{p^t} is needed.
    """
    t = field._need_t()
    if not field.in_subfield_t(a):
        raise ValueError(f"{a} is not in F_(p^t)")
    if tables is None:
        tables = build_subsets(field)
    xs = np.array(tables.subfield_star, dtype=np.int64)
    inv = field._exp[(-field._log[xs]) % (field.q - 1)]
    vals = field.add_arr(field.mul_arr(a, xs), inv)
    acc = np.zeros_like(vals)
    for i in range(t):
        acc = field.add_arr(acc, field.pow_arr(vals, field.p**i))
    if np.any(acc >= field.p):
        raise ValueError("subfield trace left the prime field")
    return CycInt.from_histogram(field.p, np.bincount(acc, minlength=field.p))


def lift_coefficient(t: int, i: int) -> int:
    """t/(t-i) * C(t-i, i), asserted to be an integer."""
    c = Fraction(t, t - i) * math.comb(t - i, i)
    if c.denominator != 1:
        raise NonIntegerCoefficient(f"t={t}, i={i}: {c}")
    return int(c)


def kloosterman_lift(p: int, t: int, k1: CycInt) -> CycInt:
    """K_t(a) from K_1(a) for a in F_p^*.

    -sum_{i <= t/2} (-1)^(t-i) * t/(t-i) * C(t-i, i) * p^i * K_1(a)^(t-2i)
    """
    acc = CycInt.integer(p, 0)
    for i in range(t // 2 + 1):
        sign = -1 if (t - i) % 2 else 1
        acc = acc + (k1 ** (t - 2 * i)).scale(sign * lift_coefficient(t, i) * p**i)
    return -acc


def char_sum_over_delta(field: Field, tables: SubsetTables, a: int) -> CycInt:
    """sum_{x in Delta} chi(a x)."""
    return char_sum(field, field.mul_arr(a, np.array(tables.delta, dtype=np.int64)))


def s_direct(field: Field, tables: SubsetTables) -> int:
    """S by counting: p * #{x in Delta : Tr(x) = 0} - |Delta|."""
    tr = field.trace_arr(np.array(tables.delta, dtype=np.int64))
    return field.p * int(np.count_nonzero(tr == 0)) - len(tables.delta)


def s_series(p: int, t: int) -> int:
    """S from the Kloosterman series over z in F_p^*."""
    acc = CycInt.integer(p, 0)
    for z in range(1, p):
        acc = acc - kloosterman_lift(p, t, kloosterman(p, 1, (z * z) % p))
    if not acc.is_rational_integer():
        raise InconsistentS(f"series value {acc!r} is not a rational integer")
    return acc.as_integer()


def compute_S(field: Field, tables: SubsetTables | None = None) -> int:
    if tables is None:
        tables = build_subsets(field)
    direct = s_direct(field, tables)
    series = s_series(field.p, field._need_t())
    if direct != series:
        raise InconsistentS(f"direct count gives {direct}, Kloosterman series gives {series}")
    return direct
