"""Arithmetic in GF(p^m) over a polynomial basis.

An element is a plain ``int`` in ``[0, q)`` whose base-p digits are its
coordinates in the basis 1, alpha, ..., alpha^(m-1), least significant digit
first.  So ``x == y`` iff the coordinate vectors agree, ``0`` is the zero
element, ``1`` is the unit, and for m >= 2 the root ``alpha`` is the integer
``p``.  The integers ``0 .. p-1`` are exactly the prime subfield.

Multiplication goes through discrete log / exponent tables, which is why the
defining polynomial must be primitive.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DivisionByZero,
    InternalError,
    InvalidPolynomial,
    NotPrime,
    NotPrimitive,
    SmallDegree,
    ZeroInput,
)

# Largest q for which a full addition table is kept (odd p only).
ADD_TABLE_MAX_Q = 2048

# (p, m) -> coefficients c_0 .. c_m, low to high.  Seeded with the
# polynomial used in the worked binary examples; other entries are filled
# in by search on first use.
_REGISTRY: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def load_registry(path: str | Path) -> dict[tuple[int, int], tuple[int, ...]]:
    """Read ``p m c_0 c_1 ... c_m`` lines into the polynomial registry.

    Blank lines and ``#`` comments are ignored.  Entries override anything
    already registered for the same ``(p, m)``.  Returns the parsed entries.
    """
    found = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        nums = [int(tok) for tok in line.split()]
        if len(nums) < 3:
            raise InvalidPolynomial(f"{path}:{lineno}: expected 'p m c_0 .. c_m'")
        p, m, coeffs = nums[0], nums[1], tuple(nums[2:])
        if len(coeffs) != m + 1:
            raise InvalidPolynomial(
                f"{path}:{lineno}: degree {m} needs {m + 1} coefficients, got {len(coeffs)}"
            )
        found[(p, m)] = coeffs
    _REGISTRY.update(found)
    return found


def format_poly(coeffs: Sequence[int]) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if i == 0:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms) if terms else "0"


def _power_table(p: int, m: int, poly: Sequence[int]) -> np.ndarray | None:
    """Successive powers alpha^0, alpha^1, ... as element ints.

    Returns the table of length q-1 if alpha has order exactly q-1,
    otherwise None.
    """
    q = p**m
    low = np.array(poly[:m], dtype=np.int64)
    weights = p ** np.arange(m, dtype=np.int64)
    vec = np.zeros(m, dtype=np.int64)
    vec[0] = 1
    out = np.empty(q - 1, dtype=np.int64)
    for k in range(q - 1):
        val = int(vec @ weights)
        if val == 0 or (k > 0 and val == 1):
            return None
        out[k] = val
        # multiply by alpha: shift up, then fold alpha^m = -sum c_i alpha^i
        top = vec[m - 1]
        vec = np.roll(vec, 1)
        vec[0] = 0
        vec = (vec - top * low) % p
    if int(vec @ weights) != 1:
        return None
    return out


def find_primitive_poly(p: int, m: int) -> tuple[int, ...]:
    """Smallest primitive monic polynomial of degree m over F_p.

    Candidates are ordered by the integer whose base-p digits are
    c_0, ..., c_{m-1} (c_0 least significant).
    """
    for code in range(1, p**m):
        low = [(code // p**i) % p for i in range(m)]
        if low[0] == 0:
            continue
        poly = tuple(low) + (1,)
        if _power_table(p, m, poly) is not None:
            return poly
    raise InternalError(f"no primitive polynomial of degree {m} over F_{p}")


def default_poly(p: int, m: int) -> tuple[int, ...]:
    key = (p, m)
    if key not in _REGISTRY:
        _REGISTRY[key] = find_primitive_poly(p, m)
    return _REGISTRY[key]


class Field:
    """GF(p^m) defined by a primitive polynomial with root alpha.

    ``t`` is set (m == 2t) for fields built by :func:`make_field`; plain
    extension fields used for Kloosterman sums leave it as ``None``.
    """

    def __init__(self, p: int, m: int, poly: Sequence[int] | None = None, t: int | None = None):
        if not is_prime(p):
            raise NotPrime(f"p={p} is not prime")
        if m < 1:
            raise InvalidPolynomial(f"degree must be positive, got {m}")
        if t is not None and m != 2 * t:
            raise InvalidPolynomial(f"m={m} must equal 2t={2 * t}")
        if poly is None:
            poly = default_poly(p, m)
        poly = tuple(int(c) for c in poly)
        if len(poly) != m + 1 or poly[-1] != 1:
            raise InvalidPolynomial(f"expected a monic polynomial of degree {m}, got {poly}")
        if any(not 0 <= c < p for c in poly):
            raise InvalidPolynomial(f"coefficients must lie in [0, {p}): {poly}")

        self.p = p
        self.m = m
        self.t = t
        self.q = p**m
        self.poly = poly

        exp = _power_table(p, m, poly)
        if exp is None:
            raise NotPrimitive(f"{format_poly(poly)} is not primitive over F_{p}")
        self.alpha_order = self.q - 1
        self._exp = exp
        log = np.full(self.q, -1, dtype=np.int64)
        log[exp] = np.arange(self.q - 1, dtype=np.int64)
        self._log = log
        self._weights = p ** np.arange(m, dtype=np.int64)
        ints = np.arange(self.q, dtype=np.int64)
        self.digits = (ints[:, None] // self._weights[None, :]) % p

        basis_traces = np.array([self._trace_by_frobenius(self.alpha_pow(i)) for i in range(m)],
                                dtype=np.int64)
        self._trace = (self.digits @ basis_traces) % p
        # dual_coords(a)_i = Tr(a alpha^i); encoded as an element-style int
        dual_digits = np.empty((self.q, m), dtype=np.int64)
        for i in range(m):
            dual_digits[:, i] = self._trace[self.mul_arr(ints, self.alpha_pow(i))]
        self._dual = dual_digits @ self._weights

        for arr in (self._exp, self._log, self.digits, self._trace, self._dual):
            arr.setflags(write=False)

    def __repr__(self) -> str:
        return f"Field(p={self.p}, m={self.m}, poly={format_poly(self.poly)!r})"

    # -- representation -------------------------------------------------
    @property
    def alpha(self) -> int:
        return int(self._exp[1 % (self.q - 1)])

    def alpha_pow(self, k: int) -> int:
        return int(self._exp[k % (self.q - 1)])

    def log(self, x: int) -> int:
        if x == 0:
            raise ZeroInput("log of zero")
        return int(self._log[x])

    def coords(self, x: int) -> tuple[int, ...]:
        return tuple(int(d) for d in self.digits[x])

    def element(self, coords: Iterable[int]) -> int:
        coords = list(coords)
        if len(coords) != self.m:
            raise ValueError(f"need {self.m} coordinates, got {len(coords)}")
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coords))

    def elements(self) -> range:
        return range(self.q)

    # -- scalar arithmetic ----------------------------------------------
    def add(self, x: int, y: int) -> int:
        if self.p == 2:
            return x ^ y
        return int(((self.digits[x] + self.digits[y]) % self.p) @ self._weights)

    def neg(self, x: int) -> int:
        if self.p == 2:
            return x
        return int(((-self.digits[x]) % self.p) @ self._weights)

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def scale(self, c: int, x: int) -> int:
        """Multiply by the prime-field scalar c."""
        return int(((c * self.digits[x]) % self.p) @ self._weights)

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return int(self._exp[(self._log[x] + self._log[y]) % (self.q - 1)])

    def inv(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("inverse of zero")
        return int(self._exp[(-self._log[x]) % (self.q - 1)])

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e == 0:
                return 1
            if e < 0:
                raise DivisionByZero("negative power of zero")
            return 0
        return int(self._exp[(int(self._log[x]) * e) % (self.q - 1)])

    # -- vectorised arithmetic over element arrays ----------------------
    @cached_property
    def _add_table(self) -> np.ndarray | None:
        if self.q > ADD_TABLE_MAX_Q:
            return None
        table = np.empty((self.q, self.q), dtype=np.int32)
        for x in range(self.q):
            table[x] = ((self.digits[x] + self.digits) % self.p) @ self._weights
        table.setflags(write=False)
        return table

    def add_arr(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.p == 2:
            return x ^ y
        if self._add_table is not None:
            return self._add_table[x, y].astype(np.int64)
        return ((self.digits[x] + self.digits[y]) % self.p) @ self._weights

    def neg_arr(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if self.p == 2:
            return x
        return ((-self.digits[x]) % self.p) @ self._weights

    def mul_arr(self, x, y) -> np.ndarray:
        x, y = np.broadcast_arrays(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64))
        out = self._exp[(self._log[x] + self._log[y]) % (self.q - 1)]
        return np.where((x == 0) | (y == 0), 0, out)

    def pow_arr(self, x, e: int) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        out = self._exp[(self._log[x] * e) % (self.q - 1)]
        if e == 0:
            return np.ones_like(x)
        return np.where(x == 0, 0, out)

    def trace_arr(self, x) -> np.ndarray:
        return self._trace[np.asarray(x, dtype=np.int64)]

    # -- traces ---------------------------------------------------------
    def frobenius(self, x: int, k: int = 1) -> int:
        """x^(p^k)."""
        if x == 0:
            return 0
        return int(self._exp[(int(self._log[x]) * pow(self.p, k, self.q - 1)) % (self.q - 1)])

    def _trace_by_frobenius(self, x: int) -> int:
        acc = 0
        for i in range(self.m):
            acc = self.add(acc, self.frobenius(x, i))
        if acc >= self.p:
            raise InternalError(f"trace of {x} left the prime field: {acc}")
        return acc

    def abs_trace(self, x: int) -> int:
        """Absolute trace to F_p, as a residue in [0, p)."""
        return int(self._trace[x])

    def subfield_trace(self, x: int, d: int) -> int:
        """Trace from the subfield F_{p^d} to F_p of an element lying in it."""
        if self.m % d:
            raise ValueError(f"{d} does not divide m={self.m}")
        if self.frobenius(x, d) != x:
            raise ValueError(f"{x} is not in F_{{p^{d}}}")
        acc = 0
        for i in range(d):
            acc = self.add(acc, self.frobenius(x, i))
        if acc >= self.p:
            raise InternalError(f"subfield trace of {x} left the prime field")
        return acc

    def dual_coords(self, a: int) -> tuple[int, ...]:
        """(Tr(a), Tr(a alpha), ..., Tr(a alpha^(m-1)))."""
        return self.coords(int(self._dual[a]))

    def dual_index(self, a) -> np.ndarray | int:
        """``dual_coords`` packed into an int; accepts arrays."""
        if np.ndim(a) == 0:
            return int(self._dual[a])
        return self._dual[np.asarray(a, dtype=np.int64)]

    # -- half-degree structure (requires t) -----------------------------
    def _need_t(self) -> int:
        if self.t is None:
            raise ValueError("operation needs a field built with make_field (m = 2t)")
        return self.t

    def rel_trace_t(self, x: int) -> int:
        """Tr_t^m(x) = x + x^(p^t), an element of F_{p^t}."""
        t = self._need_t()
        return self.add(x, self.frobenius(x, t))

    def in_subfield_t(self, x: int) -> bool:
        return self.frobenius(x, self._need_t()) == x


def make_field(p: int, t: int, poly: Sequence[int] | None = None,
               allow_small_t: bool = False) -> Field:
    """Build GF(p^(2t)).

    Without ``poly`` the registry entry (or, failing that, the smallest
    primitive polynomial) is used.
    """
    if not is_prime(p):
        raise NotPrime(f"p={p} is not prime")
    if t < 1:
        raise SmallDegree(f"t must be positive, got {t}")
    if t < 3:
        if not allow_small_t:
            raise SmallDegree(f"t={t}: the weight formulas assume t > 2 (pass allow_small_t)")
        warnings.warn(f"t={t}: the weight formulas assume t > 2", stacklevel=2)
    return Field(p, 2 * t, poly, t=t)


def extension_field(p: int, l: int) -> Field:
    """GF(p^l) with no half-degree structure, e.g. for Kloosterman sums."""
    return Field(p, l)


@dataclass(frozen=True)
class SubsetTables:
    delta: tuple[int, ...]          # <alpha^(p^t - 1)>, order p^t + 1
    gamma: tuple[int, ...]          # alpha^j, 0 <= j <= p^t
    subfield_star: tuple[int, ...]  # F_{p^t}^* = <alpha^(p^t + 1)>


def build_subsets(field: Field) -> SubsetTables:
    t = field._need_t()
    pt = field.p**t
    delta = tuple(field.alpha_pow(j * (pt - 1)) for j in range(pt + 1))
    gamma = tuple(field.alpha_pow(j) for j in range(pt + 1))
    sub = tuple(field.alpha_pow(j * (pt + 1)) for j in range(pt - 1))

    if len(set(delta)) != pt + 1 or any(field.pow(x, pt + 1) != 1 for x in delta):
        raise InternalError("Delta is not the subgroup of order p^t + 1")
    if len(set(gamma)) != pt + 1:
        raise InternalError("Gamma has repeated elements")
    if set(delta) != {field.pow(v, pt - 1) for v in gamma}:
        raise InternalError("Delta differs from {v^(p^t-1) : v in Gamma}")
    if any(not field.in_subfield_t(u) for u in sub) or len(set(sub)) != pt - 1:
        raise InternalError("subfield table is wrong")
    return SubsetTables(delta, gamma, sub)


def uv_decompose(field: Field, x: int) -> tuple[int, int]:
    """Split x = u*v with u in F_{p^t}^* and v in Gamma."""
    if x == 0:
        raise ZeroInput("uv_decompose(0)")
    pt = field.p**field._need_t()
    k = field.log(x)
    return field.alpha_pow((k // (pt + 1)) * (pt + 1)), field.alpha_pow(k % (pt + 1))


def find_v(field: Field, b: int, tables: SubsetTables | None = None) -> int:
    """The unique v in Gamma with Tr_t^m(b v) = 0."""
    if b == 0:
        raise ZeroInput("find_v(0)")
    if tables is None:
        tables = build_subsets(field)
    hits = [v for v in tables.gamma if field.rel_trace_t(field.mul(b, v)) == 0]
    if len(hits) != 1:
        raise InternalError(f"expected exactly one v for b={b}, found {hits}")
    return hits[0]


def span(field: Field, basis: Sequence[int]) -> list[int]:
    """All F_p-linear combinations of ``basis``, without deduplication."""
    out = []
    for coeffs in itertools.product(range(field.p), repeat=len(basis)):
        acc = 0
        for c, b in zip(coeffs, basis):
            if c:
                acc = field.add(acc, field.scale(c, b))
        out.append(acc)
    return out
