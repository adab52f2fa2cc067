"""Defining-set codes C_D, C_D1, C_D2 and their empirical weight data.

Positions of a codeword are the pairs (x, y) of the defining set D, sorted
by (y, x).  Codewords are indexed by pairs (a, b) of field elements; the
flat index of (a, b) is ``a + q*b`` throughout.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    BoundViolated,
    DimensionMismatch,
    IntersectionNotTrivial,
    TooLarge,
)
from .field import Field, span
from .transform import DEFAULT_BUDGET, char_count_transform

MINIMALITY_GUARD = 1 << 13


@dataclass
class DefiningSet:
    field: Field
    xs: np.ndarray      # x of each position, in canonical order
    ys: np.ndarray
    bitmap: np.ndarray  # over Z_p^(2m), index x + q*y

    def __len__(self) -> int:
        return len(self.xs)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.xs.tolist(), self.ys.tolist()))


def build_defining_set(field: Field) -> DefiningSet:
    """D = {(x, y) != (0, 0) : Tr(x + y^(p^t - 1)) = 0}, with 0^(p^t-1) = 0."""
    t = field._need_t()
    q = field.q
    all_x = np.arange(q, dtype=np.int64)
    ypow = field.pow_arr(all_x, field.p**t - 1)
    ypow[0] = 0
    bitmap = np.zeros(q * q, dtype=bool)
    for y in range(q):
        bitmap[y * q:(y + 1) * q] = field.trace_arr(field.add_arr(all_x, ypow[y])) == 0
    bitmap[0] = False
    idx = np.flatnonzero(bitmap)
    D = DefiningSet(field, idx % q, idx // q, bitmap)
    expected = field.p ** (2 * field.m - 1) - 1
    if len(D) != expected:
        raise DimensionMismatch(f"|D| = {len(D)}, expected {expected}")
    return D


def codeword(a: int, b: int, D: DefiningSet) -> np.ndarray:
    """(Tr(a x + b y)) over D, computed straight from field operations."""
    f = D.field
    return f.trace_arr(f.add_arr(f.mul_arr(a, D.xs), f.mul_arr(b, D.ys)))


def naive_weight(a: int, b: int, D: DefiningSet) -> int:
    return int(np.count_nonzero(codeword(a, b, D)))


def weight_table_full(field: Field, D: DefiningSet, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Weights of all p^(2m) codewords c(a, b), flat index a + q*b.

    One transform of D's indicator gives, at the point
    (dual_coords(a), dual_coords(b)), the count of positions where
    Tr(ax + by) = 0.
    """
    q = field.q
    spectrum = char_count_transform(field.p, 2 * field.m, D.bitmap, budget=budget)
    zeros = spectrum.zero_bin
    sums = spectrum.data.sum(axis=1)
    if not np.all(sums == len(D)):
        raise DimensionMismatch("transform histograms do not conserve |D|")
    dual = field.dual_index(np.arange(q, dtype=np.int64))
    u = dual[None, :] + q * dual[:, None]  # row b, column a
    weights = (len(D) - zeros[u]).astype(np.int64).ravel()
    return weights


@dataclass(frozen=True)
class CodeFamily:
    kind: str                            # "cd", "cd1" or "cd2"
    T_basis: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("cd", "cd1", "cd2"):
            raise ValueError(f"unknown family {self.kind!r}")
        if self.kind == "cd1" and not self.T_basis:
            raise ValueError("cd1 needs a basis for T")

    def dimension(self, field: Field) -> int:
        m = field.m
        return {"cd": 2 * m, "cd1": m + len(self.T_basis), "cd2": 2 * m - 1}[self.kind]

    def member_mask(self, field: Field) -> np.ndarray:
        """Boolean mask over flat (a, b) indices of the family's codewords."""
        q, p = field.q, field.p
        a = np.tile(np.arange(q), q)
        b = np.repeat(np.arange(q), q)
        if self.kind == "cd":
            return np.ones(q * q, dtype=bool)
        if self.kind == "cd1":
            inT = np.zeros(q, dtype=bool)
            inT[span(field, self.T_basis)] = True
            return inT[a]
        # cd2: a and b share the alpha^0 coordinate
        return (a % p) == (b % p)

    def generators(self, field: Field) -> list[tuple[int, int]]:
        m = field.m
        if self.kind == "cd":
            return [(field.alpha_pow(i), 0) for i in range(m)] + [(0, field.alpha_pow(i)) for i in range(m)]
        if self.kind == "cd1":
            return [(tau, 0) for tau in self.T_basis] + [(0, field.alpha_pow(i)) for i in range(m)]
        return ([(field.alpha_pow(i), 0) for i in range(1, m)]
                + [(0, field.alpha_pow(i)) for i in range(1, m)] + [(1, 1)])


def validate_T(field: Field, basis: Sequence[int]) -> None:
    """|T| = p^r with 1 <= r <= m-1 and T meets F_p only in 0."""
    r = len(basis)
    if not 1 <= r <= field.m - 1:
        raise ValueError(f"need 1 <= r <= {field.m - 1}, got r={r}")
    elems = set(span(field, basis))
    if len(elems) != field.p**r:
        raise ValueError(f"basis is linearly dependent: |T| = {len(elems)} != {field.p}^{r}")
    if any(0 < x < field.p for x in elems):
        raise IntersectionNotTrivial("T contains a nonzero element of F_p")


def default_T(field: Field, r: int) -> tuple[int, ...]:
    """alpha, alpha^2, ..., alpha^r."""
    basis = tuple(field.alpha_pow(i) for i in range(1, r + 1))
    validate_T(field, basis)
    return basis


@dataclass
class WeightDistribution:
    entries: dict[int, int]
    k: int
    n: int
    p: int = 2

    def items(self):
        return sorted(self.entries.items())

    @property
    def nonzero_weights(self) -> list[int]:
        return sorted(w for w in self.entries if w)

    @property
    def min_distance(self) -> int:
        return min(self.nonzero_weights)

    def enumerator(self) -> str:
        parts = []
        for w, f in self.items():
            mono = "1" if w == 0 else f"x^{w}"
            parts.append(mono if f == 1 and w else (str(f) if w == 0 else f"{f}{mono}"))
        return " + ".join(parts)


def weight_distribution(family: CodeFamily, table: np.ndarray, field: Field, n: int) -> WeightDistribution:
    k = family.dimension(field)
    w = table[family.member_mask(field)]
    counts = Counter(w.tolist())
    total = sum(counts.values())
    if total != field.p**k:
        raise DimensionMismatch(f"{total} codewords, expected p^{k} = {field.p**k}")
    if counts.get(0) != 1:
        raise DimensionMismatch(f"{counts.get(0, 0) - 1} nonzero (a, b) give the zero word; dimension < {k}")
    if max(counts) > n:
        raise DimensionMismatch("weight exceeds code length")
    return WeightDistribution(dict(sorted(counts.items())), k, n, field.p)


def generator_matrix(family: CodeFamily, D: DefiningSet) -> np.ndarray:
    return np.stack([codeword(a, b, D) for a, b in family.generators(D.field)]).astype(np.int8)


def zero_coordinates(family: CodeFamily, D: DefiningSet) -> int:
    """Number of positions where every codeword of the family vanishes."""
    G = generator_matrix(family, D)
    return int(np.count_nonzero(~G.any(axis=0)))


def check_no_zero_coordinate(family: CodeFamily, D: DefiningSet) -> bool:
    return zero_coordinates(family, D) == 0


# -- dual distance ------------------------------------------------------

def _vec_ops(p: int, dim: int):
    w = p ** np.arange(dim, dtype=np.int64)

    def digits(v):
        return (np.asarray(v, dtype=np.int64)[..., None] // w) % p

    def pack(d):
        return (d % p) @ w

    return digits, pack


def _normalize(cols: np.ndarray, p: int, dim: int) -> np.ndarray:
    """Scale each column so its lowest nonzero coordinate is 1."""
    digits, pack = _vec_ops(p, dim)
    d = digits(cols)
    first = np.argmax(d != 0, axis=1)
    lead = d[np.arange(len(cols)), first]
    inv = np.array([0] + [pow(c, -1, p) for c in range(1, p)], dtype=np.int64)
    return pack(d * inv[lead][:, None])


def min_dependent_columns(cols, p: int, dim: int, exhaustive_limit: int = 4096) -> int | None:
    """Smallest s <= 4 such that some s of the (nonzero) columns are dependent.

    Returns None if no dependency of size <= 4 exists; the size-4 search
    only runs when there are at most ``exhaustive_limit`` columns, and
    raises TooLarge otherwise.
    """
    cols = np.asarray(cols, dtype=np.int64)
    if np.any(cols == 0):
        return 1
    size = p**dim
    norm = _normalize(cols, p, dim)
    if len(np.unique(norm)) < len(norm):
        return 2
    present = np.zeros(size, dtype=bool)
    present[cols] = True
    digits, pack = _vec_ops(p, dim)
    dig = digits(cols)
    # no proportional pairs now, so c1 g1 + c2 g2 is a third, distinct column
    for i in range(len(cols)):
        for c1 in range(1, p):
            for c2 in range(1, p):
                sums = pack(c1 * dig[i][None, :] + c2 * dig[i + 1:])
                if np.any(present[sums]):
                    return 3
    if len(cols) > exhaustive_limit:
        raise TooLarge(f"{len(cols)} columns exceed the exhaustive size-4 limit")
    # meet in the middle: c1 g1 + c2 g2 == c3 g3 + c4 g4 on disjoint pairs
    seen: dict[int, tuple[int, int]] = {}
    for i, j in itertools.combinations(range(len(cols)), 2):
        for c1 in range(1, p):
            for c2 in range(1, p):
                v = int(pack(c1 * dig[i] + c2 * dig[j]))
                other = seen.get(v)
                if other is not None and not {i, j} & set(other):
                    return 4
                seen.setdefault(v, (i, j))
    return None


def hamming_bound_caps_dual(n: int, k: int, p: int) -> bool:
    """True iff an [n, n-k] code over F_p cannot have minimum distance >= 5."""
    ball = 1 + n * (p - 1) + math.comb(n, 2) * (p - 1) ** 2
    return ball > p**k


def dual_min_distance_upto4(field: Field, D: DefiningSet, exhaustive_limit: int = 4096) -> int:
    """Minimum distance of the dual of C_D, known to lie in [2, 4].

    Column at (x, y) is (dual_coords(x), dual_coords(y)) in Z_p^(2m).
    """
    q = field.q
    cols = field.dual_index(D.xs) + q * field.dual_index(D.ys)
    dim = 2 * field.m
    try:
        s = min_dependent_columns(cols, field.p, dim, exhaustive_limit)
    except TooLarge:
        if not hamming_bound_caps_dual(len(D), dim, field.p):
            raise BoundViolated("Hamming bound no longer forces a dual distance <= 4")
        return 4
    if s is None or s < 2:
        raise BoundViolated(f"dual distance outside [2, 4]: search returned {s}")
    return s


# -- minimality ---------------------------------------------------------

def all_codewords(family: CodeFamily, D: DefiningSet) -> np.ndarray:
    G = generator_matrix(family, D).astype(np.int64)
    k = G.shape[0]
    p = D.field.p
    coeffs = np.array(list(itertools.product(range(p), repeat=k)), dtype=np.int64)
    return (coeffs @ G) % p


def is_minimal_exhaustive(family: CodeFamily, D: DefiningSet,
                          guard: int = MINIMALITY_GUARD) -> tuple[bool, tuple[int, int] | None]:
    """Pairwise support-containment scan.

    Returns (minimal, witness) where witness is a pair of row indices
    (i, j) into :func:`all_codewords` with supp(j) a proper subset of
    supp(i).
    """
    field = D.field
    k = family.dimension(field)
    if field.p**k > guard:
        raise TooLarge(f"p^k = {field.p**k} exceeds the exhaustive guard {guard}")
    words = all_codewords(family, D)
    supp = (words != 0)
    rows = np.flatnonzero(supp.any(axis=1))
    supp = supp[rows]
    sizes = supp.sum(axis=1)
    s = supp.astype(np.float32)
    # float32 sums of 0/1 are exact below 2^24
    inter = (s @ s.T).astype(np.int64)
    covers = (inter == sizes[None, :]) & (sizes[:, None] > sizes[None, :])
    hit = np.argwhere(covers)
    if len(hit):
        return False, (int(rows[hit[0, 0]]), int(rows[hit[0, 1]]))
    return True, None
