"""Closed-form predictions for the defining-set codes and checks against data."""

from __future__ import annotations

import difflib
import enum
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable

from .codes import WeightDistribution
from .cyclotomic import CycInt, kloosterman
from .errors import NonIntegralFrequency, ZeroPair
from .field import Field, SubsetTables, find_v

BOUND_SLACK = 1e-9


@dataclass
class PredictedDistribution:
    entries: list[tuple[int, int, str]]  # (weight, frequency, label)
    S: int
    params: tuple[int, int]
    k: int

    def as_map(self) -> dict[int, int]:
        """Weight -> frequency, merging labels whose weights coincide."""
        out: dict[int, int] = {}
        for w, f, _ in self.entries:
            if f:
                out[w] = out.get(w, 0) + f
        return dict(sorted(out.items()))

    @property
    def distinct_labels(self) -> bool:
        ws = [w for w, f, _ in self.entries if f]
        return len(ws) == len(set(ws))


def _exact_div(num: int, den: int, what: str) -> int:
    if num % den:
        raise NonIntegralFrequency(f"{what}: {num} is not divisible by {den}")
    return num // den


def table_weights(field: Field, S: int) -> dict[str, int]:
    p, m, t = field.p, field.m, field._need_t()
    pt = p**t
    base = (p ** (2 * m - 2) - p ** (m - 2)) * (p - 1)
    return {
        "w1": p ** (2 * m - 2) * (p - 1),
        "w2": base - p ** (m - 2) * (pt - 1) * S,
        "w3": base - p ** (m - 2) * (pt * (p - 1) - S),
        "w4": base + p ** (m - 2) * (pt + S),
    }


def predict_cd(field: Field, S: int) -> PredictedDistribution:
    p, m, t = field.p, field.m, field._need_t()
    w = table_weights(field, S)
    pm = p**m
    mix = (p ** (t + 1) - p**t - p + 1) * S
    freqs = {
        "w1": pm * (pm - p + 1) - 1,
        "w2": p - 1,
        "w3": _exact_div((p - 1) * (pm - 1) + mix, p, "A_w3"),
        "w4": _exact_div((p * p - 2 * p + 1) * (pm - 1) - mix, p, "A_w4"),
    }
    entries = [(0, 1, "w0")] + [(w[k], freqs[k], k) for k in ("w1", "w2", "w3", "w4")]
    return _finish(entries, S, field, 2 * m)


def predict_cd1(field: Field, r: int) -> PredictedDistribution:
    p, m = field.p, field.m
    if not 1 <= r <= m - 1:
        raise ValueError(f"need 1 <= r <= {m - 1}")
    entries = [(0, 1, "w0"), (p ** (2 * m - 2) * (p - 1), p ** (m + r) - 1, "w1")]
    return _finish(entries, None, field, m + r)


def predict_cd2(field: Field, S: int) -> PredictedDistribution:
    p, m, t = field.p, field.m, field._need_t()
    if t < 2:
        raise NonIntegralFrequency("p^(t-2) is fractional for t < 2")
    w = table_weights(field, S)
    pt = p**t
    entries = [
        (0, 1, "w0"),
        (w["w1"], p ** (2 * m - 1) - 1 - p ** (m - 1) * (p - 1), "w1"),
        (w["w3"], (p - 1) * (pt + S - p + 1) * p ** (t - 2), "w3"),
        (w["w4"], (p - 1) * (p ** (t + 1) - pt + p - 1 - S) * p ** (t - 2), "w4"),
    ]
    return _finish(entries, S, field, 2 * m - 1)


def _finish(entries, S, field: Field, k: int) -> PredictedDistribution:
    if any(f < 0 for _, f, _ in entries):
        raise NonIntegralFrequency(f"negative frequency in {entries}")
    total = sum(f for _, f, _ in entries)
    if total != field.p**k:
        raise NonIntegralFrequency(f"frequencies sum to {total}, expected p^{k}")
    return PredictedDistribution(entries, S, (field.p, field.t), k)


class PairClass(enum.Enum):
    A_NOT_UNIT = "a not in F_p^*"
    B_ZERO = "a in F_p^*, b = 0"
    VB_TRACE_ZERO = "a in F_p^*, Tr(v_b^(p^t-1)) = 0"
    VB_TRACE_NONZERO = "a in F_p^*, Tr(v_b^(p^t-1)) != 0"


def classify_pair(a: int, b: int, field: Field, tables: SubsetTables | None = None) -> PairClass:
    if a == 0 and b == 0:
        raise ZeroPair("(a, b) = (0, 0)")
    if not 0 < a < field.p:
        return PairClass.A_NOT_UNIT
    if b == 0:
        return PairClass.B_ZERO
    v = find_v(field, b, tables)
    if field.abs_trace(field.pow(v, field.p ** field.t - 1)) == 0:
        return PairClass.VB_TRACE_ZERO
    return PairClass.VB_TRACE_NONZERO


def predict_N(cls: PairClass, field: Field, S: int) -> int:
    """Zeros of c(a, b) on D for a pair of the given class."""
    p, m, t = field.p, field.m, field._need_t()
    base = p ** (2 * m - 2) - 1
    if cls is PairClass.A_NOT_UNIT:
        return base
    if cls is PairClass.B_ZERO:
        return base + p ** (m - 2) * (p - 1) + p ** (m - 2) * (p**t - 1) * S
    if cls is PairClass.VB_TRACE_ZERO:
        return base + (p ** (m - 2) + p ** (m + t - 2)) * (p - 1) - p ** (m - 2) * S
    return base + p ** (m - 2) * (p - 1) - p ** (m + t - 2) - p ** (m - 2) * S


def pless_check(dist: WeightDistribution, A1_dual: int) -> bool:
    """First two Pless power moments."""
    p, k, n = dist.p, dist.k, dist.n
    first = sum(dist.entries.values()) == p**k
    # multiplied through by p so k = 0 stays in integers
    second = p * sum(w * f for w, f in dist.entries.items()) == p**k * (p * n - n - A1_dual)
    return first and second


@dataclass
class BoundItem:
    name: str
    value: float
    bound: float

    @property
    def passed(self) -> bool:
        return self.value <= self.bound + BOUND_SLACK

    def as_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "bound": self.bound, "passed": self.passed}


def bound_checks(p: int, t: int, S: int, samples: Iterable[tuple[int, CycInt]]) -> list[BoundItem]:
    """|K_t(a)| <= 2 sqrt(p^t) for each sample and |S| <= 2(p-1) sqrt(p^t)."""
    items = []
    lim = 2 * math.sqrt(p**t)
    for a, K in samples:
        if a == 0:
            continue
        items.append(BoundItem(f"|K_{t}({a})|", abs(K), lim))
    items.append(BoundItem("|S|", float(abs(S)), (p - 1) * lim))
    return items


def kloosterman_samples(p: int, t: int) -> list[tuple[int, CycInt]]:
    """K_t(a) for every nonzero a of GF(p^t)."""
    return [(a, kloosterman(p, t, a)) for a in range(1, p**t)]


def ashikhmin_barg(dist: WeightDistribution | dict[int, int], p: int | None = None) -> bool:
    """w_min / w_max > (p - 1) / p, in exact arithmetic."""
    if isinstance(dist, WeightDistribution):
        p = dist.p if p is None else p
        entries = dist.entries
    else:
        entries = dist
    ws = [w for w, f in entries.items() if w and f]
    if not ws:
        raise ValueError("no nonzero weights")
    return Fraction(min(ws), max(ws)) > Fraction(p - 1, p)


@dataclass
class Verdict:
    passed: bool
    per_weight: dict[int, bool] = dc_field(default_factory=dict)
    diff: str = ""


def _lines(entries: dict[int, int]) -> list[str]:
    return [f"{w}: {f}\n" for w, f in sorted(entries.items())]


def compare(empirical: WeightDistribution | dict[int, int], predicted: PredictedDistribution) -> Verdict:
    emp = empirical.entries if isinstance(empirical, WeightDistribution) else dict(empirical)
    pred = predicted.as_map()
    per = {w: emp.get(w) == pred.get(w) for w in sorted(set(emp) | set(pred))}
    ok = emp == pred
    diff = "" if ok else "".join(difflib.unified_diff(
        _lines(pred), _lines(emp), fromfile="predicted", tofile="empirical"))
    return Verdict(ok, per, diff)
