"""Three- versus four-qubit resource comparison over the input weight alpha^2."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import bisect

from .entanglement import analytic_c3, analytic_c4
from .errors import BadParams

SERIES_4Q = ("C4_1", "C4_2", "C4_3", "C4_4")
SERIES_3Q = ("C3_1", "C3_2", "C3_3")
SERIES = SERIES_4Q + SERIES_3Q
INPUT_DEPENDENT = ("C4_1", "C4_2", "C4_3", "C3_1", "C3_2")

LARGE_K = 1e4
TIE_TOL = 1e-12
MATCH_TOL = 1e-6
XTOL = 1e-13
SCAN_POINTS = 4001
_EDGE = 1e-9


def series_value(name: str, k: float, alpha_sq: float) -> float:
    if name not in SERIES:
        raise BadParams(f"unknown series {name!r}")
    alpha = math.sqrt(alpha_sq)
    case = int(name[-1])
    return analytic_c4(case, k, alpha) if name.startswith("C4") else analytic_c3(case, k, alpha)


@dataclass
class CurveTable:
    k: float
    grid: np.ndarray
    columns: dict[str, np.ndarray]


def alpha_sq_grid(grid_size: int) -> np.ndarray:
    """Uniform interior grid on (0, 1); the product-state endpoints are excluded."""
    if grid_size < 2:
        raise BadParams(f"grid_size must be >= 2, got {grid_size}")
    return np.arange(1, grid_size + 1) / (grid_size + 1)


def curves(k: float, grid_size: int = 1000, names: Sequence[str] = SERIES) -> CurveTable:
    grid = alpha_sq_grid(grid_size)
    cols = {name: np.array([series_value(name, k, x) for x in grid]) for name in names}
    return CurveTable(float(k), grid, cols)


def scan_grid(n_scan: int = SCAN_POINTS) -> np.ndarray:
    """Uniform interior points, densified geometrically towards both ends."""
    tail = np.geomspace(_EDGE, 1e-3, 120)
    return np.unique(np.concatenate([np.linspace(_EDGE, 1 - _EDGE, n_scan), tail, 1 - tail]))


def _roots(f: Callable[[float], float], n_scan: int = SCAN_POINTS) -> list[float]:
    xs = scan_grid(n_scan)
    ys = np.array([f(x) for x in xs])
    if np.all(np.abs(ys) < TIE_TOL):
        return []
    roots = []
    for i in range(len(xs) - 1):
        y0, y1 = ys[i], ys[i + 1]
        if y0 == 0.0:
            if i > 0 and ys[i - 1] * y1 < 0:
                roots.append(float(xs[i]))
            continue
        if y0 * y1 < 0:
            roots.append(float(bisect(f, xs[i], xs[i + 1], xtol=XTOL, rtol=4 * np.finfo(float).eps)))
    return roots


def crossing(series_a: str, series_b: str, k: float) -> list[float]:
    """All alpha^2 in (0, 1) where two concurrence curves cross (sign scan + bisection)."""
    if series_a == series_b:
        return []
    return _roots(lambda x: series_value(series_a, k, x) - series_value(series_b, k, x))


# Published range boundaries, as functions of k.
_R2 = math.sqrt(2)
PRINTED_EXPRESSIONS: dict[str, Callable[[float], float]] = {
    "c1c1_cross": lambda k: (_R2 - 1) / ((2 - _R2) * k + 1),
    "c2c2_cross": lambda k: k * (_R2 - 1) / ((k + 2) - _R2),
    "rk1_minus_r2": lambda k: (math.sqrt(k + 1) - _R2) / (k * _R2 - math.sqrt(k + 1)),
    "r2k_minus_rkk1": lambda k: (_R2 * k - math.sqrt(k) * math.sqrt(k + 1))
    / (math.sqrt(k) * math.sqrt(k + 1) - _R2),
    "k_minus_r2k": lambda k: (k - math.sqrt(2 * k)) / (math.sqrt(2 * k) - (k + 2)),
    "k_minus_rkk1": lambda k: (k - math.sqrt(k) * math.sqrt(k + 1))
    / (math.sqrt(k) * math.sqrt(k + 1) - (k + 2)),
}

PRINTED_CASES: dict[int, tuple[str, ...]] = {
    1: ("c2c2_cross",),
    2: ("c1c1_cross", "rk1_minus_r2", "r2k_minus_rkk1"),
    3: ("c1c1_cross", "k_minus_r2k", "k_minus_rkk1", "r2k_minus_rkk1"),
    4: ("c1c1_cross", "k_minus_r2k", "r2k_minus_rkk1"),
}


@dataclass(frozen=True)
class PrintedThreshold:
    case: int
    expr_id: str
    value: float

    @property
    def valid(self) -> bool:
        return 0 < self.value < 1


def printed_case_applies(case: int, k: float) -> bool:
    return {1: k == 1, 2: k == 2, 3: k > 2, 4: k >= LARGE_K}[case]


def printed_thresholds(case: int, k: float) -> list[PrintedThreshold]:
    """Evaluate the published boundaries of one comparison case; nothing is dropped."""
    if case not in PRINTED_CASES:
        raise BadParams(f"comparison case must be 1-4, got {case}")
    if not printed_case_applies(case, k):
        raise BadParams(f"comparison case {case} is not stated for k={k}")
    return [PrintedThreshold(case, e, PRINTED_EXPRESSIONS[e](k)) for e in PRINTED_CASES[case]]


def envelopes(k: float, alpha_sq: float, names: Sequence[str] = SERIES) -> tuple[tuple[float, str], tuple[float, str]]:
    """(value, argmax) of the pointwise maximum for the 4-qubit and 3-qubit series."""
    four = [(series_value(s, k, alpha_sq), s) for s in names if s in SERIES_4Q]
    three = [(series_value(s, k, alpha_sq), s) for s in names if s in SERIES_3Q]
    if not four or not three:
        raise BadParams("need at least one series per resource")
    return max(four), max(three)


def classify(k: float, alpha_sq: float, names: Sequence[str] = SERIES) -> str:
    """'4q', '3q' or 'tie' by comparing the two resources' envelopes."""
    if not 0 < alpha_sq < 1:
        raise BadParams(f"alpha^2 must lie in (0, 1), got {alpha_sq}")
    if not np.isfinite(k) or k < 0:
        raise BadParams(f"k must be a finite nonnegative real, got {k}")
    (v4, _), (v3, _) = envelopes(k, alpha_sq, names)
    if abs(v4 - v3) <= TIE_TOL:
        return "tie"
    return "4q" if v4 > v3 else "3q"


@dataclass(frozen=True)
class Threshold:
    value: float
    source: str
    method: str  # "bisection" or "formula"
    note: str = ""


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    winner: str


@dataclass
class RegionReport:
    k: float
    thresholds: list[Threshold]
    intervals: list[Interval]
    pairwise: dict[str, list[float]] = field(default_factory=dict)
    series: tuple[str, ...] = SERIES
    rejected: list[Threshold] = field(default_factory=list)  # published values outside (0, 1)

    def winner_at(self, alpha_sq: float) -> str:
        for iv in self.intervals:
            if iv.lo <= alpha_sq <= iv.hi:
                return iv.winner
        raise BadParams(f"alpha^2={alpha_sq} outside (0, 1)")


def region_report(k: float, names: Sequence[str] = SERIES, n_scan: int = 2001) -> RegionReport:
    """Winner intervals along alpha^2, with numeric and published boundaries.

    Numeric boundaries come from a scan of ``classify`` refined by bisection
    on the winner label; published boundaries that apply to this ``k`` are
    listed alongside and marked as matching the nearest pairwise crossing or not.
    """
    names = tuple(names)
    xs = scan_grid(n_scan)
    labels = [classify(k, x, names) for x in xs]
    numeric = []
    for i in range(len(xs) - 1):
        if labels[i] == labels[i + 1]:
            continue
        left = labels[i]
        x = bisect(lambda t: 1.0 if classify(k, t, names) == left else -1.0, xs[i], xs[i + 1], xtol=XTOL)
        (_, s4), (_, s3) = envelopes(k, x, names)
        numeric.append(Threshold(float(x), f"{s4}~{s3}", "bisection"))

    edges = [0.0] + [t.value for t in numeric] + [1.0]
    intervals = [
        Interval(lo, hi, classify(k, 0.5 * (lo + hi), names)) for lo, hi in zip(edges, edges[1:])
    ]

    pairwise = {
        f"{a}~{b}": crossing(a, b, k)
        for a in names if a in SERIES_4Q
        for b in names if b in SERIES_3Q
    }
    known = [(x, pair) for pair, xs_ in pairwise.items() for x in xs_]
    known += [(t.value, "envelope " + t.source) for t in numeric]

    printed = []
    for case in PRINTED_CASES:
        if not printed_case_applies(case, k):
            continue
        for pt in printed_thresholds(case, k):
            if not pt.valid:
                note = "invalid: outside (0, 1)"
            elif known:
                dist, where = min((abs(x - pt.value), w) for x, w in known)
                note = f"match {where}" if dist < MATCH_TOL else f"mismatch (nearest {where}, off by {dist:.3g})"
            else:
                note = "mismatch (no numeric crossing)"
            printed.append((pt.valid, Threshold(pt.value, f"case{case}:{pt.expr_id}", "formula", note)))

    thresholds = sorted(numeric + [t for ok, t in printed if ok], key=lambda t: t.value)
    rejected = [t for ok, t in printed if not ok]
    return RegionReport(float(k), thresholds, intervals, pairwise, names, rejected)
