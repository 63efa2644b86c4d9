"""Truncated dyadic energy sums over image arc lengths.

Condition (iv) sums j^lambda * l(phi(Gamma_{j,k}))**2, condition (v) replaces
the level weight by log^lambda(e + l * 2**j) inside the sum.  Both admit the
same split by the indicator chi(j,k) = [l > 2**(-3j/4)], whose chi = 0 part
is summable with explicit bounds.

Summation is level-major, index-minor through math.fsum (exactly rounded),
and a report's total is assembled as P1 + P2 of its chi-split so that the
partition identity holds bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circle_map import CircleHomeomorphism
from .errors import DomainError, InsufficientDataError, ResourceGuardError

MAX_J = 20
DEFAULT_SLOPE_EPS = 0.05

CONVERGENT = "convergent"
DIVERGENT = "divergent"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class EnergyReport:
    """Per-level contributions s_j and partial sums of one energy condition."""

    condition: str          # iv | v | iii_direct | iii_dyadic | i | ii
    lam: float
    J: int
    levels: tuple[int, ...]
    per_level: tuple[float, ...]
    cumulative: tuple[float, ...]
    total: float
    classification: str
    tail_ratio: float

    def __post_init__(self) -> None:
        if any(s < 0 for s in self.per_level):
            raise DomainError("per-level contributions must be nonnegative")


def _check_args(lam: float, J: int) -> None:
    if not lam > -1.0:
        raise DomainError(f"lambda must exceed -1, got {lam}")
    if not isinstance(J, int) or J < 0:
        raise DomainError(f"J must be a nonnegative integer, got {J!r}")
    if J > MAX_J:
        raise ResourceGuardError(f"J={J} exceeds guard {MAX_J}")


def classify_sequence(levels, per_level, eps: float = DEFAULT_SLOPE_EPS) -> str:
    """Slope heuristic: fit log2(s_j) against j over the last half of levels.

    Diagnostic only; a slope inside [-eps, +eps] is deliberately left
    inconclusive rather than forced into a verdict.
    """
    if len(levels) < 6:
        raise InsufficientDataError(
            f"classification needs at least 6 levels, got {len(levels)}")
    js = np.asarray(levels, dtype=float)
    ss = np.asarray(per_level, dtype=float)
    half = len(js) // 2
    js, ss = js[half:], ss[half:]
    if np.any(ss <= 0.0):
        return INCONCLUSIVE
    slope = np.polyfit(js, np.log2(ss), 1)[0]
    if slope < -eps:
        return CONVERGENT
    if slope > eps:
        return DIVERGENT
    return INCONCLUSIVE


def classify_convergence(report: EnergyReport, eps: float = DEFAULT_SLOPE_EPS) -> str:
    return classify_sequence(report.levels, report.per_level, eps)


def make_report(condition: str, lam: float, J: int, levels, per_level,
                total: float | None = None,
                eps: float = DEFAULT_SLOPE_EPS) -> EnergyReport:
    levels = tuple(int(j) for j in levels)
    per_level = tuple(float(s) for s in per_level)
    cum, run = [], []
    for s in per_level:
        run.append(s)
        cum.append(math.fsum(run))
    if total is None:
        total = cum[-1] if cum else 0.0
    try:
        cls = classify_sequence(levels, per_level, eps)
    except InsufficientDataError:
        cls = INCONCLUSIVE
    tail = per_level[-1] / cum[-1] if cum and cum[-1] > 0 else 0.0
    return EnergyReport(condition=condition, lam=float(lam), J=J, levels=levels,
                        per_level=per_level, cumulative=tuple(cum), total=float(total),
                        classification=cls, tail_ratio=tail)


# ---------------------------------------------------------------------------


def _level_terms(map_: CircleHomeomorphism, lam: float, j: int, condition: str):
    """(terms, chi) arrays for one level, level weight included."""
    lengths = map_.level_image_lengths(j)
    sq = lengths * lengths
    if condition == "iv":
        terms = float(j) ** lam * sq
    elif condition == "v":
        terms = sq * np.log(math.e + lengths * 2.0 ** j) ** lam
    else:
        raise DomainError(f"unknown dyadic condition {condition!r}")
    chi = lengths > 2.0 ** (-0.75 * j)
    return terms, chi


def _dyadic_report(map_: CircleHomeomorphism, lam: float, J: int,
                   condition: str) -> EnergyReport:
    _check_args(lam, J)
    levels = list(range(1, J + 1))
    per_level = []
    p1_terms: list[float] = []
    p2_terms: list[float] = []
    for j in levels:
        terms, chi = _level_terms(map_, lam, j, condition)
        per_level.append(math.fsum(terms))
        p1_terms.extend(terms[chi])
        p2_terms.extend(terms[~chi])
    total = math.fsum(p1_terms) + math.fsum(p2_terms)
    return make_report(condition, lam, J, levels, per_level, total=total)


def dyadic_energy_iv(map_: CircleHomeomorphism, lam: float, J: int) -> EnergyReport:
    """Truncated sum of j^lambda * sum_k l(phi(Gamma_{j,k}))**2."""
    return _dyadic_report(map_, lam, J, "iv")


def dyadic_energy_v(map_: CircleHomeomorphism, lam: float, J: int) -> EnergyReport:
    """Truncated sum of sum_k l**2 * log^lambda(e + l * 2**j)."""
    return _dyadic_report(map_, lam, J, "v")


def comparability_split(map_: CircleHomeomorphism, lam: float, J: int,
                        condition: str = "iv") -> tuple[float, float]:
    """(P1, P2): the chi = 1 and chi = 0 parts of the (iv) or (v) sum.

    P1 + P2 reproduces the matching report's total exactly (same fsum order).
    The chi = 0 part is controlled explicitly: every such term has
    l <= 2**(-3j/4), so P2 <= sum_j j^lambda 2**(-j/2) for (iv) and, for
    lambda <= 0, P2' <= sum_j 2**(-j/2) for (v).
    """
    _check_args(lam, J)
    p1_terms: list[float] = []
    p2_terms: list[float] = []
    for j in range(1, J + 1):
        terms, chi = _level_terms(map_, lam, j, condition)
        p1_terms.extend(terms[chi])
        p2_terms.extend(terms[~chi])
    return math.fsum(p1_terms), math.fsum(p2_terms)


def chi_bound(lam: float, J: int, condition: str = "iv") -> float:
    """Closed-form bound on the chi = 0 part of the truncated sum.

    For (iv): sum_{j<=J} j^lambda 2**(-j/2).  For (v) the same expression
    carries the worst-case log factor log^lambda(e + 2**(j/4)) when
    lambda > 0; for lambda <= 0 that factor is at most 1.
    """
    _check_args(lam, J)
    vals = []
    for j in range(1, J + 1):
        if condition == "iv":
            vals.append(float(j) ** lam * 2.0 ** (-0.5 * j))
        else:
            extra = math.log(math.e + 2.0 ** (0.25 * j)) ** lam if lam > 0 else 1.0
            vals.append(2.0 ** (-0.5 * j) * extra)
    return math.fsum(vals)
