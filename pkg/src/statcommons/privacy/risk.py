"""Disclosure-risk assessment of microdata.

Attack model: the adversary knows a target's quasi-identifier values
(prosecutor model).  Re-identification probability of a record is
1/(its equivalence-class size); attribute-inference probability is the
modal sensitive-value frequency within its class.  The gate rejects a
table when the share of records at or above the attack-probability
cutoff reaches the population-fraction cutoff, for any metric.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from ..errors import EmptyTable, NotSensitive
from .microdata import MicrodataTable, Role

REID_METRIC = "re-identification"
INFER_METRIC_PREFIX = "attribute-inference:"


@dataclass(frozen=True)
class RiskThresholds:
    k: int = 1
    l: int = 1
    t: float = 1.0
    attack_prob: float = 0.90
    pop_fraction: float = 0.30

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.l < 1:
            raise ValueError("l must be >= 1")
        if not 0.0 <= self.t <= 1.0:
            raise ValueError("t must be in [0, 1]")
        if not 0.0 <= self.attack_prob <= 1.0:
            raise ValueError("attack_prob must be in [0, 1]")
        if not 0.0 <= self.pop_fraction <= 1.0:
            raise ValueError("pop_fraction must be in [0, 1]")


@dataclass(frozen=True)
class RiskFigures:
    """Per-record attack probabilities plus the share at or above the cutoff."""

    per_record: tuple[float, ...]
    fraction_at_risk: float


class Decision(Enum):
    PUBLISH = "publish"
    REJECT = "reject"


@dataclass(frozen=True)
class RiskReport:
    per_record_reid: tuple[float, ...]
    per_record_infer: dict[str, tuple[float, ...]]
    fraction_at_risk: dict[str, float]  # keyed by metric name
    thresholds: RiskThresholds
    decision: Decision
    reasons: tuple[str, ...]

    def render_text(self) -> str:
        """One metric per line: name, fraction, threshold, verdict."""
        lines = []
        for metric in self.fraction_at_risk:
            fraction = self.fraction_at_risk[metric]
            verdict = (
                "VIOLATED" if fraction >= self.thresholds.pop_fraction else "ok"
            )
            lines.append(
                f"{metric} fraction_at_risk={fraction:.4f} "
                f"cutoff={self.thresholds.pop_fraction:.4f} {verdict}"
            )
        lines.append(f"decision: {self.decision.value.upper()}")
        return "\n".join(lines)

    def to_machine(self) -> dict:
        return {
            "decision": self.decision.value,
            "fraction_at_risk": dict(self.fraction_at_risk),
            "attack_prob": self.thresholds.attack_prob,
            "pop_fraction": self.thresholds.pop_fraction,
            "reasons": list(self.reasons),
        }


def partition(table: MicrodataTable, qi: list[str]) -> list[list[int]]:
    """Equivalence classes over the quasi-identifier columns.

    Groups are sorted by their quasi-identifier tuple; with no
    quasi-identifiers every row falls into one class.
    """
    indexes = [table.column_index(name) for name in qi]
    groups: dict[tuple[str, ...], list[int]] = {}
    for i, row in enumerate(table.rows):
        key = tuple(row[idx] for idx in indexes)
        groups.setdefault(key, []).append(i)
    return [groups[key] for key in sorted(groups)]


def _require_rows(table: MicrodataTable) -> None:
    if table.n_rows == 0:
        raise EmptyTable("table has no rows")


def _fraction_at_risk(per_record: list[float], attack_prob: float) -> float:
    at_risk = sum(1 for p in per_record if p >= attack_prob)
    return at_risk / len(per_record)


def reid_risk(
    table: MicrodataTable, qi: list[str], attack_prob: float = 0.90
) -> RiskFigures:
    """Per-record re-identification probability: 1/(equivalence-class size)."""
    _require_rows(table)
    per_record = [0.0] * table.n_rows
    for group in partition(table, qi):
        prob = 1 / len(group)
        for i in group:
            per_record[i] = prob
    return RiskFigures(
        per_record=tuple(per_record),
        fraction_at_risk=_fraction_at_risk(per_record, attack_prob),
    )


def infer_risk(
    table: MicrodataTable,
    qi: list[str],
    sensitive: str,
    attack_prob: float = 0.90,
) -> RiskFigures:
    """Per-record inference probability: modal sensitive frequency in its class."""
    _require_rows(table)
    if table.role_of(sensitive) != Role.SENSITIVE:
        raise NotSensitive(f"attribute {sensitive!r} does not have role sensitive")
    sens_idx = table.column_index(sensitive)
    per_record = [0.0] * table.n_rows
    for group in partition(table, qi):
        counts: dict[str, int] = {}
        for i in group:
            value = table.rows[i][sens_idx]
            counts[value] = counts.get(value, 0) + 1
        prob = max(counts.values()) / len(group)
        for i in group:
            per_record[i] = prob
    return RiskFigures(
        per_record=tuple(per_record),
        fraction_at_risk=_fraction_at_risk(per_record, attack_prob),
    )


def check_k_anonymity(
    table: MicrodataTable, qi: list[str], k: int
) -> tuple[bool, int]:
    """True iff every equivalence class has at least k records."""
    _require_rows(table)
    min_class = min(len(group) for group in partition(table, qi))
    return (min_class >= k, min_class)


def check_l_diversity(
    table: MicrodataTable, qi: list[str], sensitive: str, l: int
) -> bool:
    """True iff every class holds at least l distinct sensitive values."""
    _require_rows(table)
    if table.role_of(sensitive) != Role.SENSITIVE:
        raise NotSensitive(f"attribute {sensitive!r} does not have role sensitive")
    sens_idx = table.column_index(sensitive)
    for group in partition(table, qi):
        distinct = {table.rows[i][sens_idx] for i in group}
        if len(distinct) < l:
            return False
    return True


def check_t_closeness(
    table: MicrodataTable, qi: list[str], sensitive: str, t: float
) -> bool:
    """True iff every class's sensitive distribution is within total-variation
    distance t of the global distribution.

    Distances are computed in exact rational arithmetic so boundary cases do
    not depend on float summation order.
    """
    _require_rows(table)
    if table.role_of(sensitive) != Role.SENSITIVE:
        raise NotSensitive(f"attribute {sensitive!r} does not have role sensitive")
    sens_idx = table.column_index(sensitive)
    n = table.n_rows
    global_counts: dict[str, int] = {}
    for row in table.rows:
        value = row[sens_idx]
        global_counts[value] = global_counts.get(value, 0) + 1
    # Interpret the float threshold as the decimal the caller wrote
    # (0.4 means 2/5, not its binary approximation).
    t_frac = Fraction(t).limit_denominator(10**12)
    for group in partition(table, qi):
        size = len(group)
        class_counts: dict[str, int] = {}
        for i in group:
            value = table.rows[i][sens_idx]
            class_counts[value] = class_counts.get(value, 0) + 1
        tvd = Fraction(0)
        for value, global_count in global_counts.items():
            p = Fraction(class_counts.get(value, 0), size)
            q = Fraction(global_count, n)
            tvd += abs(p - q)
        tvd = tvd / 2
        if tvd > t_frac:
            return False
    return True


def gate(
    table: MicrodataTable,
    qi: list[str],
    sensitives: list[str],
    thresholds: RiskThresholds = RiskThresholds(),
) -> RiskReport:
    """Publish/reject decision over re-identification and inference metrics.

    Reject iff any metric's fraction of records at or above ``attack_prob``
    reaches ``pop_fraction``; reasons enumerate every violated metric.
    """
    reid = reid_risk(table, qi, thresholds.attack_prob)
    fractions: dict[str, float] = {REID_METRIC: reid.fraction_at_risk}
    per_record_infer: dict[str, tuple[float, ...]] = {}
    for sensitive in sensitives:
        figures = infer_risk(table, qi, sensitive, thresholds.attack_prob)
        fractions[INFER_METRIC_PREFIX + sensitive] = figures.fraction_at_risk
        per_record_infer[sensitive] = figures.per_record
    reasons = tuple(
        f"{metric}: {fraction:.4f} of records at risk "
        f">= {thresholds.pop_fraction:.4f} cutoff"
        for metric, fraction in fractions.items()
        if fraction >= thresholds.pop_fraction
    )
    decision = Decision.REJECT if reasons else Decision.PUBLISH
    return RiskReport(
        per_record_reid=reid.per_record,
        per_record_infer=per_record_infer,
        fraction_at_risk=fractions,
        thresholds=thresholds,
        decision=decision,
        reasons=reasons,
    )
