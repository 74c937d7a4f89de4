"""Anonymization transforms: generalization, suppression, swapping, and a
greedy k-anonymizer composing them.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from ..errors import UnmappedValue
from .microdata import MicrodataTable
from .risk import check_k_anonymity, partition


@dataclass(frozen=True)
class GeneralizationHierarchy:
    """Per-attribute ladder of coarsening maps.

    ``levels[i]`` maps values at generalization level i to level i+1;
    level 0 is the raw data (identity).
    """

    attribute: str
    levels: tuple[dict[str, str], ...]

    @property
    def max_level(self) -> int:
        return len(self.levels)

    def apply_step(self, value: str, step: int) -> str:
        mapping = self.levels[step]
        if value not in mapping:
            raise UnmappedValue(
                f"value {value!r} missing from level-{step + 1} mapping "
                f"of {self.attribute!r}"
            )
        return mapping[value]

    def apply(self, value: str, level: int) -> str:
        if not 0 <= level <= self.max_level:
            raise ValueError(
                f"level {level} outside hierarchy (max {self.max_level})"
            )
        for step in range(level):
            value = self.apply_step(value, step)
        return value


def generalize(
    table: MicrodataTable,
    attribute: str,
    hierarchy: GeneralizationHierarchy,
    level: int,
) -> MicrodataTable:
    """Replace an attribute's values with their level-``level`` coarsening."""
    idx = table.column_index(attribute)
    if level == 0:
        return table
    rows = []
    for row in table.rows:
        cells = list(row)
        cells[idx] = hierarchy.apply(cells[idx], level)
        rows.append(tuple(cells))
    return table.with_rows(rows)


def suppress(table: MicrodataTable, row_indices: list[int]) -> MicrodataTable:
    """Drop the listed rows; remaining rows keep their order."""
    drop = set(row_indices)
    rows = [row for i, row in enumerate(table.rows) if i not in drop]
    return table.with_rows(rows)


def swap(
    table: MicrodataTable, attribute: str, fraction: float, seed: int
) -> MicrodataTable:
    """Exchange the attribute's values within seeded disjoint row pairs.

    floor(fraction * n / 2) pairs are drawn uniformly without replacement,
    so the column's value multiset is unchanged.
    """
    if not 0.0 <= fraction <= 1.0:
        raise ValueError("fraction must be in [0, 1]")
    idx = table.column_index(attribute)
    n = table.n_rows
    n_pairs = math.floor(fraction * n / 2)
    if n_pairs == 0:
        return table
    rng = random.Random(seed)
    chosen = rng.sample(range(n), 2 * n_pairs)
    rows = [list(row) for row in table.rows]
    for p in range(n_pairs):
        a, b = chosen[2 * p], chosen[2 * p + 1]
        rows[a][idx], rows[b][idx] = rows[b][idx], rows[a][idx]
    return table.with_rows([tuple(row) for row in rows])


@dataclass(frozen=True)
class PlanStep:
    action: str  # "generalize" | "suppress"
    attribute: str | None = None
    level: int | None = None
    rows: tuple[int, ...] | None = None


def anonymize_k(
    table: MicrodataTable,
    qi: list[str],
    k: int,
    hierarchies: dict[str, GeneralizationHierarchy],
    attribute_order: list[str],
) -> tuple[MicrodataTable, list[PlanStep]]:
    """Greedy k-anonymization.

    While the smallest class is under k, generalize the next attribute in
    ``attribute_order`` (round-robin) one more level; once no attribute can
    be generalized further, suppress every record still in an under-k class.
    The result satisfies k-anonymity or is empty.
    """
    for name in attribute_order:
        if name not in hierarchies:
            raise KeyError(f"no hierarchy for ordered attribute {name!r}")
        table.column_index(name)  # raises UnknownAttribute
    current = table
    plan: list[PlanStep] = []
    levels = {name: 0 for name in attribute_order}
    cursor = 0

    def min_class_size() -> int:
        if current.n_rows == 0:
            return k
        return min(len(g) for g in partition(current, qi))

    while current.n_rows > 0 and min_class_size() < k:
        advanced = False
        for offset in range(len(attribute_order)):
            name = attribute_order[(cursor + offset) % len(attribute_order)]
            hierarchy = hierarchies[name]
            if levels[name] < hierarchy.max_level:
                # One more coarsening step for this attribute.
                idx = current.column_index(name)
                rows = []
                for row in current.rows:
                    cells = list(row)
                    cells[idx] = hierarchy.apply_step(cells[idx], levels[name])
                    rows.append(tuple(cells))
                current = current.with_rows(rows)
                levels[name] += 1
                plan.append(
                    PlanStep(action="generalize", attribute=name, level=levels[name])
                )
                cursor = (cursor + offset + 1) % len(attribute_order)
                advanced = True
                break
        if not advanced:
            break

    if current.n_rows > 0:
        under_k = sorted(
            i
            for group in partition(current, qi)
            if len(group) < k
            for i in group
        )
        if under_k:
            current = suppress(current, under_k)
            plan.append(PlanStep(action="suppress", rows=tuple(under_k)))

    if current.n_rows > 0:
        satisfied, _ = check_k_anonymity(current, qi, k)
        assert satisfied
    return current, plan
