#!/usr/bin/env python3
"""Walk through the main exploration flows against a seeded demo store:
a timeline for one municipality, a two-variable comparison across all
states, a latest-value map query, and a CSV download.

Run scripts/seed_demo_store.py first (or pass --store).
"""

import argparse
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from statcommons.kg import EntityDescriptor, PlaceLevel  # noqa: E402
from statcommons.platform import Platform  # noqa: E402
from statcommons.stats import LATEST  # noqa: E402


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--store", default="demo_store")
    args = parser.parse_args()

    platform = Platform.open(Path(args.store), ["ibge-state-indicators"])
    kg, stats = platform.kg, platform.stats

    print("== resolve a place by description ==")
    resolution = kg.resolve(
        EntityDescriptor(name="Belo Horizonte", level=PlaceLevel.MUNICIPALITY, ancestor_name="Minas Gerais")
    )
    place = resolution.node_id
    print(f"'Belo Horizonte in Minas Gerais' -> {place}")
    print(f"available variables: {stats.list_variables(place)}")

    print("\n== timeline: life expectancy ==")
    series = stats.series(place, "var/life_expectancy")
    for point in series.points:
        print(f"  {point.date}  {point.value}")

    print("\n== compare two indicators across all states (latest year) ==")
    states = kg.children("country/bra", PlaceLevel.STATE)
    fertility = {o.entity: o.value for o in stats.point(states, "var/fertility_rate", LATEST)}
    population = {o.entity: o.value for o in stats.point(states, "var/population", LATEST)}
    both = sorted(set(fertility) & set(population))
    print(f"  states with both indicators: {len(both)}")
    for state in both[:5]:
        name = kg.node_name(state)
        print(f"  {name:<22} fertility={fertility[state]:<6} population={population[state]}")
    print("  ...")

    print("\n== map-style query: one variable, many places ==")
    rows = stats.point(states, "var/population", LATEST)
    values = [o.value for o in rows]
    print(f"  {len(rows)} states, population range {min(values)} .. {max(values)}")

    print("\n== CSV download ==")
    payload = stats.export_csv([place], ["var/life_expectancy"])
    print(payload.decode("utf-8"))

    print("== ingestion ledger ==")
    for entry in platform.ledger.entries():
        line = f"  {entry.source_name}: {entry.status.value}"
        if entry.gate:
            line += f" (gate: {entry.gate['decision']})"
        print(line)


if __name__ == "__main__":
    main()
