#!/usr/bin/env python3
"""Build a demo store from the bundled fixtures.

Creates <out>/ with the persisted store plus a ready-to-use service config,
so `statcommons serve --config <out>/config.yaml` works immediately.
"""

import argparse
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from statcommons.etl import ingest, load_source_spec  # noqa: E402
from statcommons.kg import load_place_registry  # noqa: E402
from statcommons.platform import Platform  # noqa: E402

DATA = ROOT / "tests" / "data"

SOURCES = [
    "ipea_life_exp.yaml",
    "ibge_indicators.yaml",
    "datasus_risky.yaml",  # rejected by the privacy gate, on purpose
    "datasus_safe.yaml",
]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="demo_store", help="store directory to create")
    parser.add_argument("--bind", default="127.0.0.1:8400")
    args = parser.parse_args()

    out = Path(args.out)
    platform = Platform.in_memory(source_preference=["ibge-state-indicators"])
    count = load_place_registry(platform.kg, (DATA / "places.csv").read_text(encoding="utf-8"))
    print(f"registry: {count} places")
    platform.save(out)
    platform.ledger.path = out / "ledger"

    for name in SOURCES:
        entry = ingest(load_source_spec(DATA / "sources" / name), platform)
        print(f"{entry.source_name}: {entry.status.value} "
              f"(observations={entry.observations}, unresolved={entry.unresolved_rows})")
    platform.save(out)

    config = out / "config.yaml"
    config.write_text(
        "bind: \"{bind}\"\n"
        "store: \".\"\n"
        "source_preference: [ibge-state-indicators, ipeadata-life-expectancy]\n"
        "request_timeout_ms: 2000\n"
        "remotes: []\n".format(bind=args.bind),
        encoding="utf-8",
    )
    print(f"store written to {out}/ ; serve it with:")
    print(f"  statcommons serve --config {config}")


if __name__ == "__main__":
    main()
