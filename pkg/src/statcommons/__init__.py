"""Self-hosted statistical data commons.

Heterogeneous public sources are ingested into a knowledge graph of places,
statistical variables, and observations; microdata is gated behind automated
disclosure-risk checks; the result is served through a federating REST API,
a CSV download channel, and a CLI.
"""

__version__ = "0.1.0"
