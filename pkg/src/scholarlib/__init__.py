"""ScholarLib: a federation gateway between social networks and scholarly libraries."""

__version__ = "0.1.0"
