"""Oriented tangle rewriting: Reidemeister moves, theta configurations,
bounded derivation search, and replayable proof certificates."""

__version__ = "0.1.0"
