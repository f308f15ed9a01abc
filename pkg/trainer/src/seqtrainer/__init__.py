"""GRU encoder-decoder trainer for aligned description/API-sequence files."""

__version__ = "0.1.0"
