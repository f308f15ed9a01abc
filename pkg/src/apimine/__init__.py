"""Mining and evaluation toolkit for (description, API-sequence) pairs."""

__version__ = "0.1.0"
