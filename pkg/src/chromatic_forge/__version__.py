"""Version information for chromatic-forge."""

__version__ = "0.2.0"
