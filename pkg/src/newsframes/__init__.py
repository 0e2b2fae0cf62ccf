"""Entity-centric media frame extraction and corpus analytics."""

__version__ = "0.1.0"
