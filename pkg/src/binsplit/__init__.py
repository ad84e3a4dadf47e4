"""Binary matroids, the splitting operation, and excluded-minor searches."""

__version__ = "0.1.0"
