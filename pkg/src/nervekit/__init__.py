"""nervekit: nerves and classifying-space invariants of finite bicategories."""

__version__ = "0.1.0"
