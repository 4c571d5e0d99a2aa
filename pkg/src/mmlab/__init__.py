"""mmlab: exact computations with multimatroids."""

__version__ = "0.1.0"
