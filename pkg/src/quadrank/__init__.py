"""Class groups of parameterized quadratic fields and their n-rank."""

__version__ = "0.1.0"
