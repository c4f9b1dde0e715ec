"""latiso: exact lattice-with-isometry classification toolkit."""

__version__ = "0.1.0"
