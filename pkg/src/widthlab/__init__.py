"""widthlab: certified layered/row width constructions and exact oracles."""
__version__ = "0.1.0"
