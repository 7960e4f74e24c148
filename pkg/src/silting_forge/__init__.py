"""silting-forge: exact computation for silting and Gorenstein-silting theory
over finite-dimensional algebras, with certified verdicts and a CLI."""

__version__ = "0.1.0"
