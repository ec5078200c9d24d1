"""Exact computation of torsion subgroups of rational elliptic curves over
number fields of degree 1, 2, and 4 (Galois), with built-in verification
against the classification tables the engine is meant to reproduce."""

__version__ = "0.1.0"
