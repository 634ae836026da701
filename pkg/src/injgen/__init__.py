"""Exact computational toolkit for graded algebras and the module-theoretic
constructions used to transport injective generation between rings."""

__version__ = "0.1.0"
