"""Curve complexes of small surfaces: cyclic-word curve models, Farey charts and lemma checks."""

__version__ = "0.1.0"
