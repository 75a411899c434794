"""Exact-arithmetic construction and verification of the deformed algebras
on e, f, h, x, y over odd prime fields: PBW rewriting, the center and its
degree-p cover, and the p^2-dimensional irreducible representations."""

__version__ = "0.1.0"
