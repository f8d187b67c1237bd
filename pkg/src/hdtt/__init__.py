"""A workbench for a propositional dependent type theory and its extensional
quotient: two kernels, a path-algebra toolkit, a homotopy-equivalence calculus,
a classification pass, a quotient category with attributes, a canonical
interpretation, and a small surface language with a CLI."""

__version__ = "0.1.0"
