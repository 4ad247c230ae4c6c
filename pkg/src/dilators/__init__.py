"""Computable constructions on coded prae-dilators.

Behavioral linear orders and dilators, their class-sized extensions,
composition and morphisms, derivative term systems, the tree-family
embedding pipeline, and an independent Cantor-normal-form oracle.
"""

__version__ = "0.1.0"
