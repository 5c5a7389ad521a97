"""Crossed-complex calculator.

Finite crossed complexes and their fibrations, free crossed
resolutions, cohomology with module coefficients, and the obstruction
theory that classifies nonabelian group extensions, everything
cross-checkable against brute-force oracles.
"""

__version__ = "0.1.0"
