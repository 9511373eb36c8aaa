"""parabtk — exact tools for rank-2 refined parabolic bundles on ℙ¹.

The package computes, over exact base fields (ℚ or a prime field), with
rank-2 vector bundles on the projective line carrying refined parabolic
structures along an effective, possibly non-reduced, divisor: normal forms
for truncated-module levels, tableau combinatorics of chains, stability /
tameness / admissibility predicates with exact weight search, elementary
transformations, flatness via residue pairings, and the classification
tables of special bundles with their wall-crossing structure.
"""

__version__ = "0.1.0"

from .fields import GF, QQ, FieldConfig

__all__ = ["GF", "QQ", "FieldConfig", "__version__"]
