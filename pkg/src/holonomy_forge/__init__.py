"""holonomy-forge: exact computational realization of the
weakly-irreducible not irreducible holonomy algebras inside u(1,n+1),
their curvature spaces and Berger verdicts, invariant-subspace search,
and the polynomial metrics whose holonomy at the origin recovers each
classified family.

All arithmetic is exact rational; every verdict (subspace equality,
Berger, weak irreducibility, holonomy comparison) is a statement about
canonical echelon forms, never about floats.
"""

__version__ = "0.1.0"
