"""Cohomology of every arity component, computed by exact linear algebra.

The headline: both two-colored operads have one-dimensional cohomology
concentrated in degree zero in each component, which is the operad
encoding a pair of associative algebras and a morphism between them.

Run:  python3 demos/cohomology_tables.py
"""

from dgop import verify_model_claims

report = verify_model_claims(4, pure_nmax=6)
print(report.table())
print()
print("all components one-dimensional in degree 0:", bool(report))
