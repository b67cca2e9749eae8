"""Structure checkers, the tensor-coalgebra route, and representations.

Builds a small homotopy between the identity and itself on a two
dimensional algebra, runs the element-level checkers and their
coalgebra-level twins, evaluates the operadic differential in the
structure, and writes the structure file format used by the command line.

Run:  python3 demos/homotopy_checks.py
"""

import json
from fractions import Fraction

from dgop import (
    GradedBasis, MapFamily, Structure,
    bar_homotopy, check_homotopy_relations, check_stasheff,
    default_sign_table, diff_down, evaluate_sum, structure_to_json,
)

V = GradedBasis([("u", 0), ("v", 1)])
one = Fraction(1)
multiply = MapFamily(V, V, {2: {("u", "u"): {"u": one},
                                ("u", "v"): {"v": one},
                                ("v", "u"): {"v": one}}},
                     law=lambda k: 2 - k)
identity = MapFamily(V, V, {1: {("u",): {"u": one}, ("v",): {"v": one}}},
                     law=lambda k: 1 - k)
contraction = MapFamily(V, V, {1: {("v",): {"u": one}},
                               2: {("v", "v"): {"u": one}}},
                        law=lambda k: -k)
structure = Structure(V, V, multiply, multiply, identity, identity, contraction)

print("the product is associative (weights 1..5):",
      check_stasheff(multiply, 5).ok)
print("contraction is a homotopy id ~ id (weights 1..4):",
      check_homotopy_relations(contraction, identity, identity,
                               multiply, multiply, 4).ok)
print("same verdict through the tensor-coalgebra lifts:",
      bar_homotopy(contraction, identity, identity, multiply, multiply, 4).ok)

print()
print("evaluating the homotopy corolla differential in the structure")
print("gives the zero map in every arity (the operadic relations hold in")
print("any representation):")
table = default_sign_table(4)
for n in range(1, 5):
    values = evaluate_sum(diff_down(n, table), structure)
    print("   arity %d: %s" % (n, "zero" if not values else values))

print()
print("structure file (as consumed by `dgop ainfty-check`):")
print(json.dumps(structure_to_json(structure), indent=1)[:400] + " ...")
