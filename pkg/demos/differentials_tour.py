"""A tour of the three differentials and the sign solver.

Run:  python3 demos/differentials_tour.py
"""

from dgop import (
    d_squared_check, default_sign_table, diff_black, diff_down, diff_square,
    diff_tree, encode, parse, solve_down_signs,
)

print("Differential of the arity-3 multiplication corolla (two ways to")
print("collapse a pair of neighbours):")
for tree, coeff in diff_black(3).items():
    print("   %+d  %s" % (coeff, encode(tree)))

print()
print("Differential of the arity-2 morphism corolla (collapse under, or")
print("split over, the target multiplication):")
for tree, coeff in diff_square(2).items():
    print("   %+d  %s" % (coeff, encode(tree)))

print()
print("The homotopy corolla's differential needs solved signs.  Solving")
print("up to arity 5 from the worked low-arity data plus d^2 = 0:")
table = solve_down_signs(5)
print("   %d signs solved from %d cancellation equations"
      % (len(table.signs), table.equations))
print("   arity-3 printed-sign discrepancies (solver wins):")
for desc, printed, got in table.n3_discrepancies:
    print("      %s: printed %+d, solved %+d" % (desc, printed, got))

print()
print("The worked five-term arity-2 formula, reproduced exactly:")
for tree, coeff in diff_down(2, table).items():
    print("   %+d  %s" % (coeff, encode(tree)))

print()
print("The graded Leibniz rule on a composite tree: differentiating")
print("w2(dn1(1),dn1(2)) hits each homotopy vertex, the second with the")
print("Koszul sign of passing the first (odd) vertex:")
for tree, coeff in diff_tree(parse("w2(dn1(1),dn1(2))"), table).items():
    print("   %+d  %s" % (coeff, encode(tree)))

print()
print("d^2 = 0, exactly, for every generator family:")
for family, lo, hi in (("b", 2, 6), ("w", 2, 6), ("lt", 1, 6),
                       ("rt", 1, 6), ("sq", 1, 6), ("dn", 1, 5)):
    ok = all(d_squared_check(family, a, default_sign_table(6)).ok
             for a in range(lo, hi + 1))
    print("   %-3s arities %d..%d  %s" % (family, lo, hi, "ok" if ok else "FAIL"))
