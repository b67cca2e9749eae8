"""Counting boundary strata and matching them to differential terms.

Each codimension-one stratum of the compactified configuration spaces is
a single degeneration: a block of points collapsing, everything escaping
in one cluster, or a breakup into escaping blocks around a finite one.
Encoded as trees they are exactly the terms of the corresponding
generator differential.

Run:  python3 demos/strata_census.py
"""

from dgop import codim1_strata, default_sign_table, diff_down, encode, strata_counts

print("The five degenerations of two points on the line:")
for stratum in codim1_strata("conf", 2):
    print("   " + encode(stratum.tree))

print()
print("Counts for the three compactifications (closed forms asserted):")
print("   n      collapse-only   with-splittings   with-escapes")
for n in range(2, 8):
    print("   %d %15d %17d %14d"
          % (n, strata_counts("c", n), strata_counts("fc", n),
             strata_counts("conf", n)))

print()
print("Census against the differential, arity 3: every stratum appears")
print("with coefficient +-1:")
table = default_sign_table(3)
terms = {encode(t): c for t, c in diff_down(3, table).terms.items()}
for stratum in codim1_strata("conf", 3):
    text = encode(stratum.tree)
    print("   %+d  %s" % (terms[text], text))
