"""Codimension-one boundary strata of the three compactifications.

Strata are enumerated purely combinatorially, as the trees recording
which degeneration happened: a block of points collapsing, the whole
cluster escaping, or a breakup into escaping and finite blocks.  The
census is independent of the differential code and cross-checks it: each
stratum must appear with coefficient +-1 as a term of the corresponding
generator differential.
"""

from collections import namedtuple

from .trees import TreeError, compositions, corolla_tree, encode, leaf, node

SPACES = ("c", "fc", "conf")

Stratum = namedtuple("Stratum", "space tree")


def _collapse_tree(top_family, n, k, l):
    kids = [leaf() for _ in range(n - l + 1)]
    kids[k] = corolla_tree("b", l)
    return node(top_family, kids)


def _split_tree(families, parts):
    return node("w", [corolla_tree(f, p) for f, p in zip(families, parts)])


def codim1_strata(space, n):
    """All codimension-one strata of the chosen space at n points.

    c:    collapse of a proper consecutive block of >= 2 points
    fc:   any consecutive block of >= 2 collapses, or the points break
          into >= 2 consecutive blocks
    conf: the two whole-line escapes, any block collapse, or a breakup
          with one designated finite block and at least one escaping one
    """
    if space not in SPACES:
        raise TreeError("unknown space %r" % space)
    if n < 1 or (space == "c" and n < 2):
        raise TreeError("invalid point count %d for %s" % (n, space))
    out = []
    if space == "c":
        for l in range(2, n):
            for k in range(0, n - l + 1):
                kids = [leaf() for _ in range(n - l + 1)]
                kids[k] = corolla_tree("b", l)
                out.append(Stratum(space, node("b", kids)))
    elif space == "fc":
        for l in range(2, n + 1):
            for k in range(0, n - l + 1):
                out.append(Stratum(space, _collapse_tree("sq", n, k, l)))
        for m in range(2, n + 1):
            for parts in compositions(n, m):
                out.append(Stratum(space, _split_tree(["sq"] * m, parts)))
    else:
        out.append(Stratum(space, corolla_tree("lt", n)))
        out.append(Stratum(space, corolla_tree("rt", n)))
        for l in range(2, n + 1):
            for k in range(0, n - l + 1):
                out.append(Stratum(space, _collapse_tree("dn", n, k, l)))
        for m in range(2, n + 1):
            for parts in compositions(n, m):
                for idx in range(m):
                    fams = ["lt"] * idx + ["dn"] + ["rt"] * (m - 1 - idx)
                    out.append(Stratum(space, _split_tree(fams, parts)))
    out.sort(key=lambda s: encode(s.tree))
    assert len({encode(s.tree) for s in out}) == len(out), "duplicate strata"
    return out


def closed_form_count(space, n):
    """Stratum counts in closed form; conf requires n >= 1."""
    if space == "c":
        return n * (n - 1) // 2 - 1
    if space == "fc":
        return n * (n - 1) // 2 + 2 ** (n - 1) - 1
    if n == 1:
        return 2
    return 2 + n * (n - 1) // 2 + (n + 1) * 2 ** (n - 2) - 1


def strata_counts(space, n):
    """Census size, asserted against the closed form."""
    count = len(codim1_strata(space, n))
    assert count == closed_form_count(space, n), \
        "census %d != closed form %d" % (count, closed_form_count(space, n))
    return count


def to_dot(stratum, name=None):
    """A dot-format digraph of a stratum tree, for external rendering."""
    lines = ["digraph %s {" % (name or "stratum")]
    counter = [0]

    def walk(t):
        me = "n%d" % counter[0]
        counter[0] += 1
        if t.is_leaf:
            lines.append('  %s [shape=point, label=""];' % me)
        else:
            lines.append('  %s [label="%s%d"];' % (me, t.family, len(t.children)))
        for c in t.children:
            child = walk(c)
            style = "dashed" if c.color == "dashed" else "solid"
            lines.append("  %s -> %s [style=%s];" % (me, child, style))
        return me

    walk(stratum.tree)
    lines.append("}")
    return "\n".join(lines)
