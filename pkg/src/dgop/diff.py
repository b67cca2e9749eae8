"""Differentials of the three free dg operads, and the sign solver.

The differentials act on generator corollas and extend to arbitrary trees
by the graded Leibniz rule.  Signs for the multiplication corollas (b, w)
and the morphism-type corollas (sq, lt, rt) are closed-form; the signs of
the homotopy corolla's differential are solved globally from d^2 = 0
together with the known low-arity data, by exact linear algebra over
GF(2) sign exponents.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .trees import (
    FormalSum, Tree, Corolla, TreeError,
    compositions, corolla_tree, encode, graft_signed, leaf, node,
)


class SignConsistencyError(RuntimeError):
    """No sign assignment satisfies d^2 = 0 plus the anchored data."""


# ----------------------------------------------------------- closed signs

def _sgn(e):
    return -1 if e % 2 else 1


# The global orientation of the differentials is fixed so that evaluating
# a generator's differential in a representation gives the mapping-complex
# differential of the bound map; the low-arity homotopy-corolla formulas
# and the representation checks both live in this orientation.

def collapse_sign_assoc(q, k, l):
    """Sign of the (offset k, block size l) collapse in the b/w differential."""
    return _sgn(k + l * (q - k - l))


def collapse_sign_morphism(n, k, l):
    """Collapse sign for morphism-type corollas; same exponent as the
    multiplication corollas plus one, with the full block allowed."""
    return _sgn(k + l * (n - k - l) + 1)


def split_sign_morphism(parts):
    """Splitting sign: (-1)^((q-1)(n_1 - 1) + (q-2)(n_2 - 1) + ...)."""
    q = len(parts)
    p = sum((q - a) * (parts[a - 1] - 1) for a in range(1, q))
    return _sgn(p)


def diff_black(q):
    """Differential of the solid multiplication corolla of arity q.

    Sum over collapses of a proper consecutive block of >= 2 inputs.
    """
    if q < 2:
        raise TreeError("need arity >= 2")
    out = {}
    for l in range(2, q):
        for k in range(0, q - l + 1):
            outer = [leaf() for _ in range(q - l + 1)]
            outer[k] = corolla_tree("b", l)
            out[node("b", outer)] = Fraction(collapse_sign_assoc(q, k, l))
    return FormalSum(out)


def diff_white(p):
    """Differential of the dashed multiplication corolla; mirrors diff_black."""
    if p < 2:
        raise TreeError("need arity >= 2")
    out = {}
    for l in range(2, p):
        for k in range(0, p - l + 1):
            outer = [leaf("dashed") for _ in range(p - l + 1)]
            outer[k] = corolla_tree("w", l)
            out[node("w", outer)] = Fraction(collapse_sign_assoc(p, k, l))
    return FormalSum(out)


def diff_square(n, flavor="sq"):
    """Differential of a morphism-type corolla (sq, lt or rt) of arity n.

    Collapse terms insert a solid multiplication under the corolla (the
    collapsing block may be all of the inputs), splitting terms put a
    dashed multiplication over smaller corollas of the same flavor.
    """
    if flavor not in ("sq", "lt", "rt"):
        raise TreeError("flavor must be one of sq, lt, rt")
    if n < 1:
        raise TreeError("need arity >= 1")
    out = {}
    for l in range(2, n + 1):
        for k in range(0, n - l + 1):
            kids = [leaf() for _ in range(n - l + 1)]
            kids[k] = corolla_tree("b", l)
            out[node(flavor, kids)] = Fraction(collapse_sign_morphism(n, k, l))
    for m in range(2, n + 1):
        for parts in compositions(n, m):
            kids = [corolla_tree(flavor, p) for p in parts]
            out[node("w", kids)] = Fraction(split_sign_morphism(parts))
    return FormalSum(out)


# ------------------------------------------------- homotopy corolla terms

def down_descriptors(n):
    """Structured term descriptors of the homotopy corolla's differential.

    cluster:  the whole configuration escapes left or right
    collapse: a consecutive block of l >= 2 inputs (offset k) collapses,
              the full block included
    split:    inputs break into consecutive blocks, the idx-th staying
              finite, blocks left of it escaping left, right of it right
    """
    yield ("cluster", n, "lt")
    yield ("cluster", n, "rt")
    for l in range(2, n + 1):
        for k in range(0, n - l + 1):
            yield ("collapse", n, k, l)
    for m in range(2, n + 1):
        for parts in compositions(n, m):
            for idx in range(m):
                yield ("split", n, parts, idx)


def down_term_tree(desc):
    kind = desc[0]
    if kind == "cluster":
        _, n, side = desc
        return corolla_tree(side, n)
    if kind == "collapse":
        _, n, k, l = desc
        kids = [leaf() for _ in range(n - l + 1)]
        kids[k] = corolla_tree("b", l)
        return node("dn", kids)
    _, n, parts, idx = desc
    kids = []
    for i, p in enumerate(parts):
        fam = "lt" if i < idx else ("dn" if i == idx else "rt")
        kids.append(corolla_tree(fam, p))
    return node("w", kids)


def _descriptor_key(desc):
    kind = desc[0]
    rank = {"cluster": 0, "collapse": 1, "split": 2}[kind]
    if kind == "cluster":
        return (desc[1], rank, 0 if desc[2] == "lt" else 1)
    if kind == "collapse":
        return (desc[1], rank, desc[3], desc[2])
    return (desc[1], rank, len(desc[2]), desc[2], desc[3])


def derived_down_sign(desc):
    """Closed-form candidate signs for the homotopy corolla differential,
    from the element-level homotopy relation (coalgebra-validated signs),
    normalized so the escape terms are -left +right.  An independent route
    against which the solver output is cross-checked.
    """
    from .relations import homotopy_composition_sign, homotopy_insertion_sign
    kind = desc[0]
    if kind == "cluster":
        return -1 if desc[2] == "lt" else 1
    if kind == "collapse":
        _, n, k, l = desc
        return homotopy_insertion_sign(n, k, l, n - k - l)
    _, n, parts, idx = desc
    return homotopy_composition_sign(n, parts[:idx], parts[idx], parts[idx + 1:])


# the worked arity-2 differential of the homotopy corolla, used as a hard
# anchor for the solver
PRINTED_DOWN_2 = {
    ("cluster", 2, "lt"): -1,
    ("cluster", 2, "rt"): 1,
    ("collapse", 2, 0, 2): 1,
    ("split", 2, (1, 1), 0): -1,   # finite block first, then right escape
    ("split", 2, (1, 1), 1): -1,   # left escape, then finite block
}

# the worked arity-3 differential; used only as a tie-breaking preference,
# since a couple of its signs look irregular in print
PRINTED_DOWN_3 = {
    ("cluster", 3, "lt"): -1,
    ("cluster", 3, "rt"): 1,
    ("collapse", 3, 0, 2): -1,
    ("collapse", 3, 1, 2): 1,
    ("collapse", 3, 0, 3): 1,
    ("split", 3, (1, 1, 1), 2): 1,
    ("split", 3, (1, 1, 1), 0): 1,
    ("split", 3, (2, 1), 1): 1,
    ("split", 3, (1, 2), 1): 1,
    ("split", 3, (1, 1, 1), 1): 1,
    ("split", 3, (2, 1), 0): -1,
    ("split", 3, (1, 2), 0): 1,
}


@dataclass
class SignTable:
    """Solved signs for the homotopy corolla differentials up to max_arity."""

    max_arity: int
    signs: dict
    n3_discrepancies: list = field(default_factory=list)
    free_rank: int = 0
    equations: int = 0

    def sign(self, desc):
        return self.signs[desc]

    def rows(self):
        return sorted(self.signs.items(), key=lambda kv: _descriptor_key(kv[0]))


def diff_down(n, table=None):
    """Differential of the homotopy corolla of arity n."""
    if n < 1:
        raise TreeError("need arity >= 1")
    if table is None:
        table = default_sign_table(n)
    if table.max_arity < n:
        raise SignConsistencyError(
            "signs solved only up to arity %d, need %d" % (table.max_arity, n))
    out = {}
    for desc in down_descriptors(n):
        out[down_term_tree(desc)] = Fraction(table.sign(desc))
    return FormalSum(out)


def diff_corolla(cor, table=None):
    if cor.family == "b":
        return diff_black(cor.arity)
    if cor.family == "w":
        return diff_white(cor.arity)
    if cor.family == "dn":
        return diff_down(cor.arity, table)
    return diff_square(cor.arity, cor.family)


def diff_tree(t, table=None):
    """Leibniz extension: differentiate each vertex in turn.

    The sign in front of the term for a vertex v is (-1)^(sum of degrees
    of the vertices preceding v in depth-first pre-order).
    """
    if isinstance(t, FormalSum):
        total = FormalSum()
        for tree, coeff in t.terms.items():
            total = total + diff_tree(tree, table).scale(coeff)
        return total
    if t.is_leaf:
        return FormalSum()
    out = {}
    replaced = diff_corolla(t.corolla, table)
    for pattern, coeff in replaced.terms.items():
        new, extra = graft_signed(pattern, t.children)
        out[new] = out.get(new, Fraction(0)) + coeff * extra
    sign = _sgn(t.corolla.degree)
    prefix = 1
    for j, child in enumerate(t.children):
        inner = diff_tree(child, table)
        for sub, coeff in inner.terms.items():
            kids = list(t.children)
            kids[j] = sub
            new = Tree(t.family, tuple(kids), t.color)
            out[new] = out.get(new, Fraction(0)) + coeff * sign * prefix
        prefix *= _sgn(child.degree)
    return FormalSum(out)


@dataclass
class DSquaredReport:
    generator: Corolla
    ok: bool
    survivors: FormalSum

    def __bool__(self):
        return self.ok


def d_squared_check(family, arity, table=None):
    """Assert exact cancellation of the double differential of a generator."""
    cor = Corolla(family, arity)
    dd = diff_tree(diff_corolla(cor, table), table)
    return DSquaredReport(cor, dd.is_zero(), dd)


# -------------------------------------------------------------- the solver
#
# The homotopy corolla's differential is known only up to signs beyond
# arity 3; each structured term gets a +-1 unknown.  Writing unknowns as
# (-1)^x the cancellation conditions of d^2(homotopy corolla) become
# linear equations over GF(2), since every path through the double
# differential crosses at most two unknown signs (one per application).

def _symbolic_corolla_diff(cor):
    """Terms of a generator differential as (coeff, var-or-None, pattern)."""
    if cor.family == "dn":
        return [(Fraction(1), desc, down_term_tree(desc))
                for desc in down_descriptors(cor.arity)]
    return [(coeff, None, pattern)
            for pattern, coeff in diff_corolla(cor).terms.items()]


def _symbolic_diff_tree(t):
    """Leibniz expansion with symbolic homotopy signs.

    Yields (coeff, var-or-None, tree) triples; coeff is a known sign, var
    the descriptor of an unknown one.
    """
    out = []
    if t.is_leaf:
        return out
    for coeff, var, pattern in _symbolic_corolla_diff(t.corolla):
        new, extra = graft_signed(pattern, t.children)
        out.append((coeff * extra, var, new))
    sign = _sgn(t.corolla.degree)
    prefix = 1
    for j, child in enumerate(t.children):
        for coeff, var, sub in _symbolic_diff_tree(child):
            kids = list(t.children)
            kids[j] = sub
            out.append((coeff * sign * prefix, var, Tree(t.family, tuple(kids), t.color)))
        prefix *= _sgn(child.degree)
    return out


def _cancellation_equations(n, varindex):
    """GF(2) equations from d^2 = 0 on the arity-n homotopy corolla.

    Every tree of the double expansion must be reached by exactly two
    paths (each codimension-2 face lies in exactly two codimension-1
    faces); their signed contributions must cancel.
    """
    paths = {}
    for coeff1, var1, mid in _symbolic_corolla_diff(Corolla("dn", n)):
        for coeff2, var2, tree in _symbolic_diff_tree(mid):
            vars_ = tuple(v for v in (var1, var2) if v is not None)
            paths.setdefault(tree, []).append((coeff1 * coeff2, vars_))
    equations = []
    for tree, plist in paths.items():
        if len(plist) != 2:
            raise SignConsistencyError(
                "tree %s reached by %d paths, expected 2" % (encode(tree), len(plist)))
        (c1, v1), (c2, v2) = plist
        mask = 0
        for v in v1 + v2:
            mask ^= 1 << varindex[v]
        # c1*(-1)^X1 + c2*(-1)^X2 = 0  <=>  X1+X2 = 1 exactly when c1 == c2
        rhs = 1 if c1 == c2 else 0
        if mask == 0:
            if rhs:
                raise SignConsistencyError(
                    "unsatisfiable cancellation at %s: %s vs %s"
                    % (encode(tree), (c1, v1), (c2, v2)))
            continue
        equations.append((mask, rhs))
    return equations


def _solve_gf2(equations, nvars):
    """Row-reduce; return (pivot assignment function builder, free columns).

    Returns (pivots, rows) where rows are (mask, rhs) with leading bit the
    pivot; raises SignConsistencyError on an inconsistent system.
    """
    rows = []
    for mask, rhs in equations:
        for pmask, prhs in rows:
            low = pmask & -pmask
            if mask & low:
                mask ^= pmask
                rhs ^= prhs
        if mask:
            rows.append((mask, rhs))
            rows.sort(key=lambda r: r[0] & -r[0])
        elif rhs:
            raise SignConsistencyError("inconsistent sign constraints")
    # back-substitute to reduced form
    reduced = []
    for mask, rhs in sorted(rows, key=lambda r: -(r[0] & -r[0])):
        for pmask, prhs in reduced:
            low = pmask & -pmask
            if mask & low:
                mask ^= pmask
                rhs ^= prhs
        reduced.append((mask, rhs))
    pivots = {}
    for mask, rhs in reduced:
        low = mask & -mask
        pivots[low.bit_length() - 1] = (mask, rhs)
    free = [i for i in range(nvars) if i not in pivots]
    return pivots, free


def solve_down_signs(max_arity):
    """Solve the homotopy differential signs for all arities <= max_arity.

    Constraints: the printed arity-2 terms are fixed, and d^2 vanishes on
    every homotopy corolla up to the cap.  Among the remaining solutions
    the one agreeing with the printed arity-3 terms on the most signs
    wins; any leftover freedom is resolved by preferring -1 at the first
    undetermined descriptor in canonical order (which normalizes each
    arity's escape terms to -left +right).
    """
    if max_arity < 1:
        raise TreeError("need max_arity >= 1")
    # always solve against the printed arity-2/3 data, then restrict: the
    # low-arity signs are meant to be the restriction of the full table
    cap = max(max_arity, 3)
    descs = []
    for n in range(1, cap + 1):
        descs.extend(down_descriptors(n))
    descs.sort(key=_descriptor_key)
    varindex = {d: i for i, d in enumerate(descs)}

    equations = []
    for desc, sign in PRINTED_DOWN_2.items():
        equations.append((1 << varindex[desc], 1 if sign < 0 else 0))
    for n in range(1, cap + 1):
        equations.extend(_cancellation_equations(n, varindex))

    pivots, free = _solve_gf2(equations, len(descs))
    if len(free) > 16:
        raise SignConsistencyError("sign system unexpectedly underdetermined")

    def assignment(free_bits):
        x = 0
        for pos, i in enumerate(free):
            if free_bits >> pos & 1:
                x |= 1 << i
        for col in sorted(pivots, reverse=True):
            mask, rhs = pivots[col]
            val = rhs ^ bin(mask & x & ~(1 << col)).count("1") % 2
            if val:
                x |= 1 << col
        return x

    def score(x):
        hits = 0
        for desc, sign in PRINTED_DOWN_3.items():
            if desc in varindex:
                got = -1 if x >> varindex[desc] & 1 else 1
                hits += got == sign
        return hits

    def tiebreak_key(x):
        # prefer -1 (bit 1) at the earliest descriptor; realized as a
        # lexicographically maximal bit string in canonical order
        return tuple(-(x >> varindex[d] & 1) for d in descs)

    best = None
    for bits in range(1 << len(free)):
        x = assignment(bits)
        key = (-score(x), tiebreak_key(x))
        if best is None or key < best[0]:
            best = (key, x)
    x = best[1]

    signs = {d: (-1 if x >> varindex[d] & 1 else 1)
             for d in descs if d[1] <= max_arity}
    discrepancies = [
        (desc, sign, signs[desc])
        for desc, sign in sorted(PRINTED_DOWN_3.items(), key=lambda kv: _descriptor_key(kv[0]))
        if desc in signs and signs[desc] != sign
    ]
    return SignTable(max_arity, signs, discrepancies, len(free), len(equations))


_TABLE_CACHE = {}


def default_sign_table(max_arity=6):
    """Solved sign table, cached; solving is idempotent and deterministic."""
    want = max(max_arity, 3)
    have = max(_TABLE_CACHE) if _TABLE_CACHE else 0
    if want > have:
        _TABLE_CACHE[want] = solve_down_signs(want)
        have = want
    return _TABLE_CACHE[have]
