"""Planar rooted trees: the term language of the free two-colored operads.

Edges carry one of two colors.  Solid edges belong to the source-algebra
side, dashed edges to the target side.  Internal vertices are labelled by
generator corollas:

    b   arity q >= 2   solid^q  -> solid    degree 2-q   (multiplication)
    w   arity p >= 2   dashed^p -> dashed   degree 2-p   (target multiplication)
    lt  arity n >= 1   solid^n  -> dashed   degree 1-n   (first morphism)
    rt  arity n >= 1   solid^n  -> dashed   degree 1-n   (second morphism)
    sq  arity n >= 1   solid^n  -> dashed   degree 1-n   (morphism, two-operad setting)
    dn  arity n >= 1   solid^n  -> dashed   degree -n    (homotopy)

Operads are planar: leaves are ordered and identified by position, there
is no leaf-permutation action.
"""

from collections import namedtuple
from fractions import Fraction
from functools import lru_cache
from itertools import product
import re

SOLID = "solid"
DASHED = "dashed"

FamilyInfo = namedtuple("FamilyInfo", "output input min_arity degree")

FAMILIES = {
    "b": FamilyInfo(SOLID, SOLID, 2, lambda q: 2 - q),
    "w": FamilyInfo(DASHED, DASHED, 2, lambda p: 2 - p),
    "lt": FamilyInfo(DASHED, SOLID, 1, lambda n: 1 - n),
    "rt": FamilyInfo(DASHED, SOLID, 1, lambda n: 1 - n),
    "sq": FamilyInfo(DASHED, SOLID, 1, lambda n: 1 - n),
    "dn": FamilyInfo(DASHED, SOLID, 1, lambda n: -n),
}

# generator sets of the three operads
AINF_FAMILIES = ("b",)
MORINF_FAMILIES = ("b", "w", "sq")
HOINF_FAMILIES = ("b", "w", "lt", "dn", "rt")


class TreeError(ValueError):
    pass


class ColorMismatchError(TreeError):
    pass


class Corolla(namedtuple("Corolla", "family arity")):
    """A generator symbol: family plus arity."""

    __slots__ = ()

    def __new__(cls, family, arity):
        info = FAMILIES.get(family)
        if info is None:
            raise TreeError("unknown generator family %r" % (family,))
        if arity < info.min_arity:
            raise TreeError("family %r needs arity >= %d, got %d"
                            % (family, info.min_arity, arity))
        return super().__new__(cls, family, arity)

    @property
    def degree(self):
        return FAMILIES[self.family].degree(self.arity)

    @property
    def output_color(self):
        return FAMILIES[self.family].output

    @property
    def input_color(self):
        return FAMILIES[self.family].input


class Tree:
    """Planar rooted tree; immutable and hash-cached.

    A tree is either a leaf (family is None, carrying the color of the
    slot it fills) or a corolla-labelled vertex with child subtrees whose
    output colors match the corolla's input color.
    """

    __slots__ = ("family", "children", "color", "nleaves", "degree", "_hash")

    def __init__(self, family, children, color):
        self.family = family
        self.children = children
        self.color = color
        if family is None:
            self.nleaves = 1
            self.degree = 0
        else:
            self.nleaves = sum(c.nleaves for c in children)
            self.degree = (FAMILIES[family].degree(len(children))
                           + sum(c.degree for c in children))
        self._hash = hash((family, color if family is None else None, children))

    @property
    def is_leaf(self):
        return self.family is None

    @property
    def arity(self):
        return len(self.children)

    @property
    def corolla(self):
        assert not self.is_leaf
        return Corolla(self.family, len(self.children))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Tree) or self._hash != other._hash:
            return False
        if self.family != other.family:
            return False
        if self.family is None:
            return self.color == other.color
        return self.children == other.children

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Tree(%s)" % encode(self)

    def vertices(self):
        """Corollas in depth-first pre-order."""
        if self.is_leaf:
            return
        yield self.corolla
        for c in self.children:
            yield from c.vertices()

    @property
    def nvertices(self):
        return sum(1 for _ in self.vertices())

    def leaf_colors(self):
        if self.is_leaf:
            return (self.color,)
        out = []
        for c in self.children:
            out.extend(c.leaf_colors())
        return tuple(out)


def leaf(color=SOLID):
    assert color in (SOLID, DASHED)
    return Tree(None, (), color)


def node(family, children):
    """Build a vertex; validates arity and edge colors."""
    cor = Corolla(family, len(children))
    want = cor.input_color
    for pos, child in enumerate(children):
        if child.color != want:
            raise ColorMismatchError(
                "%s output into %s slot %d of %s%d"
                % (child.color, want, pos + 1, family, len(children)))
    return Tree(family, tuple(children), cor.output_color)


def corolla_tree(family, arity):
    """The one-vertex tree: a bare generator with leaf inputs."""
    want = FAMILIES[family].input
    return node(family, tuple(leaf(want) for _ in range(arity)))


def compose(outer, slot, inner):
    """Graft inner into the slot-th leaf of outer (1-based).

    This is composition of the underlying planar trees; in the graded
    operad the corresponding element may differ from the grafted tree by
    a Koszul sign, see ocompose.
    """
    if not 1 <= slot <= outer.nleaves:
        raise TreeError("slot %d out of range 1..%d" % (slot, outer.nleaves))

    def go(t, k):
        # k is the 1-based index of t's first leaf
        if t.is_leaf:
            if inner.color != t.color:
                raise ColorMismatchError(
                    "%s output into %s slot %d" % (inner.color, t.color, slot))
            return inner
        kids = []
        for c in t.children:
            if k <= slot < k + c.nleaves:
                kids.append(go(c, k))
            else:
                kids.append(c)
            k += c.nleaves
        return Tree(t.family, tuple(kids), t.color)

    return go(outer, 1)


def graft(pattern, subtrees):
    """Replace the leaves of pattern, left to right, by the given subtrees."""
    assert pattern.nleaves == len(subtrees)
    it = iter(subtrees)

    def go(t):
        if t.is_leaf:
            s = next(it)
            if s.color != t.color:
                raise ColorMismatchError(
                    "%s output into %s slot" % (s.color, t.color))
            return s
        return Tree(t.family, tuple(go(c) for c in t.children), t.color)

    return go(pattern)


def graft_signed(pattern, subtrees):
    """Graft subtrees into pattern's leaves; return (tree, Koszul sign).

    A tree stands for the composite of its vertex operations in pre-order.
    Composing "pattern first, then the subtrees left to right" therefore
    differs from the grafted tree's own pre-order: each subtree's vertices
    must move left past the pattern vertices that follow its leaf.  The
    sign is the product of (-1)^(deg(subtree) * deg(passed vertex)) over
    those crossings.
    """
    assert pattern.nleaves == len(subtrees)
    items = []

    def walk(t):
        if t.is_leaf:
            items.append(("leaf",))
        else:
            items.append(("vertex", FAMILIES[t.family].degree(len(t.children))))
            for c in t.children:
                walk(c)

    walk(pattern)
    after = 0
    leaf_suffix = []
    for item in reversed(items):
        if item[0] == "leaf":
            leaf_suffix.append(after)
        else:
            after += item[1]
    leaf_suffix.reverse()
    exponent = sum(s.degree * r for s, r in zip(subtrees, leaf_suffix))
    sign = -1 if exponent % 2 else 1
    return graft(pattern, subtrees), sign


def ocompose(outer, slot, inner):
    """Operadic partial composition as a FormalSum (tree with sign).

    outer o_slot inner equals the grafted tree times the Koszul sign for
    moving inner past the outer vertices that follow the slot in
    pre-order.  Linear in both arguments; this version, unlike plain
    compose, satisfies graded associativity, parallel-slot commutation
    and the Leibniz rule on the nose.
    """
    if isinstance(outer, Tree):
        outer = FormalSum.of(outer)
    if isinstance(inner, Tree):
        inner = FormalSum.of(inner)
    total = {}
    for t_out, c_out in outer.terms.items():
        if not 1 <= slot <= t_out.nleaves:
            raise TreeError("slot %d out of range 1..%d" % (slot, t_out.nleaves))
        subtrees = [leaf(c) for c in t_out.leaf_colors()]
        for t_in, c_in in inner.terms.items():
            subs = list(subtrees)
            subs[slot - 1] = t_in
            tree, sign = graft_signed(t_out, subs)
            total[tree] = total.get(tree, Fraction(0)) + c_out * c_in * sign
    return FormalSum(total)


# ------------------------------------------------------------------ encoding

def encode(t):
    """Canonical text form; leaves are numbered 1..n left to right."""
    counter = [0]

    def go(t):
        if t.is_leaf:
            counter[0] += 1
            return str(counter[0])
        return "%s%d(%s)" % (t.family, len(t.children),
                             ",".join(go(c) for c in t.children))

    return go(t)


class TreeParseError(TreeError):
    def __init__(self, message, pos):
        super().__init__("%s (at position %d)" % (message, pos))
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(?P<gen>[a-z]+)(?P<ar>\d+)|(?P<int>\d+)|(?P<punct>[(),]))")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise TreeParseError("unexpected character %r" % text[pos], pos)
            break
        if m.group("gen"):
            out.append(("gen", (m.group("gen"), int(m.group("ar"))), m.start()))
        elif m.group("int"):
            out.append(("int", int(m.group("int")), m.start()))
        else:
            out.append((m.group("punct"), None, m.start()))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def parse(text, leaf_color=SOLID):
    """Parse the tree grammar ``tree := INT | GEN "(" tree ("," tree)* ")"``.

    Leaf integers identify leaves by planar position only: any positive
    labels are accepted and normalized to 1..n left to right, so both a
    globally numbered string and one with locally numbered subterms parse
    to the same tree.  A bare integer parses to a single leaf of the given
    color; inside a generator, leaf colors are forced by the slot.
    """
    tokens = _tokenize(text)
    idx = [0]

    def peek():
        return tokens[idx[0]]

    def take(kind=None):
        tok = tokens[idx[0]]
        if kind is not None and tok[0] != kind:
            raise TreeParseError("expected %s, found %s" % (kind, tok[0]), tok[2])
        idx[0] += 1
        return tok

    def term(slot_color):
        kind, val, pos = peek()
        if kind == "int":
            take()
            if val < 1:
                raise TreeParseError("leaf labels must be positive", pos)
            return leaf(slot_color)
        if kind == "gen":
            take()
            family, arity = val
            if family not in FAMILIES:
                raise TreeParseError("unknown generator %r" % family, pos)
            take("(")
            want = FAMILIES[family].input
            kids = [term(want)]
            while peek()[0] == ",":
                take()
                kids.append(term(want))
            take(")")
            if len(kids) != arity:
                raise TreeParseError(
                    "%s%d applied to %d arguments" % (family, arity, len(kids)), pos)
            try:
                return node(family, kids)
            except TreeError as err:
                raise TreeParseError(str(err), pos) from err
        raise TreeParseError("expected a tree", pos)

    t = term(leaf_color)
    kind, _, pos = peek()
    if kind != "end":
        raise TreeParseError("trailing input", pos)
    return t


# -------------------------------------------------------------- enumeration

def compositions(n, parts):
    """Ordered compositions of n into the given number of positive parts."""
    if parts == 1:
        yield (n,)
        return
    for first in range(1, n - parts + 2):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _enum(n, output, families, leaf_color):
    # Terminates: same-colored families have arity >= 2, so their slots get
    # strictly fewer leaves; color-changing families are solid-input only
    # and pure-solid trees bottom out.
    found = []
    if n == 1 and output == leaf_color:
        found.append(leaf(leaf_color))
    for family in families:
        info = FAMILIES[family]
        if info.output != output:
            continue
        for arity in range(info.min_arity, n + 1):
            for parts in compositions(n, arity):
                pools = [_enum(k, info.input, families, leaf_color) for k in parts]
                if any(not p for p in pools):
                    continue
                for kids in product(*pools):
                    found.append(Tree(family, kids, info.output))
    found.sort(key=encode)
    return tuple(found)


def enumerate_trees(n, output, families=HOINF_FAMILIES, leaf_color=SOLID,
                    degree_range=None, nvertices=None):
    """All trees with n leaves of leaf_color and the given output color.

    Deterministic: results are sorted by canonical encoding.  Optional
    filters restrict to a closed degree interval or an exact number of
    internal vertices.
    """
    if n < 1:
        raise TreeError("need n >= 1")
    out = _enum(n, output, tuple(families), leaf_color)
    if degree_range is not None:
        lo, hi = degree_range
        out = tuple(t for t in out if lo <= t.degree <= hi)
    if nvertices is not None:
        out = tuple(t for t in out if t.nvertices == nvertices)
    return list(out)


# -------------------------------------------------------------- formal sums

class FormalSum:
    """A finite Q-linear combination of trees."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for t, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[t] = c
        self.terms = clean

    @classmethod
    def of(cls, tree, coeff=1):
        return cls({tree: Fraction(coeff)})

    def __add__(self, other):
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out.get(t, Fraction(0)) + c
        return FormalSum(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return FormalSum({t: v * c for t, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, FormalSum) and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    def items(self):
        """Terms sorted by canonical encoding."""
        return sorted(self.terms.items(), key=lambda kv: encode(kv[0]))

    def __repr__(self):
        if self.is_zero():
            return "FormalSum(0)"
        bits = []
        for t, c in self.items():
            sign = "+" if c > 0 else "-"
            mag = abs(c)
            coeff = "" if mag == 1 else "%s*" % mag
            bits.append("%s %s%s" % (sign, coeff, encode(t)))
        body = " ".join(bits)
        return "FormalSum(%s)" % (body[2:] if body.startswith("+ ") else body)


ZERO = FormalSum()
