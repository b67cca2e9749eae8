"""Shared structures for the relation and acceptance tests."""

from fractions import Fraction

import pytest

from dgop.grading import GradedBasis, MapFamily
from dgop.relations import Structure


def fam(src, tgt, law, comps):
    return MapFamily(src, tgt, comps, law)


def identity_family(basis):
    return {1: {(n,): {n: Fraction(1)} for n in basis.names}}


def exterior_structure():
    """Unit and an odd generator; h1 contracts the generator.

    f = g = id and h = {h1: v -> u} is an honest homotopy from the
    identity to itself.
    """
    V = GradedBasis([("u", 0), ("v", 1)])
    mu = {2: {("u", "u"): {"u": Fraction(1)},
              ("u", "v"): {"v": Fraction(1)},
              ("v", "u"): {"v": Fraction(1)}}}
    m = fam(V, V, lambda k: 2 - k, mu)
    f = fam(V, V, lambda k: 1 - k, identity_family(V))
    h = fam(V, V, lambda k: -k, {1: {("v",): {"u": Fraction(1)}},
                                 2: {("v", "v"): {"u": Fraction(1)}}})
    return Structure(V, V, m, m, f, f, h)


def square_zero_structure():
    """A square-zero extension in degrees 0 and -2; h2 multiplies into the
    ideal.  Again an honest homotopy from the identity to itself."""
    V = GradedBasis([("e", 0), ("eps", -2)])
    mu = {2: {("e", "e"): {"e": Fraction(1)},
              ("e", "eps"): {"eps": Fraction(1)},
              ("eps", "e"): {"eps": Fraction(1)}}}
    m = fam(V, V, lambda k: 2 - k, mu)
    f = fam(V, V, lambda k: 1 - k, identity_family(V))
    h = fam(V, V, lambda k: -k, {2: {("e", "e"): {"eps": Fraction(1)}}})
    return Structure(V, V, m, m, f, f, h)


def dg_homotopy_structure():
    """Nonzero differential, f the identity, g the zero morphism, and the
    contraction h1: b -> a a homotopy between them.  Exercises the
    differential terms of the homotopy relations."""
    V = GradedBasis([("a", 0), ("b", 1)])
    m = fam(V, V, lambda k: 2 - k,
            {1: {("a",): {"b": Fraction(1)}},
             2: {("a", "a"): {"a": Fraction(1)},
                 ("a", "b"): {"b": Fraction(1)}}})
    f = fam(V, V, lambda k: 1 - k, identity_family(V))
    g = fam(V, V, lambda k: 1 - k, {})
    h = fam(V, V, lambda k: -k, {1: {("b",): {"a": Fraction(1)}}})
    return Structure(V, V, m, m, f, g, h)


def broken_structure():
    """f and g differ while h = 0: the homotopy relations fail at n = 1."""
    base = exterior_structure()
    V = base.V
    g = fam(V, V, lambda k: 1 - k,
            {1: {("u",): {"u": Fraction(1)}, ("v",): {"v": Fraction(2)}}})
    zero_h = fam(V, V, lambda k: -k, {})
    return Structure(V, V, base.mV, base.mW, base.f, g, zero_h)


def dg_algebra_with_differential():
    """Two-dimensional associative algebra with a nonzero differential:
    d(a) = b, a acts as a left unit, b is a square-zero right annihilator."""
    V = GradedBasis([("a", 0), ("b", 1)])
    comps = {
        1: {("a",): {"b": Fraction(1)}},
        2: {("a", "a"): {"a": Fraction(1)},
            ("a", "b"): {"b": Fraction(1)}},
    }
    return fam(V, V, lambda k: 2 - k, comps)


def nonassociative_product():
    """Degree-0 product with (pp)p != p(pp) and no differential."""
    V = GradedBasis([("p", 0), ("q", 0)])
    comps = {2: {("p", "p"): {"q": Fraction(1)},
                 ("p", "q"): {"p": Fraction(1)}}}
    return fam(V, V, lambda k: 2 - k, comps)


class Poly:
    """Tiny multivariate polynomial ring over Q, for symbolic sign tests."""

    __slots__ = ("d",)

    def __init__(self, d=None):
        self.d = {m: c for m, c in (d or {}).items() if c}

    @classmethod
    def var(cls, name):
        return cls({(name,): Fraction(1)})

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly({(): Fraction(other)})

    def __add__(self, other):
        other = self._coerce(other)
        d = dict(self.d)
        for m, c in other.d.items():
            d[m] = d.get(m, Fraction(0)) + c
        return Poly(d)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.d.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        d = {}
        for m1, c1 in self.d.items():
            for m2, c2 in other.d.items():
                m = tuple(sorted(m1 + m2))
                d[m] = d.get(m, Fraction(0)) + c1 * c2
        return Poly(d)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.d)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.d == ({} if other == 0 else {(): Fraction(other)})
        return isinstance(other, Poly) and self.d == other.d

    def __repr__(self):
        if not self.d:
            return "0"
        return " + ".join(
            "%s*%s" % (c, "".join(m) or "1") for m, c in sorted(self.d.items()))


def symbolic_family(tag, src, tgt, law, max_weight):
    """One polynomial variable per admissible coefficient."""
    comps = {}
    for k in range(1, max_weight + 1):
        table = {}
        for xs in src.tuples(k):
            outs = {}
            for y in tgt.names:
                if tgt.degree[y] - src.tuple_degree(xs) == law(k):
                    outs[y] = Poly.var(
                        "%s%d_%s_%s" % (tag, k, "".join(xs), y))
            if outs:
                table[xs] = outs
        if table:
            comps[k] = table
    return MapFamily(src, tgt, comps, law)


@pytest.fixture
def honest_structures():
    return [exterior_structure(), square_zero_structure()]
