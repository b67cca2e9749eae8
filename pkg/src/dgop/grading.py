"""Graded bases, Koszul signs and families of multilinear maps.

Coefficient arithmetic only ever uses +, * and unary -, so components can
hold Fractions (the normal case) or any commutative-ring elements, which
the test suite exploits to compare sign conventions symbolically.
"""

from fractions import Fraction
from itertools import product


class GradedBasis:
    """A finite ordered basis of a graded vector space."""

    __slots__ = ("names", "degree")

    def __init__(self, elements):
        names = []
        degree = {}
        for name, deg in elements:
            assert name not in degree, "duplicate basis name %r" % name
            names.append(name)
            degree[name] = int(deg)
        self.names = tuple(names)
        self.degree = degree

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return (isinstance(other, GradedBasis)
                and self.names == other.names and self.degree == other.degree)

    def __repr__(self):
        return "GradedBasis(%s)" % ", ".join(
            "%s:%d" % (n, self.degree[n]) for n in self.names)

    def elements(self):
        return [(n, self.degree[n]) for n in self.names]

    def shifted(self, delta):
        """Same names, all degrees moved by delta (suspension is delta=-1)."""
        return GradedBasis((n, self.degree[n] + delta) for n in self.names)

    def tuples(self, k):
        return product(self.names, repeat=k)

    def tuple_degree(self, names):
        return sum(self.degree[n] for n in names)


def koszul_sign(degrees, reordering):
    """Sign for reordering graded symbols; reordering[i] is the original
    position of the element ending up in slot i.

    The sign is the product of (-1)^(d_i * d_j) over pairs that invert.
    """
    n = len(degrees)
    if sorted(reordering) != list(range(n)):
        raise ValueError("not a permutation of 0..%d: %r" % (n - 1, reordering))
    exponent = 0
    for i in range(n):
        for j in range(i + 1, n):
            if reordering[i] > reordering[j]:
                exponent += degrees[reordering[i]] * degrees[reordering[j]]
    return -1 if exponent % 2 else 1


class MapFamily:
    """A family of multilinear maps source^(x k) -> target, k >= 1.

    components maps a weight k to a table {input tuple: {output name:
    coefficient}}; missing weights and entries are zero.  Every component
    must be homogeneous of degree law(k).
    """

    def __init__(self, source, target, components, law, check=True):
        self.source = source
        self.target = target
        self.law = law
        clean = {}
        for k, table in components.items():
            tclean = {}
            for xs, outs in table.items():
                xs = tuple(xs)
                assert len(xs) == k, "weight %d entry keyed by %r" % (k, xs)
                oclean = {y: c for y, c in outs.items() if c}
                if oclean:
                    tclean[xs] = oclean
            if tclean:
                clean[k] = tclean
        self.components = clean
        if check:
            self._check_homogeneous()

    def _check_homogeneous(self):
        for k, table in self.components.items():
            want = self.law(k)
            for xs, outs in table.items():
                got_in = self.source.tuple_degree(xs)
                for y in outs:
                    if self.target.degree[y] - got_in != want:
                        raise ValueError(
                            "component %d not homogeneous at %r -> %r: "
                            "degree %d, expected %d"
                            % (k, xs, y, self.target.degree[y] - got_in, want))

    def weights(self):
        return sorted(self.components)

    def apply(self, xs):
        """Value on a basis tuple, as {output name: coefficient}."""
        return self.components.get(len(xs), {}).get(tuple(xs), {})

    def is_zero(self):
        return not self.components

    def map_coefficients(self, fn):
        comps = {
            k: {xs: {y: fn(c) for y, c in outs.items()}
                for xs, outs in table.items()}
            for k, table in self.components.items()}
        return MapFamily(self.source, self.target, comps, self.law, check=False)


def _shift_exponent(degrees):
    # moving one (de)suspension symbol per slot past the preceding slots
    n = len(degrees)
    return sum((n - 1 - i) * degrees[i] for i in range(n))


def decalage_sign(k):
    """Per-weight constant (-1)^((k-1)(k-2)/2) carried by the shift.

    Without it the shifted-side identities hold only up to weightwise
    signs and the coalgebra route would test a different relation than
    the stated element-level ones; with it both routes agree per weight.
    """
    return -1 if ((k - 1) * (k - 2) // 2) % 2 else 1


def shift_conjugate(family, direction):
    """Conjugate a family by the degree shift.

    "suspend" turns maps on V into maps on the shifted space sV (all
    degrees lowered by one) and adjusts the degree law by k - 1; a family
    with law 2-k becomes one of constant degree +1, which is the form the
    tensor-coalgebra lifts want.  "desuspend" is the exact inverse.
    """
    if direction not in ("suspend", "desuspend"):
        raise ValueError("direction must be suspend or desuspend")
    down = direction == "suspend"
    delta = -1 if down else 1
    src = family.source.shifted(delta)
    tgt = family.target.shifted(delta)
    components = {}
    for k, table in family.components.items():
        new = {}
        for xs, outs in table.items():
            if down:
                # sign of s^(-1) o m o s^(x k), written on unshifted degrees
                degs = [family.source.degree[x] - 1 for x in xs]
            else:
                degs = [family.source.degree[x] for x in xs]
            exponent = _shift_exponent(degs)
            sign = decalage_sign(k) * (-1 if exponent % 2 else 1)
            new[xs] = {y: sign * c for y, c in outs.items()}
        components[k] = new
    law = family.law
    if down:
        new_law = lambda k: law(k) + k - 1
    else:
        new_law = lambda k: law(k) - k + 1
    return MapFamily(src, tgt, components, new_law)


def random_family(rng, source, target, law, max_weight, density=0.6, span=3):
    """A random homogeneous family, for property tests."""
    components = {}
    for k in range(1, max_weight + 1):
        table = {}
        for xs in source.tuples(k):
            want = law(k) + source.tuple_degree(xs)
            outs = {}
            for y in target.names:
                if target.degree[y] == want and rng.random() < density:
                    c = Fraction(rng.randint(-span, span))
                    if c:
                        outs[y] = c
            if outs:
                table[xs] = outs
        if table:
            components[k] = table
    return MapFamily(source, target, components, law)
