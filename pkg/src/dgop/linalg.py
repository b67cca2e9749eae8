"""Exact sparse linear algebra over the rationals.

Everything here is done with ``fractions.Fraction``; there is never any
rounding, so ranks and kernels are exact.  This is what makes the
cohomology dimensions computed elsewhere in the package trustworthy.
"""

from fractions import Fraction


class SparseMatrix:
    """A sparse matrix over Q.  No explicit zeros are stored.

    Entries are given as a mapping (row, col) -> Fraction.  Instances are
    treated as immutable after construction; all operations return new
    matrices.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        assert rows >= 0 and cols >= 0
        self.rows = rows
        self.cols = cols
        clean = {}
        for (i, j), v in (entries or {}).items():
            assert 0 <= i < rows and 0 <= j < cols, (i, j, rows, cols)
            v = Fraction(v)
            if v:
                clean[(i, j)] = v
        self.entries = clean

    @classmethod
    def from_rows(cls, data):
        rows = len(data)
        cols = len(data[0]) if data else 0
        entries = {}
        for i, row in enumerate(data):
            assert len(row) == cols, "ragged rows"
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = Fraction(v)
        return cls(rows, cols, entries)

    def entry(self, i, j):
        return self.entries.get((i, j), Fraction(0))

    def transpose(self):
        return SparseMatrix(
            self.cols, self.rows,
            {(j, i): v for (i, j), v in self.entries.items()})

    def mul(self, other):
        """Matrix product self * other."""
        assert self.cols == other.rows, (self.cols, other.rows)
        by_row = {}
        for (i, j), v in other.entries.items():
            by_row.setdefault(i, []).append((j, v))
        out = {}
        for (i, k), v in self.entries.items():
            for j, w in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), Fraction(0)) + v * w
        return SparseMatrix(self.rows, other.cols, out)

    def apply(self, vec):
        """Matrix-vector product; vec is a sequence of length cols."""
        assert len(vec) == self.cols
        out = [Fraction(0)] * self.rows
        for (i, j), v in self.entries.items():
            out[i] += v * vec[j]
        return out

    def is_zero(self):
        return not self.entries

    def to_triplets(self):
        return sorted((i, j, v) for (i, j), v in self.entries.items())

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix)
                and (self.rows, self.cols) == (other.rows, other.cols)
                and self.entries == other.entries)

    def __repr__(self):
        return "SparseMatrix(%d, %d, %d nonzero)" % (
            self.rows, self.cols, len(self.entries))


def _bitsize(q):
    return q.numerator.bit_length() + q.denominator.bit_length()


def _echelon(m):
    """Row-reduce a copy of m; return (pivot column list, reduced rows).

    Rows are kept as dicts col -> Fraction.  Within each column the pivot
    row is chosen with the smallest bit-size entry, which keeps the
    intermediate fractions from blowing up on the matrices we care about.
    The result is fully reduced (entries above pivots cleared as well), so
    kernel extraction can read coefficients off directly.
    """
    work = {}
    for (i, j), v in m.entries.items():
        work.setdefault(i, {})[j] = v
    rows = [r for r in work.values() if r]
    pivots = []
    reduced = []
    for col in range(m.cols):
        best = None
        for idx, row in enumerate(rows):
            v = row.get(col)
            if v and (best is None or _bitsize(v) < _bitsize(rows[best][col])):
                best = idx
        if best is None:
            continue
        piv = rows.pop(best)
        pv = piv[col]
        if pv != 1:
            piv = {j: v / pv for j, v in piv.items()}
        # clear the column everywhere else, including earlier pivot rows
        for group in (rows, reduced):
            for idx, row in enumerate(group):
                v = row.get(col)
                if not v:
                    continue
                new = dict(row)
                for j, w in piv.items():
                    nv = new.get(j, Fraction(0)) - v * w
                    if nv:
                        new[j] = nv
                    else:
                        new.pop(j, None)
                group[idx] = new
        rows = [r for r in rows if r]
        pivots.append(col)
        reduced.append(piv)
    return pivots, reduced


def rank(m):
    """Rank of m over Q, by exact Gaussian elimination."""
    pivots, _ = _echelon(m)
    return len(pivots)


def kernel_basis(m):
    """A basis of the null space of m; len == cols - rank.

    Each vector v returned satisfies m*v == 0 exactly.  One basis vector
    is produced per free column, with a 1 in that column.
    """
    pivots, reduced = _echelon(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * m.cols
        vec[free] = Fraction(1)
        for col, row in zip(pivots, reduced):
            coeff = row.get(free)
            if coeff:
                vec[col] = -coeff
        basis.append(vec)
    return basis
