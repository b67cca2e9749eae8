"""Truncated reduced tensor coalgebras: lifts and their defining identities.

A map family b on the shifted space lifts to a coderivation B of the
reduced tensor coalgebra, a family f to a coalgebra morphism F, and a
triple (h, F, G) to a homotopy H with (F x H + H x G) Delta = Delta H.
Everything is truncated at a weight cap (default 6); the identities are
weight graded, so nothing is lost below the cap.
"""

from dataclasses import dataclass, field


class ComponentTable:
    """Bigraded components T^m_n : source^(x n) -> target^(x m), m <= n <= cap.

    entries[(m, n)] maps an input tuple to {output tuple: coefficient}.
    """

    def __init__(self, source, target, cap, entries=None):
        self.source = source
        self.target = target
        self.cap = cap
        self.entries = {}
        for (m, n), table in (entries or {}).items():
            assert 1 <= m <= n <= cap, (m, n)
            clean = {}
            for xs, outs in table.items():
                oclean = {ys: c for ys, c in outs.items() if c}
                if oclean:
                    clean[tuple(xs)] = oclean
            if clean:
                self.entries[(m, n)] = clean

    def component(self, m, n):
        return self.entries.get((m, n), {})

    def apply(self, m, xs):
        return self.component(m, len(xs)).get(tuple(xs), {})

    def row(self, m):
        """The maps source^(x n) -> target^(x m) for all n."""
        return {n: self.component(m, n) for n in range(m, self.cap + 1)}


def _add_into(acc, key, coeff):
    cur = acc.get(key)
    acc[key] = coeff if cur is None else cur + coeff


def _tensor_blocks(blocks, xs, source):
    """Apply a tensor product of block maps to a split of xs.

    blocks is a list of (width, fn, degree): fn takes the block's input
    tuple and returns {output name or tuple: coefficient}.  The Koszul
    rule charges each block's degree against the inputs consumed by the
    blocks to its left.  Yields (output tuple, coefficient).
    """
    assert sum(w for w, _, _ in blocks) == len(xs)
    results = [((), 1)]
    pos = 0
    consumed_degree = 0
    for width, fn, deg in blocks:
        chunk = xs[pos:pos + width]
        sign = -1 if (deg * consumed_degree) % 2 else 1
        outs = fn(chunk)
        new = []
        for prefix, coeff in results:
            for y, c in outs.items():
                ys = y if isinstance(y, tuple) else (y,)
                new.append((prefix + ys, sign * coeff * c))
        results = new
        if not results:
            return {}
        consumed_degree += source.tuple_degree(chunk)
        pos += width
    acc = {}
    for ys, c in results:
        _add_into(acc, ys, c)
    return {ys: c for ys, c in acc.items() if c}


def _identity_block(space):
    return lambda chunk: {tuple(chunk): 1}


def lift_coderivation(b, cap=6):
    """The unique coderivation B with pr_1 B = b, truncated at cap.

    B^m_n = sum over i+j = m-1 of Id^i x b_(n+1-m) x Id^j.
    """
    if b.source is not b.target and b.source != b.target:
        raise ValueError("coderivation lift needs source == target")
    space = b.source
    ident = _identity_block(space)
    entries = {}
    for n in range(1, cap + 1):
        for m in range(1, n + 1):
            s = n + 1 - m
            if s not in b.components:
                continue
            deg = b.law(s)
            table = {}
            for xs in space.tuples(n):
                acc = {}
                for i in range(m):
                    blocks = ([(1, ident, 0)] * i
                              + [(s, b.apply, deg)]
                              + [(1, ident, 0)] * (m - 1 - i))
                    for ys, c in _tensor_blocks(blocks, xs, space).items():
                        _add_into(acc, ys, c)
                acc = {ys: c for ys, c in acc.items() if c}
                if acc:
                    table[xs] = acc
            if table:
                entries[(m, n)] = table
    return ComponentTable(space, space, cap, entries)


def lift_morphism(f, cap=6):
    """The unique coalgebra morphism F with pr_1 F = f, truncated at cap.

    F^m_n = sum over i_1+...+i_m = n of f_(i_1) x ... x f_(i_m).
    """
    from .trees import compositions
    entries = {}
    for n in range(1, cap + 1):
        for m in range(1, n + 1):
            table = {}
            for xs in f.source.tuples(n):
                acc = {}
                for parts in compositions(n, m):
                    if any(p not in f.components for p in parts):
                        continue
                    blocks = [(p, f.apply, f.law(p)) for p in parts]
                    for ys, c in _tensor_blocks(blocks, xs, f.source).items():
                        _add_into(acc, ys, c)
                acc = {ys: c for ys, c in acc.items() if c}
                if acc:
                    table[xs] = acc
            if table:
                entries[(m, n)] = table
    return ComponentTable(f.source, f.target, cap, entries)


def lift_homotopy(h, F, G, cap=6):
    """The unique H with (F x H + H x G) Delta = Delta H and pr_1 H = h.

    H^m_n sums f_(i_1) x ... x f_(i_a) x h_s x g_(j_1) x ... x g_(j_b)
    over a+b = m-1 and i+s+j compositions of n, where f and g are the
    weight-one rows of F and G.
    """
    from .trees import compositions
    if F.cap != cap or G.cap != cap:
        raise ValueError("cap mismatch between h, F and G")
    if F.source != h.source or G.source != h.source:
        raise ValueError("homotopy lift needs matching sources")

    def one_row(T):
        def fn(chunk):
            return T.apply(1, chunk)
        return fn

    def one_row_degree(T, k):
        # entries of T^1_k are homogeneous; read a degree off any entry
        comp = T.component(1, k)
        for xs, outs in comp.items():
            for ys in outs:
                return (T.target.tuple_degree(ys)
                        - T.source.tuple_degree(xs))
        return 0

    ffn, gfn = one_row(F), one_row(G)
    entries = {}
    for n in range(1, cap + 1):
        for m in range(1, n + 1):
            table = {}
            for xs in h.source.tuples(n):
                acc = {}
                for a in range(m):
                    b_cnt = m - 1 - a
                    for parts in compositions(n, m):
                        s = parts[a]
                        if s not in h.components:
                            continue
                        blocks = []
                        ok = True
                        for pos, p in enumerate(parts):
                            if pos < a:
                                if not F.component(1, p):
                                    ok = False
                                    break
                                blocks.append((p, ffn, one_row_degree(F, p)))
                            elif pos == a:
                                blocks.append((p, h.apply, h.law(p)))
                            else:
                                if not G.component(1, p):
                                    ok = False
                                    break
                                blocks.append((p, gfn, one_row_degree(G, p)))
                        if not ok:
                            continue
                        for ys, c in _tensor_blocks(blocks, xs, h.source).items():
                            _add_into(acc, ys, c)
                acc = {ys: c for ys, c in acc.items() if c}
                if acc:
                    table[xs] = acc
            if table:
                entries[(m, n)] = table
    return ComponentTable(h.source, h.target, cap, entries)


# ------------------------------------------------------------- identities

@dataclass
class IdentityReport:
    kind: str
    ok: bool
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _split_outputs(outs, a):
    acc = {}
    for ys, c in outs.items():
        _add_into(acc, (ys[:a], ys[a:]), c)
    return acc


def _pair_apply(Lcomp, Rcomp, xs, cut, src, tgt):
    """Apply (L tensor R) to xs cut at position cut; returns {(ys1,ys2): c}.

    Lcomp/Rcomp are {input tuple: {output tuple: coeff}} components; the
    identity component may be passed as None meaning Id^(width).
    """
    xl, xr = xs[:cut], xs[cut:]
    if Lcomp is None:
        lout = {xl: 1}
    else:
        lout = Lcomp.get(xl, {})
    if Rcomp is None:
        rout = {xr: 1}
    else:
        rout = Rcomp.get(xr, {})
    if not lout or not rout:
        return {}
    ldeg = src.tuple_degree(xl)
    acc = {}
    for ys1, c1 in lout.items():
        for ys2, c2 in rout.items():
            rdeg = tgt.tuple_degree(ys2) - src.tuple_degree(xr)
            sign = -1 if (rdeg * ldeg) % 2 else 1
            _add_into(acc, (tuple(ys1), tuple(ys2)), sign * c1 * c2)
    return {k: v for k, v in acc.items() if v}


def verify_coalgebra_identity(table, kind, cap=None, F=None, G=None):
    """Check the defining identity of a lifted table on all partial
    coproducts with a+b <= cap.

    kind is "coderivation" (Delta B = (Id x B + B x Id) Delta),
    "morphism" ((F x F) Delta = Delta F) or "homotopy"
    ((F x H + H x G) Delta = Delta H, needing F and G).
    Reports the first failing (n, a, b, input tuple).
    """
    if cap is None:
        cap = table.cap
    if kind == "homotopy" and (F is None or G is None):
        raise ValueError("homotopy identity needs F and G")
    src, tgt = table.source, table.target
    failures = []
    for n in range(2, cap + 1):
        for m in range(2, n + 1):
            comp = table.component(m, n)
            for a in range(1, m):
                b = m - a
                for xs in src.tuples(n):
                    lhs = _split_outputs(comp.get(xs, {}), a)
                    rhs = {}
                    for i in range(1, n):
                        j = n - i
                        if kind == "coderivation":
                            # (B^a_i x Id^b) needs j == b; (Id^a x B^b_j) needs i == a
                            if j == b:
                                part = _pair_apply(table.component(a, i), None, xs, i, src, tgt)
                                for k, v in part.items():
                                    _add_into(rhs, k, v)
                            if i == a:
                                part = _pair_apply(None, table.component(b, j), xs, i, src, tgt)
                                for k, v in part.items():
                                    _add_into(rhs, k, v)
                        elif kind == "morphism":
                            part = _pair_apply(table.component(a, i),
                                               table.component(b, j), xs, i, src, tgt)
                            for k, v in part.items():
                                _add_into(rhs, k, v)
                        else:
                            part = _pair_apply(F.component(a, i),
                                               table.component(b, j), xs, i, src, tgt)
                            for k, v in part.items():
                                _add_into(rhs, k, v)
                            part = _pair_apply(table.component(a, i),
                                               G.component(b, j), xs, i, src, tgt)
                            for k, v in part.items():
                                _add_into(rhs, k, v)
                    rhs = {k: v for k, v in rhs.items() if v}
                    lhs = {k: v for k, v in lhs.items() if v}
                    if lhs != rhs:
                        failures.append((n, a, b, xs))
    return IdentityReport(kind, not failures, failures)


def compose_tables(S, T):
    """Componentwise composition (S after T)."""
    assert S.cap == T.cap
    assert T.target == S.source
    cap = S.cap
    entries = {}
    for n in range(1, cap + 1):
        for m in range(1, n + 1):
            table = {}
            for xs in T.source.tuples(n):
                acc = {}
                for k in range(m, n + 1):
                    mid = T.component(k, n).get(xs)
                    if not mid:
                        continue
                    Scomp = S.component(m, k)
                    for zs, c1 in mid.items():
                        for ys, c2 in Scomp.get(zs, {}).items():
                            _add_into(acc, ys, c1 * c2)
                acc = {ys: c for ys, c in acc.items() if c}
                if acc:
                    table[xs] = acc
            if table:
                entries[(m, n)] = table
    return ComponentTable(T.source, S.target, cap, entries)


def square_weight_one_vanishes(table):
    """True when the square of a degree-one table kills weight-one outputs."""
    sq = compose_tables(table, table)
    return all(not sq.component(1, n) for n in range(1, table.cap + 1))


def table_combination(terms):
    """Linear combination of component tables: terms is [(coeff, table)]."""
    first = terms[0][1]
    entries = {}
    for coeff, tab in terms:
        assert tab.cap == first.cap
        for key, table in tab.entries.items():
            dst = entries.setdefault(key, {})
            for xs, outs in table.items():
                acc = dst.setdefault(xs, {})
                for ys, c in outs.items():
                    _add_into(acc, ys, coeff * c)
    cleaned = {}
    for key, table in entries.items():
        tclean = {}
        for xs, outs in table.items():
            oclean = {ys: c for ys, c in outs.items() if c}
            if oclean:
                tclean[xs] = oclean
        if tclean:
            cleaned[key] = tclean
    return ComponentTable(first.source, first.target, first.cap, cleaned)
