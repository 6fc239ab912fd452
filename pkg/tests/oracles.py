"""Independent oracles used to freeze expected values.

The classical Reedy oracle works on Set-valued diagrams given as plain
dicts: ``sizes[x]`` is |X(x)| (elements 0..n-1) and ``fns[m]`` the function
of X(m) as a tuple.  Latching and matching objects, and the relative
pushout/pullback maps, are computed directly on elements; only the base
category's hom/compose and the Reedy classes are taken from the library.
Model structure in every fibre: all maps weak equivalences, injections
cofibrations, surjections fibrations.
"""
from __future__ import annotations

import itertools


def _non_identity(c, ms):
    return [m for m in ms if not c.is_identity(m)]


class Diagram:
    def __init__(self, sizes: dict, fns: dict):
        self.sizes = sizes
        self.fns = fns

    def apply(self, m, e):
        return self.fns[m][e]


def diagram_of_section(s) -> Diagram:
    """Read a section of a constant FinSet fibration as a diagram of sets."""
    base = s.base_reedy.category
    sizes = {x: s.local(x) for x in base.objects}
    fns = {}
    for m in base.morphisms:
        if base.is_identity(m):
            fns[m] = tuple(range(sizes[base.src(m)]))
        else:
            fns[m] = tuple(s.arrow(m)[2][2])
    return Diagram(sizes, fns)


def map_of_section_map(f) -> dict:
    return {x: tuple(c[2]) for x, c in f.components.items()}


class _UF:
    def __init__(self, items):
        self.p = {i: i for i in items}

    def find(self, i):
        while self.p[i] != i:
            self.p[i] = self.p[self.p[i]]
            i = self.p[i]
        return i

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[ra] = rb


def latching(rs, X: Diagram, r):
    """(classes, map to X(r)) for L_r X as a quotient of the disjoint union."""
    c = rs.category
    raising = rs.raising.members
    objs = [u for u in _non_identity(c, c.into(r)) if u in raising]
    elems = [(u, e) for u in objs for e in range(X.sizes[c.src(u)])]
    uf = _UF(elems)
    for u in objs:
        for v in objs:
            for h in c.hom(c.src(u), c.src(v)):
                if h in raising and c.compose(v, h) == u:
                    for e in range(X.sizes[c.src(u)]):
                        uf.union((u, e), (v, X.apply(h, e)))
    classes = sorted({uf.find(p) for p in elems}, key=repr)
    cls_of = {p: uf.find(p) for p in elems}
    to_r = {}
    for (u, e), k in cls_of.items():
        to_r[k] = X.apply(u, e)
    return classes, cls_of, to_r


def matching(rs, X: Diagram, r):
    """(families, map from X(r)) for M_r X as compatible families."""
    c = rs.category
    lowering = rs.lowering.members
    objs = sorted([l for l in _non_identity(c, c.out_of(r)) if l in lowering], key=repr)
    fams = []
    for choice in itertools.product(*[range(X.sizes[c.tgt(l)]) for l in objs]):
        fam = dict(zip(objs, choice))
        ok = True
        for l in objs:
            for l2 in objs:
                for h in c.hom(c.tgt(l), c.tgt(l2)):
                    if h in lowering and c.compose(h, l) == l2 and X.apply(h, fam[l]) != fam[l2]:
                        ok = False
        if ok:
            fams.append(tuple(choice))
    from_r = {e: tuple(X.apply(l, e) for l in objs) for e in range(X.sizes[r])}
    return fams, from_r, objs


def classify(rs, X: Diagram, Y: Diagram, f: dict) -> dict:
    """Per-object flags of f: X -> Y in the classical Reedy structure."""
    c = rs.category
    out = {}
    for r in c.objects:
        # relative latching map X(r) +_{L X} L Y -> Y(r)
        lx_cls, lx_of, _ = latching(rs, X, r)
        ly_cls, ly_of, ly_to = latching(rs, Y, r)
        items = [("x", e) for e in range(X.sizes[r])] + [("l", k) for k in ly_cls]
        uf = _UF(items)
        for (u, e), k in lx_of.items():
            img_in_y = ly_of[(u, f[c.src(u)][e])]
            uf.union(("x", X.apply(u, e)), ("l", img_in_y))
        target = {}
        for it in items:
            val = f[r][it[1]] if it[0] == "x" else ly_to[it[1]]
            target.setdefault(uf.find(it), set()).add(val)
        assert all(len(v) == 1 for v in target.values()), "pushout map not well defined"
        cof = len({next(iter(v)) for v in target.values()}) == len(target)
        # relative matching map X(r) -> Y(r) x_{M Y} M X
        mx_fams, mx_from, objs = matching(rs, X, r)
        my_fams, my_from, _ = matching(rs, Y, r)
        pairs = set()
        for y in range(Y.sizes[r]):
            for fam in mx_fams:
                pushed = tuple(f[c.tgt(l)][e] for l, e in zip(objs, fam))
                if my_from[y] == pushed:
                    pairs.add((y, fam))
        hit = {(f[r][e], mx_from[e]) for e in range(X.sizes[r])}
        fib = pairs <= hit
        out[r] = {"cof": cof, "fib": fib, "weq": True, "trivial_cof": cof, "trivial_fib": fib}
    return out


def monotone(a: int, b: int):
    """Monotone maps [a] -> [b] by direct enumeration."""
    return [f for f in itertools.product(range(b + 1), repeat=a + 1)
            if all(f[i] <= f[i + 1] for i in range(a))]


def standard_simplex_degenerate(k: int, n: int) -> int:
    """Degenerate k-simplices of Delta^n: non-injective monotone maps [k] -> [n]."""
    return sum(1 for f in monotone(k, n) if len(set(f)) < len(f))


def boundary_degenerate(k: int, n: int) -> int:
    """Degenerate k-simplices of the boundary of Delta^n (non-surjective maps)."""
    return sum(1 for f in monotone(k, n) if len(set(f)) < len(f) and len(set(f)) < n + 1)


def count_sections_chain1(cap: int) -> int:
    """Functors [1] -> FinSet<=cap: sum over a, b of b^a."""
    return sum(b ** a for a in range(cap + 1) for b in range(cap + 1))
