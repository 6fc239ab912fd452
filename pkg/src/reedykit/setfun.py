"""Finite-set-valued diagrams, their limits and colimits, and hom counting.

Also hosts :class:`FinSetSlice`, the concrete category of finite sets over a
fixed label set (plain finite sets are the one-label case).  It computes
(co)limits by the set formulas instead of universal search, which is what
makes classification of thousands of section maps affordable.
"""
from __future__ import annotations

import itertools
from collections.abc import Callable, Mapping
from dataclasses import dataclass

from networkx.utils import UnionFind

from .fincat import Cone, FiniteCategory, FunctorData, NoLimit
from .report import Budget, Report, as_budget, order_key


@dataclass(frozen=True)
class SetDiagram:
    shape: FiniteCategory
    object_sets: Mapping  # object -> tuple of elements
    morphism_fns: Mapping  # morphism -> dict element -> element

    def fn(self, m):
        return self.morphism_fns[m]


def validate_set_diagram(d: SetDiagram) -> Report:
    rep = Report("set diagram")
    c = d.shape
    for x in c.objects:
        if x not in d.object_sets:
            rep.add("object set given", x)
    if not rep.ok:
        return rep
    for m in c.morphisms:
        f = d.morphism_fns.get(m)
        a, b = d.object_sets[c.src(m)], set(d.object_sets[c.tgt(m)])
        if f is None or set(f) != set(a) or any(v not in b for v in f.values()):
            rep.add("total function", m)
    if not rep.ok:
        return rep
    for x in c.objects:
        f = d.morphism_fns[c.identity(x)]
        if any(f[e] != e for e in d.object_sets[x]):
            rep.add("identity", x)
    for f in c.morphisms:
        for g in c.out_of(c.tgt(f)):
            gf = d.morphism_fns[c.compose(g, f)]
            ff, fg = d.morphism_fns[f], d.morphism_fns[g]
            if any(gf[e] != fg[ff[e]] for e in d.object_sets[c.src(f)]):
                rep.add("composition", (g, f))
    return rep


@dataclass(frozen=True)
class SetLimit:
    """Compatible families, each a tuple indexed like ``order``."""
    order: tuple
    elements: tuple
    projections: Mapping  # object -> dict family -> element


@dataclass(frozen=True)
class SetColimit:
    """Quotient classes, each labeled by its least (object, element) pair."""
    elements: tuple
    injections: Mapping  # object -> dict element -> class label


def _constraints(shape: FiniteCategory, fns: Mapping, order: list) -> dict:
    pos = {j: i for i, j in enumerate(order)}
    cons = {j: [] for j in order}
    for m in shape.morphisms:
        if shape.is_identity(m):
            continue
        a, b = shape.src(m), shape.tgt(m)
        if a == b:
            cons[a].append((None, fns[m]))
            continue
        # check at whichever end comes later in the order
        if pos[a] < pos[b]:
            cons[b].append((a, fns[m], "forward"))
        else:
            cons[a].append((b, fns[m], "backward"))
    return cons


def diagram_limit(d: SetDiagram) -> SetLimit:
    """All families (a_x) with F(f)(a_x) = a_y, by pruned backtracking."""
    shape = d.shape
    order = list(shape.objects)
    pos = {j: i for i, j in enumerate(order)}
    cons = _constraints(shape, d.morphism_fns, order)
    fam = [None] * len(order)
    out = []

    def rec(i):
        if i == len(order):
            out.append(tuple(fam))
            return
        x = order[i]
        for e in d.object_sets[x]:
            ok = True
            for c in cons[x]:
                if c[0] is None:
                    if c[1][e] != e:
                        ok = False
                        break
                    continue
                other, fn, kind = c
                if kind == "forward":      # other -> x
                    if fn[fam[pos[other]]] != e:
                        ok = False
                        break
                else:                      # x -> other
                    if fn[e] != fam[pos[other]]:
                        ok = False
                        break
            if ok:
                fam[i] = e
                rec(i + 1)
        fam[i] = None

    rec(0)
    elements = tuple(out)
    projections = {x: {f: f[pos[x]] for f in elements} for x in order}
    return SetLimit(tuple(order), elements, projections)


def diagram_colimit(d: SetDiagram) -> SetColimit:
    """Quotient of the disjoint union by a ~ F(f)(a), via union-find."""
    shape = d.shape
    uf = UnionFind()
    for x in shape.objects:
        for e in d.object_sets[x]:
            uf[(x, e)]
    for m in shape.morphisms:
        a, b = shape.src(m), shape.tgt(m)
        fn = d.morphism_fns[m]
        for e in d.object_sets[a]:
            uf.union((a, e), (b, fn[e]))
    label = {}
    for cls in uf.to_sets():
        least = min(cls, key=order_key)
        for p in cls:
            label[p] = least
    elements = tuple(sorted(set(label.values()), key=order_key))
    inj = {x: {e: label[(x, e)] for e in d.object_sets[x]} for x in shape.objects}
    return SetColimit(elements, inj)


def hom_count(shape: FiniteCategory, X: SetDiagram, Y: SetDiagram,
              compatible: Callable | None = None, enumerate_all: bool = False,
              budget: Budget | int | None = None):
    """Number of natural transformations X => Y (and the list when asked).

    Elementwise backtracking with propagation: fixing eta_x(a) forces
    eta_y(X(u)(a)) = Y(u)(eta_x(a)) along every u: x -> y.  ``compatible``
    optionally restricts values, e.g. to label-preserving components.
    """
    budget = as_budget(budget, "hom_count")
    slots = [(x, a) for x in shape.objects for a in X.object_sets[x]]
    outgoing = {x: [m for m in shape.out_of(x) if not shape.is_identity(m)] for x in shape.objects}
    assign: dict = {}
    found = []
    count = 0

    def propagate(x, a, b, trail):
        stack = [(x, a, b)]
        while stack:
            x, a, b = stack.pop()
            cur = assign.get((x, a))
            if cur is not None:
                if cur != b:
                    return False
                continue
            if compatible is not None and not compatible(x, a, b):
                return False
            assign[(x, a)] = b
            trail.append((x, a))
            for m in outgoing[x]:
                y = shape.tgt(m)
                stack.append((y, X.morphism_fns[m][a], Y.morphism_fns[m][b]))
        return True

    def rec(i):
        nonlocal count
        while i < len(slots) and slots[i] in assign:
            i += 1
        if i == len(slots):
            count += 1
            budget.spend()
            if enumerate_all:
                found.append({x: {a: assign[(x, a)] for a in X.object_sets[x]} for x in shape.objects})
            return
        x, a = slots[i]
        for b in Y.object_sets[x]:
            trail: list = []
            if propagate(x, a, b, trail):
                rec(i + 1)
            for k in trail:
                del assign[k]

    rec(0)
    return (count, found) if enumerate_all else count


def induced_limit_map(src: SetLimit, tgt: SetLimit, components: Mapping) -> dict:
    """Function lim X -> lim Y induced by a map of diagrams."""
    index = {f: f for f in tgt.elements}
    out = {}
    for f in src.elements:
        g = tuple(components[x][f[i]] for i, x in enumerate(src.order))
        out[f] = index[g]
    return out


def induced_colimit_map(src: SetColimit, tgt: SetColimit, components: Mapping) -> dict:
    out = {}
    for x, inj in src.injections.items():
        for e, cls in inj.items():
            out[cls] = tgt.injections[x][components[x][e]]
    return out


# -- concrete fibres -------------------------------------------------------------

class CapExceeded(NoLimit):
    """A (co)limit exists in FinSet but not inside the size-capped fragment."""


class FinSetSlice:
    """Finite sets of size <= cap, each element labeled in ``labels``.

    With ``labels=None`` this is the plain fragment FinSet<=cap: objects are
    the ints 0..cap (the set {0..k-1}).  Otherwise objects are sorted label
    tuples, a skeleton of FinSet/labels.  Morphisms are ``(src, tgt, fn)``
    with ``fn`` a tuple, required to preserve labels.
    """

    def __init__(self, cap: int, labels: tuple | None = None, name: str = "",
                 strict: bool = True):
        self.cap = cap
        # non-strict slices compute (co)limits in ambient FinSet, past the cap
        self.strict = strict
        # (co)limit memo; the shape is stored alongside so its id stays valid
        self._memo: dict = {}
        self.labels = None if labels is None else tuple(sorted(labels, key=order_key))
        if self.labels is None:
            objs = list(range(cap + 1))
        else:
            objs = [t for k in range(cap + 1)
                    for t in itertools.combinations_with_replacement(self.labels, k)]
        self.name = name or (f"FinSet<={cap}" if labels is None else f"FinSet<={cap}/{self.labels}")
        self.category = FiniteCategory(objs, identity=self.identity, compose=self.compose,
                                       hom=self._hom, src=lambda m: m[0], tgt=lambda m: m[1],
                                       name=self.name)

    # -- element level --
    def size(self, obj) -> int:
        return obj if self.labels is None else len(obj)

    def label(self, obj, i):
        return None if self.labels is None else obj[i]

    def elements(self, obj) -> range:
        return range(self.size(obj))

    def label_set(self) -> tuple:
        return (None,) if self.labels is None else self.labels

    def object_for(self, labels_seq) -> object:
        """Canonical object holding elements with the given (sorted) labels."""
        n = len(labels_seq)
        if n > self.cap and self.strict:
            raise CapExceeded(f"{self.name}: object of size {n} exceeds cap {self.cap}")
        return n if self.labels is None else tuple(labels_seq)

    @staticmethod
    def function(m) -> tuple:
        return m[2]

    def morphism(self, src, tgt, fn) -> tuple:
        fn = tuple(fn)
        if self.labels is not None and any(tgt[fn[i]] != src[i] for i in range(len(src))):
            raise ValueError("function does not preserve labels")
        return (src, tgt, fn)

    def identity(self, obj):
        return (obj, obj, tuple(range(self.size(obj))))

    def compose(self, g, f):
        if f[1] != g[0]:
            raise ValueError("not composable")
        return (f[0], g[1], tuple(g[2][i] for i in f[2]))

    def _hom(self, a, b):
        na, nb = self.size(a), self.size(b)
        if self.labels is None:
            for fn in itertools.product(range(nb), repeat=na):
                yield (a, b, fn)
            return
        options = [[j for j in range(nb) if b[j] == a[i]] for i in range(na)]
        for fn in itertools.product(*options):
            yield (a, b, fn)

    def is_mono(self, m) -> bool:
        return len(set(m[2])) == len(m[2])

    def is_epi(self, m) -> bool:
        return len(set(m[2])) == self.size(m[1])

    def is_iso(self, m) -> bool:
        return self.is_mono(m) and self.is_epi(m)

    def hom_count(self, a, b) -> int:
        if self.labels is None:
            return self.size(b) ** self.size(a)
        out = 1
        for i in range(len(a)):
            out *= sum(1 for lb in b if lb == a[i])
        return out

    # -- (co)limits --
    def _diagram_key(self, kind, d: FunctorData):
        shape = d.source
        return (kind, id(shape), tuple(d.obj(j) for j in shape.objects),
                tuple(d.mor(m) for m in shape.morphisms))

    def colimit(self, d: FunctorData) -> Cone:
        key = self._diagram_key("colim", d)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._memo[key] = (d.source, self._colimit(d))
        return hit[1]

    def limit(self, d: FunctorData) -> Cone:
        key = self._diagram_key("lim", d)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._memo[key] = (d.source, self._limit(d))
        return hit[1]

    def _colimit(self, d: FunctorData) -> Cone:
        shape = d.source
        sets = {j: tuple(self.elements(d.obj(j))) for j in shape.objects}
        fns = {m: dict(enumerate(self.function(d.mor(m)))) for m in shape.morphisms}
        col = diagram_colimit(SetDiagram(shape, sets, fns))
        lab = {}
        for j in shape.objects:
            for e, cls in col.injections[j].items():
                lab[cls] = self.label(d.obj(j), e)
        ordered = sorted(col.elements, key=lambda cls: (order_key(lab[cls]), order_key(cls)))
        apex = self.object_for([lab[c] for c in ordered])
        pos = {cls: i for i, cls in enumerate(ordered)}
        legs = {j: (d.obj(j), apex, tuple(pos[col.injections[j][e]] for e in sets[j]))
                for j in shape.objects}
        return Cone(apex, legs)

    def _limit(self, d: FunctorData) -> Cone:
        shape = d.source
        order = list(shape.objects)
        fams = []
        for lab in self.label_set():
            sets = {j: tuple(e for e in self.elements(d.obj(j)) if self.label(d.obj(j), e) == lab)
                    for j in order}
            fns = {m: {e: v for e, v in enumerate(self.function(d.mor(m)))
                       if self.label(d.obj(shape.src(m)), e) == lab} for m in shape.morphisms}
            lim = diagram_limit(SetDiagram(shape, sets, fns))
            fams.extend((lab, f) for f in sorted(lim.elements))
        apex = self.object_for([lab for lab, _ in fams])
        legs = {j: (apex, d.obj(j), tuple(f[i] for _, f in fams)) for i, j in enumerate(order)}
        return Cone(apex, legs)

    def induced_from_colimit(self, cocone: Cone, legs: Mapping, target) -> tuple:
        n = self.size(cocone.apex)
        fn = [None] * n
        for j, leg in cocone.legs.items():
            other = self.function(legs[j])
            for e, v in enumerate(self.function(leg)):
                if fn[v] is None:
                    fn[v] = other[e]
                elif fn[v] != other[e]:
                    raise ValueError("legs do not form a cocone")
        if any(v is None for v in fn):
            raise ValueError("colimit legs not jointly surjective")
        return self.morphism(cocone.apex, target, fn)

    def induced_to_limit(self, cone: Cone, legs: Mapping, source) -> tuple:
        keys = list(cone.legs)
        index = {}
        for e in self.elements(cone.apex):
            index[(self.label(cone.apex, e),) + tuple(self.function(cone.legs[j])[e] for j in keys)] = e
        fn = []
        for s in self.elements(source):
            key = (self.label(source, s),) + tuple(self.function(legs[j])[s] for j in keys)
            if key not in index:
                raise ValueError("legs do not form a cone")
            fn.append(index[key])
        return self.morphism(source, cone.apex, fn)
