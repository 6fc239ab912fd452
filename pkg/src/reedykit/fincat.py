"""Finite categories, functors, natural transformations and comma categories.

Composition is written ``compose(g, f) = g o f`` throughout, so ``f`` acts
first.  Ids are any hashable values; files use strings, builders use ints
and tuples.  Every category is immutable once built.  Large derived
categories (sections, big FinSet fragments) may supply hom-sets and
composition lazily through callables instead of a dense table.
"""
from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass
from typing import Any, Hashable

import networkx as nx

from .report import Report, order_key

Id = Hashable


class FiniteCategory:
    """A finite category given by objects, hom-sets, identities and composition.

    Either pass ``morphisms`` as ``(id, src, tgt)`` triples together with an
    identity map and a compose table, or pass ``hom``/``src``/``tgt``
    callables for a lazily enumerated category.  ``compose`` may be a
    mapping ``(g, f) -> h`` or a callable ``(g, f) -> h``.
    """

    __slots__ = ("objects", "name", "_src", "_tgt", "_ident", "_table", "_cfn",
                 "_homs", "_homfn", "_morphisms", "_objset", "_lazy")

    def __init__(self, objects: Iterable[Id], morphisms: Iterable[tuple] | None = None,
                 identity: Mapping | Callable | None = None,
                 compose: Mapping | Callable | None = None, *,
                 hom: Callable | None = None, src: Callable | None = None,
                 tgt: Callable | None = None, name: str = ""):
        self.objects = tuple(objects)
        self._objset = frozenset(self.objects)
        if len(self._objset) != len(self.objects):
            raise ValueError("duplicate object ids")
        self.name = name
        self._ident = identity
        if isinstance(compose, Mapping):
            self._table, self._cfn = dict(compose), None
        else:
            self._table, self._cfn = None, compose
        self._homs: dict = {}
        if morphisms is not None:
            self._lazy = False
            self._src, self._tgt = {}, {}
            order = []
            for m, s, t in morphisms:
                if m in self._src:
                    raise ValueError(f"duplicate morphism id {m!r}")
                if s not in self._objset or t not in self._objset:
                    raise ValueError(f"morphism {m!r} has unknown endpoint")
                self._src[m], self._tgt[m] = s, t
                self._homs.setdefault((s, t), []).append(m)
                order.append(m)
            self._homs = {k: tuple(v) for k, v in self._homs.items()}
            self._morphisms = tuple(order)
            self._homfn = None
        else:
            if hom is None or src is None or tgt is None:
                raise ValueError("lazy categories need hom, src and tgt callables")
            self._lazy = True
            self._src, self._tgt, self._homfn = src, tgt, hom
            self._morphisms = None

    # -- basic structure -------------------------------------------------
    def hom(self, a: Id, b: Id) -> tuple:
        if self._lazy:
            h = self._homs.get((a, b))
            if h is None:
                h = self._homs[(a, b)] = tuple(self._homfn(a, b))
            return h
        return self._homs.get((a, b), ())

    def src(self, m: Id) -> Id:
        return self._src(m) if self._lazy else self._src[m]

    def tgt(self, m: Id) -> Id:
        return self._tgt(m) if self._lazy else self._tgt[m]

    def identity(self, x: Id) -> Id:
        if callable(self._ident):
            return self._ident(x)
        return self._ident[x]

    def compose(self, g: Id, f: Id) -> Id:
        if self._table is not None:
            try:
                return self._table[(g, f)]
            except KeyError:
                raise ValueError(f"compose undefined for ({g!r}, {f!r})") from None
        return self._cfn(g, f)

    def compose_or_none(self, g: Id, f: Id):
        if self._table is not None:
            return self._table.get((g, f))
        try:
            return self._cfn(g, f)
        except (KeyError, ValueError):
            return None

    def chain(self, *ms: Id) -> Id:
        """compose(ms[0], compose(ms[1], ...)), i.e. the last argument acts first."""
        out = ms[-1]
        for m in reversed(ms[:-1]):
            out = self.compose(m, out)
        return out

    @property
    def morphisms(self) -> tuple:
        if self._morphisms is None:
            self._morphisms = tuple(m for a in self.objects for b in self.objects
                                    for m in self.hom(a, b))
        return self._morphisms

    @property
    def is_lazy(self) -> bool:
        return self._lazy

    @property
    def has_table(self) -> bool:
        return self._table is not None

    def has_object(self, x: Id) -> bool:
        return x in self._objset

    def has_morphism(self, m: Id) -> bool:
        if not self._lazy:
            return m in self._src
        try:
            return m in self.hom(self.src(m), self.tgt(m))
        except Exception:
            return False

    def endpoints(self, m: Id) -> tuple:
        return self.src(m), self.tgt(m)

    def is_identity(self, m: Id) -> bool:
        return m == self.identity(self.src(m))

    def inverse(self, m: Id):
        s, t = self.src(m), self.tgt(m)
        for n in self.hom(t, s):
            if self.compose(n, m) == self.identity(s) and self.compose(m, n) == self.identity(t):
                return n
        return None

    def is_iso(self, m: Id) -> bool:
        return self.inverse(m) is not None

    def out_of(self, a: Id):
        for b in self.objects:
            yield from self.hom(a, b)

    def into(self, b: Id):
        for a in self.objects:
            yield from self.hom(a, b)

    def size(self) -> tuple[int, int]:
        return len(self.objects), len(self.morphisms)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        if self._lazy:
            return f"<FiniteCategory{label}: {len(self.objects)} objects, lazy>"
        return f"<FiniteCategory{label}: {len(self.objects)} objects, {len(self._morphisms)} morphisms>"


# -- builders -------------------------------------------------------------

def discrete_category(objects: Iterable[Id], name: str = "") -> FiniteCategory:
    objs = list(objects)
    mors = [(("id", x), x, x) for x in objs]
    ident = {x: ("id", x) for x in objs}
    table = {(("id", x), ("id", x)): ("id", x) for x in objs}
    return FiniteCategory(objs, mors, ident, table, name=name)


def poset_category(elements: Iterable[Id], leq: Callable[[Id, Id], bool] | Iterable[tuple],
                   name: str = "") -> FiniteCategory:
    """Thin category of a finite preorder; the morphism a -> b is the pair (a, b).

    ``leq`` is either a predicate or a list of generating pairs whose reflexive
    transitive closure is taken.
    """
    elems = list(elements)
    if not callable(leq):
        g = nx.DiGraph()
        g.add_nodes_from(elems)
        g.add_edges_from(leq)
        reach = {a: nx.descendants(g, a) | {a} for a in elems}
        rel = lambda a, b: b in reach[a]  # noqa: E731
    else:
        rel = leq
    mors, table = [], {}
    pairs = [(a, b) for a in elems for b in elems if rel(a, b)]
    pset = set(pairs)
    for a, b in pairs:
        mors.append(((a, b), a, b))
    for (a, b) in pairs:
        for (b2, c) in pairs:
            if b2 == b:
                if (a, c) not in pset:
                    raise ValueError("relation is not transitive")
                table[((b, c), (a, b))] = (a, c)
    ident = {a: (a, a) for a in elems}
    for a in elems:
        if (a, a) not in pset:
            raise ValueError("relation is not reflexive")
    return FiniteCategory(elems, mors, ident, table, name=name)


def chain_category(n: int) -> FiniteCategory:
    """The ordinal [n] = 0 -> 1 -> ... -> n."""
    return poset_category(range(n + 1), lambda a, b: a <= b, name=f"[{n}]")


def span_category() -> FiniteCategory:
    """a <- b -> c, with non-identity morphisms named "f": b -> a and "g": b -> c."""
    objs = ["a", "b", "c"]
    mors = [("id_a", "a", "a"), ("id_b", "b", "b"), ("id_c", "c", "c"),
            ("f", "b", "a"), ("g", "b", "c")]
    ident = {x: f"id_{x}" for x in objs}
    return from_generators(objs, mors, ident, {}, name="span")


def cospan_category() -> FiniteCategory:
    """a -> c <- b, with non-identity morphisms "u": a -> c and "v": b -> c."""
    objs = ["a", "b", "c"]
    mors = [("id_a", "a", "a"), ("id_b", "b", "b"), ("id_c", "c", "c"),
            ("u", "a", "c"), ("v", "b", "c")]
    ident = {x: f"id_{x}" for x in objs}
    return from_generators(objs, mors, ident, {}, name="cospan")


def from_generators(objects, morphisms, identity, nontrivial: Mapping, name: str = "") -> FiniteCategory:
    """Fill in identity laws automatically; ``nontrivial`` gives the remaining table."""
    table = dict(nontrivial)
    srcs = {m: s for m, s, _ in morphisms}
    tgts = {m: t for m, _, t in morphisms}
    for m in srcs:
        table[(m, identity[srcs[m]])] = m
        table[(identity[tgts[m]], m)] = m
    return FiniteCategory(objects, morphisms, identity, table, name=name)


def opposite(c: FiniteCategory) -> FiniteCategory:
    """The opposite category, sharing ids with ``c``."""
    if not c.is_lazy and c.has_table:
        mors = [(m, c.tgt(m), c.src(m)) for m in c.morphisms]
        table = {(f, g): h for (g, f), h in c._table.items()}
        ident = {x: c.identity(x) for x in c.objects}
        return FiniteCategory(c.objects, mors, ident, table, name=f"{c.name}^op")
    return FiniteCategory(c.objects, identity=c.identity,
                          compose=lambda g, f: c.compose(f, g),
                          hom=lambda a, b: c.hom(b, a), src=c.tgt, tgt=c.src,
                          name=f"{c.name}^op")


def product_category(c: FiniteCategory, d: FiniteCategory, name: str = "") -> FiniteCategory:
    objs = [(x, y) for x in c.objects for y in d.objects]
    mors = [((f, g), (c.src(f), d.src(g)), (c.tgt(f), d.tgt(g)))
            for f in c.morphisms for g in d.morphisms]
    ident = {(x, y): (c.identity(x), d.identity(y)) for x, y in objs}

    def comp(q, p):
        return (c.compose(q[0], p[0]), d.compose(q[1], p[1]))
    return FiniteCategory(objs, mors, ident, comp, name=name or f"{c.name}x{d.name}")


def disjoint_union(c: FiniteCategory, d: FiniteCategory, name: str = "") -> FiniteCategory:
    """Tagged disjoint union; ids become (0, id) and (1, id)."""
    objs = [(0, x) for x in c.objects] + [(1, y) for y in d.objects]
    mors = [((0, m), (0, c.src(m)), (0, c.tgt(m))) for m in c.morphisms]
    mors += [((1, m), (1, d.src(m)), (1, d.tgt(m))) for m in d.morphisms]
    ident = {(i, x): (i, (c, d)[i].identity(x)) for i, x in objs}

    def comp(q, p):
        if q[0] != p[0]:
            raise ValueError("not composable")
        return (q[0], (c, d)[q[0]].compose(q[1], p[1]))
    return FiniteCategory(objs, mors, ident, comp, name=name)


def subcategory(c: FiniteCategory, objects: Iterable[Id], morphisms: Iterable[Id] | None = None,
                name: str = "") -> FiniteCategory:
    """Subcategory on ``objects``; full when ``morphisms`` is None.  Ids are shared."""
    wanted = set(objects)
    objs = [x for x in c.objects if x in wanted]
    oset = set(objs)
    if morphisms is None:
        mors = [m for a in objs for b in objs for m in c.hom(a, b)]
    else:
        mset = set(morphisms)
        mors = [m for a in objs for b in objs for m in c.hom(a, b) if m in mset]
    mtriples = [(m, c.src(m), c.tgt(m)) for m in mors]
    for _, s, t in mtriples:
        if s not in oset or t not in oset:
            raise ValueError("morphism endpoint outside the subcategory")
    mset = set(mors)
    ident = {x: c.identity(x) for x in objs}

    def comp(g, f):
        h = c.compose(g, f)
        if h not in mset:
            raise ValueError("subcategory not closed under composition")
        return h
    return FiniteCategory(objs, mtriples, ident, comp, name=name)


def materialize(c: FiniteCategory, name: str | None = None) -> FiniteCategory:
    """Dense-table copy of a (possibly lazy) category."""
    mors = [(m, c.src(m), c.tgt(m)) for m in c.morphisms]
    table = {}
    for f in c.morphisms:
        for g in c.out_of(c.tgt(f)):
            table[(g, f)] = c.compose(g, f)
    ident = {x: c.identity(x) for x in c.objects}
    return FiniteCategory(c.objects, mors, ident, table, name=c.name if name is None else name)


# -- functors and natural transformations ----------------------------------

class FunctorData:
    """A functor given by an object map and a morphism map (mappings or callables)."""

    __slots__ = ("source", "target", "_om", "_mm", "name")

    def __init__(self, source: FiniteCategory, target: FiniteCategory,
                 object_map: Mapping | Callable, morphism_map: Mapping | Callable, name: str = ""):
        self.source, self.target = source, target
        self._om, self._mm = object_map, morphism_map
        self.name = name

    def obj(self, x: Id) -> Id:
        return self._om(x) if callable(self._om) else self._om[x]

    def mor(self, m: Id) -> Id:
        return self._mm(m) if callable(self._mm) else self._mm[m]

    @property
    def object_map(self) -> dict:
        return {x: self.obj(x) for x in self.source.objects}

    @property
    def morphism_map(self) -> dict:
        return {m: self.mor(m) for m in self.source.morphisms}

    def __repr__(self) -> str:
        return f"<FunctorData {self.name or ''} {self.source!r} -> {self.target!r}>"


def identity_functor(c: FiniteCategory) -> FunctorData:
    return FunctorData(c, c, lambda x: x, lambda m: m, name="id")


def inclusion_functor(sub: FiniteCategory, c: FiniteCategory) -> FunctorData:
    """Functor for a subcategory sharing ids with ``c``."""
    return FunctorData(sub, c, lambda x: x, lambda m: m, name="incl")


def compose_functors(g: FunctorData, f: FunctorData) -> FunctorData:
    return FunctorData(f.source, g.target, lambda x: g.obj(f.obj(x)), lambda m: g.mor(f.mor(m)))


def freeze_functor(f: FunctorData) -> FunctorData:
    """Tabulate a callable-backed functor."""
    return FunctorData(f.source, f.target, f.object_map, f.morphism_map, name=f.name)


def validate_functor(f: FunctorData) -> Report:
    rep = Report("functor")
    s, t = f.source, f.target
    for x in s.objects:
        try:
            fx = f.obj(x)
        except KeyError:
            rep.add("object map total", x)
            continue
        if not t.has_object(fx):
            rep.add("object map lands in target", x)
        elif f.mor(s.identity(x)) != t.identity(fx):
            rep.add("preserves identities", x)
    if not rep.ok:
        return rep
    for m in s.morphisms:
        try:
            fm = f.mor(m)
        except KeyError:
            rep.add("morphism map total", m)
            continue
        if not t.has_morphism(fm):
            rep.add("morphism map lands in target", m)
        elif (t.src(fm), t.tgt(fm)) != (f.obj(s.src(m)), f.obj(s.tgt(m))):
            rep.add("preserves endpoints", m)
    if not rep.ok:
        return rep
    for fm in s.morphisms:
        for gm in s.out_of(s.tgt(fm)):
            if f.mor(s.compose(gm, fm)) != t.compose(f.mor(gm), f.mor(fm)):
                rep.add("preserves composition", (gm, fm))
    return rep


def functors_equal(f: FunctorData, g: FunctorData) -> bool:
    return (all(f.obj(x) == g.obj(x) for x in f.source.objects)
            and all(f.mor(m) == g.mor(m) for m in f.source.morphisms))


@dataclass(frozen=True)
class NatTransData:
    source: FunctorData
    target: FunctorData
    components: Mapping

    def at(self, x: Id) -> Id:
        return self.components[x]


def validate_nat_trans(a: NatTransData) -> Report:
    rep = Report("natural transformation")
    F, G = a.source, a.target
    t = F.target
    for x in F.source.objects:
        cx = a.components.get(x)
        if cx is None or not t.has_morphism(cx) or t.src(cx) != F.obj(x) or t.tgt(cx) != G.obj(x):
            rep.add("component typed", x)
    if not rep.ok:
        return rep
    for m in F.source.morphisms:
        x, y = F.source.src(m), F.source.tgt(m)
        if t.compose(G.mor(m), a.components[x]) != t.compose(a.components[y], F.mor(m)):
            rep.add("naturality", m)
    return rep


# -- morphism classes -------------------------------------------------------

@dataclass(frozen=True)
class MorphismClass:
    category: FiniteCategory
    members: frozenset

    def __contains__(self, m: Id) -> bool:
        return m in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members, key=order_key))


def morphism_class(c: FiniteCategory, members: Iterable[Id]) -> MorphismClass:
    return MorphismClass(c, frozenset(members))


def isomorphisms(c: FiniteCategory) -> MorphismClass:
    return morphism_class(c, (m for m in c.morphisms if c.is_iso(m)))


def all_morphisms(c: FiniteCategory) -> MorphismClass:
    return morphism_class(c, c.morphisms)


def identities(c: FiniteCategory) -> MorphismClass:
    return morphism_class(c, (c.identity(x) for x in c.objects))


# -- validation and elementary universal objects ------------------------------

def validate_category(c: FiniteCategory) -> Report:
    """Check identities, typing, totality and associativity of composition."""
    rep = Report("category")
    for x in c.objects:
        try:
            i = c.identity(x)
        except KeyError:
            rep.add("identity exists", x)
            continue
        if not c.has_morphism(i) or c.src(i) != x or c.tgt(i) != x:
            rep.add("identity typed", x)
    if not rep.ok:
        return rep
    mors = c.morphisms
    for f in mors:
        s, t = c.src(f), c.tgt(f)
        if c.compose_or_none(f, c.identity(s)) != f:
            rep.add("right unit", f)
        if c.compose_or_none(c.identity(t), f) != f:
            rep.add("left unit", f)
    for f in mors:
        for g in c.out_of(c.tgt(f)):
            h = c.compose_or_none(g, f)
            if h is None:
                rep.add("composition total", (g, f))
            elif not c.has_morphism(h) or c.src(h) != c.src(f) or c.tgt(h) != c.tgt(g):
                rep.add("composite typed", (g, f))
    if not rep.ok:
        return rep
    if c.has_table:
        for (g, f) in c._table:
            if c.has_morphism(g) and c.has_morphism(f) and c.tgt(f) != c.src(g):
                rep.add("composition defined only on composable pairs", (g, f))
    for f in mors:
        for g in c.out_of(c.tgt(f)):
            gf = c.compose(g, f)
            for h in c.out_of(c.tgt(g)):
                if c.compose(h, gf) != c.compose(c.compose(h, g), f):
                    rep.add("associativity", (h, g, f))
    return rep


def comma_under(c: FiniteCategory, x: Id, objects_filter: Callable[[Id], bool] | None = None
                ) -> tuple[FiniteCategory, FunctorData]:
    """x\\C: objects are morphisms out of x, morphisms (f, g, u) with u o f = g.

    ``objects_filter`` restricts to a full subcategory (used for latching and
    matching categories).
    """
    if not c.has_object(x):
        raise KeyError(f"unknown object {x!r}")
    objs = [f for f in c.out_of(x) if objects_filter is None or objects_filter(f)]
    mors = []
    for f in objs:
        for g in objs:
            for u in c.hom(c.tgt(f), c.tgt(g)):
                if c.compose(u, f) == g:
                    mors.append(((f, g, u), f, g))
    ident = {f: (f, f, c.identity(c.tgt(f))) for f in objs}

    def comp(q, p):
        if p[1] != q[0]:
            raise ValueError("not composable")
        return (p[0], q[1], c.compose(q[2], p[2]))
    cat = FiniteCategory(objs, mors, ident, comp, name=f"{x}\\{c.name}")
    proj = FunctorData(cat, c, lambda f: c.tgt(f), lambda m: m[2], name="proj")
    return cat, proj


def comma_over(c: FiniteCategory, x: Id, objects_filter: Callable[[Id], bool] | None = None
               ) -> tuple[FiniteCategory, FunctorData]:
    """C/x: objects are morphisms into x, morphisms (f, g, u) with g o u = f."""
    if not c.has_object(x):
        raise KeyError(f"unknown object {x!r}")
    objs = [f for f in c.into(x) if objects_filter is None or objects_filter(f)]
    mors = []
    for f in objs:
        for g in objs:
            for u in c.hom(c.src(f), c.src(g)):
                if c.compose(g, u) == f:
                    mors.append(((f, g, u), f, g))
    ident = {f: (f, f, c.identity(c.src(f))) for f in objs}

    def comp(q, p):
        if p[1] != q[0]:
            raise ValueError("not composable")
        return (p[0], q[1], c.compose(q[2], p[2]))
    cat = FiniteCategory(objs, mors, ident, comp, name=f"{c.name}/{x}")
    proj = FunctorData(cat, c, lambda f: c.src(f), lambda m: m[2], name="proj")
    return cat, proj


def _sorted(xs):
    return sorted(xs, key=order_key)


def find_initial(c: FiniteCategory):
    for x in _sorted(c.objects):
        if all(len(c.hom(x, y)) == 1 for y in c.objects):
            return x
    return None


def find_terminal(c: FiniteCategory):
    for x in _sorted(c.objects):
        if all(len(c.hom(y, x)) == 1 for y in c.objects):
            return x
    return None


def is_connected_components(c: FiniteCategory) -> list[list]:
    """Zigzag components, each sorted, listed by least member."""
    g = nx.Graph()
    g.add_nodes_from(range(len(c.objects)))
    index = {x: i for i, x in enumerate(c.objects)}
    for m in c.morphisms:
        g.add_edge(index[c.src(m)], index[c.tgt(m)])
    comps = [_sorted(c.objects[i] for i in comp) for comp in nx.connected_components(g)]
    return sorted(comps, key=lambda comp: order_key(comp[0]))


# -- universal search for (co)limits -------------------------------------------

@dataclass(frozen=True)
class Cone:
    """A cone (or cocone) with apex and one leg per diagram object."""
    apex: Id
    legs: Mapping


def _cones(c: FiniteCategory, d: FunctorData, apex: Id, order: list, constraints: dict):
    """All cones from ``apex`` over diagram ``d``, as leg tuples in ``order``."""
    pos = {j: i for i, j in enumerate(order)}
    choices = [c.hom(apex, d.obj(j)) for j in order]
    legs = [None] * len(order)

    def rec(i):
        if i == len(order):
            yield tuple(legs)
            return
        for m in choices[i]:
            legs[i] = m
            okay = True
            for (other, dm, outgoing) in constraints[order[i]]:
                k = pos[other]
                if k > i:
                    continue
                if outgoing:   # arrow order[i] -> other: d(arrow) o leg_i == leg_other
                    if c.compose(dm, m) != legs[k]:
                        okay = False
                        break
                else:          # arrow other -> order[i]: d(arrow) o leg_other == leg_i
                    if c.compose(dm, legs[k]) != m:
                        okay = False
                        break
            if okay:
                yield from rec(i + 1)
    yield from rec(0)


def _cone_constraints(d: FunctorData, order: list) -> dict:
    shape = d.source
    cons = {j: [] for j in order}
    for m in shape.morphisms:
        if shape.is_identity(m):
            continue
        a, b = shape.src(m), shape.tgt(m)
        dm = d.mor(m)
        cons[a].append((b, dm, True))
        cons[b].append((a, dm, False))
    return cons


def find_limit(c: FiniteCategory, d: FunctorData) -> Cone | None:
    """Limit of ``d: J -> c`` by exhaustive universal-object search.

    Candidates are filtered by the counting condition |c(Y, L)| = |Cones(Y)|
    and then checked for injectivity of u -> (leg o u); the least apex and
    the lexicographically least universal cone are returned.
    """
    order = list(d.source.objects)
    cons = _cone_constraints(d, order)
    ncones = {}
    for y in c.objects:
        ncones[y] = sum(1 for _ in _cones(c, d, y, order, cons))
    for apex in _sorted(c.objects):
        if any(len(c.hom(y, apex)) != ncones[y] for y in c.objects):
            continue
        for legs in _cones(c, d, apex, order, cons):
            if _universal_cone(c, legs, apex):
                return Cone(apex, dict(zip(order, legs)))
    return None


def _universal_cone(c: FiniteCategory, legs: tuple, apex: Id) -> bool:
    for y in c.objects:
        seen = set()
        for u in c.hom(y, apex):
            key = tuple(c.compose(l, u) for l in legs)
            if key in seen:
                return False
            seen.add(key)
    return True


def find_colimit(c: FiniteCategory, d: FunctorData) -> Cone | None:
    """Colimit by universal search, computed as a limit in the opposite category."""
    cop = opposite(c)
    dop = FunctorData(opposite(d.source), cop, d.obj, d.mor)
    return find_limit(cop, dop)


def induced_map_to_limit(c: FiniteCategory, limit: Cone, legs: Mapping, source: Id):
    """The unique u: source -> apex with limit.legs[j] o u == legs[j]."""
    found = [u for u in c.hom(source, limit.apex)
             if all(c.compose(limit.legs[j], u) == legs[j] for j in limit.legs)]
    if len(found) != 1:
        raise ValueError(f"expected a unique induced map, found {len(found)}")
    return found[0]


def induced_map_from_colimit(c: FiniteCategory, colimit: Cone, legs: Mapping, target: Id):
    """The unique u: apex -> target with u o colimit.legs[j] == legs[j]."""
    found = [u for u in c.hom(colimit.apex, target)
             if all(c.compose(u, colimit.legs[j]) == legs[j] for j in colimit.legs)]
    if len(found) != 1:
        raise ValueError(f"expected a unique induced map, found {len(found)}")
    return found[0]


def diagram_from_data(shape: FiniteCategory, target: FiniteCategory, objects: Mapping,
                      morphisms: Mapping) -> FunctorData:
    return FunctorData(shape, target, dict(objects), dict(morphisms))


def product_shape(n: int) -> FiniteCategory:
    return discrete_category(range(n), name=f"discrete{n}")


def parallel_pair_shape() -> FiniteCategory:
    objs = [0, 1]
    mors = [("id0", 0, 0), ("id1", 1, 1), ("s", 0, 1), ("t", 0, 1)]
    return from_generators(objs, mors, {0: "id0", 1: "id1"}, {}, name="parallel")


def hom_sizes(c: FiniteCategory) -> dict:
    return {(a, b): len(c.hom(a, b)) for a, b in itertools.product(c.objects, repeat=2)}


class NoLimit(ValueError):
    """The requested (co)limit does not exist in the category."""


class SearchEngine:
    """(Co)limits in a general finite category by universal-object search.

    Results are memoized on the diagram's object and morphism data, which is
    safe because categories are immutable.
    """

    def __init__(self, category: FiniteCategory):
        self.category = category
        self._lim: dict = {}
        self._colim: dict = {}

    @staticmethod
    def _key(d: FunctorData):
        s = d.source
        return (s, tuple(d.obj(x) for x in s.objects), tuple(d.mor(m) for m in s.morphisms))

    def limit(self, d: FunctorData) -> Cone:
        key = self._key(d)
        if key not in self._lim:
            self._lim[key] = find_limit(self.category, d)
        out = self._lim[key]
        if out is None:
            raise NoLimit(f"no limit in {self.category.name or 'fibre'}")
        return out

    def colimit(self, d: FunctorData) -> Cone:
        key = self._key(d)
        if key not in self._colim:
            self._colim[key] = find_colimit(self.category, d)
        out = self._colim[key]
        if out is None:
            raise NoLimit(f"no colimit in {self.category.name or 'fibre'}")
        return out

    def induced_from_colimit(self, cocone: Cone, legs: Mapping, target):
        return induced_map_from_colimit(self.category, cocone, legs, target)

    def induced_to_limit(self, cone: Cone, legs: Mapping, source):
        return induced_map_to_limit(self.category, cone, legs, source)
