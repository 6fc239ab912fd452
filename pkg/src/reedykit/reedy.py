"""Factorization systems, Reedy structures, Noether degrees and filtrations."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import networkx as nx

from .fincat import (FiniteCategory, FunctorData, MorphismClass, comma_over, comma_under,
                     morphism_class, subcategory)
from .report import Report, order_key


@dataclass(frozen=True, eq=False)
class FactorizationSystem:
    category: FiniteCategory
    left: MorphismClass
    right: MorphismClass


@dataclass(frozen=True, eq=False)
class ReedyStructure:
    category: FiniteCategory
    lowering: MorphismClass
    raising: MorphismClass
    degree: Mapping

    def factorization_system(self) -> FactorizationSystem:
        return FactorizationSystem(self.category, self.lowering, self.raising)

    def deg(self, x) -> int:
        return self.degree[x]


@dataclass(frozen=True)
class NoetherDegree:
    category: FiniteCategory
    bound: Mapping


def factorizations(c: FiniteCategory, left, right, m):
    """All (z, l, r) with r o l == m, l in left, r in right, in id order."""
    s, t = c.src(m), c.tgt(m)
    out = []
    for z in sorted(c.objects, key=order_key):
        for l in c.hom(s, z):
            if l not in left:
                continue
            for r in c.hom(z, t):
                if r in right and c.compose(r, l) == m:
                    out.append((z, l, r))
    return out


def _connecting_isos(c, a, b):
    """Isomorphisms u with u o l_a == l_b and r_b o u == r_a."""
    za, la, ra = a
    zb, lb, rb = b
    out = []
    for u in c.hom(za, zb):
        if c.compose(u, la) == lb and c.compose(rb, u) == ra and c.is_iso(u):
            out.append(u)
    return out


def validate_factorization_system(fs: FactorizationSystem, strict: bool = False) -> Report:
    """Existence and essential uniqueness of left-then-right factorizations.

    ``strict`` demands uniqueness on the nose (the Reedy case).  The chosen
    factorization of every morphism is stored in ``report.data["chosen"]``.
    """
    c = fs.category
    rep = Report("factorization system")
    left, right = fs.left.members, fs.right.members
    isos = [m for m in c.morphisms if c.is_iso(m)]
    for m in isos:
        if m not in left:
            rep.add("left contains isomorphisms", m)
        if m not in right:
            rep.add("right contains isomorphisms", m)
    for name, cls in (("left", left), ("right", right)):
        for f in sorted(cls, key=order_key):
            for g in c.out_of(c.tgt(f)):
                if g in cls and c.compose(g, f) not in cls:
                    rep.add(f"{name} closed under composition", (g, f))
    chosen = {}
    for m in c.morphisms:
        facs = factorizations(c, left, right, m)
        if not facs:
            rep.add("factorization exists", m)
            continue
        chosen[m] = facs[0]
        if strict and len(facs) > 1:
            rep.add("factorization unique", (m, facs[0], facs[1]))
            continue
        for other in facs[1:]:
            n = len(_connecting_isos(c, facs[0], other))
            if n != 1:
                rep.add("factorization unique up to unique isomorphism", (m, facs[0], other),
                        f"{n} connecting isomorphisms")
                break
    rep.data["chosen"] = chosen
    return rep


def validate_reedy(rs: ReedyStructure) -> Report:
    c = rs.category
    rep = Report("reedy structure")
    for x in c.objects:
        d = rs.degree.get(x)
        if not isinstance(d, int) or d < 0:
            rep.add("degree is a natural number", x)
    if not rep.ok:
        return rep
    for m in c.morphisms:
        if not c.is_identity(m) and c.is_iso(m):
            rep.add("isomorphisms are identities", m)
    for m in sorted(rs.lowering.members, key=order_key):
        if not c.is_identity(m) and not rs.degree[c.tgt(m)] < rs.degree[c.src(m)]:
            rep.add("lowering maps lower the degree", m)
    for m in sorted(rs.raising.members, key=order_key):
        if not c.is_identity(m) and not rs.degree[c.tgt(m)] > rs.degree[c.src(m)]:
            rep.add("raising maps raise the degree", m)
    for x in c.objects:
        i = c.identity(x)
        if i not in rs.lowering or i not in rs.raising:
            rep.add("identities in both classes", x)
    fsrep = validate_factorization_system(rs.factorization_system(), strict=True)
    rep.extend(fsrep)
    rep.data["chosen"] = fsrep.data["chosen"]
    return rep


def reedy_factor(rs: ReedyStructure, m):
    """(z, f_minus, f_plus) with m = f_plus o f_minus."""
    facs = factorizations(rs.category, rs.lowering.members, rs.raising.members, m)
    if len(facs) != 1:
        raise ValueError(f"morphism {m!r} has {len(facs)} Reedy factorizations")
    return facs[0]


def synthesize_degree(c: FiniteCategory, lowering: MorphismClass, raising: MorphismClass):
    """Pointwise-minimal degree by longest paths in the constraint digraph, or None on a cycle."""
    g = nx.DiGraph()
    g.add_nodes_from(c.objects)
    for m in raising.members:
        if not c.is_identity(m):
            g.add_edge(c.src(m), c.tgt(m))
    for m in lowering.members:
        if not c.is_identity(m):
            g.add_edge(c.tgt(m), c.src(m))
    if any(u == v for u, v in g.edges) or not nx.is_directed_acyclic_graph(g):
        return None
    deg = {}
    for x in nx.topological_sort(g):
        deg[x] = max((deg[p] + 1 for p in g.predecessors(x)), default=0)
    return {x: deg[x] for x in c.objects}


def noether_bound(c: FiniteCategory):
    """|x| = longest chain of composable non-isomorphisms out of x, or None."""
    g = nx.DiGraph()
    g.add_nodes_from(c.objects)
    for m in c.morphisms:
        if not c.is_iso(m):
            if c.src(m) == c.tgt(m):
                return None
            g.add_edge(c.src(m), c.tgt(m))
    if not nx.is_directed_acyclic_graph(g):
        return None
    bound = {}
    for x in reversed(list(nx.topological_sort(g))):
        bound[x] = max((bound[y] + 1 for y in g.successors(x)), default=0)
    return NoetherDegree(c, {x: bound[x] for x in c.objects})


def check_noether_grading(nd: NoetherDegree) -> Report:
    c, b = nd.category, nd.bound
    rep = Report("noether grading")
    for x in c.objects:
        for y in c.objects:
            hs = c.hom(x, y)
            if b[x] < b[y] and hs:
                rep.add("lower bound has no maps up", (x, y))
            if b[x] == b[y] and any(not c.is_iso(m) for m in hs):
                rep.add("equal bound maps are isomorphisms", (x, y))
    return rep


# -- latching and matching categories -----------------------------------------

@dataclass(frozen=True)
class IndexCategory:
    """Lat(x) or Mat(x) with its projection to the base category."""
    category: FiniteCategory
    projection: FunctorData


def wide_subcategory(c: FiniteCategory, cls: MorphismClass, name: str = "") -> FiniteCategory:
    return subcategory(c, c.objects, cls.members, name=name)


def latching_category(rs: ReedyStructure, x) -> IndexCategory:
    """Non-identity raising maps y -> x, as a full subcategory of R+/x."""
    c = rs.category
    if not c.has_object(x):
        raise KeyError(f"unknown object {x!r}")
    plus = wide_subcategory(c, rs.raising, "R+")
    cat, _ = comma_over(plus, x, lambda f: f != c.identity(x))
    proj = FunctorData(cat, c, lambda f: c.src(f), lambda m: m[2], name="Lat")
    return IndexCategory(cat, proj)


def matching_category(rs: ReedyStructure, x) -> IndexCategory:
    """Non-identity lowering maps x -> t, as a full subcategory of x\\R-."""
    c = rs.category
    if not c.has_object(x):
        raise KeyError(f"unknown object {x!r}")
    minus = wide_subcategory(c, rs.lowering, "R-")
    cat, _ = comma_under(minus, x, lambda f: f != c.identity(x))
    proj = FunctorData(cat, c, lambda f: c.tgt(f), lambda m: m[2], name="Mat")
    return IndexCategory(cat, proj)


# -- good filtrations ---------------------------------------------------------

@dataclass(frozen=True)
class GoodFiltration:
    order: tuple
    prefixes: tuple = field(default=())  # ReedyStructure on each prefix


def restrict_reedy(rs: ReedyStructure, objects) -> ReedyStructure:
    sub = subcategory(rs.category, objects)
    mors = set(sub.morphisms)
    return ReedyStructure(sub, morphism_class(sub, rs.lowering.members & mors),
                          morphism_class(sub, rs.raising.members & mors),
                          {x: rs.degree[x] for x in sub.objects})


def filtration_order(rs: ReedyStructure) -> tuple:
    return tuple(sorted(rs.category.objects, key=lambda x: (rs.degree[x], order_key(x))))


def good_filtration(rs: ReedyStructure) -> GoodFiltration:
    """Objects sorted by (degree, id), with the Reedy structure on every prefix."""
    order = filtration_order(rs)
    prefixes = tuple(restrict_reedy(rs, order[:k]) for k in range(1, len(order) + 1))
    return GoodFiltration(order, prefixes)


def check_filtration(rs: ReedyStructure, gf: GoodFiltration) -> Report:
    rep = Report("good filtration")
    prev: set = set()
    for k, pre in enumerate(gf.prefixes):
        objs = set(pre.category.objects)
        added = objs - prev
        if len(added) != 1 or not prev <= objs:
            rep.add("adds exactly one object", k)
        r = validate_reedy(pre)
        if not r.ok:
            rep.add("prefix is Reedy", k, "; ".join(r.laws()[:3]))
        prev = objs
    if prev != set(rs.category.objects):
        rep.add("union is everything")
    return rep


# -- immersions -----------------------------------------------------------------

def _fully_faithful_injective(f: FunctorData, rep: Report) -> None:
    d, c = f.source, f.target
    images = [f.obj(x) for x in d.objects]
    if len(set(images)) != len(images):
        rep.add("injective on objects")
    for a in d.objects:
        for b in d.objects:
            imgs = [f.mor(m) for m in d.hom(a, b)]
            if len(set(imgs)) != len(imgs):
                rep.add("faithful", (a, b))
            if set(imgs) != set(c.hom(f.obj(a), f.obj(b))):
                rep.add("full", (a, b))


def check_closed_immersion(f: FunctorData) -> Report:
    """Full, faithful, object-injective, with unique lifts of maps out of the image."""
    rep = Report("closed immersion")
    _fully_faithful_injective(f, rep)
    d, c = f.source, f.target
    image = {f.obj(x): x for x in d.objects}
    for x in d.objects:
        for m in c.out_of(f.obj(x)):
            lifts = [u for y in d.objects for u in d.hom(x, y) if f.mor(u) == m]
            if len(lifts) != 1:
                rep.add("unique lift of maps out of the image", m, f"{len(lifts)} lifts")
    cosieve = all(c.tgt(m) in image for x in d.objects for m in c.out_of(f.obj(x)))
    rep.data["image_is_cosieve"] = cosieve
    rep.data["lift_condition"] = not any(v.law.startswith("unique lift") for v in rep.violations)
    return rep


def check_open_immersion(f: FunctorData) -> Report:
    """Full, faithful, object-injective, with unique lifts of maps into the image."""
    rep = Report("open immersion")
    _fully_faithful_injective(f, rep)
    d, c = f.source, f.target
    image = {f.obj(x): x for x in d.objects}
    for x in d.objects:
        for m in c.into(f.obj(x)):
            lifts = [u for y in d.objects for u in d.hom(y, x) if f.mor(u) == m]
            if len(lifts) != 1:
                rep.add("unique lift of maps into the image", m, f"{len(lifts)} lifts")
    sieve = all(c.src(m) in image for x in d.objects for m in c.into(f.obj(x)))
    rep.data["image_is_sieve"] = sieve
    rep.data["lift_condition"] = not any(v.law.startswith("unique lift") for v in rep.violations)
    return rep


# -- standard structures ---------------------------------------------------------

def classes_from_predicate(c: FiniteCategory, pred) -> MorphismClass:
    return morphism_class(c, (m for m in c.morphisms if pred(m)))


def direct_structure(c: FiniteCategory) -> ReedyStructure:
    """All maps raising; degree synthesized.  For posets such as [n]."""
    low = classes_from_predicate(c, c.is_identity)
    high = classes_from_predicate(c, lambda m: True)
    deg = synthesize_degree(c, low, high)
    if deg is None:
        raise ValueError("category is not direct")
    return ReedyStructure(c, low, high, deg)


def inverse_structure(c: FiniteCategory) -> ReedyStructure:
    """All maps lowering; degree synthesized."""
    low = classes_from_predicate(c, lambda m: True)
    high = classes_from_predicate(c, c.is_identity)
    deg = synthesize_degree(c, low, high)
    if deg is None:
        raise ValueError("category is not inverse")
    return ReedyStructure(c, low, high, deg)
