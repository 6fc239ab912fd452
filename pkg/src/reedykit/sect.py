"""Sections of a semifibration over a Reedy category.

Sections store total-category ids; all fibre-level work (latching and
matching objects, relative maps, factorizations, lifts) happens in the
local fibre categories exposed by :class:`~reedykit.fib.Fibre`.  Every
induction runs along the good filtration of the base.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Mapping

import networkx as nx

from .fib import FiberedCategory, LiftError, mate_component, triple_factor
from .fincat import (Cone, FiniteCategory, FunctorData, NoLimit, cospan_category,
                     discrete_category, find_initial, find_terminal, is_connected_components,
                     span_category)
from .reedy import (ReedyStructure, filtration_order, latching_category, matching_category,
                    reedy_factor)
from .report import Budget, BudgetExceeded, Report, as_budget, order_key

_SPAN = span_category()        # f: b -> a, g: b -> c  (pushout shape)
_COSPAN = cospan_category()    # u: a -> c, v: b -> c  (pullback shape)


class SectionError(ValueError):
    """A section-level construction could not be carried out."""


# -- cached base data -----------------------------------------------------------------

@lru_cache(maxsize=None)
def _lat(rs: ReedyStructure, x):
    return latching_category(rs, x)


@lru_cache(maxsize=None)
def _mat(rs: ReedyStructure, x):
    return matching_category(rs, x)


@lru_cache(maxsize=None)
def _order(rs: ReedyStructure) -> tuple:
    return filtration_order(rs)


@lru_cache(maxsize=None)
def _factor(rs: ReedyStructure, m):
    return reedy_factor(rs, m)


# -- sections and maps ----------------------------------------------------------------

class Section:
    """A (possibly partial) section: values and arrows on a set of base objects."""

    __slots__ = ("fibered", "base_reedy", "values", "arrows", "_cache")

    def __init__(self, fibered: FiberedCategory, base_reedy: ReedyStructure,
                 values: Mapping, arrows: Mapping):
        self.fibered = fibered
        self.base_reedy = base_reedy
        self.values = dict(values)
        self.arrows = dict(arrows)
        self._cache: dict = {}

    @property
    def domain(self) -> tuple:
        return tuple(x for x in _order(self.base_reedy) if x in self.values)

    def local(self, x):
        return self.fibered.fibre(x).to_local_obj(self.values[x])

    def arrow(self, m):
        a = self.arrows.get(m)
        if a is None:
            base = self.base_reedy.category
            if base.is_identity(m):
                return self.fibered.total.identity(self.values[base.src(m)])
            raise KeyError(f"section has no arrow over {m!r}")
        return a

    def key(self) -> tuple:
        return (tuple(sorted(self.values.items(), key=lambda kv: order_key(kv[0]))),
                tuple(sorted(self.arrows.items(), key=lambda kv: order_key(kv[0]))))

    def restrict(self, objects) -> "Section":
        objs = set(objects)
        base = self.base_reedy.category
        arrows = {m: a for m, a in self.arrows.items() if base.src(m) in objs and base.tgt(m) in objs}
        return Section(self.fibered, self.base_reedy, {x: self.values[x] for x in objs}, arrows)

    def to_dict(self) -> dict:
        return {"values": {str(k): v for k, v in self.values.items()},
                "arrows": {str(k): v for k, v in self.arrows.items()}}

    def __eq__(self, other) -> bool:
        return isinstance(other, Section) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Section({self.values})"


def section_from_local(fc: FiberedCategory, rs: ReedyStructure, values: Mapping,
                       arrows: Mapping | None = None, local_arrows: Mapping | None = None) -> Section:
    """Build a section from local fibre objects.

    ``local_arrows`` gives, per base morphism f, the fibre map f_!S(x) -> S(y)
    (for raising f) or S(x) -> f^*S(y) (for lowering f); composites are
    filled in from the Reedy factorization.
    """
    base = rs.category
    vals = {x: fc.fibre(x).to_total_obj(v) for x, v in values.items()}
    arr = dict(arrows or {})
    for m, phi in (local_arrows or {}).items():
        x, y = base.src(m), base.tgt(m)
        if m in rs.raising:
            arr[m] = fc.from_opcart(m, values[x], phi)
        elif m in rs.lowering:
            arr[m] = fc.from_cart(m, values[y], phi)
        else:
            raise SectionError(f"{m!r} is neither raising nor lowering")
    s = Section(fc, rs, vals, arr)
    _complete_arrows(s)
    return s


def _complete_arrows(s: Section) -> None:
    base = s.base_reedy.category
    total = s.fibered.total
    dom = set(s.values)
    for x in dom:
        s.arrows.setdefault(base.identity(x), total.identity(s.values[x]))
    for x in dom:
        for y in dom:
            for m in base.hom(x, y):
                if m in s.arrows:
                    continue
                _, lo, hi = _factor(s.base_reedy, m)
                if lo in s.arrows and hi in s.arrows:
                    s.arrows[m] = total.compose(s.arrows[hi], s.arrows[lo])


def validate_section(s: Section) -> Report:
    rep = Report("section")
    fc, base = s.fibered, s.base_reedy.category
    total = fc.total
    dom = set(s.values)
    for x in dom:
        if fc.p_obj(s.values[x]) != x:
            rep.add("p o S = id on objects", x)
    for x in dom:
        for y in dom:
            for m in base.hom(x, y):
                if m not in s.arrows:
                    rep.add("arrow defined", m)
                    continue
                a = s.arrows[m]
                if fc.p_mor(a) != m or total.src(a) != s.values[x] or total.tgt(a) != s.values[y]:
                    rep.add("p o S = id on morphisms", m)
    if not rep.ok:
        return rep
    for x in dom:
        if s.arrows[base.identity(x)] != total.identity(s.values[x]):
            rep.add("identities", x)
    for f in s.arrows:
        y = base.tgt(f)
        for g in base.out_of(y):
            if base.tgt(g) in dom and total.compose(s.arrows[g], s.arrows[f]) != s.arrows[base.compose(g, f)]:
                rep.add("functoriality", (g, f))
    return rep


class SectionMap:
    """Components x -> fibre morphism S(x) -> T(x), possibly on a subset of objects."""

    __slots__ = ("source", "target", "components", "_cache")

    def __init__(self, source: Section, target: Section, components: Mapping):
        self.source = source
        self.target = target
        self.components = dict(components)
        self._cache: dict = {}

    def total_component(self, x):
        return self.source.fibered.fibre(x).to_total_mor(self.components[x])

    def key(self) -> tuple:
        return (self.source.key(), self.target.key(),
                tuple(sorted(self.components.items(), key=lambda kv: order_key(kv[0]))))

    def __eq__(self, other) -> bool:
        return isinstance(other, SectionMap) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"SectionMap({self.components})"


def identity_map(s: Section) -> SectionMap:
    fc = s.fibered
    return SectionMap(s, s, {x: fc.fibre(x).category.identity(s.local(x)) for x in s.values})


def compose_maps(g: SectionMap, f: SectionMap) -> SectionMap:
    fc = f.source.fibered
    return SectionMap(f.source, g.target,
                      {x: fc.fibre(x).category.compose(g.components[x], f.components[x])
                       for x in f.components})


def validate_section_map(f: SectionMap) -> Report:
    rep = Report("section map")
    S, T = f.source, f.target
    fc, base = S.fibered, S.base_reedy.category
    total = fc.total
    for x, c in f.components.items():
        fib = fc.fibre(x).category
        if fib.src(c) != S.local(x) or fib.tgt(c) != T.local(x):
            rep.add("component typing", x)
    if not rep.ok:
        return rep
    for x in f.components:
        for y in f.components:
            for m in base.hom(x, y):
                if total.compose(T.arrow(m), f.total_component(x)) != \
                        total.compose(f.total_component(y), S.arrow(m)):
                    rep.add("naturality", m)
    return rep


# -- latching and matching objects ------------------------------------------------------

@dataclass
class LatchData:
    obj: Any            # fibre object
    cone: Cone          # universal cocone (legs r_!S(y) -> obj)
    to_value: Any = None  # latching map obj -> S(x), when S is defined at x


@dataclass
class MatchData:
    obj: Any
    cone: Cone          # universal cone (legs obj -> l^*S(t))
    from_value: Any = None


def latching_diagram(s: Section, x) -> FunctorData:
    """L_x o S on Lat(x): r |-> r_!S(y), in the fibre over x."""
    fc, rs = s.fibered, s.base_reedy
    lat = _lat(rs, x).category
    total = fc.total
    fx = fc.fibre(x).category
    objs = {r: fc.push(r, s.local(rs.category.src(r))) for r in lat.objects}
    mors = {}
    for m in lat.morphisms:
        r1, r2, u = m
        if rs.category.is_identity(u):
            mors[m] = fx.identity(objs[r1])
            continue
        y1, y2 = rs.category.src(r1), rs.category.src(r2)
        tm = total.compose(fc.opcart_local(r2, s.local(y2)), s.arrow(u))
        mors[m] = fc.opcart_factor_from(r1, s.local(y1), tm)
    return FunctorData(lat, fx, objs, mors, name=f"L_{x}S")


def matching_diagram(s: Section, x) -> FunctorData:
    """R_x o S on Mat(x): l |-> l^*S(t), in the fibre over x."""
    fc, rs = s.fibered, s.base_reedy
    mat = _mat(rs, x).category
    total = fc.total
    fx = fc.fibre(x).category
    objs = {l: fc.pull(l, s.local(rs.category.tgt(l))) for l in mat.objects}
    mors = {}
    for m in mat.morphisms:
        l1, l2, u = m
        if rs.category.is_identity(u):
            mors[m] = fx.identity(objs[l1])
            continue
        t1, t2 = rs.category.tgt(l1), rs.category.tgt(l2)
        tm = total.compose(s.arrow(u), fc.cart_local(l1, s.local(t1)))
        mors[m] = fc.cart_factor_from(l2, s.local(t2), tm)
    return FunctorData(mat, fx, objs, mors, name=f"R_{x}S")


def latching_object(s: Section, x) -> LatchData:
    key = ("lat", x)
    if key in s._cache:
        return s._cache[key]
    fc = s.fibered
    fib = fc.fibre(x)
    try:
        cone = fib.engine.colimit(latching_diagram(s, x))
    except NoLimit as exc:
        raise SectionError(f"latching object at {x!r} does not exist: {exc}") from exc
    data = LatchData(cone.apex, cone)
    if x in s.values:
        legs = {r: fc.opcart_factor(s.arrow(r)) for r in cone.legs}
        data.to_value = fib.engine.induced_from_colimit(cone, legs, s.local(x))
    s._cache[key] = data
    return data


def matching_object(s: Section, x) -> MatchData:
    key = ("mat", x)
    if key in s._cache:
        return s._cache[key]
    fc = s.fibered
    fib = fc.fibre(x)
    try:
        cone = fib.engine.limit(matching_diagram(s, x))
    except NoLimit as exc:
        raise SectionError(f"matching object at {x!r} does not exist: {exc}") from exc
    data = MatchData(cone.apex, cone)
    if x in s.values:
        legs = {l: fc.cart_factor(s.arrow(l)) for l in cone.legs}
        data.from_value = fib.engine.induced_to_limit(cone, legs, s.local(x))
    s._cache[key] = data
    return data


def latching_map_of(f: SectionMap, x):
    """Lat_x(f): Lat_x S -> Lat_x T."""
    key = ("latf", x)
    if key in f._cache:
        return f._cache[key]
    fc = f.source.fibered
    fib = fc.fibre(x)
    a, b = latching_object(f.source, x), latching_object(f.target, x)
    base = f.source.base_reedy.category
    legs = {r: fib.category.compose(b.cone.legs[r], fc.push_mor(r, f.components[base.src(r)]))
            for r in a.cone.legs}
    out = fib.engine.induced_from_colimit(a.cone, legs, b.obj)
    f._cache[key] = out
    return out


def matching_map_of(f: SectionMap, x):
    """Mat_x(f): Mat_x S -> Mat_x T."""
    key = ("matf", x)
    if key in f._cache:
        return f._cache[key]
    fc = f.source.fibered
    fib = fc.fibre(x)
    a, b = matching_object(f.source, x), matching_object(f.target, x)
    base = f.source.base_reedy.category
    legs = {l: fib.category.compose(fc.pull_mor(l, f.components[base.tgt(l)]), a.cone.legs[l])
            for l in b.cone.legs}
    out = fib.engine.induced_to_limit(b.cone, legs, a.obj)
    f._cache[key] = out
    return out


def _pushout(fib, span_maps: tuple):
    """Pushout of (left <- apex -> right) given as (m_left, m_right) from a common source."""
    ml, mr = span_maps
    c = fib.category
    d = FunctorData(_SPAN, c, {"b": c.src(ml), "a": c.tgt(ml), "c": c.tgt(mr)},
                    {"id_a": c.identity(c.tgt(ml)), "id_b": c.identity(c.src(ml)),
                     "id_c": c.identity(c.tgt(mr)), "f": ml, "g": mr})
    return fib.engine.colimit(d)


def _pullback(fib, cospan_maps: tuple):
    """Pullback of (left -> apex <- right) given as (m_left, m_right)."""
    ml, mr = cospan_maps
    c = fib.category
    d = FunctorData(_COSPAN, c, {"a": c.src(ml), "b": c.src(mr), "c": c.tgt(ml)},
                    {"id_a": c.identity(c.src(ml)), "id_b": c.identity(c.src(mr)),
                     "id_c": c.identity(c.tgt(ml)), "u": ml, "v": mr})
    return fib.engine.limit(d)


@dataclass
class RelativeLatching:
    pushout: Cone       # legs: "a" from Lat_x T, "c" from S(x), "b" from Lat_x S
    map: Any            # pushout.apex -> T(x)


@dataclass
class RelativeMatching:
    pullback: Cone      # legs: "a" to Mat_x S, "b" to T(x), "c" to Mat_x T
    map: Any            # S(x) -> pullback.apex


def relative_latching(f: SectionMap, x) -> RelativeLatching:
    """Lat_x T +_{Lat_x S} S(x) -> T(x)."""
    fc = f.source.fibered
    fib = fc.fibre(x)
    c = fib.category
    la, lb = latching_object(f.source, x), latching_object(f.target, x)
    try:
        po = _pushout(fib, (latching_map_of(f, x), la.to_value))
    except NoLimit as exc:
        raise SectionError(f"relative latching pushout at {x!r} does not exist: {exc}") from exc
    fx = f.components[x]
    legs = {"a": lb.to_value, "c": fx, "b": c.compose(fx, la.to_value)}
    return RelativeLatching(po, fib.engine.induced_from_colimit(po, legs, f.target.local(x)))


def relative_matching(f: SectionMap, x) -> RelativeMatching:
    """S(x) -> Mat_x S x_{Mat_x T} T(x)."""
    fc = f.source.fibered
    fib = fc.fibre(x)
    c = fib.category
    ma, mb = matching_object(f.source, x), matching_object(f.target, x)
    try:
        pb = _pullback(fib, (matching_map_of(f, x), mb.from_value))
    except NoLimit as exc:
        raise SectionError(f"relative matching pullback at {x!r} does not exist: {exc}") from exc
    fx = f.components[x]
    legs = {"a": ma.from_value, "b": fx, "c": c.compose(mb.from_value, fx)}
    return RelativeMatching(pb, fib.engine.induced_to_limit(pb, legs, f.source.local(x)))


# -- the canonical map and extensions ------------------------------------------------------

def canonical_component(s: Section, r, l):
    """g_!S(x) -> g_!f^*S(y) -> k^*h_!S(y) -> k^*S(t) for g = r raising, k = l lowering."""
    fc, rs = s.fibered, s.base_reedy
    base = rs.category
    _, f, h = _factor(rs, base.compose(l, r))
    y = base.tgt(f)
    z = base.tgt(r)
    fz = fc.fibre(z).category
    first = fc.push_mor(r, fc.cart_factor(s.arrow(f)))
    middle = mate_component(fc, f, r, h, l, s.local(y))
    last = fc.pull_mor(l, fc.opcart_factor(s.arrow(h)))
    return fz.compose(last, fz.compose(middle, first))


def canonical_lat_to_mat(s: Section, z):
    """The canonical fibre map Lat_z S -> Mat_z S for S defined below z."""
    fc = s.fibered
    fib = fc.fibre(z)
    lat, mat = latching_object(s, z), matching_object(s, z)
    per_r = {}
    for r in lat.cone.legs:
        legs = {l: canonical_component(s, r, l) for l in mat.cone.legs}
        per_r[r] = fib.engine.induced_to_limit(mat.cone, legs, fib.category.src(lat.cone.legs[r]))
    return fib.engine.induced_from_colimit(lat.cone, per_r, mat.obj)


def extend_section(s: Section, choices: Mapping, check: bool = True) -> Section:
    """Extend by choices x -> (X, a: Lat_x S -> X, b: X -> Mat_x S) with b o a canonical."""
    fc, rs = s.fibered, s.base_reedy
    base, total = rs.category, fc.total
    new_vals = dict(s.values)
    pieces = {}
    for x, (X, a, b) in sorted(choices.items(), key=lambda kv: order_key(kv[0])):
        if x in s.values:
            raise SectionError(f"{x!r} already has a value")
        fib = fc.fibre(x)
        lat, mat = latching_object(s, x), matching_object(s, x)
        if fib.category.compose(b, a) != canonical_lat_to_mat(s, x):
            raise SectionError(f"choice at {x!r} does not factor the canonical map")
        new_vals[x] = fib.to_total_obj(X)
        pieces[x] = (X, a, b, lat, mat)
    out = Section(fc, rs, new_vals, s.arrows)
    for x, (X, a, b, lat, mat) in pieces.items():
        fx = fc.fibre(x).category
        out.arrows[base.identity(x)] = total.identity(new_vals[x])
        for r in lat.cone.legs:
            out.arrows[r] = fc.from_opcart(r, s.local(base.src(r)), fx.compose(a, lat.cone.legs[r]))
        for l in mat.cone.legs:
            out.arrows[l] = fc.from_cart(l, s.local(base.tgt(l)), fx.compose(mat.cone.legs[l], b))
    dom = set(new_vals)
    for x in dom:
        for y in dom:
            for m in base.hom(x, y):
                if m in out.arrows:
                    continue
                _, lo, hi = _factor(rs, m)
                out.arrows[m] = total.compose(out.arrows[hi], out.arrows[lo])
    if check:
        rep = validate_section(out)
        if not rep.ok:
            raise SectionError(f"extension is not a section: {rep.laws()[:3]}")
    return out


def empty_section(fc: FiberedCategory, rs: ReedyStructure) -> Section:
    return Section(fc, rs, {}, {})


# -- classification ----------------------------------------------------------------------

FLAGS = ("reedy_cof", "reedy_fib", "weq", "trivial_cof", "trivial_fib")


@dataclass
class ObjectClasses:
    latching: Any
    matching: Any
    rel_latching: Any
    rel_matching: Any
    flags: dict


@dataclass
class ReedyReport:
    per_object: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    model_claims: str = "uncertified"

    def to_dict(self) -> dict:
        from .report import plain
        return {"flags": dict(self.flags), "witnesses": plain(self.witnesses),
                "model_claims": self.model_claims,
                "per_object": {str(x): {"flags": dict(o.flags),
                                        "latching": plain(o.latching), "matching": plain(o.matching),
                                        "rel_latching": plain(o.rel_latching),
                                        "rel_matching": plain(o.rel_matching)}
                               for x, o in sorted(self.per_object.items(), key=lambda kv: order_key(kv[0]))}}


def classify_section_map(f: SectionMap, fiber_models: Mapping, admissible: bool | None = None
                         ) -> ReedyReport:
    """Reedy classes of a map of sections from its relative latching/matching maps."""
    rs = f.source.base_reedy
    out = ReedyReport()
    agg = {k: True for k in FLAGS}
    for x in _order(rs):
        mc = fiber_models[x]
        rl = relative_latching(f, x)
        rm = relative_matching(f, x)
        comp = f.components[x]
        w = comp in mc.weq
        flags = {
            "cof": rl.map in mc.cof,
            "fib": rm.map in mc.fib,
            "weq": w,
            "trivial_cof": rl.map in mc.cof and rl.map in mc.weq,
            "trivial_fib": rm.map in mc.fib and rm.map in mc.weq,
        }
        out.per_object[x] = ObjectClasses(latching_object(f.target, x).obj,
                                          matching_object(f.source, x).obj, rl.map, rm.map, flags)
        for agg_name, key in (("reedy_cof", "cof"), ("reedy_fib", "fib"), ("weq", "weq"),
                              ("trivial_cof", "trivial_cof"), ("trivial_fib", "trivial_fib")):
            if not flags[key] and agg[agg_name]:
                agg[agg_name] = False
                out.witnesses[agg_name] = x
    out.flags = agg
    out.model_claims = "certified" if admissible else "uncertified"
    return out


def classify_flags(f: SectionMap, fiber_models: Mapping) -> dict:
    return classify_section_map(f, fiber_models).flags


# -- enumeration -----------------------------------------------------------------------

def enumerate_sections(fc: FiberedCategory, rs: ReedyStructure,
                       budget: Budget | int | None = None) -> list[Section]:
    """Every section, by backtracking over the good filtration.

    Arrows that are composites of already-chosen arrows are forced; the
    rest range over total maps covering the base morphism.  Functoriality is
    checked as soon as all three arrows of a composable pair are known.
    """
    budget = as_budget(budget, "sections")
    base, total = rs.category, fc.total
    order = _order(rs)
    pos = {x: i for i, x in enumerate(order)}
    plan = []
    known: set = set()
    for x in order:
        new = [m for m in base.morphisms if not base.is_identity(m)
               and max(pos[base.src(m)], pos[base.tgt(m)]) == pos[x]]
        seq = []
        avail = set(known) | {base.identity(y) for y in order[:pos[x] + 1]}
        remaining = sorted(new, key=order_key)
        while remaining:
            progress = False
            for m in list(remaining):
                dec = _decomposition(base, m, avail)
                if dec is not None:
                    seq.append((m, dec))
                    avail.add(m)
                    remaining.remove(m)
                    progress = True
            if not progress:
                m = remaining.pop(0)
                seq.append((m, None))
                avail.add(m)
        known |= set(new) | {base.identity(x)}
        idx = {m: i for i, (m, _) in enumerate(seq)}
        checks = [[] for _ in seq]
        for g in list(known):
            for f in list(known):
                if base.tgt(f) != base.src(g) or base.is_identity(f) or base.is_identity(g):
                    continue
                gf = base.compose(g, f)
                ks = [idx[m] for m in (g, f, gf) if m in idx]
                if ks:
                    checks[max(ks)].append((g, f, gf))
        plan.append((x, seq, checks))
    out: list[Section] = []
    values: dict = {}
    arrows: dict = {}

    def rec_obj(i):
        if i == len(plan):
            budget.spend(1, "sections")
            out.append(Section(fc, rs, values, arrows))
            return
        x, seq, checks = plan[i]
        for X in sorted(fc.objects_over(x), key=order_key):
            values[x] = X
            arrows[base.identity(x)] = total.identity(X)
            rec_mor(i, 0)
            del values[x]
            del arrows[base.identity(x)]

    def rec_mor(i, j):
        x, seq, checks = plan[i]
        if j == len(seq):
            rec_obj(i + 1)
            return
        m, dec = seq[j]
        if dec is not None:
            cands = [total.compose(arrows[dec[0]], arrows[dec[1]])]
        else:
            cands = sorted(fc.maps_over(values[base.src(m)], values[base.tgt(m)], m), key=order_key)
        for a in cands:
            arrows[m] = a
            if all(total.compose(arrows[g], arrows[f]) == arrows[gf] for g, f, gf in checks[j]):
                rec_mor(i, j + 1)
        arrows.pop(m, None)
    rec_obj(0)
    return out


def _decomposition(base, m, avail):
    s, t = base.src(m), base.tgt(m)
    for f in sorted(avail, key=order_key):
        if base.src(f) != s or base.is_identity(f):
            continue
        for g in base.hom(base.tgt(f), t):
            if g in avail and not base.is_identity(g) and base.compose(g, f) == m:
                return (g, f)
    return None


def enumerate_maps(S: Section, T: Section, budget: Budget | None = None, limit: int | None = None
                   ) -> list[SectionMap]:
    """All maps of sections S -> T (natural in every base morphism)."""
    fc, rs = S.fibered, S.base_reedy
    base, total = rs.category, fc.total
    order = [x for x in _order(rs) if x in S.values]
    comps: dict = {}
    tcomps: dict = {}
    out = []
    checks = []
    for i, x in enumerate(order):
        earlier = set(order[:i + 1])
        cs = []
        for y in earlier:
            for m in list(base.hom(x, y)) + (list(base.hom(y, x)) if y != x else []):
                if not base.is_identity(m):
                    cs.append(m)
        checks.append(cs)

    def rec(i):
        if i == len(order):
            if budget is not None:
                budget.spend(1, "section maps")
            out.append(SectionMap(S, T, comps))
            return limit is not None and len(out) >= limit
        x = order[i]
        fib = fc.fibre(x)
        for phi in fib.category.hom(S.local(x), T.local(x)):
            comps[x] = phi
            tcomps[x] = fib.to_total_mor(phi)
            ok = True
            for m in checks[i]:
                a, b = base.src(m), base.tgt(m)
                if total.compose(T.arrow(m), tcomps[a]) != total.compose(tcomps[b], S.arrow(m)):
                    ok = False
                    break
            if ok and rec(i + 1):
                return True
        comps.pop(x, None)
        tcomps.pop(x, None)
        return False
    rec(0)
    return out


def hom_count_sections(S: Section, T: Section) -> int:
    return len(enumerate_maps(S, T))


@dataclass
class SectionsCategory:
    """The materialized Sect(R, E): objects are indices into ``sections``."""
    category: FiniteCategory
    sections: list
    maps: dict           # morphism id -> SectionMap

    def section_map(self, m) -> SectionMap:
        return self.maps[m]

    def morphism_id(self, f: SectionMap):
        i = self._index[f.source.key()]
        j = self._index[f.target.key()]
        return (i, j, self._comps(f))

    def _comps(self, f):
        return tuple(f.components[x] for x in self.order)

    order: tuple = ()
    _index: dict = field(default_factory=dict)


def sections_category(fc: FiberedCategory, rs: ReedyStructure,
                      budget: Budget | int | None = None, sections: list | None = None
                      ) -> SectionsCategory:
    """All sections (or the given ones) and the maps between them, within a shared budget."""
    budget = as_budget(budget, "sections category")
    secs = enumerate_sections(fc, rs, budget) if sections is None else list(sections)
    order = _order(rs)
    index = {s.key(): i for i, s in enumerate(secs)}
    triples, maps = [], {}
    for i, S in enumerate(secs):
        for j, T in enumerate(secs):
            for f in enumerate_maps(S, T, budget):
                mid = (i, j, tuple(f.components[x] for x in order))
                triples.append((mid, i, j))
                maps[mid] = f
    ident = {i: (i, i, tuple(fc.fibre(x).category.identity(S.local(x)) for x in order))
             for i, S in enumerate(secs)}

    def comp(g, f):
        if f[1] != g[0]:
            raise ValueError("not composable")
        return (f[0], g[1], tuple(fc.fibre(x).category.compose(b, a)
                                  for x, b, a in zip(order, g[2], f[2])))
    cat = FiniteCategory(range(len(secs)), triples, ident, comp, name="Sect")
    return SectionsCategory(cat, secs, maps, order, index)


# -- factorization and lifting ------------------------------------------------------------

MODES = {"cof_then_trivfib": "cf", "trivcof_then_fib": "tcf"}


def factorize_section_map(f: SectionMap, mode: str, fiber_models: Mapping,
                          degenerate=frozenset()) -> tuple[SectionMap, SectionMap]:
    """A -> B -> C by induction along the good filtration.

    At objects in ``degenerate`` the middle value is the relative latching
    pushout itself (the normalized variant).
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {sorted(MODES)}")
    A, C = f.source, f.target
    fc, rs = A.fibered, A.base_reedy
    B = empty_section(fc, rs)
    i_comp: dict = {}
    p_comp: dict = {}
    for x in _order(rs):
        fib = fc.fibre(x)
        c = fib.category
        i_part = SectionMap(A, B, i_comp)
        p_part = SectionMap(B, C, p_comp)
        la, lc = latching_object(A, x), latching_object(C, x)
        ma, mc_ = matching_object(A, x), matching_object(C, x)
        lb, mb = latching_object(B, x), matching_object(B, x)
        lat_i = latching_map_of(i_part, x)
        mat_p = matching_map_of(p_part, x)
        po = _pushout(fib, (lat_i, la.to_value))
        pb = _pullback(fib, (mc_.from_value, mat_p))   # a: C(x), b: Mat_x B, c: Mat_x C
        canon_b = canonical_lat_to_mat(B, x)
        lat_p = latching_map_of(p_part, x)
        mat_i = matching_map_of(i_part, x)
        # P -> Q from its two pushout legs
        from_latb = fib.engine.induced_to_limit(
            pb, {"a": c.compose(lc.to_value, lat_p), "b": canon_b,
                 "c": c.compose(mc_.from_value, c.compose(lc.to_value, lat_p))}, lb.obj)
        from_ax = fib.engine.induced_to_limit(
            pb, {"a": f.components[x], "b": c.compose(mat_i, ma.from_value),
                 "c": c.compose(mc_.from_value, f.components[x])}, A.local(x))
        from_lata = c.compose(from_latb, lat_i)
        m = fib.engine.induced_from_colimit(po, {"a": from_latb, "c": from_ax, "b": from_lata}, pb.apex)
        if x in degenerate:
            fac = (c.identity(po.apex), m)
        else:
            fac = fiber_models[x].factor(MODES[mode], m)
        if fac is None:
            raise SectionError(f"no fibre factorization of the map at {x!r} ({mode})")
        j, q = fac
        X = c.tgt(j)
        a = c.compose(j, po.legs["a"])
        b = c.compose(pb.legs["b"], q)
        B = extend_section(B, {x: (X, a, b)}, check=False)
        i_comp[x] = c.compose(j, po.legs["c"])
        p_comp[x] = c.compose(pb.legs["a"], q)
    B = Section(fc, rs, B.values, B.arrows)
    return SectionMap(A, B, i_comp), SectionMap(B, C, p_comp)


def lift_section_square(i: SectionMap, p: SectionMap, top: SectionMap, bottom: SectionMap,
                        fiber_models: Mapping | None = None) -> SectionMap:
    """A lift B -> S in the square top: A -> S, bottom: B -> T, built degreewise."""
    A, B = i.source, i.target
    S, T = p.source, p.target
    fc, rs = A.fibered, A.base_reedy
    h: dict = {}
    for x in _order(rs):
        fib = fc.fibre(x)
        c = fib.category
        part = SectionMap(B, S, h)
        rl = relative_latching(i, x)
        rm = relative_matching(p, x)
        lat_h = latching_map_of(part, x)
        mat_h = matching_map_of(part, x)
        ls = latching_object(S, x)
        mb = matching_object(B, x)
        upper = fib.engine.induced_from_colimit(
            rl.pushout, {"a": c.compose(ls.to_value, lat_h), "c": top.components[x],
                         "b": c.compose(top.components[x], latching_object(A, x).to_value)},
            S.local(x))
        lower = fib.engine.induced_to_limit(
            rm.pullback, {"a": c.compose(mat_h, mb.from_value), "b": bottom.components[x],
                          "c": c.compose(matching_object(T, x).from_value, bottom.components[x])},
            B.local(x))
        found = None
        for cand in c.hom(B.local(x), S.local(x)):
            if c.compose(cand, rl.map) == upper and c.compose(rm.map, cand) == lower:
                found = cand
                break
        if found is None:
            raise SectionError(f"no lift in the fibre over {x!r}")
        h[x] = found
    return SectionMap(B, S, h)


# -- fibrewise colimits of sections -----------------------------------------------------------

def _total_over(fc: FiberedCategory, u, X_local, Y_local, equations):
    """The unique total map over u from X to Y satisfying equations(total) -> bool."""
    base = fc.base
    fy = fc.fibre(base.tgt(u))
    found = [phi for phi in fy.category.hom(fc.push(u, X_local), Y_local)
             if equations(fc.from_opcart(u, X_local, phi))]
    if len(found) != 1:
        raise SectionError(f"{len(found)} candidate arrows over {u!r} in a fibrewise colimit")
    return fc.from_opcart(u, X_local, found[0])


def fibrewise_colimit(fc: FiberedCategory, rs: ReedyStructure, shape: FiniteCategory,
                      objects: Mapping, morphisms: Mapping) -> tuple[Section, dict]:
    """Colimit of a diagram of sections computed in each fibre.

    Returns the colimit section and its cocone legs (one SectionMap per
    shape object).  Arrows are the unique total maps compatible with the
    fibrewise cocones.
    """
    base, total = rs.category, fc.total
    values, cones = {}, {}
    for x in _order(rs):
        fib = fc.fibre(x)
        d = FunctorData(shape, fib.category, {j: objects[j].local(x) for j in shape.objects},
                        {m: morphisms[m].components[x] if not shape.is_identity(m)
                         else fib.category.identity(objects[shape.src(m)].local(x))
                         for m in shape.morphisms})
        cone = fib.engine.colimit(d)
        cones[x] = cone
        values[x] = cone.apex
    arrows = {}
    for u in base.morphisms:
        x, y = base.src(u), base.tgt(u)
        if base.is_identity(u):
            continue
        fx, fy = fc.fibre(x), fc.fibre(y)

        def eqs(t, u=u, x=x, y=y, fx=fx, fy=fy):
            for j in shape.objects:
                lhs = total.compose(t, fx.to_total_mor(cones[x].legs[j]))
                rhs = total.compose(fy.to_total_mor(cones[y].legs[j]), objects[j].arrow(u))
                if lhs != rhs:
                    return False
            return True
        arrows[u] = _total_over(fc, u, values[x], values[y], eqs)
    sec = section_from_local(fc, rs, values, arrows)
    legs = {j: SectionMap(objects[j], sec, {x: cones[x].legs[j] for x in values}) for j in shape.objects}
    return sec, legs


# -- generators for Quillen presheaves -----------------------------------------------------------

def _under_pushforward(fc: FiberedCategory, rs: ReedyStructure, x, X, objects_C):
    """p_! triv X for the full subcategory of x\\R on objects_C, as a section."""
    base = rs.category
    values, inj = {}, {}
    for y in _order(rs):
        fib = fc.fibre(y)
        # the comma (C | y): objects (l, v) with v o l : x -> y
        objs = [(l, v) for l in objects_C for v in base.hom(base.tgt(l), y)]
        g = nx.Graph()
        g.add_nodes_from(objs)
        for (l, v) in objs:
            for (l2, v2) in objs:
                for w in base.hom(base.tgt(l), base.tgt(l2)):
                    if base.compose(w, l) == l2 and base.compose(v2, w) == v:
                        g.add_edge((l, v), (l2, v2))
        comps = sorted((sorted(cc, key=order_key) for cc in nx.connected_components(g)),
                       key=lambda cc: order_key(cc[0]))
        reps = [cc[0] for cc in comps]
        shape = discrete_category(range(len(reps)))
        vals = {k: fc.push(base.compose(v, l), X) for k, (l, v) in enumerate(reps)}
        d = FunctorData(shape, fib.category, vals,
                        {("id", k): fib.category.identity(vals[k]) for k in vals})
        cone = fib.engine.colimit(d)
        values[y] = cone.apex
        inj[y] = {}
        for k, cc in enumerate(comps):
            for ob in cc:
                inj[y][ob] = (k, cone.legs[k], base.compose(ob[1], ob[0]))
    arrows = {}
    total = fc.total
    for u in base.morphisms:
        if base.is_identity(u):
            continue
        y, y2 = base.src(u), base.tgt(u)
        fy, fy2 = fc.fibre(y), fc.fibre(y2)

        def eqs(t, y=y, y2=y2, u=u, fy=fy, fy2=fy2):
            for (l, v), (k, leg, g) in inj[y].items():
                lhs = total.compose(t, total.compose(fy.to_total_mor(leg), fc.opcart_local(g, X)))
                _, leg2, g2 = inj[y2][(l, base.compose(u, v))]
                rhs = total.compose(fy2.to_total_mor(leg2), fc.opcart_local(g2, X))
                if lhs != rhs:
                    return False
            return True
        arrows[u] = _total_over(fc, u, values[y], values[y2], eqs)
    sec = section_from_local(fc, rs, values, arrows)
    sec._cache["injections"] = inj
    return sec


def free_section(fc: FiberedCategory, rs: ReedyStructure, x, X) -> Section:
    """i(X): y |-> coproduct over f: x -> y of f_!X."""
    return _under_pushforward(fc, rs, x, X, list(rs.category.out_of(x)))


def matching_free_section(fc: FiberedCategory, rs: ReedyStructure, x, X) -> Section:
    """m(X): the same construction over Mat(x) instead of x\\R."""
    return _under_pushforward(fc, rs, x, X, list(_mat(rs, x).category.objects))


def _free_map(fc, rs, x, g, src: Section, tgt: Section) -> SectionMap:
    """i(g), m(g), or (g None) the comparison m(X) -> i(X), componentwise on comma objects."""
    comps = {}
    for y in _order(rs):
        fib = fc.fibre(y)
        c = fib.category
        inj_t = tgt._cache["injections"][y]
        legs = {}
        for ob, (k, leg, h) in src._cache["injections"][y].items():
            _, tleg, _ = inj_t[ob]
            push = fc.push_mor(h, g) if g is not None else c.identity(c.src(leg))
            legs.setdefault(k, c.compose(tleg, push))
        comps[y] = fib.engine.induced_from_colimit(_cone_of(fc, src, y), legs, tgt.local(y))
    return SectionMap(src, tgt, comps)


def _cone_of(fc, sec: Section, y) -> Cone:
    inj = sec._cache["injections"][y]
    legs = {}
    for ob, (k, leg, _) in inj.items():
        legs.setdefault(k, leg)
    return Cone(sec.local(y), legs)


@dataclass
class Generator:
    x: Any
    g: Any
    source: Section        # m(B) +_{m(A)} i(A)
    target: Section        # i(B)
    map: SectionMap
    pieces: dict


def quillen_generators(fc: FiberedCategory, rs: ReedyStructure, x, g) -> Generator:
    """m(B) +_{m(A)} i(A) -> i(B) for a fibre map g: A -> B over x."""
    c = fc.fibre(x).category
    A, B = c.src(g), c.tgt(g)
    iA, iB = free_section(fc, rs, x, A), free_section(fc, rs, x, B)
    mA, mB = matching_free_section(fc, rs, x, A), matching_free_section(fc, rs, x, B)
    i_g = _free_map(fc, rs, x, g, iA, iB)
    m_g = _free_map(fc, rs, x, g, mA, mB)
    cmpA = _free_map(fc, rs, x, None, mA, iA)
    cmpB = _free_map(fc, rs, x, None, mB, iB)
    po, legs = fibrewise_colimit(fc, rs, _SPAN, {"b": mA, "a": mB, "c": iA}, {"f": m_g, "g": cmpA})
    comps = {}
    for y in _order(rs):
        fib = fc.fibre(y)
        cc = fib.category
        cone = Cone(po.local(y), {j: legs[j].components[y] for j in legs})
        comps[y] = fib.engine.induced_from_colimit(
            cone, {"a": cmpB.components[y], "c": i_g.components[y],
                   "b": cc.compose(i_g.components[y], cmpA.components[y])}, iB.local(y))
    gen = SectionMap(po, iB, comps)
    return Generator(x, g, po, iB, gen, {"iA": iA, "iB": iB, "mA": mA, "mB": mB})


def adjunction_certificate(fc: FiberedCategory, rs: ReedyStructure, x, X, S: Section) -> dict:
    """hom counts for Sect(i(X), S) vs E(x)(X, S(x)) and Sect(m(X), S) vs E(x)(X, Mat_x S)."""
    fib = fc.fibre(x).category
    iX = free_section(fc, rs, x, X)
    mX = matching_free_section(fc, rs, x, X)
    return {
        "i_sect": hom_count_sections(iX, S),
        "i_fibre": len(fib.hom(X, S.local(x))),
        "m_sect": hom_count_sections(mX, S),
        "m_fibre": len(fib.hom(X, matching_object(S, x).obj)),
    }


# -- admissibility ---------------------------------------------------------------------------------

def _restricted_composites_ok(fc, rs, index_cat, opcart: bool) -> bool:
    """Composites of chosen (op)cartesian lifts along an index category stay (op)cartesian."""
    base = rs.category
    for m in index_cat.morphisms:
        u = m[2]
        for n in index_cat.out_of(index_cat.tgt(m)):
            v = n[2]
            if base.is_identity(u) or base.is_identity(v):
                continue
            src_obj = base.src(u) if opcart else base.tgt(v)
            for X in fc.objects_over(src_obj):
                if opcart:
                    a = fc.opcart(u, X)
                    b = fc.opcart(v, fc.total.tgt(a)) if a is not None else None
                    if a is None or b is None or not fc.is_opcartesian(fc.total.compose(b, a)):
                        return False
                else:
                    b = fc.cart(v, X)
                    a = fc.cart(u, fc.total.src(b)) if b is not None else None
                    if a is None or b is None or not fc.is_cartesian(fc.total.compose(b, a)):
                        return False
    return True


def _transitions_preserve(fc, rs, maps, colimits: bool, budget: Budget) -> bool:
    """Exhaustive test that transition functors preserve the finite (co)limits present."""
    from .model import _pair_diagram, _parallel_diagram, _EMPTY
    from .fib import ConstantFibration
    if isinstance(fc, ConstantFibration):
        return True
    base = rs.category
    for u in maps:
        if base.is_identity(u):
            continue
        a, b = (base.src(u), base.tgt(u)) if colimits else (base.tgt(u), base.src(u))
        src, tgt = fc.fibre(a), fc.fibre(b)
        sc, tc = src.category, tgt.category
        F_obj = (lambda X: fc.push(u, X)) if colimits else (lambda X: fc.pull(u, X))
        F_mor = (lambda m: fc.push_mor(u, m)) if colimits else (lambda m: fc.pull_mor(u, m))
        diagrams = [FunctorData(_EMPTY, sc, {}, {})]
        objs = sorted(sc.objects, key=order_key)
        for p, q in itertools.combinations_with_replacement(objs, 2):
            diagrams.append(_pair_diagram(sc, p, q))
            for f1, f2 in itertools.combinations(sorted(sc.hom(p, q), key=order_key), 2):
                diagrams.append(_parallel_diagram(sc, f1, f2))
        for d in diagrams:
            budget.spend(1, "preservation")
            try:
                cone = src.engine.colimit(d) if colimits else src.engine.limit(d)
            except NoLimit:
                continue
            img = FunctorData(d.source, tc, {j: F_obj(d.obj(j)) for j in d.source.objects},
                              {m: F_mor(d.mor(m)) for m in d.source.morphisms})
            try:
                tcone = tgt.engine.colimit(img) if colimits else tgt.engine.limit(img)
            except NoLimit:
                return False
            legs = {j: F_mor(cone.legs[j]) for j in cone.legs}
            if colimits:
                cmp = tgt.engine.induced_from_colimit(tcone, legs, F_obj(cone.apex))
            else:
                cmp = tgt.engine.induced_to_limit(tcone, legs, F_obj(cone.apex))
            if not _is_iso(tgt, cmp):
                return False
    return True


def _is_iso(fib, m) -> bool:
    eng = fib.engine
    if hasattr(eng, "is_iso"):
        return eng.is_iso(m)
    return fib.category.is_iso(m)


def _components_have(cat: FiniteCategory, terminal: bool) -> bool:
    for comp in is_connected_components(cat):
        sub_objs = set(comp)
        found = False
        for o in comp:
            if terminal:
                ok = all(len(cat.hom(p, o)) == 1 for p in sub_objs)
            else:
                ok = all(len(cat.hom(o, p)) == 1 for p in sub_objs)
            if ok:
                found = True
                break
        if not found:
            return False
    return True


def check_admissibility(fc: FiberedCategory, rs: ReedyStructure, fiber_models: Mapping,
                        budget: Budget | int | None = None, brute_force: bool = True,
                        sections: SectionsCategory | None = None) -> Report:
    """The two sufficient criteria per object, plus a brute-force verdict when affordable.

    Left admissibility is certified through Lat(y): an opfibration with
    colimit-preserving transitions there, or Lat(y) a disjoint union of
    categories with terminal objects.  Right admissibility is dual, through
    Mat(y) with initial objects.
    """
    budget = as_budget(budget, "admissibility")
    rep = Report("admissibility")
    c1, c2, c1r, c2r = {}, {}, {}, {}
    for y in _order(rs):
        lat = _lat(rs, y).category
        mat = _mat(rs, y).category
        c1[y] = _restricted_composites_ok(fc, rs, lat, True) and \
            _transitions_preserve(fc, rs, {m[2] for m in lat.morphisms} | set(lat.objects), True, budget)
        c2[y] = _components_have(lat, terminal=True)
        c1r[y] = _restricted_composites_ok(fc, rs, mat, False) and \
            _transitions_preserve(fc, rs, {m[2] for m in mat.morphisms} | set(mat.objects), False, budget)
        c2r[y] = _components_have(mat, terminal=False)
    left = all(c1[y] or c2[y] for y in c1)
    right = all(c1r[y] or c2r[y] for y in c1r)
    rep.data.update({"criterion_1_per_object": c1, "criterion_2_per_object": c2,
                     "criterion_1_right_per_object": c1r, "criterion_2_right_per_object": c2r,
                     "admissible_left": left, "admissible_right": right,
                     "admissible": left and right})
    if brute_force:
        try:
            sc = sections or sections_category(fc, rs, budget)
            bl, br, wl, wr = _brute_admissibility(sc, rs, fiber_models)
            rep.data["brute_force"] = {"left": bl, "right": br,
                                       "left_witness": wl, "right_witness": wr}
            findings = []
            if left and not bl:
                findings.append("criteria certify left admissibility but brute force refutes it")
            if right and not br:
                findings.append("criteria certify right admissibility but brute force refutes it")
            if bl and not left:
                findings.append("left admissible by brute force without a criterion")
            if br and not right:
                findings.append("right admissible by brute force without a criterion")
            rep.data["findings"] = findings
            for msg in findings[:2]:
                if "refutes" in msg:
                    rep.add("admissibility criteria contradicted", None, msg)
        except (BudgetExceeded, SectionError) as exc:
            rep.data["brute_force"] = f"skipped: {exc}"
    return rep


def _brute_admissibility(sc: SectionsCategory, rs, fiber_models):
    left, right = True, True
    wl = wr = None
    order = _order(rs)
    for mid, f in sc.maps.items():
        rels = {x: relative_latching(f, x).map for x in order}
        relm = {x: relative_matching(f, x).map for x in order}
        for trivial in (False, True):
            def cof_ok(x, m, trivial=trivial):
                mc = fiber_models[x]
                return m in mc.cof and (not trivial or m in mc.weq)

            def fib_ok(x, m, trivial=trivial):
                mc = fiber_models[x]
                return m in mc.fib and (not trivial or m in mc.weq)
            if left and all(cof_ok(x, rels[x]) for x in order):
                for y in order:
                    if not cof_ok(y, latching_map_of(f, y)):
                        left, wl = False, (mid, y, trivial)
                        break
            if right and all(fib_ok(x, relm[x]) for x in order):
                for y in order:
                    if not fib_ok(y, matching_map_of(f, y)):
                        right, wr = False, (mid, y, trivial)
                        break
    return left, right, wl, wr


# -- the model structure on the materialized sections category -----------------------------------

def sections_model(fc: FiberedCategory, rs: ReedyStructure, fiber_models: Mapping,
                   budget: Budget | int | None = None, sections: SectionsCategory | None = None,
                   admissible: bool | None = None):
    """(SectionsCategory, ModelClasses, lifter) with Reedy classes and section-level constructions."""
    from .model import ModelClasses, PredicateClass
    sc = sections or sections_category(fc, rs, budget)
    cat = sc.category
    flags_cache: dict = {}

    def flags(m):
        if m not in flags_cache:
            flags_cache[m] = classify_section_map(sc.maps[m], fiber_models, admissible).flags
        return flags_cache[m]

    def factor(mode):
        def go(m):
            try:
                i, p = factorize_section_map(sc.maps[m], mode, fiber_models)
                return (_intern(sc, i), _intern(sc, p))
            except (SectionError, KeyError, NoLimit):
                return None
        return go

    def lifter(i, p, u, v):
        try:
            h = lift_section_square(sc.maps[i], sc.maps[p], sc.maps[u], sc.maps[v], fiber_models)
            return _intern(sc, h)
        except (SectionError, KeyError, NoLimit):
            return None
    mc = ModelClasses(cat, PredicateClass(cat, lambda m: flags(m)["weq"]),
                      PredicateClass(cat, lambda m: flags(m)["reedy_cof"]),
                      PredicateClass(cat, lambda m: flags(m)["reedy_fib"]),
                      factor("cof_then_trivfib"), factor("trivcof_then_fib"),
                      SectionsEngine(sc), name="Sect")
    mc.extra["flags"] = flags
    return sc, mc, lifter


def _intern(sc: SectionsCategory, f: SectionMap):
    """Morphism id of a section map, matching sections by value."""
    i = sc._index.get(f.source.key())
    j = sc._index.get(f.target.key())
    if i is None or j is None:
        raise KeyError("section outside the materialized category")
    return (i, j, tuple(f.components[x] for x in sc.order))


class SectionsEngine:
    """(Co)limits in Sect by universal search on the materialized category."""

    def __init__(self, sc: SectionsCategory):
        from .fincat import SearchEngine
        self._search = SearchEngine(sc.category)

    def limit(self, d):
        return self._search.limit(d)

    def colimit(self, d):
        return self._search.colimit(d)


def initial_and_terminal(sc: SectionsCategory) -> tuple:
    return find_initial(sc.category), find_terminal(sc.category)
