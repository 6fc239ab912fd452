"""Truncated simplex categories, simplicial sets as discrete opfibrations, normalized sections.

Monotone maps [a] -> [b] are ids ``(a, b, f)`` with ``f`` the tuple of
values; the same ids serve in Delta and in Delta^op (where (a, b, f) goes
from b to a).  theta^* x denotes the simplicial action of theta on x.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Any, Mapping

from .fib import ConstantFibration, FiberedCategory, GrothendieckOp, transition_functor, \
    validate_semifibration
from .fincat import (FiniteCategory, FunctorData, comma_under, discrete_category, find_initial,
                     morphism_class, opposite, subcategory)
from .kan import _res_limit, limits_of_sections
from .reedy import (FactorizationSystem, ReedyStructure, validate_factorization_system,
                    validate_reedy)
from .report import Budget, Report, as_budget, order_key
from .sect import (Section, SectionError, SectionMap, _intern, enumerate_maps, enumerate_sections,
                   factorize_section_map, latching_object, lift_section_square, matching_object,
                   relative_latching, relative_matching, sections_category, SectionsEngine,
                   validate_section)
from .setfun import FinSetSlice


# -- truncated Delta ------------------------------------------------------------------

def monotone_maps(a: int, b: int):
    """All monotone [a] -> [b], as value tuples in lexicographic order."""
    return list(itertools.combinations_with_replacement(range(b + 1), a + 1))


def is_injective(m) -> bool:
    return len(set(m[2])) == len(m[2])


def is_surjective(m) -> bool:
    return set(m[2]) == set(range(m[1] + 1))


def is_segal(m) -> bool:
    """Interval inclusion of [a] as the first a+1 elements of [b]."""
    return m[2] == tuple(range(m[0] + 1))


def is_anchor(m) -> bool:
    """Preserves the last vertex."""
    return m[2][-1] == m[1]


def _delta(n: int) -> FiniteCategory:
    mors = [((a, b, f), a, b) for a in range(n + 1) for b in range(n + 1) for f in monotone_maps(a, b)]
    ident = {k: (k, k, tuple(range(k + 1))) for k in range(n + 1)}

    def comp(g, f):
        if f[1] != g[0]:
            raise ValueError("not composable")
        return (f[0], g[1], tuple(g[2][i] for i in f[2]))
    return FiniteCategory(range(n + 1), mors, ident, comp, name=f"Delta<={n}")


@dataclass
class TruncatedSimplexCategory:
    n_max: int
    delta: FiniteCategory
    delta_op: FiniteCategory
    reedy: ReedyStructure        # surjections lower, injections raise
    reedy_op: ReedyStructure     # injections^op lower, surjections^op raise
    anchor_segal: FactorizationSystem   # (anchors, Segal inclusions) on Delta
    segal: FactorizationSystem          # (Segal^op, anchors^op) on Delta^op


def build_truncated_delta(n: int) -> TruncatedSimplexCategory:
    if n < 0:
        raise ValueError("n must be >= 0")
    d = _delta(n)
    dop = opposite(d)
    deg = {k: k for k in range(n + 1)}
    surj = morphism_class(d, (m for m in d.morphisms if is_surjective(m)))
    inj = morphism_class(d, (m for m in d.morphisms if is_injective(m)))
    anc = morphism_class(d, (m for m in d.morphisms if is_anchor(m)))
    seg = morphism_class(d, (m for m in d.morphisms if is_segal(m)))
    rs = ReedyStructure(d, surj, inj, deg)
    rs_op = ReedyStructure(dop, morphism_class(dop, inj.members), morphism_class(dop, surj.members), deg)
    return TruncatedSimplexCategory(n, d, dop, rs, rs_op, FactorizationSystem(d, anc, seg),
                                    FactorizationSystem(dop, morphism_class(dop, seg.members),
                                                        morphism_class(dop, anc.members)))


def monotone_count(a: int, b: int) -> int:
    return comb(a + b + 1, a + 1)


# -- simplicial sets -----------------------------------------------------------------

@dataclass
class SimplicialSet:
    """Truncated simplicial set: simplices per level and theta^* for every monotone theta."""
    n_max: int
    simplices: dict            # k -> tuple of simplex ids
    act: dict                  # ((a, b, f), x in X_b) -> theta^* x in X_a
    name: str = ""

    def pull(self, theta, x):
        return self.act[(theta, x)]

    def size(self, k: int) -> int:
        return len(self.simplices[k])

    def index(self, k: int, x) -> int:
        return self.simplices[k].index(x)


def validate_simplicial_set(X: SimplicialSet) -> Report:
    """theta^* defined and landing in the right level; (theta phi)^* = phi^* theta^*."""
    rep = Report("simplicial set")
    tsc = build_truncated_delta(X.n_max)
    d = tsc.delta
    levels = {k: set(v) for k, v in X.simplices.items()}
    for m in d.morphisms:
        a, b, _ = m
        for x in X.simplices[b]:
            y = X.act.get((m, x))
            if y is None or y not in levels[a]:
                rep.add("action defined", (m, x))
    if not rep.ok:
        return rep
    for f in d.morphisms:
        for g in d.out_of(f[1]):
            h = d.compose(g, f)
            for x in X.simplices[g[1]]:
                if X.act[(h, x)] != X.act[(f, X.act[(g, x)])]:
                    rep.add("functoriality", (g, f, x))
    return rep


def _from_action(n_max, simplices, fn, name="") -> SimplicialSet:
    act = {}
    for a in range(n_max + 1):
        for b in range(n_max + 1):
            for f in monotone_maps(a, b):
                for x in simplices[b]:
                    act[((a, b, f), x)] = fn((a, b, f), x)
    return SimplicialSet(n_max, {k: tuple(v) for k, v in simplices.items()}, act, name)


def standard_simplex(k: int, n_max: int) -> SimplicialSet:
    """Delta^k truncated at n_max: j-simplices are monotone [j] -> [k]."""
    simp = {j: monotone_maps(j, k) for j in range(n_max + 1)}
    return _from_action(n_max, simp, lambda th, x: tuple(x[i] for i in th[2]), name=f"Delta^{k}")


def boundary_simplex(k: int, n_max: int) -> SimplicialSet:
    """The boundary of Delta^k: the non-surjective simplices."""
    simp = {j: [x for x in monotone_maps(j, k) if set(x) != set(range(k + 1))]
            for j in range(n_max + 1)}
    return _from_action(n_max, simp, lambda th, x: tuple(x[i] for i in th[2]), name=f"dDelta^{k}")


def terminal_simplicial_set(n_max: int) -> SimplicialSet:
    return _from_action(n_max, {j: ["*"] for j in range(n_max + 1)}, lambda th, x: "*", name="pt")


def _coface(j: int, b: int):
    """delta^j: [b-1] -> [b] skipping j."""
    return (b - 1, b, tuple(i if i < j else i + 1 for i in range(b)))


def _codegeneracy(i: int, a: int):
    """sigma^i: [a] -> [a-1] hitting i twice."""
    return (a, a - 1, tuple(k if k <= i else k - 1 for k in range(a + 1)))


def from_face_degeneracy(n_max: int, simplices: Mapping, faces: Mapping, degeneracies: Mapping,
                         name: str = "") -> SimplicialSet:
    """Build theta^* from d_j (faces[(k, j)]: X_k -> X_{k-1}) and s_i (degeneracies[(k, i)]: X_k -> X_{k+1})."""
    def act(theta, x):
        a, b, f = theta
        missing = [j for j in range(b + 1) if j not in f]
        if missing:
            j = missing[-1]
            rest = (a, b - 1, tuple(v if v < j else v - 1 for v in f))
            return act(rest, faces[(b, j)][x])
        for i in range(a):
            if f[i] == f[i + 1]:
                rest = (a - 1, b, tuple(f[k] if k <= i else f[k + 1] for k in range(a)))
                return degeneracies[(a - 1, i)][act(rest, x)]
        return x
    return _from_action(n_max, simplices, act, name)


def face_degeneracy_tables(X: SimplicialSet) -> tuple[dict, dict]:
    faces, degens = {}, {}
    for k in range(1, X.n_max + 1):
        for j in range(k + 1):
            faces[(k, j)] = {x: X.act[(_coface(j, k), x)] for x in X.simplices[k]}
    for k in range(X.n_max):
        for i in range(k + 1):
            degens[(k, i)] = {x: X.act[(_codegeneracy(i, k + 1), x)] for x in X.simplices[k]}
    return faces, degens


def degenerate_simplices(X: SimplicialSet, k: int) -> set:
    """Images of degeneracy operators at level k (the classical oracle)."""
    out = set()
    for a in range(k):
        for f in monotone_maps(k, a):
            th = (k, a, f)
            if is_surjective(th):
                out.update(X.act[(th, y)] for y in X.simplices[a])
    return out


# -- Delta-indexed categories ------------------------------------------------------------

@dataclass
class DeltaIndexedCategory:
    sset: SimplicialSet
    tsc: TruncatedSimplexCategory
    fibration: GrothendieckOp          # X -> Delta^op, discrete fibres
    total: FiniteCategory
    reedy: ReedyStructure              # (X_-, X_+)
    segal: FactorizationSystem         # (S_X, A_X)
    degenerate: frozenset = frozenset()

    def over(self, m):
        return m[0]


def _discrete_transition(X: SimplicialSet, theta, src, tgt) -> FunctorData:
    return FunctorData(src, tgt, lambda x: X.act[(theta, x)],
                       lambda m: ("id", X.act[(theta, m[1])]), name=str(theta))


def delta_indexed(X: SimplicialSet) -> DeltaIndexedCategory:
    """The discrete opfibration over Delta^op<=n with fibre X_k over [k]."""
    rep = validate_simplicial_set(X)
    if not rep.ok:
        raise ValueError(f"not a simplicial set: {rep.laws()[:3]}")
    tsc = build_truncated_delta(X.n_max)
    dop = tsc.delta_op
    fibres = {k: discrete_category(X.simplices[k], name=f"X{k}") for k in dop.objects}
    trans = {m: _discrete_transition(X, m, fibres[dop.src(m)], fibres[dop.tgt(m)]) for m in dop.morphisms}
    fc = GrothendieckOp(dop, fibres, trans, name=X.name or "X")
    total = fc.total
    mors = total.morphisms
    deg = {A: A[0] for A in total.objects}
    low = morphism_class(total, (m for m in mors if is_injective(m[0])))
    high = morphism_class(total, (m for m in mors if is_surjective(m[0])))
    seg = morphism_class(total, (m for m in mors if is_segal(m[0])))
    anc = morphism_class(total, (m for m in mors if is_anchor(m[0])))
    rs = ReedyStructure(total, low, high, deg)
    dx = DeltaIndexedCategory(X, tsc, fc, total, rs, FactorizationSystem(total, seg, anc))
    dx.degenerate = frozenset(A for A in total.objects
                              if any(not total.is_identity(m) for m in total.into(A) if m in high))
    return dx


def simplicial_set_of(dx: DeltaIndexedCategory) -> SimplicialSet:
    """Read the simplicial set back off the opcartesian lifts."""
    fc, dop = dx.fibration, dx.tsc.delta_op
    simp = {k: tuple(x for (_, x) in fc.objects_over(k)) for k in dop.objects}
    act = {}
    for m in dop.morphisms:
        for x in simp[dop.src(m)]:
            lift = fc.opcart(m, (dop.src(m), x))
            act[(m, x)] = fc.total.tgt(lift)[1]
    return SimplicialSet(dx.sset.n_max, simp, act, dx.sset.name)


def check_discrete_opfibration(dx: DeltaIndexedCategory) -> Report:
    rep = Report("discrete opfibration")
    fc = dx.fibration
    for m in dx.total.morphisms:
        if not fc.is_opcartesian(m):
            rep.add("every morphism is opcartesian", m)
    for k in dx.tsc.delta_op.objects:
        fib = fc.fibre(k).category
        if any(not fib.is_identity(m) for m in fib.morphisms):
            rep.add("discrete fibres", k)
    return rep


@dataclass
class SegalAnchor:
    reedy: Any
    segal: FactorizationSystem
    report: Report


def segal_anchor_system(x) -> SegalAnchor:
    """Both factorization systems, validated, with X_+ contained in the anchor class."""
    if isinstance(x, TruncatedSimplexCategory):
        reedy, segal = x.reedy_op, x.segal
        cat = x.delta_op
    else:
        reedy, segal = x.reedy, x.segal
        cat = x.total
    rep = Report("Segal and Reedy systems")
    rep.extend(validate_reedy(reedy), "reedy: ")
    rep.extend(validate_factorization_system(segal), "segal: ")
    for m in cat.morphisms:
        if m in reedy.raising and m not in segal.right:
            rep.add("raising maps are anchors", m)
    rep.data["segal_maps"] = len(segal.left.members)
    rep.data["anchor_maps"] = len(segal.right.members)
    return SegalAnchor(reedy, segal, rep)


def check_segal_comma(dx: DeltaIndexedCategory) -> Report:
    """x\\S_X is a chain with |x|+1 objects, for every x."""
    rep = Report("x\\S_X = pi(x)")
    S = subcategory(dx.total, dx.total.objects, dx.segal.left.members, name="S_X")
    for A in dx.total.objects:
        cc, _ = comma_under(S, A)
        k = A[0]
        n_obj = len(cc.objects)
        hom = {(a, b): len(cc.hom(a, b)) for a in cc.objects for b in cc.objects}
        total_order = all(hom[(a, b)] + hom[(b, a)] >= 1 and hom[(a, b)] <= 1
                          for a in cc.objects for b in cc.objects)
        if n_obj != k + 1 or not total_order or len(cc.morphisms) != comb(k + 2, 2):
            rep.add("comma over the Segal class is the chain", A)
    return rep


def degenerate_objects(dx: DeltaIndexedCategory) -> frozenset:
    """Objects hit by a non-identity raising map; checked against Lat(x) being nonempty."""
    from .reedy import latching_category
    via_lat = frozenset(A for A in dx.total.objects
                        if len(latching_category(dx.reedy, A).category.objects) > 0)
    if via_lat != dx.degenerate:
        raise AssertionError(f"degeneracy characterizations disagree at {sorted(via_lat ^ dx.degenerate, key=order_key)}")
    return dx.degenerate


# -- normalized sections -------------------------------------------------------------------

def _iso(fib, m) -> bool:
    eng = fib.engine
    return eng.is_iso(m) if hasattr(eng, "is_iso") else fib.category.is_iso(m)


def check_hypotheses(fc: FiberedCategory, dx: DeltaIndexedCategory, fiber_models: Mapping | None = None,
                     budget: Budget | int | None = None) -> Report:
    """The three standing hypotheses, reported separately.

    Segal semifibration; admissible Reedy (skipped without fibre models);
    locally constant fibration over the anchor class.
    """
    from .sect import check_admissibility
    rep = Report("normalized-section hypotheses")
    semi = validate_semifibration(fc, dx.segal)
    rep.extend(semi, "segal semifibration: ")
    hyp = {"segal_semifibration": semi.ok}
    if fiber_models is not None:
        adm = check_admissibility(fc, dx.reedy, fiber_models, budget)
        hyp["admissible"] = bool(adm.data.get("admissible"))
        if not hyp["admissible"]:
            rep.add("admissible model Reedy semifibration", adm.data.get("findings"))
    lc = True
    for a in dx.segal.right.members:
        try:
            T = transition_functor(fc, a, "cartesian")
        except Exception as exc:   # missing lifts or non-functorial transition
            rep.add("locally constant over anchors", a, str(exc))
            lc = False
            continue
        if not _is_equivalence(T):
            rep.add("anchor transitions are equivalences", a)
            lc = False
    hyp["locally_constant"] = lc
    rep.data["hypotheses"] = hyp
    return rep


def _is_equivalence(F: FunctorData) -> bool:
    src, tgt = F.source, F.target
    for a in src.objects:
        for b in src.objects:
            image = [F.mor(m) for m in src.hom(a, b)]
            if len(set(image)) != len(image) or len(image) != len(tgt.hom(F.obj(a), F.obj(b))):
                return False
    hit = {F.obj(a) for a in src.objects}
    for y in tgt.objects:
        if y not in hit and not any(tgt.is_iso(m) for x in hit for m in tgt.hom(x, y)):
            return False
    return True


def check_normalized(s: Section, dx: DeltaIndexedCategory, hypotheses: Report | None = None) -> Report:
    """Raising arrows opcartesian, and latching maps at degenerate objects isomorphisms; both must agree."""
    if hypotheses is not None and not hypotheses.ok:
        raise ValueError(f"hypotheses fail: {hypotheses.laws()[:3]}")
    fc = s.fibered
    rep = Report("normalized section")
    bad_arrow = None
    for m in sorted(dx.reedy.raising.members, key=order_key):
        if not fc.is_opcartesian(s.arrow(m)):
            bad_arrow = m
            break
    bad_lat = None
    for y in sorted(dx.degenerate, key=order_key):
        lat = latching_object(s, y)
        if not _iso(fc.fibre(y), lat.to_value):
            bad_lat = y
            break
    a, b = bad_arrow is None, bad_lat is None
    rep.data.update({"normalized": a and b, "opcartesian": a, "latching_iso": b,
                     "witness_arrow": bad_arrow, "witness_object": bad_lat})
    if a != b:
        rep.add("characterizations agree", (bad_arrow, bad_lat))
    return rep


def is_normalized(s: Section, dx: DeltaIndexedCategory) -> bool:
    return bool(check_normalized(s, dx).data["normalized"])


@dataclass
class NDMatching:
    obj: Any
    cone: Any
    comparison: Any      # Mat_x -> Mat^nd_x
    is_iso: bool


def nondegenerate_matching(s: Section, x, dx: DeltaIndexedCategory) -> NDMatching:
    if x in dx.degenerate:
        raise ValueError(f"{x!r} is degenerate")
    fc = s.fibered
    total = dx.total
    maps = [l for l in total.out_of(x)
            if not total.is_identity(l) and total.tgt(l) not in dx.degenerate]
    cone = _res_limit(fc, s, x, maps)
    mat = matching_object(s, x)
    fib = fc.fibre(x)
    cmp = fib.engine.induced_to_limit(cone, {l: mat.cone.legs[l] for l in maps}, mat.obj)
    return NDMatching(cone.apex, cone, cmp, _iso(fib, cmp))


NORMALIZED_FLAGS = ("cof", "fib", "weq", "trivial_cof", "trivial_fib")


def classify_normalized(f: SectionMap, dx: DeltaIndexedCategory, fiber_models: Mapping) -> Report:
    """Normalized model classes of a map between normalized sections."""
    for S in (f.source, f.target):
        if not is_normalized(S, dx):
            raise ValueError("both endpoints must be normalized")
    fc = f.source.fibered
    rep = Report("normalized classification")
    flags = {k: True for k in NORMALIZED_FLAGS}
    wit = {}

    def fail(k, x):
        if flags[k]:
            flags[k] = False
            wit[k] = x
    for x in sorted(dx.total.objects, key=order_key):
        mc = fiber_models[x]
        rl = relative_latching(f, x)
        if f.components[x] not in mc.weq:
            fail("weq", x)
        if rl.map not in mc.cof:
            fail("cof", x)
        if not (rl.map in mc.cof and rl.map in mc.weq):
            fail("trivial_cof", x)
        if x in dx.degenerate:
            if not _iso(fc.fibre(x), rl.map):
                rep.add("relative latching map is an isomorphism at degenerate objects", x)
            continue
        rm = relative_matching(f, x)
        if rm.map not in mc.fib:
            fail("fib", x)
        if not (rm.map in mc.fib and rm.map in mc.weq):
            fail("trivial_fib", x)
    rep.data["flags"] = flags
    rep.data["witnesses"] = wit
    return rep


def normalized_sections(fc: FiberedCategory, dx: DeltaIndexedCategory,
                        budget: Budget | int | None = None) -> list:
    return [s for s in enumerate_sections(fc, dx.reedy, budget) if is_normalized(s, dx)]


def normalized_model(fc: FiberedCategory, dx: DeltaIndexedCategory, fiber_models: Mapping,
                     budget: Budget | int | None = None):
    """(SectionsCategory, ModelClasses, lifter) on the full subcategory of normalized sections."""
    from .model import ModelClasses, PredicateClass
    budget = as_budget(budget, "normalized sections")
    secs = normalized_sections(fc, dx, budget)
    sc = sections_category(fc, dx.reedy, budget, sections=secs)
    cat = sc.category
    cache: dict = {}

    def flags(m):
        if m not in cache:
            cache[m] = classify_normalized(sc.maps[m], dx, fiber_models).data["flags"]
        return cache[m]

    def factor(mode):
        def go(m):
            try:
                i, p = factorize_section_map(sc.maps[m], mode, fiber_models, degenerate=dx.degenerate)
                return (_intern(sc, i), _intern(sc, p))
            except (SectionError, KeyError, ValueError):
                return None
        return go

    def lifter(i, p, u, v):
        try:
            return _intern(sc, lift_section_square(sc.maps[i], sc.maps[p], sc.maps[u], sc.maps[v]))
        except (SectionError, KeyError, ValueError):
            return None
    mc = ModelClasses(cat, PredicateClass(cat, lambda m: flags(m)["weq"]),
                      PredicateClass(cat, lambda m: flags(m)["cof"]),
                      PredicateClass(cat, lambda m: flags(m)["fib"]),
                      factor("cof_then_trivfib"), factor("trivcof_then_fib"),
                      SectionsEngine(sc), name="Sect_N")
    mc.extra["flags"] = flags
    return sc, mc, lifter


@dataclass
class NormalizedLimit:
    limit: Any                 # kan.SectionLimit
    report: Report


def normalized_limits(fc: FiberedCategory, dx: DeltaIndexedCategory, shape: FiniteCategory,
                      objects: Mapping, morphisms: Mapping) -> NormalizedLimit:
    """Limit of normalized sections through the Segal system, certified normalized."""
    for i in shape.objects:
        if not is_normalized(objects[i], dx):
            raise ValueError(f"diagram object {i!r} is not normalized")
    res = limits_of_sections(fc, dx.segal, shape, objects, morphisms, rs=dx.reedy)
    rep = Report("normalized limit")
    rep.extend(validate_section(res.section))
    nrep = check_normalized(res.section, dx)
    rep.extend(nrep)
    if not nrep.data["normalized"]:
        rep.add("limit is normalized", (nrep.data["witness_arrow"], nrep.data["witness_object"]))
    return NormalizedLimit(res, rep)


def compare_limits(a, b, budget: Budget | int | None = None) -> Report:
    """Exactly one section map a -> b over the projections, and it is invertible."""
    rep = Report("limit comparison")
    Ya, Yb = a.section, b.section
    fc = Ya.fibered
    found = []
    for h in enumerate_maps(Ya, Yb, budget):
        ok = True
        for i, pa in a.projections.items():
            pb = b.projections[i]
            for x in Ya.values:
                c = fc.fibre(x).category
                if c.compose(pb.components[x], h.components[x]) != pa.components[x]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(h)
    if len(found) != 1:
        rep.add("unique comparison map", None, f"{len(found)} maps")
    elif not all(_iso(fc.fibre(x), found[0].components[x]) for x in Ya.values):
        rep.add("comparison is an isomorphism", None)
    return rep


# -- Set-valued simplicial sections over Delta^op ------------------------------------------------

def simplicial_section(X: SimplicialSet, cap: int | None = None) -> Section:
    """X as a section of the constant FinSet fibration over Delta^op<=n (Reedy structure on Delta^op)."""
    tsc = build_truncated_delta(X.n_max)
    dop = tsc.delta_op
    cap = cap if cap is not None else max(X.size(k) for k in dop.objects)
    fs = FinSetSlice(cap, strict=False)
    fc = ConstantFibration(dop, fs)
    values = {k: (k, X.size(k)) for k in dop.objects}
    arrows = {}
    for m in dop.morphisms:
        b, a = dop.src(m), dop.tgt(m)
        fn = tuple(X.index(a, X.act[(m, x)]) for x in X.simplices[b])
        arrows[m] = (m, X.size(b), (X.size(b), X.size(a), fn))
    return Section(fc, tsc.reedy_op, values, arrows)


# -- categories of simplices -------------------------------------------------------------------

@dataclass
class SimplexCategoryOf:
    base: FiniteCategory
    n_max: int
    category: FiniteCategory
    projection: FunctorData
    reedy: ReedyStructure
    fibres: dict = field(default_factory=dict)    # c -> (subcategory p^-1 c, initial object)


def _path(tau, i, j, c: FiniteCategory):
    objs, mors = tau
    out = c.identity(objs[i])
    for k in range(i, j):
        out = c.compose(mors[k], out)
    return out


def simplices_of(c: FiniteCategory, n: int) -> SimplexCategoryOf:
    """Delta C truncated at n: functors [k] -> C and monotone maps commuting over C."""
    sims = []
    for k in range(n + 1):
        for objs in itertools.product(c.objects, repeat=k + 1):
            homs = [c.hom(objs[i], objs[i + 1]) for i in range(k)]
            for mors in itertools.product(*homs):
                sims.append((tuple(objs), tuple(mors)))
    triples = []
    for s in sims:
        k = len(s[0]) - 1
        for t in sims:
            l = len(t[0]) - 1
            for f in monotone_maps(k, l):
                if any(t[0][f[i]] != s[0][i] for i in range(k + 1)):
                    continue
                if all(_path(t, f[i], f[i + 1], c) == s[1][i] for i in range(k)):
                    triples.append(((s, t, f), s, t))
    ident = {s: (s, s, tuple(range(len(s[0])))) for s in sims}

    def comp(g, f):
        if f[1] != g[0]:
            raise ValueError("not composable")
        return (f[0], g[1], tuple(g[2][i] for i in f[2]))
    cat = FiniteCategory(sims, triples, ident, comp, name=f"Delta{c.name}<={n}")

    def last(s):
        return s[0][-1]

    def pmor(m):
        s, t, f = m
        return _path(t, f[-1], len(t[0]) - 1, c)
    proj = FunctorData(cat, c, last, pmor, name="p")
    low = morphism_class(cat, (m for m in cat.morphisms if set(m[2]) == set(range(len(m[1][0])))))
    high = morphism_class(cat, (m for m in cat.morphisms if len(set(m[2])) == len(m[2])))
    rs = ReedyStructure(cat, low, high, {s: len(s[0]) - 1 for s in sims})
    out = SimplexCategoryOf(c, n, cat, proj, rs)
    for c0 in c.objects:
        objs = [s for s in sims if last(s) == c0]
        mors = [m for m in cat.morphisms if m[0] in objs and m[1] in objs and m[2][-1] == len(m[1][0]) - 1]
        sub = subcategory(cat, objs, mors, name=f"p^-1({c0})")
        out.fibres[c0] = (sub, find_initial(sub))
    return out


def zero_simplex(c0) -> tuple:
    return ((c0,), ())
