"""Adjoint constructions on categories of sections.

Pushforward along an opfibration of bases, Noether matching systems,
right Kan extension along a closed immersion, base change, limits of
sections of a semifibration computed through its left class, and right
adjoints to restriction along right-closed factorization functors.

Sections over a base functor F: D -> C live in :class:`PulledBack`, whose
fibres are literally the fibres of the parent, so local values can be
compared across routes.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Mapping

from .fib import FiberedCategory, Fibre, LiftError, classify_projection, mate_component
from .fincat import Cone, FiniteCategory, FunctorData, NoLimit, comma_under, product_category, subcategory
from .reedy import (ReedyStructure, check_closed_immersion, direct_structure, factorizations,
                    inverse_structure, noether_bound)
from .report import Budget, Report, as_budget, order_key
from .sect import (Section, SectionError, SectionMap, _pullback, enumerate_maps,
                   enumerate_sections, validate_section, validate_section_map)


# -- pulled-back fibrations ---------------------------------------------------------

class PulledBack(FiberedCategory):
    """F^*E for a base functor F: D -> C.

    Objects are (d, X) with X a total object of E over F(d); morphisms are
    (m, a) with a over F(m).  Pulling back a PulledBack composes the functors,
    so fibres are always fibres of the root fibration.
    """

    def __init__(self, parent: FiberedCategory, functor: FunctorData, name: str = ""):
        if isinstance(parent, PulledBack):
            inner, outer = parent.functor, functor
            functor = FunctorData(outer.source, inner.target,
                                  lambda d: inner.obj(outer.obj(d)),
                                  lambda m: inner.mor(outer.mor(m)), name="composite")
            parent = parent.parent
        self.parent = parent
        self.functor = functor
        F, E = functor, parent
        D = F.source

        def hom(A, B):
            (d, X), (d2, Y) = A, B
            return [(m, a) for m in D.hom(d, d2) for a in E.maps_over(X, Y, F.mor(m))]

        def comp(q, p):
            return (D.compose(q[0], p[0]), E.total.compose(q[1], p[1]))
        objs = [(d, X) for d in D.objects for X in E.objects_over(F.obj(d))]
        total = FiniteCategory(objs, identity=lambda A: (D.identity(A[0]), E.total.identity(A[1])),
                               compose=comp, hom=hom,
                               src=lambda m: (D.src(m[0]), E.total.src(m[1])),
                               tgt=lambda m: (D.tgt(m[0]), E.total.tgt(m[1])),
                               name=f"{F.name}^*{E.name}")
        proj = FunctorData(total, D, lambda A: A[0], lambda m: m[0], name="p")
        super().__init__(total, D, proj, name=name or f"{F.name}^*{E.name}")

    def objects_over(self, d):
        return tuple((d, X) for X in self.parent.objects_over(self.functor.obj(d)))

    def maps_over(self, X, Y, f):
        return tuple((f, a) for a in self.parent.maps_over(X[1], Y[1], self.functor.mor(f)))

    def _make_fibre(self, d) -> Fibre:
        F, E, D = self.functor, self.parent, self.base
        pf = E.fibre(F.obj(d))
        idd = D.identity(d)
        return Fibre(d, pf.category, pf.engine,
                     to_total_obj=lambda x: (d, pf.to_total_obj(x)),
                     to_local_obj=lambda A: pf.to_local_obj(A[1]),
                     to_total_mor=lambda a: (idd, pf.to_total_mor(a)),
                     to_local_mor=lambda m: pf.to_local_mor(m[1]))

    def _wrap(self, m, f):
        return None if m is None else (f, m)

    def cart(self, f, Y):
        return self._wrap(self.parent.cart(self.functor.mor(f), Y[1]), f)

    def opcart(self, f, X):
        return self._wrap(self.parent.opcart(self.functor.mor(f), X[1]), f)

    def is_cartesian(self, m) -> bool:
        return self.parent.is_cartesian(m[1])

    def is_opcartesian(self, m) -> bool:
        return self.parent.is_opcartesian(m[1])

    def push(self, g, x):
        return self.parent.push(self.functor.mor(g), x)

    def pull(self, k, y):
        return self.parent.pull(self.functor.mor(k), y)

    def push_mor(self, g, phi):
        return self.parent.push_mor(self.functor.mor(g), phi)

    def pull_mor(self, k, psi):
        return self.parent.pull_mor(self.functor.mor(k), psi)

    def opcart_local(self, g, x):
        return (g, self.parent.opcart_local(self.functor.mor(g), x))

    def cart_local(self, k, y):
        return (k, self.parent.cart_local(self.functor.mor(k), y))

    def opcart_factor(self, m):
        return self.parent.opcart_factor(m[1])

    def cart_factor(self, m):
        return self.parent.cart_factor(m[1])

    def opcart_factor_from(self, g, x, m):
        return self.parent.opcart_factor_from(self.functor.mor(g), x, m[1])

    def cart_factor_from(self, k, y, m):
        return self.parent.cart_factor_from(self.functor.mor(k), y, m[1])

    def from_opcart(self, g, x, phi):
        return (g, self.parent.from_opcart(self.functor.mor(g), x, phi))

    def from_cart(self, k, y, psi):
        return (k, self.parent.from_cart(self.functor.mor(k), y, psi))


def pull_back(fc: FiberedCategory, F: FunctorData, name: str = "") -> PulledBack:
    if F.target is not fc.base and set(F.target.objects) != set(fc.base.objects):
        raise ValueError("functor does not land in the base")
    return PulledBack(fc, F, name)


def base_structure(c: FiniteCategory) -> ReedyStructure:
    """Some Reedy structure on c, used only to order objects of sections."""
    try:
        return direct_structure(c)
    except ValueError:
        return inverse_structure(c)


def noether_degree(c: FiniteCategory) -> dict:
    nd = noether_bound(c)
    if nd is None:
        raise ValueError(f"{c.name or 'category'} is not Noether")
    if any(c.is_iso(m) and not c.is_identity(m) for m in c.morphisms):
        raise ValueError("Noether bases with non-identity isomorphisms are not supported")
    return dict(nd.bound)


def _by_degree(deg: Mapping) -> list:
    return sorted(deg, key=lambda x: (deg[x], order_key(x)))


def _root_mor(S: Section, m):
    """The arrow of S over m as a morphism of the root fibration."""
    a = S.arrow(m)
    return a[1] if isinstance(S.fibered, PulledBack) else a


def _into(fc: FiberedCategory, u, root_mor):
    """A root-fibration morphism over u, as a morphism of fc."""
    return (u, root_mor) if isinstance(fc, PulledBack) else root_mor


def restrict_section(S: Section, F: FunctorData, rs: ReedyStructure | None = None,
                     fibered: PulledBack | None = None) -> Section:
    """F^*S over the source of F."""
    pb = fibered or pull_back(S.fibered, F)
    D = F.source
    rs = rs or base_structure(D)
    values = {d: pb.fibre(d).to_total_obj(S.local(F.obj(d))) for d in D.objects}
    arrows = {m: (m, _root_mor(S, F.mor(m))) for m in D.morphisms}
    return Section(pb, rs, values, arrows)


def _unique_over(fc: FiberedCategory, u, X, Y, eqs, what: str):
    """The unique total map X -> Y over u satisfying eqs; X, Y total objects."""
    found = [t for t in fc.maps_over(X, Y, u) if eqs(t)]
    if len(found) != 1:
        raise SectionError(f"{len(found)} candidate structure maps over {u!r} ({what})")
    return found[0]


def _assemble(fc, rs, values: Mapping, arrows: Mapping) -> Section:
    s = Section(fc, rs, values, arrows)
    base, total = rs.category, fc.total
    for x in values:
        s.arrows.setdefault(base.identity(x), total.identity(values[x]))
    return s


# -- pushforward along an opfibration -------------------------------------------------

def pushforward_opfib(F: FunctorData, T: Section, rs: ReedyStructure | None = None) -> Section:
    """F_!T(c) = colim over the strict fibre D(c) of T, for F: D -> C an opfibration."""
    pb = T.fibered
    if not isinstance(pb, PulledBack):
        raise TypeError("T must be a section of a pulled-back fibration")
    fc = pb.parent
    D, C = F.source, F.target
    base_fc = FiberedCategory(D, C, F, name="F")
    flags = classify_projection(base_fc).data["flags"]
    if not flags.get("opfibration"):
        raise ValueError("F is not an opfibration")
    rs = rs or base_structure(C)
    total = fc.total
    values, cones = {}, {}
    for c in C.objects:
        objs = [d for d in D.objects if F.obj(d) == c]
        mors = [m for m in D.morphisms if F.mor(m) == C.identity(c) and D.src(m) in objs]
        shape = subcategory(D, objs, mors, name=f"D({c})")
        fib = fc.fibre(c)
        dg = FunctorData(shape, fib.category, {d: T.local(d) for d in objs},
                         {m: pb.fibre(D.src(m)).to_local_mor(T.arrow(m)) for m in mors})
        try:
            cone = fib.engine.colimit(dg)
        except NoLimit as exc:
            raise SectionError(f"no colimit over the fibre D({c!r}): {exc}") from exc
        cones[c] = cone
        values[c] = fib.to_total_obj(cone.apex)
    arrows = {}
    for u in C.morphisms:
        if C.is_identity(u):
            continue
        c, c2 = C.src(u), C.tgt(u)
        fa, fb = fc.fibre(c), fc.fibre(c2)

        def eqs(t, u=u, c=c, c2=c2, fa=fa, fb=fb):
            for d, leg in cones[c].legs.items():
                lift = base_fc.opcart(u, d)
                d2 = D.tgt(lift)
                lhs = total.compose(t, fa.to_total_mor(leg))
                rhs = total.compose(fb.to_total_mor(cones[c2].legs[d2]), T.arrow(lift)[1])
                if lhs != rhs:
                    return False
            return True
        arrows[u] = _unique_over(fc, u, values[c], values[c2], eqs, "pushforward")
    out = _assemble(fc, rs, values, arrows)
    out._cache["cocones"] = cones
    return out


# -- Noether matching systems --------------------------------------------------------------

@dataclass
class MatchingSystem:
    level: int
    entries: dict = field(default_factory=dict)   # c -> Cone in E(c)

    def obj(self, c):
        return self.entries[c].apex


def _res_diagram(fc: FiberedCategory, S: Section, c, maps) -> FunctorData:
    """Res_c S on the full subcategory of c\\C on ``maps``: f |-> f^*S(tgt f)."""
    base, total = fc.base, fc.total
    mset = set(maps)
    comma, _ = comma_under(base, c, lambda f: f in mset)
    fib = fc.fibre(c).category
    objs = {f: fc.pull(f, S.local(base.tgt(f))) for f in comma.objects}
    mors = {}
    for m in comma.morphisms:
        f, g, u = m
        if base.is_identity(u):
            mors[m] = fib.identity(objs[f])
            continue
        t1, t2 = base.tgt(f), base.tgt(g)
        tm = total.compose(S.arrow(u), fc.cart_local(f, S.local(t1)))
        mors[m] = fc.cart_factor_from(g, S.local(t2), tm)
    return FunctorData(comma, fib, objs, mors, name=f"Res_{c}")


def _res_limit(fc, S, c, maps) -> Cone:
    try:
        return fc.fibre(c).engine.limit(_res_diagram(fc, S, c, maps))
    except NoLimit as exc:
        raise SectionError(f"no limit of Res_{c!r}: {exc}") from exc


def matching_system(fc: FiberedCategory, S: Section, n: int, degree: Mapping | None = None
                    ) -> MatchingSystem:
    """c |-> lim over c\\C_{n-1} of Res_c S, for every c of degree n."""
    base = fc.base
    deg = dict(degree) if degree is not None else noether_degree(base)
    ms = MatchingSystem(n)
    for c in _by_degree(deg):
        if deg[c] != n:
            continue
        maps = [f for f in base.out_of(c) if deg[base.tgt(f)] <= n - 1]
        missing = [f for f in maps if base.tgt(f) not in S.values]
        if missing:
            raise SectionError(f"section is undefined below {c!r}")
        ms.entries[c] = _res_limit(fc, S, c, maps)
    return ms


# -- right Kan extension along a closed immersion --------------------------------------------

def _preimages(F: FunctorData):
    return ({F.obj(d): d for d in F.source.objects},
            {F.mor(m): m for m in F.source.morphisms})


def ran_closed_immersion(F: FunctorData, X: Section, rs: ReedyStructure | None = None,
                         check: bool = True, fibered: FiberedCategory | None = None) -> Section:
    """Ran_F X by induction on the Noether degree of the target.

    X is a section of F^*E; ``fibered`` is E (defaults to the root fibration).
    """
    pb = X.fibered
    if not isinstance(pb, PulledBack):
        raise TypeError("X must be a section of a pulled-back fibration")
    fc = fibered if fibered is not None else pb.parent
    C = F.target
    if check:
        rep = check_closed_immersion(F)
        if not rep.ok:
            raise ValueError(f"not a closed immersion: {rep.laws()[:3]}")
    deg = noether_degree(C)
    rs = rs or base_structure(C)
    pre_obj, pre_mor = _preimages(F)
    R = Section(fc, rs, {}, {})
    cones = {}
    for x in _by_degree(deg):
        if x in pre_obj:
            R.values[x] = fc.fibre(x).to_total_obj(X.local(pre_obj[x]))
            for u in C.out_of(x):
                R.arrows[u] = _into(fc, u, X.arrow(pre_mor[u])[1])
            continue
        maps = [u for u in C.out_of(x) if not C.is_identity(u)]
        cone = _res_limit(fc, R, x, maps)
        cones[x] = cone
        R.values[x] = fc.fibre(x).to_total_obj(cone.apex)
        R.arrows[C.identity(x)] = fc.total.identity(R.values[x])
        for u in maps:
            R.arrows[u] = fc.from_cart(u, R.local(C.tgt(u)), cone.legs[u])
        R._cache.clear()
    R._cache["ran_cones"] = cones
    return R


def ran_restricts_back(F: FunctorData, X: Section, R: Section) -> Report:
    """F^*Ran_F X == X, compared value by value."""
    rep = Report("F^* Ran_F X = X")
    back = restrict_section(R, F, X.base_reedy, X.fibered)
    for d in F.source.objects:
        if back.local(d) != X.local(d):
            rep.add("values agree", d)
    for m in F.source.morphisms:
        if back.arrow(m) != X.arrow(m):
            rep.add("arrows agree", m)
    return rep


# -- base change -------------------------------------------------------------------------

@dataclass
class BaseChange:
    c: Any
    comma: FiniteCategory
    lhs: Section
    rhs: Section
    comparison: dict


def _comma_data(F: FunctorData, c):
    C, D = F.target, F.source
    cC, pi = comma_under(C, c)
    pre_obj, pre_mor = _preimages(F)
    cD = subcategory(cC, [f for f in cC.objects if C.tgt(f) in pre_obj], name=f"{c}\\D")
    Fc = FunctorData(cD, cC, lambda f: f, lambda m: m, name="F_c")
    pi_p = FunctorData(cD, D, lambda f: pre_obj[C.tgt(f)], lambda m: pre_mor[m[2]], name="pi'")
    return cC, pi, cD, Fc, pi_p


def base_change(F: FunctorData, c, X: Section) -> BaseChange:
    """Both routes pi^* F_* X and F_{c,*} pi'^* X with the comparison map between them."""
    fc = X.fibered.parent
    cC, pi, cD, Fc, pi_p = _comma_data(F, c)
    R = ran_closed_immersion(F, X, check=False)
    lhs = restrict_section(R, pi, base_structure(cC))
    Epi = lhs.fibered
    pX = restrict_section(X, pi_p, base_structure(cD), pull_back(Epi, Fc))
    rhs = ran_closed_immersion(Fc, pX, lhs.base_reedy, check=False, fibered=Epi)
    cones = rhs._cache["ran_cones"]
    deg = noether_degree(cC)
    cmp = {}
    for f in _by_degree(deg):
        fib = Epi.fibre(f)
        if f not in cones:
            cmp[f] = fib.category.identity(lhs.local(f))
            continue
        legs = {}
        for v in cones[f].legs:
            t = cC.tgt(v)
            legs[v] = fib.category.compose(Epi.pull_mor(v, cmp[t]), Epi.cart_factor(lhs.arrow(v)))
        cmp[f] = fib.engine.induced_to_limit(cones[f], legs, lhs.local(f))
    return BaseChange(c, cC, lhs, rhs, cmp)


def _is_iso(fib, m) -> bool:
    eng = fib.engine
    return eng.is_iso(m) if hasattr(eng, "is_iso") else fib.category.is_iso(m)


def base_change_check(F: FunctorData, c, sections: list | None = None,
                      budget: Budget | int | None = None) -> Report:
    """pi^* F_* -> F_{c,*} pi'^* is an isomorphism, checked on every given (or every) section."""
    rep = Report(f"base change at {c!r}")
    if sections is None:
        raise ValueError("pass the input sections (see all_sections)")
    budget = as_budget(budget, "base change")
    checked = identical = 0
    for X in sections:
        budget.spend(1, "base change inputs")
        bc = base_change(F, c, X)
        Epi = bc.lhs.fibered
        for f, m in bc.comparison.items():
            if not _is_iso(Epi.fibre(f), m):
                rep.add("comparison is an isomorphism", (X.key(), f))
        checked += 1
        identical += bc.rhs.key() == bc.lhs.key()
    rep.data["checked"] = checked
    rep.data["identical"] = identical
    return rep


def all_sections(fc: FiberedCategory, rs: ReedyStructure | None = None,
                 budget: Budget | int | None = None) -> list:
    return enumerate_sections(fc, rs or base_structure(fc.base), budget)


# -- limits of sections through the left class -----------------------------------------------

def _factor_fn(fs):
    """m -> (z, l, r) with m = r o l for a FactorizationSystem or ReedyStructure."""
    if isinstance(fs, ReedyStructure):
        c, L, R = fs.category, fs.lowering.members, fs.raising.members
    else:
        c, L, R = fs.category, fs.left.members, fs.right.members
    cache = {}

    def go(m):
        if m not in cache:
            facs = factorizations(c, L, R, m)
            if not facs:
                raise ValueError(f"{m!r} has no factorization")
            cache[m] = facs[0]
        return cache[m]
    return c, set(L), set(R), go


@dataclass
class SectionLimit:
    section: Section
    projections: dict        # i -> SectionMap Y -> X_i
    strata: dict             # y -> dict of cones used at y
    degree: dict


def _lim(fib, shape, objs, mors):
    d = FunctorData(shape, fib.category, objs, mors)
    try:
        return fib.engine.limit(d)
    except NoLimit as exc:
        raise SectionError(f"fibre limit missing: {exc}") from exc


def limits_of_sections(fc: FiberedCategory, fs, shape: FiniteCategory, objects: Mapping,
                       morphisms: Mapping, rs: ReedyStructure | None = None) -> SectionLimit:
    """lim_I X_i in Sect(C, E), built on the left class and extended to the right class.

    On L the value at y is the pullback of lim_I X_i(y) -> lim_I Mat X_i(y) <- Mat Y(y);
    a right-class map r: c -> d gets r_!Y(c) -> Y(d) from the mate composites
    r_!k^*Y(c') -> l^*t_!Y(c') -> l^*Y(d') of the squares l r = t k.
    """
    C, L, R, factor = _factor_fn(fs)
    rs = rs or (fs if isinstance(fs, ReedyStructure) else base_structure(C))
    total = fc.total
    Lcat = subcategory(C, C.objects, L, name="L")
    deg = noether_degree(Lcat)
    I = shape
    objs_I = list(I.objects)
    Y = Section(fc, rs, {}, {})
    proj = {i: {} for i in objs_I}
    strata = {}

    def comp_at(alpha, x):
        if I.is_identity(alpha):
            return fc.fibre(x).category.identity(objects[I.src(alpha)].local(x))
        return morphisms[alpha].components[x]

    for y in _by_degree(deg):
        fib = fc.fibre(y)
        c = fib.category
        A = _lim(fib, I, {i: objects[i].local(y) for i in objs_I},
                 {a: comp_at(a, y) for a in I.morphisms})
        lows = [l for l in Lcat.out_of(y) if not C.is_identity(l)]
        st = {"A": A}
        if not lows:
            value, pa = A.apex, c.identity(A.apex)
            to_mat = None
        else:
            mdiag = _res_diagram(fc, Y, y, lows)
            try:
                M = fib.engine.limit(mdiag)
            except NoLimit as exc:
                raise SectionError(f"no matching object at {y!r}: {exc}") from exc
            comma = mdiag.source
            pshape = product_category(comma, I, name="Mat x I")
            bobjs, bmors = {}, {}
            for (l, i) in pshape.objects:
                bobjs[(l, i)] = fc.pull(l, objects[i].local(C.tgt(l)))
            for m in pshape.morphisms:
                (l1, l2, u), a = m
                i, j = I.src(a), I.tgt(a)
                t1, t2 = C.tgt(l1), C.tgt(l2)
                Xi, Xj = objects[i], objects[j]
                tm = total.compose(fc.fibre(t1).to_total_mor(comp_at(a, t1)),
                                   fc.cart_local(l1, Xi.local(t1)))
                tm = total.compose(Xj.arrow(u), tm)
                bmors[m] = fc.cart_factor_from(l2, Xj.local(t2), tm)
            B = _lim(fib, pshape, bobjs, bmors)
            u_map = fib.engine.induced_to_limit(
                B, {(l, i): c.compose(fc.cart_factor(objects[i].arrow(l)), A.legs[i])
                    for (l, i) in pshape.objects}, A.apex)
            v_map = fib.engine.induced_to_limit(
                B, {(l, i): c.compose(fc.pull_mor(l, proj[i][C.tgt(l)]), M.legs[l])
                    for (l, i) in pshape.objects}, M.apex)
            try:
                P = _pullback(fib, (u_map, v_map))
            except NoLimit as exc:
                raise SectionError(f"no pullback at {y!r}: {exc}") from exc
            value, pa = P.apex, P.legs["a"]
            to_mat = P.legs["b"]
            st.update({"M": M, "B": B, "P": P, "u": u_map, "v": v_map})
        Y.values[y] = fib.to_total_obj(value)
        Y.arrows[C.identity(y)] = total.identity(Y.values[y])
        for i in objs_I:
            proj[i][y] = c.compose(A.legs[i], pa)
        for l in lows:
            Y.arrows[l] = fc.from_cart(l, Y.local(C.tgt(l)), c.compose(st["M"].legs[l], to_mat))
        strata[y] = st
        Y._cache.clear()
    # right-class structure maps, by degree of the target
    rmaps = sorted((r for r in R if not C.is_identity(r)),
                   key=lambda r: (deg[C.tgt(r)], order_key(r)))
    for r in rmaps:
        c0, d = C.src(r), C.tgt(r)
        fib = fc.fibre(d)
        cat = fib.category
        src = fc.push(r, Y.local(c0))
        st = strata[d]
        A = st["A"]
        try:
            fa = fib.engine.induced_to_limit(
                A, {i: cat.compose(fc.opcart_factor(objects[i].arrow(r)), fc.push_mor(r, proj[i][c0]))
                    for i in objs_I}, src)
            if "P" not in st:
                f1 = fa
            else:
                legs_b = {}
                for l in st["M"].legs:
                    _, k, t = factor(C.compose(l, r))
                    c1 = C.tgt(k)
                    first = fc.push_mor(r, fc.cart_factor(Y.arrow(k)))
                    middle = mate_component(fc, k, r, t, l, Y.local(c1))
                    last = fc.pull_mor(l, fc.opcart_factor(Y.arrow(t)))
                    legs_b[l] = cat.compose(last, cat.compose(middle, first))
                fb = fib.engine.induced_to_limit(st["M"], legs_b, src)
                f1 = fib.engine.induced_to_limit(
                    st["P"], {"a": fa, "b": fb, "c": cat.compose(st["u"], fa)}, src)
        except (ValueError, LiftError) as exc:
            raise SectionError(f"right-class structure map over {r!r} does not exist: {exc}") from exc
        Y.arrows[r] = fc.from_opcart(r, Y.local(c0), f1)
    for m in C.morphisms:
        if m in Y.arrows:
            continue
        _, l, r = factor(m)
        Y.arrows[m] = total.compose(Y.arrows[r], Y.arrows[l])
    out = Section(fc, rs, Y.values, Y.arrows)
    projections = {i: SectionMap(out, objects[i], proj[i]) for i in objs_I}
    return SectionLimit(out, projections, strata, deg)


def check_limit(res: SectionLimit, shape: FiniteCategory, objects: Mapping, morphisms: Mapping,
                test_sections: list, budget: Budget | int | None = None) -> Report:
    """Section-ness, projection naturality, the stratum pullback squares and the universal property."""
    rep = Report("limit of sections")
    Y = res.section
    fc = Y.fibered
    rep.extend(validate_section(Y))
    for i, p in res.projections.items():
        for v in validate_section_map(p).violations:
            rep.add(f"projection {i!r}: {v.law}", v.witness)
    for a in shape.morphisms:
        if shape.is_identity(a):
            continue
        i, j = shape.src(a), shape.tgt(a)
        for y in Y.values:
            cat = fc.fibre(y).category
            if cat.compose(morphisms[a].components[y], res.projections[i].components[y]) != \
                    res.projections[j].components[y]:
                rep.add("projections form a cone", (a, y))
    for y, st in res.strata.items():
        if "P" in st:
            fib = fc.fibre(y)
            again = _pullback(fib, (st["u"], st["v"]))
            if again.apex != st["P"].apex:
                rep.add("stratum pullback recomputes", y)
    budget = as_budget(budget, "limit universal property")
    checked = 0
    for Z in test_sections:
        fams = [enumerate_maps(Z, objects[i], budget) for i in shape.objects]
        maps_to_Y = enumerate_maps(Z, Y, budget)
        for fam in itertools.product(*fams):
            budget.spend(1, "cones")
            legs = dict(zip(shape.objects, fam))
            if not _is_cone(fc, shape, morphisms, legs):
                continue
            checked += 1
            n = sum(1 for h in maps_to_Y
                    if all(_compose_comps(fc, res.projections[i], h) == legs[i].components
                           for i in shape.objects))
            if n != 1:
                rep.add("unique factorization through the limit", Z.key(), f"{n} factorizations")
    rep.data["cones_checked"] = checked
    return rep


def _compose_comps(fc, g: SectionMap, f: SectionMap) -> dict:
    return {x: fc.fibre(x).category.compose(g.components[x], f.components[x]) for x in f.components}


def _is_cone(fc, shape, morphisms, legs) -> bool:
    for a in shape.morphisms:
        if shape.is_identity(a):
            continue
        i, j = shape.src(a), shape.tgt(a)
        if _compose_comps(fc, morphisms[a], legs[i]) != legs[j].components:
            return False
    return True


# -- right adjoints along right-closed factorization functors ------------------------------------

def check_right_closed(F: FunctorData, fs_src, fs_tgt) -> Report:
    """F(L') in L, F(R') in R, and every c -> F(c') factors as c -l-> F(c'') -F(r)-> F(c')."""
    rep = Report("right-closed factorization functor")
    Cp, Lp, Rp, _ = _factor_fn(fs_src)
    C, L, R, factor = _factor_fn(fs_tgt)
    for m in Cp.morphisms:
        if m in Lp and F.mor(m) not in L:
            rep.add("F preserves the left class", m)
        if m in Rp and F.mor(m) not in R:
            rep.add("F preserves the right class", m)
    img_R = {F.mor(r): r for r in Rp}
    for cp in Cp.objects:
        for f in C.into(F.obj(cp)):
            ok = False
            for z, l, r in factorizations(C, L, R, f):
                if r in img_R and F.obj(Cp.src(img_R[r])) == z:
                    ok = True
                    break
            if not ok:
                rep.add("right-closed factorization", f)
    return rep


def right_adjoint_sections(F: FunctorData, X: Section, fs_src, fs_tgt,
                           rs: ReedyStructure | None = None, check: bool = True) -> Section:
    """F_*X when F_L: L' -> L is a closed immersion of Noether categories.

    On L the values are Ran_{F_L} of X restricted to L'; a right-class map
    r: c1 -> c2 gets r_!Y(c1) -> Y(c2) from the mates of the squares
    l r = t k (into Y(c2) as a limit) or, when c2 lies in the image, from
    the section structure of X over the preimage of r.
    """
    pb = X.fibered
    if not isinstance(pb, PulledBack):
        raise TypeError("X must be a section of a pulled-back fibration")
    fc = pb.parent
    Cp, Lp, Rp, _ = _factor_fn(fs_src)
    C, L, R, factor = _factor_fn(fs_tgt)
    if check:
        rc = check_right_closed(F, fs_src, fs_tgt)
        if not rc.ok:
            raise ValueError(f"F is not right-closed: {rc.laws()[:3]}")
    Lp_cat = subcategory(Cp, Cp.objects, Lp, name="L'")
    L_cat = subcategory(C, C.objects, L, name="L")
    FL = FunctorData(Lp_cat, L_cat, F.obj, F.mor, name="F_L")
    if check:
        ci = check_closed_immersion(FL)
        if not ci.ok:
            raise ValueError(f"F_L is not a closed immersion: {ci.laws()[:3]}")
    total = fc.total
    rs = rs or (fs_tgt if isinstance(fs_tgt, ReedyStructure) else base_structure(C))
    # Ran on the left parts
    fc_L = pull_back(fc, FunctorData(L_cat, C, lambda x: x, lambda m: m, name="incl"))
    XL = Section(pull_back(fc_L, FL), base_structure(Lp_cat),
                 {d: (d, X.values[d][1]) for d in Cp.objects},
                 {m: (m, X.arrow(m)[1]) for m in Lp})
    RL = ran_closed_immersion(FL, XL, base_structure(L_cat), check=False, fibered=fc_L)
    cones = RL._cache["ran_cones"]
    deg = noether_degree(L_cat)
    pre_obj, pre_mor = _preimages(F)
    Y = Section(fc, rs, {x: RL.values[x][1] for x in C.objects},
                {m: RL.arrow(m)[1] for m in L})
    rmaps = sorted((r for r in R if not C.is_identity(r)),
                   key=lambda r: (deg[C.tgt(r)], order_key(r)))
    for r in rmaps:
        c1, c2 = C.src(r), C.tgt(r)
        if c2 in pre_obj:
            cands = [e for e in Cp.hom(pre_obj.get(c1), pre_obj[c2]) if F.mor(e) == r] \
                if c1 in pre_obj else []
            if len(cands) != 1:
                raise SectionError(f"right-class map {r!r} into the image has no unique preimage")
            Y.arrows[r] = X.arrow(cands[0])[1]
            continue
        fib = fc.fibre(c2)
        cat = fib.category
        src = fc.push(r, Y.local(c1))
        legs = {}
        try:
            for l in cones[c2].legs:
                _, k, t = factor(C.compose(l, r))
                first = fc.push_mor(r, fc.cart_factor(Y.arrow(k)))
                middle = mate_component(fc, k, r, t, l, Y.local(C.tgt(k)))
                last = fc.pull_mor(l, fc.opcart_factor(Y.arrow(t)))
                legs[l] = cat.compose(last, cat.compose(middle, first))
            f1 = fib.engine.induced_to_limit(cones[c2], legs, src)
        except (ValueError, LiftError) as exc:
            raise SectionError(f"right-class structure map over {r!r} does not exist: {exc}") from exc
        Y.arrows[r] = fc.from_opcart(r, Y.local(c1), f1)
    for m in C.morphisms:
        if m not in Y.arrows:
            _, l, r = factor(m)
            Y.arrows[m] = total.compose(Y.arrows[r], Y.arrows[l])
    return Section(fc, rs, Y.values, Y.arrows)


# -- hom-count certificates ------------------------------------------------------------------

def hom_count(S: Section, T: Section, budget: Budget | None = None) -> int:
    return len(enumerate_maps(S, T, budget))


def adjunction_counts(left_pairs: list) -> Report:
    """Each entry (label, lhs_count, rhs_count) must have equal counts."""
    rep = Report("adjunction hom counts")
    for label, a, b in left_pairs:
        if a != b:
            rep.add("hom counts agree", label, f"{a} != {b}")
    rep.data["pairs"] = len(left_pairs)
    return rep
