"""Model structures on finite categories.

Axiom M1 is read as finite bicompleteness: initial and terminal objects,
binary (co)products and (co)equalizers.  Every report records that reading
in ``data["M1_reading"]``.  The exhaustive axioms run under a
:class:`~reedykit.report.Budget`; exceeding it raises ``BudgetExceeded``
rather than returning a partial verdict.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable

from .fincat import (FiniteCategory, FunctorData, MorphismClass, NoLimit, SearchEngine,
                     discrete_category, morphism_class, parallel_pair_shape)
from .report import Budget, Report, as_budget, order_key
from .setfun import FinSetSlice

M1_READING = "finite limits and colimits (initial, terminal, binary (co)products, (co)equalizers)"


class PredicateClass:
    """A morphism class given by a membership test, for lazy categories."""

    def __init__(self, category: FiniteCategory, pred: Callable[[Any], bool], name: str = ""):
        self.category = category
        self.pred = pred
        self.name = name

    def __contains__(self, m) -> bool:
        return bool(self.pred(m))

    @property
    def members(self) -> frozenset:
        return frozenset(m for m in self.category.morphisms if self.pred(m))


@dataclass
class ModelClasses:
    category: FiniteCategory
    weq: Any
    cof: Any
    fib: Any
    factor_cf: Any = None     # m -> (cofibration, trivial fibration) or None
    factor_tcf: Any = None    # m -> (trivial cofibration, fibration) or None
    engine: Any = None        # (co)limit engine for M1; SearchEngine when None
    name: str = ""
    extra: dict = field(default_factory=dict)

    def factor(self, kind: str, m):
        table = self.factor_cf if kind == "cf" else self.factor_tcf
        if table is None:
            return None
        if callable(table):
            return table(m)
        return table.get(m)

    def get_engine(self):
        if self.engine is None:
            self.engine = SearchEngine(self.category)
        return self.engine


def classify(mc: ModelClasses, m) -> frozenset:
    """Subset of {weq, cof, fib, trivial_cof, trivial_fib} containing m."""
    c = mc.category
    if not c.has_morphism(m):
        raise KeyError(f"unknown morphism {m!r}")
    out = set()
    w, co, fi = m in mc.weq, m in mc.cof, m in mc.fib
    if w:
        out.add("weq")
    if co:
        out.add("cof")
    if fi:
        out.add("fib")
    if w and co:
        out.add("trivial_cof")
    if w and fi:
        out.add("trivial_fib")
    return frozenset(out)


# -- M1 ------------------------------------------------------------------------------

_EMPTY = discrete_category([], name="empty")
_PAIR = discrete_category([0, 1], name="pair")
_PARALLEL = parallel_pair_shape()


def _pair_diagram(c, a, b):
    return FunctorData(_PAIR, c, {0: a, 1: b}, {("id", 0): c.identity(a), ("id", 1): c.identity(b)})


def _parallel_diagram(c, f, g):
    a, b = c.src(f), c.tgt(f)
    return FunctorData(_PARALLEL, c, {0: a, 1: b},
                       {"id0": c.identity(a), "id1": c.identity(b), "s": f, "t": g})


def check_finite_bicomplete(c: FiniteCategory, engine=None, budget: Budget | int | None = None,
                            rep: Report | None = None) -> Report:
    rep = Report("finite bicompleteness") if rep is None else rep
    budget = as_budget(budget, "M1")
    eng = engine or SearchEngine(c)
    empty = FunctorData(_EMPTY, c, {}, {})

    def attempt(kind, witness, d):
        budget.spend(1, "M1")
        try:
            getattr(eng, kind)(d)
        except NoLimit as exc:
            rep.add(f"M1 {witness[0]}", witness[1:], str(exc))
    attempt("colimit", ("initial object",), empty)
    attempt("limit", ("terminal object",), empty)
    objs = sorted(c.objects, key=order_key)
    for a, b in itertools.combinations_with_replacement(objs, 2):
        attempt("limit", ("binary product", a, b), _pair_diagram(c, a, b))
        attempt("colimit", ("binary coproduct", a, b), _pair_diagram(c, a, b))
    for a in objs:
        for b in objs:
            hs = sorted(c.hom(a, b), key=order_key)
            for f, g in itertools.combinations(hs, 2):
                attempt("limit", ("equalizer", f, g), _parallel_diagram(c, f, g))
                attempt("colimit", ("coequalizer", f, g), _parallel_diagram(c, f, g))
    return rep


# -- validation -----------------------------------------------------------------------

def validate_model(mc: ModelClasses, budget: Budget | int | None = None,
                   axioms=("M1", "M2", "M3", "M4", "M5"), lifter=None) -> Report:
    """Check the model axioms exhaustively.

    ``lifter(i, p, u, v)`` may propose a lift for a square, which is then
    verified; without it every candidate map is searched.
    """
    c = mc.category
    rep = Report(f"model structure {mc.name}".strip())
    rep.data["M1_reading"] = M1_READING
    budget = as_budget(budget, "model axioms")
    counts = {}
    if "M1" in axioms:
        check_finite_bicomplete(c, mc.get_engine(), budget, rep)
    if "M2" in axioms:
        counts["M2"] = _check_subcategories(mc, rep, budget) + _check_two_of_three(mc, rep, budget)
    if "M3" in axioms:
        counts["M3"] = _check_retracts(mc, rep, budget)
    if "M4" in axioms:
        counts["M4"] = _check_lifting(mc, rep, budget, lifter)
    if "M5" in axioms:
        counts["M5"] = _check_factorizations(mc, rep, budget)
    per = {}
    for ax in axioms:
        per[ax] = not any(v.law.startswith(ax) for v in rep.violations)
    rep.data["axioms"] = per
    rep.data["checked"] = counts
    return rep


def _classes(mc):
    return (("W", mc.weq), ("C", mc.cof), ("F", mc.fib))


def _check_subcategories(mc, rep, budget) -> int:
    c = mc.category
    n = 0
    for x in c.objects:
        for name, cls in _classes(mc):
            if c.identity(x) not in cls:
                rep.add(f"M2 subcategory {name} contains identities", c.identity(x))
    for f in c.morphisms:
        for g in c.out_of(c.tgt(f)):
            budget.spend(1, "M2")
            n += 1
            gf = c.compose(g, f)
            for name, cls in _classes(mc):
                if f in cls and g in cls and gf not in cls:
                    rep.add(f"M2 subcategory {name} closed under composition", (g, f))
    return n


def _check_two_of_three(mc, rep, budget) -> int:
    c, W = mc.category, mc.weq
    n = 0
    for f in c.morphisms:
        for g in c.out_of(c.tgt(f)):
            budget.spend(1, "M2")
            n += 1
            gf = c.compose(g, f)
            flags = (f in W, g in W, gf in W)
            if sum(flags) == 2:
                rep.add("M2 3-for-2", (g, f), f"membership (f, g, gf) = {flags}")
    return n


def _retractions(c, a, x):
    """Pairs (i, r) with i: a -> x, r: x -> a, r o i = id."""
    ida = c.identity(a)
    return [(i, r) for i in c.hom(a, x) for r in c.hom(x, a) if c.compose(r, i) == ida]


def _check_retracts(mc, rep, budget) -> int:
    c = mc.category
    n = 0
    classes = _classes(mc)
    ret_cache: dict = {}

    def rets(a, x):
        if (a, x) not in ret_cache:
            ret_cache[(a, x)] = _retractions(c, a, x)
        return ret_cache[(a, x)]
    for f in c.morphisms:
        missing = [(name, cls) for name, cls in classes if f not in cls]
        if not missing:
            continue
        a, b = c.src(f), c.tgt(f)
        for g in c.morphisms:
            wanted = [name for name, cls in missing if g in cls]
            if not wanted:
                continue
            budget.spend(1, "M3")
            n += 1
            x, y = c.src(g), c.tgt(g)
            found = None
            for i1, r1 in rets(a, x):
                gi = c.compose(g, i1)
                for i2, r2 in rets(b, y):
                    if gi == c.compose(i2, f) and c.compose(f, r1) == c.compose(r2, g):
                        found = (i1, r1, i2, r2)
                        break
                if found:
                    break
            if found:
                for name in wanted:
                    rep.add(f"M3 retracts of {name}", (f, g, found))
    return n


def _check_lifting(mc, rep, budget, lifter) -> int:
    c = mc.category
    n = 0
    cofs = [m for m in c.morphisms if m in mc.cof]
    fibs = [m for m in c.morphisms if m in mc.fib]
    for i in cofs:
        a, b = c.src(i), c.tgt(i)
        iw = i in mc.weq
        for p in fibs:
            if not iw and p not in mc.weq:
                continue
            x, y = c.src(p), c.tgt(p)
            for u in c.hom(a, x):
                pu = c.compose(p, u)
                for v in c.hom(b, y):
                    if c.compose(v, i) != pu:
                        continue
                    budget.spend(1, "M4")
                    n += 1
                    h = lifter(i, p, u, v) if lifter is not None else None
                    if h is not None and c.compose(h, i) == u and c.compose(p, h) == v:
                        continue
                    if not any(c.compose(h, i) == u and c.compose(p, h) == v for h in c.hom(b, x)):
                        kind = "trivial cofibration" if iw else "trivial fibration"
                        rep.add(f"M4 lifting ({kind} side)", (i, p, u, v))
    return n


def _check_factorizations(mc, rep, budget) -> int:
    c = mc.category
    n = 0
    for m in c.morphisms:
        budget.spend(1, "M5")
        n += 1
        for kind, lcls, rcls in (("cf", "C", "FW"), ("tcf", "CW", "F")):
            fac = mc.factor(kind, m)
            if fac is None:
                rep.add(f"M5 factorization {lcls}-then-{rcls} exists", m)
                continue
            i, p = fac
            if c.compose(p, i) != m:
                rep.add(f"M5 factorization composes", (m, i, p))
            okl = i in mc.cof and (kind == "cf" or i in mc.weq)
            okr = p in mc.fib and (kind == "tcf" or p in mc.weq)
            if not (okl and okr):
                rep.add(f"M5 factorization classes {lcls}-then-{rcls}", (m, i, p))
    return n


# -- constructors -----------------------------------------------------------------------

def search_factorizations(c: FiniteCategory, left, right) -> dict:
    """For each morphism, the least (by id) pair (l, r) with r o l = m; None when absent."""
    out = {}
    for m in c.morphisms:
        s, t = c.src(m), c.tgt(m)
        best = None
        for z in sorted(c.objects, key=order_key):
            for l in sorted(c.hom(s, z), key=order_key):
                if l not in left:
                    continue
                for r in sorted(c.hom(z, t), key=order_key):
                    if r in right and c.compose(r, l) == m:
                        best = (l, r)
                        break
                if best:
                    break
            if best:
                break
        out[m] = best
    return out


def _intersection(c, a, b):
    return PredicateClass(c, lambda m: m in a and m in b)


def with_search_factorizations(mc: ModelClasses) -> ModelClasses:
    c = mc.category
    mc.factor_cf = search_factorizations(c, mc.cof, _intersection(c, mc.fib, mc.weq))
    mc.factor_tcf = search_factorizations(c, _intersection(c, mc.cof, mc.weq), mc.fib)
    return mc


def builtin_trivial(c: FiniteCategory, engine=None, check: bool = True) -> ModelClasses:
    """Weak equivalences the isomorphisms, every map a cofibration and a fibration."""
    eng = engine or SearchEngine(c)
    if check:
        rep = check_finite_bicomplete(c, eng)
        if not rep.ok:
            raise ValueError(f"{c.name or 'category'} is not finitely bicomplete: "
                             f"{rep.violations[0].law} {rep.violations[0].witness}")
    isos = PredicateClass(c, c.is_iso, "iso")
    every = PredicateClass(c, lambda m: True, "all")

    def cf(m):
        return (m, c.identity(c.tgt(m)))

    def tcf(m):
        return (c.identity(c.src(m)), m)
    return ModelClasses(c, isos, every, every, cf, tcf, eng, name="trivial")


def builtin_finset_fragment(n: int, strict: bool = True) -> ModelClasses:
    """FinSet<=n with weak equivalences all maps, cofibrations monos, fibrations epis.

    Factorizations are searched inside the fragment; when none exists the
    entry is None and validate_model reports it under M5.
    """
    fs = FinSetSlice(n, strict=strict)
    c = fs.category
    every = PredicateClass(c, lambda m: True, "all")
    mono = PredicateClass(c, fs.is_mono, "mono")
    epi = PredicateClass(c, fs.is_epi, "epi")
    cache: dict = {}

    def factor(kind):
        def go(m):
            key = (kind, m)
            if key not in cache:
                cache[key] = _finset_factor(fs, m)
            return cache[key]
        return go
    # M1 is decided by universal search inside the fragment: the ambient
    # colimit can exceed the cap while the fragment still has a colimit
    mc = ModelClasses(c, every, mono, epi, factor("cf"), factor("tcf"), None, name=f"finset<={n}")
    mc.extra["slice"] = fs
    return mc


def _finset_factor(fs: FinSetSlice, m):
    """Least mono-then-epi factorization: a copy of A plus the points of B missed by m.

    Strict slices refuse a middle object past the cap; non-strict ones
    answer in ambient FinSet.
    """
    a, b, fn = m
    na, nb = fs.size(a), fs.size(b)
    rest = [y for y in range(nb) if y not in set(fn)]
    z = na + len(rest)
    if z > fs.cap and fs.strict:
        return None
    i = (a, z, tuple(range(na)))
    p = (z, b, tuple(fn) + tuple(rest))
    return (i, p)


# -- model structures on posets -----------------------------------------------------------

def _rlp(c, left_members, candidates):
    """Members of candidates with the right lifting property against left_members (poset)."""
    out = set()
    for p in candidates:
        x, y = c.src(p), c.tgt(p)
        ok = True
        for i in left_members:
            a, b = c.src(i), c.tgt(i)
            if c.hom(a, x) and c.hom(b, y) and not c.hom(b, x):
                ok = False
                break
        if ok:
            out.add(p)
    return out


def _llp(c, right_members, candidates):
    out = set()
    for i in candidates:
        a, b = c.src(i), c.tgt(i)
        ok = True
        for p in right_members:
            x, y = c.src(p), c.tgt(p)
            if c.hom(a, x) and c.hom(b, y) and not c.hom(b, x):
                ok = False
                break
        if ok:
            out.add(i)
    return out


def poset_model_structures(c: FiniteCategory, limit: int | None = None) -> list[ModelClasses]:
    """All model structures on a finite poset (as a thin category), by brute force.

    Weak equivalences range over 3-for-2 subsets; cofibrations determine
    fibrations as the right lifting class of trivial cofibrations, and the
    remaining axioms are checked directly.
    """
    mors = sorted(c.morphisms, key=order_key)
    ids = {m for m in mors if c.is_identity(m)}
    non = [m for m in mors if m not in ids]
    if len(non) > 10:
        raise ValueError("poset too large for brute-force model structures")
    out = []
    subsets = [ids | set(s) for k in range(len(non) + 1) for s in itertools.combinations(non, k)]
    for W in subsets:
        if not _two_of_three_ok(c, W):
            continue
        for C in subsets:
            CW = C & W
            F = _rlp(c, CW, mors)
            FW = F & W
            if _llp(c, FW, mors) != C or _llp(c, F, mors) != CW or _rlp(c, C, mors) != FW:
                continue
            mc = ModelClasses(c, morphism_class(c, W), morphism_class(c, C), morphism_class(c, F),
                              name="poset")
            with_search_factorizations(mc)
            if all(mc.factor_cf[m] is not None and mc.factor_tcf[m] is not None for m in mors):
                out.append(mc)
                if limit is not None and len(out) >= limit:
                    return out
    return out


def _two_of_three_ok(c, W) -> bool:
    for f in c.morphisms:
        for g in c.out_of(c.tgt(f)):
            if (f in W) + (g in W) + (c.compose(g, f) in W) == 2:
                return False
    return True
