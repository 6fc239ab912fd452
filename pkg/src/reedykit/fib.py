"""Fibered categories over finite bases.

A :class:`FiberedCategory` exposes two layers.  The total layer works with
morphisms of the total category and is what the validators inspect.  The
local layer works inside fibres (``fibre(c).category``) and is what the
section machinery uses: transition functors ``push``/``pull`` on objects
and morphisms, and the factorization of a total morphism through a chosen
(op)cartesian lift.  The generic class answers everything by universal-
property search; the Grothendieck constructions override the local layer
with their closed formulas.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

from .fincat import (FiniteCategory, FunctorData, SearchEngine, subcategory,
                     validate_functor)
from .reedy import FactorizationSystem
from .report import Report, order_key


class LiftError(ValueError):
    """A required (op)cartesian lift is missing or a factorization is not unique."""


class Fibre:
    """The fibre over one base object: a local category plus id translations."""

    def __init__(self, base_object, category: FiniteCategory, engine=None,
                 to_total_obj=None, to_local_obj=None, to_total_mor=None, to_local_mor=None):
        self.base_object = base_object
        self.category = category
        self.engine = engine if engine is not None else SearchEngine(category)
        ident = lambda v: v  # noqa: E731
        self.to_total_obj = to_total_obj or ident
        self.to_local_obj = to_local_obj or ident
        self.to_total_mor = to_total_mor or ident
        self.to_local_mor = to_local_mor or ident

    @property
    def concrete(self) -> bool:
        return hasattr(self.engine, "function")


class FiberedCategory:
    """A projection functor total -> base with partial chosen cleavages."""

    def __init__(self, total: FiniteCategory, base: FiniteCategory, projection: FunctorData,
                 cleavage_cart: Mapping | None = None, cleavage_opcart: Mapping | None = None,
                 name: str = "", search_lifts: bool = True):
        self.total = total
        self.base = base
        self.projection = projection
        self.cleavage_cart = dict(cleavage_cart or {})
        self.cleavage_opcart = dict(cleavage_opcart or {})
        self.name = name
        self.search_lifts = search_lifts
        self._fibres: dict = {}
        self._cache: dict = {}

    # -- total layer ---------------------------------------------------------
    def p_obj(self, X):
        return self.projection.obj(X)

    def p_mor(self, m):
        return self.projection.mor(m)

    def objects_over(self, c) -> tuple:
        key = ("over", c)
        if key not in self._cache:
            self._cache[key] = tuple(X for X in self.total.objects if self.p_obj(X) == c)
        return self._cache[key]

    def maps_over(self, X, Y, f) -> tuple:
        return tuple(m for m in self.total.hom(X, Y) if self.p_mor(m) == f)

    def fibre(self, c) -> Fibre:
        if c not in self._fibres:
            self._fibres[c] = self._make_fibre(c)
        return self._fibres[c]

    def _make_fibre(self, c) -> Fibre:
        idc = self.base.identity(c)
        objs = self.objects_over(c)
        mors = [m for X in objs for Y in objs for m in self.total.hom(X, Y) if self.p_mor(m) == idc]
        return Fibre(c, subcategory(self.total, objs, mors, name=f"E({c})"))

    def cartesian_witness(self, m):
        """None if m is cartesian, else (beta, factorizations) showing the failure."""
        X, Y = self.total.src(m), self.total.tgt(m)
        f = self.p_mor(m)
        a = self.base.src(f)
        fib = self.fibre(a).category
        for Z in self.objects_over(a):
            zl = self.fibre(a).to_local_obj(Z)
            xl = self.fibre(a).to_local_obj(X)
            comps = {}
            for g in fib.hom(zl, xl):
                comps.setdefault(self.total.compose(m, self.fibre(a).to_total_mor(g)), []).append(g)
            for beta in self.maps_over(Z, Y, f):
                gs = comps.get(beta, [])
                if len(gs) != 1:
                    return (beta, tuple(gs))
        return None

    def opcartesian_witness(self, m):
        X, Y = self.total.src(m), self.total.tgt(m)
        f = self.p_mor(m)
        b = self.base.tgt(f)
        fb = self.fibre(b)
        for Z in self.objects_over(b):
            comps = {}
            for g in fb.category.hom(fb.to_local_obj(Y), fb.to_local_obj(Z)):
                comps.setdefault(self.total.compose(fb.to_total_mor(g), m), []).append(g)
            for beta in self.maps_over(X, Z, f):
                gs = comps.get(beta, [])
                if len(gs) != 1:
                    return (beta, tuple(gs))
        return None

    def is_cartesian(self, m) -> bool:
        if not self.total.has_morphism(m):
            raise KeyError(f"unknown morphism {m!r}")
        return self.cartesian_witness(m) is None

    def is_opcartesian(self, m) -> bool:
        if not self.total.has_morphism(m):
            raise KeyError(f"unknown morphism {m!r}")
        return self.opcartesian_witness(m) is None

    def cart(self, f, Y):
        """Chosen cartesian lift f*Y -> Y (Y a total object), or None."""
        key = ("cart", f, Y)
        if key in self._cache:
            return self._cache[key]
        out = self.cleavage_cart.get((f, Y))
        if out is None and self.search_lifts:
            a = self.base.src(f)
            cands = sorted((m for X in self.objects_over(a) for m in self.maps_over(X, Y, f)),
                           key=order_key)
            out = next((m for m in cands if self.is_cartesian(m)), None)
        self._cache[key] = out
        return out

    def opcart(self, f, X):
        """Chosen opcartesian lift X -> f_!X, or None."""
        key = ("opcart", f, X)
        if key in self._cache:
            return self._cache[key]
        out = self.cleavage_opcart.get((f, X))
        if out is None and self.search_lifts:
            b = self.base.tgt(f)
            cands = sorted((m for Y in self.objects_over(b) for m in self.maps_over(X, Y, f)),
                           key=order_key)
            out = next((m for m in cands if self.is_opcartesian(m)), None)
        self._cache[key] = out
        return out

    # -- local layer ------------------------------------------------------------
    def _need(self, lift, what, f, X):
        if lift is None:
            raise LiftError(f"no {what} lift of {f!r} at {X!r}")
        return lift

    def push(self, g, x):
        """g_! on a local object of the fibre over src(g)."""
        a, b = self.base.src(g), self.base.tgt(g)
        lift = self._need(self.opcart(g, self.fibre(a).to_total_obj(x)), "opcartesian", g, x)
        return self.fibre(b).to_local_obj(self.total.tgt(lift))

    def pull(self, k, y):
        """k^* on a local object of the fibre over tgt(k)."""
        a, b = self.base.src(k), self.base.tgt(k)
        lift = self._need(self.cart(k, self.fibre(b).to_total_obj(y)), "cartesian", k, y)
        return self.fibre(a).to_local_obj(self.total.src(lift))

    def opcart_local(self, g, x):
        return self._need(self.opcart(g, self.fibre(self.base.src(g)).to_total_obj(x)),
                          "opcartesian", g, x)

    def cart_local(self, k, y):
        return self._need(self.cart(k, self.fibre(self.base.tgt(k)).to_total_obj(y)),
                          "cartesian", k, y)

    def opcart_factor(self, m):
        """Local phi: g_!X -> Y with m = phi o opcart(g, X), g = p(m)."""
        g = self.p_mor(m)
        X = self.total.src(m)
        lift = self._need(self.opcart(g, X), "opcartesian", g, X)
        fb = self.fibre(self.base.tgt(g))
        src = fb.to_local_obj(self.total.tgt(lift))
        tgt = fb.to_local_obj(self.total.tgt(m))
        found = [phi for phi in fb.category.hom(src, tgt)
                 if self.total.compose(fb.to_total_mor(phi), lift) == m]
        if len(found) != 1:
            raise LiftError(f"{len(found)} factorizations of {m!r} through the opcartesian lift")
        return found[0]

    def cart_factor(self, m):
        """Local psi: X -> k^*Y with m = cart(k, Y) o psi, k = p(m)."""
        k = self.p_mor(m)
        Y = self.total.tgt(m)
        lift = self._need(self.cart(k, Y), "cartesian", k, Y)
        fa = self.fibre(self.base.src(k))
        src = fa.to_local_obj(self.total.src(m))
        tgt = fa.to_local_obj(self.total.src(lift))
        found = [psi for psi in fa.category.hom(src, tgt)
                 if self.total.compose(lift, fa.to_total_mor(psi)) == m]
        if len(found) != 1:
            raise LiftError(f"{len(found)} factorizations of {m!r} through the cartesian lift")
        return found[0]

    def from_opcart(self, g, x, phi):
        """Total morphism phi o opcart(g, x) for local x and local phi: g_!x -> y."""
        lift = self.opcart_local(g, x)
        return self.total.compose(self.fibre(self.base.tgt(g)).to_total_mor(phi), lift)

    def from_cart(self, k, y, psi):
        """Total morphism cart(k, y) o psi for local y and local psi: x -> k^*y."""
        lift = self.cart_local(k, y)
        return self.total.compose(lift, self.fibre(self.base.src(k)).to_total_mor(psi))

    def push_mor(self, g, phi):
        """g_! on a local morphism, via the universal property."""
        key = ("push_mor", g, phi)
        if key in self._cache:
            return self._cache[key]
        fa = self.fibre(self.base.src(g))
        c = fa.category
        x, x2 = c.src(phi), c.tgt(phi)
        m = self.total.compose(self.opcart_local(g, x2), fa.to_total_mor(phi))
        out = self.opcart_factor_from(g, x, m)
        self._cache[key] = out
        return out

    def opcart_factor_from(self, g, x, m):
        """Local phi with m = phi o opcart(g, x); m is a total morphism out of x over g."""
        lift = self.opcart_local(g, x)
        fb = self.fibre(self.base.tgt(g))
        src = fb.to_local_obj(self.total.tgt(lift))
        tgt = fb.to_local_obj(self.total.tgt(m))
        found = [p for p in fb.category.hom(src, tgt) if self.total.compose(fb.to_total_mor(p), lift) == m]
        if len(found) != 1:
            raise LiftError(f"{len(found)} factorizations through the opcartesian lift of {g!r}")
        return found[0]

    def cart_factor_from(self, k, y, m):
        """Local psi with m = cart(k, y) o psi; m is a total morphism into y over k."""
        lift = self.cart_local(k, y)
        fa = self.fibre(self.base.src(k))
        src = fa.to_local_obj(self.total.src(m))
        tgt = fa.to_local_obj(self.total.src(lift))
        found = [p for p in fa.category.hom(src, tgt) if self.total.compose(lift, fa.to_total_mor(p)) == m]
        if len(found) != 1:
            raise LiftError(f"{len(found)} factorizations through the cartesian lift of {k!r}")
        return found[0]

    def pull_mor(self, k, psi):
        key = ("pull_mor", k, psi)
        if key in self._cache:
            return self._cache[key]
        fb = self.fibre(self.base.tgt(k))
        c = fb.category
        y, y2 = c.src(psi), c.tgt(psi)
        m = self.total.compose(fb.to_total_mor(psi), self.cart_local(k, y))
        out = self.cart_factor_from(k, y2, m)
        self._cache[key] = out
        return out

    def local_compose_total(self, m2, m1):
        return self.total.compose(m2, m1)

    def __repr__(self) -> str:
        return f"<FiberedCategory {self.name} over {self.base!r}>"


def _fibre_engine(cat):
    """Concrete slices carry their own engine; plain categories use search."""
    if hasattr(cat, "category") and hasattr(cat, "colimit"):
        return cat.category, cat
    return cat, SearchEngine(cat)


class GrothendieckOp(FiberedCategory):
    """The total category of a strict covariant Cat-valued functor E.

    Objects are (c, X); a morphism (f, X, alpha) goes from (c, X) to
    (c', tgt(alpha)) with alpha: E(f)X -> X' in E(c').
    """

    def __init__(self, base: FiniteCategory, fibres: Mapping, transitions: Mapping,
                 name: str = "", cartesian: Mapping | None = None):
        self.E = {}
        self.engines = {}
        for c in base.objects:
            cat, eng = _fibre_engine(fibres[c])
            self.E[c], self.engines[c] = cat, eng
        self.T = dict(transitions)
        E, T = self.E, self.T
        objs = [(c, X) for c in base.objects for X in E[c].objects]

        def hom(A, B):
            (c, X), (d, Y) = A, B
            out = []
            for f in base.hom(c, d):
                fx = T[f].obj(X)
                out.extend((f, X, a) for a in E[d].hom(fx, Y))
            return out

        def src(m):
            return (base.src(m[0]), m[1])

        def tgt(m):
            return (base.tgt(m[0]), E[base.tgt(m[0])].tgt(m[2]))

        def ident(A):
            c, X = A
            return (base.identity(c), X, E[c].identity(X))

        def comp(m2, m1):
            f, X, a = m1
            g, Y, b = m2
            d = base.tgt(f)
            if E[d].tgt(a) != Y or base.src(g) != d:
                raise ValueError("not composable")
            e = base.tgt(g)
            return (base.compose(g, f), X, E[e].compose(b, T[g].mor(a)))

        total = FiniteCategory(objs, identity=ident, compose=comp, hom=hom, src=src, tgt=tgt,
                               name=f"int {name}")
        proj = FunctorData(total, base, lambda A: A[0], lambda m: m[0], name="p")
        super().__init__(total, base, proj, cleavage_cart=cartesian, name=name)

    def objects_over(self, c):
        return tuple((c, X) for X in self.E[c].objects)

    def _make_fibre(self, c) -> Fibre:
        E, base = self.E, self.base
        idc = base.identity(c)
        return Fibre(c, E[c], self.engines[c],
                     to_total_obj=lambda X: (c, X), to_local_obj=lambda A: A[1],
                     to_total_mor=lambda a: (idc, E[c].src(a), a), to_local_mor=lambda m: m[2])

    def opcart(self, f, X):
        c, x = X
        d = self.base.tgt(f)
        fx = self.T[f].obj(x)
        return (f, x, self.E[d].identity(fx))

    def push(self, g, x):
        return self.T[g].obj(x)

    def push_mor(self, g, phi):
        return self.T[g].mor(phi)

    def opcart_local(self, g, x):
        return self.opcart(g, (self.base.src(g), x))

    def opcart_factor(self, m):
        return m[2]

    def opcart_factor_from(self, g, x, m):
        return m[2]

    def from_opcart(self, g, x, phi):
        return (g, x, phi)


class ConstantFibration(GrothendieckOp):
    """M x B -> B, with identity transitions and both cleavages canonical."""

    def __init__(self, base: FiniteCategory, fibre, name: str = ""):
        cat, _ = _fibre_engine(fibre)
        ident = FunctorData(cat, cat, lambda x: x, lambda m: m, name="id")
        super().__init__(base, {c: fibre for c in base.objects},
                         {f: ident for f in base.morphisms}, name=name or "constant")
        self.M = cat

    def cart(self, f, Y):
        d, y = Y
        return (f, y, self.M.identity(y))

    def pull(self, k, y):
        return y

    def pull_mor(self, k, psi):
        return psi

    def cart_local(self, k, y):
        return (k, y, self.M.identity(y))

    def cart_factor(self, m):
        return m[2]

    def cart_factor_from(self, k, y, m):
        return m[2]

    def from_cart(self, k, y, psi):
        return (k, self.M.src(psi), psi)


class GrothendieckFib(FiberedCategory):
    """The total category of a strict contravariant Cat-valued functor F.

    A morphism (f, Y, beta) goes from (c, src(beta)) to (c', Y) with
    beta: X -> F(f)Y in F(c); here F(f): F(c') -> F(c) for f: c -> c'.
    """

    def __init__(self, base: FiniteCategory, fibres: Mapping, transitions: Mapping,
                 name: str = "", opcartesian: Mapping | None = None):
        self.E, self.engines = {}, {}
        for c in base.objects:
            cat, eng = _fibre_engine(fibres[c])
            self.E[c], self.engines[c] = cat, eng
        self.T = dict(transitions)
        E, T = self.E, self.T
        objs = [(c, X) for c in base.objects for X in E[c].objects]

        def hom(A, B):
            (c, X), (d, Y) = A, B
            out = []
            for f in base.hom(c, d):
                fy = T[f].obj(Y)
                out.extend((f, Y, b) for b in E[c].hom(X, fy))
            return out

        def src(m):
            return (base.src(m[0]), E[base.src(m[0])].src(m[2]))

        def tgt(m):
            return (base.tgt(m[0]), m[1])

        def ident(A):
            c, X = A
            return (base.identity(c), X, E[c].identity(X))

        def comp(m2, m1):
            f, Y, b = m1
            g, Z, b2 = m2
            c = base.src(f)
            if base.src(g) != base.tgt(f) or E[base.src(g)].src(b2) != Y:
                raise ValueError("not composable")
            return (base.compose(g, f), Z, E[c].compose(T[f].mor(b2), b))

        total = FiniteCategory(objs, identity=ident, compose=comp, hom=hom, src=src, tgt=tgt,
                               name=f"int {name}")
        proj = FunctorData(total, base, lambda A: A[0], lambda m: m[0], name="p")
        super().__init__(total, base, proj, cleavage_opcart=opcartesian, name=name)

    def objects_over(self, c):
        return tuple((c, X) for X in self.E[c].objects)

    def _make_fibre(self, c) -> Fibre:
        E, base = self.E, self.base
        idc = base.identity(c)
        return Fibre(c, E[c], self.engines[c],
                     to_total_obj=lambda X: (c, X), to_local_obj=lambda A: A[1],
                     to_total_mor=lambda b: (idc, E[c].tgt(b), b), to_local_mor=lambda m: m[2])

    def cart(self, f, Y):
        d, y = Y
        c = self.base.src(f)
        return (f, y, self.E[c].identity(self.T[f].obj(y)))

    def pull(self, k, y):
        return self.T[k].obj(y)

    def pull_mor(self, k, psi):
        return self.T[k].mor(psi)

    def cart_local(self, k, y):
        return self.cart(k, (self.base.tgt(k), y))

    def cart_factor(self, m):
        return m[2]

    def cart_factor_from(self, k, y, m):
        return m[2]

    def from_cart(self, k, y, psi):
        return (k, y, psi)


def grothendieck_op(base: FiniteCategory, fibres: Mapping, transitions: Mapping,
                    name: str = "", check: bool = True, cartesian: Mapping | None = None
                    ) -> GrothendieckOp:
    """Opfibration from a strict covariant functor, with the canonical opcartesian cleavage."""
    if check:
        _check_strict(base, fibres, transitions, covariant=True)
    return GrothendieckOp(base, fibres, transitions, name=name, cartesian=cartesian)


def grothendieck_fib(base: FiniteCategory, fibres: Mapping, transitions: Mapping,
                     name: str = "", check: bool = True, opcartesian: Mapping | None = None
                     ) -> GrothendieckFib:
    """Fibration from a strict contravariant functor, with the canonical cartesian cleavage."""
    if check:
        _check_strict(base, fibres, transitions, covariant=False)
    return GrothendieckFib(base, fibres, transitions, name=name, opcartesian=opcartesian)


def relabel_functor(src, tgt, phi: Mapping, name: str = "") -> FunctorData:
    """Pushforward FinSet/S -> FinSet/T along a label map phi: S -> T.

    Elements keep their order among equal new labels, so the functor is strict.
    """
    def perm(obj):
        new = [phi[l] for l in obj]
        order = sorted(range(len(obj)), key=lambda i: (order_key(new[i]), i))
        pos = {i: k for k, i in enumerate(order)}
        return tuple(new[i] for i in order), pos

    def om(obj):
        return perm(obj)[0]

    def mm(m):
        a, b, fn = m
        na, pa = perm(a)
        nb, pb = perm(b)
        out = [None] * len(a)
        for i in range(len(a)):
            out[pa[i]] = pb[fn[i]]
        return (na, nb, tuple(out))
    return FunctorData(src.category, tgt.category, om, mm, name=name or "relabel")


def label_presheaf(base: FiniteCategory, labels: Mapping, label_maps: Mapping, cap: int,
                   name: str = "") -> "GrothendieckOp":
    """A Quillen presheaf of labelled finite sets: E(c) = FinSet<=cap / labels[c].

    ``label_maps[f]`` is the label function for each non-identity f; transitions
    are relabellings, and cartesian lifts (restriction to a label preimage) are
    found by search.
    """
    from .setfun import FinSetSlice
    fibres = {c: FinSetSlice(cap, tuple(labels[c]), strict=False) for c in base.objects}
    trans = {}
    for f in base.morphisms:
        a, b = base.src(f), base.tgt(f)
        phi = {l: l for l in labels[a]} if base.is_identity(f) else dict(label_maps[f])
        trans[f] = relabel_functor(fibres[a], fibres[b], phi, name=str(f))
    return GrothendieckOp(base, fibres, trans, name=name or "labels")


def _check_strict(base, fibres, transitions, covariant: bool) -> None:
    cats = {c: _fibre_engine(fibres[c])[0] for c in base.objects}
    for f in base.morphisms:
        a, b = base.src(f), base.tgt(f)
        F = transitions[f]
        s, t = (a, b) if covariant else (b, a)
        if F.source is not cats[s] or F.target is not cats[t]:
            raise ValueError(f"transition for {f!r} has the wrong source or target")
        if cats[s].is_lazy:
            continue
        rep = validate_functor(F)
        if not rep.ok:
            raise ValueError(f"transition for {f!r} is not a functor: {rep.laws()[:3]}")
    for x in base.objects:
        i = transitions[base.identity(x)]
        c = cats[x]
        if any(i.obj(X) != X for X in c.objects):
            raise ValueError(f"transition at identity of {x!r} is not the identity")
    for f in base.morphisms:
        for g in base.out_of(base.tgt(f)):
            gf = transitions[base.compose(g, f)]
            F, G = transitions[f], transitions[g]
            src = cats[base.src(f)] if covariant else cats[base.tgt(g)]
            for X in src.objects:
                lhs = gf.obj(X)
                rhs = G.obj(F.obj(X)) if covariant else F.obj(G.obj(X))
                if lhs != rhs:
                    raise ValueError(f"not strictly functorial at ({g!r}, {f!r})")
            if src.is_lazy:
                continue
            for m in src.morphisms:
                lhs = gf.mor(m)
                rhs = G.mor(F.mor(m)) if covariant else F.mor(G.mor(m))
                if lhs != rhs:
                    raise ValueError(f"not strictly functorial at ({g!r}, {f!r})")


# -- classification ---------------------------------------------------------------

def classify_projection(fc: FiberedCategory) -> Report:
    """Flags prefibration ... discrete, each with witnesses on failure."""
    rep = Report("projection")
    base, total = fc.base, fc.total
    flags = {}
    cart = {m: fc.cartesian_witness(m) is None for m in total.morphisms}
    opcart = {m: fc.opcartesian_witness(m) is None for m in total.morphisms}
    wit: dict[str, Any] = {}
    pre = True
    for f in base.morphisms:
        for Y in fc.objects_over(base.tgt(f)):
            if not any(cart[m] for X in fc.objects_over(base.src(f)) for m in fc.maps_over(X, Y, f)):
                pre = False
                wit.setdefault("prefibration", (f, Y))
    preop = True
    for f in base.morphisms:
        for X in fc.objects_over(base.src(f)):
            if not any(opcart[m] for Y in fc.objects_over(base.tgt(f)) for m in fc.maps_over(X, Y, f)):
                preop = False
                wit.setdefault("preopfibration", (f, X))
    flags["prefibration"], flags["preopfibration"] = pre, preop

    def closed(table, name):
        for m in total.morphisms:
            if not table[m]:
                continue
            for n in total.out_of(total.tgt(m)):
                if table[n] and not table[total.compose(n, m)]:
                    wit.setdefault(name, (n, m))
                    return False
        return True
    flags["fibration"] = pre and closed(cart, "fibration")
    flags["opfibration"] = preop and closed(opcart, "opfibration")
    if not pre:
        wit.setdefault("fibration", wit["prefibration"])
    if not preop:
        wit.setdefault("opfibration", wit["preopfibration"])
    iso = True
    for f in base.morphisms:
        if not base.is_iso(f):
            continue
        for Y in fc.objects_over(base.tgt(f)):
            if not any(total.is_iso(m) for X in fc.objects_over(base.src(f)) for m in fc.maps_over(X, Y, f)):
                iso = False
                wit.setdefault("isofibration", (f, Y))
    flags["isofibration"] = iso
    disc = True
    for c in base.objects:
        fib = fc.fibre(c).category
        for m in fib.morphisms:
            if not fib.is_identity(m):
                disc = False
                wit.setdefault("discrete", m)
                break
    flags["discrete"] = disc
    rep.data["flags"] = flags
    rep.data["witnesses"] = wit
    return rep


def projection_flags(fc: FiberedCategory) -> dict:
    return classify_projection(fc).data["flags"]


# -- semifibrations ---------------------------------------------------------------

def validate_semifibration(fc: FiberedCategory, fs: FactorizationSystem,
                           check_triple: bool = True) -> Report:
    """Conditions (1)-(3) over (L, R), plus the isofibration requirement."""
    rep = Report("semifibration")
    base = fc.base
    L, R = fs.left.members, fs.right.members
    for l in sorted(L, key=order_key):
        for Y in fc.objects_over(base.tgt(l)):
            lift = fc.cart(l, Y)
            if lift is None or not fc.is_cartesian(lift):
                rep.add("(1) cartesian lift over left class", (l, Y))
    for r in sorted(R, key=order_key):
        for X in fc.objects_over(base.src(r)):
            lift = fc.opcart(r, X)
            if lift is None or not fc.is_opcartesian(lift):
                rep.add("(2) opcartesian lift over right class", (r, X))
    for f in base.morphisms:
        if base.is_iso(f):
            for Y in fc.objects_over(base.tgt(f)):
                if not any(fc.total.is_iso(m) for X in fc.objects_over(base.src(f))
                           for m in fc.maps_over(X, Y, f)):
                    rep.add("isofibration", (f, Y))
    if not rep.ok or not check_triple:
        return rep
    for r in sorted(R, key=order_key):
        z = base.tgt(r)
        for l in sorted(base.out_of(z), key=order_key):
            if l not in L:
                continue
            f = base.compose(l, r)
            for X in fc.objects_over(base.src(r)):
                for Y in fc.objects_over(base.tgt(l)):
                    for a in fc.maps_over(X, Y, f):
                        if triple_factor(fc, r, l, a) is None:
                            rep.add("(3) triple factorization", (r, l, a))
    return rep


def triple_factor(fc: FiberedCategory, r, l, alpha):
    """The fibre map phi with alpha = cart(l) o phi o opcart(r), or None.

    Returns None when no phi exists; raises LiftError when it is not unique.
    """
    X, Y = fc.total.src(alpha), fc.total.tgt(alpha)
    rho = fc.opcart(r, X)
    lam = fc.cart(l, Y)
    if rho is None or lam is None:
        return None
    z = fc.base.tgt(r)
    fz = fc.fibre(z)
    src = fz.to_local_obj(fc.total.tgt(rho))
    tgt = fz.to_local_obj(fc.total.src(lam))
    found = [phi for phi in fz.category.hom(src, tgt)
             if fc.total.compose(lam, fc.total.compose(fz.to_total_mor(phi), rho)) == alpha]
    if len(found) > 1:
        raise LiftError(f"triple factorization of {alpha!r} not unique")
    return found[0] if found else None


def transition_functor(fc: FiberedCategory, f, direction: str = "opcartesian") -> FunctorData:
    """f_! (direction 'opcartesian') or f^* ('cartesian') between local fibres."""
    a, b = fc.base.src(f), fc.base.tgt(f)
    if direction == "opcartesian":
        src, tgt = fc.fibre(a), fc.fibre(b)
        objs = {x: fc.push(f, x) for x in src.category.objects}
        mors = {m: fc.push_mor(f, m) for m in src.category.morphisms}
    elif direction == "cartesian":
        src, tgt = fc.fibre(b), fc.fibre(a)
        objs = {y: fc.pull(f, y) for y in src.category.objects}
        mors = {m: fc.pull_mor(f, m) for m in src.category.morphisms}
    else:
        raise ValueError("direction must be 'cartesian' or 'opcartesian'")
    F = FunctorData(src.category, tgt.category, objs, mors, name=f"{f}_{direction}")
    rep = validate_functor(F)
    if not rep.ok:
        raise LiftError(f"transition functor of {f!r} is not functorial: {rep.laws()[:3]}")
    return F


# -- mates ----------------------------------------------------------------------------

@dataclass
class MateSquare:
    f: Any
    g: Any
    h: Any
    k: Any
    components: dict = field(default_factory=dict)  # local Y over y -> local map over z


def mate_component(fc: FiberedCategory, f, g, h, k, y_local):
    """g_! f^* Y -> k^* h_! Y from the triple factorization of f^*Y -> Y -> h_!Y."""
    base = fc.base
    y = base.tgt(f)
    Y = fc.fibre(y).to_total_obj(y_local)
    cf = fc.cart(f, Y)
    oh = fc.opcart(h, Y)
    if cf is None or oh is None:
        raise LiftError("square needs cartesian lifts over f and opcartesian lifts over h")
    alpha = fc.total.compose(oh, cf)
    phi = triple_factor(fc, g, k, alpha)
    if phi is None:
        raise LiftError(f"no triple factorization for the mate at {y_local!r}")
    return phi


def mate(fc: FiberedCategory, fs: FactorizationSystem, square: tuple) -> MateSquare:
    """Mate g_! f^* -> k^* h_! of a square hf = kg with f, k left and g, h right."""
    f, g, h, k = square
    base = fc.base
    if base.compose(h, f) != base.compose(k, g):
        raise ValueError("square does not commute")
    L, R = fs.left.members, fs.right.members
    if f not in L or k not in L or g not in R or h not in R:
        raise ValueError("square has the wrong classes")
    y = base.tgt(f)
    ms = MateSquare(f, g, h, k)
    for Yl in fc.fibre(y).category.objects:
        ms.components[Yl] = mate_component(fc, f, g, h, k, Yl)
    return ms


def check_mate_naturality(fc: FiberedCategory, ms: MateSquare) -> Report:
    rep = Report("mate naturality")
    fy = fc.fibre(fc.base.tgt(ms.f)).category
    z = fc.base.tgt(ms.g)
    fz = fc.fibre(z).category
    for m in fy.morphisms:
        a, b = fy.src(m), fy.tgt(m)
        left = fz.compose(fc.pull_mor(ms.k, fc.push_mor(ms.h, m)), ms.components[a])
        right = fz.compose(ms.components[b], fc.push_mor(ms.g, fc.pull_mor(ms.f, m)))
        if left != right:
            rep.add("naturality", m)
    return rep
