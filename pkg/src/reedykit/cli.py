"""Batch front end: instance files in, deterministic reports out.

Instance files are YAML documents with a version header ``reedykit: 1``.
Every declaration is named; names are global and must be declared before
they are referenced.  Morphism and object ids are written as YAML scalars or
lists (lists become tuples), and mappings keyed by non-scalar ids are
written as lists of ``[key, value]`` pairs.

Exit codes: 0 ok, 1 semantic violation, 2 I/O or parse error, 3 budget
exceeded, 4 a required (co)limit does not exist, 5 precondition failure.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
import yaml

from . import fib as fibmod
from . import kan, model, reedy, sect, simplex
from .fincat import (FiniteCategory, FunctorData, NoLimit, chain_category, cospan_category,
                     discrete_category, from_generators, morphism_class, poset_category,
                     product_category, span_category, subcategory, validate_category)
from .report import Budget, BudgetExceeded, Report, as_budget, order_key, plain
from .setfun import FinSetSlice

FORMAT_VERSION = 1
EXIT_OK, EXIT_VIOLATION, EXIT_IO, EXIT_BUDGET, EXIT_NOLIMIT, EXIT_PRECONDITION = range(6)
DEFAULT_BUDGET = 2_000_000

KINDS = ("categories", "simplicial_sets", "functors", "factsys", "reedy", "models",
         "fibrations", "sections", "maps", "directives", "theorems")
REF_KEYS = {"category", "base", "source", "target", "fibration", "reedy", "functor", "sset",
            "section", "model", "models", "fibre", "fibres", "structure", "shape", "over",
            "product"}
VALIDATE = ("category", "reedy", "factsys", "fibration", "semifibration", "model", "section")
COMPUTE = ("latching", "matching", "classify", "factorize", "lift", "generators", "kan",
           "limits", "filtration", "simplices")


class InstanceError(Exception):
    """Parse or reference error, located in the source file when possible."""

    def __init__(self, msg: str, mark=None, source: str = ""):
        self.line = mark.line + 1 if mark is not None else None
        self.column = mark.column + 1 if mark is not None else None
        where = f"{source}:" if source else ""
        if self.line is not None:
            where += f"{self.line}:{self.column}: "
        elif where:
            where += " "
        super().__init__(where + msg)


class Precondition(Exception):
    pass


# -- loading -----------------------------------------------------------------------------

class _Map(dict):
    mark = None


class _Seq(list):
    mark = None


class _Loader(yaml.SafeLoader):
    pass


def _construct_map(loader, node):
    loader.flatten_mapping(node)
    m = _Map()
    for k_node, v_node in node.value:
        k = loader.construct_object(k_node, deep=True)
        if isinstance(k, list):
            raise InstanceError("mapping keys must be scalars; use a list of pairs",
                                k_node.start_mark)
        if k in m:
            raise InstanceError(f"duplicate key {k!r}", k_node.start_mark)
        m[k] = loader.construct_object(v_node, deep=True)
    m.mark = node.start_mark
    return m


def _construct_seq(loader, node):
    s = _Seq(loader.construct_object(n, deep=True) for n in node.value)
    s.mark = node.start_mark
    return s


_Loader.add_constructor("tag:yaml.org,2002:map", _construct_map)
_Loader.add_constructor("tag:yaml.org,2002:seq", _construct_seq)


def _strip(x):
    if isinstance(x, dict):
        return {k: _strip(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_strip(v) for v in x]
    return x


def parse_instance(text: str, source: str = "") -> "Instance":
    try:
        doc = yaml.load(text, Loader=_Loader)
    except InstanceError as exc:
        raise InstanceError(str(exc), None, source) from None
    except yaml.MarkedYAMLError as exc:
        raise InstanceError(exc.problem or str(exc), exc.problem_mark, source) from None
    except yaml.YAMLError as exc:
        raise InstanceError(str(exc), None, source) from None
    if not isinstance(doc, dict):
        raise InstanceError("instance file must be a mapping", getattr(doc, "mark", None), source)
    if doc.get("reedykit") != FORMAT_VERSION:
        raise InstanceError(f"missing or unsupported version header (expected 'reedykit: {FORMAT_VERSION}')",
                            doc.mark, source)
    for key in doc:
        if key not in KINDS and key not in ("reedykit", "description"):
            raise InstanceError(f"unknown section {key!r}", doc.mark, source)
    return Instance(doc, source)


def load_instance(path: str | Path) -> "Instance":
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from None
    return parse_instance(text, p.name)


def dump_instance(inst: "Instance") -> str:
    return yaml.safe_dump(inst.document, sort_keys=False, default_flow_style=None,
                          allow_unicode=True, width=100)


def normalize(text: str) -> str:
    return dump_instance(parse_instance(text))


# -- id helpers --------------------------------------------------------------------------

def _tid(v):
    if isinstance(v, list):
        return tuple(_tid(e) for e in v)
    return v


def _pairs(v) -> list:
    if v is None:
        return []
    if isinstance(v, dict):
        return [(_tid(k), x) for k, x in v.items()]
    out = []
    for e in v:
        if not isinstance(e, list) or len(e) != 2:
            raise InstanceError("expected a [key, value] pair", getattr(e, "mark", getattr(v, "mark", None)))
        out.append((_tid(e[0]), e[1]))
    return out


def _as_cat(x) -> FiniteCategory:
    return x.category if isinstance(x, FinSetSlice) else x


CLASS_KEYWORDS = {
    "all": lambda c, m: True,
    "identities": lambda c, m: c.is_identity(m),
    "isomorphisms": lambda c, m: c.is_iso(m),
    "injective": lambda c, m: simplex.is_injective(m),
    "surjective": lambda c, m: simplex.is_surjective(m),
    "segal": lambda c, m: simplex.is_segal(m),
    "anchor": lambda c, m: simplex.is_anchor(m),
}


# -- the instance -------------------------------------------------------------------------

class Instance:
    """A parsed instance file; declarations are built on first use and cached."""

    def __init__(self, doc: dict, source: str = ""):
        self.raw = doc
        self.source = source
        self.document = _strip(doc)
        self.kind: dict = {}
        self.order: dict = {}
        self._built: dict = {}
        self._tsc: dict = {}
        self._dx: dict = {}
        self.canonical: dict = {}     # id(category) -> its canonical Reedy structure
        self.fs_models: dict = {}     # fibration name -> {base object: ModelClasses}
        n = 0
        for kind in KINDS:
            entries = doc.get(kind) or {}
            if not isinstance(entries, dict):
                raise InstanceError(f"section {kind!r} must be a mapping of named entries",
                                    getattr(entries, "mark", doc.mark), source)
        for key in doc:
            if key not in KINDS:
                continue
            for name, spec in (doc.get(key) or {}).items():
                if name in self.kind:
                    raise InstanceError(f"name {name!r} declared twice", getattr(spec, "mark", None), source)
                self.kind[name] = key
                self.order[name] = n
                n += 1
        for name in self.kind:
            self._check_refs(name, self.spec(name), self.order[name])

    def _check_refs(self, name, spec, idx):
        if isinstance(spec, dict):
            for k, v in spec.items():
                if k in REF_KEYS:
                    for ref in self._ref_values(v):
                        if ref not in self.kind:
                            raise InstanceError(f"{name}: unknown name {ref!r}", spec.mark, self.source)
                        if self.order[ref] >= idx:
                            raise InstanceError(f"{name}: {ref!r} is used before its declaration",
                                                spec.mark, self.source)
                self._check_refs(name, v, idx)
        elif isinstance(spec, list):
            for v in spec:
                self._check_refs(name, v, idx)

    @staticmethod
    def _ref_values(v):
        if isinstance(v, str):
            return [v]
        if isinstance(v, dict):
            return [x for x in v.values() if isinstance(x, str)]
        if isinstance(v, list):
            return [e[1] for e in v if isinstance(e, list) and len(e) == 2 and isinstance(e[1], str)]
        return []

    def err(self, msg, spec=None):
        return InstanceError(msg, getattr(spec, "mark", None), self.source)

    def spec(self, name):
        return self.raw[self.kind[name]][name]

    def names(self, kind) -> list:
        return list((self.raw.get(kind) or {}).keys())

    def get(self, name, kind: str | None = None):
        if name not in self.kind:
            raise self.err(f"unknown name {name!r}")
        if kind is not None and self.kind[name] != kind:
            raise self.err(f"{name!r} is a {self.kind[name]} entry, expected {kind}", self.spec(name))
        if name not in self._built:
            builder = getattr(self, "_build_" + self.kind[name])
            self._built[name] = builder(name, self.spec(name))
        return self._built[name]

    def category(self, name) -> FiniteCategory:
        return _as_cat(self.get(name))

    # -- builders --
    def tsc(self, n: int):
        if n not in self._tsc:
            t = simplex.build_truncated_delta(n)
            self._tsc[n] = t
            self.canonical[id(t.delta)] = t.reedy
            self.canonical[id(t.delta_op)] = t.reedy_op
        return self._tsc[n]

    def dx(self, sset_name: str):
        if sset_name not in self._dx:
            dx = simplex.delta_indexed(self.get(sset_name, "simplicial_sets"))
            self._dx[sset_name] = dx
            self.canonical[id(dx.total)] = dx.reedy
        return self._dx[sset_name]

    def _build_categories(self, name, spec):
        if not isinstance(spec, dict) or len(spec) != 1:
            raise self.err(f"category {name!r}: expected exactly one constructor key", spec)
        (k, v), = spec.items()
        if k == "chain":
            return chain_category(int(v))
        if k == "span":
            return span_category()
        if k == "cospan":
            return cospan_category()
        if k == "discrete":
            return discrete_category([_tid(o) for o in v], name=name)
        if k == "delta":
            return self.tsc(int(v)).delta
        if k == "delta_op":
            return self.tsc(int(v)).delta_op
        if k == "finset":
            cap = v["cap"] if isinstance(v, dict) else v
            strict = v.get("strict", True) if isinstance(v, dict) else True
            return FinSetSlice(int(cap), name=name, strict=bool(strict))
        if k == "poset":
            return poset_category([_tid(e) for e in v["elements"]],
                                  [(_tid(a), _tid(b)) for a, b in v.get("relations", [])], name=name)
        if k == "full_subcategory":
            return subcategory(self.category(v["category"]), [_tid(o) for o in v["objects"]], name=name)
        if k == "product":
            a_, b_ = v
            return product_category(self.category(a_), self.category(b_), name=name)
        if k == "total_of":
            return self.dx(v).total
        if k == "simplices":
            sco = simplex.simplices_of(self.category(v["base"]), int(v["n"]))
            self.canonical[id(sco.category)] = sco.reedy
            self._built[("simplices", name)] = sco
            return sco.category
        if k == "explicit":
            objs = [_tid(o) for o in v["objects"]]
            ident = {o: f"id_{o}" for o in objs}
            ident.update({_tid(o): _tid(i) for o, i in _pairs(v.get("identities"))})
            mors = [(ident[o], o, o) for o in objs]
            mors += [(_tid(m), _tid(s), _tid(t)) for m, s, t in v.get("morphisms", [])]
            table = {(_tid(g), _tid(f)): _tid(h) for g, f, h in v.get("compose", [])}
            try:
                return from_generators(objs, mors, ident, table, name=name)
            except (KeyError, ValueError) as exc:
                raise self.err(f"category {name!r}: {exc}", spec) from None
        raise self.err(f"category {name!r}: unknown constructor {k!r}", spec)

    def _build_simplicial_sets(self, name, spec):
        n = int(spec.get("n_max", 2))
        if "standard" in spec:
            return simplex.standard_simplex(int(spec["standard"]), n)
        if "boundary" in spec:
            return simplex.boundary_simplex(int(spec["boundary"]), n)
        if "terminal" in spec:
            return simplex.terminal_simplicial_set(n)
        if "tables" in spec:
            t = spec["tables"]
            sims = {int(k): [_tid(x) for x in v] for k, v in _pairs(t["simplices"])}
            faces = {(int(k), int(j)): {_tid(x): _tid(y) for x, y in _pairs(tab)}
                     for (k, j), tab in _pairs(t.get("faces"))}
            degs = {(int(k), int(i)): {_tid(x): _tid(y) for x, y in _pairs(tab)}
                    for (k, i), tab in _pairs(t.get("degeneracies"))}
            return simplex.from_face_degeneracy(n, sims, faces, degs, name=name)
        raise self.err(f"simplicial set {name!r}: expected standard, boundary, terminal or tables", spec)

    def _build_functors(self, name, spec):
        src, tgt = self.category(spec["source"]), self.category(spec["target"])
        if spec.get("inclusion"):
            return FunctorData(src, tgt, lambda x: x, lambda m: m, name=name)
        om = {k: _tid(v) for k, v in _pairs(spec["objects"])}
        mm = {k: _tid(v) for k, v in _pairs(spec["morphisms"])}
        for m in src.morphisms:
            if m not in mm and src.is_identity(m):
                mm[m] = tgt.identity(om[src.src(m)])
        return FunctorData(src, tgt, om.__getitem__, mm.__getitem__, name=name)

    def _class(self, c: FiniteCategory, v, spec):
        if isinstance(v, str):
            if v not in CLASS_KEYWORDS:
                raise self.err(f"unknown morphism class {v!r}", spec)
            pred = CLASS_KEYWORDS[v]
            return morphism_class(c, (m for m in c.morphisms if pred(c, m)))
        if isinstance(v, dict):
            base = self._class(c, v.get("kind", "identities"), spec).members
            plus = {_tid(m) for m in v.get("plus", [])}
            minus = {_tid(m) for m in v.get("minus", [])}
            return morphism_class(c, (base | plus) - minus)
        members = [_tid(m) for m in v]
        ids = [c.identity(x) for x in c.objects]
        return morphism_class(c, set(members) | set(ids))

    def _build_factsys(self, name, spec):
        if "segal" in spec:
            return self.tsc(int(spec["segal"])).segal
        if "segal_of" in spec:
            return self.dx(spec["segal_of"]).segal
        c = self.category(spec["category"])
        return reedy.FactorizationSystem(c, self._class(c, spec["left"], spec),
                                         self._class(c, spec["right"], spec))

    def _build_reedy(self, name, spec):
        c = self.category(spec["category"])
        preset = spec.get("preset")
        if preset is not None:
            try:
                if preset == "direct":
                    return reedy.direct_structure(c)
                if preset == "inverse":
                    return reedy.inverse_structure(c)
            except ValueError as exc:
                raise self.err(f"reedy {name!r}: {exc}", spec) from None
            if preset in ("canonical", "delta", "delta_op", "sset", "simplices"):
                if id(c) not in self.canonical:
                    raise self.err(f"reedy {name!r}: {spec['category']!r} has no canonical structure", spec)
                return self.canonical[id(c)]
            raise self.err(f"reedy {name!r}: unknown preset {preset!r}", spec)
        low = self._class(c, spec["lowering"], spec)
        high = self._class(c, spec["raising"], spec)
        deg = spec.get("degree", "synthesize")
        if deg == "synthesize":
            deg = reedy.synthesize_degree(c, low, high)
            if deg is None:
                raise self.err(f"reedy {name!r}: no degree function exists", spec)
        elif deg == "dimension":
            deg = {x: x if isinstance(x, int) else x[0] for x in c.objects}
        else:
            deg = {k: v for k, v in _pairs(deg)}
        return reedy.ReedyStructure(c, low, high, deg)

    def _build_models(self, name, spec):
        if "finset" in spec:
            return model.builtin_finset_fragment(int(spec["finset"]), bool(spec.get("strict", True)))
        c = self.category(spec["category"])
        if spec.get("trivial"):
            return model.builtin_trivial(c, check=False)
        mc = model.ModelClasses(c, self._class(c, spec["weq"], spec), self._class(c, spec["cof"], spec),
                                self._class(c, spec["fib"], spec), name=name)
        return model.with_search_factorizations(mc)

    def _fibre(self, ref):
        f = self.get(ref, "categories")
        return f

    def _build_fibrations(self, name, spec):
        if "constant" in spec:
            v = spec["constant"]
            fc = fibmod.ConstantFibration(self.category(v["base"]), self._fibre(v["fibre"]), name=name)
        elif "over_sset" in spec:
            v = spec["over_sset"]
            fc = fibmod.ConstantFibration(self.dx(v["sset"]).total, self._fibre(v["fibre"]), name=name)
        elif "grothendieck" in spec:
            v = spec["grothendieck"]
            base = self.category(v["base"])
            fibres = {k: self._fibre(r) for k, r in _pairs(v["fibres"])}
            trans = {}
            for m, omap in _pairs(v.get("transitions")):
                om = {_tid(a): _tid(b) for a, b in _pairs(omap)}
                trans[m] = self._thin_functor(fibres[base.src(m)], fibres[base.tgt(m)], om)
            for m in base.morphisms:
                if m not in trans:
                    if not base.is_identity(m):
                        raise self.err(f"fibration {name!r}: no transition for {m!r}", spec)
                    f = fibres[base.src(m)]
                    trans[m] = self._thin_functor(f, f, {o: o for o in _as_cat(f).objects})
            try:
                fc = fibmod.grothendieck_op(base, fibres, trans, name=name)
            except ValueError as exc:
                raise self.err(f"fibration {name!r}: {exc}", spec) from None
        elif "labels" in spec:
            v = spec["labels"]
            base = self.category(v["base"])
            labels = {k: list(ls) for k, ls in _pairs(v["labels"])}
            maps = {k: {a: b for a, b in _pairs(mp)} for k, mp in _pairs(v.get("maps"))}
            fc = fibmod.label_presheaf(base, labels, maps, int(v["cap"]))
        elif "delta_indexed" in spec:
            fc = self.dx(spec["delta_indexed"]).fibration
        elif "pullback" in spec:
            v = spec["pullback"]
            fc = kan.pull_back(self.get(v["fibration"], "fibrations"), self.get(v["functor"], "functors"),
                               name=name)
        else:
            raise self.err(f"fibration {name!r}: unknown constructor", spec)
        if "models" in spec:
            mref = spec["models"]
            if isinstance(mref, str):
                self.fs_models[name] = {x: self.get(mref, "models") for x in fc.base.objects}
            else:
                self.fs_models[name] = {k: self.get(r, "models") for k, r in _pairs(mref)}
        return fc

    @staticmethod
    def _thin_functor(src, tgt, om):
        s, t = _as_cat(src), _as_cat(tgt)
        return FunctorData(s, t, om.__getitem__, lambda m: t.hom(om[s.src(m)], om[s.tgt(m)])[0])

    def models_for(self, fname):
        if fname not in self.fs_models:
            self.get(fname, "fibrations")
        if fname not in self.fs_models:
            raise Precondition(f"fibration {fname!r} declares no fibre models")
        return self.fs_models[fname]

    def _build_sections(self, name, spec):
        if "simplicial" in spec:
            return simplex.simplicial_section(self.get(spec["simplicial"], "simplicial_sets"), spec.get("cap"))
        fc = self.get(spec["fibration"], "fibrations")
        rs = self.get(spec["reedy"], "reedy")
        vals = {k: _tid(v) for k, v in _pairs(spec.get("values"))}
        arrows = {k: _tid(v) for k, v in _pairs(spec.get("arrows"))}
        try:
            return sect.section_from_local(fc, rs, vals, local_arrows=arrows)
        except (KeyError, ValueError, fibmod.LiftError) as exc:
            raise self.err(f"section {name!r}: {exc}", spec) from None

    def _build_maps(self, name, spec):
        S, T = self.get(spec["source"], "sections"), self.get(spec["target"], "sections")
        return sect.SectionMap(S, T, {k: _tid(v) for k, v in _pairs(spec["components"])})

    def _build_directives(self, name, spec):
        return spec

    def _build_theorems(self, name, spec):
        return spec


# -- running ---------------------------------------------------------------------------------

def _report(rep: Report, **extra) -> dict:
    out = rep.to_dict()
    out.update(extra)
    return out


def _entries(inst: Instance, kind: str, only: str | None):
    names = inst.names(kind)
    if only is not None:
        if only not in names:
            raise inst.err(f"no {kind} entry named {only!r}")
        names = [only]
    return names


def _structure(inst: Instance, name):
    obj = inst.get(name)
    return obj.factorization_system() if isinstance(obj, reedy.ReedyStructure) else obj


def cmd_validate(inst: Instance, what: str, only=None, budget=None) -> list:
    out = []
    if what == "category":
        for n in _entries(inst, "categories", only):
            out.append(_report(validate_category(inst.category(n)), name=n))
    elif what == "reedy":
        for n in _entries(inst, "reedy", only):
            rep = reedy.validate_reedy(inst.get(n))
            rep.data.pop("chosen", None)
            out.append(_report(rep, name=n))
    elif what == "factsys":
        for n in _entries(inst, "factsys", only):
            rep = reedy.validate_factorization_system(inst.get(n))
            rep.data.pop("chosen", None)
            out.append(_report(rep, name=n))
    elif what == "fibration":
        for n in _entries(inst, "fibrations", only):
            fc = inst.get(n)
            rep = fibmod.classify_projection(fc)
            expect = inst.spec(n).get("expect") or {}
            for flag, want in expect.items():
                have = rep.data["flags"].get(flag)
                if have != want:
                    rep.add("expected projection flag", flag, f"expected {want}, found {have}")
            out.append(_report(rep, name=n))
    elif what == "semifibration":
        for n in _entries(inst, "fibrations", only):
            over = inst.spec(n).get("over")
            if over is None:
                continue
            fc, fs = inst.get(n), _structure(inst, over)
            if set(fs.category.objects) != set(fc.base.objects):
                raise inst.err(f"fibration {n!r}: {over!r} is not a structure on its base", inst.spec(n))
            rep = fibmod.validate_semifibration(fc, fs)
            out.append(_report(rep, name=n, over=over))
    elif what == "model":
        for n in _entries(inst, "models", only):
            out.append(_report(model.validate_model(inst.get(n), budget), name=n))
    elif what == "section":
        for n in _entries(inst, "sections", only):
            out.append(_report(sect.validate_section(inst.get(n)), name=n))
    else:
        raise ValueError(f"unknown validation target {what!r}")
    return out


def _directives(inst: Instance, command: str, only=None) -> list:
    names = [n for n in inst.names("directives") if inst.spec(n).get("command") == command]
    if only is not None:
        names = [n for n in names if n == only]
    return [(n, inst.spec(n)) for n in names]


def _section_list(inst, spec, key, fc, rs, budget, cache):
    if key in spec:
        v = spec[key]
        return [inst.get(n, "sections") for n in ([v] if isinstance(v, str) else v)]
    if "all" not in cache:
        cache["all"] = sect.enumerate_sections(fc, rs, budget)
    return cache["all"]


def _maps_of(inst, spec, budget, seed):
    fc = inst.get(spec["fibration"], "fibrations")
    rs = inst.get(spec["reedy"], "reedy")
    cache: dict = {}
    srcs = _section_list(inst, spec, "source", fc, rs, budget, cache)
    tgts = _section_list(inst, spec, "target", fc, rs, budget, cache)
    maps = []
    for S in srcs:
        for T in tgts:
            maps.extend(sect.enumerate_maps(S, T, budget))
    limit = spec.get("limit")
    sampled = False
    if limit is not None and len(maps) > int(limit):
        maps = random.Random(seed).sample(maps, int(limit))
        sampled = True
    return fc, rs, maps, sampled


def _map_entry(f: sect.SectionMap) -> dict:
    return {"source": plain(f.source.key()), "target": plain(f.target.key()),
            "components": plain(f.components)}


def _classify(f, models) -> dict:
    rr = sect.classify_section_map(f, models)
    return {"flags": dict(rr.flags),
            "per_object": {str(x): dict(o.flags) for x, o in
                           sorted(rr.per_object.items(), key=lambda kv: order_key(kv[0]))}}


ANNOUNCED = {"cof_then_trivfib": (("reedy_cof",), ("reedy_fib", "weq")),
             "trivcof_then_fib": (("reedy_cof", "weq"), ("reedy_fib",))}


def cmd_compute(inst: Instance, what: str, only=None, budget=None, seed=0) -> list:
    out = []
    if what in ("latching", "matching"):
        fn = sect.latching_object if what == "latching" else sect.matching_object
        ds = _directives(inst, what, only)
        targets = [(n, d.get("section"), d.get("at")) for n, d in ds] or \
            [(s, s, None) for s in inst.names("sections")]
        for n, sname, at in targets:
            S = inst.get(sname, "sections")
            objs = [_tid(at)] if at is not None else list(S.domain)
            rows = {}
            for x in objs:
                d = fn(S, x)
                mp = d.to_value if what == "latching" else d.from_value
                rows[x] = {"object": d.obj, "map": mp, "legs": len(d.cone.legs)}
            out.append({"name": n, "section": sname, "ok": True, "data": plain(rows)})
    elif what == "classify":
        for n, d in _directives(inst, "classify", only):
            fc, rs, maps, sampled = _maps_of(inst, d, budget, seed)
            models = inst.models_for(d["fibration"])
            rows = [dict(_map_entry(f), **_classify(f, models)) for f in maps]
            rows.sort(key=lambda r: json.dumps(r, sort_keys=True))
            out.append({"name": n, "ok": True, "maps": len(rows), "sampled": sampled, "data": rows})
    elif what == "factorize":
        for n, d in _directives(inst, "factorize", only):
            fc, rs, maps, sampled = _maps_of(inst, d, budget, seed)
            models = inst.models_for(d["fibration"])
            modes = [d["mode"]] if "mode" in d else sorted(ANNOUNCED)
            rep = Report("factorize")
            counts = {}
            for mode in modes:
                counts[mode] = 0
                left, right = ANNOUNCED[mode]
                for f in maps:
                    try:
                        i, p = sect.factorize_section_map(f, mode, models)
                    except sect.SectionError as exc:
                        rep.add("factorization exists", (mode, plain(f.components)), str(exc))
                        continue
                    if sect.compose_maps(p, i).components != f.components:
                        rep.add("factors compose to the input", (mode, plain(f.components)))
                    fi = sect.classify_section_map(i, models).flags
                    fp = sect.classify_section_map(p, models).flags
                    if not all(fi[k] for k in left) or not all(fp[k] for k in right):
                        rep.add("factors in the announced classes", (mode, plain(f.components)))
                    counts[mode] += 1
            rep.data.update({"factored": counts, "sampled": sampled})
            out.append(_report(rep, name=n))
    elif what == "lift":
        for n, d in _directives(inst, "lift", only):
            fc = inst.get(d["fibration"], "fibrations")
            rs = inst.get(d["reedy"], "reedy")
            sc, mc, lifter = sect.sections_model(fc, rs, inst.models_for(d["fibration"]), budget)
            rep = model.validate_model(mc, budget, axioms=("M4",), lifter=lifter)
            rep.data.pop("M1_reading", None)
            out.append(_report(rep, name=n))
    elif what == "generators":
        for n, d in _directives(inst, "generators", only):
            out.append(_generators(inst, n, d, budget))
    elif what == "kan":
        for n, d in _directives(inst, "kan", only):
            out.append(_kan(inst, n, d, budget))
    elif what == "limits":
        for n, d in _directives(inst, "limits", only):
            out.append(_limits(inst, n, d, budget))
    elif what == "filtration":
        for n in _entries(inst, "reedy", only):
            rs = inst.get(n)
            gf = reedy.good_filtration(rs)
            rep = reedy.check_filtration(rs, gf)
            rep.data["order"] = list(gf.order)
            out.append(_report(rep, name=n))
    elif what == "simplices":
        for n, d in _directives(inst, "simplices", only):
            sco = simplex.simplices_of(inst.category(d["category"]), int(d["n"]))
            rep = reedy.validate_reedy(sco.reedy)
            rep.data.pop("chosen", None)
            for c0, (sub, ini) in sco.fibres.items():
                if ini != simplex.zero_simplex(c0):
                    rep.add("zero simplex is initial in its fibre", c0, f"initial {ini!r}")
            rep.data.update({"objects": len(sco.category.objects),
                             "morphisms": len(sco.category.morphisms),
                             "fibres": {c0: {"objects": len(sub.objects), "initial": ini}
                                        for c0, (sub, ini) in sco.fibres.items()}})
            out.append(_report(rep, name=n))
    else:
        raise ValueError(f"unknown computation {what!r}")
    return out


def _generators(inst, n, d, budget) -> dict:
    fc = inst.get(d["fibration"], "fibrations")
    rs = inst.get(d["reedy"], "reedy")
    x = _tid(d["at"])
    fibre = fc.fibre(x).category
    objs = [_tid(o) for o in d["objects"]] if "objects" in d else sorted(fibre.objects, key=order_key)
    targets = sect.enumerate_sections(fc, rs, budget)
    rep = Report("generator adjunctions")
    certs = []
    for X in objs:
        for S in targets:
            c = sect.adjunction_certificate(fc, rs, x, X, S)
            certs.append(c)
            if c["i_sect"] != c["i_fibre"]:
                rep.add("Sect(i(X), S) = E(x)(X, S(x))", (X, S.key()), f"{c['i_sect']} != {c['i_fibre']}")
            if c["m_sect"] != c["m_fibre"]:
                rep.add("Sect(m(X), S) = E(x)(X, Mat_x S)", (X, S.key()), f"{c['m_sect']} != {c['m_fibre']}")
    gens = 0
    for g in d.get("maps", []):
        gen = sect.quillen_generators(fc, rs, x, _tid(g))
        rep.extend(sect.validate_section_map(gen.map), f"generator {g}: ")
        gens += 1
    rep.data.update({"at": x, "fibre_objects": len(objs), "target_sections": len(targets),
                     "certificates": len(certs), "generators_checked": gens,
                     "totals": {k: sum(c[k] for c in certs)
                                for k in ("i_sect", "i_fibre", "m_sect", "m_fibre")}})
    return _report(rep, name=n)


def _kan(inst, n, d, budget) -> dict:
    F = inst.get(d["functor"], "functors")
    X = inst.get(d["section"], "sections")
    fc = inst.get(d["fibration"], "fibrations")
    rs = inst.get(d["reedy"], "reedy") if "reedy" in d else None
    try:
        R = kan.ran_closed_immersion(F, X, rs, fibered=fc)
    except ValueError as exc:
        raise Precondition(str(exc)) from None
    rep = Report("right Kan extension")
    rep.extend(sect.validate_section(R), "Ran is a section: ")
    rep.extend(kan.ran_restricts_back(F, X, R))
    pairs = []
    for T in kan.all_sections(fc, R.base_reedy, budget):
        back = kan.restrict_section(T, F, X.base_reedy, X.fibered)
        pairs.append((plain(T.key()), kan.hom_count(T, R, budget), kan.hom_count(back, X, budget)))
    rep.extend(kan.adjunction_counts(pairs))
    inputs = kan.all_sections(X.fibered, X.base_reedy, budget)
    bc = {}
    for c in sorted(F.target.objects, key=order_key):
        r = kan.base_change_check(F, c, inputs, budget)
        rep.extend(r, f"base change at {c}: ")
        bc[c] = r.data["checked"]
    rep.data.update({"values": {x: R.local(x) for x in R.values}, "adjunction_pairs": len(pairs),
                     "base_change_inputs": bc})
    return _report(rep, name=n)


def _limits(inst, n, d, budget) -> dict:
    fc = inst.get(d["fibration"], "fibrations")
    structure = inst.get(d["structure"])
    rs = inst.get(d["reedy"], "reedy") if "reedy" in d else None
    shape = inst.category(d["shape"])
    objects = {k: inst.get(v, "sections") for k, v in _pairs(d["objects"])}
    morphisms = {k: inst.get(v, "maps") for k, v in _pairs(d.get("morphisms"))}
    try:
        res = kan.limits_of_sections(fc, structure, shape, objects, morphisms, rs=rs)
    except NoLimit:
        raise
    except ValueError as exc:
        raise Precondition(str(exc)) from None
    tests = sect.enumerate_sections(fc, res.section.base_reedy, budget)
    rep = kan.check_limit(res, shape, objects, morphisms, tests, budget)
    rep.data.update({"values": {x: res.section.local(x) for x in res.section.values},
                     "test_sections": len(tests)})
    return _report(rep, name=n)


# -- check-theorems ------------------------------------------------------------------------------

def _theorem_instance(inst: Instance, n: str, t: dict, budget, seed) -> dict:
    fc = inst.get(t["fibration"], "fibrations")
    rs = inst.get(t["reedy"], "reedy")
    models = inst.models_for(t["fibration"])
    sections: dict = {}
    b = as_budget(budget, "check-theorems")
    sc = sect.sections_category(fc, rs, b)
    cat = sc.category
    sections["sections"] = {"ok": True, "data": {"objects": len(cat.objects),
                                                 "morphisms": len(cat.morphisms)}}
    adm = sect.check_admissibility(fc, rs, models, b, sections=sc)
    admissible = bool(adm.data["admissible"])
    sections["admissibility"] = _report(adm)
    flags = {m: sect.classify_section_map(sc.maps[m], models).flags for m in cat.morphisms}

    def mc_for(x):
        return models[x]
    # pointwise consequence and trivial-class characterization
    pw, tc = Report("pointwise classes"), Report("trivial classes")
    for m in sorted(cat.morphisms, key=order_key):
        f, fl = sc.maps[m], flags[m]
        for x, comp in f.components.items():
            if fl["reedy_cof"] and comp not in mc_for(x).cof:
                pw.add("reedy cofibrations are pointwise cofibrations", (m, x))
            if fl["reedy_fib"] and comp not in mc_for(x).fib:
                pw.add("reedy fibrations are pointwise fibrations", (m, x))
        if fl["trivial_cof"] != (fl["reedy_cof"] and fl["weq"]):
            tc.add("trivial_cof iff reedy_cof and weq", m)
        if fl["trivial_fib"] != (fl["reedy_fib"] and fl["weq"]):
            tc.add("trivial_fib iff reedy_fib and weq", m)
    for rep in (pw, tc):
        rep.data["maps"] = len(flags)
        rep.data["status"] = "certified" if admissible else "uncertified"
    sections["pointwise"] = _report(pw)
    sections["trivial_classes"] = _report(tc)
    # factorization soundness
    fz = Report("factorization soundness")
    for mode, (left, right) in sorted(ANNOUNCED.items()):
        for m in sorted(cat.morphisms, key=order_key):
            f = sc.maps[m]
            try:
                i, p = sect.factorize_section_map(f, mode, models)
            except (sect.SectionError, NoLimit) as exc:
                fz.add("factorization exists", (mode, m), str(exc))
                continue
            if sect.compose_maps(p, i).components != f.components:
                fz.add("factors compose to the input", (mode, m))
            fi = sect.classify_section_map(i, models).flags
            fp = sect.classify_section_map(p, models).flags
            if not all(fi[k] for k in left) or not all(fp[k] for k in right):
                fz.add("factors in the announced classes", (mode, m))
    fz.data["status"] = "certified" if admissible else "uncertified"
    sections["factorization"] = _report(fz)
    # model axioms end to end (retracts: M3, lifting: M4)
    _, mc, lifter = sect.sections_model(fc, rs, models, b, sections=sc, admissible=admissible)
    ax = model.validate_model(mc, b, lifter=lifter)
    ax.data.pop("M1_reading", None)
    ax.data["status"] = "certified" if admissible else "uncertified"
    sections["model_axioms"] = _report(ax)
    # limits of sections: binary products of all pairs, up to a sample
    from .fincat import product_shape
    shape = product_shape(2)
    pairs = [(S, T) for S in sc.sections for T in sc.sections]
    limit = int(t.get("limit_pairs", 12))
    if len(pairs) > limit:
        pairs = random.Random(seed).sample(pairs, limit)
    lim = Report("limits of sections")
    tried = 0
    for S, T in pairs:
        objs = dict(zip(sorted(shape.objects, key=order_key), (S, T)))
        try:
            res = kan.limits_of_sections(fc, rs, shape, objs, {}, rs=rs)
        except (NoLimit, sect.SectionError) as exc:
            lim.data.setdefault("missing", []).append(str(exc))
            continue
        lim.extend(kan.check_limit(res, shape, objs, {}, sc.sections, b))
        tried += 1
    lim.data["products_checked"] = tried
    sections["limits"] = _report(lim)
    if "kan" in t:
        k = t["kan"]
        sections["kan"] = _kan(inst, n, k, b)
    if "normalized" in t:
        sections["normalized"] = _normalized(inst, t["normalized"], fc, models, b)
    soft = {"model_axioms", "pointwise", "trivial_classes", "factorization"} if not admissible else set()
    ok = all(v["ok"] for k, v in sections.items() if k not in soft)
    return {"name": n, "ok": ok, "admissible": admissible, "sections": sections}


def _normalized(inst, sset_name, fc, models, budget) -> dict:
    dx = inst.dx(sset_name)
    rep = Report("normalized sections")
    rep.extend(simplex.check_discrete_opfibration(dx), "discreteness: ")
    rep.extend(simplex.check_segal_comma(dx), "segal comma: ")
    rep.extend(simplex.segal_anchor_system(dx).report, "segal/anchor: ")
    hyp = simplex.check_hypotheses(fc, dx, models, budget)
    rep.extend(hyp, "hypotheses: ")
    secs = sect.enumerate_sections(fc, dx.reedy, budget)
    norm = []
    for s in secs:
        r = simplex.check_normalized(s, dx)
        rep.extend(r)
        if r.data["normalized"]:
            norm.append(s)
    nd = 0
    for s in norm:
        for x in sorted(dx.total.objects, key=order_key):
            if x in dx.degenerate:
                continue
            if not simplex.nondegenerate_matching(s, x, dx).is_iso:
                rep.add("nondegenerate matching comparison is an isomorphism", x)
            nd += 1
    sc, mc, lifter = simplex.normalized_model(fc, dx, models, budget)
    ax = model.validate_model(mc, budget, lifter=lifter)
    rep.extend(ax, "normalized model: ")
    rep.data.update({"sections": len(secs), "normalized": len(norm), "nd_checks": nd,
                     "hypotheses": hyp.data["hypotheses"], "axioms": ax.data["axioms"]})
    return _report(rep)


def cmd_check_theorems(inst: Instance, only=None, budget=None, seed=0) -> list:
    out = []
    for n in _entries(inst, "theorems", only):
        out.append(_theorem_instance(inst, n, inst.spec(n), budget, seed))
    return out


# -- output -----------------------------------------------------------------------------------

def _human(results: list, header: str) -> str:
    lines = [header]
    for r in results:
        status = "ok" if r.get("ok") else "FAIL"
        lines.append(f"  {r.get('name', r.get('subject', '?'))}: {status}")
        for v in r.get("violations", [])[:10]:
            lines.append(f"    violation: {v['law']}  witness={json.dumps(v['witness'], sort_keys=True)}"
                         + (f"  ({v['detail']})" if v.get("detail") else ""))
        for k, sec in sorted((r.get("sections") or {}).items()):
            extra = f" [{sec['data']['status']}]" if isinstance(sec.get("data"), dict) and \
                "status" in sec["data"] else ""
            lines.append(f"    {k}: {'ok' if sec.get('ok') else 'FAIL'}{extra}")
            for v in sec.get("violations", [])[:5]:
                lines.append(f"      violation: {v['law']}  witness={json.dumps(v['witness'], sort_keys=True)}")
    return "\n".join(lines)


def render(payload: dict, fmt: str) -> str:
    if fmt == "machine":
        return json.dumps(payload, sort_keys=True, indent=1, default=repr)
    return _human(payload["results"], f"{payload['command']} {payload['file']}: "
                  + ("ok" if payload["ok"] else "FAIL"))


def run(argv: list | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    p = argparse.ArgumentParser(prog="reedykit", description="Reedy structures on sections: batch checks.")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="cap on enumerated objects/morphisms in brute-force phases")
    p.add_argument("--format", choices=("human", "machine"), default="human")
    p.add_argument("--seed", type=int, default=0, help="seed for sampling when a directive sets a limit")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("validate")
    v.add_argument("path")
    v.add_argument("what", choices=VALIDATE)
    v.add_argument("--name")
    c = sub.add_parser("compute")
    c.add_argument("path")
    c.add_argument("what", choices=COMPUTE)
    c.add_argument("--name")
    t = sub.add_parser("check-theorems")
    t.add_argument("path")
    t.add_argument("--name")
    n = sub.add_parser("normalize", help="print the normalized form of an instance file")
    n.add_argument("path")
    args = p.parse_args(argv)
    budget = Budget(args.budget, "brute-force phases")
    try:
        inst = load_instance(args.path)
        if args.command == "normalize":
            stdout.write(dump_instance(inst))
            return EXIT_OK
        if args.command == "validate":
            results = cmd_validate(inst, args.what, args.name, budget)
            label = f"validate {args.what}"
        elif args.command == "compute":
            results = cmd_compute(inst, args.what, args.name, budget, args.seed)
            label = f"compute {args.what}"
        else:
            results = cmd_check_theorems(inst, args.name, budget, args.seed)
            label = "check-theorems"
    except (OSError, InstanceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except BudgetExceeded as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except NoLimit as exc:
        print(f"missing (co)limit: {exc}", file=sys.stderr)
        return EXIT_NOLIMIT
    except (Precondition, sect.SectionError, fibmod.LiftError, ValueError) as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    ok = all(r.get("ok") for r in results)
    payload = {"command": label, "file": Path(args.path).name, "ok": ok, "results": results}
    stdout.write(render(payload, args.format) + "\n")
    return EXIT_OK if ok else EXIT_VIOLATION


def main() -> None:
    sys.exit(run())
