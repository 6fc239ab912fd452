"""Property tests for the library invariants on randomly generated instances."""
import itertools

from hypothesis import HealthCheck, given, settings, strategies as st

from conftest import constant_instance
from reedykit.fincat import (
    FunctorData, chain_category, comma_over, comma_under, compose_functors, cospan_category, find_initial,
    find_terminal, functors_equal, identity_functor, opposite, parallel_pair_shape,
    poset_category, product_category, span_category, validate_category, validate_functor,
)
from reedykit.reedy import (
    check_filtration, check_noether_grading, direct_structure, good_filtration, inverse_structure,
    latching_category, noether_bound, validate_factorization_system, validate_reedy, FactorizationSystem,
)
from reedykit.model import classify
from reedykit.sect import classify_section_map
from reedykit.setfun import SetDiagram, diagram_colimit, diagram_limit, validate_set_diagram
from reedykit.simplex import boundary_simplex, delta_indexed, standard_simplex

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def posets(draw, max_size=5):
    n = draw(st.integers(1, max_size))
    edges = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=8))
    # orient every edge upward so the closure is antisymmetric
    rel = {(a, b) for a, b in edges if a < b} | {(a, a) for a in range(n)}
    changed = True
    while changed:
        extra = {(a, d) for (a, b) in rel for (c, d) in rel if b == c} - rel
        rel |= extra
        changed = bool(extra)
    return poset_category(range(n), rel)


def _is_leq(c, a, b):
    return bool(c.hom(a, b))


@st.composite
def poset_functors(draw):
    c, d = draw(posets(4)), draw(posets(4))
    # greedy monotone map: each element goes to some upper bound of the images below it
    fo = {}
    for x in sorted(c.objects):
        below = [fo[y] for y in fo if _is_leq(c, y, x)]
        cands = [t for t in d.objects if all(_is_leq(d, b, t) for b in below)]
        if not cands:
            return None
        fo[x] = draw(st.sampled_from(sorted(cands)))
    return FunctorData(c, d, fo, lambda m: (fo[m[0]], fo[m[1]]))


@SETTINGS
@given(posets())
def test_commas_valid_with_initial_terminal(c):
    assert validate_category(c).ok
    for x in c.objects:
        under, pu = comma_under(c, x)
        over, po = comma_over(c, x)
        assert validate_category(under).ok and validate_functor(pu).ok
        assert validate_category(over).ok and validate_functor(po).ok
        assert find_initial(under) is not None and find_terminal(over) is not None


@SETTINGS
@given(posets())
def test_reedy_structures_of_posets(c):
    for rs in (direct_structure(c), inverse_structure(c)):
        assert validate_reedy(rs).ok
        fs = FactorizationSystem(c, rs.lowering, rs.raising)
        assert validate_factorization_system(fs, strict=True).ok
        gf = good_filtration(rs)
        assert check_filtration(rs, gf).ok
        assert sorted(gf.order) == sorted(c.objects)
        for x in c.objects:
            if rs.degree[x] == 0:
                assert not latching_category(rs, x).category.objects


@SETTINGS
@given(posets())
def test_noether_grading(c):
    nd = noether_bound(c)
    assert nd is not None  # posets have no non-identity endomorphisms
    assert check_noether_grading(nd).ok
    for a, b in itertools.product(c.objects, repeat=2):
        if nd.bound[a] < nd.bound[b]:
            assert not c.hom(a, b)


@SETTINGS
@given(posets(3), posets(3))
def test_products_and_opposites(c, d):
    p = product_category(c, d)
    assert validate_category(p).ok
    assert len(p.morphisms) == len(c.morphisms) * len(d.morphisms)
    assert validate_category(opposite(opposite(c))).ok


@SETTINGS
@given(st.lists(poset_functors(), min_size=1, max_size=1))
def test_functor_laws(fs):
    f = fs[0]
    if f is None:
        return
    assert validate_functor(f).ok
    idc, idd = identity_functor(f.source), identity_functor(f.target)
    assert functors_equal(compose_functors(f, idc), f)
    assert functors_equal(compose_functors(idd, f), f)
    g = FunctorData(f.target, f.target, lambda x: x, lambda m: m)
    h = FunctorData(f.target, f.target, lambda x: x, lambda m: m)
    assert functors_equal(compose_functors(h, compose_functors(g, f)),
                          compose_functors(compose_functors(h, g), f))


# -- set-valued diagrams -----------------------------------------------------------------

SHAPES = {"span": span_category(), "cospan": cospan_category(), "pair": parallel_pair_shape()}


@st.composite
def free_shape_diagrams(draw):
    """Diagrams on shapes without nontrivial composites: any functions will do."""
    shape = SHAPES[draw(st.sampled_from(sorted(SHAPES)))]
    sizes = {x: draw(st.integers(0, 3)) for x in shape.objects}
    fns = {}
    for m in shape.morphisms:
        a, b = shape.src(m), shape.tgt(m)
        if shape.is_identity(m):
            fns[m] = {e: e for e in range(sizes[a])}
        elif sizes[b] == 0 and sizes[a] > 0:
            sizes[b] = 1
            return draw(free_shape_diagrams())
        else:
            fns[m] = {e: draw(st.integers(0, sizes[b] - 1)) for e in range(sizes[a])}
    return SetDiagram(shape, {x: tuple(range(k)) for x, k in sizes.items()}, fns)


@st.composite
def poset_diagrams(draw):
    """X(x) = {g : a_g <= x} with inclusions, for random anchors a_g."""
    c = draw(posets(4))
    anchors = draw(st.lists(st.sampled_from(sorted(c.objects)), max_size=4))
    sets = {x: tuple(g for g, a in enumerate(anchors) if _is_leq(c, a, x)) for x in c.objects}
    fns = {m: {e: e for e in sets[c.src(m)]} for m in c.morphisms}
    return SetDiagram(c, sets, fns)


def _families(d):
    objs = sorted(d.shape.objects)
    out = 0
    for choice in itertools.product(*[d.object_sets[x] for x in objs]):
        fam = dict(zip(objs, choice))
        if all(d.fn(m)[fam[d.shape.src(m)]] == fam[d.shape.tgt(m)] for m in d.shape.morphisms):
            out += 1
    return out


def _cocones_to_two(d):
    objs = sorted(d.shape.objects)
    slots = [(x, e) for x in objs for e in d.object_sets[x]]
    out = 0
    for vals in itertools.product((0, 1), repeat=len(slots)):
        v = dict(zip(slots, vals))
        if all(v[(d.shape.src(m), e)] == v[(d.shape.tgt(m), d.fn(m)[e])]
               for m in d.shape.morphisms for e in d.object_sets[d.shape.src(m)]):
            out += 1
    return out


@SETTINGS
@given(st.one_of(free_shape_diagrams(), poset_diagrams()))
def test_limit_colimit_universal_counts(d):
    assert validate_set_diagram(d).ok
    # cones from a point are the limit's elements; cocones into {0,1} are subsets of the colimit
    assert len(diagram_limit(d).elements) == _families(d)
    assert 2 ** len(diagram_colimit(d).elements) == _cocones_to_two(d)


@SETTINGS
@given(poset_diagrams())
def test_initial_terminal_shortcuts(d):
    i, t = find_initial(d.shape), find_terminal(d.shape)
    if i is not None:
        assert len(diagram_limit(d).elements) == len(d.object_sets[i])
    if t is not None:
        assert len(diagram_colimit(d).elements) == len(d.object_sets[t])


# -- sections ----------------------------------------------------------------------------

_INSTANCES = {}


def _inst(key):
    if key not in _INSTANCES:
        base, kind, cap = key
        cat = {"chain1": chain_category(1), "chain2": chain_category(2), "span": span_category()}[base]
        _INSTANCES[key] = constant_instance(cat, kind, cap)
    return _INSTANCES[key]


@SETTINGS
@given(st.sampled_from([("chain1", "direct", 2), ("chain1", "inverse", 2), ("span", "direct", 1),
                        ("span", "inverse", 1), ("chain2", "direct", 1)]), st.randoms(use_true_random=False))
def test_section_map_class_invariants(key, rnd):
    inst = _inst(key)
    maps = list(inst.sc.maps.values())
    for f in rnd.sample(maps, min(25, len(maps))):
        cl = classify_section_map(f, inst.models)
        fl = cl.flags
        assert fl["trivial_cof"] == (fl["reedy_cof"] and fl["weq"])
        assert fl["trivial_fib"] == (fl["reedy_fib"] and fl["weq"])
        if fl["reedy_cof"]:
            assert all(classify(inst.models[x], f.components[x]) >= {"cof"} for x in inst.base.objects)
        if fl["reedy_fib"]:
            assert all(classify(inst.models[x], f.components[x]) >= {"fib"} for x in inst.base.objects)


@settings(max_examples=10, deadline=None)
@given(st.sampled_from([(standard_simplex, 1, 1), (standard_simplex, 2, 2), (boundary_simplex, 2, 1),
                        (boundary_simplex, 2, 2)]))
def test_delta_indexed_morphisms_opcartesian(case):
    build, k, n = case
    dx = delta_indexed(build(k, n))
    assert all(dx.fibration.is_opcartesian(m) for m in dx.total.morphisms)
