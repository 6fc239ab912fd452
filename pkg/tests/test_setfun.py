import itertools

import pytest

from reedykit.fincat import chain_category, diagram_from_data, product_shape, cospan_category, discrete_category, parallel_pair_shape, span_category
from reedykit.setfun import (
    CapExceeded, FinSetSlice, SetDiagram, diagram_colimit, diagram_limit, hom_count,
    induced_colimit_map, validate_set_diagram,
)


def _diagram(shape, sets, fns):
    """Fill identity functions automatically."""
    full = dict(fns)
    for x in shape.objects:
        full[shape.identity(x)] = {e: e for e in sets[x]}
    return SetDiagram(shape, sets, full)


def _brute_hom(shape, X, Y):
    objs = list(shape.objects)
    choices = [list(itertools.product(Y.object_sets[x], repeat=len(X.object_sets[x]))) for x in objs]
    n = 0
    for combo in itertools.product(*choices):
        eta = {x: dict(zip(X.object_sets[x], v)) for x, v in zip(objs, combo)}
        if all(eta[shape.tgt(m)][X.fn(m)[a]] == Y.fn(m)[eta[shape.src(m)][a]]
               for m in shape.morphisms for a in X.object_sets[shape.src(m)]):
            n += 1
    return n


def test_limit_examples():
    empty = discrete_category([])
    assert len(diagram_limit(SetDiagram(empty, {}, {})).elements) == 1
    d = _diagram(discrete_category([0, 1]), {0: (0, 1), 1: (0, 1, 2)}, {})
    assert len(diagram_limit(d).elements) == 6
    cs = cospan_category()
    d = _diagram(cs, {"a": (0, 1), "b": (0, 1), "c": (0, 1)},
                 {"u": {0: 0, 1: 1}, "v": {0: 1, 1: 0}})
    lim = diagram_limit(d)
    assert len(lim.elements) == 2
    for fam in lim.elements:
        assert d.fn("u")[lim.projections["a"][fam]] == d.fn("v")[lim.projections["b"][fam]]


def test_colimit_examples():
    empty = discrete_category([])
    assert diagram_colimit(SetDiagram(empty, {}, {})).elements == ()
    s = span_category()
    d = _diagram(s, {x: (0,) for x in "abc"}, {"f": {0: 0}, "g": {0: 0}})
    assert len(diagram_colimit(d).elements) == 1
    pp = parallel_pair_shape()
    d = _diagram(pp, {0: (1, 2), 1: (1, 2)}, {"s": {1: 1, 2: 2}, "t": {1: 2, 2: 1}})
    co = diagram_colimit(d)
    assert len(co.elements) == 1
    # cocone commutes
    for m in ("s", "t"):
        for e in (1, 2):
            assert co.injections[1][d.fn(m)[e]] == co.injections[0][e]


def test_validate_set_diagram_flags_bad_composition():
    c = chain_category(2)
    sets = {0: (0, 1), 1: (0, 1), 2: (0, 1)}
    swap, ident = {0: 1, 1: 0}, {0: 0, 1: 1}
    good = _diagram(c, sets, {(0, 1): swap, (1, 2): swap, (0, 2): ident})
    assert validate_set_diagram(good).ok
    bad = _diagram(c, sets, {(0, 1): swap, (1, 2): swap, (0, 2): swap})
    assert validate_set_diagram(bad).laws() == ["composition"]


def test_hom_count_examples():
    c0 = chain_category(0)
    one = _diagram(c0, {0: (0,)}, {})
    assert hom_count(c0, one, one) == 1
    X = _diagram(c0, {0: (0, 1)}, {})
    Y = _diagram(c0, {0: (0, 1, 2)}, {})
    assert hom_count(c0, X, Y) == 9
    c1 = chain_category(1)
    fold = _diagram(c1, {0: (0, 1), 1: (0,)}, {(0, 1): {0: 0, 1: 0}})
    inj = _diagram(c1, {0: (0,), 1: (0, 1)}, {(0, 1): {0: 0}})
    assert hom_count(c1, fold, inj) == _brute_hom(c1, fold, inj) == 1
    assert hom_count(c1, inj, fold) == _brute_hom(c1, inj, fold)
    n, maps = hom_count(c1, fold, fold, enumerate_all=True)
    assert n == len(maps) == _brute_hom(c1, fold, fold)


def test_hom_count_on_span_matches_brute_force():
    s = span_category()
    X = _diagram(s, {"a": (0, 1), "b": (0, 1), "c": (0,)}, {"f": {0: 1, 1: 0}, "g": {0: 0, 1: 0}})
    Y = _diagram(s, {"a": (0, 1), "b": (0, 1, 2), "c": (0, 1)},
                 {"f": {0: 0, 1: 1, 2: 1}, "g": {0: 0, 1: 1, 2: 0}})
    assert hom_count(s, X, Y) == _brute_hom(s, X, Y)
    assert hom_count(s, Y, X) == _brute_hom(s, Y, X)


def test_induced_colimit_map():
    pp = parallel_pair_shape()
    d = _diagram(pp, {0: (1, 2), 1: (1, 2)}, {"s": {1: 1, 2: 2}, "t": {1: 2, 2: 1}})
    co = diagram_colimit(d)
    m = induced_colimit_map(co, co, {0: {1: 1, 2: 2}, 1: {1: 1, 2: 2}})
    assert set(m) == set(co.elements)


def test_finset_slice_caps():
    fs = FinSetSlice(2)
    c = fs.category
    assert c.objects == (0, 1, 2)
    assert len(c.hom(2, 1)) == 1 and len(c.hom(1, 2)) == 2 and len(c.hom(0, 0)) == 1
    d = diagram_from_data(product_shape(2), c, {0: 2, 1: 1}, {("id", 0): (2, 2, (0, 1)), ("id", 1): (1, 1, (0,))})
    with pytest.raises(CapExceeded):
        fs.colimit(d)
    loose = FinSetSlice(2, strict=False)
    d = diagram_from_data(product_shape(2), loose.category, {0: 2, 1: 1},
                          {("id", 0): (2, 2, (0, 1)), ("id", 1): (1, 1, (0,))})
    assert loose.colimit(d).apex == 3
    assert fs.is_mono((1, 2, (1,))) and not fs.is_epi((1, 2, (1,)))
