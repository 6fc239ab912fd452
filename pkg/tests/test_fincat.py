import itertools

import pytest

from reedykit.fincat import (
    FunctorData, chain_category, comma_over, comma_under, compose_functors, cospan_category,
    discrete_category, disjoint_union, find_colimit, find_initial, find_limit, find_terminal,
    from_generators, functors_equal, identity_functor, is_connected_components, opposite,
    poset_category, product_category, span_category, validate_category, validate_functor,
)
from reedykit.simplex import build_truncated_delta

from oracles import monotone


def _broken_assoc():
    objs = [0, 1, 2, 3]
    mors = [(f"id{i}", i, i) for i in objs] + [
        ("f", 0, 1), ("g", 1, 2), ("h", 2, 3), ("gf", 0, 2), ("hg", 1, 3), ("p", 0, 3), ("q", 0, 3)]
    table = {("g", "f"): "gf", ("h", "g"): "hg", ("h", "gf"): "p", ("hg", "f"): "q"}
    return from_generators(objs, mors, {i: f"id{i}" for i in objs}, table)


def test_validate_category_basic():
    assert validate_category(discrete_category(["*"])).ok
    assert validate_category(chain_category(1)).ok
    assert validate_category(span_category()).ok


def test_associativity_violation_names_exact_triple():
    rep = validate_category(_broken_assoc())
    assert [(v.law, v.witness) for v in rep.violations] == [("associativity", ("h", "g", "f"))]


def test_missing_composite_reported():
    objs = [0, 1, 2]
    mors = [(f"id{i}", i, i) for i in objs] + [("f", 0, 1), ("g", 1, 2)]
    c = from_generators(objs, mors, {i: f"id{i}" for i in objs}, {})
    assert "composition total" in validate_category(c).laws()


def test_comma_under_examples():
    c2 = chain_category(2)
    cat, proj = comma_under(c2, 2)
    assert len(cat.objects) == 1
    cat, proj = comma_under(c2, 0)
    assert len(cat.objects) == 3 and len(cat.morphisms) == 6
    assert validate_category(cat).ok and validate_functor(proj).ok
    assert sorted(proj.obj(f) for f in cat.objects) == [0, 1, 2]
    s = span_category()
    cat, _ = comma_under(s, "b")
    assert len(cat.objects) == 3
    assert sum(1 for m in cat.morphisms if not cat.is_identity(m)) == 2
    with pytest.raises(KeyError):
        comma_under(s, "zz")


def test_comma_over_examples():
    c2 = chain_category(2)
    assert len(comma_over(c2, 0)[0].objects) == 1
    cat, _ = comma_over(c2, 2)
    assert len(cat.objects) == 3 and len(cat.morphisms) == 6
    d1 = build_truncated_delta(1).delta
    cat, _ = comma_over(d1, 1)
    assert len(cat.objects) == len(monotone(0, 1)) + len(monotone(1, 1)) == 5


def test_initial_terminal():
    empty = discrete_category([])
    assert find_initial(empty) is None and find_terminal(empty) is None
    for n in range(4):
        c = chain_category(n)
        assert find_initial(c) == 0 and find_terminal(c) == n
    s = span_category()
    assert find_initial(s) == "b" and find_terminal(s) is None
    assert find_terminal(cospan_category()) == "c"


def test_initial_tie_broken_by_least_id():
    c = poset_category(["y", "x", "z"], lambda a, b: a in "xy" or a == b)
    assert find_initial(c) == "x"


def test_components():
    assert len(is_connected_components(discrete_category(["a", "b", "c"]))) == 3
    assert is_connected_components(span_category()) == [["a", "b", "c"]]
    u = disjoint_union(chain_category(1), chain_category(2))
    assert len(is_connected_components(u)) == 2


def test_commas_of_all_objects_are_valid():
    for c in (chain_category(3), span_category(), cospan_category(), build_truncated_delta(2).delta):
        for x in c.objects:
            cu, pu = comma_under(c, x)
            co, po = comma_over(c, x)
            assert validate_category(cu).ok and validate_functor(pu).ok
            assert validate_category(co).ok and validate_functor(po).ok
            assert find_initial(cu) == c.identity(x)
            assert find_terminal(co) == c.identity(x)


def test_opposite_and_product():
    c = chain_category(2)
    op = opposite(c)
    assert validate_category(op).ok and find_initial(op) == 2
    p = product_category(chain_category(1), chain_category(1))
    assert validate_category(p).ok and len(p.morphisms) == 9


def test_functor_composition_laws():
    c = chain_category(2)
    s = span_category()
    # all functors span -> [2]: choose objects, morphisms forced
    functors = []
    for a, b, cc in itertools.product(range(3), repeat=3):
        if b <= a and b <= cc:
            functors.append(FunctorData(s, c, {"a": a, "b": b, "c": cc},
                                        {"id_a": (a, a), "id_b": (b, b), "id_c": (cc, cc),
                                         "f": (b, a), "g": (b, cc)}))
    endos = []
    for x, y, z in itertools.product(range(3), repeat=3):
        if x <= y <= z:
            om = {0: x, 1: y, 2: z}
            endos.append(FunctorData(c, c, om, {(i, j): (om[i], om[j]) for i, j in c.morphisms}))
    assert all(validate_functor(f).ok for f in functors + endos)
    ident = identity_functor(c)
    for f in functors:
        assert functors_equal(compose_functors(ident, f), f)
    for g, h in itertools.product(endos, repeat=2):
        for f in functors[:5]:
            assert functors_equal(compose_functors(h, compose_functors(g, f)),
                                  compose_functors(compose_functors(h, g), f))


def test_limit_search_in_poset():
    from reedykit.fincat import diagram_from_data, product_shape
    lat = poset_category(["0", "x", "y", "1"], [("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")])
    d = diagram_from_data(product_shape(2), lat, {0: "x", 1: "y"},
                          {("id", 0): ("x", "x"), ("id", 1): ("y", "y")})
    assert find_limit(lat, d).apex == "0"
    assert find_colimit(lat, d).apex == "1"
