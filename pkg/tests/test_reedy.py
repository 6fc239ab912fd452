import itertools

from reedykit.fincat import (
    all_morphisms, chain_category, discrete_category, from_generators, identities, identity_functor,
    inclusion_functor, isomorphisms, morphism_class, poset_category, span_category, subcategory,
)
from reedykit.reedy import (
    FactorizationSystem, ReedyStructure, check_closed_immersion, check_filtration, check_noether_grading,
    check_open_immersion, direct_structure, good_filtration, inverse_structure, latching_category,
    matching_category, noether_bound, synthesize_degree, validate_factorization_system, validate_reedy,
)
from reedykit.simplex import build_truncated_delta, is_injective, is_surjective

from oracles import monotone


def test_iso_all_factorization_system():
    for c in (chain_category(2), span_category()):
        rep = validate_factorization_system(FactorizationSystem(c, isomorphisms(c), all_morphisms(c)))
        assert rep.ok
        for m in c.morphisms:
            z, l, r = rep.data["chosen"][m]
            assert l == c.identity(c.src(m)) and r == m


def test_delta_surj_inj_factorization_system():
    d = build_truncated_delta(2).delta
    fs = FactorizationSystem(d, morphism_class(d, [m for m in d.morphisms if is_surjective(m)]),
                             morphism_class(d, [m for m in d.morphisms if is_injective(m)]))
    assert validate_factorization_system(fs).ok


def test_span_all_all_not_unique():
    s = span_category()
    rep = validate_factorization_system(FactorizationSystem(s, all_morphisms(s), all_morphisms(s)))
    assert not rep.ok
    assert "f" in [v.witness[0] for v in rep.violations]


def test_chain_structures():
    for n in range(4):
        c = chain_category(n)
        d = direct_structure(c)
        assert d.degree == {i: i for i in range(n + 1)} and validate_reedy(d).ok
        i = inverse_structure(c)
        assert i.degree == {k: n - k for k in range(n + 1)} and validate_reedy(i).ok


def test_span_structures_and_violation():
    s = span_category()
    rs = direct_structure(s)
    assert rs.degree == {"a": 1, "b": 0, "c": 1} and validate_reedy(rs).ok
    assert validate_reedy(inverse_structure(s)).ok
    both = ReedyStructure(s, morphism_class(s, list(identities(s)) + ["f"]), all_morphisms(s), rs.degree)
    rep = validate_reedy(both)
    assert "lowering maps lower the degree" in rep.laws()


def test_synthesize_degree_examples():
    disc = discrete_category("xyz")
    assert synthesize_degree(disc, identities(disc), identities(disc)) == {"x": 0, "y": 0, "z": 0}
    t = build_truncated_delta(2)
    dop = t.delta_op
    assert synthesize_degree(dop, t.reedy_op.lowering, t.reedy_op.raising) == {0: 0, 1: 1, 2: 2}
    # a raising loop pair x -> y -> x
    objs = ["x", "y"]
    mors = [("idx", "x", "x"), ("idy", "y", "y"), ("u", "x", "y"), ("v", "y", "x"),
            ("vu", "x", "x"), ("uv", "y", "y")]
    table = {("v", "u"): "vu", ("u", "v"): "uv", ("vu", "vu"): "vu", ("uv", "uv"): "uv",
             ("u", "vu"): "u", ("vu", "v"): "v", ("v", "uv"): "v", ("uv", "u"): "u"}
    c = from_generators(objs, mors, {"x": "idx", "y": "idy"}, table)
    assert synthesize_degree(c, identities(c), all_morphisms(c)) is None


def _longest_path_oracle(c, rs):
    deg = {x: 0 for x in c.objects}
    for _ in c.objects:
        for m in c.morphisms:
            if c.is_identity(m):
                continue
            s, t = c.src(m), c.tgt(m)
            if m in rs.raising:
                deg[t] = max(deg[t], deg[s] + 1)
            if m in rs.lowering:
                deg[s] = max(deg[s], deg[t] + 1)
    return deg


def test_synthesized_degree_is_minimal_and_valid():
    for n in range(4):
        t = build_truncated_delta(n)
        for rs in (t.reedy, t.reedy_op):
            deg = synthesize_degree(rs.category, rs.lowering, rs.raising)
            assert deg == _longest_path_oracle(rs.category, rs)
            assert validate_reedy(ReedyStructure(rs.category, rs.lowering, rs.raising, deg)).ok


def test_noether_bound_examples():
    nd = noether_bound(chain_category(2))
    assert nd.bound == {0: 2, 1: 1, 2: 0} and check_noether_grading(nd).ok
    # Z/2 as a one-object category
    z2 = from_generators(["*"], [("e", "*", "*"), ("s", "*", "*")], {"*": "e"}, {("s", "s"): "e"})
    assert noether_bound(z2).bound == {"*": 0}
    idem = from_generators(["*"], [("1", "*", "*"), ("e", "*", "*")], {"*": "1"}, {("e", "e"): "e"})
    assert noether_bound(idem) is None


def test_noether_bound_on_posets_and_delta():
    p = poset_category("abcd", [("d", "b"), ("b", "a"), ("b", "c")])
    nd = noether_bound(p)
    assert nd.bound == {"a": 0, "b": 1, "c": 0, "d": 2} and check_noether_grading(nd).ok
    # constant endomorphisms of [1] are non-invertible idempotents
    assert noether_bound(build_truncated_delta(1).delta) is None


def test_latching_matching_categories():
    rs = direct_structure(chain_category(3))
    assert len(latching_category(rs, 0).category.objects) == 0
    for k in range(1, 4):
        lat = latching_category(rs, k).category
        # Lat(k) is a chain with k objects
        assert len(lat.objects) == k
        assert len(lat.morphisms) == k * (k + 1) // 2
    rs = build_truncated_delta(2).reedy_op
    mat = matching_category(rs, 2).category
    brute = sum(1 for m in rs.category.out_of(2) if m in rs.lowering and not rs.category.is_identity(m))
    assert len(mat.objects) == brute == len([f for a in (0, 1) for f in monotone(a, 2) if len(set(f)) == a + 1])


def test_good_filtration_examples():
    gf = good_filtration(direct_structure(chain_category(1)))
    assert gf.order == (0, 1)
    assert [p.category.objects for p in gf.prefixes] == [(0,), (0, 1)]
    rs = direct_structure(span_category())
    assert good_filtration(rs).order == ("b", "a", "c")
    t = build_truncated_delta(2)
    gf = good_filtration(t.reedy)
    assert gf.order == (0, 1, 2) and check_filtration(t.reedy, gf).ok


def test_immersions():
    c = chain_category(1)
    ident = identity_functor(c)
    assert check_closed_immersion(ident).ok and check_open_immersion(ident).ok
    one = subcategory(c, [1])
    inc = inclusion_functor(one, c)
    closed, opened = check_closed_immersion(inc), check_open_immersion(inc)
    assert closed.ok and closed.data["image_is_cosieve"]
    assert not opened.ok and "unique lift of maps into the image" in opened.laws()
    assert not opened.data["image_is_sieve"]
    c2 = chain_category(2)
    nonfull = subcategory(c2, [0, 2], [(0, 0), (2, 2)])
    assert "full" in check_closed_immersion(inclusion_functor(nonfull, c2)).laws()


def test_immersion_characterizations_agree_on_posets():
    p = poset_category("abcd", [("a", "b"), ("b", "c"), ("a", "d")])
    for k in range(1, 4):
        for objs in itertools.combinations("abcd", k):
            f = inclusion_functor(subcategory(p, objs), p)
            cl, op = check_closed_immersion(f), check_open_immersion(f)
            assert cl.ok == cl.data["image_is_cosieve"]
            assert op.ok == op.data["image_is_sieve"]
