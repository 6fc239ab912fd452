import pytest

from reedykit.fib import ConstantFibration
from reedykit.fincat import (
    FunctorData, chain_category, discrete_category, identity_functor, inclusion_functor, poset_category,
    product_shape, span_category, subcategory,
)
from reedykit.kan import (
    all_sections, base_change_check, check_limit, hom_count, limits_of_sections, matching_system,
    pull_back, pushforward_opfib, ran_closed_immersion, ran_restricts_back, restrict_section,
    right_adjoint_sections,
)
from reedykit.reedy import direct_structure, inverse_structure
from reedykit.sect import Section, validate_section
from reedykit.setfun import FinSetSlice, SetDiagram, diagram_limit


def _noether():
    C = poset_category("abcd", [("d", "b"), ("b", "a"), ("b", "c")])
    D = subcategory(C, ["a", "c"])
    F = inclusion_functor(D, C)
    E = ConstantFibration(C, FinSetSlice(2, strict=False))
    return C, D, F, E


def _x_sections(E, F, D):
    FE = pull_back(E, F)
    return FE, all_sections(FE, direct_structure(D))


def test_ran_identity_is_identity():
    C, _, _, E = _noether()
    ident = identity_functor(C)
    FE = pull_back(E, ident)
    for X in all_sections(FE, inverse_structure(C))[:20]:
        R = ran_closed_immersion(ident, X)
        assert {x: R.local(x) for x in C.objects} == {x: X.local(x) for x in C.objects}
        assert ran_restricts_back(ident, X, R).ok


def test_ran_from_empty_is_terminal():
    C, _, _, E = _noether()
    empty = subcategory(C, [])
    F = inclusion_functor(empty, C)
    FE = pull_back(E, F)
    X = Section(FE, direct_structure(empty), {}, {})
    R = ran_closed_immersion(F, X)
    assert all(R.local(x) == 1 for x in C.objects)


def test_ran_values_and_adjunction():
    C, D, F, E = _noether()
    FE, xs = _x_sections(E, F, D)
    rs = inverse_structure(C)
    targets = all_sections(E, rs)
    assert len(xs) == 9
    for X in xs:
        R = ran_closed_immersion(F, X, rs, fibered=E)
        assert validate_section(R).ok and ran_restricts_back(F, X, R).ok
        # a and c are kept, b and d see the product of the two
        assert R.local("b") == R.local("d") == X.local("a") * X.local("c")
        for T in targets[::7]:
            back = restrict_section(T, F, X.base_reedy, X.fibered)
            assert hom_count(T, R) == hom_count(back, X)


def test_base_change_identity_and_noether():
    C, D, F, E = _noether()
    ident = identity_functor(C)
    FE = pull_back(E, ident)
    xs = all_sections(FE, inverse_structure(C))[:10]
    rep = base_change_check(ident, "d", xs)
    assert rep.ok and rep.data["identical"] == rep.data["checked"] == 10
    FE, xs = _x_sections(E, F, D)
    for c in C.objects:
        rep = base_change_check(F, c, xs)
        assert rep.ok and rep.data["checked"] == 9
    with pytest.raises(ValueError):
        base_change_check(F, "a")


def test_matching_system_against_setfun():
    C, _, _, E = _noether()
    rs = inverse_structure(C)
    S = [s for s in all_sections(E, rs) if s.local("a") == 2 and s.local("c") == 2 and s.local("b") == 1][0]
    low = S.restrict(["a", "c"])
    ms = matching_system(E, low, 1)
    assert list(ms.entries) == ["b"] and ms.obj("b") == 4
    # the same limit in setfun over the comma b\C_0 (discrete on b->a, b->c)
    shape = product_shape(2)
    sets = {0: tuple(range(S.local("a"))), 1: tuple(range(S.local("c")))}
    d = SetDiagram(shape, sets, {shape.identity(i): {e: e for e in sets[i]} for i in (0, 1)})
    assert len(diagram_limit(d).elements) == ms.obj("b")
    assert matching_system(E, S, 5).entries == {}
    top = matching_system(E, S.restrict(["a", "b", "c"]), 2)
    assert top.obj("d") == S.local("b")


def test_pushforward_along_opfibration():
    D = poset_category(["p", "q", "r"], [("p", "r"), ("q", "r")])
    C = chain_category(1)
    F = FunctorData(D, C, {"p": 0, "q": 0, "r": 1},
                    {("p", "p"): (0, 0), ("q", "q"): (0, 0), ("r", "r"): (1, 1), ("p", "r"): (0, 1),
                     ("q", "r"): (0, 1)})
    E = ConstantFibration(C, FinSetSlice(2, strict=False))
    FE = pull_back(E, F)
    ts = [T for T in all_sections(FE, direct_structure(D)) if T.local("p") + T.local("q") <= 2]
    ss = all_sections(E, direct_structure(C))
    for T in ts:
        P = pushforward_opfib(F, T, direct_structure(C))
        assert P.local(0) == T.local("p") + T.local("q") and P.local(1) == T.local("r")
        for S in ss[::3]:
            back = restrict_section(S, F, T.base_reedy, T.fibered)
            assert hom_count(P, S) == hom_count(T, back)


def test_pushforward_identity():
    C = chain_category(1)
    E = ConstantFibration(C, FinSetSlice(2, strict=False))
    ident = identity_functor(C)
    FE = pull_back(E, ident)
    for T in all_sections(FE, direct_structure(C)):
        P = pushforward_opfib(ident, T)
        assert {x: P.local(x) for x in C.objects} == {x: T.local(x) for x in C.objects}


def test_limits_of_sections_empty_and_pair():
    s = span_category()
    rs = inverse_structure(s)
    E = ConstantFibration(s, FinSetSlice(2, strict=False))
    empty = discrete_category([])
    res = limits_of_sections(E, rs, empty, {}, {})
    assert all(res.section.local(x) == 1 for x in s.objects)
    secs = all_sections(E, rs)
    A = [x for x in secs if x.local("b") == 2 and x.local("a") == 1 and x.local("c") == 2][0]
    B = [x for x in secs if x.local("b") == 1 and x.local("a") == 1 and x.local("c") == 1][0]
    pair = product_shape(2)
    res = limits_of_sections(E, rs, pair, {0: A, 1: B}, {})
    assert {x: res.section.local(x) for x in s.objects} == {"a": 1, "b": 2, "c": 2}
    rep = check_limit(res, pair, {0: A, 1: B}, {}, secs[::4])
    assert rep.ok and rep.data["cones_checked"] > 0


def test_right_adjoint_identity():
    C = chain_category(1)
    E = ConstantFibration(C, FinSetSlice(2, strict=False))
    ident = identity_functor(C)
    rs = direct_structure(C)
    FE = pull_back(E, ident)
    for X in all_sections(FE, rs):
        Y = right_adjoint_sections(ident, X, rs, rs)
        assert {x: Y.local(x) for x in C.objects} == {x: X.local(x) for x in C.objects}
        assert validate_section(Y).ok
