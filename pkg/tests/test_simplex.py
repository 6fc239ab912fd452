import math

import pytest

from oracles import boundary_degenerate, monotone, standard_simplex_degenerate
from reedykit.fib import ConstantFibration
from reedykit.fincat import chain_category, discrete_category, find_initial, product_shape, span_category
from reedykit.kan import limits_of_sections
from reedykit.model import builtin_finset_fragment, validate_model
from reedykit.reedy import validate_reedy
from reedykit.sect import enumerate_sections, identity_map
from reedykit.setfun import FinSetSlice
from reedykit.simplex import (
    boundary_simplex, build_truncated_delta, check_discrete_opfibration, check_hypotheses, check_normalized,
    check_segal_comma, classify_normalized, compare_limits, degenerate_objects, degenerate_simplices,
    delta_indexed, is_normalized, monotone_count, nondegenerate_matching, normalized_limits,
    normalized_model, normalized_sections, simplices_of, simplicial_set_of, standard_simplex,
    terminal_simplicial_set, validate_simplicial_set, zero_simplex,
)


def test_truncated_delta_sizes():
    t0 = build_truncated_delta(0)
    assert len(t0.delta.objects) == 1 and len(t0.delta.morphisms) == 1
    assert [len(build_truncated_delta(n).delta.morphisms) for n in range(4)] == [1, 7, 31, 121]
    t2 = build_truncated_delta(2)
    for a in range(3):
        for b in range(3):
            assert len(t2.delta.hom(a, b)) == monotone_count(a, b) == math.comb(a + b + 1, a + 1)
    assert validate_reedy(t2.reedy).ok and validate_reedy(t2.reedy_op).ok


def test_simplicial_set_builders_validate():
    for X in (standard_simplex(2, 2), boundary_simplex(2, 2), terminal_simplicial_set(2)):
        assert validate_simplicial_set(X).ok
        dx = delta_indexed(X)
        assert check_discrete_opfibration(dx).ok
        back = simplicial_set_of(dx)
        assert back.simplices == X.simplices and back.act == X.act


def test_segal_anchor_on_terminal_matches_base():
    t = build_truncated_delta(2)
    from reedykit.simplex import segal_anchor_system
    b = segal_anchor_system(t)
    d = segal_anchor_system(delta_indexed(terminal_simplicial_set(2)))
    assert b.report.ok and d.report.ok
    assert b.report.data == d.report.data


def test_segal_maps_are_interval_inclusions():
    from reedykit.simplex import segal_anchor_system
    t = build_truncated_delta(2)
    rep = segal_anchor_system(t).report
    brute = sum(1 for a in range(3) for b in range(3) for f in monotone(a, b) if f == tuple(range(a + 1)))
    assert rep.data["segal_maps"] == brute == 6
    for n in range(4):
        assert segal_anchor_system(build_truncated_delta(n)).report.ok


def test_segal_comma_is_chain():
    for X in (standard_simplex(1, 2), boundary_simplex(2, 2)):
        assert check_segal_comma(delta_indexed(X)).ok


def test_degenerate_objects():
    X = standard_simplex(2, 2)
    dx = delta_indexed(X)
    degen = degenerate_objects(dx)
    assert not any(A[0] == 0 for A in degen)
    for k in (1, 2):
        assert sum(1 for A in degen if A[0] == k) == standard_simplex_degenerate(k, 2)
        assert {A[1] for A in degen if A[0] == k} == degenerate_simplices(X, k)
    assert (2, (0, 1, 2)) not in degen
    dB = delta_indexed(boundary_simplex(2, 2))
    assert sum(1 for A in degenerate_objects(dB) if A[0] == 2) == boundary_degenerate(2, 2)


def _normalized_instance(X, cap):
    dx = delta_indexed(X)
    fc = ConstantFibration(dx.total, FinSetSlice(cap, strict=False))
    return dx, fc


def test_normalized_vacuous_and_constant():
    dx, fc = _normalized_instance(standard_simplex(1, 0), 1)
    for s in enumerate_sections(fc, dx.reedy):
        assert check_normalized(s, dx).data["normalized"]
    dx, fc = _normalized_instance(standard_simplex(1, 1), 1)
    const = [s for s in enumerate_sections(fc, dx.reedy) if all(s.local(A) == 1 for A in dx.total.objects)]
    assert len(const) == 1 and is_normalized(const[0], dx)


def test_normalized_count_and_witnesses():
    dx, fc = _normalized_instance(standard_simplex(1, 1), 2)
    secs = enumerate_sections(fc, dx.reedy)
    norm = [s for s in secs if is_normalized(s, dx)]
    # free data: sizes a, b at the vertices, c on the edge with two face maps,
    # plus a bijection onto each degenerate edge
    want = sum(a ** c * b ** c * math.factorial(a) * math.factorial(b)
               for a in range(3) for b in range(3) for c in range(3))
    assert len(norm) == want
    for s in secs:
        rep = check_normalized(s, dx)
        assert rep.ok  # both characterizations agree
        if not rep.data["normalized"]:
            assert rep.data["witness_arrow"] in dx.reedy.raising.members


def test_nondegenerate_matching():
    dx, fc = _normalized_instance(standard_simplex(1, 1), 2)
    for s in normalized_sections(fc, dx):
        for A in dx.total.objects:
            if A in dx.degenerate:
                continue
            nd = nondegenerate_matching(s, A, dx)
            assert nd.is_iso
            if A[0] == 0:
                assert nd.obj == 1
    with pytest.raises(ValueError):
        nondegenerate_matching(s, sorted(dx.degenerate)[0], dx)


def test_hypotheses_and_identity_classification():
    dx, fc = _normalized_instance(boundary_simplex(2, 1), 1)
    mc = builtin_finset_fragment(1, strict=False)
    models = {A: mc for A in dx.total.objects}
    hyp = check_hypotheses(fc, dx, models)
    assert hyp.ok and all(hyp.data["hypotheses"].values())
    for s in normalized_sections(fc, dx):
        flags = classify_normalized(identity_map(s), dx, models).data["flags"]
        assert all(flags.values())


def test_normalized_model_on_boundary():
    dx, fc = _normalized_instance(boundary_simplex(2, 1), 1)
    mc = builtin_finset_fragment(1, strict=False)
    models = {A: mc for A in dx.total.objects}
    sc, nm, lifter = normalized_model(fc, dx, models)
    assert len(sc.sections) == 18
    assert validate_model(nm, lifter=lifter).ok


def test_normalized_limits_agree_with_ambient():
    dx, fc = _normalized_instance(standard_simplex(1, 1), 2)
    norm = normalized_sections(fc, dx)
    empty = discrete_category([])
    res = normalized_limits(fc, dx, empty, {}, {})
    assert res.report.ok and all(res.limit.section.local(A) == 1 for A in dx.total.objects)
    pair = product_shape(2)
    small = [s for s in norm if all(s.local(A) <= 1 for A in dx.total.objects)]
    for S in small[:4]:
        for T in small[:4]:
            nl = normalized_limits(fc, dx, pair, {0: S, 1: T}, {})
            assert nl.report.ok
            amb = limits_of_sections(fc, dx.reedy, pair, {0: S, 1: T}, {})
            assert compare_limits(nl.limit, amb).ok
            for A in dx.total.objects:
                assert nl.limit.section.local(A) == S.local(A) * T.local(A)


def test_simplices_of():
    point = chain_category(0)
    sco = simplices_of(point, 2)
    d = build_truncated_delta(2).delta
    assert len(sco.category.objects) == 3 and len(sco.category.morphisms) == len(d.morphisms)
    sco = simplices_of(chain_category(1), 1)
    assert len(sco.category.objects) == 2 + 3 == 5
    assert validate_reedy(sco.reedy).ok
    for c in (chain_category(1), span_category()):
        sco = simplices_of(c, 1)
        for c0, (sub, ini) in sco.fibres.items():
            assert ini == zero_simplex(c0) == find_initial(sub)
    # 1-truncated nerve: simplices of length <= 1 are objects and arrows
    span = span_category()
    assert len(simplices_of(span, 1).category.objects) == len(span.objects) + len(span.morphisms) == 8
