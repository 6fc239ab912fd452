import itertools

import pytest

from conftest import constant_instance
from oracles import classify as oracle_classify, diagram_of_section, map_of_section_map, standard_simplex_degenerate
from reedykit.fib import ConstantFibration, label_presheaf
from reedykit.fincat import chain_category, discrete_category, find_initial, find_terminal, span_category
from reedykit.model import builtin_finset_fragment, builtin_trivial
from reedykit.reedy import direct_structure, inverse_structure
from reedykit.sect import (
    SectionError, SectionMap, adjunction_certificate, canonical_lat_to_mat, check_admissibility,
    classify_section_map, compose_maps, enumerate_maps, extend_section, factorize_section_map,
    identity_map, latching_object, lift_section_square, matching_object, quillen_generators,
    section_from_local, sections_category, validate_section, validate_section_map,
)
from reedykit.setfun import FinSetSlice
from reedykit.simplex import simplicial_section, standard_simplex

FLAGS = ("cof", "fib", "weq", "trivial_cof", "trivial_fib")


def _sec(inst, values, fns):
    """Section of a constant FinSet fibration from sizes and functions on generators."""
    local = {m: (values[inst.base.src(m)], values[inst.base.tgt(m)], tuple(fn)) for m, fn in fns.items()}
    return section_from_local(inst.fc, inst.rs, values, local_arrows=local)


def test_latching_matching_degenerate_cases(chain1_cap2):
    inst = chain1_cap2
    S = _sec(inst, {0: 2, 1: 1}, {(0, 1): (0, 0)})
    assert latching_object(S, 0).obj == 0          # initial set
    assert matching_object(S, 1).obj == 1          # terminal set (Mat empty in the direct structure)
    assert latching_object(S, 1).obj == 2


def test_latching_of_standard_two_simplex():
    S = simplicial_section(standard_simplex(2, 2))
    assert latching_object(S, 2).obj == standard_simplex_degenerate(2, 2) == 9
    assert latching_object(S, 1).obj == standard_simplex_degenerate(1, 2) == 3
    assert latching_object(S, 0).obj == 0


def test_identity_map_classes(chain1_cap2):
    for S in chain1_cap2.sc.sections:
        rep = classify_section_map(identity_map(S), chain1_cap2.models)
        assert all(rep.flags.values())


def _compare_with_oracle(inst):
    mismatches = []
    for mid, f in inst.sc.maps.items():
        got = classify_section_map(f, inst.models).per_object
        X, Y = diagram_of_section(f.source), diagram_of_section(f.target)
        want = oracle_classify(inst.rs, X, Y, map_of_section_map(f))
        for x in inst.base.objects:
            if {k: got[x].flags[k] for k in FLAGS} != want[x]:
                mismatches.append((mid, x))
    return mismatches


@pytest.mark.parametrize("base,kind", [
    (chain_category(1), "direct"), (chain_category(1), "inverse"),
    (chain_category(2), "direct"), (span_category(), "direct"), (span_category(), "inverse")])
def test_classification_matches_classical_oracle(base, kind):
    inst = constant_instance(base, kind, 2 if len(base.objects) < 3 else 1)
    assert _compare_with_oracle(inst) == []


def test_classification_matches_oracle_span_cap2():
    inst = constant_instance(span_category(), "inverse", 2)
    assert len(inst.sc.maps) == 6195
    assert _compare_with_oracle(inst) == []


def test_epi_relative_latching_blocks_cofibration(chain1_cap2):
    inst = chain1_cap2
    S = _sec(inst, {0: 0, 1: 2}, {(0, 1): ()})
    T = _sec(inst, {0: 0, 1: 1}, {(0, 1): ()})
    f = SectionMap(S, T, {0: (0, 0, ()), 1: (2, 1, (0, 0))})
    assert validate_section_map(f).ok
    rep = classify_section_map(f, inst.models)
    assert rep.flags["reedy_cof"] is False and rep.witnesses["reedy_cof"] == 1
    assert rep.flags["reedy_fib"] is True


def test_canonical_map_is_diagonal_for_one_simplex():
    S = simplicial_section(standard_simplex(1, 1))
    part = S.restrict([0])
    canon = canonical_lat_to_mat(part, 1)
    mat = matching_object(part, 1)
    fs = S.fibered.fibre(1).category
    for leg in mat.cone.legs.values():
        src, tgt, fn = fs.compose(leg, canon)
        assert fn == tuple(range(src))


def test_canonical_map_trivial_when_latching_empty(chain1_cap2):
    inst = chain1_cap2
    S = _sec(inst, {0: 2, 1: 1}, {(0, 1): (0, 0)})
    canon = canonical_lat_to_mat(S.restrict([0]), 0)
    assert canon[0] == 0 and canon[1] == 1


def test_extend_section_round_trip():
    S = simplicial_section(standard_simplex(1, 1))
    part = S.restrict([0])
    lat, mat = latching_object(S, 1), matching_object(S, 1)
    ext = extend_section(part, {1: (S.local(1), lat.to_value, mat.from_value)})
    assert ext == S and validate_section(ext).ok


def test_extend_by_latching_object_itself():
    S = simplicial_section(standard_simplex(1, 1))
    part = S.restrict([0])
    lat = latching_object(part, 1)
    fib = S.fibered.fibre(1).category
    ext = extend_section(part, {1: (lat.obj, fib.identity(lat.obj), canonical_lat_to_mat(part, 1))})
    assert validate_section(ext).ok and ext.local(1) == lat.obj


def test_extend_rejects_non_factoring_choice():
    S = simplicial_section(standard_simplex(1, 1), cap=3)
    part = S.restrict([0])
    lat, mat = latching_object(part, 1), matching_object(part, 1)
    bad_b = (2, mat.obj, (1, 2))
    with pytest.raises(SectionError):
        extend_section(part, {1: (2, (lat.obj, 2, (0,) * lat.obj), bad_b)})


def test_factorizations_compose_and_certify(chain1_cap2):
    inst = chain1_cap2
    for mid, f in inst.sc.maps.items():
        for mode, first, second in (("cof_then_trivfib", "reedy_cof", "trivial_fib"),
                                    ("trivcof_then_fib", "trivial_cof", "reedy_fib")):
            i, p = factorize_section_map(f, mode, inst.models)
            assert compose_maps(p, i) == f
            assert classify_section_map(i, inst.models).flags[first]
            assert classify_section_map(p, inst.models).flags[second]


def test_factorization_degree_zero_base_uses_fibre_factorization():
    base = discrete_category(["*"])
    inst = constant_instance(base, "direct", 2)
    mc = inst.models["*"]
    for mid, f in inst.sc.maps.items():
        i, p = factorize_section_map(f, "cof_then_trivfib", inst.models)
        assert (i.components["*"], p.components["*"]) == mc.factor("cf", f.components["*"])


def test_factorization_of_trivial_fibration_trivial_fibres():
    base = chain_category(1)
    fib = chain_category(1)
    fc = ConstantFibration(base, fib)
    rs = direct_structure(base)
    models = {x: builtin_trivial(fib) for x in base.objects}
    sc = sections_category(fc, rs)
    for f in sc.maps.values():
        if classify_section_map(f, models).flags["trivial_fib"]:
            i, p = factorize_section_map(f, "cof_then_trivfib", models)
            assert all(fib.is_identity(c) for c in i.components.values())


def test_lift_matches_exhaustive_search(chain1_cap2):
    inst = chain1_cap2
    secs = {s.key(): s for s in inst.sc.sections}
    A = _sec(inst, {0: 0, 1: 1}, {(0, 1): ()})
    B = _sec(inst, {0: 1, 1: 2}, {(0, 1): (0,)})
    S = _sec(inst, {0: 2, 1: 2}, {(0, 1): (0, 1)})
    T = _sec(inst, {0: 1, 1: 1}, {(0, 1): (0,)})
    assert all(x.key() in secs for x in (A, B, S, T))
    i = SectionMap(A, B, {0: (0, 1, ()), 1: (1, 2, (1,))})
    p = SectionMap(S, T, {0: (2, 1, (0, 0)), 1: (2, 1, (0, 0))})
    top = SectionMap(A, S, {0: (0, 2, ()), 1: (1, 2, (1,))})
    bottom = SectionMap(B, T, {0: (1, 1, (0,)), 1: (2, 1, (0, 0))})
    assert classify_section_map(i, inst.models).flags["trivial_cof"]
    assert classify_section_map(p, inst.models).flags["reedy_fib"]
    h = lift_section_square(i, p, top, bottom, inst.models)
    assert compose_maps(h, i) == top and compose_maps(p, h) == bottom
    candidates = [g for g in enumerate_maps(B, S)
                  if compose_maps(g, i) == top and compose_maps(p, g) == bottom]
    assert h in candidates and len(candidates) == 2


def test_lift_through_isomorphism(chain1_cap2):
    inst = chain1_cap2
    A = _sec(inst, {0: 1, 1: 2}, {(0, 1): (1,)})
    S = _sec(inst, {0: 2, 1: 2}, {(0, 1): (0, 1)})
    i = identity_map(A)
    top = next(iter(enumerate_maps(A, S)))
    p = identity_map(S)
    h = lift_section_square(i, p, top, top, inst.models)
    assert h == top


def test_sections_category_examples():
    fs = FinSetSlice(2, strict=False)
    point = chain_category(0)
    sc = sections_category(ConstantFibration(point, fs), direct_structure(point))
    assert len(sc.sections) == 3 and len(sc.category.morphisms) == sum(b ** a for a in range(3) for b in range(3))
    c1 = chain_category(1)
    sc = sections_category(ConstantFibration(c1, fs), direct_structure(c1))
    assert len(sc.sections) == len(fs.category.morphisms) == 11
    empty = discrete_category([])
    sc = sections_category(ConstantFibration(empty, fs), direct_structure(empty))
    assert len(sc.sections) == 1 and len(sc.category.morphisms) == 1


def test_quillen_generators_over_point():
    fs = FinSetSlice(2, strict=False)
    point = chain_category(0)
    fc = ConstantFibration(point, fs)
    rs = direct_structure(point)
    g = (1, 2, (0,))
    gen = quillen_generators(fc, rs, 0, g)
    assert gen.pieces["iB"].local(0) == 2 and gen.pieces["mA"].local(0) == 0
    assert gen.map.components[0] == g


def test_adjunction_certificate_on_labels():
    base = chain_category(1)
    fc = label_presheaf(base, {0: ("p",), 1: ("r", "s")}, {(0, 1): {"p": "r"}}, 2)
    for rs in (direct_structure(base), inverse_structure(base)):
        sc = sections_category(fc, rs)
        assert len(sc.sections) == 16
        for x in base.objects:
            for X in fc.fibre(x).category.objects:
                for S in sc.sections[::5]:
                    cert = adjunction_certificate(fc, rs, x, X, S)
                    assert cert["i_sect"] == cert["i_fibre"]
                    assert cert["m_sect"] == cert["m_fibre"]


def test_admissibility_on_chain_by_criterion_two(chain1_cap2):
    inst = chain1_cap2
    rep = check_admissibility(inst.fc, inst.rs, inst.models, sections=inst.sc)
    assert rep.data["admissible"]
    assert all(rep.data["criterion_2_per_object"].values())
    assert rep.data["brute_force"]["left"] and rep.data["brute_force"]["right"]


def test_admissibility_of_quillen_presheaf_by_criterion_one():
    base = span_category()
    labels = {"a": ("u",), "b": ("u", "v"), "c": ("w",)}
    fc = label_presheaf(base, labels, {"f": {"u": "u", "v": "u"}, "g": {"u": "w", "v": "w"}}, 1)
    rs = direct_structure(base)
    models = {x: builtin_trivial(fc.fibre(x).category, check=False) for x in base.objects}
    rep = check_admissibility(fc, rs, models, brute_force=False)
    assert all(rep.data["criterion_1_per_object"].values())


def test_pointwise_consequence(chain1_cap2):
    inst = chain1_cap2
    for f in inst.sc.maps.values():
        rep = classify_section_map(f, inst.models)
        if rep.flags["reedy_cof"]:
            assert all(f.components[x] in inst.models[x].cof for x in inst.base.objects)
        if rep.flags["reedy_fib"]:
            assert all(f.components[x] in inst.models[x].fib for x in inst.base.objects)
        assert rep.flags["trivial_cof"] == (rep.flags["reedy_cof"] and rep.flags["weq"])
        assert rep.flags["trivial_fib"] == (rep.flags["reedy_fib"] and rep.flags["weq"])
