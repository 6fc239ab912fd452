"""Truncated Delta as a Reedy category, and latching objects of simplicial sets.

Usage: python3 demos/latching_simplices.py
"""
from reedykit.reedy import good_filtration, validate_reedy
from reedykit.sect import latching_object, matching_object
from reedykit.simplex import (boundary_simplex, build_truncated_delta, degenerate_objects, delta_indexed,
                              simplicial_section, standard_simplex)

t = build_truncated_delta(2)
print("Delta<=2:", len(t.delta.objects), "objects,", len(t.delta.morphisms), "morphisms")
print("Reedy structure valid:", validate_reedy(t.reedy).ok, " on the opposite:", validate_reedy(t.reedy_op).ok)
print("good filtration of Delta^op<=2:", good_filtration(t.reedy_op).order)

for name, X in (("Delta^2", standard_simplex(2, 2)), ("boundary of Delta^2", boundary_simplex(2, 2))):
    S = simplicial_section(X)
    print(f"\n{name}: sizes", [X.size(k) for k in range(3)])
    for k in range(3):
        # latching = degenerate k-simplices, matching = compatible boundary data
        print(f"  [{k}] latching {latching_object(S, k).obj:3d}   matching {matching_object(S, k).obj:3d}")
    degen = degenerate_objects(delta_indexed(X))
    print("  degenerate simplices:", sorted(degen))
