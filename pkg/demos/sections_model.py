"""Reedy classes on a category of sections, and the model axioms end to end.

Usage: python3 demos/sections_model.py

Uses the constant fibration FinSet<=2 x [1] -> [1] with the direct structure.
"""
from collections import Counter

from reedykit.fib import ConstantFibration
from reedykit.fincat import chain_category
from reedykit.model import builtin_finset_fragment
from reedykit.reedy import direct_structure
from reedykit.sect import (check_admissibility, classify_section_map, factorize_section_map,
                           sections_category)
from reedykit.setfun import FinSetSlice

base = chain_category(1)
rs = direct_structure(base)
fc = ConstantFibration(base, FinSetSlice(2, strict=False))
mc = builtin_finset_fragment(2, strict=False)
models = {x: mc for x in base.objects}

sc = sections_category(fc, rs, 10 ** 6)
print(f"Sect: {len(sc.sections)} sections, {len(sc.maps)} maps")

adm = check_admissibility(fc, rs, models, sections=sc)
print("admissible:", adm.data["admissible"], " brute force:", adm.data["brute_force"])

tally = Counter()
for f in sc.maps.values():
    fl = classify_section_map(f, models).flags
    tally[(fl["reedy_cof"], fl["reedy_fib"])] += 1
print("(reedy_cof, reedy_fib) counts:", dict(sorted(tally.items())))

# factor one map both ways and show the middle sections
f = next(m for m in sc.maps.values() if not classify_section_map(m, models).flags["reedy_cof"])
for mode in ("cof_then_trivfib", "trivcof_then_fib"):
    i, p = factorize_section_map(f, mode, models)
    mid = {x: i.target.local(x) for x in base.objects}
    print(f"{mode}: middle section sizes {mid}")
