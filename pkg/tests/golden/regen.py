"""Regenerate golden files from the classical Reedy oracle.

Run from the repository root: python3 tests/golden/regen.py
"""
import itertools
import json
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE.parent))

from oracles import Diagram, classify  # noqa: E402
from reedykit.fincat import chain_category  # noqa: E402
from reedykit.reedy import direct_structure  # noqa: E402


def constant_chain1_classify_pair():
    # the sections one_to_two and two_to_two of corpus/constant_chain1.yaml
    rs = direct_structure(chain_category(1))
    m = (0, 1)
    X = Diagram({0: 1, 1: 2}, {m: (0,), (0, 0): (0,), (1, 1): (0, 1)})
    Y = Diagram({0: 2, 1: 2}, {m: (0, 1), (0, 0): (0, 1), (1, 1): (0, 1)})
    rows = []
    for f0 in itertools.product(range(2), repeat=1):
        for f1 in itertools.product(range(2), repeat=2):
            if any(f1[X.apply(m, e)] != Y.apply(m, f0[e]) for e in range(1)):
                continue
            f = {0: f0, 1: f1}
            per = classify(rs, X, Y, f)
            rows.append({"components": {str(k): list(v) for k, v in f.items()},
                         "per_object": {str(k): v for k, v in per.items()}})
    return rows


if __name__ == "__main__":
    out = HERE / "constant_chain1_classify_pair.json"
    out.write_text(json.dumps(constant_chain1_classify_pair(), indent=1, sort_keys=True) + "\n")
    print(out)
