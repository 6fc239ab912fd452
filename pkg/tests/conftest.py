import pytest

from reedykit.fib import ConstantFibration
from reedykit.fincat import chain_category, span_category
from reedykit.model import builtin_finset_fragment
from reedykit.reedy import direct_structure, inverse_structure
from reedykit.sect import sections_category
from reedykit.setfun import FinSetSlice


class ConstantInstance:
    """Constant FinSet<=cap fibration over a Reedy base, with its sections category."""

    def __init__(self, base, rs, cap):
        self.base = base
        self.rs = rs
        self.cap = cap
        self.fc = ConstantFibration(base, FinSetSlice(cap, strict=False))
        mc = builtin_finset_fragment(cap, strict=False)
        self.models = {x: mc for x in base.objects}
        self._sc = None

    @property
    def sc(self):
        if self._sc is None:
            self._sc = sections_category(self.fc, self.rs, 10 ** 7)
        return self._sc


def constant_instance(base, rs_kind, cap):
    rs = direct_structure(base) if rs_kind == "direct" else inverse_structure(base)
    return ConstantInstance(base, rs, cap)


@pytest.fixture(scope="session")
def chain1_cap2():
    return constant_instance(chain_category(1), "direct", 2)


@pytest.fixture(scope="session")
def span_inverse_cap1():
    return constant_instance(span_category(), "inverse", 1)
