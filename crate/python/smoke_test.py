"""Smoke test for the arbormz extension module.

Build and run from the repository root:

    cargo build -p arbormz-python --release --features extension-module
    cp target/release/libarbormz_py.so python/arbormz.so
    python3 python/smoke_test.py
"""

import math
import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import arbormz  # noqa: E402


def main() -> None:
    assert arbormz.quasi_shuffle("y2", "y3") == {"y2.y3": 1, "y3.y2": 1, "y5": 1}
    assert arbormz.shuffle("x0.x1", "x1") == {"x0.x1.x1": 2, "x1.x0.x1": 1}
    assert arbormz.s_map("y3") == "x0.x0.x1"

    assert arbormz.arborify("x1(x0,x1(x0))") == {"x0.x0.x1.x1": 2, "x0.x1.x0.x1": 1}
    assert arbormz.arborify("y3(y1,y2)") == {"y1.y2.y3": 1, "y2.y1.y3": 1, "y3.y3": 1}

    cut = arbormz.coproduct("y1(y1,y1)")
    assert cut[("y1", "y1(y1)")] == 2
    assert len(arbormz.enumerate_trees(5)) == 9

    assert arbormz.hoffman_log("y1.y2.y4")["y7"] == Fraction(1, 3)

    assert math.isclose(arbormz.zeta_value([2]), math.pi**2 / 6, abs_tol=1e-9)
    assert math.isclose(arbormz.zeta_tree("x1(x0,x0(x0))"), 3 * math.pi**4 / 90, abs_tol=1e-8)
    assert arbormz.regularize("y1") == {1: {"e": 1}}
    assert arbormz.check_bmz("y1.y2") <= 1e-8

    forest = arbormz.Forest("y3(y2,y2)")
    assert forest.grade == 3 and forest.is_convergent()
    assert (forest * arbormz.Forest("y2")).grade == 4

    try:
        arbormz.zeta_tree("y3(y1,y2)")
    except ValueError as e:
        assert "y1" in str(e)
    else:
        raise AssertionError("divergent forest accepted")

    failed = [name for name, ok in arbormz.selftest() if not ok]
    assert not failed, failed
    print("python smoke test passed")


if __name__ == "__main__":
    main()
