"""Smoke test for the hklab extension module.

Build and run from the repository root:

    cargo build -p hklab-py --release
    cp target/release/libhklab_py.so python/hklab.so
    python3 python/smoke_test.py
"""

import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import hklab  # noqa: E402


def main():
    node = hklab.Ring(3, ["x", "y"], ["x*y"])
    samples = node.hk_samples(3)
    assert [s[2] for s in samples] == [5, 17, 53], samples
    assert samples[2][3] == Fraction(53, 27)
    assert node.hk_estimate(3) == 2
    assert node.dimension() == 1

    a = hklab.Ring(3, ["x"])
    b = hklab.Ring(3, ["y"])
    assert hklab.fiber_product(a, b).hk_estimate(3) == 2
    assert hklab.multi_fiber_product([a, a, a]).hk_estimate(3) == 3
    assert hklab.duplication(a, ["x^2", "x^3"]).hk_estimate(3) == 2

    k = hklab.Module(a, 1, [["x"]])
    assert k.hk_estimate(3) == 0
    assert hklab.idealization(a, k).hk_estimate(3) == 1

    quadric = hklab.Ring.parse("ring H = GF(3)[x,y,z,w] / (x^2 + y^2 + z^2 + w^2);", "H")
    assert abs(quadric.hk_estimate(3) - Fraction(4, 3)) <= Fraction(4, 3) / 25

    assert hklab.zigzag_m(3) == Fraction(1, 3)
    assert hklab.fiber_bound("both-nonregular", 3) == 2 * (1 + Fraction(1, 6591))

    try:
        hklab.Ring(4, ["x"])
    except ValueError as e:
        assert "prime" in str(e)
    else:
        raise AssertionError("GF(4) should be rejected")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
