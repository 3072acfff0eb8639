"""Smoke test for the hsimplex extension module.

Build and run from the repository root:

    cargo build -p hsimplex-py --features extension-module --release
    cp target/release/libhsimplex.so python/hsimplex.so
    python3 python/smoke_test.py
"""

import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import hsimplex  # noqa: E402


def main():
    for method in ("naive", "recurrence", "closed_form"):
        assert hsimplex.h(2, [1, 2, 3], method) == 25
    assert hsimplex.h(2, ["-1/2", 3], "closed") == Fraction(31, 4)
    assert hsimplex.h(1, [Fraction(1, 2), Fraction(1, 3)]) == Fraction(5, 6)

    assert hsimplex.difference_product([1, 2, 4]) == 6
    assert hsimplex.vanishing_sum(0, [1, 2, 3]) == 0
    assert hsimplex.vanishing_sum(3, [1, 2, 3]) == 6

    assert hsimplex.det([["1/2", "1/3"], ["1/4", "1/5"]]) == Fraction(1, 60)
    assert hsimplex.det(hsimplex.vandermonde([1, 2, 3])) == 2
    assert hsimplex.det(hsimplex.alternant(1, [1, 2, 3])) == 12

    tri = hsimplex.CurveSimplex([2, -3, 1], [0, 1, 2])
    assert tri.area() == 1
    assert tri.signed_area() == 1
    assert tri.volume()["simplex_volume"] == Fraction(1, 3)
    assert isinstance(tri.area(), Fraction)

    cubic = hsimplex.CurveSimplex([0, 0, 0, 1], [2, 1, 3, 4])
    assert cubic.volume()["det"] == -12
    assert cubic.volume(direct=True)["det"] == -12

    try:
        hsimplex.h(2, [1, 1], "closed")
    except hsimplex.DomainError:
        pass
    else:
        raise AssertionError("repeated nodes accepted")
    try:
        hsimplex.h(2, ["1/0"])
    except ValueError as e:
        assert not isinstance(e, hsimplex.DomainError)
    else:
        raise AssertionError("zero denominator accepted")

    report = hsimplex.verify("volume", trials=50, seed=7)
    assert report["failures"] == 0 and report["trials"] == 50, report
    again = hsimplex.verify("volume", trials=50, seed=7)
    report.pop("elapsed_ms")
    again.pop("elapsed_ms")
    assert report == again

    print("hsimplex smoke test ok:", repr(tri))


if __name__ == "__main__":
    main()
