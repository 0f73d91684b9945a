"""Smoke test for the pylah extension module.

Build and install first, e.g.

    pip install maturin
    maturin build -m crates/py/Cargo.toml --release -o dist
    pip install dist/pylah-*.whl

then run ``python python/smoke_test.py``.
"""

import json
import math
from fractions import Fraction

import pylah


def check_numbers():
    assert pylah.factorial(5) == 120
    assert pylah.factorial(30) == math.factorial(30)
    assert pylah.binomial(-1, 3) == -1
    assert pylah.binomial(4, -1) == 0
    assert pylah.rising(2, 3) == 24
    assert pylah.falling(Fraction(1, 2), 2) == Fraction(-1, 4)

    assert pylah.lah(3, 2) == 6
    assert pylah.lah_bruteforce(3, 2) == 6
    assert pylah.lah_triangle(3)[3] == [0, 6, 6, 1]
    assert pylah.stirling1(3, 2) == -3
    assert pylah.stirling1_from_rising_poly(3) == [0, 2, -3, 1]
    assert pylah.stirling1_from_log_series(3, 2)[3] == Fraction(-1, 2)

    try:
        pylah.lah_bruteforce(10, 2)
    except ValueError:
        pass
    else:
        raise AssertionError("enumeration bound not enforced")


def check_identity():
    for k, n, expect in [(2, 1, 2), (4, 1, 0), (3, 5, -14400), (5, 4, -2880)]:
        assert pylah.rhs_reference(k, n) == expect
        assert pylah.lhs_direct(k, n) == expect
        for r in ["r1", "r2", "r3", "r4", "r5", "r6"]:
            assert pylah.route(r, k, n) == expect, (r, k, n)

    assert pylah.gkp_identity(0, 2, 5, 3) == (1, 1)
    assert pylah.binomial_inversion([1, 2, 3]) == [1, -1, 0]
    assert pylah.hypergeom_2f1_terminating(-1, 3, 2) == Fraction(-1, 2)
    assert pylah.chu_vandermonde_closed(-2, 3, 2) == 0
    assert pylah.exp_derivative_lah(2) == [(Fraction(-2), 1, -3), (Fraction(1), 2, -4)]
    assert pylah.route6_coefficient_chain(2, 2)[1] == 2

    try:
        pylah.rhs_reference(1, 0)
    except ValueError:
        pass
    else:
        raise AssertionError("k >= 2 not enforced")


def check_verify():
    reports = pylah.verify_grid(2, 3, 0, 2)
    assert len(reports) == 6
    assert all(r.all_match for r in reports)
    assert [(r.k, r.n) for r in reports] == [(2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (3, 2)]
    assert sorted(reports[1].routes) == ["r1", "r2", "r3", "r4", "r5", "r6"]

    # the largest value of the full grid does not fit in 64 bits
    big = pylah.verify_grid(25, 25, 50, 50, routes="r1,r5")[0]
    assert big.reference == -math.factorial(50) * math.factorial(51) // math.factorial(26)
    assert big.all_match

    text = pylah.verify_report(2, 2, 1, 1, routes="r1")
    assert json.loads(text) == [
        {"k": 2, "n": 1, "reference": "2", "routes": {"r1": "2"}, "all_match": True}
    ]
    assert pylah.verify_report(2, 5, 0, 10, jobs=1) == pylah.verify_report(2, 5, 0, 10, jobs=4)


if __name__ == "__main__":
    check_numbers()
    check_identity()
    check_verify()
    print("pylah smoke test passed")
