from fractions import Fraction
from math import comb

import mpmath
import pytest

import hypermeasure as hm


def test_poly_small_cases():
    assert hm.poly_str(1, 3, 1) == "1 + 2z"
    assert hm.x_poly(1, 3, 0) == [Fraction(1)]


def test_x_poly_matches_hypergeometric_sum():
    # X_{m,n,r}(z) = 2F1(-r, -r - m/n; 1 - m/n; z), summed here from scratch
    for m, n, r in [(1, 3, 4), (1, 4, 5), (2, 5, 3), (3, 7, 6)]:
        nu = Fraction(m, n)
        want = []
        for k in range(r + 1):
            num = Fraction(1)
            for i in range(k):
                num *= Fraction(-r + i) * (-r - nu + i) / ((1 - nu + i) * (i + 1))
            want.append(num)
        assert hm.x_poly(m, n, r) == want


def test_y_poly_is_reversal():
    for m, n, r in [(1, 3, 5), (2, 7, 4)]:
        assert hm.y_poly(m, n, r) == list(reversed(hm.x_poly(m, n, r)))


def test_denominator_clears_coefficients():
    for m, n, r in [(1, 3, 6), (1, 5, 9), (3, 8, 7)]:
        D = int(hm.d_mnr(m, n, r))
        assert all((c * D).denominator == 1 for c in hm.x_poly(m, n, r))


def test_remainder_against_mpmath():
    mpmath.mp.dps = 40
    for m, n, r, z in [(1, 3, 2, "0.5"), (1, 4, 3, "0.25"), (2, 5, 4, "0.8")]:
        re, im = hm.hyp2f1_remainder(m, n, r, z, "0", 30)
        nu = mpmath.mpf(m) / n
        want = mpmath.hyp2f1(r + 1 - nu, r + 1, 2 * r + 2, 1 - mpmath.mpf(z))
        assert abs(mpmath.mpf(re) - want) < mpmath.mpf(10) ** -25 * abs(want)
        assert abs(mpmath.mpf(im)) < mpmath.mpf(10) ** -25


def test_measure_valid_and_invalid():
    good = hm.measure("128", "125", 1, 3)
    assert good["valid"] and good["case"] == "rational"
    assert good["kappa"] < 2.5
    bad = hm.measure("3", "1", 1, 3)
    assert not bad["valid"]
    assert bad["kappa"] is None


def test_measure_unit_case():
    res = hm.measure("8+sqrt(-3)", "8-sqrt(-3)", 1, 3)
    assert res["case"] == "unit"
    assert res["d"] == -12


def test_errors_are_translated():
    with pytest.raises(hm.HypermeasureError):
        hm.x_poly(2, 4, 3)
    with pytest.raises(hm.HypermeasureError):
        hm.measure("2", "3", 1, 3)


def test_tables_csv_header():
    first = hm.tables_csv().splitlines()[0]
    assert first.startswith("n,")
