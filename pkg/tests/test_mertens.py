import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import exact_corrected_product, exact_mertens_product, high_precision_neg_log

from primelens import mertens, primes
from primelens.errors import DomainError


def test_product_n100_exact_rational(enc_1e4):
    got = mertens.mertens_product(100, enc_1e4)
    want = exact_mertens_product(100)
    assert want == Fraction(48, 210)
    assert got == pytest.approx(float(want), rel=1e-12)


def test_product_n4_single_factor(enc_1e4):
    assert mertens.mertens_product(4, enc_1e4) == pytest.approx(0.5, rel=1e-15)


def test_product_n1e8_near_asymptotic(enc_1e4):
    got = mertens.mertens_product(10**8, enc_1e4)
    # frozen from the exact-rational oracle over p <= 1e4
    assert got == pytest.approx(0.06088469245583843, rel=1e-9)
    asymptotic = math.exp(-0.5772156649) / math.log(10**4)
    assert got == pytest.approx(asymptotic, rel=0.01)


def test_log_domain_matches_exact_rational_up_to_1e4(enc_1e4):
    for n in (9, 16, 100, 1234, 10**4):
        want = float(exact_mertens_product(n))
        assert mertens.mertens_product(n, enc_1e4) == pytest.approx(want, rel=1e-12)


def test_corrected_product_examples(enc_1e4):
    got = mertens.corrected_product(100, enc_1e4)
    want = exact_corrected_product(100)
    assert got == pytest.approx(float(want), rel=1e-12)
    assert got == pytest.approx(0.24239331, abs=5e-9)
    assert mertens.corrected_product(4, enc_1e4) == pytest.approx(0.75, rel=1e-15)


def test_corrected_exceeds_exact_by_less_than_bound_1e6(enc_1e4):
    delta = mertens.corrected_product(10**6, enc_1e4) - mertens.mertens_product(10**6, enc_1e4)
    assert 0 < delta <= 1e-3 + 1e-6


def test_insufficient_prime_table():
    small = primes.sieve(50)
    with pytest.raises(DomainError):
        mertens.mertens_product(51**2, small)


def test_error_record_n100(enc_1e4):
    rec = mertens.error_record(100, enc_1e4)
    exact_delta = float(exact_corrected_product(100) - exact_mertens_product(100))
    assert rec.abs_error == pytest.approx(exact_delta, rel=1e-10)
    assert rec.abs_error == pytest.approx(0.013822, abs=1e-6)
    assert rec.bound == pytest.approx(0.11, rel=1e-12)
    assert 0 < rec.product_exact < rec.product_corrected < 1


def test_error_record_n9_two_factors(enc_1e4):
    rec = mertens.error_record(9, enc_1e4)
    assert rec.product_exact == pytest.approx(float(Fraction(1, 3)), rel=1e-12)


def test_error_record_rejects_small_n(enc_1e4):
    with pytest.raises(DomainError):
        mertens.error_record(8, enc_1e4)


def test_relative_error_majorant_1e4(enc_1e4):
    rec = mertens.error_record(10**4, enc_1e4)
    majorant = math.log(10**4) / math.sqrt(10**4) + math.log(10**4) / 10**4
    assert rec.abs_error / rec.product_exact <= majorant


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=9, max_value=10**6))
def test_delta_bound_holds_everywhere(enc_1e4, n):
    rec = mertens.error_record(n, enc_1e4)
    assert 0 <= rec.abs_error <= 1 / math.sqrt(n) + 1 / n


def test_entropy_vs_loglog_values(enc_1e4):
    rows = mertens.entropy_vs_loglog([10**4], enc_1e4)
    n, ent, lll, ratio = rows[0]
    # frozen from the exact-rational oracle: -ln prod_{p<=100}(1-1/p)
    assert ent == pytest.approx(high_precision_neg_log(exact_mertens_product(10**4)), rel=1e-12)
    assert ent == pytest.approx(2.1176229, abs=1e-6)
    assert lll == pytest.approx(2.2203268, abs=1e-6)
    assert ratio == pytest.approx(0.9537438, abs=1e-6)


def test_entropy_vs_loglog_grid_converges(enc_1e4):
    rows = mertens.entropy_vs_loglog([10**2, 10**4, 10**6, 10**8], enc_1e4)
    ratios = [r[3] for r in rows]
    assert all(0.85 < r < 1.05 for r in ratios)
    dev = [abs(r - 1) for r in ratios]
    # |ratio - 1| shrinks along the grid except possibly the first point
    assert all(a > b for a, b in zip(dev[1:], dev[2:]))


def test_entropy_vs_loglog_rejects_small_grid(enc_1e4):
    with pytest.raises(DomainError):
        mertens.entropy_vs_loglog([15], enc_1e4)


def test_constant_check_values(enc_1e4):
    rows = mertens.mertens_constant_check([100, 10**8], enc_1e4)
    assert rows[0][1] == pytest.approx(float(Fraction(48, 210)) * math.log(100), rel=1e-12)
    assert rows[0][1] == pytest.approx(1.0526, abs=1e-4)
    assert rows[1][1] == pytest.approx(mertens.MERTENS_LIMIT_CONSTANT, abs=0.02)


def test_constant_check_successive_ratios_to_one(enc_1e4):
    rows = mertens.mertens_constant_check([10**k for k in range(2, 9)], enc_1e4)
    scaled = [v for _, v in rows]
    ratios = [b / a for a, b in zip(scaled, scaled[1:])]
    assert all(0.9 < r < 1.1 for r in ratios)
    assert ratios[-1] == pytest.approx(1.0, abs=0.01)


def test_scaled_within_5pct_at_large_n(enc_1e4):
    for n in (10**6, 10**7, 10**8):
        (_, scaled), = mertens.mertens_constant_check([n], enc_1e4)
        assert abs(scaled - mertens.MERTENS_LIMIT_CONSTANT) / mertens.MERTENS_LIMIT_CONSTANT < 0.05


def test_product_nonincreasing_across_prime_squares(enc_1e4):
    grid = [4, 8, 9, 24, 25, 48, 49, 120, 121, 168, 169, 10**4]
    vals = [mertens.mertens_product(n, enc_1e4) for n in grid]
    assert all(a >= b for a, b in zip(vals, vals[1:]))
    # constant strictly between consecutive prime squares
    assert mertens.mertens_product(10, enc_1e4) == mertens.mertens_product(24, enc_1e4)
    assert vals[2] < vals[1]  # crossing 9 = 3^2 adds the factor (1 - 1/3)


def test_coprimality_family_contents(enc_1e4):
    fam = mertens.coprimality_family(100, enc_1e4)
    assert fam.interval_limit == 100
    assert [t[0] for t in fam.tests] == [f"coprime-to-{p}" for p in (2, 3, 5, 7)]
    assert [t[1] for t in fam.tests] == [Fraction(1, 2), Fraction(2, 3),
                                         Fraction(4, 5), Fraction(6, 7)]
    corr = mertens.coprimality_family(100, enc_1e4, corrected=True)
    assert corr.tests[0][1] == Fraction(1, 2) + Fraction(1, 100)
