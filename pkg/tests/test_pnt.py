import math

import pytest

from primelens import pnt, primes
from primelens.errors import DomainError

GAMMA = 0.5772156649


def test_info_summary_n10(enc_1e4):
    s = pnt.info_summary(enc_1e4, 10)
    assert s.pi_N == 4
    assert s.bits_per_prime == 2.5
    assert s.harmonic == pytest.approx(2.828968253968254, rel=1e-12)
    assert s.log_N == pytest.approx(math.log(10), rel=1e-15)
    assert s.info_I == pytest.approx(9.0, rel=1e-12)


def test_info_summary_n1e6(enc_1e6):
    s = pnt.info_summary(enc_1e6, 10**6)
    assert s.pi_N == 78498
    assert s.bits_per_prime == pytest.approx(10**6 / 78498, rel=1e-15)
    assert s.bits_per_prime == pytest.approx(12.7392, abs=1e-4)
    assert s.k_proxy == pytest.approx(1.0845, abs=1e-4)
    assert s.info_I == pytest.approx(10**6 - 1, rel=1e-9)


def test_info_summary_validation(enc_1e4):
    with pytest.raises(DomainError):
        pnt.info_summary(enc_1e4, 9)
    with pytest.raises(DomainError):
        pnt.info_summary(enc_1e4, 10**5)


def test_information_total_exact_identity():
    for N in (10**3, 10**6):
        assert pnt.information_total(N, "rational") == N - 1
        assert pnt.information_total(N, "float") == pytest.approx(N - 1, rel=1e-9)
    with pytest.raises(DomainError):
        pnt.information_total(100, "symbolic")


def test_harmonic_euler_mascheroni_window():
    # |H_{N-1} - ln N - gamma| < 1/(2(N-1)) + 1e-6 for every N >= 1e3
    for N in (10**3, 10**4, 10**5, 10**6):
        v = pnt.harmonic_sum(N) - math.log(N)
        assert abs(v - GAMMA) < 1 / (2 * (N - 1)) + 1e-6, N


def test_pnt_ratio_curve_values(enc_1e6):
    rows = pnt.pnt_ratio_curve(enc_1e6, [100, 10**6])
    assert rows[0][1] == pytest.approx(25 * math.log(100) / 100, rel=1e-15)
    assert rows[0][1] == pytest.approx(1.1513, abs=1e-4)
    assert rows[1][1] == pytest.approx(1.0845, abs=1e-3)


def test_pnt_ratio_full_decades_document_the_bump(enc_1e6):
    # the curve is NOT monotone from 1e2: pi(1e3)=168 lifts the ratio before
    # the long decline; frozen values keep that fact visible
    rows = dict(pnt.pnt_ratio_curve(enc_1e6, [10**k for k in range(2, 7)]))
    assert rows[100] == pytest.approx(1.151293, abs=1e-6)
    assert rows[1000] == pytest.approx(1.160503, abs=1e-6)
    assert rows[1000] > rows[100]
    tail = [rows[10**k] for k in range(3, 7)]
    assert all(a > b for a, b in zip(tail, tail[1:]))


def test_pnt_ratio_grid_validation(enc_1e4):
    with pytest.raises(DomainError):
        pnt.pnt_ratio_curve(enc_1e4, [99])
    with pytest.raises(DomainError):
        pnt.pnt_ratio_curve(enc_1e4, [10**5])


def test_lagrangian_stationarity_examples():
    checks = pnt.lagrangian_check([7], lam=1.0, eps=1e-6)
    assert checks[0].q_star == pytest.approx(1 / math.log(7), rel=1e-15)
    assert checks[0].analytic_residual < 1e-10
    checks = pnt.lagrangian_check([100], lam=1.0, eps=1e-6)
    assert checks[0].fd_residual < 1e-6


def test_lagrangian_any_multiplier_is_stationary():
    (chk,) = pnt.lagrangian_check([100], lam=2.0, eps=1e-6)
    assert chk.q_star == pytest.approx(2 / math.log(100), rel=1e-15)
    assert chk.analytic_residual < 1e-10
    assert chk.fd_residual < 1e-6


def test_lagrangian_fd_scales_quadratically():
    (coarse,) = pnt.lagrangian_check([100], lam=1.0, eps=1e-2)
    (fine,) = pnt.lagrangian_check([100], lam=1.0, eps=1e-3)
    assert 50 < coarse.fd_residual / fine.fd_residual < 200


def test_lagrangian_validation():
    with pytest.raises(DomainError):
        pnt.lagrangian_check([2], lam=1.0, eps=1e-6)
    with pytest.raises(DomainError):
        pnt.lagrangian_check([100], lam=1.0, eps=0.5)  # eps >= q*/2
    with pytest.raises(DomainError):
        pnt.lagrangian_check([100], lam=1.0, eps=0.0)
