"""Tests for expansion families, evaluation, mean values, and shifts."""

import math

import pytest

from crlab.core_arith import divisors, sigma_real, zeta
from crlab.cr_sum import cr_sum_period_row
from crlab.expansion import (
    ExpansionCoefficients,
    as_plain_n,
    coefficients_from_csv_text,
    coefficients_to_csv_text,
    evaluate,
    is_period_exact,
    mean_value_coefficient,
    shift_coefficients,
    sigma_expansion,
    tau_weighted_norm,
)


def brute_phi(n: int) -> int:
    return sum(1 for m in range(1, n + 1) if math.gcd(m, n) == 1)


def brute_mobius(n: int) -> int:
    count = 0
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            count += 1
        p += 1
    if n > 1:
        count += 1
    return -1 if count % 2 else 1


def sigma_over_n(n: int) -> float:
    return sigma_real(n, 1.0) / n


# --- closed-form family ------------------------------------------------------


def test_sigma_expansion_coefficient_examples():
    fam = sigma_expansion(1, 1, 5)
    assert abs(fam.coefficient(1) - 1.6449341) < 1e-6
    assert abs(fam.coefficient(2) - 0.4112335) < 1e-6
    fam22 = sigma_expansion(2, 2, 3)
    assert abs(fam22.coefficient(1) - 1.2020569) < 1e-6


def test_sigma_expansion_structure():
    fam = sigma_expansion(1, 2, 50)
    assert fam.argument_mode == "n_to_s"
    assert fam.r_max == 50
    assert all(c > 0 for c in fam.coeffs)
    assert all(a > b for a, b in zip(fam.coeffs, fam.coeffs[1:]))
    for r in range(1, 51):
        assert fam.coefficient(r) == zeta(2.0) / r**4


def test_family_validation():
    with pytest.raises(ValueError):
        ExpansionCoefficients(s=0, argument_mode="plain_n", coeffs=(1.0,), provenance="x")
    with pytest.raises(ValueError):
        ExpansionCoefficients(s=1, argument_mode="weird", coeffs=(1.0,), provenance="x")
    with pytest.raises(ValueError):
        sigma_expansion(0, 1, 5)


def test_as_plain_n():
    fam = sigma_expansion(1, 1, 4)
    plain = as_plain_n(fam)
    assert plain.argument_mode == "plain_n"
    assert plain.coeffs == fam.coeffs
    with pytest.raises(ValueError):
        as_plain_n(sigma_expansion(1, 2, 4))


# --- evaluation --------------------------------------------------------------


def test_evaluate_empty_truncation_is_zero():
    empty = ExpansionCoefficients(s=1, argument_mode="plain_n", coeffs=(), provenance="x")
    assert evaluate(empty, 7) == 0.0


def test_evaluate_requires_positive_n():
    fam = sigma_expansion(1, 1, 3)
    with pytest.raises(ValueError):
        evaluate(fam, 0)


def test_evaluate_converges_with_tail_bound():
    # |evaluate(R) - sigma(n)/n| <= zeta(2) * sigma(n) * sum_{r>R} 1/r**2
    for R in (1000, 10000):
        fam = sigma_expansion(1, 1, R)
        tail = zeta(2.0) * (1.0 / R)  # sum_{r>R} r**-2 < 1/R
        for n in range(1, 51):
            err = abs(evaluate(fam, n) - sigma_over_n(n))
            assert err <= tail * sigma_real(n, 1.0), (R, n, err)


def test_evaluate_error_shrinks_with_r():
    errs = {}
    for R in (1000, 10000):
        fam = sigma_expansion(1, 1, R)
        errs[R] = max(abs(evaluate(fam, n) - sigma_over_n(n)) for n in range(1, 21))
    assert errs[10000] < errs[1000]


def test_evaluate_n_to_s_uses_power_argument():
    # The divisor representation gives, for any s,
    #   sum_r c_r^s(n**s) / r**((k+1)s) = sigma_{ks}(n) / (zeta((k+1)s) n**ks),
    # so the zeta(k+1)-weighted family sums to the target scaled by
    # zeta(k+1)/zeta((k+1)s); at s = 1 the scale is 1.
    fam = sigma_expansion(1, 2, 200)
    scale = zeta(2.0) / zeta(4.0)
    for n in (1, 2, 3, 6, 10):
        target = scale * sigma_real(n, 2.0) / n**2
        assert abs(evaluate(fam, n) - target) < 1e-4


# --- mean values -------------------------------------------------------------


def test_mean_value_examples():
    row = cr_sum_period_row(2, 2)
    f = lambda n: float(row[n % 4])
    assert mean_value_coefficient(f, 2, 2, 16) == 1.0
    assert mean_value_coefficient(lambda n: 1.0, 2, 2, 16) == 0.0
    for N in (1, 7, 16):
        assert mean_value_coefficient(lambda n: 1.0, 1, 2, N) == 1.0


def test_is_period_exact():
    assert is_period_exact(2, 2, 16)
    assert not is_period_exact(2, 2, 15)
    assert is_period_exact(1, 3, 5)


def test_mean_value_orthogonality_recovery():
    for s in (1, 2):
        for q in range(1, 5):
            row_q = cr_sum_period_row(q, s)
            period_q = q**s
            f = lambda n: float(row_q[n % period_q])
            for r in range(1, 5):
                n_full = math.lcm(q, r) ** s
                value = mean_value_coefficient(f, r, s, n_full)
                assert value == (1.0 if q == r else 0.0), (q, r, s)


def test_coefficient_recovery_within_truncation_tail():
    R, N = 300, 3000
    fam = as_plain_n(sigma_expansion(1, 1, R))
    values = [evaluate(fam, n) for n in range(1, N + 1)]
    f = lambda n: values[n - 1]
    tail_bound = zeta(2.0) * sum(1.0 / q**2 for q in range(R + 1, 100_000))
    for r in range(1, 6):
        recovered = mean_value_coefficient(f, r, 1, N)
        assert abs(recovered - zeta(2.0) / r**2) <= tail_bound, r


# --- shift transform ---------------------------------------------------------


def test_shift_h_zero_is_identity():
    fam = as_plain_n(sigma_expansion(1, 1, 30))
    shifted = shift_coefficients(fam, 0)
    assert shifted.coeffs == fam.coeffs
    assert shifted.provenance == "shifted(h=0)"


def test_shift_r1_entry_never_changes():
    fam = as_plain_n(sigma_expansion(1, 1, 10))
    for h in (0, 1, 4, 9):
        assert shift_coefficients(fam, h).coefficient(1) == fam.coefficient(1)


def test_shift_closed_form_at_h_one():
    # s=1, fhat(r) = zeta(2)/r**2, h=1: ghat(r) = zeta(2) mu(r) / (r**2 phi(r))
    fam = as_plain_n(sigma_expansion(1, 1, 40))
    shifted = shift_coefficients(fam, 1)
    for r in range(1, 41):
        expected = zeta(2.0) / r**2 * (brute_mobius(r) / brute_phi(r))
        assert abs(shifted.coefficient(r) - expected) < 1e-15


def test_shift_requires_plain_mode():
    with pytest.raises(ValueError):
        shift_coefficients(sigma_expansion(1, 2, 10), 1)
    with pytest.raises(ValueError):
        shift_coefficients(as_plain_n(sigma_expansion(1, 1, 10)), -1)


def test_shifted_series_is_absolutely_convergent():
    # Truncations of the shifted series form a Cauchy sequence: the step from
    # R=1000 to R=10000 is within the absolute tail sum of the shifted family.
    for h in (1, 2, 3):
        lo = shift_coefficients(as_plain_n(sigma_expansion(1, 1, 1000)), h)
        hi = shift_coefficients(as_plain_n(sigma_expansion(1, 1, 10000)), h)
        for n in (1, 7, 30):
            step = abs(evaluate(hi, n) - evaluate(lo, n))
            tail = sigma_real(n, 1.0) * sum(abs(c) for c in hi.coeffs[1000:])
            # at n=1 every term of the step is positive and the bound is met
            # with equality, so allow for summation-order rounding
            assert step <= tail * (1.0 + 1e-6) + 1e-15


# --- norms and serialization -------------------------------------------------


def test_tau_weighted_norm_examples():
    zero = ExpansionCoefficients(s=1, argument_mode="plain_n", coeffs=(0.0,) * 8, provenance="x")
    assert tau_weighted_norm(zero) == 0.0

    fam = sigma_expansion(1, 1, 10)
    brute_tau = lambda n: sum(1 for d in range(1, n + 1) if n % d == 0)
    expected = sum(zeta(2.0) * brute_tau(r) / r**2 for r in range(1, 11))
    assert abs(tau_weighted_norm(fam) - expected) < 1e-12

    single = ExpansionCoefficients(
        s=1, argument_mode="plain_n", coeffs=(0.0, 0.0, 0.0, 0.0, 0.0, 1.0), provenance="x"
    )
    assert tau_weighted_norm(single) == 4.0


def test_csv_roundtrip_preserves_bits():
    fam = sigma_expansion(2, 2, 25)
    text = coefficients_to_csv_text(fam)
    assert text.startswith("r,coefficient\n1,")
    back = coefficients_from_csv_text(text, s=2, argument_mode="n_to_s")
    assert back.coeffs == fam.coeffs


def test_csv_rejects_bad_input():
    with pytest.raises(ValueError):
        coefficients_from_csv_text("oops\n1,2\n", 1, "plain_n")
    with pytest.raises(ValueError):
        coefficients_from_csv_text("r,coefficient\n2,0.5\n", 1, "plain_n")
