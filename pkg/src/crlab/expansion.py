"""Cohen-Ramanujan series expansions.

A truncated expansion is a dense coefficient family r -> fhat(r) for
r = 1..R, tagged with the exponent s, the argument convention (whether the
series is evaluated against c_r^s(n) or c_r^s(n**s)), and its provenance.
Supports the closed-form family for sigma_{ks}(n)/n**ks, empirical
coefficient extraction through finite mean values, and the shift transform
fhat(r) -> fhat(r) * c_r^s(h) / Phi_s(r**s).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

from .core_arith import check_exponent, jordan_totient, tau_s, zeta
from .cr_sum import cr_sum_exact, cr_sum_period_row, cr_values_fixed_n

PLAIN_N = "plain_n"
N_TO_S = "n_to_s"
_MODES = (PLAIN_N, N_TO_S)

# Period rows are materialized only up to this length; beyond it the
# mean-value loop falls back to per-n evaluation.
_ROW_LIMIT = 10**6


@dataclass(frozen=True)
class ExpansionCoefficients:
    """Truncated coefficient family: coeffs[i] is fhat(i + 1)."""

    s: int
    argument_mode: str
    coeffs: tuple[float, ...]
    provenance: str

    def __post_init__(self) -> None:
        check_exponent(self.s)
        if self.argument_mode not in _MODES:
            raise ValueError(f"argument_mode must be one of {_MODES}, got {self.argument_mode!r}")

    @property
    def r_max(self) -> int:
        return len(self.coeffs)

    def coefficient(self, r: int) -> float:
        if not 1 <= r <= len(self.coeffs):
            raise ValueError(f"r = {r} outside family range 1..{len(self.coeffs)}")
        return self.coeffs[r - 1]


def sigma_expansion(k: int, s: int, r_max: int) -> ExpansionCoefficients:
    """Closed-form family fhat(r) = zeta(k+1) / r**((k+1)s) for r <= r_max.

    This expands sigma_{ks}(n)/n**ks against c_r^s(n**s), so the family
    carries argument_mode n_to_s.
    """
    check_exponent(s)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if r_max < 1:
        raise ValueError(f"r_max must be >= 1, got {r_max}")
    z = zeta(k + 1)
    exp = (k + 1) * s
    coeffs = tuple(z / r**exp for r in range(1, r_max + 1))
    return ExpansionCoefficients(
        s=s, argument_mode=N_TO_S, coeffs=coeffs, provenance=f"closed_form_sigma(k={k})"
    )


def as_plain_n(family: ExpansionCoefficients) -> ExpansionCoefficients:
    """Reinterpret an s=1 family in n**s mode as a plain-n family.

    For s = 1 the two argument conventions coincide (n**1 == n); for s >= 2
    the reindexing is not defined here and the call is rejected.
    """
    if family.argument_mode == PLAIN_N:
        return family
    if family.s != 1:
        raise ValueError("argument-mode conversion is only defined for s = 1")
    return replace(family, argument_mode=PLAIN_N)


def evaluate(family: ExpansionCoefficients, n: int) -> float:
    """Evaluate the truncated series at n.

    Uses the exact integer c values and a single float multiply-accumulate
    in fixed ascending-r order, so results are reproducible. An empty
    truncation evaluates to 0.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not family.coeffs:
        return 0.0
    arg = n if family.argument_mode == PLAIN_N else n**family.s
    c_values = cr_values_fixed_n(arg, family.s, len(family.coeffs))
    total = 0.0
    for i, coef in enumerate(family.coeffs):
        total += coef * c_values[i + 1]
    return total


def mean_value_coefficient(f: Callable[[int], float], r: int, s: int, n_limit: int) -> float:
    """Finite-mean-value coefficient candidate at index r.

    Returns (1/N) * sum_{n <= N} f(n) * c_r^s(n) / Phi_s(r**s) for
    N = n_limit. When N is a multiple of r**s the averaging covers whole
    periods of c_r^s (see is_period_exact); no N -> infinity extrapolation
    is attempted.
    """
    check_exponent(s)
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    if n_limit < 1:
        raise ValueError(f"n_limit must be >= 1, got {n_limit}")
    period = r**s
    total = 0.0
    if period <= _ROW_LIMIT:
        row = cr_sum_period_row(r, s)
        for n in range(1, n_limit + 1):
            total += f(n) * row[n % period]
    else:
        for n in range(1, n_limit + 1):
            total += f(n) * cr_sum_exact(r, n, s)
    return total / n_limit / jordan_totient(r, s)


def is_period_exact(r: int, s: int, n_limit: int) -> bool:
    """True iff averaging over n <= n_limit covers whole periods of c_r^s."""
    check_exponent(s)
    if r < 1 or n_limit < 1:
        raise ValueError("r and n_limit must be >= 1")
    return n_limit % r**s == 0


def shift_coefficients(family: ExpansionCoefficients, h: int) -> ExpansionCoefficients:
    """Coefficient family for n -> f(n + h): fhat(r) * c_r^s(h) / Phi_s(r**s).

    Defined for plain-n families only. h = 0 reproduces the input exactly
    because c_r^s(0) = Phi_s(r**s).
    """
    if family.argument_mode != PLAIN_N:
        raise ValueError("shift_coefficients requires a plain_n family")
    if h < 0:
        raise ValueError(f"h must be >= 0, got {h}")
    if not family.coeffs:
        return replace(family, provenance=f"shifted(h={h})")
    c_at_h = cr_values_fixed_n(h, family.s, len(family.coeffs))
    shifted = tuple(
        coef * (c_at_h[i + 1] / jordan_totient(i + 1, family.s))
        for i, coef in enumerate(family.coeffs)
    )
    return replace(family, coeffs=shifted, provenance=f"shifted(h={h})")


def tau_weighted_norm(family: ExpansionCoefficients) -> float:
    """sum_{r <= R} |fhat(r)| * tau(r), the absolute-convergence diagnostic."""
    total = 0.0
    for i, coef in enumerate(family.coeffs):
        total += abs(coef) * tau_s(i + 1, 1)
    return total


def coefficients_to_csv_text(family: ExpansionCoefficients) -> str:
    """CSV export: header r,coefficient; floats at 17 significant digits."""
    lines = ["r,coefficient"]
    lines.extend(f"{i + 1},{coef:.17g}" for i, coef in enumerate(family.coeffs))
    return "\n".join(lines) + "\n"


def coefficients_from_csv_text(
    text: str, s: int, argument_mode: str, provenance: str = "imported"
) -> ExpansionCoefficients:
    """Parse the CSV produced by coefficients_to_csv_text."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0] != "r,coefficient":
        raise ValueError("expected header 'r,coefficient'")
    coeffs = []
    for expected_r, line in enumerate(lines[1:], start=1):
        r_text, coef_text = line.split(",")
        if int(r_text) != expected_r:
            raise ValueError(f"coefficient rows must be contiguous from 1, got r={r_text}")
        coeffs.append(float(coef_text))
    return ExpansionCoefficients(
        s=s, argument_mode=argument_mode, coeffs=tuple(coeffs), provenance=provenance
    )
