"""Coefficient asymptotics of F_k via an entire comparison function g_k.

For each residue of ``k`` mod 4 an even entire function ``g_k`` is built from
``I_0``, ``I_1``, ``cosh`` or ``sinh`` at argument ``(2k-2)z``, divided by
``z^p`` with the polynomial part removed. Its Taylor coefficients are known
in closed form, and ``f_k(n) ~ (2n)! [z^{2n}] g_k(z)``.

The constants ``tilde c_k`` and ``c_k`` are derived here (the growth rate of
``g_k`` is matched to the asymptotic form of ``F_k``) and are checked against
a numeric limit before use; see :func:`ck_numeric_limit`.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .bessel_series import fk_via_determinant
from .laurent_asym import asymptotic_power, gamma_halfint_det_closed_form
from .matchings import BRUTE_FORCE_LIMIT, count_bruteforce, tableau_counts
from .scalars import PiPowerScalar, float_context, to_float

DEFAULT_PRECISION = 256
CSV_FIELDS = ("k", "n", "exact", "approx", "ratio")
SIGNIFICANT_DIGITS = 12


class CaseTag(enum.Enum):
    I0 = "I0"
    I1 = "I1"
    COSH = "COSH"
    SINH = "SINH"


def _check_k(k: int) -> None:
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")


def case_tag(k: int) -> CaseTag:
    return {0: CaseTag.I0, 2: CaseTag.I1, 1: CaseTag.COSH, 3: CaseTag.SINH}[k % 4]


def subtraction_order(k: int) -> int:
    """``p`` such that ``z^{-p}`` times the base function grows like F_k."""
    if k % 2 == 0:
        return (k - 1) ** 2 + (k - 2) // 2
    return (k - 1) ** 2 + (k - 1) // 2


def base_coefficient(tag: CaseTag, k: int, d: int) -> Fraction:
    """``[z^d]`` of the base function evaluated at ``(2k-2) z``."""
    if d < 0:
        return Fraction(0)
    if tag in (CaseTag.I0, CaseTag.I1):
        s = 0 if tag is CaseTag.I0 else 1
        if d < s or (d - s) % 2:
            return Fraction(0)
        j = (d - s) // 2
        # I_s(2w) at w = (k-1) z
        return Fraction((k - 1) ** d, math.factorial(j) * math.factorial(j + s))
    if (d % 2 == 0) != (tag is CaseTag.COSH):
        return Fraction(0)
    return Fraction((2 * k - 2) ** d, math.factorial(d))


def _base_parity(tag: CaseTag) -> int:
    """Parity of the degrees on which the base function is supported."""
    return 0 if tag in (CaseTag.I0, CaseTag.COSH) else 1


@dataclass(frozen=True)
class GkSpec:
    k: int
    case_tag: CaseTag
    p: int
    s: int | None
    scale: int
    tilde_c: PiPowerScalar
    subtraction: tuple[Fraction, ...]

    def subtraction_coefficient(self, j: int) -> Fraction:
        """``a_{k,j}`` for ``j = 1..p``."""
        return self.subtraction[j - 1]


def ck_prime(k: int) -> PiPowerScalar:
    """``pi^{-(k-1)} prod Gamma(i + 1/2) prod r!``."""
    _check_k(k)
    return gamma_halfint_det_closed_form(k) * PiPowerScalar(Fraction(1), -2 * (k - 1))


def tilde_ck(k: int) -> PiPowerScalar:
    _check_k(k)
    if k % 2:
        return ck_prime(k) * 2
    # I_s(x) ~ e^x / sqrt(2 pi x) at x = (2k-2)|z| contributes 1/(2 sqrt((k-1) pi))
    return ck_prime(k) * PiPowerScalar(Fraction(2), 1, k - 1)


def gk_spec(k: int) -> GkSpec:
    _check_k(k)
    tag = case_tag(k)
    p = subtraction_order(k)
    if (p % 2) != _base_parity(tag):
        # z^{-p} times the base function would not be even
        raise AssertionError(f"k={k}: p={p} has the wrong parity for {tag.value}")
    s = {CaseTag.I0: 0, CaseTag.I1: 1}.get(tag)
    subtraction = tuple(base_coefficient(tag, k, p - j) for j in range(1, p + 1))
    return GkSpec(k, tag, p, s, 2 * k - 2, tilde_ck(k), subtraction)


class ParityError(ArithmeticError):
    pass


def gk_coefficient(k: int, n: int, spec: GkSpec | None = None) -> PiPowerScalar:
    """``[z^{2n}] g_k(z) = tilde c_k [z^{2n+p}]`` of the base function.

    The subtracted polynomial lives at negative powers of ``z`` and never
    contributes for ``n >= 0``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    spec = spec or gk_spec(k)
    d = 2 * n + spec.p
    if d % 2 != _base_parity(spec.case_tag):
        raise ParityError(f"degree {d} has the wrong parity for {spec.case_tag.value}")
    return spec.tilde_c * base_coefficient(spec.case_tag, k, d)


def ck(k: int) -> PiPowerScalar:
    """``c_k = 2 c_k' (k-1)^{(k-1)^2 + (k-1)/2}`` in ``f_k(n) ~ c_k n^{-power} (2k-2)^{2n}``."""
    _check_k(k)
    base = k - 1
    whole = base ** ((k - 1) ** 2 + (k - 1) // 2)
    growth = PiPowerScalar(Fraction(whole), 0, base if (k - 1) % 2 else 1)
    return ck_prime(k) * growth * 2


def ck_numeric_limit(k: int, n: int, precision_bits: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """``(2n)! [z^{2n}] g_k / (n^{-power} (2k-2)^{2n})``; tends to ``c_k``.

    Evaluated in floating point straight from the coefficient formula, so it
    is independent of the closed form used by :func:`ck`.
    """
    ctx = float_context(precision_bits)
    coeff = gk_coefficient(k, n)
    power = asymptotic_power(k)
    value = to_float(coeff, precision_bits) * ctx.factorial(2 * n)
    norm = ctx.power(n, -ctx.mpf(power.numerator) / power.denominator) * ctx.power(2 * k - 2, 2 * n)
    return value / norm


def fk_asymptotic(k: int, n: int, precision_bits: int = DEFAULT_PRECISION) -> mpmath.mpf:
    _check_k(k)
    if n < 1:
        raise ValueError("the asymptotic formula is singular at n = 0")
    ctx = float_context(precision_bits)
    power = asymptotic_power(k)
    return (
        to_float(ck(k), precision_bits)
        * ctx.power(n, -ctx.mpf(power.numerator) / power.denominator)
        * ctx.power(2 * k - 2, 2 * n)
    )


# ---------------------------------------------------------------------------
# exact counts and convergence diagnostics

METHODS = ("brute", "tableau", "det")


def check_method(method: str, n_max: int) -> None:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    if method == "brute" and n_max > BRUTE_FORCE_LIMIT:
        raise ValueError(f"method 'brute' is limited to n <= {BRUTE_FORCE_LIMIT}, asked for n = {n_max}")


def exact_counts(k: int, n_max: int, method: str = "tableau") -> list[int]:
    """``f_k(0..n_max)`` from the chosen exact counter."""
    _check_k(k)
    check_method(method, n_max)
    if method == "brute":
        return [count_bruteforce(k, n) for n in range(n_max + 1)]
    if method == "det":
        return fk_via_determinant(k, n_max)
    return tableau_counts(k, n_max)


def subtraction_error(k: int, n: int, exact: int, precision_bits: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """``|f_k(n) / ((2n)! [z^{2n}] g_k) - 1|``."""
    ctx = float_context(precision_bits)
    predicted = gk_coefficient(k, n) * math.factorial(2 * n)
    return abs(ctx.mpf(exact) / to_float(predicted, precision_bits) - 1)


def fit_growth_exponent(k: int, counts: dict[int, int]) -> float:
    """Least-squares slope of ``log f_k(n) - 2n log(2k-2)`` against ``log n``."""
    ns = sorted(counts)
    xs = [math.log(n) for n in ns]
    ys = [math.log(counts[n]) - 2 * n * math.log(2 * k - 2) for n in ns]
    slope, _ = statistics.linear_regression(xs, ys)
    return slope


@dataclass(frozen=True)
class ConvergenceRow:
    k: int
    n: int
    exact: int
    approx: mpmath.mpf
    ratio: mpmath.mpf


def convergence_table(
    k: int,
    n_values: Sequence[int],
    method: str = "tableau",
    precision_bits: int = DEFAULT_PRECISION,
    jobs: int = 1,
) -> list[ConvergenceRow]:
    _check_k(k)
    n_values = list(n_values)
    if not n_values:
        return []
    if n_values != sorted(n_values):
        raise ValueError("n_values must be sorted ascending")
    if n_values[0] < 1:
        raise ValueError("n_values must be >= 1 (the asymptotic formula is singular at 0)")
    check_method(method, n_values[-1])
    counts = exact_counts(k, n_values[-1], method)
    ctx = float_context(precision_bits)

    def row(n: int) -> ConvergenceRow:
        approx = fk_asymptotic(k, n, precision_bits)
        return ConvergenceRow(k, n, counts[n], approx, ctx.mpf(counts[n]) / approx)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(row, n_values))
    return [row(n) for n in n_values]


def format_float(x: mpmath.mpf) -> str:
    return mpmath.nstr(x, SIGNIFICANT_DIGITS)


def _row_strings(r: ConvergenceRow) -> dict[str, str]:
    return {
        "k": str(r.k),
        "n": str(r.n),
        "exact": str(r.exact),
        "approx": format_float(r.approx),
        "ratio": format_float(r.ratio),
    }


def table_to_csv(rows: Sequence[ConvergenceRow]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(_row_strings(r))
    return buf.getvalue()


def table_to_json(rows: Sequence[ConvergenceRow]) -> str:
    # exact/approx/ratio as strings: they overflow JSON doubles
    payload = [
        {key: (int(v) if key in ("k", "n") else v) for key, v in _row_strings(r).items()}
        for r in rows
    ]
    return json.dumps(payload, indent=2) + "\n"


def table_to_markdown(rows: Sequence[ConvergenceRow]) -> str:
    lines = ["| " + " | ".join(CSV_FIELDS) + " |", "|" + "---|" * len(CSV_FIELDS)]
    for r in rows:
        cells = _row_strings(r)
        lines.append("| " + " | ".join(cells[f] for f in CSV_FIELDS) + " |")
    return "\n".join(lines) + "\n"


def parse_csv(text: str, precision_bits: int = DEFAULT_PRECISION) -> list[ConvergenceRow]:
    ctx = float_context(precision_bits)
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        rows.append(ConvergenceRow(
            int(rec["k"]), int(rec["n"]), int(rec["exact"]),
            ctx.mpf(rec["approx"]), ctx.mpf(rec["ratio"]),
        ))
    return rows
