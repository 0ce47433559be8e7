"""Exact power-series prefixes and the Bessel determinant counter.

``F_k(z) = det[I_{i-j}(2z) - I_{i+j}(2z)]_{i,j=1..k-1}`` is evaluated in the
ring of power series truncated at degree ``T``; ``f_k(n)`` is then
``(2n)!`` times the coefficient of ``z^(2n)``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, TypeVar

E = TypeVar("E")


def _common_denominator(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = 1
    for c in coeffs:
        if c:
            den = math.lcm(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


@dataclass(frozen=True)
class TruncSeries:
    """``sum_{d=0..T} coeffs[d] * z**d`` with exact rational coefficients."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("a truncated series needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def zero(cls, T: int) -> TruncSeries:
        return cls((Fraction(0),) * (T + 1))

    @classmethod
    def monomial(cls, degree: int, T: int, coeff: Fraction | int = 1) -> TruncSeries:
        c = [Fraction(0)] * (T + 1)
        if degree <= T:
            c[degree] = Fraction(coeff)
        return cls(tuple(c))

    @property
    def T(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, d: int) -> Fraction:
        return self.coeffs[d]

    def _same_T(self, other: TruncSeries) -> None:
        if self.T != other.T:
            raise ValueError(f"truncation mismatch: T={self.T} vs T={other.T}")

    def __add__(self, other: TruncSeries) -> TruncSeries:
        self._same_T(other)
        return TruncSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: TruncSeries) -> TruncSeries:
        self._same_T(other)
        return TruncSeries(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> TruncSeries:
        return TruncSeries(tuple(-a for a in self.coeffs))

    def scale(self, c: Fraction | int) -> TruncSeries:
        return TruncSeries(tuple(c * a for a in self.coeffs))

    def __mul__(self, other: TruncSeries) -> TruncSeries:
        self._same_T(other)
        T = self.T
        # integer convolution over a common denominator; Fraction per term is far slower
        a, da = _common_denominator(self.coeffs)
        b, db = _common_denominator(other.coeffs)
        nz_a = [(i, x) for i, x in enumerate(a) if x]
        nz_b = [(i, x) for i, x in enumerate(b) if x]
        out = [0] * (T + 1)
        for i, x in nz_a:
            for j, y in nz_b:
                if i + j > T:
                    break
                out[i + j] += x * y
        den = da * db
        return TruncSeries(tuple(Fraction(c, den) for c in out))


def bessel_series(m: int, T: int) -> TruncSeries:
    """``I_m(2z) = sum_j z^(|m|+2j) / (j! (|m|+j)!)`` truncated at degree ``T``."""
    if T < 0:
        raise ValueError(f"T must be nonnegative, got {T}")
    m = abs(m)
    coeffs = [Fraction(0)] * (T + 1)
    for d in range(m, T + 1, 2):
        j = (d - m) // 2
        coeffs[d] = Fraction(1, math.factorial(j) * math.factorial(m + j))
    return TruncSeries(tuple(coeffs))


def cofactor_det(matrix: Sequence[Sequence[E]]) -> E:
    """Determinant by Laplace expansion along rows, memoised on column sets.

    Only ``+``, ``-`` and ``*`` of the entries are used, so this works over
    any commutative ring, including truncated series whose constant term
    vanishes. Memoising the minors costs ``O(n 2^n)`` products instead of
    ``O(n!)``.
    """
    size = len(matrix)
    if size == 0 or any(len(row) != size for row in matrix):
        raise ValueError("cofactor_det needs a nonempty square matrix")

    @functools.lru_cache(maxsize=None)
    def minor(cols: tuple[int, ...]) -> E:
        row = size - len(cols)
        if len(cols) == 1:
            return matrix[row][cols[0]]
        total = None
        for pos, c in enumerate(cols):
            term = matrix[row][c] * minor(cols[:pos] + cols[pos + 1:])
            if pos % 2:
                term = -term
            total = term if total is None else total + term
        return total

    return minor(tuple(range(size)))


def series_det(matrix: Sequence[Sequence[TruncSeries]]) -> TruncSeries:
    degrees = {entry.T for row in matrix for entry in row}
    if len(degrees) > 1:
        raise ValueError(f"mismatched truncation degrees: {sorted(degrees)}")
    return cofactor_det(matrix)


def grabiner_magyar_matrix(k: int, T: int) -> list[list[TruncSeries]]:
    """The (k-1)x(k-1) matrix ``I_{i-j}(2z) - I_{i+j}(2z)``."""
    cache: dict[int, TruncSeries] = {}

    def bessel(m: int) -> TruncSeries:
        if m not in cache:
            cache[m] = bessel_series(m, T)
        return cache[m]

    size = k - 1
    return [
        [bessel(i - j) - bessel(i + j) for j in range(1, size + 1)]
        for i in range(1, size + 1)
    ]


class DeterminantConsistencyError(ArithmeticError):
    """A scaled determinant coefficient failed to be a nonnegative integer."""


def fk_via_determinant(k: int, n_max: int) -> list[int]:
    """``f_k(0..n_max)`` read off the Bessel determinant."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    T = 2 * n_max
    det = series_det(grabiner_magyar_matrix(k, T))
    counts = []
    for n in range(n_max + 1):
        value = det[2 * n] * math.factorial(2 * n)
        if value.denominator != 1 or value < 0:
            raise DeterminantConsistencyError(
                f"(2n)! [z^{2 * n}] det = {value} is not a nonnegative integer (k={k})"
            )
        counts.append(int(value))
    return counts

