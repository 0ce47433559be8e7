"""Exact number kernel.

Rationals are plain :class:`fractions.Fraction` values. Constants that carry
powers of pi (half-integer Gamma values, the asymptotic constants) are held
as :class:`PiPowerScalar` so identities between them can be checked by exact
equality instead of with a tolerance.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath

ExactRational = Fraction

Rationalish = Union[int, Fraction]


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, r)`` with ``n == s*s*r`` and ``r`` squarefree."""
    if n < 1:
        raise ValueError(f"radicand must be positive, got {n}")
    square, rest = 1, n
    f = 2
    while f * f <= rest:
        while rest % (f * f) == 0:
            rest //= f * f
            square *= f
        f += 1
    return square, rest


@dataclass(frozen=True)
class PiPowerScalar:
    """The exact real number ``q * sqrt(root) * pi**(e/2)``.

    ``root`` is a squarefree positive integer and defaults to 1; it is only
    needed for constants such as ``sqrt(k-1)`` that show up for even ``k``.
    A zero ``q`` is always stored with ``e == 0`` and ``root == 1``.
    """

    q: Fraction
    e: int = 0
    root: int = 1

    def __post_init__(self) -> None:
        q = Fraction(self.q)
        e, root = int(self.e), int(self.root)
        if q == 0:
            e, root = 0, 1
        else:
            square, root = _squarefree_split(root)
            q *= square
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "root", root)

    @classmethod
    def rational(cls, q: Rationalish) -> PiPowerScalar:
        return cls(Fraction(q), 0)

    @classmethod
    def sqrt_int(cls, n: int) -> PiPowerScalar:
        return cls(Fraction(1), 0, n)

    def is_zero(self) -> bool:
        return self.q == 0

    def __mul__(self, other: PiPowerScalar | Rationalish) -> PiPowerScalar:
        if isinstance(other, (int, Fraction)):
            return PiPowerScalar(self.q * other, self.e, self.root)
        if not isinstance(other, PiPowerScalar):
            return NotImplemented
        return PiPowerScalar(self.q * other.q, self.e + other.e, self.root * other.root)

    __rmul__ = __mul__

    def inverse(self) -> PiPowerScalar:
        if self.q == 0:
            raise ZeroDivisionError("inverse of zero scalar")
        # 1/sqrt(r) = sqrt(r)/r
        return PiPowerScalar(1 / (self.q * self.root), -self.e, self.root)

    def __truediv__(self, other: PiPowerScalar | Rationalish) -> PiPowerScalar:
        if isinstance(other, (int, Fraction)):
            return PiPowerScalar(self.q / other, self.e, self.root)
        if not isinstance(other, PiPowerScalar):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int) -> PiPowerScalar:
        if n < 0:
            return self.inverse() ** (-n)
        out = PiPowerScalar(Fraction(1))
        for _ in range(n):
            out = out * self
        return out

    def __neg__(self) -> PiPowerScalar:
        return PiPowerScalar(-self.q, self.e, self.root)

    def _check_like(self, other: PiPowerScalar) -> None:
        if self.q == 0 or other.q == 0:
            return
        if (self.e, self.root) != (other.e, other.root):
            raise ValueError(
                f"cannot add pi^({self.e}/2)*sqrt({self.root}) "
                f"and pi^({other.e}/2)*sqrt({other.root}) terms"
            )

    def __add__(self, other: PiPowerScalar) -> PiPowerScalar:
        if not isinstance(other, PiPowerScalar):
            return NotImplemented
        self._check_like(other)
        if self.q == 0:
            return other
        return PiPowerScalar(self.q + other.q, self.e, self.root)

    def __sub__(self, other: PiPowerScalar) -> PiPowerScalar:
        return self + (-other)

    def squared_rational_part(self) -> Fraction:
        """``(q*sqrt(root))**2 * sign(q)``; orders scalars sharing ``e``."""
        sign = 1 if self.q > 0 else -1
        return sign * self.q * self.q * self.root

    def to_float(self, precision_bits: int = 256) -> mpmath.mpf:
        return to_float(self, precision_bits)

    def __str__(self) -> str:
        parts = [str(self.q)]
        if self.root != 1:
            parts.append(f"sqrt({self.root})")
        if self.e:
            parts.append(f"pi^({Fraction(self.e, 2)})")
        return "*".join(parts)


def scalar_mul(a: PiPowerScalar, b: PiPowerScalar) -> PiPowerScalar:
    return a * b


def gamma_half(n: int) -> PiPowerScalar:
    """Gamma(n + 1/2) = (2n)! sqrt(pi) / (4^n n!)."""
    if n < 0:
        raise ValueError("gamma_half needs n >= 0")
    return PiPowerScalar(Fraction(math.factorial(2 * n), 4**n * math.factorial(n)), 1)


def double_factorial_odd(n: int) -> int:
    """(2n-1)!!, the number of perfect matchings on 2n points."""
    if n < 0:
        raise ValueError("double_factorial_odd needs n >= 0")
    return math.prod(range(1, 2 * n, 2))


def superfactorial(m: int) -> int:
    """1! 2! ... m!  (empty product for m <= 0)."""
    return math.prod(math.factorial(r) for r in range(1, m + 1))


@functools.lru_cache(maxsize=None)
def _context(precision_bits: int) -> mpmath.ctx_mp.MPContext:
    # One private context per precision keeps the shared mpmath.mp untouched.
    ctx = mpmath.MPContext()
    ctx.prec = precision_bits
    return ctx


def float_context(precision_bits: int) -> mpmath.ctx_mp.MPContext:
    if precision_bits < 53:
        raise ValueError(f"precision_bits must be >= 53, got {precision_bits}")
    return _context(precision_bits)


def to_float(x: PiPowerScalar | Rationalish, precision_bits: int = 256) -> mpmath.mpf:
    """Evaluate ``x`` to ``precision_bits`` of relative accuracy."""
    ctx = float_context(precision_bits)
    if not isinstance(x, PiPowerScalar):
        x = PiPowerScalar(Fraction(x))
    work = _context(precision_bits + 32)
    val = work.mpf(x.q.numerator) / x.q.denominator
    if x.root != 1:
        val *= work.sqrt(x.root)
    if x.e:
        val *= work.power(work.pi, work.mpf(x.e) / 2)
    return ctx.mpf(val)
