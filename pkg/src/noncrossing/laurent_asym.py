"""Laurent expansions in 1/z and the row/column elimination that gives the asymptotic form of F_k.

Each entry ``I_{i-j}(2z) - I_{i+j}(2z)`` of the Bessel determinant is, up to
the common factor ``e^{2z} / (2 sqrt(pi z))``, the polynomial in ``1/z``

    e_{i,j}(z) = sum_h m_h(i,j) (-1)^h / (16^h h!) z^{-h}

The elimination (:func:`run_algorithm_a`) adds scalar multiples of earlier
rows and columns so that entry ``(i, j)`` ends up with leading order
``z^{-(i+j-1)}``; the leading coefficients form a Gamma-function Hankel
matrix whose determinant gives the constant of the asymptotic form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .bessel_series import cofactor_det
from .scalars import PiPowerScalar, gamma_half, superfactorial


def triangle(x: int, r: int) -> int:
    """``x △ r = (x - r)(x + r)``."""
    return (x - r) * (x + r)


def m_coeff(i: int, j: int, h: int) -> int:
    if h < 0:
        raise ValueError("h must be nonnegative")
    minus = math.prod(4 * (i - j) ** 2 - (2 * t - 1) ** 2 for t in range(1, h + 1))
    plus = math.prod(4 * (i + j) ** 2 - (2 * t - 1) ** 2 for t in range(1, h + 1))
    return minus - plus


# ---------------------------------------------------------------------------
# polynomials in the integer variables i, j


@dataclass(frozen=True)
class BiPoly:
    """Polynomial in two variables ``i, j``: ``{(a, b): c}`` means ``c i^a j^b``."""

    terms: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {tuple(k): Fraction(v) for k, v in self.terms.items() if v}
        object.__setattr__(self, "terms", clean)

    @classmethod
    def constant(cls, c: int | Fraction) -> BiPoly:
        return cls({(0, 0): c})

    def __add__(self, other: BiPoly) -> BiPoly:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    def __neg__(self) -> BiPoly:
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: BiPoly) -> BiPoly:
        return self + (-other)

    def __mul__(self, other: BiPoly) -> BiPoly:
        out: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), v1 in self.terms.items():
            for (a2, b2), v2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + v1 * v2
        return BiPoly(out)

    def __call__(self, i: int, j: int) -> Fraction:
        return sum((v * i**a * j**b for (a, b), v in self.terms.items()), Fraction(0))

    def coefficient(self, a: int, b: int) -> Fraction:
        return self.terms.get((a, b), Fraction(0))

    def divide_by_ij(self) -> BiPoly:
        """Exact quotient by the monomial ``i*j``; raises if not divisible."""
        bad = [k for k in self.terms if k[0] == 0 or k[1] == 0]
        if bad:
            raise ArithmeticError(f"polynomial not divisible by ij; offending monomials {bad}")
        return BiPoly({(a - 1, b - 1): v for (a, b), v in self.terms.items()})


_I = BiPoly({(1, 0): 1})
_J = BiPoly({(0, 1): 1})


def m_bipoly(h: int) -> BiPoly:
    """``m_h(i, j)`` expanded symbolically in ``i`` and ``j``."""
    if h < 1:
        raise ValueError("m_bipoly needs h >= 1")
    four = BiPoly.constant(4)
    diff_sq = four * (_I - _J) * (_I - _J)
    sum_sq = four * (_I + _J) * (_I + _J)
    minus = plus = BiPoly.constant(1)
    for t in range(1, h + 1):
        odd_sq = BiPoly.constant((2 * t - 1) ** 2)
        minus = minus * (diff_sq - odd_sq)
        plus = plus * (sum_sq - odd_sq)
    return minus - plus


def c_coefficients(h: int) -> dict[tuple[int, int], Fraction]:
    """``C_h(a, b)`` from ``m_h(i,j) = -ij sum C_h(a,b) i^{2a} j^{2b}``."""
    quotient = (-m_bipoly(h)).divide_by_ij()
    odd = [k for k in quotient.terms if k[0] % 2 or k[1] % 2]
    if odd:
        raise ArithmeticError(f"odd exponents in m_h/(ij) for h={h}: {odd}")
    return {(a // 2, b // 2): v for (a, b), v in quotient.terms.items()}


def c_top_coeff(h: int, a: int, b: int) -> int:
    """Closed form of ``C_h(a, b)`` on the top layer ``a + b = h - 1``."""
    if a < 0 or b < 0 or a + b != h - 1:
        raise ValueError(f"c_top_coeff needs a, b >= 0 and a + b = h - 1, got h={h}, a={a}, b={b}")
    total = sum(
        math.comb(h, a - s) * math.comb(h - a + s, 2 * s + 1) * 4**s
        for s in range(min(a, b) + 1)
    )
    return 4 ** (h + 1) * total


def claim_one_value(i: int, j: int) -> Fraction:
    """``j Gamma(2i+2j-1) 4^{i+j} / (Gamma(2j+1) Gamma(2i))``, i.e. ``C_{i+j-1}(i-1, j-1)``."""
    if i < 1 or j < 1:
        raise ValueError("i, j must be >= 1")
    num = j * math.factorial(2 * i + 2 * j - 2) * 4 ** (i + j)
    return Fraction(num, math.factorial(2 * j) * math.factorial(2 * i - 1))


# ---------------------------------------------------------------------------
# Laurent polynomials in 1/z


@dataclass(frozen=True)
class LaurentPoly:
    """``sum_{h=0..H} coeffs[h] * z^{-h}``, stored densely."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("LaurentPoly needs H >= 0")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def from_map(cls, coeffs: dict[int, Fraction | int], H: int) -> LaurentPoly:
        if any(h < 0 or h > H for h in coeffs):
            raise ValueError(f"orders must lie in 0..{H}: {sorted(coeffs)}")
        return cls(tuple(Fraction(coeffs.get(h, 0)) for h in range(H + 1)))

    @property
    def H(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, h: int) -> Fraction:
        return self.coeffs[h] if 0 <= h <= self.H else Fraction(0)

    def as_map(self) -> dict[int, Fraction]:
        return {h: c for h, c in enumerate(self.coeffs) if c}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _same_H(self, other: LaurentPoly) -> None:
        if self.H != other.H:
            raise ValueError(f"truncation mismatch: H={self.H} vs H={other.H}")

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        self._same_H(other)
        return LaurentPoly(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(tuple(-a for a in self.coeffs))

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def scale(self, c: Fraction | int) -> LaurentPoly:
        return LaurentPoly(tuple(c * a for a in self.coeffs))

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        # both factors have only nonpositive powers of z, so orders <= H stay exact
        self._same_H(other)
        H = self.H
        out = [Fraction(0)] * (H + 1)
        for h1, a in enumerate(self.coeffs):
            if not a:
                continue
            for h2 in range(H + 1 - h1):
                b = other.coeffs[h2]
                if b:
                    out[h1 + h2] += a * b
        return LaurentPoly(tuple(out))


class ZeroPolynomialError(ValueError):
    """Raised when a leading term is requested from the zero polynomial."""


def leading_term(p: LaurentPoly) -> tuple[int, Fraction]:
    for h, c in enumerate(p.coeffs):
        if c:
            return h, c
    raise ZeroPolynomialError("zero polynomial has no leading term")


def e_series(i: int, j: int, H: int) -> LaurentPoly:
    if i < 1 or j < 1:
        raise ValueError("i, j must be >= 1")
    if H < 0:
        raise ValueError("H must be nonnegative")
    return LaurentPoly(tuple(
        Fraction(m_coeff(i, j, h) * (-1) ** h, 16**h * math.factorial(h))
        for h in range(H + 1)
    ))


# ---------------------------------------------------------------------------
# the elimination

Matrix = tuple[tuple[LaurentPoly, ...], ...]


def _freeze(rows: list[list[LaurentPoly]]) -> Matrix:
    return tuple(tuple(row) for row in rows)


def e_matrix(k: int, H: int) -> Matrix:
    size = k - 1
    return _freeze([[e_series(i, j, H) for j in range(1, size + 1)] for i in range(1, size + 1)])


def elimination_multiplier(x: int, t: int) -> Fraction:
    """``-x prod_{r<t} (x △ r) / (2t-1)!``; the empty product is 1."""
    prod = math.prod(triangle(x, r) for r in range(1, t))
    return Fraction(-x * prod, math.factorial(2 * t - 1))


@dataclass(frozen=True)
class StepSnapshot:
    t: int
    matrix: Matrix


@dataclass(frozen=True)
class AlgorithmARun:
    k: int
    H: int
    initial: Matrix
    final: Matrix
    steps: tuple[StepSnapshot, ...] = ()

    def entry(self, i: int, j: int) -> LaurentPoly:
        """``a_{i,j}`` with 1-based indices."""
        return self.final[i - 1][j - 1]


def default_H(k: int) -> int:
    return (k - 1) ** 2 + 4


def run_algorithm_a(k: int, H: int | None = None, capture_steps: bool = False) -> AlgorithmARun:
    """Execute the elimination exactly as written: for each ``t`` a full row
    pass over ``i = t+1..k-1`` and then a full column pass over
    ``j = t+1..k-1``, each reading the live matrix.

    With ``capture_steps`` the state after every ``t`` is recorded
    (``steps[t-1]`` is the state after step ``t``).
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if H is None:
        H = default_H(k)
    if H <= (k - 1) ** 2:
        raise ValueError(f"H must exceed (k-1)^2 = {(k - 1) ** 2}, got {H}")
    size = k - 1
    initial = e_matrix(k, H)
    M = [list(row) for row in initial]
    steps = []
    for t in range(1, size + 1):
        # 0-based: row/column index x-1 for the 1-based label x
        for i in range(t + 1, size + 1):
            c = elimination_multiplier(i, t)
            for j in range(1, size + 1):
                M[i - 1][j - 1] = M[t - 1][j - 1].scale(c) + M[i - 1][j - 1]
        for j in range(t + 1, size + 1):
            c = elimination_multiplier(j, t)
            for i in range(1, size + 1):
                M[i - 1][j - 1] = M[i - 1][t - 1].scale(c) + M[i - 1][j - 1]
        if capture_steps:
            steps.append(StepSnapshot(t, _freeze(M)))
    return AlgorithmARun(k, H, initial, _freeze(M), tuple(steps))


def lemma_leading_expected(i: int, j: int) -> tuple[int, Fraction]:
    """Order ``i+j-1`` and coefficient ``(-1)^{i+j} 2 Gamma(i+j-1/2)/sqrt(pi)``."""
    if i < 1 or j < 1:
        raise ValueError("i, j must be >= 1")
    g = gamma_half(i + j - 1)
    assert g.e == 1 and g.root == 1
    return i + j - 1, (-1) ** (i + j) * 2 * g.q


# ---------------------------------------------------------------------------
# invariant checks; each returns a list of human-readable violations


def _cells(size: int) -> Iterator[tuple[int, int]]:
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            yield i, j


def symmetry_violations(matrix: Matrix) -> list[str]:
    size = len(matrix)
    return [
        f"a[{i},{j}] != a[{j},{i}]"
        for i, j in _cells(size)
        if i < j and matrix[i - 1][j - 1] != matrix[j - 1][i - 1]
    ]


def vanishing_threshold(i: int, j: int, t: int) -> int | None:
    """Orders ``h`` below the returned value must vanish after step ``t``."""
    if i <= t < j:
        return t + i
    if j <= t < i:
        return t + j
    if i > t and j > t:
        return 2 * t + 1
    return None


def vanishing_violations(t: int, matrix: Matrix) -> list[str]:
    out = []
    for i, j in _cells(len(matrix)):
        bound = vanishing_threshold(i, j, t)
        if bound is None:
            continue
        p = matrix[i - 1][j - 1]
        for h in range(min(bound, p.H + 1)):
            if p[h]:
                out.append(f"t={t}: a[{i},{j}] has order {h} < {bound} coefficient {p[h]}")
    return out


def leading_term_violations(run: AlgorithmARun) -> list[str]:
    out = []
    for i, j in _cells(run.k - 1):
        try:
            got = leading_term(run.entry(i, j))
        except ZeroPolynomialError:
            got = None
        want = lemma_leading_expected(i, j)
        if got != want:
            out.append(f"a[{i},{j}] leading term {got}, expected {want}")
    return out


def stability_violations(run: AlgorithmARun) -> list[str]:
    """Entry ``(i, j)`` must not change after step ``max(i, j) - 1``."""
    if not run.steps:
        raise ValueError("stability check needs a run with capture_steps=True")
    states = {0: run.initial}
    states.update({s.t: s.matrix for s in run.steps})
    out = []
    for i, j in _cells(run.k - 1):
        settled = max(i, j) - 1
        ref = states[settled][i - 1][j - 1]
        for t in range(settled + 1, run.k):
            if states[t][i - 1][j - 1] != ref:
                out.append(f"a[{i},{j}] modified at step {t} (settled at {settled})")
    return out


def laurent_det(matrix: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    return cofactor_det(matrix)


def determinant_violations(run: AlgorithmARun) -> list[str]:
    before = laurent_det(run.initial)
    after = laurent_det(run.final)
    return [
        f"det differs at order {h}: {before[h]} vs {after[h]}"
        for h in range(run.H + 1)
        if before[h] != after[h]
    ]


def lemma_two_violations(run: AlgorithmARun) -> list[str]:
    """Symmetry at every captured step and the vanishing orders for ``t < k-1``."""
    if not run.steps and run.k > 2:
        raise ValueError("vanishing-order check needs a run with capture_steps=True")
    out = []
    for snap in run.steps:
        out += [f"t={snap.t}: {v}" for v in symmetry_violations(snap.matrix)]
        if snap.t < run.k - 1:
            out += vanishing_violations(snap.t, snap.matrix)
    return out


# ---------------------------------------------------------------------------
# Gamma determinant and the asymptotic form


class ClosedFormMismatch(ArithmeticError):
    """A directly computed quantity disagreed with its closed form."""


def gamma_halfint_det_closed_form(k: int) -> PiPowerScalar:
    """``prod_{i=1}^{k-1} Gamma(i + 1/2) * prod_{r=1}^{k-2} r!``."""
    out = PiPowerScalar(Fraction(superfactorial(k - 2)))
    for i in range(1, k):
        out = out * gamma_half(i)
    return out


def gamma_halfint_det(k: int) -> PiPowerScalar:
    """``det[Gamma(i + j - 1/2)]_{i,j=1..k-1}``, checked against its closed form.

    Every entry carries one factor ``sqrt(pi)``; it is pulled out of each row
    and the remaining rational determinant is computed directly.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    size = k - 1
    rational = [[gamma_half(i + j - 1).q for j in range(1, size + 1)] for i in range(1, size + 1)]
    direct = PiPowerScalar(cofactor_det(rational), size)
    closed = gamma_halfint_det_closed_form(k)
    if direct != closed:
        raise ClosedFormMismatch(f"Gamma determinant for k={k}: direct {direct} != closed form {closed}")
    return direct


@dataclass(frozen=True)
class AsymptoticForm:
    """``constant * e^{exp_rate z} * z^{-power}``."""

    constant: PiPowerScalar
    exp_rate: int
    power: Fraction

    def __str__(self) -> str:
        return f"{self.constant} * exp({self.exp_rate} z) * z^(-{self.power})"


def asymptotic_power(k: int) -> Fraction:
    return Fraction((k - 1) ** 2) + Fraction(k - 1, 2)


def theorem_a_form(k: int) -> AsymptoticForm:
    """Leading behaviour of ``F_k(z)`` for large ``|z|`` away from the imaginary axis."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    constant = gamma_halfint_det(k) * PiPowerScalar(Fraction(1), -2 * (k - 1))
    return AsymptoticForm(constant, 2 * (k - 1), asymptotic_power(k))


def theorem_a_from_elimination(k: int, H: int | None = None) -> AsymptoticForm:
    """Rebuild the asymptotic form from the determinant of the ``e_{i,j}``.

    ``F_k(z) ~ (e^{2z} / (2 sqrt(pi z)))^{k-1} det[e_{i,j}]`` and the
    determinant's leading term sits at order ``(k-1)^2``.
    """
    run = run_algorithm_a(k, H)
    order, coeff = leading_term(laurent_det(run.initial))
    if order != (k - 1) ** 2:
        raise ClosedFormMismatch(f"det leading order {order}, expected {(k - 1) ** 2}")
    prefactor = PiPowerScalar(Fraction(1, 2 ** (k - 1)), -(k - 1))
    constant = prefactor * coeff
    return AsymptoticForm(constant, 2 * (k - 1), Fraction(order) + Fraction(k - 1, 2))


# ---------------------------------------------------------------------------
# JSON dump


def _poly_json(p: LaurentPoly) -> dict[str, str]:
    return {str(h): str(c) for h, c in p.as_map().items()}


def _matrix_json(matrix: Matrix) -> list[list[dict[str, str]]]:
    return [[_poly_json(p) for p in row] for row in matrix]


def algorithm_a_dump(run: AlgorithmARun) -> dict:
    leading = []
    for row in run.final:
        out_row = []
        for p in row:
            try:
                order, coeff = leading_term(p)
                out_row.append({"order": order, "coeff": str(coeff)})
            except ZeroPolynomialError:
                out_row.append({"order": None, "coeff": "0"})
        leading.append(out_row)
    return {
        "k": run.k,
        "H": run.H,
        "steps": [{"t": s.t, "matrix": _matrix_json(s.matrix)} for s in run.steps],
        "leading": leading,
    }
