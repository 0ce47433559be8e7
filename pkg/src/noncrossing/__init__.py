"""Exact and asymptotic enumeration of k-noncrossing perfect matchings."""

from .asymptotics import ck, ck_prime, convergence_table, fk_asymptotic, gk_coefficient, gk_spec, tilde_ck
from .bessel_series import TruncSeries, bessel_series, fk_via_determinant, series_det
from .laurent_asym import LaurentPoly, run_algorithm_a, theorem_a_form
from .matchings import Matching, count_bruteforce, count_tableaux, crossing_number, enumerate_matchings
from .scalars import PiPowerScalar, double_factorial_odd, gamma_half, to_float

__all__ = [
    "LaurentPoly",
    "Matching",
    "PiPowerScalar",
    "TruncSeries",
    "bessel_series",
    "ck",
    "ck_prime",
    "convergence_table",
    "count_bruteforce",
    "count_tableaux",
    "crossing_number",
    "double_factorial_odd",
    "enumerate_matchings",
    "fk_asymptotic",
    "fk_via_determinant",
    "gamma_half",
    "gk_coefficient",
    "gk_spec",
    "run_algorithm_a",
    "series_det",
    "theorem_a_form",
    "tilde_ck",
    "to_float",
]
