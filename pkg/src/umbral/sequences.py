"""Classical umbral systems: falling factorials, Touchard, Laguerre, Bucchianico.

Each preset carries its generator, its delta-operator symbol, and an
independent formula for the connection coefficients so the Bell-derived
triangle can be cross-checked.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable

from .classification import Family, FamilySpec, delta_symbol, verify_special
from .core import UmbralOperator
from .operators import Polynomial, ShiftInvariantOperator, shift_op
from .report import Report
from .series import Series, binomial_series, exp_series, log1p_series, set_partitions


@lru_cache(maxsize=None)
def stirling1_signed(n: int, k: int) -> Fraction:
    """Signed Stirling numbers of the first kind: ``s(n+1, k) = s(n, k-1) - n s(n, k)``."""
    if n < 0 or k < 0 or k > n:
        return Fraction(0)
    if n == 0:
        return Fraction(1)
    return stirling1_signed(n - 1, k - 1) - (n - 1) * stirling1_signed(n - 1, k)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> Fraction:
    """Stirling numbers of the second kind: ``S(n+1, k) = k S(n, k) + S(n, k-1)``."""
    if n < 0 or k < 0 or k > n:
        return Fraction(0)
    if n == 0:
        return Fraction(1)
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def lah_signed(n: int, k: int) -> Fraction:
    """``(-1)^(n-k) C(n-1, k-1) n!/k!``, with ``<0,0> = 1`` and zero off the triangle."""
    if n == 0 and k == 0:
        return Fraction(1)
    if k < 1 or k > n:
        return Fraction(0)
    return Fraction((-1) ** (n - k) * comb(n - 1, k - 1) * factorial(n), factorial(k))


def bucchianico_coeff(n: int, k: int) -> Fraction:
    """``C(2n-k-1, n-1) (n-1)!/(k-1)!``, with ``<0,0> = 1`` and zero off the triangle."""
    if n == 0 and k == 0:
        return Fraction(1)
    if k < 1 or k > n:
        return Fraction(0)
    return Fraction(comb(2 * n - k - 1, n - 1) * factorial(n - 1), factorial(k - 1))


def identity_coeff(n: int, k: int) -> Fraction:
    return Fraction(int(n == k))


def falling_factorial(n: int, shift=0) -> Polynomial:
    """``(x - shift)_n = (x - shift)(x - shift - 1)...(x - shift - n + 1)``."""
    p = Polynomial((1,))
    for i in range(n):
        p = p * Polynomial((-(shift + i), 1))
    return p


def count_set_partitions(n: int, k: int) -> int:
    return sum(1 for _ in set_partitions(n, k))


@dataclass(frozen=True)
class PresetSystem:
    name: str
    generator: Callable[[int], Series]
    delta_symbol: Callable[[int], Series]
    triangle_oracle: Callable[[int, int], Fraction]

    def umbral(self, n_max: int) -> UmbralOperator:
        return UmbralOperator(self.generator(n_max), n_max)


def _catalan_generator(order: int) -> Series:
    # (1 - sqrt(1 - 4t)) / 2, the inverse of t(1 - t)
    return (1 - binomial_series(Fraction(1, 2), order, -4)) / 2


def _laguerre_generator(order: int) -> Series:
    t = Series.t(order)
    return t / (1 + t)


def _laguerre_delta(order: int) -> Series:
    t = Series.t(order)
    return t / (1 - t)


PRESETS: dict[str, PresetSystem] = {
    "identity": PresetSystem("Identity", Series.t, Series.t, identity_coeff),
    "falling": PresetSystem(
        "FallingFactorial", log1p_series, lambda n: exp_series(n) - 1, stirling1_signed
    ),
    "touchard": PresetSystem(
        "Touchard", lambda n: exp_series(n) - 1, log1p_series, stirling2
    ),
    "laguerre": PresetSystem("Laguerre", _laguerre_generator, _laguerre_delta, lah_signed),
    "bucchianico": PresetSystem(
        "Bucchianico", _catalan_generator, lambda n: Series((0, 1, -1), n), bucchianico_coeff
    ),
}


def preset(name: str) -> PresetSystem:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None


def verify_preset_triangle(name: str, n_max: int = 10) -> Report:
    """Bell-derived triangle of a preset against its independent formula."""
    system = preset(name)
    phi = system.umbral(n_max)
    report = Report(f"{name}-triangle", {"n_max": n_max})
    for n in range(n_max + 1):
        for k in range(n + 1):
            report.checked += 1
            if phi.coeff(n, k) != system.triangle_oracle(n, k):
                return report.fail(n=n, k=k, bell=phi.coeff(n, k), closed_form=system.triangle_oracle(n, k))
    report.checked += 1
    order = n_max
    if system.generator(order).compose(system.delta_symbol(order)) != Series.t(order):
        return report.fail(reason="generator and delta symbol are not inverse")
    return report


def touchard(n: int) -> Polynomial:
    return Polynomial(stirling2(n, k) for k in range(n + 1))


def bell_number(n: int) -> Fraction:
    """``T_n(1)`` from the Bell-derived Touchard triangle."""
    if n < 0 or n > 15:
        raise ValueError("bell_number supports 0 <= n <= 15")
    phi = PRESETS["touchard"].umbral(max(n, 1))
    return phi.polynomial(n)(1)


def verify_stirling1_products(n_max: int = 10) -> Report:
    """Signed Stirling-1 rows against the expanded product ``x(x-1)...(x-n+1)``."""
    report = Report("stirling1-products", {"n_max": n_max})
    for n in range(n_max + 1):
        ff = falling_factorial(n)
        for k in range(n + 1):
            report.checked += 1
            if stirling1_signed(n, k) != ff[k]:
                return report.fail(n=n, k=k, recurrence=stirling1_signed(n, k), product=ff[k])
    return report


def verify_stirling2_partitions(n_max: int = 8) -> Report:
    """Stirling-2 recurrence against explicit set-partition counts."""
    report = Report("stirling2-partitions", {"n_max": n_max})
    for n in range(n_max + 1):
        for k in range(n + 1):
            report.checked += 1
            if stirling2(n, k) != count_set_partitions(n, k):
                return report.fail(n=n, k=k, recurrence=stirling2(n, k), partitions=count_set_partitions(n, k))
    return report


def verify_bell_numbers(n_max: int = 10, enumerate_up_to: int = 10) -> Report:
    """Bell numbers three ways: Touchard at 1, Stirling-2 row sums, partition enumeration."""
    report = Report("bell-numbers", {"n_max": n_max, "enumerate_up_to": enumerate_up_to})
    for n in range(n_max + 1):
        via_touchard = bell_number(n)
        via_sums = sum((stirling2(n, k) for k in range(n + 1)), Fraction(0))
        report.checked += 1
        if via_touchard != via_sums:
            return report.fail(n=n, touchard=via_touchard, stirling_sum=via_sums)
        if n <= enumerate_up_to:
            report.checked += 1
            count = sum(1 for _ in set_partitions(n))
            if count != via_touchard:
                return report.fail(n=n, touchard=via_touchard, partitions=count)
    return report


def verify_stirling_duality(n_max: int = 10) -> Report:
    """``sum_j s(n,j) S(j,k) = delta_{n,k}``."""
    report = Report("stirling-duality", {"n_max": n_max})
    for n in range(n_max + 1):
        for k in range(n + 1):
            report.checked += 1
            total = sum((stirling1_signed(n, j) * stirling2(j, k) for j in range(n + 1)), Fraction(0))
            if total != int(n == k):
                return report.fail(n=n, k=k, sum=total)
    return report


def verify_falling_factorial_identity(n_max: int = 6, m_max: int = 6) -> Report:
    """``(x)_{n+m} = (x)_n (x-n)_m``.

    Checked three ways per ``(n, m)``: expanded products, the operator route
    ``sum_k s(n,k) x^k E^{-n} (x)_m``, and the umbral images of ``x^(n+m)``.
    """
    report = Report("falling-factorial-product", {"n_max": n_max, "m_max": m_max})
    phi = PRESETS["falling"].umbral(n_max + m_max)
    for n in range(n_max + 1):
        back = shift_op(-n, m_max)
        for m in range(m_max + 1):
            lhs = falling_factorial(n + m)
            product = falling_factorial(n) * falling_factorial(m, shift=n)
            shifted = back(phi.polynomial(m))
            operator = Polynomial()
            for k in range(n + 1):
                operator = operator + shifted.times_x(k) * stirling1_signed(n, k)
            report.checked += 1
            for label, rhs in (("product", product), ("operator", operator), ("umbral", phi.polynomial(n + m))):
                if lhs != rhs:
                    return report.fail(n=n, m=m, route=label, lhs=str(lhs), rhs=str(rhs))
    engine = verify_special(FamilySpec(Family.EXPONENTIAL, 1, 1), n_max, m_max)
    report.checked += engine.checked
    if not engine:
        return report.fail(route="special-commutation", **engine.failure)
    return report


def verify_spivey(n_max: int = 6, m_max: int = 4) -> Report:
    """``T_{n+m}(x) = sum_k S(n,k) x^k sum_j C(m,j) k^(m-j) T_j(x)``, and at ``x = 1``.

    The middle form ``sum_k S(n,k) x^k phi^{-1}((x+k)^m)`` is checked too.
    """
    report = Report("spivey", {"n_max": n_max, "m_max": m_max})
    phi_inv = PRESETS["touchard"].umbral(n_max + m_max)
    for n in range(n_max + 1):
        for m in range(m_max + 1):
            lhs = phi_inv.polynomial(n + m)
            expanded = Polynomial()
            shifted = Polynomial()
            for k in range(n + 1):
                s = stirling2(n, k)
                if not s:
                    continue
                inner = Polynomial()
                for j in range(m + 1):
                    inner = inner + touchard(j) * (comb(m, j) * k ** (m - j))
                expanded = expanded + inner.times_x(k) * s
                shifted = shifted + phi_inv(Polynomial.monomial(m).shifted(k)).times_x(k) * s
            report.checked += 1
            for label, rhs in (("expanded", expanded), ("shifted", shifted)):
                if lhs != rhs:
                    return report.fail(n=n, m=m, route=label, lhs=str(lhs), rhs=str(rhs))
            report.checked += 1
            bell_rhs = sum(
                (stirling2(n, k) * sum((comb(m, j) * k ** (m - j) * bell_number(j) for j in range(m + 1)), Fraction(0))
                 for k in range(n + 1)),
                Fraction(0),
            )
            if bell_number(n + m) != bell_rhs:
                return report.fail(n=n, m=m, route="bell", lhs=bell_number(n + m), rhs=bell_rhs)
    engine = verify_special(FamilySpec(Family.LOGARITHMIC, 1, 1), n_max, m_max)
    report.checked += engine.checked
    if not engine:
        return report.fail(route="special-commutation", **engine.failure)
    return report


def generalized_binomial(top: Fraction | int, k: int) -> Fraction:
    if k < 0:
        return Fraction(0)
    out = Fraction(1)
    for i in range(k):
        out = out * (top - i) / (i + 1)
    return out


def classical_laguerre(m: int, alpha) -> Polynomial:
    """Associated Laguerre ``L_m^(alpha)(x) = sum_i (-1)^i C(m+alpha, m-i) x^i / i!``."""
    return Polynomial(
        (-1) ** i * generalized_binomial(m + Fraction(alpha), m - i) / factorial(i) for i in range(m + 1)
    )


def laguerre_shifted(phi: UmbralOperator, alpha: int, m: int) -> Polynomial:
    """``((1 - D)^alpha L)(x^m)``; the associated polynomials in this normalization."""
    op = ShiftInvariantOperator(Series((1, -1), max(m, 1))) ** alpha
    return op(phi.polynomial(m))


def verify_laguerre_normalization(n_max: int = 6, m_max: int = 4) -> Report:
    """``((1-D)^alpha L)(x^m) = (-1)^m m! L_m^(alpha-1)(x)`` against the classical formula."""
    report = Report("laguerre-normalization", {"n_max": n_max, "m_max": m_max})
    phi = PRESETS["laguerre"].umbral(m_max)
    for alpha in range(2 * n_max + 1):
        for m in range(m_max + 1):
            ours = laguerre_shifted(phi, alpha, m)
            classical = classical_laguerre(m, alpha - 1) * ((-1) ** m * factorial(m))
            report.checked += 1
            if ours != classical:
                return report.fail(alpha=alpha, m=m, ours=str(ours), classical=str(classical))
    return report


def verify_laguerre_identity(n_max: int = 6, m_max: int = 4) -> Report:
    """``L_{n+m}(x) = sum_k <n,k>_L x^k L_m^{(k+n)}(x)`` in the ``(1-D)^alpha L`` normalization."""
    report = Report("laguerre-identity", {"n_max": n_max, "m_max": m_max})
    phi = PRESETS["laguerre"].umbral(n_max + m_max)
    for n in range(n_max + 1):
        for m in range(m_max + 1):
            rhs = Polynomial()
            for k in range(n + 1):
                c = lah_signed(n, k)
                if c:
                    rhs = rhs + laguerre_shifted(phi, k + n, m).times_x(k) * c
            lhs = phi.polynomial(n + m)
            report.checked += 1
            if lhs != rhs:
                return report.fail(n=n, m=m, lhs=str(lhs), rhs=str(rhs))
    normal = verify_laguerre_normalization(n_max, m_max)
    report.checked += normal.checked
    if not normal:
        return report.fail(route="normalization", **normal.failure)
    return report


BUCCHIANICO_SPEC = FamilySpec(Family.POWER, Fraction(-1, 4), -2, 2)


def verify_bucchianico(n_max: int = 6, m_max: int = 4) -> Report:
    """``B x^n = sum_k <n,k>_B x^k (1-2D)^(k-2n) B`` via the Power family ``a=-1/4, b=-2, c=2``."""
    report = Report("bucchianico", {"n_max": n_max, "m_max": m_max})
    order = n_max + m_max
    report.checked += 1
    if delta_symbol(BUCCHIANICO_SPEC, order) != Series((0, 1, -1), order):
        return report.fail(reason="power-family symbol is not D - D^2")
    engine = verify_special(BUCCHIANICO_SPEC, n_max, m_max)
    report.checked += engine.checked
    if not engine:
        return report.fail(route="special-commutation", **engine.failure)
    # the exponent k - 2n written out directly
    phi = PRESETS["bucchianico"].umbral(order)
    base = ShiftInvariantOperator(Series((1, -2), order))
    for n in range(n_max + 1):
        for m in range(m_max + 1):
            rhs = Polynomial()
            for k in range(n + 1):
                c = bucchianico_coeff(n, k)
                if c:
                    rhs = rhs + (base ** (k - 2 * n))(phi.polynomial(m)).times_x(k) * c
            lhs = phi.polynomial(n + m)
            report.checked += 1
            if lhs != rhs:
                return report.fail(n=n, m=m, lhs=str(lhs), rhs=str(rhs))
    return report
