"""Umbral operators built from a generator series, and engines that check
their operational identities on monomials.

An umbral operator ``phi`` sends ``x**n`` to ``phi_n(x)``, where
``exp(x f(t)) = sum_n phi_n(x) t**n / n!``.  Its delta operator is
``Q = q(D)`` with ``q`` the compositional inverse of ``f``.

All engines compare both sides on the monomials ``x**m`` for ``m <= deg_max``.
Both sides are linear, so this certifies the operator identity on every
polynomial of degree at most ``deg_max``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .operators import (
    Polynomial,
    ShiftInvariantOperator,
    StaircaseOperator,
    bell_operator_table,
    derivative_symbols_at,
)
from .report import Report
from .series import Series, bell_triangle, taylor_values

DEFAULT_N_MAX = 8
DEFAULT_DEG_MAX = 6
DEFAULT_ORDER = 12


@dataclass(frozen=True)
class DeltaOperator:
    """``Q = q(D)``; the symbol has zero constant term and nonzero linear term."""

    op: ShiftInvariantOperator

    def __post_init__(self):
        s = self.op.symbol
        if s.coeffs[0] != 0 or s.order < 1 or s.coeffs[1] == 0:
            raise ValueError("a delta operator symbol needs q(0) = 0 and q'(0) != 0")

    @property
    def symbol(self) -> Series:
        return self.op.symbol

    def apply(self, p: Polynomial) -> Polynomial:
        return self.op.apply(p)

    __call__ = apply


class UmbralOperator:
    """The umbral operator attached to a generator ``f`` with ``f(0) = 0 != f'(0)``.

    The connection-coefficient triangle ``<n,k>`` is filled eagerly from the
    partial Bell polynomials of ``f'(0), f''(0), ...`` for ``n <= n_max``.
    """

    __slots__ = ("generator", "inverse_generator", "triangle", "n_max")

    def __init__(self, generator: Series, n_max: int = DEFAULT_ORDER):
        f = generator
        if f.order < max(n_max, 1):
            raise ValueError(f"generator known to order {f.order}, need at least {n_max}")
        if f.coeffs[0] != 0:
            raise ValueError("generator must satisfy f(0) = 0")
        if f.coeffs[1] == 0:
            raise ValueError("generator must satisfy f'(0) != 0")
        self.generator = f
        self.inverse_generator = f.inverse()
        self.n_max = n_max
        args = taylor_values(f)[1 : n_max + 1]
        rows = bell_triangle(n_max, args, one=Fraction(1), zero=Fraction(0))
        self.triangle: tuple[tuple[Fraction, ...], ...] = tuple(tuple(r) for r in rows)

    def __repr__(self) -> str:
        return f"UmbralOperator({self.generator}, n_max={self.n_max})"

    def coeff(self, n: int, k: int) -> Fraction:
        if n > self.n_max:
            raise ValueError(f"triangle only holds rows up to {self.n_max}")
        if k < 0 or k > n:
            return Fraction(0)
        return self.triangle[n][k]

    def polynomial(self, n: int) -> Polynomial:
        """``phi_n(x) = phi x^n``."""
        if n > self.n_max:
            raise ValueError(f"degree {n} exceeds the triangle size {self.n_max}")
        return Polynomial(self.triangle[n])

    def apply(self, p: Polynomial) -> Polynomial:
        if p.degree > self.n_max:
            raise ValueError(f"degree {p.degree} exceeds the triangle size {self.n_max}")
        acc = Polynomial()
        for n, c in enumerate(p.coeffs):
            if c:
                acc = acc + self.polynomial(n) * c
        return acc

    __call__ = apply

    def inverse(self) -> UmbralOperator:
        """The inverse umbral operator, generated by ``f^{-1}``."""
        return UmbralOperator(self.inverse_generator, self.n_max)

    def delta(self) -> DeltaOperator:
        return DeltaOperator(ShiftInvariantOperator(self.inverse_generator))


def umbral_from_generator(f: Series, n_max: int = DEFAULT_ORDER) -> UmbralOperator:
    return UmbralOperator(f, n_max)


def _monomial_case(report: Report, n: int, m: int, lhs: Polynomial, rhs: Polynomial) -> bool:
    report.checked += 1
    if lhs != rhs:
        report.fail(n=n, m=m, lhs=str(lhs), rhs=str(rhs), difference=str(lhs - rhs))
        return False
    return True


def _need(phi: UmbralOperator, degree: int, what: str):
    if phi.n_max < degree:
        raise ValueError(f"{what} needs the umbral operator to order {degree}, have {phi.n_max}")


def random_polynomial(rng: random.Random, degree: int) -> Polynomial:
    return Polynomial(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(degree + 1))


def verify_qphi(phi: UmbralOperator, n_max: int, samples: int = 3, seed: int = 0) -> Report:
    """``Q phi_n = n phi_{n-1}``, and ``Q phi p = phi D p`` on random ``p``."""
    _need(phi, n_max, "verify_qphi")
    report = Report("delta-lowering", {"n_max": n_max, "samples": samples, "seed": seed})
    q = phi.delta()
    for n in range(1, n_max + 1):
        if not _monomial_case(report, n, 0, q(phi.polynomial(n)), phi.polynomial(n - 1) * n):
            return report
    rng = random.Random(seed)
    for s in range(samples):
        p = random_polynomial(rng, n_max)
        if not _monomial_case(report, n_max, s, q(phi(p)), phi(p.derivative())):
            return report
    return report


def inverse_derivative_of_delta(phi: UmbralOperator) -> ShiftInvariantOperator:
    """``(Q')^{-1}``, the symbol ``1 / q'(D)``."""
    return ShiftInvariantOperator(phi.inverse_generator.derivative().reciprocal())


def verify_recurrence(phi: UmbralOperator, n_max: int) -> Report:
    """``phi_{n+1}(x) = x ((Q')^{-1} phi_n)(x)`` for ``0 <= n < n_max``."""
    _need(phi, n_max, "verify_recurrence")
    report = Report("recurrence", {"n_max": n_max})
    w = inverse_derivative_of_delta(phi)
    for n in range(n_max):
        rhs = w(phi.polynomial(n)).times_x()
        if not _monomial_case(report, n, 0, phi.polynomial(n + 1), rhs):
            return report
    return report


def _bell_operators(phi: UmbralOperator, n_max: int, at_delta: bool) -> list[list[ShiftInvariantOperator]]:
    """``B_{n,k}(f'(Q), ...)`` (or at ``D`` when ``at_delta`` is false) for ``n <= n_max``."""
    count = max(n_max, 1)
    q = phi.inverse_generator if at_delta else None
    return bell_operator_table(derivative_symbols_at(phi.generator, q, count), n_max)


def staircase_rhs(phi: UmbralOperator, n: int) -> StaircaseOperator:
    """``sum_k x^k B_{n,k}(f'(Q), ..., f^(n-k+1)(Q))``, to be applied after ``phi``."""
    _need(phi, n, "staircase_rhs")
    row = _bell_operators(phi, n, at_delta=True)[n]
    return StaircaseOperator(tuple((k, w) for k, w in enumerate(row)))


def verify_staircase(phi: UmbralOperator, n_max: int = DEFAULT_N_MAX, deg_max: int = DEFAULT_DEG_MAX) -> Report:
    """``phi x^(n+m) = sum_k x^k B_{n,k}(f'(Q), ...) phi x^m``."""
    _need(phi, n_max + deg_max, "verify_staircase")
    report = Report("bell-staircase", {"n_max": n_max, "deg_max": deg_max})
    table = _bell_operators(phi, n_max, at_delta=True)
    images = [phi.polynomial(m) for m in range(deg_max + 1)]
    for n in range(n_max + 1):
        stair = StaircaseOperator(tuple(enumerate(table[n])))
        for m in range(deg_max + 1):
            if not _monomial_case(report, n, m, phi.polynomial(n + m), stair(images[m])):
                return report
    return report


def verify_staircase_at_d(phi: UmbralOperator, n_max: int = DEFAULT_N_MAX, deg_max: int = DEFAULT_DEG_MAX) -> Report:
    """``phi x^(n+m) = sum_k x^k phi B_{n,k}(f'(D), ...) x^m``.

    Also checks that this form and the one with the Bell operator at ``Q``
    after ``phi`` produce the same polynomial term by term in ``k``.
    """
    _need(phi, n_max + deg_max, "verify_staircase_at_d")
    report = Report("bell-staircase-at-D", {"n_max": n_max, "deg_max": deg_max})
    at_d = _bell_operators(phi, n_max, at_delta=False)
    at_q = _bell_operators(phi, n_max, at_delta=True)
    for n in range(n_max + 1):
        for m in range(deg_max + 1):
            xm = Polynomial.monomial(m)
            image = phi.polynomial(m)
            rhs = Polynomial()
            for k in range(n + 1):
                term_d = phi(at_d[n][k](xm))
                term_q = at_q[n][k](image)
                report.checked += 1
                if term_d != term_q:
                    report.fail(n=n, m=m, k=k, lhs=str(term_d), rhs=str(term_q),
                                difference=str(term_d - term_q))
                    return report
                rhs = rhs + term_d.times_x(k)
            if not _monomial_case(report, n, m, phi.polynomial(n + m), rhs):
                return report
    return report


def _exponential_route(phi: UmbralOperator, n: int) -> list[list[Series]]:
    """Coefficients of ``t^n`` in ``F(t)^k / k!`` with ``F(t) = sum_{j>=1} f^(j)(Q) t^j / j!``.

    Returned as ``[k] -> symbol`` rows for each ``n`` up to the requested one;
    the powers of ``F`` are formed by Cauchy products of operator-valued
    polynomials in ``t``, independently of the Bell recurrence.
    """
    symbols = derivative_symbols_at(phi.generator, phi.inverse_generator, max(n, 1))
    order = min(s.order for s in symbols)
    zero = Series.zero(order)
    big_f = [zero] + [s * Fraction(1, factorial(j + 1)) for j, s in enumerate(symbols)]
    big_f = big_f[: n + 1]
    power = [Series.one(order)] + [zero] * n  # F^0
    out = [[Series.zero(order) for _ in range(n + 1)] for _ in range(n + 1)]
    for k in range(n + 1):
        for deg in range(n + 1):
            out[deg][k] = power[deg] * Fraction(1, factorial(k))
        nxt = [zero] * (n + 1)
        for i, a in enumerate(power):
            if a.is_zero():
                continue
            for j in range(1, n + 1 - i):
                nxt[i + j] = nxt[i + j] + a * big_f[j]
        power = nxt
    return out


def verify_exponential_form(phi: UmbralOperator, t_order: int = 6, deg_max: int = 4) -> Report:
    """Compare ``phi e^{x t}`` with ``e^{x (Q')^{-1} t} phi`` order by order in ``t``.

    At order ``t^n / n!`` the left side is ``phi x^n``; the right side is
    ``(x (Q')^{-1})^n phi`` (iterated recurrence).  Each order is also matched
    against the expansion of ``(e^x)^{f(Q+t) - D}``, i.e.
    ``sum_k x^k / k! * n! [t^n] F(t)^k`` with ``F(t) = f(Q+t) - f(Q)``.
    """
    _need(phi, t_order + deg_max, "verify_exponential_form")
    report = Report("exponential-generating", {"t_order": t_order, "deg_max": deg_max})
    w = inverse_derivative_of_delta(phi)
    expansion = _exponential_route(phi, t_order)
    for m in range(deg_max + 1):
        iterated = phi.polynomial(m)
        for n in range(t_order + 1):
            if n:
                iterated = w(iterated).times_x()
            lhs = phi.polynomial(n + m)
            if not _monomial_case(report, n, m, lhs, iterated):
                return report
            image = phi.polynomial(m)
            expanded = Polynomial()
            for k in range(n + 1):
                op = ShiftInvariantOperator(expansion[n][k] * factorial(n))
                expanded = expanded + op(image).times_x(k)
            if not _monomial_case(report, n, m, lhs, expanded):
                return report
    return report


def random_generator(rng: random.Random, order: int, degree: int = 4) -> Series:
    """A polynomial generator with small random rational coefficients and ``f'(0) != 0``."""
    coeffs = [Fraction(0)]
    for j in range(1, degree + 1):
        while True:
            c = Fraction(rng.randint(-5, 5), rng.randint(1, 6))
            if j > 1 or c != 0:
                break
        coeffs.append(c)
    return Series(coeffs, order)
