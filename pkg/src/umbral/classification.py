"""The four generator families closed under the translation equation

    g(x + y) = g(x) + u(x) g(v(x) y),

their (u, v) pairs, the matching delta-operator families with their (U, V)
operators, and a classifier that recovers the family from the first three
Taylor coefficients.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb

from .core import UmbralOperator
from .operators import Polynomial, ShiftInvariantOperator
from .report import Report
from .series import Series, as_rational, binomial_series, exp_series, log1p_series, taylor_values


class Family(str, Enum):
    LINEAR = "linear"
    EXPONENTIAL = "exponential"
    LOGARITHMIC = "logarithmic"
    POWER = "power"


@dataclass(frozen=True)
class FamilySpec:
    """One row of the family tables.

    ``a`` scales every family, ``b`` is the inner rate (not used by Linear),
    ``c`` the exponent of Power.  ``A`` is the free invertible series of the
    Linear row; it defaults to ``exp(t)``.
    """

    family: Family
    a: Fraction
    b: Fraction | None = None
    c: Fraction | None = None
    A: Series | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "a", as_rational(self.a))
        if self.b is not None:
            object.__setattr__(self, "b", as_rational(self.b))
        if self.c is not None:
            object.__setattr__(self, "c", as_rational(self.c))
        if self.a == 0:
            raise ValueError("a must be nonzero")
        if self.family is Family.LINEAR:
            if self.A is not None and self.A.coeffs[0] == 0:
                raise ValueError("A must have a nonzero constant term")
            return
        if self.b is None or self.b == 0:
            raise ValueError(f"{self.family.value} family needs a nonzero b")
        if self.family is Family.POWER and (self.c is None or self.c == 0):
            raise ValueError("power family needs a nonzero c")

    def __str__(self) -> str:
        a, b, c = (str(v) for v in (self.a, self.b, self.c))
        if self.family is Family.LINEAR:
            return f"{a}*t"
        if self.family is Family.EXPONENTIAL:
            return f"{a}*(exp({b}*t) - 1)"
        if self.family is Family.LOGARITHMIC:
            return f"{a}*log(1 + {b}*t)"
        return f"{a}*((1 + {b}*t)^({c}) - 1)"

    def params(self) -> dict[str, str]:
        out = {"family": self.family.value, "a": str(self.a)}
        if self.b is not None:
            out["b"] = str(self.b)
        if self.c is not None:
            out["c"] = str(self.c)
        return out

    def free_series(self, order: int) -> Series:
        """The Linear row's ``A``, at the requested order."""
        if self.A is None:
            return exp_series(order)
        if self.A.order < order:
            raise ValueError(f"A is known to order {self.A.order}, need {order}")
        return self.A.truncate(order)


@dataclass(frozen=True)
class NotInClass:
    """Classifier verdict for a series outside the four families."""

    reason: str

    def __str__(self) -> str:
        return f"NotInClass: {self.reason}"


def family_generator(spec: FamilySpec, order: int) -> Series:
    a, b, c = spec.a, spec.b, spec.c
    if spec.family is Family.LINEAR:
        return Series.t(order) * a
    if spec.family is Family.EXPONENTIAL:
        return (exp_series(order, b) - 1) * a
    if spec.family is Family.LOGARITHMIC:
        return log1p_series(order, b) * a
    return (binomial_series(c, order, b) - 1) * a


def family_uv_series(spec: FamilySpec, order: int) -> tuple[Series, Series]:
    """The ``(u, v)`` pair making ``g(x+y) = g(x) + u(x) g(v(x) y)`` hold."""
    b, c = spec.b, spec.c
    one = Series.one(order)
    if spec.family is Family.LINEAR:
        A = spec.free_series(order)
        return A, A.reciprocal()
    if spec.family is Family.EXPONENTIAL:
        return exp_series(order, b), one
    if spec.family is Family.LOGARITHMIC:
        return one, binomial_series(-1, order, b)
    return binomial_series(c, order, b), binomial_series(-1, order, b)


def _translation_sides(g: Series, u: Series, v: Series, order: int):
    """Both sides of the translation equation as ``{(i, j): coeff}`` over total degree ``<= order``.

    ``i`` is the power of ``x`` and ``j`` the power of ``y``.
    """
    lhs: dict[tuple[int, int], Fraction] = {}
    rhs: dict[tuple[int, int], Fraction] = {}
    for total in range(order + 1):
        for i in range(total + 1):
            lhs[(i, total - i)] = g[total] * comb(total, i)
            rhs[(i, total - i)] = Fraction(0)
    for i in range(order + 1):
        rhs[(i, 0)] += g[i]
    v_pow = Series.one(order)
    for j in range(1, order + 1):
        v_pow = v_pow * v
        if g[j] == 0:
            continue
        factor = u * v_pow
        for i in range(order - j + 1):
            rhs[(i, j)] += factor[i] * g[j]
    return lhs, rhs


def check_translation_equation(g: Series, u: Series, v: Series, order: int, name: str = "translation-equation") -> Report:
    if min(g.order, u.order, v.order) < order:
        raise ValueError(f"series must be known to order {order}")
    report = Report(name, {"order": order})
    lhs, rhs = _translation_sides(g, u, v, order)
    for key in sorted(lhs, key=lambda ij: (ij[0] + ij[1], ij[0])):
        report.checked += 1
        if lhs[key] != rhs[key]:
            return report.fail(x_power=key[0], y_power=key[1], lhs=lhs[key], rhs=rhs[key])
    return report


def verify_functional_equation(spec: FamilySpec, order: int = 10) -> Report:
    g = family_generator(spec, order)
    u, v = family_uv_series(spec, order)
    report = check_translation_equation(g, u, v, order)
    report.params.update(spec.params())
    return report


# classification


def alpha_beta(g: Series) -> tuple[Fraction, Fraction]:
    """``alpha = c2/c1 - c3/c2`` and ``beta = 2 c2/c1 - c3/c2`` from ``c_j = g^(j)(0)``.

    Every family solves ``(1 + alpha y) g'(y) = beta g(y) + c1``.
    """
    _, c1, c2, c3 = taylor_values(g)[:4]
    return c2 / c1 - c3 / c2, 2 * c2 / c1 - c3 / c2


def beta_assuming_unit_slope(g: Series) -> Fraction:
    """``2 c2 / c1**2 - c3 / c2``: agrees with ``alpha_beta`` only when ``c1 = 1``; kept for comparison tests."""
    _, c1, c2, c3 = taylor_values(g)[:4]
    return 2 * c2 / c1**2 - c3 / c2


def ode_residual(g: Series, alpha, beta) -> Series:
    """``(1 + alpha y) g'(y) - beta g(y) - c1``; zero iff the linear ODE holds."""
    alpha, beta = as_rational(alpha), as_rational(beta)
    dg = g.derivative()
    c1 = g[1]
    lin = Series((1, alpha), dg.order)
    return lin * dg - g.truncate(dg.order) * beta - c1


def _candidate(g: Series) -> FamilySpec | NotInClass:
    _, c1, c2, c3 = taylor_values(g)[:4]
    if c2 == 0:
        if c3 == 0:
            return FamilySpec(Family.LINEAR, a=c1)
        return NotInClass("g''(0) = 0 but g'''(0) != 0")
    alpha, beta = alpha_beta(g)
    if alpha == 0 and beta == 0:
        return NotInClass("alpha = beta = 0 with g''(0) != 0")
    if alpha == 0:
        return FamilySpec(Family.EXPONENTIAL, a=c1 / beta, b=beta)
    if beta == 0:
        return FamilySpec(Family.LOGARITHMIC, a=c1 / alpha, b=alpha)
    return FamilySpec(Family.POWER, a=c1 / beta, b=alpha, c=beta / alpha)


def classify_generator(g: Series) -> FamilySpec | NotInClass:
    """Family of ``g``, accepted only if its closed form matches ``g`` through ``g.order``."""
    if g.order < 4:
        raise ValueError("classification needs the series to order 4 or more")
    if g[0] != 0 or g[1] == 0:
        raise ValueError("classification needs g(0) = 0 and g'(0) != 0")
    spec = _candidate(g)
    if isinstance(spec, NotInClass):
        return spec
    if family_generator(spec, g.order) != g:
        return NotInClass(f"closest candidate {spec} differs from the series")
    return spec


def derived_uv(g: Series) -> tuple[Series, Series]:
    """``(u, v)`` forced by differentiating the translation equation at ``y = 0``.

    ``g' = c1 u v`` and ``g'' = c2 u v^2``; with ``c2 = 0`` the second relation
    cannot be solved, so ``v = 1`` and ``u = g'/c1`` are used.
    """
    _, c1, c2 = taylor_values(g)[:3]
    d1 = g.derivative()
    d2 = g.derivative(2)
    n = d2.order
    d1 = d1.truncate(n)
    if c2 == 0:
        return d1 / c1, Series.one(n)
    u = (d1 / c1) ** 2 * c2 / d2
    v = d2 / c2 * c1 / d1
    return u, v


def search_translation_counterexample(g: Series, order: int | None = None) -> Report:
    """Check the translation equation with the forced ``(u, v)``; a failure is a witness."""
    u, v = derived_uv(g)
    order = min(order if order is not None else u.order, u.order)
    return check_translation_equation(g, u, v, order, name="forced-uv-translation")


# delta-operator families


@dataclass(frozen=True)
class UVPair:
    U: ShiftInvariantOperator
    V: ShiftInvariantOperator


def delta_symbol(spec: FamilySpec, order: int) -> Series:
    """Symbol of ``Q``: the family closed form with ``t`` read as ``D``."""
    return family_generator(spec, order)


def special_uv_pair(spec: FamilySpec, order: int) -> UVPair:
    b, c = spec.b, spec.c
    one = ShiftInvariantOperator.identity(order)
    if spec.family is Family.LINEAR:
        A = ShiftInvariantOperator(spec.free_series(order))
        return UVPair(A, A.inverse())
    if spec.family is Family.EXPONENTIAL:
        return UVPair(one, ShiftInvariantOperator(exp_series(order, -b)))
    base = ShiftInvariantOperator(Series((1, b), order))
    if spec.family is Family.LOGARITHMIC:
        return UVPair(base, one)
    return UVPair(base, base ** (-c))


def verify_uv_unitality(pair: UVPair) -> Report:
    """``U^k V^n 1 = 1`` for all ``k, n`` iff both symbols have constant term 1."""
    report = Report("uv-unitality")
    for name, op in (("U", pair.U), ("V", pair.V)):
        report.checked += 1
        if op.symbol[0] != 1:
            return report.fail(operator=name, constant_term=op.symbol[0])
    return report


def special_umbral(spec: FamilySpec, n_max: int) -> UmbralOperator:
    """Umbral operator whose delta operator is the family's ``Q``."""
    return UmbralOperator(delta_symbol(spec, n_max).inverse(), n_max)


def verify_special(spec: FamilySpec, n_max: int = 8, deg_max: int = 6) -> Report:
    """``phi x^(n+m) = sum_k <n,k> x^k U^k V^n phi x^m`` with the family's ``(U, V)``."""
    order = n_max + deg_max
    phi = special_umbral(spec, order)
    pair = special_uv_pair(spec, order)
    report = Report("special-commutation", {"n_max": n_max, "deg_max": deg_max, **spec.params()})
    u_pows = [pair.U ** k for k in range(n_max + 1)]
    v_pows = [pair.V ** n for n in range(n_max + 1)]
    one = Polynomial((1,))
    # U^k V^n 1 = 1 is forced wherever <n,k> != 0
    for n in range(n_max + 1):
        for k in range(n + 1):
            if phi.coeff(n, k):
                report.checked += 1
                value = (u_pows[k] * v_pows[n])(one)
                if value != one:
                    return report.fail(n=n, k=k, unit_image=str(value))
    for n in range(n_max + 1):
        for m in range(deg_max + 1):
            image = phi.polynomial(m)
            rhs = Polynomial()
            for k in range(n + 1):
                c = phi.coeff(n, k)
                if c:
                    rhs = rhs + (u_pows[k] * v_pows[n])(image).times_x(k) * c
            lhs = phi.polynomial(n + m)
            report.checked += 1
            if lhs != rhs:
                return report.fail(n=n, m=m, lhs=str(lhs), rhs=str(rhs), difference=str(lhs - rhs))
    return report


# random specs for sweeps

POLYNOMIAL_ORDER = 256


def exact_polynomial(coeffs) -> Series:
    """A polynomial viewed as a series; exact through any order up to ``POLYNOMIAL_ORDER``."""
    return Series(coeffs, POLYNOMIAL_ORDER)


_RATIONALS = [Fraction(p, q) for p in range(-4, 5) if p for q in (1, 2, 3)]


def random_spec(rng: random.Random, family: Family | None = None) -> FamilySpec:
    family = Family(family) if family else rng.choice(list(Family))
    a = rng.choice(_RATIONALS)
    if family is Family.LINEAR:
        head = [rng.choice(_RATIONALS)] + [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(3)]
        A = exact_polynomial(head)
        return FamilySpec(family, a, A=A)
    b = rng.choice(_RATIONALS)
    if family is Family.POWER:
        c = rng.choice([v for v in _RATIONALS if v != 1] + [Fraction(-3, 2), Fraction(1, 2)])
        return FamilySpec(family, a, b, c)
    return FamilySpec(family, a, b)
