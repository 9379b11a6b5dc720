"""Polynomials in ``x`` and shift-invariant operators acting on them.

A shift-invariant operator is stored as its symbol, a power series in ``D``.
On a polynomial of degree ``d`` only the symbol coefficients ``0..d`` matter,
because ``D`` is nilpotent there, so a truncated symbol acts exactly as long
as its order is at least ``d``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .series import Series, as_rational, bell_partial, bell_triangle, exp_series


class Polynomial:
    """Exact polynomial in ``x``; ``coeffs[k]`` is the coefficient of ``x**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> Polynomial:
        return cls([0] * degree + [coeff])

    @classmethod
    def x(cls) -> Polynomial:
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree; -1 stands in for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial((other,)).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        return out + "".join(f" {s} {b}" for s, b in parts[1:])

    def _coerce(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            return other
        try:
            return Polynomial((as_rational(other),))
        except TypeError:
            return None

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            try:
                k = as_rational(other)
            except TypeError:
                return NotImplemented
            return Polynomial(k * c for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        result = Polynomial((1,))
        for _ in range(k):
            result = result * self
        return result

    def times_x(self, power: int = 1) -> Polynomial:
        """Multiplication by ``x**power``."""
        if self.is_zero():
            return self
        return Polynomial([0] * power + list(self.coeffs))

    def derivative(self, j: int = 1) -> Polynomial:
        cs = self.coeffs
        for _ in range(j):
            cs = tuple(i * cs[i] for i in range(1, len(cs)))
        return Polynomial(cs)

    def __call__(self, value):
        """Evaluate at a scalar (Horner)."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def substitute(self, other: Polynomial) -> Polynomial:
        """``self(other(x))``."""
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def shifted(self, a) -> Polynomial:
        """``p(x + a)`` by direct substitution."""
        return self.substitute(Polynomial((as_rational(a), 1)))


class ShiftInvariantOperator:
    """An operator ``W = w(D)`` given by its symbol ``w``, a power series in ``D``."""

    __slots__ = ("symbol",)

    def __init__(self, symbol: Series):
        self.symbol = symbol

    @classmethod
    def identity(cls, order: int) -> ShiftInvariantOperator:
        return cls(Series.one(order))

    @classmethod
    def derivative(cls, order: int) -> ShiftInvariantOperator:
        """The operator ``D`` itself."""
        return cls(Series.t(order))

    @property
    def order(self) -> int:
        return self.symbol.order

    def __repr__(self) -> str:
        return f"ShiftInvariantOperator({self.symbol.format('D')})"

    def __eq__(self, other) -> bool:
        if isinstance(other, ShiftInvariantOperator):
            return self.symbol == other.symbol
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.symbol)

    def apply(self, p: Polynomial) -> Polynomial:
        """``sum_j w_j p^(j)``."""
        if p.degree > self.order:
            raise ValueError(
                f"symbol known to order {self.order} cannot act exactly on degree {p.degree}"
            )
        acc = Polynomial()
        deriv = p
        for j in range(p.degree + 1):
            w = self.symbol.coeffs[j]
            if w:
                acc = acc + deriv * w
            deriv = deriv.derivative()
        return acc

    __call__ = apply

    def __mul__(self, other) -> ShiftInvariantOperator:
        if isinstance(other, ShiftInvariantOperator):
            return ShiftInvariantOperator(self.symbol * other.symbol)
        return ShiftInvariantOperator(self.symbol * other)

    __rmul__ = __mul__

    def __add__(self, other) -> ShiftInvariantOperator:
        if isinstance(other, ShiftInvariantOperator):
            other = other.symbol
        return ShiftInvariantOperator(self.symbol + other)

    __radd__ = __add__

    def __sub__(self, other) -> ShiftInvariantOperator:
        if isinstance(other, ShiftInvariantOperator):
            other = other.symbol
        return ShiftInvariantOperator(self.symbol - other)

    def __neg__(self) -> ShiftInvariantOperator:
        return ShiftInvariantOperator(-self.symbol)

    def inverse(self) -> ShiftInvariantOperator:
        return ShiftInvariantOperator(self.symbol.reciprocal())

    def __pow__(self, c) -> ShiftInvariantOperator:
        """Integer powers by repeated multiplication; other rationals by binomial series."""
        if isinstance(c, int):
            return ShiftInvariantOperator(self.symbol**c)
        c = as_rational(c)
        if c.denominator == 1:
            return ShiftInvariantOperator(self.symbol ** int(c))
        return ShiftInvariantOperator(self.symbol.pow(c))


def shift_op(a, order: int) -> ShiftInvariantOperator:
    """The shift ``E^a = exp(a D)``, so ``E^a p(x) = p(x + a)``."""
    return ShiftInvariantOperator(exp_series(order, a))


def forward_difference(order: int) -> ShiftInvariantOperator:
    """``Delta = E^1 - 1``."""
    return shift_op(1, order) - 1


def op_compose(a: ShiftInvariantOperator, b: ShiftInvariantOperator) -> ShiftInvariantOperator:
    return a * b


@dataclass(frozen=True)
class StaircaseOperator:
    """``sum_k x^k W_k`` with shift-invariant ``W_k``.

    Multiplication by ``x`` is not shift-invariant; it only exists here,
    to the left of each ``W_k``.
    """

    terms: tuple[tuple[int, ShiftInvariantOperator], ...]

    def __post_init__(self):
        ks = [k for k, _ in self.terms]
        if len(set(ks)) != len(ks):
            raise ValueError("staircase powers of x must be distinct")
        if any(k < 0 for k in ks):
            raise ValueError("staircase powers of x must be nonnegative")

    def apply(self, p: Polynomial) -> Polynomial:
        acc = Polynomial()
        for k, w in self.terms:
            acc = acc + w.apply(p).times_x(k)
        return acc

    __call__ = apply


def staircase_apply(s: StaircaseOperator, p: Polynomial) -> Polynomial:
    return s.apply(p)


def bell_operator_table(
    derivative_symbols: Sequence[Series], n_max: int
) -> list[list[ShiftInvariantOperator]]:
    """``B_{n,k}`` evaluated at operator arguments, for all ``k <= n <= n_max``.

    ``derivative_symbols[j-1]`` is the symbol of the ``j``-th argument.
    """
    if not derivative_symbols:
        order = 0
    else:
        order = max(s.order for s in derivative_symbols)
    rows = bell_triangle(
        n_max, list(derivative_symbols[:n_max]), one=Series.one(order), zero=Series.zero(order)
    )
    return [[ShiftInvariantOperator(s) for s in row] for row in rows]


def derivative_symbols_at(f: Series, q: Series | None, count: int) -> list[Series]:
    """Symbols of ``f^(j)(Q)`` for ``j = 1..count`` where ``Q = q(D)``.

    With ``q`` None the derivatives are taken at ``D`` itself.
    """
    out = []
    for j in range(1, count + 1):
        fj = f.derivative(j)
        out.append(fj if q is None else fj.compose(q))
    return out


def bell_operator(n: int, k: int, f: Series, q: Series | None) -> ShiftInvariantOperator:
    """``B_{n,k}(f'(Q), ..., f^(n-k+1)(Q))`` with ``Q = q(D)`` (``Q = D`` when q is None)."""
    if n == 0 and k == 0:
        return ShiftInvariantOperator.identity(f.order)
    if k == 0 or k > n:
        return ShiftInvariantOperator(Series.zero(f.order))
    args = derivative_symbols_at(f, q, n - k + 1)
    order = min(s.order for s in args)
    value = bell_partial(n, k, args, one=Series.one(order), zero=Series.zero(order))
    return ShiftInvariantOperator(value)
