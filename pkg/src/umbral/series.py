"""Truncated formal power series over the rationals, and partial Bell polynomials.

A :class:`Series` stores the coefficients ``c_0 .. c_N`` of ``t^0 .. t^N``
together with the truncation order ``N``.  Every operation reports only
coefficients it can justify: binary operations truncate to the smaller order,
differentiation lowers the order, and so on.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Iterator, Sequence, TypeVar

T = TypeVar("T")


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: they would smuggle rounding into exact arithmetic.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


class Series:
    """A formal power series in one variable, known through ``t**order``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable = (), order: int | None = None):
        cs = [as_rational(c) for c in coeffs]
        if order is None:
            order = max(len(cs) - 1, 0)
        if order < 0:
            raise ValueError("order must be nonnegative")
        cs = cs[: order + 1]
        cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self.order: int = order

    # construction helpers

    @classmethod
    def zero(cls, order: int) -> Series:
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> Series:
        return cls((1,), order)

    @classmethod
    def constant(cls, value, order: int) -> Series:
        return cls((value,), order)

    @classmethod
    def t(cls, order: int) -> Series:
        """The identity series ``t``."""
        return cls((0, 1), order)

    @classmethod
    def monomial(cls, degree: int, order: int, coeff=1) -> Series:
        return cls([0] * degree + [coeff], order)

    # container protocol

    def __getitem__(self, j: int) -> Fraction:
        if j < 0:
            raise IndexError(j)
        if j > self.order:
            raise IndexError(f"coefficient t^{j} is beyond order {self.order}")
        return self.coeffs[j]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coeffs)

    def __len__(self) -> int:
        return self.order + 1

    def __eq__(self, other) -> bool:
        if isinstance(other, Series):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.coeffs, self.order))

    def __repr__(self) -> str:
        return f"Series({[str(c) for c in self.coeffs]}, order={self.order})"

    def __str__(self) -> str:
        return self.format("t")

    def format(self, var: str = "t", big_o: bool = True) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if j == 0:
                body = str(mag)
            elif mag == 1:
                body = var if j == 1 else f"{var}^{j}"
            else:
                body = f"{mag}*{var}" if j == 1 else f"{mag}*{var}^{j}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            head = "0"
        else:
            sign, body = terms[0]
            head = ("-" if sign == "-" else "") + body
            head += "".join(f" {s} {b}" for s, b in terms[1:])
        return f"{head} + O({var}^{self.order + 1})" if big_o else head

    # structure

    def truncate(self, order: int) -> Series:
        if order > self.order:
            raise ValueError(f"cannot raise order {self.order} to {order}")
        return Series(self.coeffs[: order + 1], order)

    @property
    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None if all known ones vanish."""
        for j, c in enumerate(self.coeffs):
            if c != 0:
                return j
        return None

    def is_zero(self) -> bool:
        return self.valuation is None

    # arithmetic

    def _coerce(self, other) -> Series | None:
        if isinstance(other, Series):
            return other
        try:
            return Series.constant(as_rational(other), self.order)
        except TypeError:
            return None

    def __add__(self, other) -> Series:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = min(self.order, other.order)
        return Series((a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)), n)

    __radd__ = __add__

    def __neg__(self) -> Series:
        return Series((-c for c in self.coeffs), self.order)

    def __sub__(self, other) -> Series:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Series:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, k) -> Series:
        k = as_rational(k)
        return Series((k * c for c in self.coeffs), self.order)

    def __mul__(self, other) -> Series:
        if not isinstance(other, Series):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for j in range(n + 1):
            s = Fraction(0)
            for i in range(j + 1):
                if a[i] and b[j - i]:
                    s += a[i] * b[j - i]
            out.append(s)
        return Series(out, n)

    __rmul__ = __mul__

    def reciprocal(self) -> Series:
        """Multiplicative inverse; needs a nonzero constant term."""
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no reciprocal")
        inv0 = 1 / a[0]
        out = [inv0]
        for j in range(1, self.order + 1):
            s = sum((a[i] * out[j - i] for i in range(1, j + 1)), Fraction(0))
            out.append(-s * inv0)
        return Series(out, self.order)

    def __truediv__(self, other) -> Series:
        if isinstance(other, Series):
            return self * other.reciprocal()
        try:
            k = as_rational(other)
        except TypeError:
            return NotImplemented
        return self.scale(1 / k)

    def __rtruediv__(self, other) -> Series:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.reciprocal()

    def __pow__(self, k: int) -> Series:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.reciprocal() ** (-k)
        result = Series.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def pow(self, c) -> Series:
        """``self**c`` for rational ``c`` via the binomial series; constant term must be 1.

        Uses the recurrence obtained from ``g' h = c h' g`` for ``g = h**c``:
        ``n g_n = sum_{k=1}^n ((c + 1) k - n) h_k g_{n-k}``.
        """
        c = as_rational(c)
        h = self.coeffs
        if h[0] != 1:
            raise ValueError("rational powers need a series with constant term 1")
        g = [Fraction(1)]
        for n in range(1, self.order + 1):
            s = Fraction(0)
            for k in range(1, n + 1):
                if h[k]:
                    s += ((c + 1) * k - n) * h[k] * g[n - k]
            g.append(s / n)
        return Series(g, self.order)

    # calculus

    def derivative(self, j: int = 1) -> Series:
        if j < 0:
            raise ValueError("derivative order must be nonnegative")
        if j == 0:
            return self
        if j > self.order:
            raise ValueError(f"cannot take derivative {j} of a series known to order {self.order}")
        out = []
        for i in range(j, self.order + 1):
            fall = 1
            for r in range(j):
                fall *= i - r
            out.append(fall * self.coeffs[i])
        return Series(out, self.order - j)

    def compose(self, inner: Series) -> Series:
        """``self(inner(t))``; ``inner`` must have zero constant term."""
        if inner.coeffs[0] != 0:
            raise ValueError("inner series of a composition must have zero constant term")
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        result = Series.zero(n)
        # Horner: a_0 + inner*(a_1 + inner*(a_2 + ...))
        for c in reversed(self.coeffs[: n + 1]):
            result = result * inner + c
        return result

    __call__ = compose

    def inverse(self) -> Series:
        """Compositional inverse by Lagrange inversion.

        ``[t^n] g = (1/n) [t^(n-1)] (t / f(t))^n``.
        """
        f = self.coeffs
        if f[0] != 0:
            raise ValueError("compositional inverse needs f(0) = 0")
        if self.order < 1 or f[1] == 0:
            raise ValueError("compositional inverse needs f'(0) != 0")
        n_max = self.order
        # f(t)/t is known through t^(N-1)
        ratio = Series(f[1:], n_max - 1).reciprocal()
        out = [Fraction(0)]
        power = Series.one(n_max - 1)
        for n in range(1, n_max + 1):
            power = power * ratio
            out.append(power[n - 1] / n)
        return Series(out, n_max)


# elementary series


def exp_series(order: int, scale=1) -> Series:
    """``exp(scale * t)``."""
    a = as_rational(scale)
    return Series((a**j / factorial(j) for j in range(order + 1)), order)


def log1p_series(order: int, scale=1) -> Series:
    """``log(1 + scale * t)``."""
    a = as_rational(scale)
    return Series([0] + [(-1) ** (j + 1) * a**j / j for j in range(1, order + 1)], order)


def binomial_series(c, order: int, scale=1) -> Series:
    """``(1 + scale * t)**c`` with generalized binomial coefficients."""
    c, a = as_rational(c), as_rational(scale)
    out = []
    coeff = Fraction(1)
    for j in range(order + 1):
        out.append(coeff * a**j)
        coeff = coeff * (c - j) / (j + 1)
    return Series(out, order)


def exp(s: Series) -> Series:
    """``exp`` of a series with zero constant term."""
    return exp_series(s.order).compose(s)


def log(s: Series) -> Series:
    """``log`` of a series with constant term 1."""
    if s[0] != 1:
        raise ValueError("log needs a series with constant term 1")
    return log1p_series(s.order).compose(s - 1)


def taylor_values(f: Series) -> list[Fraction]:
    """Derivatives at zero, ``f^(j)(0) = j! f_j``, for ``j = 0 .. order``."""
    return [factorial(j) * c for j, c in enumerate(f.coeffs)]


# partial Bell polynomials


def bell_partial(n: int, k: int, args: Sequence[T], one: T = 1, zero: T = 0) -> T:
    """Partial Bell polynomial ``B_{n,k}(x_1, ..., x_{n-k+1})``.

    ``args[0]`` is ``x_1``.  Works over any commutative ring whose elements
    support ``+``, ``*`` and multiplication by Python ints, so the arguments
    may be Fractions, :class:`Series` or sympy expressions.  Uses

        B_{n,k} = sum_{i=1}^{n-k+1} C(n-1, i-1) x_i B_{n-i,k-1}.
    """
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if k > n:
        return zero
    if n == 0:
        return one
    if k == 0:
        return zero
    if len(args) < n - k + 1:
        raise ValueError(f"B_{{{n},{k}}} needs {n - k + 1} arguments, got {len(args)}")

    @lru_cache(maxsize=None)
    def b(m: int, j: int):
        if j == 0:
            return one if m == 0 else zero
        if j > m:
            return zero
        acc = zero
        for i in range(1, m - j + 2):
            acc = acc + comb(m - 1, i - 1) * (args[i - 1] * b(m - i, j - 1))
        return acc

    return b(n, k)


def bell_triangle(n_max: int, args: Sequence[T], one: T = 1, zero: T = 0) -> list[list[T]]:
    """Rows ``[B_{n,0}, ..., B_{n,n}]`` for ``n = 0 .. n_max``."""
    if len(args) < n_max:
        raise ValueError(f"rows up to {n_max} need {n_max} arguments, got {len(args)}")
    rows: list[list[T]] = [[one]]
    for n in range(1, n_max + 1):
        row = [zero]
        for k in range(1, n + 1):
            acc = zero
            for i in range(1, n - k + 2):
                acc = acc + comb(n - 1, i - 1) * (args[i - 1] * rows[n - i][k - 1])
            row.append(acc)
        rows.append(row)
    return rows


def set_partitions(n: int, k: int | None = None) -> Iterator[list[list[int]]]:
    """All set partitions of ``{1..n}``, optionally only those with ``k`` blocks."""

    def grow(i: int, blocks: list[list[int]]):
        if i > n:
            if k is None or len(blocks) == k:
                yield [list(b) for b in blocks]
            return
        if k is not None and len(blocks) + (n - i + 1) < k:
            return
        for b in blocks:
            b.append(i)
            yield from grow(i + 1, blocks)
            b.pop()
        if k is None or len(blocks) < k:
            blocks.append([i])
            yield from grow(i + 1, blocks)
            blocks.pop()

    yield from grow(1, [])


PARTITION_ORACLE_LIMIT = 10


def bell_partial_by_partitions(n: int, k: int, args: Sequence[T], one: T = 1, zero: T = 0) -> T:
    """``B_{n,k}`` by brute-force enumeration of set partitions (``n <= 10``)."""
    if n > PARTITION_ORACLE_LIMIT:
        raise ValueError(f"partition enumeration is limited to n <= {PARTITION_ORACLE_LIMIT}")
    if k > n:
        return zero
    if k == 0:
        return one if n == 0 else zero
    if len(args) < n - k + 1:
        raise ValueError(f"B_{{{n},{k}}} needs {n - k + 1} arguments, got {len(args)}")
    total = zero
    for blocks in set_partitions(n, k):
        term = one
        for block in blocks:
            term = term * args[len(block) - 1]
        total = total + term
    return total
