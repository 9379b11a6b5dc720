import random
from fractions import Fraction as F
from math import comb, factorial

import pytest

from umbral.core import (
    UmbralOperator,
    inverse_derivative_of_delta,
    random_generator,
    staircase_rhs,
    umbral_from_generator,
    verify_exponential_form,
    verify_qphi,
    verify_recurrence,
    verify_staircase,
    verify_staircase_at_d,
)
from umbral.operators import Polynomial, forward_difference
from umbral.series import Series, exp_series, log1p_series

N = 12
t = Series.t(N)
x = Polynomial.x()

GENERATORS = {
    "identity": t,
    "falling": log1p_series(N),
    "touchard": exp_series(N) - 1,
    "laguerre": t / (1 + t),
    "sample": Series([0, 1, F(1, 2), F(1, 5)], N),
}


def falling(n):
    p = Polynomial([1])
    for i in range(n):
        p = p * Polynomial([-i, 1])
    return p


@pytest.fixture(params=sorted(GENERATORS))
def phi(request):
    return UmbralOperator(GENERATORS[request.param], N)


def test_identity_triangle():
    phi = UmbralOperator(t, N)
    assert all(phi.coeff(n, k) == (n == k) for n in range(N + 1) for k in range(n + 1))


def test_laguerre_entry():
    # B_{3,2}(1, -2) = 3 * 1 * (-2), and the signed Lah closed form
    phi = UmbralOperator(t / (1 + t), N)
    assert phi.coeff(3, 2) == -6 == (-1) ** 1 * comb(2, 1) * factorial(3) // factorial(2)


def test_falling_entry():
    phi = UmbralOperator(log1p_series(N), N)
    assert phi.coeff(4, 2) == 11 == falling(4)[2]


def test_rejects_bad_generators():
    with pytest.raises(ValueError):
        UmbralOperator(1 + t, N)
    with pytest.raises(ValueError):
        UmbralOperator(t * t, N)
    with pytest.raises(ValueError):
        UmbralOperator(Series.t(3), N)


def test_apply_constant():
    assert UmbralOperator(exp_series(N) - 1, N)(Polynomial([1])) == Polynomial([1])


def test_apply_falling_cube():
    phi = UmbralOperator(log1p_series(N), N)
    assert phi(x**3) == Polynomial([0, 2, -3, 1]) == falling(3)


def test_apply_identity_generator():
    p = Polynomial([F(1, 3), 0, -2, 5])
    assert UmbralOperator(t, N)(p) == p


def test_apply_rejects_high_degree():
    with pytest.raises(ValueError):
        UmbralOperator(t, 4)(x**5)


def test_inverse_of_identity():
    assert UmbralOperator(t, N).inverse().triangle == UmbralOperator(t, N).triangle


def test_inverse_of_falling_is_stirling2():
    inv = UmbralOperator(log1p_series(N), N).inverse()
    # S(n+1,k) = k S(n,k) + S(n,k-1)
    s2 = {(0, 0): 1}
    for n in range(N):
        for k in range(n + 2):
            s2[(n + 1, k)] = k * s2.get((n, k), 0) + s2.get((n, k - 1), 0)
    assert all(inv.coeff(n, k) == s2.get((n, k), 0) for n in range(N + 1) for k in range(n + 1))


def test_triangles_are_mutually_inverse(phi):
    inv = phi.inverse()
    for n in range(11):
        for k in range(n + 1):
            total = sum(phi.coeff(n, j) * inv.coeff(j, k) for j in range(k, n + 1))
            assert total == (n == k)


def test_inverse_coherence(phi):
    rng = random.Random(3)
    inv = phi.inverse()
    for _ in range(3):
        p = Polynomial(F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(9))
        assert inv(phi(p)) == p


def test_triangle_matches_images(phi):
    for n in range(11):
        image = phi(x**n)
        assert all(image[k] == phi.coeff(n, k) for k in range(n + 1))


def test_delta_symbols():
    assert UmbralOperator(t, N).delta().symbol == t
    assert UmbralOperator(exp_series(N) - 1, N).delta().symbol == log1p_series(N)
    assert UmbralOperator(log1p_series(N), N).delta().symbol == exp_series(N) - 1


def test_delta_coherence(phi):
    q = phi.delta().symbol
    assert q.compose(phi.generator) == t
    assert phi.generator.compose(q) == t


def test_qphi_first_step(phi):
    assert phi.delta()(phi.polynomial(1)) == Polynomial([1])


def test_qphi_all(phi):
    assert verify_qphi(phi, 10)


def test_forward_difference_lowers_falling_factorials():
    delta = forward_difference(N)
    for n in range(1, 9):
        assert delta(falling(n)) == falling(n - 1) * n


def test_qphi_bucchianico():
    f = (1 - (1 - 4 * t).pow(F(1, 2))) / 2
    phi = UmbralOperator(f, N)
    assert phi.delta().symbol == Series([0, 1, -1], N)
    assert verify_qphi(phi, 6)


def test_recurrence(phi):
    assert verify_recurrence(phi, 10)


def test_recurrence_falling_uses_backward_shift():
    phi = UmbralOperator(log1p_series(N), N)
    w = inverse_derivative_of_delta(phi)
    assert w.symbol == exp_series(N - 1, -1)
    for n in range(6):
        assert falling(n + 1) == (falling(n).shifted(-1)).times_x()


def test_recurrence_touchard_step():
    phi = UmbralOperator(exp_series(N) - 1, N)
    t2 = phi.polynomial(2)
    assert t2 == Polynomial([0, 1, 1])
    assert phi.polynomial(3) == Polynomial([0, 1, 3, 1])
    assert inverse_derivative_of_delta(phi)(t2).times_x() == phi.polynomial(3)


def test_staircase_rhs_n0(phi):
    stair = staircase_rhs(phi, 0)
    assert [k for k, _ in stair.terms] == [0]
    assert stair.terms[0][1].symbol[0] == 1


def test_staircase_rhs_n1_is_recurrence(phi):
    # f'(q(D)) = 1 / q'(D)
    stair = staircase_rhs(phi, 1)
    first = dict(stair.terms)[1].symbol
    assert first == inverse_derivative_of_delta(phi).symbol


@pytest.mark.parametrize("n", range(7))
def test_staircase_rhs_on_one(phi, n):
    assert staircase_rhs(phi, n)(phi(Polynomial([1]))) == phi.polynomial(n)


def test_staircase(phi):
    assert verify_staircase(phi, 6, 6)


def test_staircase_random_generators():
    rng = random.Random(11)
    for _ in range(3):
        f = random_generator(rng, 12)
        assert verify_staircase(UmbralOperator(f, 12), 6, 6)


def test_staircase_at_d(phi):
    assert verify_staircase_at_d(phi, 5, 4)


def test_exponential_form(phi):
    assert verify_exponential_form(phi, 6, 4)


def test_engine_reports_counterexample():
    # corrupt one triangle entry; the engine must pinpoint a failing (n, m)
    phi = UmbralOperator(exp_series(N) - 1, N)
    rows = [list(r) for r in phi.triangle]
    rows[5][2] += 1
    phi.triangle = tuple(tuple(r) for r in rows)
    report = verify_staircase(phi, 6, 6)
    assert not report
    assert report.failure["n"] + report.failure["m"] == 5


def test_umbral_from_generator_alias():
    assert umbral_from_generator(t, 5).triangle == UmbralOperator(t, 5).triangle


def test_insufficient_order_rejected():
    with pytest.raises(ValueError):
        verify_staircase(UmbralOperator(exp_series(8) - 1, 8), 6, 6)
