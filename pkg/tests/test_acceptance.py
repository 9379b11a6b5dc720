"""Acceptance criteria, one test each, all at zero tolerance.

Every test prints a ``PASS``/``FAIL`` line naming its criterion; run with
``pytest tests/test_acceptance.py -s`` to see them.
"""
import json
import random
import time
from fractions import Fraction as F

import sympy

from umbral.classification import (
    Family,
    FamilySpec,
    NotInClass,
    classify_generator,
    exact_polynomial,
    family_generator,
    random_spec,
    special_uv_pair,
    verify_functional_equation,
    verify_special,
    verify_uv_unitality,
)
from umbral.cli import main
from umbral.core import (
    UmbralOperator,
    random_generator,
    verify_exponential_form,
    verify_staircase,
    verify_staircase_at_d,
)
from umbral.sequences import (
    BUCCHIANICO_SPEC,
    PRESETS,
    verify_bell_numbers,
    verify_bucchianico,
    verify_falling_factorial_identity,
    verify_laguerre_identity,
    verify_preset_triangle,
    verify_spivey,
    verify_stirling1_products,
    verify_stirling2_partitions,
)
from umbral.series import Series, bell_partial, bell_partial_by_partitions

SEED = 20240613
PRESET_NAMES = ("falling", "touchard", "laguerre", "bucchianico")


def criterion(name, reports, detail=""):
    failed = [r for r in reports if not r]
    line = f"{'PASS' if not failed else 'FAIL'} {name}"
    if detail:
        line += f" ({detail})"
    print(line)
    for r in failed:
        print("    " + r.summary())
    assert not failed, failed[0].summary()


class Check:
    """Minimal truthy report for criteria assembled from plain comparisons."""

    def __init__(self, name, ok, info=""):
        self.name, self.ok, self.info = name, ok, info

    def __bool__(self):
        return self.ok

    def summary(self):
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.name}: {self.info}"


def generators(order, randoms=3):
    out = [(name, PRESETS[name].generator(order)) for name in PRESET_NAMES]
    rng = random.Random(SEED)
    out += [(f"random[{i}]", random_generator(rng, order)) for i in range(randoms)]
    return out


def test_staircase_identity():
    n_max, m_max = 8, 6
    start = time.perf_counter()
    reports = [verify_staircase(UmbralOperator(f, n_max + m_max), n_max, m_max) for _, f in generators(n_max + m_max)]
    elapsed = time.perf_counter() - start
    reports.append(Check("runtime", elapsed < 10, f"{elapsed:.2f}s"))
    criterion("staircase identity, n<=8 m<=6, 4 presets + 3 random", reports, f"{elapsed:.2f}s")


def test_staircase_alternative_form():
    n_max, m_max = 8, 6
    reports = [verify_staircase_at_d(UmbralOperator(f, n_max + m_max), n_max, m_max) for _, f in generators(n_max + m_max)]
    criterion("alternative staircase form agrees, n<=8 m<=6", reports)


def test_exponential_generating_form():
    n_max, m_max = 6, 4
    reports = [verify_exponential_form(UmbralOperator(f, n_max + m_max), n_max, m_max) for _, f in generators(n_max + m_max)]
    criterion("exponential generating form order by order, n<=6 m<=4", reports)


def test_translation_equation_table():
    rng = random.Random(SEED)
    specs = [random_spec(rng, fam) for fam in Family for _ in range(2)]
    specs += [
        FamilySpec(Family.POWER, rng.choice([1, 2, F(-1, 3)]), rng.choice([1, -2, F(3, 2)]), F(1, 2)),
        FamilySpec(Family.POWER, rng.choice([1, 2, F(-1, 3)]), rng.choice([1, -2, F(3, 2)]), F(-3, 2)),
    ]
    assert {s.family for s in specs} == set(Family)
    reports = [verify_functional_equation(s, 10) for s in specs]
    criterion("translation equation, total degree 10, all four families", reports, f"{len(specs)} specs")


def test_special_commutation_table():
    n_max, m_max = 8, 6
    rng = random.Random(SEED)
    specs = [random_spec(rng, fam) for fam in (Family.EXPONENTIAL, Family.LOGARITHMIC, Family.POWER)]
    specs += [
        FamilySpec(Family.LINEAR, 2),  # A = exp
        FamilySpec(Family.LINEAR, F(1, 3), A=exact_polynomial([1, 1])),
        BUCCHIANICO_SPEC,
    ]
    reports = [verify_special(s, n_max, m_max) for s in specs]
    reports += [verify_uv_unitality(special_uv_pair(s, n_max + m_max)) for s in specs]
    criterion("special commutation with (U, V), n<=8 m<=6, unitality", reports, f"{len(specs)} specs")


def brute_force_match(g):
    """Fit each family's parameters from g1..g3, accept if the closed form equals g."""
    order = g.order
    g1, g2, g3 = g[1], g[2], g[3]
    candidates = [FamilySpec(Family.LINEAR, g1)]
    if g2 != 0:
        b = 2 * g2 / g1
        candidates.append(FamilySpec(Family.EXPONENTIAL, g1 / b, b))
        candidates.append(FamilySpec(Family.LOGARITHMIC, -g1 / b, -b))
        r, s = 2 * g2 / g1, 6 * g3 / g1
        b = r - s / r
        if b != 0:
            c = r / b + 1
            if c not in (0, 1):
                candidates.append(FamilySpec(Family.POWER, g1 / (b * c), b, c))
    return [spec for spec in candidates if family_generator(spec, order) == g]


def test_classifier_round_trip():
    order = 12
    t = Series.t(order)
    rng = random.Random(SEED)
    reports = []
    for i in range(24):
        spec = random_spec(rng, list(Family)[i % 4])
        g = family_generator(spec, order)
        verdict = classify_generator(g)
        ok = not isinstance(verdict, NotInClass) and family_generator(verdict, order) == g
        ok = ok and bool(brute_force_match(g))
        reports.append(Check(f"round trip {spec}", ok, str(verdict)))
    for g in (t + t**3, t + t**2 + t**4):
        verdict = classify_generator(g)
        agree = isinstance(verdict, NotInClass) == (not brute_force_match(g))
        reports.append(Check(f"rejection {g.format(big_o=False)}", agree and isinstance(verdict, NotInClass), str(verdict)))
    criterion("classifier round trip on 24 specs, rejections agree with brute force", reports)


def test_sequence_numbers():
    reports = [
        verify_stirling1_products(10),
        verify_stirling2_partitions(8),
        verify_bell_numbers(10, 10),
        verify_preset_triangle("laguerre", 10),
        verify_preset_triangle("bucchianico", 8),
        verify_preset_triangle("falling", 10),
        verify_preset_triangle("touchard", 10),
    ]
    criterion("Stirling, Bell, Lah and Bucchianico numbers", reports)


def test_sequence_identities():
    reports = [
        verify_falling_factorial_identity(6, 6),
        verify_spivey(6, 4),
        verify_laguerre_identity(6, 4),
        verify_bucchianico(6, 4),
    ]
    criterion("falling-factorial, Spivey, Laguerre and Bucchianico identities", reports)


def test_bell_polynomials_against_partitions():
    xs = sympy.symbols("x1:9")
    rng = random.Random(SEED)
    rational_args = [F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(8)]
    reports = []
    for n in range(9):
        for k in range(n + 1):
            symbolic = sympy.expand(bell_partial(n, k, xs) - bell_partial_by_partitions(n, k, xs)) == 0
            exact = bell_partial(n, k, rational_args) == bell_partial_by_partitions(n, k, rational_args)
            reports.append(Check(f"B({n},{k})", symbolic and exact))
    criterion("partial Bell recurrence equals set-partition enumeration, n<=8", reports)


def test_cli_contract(tmp_path, capsys):
    reports = []

    def code_of(*argv):
        code = main(list(argv))
        capsys.readouterr()
        return code

    for argv in [
        ("verify", "thm1", "--f", "exp(t)-1", "--nmax", "6", "--deg", "4"),
        ("verify", "special", "--family", "power", "--a", "-1/4", "--b", "-2", "--c", "2"),
        ("verify", "funceq", "--family", "exponential", "--a", "1", "--b", "1", "--order", "10"),
    ]:
        reports.append(Check(" ".join(argv), code_of(*argv) == 0))

    path = tmp_path / "triangle.json"
    code_of("coeffs", "--preset", "falling", "--rows", "6", "--format", "json", "--out", str(path))
    payload = json.loads(path.read_text())
    payload["triangle"][5][3] = "36"
    path.write_text(json.dumps(payload))
    reports.append(Check("corrupted triangle exits 1", code_of("verify", "triangle", "--triangle", str(path)) == 1))
    reports.append(Check("malformed --f exits 2", code_of("verify", "thm1", "--f", "exp(t") == 2))
    criterion("command-line exit codes", reports)
