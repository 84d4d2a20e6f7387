"""Acceptance suite: one test per criterion, each at its stated tolerance."""

import io
import math
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from exprgen import corpus, fuzz_inputs
from qdeform.cli import run
from qdeform.core_ops import q_product
from qdeform.diamond import diamond, phi_inverse
from qdeform.expr import ParseError, parse, unparse
from qdeform.laws import SampleSpec, check_distributivity
from qdeform.numerics import scaled_residual
from qdeform.pascal import Pattern, build_triangle, classify, entry_closed, truncate
from qdeform.qnumbers import heine, int_sequence, nat_binomial_sum, nat_sequence, to_qnumber

criterion = pytest.mark.criterion


def best_time(fn, repeat=20):
    best = math.inf
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


@criterion(1, "natural numbers at q = 0")
def test_natural_numbers():
    expected = [0, 1, 3, 7, 15, 31, 63, 127, 255, 511, 1023]
    values = nat_sequence(11, 0)
    assert values == expected and all(type(v) is int for v in values)
    assert best_time(lambda: nat_sequence(11, 0)) < 1e-3


@criterion(2, "negative integers at q = 0")
def test_negative_integers():
    expected = [Fraction(-127, 128), Fraction(-63, 64), Fraction(-31, 32), Fraction(-15, 16),
                Fraction(-7, 8), Fraction(-3, 4), Fraction(-1, 2), 0]
    values = int_sequence(-7, 0, 0)
    assert values == expected
    assert all(isinstance(v, (int, Fraction)) for v in values)


PRINTED_Q0 = [
    [1],
    [1, 1],
    [1, 3, 1],
    [1, 7, 7, 1],
    [1, 15, 63, 15, 1],
    [1, 31, 1023, 1023, 31, 1],
    [1, 63, 32767, 1048575, 32767, 63, 1],
]


@criterion(3, "q = 0 triangle")
def test_q0_triangle():
    t = build_triangle(7, 0)
    assert t.mode == "exact"
    assert [list(row) for row in t.rows] == PRINTED_Q0
    assert all(type(v) is int for row in t.rows for v in row)


PRINTED_Q15 = [
    ["1"],
    ["1", "1"],
    ["1", "1.5", "1"],
    ["1", "1.75", "1.75", "1"],
    ["1", "1.875", "1.968", "1.875", "1"],
    ["1", "1.937", "1.998", "1.998", "1.937", "1"],
    ["1", "1.968", "1.999", "1.999", "1.999", "1.968", "1"],
    ["1", "1.984", "1.999", "2", "2", "1.999", "1.984", "1"],
    ["1", "1.992", "2", "2", "2", "2", "2", "1.992", "1"],
]


@criterion(4, "q = 1.5 triangle within 1e-3 after truncation")
def test_q15_triangle():
    t = build_triangle(9, 1.5)
    for row, printed in zip(t.rows, PRINTED_Q15):
        assert len(row) == len(printed)
        for value, text in zip(row, printed):
            assert abs(float(truncate(value, 3)) - float(text)) <= 1e-3 + 1e-12


@criterion(5, "q = 2 all ones, q = 3 Pascal mod 2")
def test_q2_q3_triangles():
    assert all(v == 1 for row in build_triangle(7, 2).rows for v in row)
    for rows in (15, 64):
        # independent oracle: additive Pascal rule over GF(2)
        oracle = [[1]]
        for _ in range(rows - 1):
            prev = oracle[-1]
            oracle.append([1] + [(a + b) % 2 for a, b in zip(prev, prev[1:])] + [1])
        assert [list(r) for r in build_triangle(rows, 3).rows] == oracle
    assert [list(r) for r in build_triangle(15, 3).rows] == [[math.comb(n, k) % 2 for k in range(n + 1)] for n in range(15)]


@criterion(6, "recurrence equals closed form for n <= 16")
def test_oracle_equivalence():
    start = time.perf_counter()
    for q in (-1, 0, 1, 1.5, 2, 3):
        t = build_triangle(17, q)
        for n, row in enumerate(t.rows):
            for k, value in enumerate(row):
                expected = entry_closed(n, k, q)
                if t.mode == "exact":
                    assert value == expected
                else:
                    assert abs(value - expected) <= 1e-9 * abs(expected)
    assert time.perf_counter() - start < 5


GRID = (-1, 0, 0.5, 1.5)


@criterion(7, "diamond distributes over the q-sum, q-product does not")
def test_distributivity_suite():
    spec = SampleSpec(count=1000, seed=0, tolerance=1e-12)
    for q in GRID:
        good = check_distributivity("diamond", "q_sum", q, spec)
        assert good.holds is True and good.max_residual <= 1e-12
        assert good.samples >= 1000
        bad = check_distributivity("q_product", "q_sum", q, spec)
        assert bad.holds is False
        cex = bad.counterexample
        # the counterexample reproduces independently of the checker
        lhs = q_product(cex.z, cex.x + cex.y + (1 - q) * cex.x * cex.y, q)
        zx, zy = q_product(cex.z, cex.x, q), q_product(cex.z, cex.y, q)
        rhs = zx + zy + (1 - q) * zx * zy
        assert scaled_residual(lhs, rhs) > 1e-10


def test_diamond_random_triples_direct():
    # literal formula, independent of the checker's sampling
    import random

    rng = random.Random(11)
    for q in GRID:
        worst = 0.0
        for _ in range(1000):
            z, x, y = (phi_inverse(rng.uniform(-2, 2), q) for _ in range(3))
            s = x + y + (1 - q) * x * y
            lhs = diamond(z, s, q)
            a, b = diamond(z, x, q), diamond(z, y, q)
            worst = max(worst, scaled_residual(lhs, a + b + (1 - q) * a * b))
        assert worst <= 1e-12


@criterion(8, "alternative-algebra law matrix")
def test_law_matrix():
    spec = SampleSpec(count=1000, seed=0, tolerance=1e-10)
    for a in (0.5, 1, 2):
        assert check_distributivity("a_product_low", "a_sum_high", a, spec).holds is True
        assert check_distributivity("a_product_high", "a_sum_low", a, spec).holds is True
    for k in (0.5, 1, 2):
        r = check_distributivity("k_product_low", "k_sum_high", k, spec)
        assert r.holds is True and r.max_residual <= 1e-10
        assert check_distributivity("k_product_high", "k_sum_low", k, spec).holds is True
    refuted = check_distributivity("k_product_high", "k_sum_high", 1, spec)
    cex = refuted.counterexample
    assert refuted.holds is False
    assert (cex.z, cex.x, cex.y, cex.lhs, cex.rhs) == (1, 1, 1, 1, 3)


@criterion(9, "Heine numbers through q = 2 - H")
def test_heine_bridge():
    for H in (2, 3, Fraction(1, 2)):
        for n in range(31):
            h = heine(n, H)
            assert h == to_qnumber(n, 2 - H)
            assert h == sum(Fraction(H) ** j for j in range(n))


@criterion(10, "limits and pattern taxonomy")
def test_limits():
    assert abs(to_qnumber(60, 1.5) - 2) < 1e-15
    values = [to_qnumber(n, 0) for n in range(65)]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert values[64] == 2**64 - 1
    expected = {
        -1: Pattern.INCREASING,
        0: Pattern.INCREASING,
        1: Pattern.INCREASING,
        1.5: Pattern.ASYMPTOTIC,
        2: Pattern.FIXED,
        2.5: Pattern.SUB_UNIT_BOUNDED,
        3: Pattern.SELF_SIMILAR_BINARY,
    }
    assert {q: classify(q).label for q in expected} == expected
    assert classify(1.5).limit_value == 2


@criterion(11, "binomial sum form equals closed form")
def test_binomial_identity():
    for q in (-1, 0, 3):
        for n in range(31):
            assert nat_binomial_sum(n, q) == to_qnumber(n, q)


GOLDEN = [
    ["triangle", "--q", "0", "--rows", "7", "--format", "csv"],
    ["classify", "--q", "3"],
    ["eval", "2 q* 0", "--q", "0.5"],
]


@criterion(12, "parser fuzz, round trip, golden CLI output")
def test_parser_robustness():
    for case in fuzz_inputs(10_000):
        try:
            parse(case)
        except ParseError as exc:
            size = len(case) if isinstance(case, bytes) else len(case.encode())
            assert 0 <= exc.span[0] <= exc.span[1] <= size
    sources = corpus(200)
    assert len(sources) == 200
    for source in sources:
        ast = parse(source)
        assert parse(unparse(ast)) == ast

    expected = [
        (0, "1\n1,1\n1,3,1\n1,7,7,1\n1,15,63,15,1\n1,31,1023,1023,31,1\n1,63,32767,1048575,32767,63,1\n"),
        (0, "self-similar-binary\n"),
        (3, ""),
    ]
    for argv, (code, stdout) in zip(GOLDEN, expected):
        outputs = []
        for _ in range(2):
            proc = subprocess.run([sys.executable, "-m", "qdeform.cli", *argv], capture_output=True)
            outputs.append((proc.returncode, proc.stdout, proc.stderr))
        assert outputs[0] == outputs[1]
        assert outputs[0][0] == code and outputs[0][1].decode() == stdout
        buf = io.StringIO()
        assert run(argv, buf, io.StringIO()) == code and buf.getvalue() == stdout
