"""q-Pascal triangles built from the q-sum.

Edges hold the generator, every interior entry is the q-sum of its two
parents.  Because the q-sum adds pre-images, entry ``(n, k)`` is the
deformed number of the ordinary binomial coefficient, which gives an
independent closed-form oracle for every built triangle.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass
from decimal import ROUND_DOWN, Decimal
from fractions import Fraction

from .core_ops import DeformParam, QLike, as_param, q_sum
from .errors import ResourceError
from .numerics import Scalar, exact_div, is_exact, normalize, to_decimal_string
from .qnumbers import generator_base, to_qnumber

DEFAULT_DIGIT_CAP = 10**6


@dataclass(frozen=True)
class Triangle:
    q: DeformParam
    generator: Scalar
    rows: tuple[tuple[Scalar, ...], ...]
    mode: str  # "exact" | "float"

    def entry(self, n: int, k: int) -> Scalar:
        return self.rows[n][k]

    def __len__(self) -> int:
        return len(self.rows)


def _exact_eligible(p: DeformParam, g: Scalar) -> bool:
    return is_exact(p.q) and is_exact(g) and Fraction(p.q).denominator == 1 and Fraction(g).denominator == 1


def estimated_digits(rows: int, q: QLike, g: Scalar = 1) -> float:
    """Decimal digits of the largest entry of an exact triangle (upper estimate)."""
    if rows <= 0:
        return 0.0
    n = rows - 1
    base = abs(generator_base(q, g))
    if base <= 1:
        return 1.0 + math.log10(max(abs(float(g)), 1.0))
    return math.comb(n, n // 2) * math.log10(base) + 1.0


def build_triangle(
    rows: int,
    q: QLike,
    g: Scalar = 1,
    exact: bool | None = None,
    digit_cap: float = DEFAULT_DIGIT_CAP,
) -> Triangle:
    """Build ``rows`` rows by the q-sum recurrence.

    ``exact=None`` picks exact integer arithmetic when ``1 - q`` and ``g``
    are integers and floats otherwise.
    """
    if rows < 1:
        raise ValueError("a triangle needs at least one row")
    p = as_param(q)
    eligible = _exact_eligible(p, g)
    if exact is None:
        exact = eligible
    elif exact and not eligible:
        raise ValueError("exact mode needs an integer 1 - q and an integer generator")
    if exact:
        digits = estimated_digits(rows, p, g)
        if digits > digit_cap:
            raise ResourceError(f"largest entry has ~{digits:.0f} digits, above the cap of {digit_cap:.0f}")
        gen: Scalar = normalize(Fraction(g))
    else:
        p = DeformParam(float(p.q))
        gen = float(g)
    built: list[tuple[Scalar, ...]] = [(gen,)]
    for _ in range(1, rows):
        prev = built[-1]
        inner = tuple(q_sum(a, b, p) for a, b in zip(prev, prev[1:]))
        built.append((gen, *inner, gen))
    return Triangle(p, gen, tuple(built), "exact" if exact else "float")


def entry_closed(n: int, k: int, q: QLike, g: Scalar = 1) -> Scalar:
    """``(C(n, k))_q``, the closed form of triangle entry ``(n, k)``."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    return to_qnumber(math.comb(n, k), q, g)


class Pattern(str, enum.Enum):
    INCREASING = "increasing"
    ASYMPTOTIC = "asymptotic"
    FIXED = "fixed"
    SUB_UNIT_BOUNDED = "sub-unit-bounded"
    SELF_SIMILAR_BINARY = "self-similar-binary"
    UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class PatternClass:
    label: Pattern
    limit_value: Scalar | None = None


def classify(q: QLike) -> PatternClass:
    p = as_param(q)
    qv = p.q
    if qv <= 1:
        return PatternClass(Pattern.INCREASING)
    if qv < 2:
        return PatternClass(Pattern.ASYMPTOTIC, exact_div(1, qv - 1))
    if qv == 2:
        return PatternClass(Pattern.FIXED, 1)
    if qv < 3:
        return PatternClass(Pattern.SUB_UNIT_BOUNDED, exact_div(1, qv - 1))
    if qv == 3:
        return PatternClass(Pattern.SELF_SIMILAR_BINARY)
    return PatternClass(Pattern.UNSUPPORTED)


def truncate(value: Scalar, decimals: int) -> str:
    """Decimal text of ``value`` cut (not rounded) to ``decimals`` places."""
    if is_exact(value) and Fraction(value).denominator == 1:
        return str(int(value))
    if isinstance(value, float):
        d = Decimal(value)
    else:
        frac = Fraction(value)
        d = Decimal(frac.numerator) / Decimal(frac.denominator)
    text = format(d.quantize(Decimal(1).scaleb(-decimals), rounding=ROUND_DOWN), "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


class Format(str, enum.Enum):
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


def render(t: Triangle, fmt: Format | str = Format.TEXT, decimals: int = 3) -> str:
    fmt = Format(fmt)
    if fmt is Format.JSON:
        payload = {
            "q": to_decimal_string(t.q.q),
            "g": to_decimal_string(t.generator),
            "mode": t.mode,
            "rows": [[to_decimal_string(v) for v in row] for row in t.rows],
        }
        return json.dumps(payload)
    if fmt is Format.CSV:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in t.rows:
            writer.writerow(to_decimal_string(v) for v in row)
        return buf.getvalue().rstrip("\n")
    lines = [" ".join(truncate(v, decimals) for v in row) for row in t.rows]
    width = max(len(line) for line in lines)
    return "\n".join(line.center(width).rstrip() for line in lines)
