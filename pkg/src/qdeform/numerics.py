"""Scalar value model: exact integers, exact rationals and tolerant floats.

Scalars are plain Python numbers.  ``int`` is the exact-integer tier,
``fractions.Fraction`` the exact-rational tier and ``float`` the inexact
tier; Python's own arithmetic already promotes along ``int < Fraction <
float``, so the helpers here only add the pieces the standard numeric
tower lacks: explicit mode tagging, tolerant comparison, exact powers and
roots, and decimal-string serialization.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError

Scalar = Union[int, Fraction, float]


class Mode(enum.IntEnum):
    EXACT_INT = 0
    EXACT_RAT = 1
    FLOAT = 2


def mode_of(value: Scalar) -> Mode:
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, int):
        return Mode.EXACT_INT
    if isinstance(value, Fraction):
        return Mode.EXACT_RAT
    if isinstance(value, float):
        return Mode.FLOAT
    raise TypeError(f"unsupported scalar type {type(value).__name__}")


def is_exact(value: Scalar) -> bool:
    return mode_of(value) is not Mode.FLOAT


def convert(value: Scalar, mode: Mode) -> Scalar:
    """Convert ``value`` into ``mode``; exact tiers embed losslessly."""
    current = mode_of(value)
    if mode is Mode.FLOAT:
        return float(value)
    if mode is Mode.EXACT_RAT:
        return Fraction(value)
    if current is Mode.EXACT_INT:
        return value
    if current is Mode.EXACT_RAT and value.denominator == 1:
        return value.numerator
    raise ValueError(f"{value!r} cannot be represented as an exact integer")


def promote(a: Scalar, b: Scalar) -> tuple[Scalar, Scalar]:
    """Bring ``a`` and ``b`` to their weakest common mode."""
    mode = max(mode_of(a), mode_of(b))
    return convert(a, mode), convert(b, mode)


def normalize(value: Scalar) -> Scalar:
    """Collapse integral fractions to ``int``; leave everything else alone."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def exact_div(a: Scalar, b: Scalar) -> Scalar:
    """Divide without leaving the exact tiers when both operands are exact."""
    if b == 0:
        raise DomainError("division by zero")
    if is_exact(a) and is_exact(b):
        return normalize(Fraction(a) / Fraction(b))
    return a / b


@dataclass(frozen=True)
class Tolerance:
    abs_eps: float = 1e-12
    rel_eps: float = 1e-12

    def __post_init__(self) -> None:
        if not (self.abs_eps >= 0 and self.rel_eps >= 0):
            raise ValueError("tolerances must be non-negative")

    @classmethod
    def from_env(cls, var: str = "QDEFORM_TOLERANCE") -> "Tolerance":
        """Read ``"eps"`` or ``"abs_eps,rel_eps"`` from the environment."""
        raw = os.environ.get(var)
        if not raw:
            return cls()
        parts = [float(p) for p in raw.split(",")]
        if len(parts) == 1:
            return cls(parts[0], parts[0])
        if len(parts) == 2:
            return cls(parts[0], parts[1])
        raise ValueError(f"{var} must hold one or two numbers, got {raw!r}")


def approx_equal(a: Scalar, b: Scalar, tol: Tolerance | None = None) -> bool:
    """Exact comparison for exact operands, abs-or-rel tolerance otherwise.

    Without ``tol`` the defaults apply, overridable through
    ``QDEFORM_TOLERANCE``.
    """
    if tol is None:
        tol = Tolerance.from_env()
    if is_exact(a) and is_exact(b):
        return a == b
    fa, fb = float(a), float(b)
    if fa == fb:
        return True
    if math.isnan(fa) or math.isnan(fb) or math.isinf(fa) or math.isinf(fb):
        return False
    diff = abs(fa - fb)
    return diff <= tol.abs_eps or diff <= tol.rel_eps * max(abs(fa), abs(fb))


def scaled_residual(lhs: Scalar, rhs: Scalar) -> float:
    """``|lhs - rhs| / max(1, |lhs|, |rhs|)``; zero for equal exact values."""
    if is_exact(lhs) and is_exact(rhs):
        diff = abs(Fraction(lhs) - Fraction(rhs))
        if diff == 0:
            return 0.0
        scale = max(Fraction(1), abs(Fraction(lhs)), abs(Fraction(rhs)))
        return float(diff / scale)
    fl, fr = float(lhs), float(rhs)
    return abs(fl - fr) / max(1.0, abs(fl), abs(fr))


def int_pow(base: Scalar, n: int) -> Scalar:
    """``base ** n`` for ``n >= 0`` by repeated squaring."""
    if n < 0:
        raise ValueError("int_pow requires a non-negative exponent")
    result: Scalar = 1.0 if isinstance(base, float) else 1
    square = base
    while n:
        if n & 1:
            result = result * square
        n >>= 1
        if n:
            square = square * square
    return normalize(result)


def _int_nth_root(value: int, n: int) -> int | None:
    """Exact non-negative integer ``n``-th root of ``value`` or ``None``."""
    if value < 0:
        return None
    if value in (0, 1):
        return value
    if n == 2:
        r = math.isqrt(value)
        return r if r * r == value else None
    # Newton iteration from a safe overestimate
    x = 1 << ((value.bit_length() + n - 1) // n)
    while True:
        y = ((n - 1) * x + value // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    return x if x**n == value else None


def exact_root(value: Scalar, n: int) -> Scalar | None:
    """Exact ``n``-th root of a non-negative exact value, if it is rational."""
    if n <= 0:
        raise ValueError("root index must be positive")
    frac = Fraction(value)
    if frac < 0:
        return None
    num = _int_nth_root(frac.numerator, n)
    den = _int_nth_root(frac.denominator, n)
    if num is None or den is None:
        return None
    return normalize(Fraction(num, den))


def real_pow(base: Scalar, exponent: Scalar) -> Scalar:
    """Real-valued power staying exact whenever the result is rational.

    Negative bases are only accepted with integral exponents; ``0`` raised
    to a negative power is a :class:`DomainError`.
    """
    if is_exact(exponent) and Fraction(exponent).denominator == 1:
        k = int(exponent)
        if base == 0 and k < 0:
            raise DomainError("zero raised to a negative power")
        if is_exact(base):
            if k >= 0:
                return int_pow(base, k)
            return exact_div(1, int_pow(base, -k))
        return float(base) ** k
    if isinstance(exponent, float) and exponent.is_integer():
        if base == 0 and exponent < 0:
            raise DomainError("zero raised to a negative power")
        return float(base) ** exponent
    if base < 0:
        raise DomainError(f"negative base {base} with non-integral exponent {exponent}")
    if base == 0:
        if exponent < 0:
            raise DomainError("zero raised to a negative power")
        return 0 if is_exact(base) else 0.0
    if is_exact(base) and is_exact(exponent):
        e = Fraction(exponent)
        root = exact_root(base, e.denominator)
        if root is not None:
            return real_pow(root, e.numerator)
    return math.exp(float(exponent) * math.log(base))


def to_decimal_string(value: Scalar) -> str:
    """Serialize without 53-bit loss.

    Integers and terminating rationals become plain decimal strings,
    non-terminating rationals become ``"p/q"``, floats use the shortest
    round-tripping representation.
    """
    m = mode_of(value)
    if m is Mode.EXACT_INT:
        return str(value)
    if m is Mode.FLOAT:
        return repr(value)
    frac = Fraction(value)
    if frac.denominator == 1:
        return str(frac.numerator)
    den = frac.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{frac.numerator}/{frac.denominator}"
    places = max(twos, fives)
    scaled = abs(frac.numerator) * 10**places // frac.denominator
    digits = str(scaled).rjust(places + 1, "0")
    sign = "-" if frac < 0 else ""
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def parse_scalar(text: str, exact: bool = True) -> Scalar:
    """Parse a decimal or ``p/q`` literal; integral values come back as ``int``."""
    text = text.strip()
    if exact:
        try:
            return normalize(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a number: {text!r}") from exc
    return float(Fraction(text)) if "/" in text else float(text)
