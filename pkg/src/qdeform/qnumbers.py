"""Deformed numbers ``x_q`` over the naturals, integers, rationals and reals.

The closed form ``([1 + (1-q) g]^x - 1) / (1 - q)`` is the n-fold q-sum of
the generator ``g``; with ``g = 1`` it is ``((2-q)^x - 1) / (1 - q)``, which
is also the Heine number ``[x]_H`` under ``H = 2 - q``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .core_ops import DeformParam, QLike, as_param, q_sum
from .errors import DomainError
from .numerics import Scalar, exact_div, int_pow, is_exact, normalize, real_pow


def _is_integral(x: Scalar) -> bool:
    if isinstance(x, float):
        return x.is_integer()
    return Fraction(x).denominator == 1


def generator_base(q: QLike, g: Scalar = 1) -> Scalar:
    """``1 + (1 - q) g``, the ratio of the geometric progression behind ``x_q``."""
    p = as_param(q)
    return normalize(1 + p.one_minus_q * g)


def to_qnumber(x: Scalar, q: QLike, g: Scalar = 1) -> Scalar:
    """Value of the deformed number ``x_q`` with generator ``g``.

    Raises :class:`DomainError` when the real branch does not exist: a
    non-integral ``x`` over a non-positive base, or ``x < 0`` when the
    base is zero (``q = 2`` for ``g = 1``).
    """
    p = as_param(q)
    if g == 0:
        raise DomainError("generator g = 0 yields the trivial structure {0}")
    if p.classical:
        return normalize(x * g)
    d = p.one_minus_q
    base = generator_base(p, g)
    integral = _is_integral(x)
    if base <= 0 and not integral:
        raise DomainError(f"x_q for non-integral x = {x} needs 1 + (1-q)g > 0 (got {base})")
    if base == 0:
        if x < 0:
            raise DomainError(f"x_q with zero base is undefined for x = {x} < 0")
        return exact_div(-1, d) if x > 0 else (0 if is_exact(x) else 0.0)
    if p.reduces_to_classical:
        return float(x) * float(g)
    if _all_exact(x, base, d):
        power = real_pow(base, x)
        if is_exact(power):
            return exact_div(power - 1, d)
    if integral:
        return (float(base) ** float(x) - 1.0) / float(d)
    return math.expm1(float(x) * math.log(base)) / float(d)


def _all_exact(*values: Scalar) -> bool:
    return all(is_exact(v) for v in values)


@dataclass(frozen=True)
class QNumber:
    """A deformed number together with its pre-image and generator."""

    pre_image: Scalar
    q: DeformParam
    generator: Scalar = 1
    value: Scalar = 0

    @classmethod
    def of(cls, x: Scalar, q: QLike, g: Scalar = 1) -> "QNumber":
        p = as_param(q)
        return cls(x, p, g, to_qnumber(x, p, g))


def _exact_log(arg: Scalar, base: Scalar) -> Scalar | None:
    """Integer ``k`` with ``base**k == arg`` for exact operands, if one exists."""
    if not _all_exact(arg, base) or arg <= 0 or base <= 0 or base == 1:
        return None
    guess = math.log(arg) / math.log(base)
    k = round(guess)
    if abs(guess - k) > 1e-6:
        return None
    power = int_pow(base, k) if k >= 0 else exact_div(1, int_pow(base, -k))
    return k if power == arg else None


def from_qnumber(v: Scalar, q: QLike, g: Scalar = 1) -> Scalar:
    """Pre-image of ``v`` under ``x -> x_q``: ``log(1 + (1-q) v) / log(1 + (1-q) g)``."""
    p = as_param(q)
    if p.classical:
        return exact_div(v, g)
    d = p.one_minus_q
    base = generator_base(p, g)
    if base <= 0:
        raise DomainError(f"no real inverse for base 1 + (1-q)g = {base} <= 0")
    arg = normalize(1 + d * v)
    if arg <= 0:
        raise DomainError(f"{v} is not above the lower bound -1/(1-q)")
    exact = _exact_log(arg, base)
    if exact is not None:
        return exact
    if p.reduces_to_classical:
        return float(v) / float(g)
    return math.log1p(float(d) * float(v)) / math.log1p(float(d) * float(g))


def nat_sequence(count: int, q: QLike, g: Scalar = 1) -> list[Scalar]:
    """``[0_q, 1_q, ..., (count-1)_q]`` by iterated q-sum with the generator."""
    if count < 0:
        raise ValueError("count must be non-negative")
    p = as_param(q)
    out: list[Scalar] = []
    value: Scalar = 0
    for _ in range(count):
        out.append(value)
        value = q_sum(value, g, p)
    return out


def int_sequence(lo: int, hi: int, q: QLike, g: Scalar = 1) -> list[Scalar]:
    if lo > hi:
        raise ValueError("lo must not exceed hi")
    p = as_param(q)
    return [to_qnumber(n, p, g) for n in range(lo, hi + 1)]


def nat_binomial_sum(n: int, q: QLike) -> Scalar:
    """``sum_{k=1..n} C(n, k) (1-q)^(k-1)``, the binomial form of ``n_q``."""
    d = as_param(q).one_minus_q
    total: Scalar = 0
    for k in range(1, n + 1):
        total += math.comb(n, k) * real_pow(d, k - 1)
    return normalize(total)


def heine(n: Scalar, H: Scalar) -> Scalar:
    """Heine's q-analogue ``[n]_H = (H^n - 1) / (H - 1)``."""
    if H == 1:
        return n
    integral = _is_integral(n)
    if H <= 0 and not integral:
        raise DomainError(f"[n]_H for non-integral n needs H > 0, got H = {H}")
    if H == 0 and n < 0:
        raise DomainError("[n]_0 is undefined for n < 0")
    power = real_pow(H, int(n) if integral and is_exact(n) else n)
    return exact_div(power - 1, normalize(H - 1))


def successor(v: Scalar, q: QLike) -> Scalar:
    """Peano successor on the deformed naturals: ``v (+)_q 1``."""
    return q_sum(v, 1, q)


class LimitKind(str, enum.Enum):
    DIVERGENT = "divergent"
    IDENTITY = "identity"
    FINITE = "finite"
    UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class LimitResult:
    kind: LimitKind
    value: Scalar | None = None


def limit_of(q: QLike, integer_arguments: bool = False) -> LimitResult:
    """Behaviour of ``x_q`` as ``x -> infinity``.

    The finite limit ``1/(q-1)`` covers ``1 < q <= 2`` for real arguments
    and extends to ``2 < q < 3`` when only integer arguments are taken
    (the base ``2 - q`` is then negative but of modulus below one).
    """
    p = as_param(q)
    qv = p.q
    if qv < 1:
        return LimitResult(LimitKind.DIVERGENT)
    if qv == 1:
        return LimitResult(LimitKind.IDENTITY)
    if qv <= 2 or (integer_arguments and qv < 3):
        return LimitResult(LimitKind.FINITE, exact_div(1, normalize(qv - 1)))
    return LimitResult(LimitKind.UNSUPPORTED)
