"""q-sum, q-product, q-logarithm, q-exponential and their inverse elements.

Every function accepts the deformation parameter either as a plain number
or as a :class:`DeformParam`.  Exact operands with an exact parameter give
exact results wherever the result is rational; otherwise the float path
is used, written with ``expm1``/``log1p`` so the ``q -> 1`` regime keeps
its accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError
from .numerics import Scalar, exact_div, is_exact, normalize, real_pow

# |1 - q| below this is treated as the classical (undeformed) case
NEAR_CLASSICAL = 1e-12


@dataclass(frozen=True)
class DeformParam:
    """Deformation parameter ``q``.

    Integral floats are normalized to ``int`` so that ``q = 0.0`` and
    ``q = 0`` select the same exact code paths.
    """

    q: Scalar

    def __post_init__(self) -> None:
        q = self.q
        if isinstance(q, bool) or not isinstance(q, (int, float, Fraction)):
            raise TypeError(f"q must be a real number, got {q!r}")
        if isinstance(q, float):
            if not math.isfinite(q):
                raise DomainError(f"q must be finite, got {q}")
            if q.is_integer():
                object.__setattr__(self, "q", int(q))
        else:
            object.__setattr__(self, "q", normalize(q))

    @property
    def classical(self) -> bool:
        return self.q == 1

    @property
    def one_minus_q(self) -> Scalar:
        return normalize(1 - self.q)

    @property
    def reduces_to_classical(self) -> bool:
        """True for ``q = 1`` and for the removable-singularity band around it."""
        return self.classical or abs(float(self.one_minus_q)) < NEAR_CLASSICAL

    @property
    def exact(self) -> bool:
        return is_exact(self.q)

    def __float__(self) -> float:
        return float(self.q)


QLike = Union[DeformParam, int, float, Fraction]


def as_param(q: QLike) -> DeformParam:
    return q if isinstance(q, DeformParam) else DeformParam(q)


def _all_exact(*values: Scalar) -> bool:
    return all(is_exact(v) for v in values)


def q_sum(x: Scalar, y: Scalar, q: QLike) -> Scalar:
    """``x + y + (1 - q) x y``."""
    p = as_param(q)
    return normalize(x + y + p.one_minus_q * (x * y))


def q_opposite(y: Scalar, q: QLike) -> Scalar:
    """The ``y'`` with ``y (+)_q y' = 0``, namely ``-y / (1 + (1 - q) y)``."""
    p = as_param(q)
    denom = 1 + p.one_minus_q * y
    if denom == 0:
        raise DomainError(f"{y} = -1/(1-q) has no q-opposite")
    return exact_div(-y, denom)


def _power_minus_one(x: Scalar, d: Scalar) -> Scalar:
    """``x**d - 1`` for ``x > 0``; exact when possible, else via expm1."""
    if _all_exact(x, d):
        value = real_pow(x, d)
        if is_exact(value):
            return normalize(value - 1)
    return math.expm1(float(d) * math.log(x))


def _cutoff_power(bracket_minus_one: Scalar, d: Scalar, what: str) -> Scalar:
    """``[1 + b]_+ ** (1/d)`` with the cutoff split by the exponent's sign."""
    if bracket_minus_one <= -1:
        if d > 0:
            return 0 if _all_exact(bracket_minus_one, d) else 0.0
        raise DomainError(f"{what}: cutoff bracket is non-positive and 1/(1-q) < 0")
    if _all_exact(bracket_minus_one, d):
        value = real_pow(normalize(1 + bracket_minus_one), exact_div(1, d))
        if is_exact(value):
            return value
    return math.exp(math.log1p(float(bracket_minus_one)) / float(d))


def q_product(x: Scalar, y: Scalar, q: QLike) -> Scalar:
    """``[x^(1-q) + y^(1-q) - 1]_+ ^ (1/(1-q))`` for positive operands."""
    p = as_param(q)
    if x <= 0 or y <= 0:
        raise DomainError(f"q-product needs positive operands, got {x}, {y}")
    if p.reduces_to_classical:
        return normalize(x * y)
    d = p.one_minus_q
    bracket_minus_one = _power_minus_one(x, d) + _power_minus_one(y, d)
    return _cutoff_power(bracket_minus_one, d, "q-product")


def q_inverse(y: Scalar, q: QLike) -> Scalar:
    """The ``y'`` with ``y (x)_q y' = 1``, namely ``(2 - y^(1-q))^(1/(1-q))``."""
    p = as_param(q)
    if y <= 0:
        raise DomainError(f"q-inverse needs a positive operand, got {y}")
    if p.reduces_to_classical:
        return exact_div(1, y)
    d = p.one_minus_q
    # 2 - y^d = 1 - (y^d - 1)
    shifted = -_power_minus_one(y, d)
    if shifted <= -1:
        raise DomainError(f"{y} has no q-inverse: 2 - y^(1-q) <= 0")
    return _cutoff_power(shifted, d, "q-inverse")


def q_log(x: Scalar, q: QLike) -> Scalar:
    """``(x^(1-q) - 1) / (1 - q)``; the natural log at ``q = 1``."""
    p = as_param(q)
    if x <= 0:
        raise DomainError(f"q-logarithm needs x > 0, got {x}")
    if p.reduces_to_classical:
        return 0 if x == 1 and is_exact(x) else math.log(x)
    d = p.one_minus_q
    num = _power_minus_one(x, d)
    if _all_exact(num, d):
        return exact_div(num, d)
    return float(num) / float(d)


def q_exp(x: Scalar, q: QLike) -> Scalar:
    """``[1 + (1-q) x]_+ ^ (1/(1-q))``; the exponential at ``q = 1``."""
    p = as_param(q)
    if p.reduces_to_classical:
        return 1 if x == 0 and is_exact(x) else math.exp(x)
    d = p.one_minus_q
    return _cutoff_power(normalize(d * x), d, "q-exponential")
