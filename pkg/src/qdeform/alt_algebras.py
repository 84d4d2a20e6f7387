"""Alternative deformed algebras: the a-operations and the k-operations.

Each family has a "low" and a "high" variant of both sum and product.
Three of the low variants are q-operations in disguise:

* ``+_a`` is the q-sum with ``q = 1 - a``;
* ``x_a`` is the q-product with ``q = 1 - a``;
* ``[+]_k`` is the q-product with ``q = 1 - k``.

``[x]_k`` is the q-sum with ``1 - q = k``, i.e. ``x + y + k x y``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from .core_ops import q_product, q_sum
from .errors import DomainError
from .numerics import Scalar, exact_div, normalize, real_pow


class Family(str, enum.Enum):
    A = "a"
    K = "k"


class Variant(str, enum.Enum):
    LOW = "low"
    HIGH = "high"


class Kind(str, enum.Enum):
    SUM = "sum"
    PRODUCT = "product"


@dataclass(frozen=True)
class AltOpId:
    family: Family
    variant: Variant
    kind: Kind

    @property
    def name(self) -> str:
        return f"{self.family.value}_{self.kind.value}_{self.variant.value}"

    @property
    def symbol(self) -> str:
        stem = {
            (Family.A, Kind.SUM): "+",
            (Family.A, Kind.PRODUCT): "x",
            (Family.K, Kind.SUM): "[+]",
            (Family.K, Kind.PRODUCT): "[x]",
        }[self.family, self.kind]
        mark = "_" if self.variant is Variant.LOW else "^"
        return f"{stem}{mark}{self.family.value}"

    @classmethod
    def parse(cls, name: str) -> "AltOpId":
        try:
            family, kind, variant = name.split("_")
            return cls(Family(family), Variant(variant), Kind(kind))
        except ValueError as exc:
            raise ValueError(f"unknown alternative operation {name!r}") from exc


def _a_sum_low(x: Scalar, y: Scalar, a: Scalar) -> Scalar:
    return q_sum(x, y, normalize(1 - a))


def _a_sum_high(x: Scalar, y: Scalar, a: Scalar) -> Scalar:
    # {a ln[exp(x^a/a) + exp(y^a/a)]}^(1/a)
    u = float(real_pow(x, a)) / a
    v = float(real_pow(y, a)) / a
    inner = a * (max(u, v) + math.log1p(math.exp(-abs(u - v))))
    return real_pow(inner, 1 / a)


def _a_prod_low(x: Scalar, y: Scalar, a: Scalar) -> Scalar:
    return q_product(x, y, normalize(1 - a))


def _a_prod_high(x: Scalar, y: Scalar, a: Scalar) -> Scalar:
    # (exp[ln(1 + a x) ln(1 + a y) / a] - 1) / a
    if 1 + a * x <= 0 or 1 + a * y <= 0:
        raise DomainError(f"x^a needs 1 + a x > 0 and 1 + a y > 0 (a = {a})")
    lx = math.log1p(a * float(x))
    ly = math.log1p(a * float(y))
    return math.expm1(lx * ly / a) / a


def _k_sum_low(x: Scalar, y: Scalar, k: Scalar) -> Scalar:
    return q_product(x, y, normalize(1 - k))


def _k_sum_high(x: Scalar, y: Scalar, k: Scalar) -> Scalar:
    # ([(1 + k x)^(1/k) + (1 + k y)^(1/k)]^k - 1) / k
    inv = exact_div(1, k)
    total = real_pow(normalize(1 + k * x), inv) + real_pow(normalize(1 + k * y), inv)
    return exact_div(normalize(real_pow(total, k) - 1), k)


def _k_prod_low(x: Scalar, y: Scalar, k: Scalar) -> Scalar:
    return normalize(x + y + k * x * y)


def _k_prod_high(x: Scalar, y: Scalar, k: Scalar) -> Scalar:
    # [((x y)^k - x^k - y^k + (k + 1)) / k]^(1/k)
    inner = real_pow(normalize(x * y), k) - real_pow(x, k) - real_pow(y, k) + k + 1
    return real_pow(exact_div(normalize(inner), k), exact_div(1, k))


_ALT_IMPLS: dict[str, Callable[[Scalar, Scalar, Scalar], Scalar]] = {
    "a_sum_low": _a_sum_low,
    "a_sum_high": _a_sum_high,
    "a_product_low": _a_prod_low,
    "a_product_high": _a_prod_high,
    "k_sum_low": _k_sum_low,
    "k_sum_high": _k_sum_high,
    "k_product_low": _k_prod_low,
    "k_product_high": _k_prod_high,
}

ALT_OPS: tuple[AltOpId, ...] = tuple(AltOpId.parse(name) for name in _ALT_IMPLS)


def alt_binary(op: AltOpId | str, x: Scalar, y: Scalar, param: Scalar) -> Scalar:
    """Apply one of the eight a-/k-operations with deformation ``param``."""
    op_id = AltOpId.parse(op) if isinstance(op, str) else op
    if param == 0:
        raise DomainError("a-/k-operations need a non-zero parameter")
    try:
        return _ALT_IMPLS[op_id.name](x, y, param)
    except (ZeroDivisionError, OverflowError) as exc:
        raise DomainError(f"{op_id.symbol}({x}, {y}; {param}): {exc}") from exc


class AltNumberId(str, enum.Enum):
    A_HIGH = "a_high"
    K_HIGH = "k_high"
    K_LOW = "k_low"

    @property
    def generating_sum(self) -> AltOpId:
        return {
            AltNumberId.A_HIGH: AltOpId(Family.A, Variant.HIGH, Kind.SUM),
            AltNumberId.K_HIGH: AltOpId(Family.K, Variant.HIGH, Kind.SUM),
            AltNumberId.K_LOW: AltOpId(Family.K, Variant.LOW, Kind.SUM),
        }[self]


def alt_number(which: AltNumberId | str, x: Scalar, g: Scalar, param: Scalar) -> Scalar:
    """Closed form of the ``x``-fold deformed sum of the generator ``g``.

    ``a_high``: ``[a ln x + g^a]^(1/a)``; ``k_high``: ``(x^k (1 + k g) - 1)/k``;
    ``k_low``: ``[x g^k - (x - 1)]^(1/k)``.
    """
    which = AltNumberId(which)
    if param == 0:
        raise DomainError("deformed numbers need a non-zero parameter")
    if which is AltNumberId.A_HIGH:
        if x <= 0:
            raise DomainError(f"a-number needs x > 0, got {x}")
        if x == 1:
            return g
        inner = param * math.log(x) + float(real_pow(g, param))
        return real_pow(inner, 1 / param)
    if which is AltNumberId.K_HIGH:
        return exact_div(normalize(real_pow(x, param) * (1 + param * g) - 1), param)
    inner = normalize(x * real_pow(g, param) - (x - 1))
    return real_pow(inner, exact_div(1, param))


def fold(op: AltOpId | str, g: Scalar, n: int, param: Scalar) -> Scalar:
    """``g op g op ... op g`` with ``n`` copies of ``g`` (left fold)."""
    if n < 1:
        raise ValueError("fold needs at least one operand")
    acc = g
    for _ in range(n - 1):
        acc = alt_binary(op, acc, g, param)
    return acc
