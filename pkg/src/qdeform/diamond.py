"""The diamond product, which distributes over the q-sum.

``phi(x) = ln(1 + (1-q) x) / ln(2 - q)`` maps the interval where
``1 + (1-q) x > 0`` bijectively onto the reals, turns the q-sum into
ordinary addition and ``x_q`` back into ``x``.  The diamond product is
ordinary multiplication carried across ``phi``, so together with the
q-sum it inherits every field law of the reals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core_ops import DeformParam, QLike, as_param
from .errors import DomainError, UnsupportedError
from .numerics import Scalar, exact_div, is_exact, normalize
from .qnumbers import from_qnumber, to_qnumber


@dataclass(frozen=True)
class DiamondDomain:
    """Real domain of the diamond product for a fixed ``q < 2, q != 1``.

    For ``q < 1`` the domain is ``(bound, inf)``; for ``1 < q < 2`` it is
    ``(-inf, bound)``.  Either way ``bound = -1/(1-q)``.
    """

    q: DeformParam

    @classmethod
    def of(cls, q: QLike) -> "DiamondDomain":
        p = as_param(q)
        if p.q >= 2:
            raise UnsupportedError(f"diamond product needs q < 2, got q = {p.q}")
        if p.classical:
            raise DomainError("q = 1 has no deformed diamond domain")
        return cls(p)

    @property
    def bound(self) -> Scalar:
        return exact_div(-1, self.q.one_minus_q)

    @property
    def lower_bound(self) -> float:
        return float(self.bound) if self.q.q < 1 else -math.inf

    @property
    def upper_bound(self) -> float:
        return math.inf if self.q.q < 1 else float(self.bound)

    def contains(self, x: Scalar) -> bool:
        return 1 + self.q.one_minus_q * x > 0

    def check(self, x: Scalar) -> None:
        if not self.contains(x):
            raise DomainError(f"{x} lies outside the diamond domain 1 + (1-q)x > 0 (q = {self.q.q})")


def phi(x: Scalar, q: QLike) -> Scalar:
    """Conjugation map ``log_{2-q}(1 + (1-q) x)``; exact on q-number images."""
    dom = DiamondDomain.of(q)
    dom.check(x)
    return from_qnumber(x, dom.q)


def phi_inverse(t: Scalar, q: QLike) -> Scalar:
    return to_qnumber(t, DiamondDomain.of(q).q)


def diamond(x: Scalar, y: Scalar, q: QLike) -> Scalar:
    """``((2-q)^(phi(x) phi(y)) - 1) / (1 - q)``; plain product at ``q = 1``."""
    p = as_param(q)
    if p.classical:
        return normalize(x * y)
    dom = DiamondDomain.of(p)
    dom.check(x)
    dom.check(y)
    if x == 0 or y == 0:
        return 0 if is_exact(x) and is_exact(y) else 0.0
    if p.reduces_to_classical:
        return float(x) * float(y)
    return to_qnumber(normalize(phi(x, p) * phi(y, p)), p)


def diamond_inverse(x: Scalar, q: QLike) -> Scalar:
    """Diamond-reciprocal ``phi^-1(1 / phi(x))``; zero has none."""
    p = as_param(q)
    if x == 0:
        raise DomainError("0 has no diamond inverse")
    if p.classical:
        return exact_div(1, x)
    dom = DiamondDomain.of(p)
    dom.check(x)
    t = phi(x, p)
    return to_qnumber(exact_div(1, t), p)
