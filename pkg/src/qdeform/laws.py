"""Sample-based checker for algebraic laws of deformed operations.

The checker is a falsifier: it evaluates both sides of a law on a fixed
list of small integer anchors followed by seeded random samples and
reports the first violation it meets.  Out-of-domain samples are skipped
and counted; a positive verdict needs at least ``min_hit_rate`` of the
samples to land inside the domain.
"""

from __future__ import annotations

import enum
import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Sequence

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .alt_algebras import ALT_OPS, alt_binary
from .core_ops import q_product, q_sum
from .diamond import diamond, phi_inverse
from .errors import DomainError
from .numerics import Scalar, scaled_residual, to_decimal_string

BinaryOp = Callable[[Scalar, Scalar, Scalar], Scalar]


@dataclass(frozen=True)
class Operation:
    name: str
    symbol: str
    fn: BinaryOp
    # (lo, hi) sampling window for a given parameter
    window: Callable[[Scalar], tuple[float, float]]

    def __call__(self, x: Scalar, y: Scalar, param: Scalar) -> Scalar:
        return self.fn(x, y, param)


def _unit_window(param: Scalar) -> tuple[float, float]:
    return 1.0, 3.0


def _diamond_window(param: Scalar) -> tuple[float, float]:
    # images of pre-images in [-3, 3]; classically the plain product
    if param == 1:
        return -3.0, 3.0
    a, b = float(phi_inverse(-3.0, param)), float(phi_inverse(3.0, param))
    return min(a, b), max(a, b)


def _alt(name: str) -> BinaryOp:
    return lambda x, y, p: alt_binary(name, x, y, p)


OPERATIONS: dict[str, Operation] = {
    "q_sum": Operation("q_sum", "(+)_q", q_sum, _unit_window),
    "q_product": Operation("q_product", "(x)_q", q_product, _unit_window),
    "diamond": Operation("diamond", "<>_q", diamond, _diamond_window),
}
for _op in ALT_OPS:
    OPERATIONS[_op.name] = Operation(_op.name, _op.symbol, _alt(_op.name), _unit_window)


def get_operation(op: Operation | str) -> Operation:
    if isinstance(op, Operation):
        return op
    try:
        return OPERATIONS[op]
    except KeyError:
        raise KeyError(f"unknown operation {op!r}; known: {sorted(OPERATIONS)}") from None


class Law(str, enum.Enum):
    DISTRIBUTIVITY = "distributivity"
    ASSOCIATIVITY = "associativity"
    COMMUTATIVITY = "commutativity"
    NEUTRAL_EXISTS = "neutral_exists"


@dataclass(frozen=True)
class SampleSpec:
    count: int = 1000
    seed: int = 0
    low: float | None = None
    high: float | None = None
    anchors: tuple[Scalar, ...] = (1, 2)
    tolerance: float = 1e-10
    min_hit_rate: float = 0.8

    def window(self, *ops: Operation, param: Scalar) -> tuple[float, float]:
        lo = max(op.window(param)[0] for op in ops)
        hi = min(op.window(param)[1] for op in ops)
        lo = lo if self.low is None else self.low
        hi = hi if self.high is None else self.high
        if not lo < hi:
            raise ValueError(f"empty sampling window [{lo}, {hi}]")
        return lo, hi

    def tuples(self, arity: int, lo: float, hi: float) -> Iterator[tuple[Scalar, ...]]:
        yield from itertools.product(self.anchors, repeat=arity)
        rng = random.Random(self.seed)
        for _ in range(self.count):
            yield tuple(rng.uniform(lo, hi) for _ in range(arity))


@dataclass
class Counterexample:
    x: Scalar
    y: Scalar
    z: Scalar | None
    lhs: Scalar
    rhs: Scalar

    def to_json(self) -> dict[str, str | None]:
        return {
            "x": to_decimal_string(self.x),
            "y": to_decimal_string(self.y),
            "z": None if self.z is None else to_decimal_string(self.z),
            "lhs": to_decimal_string(self.lhs),
            "rhs": to_decimal_string(self.rhs),
        }


@dataclass
class LawReport:
    law: Law
    mul: str | None
    add: str
    param: Scalar
    holds: bool | None
    counterexample: Counterexample | None = None
    max_residual: float = 0.0
    samples: int = 0
    skipped: int = 0
    note: str | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def hit_rate(self) -> float:
        total = self.samples + self.skipped
        return self.samples / total if total else 0.0

    def to_json(self) -> dict[str, Any]:
        return {
            "law": self.law.value,
            "mul": self.mul,
            "add": self.add,
            "param": to_decimal_string(self.param),
            "holds": self.holds,
            "counterexample": None if self.counterexample is None else self.counterexample.to_json(),
            "max_residual": self.max_residual,
            "samples": self.samples,
            "skipped": self.skipped,
            "note": self.note,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False, separators=(", ", ": "))


def _run(
    law: Law,
    mul: str | None,
    add: str,
    param: Scalar,
    spec: SampleSpec,
    arity: int,
    window: tuple[float, float],
    sides: Callable[[tuple[Scalar, ...]], tuple[Scalar, Scalar]],
    make_cex: Callable[[tuple[Scalar, ...], Scalar, Scalar], Counterexample],
) -> LawReport:
    report = LawReport(law, mul, add, param, holds=None)
    for operands in spec.tuples(arity, *window):
        try:
            lhs, rhs = sides(operands)
        except (DomainError, OverflowError, ZeroDivisionError):
            report.skipped += 1
            continue
        report.samples += 1
        res = scaled_residual(lhs, rhs)
        report.max_residual = max(report.max_residual, res)
        if res > spec.tolerance and report.counterexample is None:
            report.counterexample = make_cex(operands, lhs, rhs)
    if report.counterexample is not None:
        report.holds = False
    elif report.hit_rate >= spec.min_hit_rate:
        report.holds = True
    return report


def check_distributivity(
    mul: Operation | str, add: Operation | str, param: Scalar, spec: SampleSpec = SampleSpec()
) -> LawReport:
    """Left distributivity ``z * (x + y) == (z * x) + (z * y)``."""
    m, a = get_operation(mul), get_operation(add)

    def sides(t: tuple[Scalar, ...]) -> tuple[Scalar, Scalar]:
        z, x, y = t
        return m(z, a(x, y, param), param), a(m(z, x, param), m(z, y, param), param)

    return _run(
        Law.DISTRIBUTIVITY, m.name, a.name, param, spec, 3,
        spec.window(m, a, param=param), sides,
        lambda t, lhs, rhs: Counterexample(t[1], t[2], t[0], lhs, rhs),
    )


def check_associativity(op: Operation | str, param: Scalar, spec: SampleSpec = SampleSpec()) -> LawReport:
    o = get_operation(op)

    def sides(t: tuple[Scalar, ...]) -> tuple[Scalar, Scalar]:
        x, y, z = t
        return o(o(x, y, param), z, param), o(x, o(y, z, param), param)

    return _run(
        Law.ASSOCIATIVITY, None, o.name, param, spec, 3, spec.window(o, param=param), sides,
        lambda t, lhs, rhs: Counterexample(t[0], t[1], t[2], lhs, rhs),
    )


def check_commutativity(op: Operation | str, param: Scalar, spec: SampleSpec = SampleSpec()) -> LawReport:
    o = get_operation(op)

    def sides(t: tuple[Scalar, ...]) -> tuple[Scalar, Scalar]:
        x, y = t
        return o(x, y, param), o(y, x, param)

    return _run(
        Law.COMMUTATIVITY, None, o.name, param, spec, 2, spec.window(o, param=param), sides,
        lambda t, lhs, rhs: Counterexample(t[0], t[1], None, lhs, rhs),
    )


def _neutral_candidate(
    op: Operation, x0: float, param: Scalar, lo: float, hi: float, tol: float
) -> tuple[float, bool]:
    """Best ``t`` for ``op(x0, t) == x0`` and whether it is a genuine root."""
    span = hi - lo
    grid = np.unique(np.concatenate([np.linspace(lo - 4 * span, hi + 4 * span, 801), [0.0, 1.0]]))
    values: list[tuple[float, float]] = []
    for t in grid:
        try:
            values.append((float(t), float(op(x0, float(t), param)) - x0))
        except (DomainError, OverflowError, ZeroDivisionError):
            continue
    if not values:
        raise DomainError(f"{op.name} is undefined on the whole probe grid")
    for t, f in values:
        if f == 0.0:
            return t, True
    for (t0, f0), (t1, f1) in zip(values, values[1:]):
        if f0 * f1 < 0:
            root = brentq(lambda s: float(op(x0, s, param)) - x0, t0, t1, xtol=1e-15, rtol=1e-15)
            return float(root), True
    # no sign change: refine the closest miss, which may be a touching root
    t_best = min(values, key=lambda tv: abs(tv[1]))[0]
    i = int(np.searchsorted(grid, t_best))
    lo_b, hi_b = float(grid[max(i - 1, 0)]), float(grid[min(i + 1, len(grid) - 1)])

    def miss(s: float) -> float:
        try:
            return abs(float(op(x0, s, param)) - x0)
        except (DomainError, OverflowError, ZeroDivisionError):
            return float("inf")

    candidates = [t_best]
    if lo_b < hi_b:
        with np.errstate(invalid="ignore"):  # miss() is inf outside the domain
            refined = minimize_scalar(miss, bounds=(lo_b, hi_b), method="bounded", options={"xatol": 1e-14})
        candidates.append(float(refined.x))
    # a neutral sitting on the edge of the domain: bisect onto the last defined point
    for out in (lo_b, hi_b):
        if miss(out) == float("inf"):
            bad, good = out, t_best
            for _ in range(200):
                mid = (bad + good) / 2
                if mid in (bad, good):
                    break
                if miss(mid) == float("inf"):
                    bad = mid
                else:
                    good = mid
            candidates.append(good)
    t_best = min(candidates, key=miss)
    return t_best, scaled_residual(miss(t_best), 0) <= tol


def check_neutral(add: Operation | str, param: Scalar, spec: SampleSpec = SampleSpec()) -> LawReport:
    """Probe for a two-sided neutral element ``t`` with ``x + t == x``.

    A candidate is solved for on one reference operand and then verified
    on every sample; without any root the closest miss is reported.
    """
    a = get_operation(add)
    lo, hi = spec.window(a, param=param)
    x0 = (lo + hi) / 2
    t, is_root = _neutral_candidate(a, x0, param, lo, hi, spec.tolerance)
    report = LawReport(Law.NEUTRAL_EXISTS, None, a.name, param, holds=None, extra={"candidate": t})
    if not is_root:
        lhs = a(x0, t, param)
        report.samples = 1
        report.max_residual = scaled_residual(lhs, x0)
        report.counterexample = Counterexample(x0, t, None, lhs, x0)
        report.holds = False
        return report

    def sides(s: tuple[Scalar, ...]) -> tuple[Scalar, Scalar]:
        (x,) = s
        return a(x, t, param), x

    checked = _run(
        Law.NEUTRAL_EXISTS, None, a.name, param, spec, 1, (lo, hi), sides,
        lambda s, lhs, rhs: Counterexample(s[0], t, None, lhs, rhs),
    )
    checked.extra = report.extra
    return checked


def law_matrix(mul: Operation | str, add: Operation | str, param: Scalar, spec: SampleSpec = SampleSpec()) -> list[LawReport]:
    """Distributivity of ``mul`` over ``add`` plus the structural laws of ``add``."""
    if spec.count < 100:
        raise ValueError("law_matrix needs at least 100 random samples")
    return [
        check_distributivity(mul, add, param, spec),
        check_neutral(add, param, spec),
        check_associativity(add, param, spec),
        check_commutativity(add, param, spec),
    ]


@dataclass(frozen=True)
class Claim:
    """A distributivity claim about a (product, sum) pair and its expected verdict."""

    family: str
    mul: str
    add: str
    expected: bool
    note: str | None = None


CLAIMS: tuple[Claim, ...] = (
    Claim("q", "q_product", "q_sum", False, "q-product is not distributive over the q-sum"),
    Claim("q", "diamond", "q_sum", True),
    Claim("a", "a_product_low", "a_sum_high", True),
    Claim("a", "a_product_high", "a_sum_low", True),
    Claim("k", "k_product_low", "k_sum_high", True, "k_product_low taken as x + y + kxy (q = 1 - k)"),
    Claim("k", "k_product_high", "k_sum_high", False, "refuted-as-written, holds with k_sum_low"),
    Claim("k", "k_product_high", "k_sum_low", True),
)

DEFAULT_PARAMS: dict[str, tuple[Scalar, ...]] = {
    "q": (-1, 0, 0.5, 1.5),
    "a": (0.5, 1, 2),
    "k": (0.5, 1, 2),
}


def check_claims(
    families: Sequence[str] = ("q", "a", "k"),
    params: Sequence[Scalar] | None = None,
    spec: SampleSpec = SampleSpec(),
) -> list[LawReport]:
    """Distributivity reports for every registered claim, plus the +^a neutral probe."""
    reports: list[LawReport] = []
    for family in families:
        grid = DEFAULT_PARAMS[family] if params is None else tuple(params)
        for param in grid:
            for claim in (c for c in CLAIMS if c.family == family):
                report = check_distributivity(claim.mul, claim.add, param, spec)
                report.note = claim.note
                reports.append(report)
            if family == "a":
                probe = check_neutral("a_sum_high", param, spec)
                probe.note = "a_sum_high has no neutral element"
                reports.append(probe)
    return reports

