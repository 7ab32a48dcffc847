"""Two-level mechanisms assembled from the lower and upper pieces."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Any, Callable, Sequence

from . import kernels
from .domain import Instance, Model, Outcome, Overrides
from .errors import DomainError, ModelMismatchError
from .lower import equal_split, wtp
from .upper import vcg_unit_demand, vickrey

ZERO = Fraction(0)


class Aggregation(enum.Enum):
    IDENTITY = "identity"
    WTP = "wtp"
    SUM = "sum"
    MAX = "max"
    PER_ITEM_WTP = "per-item-wtp"


def aggregate(rule: Aggregation, vectors: Sequence[Sequence[Fraction]]) -> tuple[Fraction, ...]:
    """Combine member bid vectors into one group bid vector.

    Every rule is the identity on a single-member group.
    """
    if len(vectors) == 1:
        return tuple(vectors[0])
    if rule is Aggregation.IDENTITY:
        raise DomainError("identity aggregation only applies to single-member groups")
    columns = list(zip(*vectors))
    if rule is Aggregation.SUM:
        return tuple(sum(c, ZERO) for c in columns)
    if rule is Aggregation.MAX:
        return tuple(max(c) for c in columns)
    return tuple(wtp(c) for c in columns)


class Kind(enum.Enum):
    MECHANISM1 = "m1"
    MECHANISM2 = "m2"
    VCG_EQUAL_SPLIT = "vcg-equalsplit"


_MODELS = {
    Kind.MECHANISM1: Model.SINGLE_ITEM,
    Kind.MECHANISM2: Model.ADDITIVE,
    Kind.VCG_EQUAL_SPLIT: Model.UNIT_DEMAND,
}


@dataclass(frozen=True)
class Mechanism:
    kind: Kind
    aggregation: Aggregation | None = None

    def __post_init__(self):
        if self.kind is Kind.VCG_EQUAL_SPLIT and self.aggregation is None:
            object.__setattr__(self, "aggregation", Aggregation.SUM)

    @property
    def model(self) -> Model:
        return _MODELS[self.kind]

    @property
    def label(self) -> str:
        if self.kind is Kind.VCG_EQUAL_SPLIT:
            return f"{self.kind.value}[{self.aggregation.value}]"
        return self.kind.value

    @classmethod
    def parse(cls, name: str, aggregation: str | None = None) -> Mechanism:
        kind = Kind(name)
        agg = Aggregation(aggregation) if aggregation else None
        return cls(kind, agg if kind is Kind.VCG_EQUAL_SPLIT else None)


MECHANISM1 = Mechanism(Kind.MECHANISM1)
MECHANISM2 = Mechanism(Kind.MECHANISM2)


def vcg_equal_split(aggregation: Aggregation = Aggregation.SUM) -> Mechanism:
    return Mechanism(Kind.VCG_EQUAL_SPLIT, aggregation)


# A runner maps (instance, overrides) to an outcome; checkers accept either
# a Mechanism or any such callable.
Runner = Callable[[Instance, Overrides | None], Outcome]


def runner(mechanism: Mechanism | Runner) -> Runner:
    if isinstance(mechanism, Mechanism):
        return lambda inst, ov=None: run(mechanism, inst, ov)
    return mechanism


def run(mechanism: Mechanism, instance: Instance, overrides: Overrides | None = None) -> Outcome:
    """Run ``mechanism`` with true valuations as bids, except ``overrides``."""
    return _run(mechanism, instance, overrides, False)[0]


def run_traced(mechanism: Mechanism, instance: Instance,
               overrides: Overrides | None = None) -> tuple[Outcome, dict[str, Any]]:
    """Like :func:`run`, also returning the intermediate values of the round."""
    return _run(mechanism, instance, overrides, True)


def _run(mechanism, instance, overrides, traced):
    if instance.model is not mechanism.model:
        raise ModelMismatchError(
            f"{mechanism.label} needs a {mechanism.model.value} instance, "
            f"got {instance.model.value}")
    bids = instance.bids(overrides)
    if mechanism.kind is Kind.MECHANISM1:
        columns = [[b[0] for b in g] for g in bids]
        res, trace = _single_item(columns, traced)
        return _assemble(instance, [res]), trace
    if mechanism.kind is Kind.MECHANISM2:
        per_item, traces = [], []
        for l in range(instance.item_count):
            res, trace = _single_item([[b[l] for b in g] for g in bids], traced)
            per_item.append(res)
            traces.append(trace)
        return _assemble(instance, per_item), {"items": traces}
    return _vcg_equal_split(mechanism.aggregation, instance, bids)


def _single_item(columns: list[list[Fraction]], traced: bool = True):
    """One copy of the single-item mechanism on per-group scalar bids.

    Returns ``(winner, group payment, member access, member shares)`` and an
    audit trace. Bids are scaled to integers over a common denominator and
    handed to the fused kernel; ``single_item_composed`` is the same round
    built from the lower and upper mechanisms.
    """
    scale = 1
    for c in columns:
        for b in c:
            scale = lcm(scale, b.denominator)
    ints = [[b.numerator * (scale // b.denominator) for b in c] for c in columns]
    wtps, winner, price_int, t, chosen = kernels.single_item(ints)
    # price never exceeds the winner's own willingness to pay
    assert t >= 1
    price = Fraction(price_int, scale)
    share = price / t
    n = len(columns[winner])
    access = [False] * n
    for i in chosen:
        access[i] = True
    shares = tuple(share if a else ZERO for a in access)
    if not traced:
        return (winner, price, tuple(access), shares), None
    trace = {
        "wtp": [Fraction(w, scale) for w in wtps],
        "winner": winner,
        "group_payment": price,
        "winners_count": t,
    }
    return (winner, price, tuple(access), shares), trace


def single_item_composed(columns: list[list[Fraction]]):
    """Reference round: wtp aggregation, Vickrey, then equal split."""
    upper = vickrey([wtp(c) for c in columns])
    winner = upper.winner()
    price = upper.group_payments[winner]
    split = equal_split(columns[winner], price)
    return winner, price, split.access, split.shares


def _assemble(instance: Instance, per_item) -> Outcome:
    k = instance.k
    group_items = [set() for _ in range(k)]
    member_items = [[set() for _ in range(g.size)] for g in instance.groups]
    group_pay = [ZERO] * k
    member_pay = [[ZERO] * g.size for g in instance.groups]
    for l, (winner, price, access, shares) in enumerate(per_item):
        group_items[winner].add(l)
        if price:
            group_pay[winner] += price
        for i, (a, c) in enumerate(zip(access, shares)):
            if a:
                member_items[winner][i].add(l)
                if c:
                    member_pay[winner][i] += c
    return Outcome(tuple(group_items), tuple(tuple(g) for g in member_items),
                   tuple(group_pay), tuple(tuple(g) for g in member_pay))


def _vcg_equal_split(aggregation: Aggregation, instance: Instance, bids):
    m = instance.item_count
    group_bids = [aggregate(aggregation, g) for g in bids]
    upper = vcg_unit_demand(group_bids, m)
    member_items = [[set() for _ in g] for g in bids]
    member_pay = [[ZERO] * len(g) for g in bids]
    for j, items in enumerate(upper.group_items):
        if not items:
            continue
        # the bundle's charge is spread evenly over its items
        per_item = upper.group_payments[j] / len(items)
        for l in sorted(items):
            split = equal_split([b[l] for b in bids[j]], per_item)
            for i, (a, c) in enumerate(zip(split.access, split.shares)):
                if a:
                    member_items[j][i].add(l)
                member_pay[j][i] += c
    outcome = Outcome(upper.group_items, tuple(tuple(g) for g in member_items),
                      upper.group_payments, tuple(tuple(g) for g in member_pay))
    trace = {
        "group_bids": group_bids,
        "assignment": [sorted(s) for s in upper.group_items],
        "group_payments": list(upper.group_payments),
    }
    return outcome, trace
