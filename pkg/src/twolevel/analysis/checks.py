"""Property checkers: truthfulness by deviation search, budget balance,
individual rationality, equal treatment, critical bids and consumer
sovereignty.

A clean deviation search is evidence, not proof: only the finite grid of
candidate bids is tried.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..domain import BidVector, Instance, Model, Outcome, bundle_value, value_of
from ..engine import Mechanism, Runner, runner
from ..errors import DomainError, InfeasiblePaymentError

log = logging.getLogger(__name__)

ZERO = Fraction(0)
NUDGE = Fraction(1, 1000)
HUGE = Fraction(10**6)
BISECTION_WIDTH = Fraction(1, 2**30)


class ViolationKind(enum.Enum):
    TRUTHFULNESS = "truthfulness"
    BUDGET_BALANCE = "budget-balance"
    IR = "ir"
    EQUAL_TREATMENT = "equal-treatment"
    MONOTONICITY = "monotonicity"
    CONSUMER_SOVEREIGNTY = "consumer-sovereignty"


@dataclass(frozen=True)
class ViolationReport:
    kind: ViolationKind
    group: int
    bidder: int | None
    truthful_utility: Fraction = ZERO
    deviant_utility: Fraction = ZERO
    deviation: BidVector | None = None
    witness: str = ""

    def __post_init__(self):
        if self.kind is ViolationKind.TRUTHFULNESS and not self.deviant_utility > self.truthful_utility:
            raise ValueError("a truthfulness report needs a strict utility gain")

    @property
    def gain(self) -> Fraction:
        return self.deviant_utility - self.truthful_utility

    def sort_key(self):
        return (self.kind.value, self.group, -1 if self.bidder is None else self.bidder,
                self.deviation or (), self.witness)

    def to_dict(self) -> dict:
        """JSON-ready form with 1-based indices and rationals as strings."""
        return {
            "kind": self.kind.value,
            "group": self.group + 1,
            "bidder": None if self.bidder is None else self.bidder + 1,
            "deviation": None if self.deviation is None else [str(v) for v in self.deviation],
            "truthful_utility": str(self.truthful_utility),
            "deviant_utility": str(self.deviant_utility),
            "gain": str(self.gain),
            "witness": self.witness,
        }


def sort_reports(reports) -> list[ViolationReport]:
    return sorted(reports, key=ViolationReport.sort_key)


@dataclass(frozen=True)
class DeviationGrid:
    """Finite set of deviating bids tried for each bidder.

    ``per_item[l]`` holds candidate values for item ``l`` (all other items
    keep their true value); ``joint`` holds whole bid vectors.
    """

    per_item: tuple[tuple[Fraction, ...], ...]
    joint: tuple[BidVector, ...] = field(default=())

    @classmethod
    def standard(cls, instance: Instance, outcome: Outcome) -> DeviationGrid:
        """Zero, every bid, every observed payment, each of those +/- 1/1000,
        twice the largest bid and 10**6; plus all-mass-on-one-item vectors
        when there is more than one item."""
        m = instance.item_count
        paid = {p for p in outcome.group_payments}
        paid.update(c for g in outcome.member_payments for c in g)
        top = instance.max_value()
        per_item = []
        for l in range(m):
            base = {ZERO} | paid | {b[l] for g in instance.groups for b in g.bidders}
            cands = set(base)
            for v in base:
                cands.add(v + NUDGE)
                if v >= NUDGE:
                    cands.add(v - NUDGE)
            cands.update((2 * top, HUGE))
            per_item.append(tuple(sorted(cands)))
        joint = ()
        if m > 1:
            joint = tuple(tuple(HUGE if x == l else ZERO for x in range(m)) for l in range(m))
        return cls(tuple(per_item), joint)

    def deviations(self, truth: Sequence[Fraction]):
        """Every candidate bid vector for a bidder whose true vector is ``truth``."""
        truth = tuple(truth)
        seen = {truth}
        for l, cands in enumerate(self.per_item):
            for c in cands:
                vec = truth[:l] + (c,) + truth[l + 1:]
                if vec not in seen:
                    seen.add(vec)
                    yield vec
        for vec in self.joint:
            if vec not in seen:
                seen.add(vec)
                yield vec

    def __len__(self):
        return sum(len(c) for c in self.per_item) + len(self.joint)


def utility(instance: Instance, outcome: Outcome, group: int, bidder: int) -> Fraction:
    return (value_of(instance, group, bidder, outcome.member_items[group][bidder])
            - outcome.member_payments[group][bidder])


def check_truthful(mechanism: Mechanism | Runner, instance: Instance,
                   grid: DeviationGrid | None = None) -> list[ViolationReport]:
    """Report every grid deviation that strictly raises a bidder's utility.

    Deviations on which the mechanism is undefined (a group charged more
    than its members can cover) are skipped and counted in the log.
    """
    run = runner(mechanism)
    truthful = run(instance, None)
    if grid is None:
        grid = DeviationGrid.standard(instance, truthful)
    reports = []
    skipped = 0
    for j, i in instance.bidders():
        base = utility(instance, truthful, j, i)
        for vec in grid.deviations(instance.groups[j].bidders[i]):
            try:
                out = run(instance, {(j, i): vec})
            except InfeasiblePaymentError:
                skipped += 1
                continue
            u = utility(instance, out, j, i)
            if u > base:
                reports.append(ViolationReport(
                    ViolationKind.TRUTHFULNESS, j, i, base, u, vec,
                    f"bidder {i + 1} of group {j + 1} bids "
                    f"({', '.join(map(str, vec))}) and gains {u - base}"))
    if skipped:
        log.info("skipped %d deviations with infeasible internal payments", skipped)
    return sort_reports(reports)


def check_outcome_properties(instance: Instance, outcome: Outcome) -> list[ViolationReport]:
    """Budget balance per group and individual rationality per bidder."""
    outcome.check_shape(instance)
    reports = []
    for j, g in enumerate(instance.groups):
        total = sum(outcome.member_payments[j], ZERO)
        charged = outcome.group_payments[j]
        if total != charged:
            reports.append(ViolationReport(
                ViolationKind.BUDGET_BALANCE, j, None,
                witness=f"group {j + 1} charged {charged}, members pay {total}"))
        for i in range(g.size):
            value = value_of(instance, j, i, outcome.member_items[j][i])
            pay = outcome.member_payments[j][i]
            if pay > value:
                reports.append(ViolationReport(
                    ViolationKind.IR, j, i, truthful_utility=value - pay,
                    witness=f"bidder {i + 1} of group {j + 1} pays {pay} for value {value}"))
    return sort_reports(reports)


def check_equal_treatment(mechanism: Mechanism | Runner, instance: Instance) -> list[ViolationReport]:
    """Same-group bidders with identical bids must get identical access and payment."""
    out = runner(mechanism)(instance, None)
    reports = []
    for j, g in enumerate(instance.groups):
        for a in range(g.size):
            for b in range(a + 1, g.size):
                if g.bidders[a] != g.bidders[b]:
                    continue
                if (out.member_items[j][a] != out.member_items[j][b]
                        or out.member_payments[j][a] != out.member_payments[j][b]):
                    reports.append(ViolationReport(
                        ViolationKind.EQUAL_TREATMENT, j, b,
                        witness=f"bidders {a + 1} and {b + 1} of group {j + 1} bid the same "
                                f"but are treated differently"))
    return sort_reports(reports)


@dataclass(frozen=True)
class CriticalBid:
    """Bracket ``(below, at_or_above]`` around a bidder's winning threshold."""

    below: Fraction
    above: Fraction
    payment: Fraction
    simplest: Fraction
    tested: tuple[tuple[Fraction, bool], ...]


def _simplest_open(x: Fraction, y: Fraction) -> Fraction:
    """Smallest-denominator rational strictly between ``0 <= x < y``."""
    fl = x.numerator // x.denominator
    if fl + 1 < y:
        return Fraction(fl + 1)
    if x == fl:
        inv = 1 / (y - fl)
        return fl + 1 / Fraction(inv.numerator // inv.denominator + 1)
    return fl + 1 / _simplest_open(1 / (y - fl), 1 / (x - fl))


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Smallest-denominator rational in the half-open interval (lo, hi]."""
    if lo < 0 or hi <= lo:
        raise DomainError("need 0 <= lo < hi")
    inner = _simplest_open(lo, hi)
    return hi if hi.denominator <= inner.denominator else inner


def critical_bid(mechanism: Mechanism | Runner, instance: Instance,
                 group: int, bidder: int) -> CriticalBid:
    """Bisect a winning bidder's single-item bid down to its winning threshold."""
    if instance.model is not Model.SINGLE_ITEM:
        raise DomainError("critical bids are defined for single-item instances")
    run = runner(mechanism)
    truthful = run(instance, None)
    if not truthful.accesses(group, bidder):
        raise DomainError(f"bidder {bidder + 1} of group {group + 1} does not win")
    tested: list[tuple[Fraction, bool]] = []

    def wins(b: Fraction) -> bool:
        won = run(instance, {(group, bidder): (b,)}).accesses(group, bidder)
        tested.append((b, won))
        return won

    hi = instance.groups[group].bidders[bidder][0]
    payment = truthful.member_payments[group][bidder]
    for b in (hi, hi + 1, 2 * hi + 1, HUGE):
        wins(b)
    if wins(ZERO):
        return CriticalBid(ZERO, ZERO, payment, ZERO, tuple(tested))
    lo = ZERO
    while hi - lo > BISECTION_WIDTH:
        mid = (lo + hi) / 2
        if wins(mid):
            hi = mid
        else:
            lo = mid
    simplest = _simplest_between(lo, hi)
    wins(simplest)
    wins(payment)
    return CriticalBid(lo, hi, payment, simplest, tuple(tested))


def check_critical_bid(mechanism: Mechanism | Runner, instance: Instance,
                       group: int, bidder: int) -> ViolationReport | None:
    """``None`` if the payment sits in the bisected threshold bracket and
    winning is monotone over every tested bid; otherwise a report."""
    cb = critical_bid(mechanism, instance, group, bidder)
    ordered = sorted(set(cb.tested))
    lowest_win = next((b for b, won in ordered if won), None)
    for b, won in ordered:
        if lowest_win is not None and b > lowest_win and not won:
            return ViolationReport(
                ViolationKind.MONOTONICITY, group, bidder, deviation=(b,),
                witness=f"wins at {lowest_win} but loses at higher bid {b}")
    in_bracket = (cb.payment == 0 if cb.above == 0
                  else cb.below < cb.payment <= cb.above)
    if not in_bracket:
        return ViolationReport(
            ViolationKind.MONOTONICITY, group, bidder,
            witness=f"payment {cb.payment} outside threshold bracket ({cb.below}, {cb.above}]")
    return None


def probe_consumer_sovereignty(mechanism: Mechanism | Runner, instance: Instance,
                               group: int, bidder: int) -> bool:
    """Does an overwhelming bid on every item buy a value-maximising bundle?"""
    top = instance.max_value()
    level = HUGE * top if top > 0 else HUGE
    vec = (level,) * instance.item_count
    out = runner(mechanism)(instance, {(group, bidder): vec})
    truth = instance.groups[group].bidders[bidder]
    best = bundle_value(instance.model, truth, range(instance.item_count))
    return bundle_value(instance.model, truth, out.member_items[group][bidder]) == best
