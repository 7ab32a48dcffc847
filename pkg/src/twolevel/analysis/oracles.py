"""Welfare oracles and approximation ratios."""

from __future__ import annotations

from fractions import Fraction

from .. import kernels
from ..domain import Instance, Model, Outcome, value_of
from ..engine import Mechanism, Runner, runner
from ..errors import DegenerateRatioError, DomainError, InstanceTooLargeError
from ..upper import unit_demand_scores

ZERO = Fraction(0)
DP_LIMIT = 10**7


def harmonic(n: int) -> Fraction:
    """Exact partial harmonic sum ``1 + 1/2 + ... + 1/n``."""
    if n < 1:
        raise DomainError("harmonic numbers are defined for n >= 1")
    return sum((Fraction(1, i) for i in range(1, n + 1)), ZERO)


def optimal_assignment(instance: Instance) -> tuple[Fraction, tuple[frozenset[int], ...]]:
    """Maximum welfare and a maximising item-to-group assignment.

    Every member of a group is assumed to access all of its group's items.
    Single-item and additive ties go to the lowest group index; unit-demand
    instances are solved by dynamic programming over item subsets.
    """
    k, m = instance.k, instance.item_count
    if instance.model is Model.UNIT_DEMAND:
        if k * 3**m > DP_LIMIT:
            raise InstanceTooLargeError(f"k * 3^m = {k * 3**m} exceeds the limit {DP_LIMIT}")
        scores, scale = unit_demand_scores([g.bidders for g in instance.groups], m)
        best, vec = kernels.subset_dp(scores, k, m)
        items = tuple(frozenset(l for l, a in enumerate(vec) if a == j + 1) for j in range(k))
        return Fraction(best, scale), items
    items = [set() for _ in range(k)]
    total = ZERO
    for l in range(m):
        sums = [sum((b[l] for b in g.bidders), ZERO) for g in instance.groups]
        top = max(sums)
        items[sums.index(top)].add(l)
        total += top
    return total, tuple(frozenset(s) for s in items)


def opt_welfare(instance: Instance) -> Fraction:
    return optimal_assignment(instance)[0]


def welfare(instance: Instance, outcome: Outcome) -> Fraction:
    """Social welfare of ``outcome`` under true valuations."""
    outcome.check_shape(instance)
    return sum((value_of(instance, j, i, outcome.member_items[j][i])
                for j, i in instance.bidders()), ZERO)


def approximation_ratio(instance: Instance, mechanism: Mechanism | Runner | Outcome) -> Fraction:
    """``opt_welfare / welfare`` of the truthful run (or of a given outcome)."""
    if isinstance(mechanism, Outcome):
        outcome = mechanism
    else:
        outcome = runner(mechanism)(instance, None)
    achieved = welfare(instance, outcome)
    if achieved == 0:
        raise DegenerateRatioError("mechanism welfare is zero")
    return opt_welfare(instance) / achieved
