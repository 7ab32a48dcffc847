"""Upper mechanisms run by the auctioneer on group bids."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import kernels
from .errors import InstanceTooLargeError, NoGroupsError, ShapeError

ASSIGNMENT_LIMIT = 10**6


@dataclass(frozen=True)
class UpperResult:
    group_items: tuple[frozenset[int], ...]
    group_payments: tuple[Fraction, ...]

    def winner(self) -> int | None:
        for j, s in enumerate(self.group_items):
            if s:
                return j
        return None


def vickrey(group_bids: Sequence[Fraction]) -> UpperResult:
    """Second-price auction for one item; ties go to the lowest group index."""
    bids = [Fraction(b) for b in group_bids]
    if not bids:
        raise NoGroupsError("vickrey needs at least one group bid")
    top = max(bids)
    winner = bids.index(top)
    price = max((b for j, b in enumerate(bids) if j != winner), default=Fraction(0))
    items = tuple(frozenset({0}) if j == winner else frozenset() for j in range(len(bids)))
    pays = tuple(price if j == winner else Fraction(0) for j in range(len(bids)))
    return UpperResult(items, pays)


def check_assignment_size(k: int, m: int) -> None:
    if (k + 1) ** m > ASSIGNMENT_LIMIT:
        raise InstanceTooLargeError(
            f"(k+1)^m = {(k + 1) ** m} assignments exceeds the limit {ASSIGNMENT_LIMIT}")


def unit_demand_scores(valuations: Sequence[Sequence[Sequence[Fraction]]], m: int):
    """Integer score tables for ``kernels.best_assignment``.

    ``valuations[j]`` lists the unit-demand vectors whose values add up to
    group ``j``'s score for a bundle. Returns ``(scores, scale)`` where
    ``scores[j][mask] * 1/scale`` is that score exactly.
    """
    scale = 1
    for group in valuations:
        for vec in group:
            for v in vec:
                scale = lcm(scale, Fraction(v).denominator)
    scores = []
    for group in valuations:
        ints = [[int(Fraction(v) * scale) for v in vec] for vec in group]
        row = [0] * (1 << m)
        for mask in range(1, 1 << m):
            low = (mask & -mask).bit_length() - 1
            rest = mask & (mask - 1)
            # score(mask) = sum over members of max(member[low], best of rest)
            if rest == 0:
                row[mask] = sum(vec[low] for vec in ints)
            else:
                total = 0
                for vec in ints:
                    best = vec[low]
                    for l in range(low + 1, m):
                        if rest >> l & 1 and vec[l] > best:
                            best = vec[l]
                    total += best
                row[mask] = total
        scores.append(row)
    return scores, scale


def vcg_unit_demand(group_bid_vectors: Sequence[Sequence[Fraction]], m: int) -> UpperResult:
    """VCG with Clarke pivots, reading each group bid as a unit-demand valuation.

    The welfare-maximising assignment is found by exhaustive search; among
    maximisers the lexicographically smallest assignment vector wins, where
    entry 0 marks an unassigned item and ``j + 1`` marks group ``j``.
    """
    k = len(group_bid_vectors)
    if k == 0:
        raise NoGroupsError("VCG needs at least one group bid")
    for vec in group_bid_vectors:
        if len(vec) != m:
            raise ShapeError("group bid vector length differs from item count")
    check_assignment_size(k, m)
    scores, scale = unit_demand_scores([[vec] for vec in group_bid_vectors], m)
    total, vec = kernels.best_assignment(scores, k, m, -1)
    masks = [0] * k
    for l, a in enumerate(vec):
        if a:
            masks[a - 1] |= 1 << l
    pays = []
    for j in range(k):
        if not masks[j]:
            pays.append(Fraction(0))
            continue
        without, _ = kernels.best_assignment(scores, k, m, j)
        others_now = total - scores[j][masks[j]]
        pays.append(Fraction(without - others_now, scale))
    items = tuple(frozenset(l for l in range(m) if masks[j] >> l & 1) for j in range(k))
    return UpperResult(items, tuple(pays))
