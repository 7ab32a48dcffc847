"""Lower mechanism: willingness-to-pay aggregation and maximum equal split.

A group's willingness to pay is the largest amount its members can cover
when every member who gets access pays the same share and nobody pays more
than their bid. For bids sorted in decreasing order that is
``max_i i * b_(i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import kernels
from .errors import EmptyGroupError, InfeasiblePaymentError


@dataclass(frozen=True)
class LowerResult:
    access: tuple[bool, ...]
    shares: tuple[Fraction, ...]

    @property
    def winners(self) -> int:
        return sum(self.access)


def _check(bids: Sequence[Fraction]) -> list[Fraction]:
    bids = list(bids)
    if not bids:
        raise EmptyGroupError("a group needs at least one bid")
    return bids


def wtp(bids: Sequence[Fraction]) -> Fraction:
    """Willingness to pay of a group; the identity for a single bidder."""
    return Fraction(kernels.wtp(_check(bids)))


def winners_count(bids: Sequence[Fraction], p: Fraction) -> int:
    """Largest ``i`` such that the ``i`` highest bidders can each pay ``p / i``."""
    bids = _check(bids)
    t = kernels.winners_count(bids, p)
    if t == 0:
        raise InfeasiblePaymentError(f"payment {p} exceeds willingness to pay {wtp(bids)}")
    return t


def equal_split(bids: Sequence[Fraction], p: Fraction) -> LowerResult:
    """Grant access to the ``winners_count`` highest bidders at ``p / t`` each.

    Equal bids are ranked by lower index first. Tied bids never straddle the
    cutoff: if the t-th and (t+1)-th bids were equal, t + 1 would also cover p.
    """
    bids = _check(bids)
    p = Fraction(p)
    t = winners_count(bids, p)
    share = p / t
    chosen = set(kernels.descending(bids)[:t])
    access = tuple(i in chosen for i in range(len(bids)))
    shares = tuple(share if a else Fraction(0) for a in access)
    return LowerResult(access, shares)
