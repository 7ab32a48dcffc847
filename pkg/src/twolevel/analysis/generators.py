"""Instance families: lower-bound constructions and seeded random instances."""

from __future__ import annotations

from fractions import Fraction

from ..domain import Group, Instance, Model, Outcome
from ..errors import DomainError

ZERO = Fraction(0)


def gen_lb_pair(n: int, delta: Fraction) -> tuple[Instance, Instance]:
    """Two single-item instances on which no truthful mechanism beats H_{n-1}.

    In the first, group 1 has ``n - 1`` bidders valuing the item at
    ``1/i - delta`` and group 2 is one bidder with value 1; the second
    swaps the groups.
    """
    delta = Fraction(delta)
    if n < 2:
        raise DomainError("n must be at least 2")
    if not 0 < delta < Fraction(1, n - 1):
        raise DomainError(f"delta must lie in (0, 1/{n - 1})")
    many = Group("many", tuple((Fraction(1, i) - delta,) for i in range(1, n)))
    single = Group("single", ((Fraction(1),),))
    return (Instance(Model.SINGLE_ITEM, 1, (many, single)),
            Instance(Model.SINGLE_ITEM, 1, (single, many)))


def gen_unit_identical(n: int, eps: Fraction) -> Instance:
    """``n`` single unit-demand bidders in their own groups over ``n`` items.

    Everyone values the first item at ``1 + eps`` and every other item at 1.
    """
    eps = Fraction(eps)
    if n < 2:
        raise DomainError("n must be at least 2")
    if eps <= 0:
        raise DomainError("eps must be positive")
    vec = (1 + eps,) + (Fraction(1),) * (n - 1)
    return Instance(Model.UNIT_DEMAND, n,
                    tuple(Group(f"G{j + 1}", (vec,)) for j in range(n)))


def gen_appendix_a(eps: Fraction) -> Instance:
    """Two groups, items r and s, where VCG over equal-split groups is manipulable."""
    eps = Fraction(eps)
    if not 0 < eps < 5:
        raise DomainError("eps must lie in (0, 5)")
    g1 = Group("G1", ((10 + 2 * eps, ZERO), (5 - eps, eps)))
    g2 = Group("G2", ((Fraction(10), eps),))
    return Instance(Model.UNIT_DEMAND, 2, (g1, g2))


def concentrated_outcome(instance: Instance, group: int = 0) -> Outcome:
    """Every item to one group, all its members with access, nothing charged."""
    items = frozenset(range(instance.item_count))
    return Outcome(
        tuple(items if j == group else frozenset() for j in range(instance.k)),
        tuple(tuple(items if j == group else frozenset() for _ in g.bidders)
              for j, g in enumerate(instance.groups)),
        tuple(ZERO for _ in instance.groups),
        tuple(tuple(ZERO for _ in g.bidders) for g in instance.groups),
    )


class Mcg64:
    """64-bit multiplicative congruential generator.

    ``state <- state * 0xf1357aea2e62a9c5 mod 2**64``, started from the odd
    number ``2 * seed + 1``; each draw returns the high 32 bits. Simple enough
    to reproduce in any language, which keeps generated files portable.
    """

    MULTIPLIER = 0xF1357AEA2E62A9C5
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = ((seed << 1) | 1) & self.MASK
        for _ in range(4):
            self.next()

    def next(self) -> int:
        self.state = (self.state * self.MULTIPLIER) & self.MASK
        return self.state >> 32

    def below(self, n: int) -> int:
        """Integer in ``[0, n)``; modulo bias is below 2**-32 * n."""
        if n <= 0:
            raise DomainError("bound must be positive")
        if n > 1 << 32:
            return ((self.next() << 32) | self.next()) % n
        return self.next() % n

    def rational(self, max_value: int) -> Fraction:
        """Rational in ``[0, max_value]`` with denominator at most 1000."""
        den = 1 + self.below(1000)
        return Fraction(self.below(max_value * den + 1), den)


def gen_random(seed: int, k: int, max_group_size: int, m: int,
               model: Model | str, max_value: int) -> Instance:
    """Seeded random instance with exactly ``k`` groups of 1..max_group_size bidders."""
    model = Model(model)
    if min(k, max_group_size, m, max_value) < 1:
        raise DomainError("all generator parameters must be positive")
    if model is Model.SINGLE_ITEM:
        m = 1
    rng = Mcg64(seed)
    groups = []
    for j in range(k):
        size = 1 + rng.below(max_group_size)
        bidders = tuple(tuple(rng.rational(max_value) for _ in range(m)) for _ in range(size))
        groups.append(Group(f"G{j + 1}", bidders))
    return Instance(model, m, tuple(groups))
