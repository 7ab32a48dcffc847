"""Exact value types, instances and outcomes.

All quantities are :class:`fractions.Fraction`. Indices are 0-based inside
the library; file formats and printed reports use 1-based item, group and
bidder numbers.
"""

from __future__ import annotations

import enum
import re
from dataclasses import InitVar, dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, InvalidOutcomeError, ShapeError

BidVector = tuple[Fraction, ...]
Overrides = Mapping[tuple[int, int], Sequence[Fraction]]

ZERO = Fraction(0)

_RATIONAL_RE = re.compile(r"^\s*(\d+)\s*/\s*(\d+)\s*$")
_DECIMAL_RE = re.compile(r"^\s*(\d+)(?:\.(\d{1,9}))?\s*$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or a decimal with at most 9 fractional digits exactly.

    Negative values are rejected since every value in the model is >= 0.
    """
    if isinstance(text, bool):
        raise DomainError(f"not a rational: {text!r}")
    if isinstance(text, Fraction):
        value = text
    elif isinstance(text, int):
        value = Fraction(text)
    elif isinstance(text, str):
        m = _RATIONAL_RE.match(text)
        if m:
            num, den = int(m.group(1)), int(m.group(2))
            if den == 0:
                raise DomainError(f"zero denominator in {text!r}")
            value = Fraction(num, den)
        else:
            m = _DECIMAL_RE.match(text)
            if not m:
                raise DomainError(f"not a rational: {text!r}")
            value = Fraction(text.strip())
    else:
        raise DomainError(f"not a rational: {text!r}")
    if value < 0:
        raise DomainError(f"negative value {text!r}")
    return value


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


class Model(enum.Enum):
    SINGLE_ITEM = "single-item"
    ADDITIVE = "additive"
    UNIT_DEMAND = "unit-demand"


def _as_vector(values: Iterable) -> BidVector:
    vec = tuple(parse_rational(v) for v in values)
    return vec


@dataclass(frozen=True)
class Group:
    name: str
    bidders: tuple[BidVector, ...]

    def __post_init__(self):
        bidders = tuple(_as_vector(b) for b in self.bidders)
        if not bidders:
            raise DomainError(f"group {self.name!r} has no bidders")
        object.__setattr__(self, "bidders", bidders)

    @property
    def size(self) -> int:
        return len(self.bidders)


@dataclass(frozen=True)
class Instance:
    model: Model
    item_count: int
    groups: tuple[Group, ...]

    def __post_init__(self):
        object.__setattr__(self, "model", Model(self.model))
        object.__setattr__(self, "groups", tuple(self.groups))
        if self.item_count < 1:
            raise DomainError("item count must be positive")
        if self.model is Model.SINGLE_ITEM and self.item_count != 1:
            raise ShapeError("single-item instances have exactly one item")
        if not self.groups:
            raise DomainError("an instance needs at least one group")
        for g in self.groups:
            for vec in g.bidders:
                if len(vec) != self.item_count:
                    raise ShapeError(
                        f"group {g.name!r}: bid vector of length {len(vec)}, "
                        f"expected {self.item_count}"
                    )

    @classmethod
    def build(cls, model: Model | str, groups: Sequence[Sequence[Sequence]],
              names: Sequence[str] | None = None, item_count: int | None = None) -> Instance:
        """Convenience constructor from nested value lists.

        ``groups[j][i]`` is bidder i's value vector in group j; scalars are
        accepted for single-item instances.
        """
        model = Model(model)
        norm = []
        for g in groups:
            norm.append([b if isinstance(b, (list, tuple)) else (b,) for b in g])
        if item_count is None:
            item_count = len(norm[0][0]) if norm and norm[0] else 1
        if names is None:
            names = [f"G{j + 1}" for j in range(len(norm))]
        return cls(model, item_count,
                   tuple(Group(n, tuple(tuple(b) for b in g)) for n, g in zip(names, norm)))

    @property
    def k(self) -> int:
        return len(self.groups)

    @property
    def n(self) -> int:
        return sum(g.size for g in self.groups)

    @property
    def max_group_size(self) -> int:
        return max(g.size for g in self.groups)

    def bidders(self):
        """Yield ``(group_idx, bidder_idx)`` for every bidder."""
        for j, g in enumerate(self.groups):
            for i in range(g.size):
                yield j, i

    def bids(self, overrides: Overrides | None = None) -> list[list[BidVector]]:
        """Submitted bids: true valuations with ``overrides`` substituted."""
        out = [list(g.bidders) for g in self.groups]
        if overrides:
            for (j, i), vec in overrides.items():
                vec = _as_vector(vec)
                if len(vec) != self.item_count:
                    raise ShapeError("override has wrong length")
                out[j][i] = vec
        return out

    def column(self, item: int) -> Instance:
        """Single-item instance of every bidder's value for ``item``."""
        return Instance(Model.SINGLE_ITEM, 1, tuple(
            Group(g.name, tuple((b[item],) for b in g.bidders)) for g in self.groups))

    def max_value(self) -> Fraction:
        return max((v for g in self.groups for b in g.bidders for v in b), default=ZERO)


def value_of(instance: Instance, group_idx: int, bidder_idx: int,
             items: Iterable[int]) -> Fraction:
    """True value of a bidder for a set of (0-based) items."""
    if not 0 <= group_idx < instance.k:
        raise IndexError(f"group index {group_idx} out of range")
    group = instance.groups[group_idx]
    if not 0 <= bidder_idx < group.size:
        raise IndexError(f"bidder index {bidder_idx} out of range")
    return bundle_value(instance.model, group.bidders[bidder_idx], items)


def bundle_value(model: Model, vec: Sequence[Fraction], items: Iterable[int]) -> Fraction:
    items = list(items)
    for l in items:
        if not 0 <= l < len(vec):
            raise IndexError(f"item index {l} out of range")
    if not items:
        return ZERO
    if model is Model.UNIT_DEMAND:
        return max(vec[l] for l in items)
    return sum((vec[l] for l in items), ZERO)


def _frac(x) -> Fraction:
    return x if type(x) is Fraction else Fraction(x)


@dataclass(frozen=True)
class Outcome:
    """Allocation and payments of a two-level mechanism.

    Construction validates feasibility, access within the group's items,
    per-group budget balance and non-negative payments. Pass
    ``strict=False`` only to hold an outcome read back from an external
    report so that the checkers can inspect it.
    """

    group_items: tuple[frozenset[int], ...]
    member_items: tuple[tuple[frozenset[int], ...], ...]
    group_payments: tuple[Fraction, ...]
    member_payments: tuple[tuple[Fraction, ...], ...]
    strict: InitVar[bool] = True

    def __post_init__(self, strict: bool):
        object.__setattr__(self, "group_items",
                           tuple(frozenset(s) for s in self.group_items))
        object.__setattr__(self, "member_items",
                           tuple(tuple(frozenset(s) for s in g) for g in self.member_items))
        object.__setattr__(self, "group_payments",
                           tuple(_frac(p) for p in self.group_payments))
        object.__setattr__(self, "member_payments",
                           tuple(tuple(_frac(p) for p in g) for g in self.member_payments))
        k = len(self.group_items)
        if not (len(self.member_items) == len(self.group_payments)
                == len(self.member_payments) == k):
            raise ShapeError("outcome components disagree on the number of groups")
        for j in range(k):
            if len(self.member_items[j]) != len(self.member_payments[j]):
                raise ShapeError(f"group {j + 1}: access and payment lists differ in length")
        if strict:
            problems = self.problems()
            if problems:
                raise InvalidOutcomeError("; ".join(problems))

    def problems(self) -> list[str]:
        """Human-readable list of invariant violations (empty if valid)."""
        out = []
        seen: dict[int, int] = {}
        for j, items in enumerate(self.group_items):
            for l in items:
                if l in seen:
                    out.append(f"item {l + 1} allocated to groups {seen[l] + 1} and {j + 1}")
                seen[l] = j
        for j, members in enumerate(self.member_items):
            for i, s in enumerate(members):
                if not s <= self.group_items[j]:
                    out.append(f"bidder {i + 1} of group {j + 1} accesses items outside its group's set")
        for j, p in enumerate(self.group_payments):
            if p.numerator < 0:
                out.append(f"group {j + 1} has negative payment {p}")
            total = sum(c for c in self.member_payments[j] if c)
            if total != p:
                out.append(f"group {j + 1} members pay {total}, group charged {p}")
            for i, c in enumerate(self.member_payments[j]):
                if c.numerator < 0:
                    out.append(f"bidder {i + 1} of group {j + 1} has negative payment {c}")
        return out

    def is_valid(self) -> bool:
        return not self.problems()

    def accesses(self, group_idx: int, bidder_idx: int) -> bool:
        return bool(self.member_items[group_idx][bidder_idx])

    def check_shape(self, instance: Instance) -> None:
        if len(self.group_items) != instance.k:
            raise ShapeError("outcome and instance disagree on the number of groups")
        for j, g in enumerate(instance.groups):
            if len(self.member_items[j]) != g.size:
                raise ShapeError(f"group {j + 1}: outcome has {len(self.member_items[j])} "
                                 f"members, instance has {g.size}")
        for items in self.group_items:
            if any(not 0 <= l < instance.item_count for l in items):
                raise ShapeError("outcome references an item outside the instance")

    @classmethod
    def empty(cls, instance: Instance) -> Outcome:
        return cls(
            tuple(frozenset() for _ in instance.groups),
            tuple(tuple(frozenset() for _ in g.bidders) for g in instance.groups),
            tuple(ZERO for _ in instance.groups),
            tuple(tuple(ZERO for _ in g.bidders) for g in instance.groups),
        )
