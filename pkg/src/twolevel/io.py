"""JSON instance files and run reports.

Rationals are written as ``"p/q"`` strings (``"p"`` for integers); item,
group and bidder numbers are 1-based on disk.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .domain import Group, Instance, Model, Outcome, format_rational, parse_rational
from .errors import ParseError, TwoLevelError

FORMAT_VERSION = 1


def instance_to_dict(instance: Instance) -> dict[str, Any]:
    return {
        "version": FORMAT_VERSION,
        "model": instance.model.value,
        "items": instance.item_count,
        "groups": [
            {"name": g.name,
             "bidders": [{"values": [format_rational(v) for v in b]} for b in g.bidders]}
            for g in instance.groups
        ],
    }


def _require(obj, key, kind, where):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    value = obj[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise ParseError(f"{where}: field {key!r} has the wrong type")
    return value


def instance_from_dict(data: Any) -> Instance:
    if _require(data, "version", int, "instance") != FORMAT_VERSION:
        raise ParseError(f"unsupported instance version {data['version']!r}")
    try:
        model = Model(_require(data, "model", str, "instance"))
    except ValueError:
        raise ParseError(f"unknown model {data['model']!r}") from None
    m = _require(data, "items", int, "instance")
    groups_raw = _require(data, "groups", list, "instance")
    if not groups_raw:
        raise ParseError("instance has no groups")
    groups = []
    for j, g in enumerate(groups_raw, 1):
        where = f"group {j}"
        name = _require(g, "name", str, where)
        bidders_raw = _require(g, "bidders", list, where)
        if not bidders_raw:
            raise ParseError(f"{where} has no bidders")
        bidders = []
        for i, b in enumerate(bidders_raw, 1):
            values = _require(b, "values", list, f"{where} bidder {i}")
            try:
                vec = tuple(parse_rational(v) if isinstance(v, str) else _bad(v) for v in values)
            except TwoLevelError as exc:
                raise ParseError(f"{where} bidder {i}: {exc}") from None
            bidders.append(vec)
        groups.append(Group(name, tuple(bidders)))
    try:
        return Instance(model, m, tuple(groups))
    except TwoLevelError as exc:
        raise ParseError(str(exc)) from None


def _bad(v):
    raise ParseError(f"value {v!r} must be a rational string")


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2) + "\n"


def load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None


def load_instance(path: str | Path) -> Instance:
    return instance_from_dict(load_json(path))


def save_instance(instance: Instance, path: str | Path) -> None:
    Path(path).write_text(dumps(instance_to_dict(instance)))


def outcome_to_dict(outcome: Outcome, instance: Instance | None = None) -> dict[str, Any]:
    groups = []
    for j, items in enumerate(outcome.group_items):
        entry = {
            "items": sorted(l + 1 for l in items),
            "payment": format_rational(outcome.group_payments[j]),
            "members": [
                {"items": sorted(l + 1 for l in s), "payment": format_rational(c)}
                for s, c in zip(outcome.member_items[j], outcome.member_payments[j])
            ],
        }
        if instance is not None:
            entry = {"name": instance.groups[j].name, **entry}
        groups.append(entry)
    return {"groups": groups}


def outcome_from_dict(data: Any) -> Outcome:
    """Read an outcome without enforcing its invariants, so it can be audited."""
    groups = _require(data, "groups", list, "outcome")
    gi, mi, gp, mp = [], [], [], []
    try:
        for j, g in enumerate(groups, 1):
            where = f"outcome group {j}"
            gi.append(frozenset(int(l) - 1 for l in _require(g, "items", list, where)))
            gp.append(parse_rational(_require(g, "payment", str, where)))
            members = _require(g, "members", list, where)
            mi.append(tuple(frozenset(int(l) - 1 for l in _require(x, "items", list, where))
                            for x in members))
            mp.append(tuple(parse_rational(_require(x, "payment", str, where)) for x in members))
        return Outcome(tuple(gi), tuple(mi), tuple(gp), tuple(mp), strict=False)
    except (TwoLevelError, TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from None


def jsonable(value: Any) -> Any:
    """Turn traces with Fractions, sets and tuples into JSON-ready values."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {k: jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [jsonable(v) for v in value]
    return value
