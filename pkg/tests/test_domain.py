from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from twolevel import (
    DomainError,
    Instance,
    InvalidOutcomeError,
    Model,
    Outcome,
    ShapeError,
    parse_rational,
    value_of,
)

from strategies import rationals


def test_value_of_additive():
    inst = Instance.build("additive", [[(3, 1)]])
    assert value_of(inst, 0, 0, {0, 1}) == 4


def test_value_of_unit_demand():
    inst = Instance.build("unit-demand", [[(10, F(1, 10))]])
    assert value_of(inst, 0, 0, {0, 1}) == 10


@pytest.mark.parametrize("model", list(Model))
def test_value_of_empty_set(model):
    m = 1 if model is Model.SINGLE_ITEM else 2
    inst = Instance.build(model, [[(7,) * m]])
    assert value_of(inst, 0, 0, set()) == 0


def test_value_of_index_errors():
    inst = Instance.build("additive", [[(3, 1)]])
    with pytest.raises(IndexError):
        value_of(inst, 1, 0, {0})
    with pytest.raises(IndexError):
        value_of(inst, 0, 1, {0})
    with pytest.raises(IndexError):
        value_of(inst, 0, 0, {2})


@given(st.lists(rationals, min_size=3, max_size=3), st.sets(st.integers(0, 2)),
       st.sets(st.integers(0, 2)), st.sampled_from(["additive", "unit-demand"]))
def test_value_of_monotone(vec, s, extra, model):
    inst = Instance.build(model, [[tuple(vec)]])
    assert value_of(inst, 0, 0, s) <= value_of(inst, 0, 0, s | extra)


@given(rationals, rationals)
def test_rational_arithmetic_exact(a, b):
    assert (a + b) - b == a


@pytest.mark.parametrize("text,value", [
    ("5/3", F(5, 3)), ("10", F(10)), ("0.125", F(1, 8)), ("4.000000001", F(4000000001, 10**9)),
    ("  7 / 14 ", F(1, 2)),
])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["-1", "1/0", "1e3", "0.1234567891", "abc", "1.5/2", "nan"])
def test_parse_rational_rejects(text):
    with pytest.raises(DomainError):
        parse_rational(text)


def test_instance_invariants():
    with pytest.raises(ShapeError):
        Instance.build("single-item", [[(1, 2)]])
    with pytest.raises(ShapeError):
        Instance(Model.ADDITIVE, 2, Instance.build("additive", [[(1,)]], item_count=1).groups)
    with pytest.raises(DomainError):
        Instance.build("single-item", [[]])
    with pytest.raises(DomainError):
        Instance(Model.SINGLE_ITEM, 1, ())
    with pytest.raises(DomainError):
        Instance.build("single-item", [[-1]])


def test_instance_counts(worked):
    assert (worked.k, worked.n, worked.max_group_size) == (2, 4, 3)


def test_overrides_replace_named_bidders_only(worked):
    bids = worked.bids({(0, 1): (F(9),)})
    assert bids == [[(4,), (9,), (2,)], [(5,)]]
    assert worked.groups[0].bidders[1] == (3,)


def _outcome(**kw):
    base = dict(
        group_items=({0}, set()),
        member_items=(({0}, set()), (set(),)),
        group_payments=(F(5), F(0)),
        member_payments=((F(5), F(0)), (F(0),)),
    )
    base.update(kw)
    return base


def test_outcome_accepts_valid():
    Outcome(**_outcome())


@pytest.mark.parametrize("bad", [
    dict(group_items=({0}, {0})),
    dict(member_items=(({0}, {1}), (set(),))),
    dict(member_payments=((F(4), F(0)), (F(0),))),
    dict(group_payments=(F(5), F(-1)), member_payments=((F(5), F(0)), (F(-1),))),
    dict(group_payments=(F(0), F(0)), member_payments=((F(1), F(-1)), (F(0),))),
])
def test_outcome_rejects(bad):
    with pytest.raises(InvalidOutcomeError):
        Outcome(**_outcome(**bad))
    assert Outcome(**_outcome(**bad), strict=False).problems()


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=2), st.integers(-3, 3))
def test_outcome_budget_balance_enforced(shares, charge):
    kw = _outcome(group_payments=(F(charge), F(0)),
                  member_payments=(tuple(map(F, shares)), (F(0),)))
    valid = sum(shares) == charge and charge >= 0 and min(shares) >= 0
    if valid:
        Outcome(**kw)
    else:
        with pytest.raises(InvalidOutcomeError):
            Outcome(**kw)


def test_outcome_shape_mismatch():
    with pytest.raises(ShapeError):
        Outcome(group_items=({0},), member_items=(), group_payments=(F(0),),
                member_payments=((F(0),),))
