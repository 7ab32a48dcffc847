"""Two-level auctions: groups aggregate member bids, compete in an upper
auction, and share the price among the members they let in."""

from .domain import (
    BidVector,
    Group,
    Instance,
    Model,
    Outcome,
    bundle_value,
    format_rational,
    parse_rational,
    value_of,
)
from .engine import (
    MECHANISM1,
    MECHANISM2,
    Aggregation,
    Kind,
    Mechanism,
    aggregate,
    run,
    run_traced,
    vcg_equal_split,
)
from .errors import (
    DegenerateRatioError,
    DomainError,
    EmptyGroupError,
    InfeasiblePaymentError,
    InstanceTooLargeError,
    InvalidOutcomeError,
    ModelMismatchError,
    NoGroupsError,
    ParseError,
    ShapeError,
    TwoLevelError,
)
from .kernels import BACKEND
from .lower import LowerResult, equal_split, winners_count, wtp
from .upper import UpperResult, vcg_unit_demand, vickrey

__version__ = "0.1.0"
