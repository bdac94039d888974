"""atilde-exceptional: exceptional collections, Hom-Ext quivers and Dehn twists over type Ã quivers."""

__version__ = "0.1.0"

# Public exceptions
from .errors import (  # noqa: E402
    AllSignsEqual,
    ArcsCross,
    AtildeError,
    CyclicQuiver,
    IncompatibleEquivalence,
    InconsistentAssignment,
    NegativeExt,
    NotAString,
    NotComplete,
    NotExceptional,
    NotReduced,
    OracleMismatch,
    OrderingCapExceeded,
    ParseError,
    TooShort,
    UndefinedOperation,
    WindowExhausted,
    WrongCardinality,
)
