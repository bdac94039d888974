"""Exceptions raised by atilde-exceptional.

Every error derives from AtildeError so callers (the CLI in particular) can
catch the library's failures without swallowing programming errors.
"""


class AtildeError(Exception):
    """Base class for all library errors."""


class ParseError(AtildeError, ValueError):
    """Input text (sign string, module label, collection file) could not be parsed."""


class TooShort(AtildeError):
    """Orientation vector with fewer than two signs."""


class AllSignsEqual(AtildeError):
    """Orientation vector without both a '+' and a '-' sign."""


class IncompatibleEquivalence(AtildeError):
    """Arrow classes of a quiver equivalence do not respect vertex classes."""


class NotReduced(AtildeError):
    """Walk is not composable, not reduced, or a cyclic walk does not close up."""


class UndefinedOperation(AtildeError):
    """Hook or cohook operation not defined at the requested end of a string."""


class NotAString(AtildeError):
    """A band power was given where a string module is required."""


class WrongCardinality(AtildeError):
    """A complete collection needs exactly n members."""


class ArcsCross(AtildeError):
    """Clockwise order is undefined for arcs that intersect nontrivially."""


class NotExceptional(AtildeError):
    """Collection or arc diagram is not exceptional."""


class NotComplete(AtildeError):
    """Arc diagram is not a complete exceptional diagram."""


class CyclicQuiver(AtildeError):
    """Operation requires an acyclic quiver."""


class OrderingCapExceeded(AtildeError):
    """Brute-force ordering search refused: too many modules."""


class WindowExhausted(AtildeError):
    """Twist search found no word inside the window although the quivers are isomorphic."""


class InconsistentAssignment(AtildeError):
    """Superquiver representation assigns a map whose endpoints do not match its arrow."""


class NegativeExt(AtildeError):
    """Euler-form route produced a negative Ext dimension."""


class OracleMismatch(AtildeError):
    """Two independent computations of the same quantity disagree."""
