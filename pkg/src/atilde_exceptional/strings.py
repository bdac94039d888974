"""String modules over Q^eps and the hook/cohook calculus.

Every string module is written as an up-walk: it starts at vertex
v0 = i+1 and walks forward around the cycle for L = l*n + ((j-i-1) mod n)
letters, ending at vertex j.  Letter k of the walk uses arrow a_{v0+k}; it
is a direct letter iff eps_{v0+k} is '+'.  Arrows are indexed 1..n and
vertex arithmetic is modulo n throughout.
"""

import logging
import re
from dataclasses import dataclass
from enum import Enum

from .errors import NotAString, NotReduced, ParseError, UndefinedOperation
from .quiver import Orientation, as_orientation

# Module logger
logger = logging.getLogger("atilde_exceptional.strings")

_LABEL_RE = re.compile(r"^\s*\(?\s*(\d+)\s*,\s*(\d+)\s*;\s*(\d+)\s*\)?\s*$")


class ARComponent(Enum):
    PREPROJECTIVE = "Preprojective"
    PREINJECTIVE = "Preinjective"
    LEFT_REGULAR = "LeftRegular"
    RIGHT_REGULAR = "RightRegular"

    @property
    def is_regular(self) -> bool:
        return self in (ARComponent.LEFT_REGULAR, ARComponent.RIGHT_REGULAR)


class HookKind(Enum):
    ADD_HOOK = "AddHook"
    ADD_COHOOK = "AddCohook"
    DELETE_HOOK = "DeleteHook"
    DELETE_COHOOK = "DeleteCohook"


class StringEnd(Enum):
    START = "Start"
    END = "End"


# ============================================================================
# Walks
# ============================================================================

@dataclass(frozen=True)
class Letter:
    arrow: int
    direct: bool

    def __str__(self) -> str:
        return f"a{self.arrow}" if self.direct else f"a{self.arrow}^-1"


def _letter_ends(eps: Orientation, letter: Letter) -> tuple[int, int]:
    """(vertex walked from, vertex walked to)."""
    i = letter.arrow
    lo, hi = i, eps.wrap(i + 1)
    source, target = (lo, hi) if eps.sign(i) == "+" else (hi, lo)
    return (source, target) if letter.direct else (target, source)


@dataclass(frozen=True)
class Walk:
    """A word of letters starting at a vertex; cyclic walks describe bands."""

    orientation: Orientation
    start: int
    letters: tuple[Letter, ...] = ()
    cyclic: bool = False

    def vertices(self) -> list[int]:
        cur = self.orientation.wrap(self.start)
        path = [cur]
        for letter in self.letters:
            if not 1 <= letter.arrow <= self.orientation.n:
                raise NotReduced(f"Letter {letter} names no arrow of Q^{self.orientation}")
            frm, to = _letter_ends(self.orientation, letter)
            if frm != cur:
                raise NotReduced(f"Letter {letter} does not start at vertex {cur}")
            cur = to
            path.append(cur)
        return path

    @property
    def end(self) -> int:
        return self.vertices()[-1]

    def inverse(self) -> "Walk":
        letters = tuple(Letter(x.arrow, not x.direct) for x in reversed(self.letters))
        return Walk(self.orientation, self.end, letters, self.cyclic)

    def __str__(self) -> str:
        if not self.letters:
            return f"e{self.start}"
        return " ".join(str(x) for x in self.letters)


# ============================================================================
# String modules and bands
# ============================================================================

@dataclass(frozen=True)
class StringModule:
    """Indecomposable string module (i, j; l)."""

    orientation: Orientation
    i: int
    j: int
    winding: int = 0

    def __post_init__(self):
        n = self.orientation.n
        if not (1 <= self.i <= n and 1 <= self.j <= n):
            raise ValueError(f"String endpoints must lie in 1..{n}, got ({self.i},{self.j})")
        if self.winding < 0:
            raise ValueError(f"Winding must be nonnegative, got {self.winding}")

    @property
    def n(self) -> int:
        return self.orientation.n

    @property
    def start(self) -> int:
        """First vertex v0 of the up-walk (unwrapped, i+1)."""
        return self.i + 1

    @property
    def length(self) -> int:
        return self.winding * self.n + (self.j - self.i - 1) % self.n

    def letter_is_direct(self, k: int) -> bool:
        return self.orientation.sign(self.start + k) == "+"

    def position_vertex(self, k: int) -> int:
        return self.orientation.wrap(self.start + k)

    @property
    def label(self) -> str:
        return f"({self.i},{self.j};{self.winding})"

    @property
    def sort_key(self) -> tuple[int, int, int]:
        return (self.i, self.j, self.winding)

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class BandPower:
    """Power of the unique band of Q^eps (the quasi-simple tube of rank one)."""

    orientation: Orientation
    power: int

    @property
    def label(self) -> str:
        return f"band^{self.power}"


def from_span(eps: Orientation, start: int, length: int) -> StringModule:
    """String module of the up-walk from unwrapped vertex start with length letters."""
    if length < 0:
        raise ValueError(f"Negative walk length {length}")
    return StringModule(eps, eps.wrap(start - 1), eps.wrap(start + length), length // eps.n)


def parse_string_module(text: str, eps: "Orientation | str") -> StringModule:
    """Parse a label such as '(1,3;0)'."""
    eps = as_orientation(eps)
    match = _LABEL_RE.match(text)
    if not match:
        raise ParseError(f"Cannot parse string module label {text!r}")
    i, j, winding = (int(g) for g in match.groups())
    try:
        return StringModule(eps, i, j, winding)
    except ValueError as e:
        raise ParseError(f"Invalid string module {text!r}: {e}") from e


def expand(m: StringModule) -> Walk:
    """The walk of m; lazy when L = 0."""
    letters = tuple(Letter(m.orientation.wrap(m.start + k), m.letter_is_direct(k)) for k in range(m.length))
    return Walk(m.orientation, m.orientation.wrap(m.start), letters)


def normalize(w: Walk) -> "StringModule | BandPower":
    """Canonical (i, j; l) of a reduced walk, or the band power of a cyclic one."""
    eps = w.orientation
    path = w.vertices()
    for a, b in zip(w.letters, w.letters[1:]):
        if a.arrow == b.arrow and a.direct != b.direct:
            raise NotReduced(f"Walk {w} contains {a} {b}")
    if not w.letters:
        if w.cyclic:
            raise NotReduced("A lazy walk cannot close up into a band")
        return from_span(eps, path[0], 0)

    # Up letters use arrow a_v at vertex v, down letters use a_{v-1}.
    steps = [1 if letter.arrow == v else -1 for v, letter in zip(path, w.letters)]
    if len(set(steps)) != 1:
        raise NotReduced(f"Walk {w} changes direction and is not a string of Q^{eps}")
    if steps[0] == -1:
        w = w.inverse()
        path = w.vertices()

    length = len(w.letters)
    if w.cyclic:
        if length % eps.n or path[0] != path[-1]:
            raise NotReduced(f"Cyclic walk {w} does not close up")
        return BandPower(eps, length // eps.n)
    return from_span(eps, path[0], length)


def dimension_vector(m: StringModule) -> tuple[int, ...]:
    dims = [0] * m.n
    for k in range(m.length + 1):
        dims[m.position_vertex(k) - 1] += 1
    return tuple(dims)


def classify(m: "StringModule | BandPower") -> ARComponent:
    """AR component from the signs at the endpoints i and j."""
    if isinstance(m, BandPower):
        raise NotAString("Bands lie in the homogeneous tubes, not in a string component")
    si, sj = m.orientation.sign(m.i), m.orientation.sign(m.j)
    if si == "+" and sj == "-":
        return ARComponent.PREPROJECTIVE
    if si == "-" and sj == "+":
        return ARComponent.PREINJECTIVE
    if si == "+":
        return ARComponent.LEFT_REGULAR
    return ARComponent.RIGHT_REGULAR


def is_exceptional(m: StringModule) -> bool:
    """True iff Ext(m, m) vanishes."""
    from .string_hom import dim_ext

    return dim_ext(m, m) == 0


# ============================================================================
# Hooks and cohooks
# ============================================================================

def hook_op(m: StringModule, kind: HookKind, end: StringEnd) -> StringModule:
    """Add or delete a hook or cohook at one end of m.

    A hook is an arrow followed by a maximal run of inverse arrows, a cohook
    is an inverse arrow followed by a maximal run of direct arrows.  At the
    end of the walk the letter after the last position uses arrow a_{v0+L};
    at the start the letter before v0 uses a_{v0-1}.
    """
    eps = m.orientation
    sign = eps.sign
    start, length = m.start, m.length

    def undefined(reason: str):
        raise UndefinedOperation(f"{kind.value} at {end.value} of {m}: {reason}")

    if end is StringEnd.END:
        if kind is HookKind.ADD_HOOK:
            if sign(start + length) != "-":
                undefined("no inverse letter can follow the string")
            length += 1
            while sign(start + length) == "+":
                length += 1
        elif kind is HookKind.ADD_COHOOK:
            if sign(start + length) != "+":
                undefined("no direct letter can follow the string")
            length += 1
            while sign(start + length) == "-":
                length += 1
        elif kind is HookKind.DELETE_HOOK:
            if sign(start + length) != "-":
                undefined("the final run of direct letters is not maximal")
            while length and sign(start + length - 1) == "+":
                length -= 1
            if not length:
                undefined("no inverse letter to delete")
            length -= 1
        else:
            if sign(start + length) != "+":
                undefined("the final run of inverse letters is not maximal")
            while length and sign(start + length - 1) == "-":
                length -= 1
            if not length:
                undefined("no direct letter to delete")
            length -= 1
    else:
        if kind is HookKind.ADD_HOOK:
            if sign(start - 1) != "+":
                undefined("no direct letter can precede the string")
            start, length = start - 1, length + 1
            while sign(start - 1) == "-":
                start, length = start - 1, length + 1
        elif kind is HookKind.ADD_COHOOK:
            if sign(start - 1) != "-":
                undefined("no inverse letter can precede the string")
            start, length = start - 1, length + 1
            while sign(start - 1) == "+":
                start, length = start - 1, length + 1
        elif kind is HookKind.DELETE_HOOK:
            if sign(start - 1) != "+":
                undefined("the initial run of inverse letters is not maximal")
            while length and sign(start) == "-":
                start, length = start + 1, length - 1
            if not length:
                undefined("no direct letter to delete")
            start, length = start + 1, length - 1
        else:
            if sign(start - 1) != "-":
                undefined("the initial run of direct letters is not maximal")
            while length and sign(start) == "+":
                start, length = start + 1, length - 1
            if not length:
                undefined("no inverse letter to delete")
            start, length = start + 1, length - 1
    return from_span(eps, start, length)


_RAY_UP = {
    ARComponent.PREPROJECTIVE: (HookKind.ADD_HOOK, StringEnd.START),
    ARComponent.PREINJECTIVE: (HookKind.DELETE_COHOOK, StringEnd.END),
    ARComponent.LEFT_REGULAR: (HookKind.ADD_HOOK, StringEnd.START),
    ARComponent.RIGHT_REGULAR: (HookKind.ADD_HOOK, StringEnd.END),
}

_CORAY_DOWN = {
    ARComponent.PREPROJECTIVE: (HookKind.ADD_HOOK, StringEnd.END),
    ARComponent.PREINJECTIVE: (HookKind.DELETE_COHOOK, StringEnd.START),
    ARComponent.LEFT_REGULAR: (HookKind.DELETE_COHOOK, StringEnd.END),
    ARComponent.RIGHT_REGULAR: (HookKind.DELETE_COHOOK, StringEnd.START),
}


def ray_up(m: StringModule) -> StringModule:
    """Irreducible map out of m along its ray."""
    return hook_op(m, *_RAY_UP[classify(m)])


def coray_down(m: StringModule) -> StringModule:
    """Irreducible map out of m along its coray."""
    return hook_op(m, *_CORAY_DOWN[classify(m)])


def tau_inverse(m: StringModule) -> StringModule:
    """Inverse AR translate: up the ray, then down the coray of m's component."""
    component = classify(m)
    return hook_op(hook_op(m, *_RAY_UP[component]), *_CORAY_DOWN[component])


# ============================================================================
# Distinguished modules and enumeration
# ============================================================================

def simple(eps: "Orientation | str", v: int) -> StringModule:
    eps = as_orientation(eps)
    return StringModule(eps, eps.wrap(v - 1), eps.wrap(v), 0)


def projective(eps: "Orientation | str", v: int) -> StringModule:
    """P(v): all paths starting at v."""
    eps = as_orientation(eps)
    start, end = v, v
    while eps.sign(start - 1) == "-":
        start -= 1
    while eps.sign(end) == "+":
        end += 1
    return from_span(eps, start, end - start)


def injective(eps: "Orientation | str", v: int) -> StringModule:
    """I(v): all paths ending at v."""
    eps = as_orientation(eps)
    start, end = v, v
    while eps.sign(start - 1) == "+":
        start -= 1
    while eps.sign(end) == "-":
        end += 1
    return from_span(eps, start, end - start)


def enumerate_strings(eps: "Orientation | str", max_winding: int) -> list[StringModule]:
    """All string modules with l <= max_winding, sorted by (i, j, l)."""
    eps = as_orientation(eps)
    return [
        StringModule(eps, i, j, winding)
        for i in range(1, eps.n + 1)
        for j in range(1, eps.n + 1)
        for winding in range(max_winding + 1)
    ]


def exceptional_strings(eps: "Orientation | str", max_winding: int) -> list[StringModule]:
    return [m for m in enumerate_strings(eps, max_winding) if is_exceptional(m)]
