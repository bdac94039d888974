"""Hom and Ext between string modules by graph maps and connections.

A factorization of a string C of length L is a cut (a, b) with 0 <= a <= b <= L
splitting the walk into F (letters before position a), E (positions a..b)
and D (letters after position b).  Graph maps C1 -> C2 pair a quotient
factorization of C1 with a submodule factorization of C2 sharing the same E.
The graph maps form a basis of Hom(C1, C2); connections together with the
two-sided graph maps C2 -> C1 form a basis of Ext(C1, C2).
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

from .strings import StringModule, from_span

# Module logger
logger = logging.getLogger("atilde_exceptional.string_hom")


@dataclass(frozen=True)
class FactorTriple:
    """C = F E D with E spanning walk positions first..last."""

    module: StringModule
    first: int
    last: int

    @property
    def f_length(self) -> int:
        return self.first

    @property
    def e_length(self) -> int:
        return self.last - self.first

    @property
    def d_length(self) -> int:
        return self.module.length - self.last

    @property
    def e_start(self) -> int:
        """Unwrapped first vertex of E."""
        return self.module.start + self.first

    @property
    def is_quotient(self) -> bool:
        """D lazy or starting with a direct letter, F lazy or ending with an inverse one."""
        m = self.module
        d_ok = self.last == m.length or m.letter_is_direct(self.last)
        f_ok = self.first == 0 or not m.letter_is_direct(self.first - 1)
        return d_ok and f_ok

    @property
    def is_submodule(self) -> bool:
        """D lazy or starting with an inverse letter, F lazy or ending with a direct one."""
        m = self.module
        d_ok = self.last == m.length or not m.letter_is_direct(self.last)
        f_ok = self.first == 0 or m.letter_is_direct(self.first - 1)
        return d_ok and f_ok


@dataclass(frozen=True)
class GraphMap:
    source: StringModule
    target: StringModule
    quotient: FactorTriple
    submodule: FactorTriple

    @property
    def two_sided(self) -> bool:
        """Neither end of E is at an end of both strings."""
        q, s = self.quotient, self.submodule
        right = q.d_length > 0 or s.d_length > 0
        left = q.f_length > 0 or s.f_length > 0
        return right and left

    def to_dict(self) -> dict:
        return {
            "quotient": [self.quotient.first, self.quotient.last],
            "submodule": [self.submodule.first, self.submodule.last],
            "two_sided": self.two_sided,
        }


@dataclass(frozen=True)
class Connection:
    """C1 joined to C2 by one arrow; middle is the middle term of the extension."""

    arrow: int
    middle: StringModule


@dataclass(frozen=True)
class ExtClass:
    kind: str  # "connection" or "two_sided"
    middle: tuple[StringModule, ...]
    arrow: int | None = None
    graph_map: GraphMap | None = None

    def to_dict(self) -> dict:
        entry = {"kind": self.kind, "middle": [m.label for m in self.middle]}
        if self.arrow is not None:
            entry["arrow"] = self.arrow
        if self.graph_map is not None:
            entry["graph_map"] = self.graph_map.to_dict()
        return entry


def factorizations(c: StringModule) -> list[FactorTriple]:
    return [FactorTriple(c, a, b) for a in range(c.length + 1) for b in range(a, c.length + 1)]


def quotient_factorizations(c: StringModule) -> list[FactorTriple]:
    return [f for f in factorizations(c) if f.is_quotient]


def submodule_factorizations(c: StringModule) -> list[FactorTriple]:
    return [f for f in factorizations(c) if f.is_submodule]


def _same_e(q: FactorTriple, s: FactorTriple) -> bool:
    n = q.module.n
    return q.e_length == s.e_length and (q.e_start - s.e_start) % n == 0


def graph_maps(c1: StringModule, c2: StringModule) -> list[GraphMap]:
    """Basis of Hom(c1, c2)."""
    if c1.orientation != c2.orientation:
        raise ValueError("Strings over different orientations")
    subs = submodule_factorizations(c2)
    return [
        GraphMap(c1, c2, q, s)
        for q in quotient_factorizations(c1)
        for s in subs
        if _same_e(q, s)
    ]


def connections(c1: StringModule, c2: StringModule) -> list[Connection]:
    """Arrows joining the end of c1 to the start of c2 (or c2's end to c1's
    start) into a longer string."""
    eps = c1.orientation
    found = []
    v0, v1 = c1.start, c1.start + c1.length
    w0, w1 = c2.start, c2.start + c2.length
    # c1 then a direct arrow then c2
    if eps.wrap(w0) == eps.wrap(v1 + 1) and eps.sign(v1) == "+":
        found.append(Connection(eps.wrap(v1), from_span(eps, v0, c1.length + 1 + c2.length)))
    # c2 then an inverse arrow then c1
    if eps.wrap(v0) == eps.wrap(w1 + 1) and eps.sign(w1) == "-":
        found.append(Connection(eps.wrap(w1), from_span(eps, w0, c2.length + 1 + c1.length)))
    return found


def _two_sided_middle(g: GraphMap) -> tuple[StringModule, StringModule]:
    """Middle terms F2 E D1 and F1 E D2 of the extension of a two-sided map c2 -> c1."""
    q, s = g.quotient, g.submodule
    c2, c1 = g.source, g.target
    eps = c1.orientation
    left = from_span(eps, c2.start, q.last + c1.length - s.last)
    right = from_span(eps, c1.start, s.last + c2.length - q.last)
    return left, right


def ext_basis(c1: StringModule, c2: StringModule) -> list[ExtClass]:
    """Basis of Ext(c1, c2): connections c1 -> c2 and two-sided maps c2 -> c1."""
    basis = [ExtClass("connection", (c.middle,), arrow=c.arrow) for c in connections(c1, c2)]
    for g in graph_maps(c2, c1):
        if g.two_sided:
            basis.append(ExtClass("two_sided", _two_sided_middle(g), graph_map=g))
    return basis


@lru_cache(maxsize=65536)
def dim_hom(c1: StringModule, c2: StringModule) -> int:
    return len(graph_maps(c1, c2))


@lru_cache(maxsize=65536)
def dim_ext(c1: StringModule, c2: StringModule) -> int:
    return len(ext_basis(c1, c2))
