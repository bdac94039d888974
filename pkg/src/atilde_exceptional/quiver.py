"""Quivers, orientation vectors and quivers with relations.

The type Ã quiver for an orientation vector eps = (eps_1, ..., eps_n) has
vertices 1..n.  Arrow a_i joins i and i+1 (a_n joins n and 1) and points
i -> i+1 when eps_i is '+', i+1 -> i when eps_i is '-'.

All relations handled here are monomial paths of length two, stored as pairs
of arrow indices (first arrow, second arrow) in path order.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterator

import networkx as nx

from .errors import AllSignsEqual, IncompatibleEquivalence, ParseError, TooShort

# Module logger
logger = logging.getLogger("atilde_exceptional.quiver")

_SIGN_ALIASES = {"+": "+", "-": "-", "−": "-"}


# ============================================================================
# Orientation vectors and the type Ã quiver
# ============================================================================

@dataclass(frozen=True)
class Orientation:
    """Orientation vector eps with both signs present."""

    signs: tuple[str, ...]

    def __post_init__(self):
        if len(self.signs) < 2:
            raise TooShort(f"Orientation needs at least 2 signs, got {len(self.signs)}")
        for s in self.signs:
            if s not in ("+", "-"):
                raise ParseError(f"Invalid sign {s!r} in orientation")
        if len(set(self.signs)) == 1:
            raise AllSignsEqual(f"Orientation {''.join(self.signs)} has only '{self.signs[0]}' signs")

    @classmethod
    def parse(cls, text: str) -> "Orientation":
        """Parse '+--', '(+,-,-)' or '+ - -' into an orientation."""
        signs = []
        for ch in text.strip().strip("()"):
            if ch in " ,":
                continue
            if ch not in _SIGN_ALIASES:
                raise ParseError(f"Invalid sign {ch!r} in orientation {text!r}")
            signs.append(_SIGN_ALIASES[ch])
        return cls(tuple(signs))

    @property
    def n(self) -> int:
        return len(self.signs)

    def wrap(self, v: int) -> int:
        """Reduce an integer to a vertex label in 1..n."""
        return (v - 1) % self.n + 1

    def sign(self, i: int) -> str:
        """Sign of arrow a_i; indices are taken modulo n."""
        return self.signs[(i - 1) % self.n]

    def is_outer(self, x: int) -> bool:
        """Marked point x sits on the outer boundary iff eps_x is '+'."""
        return self.sign(x) == "+"

    @property
    def outer_points(self) -> list[int]:
        return [i for i in range(1, self.n + 1) if self.signs[i - 1] == "+"]

    @property
    def inner_points(self) -> list[int]:
        return [i for i in range(1, self.n + 1) if self.signs[i - 1] == "-"]

    def __str__(self) -> str:
        return "".join(self.signs)


def as_orientation(eps: "Orientation | str") -> Orientation:
    if isinstance(eps, Orientation):
        return eps
    return Orientation.parse(eps)


def opposite(eps: "Orientation | str") -> Orientation:
    """Reverse every arrow."""
    eps = as_orientation(eps)
    return Orientation(tuple("-" if s == "+" else "+" for s in eps.signs))


@dataclass(frozen=True)
class Arrow:
    source: Hashable
    target: Hashable
    degree: int | None = None
    name: str = ""


@dataclass(frozen=True)
class AtildeQuiver:
    """The type Ã quiver Q^eps."""

    orientation: Orientation

    @property
    def n(self) -> int:
        return self.orientation.n

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        eps = self.orientation
        arrows = []
        for i in range(1, self.n + 1):
            j = eps.wrap(i + 1)
            if eps.sign(i) == "+":
                arrows.append(Arrow(i, j, name=f"a{i}"))
            else:
                arrows.append(Arrow(j, i, name=f"a{i}"))
        return tuple(arrows)

    def as_quiver(self) -> "QuiverWithRelations":
        return QuiverWithRelations(self.vertices, self.arrows)


def build_atilde(eps: "Orientation | str") -> AtildeQuiver:
    """Build Q^eps; raises TooShort or AllSignsEqual for invalid vectors."""
    return AtildeQuiver(as_orientation(eps))


# ============================================================================
# Quivers with relations
# ============================================================================

@dataclass(frozen=True)
class QuiverWithRelations:
    """Finite quiver with monomial length-two relations.

    linear_relations records pairs of parallel length-two paths whose
    composites are proportional; they are reported but never used to
    normalize the quiver.
    """

    vertices: tuple
    arrows: tuple[Arrow, ...] = ()
    relations: frozenset[tuple[int, int]] = frozenset()
    linear_relations: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = ()

    def __post_init__(self):
        vertex_set = set(self.vertices)
        if len(vertex_set) != len(self.vertices):
            raise ValueError("Duplicate vertex labels")
        for a in self.arrows:
            if a.source not in vertex_set or a.target not in vertex_set:
                raise ValueError(f"Arrow {a.name or a} has an endpoint outside the vertex set")
            if a.degree not in (None, 0, 1):
                raise ValueError(f"Arrow degree must be 0 or 1, got {a.degree}")
        for first, second in self.relations:
            if self.arrows[first].target != self.arrows[second].source:
                raise ValueError(f"Relation ({first}, {second}) is not a composable path")

    def out_arrows(self, v) -> list[int]:
        return [k for k, a in enumerate(self.arrows) if a.source == v]

    def in_arrows(self, v) -> list[int]:
        return [k for k, a in enumerate(self.arrows) if a.target == v]

    def composable_pairs(self) -> list[tuple[int, int]]:
        """All length-two paths as (first arrow, second arrow)."""
        return [
            (x, y)
            for x, a in enumerate(self.arrows)
            for y, b in enumerate(self.arrows)
            if a.target == b.source
        ]

    def to_digraph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices)
        for k, a in enumerate(self.arrows):
            g.add_edge(a.source, a.target, key=k)
        return g

    def has_oriented_cycle(self) -> bool:
        return not nx.is_directed_acyclic_graph(self.to_digraph())

    def full_subquiver(self, keep) -> "QuiverWithRelations":
        """Full subquiver on the vertices in keep, relations restricted."""
        keep = set(keep)
        vertices = tuple(v for v in self.vertices if v in keep)
        old_to_new = {}
        arrows = []
        for k, a in enumerate(self.arrows):
            if a.source in keep and a.target in keep:
                old_to_new[k] = len(arrows)
                arrows.append(a)
        relations = frozenset(
            (old_to_new[x], old_to_new[y])
            for x, y in self.relations
            if x in old_to_new and y in old_to_new
        )
        linear = tuple(
            ((old_to_new[p[0]], old_to_new[p[1]]), (old_to_new[r[0]], old_to_new[r[1]]))
            for p, r in self.linear_relations
            if all(k in old_to_new for k in (*p, *r))
        )
        return QuiverWithRelations(vertices, tuple(arrows), relations, linear)

    def relabel(self, mapping: dict) -> "QuiverWithRelations":
        arrows = tuple(
            Arrow(mapping[a.source], mapping[a.target], a.degree, a.name) for a in self.arrows
        )
        return QuiverWithRelations(
            tuple(mapping[v] for v in self.vertices), arrows, self.relations, self.linear_relations
        )

    def to_dict(self) -> dict:
        return {
            "vertices": [str(v) for v in self.vertices],
            "arrows": [
                {
                    "src": str(a.source),
                    "tgt": str(a.target),
                    "degree": a.degree,
                    "name": a.name,
                }
                for a in self.arrows
            ],
            "relations": [list(r) for r in sorted(self.relations)],
            "linear_relations": [[list(p), list(r)] for p, r in self.linear_relations],
        }


# ============================================================================
# Quotient quivers
# ============================================================================

@dataclass(frozen=True)
class QuiverEquivalence:
    """Partition of vertices and of arrows; unlisted items are singletons."""

    vertex_classes: tuple[frozenset, ...] = ()
    arrow_classes: tuple[frozenset[int], ...] = ()


def _complete_partition(items, classes) -> list[list]:
    seen = {}
    blocks = []
    for block in classes:
        members = [x for x in items if x in block]
        unknown = set(block) - set(items)
        if unknown:
            raise IncompatibleEquivalence(f"Equivalence mentions unknown items {sorted(map(str, unknown))}")
        for x in members:
            if x in seen:
                raise IncompatibleEquivalence(f"{x} lies in two classes")
            seen[x] = len(blocks)
        if members:
            blocks.append(members)
    for x in items:
        if x not in seen:
            blocks.append([x])
    return blocks


def quotient_quiver(q: QuiverWithRelations, eq: QuiverEquivalence) -> QuiverWithRelations:
    """Identify vertices and arrows along eq.

    A quotient length-two path [a][b] is a relation iff every composable lift
    a' in [a], b' in [b] is a relation of q; with no lift at all it is a
    relation vacuously.
    """
    vertex_blocks = _complete_partition(list(q.vertices), eq.vertex_classes)
    vertex_class = {v: k for k, block in enumerate(vertex_blocks) for v in block}
    arrow_blocks = _complete_partition(list(range(len(q.arrows))), eq.arrow_classes)

    labels = [block[0] for block in vertex_blocks]
    arrows = []
    for block in arrow_blocks:
        sources = {vertex_class[q.arrows[k].source] for k in block}
        targets = {vertex_class[q.arrows[k].target] for k in block}
        if len(sources) != 1 or len(targets) != 1:
            raise IncompatibleEquivalence(
                f"Arrow class {[q.arrows[k].name or k for k in block]} does not respect vertex classes"
            )
        degrees = {q.arrows[k].degree for k in block}
        degree = degrees.pop() if len(degrees) == 1 else None
        arrows.append(Arrow(labels[sources.pop()], labels[targets.pop()], degree, q.arrows[block[0]].name))

    relations = set()
    for x, a in enumerate(arrows):
        for y, b in enumerate(arrows):
            if a.target != b.source:
                continue
            lifts = [
                (s, t)
                for s in arrow_blocks[x]
                for t in arrow_blocks[y]
                if q.arrows[s].target == q.arrows[t].source
            ]
            if all(lift in q.relations for lift in lifts):
                relations.add((x, y))
    logger.debug(f"Quotient quiver: {len(labels)} vertices, {len(arrows)} arrows, {len(relations)} relations")
    return QuiverWithRelations(tuple(labels), tuple(arrows), frozenset(relations))


# ============================================================================
# Isomorphism of quivers with relations
# ============================================================================

@dataclass
class QuiverIsomorphism:
    vertex_map: dict = field(default_factory=dict)
    arrow_map: dict[int, int] = field(default_factory=dict)


def _multiplicities(q: QuiverWithRelations) -> Counter:
    return Counter((a.source, a.target) for a in q.arrows)


def _vertex_bijections(q1, q2) -> Iterator[dict]:
    mult1, mult2 = _multiplicities(q1), _multiplicities(q2)

    def signature(q, v, mult):
        outs = sorted(mult[(v, w)] for w in q.vertices if mult[(v, w)])
        ins = sorted(mult[(w, v)] for w in q.vertices if mult[(w, v)])
        return tuple(outs), tuple(ins), mult[(v, v)]

    sig2 = {v: signature(q2, v, mult2) for v in q2.vertices}
    order = list(q1.vertices)
    sig1 = {v: signature(q1, v, mult1) for v in order}
    assignment: dict = {}
    used: set = set()

    def extend(k):
        if k == len(order):
            yield dict(assignment)
            return
        u = order[k]
        for w in q2.vertices:
            if w in used or sig2[w] != sig1[u]:
                continue
            if any(
                mult1[(u, x)] != mult2[(w, assignment[x])] or mult1[(x, u)] != mult2[(assignment[x], w)]
                for x in order[:k]
            ):
                continue
            assignment[u] = w
            used.add(w)
            yield from extend(k + 1)
            used.discard(w)
            del assignment[u]

    yield from extend(0)


def isomorphisms(
    q1: QuiverWithRelations,
    q2: QuiverWithRelations,
    arrow_match: Callable[[int, int], bool] | None = None,
) -> Iterator[QuiverIsomorphism]:
    """Enumerate isomorphisms q1 -> q2 carrying relations onto relations.

    Vertex bijections are found by backtracking with arrow-multiplicity
    pruning; parallel arrows are then matched by permutation.
    """
    if (
        len(q1.vertices) != len(q2.vertices)
        or len(q1.arrows) != len(q2.arrows)
        or len(q1.relations) != len(q2.relations)
    ):
        return
    match = arrow_match or (lambda a, b: True)
    for vmap in _vertex_bijections(q1, q2):
        groups1: dict = {}
        for k, a in enumerate(q1.arrows):
            groups1.setdefault((a.source, a.target), []).append(k)
        groups2: dict = {}
        for k, a in enumerate(q2.arrows):
            groups2.setdefault((a.source, a.target), []).append(k)

        choices = []
        for (s, t), members in groups1.items():
            targets = groups2.get((vmap[s], vmap[t]), [])
            options = [
                dict(zip(members, perm))
                for perm in itertools.permutations(targets)
                if all(match(x, y) for x, y in zip(members, perm))
            ]
            if not options:
                break
            choices.append(options)
        else:
            for combo in itertools.product(*choices):
                amap = {}
                for part in combo:
                    amap.update(part)
                mapped = {(amap[x], amap[y]) for x, y in q1.relations}
                if mapped == set(q2.relations):
                    yield QuiverIsomorphism(vmap, amap)


def iso_with_relations(
    q1: QuiverWithRelations, q2: QuiverWithRelations, respect_degrees: bool = True
) -> QuiverIsomorphism | None:
    """First isomorphism found, or None.

    With respect_degrees, two arrows may correspond only if their degrees agree
    or one of them carries no degree.
    """
    def same_degree(x: int, y: int) -> bool:
        d1, d2 = q1.arrows[x].degree, q2.arrows[y].degree
        return d1 is None or d2 is None or d1 == d2

    return next(isomorphisms(q1, q2, same_degree if respect_degrees else None), None)


def is_gentle(q: QuiverWithRelations) -> bool:
    """Gentle: at most two arrows in and out per vertex, and for each arrow
    at most one relation-free and one relation continuation on either side."""
    if q.linear_relations:
        return False
    for v in q.vertices:
        if len(q.in_arrows(v)) > 2 or len(q.out_arrows(v)) > 2:
            return False
    for k, a in enumerate(q.arrows):
        before = q.in_arrows(a.source)
        after = q.out_arrows(a.target)
        if sum((x, k) in q.relations for x in before) > 1:
            return False
        if sum((x, k) not in q.relations for x in before) > 1:
            return False
        if sum((k, y) in q.relations for y in after) > 1:
            return False
        if sum((k, y) not in q.relations for y in after) > 1:
            return False
    return True
