"""Arc model of string modules on the marked annulus.

Marked point x lies on the outer boundary when eps_x is '+' and on the inner
boundary otherwise.  Arcs are handled through a lift to the universal cover
(a strip): the string (i, j; l) lifts to the chord from x_s = i to
x_e = i + 1 + L, where L is its walk length.  Deck transformations shift
both endpoints by multiples of n.

Around a marked point p the other endpoints of the arcs at p are read
clockwise; consecutive arcs A_k, A_{k+1} of such a fan give an arrow
A_{k+1} -> A_k.
"""

import itertools
import logging
import math
from dataclasses import dataclass

import networkx as nx

from .errors import ArcsCross, NotAString, NotComplete, NotExceptional, WrongCardinality
from .quiver import Arrow, Orientation, QuiverWithRelations
from .strings import ARComponent, BandPower, StringModule, classify, from_span

# Module logger
logger = logging.getLogger("atilde_exceptional.annulus")


# ============================================================================
# Surface data
# ============================================================================

@dataclass(frozen=True)
class MarkedAnnulus:
    orientation: Orientation

    @property
    def outer(self) -> list[int]:
        return self.orientation.outer_points

    @property
    def inner(self) -> list[int]:
        return self.orientation.inner_points


@dataclass(frozen=True)
class Arc:
    """Arc from marked point i to j with signed winding count lam."""

    orientation: Orientation
    i: int
    j: int
    lam: int = 0

    @property
    def is_bridging(self) -> bool:
        return self.orientation.sign(self.i) != self.orientation.sign(self.j)

    @property
    def is_loop(self) -> bool:
        return self.i == self.j

    @property
    def support(self) -> list[int]:
        """Marked points i+1, ..., j passed by the arc, read cyclically."""
        eps = self.orientation
        length = (self.j - self.i - 1) % eps.n + 1
        return [eps.wrap(self.i + k) for k in range(1, length + 1)]

    @property
    def label(self) -> str:
        return f"a({self.i},{self.j})[{self.lam}]"

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class ClosedCurve:
    """Closed curve around the core winding `winding` times."""

    orientation: Orientation
    winding: int


@dataclass(frozen=True)
class ArcDiagram:
    orientation: Orientation
    arcs: tuple[Arc, ...]

    def __len__(self) -> int:
        return len(self.arcs)

    def __iter__(self):
        return iter(self.arcs)


# ============================================================================
# The bijection between strings and arcs
# ============================================================================

def phi(m: "StringModule | BandPower") -> Arc:
    """Arc of a string module; preinjective windings are negated."""
    if isinstance(m, BandPower):
        raise NotAString("Bands correspond to closed curves, use psi")
    lam = -m.winding if classify(m) is ARComponent.PREINJECTIVE else m.winding
    return Arc(m.orientation, m.i, m.j, lam)


def phi_inv(a: Arc) -> StringModule:
    eps = a.orientation
    preinjective = eps.sign(a.i) == "-" and eps.sign(a.j) == "+"
    winding = -a.lam if preinjective else a.lam
    if winding < 0:
        raise ValueError(f"Arc {a} has a winding sign that matches no string module")
    return StringModule(eps, a.i, a.j, winding)


def psi(b: BandPower) -> ClosedCurve:
    return ClosedCurve(b.orientation, b.power)


def lift(m: "StringModule | Arc") -> tuple[int, int]:
    """Chord (x_s, x_e) of the canonical lift."""
    if isinstance(m, Arc):
        m = phi_inv(m)
    return (m.i, m.i + 1 + m.length)


def from_chord(eps: Orientation, x: int, y: int) -> StringModule:
    """String module whose lift is the chord between x and y (any order)."""
    a, b = sorted((x, y))
    if a == b:
        raise ValueError("A chord needs two distinct endpoints")
    return from_span(eps, a + 1, b - a - 1)


def diagram_from_modules(modules) -> ArcDiagram:
    modules = list(modules)
    if not modules:
        raise ValueError("Empty collection")
    return ArcDiagram(modules[0].orientation, tuple(phi(m) for m in modules))


# ============================================================================
# Intersections
# ============================================================================

def _circle_key(eps: Orientation, x: int) -> tuple[int, int]:
    """Position on the boundary of the strip read as one circle."""
    return (0, x) if eps.is_outer(x) else (1, -x)


def _chords_cross(eps: Orientation, c1: tuple[int, int], c2: tuple[int, int]) -> bool:
    if set(c1) & set(c2):
        return False
    lo, hi = sorted(_circle_key(eps, x) for x in c1)
    inside = [lo < _circle_key(eps, x) < hi for x in c2]
    return inside[0] != inside[1]


def _shift_range(n: int, c1: tuple[int, int], c2: tuple[int, int]) -> range:
    """Deck shifts k for which c2 + kn overlaps c1 in x-coordinates."""
    x1, y1 = sorted(c1)
    x2, y2 = sorted(c2)
    return range(math.floor((x1 - y2) / n) - 1, math.ceil((y1 - x2) / n) + 2)


def _shifted(c: tuple[int, int], k: int, n: int) -> tuple[int, int]:
    return (c[0] + k * n, c[1] + k * n)


def intersect_nontrivially(a1: Arc, a2: Arc) -> bool:
    """True iff some lifts of the two arcs cross in their interiors."""
    if a1 == a2:
        return self_intersects(a1)
    eps = a1.orientation
    c1, c2 = lift(a1), lift(a2)
    return any(
        _chords_cross(eps, c1, _shifted(c2, k, eps.n)) for k in _shift_range(eps.n, c1, c2)
    )


def self_intersects(a: Arc) -> bool:
    eps = a.orientation
    c = lift(a)
    return any(
        _chords_cross(eps, c, _shifted(c, k, eps.n)) for k in _shift_range(eps.n, c, c) if k
    )


# ============================================================================
# Fans and clockwise order
# ============================================================================

def _fan_entries(arcs, p: int) -> list[tuple[tuple[int, int], Arc]]:
    if not arcs:
        return []
    eps = arcs[0].orientation
    outer = eps.is_outer(p)
    entries = []
    for arc in arcs:
        chord = lift(arc)
        for here, other in (chord, chord[::-1]):
            if eps.wrap(here) != p:
                continue
            o = other + (p - here)
            if outer:
                if eps.is_outer(o):
                    key = (0, o) if o > p else (2, o)
                else:
                    key = (1, -o)
            else:
                if not eps.is_outer(o):
                    key = (0, -o) if o < p else (2, -o)
                else:
                    key = (1, o)
            entries.append((key, arc))
    entries.sort(key=lambda e: e[0])
    return entries


def complete_fan(d: ArcDiagram, p: int) -> list[Arc]:
    """Arcs of d ending at p, in clockwise order."""
    return [arc for _, arc in _fan_entries(list(d.arcs), p)]


def clockwise_from(a1: Arc, a2: Arc) -> bool:
    """True iff at some shared endpoint a1 immediately follows a2 clockwise."""
    if intersect_nontrivially(a1, a2):
        raise ArcsCross(f"{a1} and {a2} intersect")
    shared = {a1.i, a1.j} & {a2.i, a2.j}
    for p in shared:
        fan = [arc for _, arc in _fan_entries([a1, a2], p)]
        for prev, nxt in zip(fan, fan[1:]):
            if prev == a2 and nxt == a1:
                return True
    return False


def clockwise_graph(arcs) -> nx.DiGraph:
    """Edge a1 -> a2 whenever a1 is clockwise from a2."""
    arcs = list(arcs)
    g = nx.DiGraph()
    g.add_nodes_from(arcs)
    for a1, a2 in itertools.permutations(arcs, 2):
        if clockwise_from(a1, a2):
            g.add_edge(a1, a2)
    return g


def forms_cycle(arcs) -> bool:
    return not nx.is_directed_acyclic_graph(clockwise_graph(arcs))


def diagram_violations(d: ArcDiagram) -> list[str]:
    """Reasons why d fails to be exceptional (empty when it is)."""
    problems = []
    arcs = list(d.arcs)
    if len(set(arcs)) != len(arcs):
        problems.append("repeated arc")
    for a in arcs:
        if a.is_loop:
            problems.append(f"{a} is a loop")
        elif self_intersects(a):
            problems.append(f"{a} intersects itself")
    crossing = False
    for a1, a2 in itertools.combinations(arcs, 2):
        if intersect_nontrivially(a1, a2):
            problems.append(f"{a1} and {a2} intersect")
            crossing = True
    if not crossing and not problems:
        g = clockwise_graph(arcs)
        if not nx.is_directed_acyclic_graph(g):
            cycle = nx.find_cycle(g)
            problems.append("arcs form a cycle: " + " -> ".join(str(e[0]) for e in cycle))
    return problems


def is_exceptional_diagram(d: ArcDiagram) -> bool:
    if len(d) != d.orientation.n:
        raise WrongCardinality(f"A complete diagram has {d.orientation.n} arcs, got {len(d)}")
    return not diagram_violations(d)


# ============================================================================
# Tiling algebra, heart and extended heart
# ============================================================================

def fan_arrows(d: ArcDiagram) -> list[tuple[Arc, Arc, int]]:
    """(source, target, marked point) for consecutive arcs of every fan."""
    arrows = []
    for p in range(1, d.orientation.n + 1):
        fan = complete_fan(d, p)
        for prev, nxt in zip(fan, fan[1:]):
            arrows.append((nxt, prev, p))
    return arrows


def tiling_algebra(d: ArcDiagram) -> QuiverWithRelations:
    """Fan quiver of d; a length-two path is a relation when its arrows come
    from different marked points."""
    problems = diagram_violations(d)
    if problems:
        raise NotExceptional("; ".join(problems))
    labels = {arc: arc.label for arc in d.arcs}
    found = fan_arrows(d)
    arrows = tuple(Arrow(labels[s], labels[t], name=f"p{p}") for s, t, p in found)
    points = [p for _, _, p in found]
    relations = frozenset(
        (x, y)
        for x, a in enumerate(arrows)
        for y, b in enumerate(arrows)
        if a.target == b.source and points[x] != points[y]
    )
    return QuiverWithRelations(tuple(labels[a] for a in d.arcs), arrows, relations)


def _closes_around(eps: Orientation, edges: list[tuple[int, int, int]]) -> bool:
    """edges form one simple cycle whose lift is displaced by n."""
    degree: dict = {}
    for u, v, _ in edges:
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
    if any(c != 2 for c in degree.values()):
        return False
    start = edges[0][0]
    current, total, used = start, 0, set()
    while len(used) < len(edges):
        for k, (u, v, w) in enumerate(edges):
            if k in used:
                continue
            if u == current:
                total, current = total + w, v
            elif v == current:
                total, current = total - w, u
            else:
                continue
            used.add(k)
            break
        else:
            return False
    return current == start and abs(total) == eps.n


def heart(d: ArcDiagram) -> frozenset[Arc]:
    """Fewest arcs of d forming a cycle around the core."""
    if len(d) != d.orientation.n or diagram_violations(d):
        raise NotComplete("The heart is defined for complete exceptional diagrams")
    eps = d.orientation
    edges = []
    for arc in d.arcs:
        x, y = lift(arc)
        if eps.wrap(x) != eps.wrap(y):
            edges.append((arc, (eps.wrap(x), eps.wrap(y), y - x)))
    for size in range(1, len(edges) + 1):
        found = [
            frozenset(arc for arc, _ in combo)
            for combo in itertools.combinations(edges, size)
            if _closes_around(eps, [e for _, e in combo])
        ]
        if found:
            if len(found) > 1:
                logger.warning(f"Diagram has {len(found)} minimal hearts, using the first")
            return found[0]
    raise NotComplete("No cycle of arcs goes around the core")


def extended_heart(d: ArcDiagram) -> frozenset[Arc]:
    """Heart plus every arc on a nonzero path between heart arcs."""
    h = heart(d)
    q = tiling_algebra(d)
    by_label = {arc.label: arc for arc in d.arcs}
    heart_labels = {arc.label for arc in h}
    keep = set(heart_labels)

    def walk(vertex, last_arrow, visited):
        for k in q.out_arrows(vertex):
            if last_arrow is not None and (last_arrow, k) in q.relations:
                continue
            nxt = q.arrows[k].target
            if nxt in heart_labels:
                keep.update(visited)
            else:
                walk(nxt, k, visited + [nxt])

    for label in heart_labels:
        walk(label, None, [])
    return frozenset(by_label[label] for label in keep)
