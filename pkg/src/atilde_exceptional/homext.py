"""Hom-Ext quivers of collections of modules, exceptional sets and orderings.

Two constructions are provided.  The geometric one reads arrows off the fans
of the arc diagram and takes an arrow's degree from whether Hom or Ext is
nonzero.  The algebraic one works with matrices: arrows X_i -> X_j are a
basis of Hom modulo rHom (degree 0) and of Ext modulo its reduced span
(degree 1), and a length-two path is a relation when the composite of the
chosen representatives vanishes.  For exceptional collections of string
modules the two agree up to isomorphism.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache

import networkx as nx
from sympy.polys.domains import QQ

from .annulus import diagram_from_modules, diagram_violations, tiling_algebra
from .errors import (
    CyclicQuiver,
    NotAString,
    NotExceptional,
    OracleMismatch,
    OrderingCapExceeded,
    WrongCardinality,
)
from .oracle import GradedEndomorphisms, MatrixRepresentation, Morphism, realize
from .quiver import Arrow, QuiverEquivalence, QuiverWithRelations, quotient_quiver
from .string_hom import dim_ext, dim_hom, graph_maps
from .strings import BandPower, StringModule, is_exceptional

# Module logger
logger = logging.getLogger("atilde_exceptional.homext")


# ============================================================================
# Module sets
# ============================================================================

@dataclass(frozen=True)
class ModuleSet:
    """Finite set of distinct string modules over one orientation, sorted by (i, j, l)."""

    modules: tuple[StringModule, ...]

    def __post_init__(self):
        if not self.modules:
            raise ValueError("A module set needs at least one module")
        for m in self.modules:
            if isinstance(m, BandPower):
                raise NotAString(f"{m.label} is a band, not a string module")
        if len({m.orientation for m in self.modules}) != 1:
            raise ValueError("All modules must share one orientation")
        if len(set(self.modules)) != len(self.modules):
            raise ValueError("Module set contains a repeated module")

    @classmethod
    def of(cls, modules) -> "ModuleSet":
        if isinstance(modules, ModuleSet):
            return modules
        return cls(tuple(sorted(modules, key=lambda m: m.sort_key)))

    @property
    def orientation(self):
        return self.modules[0].orientation

    @property
    def labels(self) -> list[str]:
        return [m.label for m in self.modules]

    def __len__(self) -> int:
        return len(self.modules)

    def __iter__(self):
        return iter(self.modules)


@dataclass
class HomExtQuiver:
    """Hom-Ext quiver: vertices are module labels, arrows carry degrees.

    arrow_elements is filled by the algebraic construction: the Morphism or
    Extension chosen for each arrow, indexed into `modules`.
    """

    quiver: QuiverWithRelations
    modules: tuple = ()
    arrow_elements: tuple = ()
    spaces: GradedEndomorphisms | None = field(default=None, repr=False)

    @property
    def labels(self) -> tuple:
        return self.quiver.vertices

    def to_dict(self) -> dict:
        return self.quiver.to_dict()


# ============================================================================
# Geometric construction
# ============================================================================

def _arrow_degree(src: StringModule, tgt: StringModule) -> int:
    if dim_hom(src, tgt) > 0:
        return 0
    if dim_ext(src, tgt) > 0:
        return 1
    raise OracleMismatch(f"Fan arrow {src.label} -> {tgt.label} with Hom and Ext both zero")


def build_geometric(chi) -> HomExtQuiver:
    """Hom-Ext quiver from the fans of the arc diagram of an exceptional collection."""
    chi = ModuleSet.of(chi)
    for m in chi:
        if not is_exceptional(m):
            raise NotExceptional(f"{m.label} has self-extensions")
    diagram = diagram_from_modules(chi)
    problems = diagram_violations(diagram)
    if problems:
        raise NotExceptional("; ".join(problems))
    tiling = tiling_algebra(diagram)
    by_arc = {arc.label: m for arc, m in zip(diagram.arcs, chi)}
    arrows = tuple(
        Arrow(
            by_arc[a.source].label,
            by_arc[a.target].label,
            _arrow_degree(by_arc[a.source], by_arc[a.target]),
            a.name,
        )
        for a in tiling.arrows
    )
    quiver = QuiverWithRelations(tuple(m.label for m in chi), arrows, tiling.relations)
    logger.debug(f"Geometric Hom-Ext quiver of {chi.labels}: {len(arrows)} arrows")
    return HomExtQuiver(quiver, chi.modules)


# ============================================================================
# Algebraic construction
# ============================================================================

def graph_map_morphism(
    spaces: GradedEndomorphisms, i: int, j: int, src: MatrixRepresentation, tgt: MatrixRepresentation, g
) -> Morphism:
    """Matrix form of a graph map: position p of E in the source goes to the
    matching position of E in the target."""
    K = spaces.K
    blocks = spaces.zero_blocks(spaces.hom_shapes(i, j))
    q, s = g.quotient, g.submodule
    for offset in range(q.e_length + 1):
        v, col = src.positions[q.first + offset]
        w, row = tgt.positions[s.first + offset]
        if v != w:
            raise OracleMismatch(f"Graph map {g} pairs different vertices")
        blocks[v][row][col] = K.one
    return Morphism(i, j, blocks)


def _label_of(m) -> str:
    return m.label if m.label else repr(m)


def build_algebraic(chi, field=None, labels=None) -> HomExtQuiver:
    """Hom-Ext quiver computed with the linear-algebra oracle.

    chi may hold string modules (realized in the walk basis, graph maps used
    as Hom representatives) or MatrixRepresentations of any acyclic quiver.
    Proportional nonzero composites of distinct length-two paths are
    recorded as linear relations and logged.
    """
    field = field or QQ
    members = list(chi.modules) if isinstance(chi, ModuleSet) else list(chi)
    strings = all(isinstance(m, StringModule) for m in members)
    if strings:
        members = list(ModuleSet.of(members).modules)
    reps = [realize(m) if isinstance(m, StringModule) else m for m in members]
    names = list(labels) if labels else [_label_of(r) for r in reps]
    if len(set(names)) != len(names):
        raise ValueError("Vertex labels must be distinct")

    candidates = None
    if strings:
        def candidates(i, j):
            return [
                graph_map_morphism(spaces, i, j, reps[i], reps[j], g)
                for g in graph_maps(members[i], members[j])
            ]

    spaces = GradedEndomorphisms(reps, field, candidates)
    chosen = spaces.arrow_elements()

    arrows, elements = [], []
    for (i, j), picks in sorted(chosen.items()):
        for k, x in enumerate(picks):
            kind = "h" if x.degree == 0 else "e"
            arrows.append(Arrow(names[i], names[j], x.degree, f"{kind}{i}.{j}.{k}"))
            elements.append(x)

    relations = set()
    nonzero: dict = {}
    for x, a in enumerate(elements):
        for y, b in enumerate(elements):
            if a.target != b.source:
                continue
            comp = spaces.compose(a, b)
            if spaces.is_zero(comp):
                relations.add((x, y))
            else:
                nonzero.setdefault((a.source, b.target, comp.degree), []).append(((x, y), comp))

    linear = []
    for (i, k, degree), paths in nonzero.items():
        for (p1, c1), (p2, c2) in itertools.combinations(paths, 2):
            if spaces.proportional(c1, c2):
                logger.warning(
                    f"Paths {arrows[p1[0]].name}.{arrows[p1[1]].name} and "
                    f"{arrows[p2[0]].name}.{arrows[p2[1]].name} have proportional composites"
                )
                linear.append((p1, p2))

    quiver = QuiverWithRelations(tuple(names), tuple(arrows), frozenset(relations), tuple(linear))
    logger.debug(f"Algebraic Hom-Ext quiver: {len(arrows)} arrows, {len(relations)} relations")
    return HomExtQuiver(quiver, tuple(members), tuple(elements), spaces)


def derived_quiver(chi, field=None) -> HomExtQuiver:
    """Hom quiver of chi together with its shift: every extension X -> Y
    becomes a morphism X -> Sigma Y."""
    base = build_algebraic(chi, field)
    q = base.quiver
    shifted = tuple(f"S{v}" for v in q.vertices)
    arrows = []
    for a in q.arrows:
        if a.degree == 0:
            arrows.append(Arrow(a.source, a.target, 0, a.name))
            arrows.append(Arrow(f"S{a.source}", f"S{a.target}", 0, f"S{a.name}"))
        else:
            arrows.append(Arrow(a.source, f"S{a.target}", 1, a.name))
    index = {}
    pos = 0
    for k, a in enumerate(q.arrows):
        index[k] = [pos, pos + 1] if a.degree == 0 else [pos]
        pos += len(index[k])
    relations = set()
    for x, y in q.relations:
        for u in index[x]:
            for v in index[y]:
                if arrows[u].target == arrows[v].source:
                    relations.add((u, v))
    return HomExtQuiver(
        QuiverWithRelations(q.vertices + shifted, tuple(arrows), frozenset(relations)),
        base.modules,
    )


def derived_equivalence(derived: HomExtQuiver) -> QuiverEquivalence:
    """Identify each vertex with its shift and each arrow with its shifted copy."""
    q = derived.quiver
    half = len(q.vertices) // 2
    vertex_classes = tuple(
        frozenset({q.vertices[k], q.vertices[k + half]}) for k in range(half)
    )
    by_name: dict = {}
    for k, a in enumerate(q.arrows):
        by_name.setdefault(a.name.removeprefix("S"), set()).add(k)
    return QuiverEquivalence(vertex_classes, tuple(frozenset(v) for v in by_name.values()))


def quotient_of_derived(chi, field=None) -> QuiverWithRelations:
    derived = derived_quiver(chi, field)
    return quotient_quiver(derived.quiver, derived_equivalence(derived))


# ============================================================================
# Exceptional sets, posets and orderings
# ============================================================================

def is_exceptional_set(chi, field=None) -> bool:
    """Complete collection whose algebraic Hom-Ext quiver has no loops or cycles."""
    chi = ModuleSet.of(chi)
    if len(chi) != chi.orientation.n:
        raise WrongCardinality(f"Expected {chi.orientation.n} modules, got {len(chi)}")
    # a self-extension would be a degree-1 loop
    if not all(is_exceptional(m) for m in chi):
        return False
    return not build_algebraic(chi, field).quiver.has_oriented_cycle()


def is_exceptional_collection(chi) -> bool:
    """Any-size test on dimensions alone: no self-extensions and no cycle of
    nonzero Hom or Ext between the members."""
    chi = ModuleSet.of(chi)
    if not all(is_exceptional(m) for m in chi):
        return False
    g = nx.DiGraph()
    g.add_nodes_from(chi.modules)
    for x, y in itertools.permutations(chi.modules, 2):
        if dim_hom(x, y) or dim_ext(x, y):
            g.add_edge(x, y)
    return nx.is_directed_acyclic_graph(g)


def ext_poset(q: QuiverWithRelations) -> nx.DiGraph:
    """Partial order generated by the arrows: edge x -> y iff x <= y, x != y."""
    g = nx.DiGraph()
    g.add_nodes_from(q.vertices)
    g.add_edges_from((a.source, a.target) for a in q.arrows if a.source != a.target)
    if any(a.source == a.target for a in q.arrows) or not nx.is_directed_acyclic_graph(g):
        raise CyclicQuiver("The arrows do not generate a partial order")
    return nx.transitive_closure_dag(g)


def count_linear_extensions(q: QuiverWithRelations) -> int:
    """Linear extensions of the arrow order, by dynamic programming over down-sets."""
    poset = ext_poset(q)
    nodes = list(q.vertices)
    position = {v: k for k, v in enumerate(nodes)}
    below = [0] * len(nodes)
    for x, y in poset.edges:
        below[position[y]] |= 1 << position[x]
    full = (1 << len(nodes)) - 1

    @lru_cache(maxsize=None)
    def count(placed: int) -> int:
        if placed == full:
            return 1
        total = 0
        for k in range(len(nodes)):
            bit = 1 << k
            if not placed & bit and below[k] & placed == below[k]:
                total += count(placed | bit)
        return total

    return count(0)


def linear_extensions(q: QuiverWithRelations) -> list[tuple]:
    """All linear extensions, sources first, in lexicographic vertex order."""
    poset = ext_poset(q)
    return [tuple(order) for order in nx.all_topological_sorts(poset)]


def is_exceptional_sequence(seq) -> bool:
    """Hom(E_j, E_i) = Ext(E_j, E_i) = 0 for i < j and every E_i exceptional."""
    if not all(is_exceptional(m) for m in seq):
        return False
    return all(
        dim_hom(seq[j], seq[i]) == 0 and dim_ext(seq[j], seq[i]) == 0
        for i in range(len(seq))
        for j in range(i + 1, len(seq))
    )


def exceptional_orderings(chi, cap: int = 10) -> list[tuple[StringModule, ...]]:
    """All orderings of chi that are exceptional sequences, by brute force."""
    chi = ModuleSet.of(chi)
    if len(chi) > cap:
        raise OrderingCapExceeded(f"{len(chi)} modules exceed the ordering cap of {cap}")
    logger.debug(f"Checking {math.factorial(len(chi))} orderings of {chi.labels}")
    return [seq for seq in itertools.permutations(chi.modules) if is_exceptional_sequence(seq)]


def completions(seq, position: int, candidates) -> list[StringModule]:
    """Modules X among candidates with seq[:position] + (X,) + seq[position+1:] exceptional."""
    head, tail = tuple(seq[:position]), tuple(seq[position + 1:])
    return [
        x for x in candidates
        if x not in head + tail and is_exceptional_sequence(head + (x,) + tail)
    ]
