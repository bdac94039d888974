"""Superquivers: Hom-Ext quivers with degree-graded and frozen arrows.

An arrow of a Hom-Ext quiver is frozen when both of its endpoints are
regular modules.  Two superquivers are twist equivalent when they are
isomorphic as quivers with relations by a bijection that sends frozen arrows
to frozen arrows of the same degree; unfrozen degrees are ignored.
"""

import itertools
import logging
from dataclasses import dataclass, field

from .errors import InconsistentAssignment, WindowExhausted
from .homext import HomExtQuiver, ModuleSet, build_algebraic, build_geometric
from .oracle import GradedEndomorphisms
from .quiver import Arrow, QuiverWithRelations, isomorphisms
from .strings import ARComponent, StringModule, classify
from .twist import twist_equivalent

# Module logger
logger = logging.getLogger("atilde_exceptional.superquiver")


@dataclass(frozen=True)
class Superquiver:
    quiver: QuiverWithRelations
    frozen: frozenset[int] = frozenset()

    def __post_init__(self):
        q = self.quiver
        if any(a.degree is None for a in q.arrows):
            raise ValueError("Every superquiver arrow needs a degree")
        if any(k >= len(q.arrows) or k < 0 for k in self.frozen):
            raise ValueError("Frozen arrow index out of range")
        for x, y in q.composable_pairs():
            if q.arrows[x].degree + q.arrows[y].degree >= 2 and (x, y) not in q.relations:
                raise ValueError(
                    f"Path {q.arrows[x].name}.{q.arrows[y].name} has degree 2 but is not a relation"
                )

    def to_dict(self) -> dict:
        entry = self.quiver.to_dict()
        entry["frozen"] = sorted(self.frozen)
        return entry


def from_homext(q: HomExtQuiver, components: dict | None = None) -> Superquiver:
    """Superquiver of a Hom-Ext quiver; frozen arrows join two regular modules."""
    if components is None:
        components = {
            m.label: classify(m) for m in q.modules if isinstance(m, StringModule)
        }
    regular = {label for label, c in components.items() if ARComponent(c).is_regular}
    frozen = frozenset(
        k for k, a in enumerate(q.quiver.arrows) if a.source in regular and a.target in regular
    )
    return Superquiver(q.quiver, frozen)


def trivial_twist(s: Superquiver) -> Superquiver:
    """All unfrozen arrows moved to degree 0; frozen arrows keep their degrees."""
    q = s.quiver
    arrows = tuple(
        a if k in s.frozen else Arrow(a.source, a.target, 0, a.name) for k, a in enumerate(q.arrows)
    )
    return Superquiver(QuiverWithRelations(q.vertices, arrows, q.relations, q.linear_relations), s.frozen)


def twist_equivalent_super(s1: Superquiver, s2: Superquiver) -> bool:
    if len(s1.frozen) != len(s2.frozen):
        return False

    def frozen_match(x: int, y: int) -> bool:
        if (x in s1.frozen) != (y in s2.frozen):
            return False
        return x not in s1.frozen or s1.quiver.arrows[x].degree == s2.quiver.arrows[y].degree

    return next(isomorphisms(s1.quiver, s2.quiver, frozen_match), None) is not None


# ============================================================================
# Representations
# ============================================================================

@dataclass
class SuperRepresentation:
    """Module per vertex and an oracle element (Morphism or Extension) per arrow.

    Elements index modules by their position in spaces.reps; index maps a
    vertex label to that position.
    """

    spaces: GradedEndomorphisms
    index: dict
    maps: dict[int, object] = field(default_factory=dict)


def representation_from_homext(q: HomExtQuiver) -> SuperRepresentation:
    """The defining maps of an algebraically built Hom-Ext quiver."""
    if q.spaces is None:
        raise ValueError("Hom-Ext quiver carries no maps; build it with build_algebraic")
    index = {label: k for k, label in enumerate(q.quiver.vertices)}
    return SuperRepresentation(q.spaces, index, dict(enumerate(q.arrow_elements)))


def _check_assignment(s: Superquiver, r: SuperRepresentation) -> None:
    for k, a in enumerate(s.quiver.arrows):
        if k not in r.maps:
            raise InconsistentAssignment(f"No map assigned to arrow {a.name or k}")
        x = r.maps[k]
        if (x.source, x.target) != (r.index.get(a.source), r.index.get(a.target)):
            raise InconsistentAssignment(f"Map of arrow {a.name or k} has the wrong endpoints")
        if x.degree != a.degree:
            raise InconsistentAssignment(f"Map of arrow {a.name or k} has degree {x.degree}, arrow has {a.degree}")


def check_representation(s: Superquiver, r: SuperRepresentation) -> bool:
    """Assigned maps are nonzero and every relation evaluates to zero."""
    _check_assignment(s, r)
    spaces = r.spaces
    for k, x in r.maps.items():
        if spaces.is_zero(x):
            logger.debug(f"Arrow {s.quiver.arrows[k].name or k} is assigned a zero map")
            return False
    for first, second in s.quiver.relations:
        comp = spaces.compose(r.maps[first], r.maps[second])
        if not spaces.is_zero(comp):
            logger.debug(f"Relation ({first}, {second}) does not vanish")
            return False
    return True


def is_irreducible(s: Superquiver, r: SuperRepresentation) -> bool:
    """No assigned map lies in the square of the graded radical."""
    _check_assignment(s, r)
    return not any(r.spaces.in_reduced(x) for x in r.maps.values())


def super_of(chi, algebraic: bool = False) -> Superquiver:
    chi = ModuleSet.of(chi)
    return from_homext(build_algebraic(chi) if algebraic else build_geometric(chi))


def converse_report(sets, window: int = 3) -> dict:
    """Pairs whose superquivers are twist equivalent but which no twist word relates.

    Purely experimental: such pairs are reported, never treated as failures.
    """
    sets = [ModuleSet.of(s) for s in sets]
    supers = [super_of(s) for s in sets]
    candidates, undetermined = [], []
    checked = 0
    for (a, sa), (b, sb) in itertools.combinations(zip(sets, supers), 2):
        if not twist_equivalent_super(sa, sb):
            continue
        checked += 1
        try:
            word = twist_equivalent(a, b, window)
        except WindowExhausted:
            undetermined.append([a.labels, b.labels])
            continue
        if word is None:
            candidates.append([a.labels, b.labels])
    logger.info(f"Converse check: {checked} super-equivalent pairs, {len(candidates)} without a twist")
    return {
        "super_equivalent_pairs": checked,
        "without_twist": candidates,
        "undetermined": undetermined,
    }
