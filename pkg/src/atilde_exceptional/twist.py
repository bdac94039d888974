"""Dehn twists of the annulus and twist-equivalence of exceptional sets.

T_L twists along the outer boundary: every outer endpoint of a lifted arc
moves to the previous outer marked point.  T_R twists along the inner
boundary: every inner endpoint moves to the next inner marked point.  On
string modules T_L acts as adding a hook at the start of preprojectives and
as tau^-1 on the left tube, while T_R is tau^-1 on the right tube.

Since T_L^q = T_R^p (q outer and p inner marked points), a word
T_L^a T_R^b is only defined up to adding (-q, p); canonical_word picks the
representative with 0 <= a < q.

Twists keep every arc's endpoints on their boundaries, so they never move
an arc from the outer tube to the inner one.  When p == q the annulus also
has an orientation preserving homeomorphism exchanging the two boundaries;
it comes from the quiver automorphism reversing the cycle and is the only
further symmetry needed to relate sets with isomorphic Hom-Ext quivers.
"""

import itertools
import logging
from dataclasses import dataclass, field

from .annulus import (
    ArcDiagram,
    clockwise_from,
    from_chord,
    intersect_nontrivially,
    lift,
    phi,
    phi_inv,
)
from .errors import OracleMismatch, WindowExhausted
from .homext import ModuleSet, build_geometric, is_exceptional_collection
from .quiver import Orientation, iso_with_relations
from .strings import StringModule, exceptional_strings

# Module logger
logger = logging.getLogger("atilde_exceptional.twist")


def _step(eps: Orientation, x: int, delta: int, outer: bool) -> int:
    y = x + delta
    while eps.is_outer(y) != outer:
        y += delta
    return y


def _move(m: StringModule, outer_delta: int, inner_delta: int) -> StringModule:
    eps = m.orientation
    moved = []
    for x in lift(m):
        if eps.is_outer(x):
            moved.append(_step(eps, x, outer_delta, True) if outer_delta else x)
        else:
            moved.append(_step(eps, x, inner_delta, False) if inner_delta else x)
    return from_chord(eps, *moved)


def twist_L(m: StringModule) -> StringModule:
    return _move(m, -1, 0)


def twist_L_inv(m: StringModule) -> StringModule:
    return _move(m, 1, 0)


def twist_R(m: StringModule) -> StringModule:
    return _move(m, 0, 1)


def twist_R_inv(m: StringModule) -> StringModule:
    return _move(m, 0, -1)


def apply_word(m: StringModule, word: tuple[int, int]) -> StringModule:
    """T_L^a T_R^b applied to m; the two twists commute."""
    a, b = word
    for _ in range(abs(a)):
        m = twist_L(m) if a > 0 else twist_L_inv(m)
    for _ in range(abs(b)):
        m = twist_R(m) if b > 0 else twist_R_inv(m)
    return m


def twist_set(chi, word: tuple[int, int]) -> ModuleSet:
    return ModuleSet.of(apply_word(m, word) for m in ModuleSet.of(chi))


def twist_diagram(d: ArcDiagram, word: tuple[int, int]) -> ArcDiagram:
    return ArcDiagram(d.orientation, tuple(phi(apply_word(phi_inv(a), word)) for a in d.arcs))


def full_twist_exponents(eps: Orientation) -> tuple[int, int]:
    """(q, p): T_L^q = T_R^p."""
    return len(eps.outer_points), len(eps.inner_points)


def canonical_word(eps: Orientation, word: tuple[int, int]) -> tuple[int, int]:
    q, p = full_twist_exponents(eps)
    a, b = word
    k = a // q
    return (a - k * q, b + k * p)


# ============================================================================
# Exchanging the boundaries
# ============================================================================

def has_boundary_swap(eps: Orientation) -> bool:
    q, p = full_twist_exponents(eps)
    return q == p


def _rank(points: list[int], n: int, x: int) -> int:
    """Position of the lifted marked point x among the lifts of `points`."""
    k, rest = divmod(x - 1, n)
    return k * len(points) + points.index(rest + 1)


def _point(points: list[int], n: int, rank: int) -> int:
    k, idx = divmod(rank, len(points))
    return points[idx] + k * n


def swap_boundaries(m: StringModule) -> StringModule:
    """Image of m under the half turn of the strip exchanging the boundaries.

    The k-th lifted outer point goes to the (-k)-th lifted inner point and
    vice versa; reading the strip boundary as one circle this is a rotation,
    so clockwise order at every marked point is kept.
    """
    eps = m.orientation
    if not has_boundary_swap(eps):
        raise ValueError(f"{eps} has {len(eps.outer_points)} outer and {len(eps.inner_points)} inner points")
    outer, inner = eps.outer_points, eps.inner_points
    moved = []
    for x in lift(m):
        if eps.is_outer(x):
            moved.append(_point(inner, eps.n, -_rank(outer, eps.n, x)))
        else:
            moved.append(_point(outer, eps.n, -_rank(inner, eps.n, x)))
    return from_chord(eps, *moved)


def swap_set(chi) -> ModuleSet:
    return ModuleSet.of(swap_boundaries(m) for m in ModuleSet.of(chi))


# ============================================================================
# Relating two sets
# ============================================================================

@dataclass(frozen=True)
class Relation:
    """chi2 is T_L^a T_R^b of chi1, after exchanging the boundaries when `swapped`."""

    word: tuple[int, int]
    swapped: bool = False

    def to_dict(self) -> dict:
        return {"word": list(self.word), "swapped": self.swapped}


def _search_word(chi1: ModuleSet, chi2: ModuleSet, window: int) -> tuple[int, int] | None:
    eps = chi1.orientation
    q, p = full_twist_exponents(eps)
    words = sorted(
        itertools.product(range(-window * q, window * q + 1), range(-window * p, window * p + 1)),
        key=lambda w: (abs(w[0]) + abs(w[1]), w),
    )
    for word in words:
        if twist_set(chi1, word) == chi2:
            return canonical_word(eps, word)
    return None


def find_relation(chi1, chi2, window: int = 3) -> Relation | None:
    """Twist word, possibly after the boundary swap, carrying chi1 to chi2.

    A found relation is cross-checked against isomorphism of the Hom-Ext
    quivers; when nothing is found but the quivers are isomorphic
    WindowExhausted is raised instead of answering None.
    """
    chi1, chi2 = ModuleSet.of(chi1), ModuleSet.of(chi2)
    found = None
    word = _search_word(chi1, chi2, window)
    if word is not None:
        found = Relation(word)
    elif has_boundary_swap(chi1.orientation):
        word = _search_word(swap_set(chi1), chi2, window)
        if word is not None:
            found = Relation(word, swapped=True)
    iso = iso_with_relations(build_geometric(chi1).quiver, build_geometric(chi2).quiver, respect_degrees=False)
    if found is not None:
        if iso is None:
            raise OracleMismatch(f"{found} relates {chi1.labels} and {chi2.labels} but their quivers differ")
        return found
    if iso is not None:
        raise WindowExhausted(
            f"Nothing within {window} full twists relates {chi1.labels} and {chi2.labels}"
        )
    return None


def twist_equivalent(chi1, chi2, window: int = 3) -> tuple[int, int] | None:
    """Word w with twist_set(chi1, w) == chi2, searched within `window` full twists.

    Pairs related only through the boundary swap answer None; they are
    isomorphic without being twist equivalent.
    """
    relation = find_relation(chi1, chi2, window)
    if relation is None:
        return None
    if relation.swapped:
        logger.debug(f"{relation} needs the boundary swap, so it is not a twist")
        return None
    return relation.word


# ============================================================================
# Enumeration and classification
# ============================================================================

def enumerate_exceptional_sets(eps: Orientation, max_winding: int) -> list[ModuleSet]:
    """Complete exceptional sets of strings with l <= max_winding."""
    candidates = exceptional_strings(eps, max_winding)
    arcs = {m: phi(m) for m in candidates}
    compatible = {}
    for x, y in itertools.combinations(candidates, 2):
        ok = not intersect_nontrivially(arcs[x], arcs[y])
        if ok:
            ok = not (clockwise_from(arcs[x], arcs[y]) and clockwise_from(arcs[y], arcs[x]))
        compatible[(x, y)] = compatible[(y, x)] = ok

    found = []

    def extend(chosen: list, start: int):
        if len(chosen) == eps.n:
            if is_exceptional_collection(chosen):
                found.append(ModuleSet.of(chosen))
            return
        for k in range(start, len(candidates)):
            m = candidates[k]
            if all(compatible[(m, c)] for c in chosen):
                extend(chosen + [m], k + 1)

    extend([], 0)
    logger.info(f"Found {len(found)} complete exceptional sets over {eps} with l <= {max_winding}")
    return found


def full_twist_normal_form(chi, reach: int = 4) -> ModuleSet:
    """Representative of chi modulo the full twist T_R^p, minimizing total winding."""
    chi = ModuleSet.of(chi)
    _, p = full_twist_exponents(chi.orientation)

    def key(s: ModuleSet):
        return (sum(m.winding for m in s), [m.sort_key for m in s])

    return min((twist_set(chi, (0, k * p)) for k in range(-reach, reach + 1)), key=key)


def up_to_full_twist(sets) -> list[ModuleSet]:
    unique = {}
    for s in sets:
        form = full_twist_normal_form(s)
        unique.setdefault(form.modules, form)
    return sorted(unique.values(), key=lambda s: [m.sort_key for m in s])


@dataclass
class TwistClass:
    representative: ModuleSet
    members: list[ModuleSet] = field(default_factory=list)
    relations: list[Relation | None] = field(default_factory=list)

    @property
    def unjustified(self) -> list[ModuleSet]:
        """Members isomorphic to the representative with no relation found."""
        return [s for s, r in zip(self.members, self.relations) if r is None]

    def to_dict(self) -> dict:
        members = []
        for s, r in zip(self.members, self.relations):
            entry = {"modules": s.labels, "word": None, "swapped": None}
            if r is not None:
                entry.update(r.to_dict())
            members.append(entry)
        return {"representative": self.representative.labels, "members": members}


def relation_report(classes: list[TwistClass]) -> dict:
    """Counts of members reached by a twist, by the swap, or by nothing."""
    relations = [r for c in classes for r in c.relations]
    return {
        "classes": len(classes),
        "sets": len(relations),
        "twist_related": sum(1 for r in relations if r is not None and not r.swapped),
        "swap_related": sum(1 for r in relations if r is not None and r.swapped),
        "unjustified": [s.labels for c in classes for s in c.unjustified],
    }


def classify(sets, window: int = 3) -> list[TwistClass]:
    """Partition sets by isomorphism of their Hom-Ext quivers; each member
    records its relation to the representative, None when none is found."""
    classes: list[TwistClass] = []
    quivers: list = []
    for s in sets:
        s = ModuleSet.of(s)
        q = build_geometric(s).quiver
        for cls, rep_q in zip(classes, quivers):
            if iso_with_relations(rep_q, q, respect_degrees=False) is not None:
                cls.members.append(s)
                break
        else:
            classes.append(TwistClass(s, [s]))
            quivers.append(q)
    for cls in classes:
        for s in cls.members:
            try:
                cls.relations.append(find_relation(cls.representative, s, window))
            except WindowExhausted as e:
                logger.warning(str(e))
                cls.relations.append(None)
    logger.info(f"{len(classes)} twist classes among {sum(len(c.members) for c in classes)} sets")
    return classes
