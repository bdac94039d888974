"""Exact linear-algebra oracle for representations of acyclic quivers.

Hom(M, N) is the kernel of the standard map

    delta: (+)_v Hom_k(M_v, N_v) -> (+)_a Hom_k(M_s(a), N_t(a)),
    (f_v) |-> (N_a f_s - f_t M_a),

and since path algebras are hereditary Ext^1(M, N) is its cokernel.  An
extension class is therefore represented by a cochain (one matrix per arrow)
modulo coboundaries.  All arithmetic is exact over QQ or a prime field, using
sympy's DomainMatrix.
"""

import logging
import math
from dataclasses import dataclass
from itertools import product
from typing import Callable, Hashable

import networkx as nx
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from .errors import CyclicQuiver, NegativeExt, OracleMismatch
from .quiver import QuiverWithRelations, build_atilde
from .strings import StringModule

# Module logger
logger = logging.getLogger("atilde_exceptional.oracle")


def field_for(mode: str = "rational", prime: int = 32003):
    """Coefficient field for a config field.mode."""
    if mode == "prime":
        return GF(prime)
    if mode != "rational":
        raise ValueError(f"Unknown field mode: {mode}")
    return QQ


def field_from_config(config) -> object:
    return field_for(config.field_mode, config.field_prime)


# ============================================================================
# Exact linear algebra helpers
# ============================================================================

def _rank(rows: list[list], ncols: int, K) -> int:
    if not rows or not ncols:
        return 0
    return DomainMatrix(rows, (len(rows), ncols), K).rank()


def _nullspace(rows: list[list], ncols: int, K) -> list[list]:
    """Rows form a basis of {x : rows * x = 0}."""
    if not ncols:
        return []
    if not rows:
        return [[K.one if c == r else K.zero for c in range(ncols)] for r in range(ncols)]
    return DomainMatrix(rows, (len(rows), ncols), K).nullspace().to_list()


def _matmul(a: list[list], b: list[list], rows: int, inner: int, cols: int, K) -> list[list]:
    out = [[K.zero] * cols for _ in range(rows)]
    for r in range(rows):
        for k in range(inner):
            x = a[r][k]
            if K.is_zero(x):
                continue
            for c in range(cols):
                out[r][c] += x * b[k][c]
    return out


class _Span:
    """Incrementally grown span of vectors with membership tests."""

    def __init__(self, K, size: int, vectors=()):
        self.K = K
        self.size = size
        self.vectors: list[list] = []
        self.rank = 0
        for v in vectors:
            self.add(v)

    def copy(self) -> "_Span":
        clone = _Span(self.K, self.size)
        clone.vectors = list(self.vectors)
        clone.rank = self.rank
        return clone

    def contains(self, v: list) -> bool:
        if all(self.K.is_zero(x) for x in v):
            return True
        return _rank(self.vectors + [v], self.size, self.K) == self.rank

    def add(self, v: list) -> bool:
        """Add v; True iff the span grew."""
        if self.contains(v):
            return False
        self.vectors.append(v)
        self.rank += 1
        return True


# ============================================================================
# Representations
# ============================================================================

@dataclass(frozen=True)
class MatrixRepresentation:
    """Representation with integer structure matrices.

    dims are aligned with quiver.vertices and maps with quiver.arrows; the map
    of an arrow s -> t is a dims[t] x dims[s] matrix given as rows.
    positions is filled for realized string modules: walk position k sits at
    basis vector positions[k] = (vertex index, index within that vertex).
    """

    quiver: QuiverWithRelations
    dims: tuple[int, ...]
    maps: tuple[tuple[tuple[int, ...], ...], ...]
    label: str = ""
    positions: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if len(self.dims) != len(self.quiver.vertices):
            raise ValueError("One dimension per vertex is required")
        if len(self.maps) != len(self.quiver.arrows):
            raise ValueError("One matrix per arrow is required")
        index = {v: k for k, v in enumerate(self.quiver.vertices)}
        for arrow, mat in zip(self.quiver.arrows, self.maps):
            rows, cols = self.dims[index[arrow.target]], self.dims[index[arrow.source]]
            if len(mat) != rows or any(len(row) != cols for row in mat):
                raise ValueError(f"Map of arrow {arrow.name or arrow} must be {rows}x{cols}")

    @classmethod
    def from_lists(cls, quiver: QuiverWithRelations, dims, maps, label: str = "") -> "MatrixRepresentation":
        """Build from a dict or sequence of dims and a dict (arrow index -> rows) or sequence of maps."""
        if isinstance(dims, dict):
            dims = [dims.get(v, 0) for v in quiver.vertices]
        dims = tuple(dims)
        index = {v: k for k, v in enumerate(quiver.vertices)}
        if isinstance(maps, dict):
            full = []
            for k, arrow in enumerate(quiver.arrows):
                if k in maps:
                    full.append(maps[k])
                else:
                    rows, cols = dims[index[arrow.target]], dims[index[arrow.source]]
                    full.append([[0] * cols for _ in range(rows)])
            maps = full
        return cls(quiver, dims, tuple(tuple(tuple(row) for row in m) for m in maps), label)

    @property
    def dimension(self) -> int:
        return sum(self.dims)


def realize(m: StringModule) -> MatrixRepresentation:
    """Matrix representation of a string module in the walk-position basis.

    A direct letter maps position k to k+1, an inverse letter maps k+1 to k.
    """
    eps = m.orientation
    quiver = build_atilde(eps).as_quiver()
    n = eps.n
    dims = [0] * n
    positions = []
    for k in range(m.length + 1):
        v = m.position_vertex(k) - 1
        positions.append((v, dims[v]))
        dims[v] += 1

    mats = []
    for arrow in quiver.arrows:
        rows, cols = dims[arrow.target - 1], dims[arrow.source - 1]
        mats.append([[0] * cols for _ in range(rows)])
    for k in range(m.length):
        arrow_index = eps.wrap(m.start + k) - 1
        here, there = positions[k][1], positions[k + 1][1]
        if m.letter_is_direct(k):
            mats[arrow_index][there][here] = 1
        else:
            mats[arrow_index][here][there] = 1
    return MatrixRepresentation(
        quiver,
        tuple(dims),
        tuple(tuple(tuple(row) for row in mat) for mat in mats),
        m.label,
        tuple(positions),
    )


# ============================================================================
# Morphisms and extensions
# ============================================================================

@dataclass
class Morphism:
    """Degree-0 element: one block per vertex (target dim x source dim)."""

    source: int
    target: int
    blocks: list[list[list]]
    degree = 0


@dataclass
class Extension:
    """Degree-1 element: a cochain, one block per arrow, taken modulo coboundaries."""

    source: int
    target: int
    blocks: list[list[list]]
    degree = 1


def _flatten(blocks) -> list:
    return [x for block in blocks for row in block for x in row]


def _unflatten(vec: list, shapes: list[tuple[int, int]]) -> list[list[list]]:
    blocks, pos = [], 0
    for rows, cols in shapes:
        block = []
        for _ in range(rows):
            block.append(list(vec[pos:pos + cols]))
            pos += cols
        blocks.append(block)
    return blocks


class GradedEndomorphisms:
    """Hom and Ext between the members of a finite family of representations.

    Elements between members i and j are Morphism/Extension objects whose
    source and target are indices into the family.  The reduced spans are
    the degree-0 and degree-1 parts of rad^2 of the graded endomorphism ring
    of the direct sum.
    """

    def __init__(
        self,
        reps: list[MatrixRepresentation],
        field=QQ,
        hom_candidates: Callable[[int, int], list[Morphism]] | None = None,
    ):
        if not reps:
            raise ValueError("At least one representation is required")
        quiver = reps[0].quiver
        if any(r.quiver != quiver for r in reps):
            raise ValueError("All representations must share one quiver")
        self.reps = list(reps)
        self.quiver = quiver
        self.K = field
        self._hom_candidates = hom_candidates
        index = {v: k for k, v in enumerate(quiver.vertices)}
        self._ends = [(index[a.source], index[a.target]) for a in quiver.arrows]
        self._maps = [
            [[[field.convert(x) for x in row] for row in mat] for mat in rep.maps] for rep in reps
        ]
        self._systems: dict = {}
        self._hom: dict = {}
        self._rad: dict = {}
        self._cob: dict = {}
        self._ext: dict = {}
        self._rhom: dict = {}
        self._rext: dict = {}

    def __len__(self) -> int:
        return len(self.reps)

    # -- shapes --------------------------------------------------------------

    def hom_shapes(self, i: int, j: int) -> list[tuple[int, int]]:
        return [(nd, md) for md, nd in zip(self.reps[i].dims, self.reps[j].dims)]

    def ext_shapes(self, i: int, j: int) -> list[tuple[int, int]]:
        return [(self.reps[j].dims[t], self.reps[i].dims[s]) for s, t in self._ends]

    def zero_blocks(self, shapes):
        return [[[self.K.zero] * cols for _ in range(rows)] for rows, cols in shapes]

    # -- the delta system ----------------------------------------------------

    def system(self, i: int, j: int) -> tuple[list[list], int]:
        """(rows of delta, number of variables); one row per cochain entry."""
        if (i, j) in self._systems:
            return self._systems[(i, j)]
        K = self.K
        M, N = self.reps[i].dims, self.reps[j].dims
        offsets, nvars = [], 0
        for v in range(len(M)):
            offsets.append(nvars)
            nvars += N[v] * M[v]
        rows = []
        for a, (s, t) in enumerate(self._ends):
            Ma, Na = self._maps[i][a], self._maps[j][a]
            for r in range(N[t]):
                for c in range(M[s]):
                    row = [K.zero] * nvars
                    for k in range(N[s]):
                        row[offsets[s] + k * M[s] + c] += Na[r][k]
                    for k in range(M[t]):
                        row[offsets[t] + r * M[t] + k] -= Ma[k][c]
                    rows.append(row)
        self._systems[(i, j)] = (rows, nvars)
        return rows, nvars

    def hom_basis(self, i: int, j: int) -> list[Morphism]:
        if (i, j) not in self._hom:
            rows, nvars = self.system(i, j)
            shapes = self.hom_shapes(i, j)
            self._hom[(i, j)] = [
                Morphism(i, j, _unflatten(vec, shapes)) for vec in _nullspace(rows, nvars, self.K)
            ]
        return self._hom[(i, j)]

    def hom_dim(self, i: int, j: int) -> int:
        rows, nvars = self.system(i, j)
        return nvars - _rank(rows, nvars, self.K)

    def cochain_size(self, i: int, j: int) -> int:
        return len(self.system(i, j)[0])

    def ext_dim(self, i: int, j: int) -> int:
        rows, nvars = self.system(i, j)
        return len(rows) - _rank(rows, nvars, self.K)

    def coboundaries(self, i: int, j: int) -> _Span:
        if (i, j) not in self._cob:
            rows, nvars = self.system(i, j)
            columns = [[row[u] for row in rows] for u in range(nvars)]
            self._cob[(i, j)] = _Span(self.K, len(rows), columns)
        return self._cob[(i, j)]

    def ext_basis(self, i: int, j: int) -> list[Extension]:
        """Unit cochains independent modulo coboundaries."""
        if (i, j) not in self._ext:
            span = self.coboundaries(i, j).copy()
            basis = []
            for vec in self.unit_cochains(i, j):
                if span.add(vec):
                    basis.append(Extension(i, j, _unflatten(vec, self.ext_shapes(i, j))))
            self._ext[(i, j)] = basis
        return self._ext[(i, j)]

    def unit_cochains(self, i: int, j: int) -> list[list]:
        size = self.cochain_size(i, j)
        K = self.K
        return [[K.one if c == k else K.zero for c in range(size)] for k in range(size)]

    # -- radical -------------------------------------------------------------

    def eigenvalue(self, x: Morphism) -> object:
        """Scalar lam with x - lam nilpotent; End(X_i) is local for indecomposable X_i.

        Read off the characteristic polynomial (t - lam)^e of the smallest
        nonzero vertex block: with j the largest power of the characteristic
        dividing e, its coefficient of t^(e-j) is binom(e, j) (-lam)^j, and
        lam^j = lam in a prime field.
        """
        K = self.K
        block = min((b for b in x.blocks if b), key=len)
        e = len(block)
        j, char = 1, K.characteristic()
        while char and e % (j * char) == 0:
            j *= char
        coeffs = DomainMatrix(block, (e, e), K).charpoly()
        return K.quo(coeffs[j], K.convert(math.comb(e, j) * (-1) ** j))

    def rad_basis(self, i: int) -> list[Morphism]:
        """Basis of the nilpotent endomorphisms, the radical of the local ring End(X_i)."""
        if i not in self._rad:
            basis = self.hom_basis(i, i)
            values = [[self.eigenvalue(b) for b in basis]]
            shapes = self.hom_shapes(i, i)
            rad = []
            for coeffs in _nullspace(values, len(basis), self.K):
                vec = [self.K.zero] * len(_flatten(basis[0].blocks))
                for c, b in zip(coeffs, basis):
                    for k, x in enumerate(_flatten(b.blocks)):
                        vec[k] += c * x
                rad.append(Morphism(i, i, _unflatten(vec, shapes)))
            self._rad[i] = rad
        return self._rad[i]

    def radical_hom(self, i: int, j: int) -> list[Morphism]:
        return self.hom_basis(i, j) if i != j else self.rad_basis(i)

    # -- composition ---------------------------------------------------------

    def compose(self, x, y):
        """Path x then y; None when both have degree one (the product vanishes)."""
        if x.target != y.source:
            raise ValueError("Elements are not composable")
        K = self.K
        i, j, k = x.source, x.target, y.target
        Mi, Mj, Mk = self.reps[i].dims, self.reps[j].dims, self.reps[k].dims
        if isinstance(x, Morphism) and isinstance(y, Morphism):
            blocks = [
                _matmul(y.blocks[v], x.blocks[v], Mk[v], Mj[v], Mi[v], K) for v in range(len(Mi))
            ]
            return Morphism(i, k, blocks)
        if isinstance(x, Extension) and isinstance(y, Morphism):
            blocks = [
                _matmul(y.blocks[t], x.blocks[a], Mk[t], Mj[t], Mi[s], K)
                for a, (s, t) in enumerate(self._ends)
            ]
            return Extension(i, k, blocks)
        if isinstance(x, Morphism) and isinstance(y, Extension):
            blocks = [
                _matmul(y.blocks[a], x.blocks[s], Mk[t], Mj[s], Mi[s], K)
                for a, (s, t) in enumerate(self._ends)
            ]
            return Extension(i, k, blocks)
        return None

    def is_zero(self, x) -> bool:
        if x is None:
            return True
        vec = _flatten(x.blocks)
        if isinstance(x, Morphism):
            return all(self.K.is_zero(c) for c in vec)
        return self.coboundaries(x.source, x.target).contains(vec)

    def proportional(self, x, y) -> bool:
        """Nonzero parallel elements of equal degree spanning a line (modulo coboundaries)."""
        v1, v2 = _flatten(x.blocks), _flatten(y.blocks)
        if isinstance(x, Morphism):
            return _rank([v1, v2], len(v1), self.K) == 1
        base = self.coboundaries(x.source, x.target)
        extended = base.copy()
        extended.add(v1)
        return extended.contains(v2)

    # -- reduced spans (rad^2) -----------------------------------------------

    def reduced_hom_span(self, i: int, j: int) -> _Span:
        """Composites through other members and with radical endomorphisms."""
        if (i, j) not in self._rhom:
            span = _Span(self.K, self.system(i, j)[1])
            for q in range(len(self)):
                if q in (i, j):
                    continue
                for f, g in product(self.hom_basis(i, q), self.hom_basis(q, j)):
                    span.add(_flatten(self.compose(f, g).blocks))
            for r, h in product(self.rad_basis(i), self.radical_hom(i, j)):
                span.add(_flatten(self.compose(r, h).blocks))
            for h, r in product(self.radical_hom(i, j), self.rad_basis(j)):
                span.add(_flatten(self.compose(h, r).blocks))
            self._rhom[(i, j)] = span
        return self._rhom[(i, j)]

    def reduced_ext_span(self, i: int, j: int) -> _Span:
        """Coboundaries plus pullbacks and pushforwards through other members
        and along radical endomorphisms."""
        if (i, j) not in self._rext:
            span = self.coboundaries(i, j).copy()
            for q in range(len(self)):
                if q in (i, j):
                    continue
                for f, xi in product(self.hom_basis(i, q), self.ext_basis(q, j)):
                    span.add(_flatten(self.compose(f, xi).blocks))
                for xi, g in product(self.ext_basis(i, q), self.hom_basis(q, j)):
                    span.add(_flatten(self.compose(xi, g).blocks))
            for r, xi in product(self.rad_basis(i), self.ext_basis(i, j)):
                span.add(_flatten(self.compose(r, xi).blocks))
            for xi, r in product(self.ext_basis(i, j), self.rad_basis(j)):
                span.add(_flatten(self.compose(xi, r).blocks))
            self._rext[(i, j)] = span
        return self._rext[(i, j)]

    def rhom_dim(self, i: int, j: int) -> int:
        return self.reduced_hom_span(i, j).rank

    def hom_arrow_count(self, i: int, j: int) -> int:
        return len(self.radical_hom(i, j)) - self.rhom_dim(i, j)

    def reduced_ext_dim(self, i: int, j: int) -> int:
        """dim Ext(X_i, X_j) modulo its reduced span: the number of degree-1 arrows."""
        return self.cochain_size(i, j) - self.reduced_ext_span(i, j).rank

    def in_reduced(self, x) -> bool:
        vec = _flatten(x.blocks)
        if isinstance(x, Morphism):
            return self.reduced_hom_span(x.source, x.target).contains(vec)
        return self.reduced_ext_span(x.source, x.target).contains(vec)

    # -- arrow representatives -----------------------------------------------

    def _candidates(self, i: int, j: int) -> list:
        if self._hom_candidates is not None:
            homs = self._hom_candidates(i, j)
            if i == j:
                homs = [h for h in homs if self.K.is_zero(self.eigenvalue(h))]
        else:
            homs = self.radical_hom(i, j)
        shapes = self.ext_shapes(i, j)
        exts = [Extension(i, j, _unflatten(v, shapes)) for v in self.unit_cochains(i, j)]
        return [x for x in homs + exts if not self.in_reduced(x)]

    def arrow_elements(self) -> dict[tuple[int, int], list]:
        """Representatives of Hom/rHom and Ext/rExt for every ordered pair.

        Natural candidates (supplied maps and unit cochains) are preferred in
        order of how many zero composites they make with neighbouring
        candidates, so that relations come out monomial.
        """
        m = len(self)
        pools = {(i, j): self._candidates(i, j) for i in range(m) for j in range(m)}

        def score(x) -> int:
            zeros = 0
            for k in range(m):
                for y in pools[(x.target, k)]:
                    comp = self.compose(x, y)
                    if comp is not None and self.is_zero(comp):
                        zeros += 1
                for w in pools[(k, x.source)]:
                    comp = self.compose(w, x)
                    if comp is not None and self.is_zero(comp):
                        zeros += 1
            return zeros

        chosen = {}
        for (i, j), pool in pools.items():
            picks = []
            for degree in (0, 1):
                if degree == 0:
                    target = self.hom_arrow_count(i, j)
                    base = self.reduced_hom_span(i, j)
                else:
                    target = self.reduced_ext_dim(i, j)
                    base = self.reduced_ext_span(i, j)
                span = base.copy()
                ranked = sorted(
                    (x for x in pool if x.degree == degree), key=score, reverse=True
                )
                count = 0
                for x in ranked:
                    if count == target:
                        break
                    if span.add(_flatten(x.blocks)):
                        picks.append(x)
                        count += 1
                if count != target:
                    raise OracleMismatch(
                        f"Only {count} of {target} degree-{degree} arrows {i}->{j} found among candidates"
                    )
            chosen[(i, j)] = picks
        return chosen


# ============================================================================
# Projective presentations
# ============================================================================

def projective_dimension_vectors(quiver: QuiverWithRelations) -> dict:
    """dim P(v) at w = number of paths v -> w."""
    g = quiver.to_digraph()
    if not nx.is_directed_acyclic_graph(g):
        raise CyclicQuiver("Projective dimension vectors need an acyclic quiver")
    counts: dict = {}
    for v in reversed(list(nx.topological_sort(g))):
        vec = {w: 0 for w in quiver.vertices}
        vec[v] += 1
        for _, u, _ in g.out_edges(v, keys=True):
            for w, c in counts[u].items():
                vec[w] += c
        counts[v] = vec
    return {v: tuple(counts[v][w] for w in quiver.vertices) for v in quiver.vertices}


@dataclass(frozen=True)
class DifferentialTerm:
    """One summand of d on the generators e_t(a) (x) M_s(a) of P1.

    It sends e_t(a) (x) m to sign * path (x) matrix(m) inside P(vertex) (x) M_vertex,
    where path (arrow indices) runs from vertex to t(a) and matrix is M_s(a) -> M_vertex.
    """

    arrow: int
    vertex: Hashable
    path: tuple[int, ...]
    sign: int
    matrix: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ProjectivePresentation:
    """0 -> (+)_a P(t(a)) (x) M_s(a) -> (+)_v P(v) (x) M_v -> M -> 0."""

    top: dict
    relations: dict
    exact: bool
    differential: tuple[DifferentialTerm, ...] = ()


def _identity(size: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(r == c) for c in range(size)) for r in range(size))


def projective_presentation(rep: MatrixRepresentation) -> ProjectivePresentation:
    """Standard presentation; d(e_t(a) (x) m) = a (x) m - e_t(a) (x) M_a(m)."""
    quiver = rep.quiver
    index = {v: k for k, v in enumerate(quiver.vertices)}
    top = {v: rep.dims[index[v]] for v in quiver.vertices}
    relations = {v: 0 for v in quiver.vertices}
    differential = []
    for k, a in enumerate(quiver.arrows):
        relations[a.target] += rep.dims[index[a.source]]
        differential.append(
            DifferentialTerm(k, a.source, (k,), 1, _identity(rep.dims[index[a.source]]))
        )
        differential.append(DifferentialTerm(k, a.target, (), -1, rep.maps[k]))
    pdims = projective_dimension_vectors(quiver)
    total = [0] * len(quiver.vertices)
    for v in quiver.vertices:
        for w in range(len(total)):
            total[w] += top[v] * pdims[v][w] - relations[v] * pdims[v][w]
    exact = tuple(total) == rep.dims
    if not exact:
        logger.warning(f"Presentation of {rep.label or 'representation'} fails the dimension check")
    return ProjectivePresentation(top, relations, exact, tuple(differential))


# ============================================================================
# Module-level entry points
# ============================================================================

def _as_rep(m) -> MatrixRepresentation:
    return realize(m) if isinstance(m, StringModule) else m


def hom_basis(M, N, field=QQ) -> list[Morphism]:
    return GradedEndomorphisms([_as_rep(M), _as_rep(N)], field).hom_basis(0, 1)


def hom_dim(M, N, field=QQ) -> int:
    return GradedEndomorphisms([_as_rep(M), _as_rep(N)], field).hom_dim(0, 1)


def euler_form(d, e, quiver: QuiverWithRelations) -> int:
    """<d, e> = sum_v d_v e_v - sum_a d_s(a) e_t(a)."""
    index = {v: k for k, v in enumerate(quiver.vertices)}
    value = sum(x * y for x, y in zip(d, e))
    for a in quiver.arrows:
        value -= d[index[a.source]] * e[index[a.target]]
    return value


def _path_matrix(rep: MatrixRepresentation, path: tuple[int, ...], start, K) -> list[list]:
    """rep along the arrows of path, read from the vertex start."""
    index = {v: k for k, v in enumerate(rep.quiver.vertices)}
    size = rep.dims[index[start]]
    mat = [[K.one if r == c else K.zero for c in range(size)] for r in range(size)]
    for k in path:
        a = rep.quiver.arrows[k]
        s, t = index[a.source], index[a.target]
        step = [[K.convert(x) for x in row] for row in rep.maps[k]]
        mat = _matmul(step, mat, rep.dims[t], rep.dims[s], size, K)
    return mat


def ext_dim_cokernel(M, N, field=QQ) -> int:
    """dim Ext(M, N) as the cokernel of Hom(d, N): Hom(P0, N) -> Hom(P1, N).

    Hom(P(v) (x) M_v, N) is Hom_k(M_v, N_v) by evaluation at e_v, so a term
    path (x) matrix of d sends f_v to N_path f_v matrix.
    """
    M, N = _as_rep(M), _as_rep(N)
    if M.quiver != N.quiver:
        raise ValueError("Both representations must share one quiver")
    K = field
    presentation = projective_presentation(M)
    if not presentation.exact:
        raise OracleMismatch(f"No exact presentation of {M.label or 'representation'}")
    quiver = M.quiver
    index = {v: k for k, v in enumerate(quiver.vertices)}
    ends = [(index[a.source], index[a.target]) for a in quiver.arrows]
    offsets, size = [], 0
    for s, t in ends:
        offsets.append(size)
        size += N.dims[t] * M.dims[s]

    evaluated = [
        (term, _path_matrix(N, term.path, term.vertex, K), [[K.convert(x) for x in row] for row in term.matrix])
        for term in presentation.differential
    ]
    columns = []
    for v in quiver.vertices:
        terms = [e for e in evaluated if e[0].vertex == v]
        for r in range(N.dims[index[v]]):
            for c in range(M.dims[index[v]]):
                column = [K.zero] * size
                for term, path_map, matrix in terms:
                    s, t = ends[term.arrow]
                    sign = K.convert(term.sign)
                    for x in range(N.dims[t]):
                        if K.is_zero(path_map[x][r]):
                            continue
                        for y in range(M.dims[s]):
                            column[offsets[term.arrow] + x * M.dims[s] + y] += sign * path_map[x][r] * matrix[c][y]
                columns.append(column)
    return size - _rank(columns, size, K)


def ext_dim(M, N, field=QQ) -> int:
    """dim Ext via the Euler form: dim Hom(M, N) - <dim M, dim N>."""
    M, N = _as_rep(M), _as_rep(N)
    hom = hom_dim(M, N, field)
    value = hom - euler_form(M.dims, N.dims, M.quiver)
    if value < 0:
        raise NegativeExt(f"Euler route gives dim Ext({M.label}, {N.label}) = {value}")
    return value


def pushforward(spaces: GradedEndomorphisms, xi: Extension, g: Morphism) -> Extension:
    return spaces.compose(xi, g)


def pullback(spaces: GradedEndomorphisms, xi: Extension, h: Morphism) -> Extension:
    return spaces.compose(h, xi)


def rhom_dim(family, i: int, j: int, field=QQ) -> int:
    return GradedEndomorphisms([_as_rep(m) for m in family], field).rhom_dim(i, j)


def reduced_ext_dim(family, i: int, j: int, field=QQ) -> int:
    return GradedEndomorphisms([_as_rep(m) for m in family], field).reduced_ext_dim(i, j)
