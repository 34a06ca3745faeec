"""Finite semi-coarse spaces represented by their roof.

A finite roofed semi-coarse structure on ``X`` is the power set of a single
reflexive, symmetric relation on ``X`` (its roof), so a :class:`Space` is
just a vertex tuple plus that relation.  Everything here is immutable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product as _cartesian
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import InputError

Vertex = Hashable
Pair = tuple


def vertex_key(v):
    """Total order on mixed vertex identifiers: ints, then strings, then tuples."""
    if isinstance(v, bool):
        return (0, int(v))
    if isinstance(v, int):
        return (0, v)
    if isinstance(v, str):
        return (1, v)
    if isinstance(v, tuple):
        return (2, tuple(vertex_key(x) for x in v))
    return (3, repr(v))


def _pair_key(p):
    return (vertex_key(p[0]), vertex_key(p[1]))


@dataclass(frozen=True)
class Space:
    """A finite roofed semi-coarse space.

    ``vertices`` is kept sorted by :func:`vertex_key`; ``roof`` is a
    reflexive, symmetric set of ordered pairs.  Build instances through
    :func:`new_space` (or the other constructors) rather than directly.
    """

    vertices: tuple
    roof: frozenset = field(repr=False)

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise InputError("duplicate vertex identifiers")
        for u, v in self.roof:
            if u not in vs or v not in vs:
                raise InputError(f"roof pair {(u, v)!r} references an unknown vertex")
            if (v, u) not in self.roof:
                raise InputError(f"roof is not symmetric at {(u, v)!r}")
        for v in self.vertices:
            if (v, v) not in self.roof:
                raise InputError(f"roof is missing diagonal pair for {v!r}")

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self.index

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def neighbors(self) -> dict:
        """Closed neighbourhoods: ``neighbors[v]`` is ``{w : (v, w) in roof}``."""
        nb = {v: set() for v in self.vertices}
        for u, v in self.roof:
            nb[u].add(v)
        return {v: frozenset(s) for v, s in nb.items()}

    def related(self, u, v) -> bool:
        return (u, v) in self.roof

    def edges(self) -> list:
        """Off-diagonal roof pairs with ``u < v``, sorted."""
        out = [(u, v) for u, v in self.roof if vertex_key(u) < vertex_key(v)]
        out.sort(key=_pair_key)
        return out

    def sorted_roof(self) -> list:
        return sorted(self.roof, key=_pair_key)


@dataclass(frozen=True)
class VertexMap:
    """A total function between the vertex sets of two spaces."""

    source: Space
    target: Space
    images: tuple  # aligned with source.vertices

    def __post_init__(self):
        if len(self.images) != len(self.source.vertices):
            raise InputError("map is not total on the source vertices")
        for w in self.images:
            if w not in self.target.index:
                raise InputError(f"image vertex {w!r} is not in the target")

    @classmethod
    def from_mapping(cls, source: Space, target: Space, table: Mapping) -> "VertexMap":
        missing = [v for v in source.vertices if v not in table]
        if missing:
            raise InputError(f"map is undefined on {missing[0]!r}")
        return cls(source, target, tuple(table[v] for v in source.vertices))

    def __call__(self, v):
        return self.images[self.source.index[v]]

    def as_dict(self) -> dict:
        return dict(zip(self.source.vertices, self.images))

    def compose(self, other: "VertexMap") -> "VertexMap":
        """``other`` after ``self``."""
        if other.source != self.target:
            raise InputError("maps are not composable")
        return VertexMap(self.source, other.target, tuple(other(w) for w in self.images))


@dataclass(frozen=True)
class PointCloud:
    """Points in Euclidean space, optionally labelled.

    Coordinates are stored as exact :class:`~fractions.Fraction` values so
    that scale comparisons are reproducible; decimal strings convert exactly.
    """

    points: tuple
    labels: tuple | None = None

    def __post_init__(self):
        dims = {len(p) for p in self.points}
        if len(dims) > 1:
            raise InputError("points have mismatched dimensions")
        if self.labels is not None and len(self.labels) != len(self.points):
            raise InputError("label count does not match point count")

    @classmethod
    def from_coordinates(cls, points: Iterable[Sequence], labels=None) -> "PointCloud":
        pts = tuple(tuple(_exact(x) for x in p) for p in points)
        return cls(pts, None if labels is None else tuple(labels))

    def vertex_ids(self) -> tuple:
        return self.labels if self.labels is not None else tuple(range(len(self.points)))


def _exact(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError as exc:
            raise InputError(f"not a decimal number: {x!r}") from exc
    if isinstance(x, float) and not math.isfinite(x):
        raise InputError(f"non-finite coordinate {x!r}")
    return Fraction(x)


# -- constructors -----------------------------------------------------------

def _build(vertices: Iterable, pairs: Iterable) -> Space:
    vs = sorted(set(vertices), key=vertex_key)
    known = set(vs)
    roof = set()
    for p in pairs:
        u, v = p
        if u not in known or v not in known:
            bad = u if u not in known else v
            raise InputError(f"pair {(u, v)!r} references unknown vertex {bad!r}")
        roof.add((u, v))
        roof.add((v, u))
    roof.update((v, v) for v in vs)
    return Space(tuple(vs), frozenset(roof))


def new_space(vertices: Iterable, pairs: Iterable = ()) -> Space:
    """Space whose roof is ``pairs`` closed under inverses plus the diagonal."""
    return _build(vertices, pairs)


def from_graph(edges: Iterable, isolated: Iterable = ()) -> Space:
    """The roofed space generated by an undirected graph."""
    edges = [tuple(e) for e in edges]
    verts = set(isolated)
    for u, v in edges:
        verts.add(u)
        verts.add(v)
    return _build(verts, edges)


def from_point_cloud(cloud: PointCloud, r, strict: bool = False) -> Space:
    """Relate points at Euclidean distance ``<= r`` (``< r`` if ``strict``)."""
    r = _exact(r)
    if r < 0:
        raise InputError("scale r must be nonnegative")
    ids = cloud.vertex_ids()
    r2 = r * r
    pairs = []
    pts = cloud.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d2 = sum((a - b) ** 2 for a, b in zip(pts[i], pts[j]))
            if d2 < r2 or (not strict and d2 == r2):
                pairs.append((ids[i], ids[j]))
    return _build(ids, pairs)


def from_distance_matrix(matrix: Sequence[Sequence], r, strict: bool = False, labels=None) -> Space:
    """Like :func:`from_point_cloud` but for an arbitrary precomputed metric."""
    r = _exact(r)
    if r < 0:
        raise InputError("scale r must be nonnegative")
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise InputError("distance matrix is not square")
    ids = tuple(labels) if labels is not None else tuple(range(n))
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            d = _exact(matrix[i][j])
            if d < r or (not strict and d == r):
                pairs.append((ids[i], ids[j]))
    return _build(ids, pairs)


def cycle_space(n: int, m: int = 1) -> Space:
    """The circulant space on ``0..n-1`` with jumps ``1..m`` (``C_n`` when m=1)."""
    if n < 1 or m < 1:
        raise InputError("cycle_space needs n >= 1 and m >= 1")
    pairs = [(k, (k + i) % n) for k in range(n) for i in range(1, m + 1)]
    return _build(range(n), pairs)


def complete_space(vertices: Iterable) -> Space:
    vs = list(vertices)
    return _build(vs, [(u, v) for u in vs for v in vs])


def discrete_space(vertices: Iterable) -> Space:
    return _build(vertices, ())


# -- maps -------------------------------------------------------------------

def bornologous_witness(f: VertexMap):
    """First source roof pair whose image leaves the target roof, else None."""
    t = f.target.roof
    for u, v in f.source.sorted_roof():
        if (f(u), f(v)) not in t:
            return (u, v)
    return None


def is_bornologous(f: VertexMap) -> bool:
    t = f.target.roof
    return all((f(u), f(v)) in t for u, v in f.source.roof)


def identity_map(X: Space) -> VertexMap:
    return VertexMap(X, X, X.vertices)


def constant_map(X: Space, Y: Space, y) -> VertexMap:
    return VertexMap(X, Y, (y,) * len(X.vertices))


# -- constructions ----------------------------------------------------------

def subspace(X: Space, S: Iterable) -> Space:
    S = set(S)
    extra = S - set(X.vertices)
    if extra:
        raise InputError(f"not a subset of the vertices: {sorted(extra, key=vertex_key)[0]!r}")
    return Space(
        tuple(v for v in X.vertices if v in S),
        frozenset((u, v) for u, v in X.roof if u in S and v in S),
    )


def product_vertex(u, v) -> str:
    return f"{u}|{v}"


def product(X: Space, Y: Space, *, tuples: bool = False) -> Space:
    """Categorical product; its roof is the box product of the two roofs.

    Vertices are named ``"u|v"`` unless ``tuples`` is set, in which case the
    raw ``(u, v)`` tuples are used.
    """
    name = (lambda a, b: (a, b)) if tuples else product_vertex
    vertices = [name(a, b) for a, b in _cartesian(X.vertices, Y.vertices)]
    if len(set(vertices)) != len(vertices):
        raise InputError("product vertex names collide; pass tuples=True")
    roof = frozenset(
        (name(a, b), name(c, d)) for (a, c) in X.roof for (b, d) in Y.roof
    )
    return Space(tuple(sorted(vertices, key=vertex_key)), roof)


def quotient(X: Space, g: Mapping) -> Space:
    """Image structure ``(g x g)(roof)`` on the codomain of a surjection ``g``.

    ``g`` maps every vertex of ``X`` to a new identifier; the codomain is
    taken to be its image, so surjectivity holds by construction unless a
    ``codomain`` is supplied through :func:`quotient_onto`.
    """
    missing = [v for v in X.vertices if v not in g]
    if missing:
        raise InputError(f"quotient map undefined on {missing[0]!r}")
    return _build({g[v] for v in X.vertices}, ((g[u], g[v]) for u, v in X.roof))


def quotient_onto(X: Space, g: Mapping, codomain: Iterable) -> Space:
    codomain = set(codomain)
    image = {g[v] for v in X.vertices if v in g}
    if image - codomain:
        raise InputError("quotient map leaves the declared codomain")
    if codomain - image:
        missed = sorted(codomain - image, key=vertex_key)[0]
        raise InputError(f"quotient map is not surjective: {missed!r} has no preimage")
    return quotient(X, g)


def union_vertex(i: int, v) -> str:
    return f"{i}:{v}"


def disjoint_union(spaces: Sequence[Space]) -> Space:
    verts = []
    roof = set()
    for i, X in enumerate(spaces):
        verts.extend(union_vertex(i, v) for v in X.vertices)
        roof.update((union_vertex(i, u), union_vertex(i, v)) for u, v in X.roof)
    return Space(tuple(sorted(verts, key=vertex_key)), frozenset(roof))


def compose_relation(A: Iterable, B: Iterable) -> set:
    """Set product ``A o B = {(x, z) : (x, y) in A, (y, z) in B}``."""
    by_first = {}
    for y, z in B:
        by_first.setdefault(y, []).append(z)
    return {(x, z) for x, y in A for z in by_first.get(y, ())}


def set_product_extension(X: Space) -> Space:
    return Space(X.vertices, frozenset(compose_relation(X.roof, X.roof)))


def coarse_completion_steps(X: Space) -> tuple[Space, int]:
    """Iterate ``R <- R u (R o R)`` to its fixpoint; return it with the step count."""
    roof = set(X.roof)
    steps = 0
    while True:
        grown = roof | compose_relation(roof, roof)
        if len(grown) == len(roof):
            return Space(X.vertices, frozenset(roof)), steps
        roof = grown
        steps += 1


def coarse_completion(X: Space) -> Space:
    return coarse_completion_steps(X)[0]


def is_coarse(X: Space) -> bool:
    """True when the roof is closed under set product (transitive)."""
    return compose_relation(X.roof, X.roof) <= X.roof


def components(X: Space) -> list[list]:
    """Connected components, each sorted, ordered by their least vertex."""
    seen = set()
    out = []
    nb = X.neighbors
    for v in X.vertices:
        if v in seen:
            continue
        comp = []
        stack = [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in nb[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comp.sort(key=vertex_key)
        out.append(comp)
    return out


# -- graphs and semi-uniform structures ---------------------------------------

@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: vertices and 2-element edge sets."""

    vertices: tuple
    edges: frozenset


def to_graph(X: Space) -> Graph:
    """Forget the structure down to a graph (the functor Space -> Graph)."""
    return Graph(X.vertices, frozenset(frozenset(p) for p in X.roof if p[0] != p[1]))


def from_graph_object(G: Graph) -> Space:
    """The roofed space of a :class:`Graph` (inverse of :func:`to_graph`)."""
    return _build(G.vertices, (tuple(e) for e in G.edges))


@dataclass(frozen=True)
class CementedSemiUniform:
    """A cemented semi-uniform structure, i.e. the filter of all supersets of
    ``foundation``.  Finite filters of this kind are determined by it."""

    vertices: tuple
    foundation: frozenset

    def contains(self, entourage: Iterable) -> bool:
        return self.foundation <= set(entourage)

    def base(self) -> list[frozenset]:
        return [self.foundation]


def to_semi_uniform(X: Space) -> CementedSemiUniform:
    """Upward closure of the structure: all supersets of the roof."""
    return CementedSemiUniform(X.vertices, X.roof)


def from_semi_uniform(U: CementedSemiUniform) -> Space:
    """Downward closure: subsets of the intersection of all entourages."""
    foundation = frozenset.intersection(*U.base()) if U.base() else frozenset()
    return Space(U.vertices, foundation)


def roof_foundation_roundtrip(X: Space) -> Space:
    return from_semi_uniform(to_semi_uniform(X))
