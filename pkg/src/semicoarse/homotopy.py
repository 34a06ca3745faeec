"""Discrete cubes, cube maps and homotopies between them.

Homotopies are finite lists of maps ("slices") in which consecutive slices
are one-step related: the map on ``domain x {0, 1}`` taking the first slice
at height 0 and the second at height 1 is bornologous for the product
structure.  Because the product roof is the box product, adjacency across
heights includes diagonal moves.
"""
from __future__ import annotations

import math
import random
from collections import OrderedDict, deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as _cartesian
from typing import Iterable, Sequence

from .core import (
    Space,
    VertexMap,
    cycle_space,
    is_coarse,
    vertex_key,
)
from .errors import BudgetExhausted, InputError, PreconditionError

RIGHT = 1
LEFT = -1


# -- cubes --------------------------------------------------------------------

@dataclass(frozen=True)
class Cube:
    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.m < 0:
            raise InputError(f"cube needs n >= 1 and m >= 0, got n={self.n}, m={self.m}")

    def points(self) -> tuple:
        return _cube_points(self.n, self.m)

    def space(self) -> Space:
        return cube_space(self.n, self.m)

    def __contains__(self, alpha) -> bool:
        return len(alpha) == self.n and all(0 <= a <= self.m for a in alpha)

    def boundary(self) -> frozenset:
        """Points with some coordinate equal to 0 or m."""
        return frozenset(p for p in self.points() if any(a in (0, self.m) for a in p))

    def open_box(self) -> frozenset:
        """Boundary minus the open face ``x_n = 0``."""
        m = self.m
        return frozenset(
            p for p in self.boundary()
            if p[-1] != 0 or any(a in (0, m) for a in p[:-1])
        )


@lru_cache(maxsize=64)
def _cube_points(n: int, m: int) -> tuple:
    return tuple(_cartesian(range(m + 1), repeat=n))


@lru_cache(maxsize=64)
def cube_space(n: int, m: int) -> Space:
    """``{0..m}^n`` with points related iff their sup-distance is at most 1."""
    if n < 1 or m < 0:
        raise InputError(f"cube needs n >= 1 and m >= 0, got n={n}, m={m}")
    pts = _cube_points(n, m)
    steps = list(_cartesian((-1, 0, 1), repeat=n))
    roof = set()
    for p in pts:
        for s in steps:
            q = tuple(a + b for a, b in zip(p, s))
            if all(0 <= c <= m for c in q):
                roof.add((p, q))
    return Space(pts, frozenset(roof))


@dataclass(frozen=True)
class CubeMap:
    """A map ``{0..m}^n -> target``; ``values`` follows lexicographic point order."""

    cube: Cube
    target: Space
    values: tuple

    def __post_init__(self):
        if len(self.values) != (self.cube.m + 1) ** self.cube.n:
            raise InputError("grid size does not match the cube")
        idx = self.target.index
        for v in self.values:
            if v not in idx:
                raise InputError(f"grid value {v!r} is not a target vertex")

    @classmethod
    def from_function(cls, cube: Cube, target: Space, fn) -> "CubeMap":
        return cls(cube, target, tuple(fn(p) for p in cube.points()))

    @classmethod
    def path(cls, target: Space, values: Sequence) -> "CubeMap":
        if not values:
            raise InputError("a path needs at least one value")
        return cls(Cube(1, len(values) - 1), target, tuple(values))

    @classmethod
    def constant(cls, cube: Cube, target: Space, v) -> "CubeMap":
        return cls(cube, target, (v,) * len(cube.points()))

    def __getitem__(self, alpha):
        if isinstance(alpha, int):
            alpha = (alpha,)
        return self.values[_flat_index(alpha, self.cube.m)]

    def as_dict(self) -> dict:
        return dict(zip(self.cube.points(), self.values))

    def as_vertex_map(self) -> VertexMap:
        return VertexMap(self.cube.space(), self.target, self.values)

    def is_bornologous(self) -> bool:
        return _bornologous_values(self.cube.space(), self.target, self.values)

    def grid_key(self):
        return tuple(vertex_key(v) for v in self.values)


def _flat_index(alpha, m: int) -> int:
    i = 0
    for a in alpha:
        if not 0 <= a <= m:
            raise InputError(f"point {alpha!r} is outside the cube of side {m}")
        i = i * (m + 1) + a
    return i


def _bornologous_values(dom: Space, tgt: Space, vals) -> bool:
    idx = dom.index
    roof = tgt.roof
    return all((vals[idx[u]], vals[idx[v]]) in roof for u, v in dom.roof)


# -- elementary operations ----------------------------------------------------

def clamp(f: CubeMap, m_new: int) -> CubeMap:
    """Extend ``f`` to side ``m_new`` by clamping coordinates above ``m`` to ``m``."""
    m = f.cube.m
    if m_new < m:
        raise InputError(f"cannot clamp side {m} down to {m_new}")
    if m_new == m:
        return f
    cube = Cube(f.cube.n, m_new)
    return CubeMap(cube, f.target, tuple(f[tuple(min(a, m) for a in p)] for p in cube.points()))


def star(f: CubeMap, g: CubeMap) -> CubeMap:
    """Concatenate ``f`` and ``g`` along the first axis."""
    if f.cube.n != g.cube.n:
        raise InputError("star needs maps of equal dimension")
    if f.target != g.target:
        raise InputError("star needs maps into the same space")
    n, m, mp = f.cube.n, f.cube.m, g.cube.m
    lo = min(m, mp)
    for rest in _cartesian(range(lo + 1), repeat=n - 1):
        if f[(m,) + rest] != g[(0,) + rest]:
            raise PreconditionError(
                f"gluing condition fails at {rest!r}: {f[(m,) + rest]!r} != {g[(0,) + rest]!r}",
                witness=rest,
            )
    cube = Cube(n, m + mp)

    def value(p):
        if p[0] <= m:
            return f[tuple(min(a, m) for a in p)]
        q = (p[0] - m,) + p[1:]
        return g[tuple(min(a, mp) for a in q)]

    out = CubeMap.from_function(cube, f.target, value)
    bad = _first_bad_pair(cube.space(), f.target, out.values)
    if bad is not None:
        raise PreconditionError(f"star product is not bornologous at {bad!r}", witness=bad)
    return out


def inverse_path(f: CubeMap) -> CubeMap:
    if f.cube.n != 1:
        raise InputError("inverse_path is defined for paths (n = 1) only")
    return CubeMap(f.cube, f.target, f.values[::-1])


def _first_bad_pair(dom: Space, tgt: Space, vals):
    idx = dom.index
    for u, v in dom.sorted_roof():
        if (vals[idx[u]], vals[idx[v]]) not in tgt.roof:
            return (u, v)
    return None


# -- one-step relation and homotopies -------------------------------------------

def _as_parts(h):
    """(domain space, target space, values) for a CubeMap or VertexMap."""
    if isinstance(h, CubeMap):
        return h.cube.space(), h.target, h.values
    if isinstance(h, VertexMap):
        return h.source, h.target, h.images
    raise InputError(f"expected a CubeMap or VertexMap, got {type(h).__name__}")


def _rebuild(like, values):
    if isinstance(like, CubeMap):
        return CubeMap(like.cube, like.target, tuple(values))
    return VertexMap(like.source, like.target, tuple(values))


def one_step_witness(f, g, fixed: Iterable = ()):
    """First obstruction to ``f`` and ``g`` being one-step related, else None.

    Returns ``("fixed", x)`` when the maps differ on a fixed point and
    ``("pair", x, y)`` when ``(f(x), g(y))`` leaves the target roof for
    domain-adjacent ``x, y``.
    """
    dom, tgt, fv = _as_parts(f)
    dom2, tgt2, gv = _as_parts(g)
    if dom != dom2 or tgt != tgt2:
        raise InputError("maps have different domains or targets")
    idx = dom.index
    for x in sorted(fixed, key=vertex_key):
        if fv[idx[x]] != gv[idx[x]]:
            return ("fixed", x)
    roof = tgt.roof
    for x, y in dom.sorted_roof():
        if (fv[idx[x]], gv[idx[y]]) not in roof:
            return ("pair", x, y)
    return None


def one_step_related(f, g, fixed: Iterable = ()) -> bool:
    return one_step_witness(f, g, fixed) is None


@dataclass(frozen=True)
class Homotopy:
    """Finite homotopy certificate: consecutive slices are one-step related and
    agree on ``fixed``.  Outside the listed window the homotopy is constant."""

    slices: tuple
    fixed: frozenset = frozenset()

    @property
    def start(self):
        return self.slices[0]

    @property
    def end(self):
        return self.slices[-1]


def homotopy_witness(h: Homotopy):
    """``(slice_index, obstruction)`` for the first failing step, else None."""
    if not h.slices:
        raise InputError("homotopy has no slices")
    dom, tgt, _ = _as_parts(h.slices[0])
    for s in h.slices[1:]:
        d2, t2, _ = _as_parts(s)
        if d2 != dom or t2 != tgt:
            raise InputError("homotopy slices have mismatched domains or targets")
    for i, s in enumerate(h.slices):
        d, t, vals = _as_parts(s)
        bad = _first_bad_pair(d, t, vals)
        if bad is not None:
            return (i, ("not-bornologous",) + bad)
    for i in range(len(h.slices) - 1):
        w = one_step_witness(h.slices[i], h.slices[i + 1], h.fixed)
        if w is not None:
            return (i, w)
    return None


def verify_homotopy(h: Homotopy) -> bool:
    return homotopy_witness(h) is None


# -- breadth-first homotopy search ----------------------------------------------

class _MapGraph:
    """Lazily expanded graph of bornologous maps under the one-step relation."""

    def __init__(self, dom: Space, tgt: Space, fixed_idx: frozenset):
        self.dom = dom
        self.tgt = tgt
        self.fixed_idx = fixed_idx
        idx = dom.index
        verts = dom.vertices
        adj = [[] for _ in verts]
        for u, v in dom.roof:
            adj[idx[u]].append(idx[v])
        self.adj = [sorted(a) for a in adj]
        self.prev_adj = [[j for j in a if j < i] for i, a in enumerate(self.adj)]
        self.tnb = tgt.neighbors
        self._cache = {}

    def neighbors(self, vals: tuple) -> tuple:
        hit = self._cache.get(vals)
        if hit is not None:
            return hit
        tnb = self.tnb
        cands = []
        for i, a in enumerate(self.adj):
            if i in self.fixed_idx:
                c = {vals[i]}
            else:
                c = set(tnb[vals[a[0]]])
                for j in a[1:]:
                    c &= tnb[vals[j]]
            cands.append(sorted(c, key=vertex_key))
        out = []
        cur = [None] * len(vals)
        prev = self.prev_adj
        n = len(vals)

        def rec(i):
            if i == n:
                out.append(tuple(cur))
                return
            for w in cands[i]:
                nw = tnb[w]
                if all(cur[j] in nw for j in prev[i]):
                    cur[i] = w
                    rec(i + 1)

        rec(0)
        res = tuple(out)
        self._cache[vals] = res
        return res

    def related(self, a: tuple, b: tuple) -> bool:
        roof = self.tgt.roof
        if any(a[i] != b[i] for i in self.fixed_idx):
            return False
        for i, nb in enumerate(self.adj):
            ai = a[i]
            for j in nb:
                if (ai, b[j]) not in roof:
                    return False
        return True


_GRAPHS: OrderedDict = OrderedDict()


def _map_graph(dom, tgt, fixed_idx) -> _MapGraph:
    key = (dom, tgt, fixed_idx)
    g = _GRAPHS.get(key)
    if g is None:
        g = _MapGraph(dom, tgt, fixed_idx)
        _GRAPHS[key] = g
        if len(_GRAPHS) > 6:
            _GRAPHS.popitem(last=False)
    else:
        _GRAPHS.move_to_end(key)
    return g


@dataclass(frozen=True)
class SearchResult:
    """Outcome of :func:`homotopic_search`.

    ``status`` is ``"certificate"`` (``homotopy`` is set), ``"distinct"``
    (every map reachable from ``f`` was enumerated without meeting ``g``;
    ``sides`` lists the cube sides at which this was established) or
    ``"exhausted"`` (the node budget ran out).
    """

    status: str
    homotopy: Homotopy | None
    explored: int
    sides: tuple = ()


def _resolve_fixed(f, fixed):
    if fixed is None:
        return frozenset()
    if isinstance(fixed, str):
        if not isinstance(f, CubeMap):
            raise InputError(f"named fixed set {fixed!r} needs a cube map")
        if fixed == "boundary":
            return f.cube.boundary()
        if fixed == "open-box":
            return f.cube.open_box()
        raise InputError(f"unknown fixed set {fixed!r}")
    return frozenset(fixed)


def _bfs(f, g, fixed_pts: frozenset, node_budget: int):
    dom, tgt, fv = _as_parts(f)
    _, _, gv = _as_parts(g)
    idx = dom.index
    fixed_idx = frozenset(idx[x] for x in fixed_pts)
    graph = _map_graph(dom, tgt, fixed_idx)
    if fv == gv:
        return [fv], 1
    parent = {fv: None}
    queue = deque([fv])
    while queue:
        cur = queue.popleft()
        if graph.related(cur, gv):
            parent[gv] = cur
            break
        for nxt in graph.neighbors(cur):
            if nxt in parent:
                continue
            parent[nxt] = cur
            if len(parent) > node_budget:
                return None, len(parent)
            queue.append(nxt)
    else:
        return [], len(parent)
    chain = [gv]
    while parent[chain[-1]] is not None:
        chain.append(parent[chain[-1]])
    chain.reverse()
    return chain, len(parent)


def reachable_maps(f, fixed=None, node_budget: int = 200_000) -> frozenset:
    """Value tuples of every map reachable from ``f`` by one-step moves.

    Raises :class:`BudgetExhausted` when the component has more than
    ``node_budget`` maps.
    """
    if node_budget <= 0:
        raise InputError("node_budget must be positive")
    dom, tgt, fv = _as_parts(f)
    idx = dom.index
    fixed_idx = frozenset(idx[x] for x in _resolve_fixed(f, fixed))
    graph = _map_graph(dom, tgt, fixed_idx)
    seen = {fv}
    queue = deque([fv])
    while queue:
        for nxt in graph.neighbors(queue.popleft()):
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > node_budget:
                    raise BudgetExhausted(f"reachable set exceeds node budget {node_budget}")
                queue.append(nxt)
    return frozenset(seen)


def homotopic_search(f, g, fixed=None, node_budget: int = 200_000,
                     revalidate: bool = True) -> SearchResult:
    """Breadth-first search for a homotopy from ``f`` to ``g``.

    ``fixed`` is a set of domain points held fixed, or for cube maps one of
    the names ``"boundary"`` and ``"open-box"``.  A ``"distinct"`` answer
    only holds at the given side; with ``revalidate`` (cube maps and named
    fixed sets only) the search is repeated once at double the side and a
    certificate found there is returned instead.
    """
    if node_budget <= 0:
        raise InputError("node_budget must be positive")
    fixed_pts = _resolve_fixed(f, fixed)
    for h in (f, g):
        d, t, vals = _as_parts(h)
        bad = _first_bad_pair(d, t, vals)
        if bad is not None:
            raise PreconditionError(f"input map is not bornologous at {bad!r}", witness=bad)
    _, _, fv = _as_parts(f)
    _, _, gv = _as_parts(g)
    dom = _as_parts(f)[0]
    for x in fixed_pts:
        if fv[dom.index[x]] != gv[dom.index[x]]:
            raise PreconditionError(f"maps differ on fixed point {x!r}", witness=x)

    chain, explored = _bfs(f, g, fixed_pts, node_budget)
    if chain is None:
        return SearchResult("exhausted", None, explored)
    if chain:
        slices = tuple(_rebuild(f, c) for c in chain)
        return SearchResult("certificate", Homotopy(slices, fixed_pts), explored)

    sides = (f.cube.m,) if isinstance(f, CubeMap) else ()
    if revalidate and isinstance(f, CubeMap) and isinstance(fixed, str) and f.cube.m > 0:
        m2 = 2 * f.cube.m
        f2, g2 = clamp(f, m2), clamp(g, m2)
        fixed2 = _resolve_fixed(f2, fixed)
        chain2, explored2 = _bfs(f2, g2, fixed2, node_budget)
        explored += explored2
        if chain2:
            slices = tuple(_rebuild(f2, c) for c in chain2)
            return SearchResult("certificate", Homotopy(slices, fixed2), explored)
        if chain2 == []:
            sides = sides + (m2,)
    return SearchResult("distinct", None, explored, sides)


# -- displacement moves ---------------------------------------------------------

@dataclass(frozen=True)
class Block:
    """Axis-aligned box ``prod [lo_i, hi_i]`` with a distinguished axis and a
    direction of motion (``RIGHT`` = +1 or ``LEFT`` = -1)."""

    bounds: tuple
    axis: int
    direction: int

    def __post_init__(self):
        if any(lo > hi for lo, hi in self.bounds):
            raise InputError("block bounds must satisfy lo <= hi")
        if not 0 <= self.axis < len(self.bounds):
            raise InputError("block axis out of range")
        if self.direction not in (LEFT, RIGHT):
            raise InputError("direction must be LEFT (-1) or RIGHT (+1)")

    def is_plate(self) -> bool:
        lo, hi = self.bounds[self.axis]
        return lo == hi

    def points(self) -> list:
        return list(_cartesian(*(range(lo, hi + 1) for lo, hi in self.bounds)))

    def plate(self, c: int) -> "Block":
        b = list(self.bounds)
        b[self.axis] = (c, c)
        return Block(tuple(b), self.axis, self.direction)

    def shifted(self, k: int) -> "Block":
        b = list(self.bounds)
        lo, hi = b[self.axis]
        d = k * self.direction
        b[self.axis] = (lo + d, hi + d)
        return Block(tuple(b), self.axis, self.direction)


def _check_block_inside(f: CubeMap, block: Block):
    if len(block.bounds) != f.cube.n:
        raise InputError("block dimension does not match the cube")
    if any(lo < 0 or hi > f.cube.m for lo, hi in block.bounds):
        raise InputError("block is not inside the cube")


def _shift(p, axis, d):
    q = list(p)
    q[axis] += d
    return tuple(q)


def plate_hypothesis_witness(f: CubeMap, plate: Block):
    """First ``(alpha, beta)`` breaking the plate-move hypothesis, else None.

    The hypothesis: for every ``alpha`` on the plate, ``f(alpha)`` is related
    to ``f(beta)`` for every ``beta`` adjacent to ``alpha`` moved one step.
    ``beta`` is None when the moved point falls outside the cube.
    """
    cube = f.cube
    roof = f.target.roof
    dom = cube.space()
    nb = dom.neighbors
    for alpha in plate.points():
        moved = _shift(alpha, plate.axis, plate.direction)
        if moved not in cube:
            return (alpha, None)
        fa = f[alpha]
        for beta in sorted(nb[moved]):
            if (fa, f[beta]) not in roof:
                return (alpha, beta)
    return None


def _apply_plate(f: CubeMap, plate: Block) -> CubeMap:
    d = dict(zip(f.cube.points(), f.values))
    for alpha in plate.points():
        d[_shift(alpha, plate.axis, plate.direction)] = f[alpha]
    return CubeMap(f.cube, f.target, tuple(d[p] for p in f.cube.points()))


def plate_move(f: CubeMap, plate: Block) -> CubeMap:
    """Copy a plate one step along its axis, keeping the original."""
    _check_block_inside(f, plate)
    if not plate.is_plate():
        raise InputError("plate_move needs a block of width one along its axis")
    w = plate_hypothesis_witness(f, plate)
    if w is not None:
        raise PreconditionError(f"plate hypothesis fails at alpha={w[0]!r}, beta={w[1]!r}", witness=w)
    return _apply_plate(f, plate)


def block_move_chain(f: CubeMap, block: Block, k: int) -> list:
    """All intermediate maps of moving ``block`` ``k`` steps with a wake.

    Each single step moves the block's plates one at a time starting from the
    leading face; every plate move has its own hypothesis checked on the
    current map.  The returned list starts with ``f``.
    """
    _check_block_inside(f, block)
    if k < 0:
        raise InputError("k must be nonnegative")
    chain = [f]
    cur = f
    for step in range(k):
        b = block.shifted(step)
        lo, hi = b.bounds[b.axis]
        order = range(hi, lo - 1, -1) if b.direction == RIGHT else range(lo, hi + 1)
        for c in order:
            plate = b.plate(c)
            w = plate_hypothesis_witness(cur, plate)
            if w is not None:
                raise PreconditionError(
                    f"step {step}, plate {c}: hypothesis fails at alpha={w[0]!r}, beta={w[1]!r}",
                    witness={"step": step, "plate": c, "alpha": w[0], "beta": w[1], "map": cur},
                )
            cur = _apply_plate(cur, plate)
            chain.append(cur)
    return chain


def block_move(f: CubeMap, block: Block, k: int) -> CubeMap:
    """Shift ``block`` ``k`` steps along its axis, leaving copies of its
    trailing face in the vacated positions."""
    return block_move_chain(f, block, k)[-1]


# -- paths in cycle graphs --------------------------------------------------------

@dataclass(frozen=True)
class WindingCertificate:
    """Lift of a path in ``C_n^m`` to the integers.

    ``winding`` is ``displacement / n`` for closed paths and None otherwise.
    """

    lift: tuple
    winding: int | None
    displacement: int
    modulus: int


def cyclic_parameters(X: Space, m: int = 1) -> int:
    """Return ``n`` if ``X`` is exactly ``C_n^m`` on vertices ``0..n-1``."""
    n = len(X)
    if n < 1 or X.vertices != tuple(range(n)) or X != cycle_space(n, m):
        raise InputError(f"space is not the standard cyclic space C_n^{m}")
    return n


def lift_path(f: CubeMap, step_bound: int = 1, unsafe: bool = False) -> WindingCertificate:
    """Unique lift of a based path in ``C_n^m`` through ``k -> k mod n``."""
    if f.cube.n != 1:
        raise InputError("lift_path needs a path (n = 1)")
    m = step_bound
    n = cyclic_parameters(f.target, m)
    if n <= 2 * m:
        raise InputError(f"lift is not unique for n={n} <= 2m={2 * m}")
    if n < 4 and not unsafe:
        raise InputError("lifting into C_n with n < 4 requires unsafe=True")
    if f.values[0] != 0:
        raise InputError("path must start at vertex 0")
    lift = [0]
    for a, b in zip(f.values, f.values[1:]):
        d = (b - a) % n
        if d > n // 2:
            d -= n
        if abs(d) > m:
            raise PreconditionError(f"step {a}->{b} is not an edge of C_{n}^{m}", witness=(a, b))
        lift.append(lift[-1] + d)
    disp = lift[-1] - lift[0]
    closed = f.values[-1] == f.values[0]
    return WindingCertificate(tuple(lift), disp // n if closed else None, disp, n)


def winding(f: CubeMap, step_bound: int = 1, unsafe: bool = False) -> int:
    w = lift_path(f, step_bound, unsafe).winding
    if w is None:
        raise InputError("winding number needs a closed path")
    return w


def standard_loop(n: int, turns: int = 1) -> CubeMap:
    """``c^{*turns}`` in ``C_n``: once around per turn, reversed for negative turns."""
    X = cycle_space(n)
    if turns == 0:
        return CubeMap.path(X, [0])
    step = 1 if turns > 0 else -1
    vals = [(step * i) % n for i in range(abs(turns) * n + 1)]
    return CubeMap.path(X, vals)


def pi1_cyclic(n: int, m: int = 1) -> str:
    """``"Z"`` when ``ceil(n/m) >= 4``, else ``"trivial"``."""
    if n < 1 or m < 1:
        raise InputError("pi1_cyclic needs n >= 1 and m >= 1")
    return "Z" if math.ceil(n / m) >= 4 else "trivial"


def reduction_steps(f: CubeMap) -> list:
    """Steps of the unidirectional reduction as ``(before, overwritten, after)``.

    ``overwritten`` replaces ``f(i+1)`` by ``f(i+2)`` (one step from
    ``before``); ``after`` drops the resulting repeated entry.
    """
    if f.cube.n != 1:
        raise InputError("unidirectional reduction needs a path")
    roof = f.target.roof
    vals = list(f.values)
    steps = []
    while True:
        for i in range(len(vals) - 2):
            if (vals[i], vals[i + 2]) in roof:
                break
        else:
            break
        before = CubeMap.path(f.target, vals)
        over = vals[:i + 1] + [vals[i + 2]] + vals[i + 2:]
        vals = vals[:i + 1] + vals[i + 2:]
        steps.append((before, CubeMap.path(f.target, over), CubeMap.path(f.target, vals)))
    if len(vals) == 2 and vals[0] == vals[1]:
        before = CubeMap.path(f.target, vals)
        vals = vals[:1]
        steps.append((before, before, CubeMap.path(f.target, vals)))
    return steps


def unidirectional_reduce(f: CubeMap) -> CubeMap:
    steps = reduction_steps(f)
    return steps[-1][2] if steps else f


def is_unidirectional(f: CubeMap) -> bool:
    roof = f.target.roof
    v = f.values
    return all((v[i], v[i + 2]) not in roof for i in range(len(v) - 2))


# -- coarse spaces ----------------------------------------------------------------

@dataclass(frozen=True)
class TrivialityReport:
    samples: int
    certified: int
    failures: tuple  # loops for which no null-homotopy was found

    @property
    def ok(self) -> bool:
        return not self.failures


def random_based_loop(X: Space, rng: random.Random, max_side: int = 6, base=None) -> CubeMap:
    """Random closed walk along the roof, returning to its start.

    The last step back to the base is forced, so the walk is only a valid
    loop when the final vertex is related to the base (always true in a
    coarse space).
    """
    if base is None:
        base = rng.choice(X.vertices)
    k = rng.randint(1, max_side)
    vals = [base]
    for _ in range(k - 1):
        vals.append(rng.choice(sorted(X.neighbors[vals[-1]], key=vertex_key)))
    vals.append(base)
    return CubeMap.path(X, vals)


def coarse_triviality_check(X: Space, samples: int = 100, seed: int = 0,
                            max_side: int = 6, node_budget: int = 200_000) -> TrivialityReport:
    """Search null-homotopies for random based loops in a coarse space."""
    if not is_coarse(X):
        raise PreconditionError("space is not coarse (roof is not closed under set product)")
    rng = random.Random(seed)
    failures = []
    certified = 0
    for _ in range(samples):
        loop = random_based_loop(X, rng, max_side)
        const = CubeMap.constant(loop.cube, X, loop.values[0])
        res = homotopic_search(loop, const, "boundary", node_budget, revalidate=False)
        if res.status == "certificate" and verify_homotopy(res.homotopy):
            certified += 1
        else:
            failures.append(loop)
    return TrivialityReport(samples, certified, tuple(failures))
