"""Integral homology of the clique complex of a roof.

For a finite roofed space the directed system of controlled sets has the
roof as its largest element, so the homology is that of the clique (flag)
complex of the roof viewed as a graph.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import Space, VertexMap, bornologous_witness, vertex_key
from .errors import InputError, PreconditionError
from .snf import IntegerMatrix, invariant_factors, smith_normal_form


@dataclass(frozen=True)
class CliqueComplex:
    space: Space
    max_dim: int
    simplices: tuple  # simplices[q] = sorted tuple of ascending (q+1)-tuples

    def index(self, q: int) -> dict:
        return {s: i for i, s in enumerate(self.simplices[q])}

    def count(self, q: int) -> int:
        return len(self.simplices[q]) if 0 <= q <= self.max_dim else 0


@dataclass(frozen=True)
class HomologyGroup:
    """``Z^betti + Z/t_1 + ... + Z/t_k`` with ``t_1 | t_2 | ...``.

    ``exact`` is False at the dimension cap, where the next boundary map
    was not built and ``betti`` is only an upper bound.
    """

    dim: int
    betti: int
    torsion: tuple = ()
    exact: bool = True

    def __str__(self):
        parts = [f"Z^{self.betti}"] if self.betti else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def build_complex(X: Space, max_dim: int = 3) -> CliqueComplex:
    """All cliques of the roof with at most ``max_dim + 1`` vertices.

    Cliques are grown in vertex order: a clique is only extended by common
    neighbours larger than its last vertex, so each appears exactly once.
    """
    if max_dim < 0:
        raise InputError("max_dim must be nonnegative")
    order = X.vertices
    pos = X.index
    later = {v: frozenset(w for w in X.neighbors[v] if pos[w] > pos[v]) for v in order}
    levels = [[] for _ in range(max_dim + 1)]

    def grow(clique, cands):
        levels[len(clique) - 1].append(clique)
        if len(clique) == max_dim + 1:
            return
        for w in sorted(cands, key=pos.__getitem__):
            grow(clique + (w,), cands & later[w])

    for v in order:
        grow((v,), later[v])
    key = lambda s: tuple(pos[v] for v in s)
    return CliqueComplex(X, max_dim, tuple(tuple(sorted(l, key=key)) for l in levels))


def boundary(K: CliqueComplex, q: int) -> IntegerMatrix:
    """Matrix of the boundary map from q-chains to (q-1)-chains."""
    if not 1 <= q <= K.max_dim:
        raise InputError(f"boundary index q={q} outside 1..{K.max_dim}")
    return IntegerMatrix.from_sparse(K.count(q - 1), K.count(q), _boundary_sparse(K, q))


def _boundary_sparse(K: CliqueComplex, q: int) -> dict:
    rows = K.index(q - 1)
    data = {}
    for j, s in enumerate(K.simplices[q]):
        for i in range(q + 1):
            data[(rows[s[:i] + s[i + 1:]], j)] = (-1) ** i
    return data


def homology_of_complex(K: CliqueComplex) -> list:
    factors = {q: invariant_factors(_boundary_sparse(K, q)) for q in range(1, K.max_dim + 1)}
    out = []
    for q in range(K.max_dim + 1):
        rk_q = len(factors.get(q, ()))
        nxt = factors.get(q + 1, [])
        betti = K.count(q) - rk_q - len(nxt)
        torsion = tuple(d for d in nxt if d > 1)
        out.append(HomologyGroup(q, betti, torsion, exact=q < K.max_dim))
    return out


def homology(X: Space, max_dim: int = 3) -> list:
    """Homology groups in dimensions ``0..max_dim``; the last one is cap-limited."""
    return homology_of_complex(build_complex(X, max_dim))


def betti_numbers(X: Space, max_dim: int = 3) -> list:
    return [h.betti for h in homology(X, max_dim)]


# -- chain maps -------------------------------------------------------------------

def _oriented(tup, index: dict):
    """Sign and ascending form of an ordered tuple; (0, None) if it repeats."""
    if len(set(tup)) < len(tup):
        return 0, None
    keys = [index[v] for v in tup]
    sign = 1
    # parity of the sorting permutation by counting inversions
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            if keys[i] > keys[j]:
                sign = -sign
    return sign, tuple(sorted(tup, key=index.__getitem__))


def induced_map(f: VertexMap, source: CliqueComplex, target: CliqueComplex) -> list:
    """Matrices of the chain map ``[x_0..x_q] -> [f(x_0)..f(x_q)]``, one per
    dimension ``0..min(source.max_dim, target.max_dim)``."""
    bad = bornologous_witness(f)
    if bad is not None:
        raise PreconditionError(f"map is not bornologous at {bad!r}", witness=bad)
    if source.space != f.source or target.space != f.target:
        raise InputError("complexes are not built on the map's source and target")
    pos = f.target.index
    mats = []
    for q in range(min(source.max_dim, target.max_dim) + 1):
        rows = target.index(q)
        data = {}
        for j, s in enumerate(source.simplices[q]):
            sign, t = _oriented(tuple(f(v) for v in s), pos)
            if sign:
                data[(rows[t], j)] = data.get((rows[t], j), 0) + sign
        mats.append(IntegerMatrix.from_sparse(target.count(q), source.count(q), data))
    return mats


def prism_homotopy(f: VertexMap, g: VertexMap, source: CliqueComplex,
                   target: CliqueComplex) -> list:
    """Chain homotopy ``P`` with ``dP + Pd = g# - f#``.

    ``P_q`` sends ``[x_0..x_q]`` to ``sum_i (-1)^i [f(x_0)..f(x_i), g(x_i)..g(x_q)]``.
    Returned for ``q = 0..source.max_dim`` as long as the target complex
    has the needed ``(q+1)``-simplices.  Requires ``(f(x), g(y))`` in the
    target roof whenever ``(x, y)`` is in the source roof.
    """
    if f.source != g.source or f.target != g.target:
        raise InputError("maps must share source and target")
    troof = f.target.roof
    for x, y in f.source.sorted_roof():
        if (f(x), g(y)) not in troof:
            raise PreconditionError(
                f"maps are not one-step related: (f({x!r}), g({y!r})) not in roof", witness=(x, y))
    pos = f.target.index
    top = min(source.max_dim, target.max_dim - 1)
    mats = []
    for q in range(top + 1):
        rows = target.index(q + 1)
        data = {}
        for j, s in enumerate(source.simplices[q]):
            fs = [f(v) for v in s]
            gs = [g(v) for v in s]
            for i in range(q + 1):
                sign, t = _oriented(tuple(fs[:i + 1] + gs[i:]), pos)
                if sign:
                    k = (rows[t], j)
                    data[k] = data.get(k, 0) + sign * (-1) ** i
        mats.append(IntegerMatrix.from_sparse(target.count(q + 1), source.count(q), data))
    return mats


def chain_homotopy_defect(f: VertexMap, g: VertexMap, source: CliqueComplex,
                          target: CliqueComplex, P: list | None = None) -> list:
    """``dP_q + P_{q-1}d - (g#_q - f#_q)`` per dimension; all zero when valid."""
    if P is None:
        P = prism_homotopy(f, g, source, target)
    F = induced_map(f, source, target)
    G = induced_map(g, source, target)
    out = []
    for q in range(len(P)):
        lhs = boundary(target, q + 1) @ P[q]
        if q >= 1:
            lhs = lhs + P[q - 1] @ boundary(source, q)
        out.append(lhs - (G[q] - F[q]))
    return out


def cycle_basis(K: CliqueComplex, q: int) -> list:
    """Integer basis of the q-cycles, as coefficient lists."""
    n = K.count(q)
    if q == 0:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    D = boundary(K, q)
    _, S, V = smith_normal_form(D)
    r = sum(1 for d in S.diagonal() if d)
    return [[V[i, j] for i in range(n)] for j in range(r, n)]


def in_boundary_image(K: CliqueComplex, q: int, chain: list) -> bool:
    """Whether an integer q-chain is a boundary of some integer (q+1)-chain."""
    if q + 1 > K.max_dim:
        raise InputError("complex too small to test boundaries in this dimension")
    U, S, _ = smith_normal_form(boundary(K, q + 1))
    y = [sum(U[i, k] * chain[k] for k in range(len(chain))) for i in range(U.rows)]
    diag = S.diagonal()
    for i, yi in enumerate(y):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if yi:
                return False
        elif yi % d:
            return False
    return True


def maps_agree_on_homology(f: VertexMap, g: VertexMap, source: CliqueComplex,
                           target: CliqueComplex, q: int) -> bool:
    """``f_* == g_*`` on ``H_q``: every q-cycle's image difference is a boundary."""
    F = induced_map(f, source, target)[q]
    G = induced_map(g, source, target)[q]
    diff = G - F
    for z in cycle_basis(source, q):
        img = [sum(diff[i, j] * z[j] for j in range(len(z))) for i in range(diff.rows)]
        if any(img) and not in_boundary_image(target, q, img):
            return False
    return True


# -- ordered-tuple oracle -------------------------------------------------------------

ORACLE_MAX_VERTICES = 6
ORACLE_MAX_DIM = 2


def _ordered_tuples(X: Space, length: int) -> list:
    """Tuples of pairwise related vertices with no two consecutive entries equal."""
    nb = X.neighbors
    out = []

    def rec(t):
        if len(t) == length:
            out.append(t)
            return
        common = set(X.vertices)
        for v in t:
            common &= nb[v]
        for w in sorted(common, key=vertex_key):
            if not t or w != t[-1]:
                rec(t + (w,))

    rec(())
    return out


def ordered_chain_oracle(X: Space, max_dim: int = 2) -> list:
    """Homology from ordered simplices, computed independently of
    :func:`homology`.

    Generators are ordered tuples of pairwise related vertices; tuples with a
    repeated consecutive vertex are degenerate and set to zero (the
    normalized ordered chain complex).  Every reported dimension is exact
    since tuples one dimension higher are always built.
    """
    if len(X) > ORACLE_MAX_VERTICES or max_dim > ORACLE_MAX_DIM or max_dim < 0:
        raise InputError(
            f"oracle limited to <= {ORACLE_MAX_VERTICES} vertices and max_dim <= {ORACLE_MAX_DIM}")
    gens = [_ordered_tuples(X, q + 1) for q in range(max_dim + 2)]
    factors = {}
    for q in range(1, max_dim + 2):
        rows = {t: i for i, t in enumerate(gens[q - 1])}
        data = {}
        for j, t in enumerate(gens[q]):
            for i in range(q + 1):
                face = t[:i] + t[i + 1:]
                if any(a == b for a, b in zip(face, face[1:])):
                    continue
                k = (rows[face], j)
                data[k] = data.get(k, 0) + (-1) ** i
        factors[q] = invariant_factors(data)
    out = []
    for q in range(max_dim + 1):
        nxt = factors[q + 1]
        betti = len(gens[q]) - len(factors.get(q, ())) - len(nxt)
        out.append(HomologyGroup(q, betti, tuple(d for d in nxt if d > 1)))
    return out


def normalized_groups(groups: list) -> list:
    """``(dim, betti, torsion)`` triples for comparisons that ignore exactness flags."""
    return [(h.dim, h.betti, tuple(h.torsion)) for h in groups]

