"""Fiber products of a graph homomorphism and the normalized complex built on them.

For ``pi: H -> G`` the level-N fiber graph has as vertices the (N+1)-tuples
of H-vertices with a common image, and likewise for edges.  The symmetric
group permutes coordinates; tuples with pairwise distinct entries form free
orbits, and the sorted tuple is taken as the representative of its orbit.
Coordinates are always H-vertex indices, so "sorted" means sorted in the
declaration order of H.

``gamma`` on a fiber graph follows the orientation fixed in
:mod:`smalehom.graphs`: a vertex tuple goes to the sum of the initial
tuples of the edge tuples terminating at it.  On the normalized basis only
edges terminating exactly at the representative are summed, which is the
fiber-graph ``gamma`` composed with the signed projection onto
representatives; summing over the whole orbit would multiply by ``(N+1)!``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .abelian import ChainComplexZ
from .errors import BoundarySquareError, CommutationError, ValidationError
from .graphs import Edge, Graph, GraphHom, gamma_s
from .linalg import IntMatrix


@dataclass(frozen=True)
class FiberGraph:
    """Level-N fiber product; tuples are stored as H-index tuples in lexicographic order."""

    base_hom: GraphHom
    level: int
    vertex_tuples: tuple[tuple[int, ...], ...]
    edge_tuples: tuple[tuple[int, ...], ...]

    @cached_property
    def vertex_position(self) -> dict:
        return {t: k for k, t in enumerate(self.vertex_tuples)}

    def source_tuple(self, e: tuple[int, ...]) -> tuple[int, ...]:
        src = self.base_hom.source.src
        return tuple(src[x] for x in e)

    def target_tuple(self, e: tuple[int, ...]) -> tuple[int, ...]:
        dst = self.base_hom.source.dst
        return tuple(dst[x] for x in e)

    @cached_property
    def graph(self) -> Graph:
        H = self.base_hom.source
        vlab = lambda t: tuple(H.vertices[x] for x in t)  # noqa: E731
        edges = tuple(Edge(tuple(H.edges[x].id for x in e), vlab(self.source_tuple(e)),
                           vlab(self.target_tuple(e))) for e in self.edge_tuples)
        return Graph(tuple(vlab(t) for t in self.vertex_tuples), edges)

    def gamma(self) -> IntMatrix:
        """``gamma`` of the fiber graph on its full vertex set."""
        n = len(self.vertex_tuples)
        pos = self.vertex_position
        out = [[0] * n for _ in range(n)]
        for e in self.edge_tuples:
            out[pos[self.source_tuple(e)]][pos[self.target_tuple(e)]] += 1
        return IntMatrix(n, n, out)


def _fiber_tuples(image: tuple[int, ...], n_targets: int, length: int) -> tuple[tuple[int, ...], ...]:
    fibers = [[] for _ in range(n_targets)]
    for k, w in enumerate(image):
        fibers[w].append(k)
    out = []
    for fib in fibers:
        out.extend(itertools.product(fib, repeat=length))
    return tuple(sorted(out))


def fiber_product_graph(pi: GraphHom, N: int) -> FiberGraph:
    if N < 0:
        raise ValidationError("fiber level must be non-negative")
    verts = _fiber_tuples(pi.vmap, pi.target.n_vertices, N + 1)
    edges = _fiber_tuples(pi.emap, pi.target.n_edges, N + 1)
    return FiberGraph(pi, N, verts, edges)


def _sort_sign(t: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    """Sorted tuple and the sign of the sorting permutation (entries distinct)."""
    perm = sorted(range(len(t)), key=t.__getitem__)
    sign = 1
    seen = [False] * len(t)
    for i in range(len(t)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return tuple(t[p] for p in perm), sign


@dataclass(frozen=True)
class SignedBasis:
    level: int
    representatives: tuple[tuple[int, ...], ...]
    index: dict = field(hash=False, compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.representatives)

    def reduce(self, t: tuple[int, ...]) -> tuple[int, int] | None:
        """``(representative index, sign)``, or None when t has a repeated entry."""
        if len(set(t)) < len(t):
            return None
        rep, sign = _sort_sign(t)
        return self.index[rep], sign


def free_orbit_basis(F: FiberGraph) -> SignedBasis:
    reps = tuple(t for t in F.vertex_tuples
                 if all(t[i] < t[i + 1] for i in range(len(t) - 1)))
    return SignedBasis(F.level, reps, {t: k for k, t in enumerate(reps)})


def delete(t: tuple, k: int) -> tuple:
    return t[:k] + t[k + 1:]


def boundary_matrix(B_N: SignedBasis, B_prev: SignedBasis) -> IntMatrix:
    """Alternating sum of coordinate deletions, pushed to the level below."""
    out = [[0] * len(B_N) for _ in range(len(B_prev))]
    for col, b in enumerate(B_N.representatives):
        for k in range(len(b)):
            red = B_prev.reduce(delete(b, k))
            if red is not None:
                row, sign = red
                out[row][col] += sign * (-1) ** k
    return IntMatrix(len(B_prev), len(B_N), out)


def gamma_on_basis(F: FiberGraph, B: SignedBasis) -> IntMatrix:
    n = len(B)
    out = [[0] * n for _ in range(n)]
    for e in F.edge_tuples:
        tgt = F.target_tuple(e)
        col = B.index.get(tgt)
        if col is None:
            continue
        red = B.reduce(F.source_tuple(e))
        if red is not None:
            row, sign = red
            out[row][col] += sign
    return IntMatrix(n, n, out)


@dataclass(frozen=True)
class PutnamComplex:
    """Integer complex ``Z B_0 <- Z B_1 <- ...`` with a commuting endomorphism.

    ``boundaries[n]`` maps degree n to degree n - 1 and ``boundaries[0]`` is
    None.  Construction checks ``d o d = 0`` and ``gamma d = d gamma``.
    """

    ranks: tuple[int, ...]
    gammas: tuple[IntMatrix, ...]
    boundaries: tuple[IntMatrix | None, ...]
    provenance: str = "computed-from-hom"

    def __post_init__(self):
        for name in ("ranks", "gammas", "boundaries"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not (len(self.ranks) == len(self.gammas) == len(self.boundaries)):
            raise ValidationError("ranks, gammas and boundaries must have the same length")
        for n, (r, g, d) in enumerate(zip(self.ranks, self.gammas, self.boundaries)):
            if g.shape != (r, r):
                raise ValidationError(f"degree {n}: gamma has shape {g.shape}, expected {(r, r)}")
            if n == 0:
                if d is not None:
                    raise ValidationError("degree 0 carries no boundary")
                continue
            if d is None or d.shape != (self.ranks[n - 1], r):
                raise ValidationError(f"degree {n}: boundary missing or has the wrong shape")
            if self.gammas[n - 1] @ d != d @ g:
                raise CommutationError(f"gamma does not commute with the boundary in degree {n}", degree=n)
            if n >= 2 and not (self.boundaries[n - 1] @ d).is_zero():
                raise BoundarySquareError(f"boundary squared is nonzero at degree {n}", degree=n)

    @property
    def top_degree(self) -> int:
        return len(self.ranks) - 1

    def gamma(self, n: int) -> IntMatrix:
        if 0 <= n < len(self.ranks):
            return self.gammas[n]
        return IntMatrix.zeros(0, 0)

    def to_chain_complex(self) -> ChainComplexZ:
        return ChainComplexZ(self.ranks, self.boundaries[1:])

    def truncated(self, top: int) -> PutnamComplex:
        k = top + 1
        return PutnamComplex(self.ranks[:k], self.gammas[:k], self.boundaries[:k], self.provenance)


def putnam_complex(pi: GraphHom, N_max: int | None = None) -> PutnamComplex:
    """Normalized complex through degree ``N_max``, or up to the last nonempty level.

    Levels above the largest fiber are empty, so the default always
    terminates.  The caller vouches that pi induces an s-bijective map; if it
    does not, the commuting checks usually fail loudly.
    """
    H = pi.source
    ranks = [H.n_vertices]
    gammas = [gamma_s(H)]
    bounds: list[IntMatrix | None] = [None]
    prev = SignedBasis(0, tuple((k,) for k in range(H.n_vertices)),
                       {(k,): k for k in range(H.n_vertices)})
    N = 1
    while N_max is None or N <= N_max:
        F = fiber_product_graph(pi, N)
        B = free_orbit_basis(F)
        if not len(B):
            break
        ranks.append(len(B))
        gammas.append(gamma_on_basis(F, B))
        bounds.append(boundary_matrix(B, prev))
        prev = B
        N += 1
    return PutnamComplex(ranks, gammas, bounds)


def unreduced_complex(pi: GraphHom, N_max: int) -> PutnamComplex:
    """Complex on the full fiber vertex sets with the alternating sum of deletions."""
    levels = [fiber_product_graph(pi, N) for N in range(N_max + 1)]
    ranks = [len(F.vertex_tuples) for F in levels]
    gammas = [F.gamma() for F in levels]
    bounds: list[IntMatrix | None] = [None]
    for N in range(1, N_max + 1):
        pos = levels[N - 1].vertex_position
        cols = levels[N].vertex_tuples
        out = [[0] * len(cols) for _ in range(ranks[N - 1])]
        for c, t in enumerate(cols):
            for k in range(N + 1):
                out[pos[delete(t, k)]][c] += (-1) ** k
        bounds.append(IntMatrix(ranks[N - 1], len(cols), out))
    return PutnamComplex(ranks, gammas, bounds, provenance="unreduced")


def solenoid_preset(m: int) -> PutnamComplex:
    """Normalized data for the m-adic solenoid.

    Degree 0 is the complete graph on m vertices (all-ones gamma), degree 1
    a single orbit with gamma = 1 and zero boundary.
    """
    if m < 2:
        raise ValidationError("solenoid preset needs m >= 2")
    ones = IntMatrix(m, m, [[1] * m for _ in range(m)])
    return PutnamComplex((m, 1), (ones, IntMatrix.identity(1)), (None, IntMatrix.zeros(m, 1)),
                         provenance="preset")
