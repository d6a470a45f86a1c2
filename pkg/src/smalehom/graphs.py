"""Directed graphs presenting shifts of finite type.

Orientation convention for the vertex endomorphism used everywhere in the
package::

    gamma_s(delta_v) = sum over edges e with t(e) = v of delta_{i(e)}

so the matrix has entry ``(i(e), t(e))`` incremented once per edge; it is the
adjacency matrix acting on column vectors.  With this choice the higher-block
map ``(t^k)^*`` and the sum-over-preimages map of a graph homomorphism that
is bijective on incoming edges both intertwine ``gamma_s`` exactly.
Bowen-Franks groups, their kernels and the limit invariants do not depend on
the orientation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Sequence

from .abelian import FgAbelianGroup, GroupHom
from .errors import CommutationError, ValidationError
from .limits import EndoModule, shift_cok_ker
from .linalg import IntMatrix, kernel_basis, solve_integer


@dataclass(frozen=True)
class Edge:
    id: Hashable
    src: Hashable
    dst: Hashable


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(Edge(*e) if not isinstance(e, Edge) else e
                                                for e in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("duplicate vertex labels")
        if len({e.id for e in self.edges}) != len(self.edges):
            raise ValidationError("duplicate edge ids")
        vs = set(self.vertices)
        for e in self.edges:
            if e.src not in vs or e.dst not in vs:
                raise ValidationError(f"edge {e.id!r} references an unknown vertex")

    @classmethod
    def from_pairs(cls, vertices: Sequence, pairs: Iterable[tuple], prefix: str = "e") -> Graph:
        return cls(tuple(vertices), tuple(Edge(f"{prefix}{k}", s, t) for k, (s, t) in enumerate(pairs)))

    @cached_property
    def vertex_index(self) -> dict:
        return {v: k for k, v in enumerate(self.vertices)}

    @cached_property
    def edge_index(self) -> dict:
        return {e.id: k for k, e in enumerate(self.edges)}

    @cached_property
    def src(self) -> tuple[int, ...]:
        return tuple(self.vertex_index[e.src] for e in self.edges)

    @cached_property
    def dst(self) -> tuple[int, ...]:
        return tuple(self.vertex_index[e.dst] for e in self.edges)

    @cached_property
    def out_edges(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in self.vertices]
        for k, s in enumerate(self.src):
            out[s].append(k)
        return tuple(tuple(x) for x in out)

    @cached_property
    def in_edges(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in self.vertices]
        for k, t in enumerate(self.dst):
            out[t].append(k)
        return tuple(tuple(x) for x in out)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def reversed(self) -> Graph:
        return Graph(self.vertices, tuple(Edge(e.id, e.dst, e.src) for e in self.edges))

    def is_strongly_connected(self) -> bool:
        n = self.n_vertices
        if n == 0:
            return True

        def reach(adj):
            seen = {0}
            stack = [0]
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            return len(seen) == n

        fwd = [[self.dst[k] for k in self.out_edges[v]] for v in range(n)]
        bwd = [[self.src[k] for k in self.in_edges[v]] for v in range(n)]
        return reach(fwd) and reach(bwd)


def full_shift(m: int) -> Graph:
    """One vertex with m loops."""
    return Graph(("v",), tuple(Edge(f"a{j}", "v", "v") for j in range(m)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_pairs([f"v{j}" for j in range(n)], [(f"v{j}", f"v{(j + 1) % n}") for j in range(n)])


def complete_graph(m: int) -> Graph:
    """m vertices, one edge for every ordered pair (loops included)."""
    vs = [f"v{j}" for j in range(m)]
    return Graph.from_pairs(vs, [(a, b) for a in vs for b in vs])


def random_graph(rng: random.Random, max_vertices: int = 5, max_edges: int = 10) -> Graph:
    n = rng.randint(1, max_vertices)
    k = rng.randint(1, max_edges)
    vs = [f"v{j}" for j in range(n)]
    return Graph.from_pairs(vs, [(rng.choice(vs), rng.choice(vs)) for _ in range(k)])


def gamma_s(G: Graph) -> IntMatrix:
    n = G.n_vertices
    out = [[0] * n for _ in range(n)]
    for s, t in zip(G.src, G.dst):
        out[s][t] += 1
    return IntMatrix(n, n, out)


# -- paths and higher block presentations --------------------------------------


def paths(G: Graph, length: int) -> list[tuple[int, ...]]:
    """Edge-index paths of the given length (>= 1), lexicographic in edge order."""
    out = [(k,) for k in range(G.n_edges)]
    for _ in range(length - 1):
        out = [p + (k,) for p in out for k in G.out_edges[G.dst[p[-1]]]]
    return out


def _block_vertex_keys(G: Graph, k: int) -> list:
    """Vertex labels of ``G^k`` in the order used by :func:`higher_block_graph`."""
    if k == 1:
        return list(G.vertices)
    return [tuple(G.edges[j].id for j in p) for p in paths(G, k - 1)]


def higher_block_graph(G: Graph, k: int) -> Graph:
    """``G^k``: vertices are paths of length k - 1, edges are paths of length k."""
    if k < 1:
        raise ValidationError("block length must be at least 1")
    if k == 1:
        return G
    vertices = _block_vertex_keys(G, k)
    edges = []
    for p in paths(G, k):
        ids = tuple(G.edges[j].id for j in p)
        if k == 2:
            src, dst = (ids[0],), (ids[1],)
        else:
            src, dst = ids[:-1], ids[1:]
        edges.append(Edge(ids, src, dst))
    return Graph(tuple(vertices), tuple(edges))


def _terminal_vertex(G: Graph, key, k: int) -> int:
    if k == 1:
        return G.vertex_index[key]
    return G.dst[G.edge_index[key[-1]]]


def higher_block_iso(G: Graph, k: int) -> IntMatrix:
    """Matrix of ``(t^k)^*``: ``Z G^0 -> Z (G^{k+1})^0``, v to the sum of length-k paths ending at v."""
    if k < 1:
        raise ValidationError("block length must be at least 1")
    keys = _block_vertex_keys(G, k + 1)
    out = [[0] * G.n_vertices for _ in keys]
    for row, key in enumerate(keys):
        out[row][_terminal_vertex(G, key, k + 1)] = 1
    return IntMatrix(len(keys), G.n_vertices, out)


def dimension_group(G: Graph) -> EndoModule:
    return EndoModule.free(gamma_s(G))


def bowen_franks(G: Graph) -> tuple[FgAbelianGroup, FgAbelianGroup]:
    """``(BF(gamma_s), ker(1 - gamma_s))``."""
    return shift_cok_ker(dimension_group(G))


def induced_bf_maps(M: IntMatrix, gamma_src: IntMatrix, gamma_tgt: IntMatrix) -> tuple[GroupHom, GroupHom]:
    """Maps on BF groups and on ``ker(1 - gamma)`` induced by an intertwiner M."""
    if gamma_tgt @ M != M @ gamma_src:
        raise CommutationError("matrix does not intertwine the two endomorphisms")
    n, m = gamma_src.rows, gamma_tgt.rows
    a = IntMatrix.identity(n) - gamma_src
    b = IntMatrix.identity(m) - gamma_tgt
    bf = GroupHom(FgAbelianGroup(n, a), FgAbelianGroup(m, b), M)
    k_src, k_tgt = kernel_basis(a), kernel_basis(b)
    coords = solve_integer(k_tgt, M @ k_src)
    assert coords is not None
    ker = GroupHom(FgAbelianGroup.free(k_src.cols), FgAbelianGroup.free(k_tgt.cols), coords)
    return bf, ker


# -- graph homomorphisms ------------------------------------------------------


@dataclass(frozen=True)
class GraphHom:
    source: Graph
    target: Graph
    vertex_map: dict = field(hash=False)
    edge_map: dict = field(hash=False)

    def __post_init__(self):
        S, T = self.source, self.target
        if set(self.vertex_map) != set(S.vertices) or set(self.edge_map) != {e.id for e in S.edges}:
            raise ValidationError("graph homomorphism must be defined on every vertex and edge")
        tv = set(T.vertices)
        if any(w not in tv for w in self.vertex_map.values()):
            raise ValidationError("vertex map lands outside the target graph")
        for e in S.edges:
            img = self.edge_map[e.id]
            if img not in T.edge_index:
                raise ValidationError(f"edge {e.id!r} maps to an unknown edge {img!r}")
            f = T.edges[T.edge_index[img]]
            if f.src != self.vertex_map[e.src] or f.dst != self.vertex_map[e.dst]:
                raise ValidationError(f"edge {e.id!r}: endpoints are not preserved")

    @cached_property
    def vmap(self) -> tuple[int, ...]:
        return tuple(self.target.vertex_index[self.vertex_map[v]] for v in self.source.vertices)

    @cached_property
    def emap(self) -> tuple[int, ...]:
        return tuple(self.target.edge_index[self.edge_map[e.id]] for e in self.source.edges)

    def is_in_edge_bijective(self) -> bool:
        """Bijective from edges entering v onto edges entering pi(v), for every v."""
        for v in range(self.source.n_vertices):
            imgs = sorted(self.emap[k] for k in self.source.in_edges[v])
            if imgs != sorted(self.target.in_edges[self.vmap[v]]):
                return False
        return True

    @classmethod
    def identity(cls, G: Graph) -> GraphHom:
        return cls(G, G, {v: v for v in G.vertices}, {e.id: e.id for e in G.edges})


def fold_hom(G: Graph, sheets: int = 2) -> GraphHom:
    """Disjoint union of ``sheets`` copies of G mapped onto G (copy-major ordering)."""
    vertices = tuple(f"{v}#{c}" for c in range(1, sheets + 1) for v in G.vertices)
    edges = tuple(Edge(f"{e.id}#{c}", f"{e.src}#{c}", f"{e.dst}#{c}")
                  for c in range(1, sheets + 1) for e in G.edges)
    H = Graph(vertices, edges)
    vmap = {f"{v}#{c}": v for c in range(1, sheets + 1) for v in G.vertices}
    emap = {f"{e.id}#{c}": e.id for c in range(1, sheets + 1) for e in G.edges}
    return GraphHom(H, G, vmap, emap)


def recoding_hom(G: Graph) -> GraphHom:
    """``G^2 -> G`` sending a vertex e to i(e) and an edge (e, e') to e.

    It is bijective on incoming edges, so it induces an s-bijective map (in
    fact a conjugacy) of the shift spaces.
    """
    H = higher_block_graph(G, 2)
    vmap = {v: G.edges[G.edge_index[v[0]]].src for v in H.vertices}
    emap = {e.id: e.id[0] for e in H.edges}
    return GraphHom(H, G, vmap, emap)


def product_graph(G1: Graph, G2: Graph) -> Graph:
    vertices = tuple((a, b) for a in G1.vertices for b in G2.vertices)
    edges = tuple(Edge((e.id, f.id), (e.src, f.src), (e.dst, f.dst)) for e in G1.edges for f in G2.edges)
    return Graph(vertices, edges)


def product_hom(p1: GraphHom, p2: GraphHom) -> GraphHom:
    S = product_graph(p1.source, p2.source)
    T = product_graph(p1.target, p2.target)
    vmap = {(a, b): (p1.vertex_map[a], p2.vertex_map[b]) for a, b in S.vertices}
    emap = {(a, b): (p1.edge_map[a], p2.edge_map[b]) for a, b in (e.id for e in S.edges)}
    return GraphHom(S, T, vmap, emap)


def induced_map_pi_sK(pi: GraphHom, K: int, k: int = 1) -> IntMatrix:
    """Sum-over-preimages map ``Z (H^k)^0 -> Z (G^{k+K})^0``.

    A vertex q of ``H^k`` goes to the sum of ``pi(q')`` over the vertices q'
    of ``H^{k+K}`` whose terminal block of length ``k - 1`` is q.  Raises
    :class:`CommutationError` when the result does not intertwine the two
    ``gamma_s`` matrices, which signals that K is too small or pi does not
    induce an s-bijective map.
    """
    if K < 0 or k < 1:
        raise ValidationError("need K >= 0 and k >= 1")
    H, G = pi.source, pi.target
    src_keys = _block_vertex_keys(H, k)
    src_pos = {key: j for j, key in enumerate(src_keys)}
    tgt_keys = _block_vertex_keys(G, k + K)
    tgt_pos = {key: j for j, key in enumerate(tgt_keys)}
    out = [[0] * len(src_keys) for _ in tgt_keys]
    for qp in _block_vertex_keys(H, k + K):
        if k + K == 1:
            img = pi.vertex_map[qp]
            q = qp
        else:
            img = tuple(pi.edge_map[x] for x in qp)
            if k == 1:
                q = H.edges[H.edge_index[qp[-1]]].dst
            else:
                q = qp[len(qp) - (k - 1):]
        out[tgt_pos[img]][src_pos[q]] += 1
    M = IntMatrix(len(tgt_keys), len(src_keys), out)
    gH = gamma_s(higher_block_graph(H, k))
    gG = gamma_s(higher_block_graph(G, k + K))
    if gG @ M != M @ gH:
        raise CommutationError(f"pi^(s,{K}) does not commute with gamma_s (k = {k})")
    return M
