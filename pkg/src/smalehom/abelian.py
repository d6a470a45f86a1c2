"""Finitely generated abelian groups given by presentations.

A group is ``Z^n / R Z^r`` for an ``n x r`` relation matrix ``R``.  Groups are
compared by their invariants only (free rank plus invariant factors); no
search for an explicit isomorphism between presentations is ever attempted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import BoundarySquareError, CommutationError, DimensionError, ValidationError
from .linalg import (
    IntMatrix,
    block_diagonal,
    cokernel_invariants,
    image_basis,
    lattice_contains,
    preimage_lattice,
    smith_normal_form,
    solve_integer,
)


def format_group(rank: int, torsion: Sequence[int]) -> str:
    parts = []
    if rank == 1:
        parts.append("Z")
    elif rank > 1:
        parts.append(f"Z^{rank}")
    parts.extend(f"Z/{d}" for d in torsion)
    return " ⊕ ".join(parts) if parts else "0"


@dataclass(frozen=True)
class FgAbelianGroup:
    n_generators: int
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.rows != self.n_generators:
            raise DimensionError("relation matrix must have one row per generator")

    @classmethod
    def free(cls, n: int) -> FgAbelianGroup:
        return cls(n, IntMatrix.zeros(n, 0))

    @classmethod
    def trivial(cls) -> FgAbelianGroup:
        return cls.free(0)

    @classmethod
    def from_invariants(cls, rank: int, torsion: Sequence[int]) -> FgAbelianGroup:
        n = len(torsion) + rank
        return cls(n, IntMatrix.diagonal(list(torsion), rows=n, cols=len(torsion)))

    @cached_property
    def _invariants(self) -> tuple[int, tuple[int, ...]]:
        r, t = cokernel_invariants(self.relations)
        return r, tuple(t)

    @property
    def free_rank(self) -> int:
        return self._invariants[0]

    @property
    def torsion(self) -> tuple[int, ...]:
        return self._invariants[1]

    def invariants(self) -> tuple[int, list[int]]:
        return self.free_rank, list(self.torsion)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_isomorphic(self, other: FgAbelianGroup) -> bool:
        return self._invariants == other._invariants

    def order(self) -> int | None:
        """Cardinality, or ``None`` for infinite groups."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def contains(self, vectors: IntMatrix) -> bool:
        """True when every column of ``vectors`` is zero in the group."""
        return lattice_contains(self.relations, vectors)

    def normalized(self) -> tuple[FgAbelianGroup, IntMatrix, IntMatrix]:
        """Equivalent presentation ``Z/d_1 + ... + Z/d_s + Z^r``.

        Returns ``(group, to_new, from_new)``: mutually inverse isomorphisms
        written as matrices on generators.
        """
        n = self.n_generators
        snf = smith_normal_form(self.relations)
        f = snf.factors
        kept = [i for i in range(n) if not (i < len(f) and f[i] == 1)]
        tors = [f[i] for i in kept if i < len(f) and f[i] >= 2]
        group = FgAbelianGroup(len(kept), IntMatrix.diagonal(tors, rows=len(kept), cols=len(tors)))
        to_new = snf.U.submatrix(kept, range(n))
        from_new = snf.U_inv.submatrix(range(n), kept)
        return group, to_new, from_new

    def direct_sum(self, other: FgAbelianGroup) -> FgAbelianGroup:
        return FgAbelianGroup(self.n_generators + other.n_generators,
                              block_diagonal([self.relations, other.relations]))

    def __str__(self) -> str:
        return format_group(self.free_rank, self.torsion)


@dataclass(frozen=True)
class GroupHom:
    source: FgAbelianGroup
    target: FgAbelianGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.n_generators, self.source.n_generators):
            raise DimensionError("homomorphism matrix has the wrong shape")
        if not self.target.contains(self.matrix @ self.source.relations):
            raise ValidationError("matrix does not respect the source relations")

    @classmethod
    def identity(cls, G: FgAbelianGroup) -> GroupHom:
        return cls(G, G, IntMatrix.identity(G.n_generators))

    def compose(self, other: GroupHom) -> GroupHom:
        """``self o other``."""
        if other.target != self.source:
            raise DimensionError("composition of non-matching homomorphisms")
        return GroupHom(other.source, self.target, self.matrix @ other.matrix)

    def equals(self, other: GroupHom) -> bool:
        """Equality as maps (presentations may differ by relations)."""
        return self.target.contains(self.matrix - other.matrix)

    def is_identity(self) -> bool:
        return self.source == self.target and self.equals(GroupHom.identity(self.source))

    def kernel(self) -> tuple[FgAbelianGroup, IntMatrix]:
        """Kernel group and the matrix of its inclusion into the source."""
        basis = preimage_lattice(self.matrix, self.target.relations)
        rel = solve_integer(basis, self.source.relations)
        assert rel is not None
        return FgAbelianGroup(basis.cols, rel), basis

    def cokernel(self) -> FgAbelianGroup:
        return FgAbelianGroup(self.target.n_generators, self.target.relations.hstack(self.matrix))


def induced_on_subquotient(basis_src: IntMatrix, basis_tgt: IntMatrix, chain_map: IntMatrix) -> IntMatrix:
    """Coordinates of ``chain_map @ basis_src`` in the lattice basis ``basis_tgt``."""
    coords = solve_integer(basis_tgt, chain_map @ basis_src)
    if coords is None:
        raise CommutationError("chain map does not preserve cycles")
    return coords


def _subquotient(d_out: IntMatrix, rel_below: IntMatrix, d_in: IntMatrix, rel_here: IntMatrix):
    """``{x : d_out x in rel_below} / (d_in + rel_here)`` as (group, cycle basis)."""
    basis = preimage_lattice(d_out, rel_below)
    gens = d_in.hstack(rel_here)
    coords = solve_integer(basis, gens)
    if coords is None:
        raise BoundarySquareError("image of the incoming differential is not made of cycles")
    return FgAbelianGroup(basis.cols, coords), basis


@dataclass(frozen=True)
class ChainComplexZ:
    """Complex of free abelian groups ``Z^{ranks[0]} <- Z^{ranks[1]} <- ...``.

    ``boundaries[i]`` is the differential from degree ``i + 1`` to degree
    ``i``; degrees outside the stored range are zero.
    """

    ranks: tuple[int, ...]
    boundaries: tuple[IntMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(self.ranks))
        object.__setattr__(self, "boundaries", tuple(self.boundaries))
        if len(self.boundaries) != max(len(self.ranks) - 1, 0):
            raise DimensionError("need exactly one boundary per pair of adjacent degrees")
        for i, d in enumerate(self.boundaries):
            if d.shape != (self.ranks[i], self.ranks[i + 1]):
                raise DimensionError(f"boundary {i + 1} has shape {d.shape}")
        for i in range(len(self.boundaries) - 1):
            if not (self.boundaries[i] @ self.boundaries[i + 1]).is_zero():
                raise BoundarySquareError(f"boundary {i + 1} o boundary {i + 2} != 0", degree=i + 2)

    def rank(self, n: int) -> int:
        return self.ranks[n] if 0 <= n < len(self.ranks) else 0

    def boundary(self, n: int) -> IntMatrix:
        """Differential from degree n to degree n - 1."""
        if 1 <= n < len(self.ranks):
            return self.boundaries[n - 1]
        return IntMatrix.zeros(self.rank(n - 1), self.rank(n))

    @property
    def top_degree(self) -> int:
        return len(self.ranks) - 1


def homology_with_basis(C: ChainComplexZ, n: int) -> tuple[FgAbelianGroup, IntMatrix]:
    d_out = C.boundary(n)
    return _subquotient(d_out, IntMatrix.zeros(d_out.rows, 0), C.boundary(n + 1),
                        IntMatrix.zeros(C.rank(n), 0))


def homology_at(C: ChainComplexZ, n: int) -> FgAbelianGroup:
    """``ker d_n / im d_{n+1}`` presented on a saturated basis of cycles."""
    return homology_with_basis(C, n)[0]


def check_chain_map(C: ChainComplexZ, D: ChainComplexZ, maps: Sequence[IntMatrix]) -> None:
    top = max(C.top_degree, D.top_degree)

    def f(n):
        if 0 <= n < len(maps):
            return maps[n]
        return IntMatrix.zeros(D.rank(n), C.rank(n))

    for n in range(top + 1):
        if f(n).shape != (D.rank(n), C.rank(n)):
            raise DimensionError(f"chain map in degree {n} has shape {f(n).shape}")
    for n in range(1, top + 1):
        if D.boundary(n) @ f(n) != f(n - 1) @ C.boundary(n):
            raise CommutationError(f"chain map does not commute with the boundary in degree {n}", degree=n)


def chain_map_on_homology(C: ChainComplexZ, D: ChainComplexZ, maps: Sequence[IntMatrix], n: int) -> GroupHom:
    check_chain_map(C, D, maps)
    src, basis_src = homology_with_basis(C, n)
    tgt, basis_tgt = homology_with_basis(D, n)
    if not 0 <= n < len(maps):
        return GroupHom(src, tgt, IntMatrix.zeros(tgt.n_generators, src.n_generators))
    return GroupHom(src, tgt, induced_on_subquotient(basis_src, basis_tgt, maps[n]))


def induced_map_on_homology(C: ChainComplexZ, chain_endo: Sequence[IntMatrix], n: int) -> GroupHom:
    """Endomorphism of ``H_n(C)`` induced by a chain endomorphism."""
    return chain_map_on_homology(C, C, chain_endo, n)


@dataclass(frozen=True)
class GroupComplex:
    """Chain complex of presented groups: ``groups[n] <- groups[n + 1]``.

    ``differentials[i]`` is the matrix from degree ``i + 1`` to ``i``.
    """

    groups: tuple[FgAbelianGroup, ...]
    differentials: tuple[IntMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))
        object.__setattr__(self, "differentials", tuple(self.differentials))
        if len(self.differentials) != max(len(self.groups) - 1, 0):
            raise DimensionError("need exactly one differential per pair of adjacent degrees")
        for i, d in enumerate(self.differentials):
            GroupHom(self.groups[i + 1], self.groups[i], d)
        for i in range(len(self.differentials) - 1):
            if not self.groups[i].contains(self.differentials[i] @ self.differentials[i + 1]):
                raise BoundarySquareError(f"differential square nonzero at degree {i + 2}", degree=i + 2)

    def group(self, n: int) -> FgAbelianGroup:
        return self.groups[n] if 0 <= n < len(self.groups) else FgAbelianGroup.trivial()

    def differential(self, n: int) -> IntMatrix:
        if 1 <= n < len(self.groups):
            return self.differentials[n - 1]
        return IntMatrix.zeros(self.group(n - 1).n_generators, self.group(n).n_generators)

    def homology(self, n: int) -> FgAbelianGroup:
        return _subquotient(self.differential(n), self.group(n - 1).relations,
                            self.differential(n + 1), self.group(n).relations)[0]


def tensor_product(G: FgAbelianGroup, H: FgAbelianGroup) -> FgAbelianGroup:
    """``G (x) H`` on generator pairs ``(i, j) -> i * H.n_generators + j``."""
    a, b = G.n_generators, H.n_generators
    rel = G.relations.kron(IntMatrix.identity(b)).hstack(IntMatrix.identity(a).kron(H.relations))
    return FgAbelianGroup(a * b, rel)


def tensor_hom(f: GroupHom, g: GroupHom) -> GroupHom:
    return GroupHom(tensor_product(f.source, g.source), tensor_product(f.target, g.target),
                    f.matrix.kron(g.matrix))


def _injective_relations(G: FgAbelianGroup) -> IntMatrix:
    return image_basis(G.relations)


def _tor_with_basis(G: FgAbelianGroup, H: FgAbelianGroup):
    R = _injective_relations(G)
    b = H.n_generators
    lhs = FgAbelianGroup(R.cols * b, IntMatrix.identity(R.cols).kron(H.relations))
    rhs = FgAbelianGroup(G.n_generators * b, IntMatrix.identity(G.n_generators).kron(H.relations))
    group, basis = GroupHom(lhs, rhs, R.kron(IntMatrix.identity(b))).kernel()
    return group, basis, R


def tor_product(G: FgAbelianGroup, H: FgAbelianGroup) -> FgAbelianGroup:
    """Tor(G, H) from the length-one resolution of G tensored with H."""
    return _tor_with_basis(G, H)[0]


def tor_hom(f: GroupHom, g: GroupHom) -> GroupHom:
    """Map ``Tor(f, g)`` induced on the resolutions."""
    src, basis_src, R_src = _tor_with_basis(f.source, g.source)
    tgt, basis_tgt, R_tgt = _tor_with_basis(f.target, g.target)
    lift = solve_integer(R_tgt, f.matrix @ R_src)
    assert lift is not None
    coords = induced_on_subquotient(basis_src, basis_tgt, lift.kron(g.matrix))
    return GroupHom(src, tgt, coords)


def zero_hom(G: FgAbelianGroup, H: FgAbelianGroup) -> GroupHom:
    return GroupHom(G, H, IntMatrix.zeros(H.n_generators, G.n_generators))

