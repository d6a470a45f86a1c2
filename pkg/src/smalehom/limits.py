"""Stationary inductive limits ``lim (M -> M -> ...)`` along one endomorphism.

The limit of ``(M, phi)`` only depends on ``M`` modulo the eventual kernel
``U_j ker(phi^j)``.  After that quotient ``phi`` is injective, hence bijective
on the (finite) torsion subgroup, so the torsion of the limit is the torsion
of the quotient and the free part is described by the action of ``phi`` on
the free quotient.  No iteration count beyond the stabilisation of the
kernel chain is needed.

Deciding isomorphism of two limits in general amounts to a conjugacy problem
for integer matrices; this module reports invariants and a presentation and
never claims more than it certifies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .abelian import FgAbelianGroup, GroupHom, format_group, tensor_product, tor_hom
from .linalg import IntMatrix, block_diagonal, determinant, lattice_contains, preimage_lattice


@dataclass(frozen=True)
class EndoModule:
    module: FgAbelianGroup
    endo: IntMatrix

    def __post_init__(self):
        GroupHom(self.module, self.module, self.endo)

    @classmethod
    def free(cls, matrix: IntMatrix) -> EndoModule:
        return cls(FgAbelianGroup.free(matrix.rows), matrix)

    @property
    def hom(self) -> GroupHom:
        return GroupHom(self.module, self.module, self.endo)

    def power(self, k: int) -> EndoModule:
        return EndoModule(self.module, self.endo ** k)

    def normalized(self) -> EndoModule:
        group, to_new, from_new = self.module.normalized()
        return EndoModule(group, to_new @ self.endo @ from_new)

    def is_zero(self) -> bool:
        return self.module.is_trivial()


def direct_sum(parts: Sequence[EndoModule]) -> EndoModule:
    if not parts:
        return EndoModule(FgAbelianGroup.trivial(), IntMatrix.zeros(0, 0))
    n = sum(p.module.n_generators for p in parts)
    rel = block_diagonal([p.module.relations for p in parts])
    return EndoModule(FgAbelianGroup(n, rel), block_diagonal([p.endo for p in parts]))


def eventual_kernel(E: EndoModule) -> IntMatrix:
    """Lattice basis of the preimage in ``Z^n`` of ``U_j ker(phi^j)``."""
    lat = E.module.relations
    while True:
        nxt = preimage_lattice(E.endo, lat)
        if lattice_contains(lat, nxt):
            return nxt
        lat = nxt


def stabilize(E: EndoModule) -> EndoModule:
    """Quotient by the eventual kernel; the result has an injective endomorphism."""
    E = E.normalized()
    ker = eventual_kernel(E)
    quotient = EndoModule(FgAbelianGroup(E.module.n_generators, ker), E.endo)
    return quotient.normalized()


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _radical(n: int) -> int:
    r = 1
    for p in prime_factors(n):
        r *= p
    return r


@dataclass(frozen=True)
class LimitInvariants:
    """Isomorphism invariants of a stationary limit plus the presentation behind them.

    ``tag`` is one of ``zero``, ``finite``, ``free``, ``localized`` or
    ``general``.  ``localized`` is only assigned when the free action is
    diagonal and there is no torsion; ``primes`` then lists the primes that
    get inverted.
    """

    rank: int
    eventual_torsion: tuple[int, ...]
    free_action: IntMatrix
    tag: str
    primes: tuple[int, ...] = ()
    presentation: EndoModule | None = field(default=None, compare=False, repr=False)

    def same_group(self, other: LimitInvariants) -> bool:
        return self.rank == other.rank and self.eventual_torsion == other.eventual_torsion

    def is_zero(self) -> bool:
        return self.tag == "zero"

    def display(self) -> str:
        if self.tag == "zero":
            return "0"
        if self.tag == "finite":
            return format_group(0, self.eventual_torsion)
        if self.tag == "free":
            return format_group(self.rank, ())
        if self.tag == "localized":
            radicals = [_radical(self.free_action[i, i]) for i in range(self.rank)]
            pieces = []
            for m in sorted(set(radicals)):
                count = radicals.count(m)
                base = "Z" if m == 1 else f"Z[1/{m}]"
                pieces.append(base if count == 1 else f"{base}^{count}")
            return " ⊕ ".join(pieces)
        tors = format_group(0, self.eventual_torsion)
        free = f"lim(Z^{self.rank}, {self.free_action.tolist()})" if self.rank else ""
        return " ⊕ ".join(p for p in (free, tors if self.eventual_torsion else "") if p)


def limit_invariants(E: EndoModule) -> LimitInvariants:
    S = stabilize(E)
    torsion = S.module.torsion
    s = len(torsion)
    n = S.module.n_generators
    r = n - s
    A = S.endo.submatrix(range(s, n), range(s, n))
    primes: tuple[int, ...] = ()
    if n == 0:
        tag = "zero"
    elif r == 0:
        tag = "finite"
    elif s:
        tag = "general"
    elif abs(determinant(A)) == 1:
        tag = "free"
    elif A.is_diagonal():
        tag = "localized"
        primes = tuple(sorted({p for i in range(r) for p in prime_factors(A[i, i])}))
    else:
        tag = "general"
    return LimitInvariants(r, tuple(torsion), A, tag, primes, presentation=S)


def shift_cok_ker(E: EndoModule) -> tuple[FgAbelianGroup, FgAbelianGroup]:
    """``cok(1 - phi)`` and ``ker(1 - phi)`` computed on M itself.

    These agree with the cokernel and kernel of ``1 - alpha`` on the limit,
    where ``alpha`` is the shift ``[v, i] -> [v, i + 1]``.  Computing on the
    stabilised module gives isomorphic groups (``phi`` is nilpotent on the
    eventual kernel, so ``1 - phi`` is invertible there), which the tests
    check, but the direct computation is the one used.
    """
    n = E.module.n_generators
    one_minus = IntMatrix.identity(n) - E.endo
    cok = FgAbelianGroup(n, E.module.relations.hstack(one_minus))
    ker = GroupHom(E.module, E.module, one_minus).kernel()[0]
    return cok, ker


def tensor_limits(E: EndoModule, F: EndoModule) -> EndoModule:
    return EndoModule(tensor_product(E.module, F.module), E.endo.kron(F.endo))


def tor_limits(E: EndoModule, F: EndoModule) -> EndoModule:
    h = tor_hom(E.hom, F.hom)
    return EndoModule(h.source, h.matrix)
