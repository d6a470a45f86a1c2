"""Top-level invariants assembled from normalized complexes.

Stable homology, the E2 sheet it determines, the complexes of Bowen-Franks
groups and kernels together with their long exact sequence, Kunneth
predictions for products, and the homology of Z^N odometers via exterior
powers and via an explicit Koszul tower.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .abelian import (
    ChainComplexZ,
    FgAbelianGroup,
    GroupComplex,
    chain_map_on_homology,
    homology_with_basis,
    induced_on_subquotient,
)
from .errors import CommutationError, ValidationError
from .fiber import PutnamComplex, putnam_complex
from .graphs import GraphHom, product_hom
from .limits import (
    EndoModule,
    LimitInvariants,
    direct_sum,
    limit_invariants,
    tensor_limits,
    tor_limits,
)
from .linalg import (
    IntMatrix,
    block_diagonal,
    determinant,
    exterior_power,
    is_unimodular,
    kernel_basis,
    smith_normal_form,
    solve_integer,
)

ZERO_LIMIT = limit_invariants(EndoModule.free(IntMatrix.zeros(0, 0)))


# -- stable homology -----------------------------------------------------------


def homology_modules(P: PutnamComplex, degrees: int | None = None) -> list[EndoModule]:
    """``(H_n(Z B), gamma_*)`` for n below ``degrees`` (default: all stored degrees)."""
    C = P.to_chain_complex()
    top = P.top_degree + 1 if degrees is None else degrees
    out = []
    for n in range(top):
        H, basis = homology_with_basis(C, n)
        g = induced_on_subquotient(basis, basis, P.gamma(n)) if basis.cols else IntMatrix.zeros(0, 0)
        out.append(EndoModule(H, g).normalized())
    return out


def stable_homology(P: PutnamComplex, degrees: int | None = None) -> list[LimitInvariants]:
    """Limit invariants of homology along gamma; degrees above the complex are zero."""
    return [limit_invariants(E) for E in homology_modules(P, degrees)]


def _pad(H: Sequence[LimitInvariants], n: int) -> list[LimitInvariants]:
    return list(H) + [ZERO_LIMIT] * (n - len(H))


def invariants_agree(a: Sequence[LimitInvariants], b: Sequence[LimitInvariants]) -> bool:
    n = max(len(a), len(b))
    return all(x.same_group(y) for x, y in zip(_pad(a, n), _pad(b, n)))


# -- E2 sheet -----------------------------------------------------------------


@dataclass(frozen=True)
class SpectralSheet:
    """``E2_{p,q} = H_p`` for even q and 0 for odd q; only nonzero entries are stored.

    ``rows`` is how many q-rows the table spans; the pattern is 2-periodic.
    """

    homology: tuple[LimitInvariants, ...]
    table: dict = field(hash=False)
    rank_bound_K0: int
    rank_bound_K1: int
    rows: int = 4

    def entry(self, p: int, q: int) -> LimitInvariants:
        return self.table.get((p, q), ZERO_LIMIT)


def spectral_sheet(H: Sequence[LimitInvariants], rows: int = 4) -> SpectralSheet:
    table = {}
    for p, h in enumerate(H):
        if h.is_zero():
            continue
        for q in range(0, rows, 2):
            table[(p, q)] = h
    k0 = sum(h.rank for p, h in enumerate(H) if p % 2 == 0)
    k1 = sum(h.rank for p, h in enumerate(H) if p % 2 == 1)
    return SpectralSheet(tuple(H), table, k0, k1, rows)


# -- Bowen-Franks complexes ----------------------------------------------------


@dataclass(frozen=True)
class LesSegment:
    """``H_{p-1}(C') -> E_p -> H_p(C) -> H_{p-2}(C')`` with the verdict on ``E_p``.

    ``status`` is ``determined`` (``value`` holds the group) or ``extension``
    (``E_p`` is an extension of a subgroup of ``H_p(C)`` by a quotient of
    ``H_{p-1}(C')``; ``value`` is None).
    """

    p: int
    left: FgAbelianGroup
    right: FgAbelianGroup
    next_left: FgAbelianGroup
    status: str
    value: FgAbelianGroup | None

    def describe(self) -> str:
        e = str(self.value) if self.value is not None else f"E_{self.p}"
        return f"{self.left} -> {e} -> {self.right} -> {self.next_left}"


@dataclass(frozen=True)
class RuelleReport:
    C: GroupComplex
    Cprime: GroupComplex
    C_homology: tuple[FgAbelianGroup, ...]
    Cprime_homology: tuple[FgAbelianGroup, ...]
    les_segments: tuple[LesSegment, ...]
    hyperhomology: tuple[LimitInvariants, ...]

    @property
    def determined(self) -> dict[int, FgAbelianGroup]:
        return {s.p: s.value for s in self.les_segments if s.status == "determined"}

    @property
    def differentials_zero(self) -> bool:
        return all(self.C.group(n - 1).contains(self.C.differential(n)) for n in range(1, len(self.C.groups))) and \
            all(self.Cprime.differential(n).is_zero() for n in range(1, len(self.Cprime.groups)))

    def k_pieces(self, i: int) -> list[FgAbelianGroup] | None:
        """Successive quotients of the filtration of K_i, bottom first (None if undetermined)."""
        pieces = []
        for s in self.les_segments:
            if s.p % 2 != i:
                continue
            if s.value is None:
                return None
            if not s.value.is_trivial():
                pieces.append(s.value)
        return pieces

    def extension_statement(self, i: int) -> str:
        pieces = self.k_pieces(i)
        if pieces is None:
            return f"K_{i}: undetermined"
        if not pieces:
            return f"K_{i} = 0"
        if len(pieces) == 1:
            return f"K_{i} = {pieces[0]}"
        if len(pieces) == 2:
            return f"0 -> {pieces[0]} -> K_{i} -> {pieces[1]} -> 0"
        return f"K_{i} filtered with quotients " + ", ".join(map(str, pieces))

    def split_k_group(self, i: int) -> FgAbelianGroup | None:
        """K_i when the filtration is forced to split (every piece above the bottom is free)."""
        pieces = self.k_pieces(i)
        if pieces is None:
            return None
        if any(q.torsion for q in pieces[1:]):
            return None
        rank = sum(q.free_rank for q in pieces)
        torsion = pieces[0].torsion if pieces else ()
        return FgAbelianGroup.from_invariants(rank, torsion)


def _bf_complexes(P: PutnamComplex) -> tuple[GroupComplex, GroupComplex]:
    n = P.top_degree + 1
    one_minus = [IntMatrix.identity(P.ranks[k]) - P.gammas[k] for k in range(n)]
    groups = [FgAbelianGroup(P.ranks[k], one_minus[k]) for k in range(n)]
    C = GroupComplex(groups, [P.boundaries[k] for k in range(1, n)])
    kers = [kernel_basis(a) for a in one_minus]
    diffs = []
    for k in range(1, n):
        coords = solve_integer(kers[k - 1], P.boundaries[k] @ kers[k])
        if coords is None:
            raise CommutationError("boundary does not preserve ker(1 - gamma)", degree=k)
        diffs.append(coords)
    Cp = GroupComplex([FgAbelianGroup.free(K.cols) for K in kers], diffs)
    return C, Cp


def total_complex(P: PutnamComplex) -> tuple[ChainComplexZ, list[IntMatrix]]:
    """Cone of ``1 - gamma``: ``T_p = Z B_p + Z B_{p-1}`` with its gamma action."""
    n = P.top_degree + 1
    r = lambda k: P.ranks[k] if 0 <= k < n else 0  # noqa: E731

    def d(k):
        return P.boundaries[k] if 1 <= k < n else IntMatrix.zeros(r(k - 1), r(k))

    def g(k):
        return P.gammas[k] if 0 <= k < n else IntMatrix.zeros(0, 0)

    ranks = [r(p) + r(p - 1) for p in range(n + 1)]
    bounds = []
    for p in range(1, n + 1):
        one_minus = IntMatrix.identity(r(p - 1)) - g(p - 1)
        top = d(p).hstack(one_minus)
        bottom = IntMatrix.zeros(r(p - 2), r(p)).hstack(-d(p - 1))
        bounds.append(top.vstack(bottom))
    chain = [block_diagonal([g(p), g(p - 1)]) for p in range(n + 1)]
    return ChainComplexZ(ranks, bounds), chain


def hyperhomology(P: PutnamComplex) -> list[LimitInvariants]:
    T, chain = total_complex(P)
    out = []
    for p in range(T.top_degree + 1):
        H, basis = homology_with_basis(T, p)
        g = induced_on_subquotient(basis, basis, chain[p]) if basis.cols else IntMatrix.zeros(0, 0)
        out.append(limit_invariants(EndoModule(H, g).normalized()))
    return out


def ruelle_report(P: PutnamComplex) -> RuelleReport:
    """BF-group complexes, their homology and the long exact sequence around ``E_{p0}``.

    A term is marked determined only when vanishing neighbours force it.
    The cone-of-``(1 - gamma)`` homology is attached as an independent
    cross-check and never feeds the determined column.
    """
    C, Cp = _bf_complexes(P)
    n = P.top_degree + 1
    HC = [C.homology(k) for k in range(n + 2)]
    HCp = [Cp.homology(k) for k in range(n + 2)]
    zero = FgAbelianGroup.trivial()
    hc = lambda k: HC[k] if 0 <= k < len(HC) else zero  # noqa: E731
    hcp = lambda k: HCp[k] if 0 <= k < len(HCp) else zero  # noqa: E731
    segments = []
    for p in range(n + 1):
        left, right, nxt = hcp(p - 1), hc(p), hcp(p - 2)
        if left.is_trivial() and nxt.is_trivial():
            seg = LesSegment(p, left, right, nxt, "determined", right)
        elif right.is_trivial() and hc(p + 1).is_trivial():
            seg = LesSegment(p, left, right, nxt, "determined", left)
        else:
            seg = LesSegment(p, left, right, nxt, "extension", None)
        segments.append(seg)
    return RuelleReport(C, Cp, tuple(HC[:n]), tuple(HCp[:n]), tuple(segments), tuple(hyperhomology(P)))


# -- Kunneth -----------------------------------------------------------------


def _presentation(h) -> EndoModule:
    if isinstance(h, EndoModule):
        return h
    if h.presentation is None:
        raise ValidationError("limit invariants carry no presentation")
    return h.presentation


def kunneth_predict(H1: Sequence, H2: Sequence) -> list[LimitInvariants]:
    """Degree k: tensor terms with a + b = k plus Tor terms with a + b = k - 1."""
    A = [_presentation(h) for h in H1]
    B = [_presentation(h) for h in H2]
    if not A or not B:
        return []
    out = []
    for k in range(len(A) + len(B)):
        parts = [tensor_limits(A[a], B[k - a]) for a in range(len(A)) if 0 <= k - a < len(B)]
        parts += [tor_limits(A[a], B[k - 1 - a]) for a in range(len(A)) if 0 <= k - 1 - a < len(B)]
        out.append(limit_invariants(direct_sum(parts)))
    return out


def tor_corrections(H1: Sequence, H2: Sequence) -> list[LimitInvariants]:
    """Only the Tor part of each degree of the prediction."""
    A = [_presentation(h) for h in H1]
    B = [_presentation(h) for h in H2]
    out = []
    for k in range(len(A) + len(B)):
        parts = [tor_limits(A[a], B[k - 1 - a]) for a in range(len(A)) if 0 <= k - 1 - a < len(B)]
        out.append(limit_invariants(direct_sum(parts)))
    return out


@dataclass(frozen=True)
class KunnethCheck:
    predicted: tuple[LimitInvariants, ...]
    computed: tuple[LimitInvariants, ...]
    per_degree: tuple[bool, ...]

    @property
    def passed(self) -> bool:
        return all(self.per_degree)


def kunneth_crosscheck(pi1: GraphHom, pi2: GraphHom, N_max: int | None = None) -> KunnethCheck:
    H1 = stable_homology(putnam_complex(pi1, N_max))
    H2 = stable_homology(putnam_complex(pi2, N_max))
    predicted = kunneth_predict(H1, H2)
    computed = stable_homology(putnam_complex(product_hom(pi1, pi2), N_max))
    n = max(len(predicted), len(computed))
    p, c = _pad(predicted, n), _pad(computed, n)
    return KunnethCheck(tuple(p), tuple(c), tuple(x.same_group(y) for x, y in zip(p, c)))


# -- odometers ---------------------------------------------------------------


def _check_odometer(B: IntMatrix) -> None:
    if not B.is_square() or B.rows == 0:
        raise ValidationError("odometer matrix must be square and nonempty")
    if abs(determinant(B)) < 2:
        raise ValidationError("odometer matrix needs |det| >= 2")


def odometer_homology(B: IntMatrix) -> list[LimitInvariants]:
    """``H_{N-k}`` is the limit of ``Z^{C(N,k)}`` along ``exterior_power(B^T, k)``; indexed by degree."""
    _check_odometer(B)
    N = B.rows
    return [limit_invariants(EndoModule.free(exterior_power(B.T, N - n))) for n in range(N + 1)]


def _check_actions(actions: Sequence[IntMatrix]) -> int:
    if not actions:
        raise ValidationError("need at least one action")
    d = actions[0].rows
    for T in actions:
        if T.shape != (d, d):
            raise ValidationError("actions must be square of a common size")
    for S, T in itertools.combinations(actions, 2):
        if S @ T != T @ S:
            raise CommutationError("actions do not commute")
    return d


def koszul_complex(actions: Sequence[IntMatrix]) -> ChainComplexZ:
    """Degree k is ``Z^d (x) ext^{N-k} Z^N``; the differential wedges with ``sum (1 - T_i) v_i``.

    Generator index is ``subset_index * d + coordinate`` with subsets in
    lexicographic order.
    """
    d = _check_actions(actions)
    N = len(actions)
    subsets = [list(itertools.combinations(range(N), j)) for j in range(N + 1)]
    index = [{S: k for k, S in enumerate(level)} for level in subsets]
    one_minus = [IntMatrix.identity(d) - T for T in actions]
    ranks = [comb(N, N - k) * d for k in range(N + 1)]
    bounds = []
    for k in range(1, N + 1):
        src_j, tgt_j = N - k, N - k + 1
        out = [[0] * ranks[k] for _ in range(ranks[k - 1])]
        for si, S in enumerate(subsets[src_j]):
            for i in range(N):
                if i in S:
                    continue
                sign = -1 if sum(1 for s in S if s < i) % 2 else 1
                ti = index[tgt_j][tuple(sorted(S + (i,)))]
                A = one_minus[i]
                for r in range(d):
                    for c in range(d):
                        if A[r, c]:
                            out[ti * d + r][si * d + c] += sign * A[r, c]
        bounds.append(IntMatrix(ranks[k - 1], ranks[k], out))
    return ChainComplexZ(ranks, bounds)


def koszul_group_homology(actions: Sequence[IntMatrix], k: int) -> FgAbelianGroup:
    """``H_k(Z^N; Z^d)`` for N commuting automorphisms of ``Z^d``."""
    C = koszul_complex(actions)
    return homology_with_basis(C, k)[0]


@dataclass(frozen=True)
class CosetSpace:
    """``Z^N / B^j Z^N`` with coordinates ``U x mod factors`` from a Smith decomposition."""

    U: IntMatrix
    U_inv: IntMatrix
    factors: tuple[int, ...]
    cosets: tuple[tuple[int, ...], ...]

    def coordinates(self, x: Sequence[int]) -> tuple[int, ...]:
        y = self.U.apply(x)
        return tuple(v % f for v, f in zip(y, self.factors))

    def representative(self, c: Sequence[int]) -> tuple[int, ...]:
        return self.U_inv.apply(c)

    def translation(self, i: int) -> IntMatrix:
        n = len(self.cosets)
        pos = {c: k for k, c in enumerate(self.cosets)}
        e = [0] * self.U.cols
        e[i] = 1
        step = self.U.apply(e)
        out = [[0] * n for _ in range(n)]
        for k, c in enumerate(self.cosets):
            img = tuple((a + b) % f for a, b, f in zip(c, step, self.factors))
            out[pos[img]][k] = 1
        return IntMatrix(n, n, out)


def coset_space(M: IntMatrix) -> CosetSpace:
    snf = smith_normal_form(M)
    factors = tuple(snf.S[i, i] for i in range(M.rows))
    if any(f == 0 for f in factors):
        raise ValidationError("coset space of a singular matrix is infinite")
    cosets = tuple(itertools.product(*(range(f) for f in factors)))
    return CosetSpace(snf.U, snf.U_inv, factors, cosets)


@dataclass(frozen=True)
class TowerLevel:
    level: int
    cosets: CosetSpace
    complex: ChainComplexZ
    homology: tuple[FgAbelianGroup, ...]


@dataclass(frozen=True)
class OdometerTower:
    """Koszul homology of ``Z^N`` acting on ``C(Z^N / B^j Z^N, Z)`` for ``j = 0..n_levels``.

    ``step_maps[j][k]`` is the pullback ``H_k(level j) -> H_k(level j+1)`` in
    the free bases that :meth:`FgAbelianGroup.normalized` produces.
    ``certified_bases[j][k]`` is the integral unimodular change of basis at
    level j under which every step map becomes ``exterior_power(B^T, N - k)``,
    or None if no such basis exists.
    """

    B: IntMatrix
    levels: tuple[TowerLevel, ...]
    step_maps: tuple[tuple[IntMatrix, ...], ...]
    certified_bases: tuple[tuple[IntMatrix | None, ...], ...]

    def matches_exterior_powers(self) -> bool:
        return all(P is not None for row in self.certified_bases for P in row)

    def step_smith_invariants(self, j: int, k: int) -> tuple[int, ...]:
        return smith_normal_form(self.step_maps[j][k]).factors


def _pullback(lo: CosetSpace, hi: CosetSpace) -> IntMatrix:
    pos = {c: k for k, c in enumerate(lo.cosets)}
    out = [[0] * len(lo.cosets) for _ in hi.cosets]
    for r, c in enumerate(hi.cosets):
        out[r][pos[lo.coordinates(hi.representative(c))]] = 1
    return IntMatrix(len(hi.cosets), len(lo.cosets), out)


def _free_homology(C: ChainComplexZ, k: int):
    H, basis = homology_with_basis(C, k)
    group, to_new, from_new = H.normalized()
    if group.torsion:
        raise ValidationError("odometer tower homology is expected to be free")
    return basis, to_new, from_new


def odometer_level_tower(B: IntMatrix, n_levels: int) -> OdometerTower:
    _check_odometer(B)
    if n_levels < 1:
        raise ValidationError("tower needs at least one level")
    N = B.rows
    spaces = [coset_space(B ** j) for j in range(n_levels + 1)]
    levels = []
    for j, X in enumerate(spaces):
        C = koszul_complex([X.translation(i) for i in range(N)])
        levels.append(TowerLevel(j, X, C, tuple(homology_with_basis(C, k)[0] for k in range(N + 1))))
    free = [[_free_homology(L.complex, k) for k in range(N + 1)] for L in levels]
    steps = []
    for j in range(n_levels):
        phi = _pullback(spaces[j], spaces[j + 1])
        maps = [IntMatrix.identity(comb(N, N - k)).kron(phi) for k in range(N + 1)]
        row = []
        for k in range(N + 1):
            h = chain_map_on_homology(levels[j].complex, levels[j + 1].complex, maps, k)
            _, _, from_src = free[j][k]
            _, to_tgt, _ = free[j + 1][k]
            row.append(to_tgt @ h.matrix @ from_src)
        steps.append(tuple(row))
    certified = [tuple(IntMatrix.identity(comb(N, k)) for k in range(N + 1))]
    total = [IntMatrix.identity(comb(N, k)) for k in range(N + 1)]
    for j in range(n_levels):
        row = []
        for k in range(N + 1):
            total[k] = steps[j][k] @ total[k]
            W = exterior_power(B.T, N - k) ** (j + 1)
            row.append(_certify(W, total[k]))
        certified.append(tuple(row))
    return OdometerTower(B, tuple(levels), tuple(steps), tuple(certified))


def _certify(W: IntMatrix, phi: IntMatrix) -> IntMatrix | None:
    """Unimodular P with ``P phi = W``, if one exists."""
    if phi.rows != phi.cols or determinant(phi) == 0:
        return None
    # P = W phi^{-1} must be integral: solve phi^T P^T = W^T.
    Pt = solve_integer(phi.T, W.T)
    if Pt is None:
        return None
    P = Pt.T
    return P if is_unimodular(P) else None


def k_rank_split(H: Sequence[LimitInvariants]) -> tuple[int, int]:
    return (sum(h.rank for p, h in enumerate(H) if p % 2 == 0),
            sum(h.rank for p, h in enumerate(H) if p % 2 == 1))


def describe(H: Sequence[LimitInvariants]) -> list[str]:
    return [h.display() for h in H]

