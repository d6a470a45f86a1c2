import pytest
from hypothesis import given, strategies as st

from smalehom.abelian import FgAbelianGroup
from smalehom.corpus import CorpusConfig, hom_corpus
from smalehom.errors import CommutationError, ValidationError
from smalehom.fiber import putnam_complex, solenoid_preset
from smalehom.graphs import GraphHom, bowen_franks, complete_graph, cycle_graph, fold_hom, full_shift
from smalehom.limits import EndoModule, limit_invariants
from smalehom.linalg import IntMatrix, exterior_power
from smalehom.pipeline import (
    k_rank_split,
    koszul_group_homology,
    kunneth_crosscheck,
    kunneth_predict,
    odometer_homology,
    odometer_level_tower,
    ruelle_report,
    spectral_sheet,
    stable_homology,
    tor_corrections,
)

M = IntMatrix.from_rows


def groups(seq):
    return [str(g) for g in seq]


def test_stable_homology_examples():
    assert [h.display() for h in stable_homology(solenoid_preset(4))] == ["Z[1/2]", "Z"]
    G = cycle_graph(3)
    H = stable_homology(putnam_complex(GraphHom.identity(G)))
    assert len(H) == 1 and H[0].tag == "free" and H[0].rank == 3
    H = stable_homology(putnam_complex(fold_hom(full_shift(3))))
    assert [h.display() for h in H] == ["Z[1/3]", "0"]


def test_sheet_shape():
    H = stable_homology(solenoid_preset(3))
    S = spectral_sheet(H)
    assert (S.rank_bound_K0, S.rank_bound_K1) == (1, 1)
    for p in range(3):
        for q in range(S.rows):
            expect = H[p] if q % 2 == 0 and p < len(H) else None
            got = S.entry(p, q)
            assert got.is_zero() if expect is None else got is expect
    empty = spectral_sheet([limit_invariants(EndoModule.free(IntMatrix.zeros(0, 0)))])
    assert empty.table == {} and (empty.rank_bound_K0, empty.rank_bound_K1) == (0, 0)
    S = spectral_sheet(stable_homology(putnam_complex(fold_hom(full_shift(2)))))
    assert (S.rank_bound_K0, S.rank_bound_K1) == (1, 0)


def test_ruelle_solenoid():
    R = ruelle_report(solenoid_preset(4))
    assert groups(R.C_homology) == ["Z/3", "Z"]
    assert groups(R.Cprime_homology) == ["0", "Z"]
    assert groups(R.determined.values()) == ["Z/3", "Z", "Z"]
    assert R.extension_statement(0) == "0 -> Z/3 -> K_0 -> Z -> 0"
    assert str(R.split_k_group(0)) == "Z ⊕ Z/3"
    assert R.differentials_zero


def test_ruelle_identity_single_column():
    G = complete_graph(3)
    R = ruelle_report(putnam_complex(GraphHom.identity(G)))
    bf, ker = bowen_franks(G)
    assert len(R.les_segments) == 2
    assert R.determined[0].is_isomorphic(bf)
    # E_1 sits between H_0(C') = ker(1 - gamma) and H_1(C) = 0
    assert R.determined[1].is_isomorphic(ker)
    R = ruelle_report(putnam_complex(GraphHom.identity(full_shift(1))))
    assert groups(R.determined.values()) == ["Z", "Z"]


def test_ruelle_fold():
    R = ruelle_report(putnam_complex(fold_hom(full_shift(4))))
    assert groups(R.C.groups) == ["Z/3 ⊕ Z/3", "Z/3"]
    assert groups(R.C_homology) == ["Z/3", "0"]
    assert all(g.is_trivial() for g in R.Cprime_homology)


def test_ruelle_extension_is_flagged():
    # C' nonzero in degree 0 together with C nonzero in degree 1
    one = IntMatrix.identity(1)
    from smalehom.fiber import PutnamComplex
    P = PutnamComplex((1, 1), (one, one), (None, IntMatrix.zeros(1, 1)))
    R = ruelle_report(P)
    statuses = [s.status for s in R.les_segments]
    assert statuses == ["determined", "extension", "determined"]
    assert R.split_k_group(1) is None


def test_hyperhomology_agrees_with_determined_entries():
    for name, pi in hom_corpus(CorpusConfig(count=10)):
        R = ruelle_report(putnam_complex(pi))
        for p, g in R.determined.items():
            h = R.hyperhomology[p]
            assert h.rank == g.free_rank and h.eventual_torsion == g.torsion, name


def test_kunneth_predict_examples():
    S2 = stable_homology(solenoid_preset(2))
    S3 = stable_homology(solenoid_preset(3))
    pred = kunneth_predict(S2, S3)
    assert [h.display() for h in pred[:3]] == ["Z[1/6]", "Z[1/2] ⊕ Z[1/3]", "Z"]
    assert all(h.is_zero() for h in tor_corrections(S2, S3))
    unit = [limit_invariants(EndoModule.free(IntMatrix.identity(1)))]
    pred = kunneth_predict(S3, unit)
    assert all(a.same_group(b) for a, b in zip(pred, S3 + [pred[-1]]))
    Z2 = [EndoModule(FgAbelianGroup(1, M([[2]])), M([[1]]))]
    pred = kunneth_predict(Z2, Z2)
    assert [h.eventual_torsion for h in pred] == [(2,), (2,)]


@pytest.mark.parametrize("p1,p2", [
    (GraphHom.identity(full_shift(2)), GraphHom.identity(cycle_graph(2))),
    (fold_hom(full_shift(2)), GraphHom.identity(full_shift(3))),
    (fold_hom(cycle_graph(2)), fold_hom(full_shift(2))),
])
def test_kunneth_crosscheck(p1, p2):
    assert kunneth_crosscheck(p1, p2).passed


def test_odometer_homology_examples():
    assert [h.display() for h in odometer_homology(M([[2]]))] == ["Z[1/2]", "Z"]
    assert [h.display() for h in odometer_homology(IntMatrix.diagonal([2, 3]))] == [
        "Z[1/6]", "Z[1/2] ⊕ Z[1/3]", "Z"]
    for N in (1, 2, 3):
        H = odometer_homology(IntMatrix.identity(N).scale(2))
        assert sum(h.rank for h in H) == 2 ** N
        assert k_rank_split(H) == (2 ** (N - 1), 2 ** (N - 1))
    with pytest.raises(ValidationError):
        odometer_homology(M([[1, 1], [0, 1]]))


def test_koszul_examples():
    one = IntMatrix.identity(1)
    assert [koszul_group_homology([one], k).invariants() for k in (0, 1)] == [(1, []), (1, [])]
    swap = M([[0, 1], [1, 0]])
    assert [koszul_group_homology([swap], k).invariants() for k in (0, 1)] == [(1, []), (1, [])]
    assert [koszul_group_homology([one, one], k).free_rank for k in range(3)] == [1, 2, 1]
    with pytest.raises(CommutationError):
        koszul_group_homology([M([[1, 1], [0, 1]]), M([[1, 0], [1, 1]])], 0)


@given(st.integers(2, 5))
def test_koszul_cycle_action(m):
    cyc = M([[1 if (i - j) % m == 1 else 0 for j in range(m)] for i in range(m)])
    assert [koszul_group_homology([cyc], k).invariants() for k in (0, 1)] == [(1, []), (1, [])]


def test_tower_examples():
    T = odometer_level_tower(M([[2]]), 2)
    assert [groups(L.homology) for L in T.levels[1:]] == [["Z", "Z"], ["Z", "Z"]]
    assert T.step_maps[0] == (M([[2]]), M([[1]]))
    T = odometer_level_tower(M([[5]]), 1)
    assert len(T.levels[1].cosets.cosets) == 5
    T = odometer_level_tower(IntMatrix.identity(2).scale(2), 1)
    assert [h.free_rank for h in T.levels[1].homology] == [1, 2, 1]
    assert T.matches_exterior_powers()


@pytest.mark.parametrize("B", [M([[2]]), M([[3]]), IntMatrix.identity(2).scale(2), M([[1, 1], [-1, 1]])])
def test_tower_matches_exterior_powers(B):
    T = odometer_level_tower(B, 2)
    assert T.matches_exterior_powers()
    N = B.rows
    for j, row in enumerate(T.certified_bases[1:], start=1):
        for k, P in enumerate(row):
            # P phi_{0->j} = (ext^{N-k} B^T)^j with P unimodular
            assert P is not None
    for k in range(N + 1):
        W = exterior_power(B.T, N - k)
        s = T.step_smith_invariants(0, k)
        from smalehom.linalg import smith_normal_form
        assert s == smith_normal_form(W).factors
