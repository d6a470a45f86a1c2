from hypothesis import given, strategies as st

from smalehom.abelian import FgAbelianGroup
from smalehom.limits import (
    EndoModule,
    limit_invariants,
    shift_cok_ker,
    stabilize,
    tensor_limits,
    tor_limits,
)
from smalehom.linalg import IntMatrix

M = IntMatrix.from_rows


def endos(max_n=3):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(-2, 3), min_size=n, max_size=n), min_size=n, max_size=n)
        .map(lambda rows: EndoModule.free(IntMatrix(n, n, rows))))


def test_examples():
    assert limit_invariants(EndoModule.free(M([[0]]))).tag == "zero"
    h = limit_invariants(EndoModule.free(M([[0, 1], [0, 1]])))
    assert (h.rank, h.tag) == (1, "free")
    h = limit_invariants(EndoModule.free(M([[6]])))
    assert (h.rank, h.tag, h.primes, h.display()) == (1, "localized", (2, 3), "Z[1/6]")
    assert limit_invariants(EndoModule.free(M([[1, 1], [0, 1]]))).tag == "free"
    E = EndoModule(FgAbelianGroup(2, IntMatrix.diagonal([4, 0])), IntMatrix.diagonal([3, 1]))
    h = limit_invariants(E)
    assert (h.rank, h.eventual_torsion, h.tag) == (1, (4,), "general")
    assert limit_invariants(EndoModule.free(IntMatrix.diagonal([2, 3]))).display() == "Z[1/2] ⊕ Z[1/3]"
    assert limit_invariants(EndoModule.free(M([[1] * 3] * 3))).display() == "Z[1/3]"


def test_nilpotent_torsion_vanishes():
    E = EndoModule(FgAbelianGroup(1, M([[8]])), M([[2]]))
    assert limit_invariants(E).is_zero()


def test_shift_cok_ker_examples():
    cok, ker = shift_cok_ker(EndoModule.free(M([[1] * 3] * 3)))
    assert cok.torsion == (2,) and ker.is_trivial()
    cok, ker = shift_cok_ker(EndoModule.free(M([[0, 1], [0, 1]])))
    assert cok.invariants() == (1, []) and ker.invariants() == (1, [])
    cok, ker = shift_cok_ker(EndoModule.free(M([[0]])))
    assert cok.is_trivial() and ker.is_trivial()


@given(endos())
def test_stabilization_does_not_change_shift_groups(E):
    # 1 - phi is invertible on the eventual kernel, where phi is nilpotent
    a, b = shift_cok_ker(E)
    c, d = shift_cok_ker(stabilize(E))
    assert a.is_isomorphic(c) and b.is_isomorphic(d)


@given(endos())
def test_stabilized_endo_is_injective_and_limit_stable(E):
    S = stabilize(E)
    K = S.hom.kernel()[0]
    assert K.is_trivial()
    assert limit_invariants(S).same_group(limit_invariants(E))
    # passing to a power does not change the limit group
    assert limit_invariants(E.power(2)).same_group(limit_invariants(E))


def test_tensor_and_tor_of_limits():
    Z2 = EndoModule(FgAbelianGroup(1, M([[2]])), M([[1]]))
    two = EndoModule.free(M([[2]]))
    assert limit_invariants(tensor_limits(Z2, two)).is_zero()
    T = tor_limits(Z2, Z2)
    assert T.module.torsion == (2,) and T.endo == M([[1]])
    assert tor_limits(EndoModule.free(M([[3]])), EndoModule(FgAbelianGroup(1, M([[3]])), M([[1]]))).module.is_trivial()
    h = limit_invariants(tensor_limits(EndoModule.free(M([[2]])), EndoModule.free(M([[3]]))))
    assert h.display() == "Z[1/6]"
