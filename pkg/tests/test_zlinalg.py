import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from trisect import zlinalg as Z


def mats(max_r=4, max_c=4, lo=-6, hi=6):
    return st.integers(1, max_r).flatmap(lambda r: st.integers(1, max_c).flatmap(
        lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)))


def test_det():
    assert Z.det_z([[2, 1], [7, 4]]) == 1
    assert Z.det_z([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 0
    assert Z.det_z([]) == 1


def test_snf_small():
    res = Z.snf([[2, 4], [6, 8]])
    assert res.diagonal() == [2, 4]
    Z.check_snf([[2, 4], [6, 8]], res)


@given(mats())
def test_snf_identities(A):
    r, c = len(A), len(A[0])
    res = Z.snf(A, r, c)
    Z.check_snf(A, res)
    assert Z.matmul(Z.matmul(res.U, A), res.V) == res.D
    assert abs(Z.det_z(res.U)) == 1 and abs(Z.det_z(res.V)) == 1
    d = [x for x in res.diagonal() if x]
    assert all(x > 0 for x in d)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))


@given(mats())
def test_snf_against_sympy(A):
    ref = smith_normal_form(sympy.Matrix(A), domain=sympy.ZZ)
    ref_d = sorted(abs(ref[i, i]) for i in range(min(ref.shape)))
    assert sorted(Z.snf(A).diagonal()) == ref_d


def test_solve():
    A = [[2, 0], [0, 3]]
    assert Z.solve_z(A, [4, 9]) == [2, 3]
    with pytest.raises(Z.NoSolution):
        Z.solve_z(A, [1, 0])
    with pytest.raises(Z.ZDimensionError):
        Z.solve_z(A, [1, 0, 0])


@given(mats(), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_solve_in_image(A, x):
    c = len(A[0])
    b = Z.matvec(A, x[:c])
    y = Z.solve_z(A, b)
    assert Z.matvec(A, y) == b


@given(mats())
def test_kernel(A):
    r, c = len(A), len(A[0])
    K = Z.kernel_z(A, r, c)
    assert all(not any(Z.matvec(A, k)) for k in K)
    assert len(K) == c - Z.snf(A, r, c).rank


def test_lattice_ops():
    A = Z.from_columns([[2, 0], [0, 1]], 2)
    B = Z.from_columns([[1, 0], [0, 2]], 2)
    meet = Z.lattice_intersect(A, B, 2)
    assert Z.lattices_equal(meet, [[2, 0], [0, 2]], 2)
    join = Z.lattice_sum(A, B, 2)
    assert Z.lattices_equal(join, [[1, 0], [0, 1]], 2)
    assert Z.lattices_equal(Z.lattice_intersect(A, A, 2), [[2, 0], [0, 1]], 2)


@given(mats(3, 3, -3, 3), mats(3, 3, -3, 3))
def test_lattice_meet_is_in_both(Ac, Bc):
    # rows here read as columns of a 3-dim lattice
    if any(len(v) != 3 for v in Ac + Bc):
        return
    A, B = Z.from_columns(Ac, 3), Z.from_columns(Bc, 3)
    for v in Z.lattice_intersect(A, B, 3):
        assert Z.in_lattice(A, v, 3) and Z.in_lattice(B, v, 3)
    for v in Ac + Bc:
        s = Z.lattice_sum(A, B, 3)
        assert not any(v) or Z.in_lattice(Z.from_columns(s, 3), v, 3)


def test_coker_and_hnf():
    assert Z.coker_invariants([[2, 0], [0, 0]], 2) == (1, [2])
    assert Z.hnf_rows([[2, 4], [1, 1]], 2) == [[1, 1], [0, 2]]
    assert Z.inverse_unimodular([[2, 1], [1, 1]]) == [[1, -1], [-1, 2]]
