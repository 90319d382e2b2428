import random

from hypothesis import given, settings
from hypothesis import strategies as st

from locglob.linalg import (identity_matrix, integer_kernel, kernel_mod_lattice,
                            lattice_image_basis, lattice_quotient, mat_mul,
                            mat_vec, smith_normal_form, solve_integer)

matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-30, 30), min_size=n, max_size=n),
                           min_size=m, max_size=m)))


@given(matrices)
@settings(max_examples=150, deadline=None)
def test_snf_decomposition(a):
    s = smith_normal_form(a)
    m, n = len(a), len(a[0])
    paq = mat_mul(mat_mul([list(r) for r in s.p], a), [list(r) for r in s.q])
    assert tuple(tuple(r) for r in paq) == s.d
    assert mat_mul([list(r) for r in s.p], [list(r) for r in s.pinv]) == identity_matrix(m)
    assert mat_mul([list(r) for r in s.qinv], [list(r) for r in s.q]) == identity_matrix(n)
    diag = [s.d[i][i] for i in range(min(m, n))]
    for x, y in zip(diag, diag[1:]):
        if x:
            assert y % x == 0
        else:
            assert y == 0
    assert all(x >= 0 for x in diag)
    for i in range(m):
        for j in range(n):
            if i != j:
                assert s.d[i][j] == 0


@given(matrices)
@settings(max_examples=100, deadline=None)
def test_integer_kernel_annihilates(a):
    for v in integer_kernel(a):
        assert all(x == 0 for x in mat_vec(a, v))


def test_kernel_spans_all_solutions():
    a = [[2, 4, 0], [0, 0, 3]]
    kern = integer_kernel(a)
    # (2, -1, 0) is a solution and must be an integer combination of the basis
    from locglob.linalg import columns_matrix
    snf = smith_normal_form(columns_matrix(kern, 3))
    assert solve_integer(snf, [2, -1, 0]) is not None


def test_solve_integer():
    a = [[2, 0], [0, 3]]
    s = smith_normal_form(a)
    assert solve_integer(s, [4, 9]) == [2, 3]
    assert solve_integer(s, [1, 0]) is None


def test_lattice_image_basis_full_rank():
    basis = lattice_image_basis([[2, 1], [0, 3]])
    assert len(basis) == 2


def test_lattice_quotient_z4():
    # Z^1 / 4Z^1 = Z/4
    q = lattice_quotient([[1]], [[4]], 1)
    assert q.invariant_factors == (4,)
    assert q.coordinates([1]) == (1,)
    assert q.coordinates([4]) == (0,)
    assert q.is_trivial([8])
    rep = q.representative(0)
    assert q.coordinates(rep) == (1,)


def test_lattice_quotient_mixed():
    # Z^2 / <(2,0),(0,3)> = Z/2 x Z/3 = Z/6
    q = lattice_quotient(identity_matrix(2), [[2, 0], [0, 3]], 2)
    assert q.invariant_factors == (6,)
    assert q.order() == 6


def test_kernel_mod_lattice():
    # x + y = 0 mod 4 inside Z^2
    gens = kernel_mod_lattice([[1, 1]], [4], 2)
    rng = random.Random(3)
    for _ in range(40):
        coeffs = [rng.randrange(-5, 6) for _ in gens]
        vec = [sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(2)]
        assert (vec[0] + vec[1]) % 4 == 0
    # and it contains (1, 3)
    from locglob.linalg import columns_matrix
    snf = smith_normal_form(columns_matrix(gens, 2))
    assert solve_integer(snf, [1, 3]) is not None
