"""Exact integer linear algebra: Smith normal form, kernels, lattice quotients.

Matrices are lists of lists of Python ints, row major.  Everything is exact;
no modular inverses are taken for composite moduli.  Sizes in this project
stay small (tens of rows), so the quadratic bookkeeping below is fine.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if k else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                for j in range(m):
                    oi[j] += c * bt[j]
    return out

def mat_vec(a, v):
    return [sum(c * x for c, x in zip(row, v)) for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


class _SnfState:
    """Mutable S with unimodular P, Q and their exact inverses, S = P*A*Q."""

    def __init__(self, mat):
        self.s = [row[:] for row in mat]
        self.m = len(mat)
        self.n = len(mat[0]) if mat else 0
        self.p = identity_matrix(self.m)
        self.pinv = identity_matrix(self.m)
        self.q = identity_matrix(self.n)
        self.qinv = identity_matrix(self.n)

    def swap_rows(self, i, j):
        if i == j:
            return
        self.s[i], self.s[j] = self.s[j], self.s[i]
        self.p[i], self.p[j] = self.p[j], self.p[i]
        for row in self.pinv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(self, i, j):
        if i == j:
            return
        for row in self.s:
            row[i], row[j] = row[j], row[i]
        for row in self.q:
            row[i], row[j] = row[j], row[i]
        self.qinv[i], self.qinv[j] = self.qinv[j], self.qinv[i]

    def negate_row(self, i):
        self.s[i] = [-x for x in self.s[i]]
        self.p[i] = [-x for x in self.p[i]]
        for row in self.pinv:
            row[i] = -row[i]

    def add_row(self, i, j, c):
        # row i += c * row j
        if c == 0:
            return
        self.s[i] = [x + c * y for x, y in zip(self.s[i], self.s[j])]
        self.p[i] = [x + c * y for x, y in zip(self.p[i], self.p[j])]
        for row in self.pinv:
            row[j] -= c * row[i]

    def add_col(self, i, j, c):
        # col i += c * col j
        if c == 0:
            return
        for row in self.s:
            row[i] += c * row[j]
        for row in self.q:
            row[i] += c * row[j]
        self.qinv[j] = [x - c * y for x, y in zip(self.qinv[j], self.qinv[i])]


@dataclass(frozen=True)
class Snf:
    """d = p * a * q with p, q unimodular and d diagonal, d[i] | d[i+1] >= 0."""

    d: tuple
    p: tuple
    q: tuple
    pinv: tuple
    qinv: tuple
    rank: int

    def diagonal(self):
        return [self.d[i][i] for i in range(min(len(self.d), len(self.d[0]) if self.d else 0))]


def _freeze(mat):
    return tuple(tuple(row) for row in mat)


def smith_normal_form(mat) -> Snf:
    """Smith normal form over the integers with full transform data."""
    st = _SnfState(mat)
    m, n = st.m, st.n
    t = 0
    while t < min(m, n):
        # locate a pivot of least absolute value in the trailing block
        pi = pj = -1
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = st.s[i][j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    pi, pj = i, j
        if best is None:
            break
        st.swap_rows(t, pi)
        st.swap_cols(t, pj)
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, m):
                v = st.s[i][t]
                if v:
                    q = v // st.s[t][t]
                    st.add_row(i, t, -q)
                    if st.s[i][t]:
                        st.swap_rows(t, i)
                        dirty = True
            if dirty:
                continue
            # clear row t
            for j in range(t + 1, n):
                v = st.s[t][j]
                if v:
                    q = v // st.s[t][t]
                    st.add_col(j, t, -q)
                    if st.s[t][j]:
                        st.swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        # make every entry of the trailing block divisible by the pivot
        piv = st.s[t][t]
        fixed = True
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if st.s[i][j] % piv:
                    st.add_row(t, i, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            if st.s[t][t] < 0:
                st.negate_row(t)
            t += 1
    # enforce the divisibility chain along the diagonal
    changed = True
    while changed:
        changed = False
        for i in range(min(m, n) - 1):
            a, b = st.s[i][i], st.s[i + 1][i + 1]
            if a and b and b % a:
                # fold the next diagonal entry into position i and rediagonalize
                st.add_col(i, i + 1, 1)
                _rediagonalize_pair(st, i)
                changed = True
    rank = 0
    for i in range(min(m, n)):
        if st.s[i][i]:
            rank += 1
    return Snf(_freeze(st.s), _freeze(st.p), _freeze(st.q),
               _freeze(st.pinv), _freeze(st.qinv), rank)


def _rediagonalize_pair(st, t):
    # clean the 2x2 block at (t, t) after a column fold; entries live only in
    # rows/cols t and t+1
    while True:
        a = st.s[t][t]
        b = st.s[t + 1][t]
        if b == 0:
            break
        if a == 0 or (abs(b) < abs(a)):
            st.swap_rows(t, t + 1)
            continue
        st.add_row(t + 1, t, -(b // a))
    while True:
        a = st.s[t][t]
        b = st.s[t][t + 1]
        if b == 0:
            break
        if a == 0 or (abs(b) < abs(a)):
            st.swap_cols(t, t + 1)
            continue
        st.add_col(t + 1, t, -(b // a))
    if st.s[t + 1][t]:
        _rediagonalize_pair(st, t)
        return
    if st.s[t][t] < 0:
        st.negate_row(t)
    if st.s[t + 1][t + 1] < 0:
        st.negate_row(t + 1)
    a, b = st.s[t][t], st.s[t + 1][t + 1]
    if a and b and b % a:
        g = gcd(a, b)
        if g != a:
            st.add_col(t, t + 1, 1)
            _rediagonalize_pair(st, t)


def integer_kernel(mat) -> list[list[int]]:
    """Basis of { x : mat @ x == 0 } as a list of integer vectors."""
    if not mat or not mat[0]:
        n = len(mat[0]) if mat else 0
        return [row[:] for row in identity_matrix(n)]
    snf = smith_normal_form(mat)
    n = len(mat[0])
    return [[snf.q[i][j] for i in range(n)] for j in range(snf.rank, n)]


def lattice_image_basis(mat) -> list[list[int]]:
    """Basis (as column vectors) of the lattice spanned by the columns of mat."""
    if not mat or not mat[0]:
        return []
    snf = smith_normal_form(mat)
    m = len(mat)
    basis = []
    for j in range(snf.rank):
        d = snf.d[j][j]
        basis.append([d * snf.pinv[i][j] for i in range(m)])
    return basis


def solve_integer(snf: Snf, vec) -> list[int] | None:
    """One integer solution x of A x = vec given the Snf of A, or None."""
    y = mat_vec(snf.p, vec)
    m = len(snf.d)
    n = len(snf.d[0]) if snf.d else 0
    z = [0] * n
    for i in range(m):
        di = snf.d[i][i] if i < n else 0
        if di:
            if y[i] % di:
                return None
            z[i] = y[i] // di
        elif y[i]:
            return None
    return mat_vec(snf.q, z)


def columns_matrix(vectors, n) -> list[list[int]]:
    """Stack length-n vectors as the columns of a matrix (n x len(vectors))."""
    return [[v[i] for v in vectors] for i in range(n)]


@dataclass(frozen=True)
class LatticeQuotient:
    """Structure of X / Y for full-rank lattices Y <= X <= Z^n.

    invariant_factors lists the nontrivial cyclic factors in divisibility
    order.  coordinates() maps a vector of X to its class; representatives
    are preimages of the standard generators.
    """

    n: int
    basis_snf: Snf          # Snf of a basis matrix B of X
    w_snf: Snf              # Snf of W where B @ W spans Y
    factors_all: tuple      # all diagonal entries of snf(W)
    invariant_factors: tuple

    def coordinates(self, vec) -> tuple:
        """Class of vec in the nontrivial factors; raises if vec not in X."""
        u = solve_integer(self.basis_snf, vec)
        if u is None:
            raise ValueError("vector does not lie in the ambient lattice")
        v = mat_vec(self.w_snf.p, u)
        out = []
        for i, s in enumerate(self.factors_all):
            if s > 1:
                out.append(v[i] % s)
        return tuple(out)

    def is_trivial(self, vec) -> bool:
        return all(c == 0 for c in self.coordinates(vec))

    def representative(self, k: int) -> list[int]:
        """Vector of X mapping to the k-th standard generator of the quotient."""
        idx = [i for i, s in enumerate(self.factors_all) if s > 1][k]
        u = [self.w_snf.pinv[i][idx] for i in range(self.n)]
        # multiply by the basis matrix B = pinv * d * qinv of X
        b = mat_mul(mat_mul(self.basis_snf.pinv, self.basis_snf.d), self.basis_snf.qinv)
        return mat_vec(b, u)

    def order(self) -> int:
        out = 1
        for s in self.invariant_factors:
            out *= s
        return out


def lattice_quotient(x_gens, y_gens, n) -> LatticeQuotient:
    """Structure of (span x_gens) / (span y_gens) inside Z^n.

    Requires Y <= X with X of full rank n and the quotient finite.
    """
    basis = lattice_image_basis(columns_matrix(x_gens, n))
    if len(basis) != n:
        raise ValueError("ambient lattice is not of full rank")
    bmat = columns_matrix(basis, n)
    bsnf = smith_normal_form(bmat)
    w_cols = []
    for y in y_gens:
        u = solve_integer(bsnf, y)
        if u is None:
            raise ValueError("denominator lattice is not contained in the numerator")
        w_cols.append(u)
    wmat = columns_matrix(w_cols, n)
    wsnf = smith_normal_form(wmat)
    if wsnf.rank != n:
        raise ValueError("quotient is infinite")
    factors = tuple(wsnf.d[i][i] for i in range(n))
    inv = tuple(s for s in factors if s > 1)
    return LatticeQuotient(n, bsnf, wsnf, factors, inv)


def kernel_mod_lattice(rows, row_moduli, n) -> list[list[int]]:
    """Generators of { x in Z^n : rows[i] . x == 0  (mod row_moduli[i]) }.

    Rows with modulus 1 impose nothing and are dropped.
    """
    live = [(r, m) for r, m in zip(rows, row_moduli) if m != 1]
    if not live:
        return [row[:] for row in identity_matrix(n)]
    k = len(live)
    aug = []
    for i, (r, m) in enumerate(live):
        aug.append(list(r) + [-(m if j == i else 0) for j in range(k)])
    kern = integer_kernel(aug)
    return [v[:n] for v in kern]
