"""Finite abelian groups in invariant-factor form, subgroups, characters,
and the annihilator duality used for orthogonal complements of chains.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .errors import InputError
from .linalg import (LatticeQuotient, identity_matrix, kernel_mod_lattice,
                     lattice_quotient)


@dataclass(frozen=True)
class FinAb:
    """Finite abelian group  Z/d1 x ... x Z/dr  with d1 | d2 | ... | dr.

    Elements are integer tuples reduced componentwise mod the invariant
    factors.  The empty sequence is the trivial group.
    """

    invariant_factors: tuple

    def __post_init__(self):
        d = self.invariant_factors
        object.__setattr__(self, "invariant_factors", tuple(int(x) for x in d))
        for x in self.invariant_factors:
            if x < 2:
                raise InputError("invariant factors must be >= 2")
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise InputError("invariant factors must form a divisibility chain")

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def zero(self) -> tuple:
        return (0,) * self.rank

    def reduce(self, vec) -> tuple:
        if len(vec) != self.rank:
            raise InputError("element has wrong length")
        return tuple(int(v) % d for v, d in zip(vec, self.invariant_factors))

    def add(self, a, b) -> tuple:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.invariant_factors))

    def neg(self, a) -> tuple:
        return tuple((-x) % d for x, d in zip(a, self.invariant_factors))

    def sub(self, a, b) -> tuple:
        return tuple((x - y) % d for x, y, d in zip(a, b, self.invariant_factors))

    def scale(self, k, a) -> tuple:
        return tuple((k * x) % d for x, d in zip(a, self.invariant_factors))

    def element_order(self, a) -> int:
        out = 1
        for x, d in zip(a, self.invariant_factors):
            out = out * (d // gcd(x, d)) // gcd(out, d // gcd(x, d))
        return out

    def elements(self):
        """All elements, lexicographic.  Only for small groups."""
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        return " x ".join("Z/%d" % d for d in self.invariant_factors)


def matrix_is_compatible(mat, space: FinAb) -> bool:
    """Whether an integer matrix defines a homomorphism space -> space.

    Entry (i, j) moves the j-th coordinate into the i-th, so it must kill
    the ambiguity d_j, i.e. mat[i][j] * d_j == 0 mod d_i.
    """
    d = space.invariant_factors
    r = space.rank
    if len(mat) != r or any(len(row) != r for row in mat):
        return False
    for i in range(r):
        for j in range(r):
            if (mat[i][j] * d[j]) % d[i]:
                return False
    return True


def apply_matrix(mat, vec, space: FinAb) -> tuple:
    d = space.invariant_factors
    return tuple(sum(mat[i][j] * vec[j] for j in range(space.rank)) % d[i]
                 for i in range(space.rank))


def matrix_is_automorphism(mat, space: FinAb) -> bool:
    """Bijectivity check by triviality of the kernel (exact, no determinants)."""
    if not matrix_is_compatible(mat, space):
        return False
    d = space.invariant_factors
    rows = [list(row) for row in mat]
    gens = kernel_mod_lattice(rows, list(d), space.rank)
    for g in gens:
        if any(x % m for x, m in zip(g, d)):
            return False
    return True


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of a FinAb ambient group, with structure and a solver.

    generators are ambient elements; structure is the subgroup in invariant
    factor form; quotient tracks span(generators + ambient relations) over
    the ambient relations, which is exactly the subgroup.
    """

    ambient: FinAb
    generators: tuple
    structure: FinAb
    _quotient: LatticeQuotient

    @property
    def order(self) -> int:
        return self.structure.order

    def contains(self, vec) -> bool:
        target = self.ambient.reduce(vec)
        gens = [list(g) for g in self.generators]
        lift = _solve_in_span(gens, list(self.ambient.invariant_factors), list(target))
        return lift is not None

    def elements(self):
        seen = {self.ambient.zero()}
        frontier = [self.ambient.zero()]
        while frontier:
            cur = frontier.pop()
            for g in self.generators:
                nxt = self.ambient.add(cur, g)
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return sorted(seen)

    def structure_generator(self, k: int) -> tuple:
        """Ambient element generating the k-th cyclic factor of the subgroup."""
        if self._quotient is None:
            raise InputError("trivial ambient group has no structure generators")
        return self.ambient.reduce(self._quotient.representative(k))


def _solve_in_span(gens, moduli, target):
    """Integer combination of gens hitting target mod moduli, or None."""
    from .linalg import columns_matrix, smith_normal_form, solve_integer
    n = len(moduli)
    cols = [list(g) for g in gens] + [[moduli[i] if j == i else 0 for i in range(n)]
                                      for j in range(n)]
    mat = columns_matrix(cols, n)
    snf = smith_normal_form(mat)
    return solve_integer(snf, target)


def subgroup_intersection(a: Subgroup, b: Subgroup) -> Subgroup:
    """Intersection of two subgroups of the same ambient group, computed on
    the integer lifts: solve B_a u = B_b w and project."""
    from .linalg import (columns_matrix, integer_kernel, lattice_image_basis,
                         mat_vec)
    if a.ambient != b.ambient:
        raise InputError("subgroups live in different ambient groups")
    n = a.ambient.rank
    if n == 0:
        return a
    rel = [[a.ambient.invariant_factors[i] if j == i else 0 for i in range(n)]
           for j in range(n)]
    basis_a = lattice_image_basis(columns_matrix([list(g) for g in a.generators] + rel, n))
    basis_b = lattice_image_basis(columns_matrix([list(g) for g in b.generators] + rel, n))
    stacked = [[basis_a[j][i] for j in range(len(basis_a))]
               + [-basis_b[j][i] for j in range(len(basis_b))] for i in range(n)]
    gens = []
    for v in integer_kernel(stacked):
        u = v[:len(basis_a)]
        vec = [sum(basis_a[j][i] * u[j] for j in range(len(basis_a))) for i in range(n)]
        gens.append(vec)
    return subgroup_from_generators(a.ambient, gens)


def subgroup_from_generators(ambient: FinAb, generators) -> Subgroup:
    gens = tuple(ambient.reduce(g) for g in generators)
    n = ambient.rank
    rel = [[ambient.invariant_factors[i] if j == i else 0 for i in range(n)]
           for j in range(n)]
    x_gens = [list(g) for g in gens] + rel
    if n == 0:
        structure = FinAb(())
        quo = None
        return Subgroup(ambient, gens, structure, quo)
    quo = lattice_quotient(x_gens, rel, n)
    return Subgroup(ambient, gens, FinAb(quo.invariant_factors), quo)


# ---------------------------------------------------------------------------
# characters and annihilators


@dataclass(frozen=True)
class Pairing:
    """Bilinear pairing A x A -> Z/exponent given by an integer matrix.

    value(x, y) = x^T M y  mod exponent.  Well-definedness requires
    M[i][j] * d_i == M[i][j] * d_j == 0 mod exponent.
    """

    space: FinAb
    matrix: tuple

    def __post_init__(self):
        n = self.space.exponent
        d = self.space.invariant_factors
        r = self.space.rank
        m = self.matrix
        if len(m) != r or any(len(row) != r for row in m):
            raise InputError("pairing matrix has wrong shape")
        for i in range(r):
            for j in range(r):
                if (m[i][j] * d[i]) % n or (m[i][j] * d[j]) % n:
                    raise InputError("pairing matrix is not well defined")

    def value(self, x, y) -> int:
        n = self.space.exponent
        r = self.space.rank
        return sum(x[i] * self.matrix[i][j] * y[j]
                   for i in range(r) for j in range(r)) % n

    def is_perfect(self) -> bool:
        """Perfect iff x -> <x, .> has trivial kernel (then bijective)."""
        d = self.space.invariant_factors
        n = self.space.exponent
        r = self.space.rank
        # <x, e_j> = sum_i x_i M[i][j]; triviality as a character needs it
        # to vanish mod n for every j
        rows = [[self.matrix[i][j] for i in range(r)] for j in range(r)]
        gens = kernel_mod_lattice(rows, [n] * r, r)
        for g in gens:
            if any(x % m for x, m in zip(g, d)):
                return False
        return True


def standard_pairing(space: FinAb) -> Pairing:
    """<x, y> = sum (n/d_i) x_i y_i mod n; always perfect."""
    n = space.exponent
    mat = tuple(tuple((n // d if i == j else 0)
                      for j, d in enumerate(space.invariant_factors))
                for i, _ in enumerate(space.invariant_factors))
    return Pairing(space, mat)


def character_group(space: FinAb) -> FinAb:
    """Hom(A, Q/Z) has the same invariant factors as A."""
    return FinAb(space.invariant_factors)


def character_value(space: FinAb, char, elem) -> int:
    """Value in Z/exponent of the character with coordinates char.

    The character c sends e_i to (n/d_i) c_i / n in Q/Z; returned as the
    numerator mod n.
    """
    n = space.exponent
    return sum((n // d) * c * x
               for d, c, x in zip(space.invariant_factors, char, elem)) % n


def annihilator(space: FinAb, subgroup_gens) -> Subgroup:
    """Characters of A vanishing on every generator, as a subgroup of A^."""
    chars = character_group(space)
    n = space.exponent
    r = space.rank
    gens = [space.reduce(g) for g in subgroup_gens]
    rows = []
    for g in gens:
        rows.append([(n // d) * x for d, x in zip(space.invariant_factors, g)])
    if not rows:
        basis = [list(row) for row in identity_matrix(r)]
        return subgroup_from_generators(chars, basis)
    out = kernel_mod_lattice(rows, [n] * len(rows), r)
    return subgroup_from_generators(chars, out)


@dataclass(frozen=True)
class ChainDuality:
    """Output of orthogonal_complement_chain.

    a1_perp and a2_perp are the annihilators of A1 and A2 inside the
    character group of the ambient space, written in ambient coordinates
    through the perfect pairing.  iso_table witnesses the duality: one row
    per class of A1perp/A2perp carrying the character it induces on A2/A1,
    verified elementwise to be a bijection onto those characters.
    """

    a1_perp: Subgroup
    a2_perp: Subgroup
    quotient_order: int
    iso_table: tuple   # ((perp-class rep, tuple of values on A2 elements), ...)


def orthogonal_complement_chain(a3: FinAb, a1_gens, a2_gens,
                                pairing: Pairing | None = None) -> ChainDuality:
    """Annihilators of A1 <= A2 <= A3 and the duality (A2/A1)^ ~ A1perp/A2perp.

    The pairing must be perfect on A3 (verified).  Uses the pairing to
    identify A3 with its character group, then checks, element by element,
    that distinct classes of A1perp/A2perp restrict to distinct characters
    of A2/A1 and that the counts match.
    """
    if pairing is None:
        pairing = standard_pairing(a3)
    if pairing.space != a3:
        raise InputError("pairing is not defined on the ambient group")
    if not pairing.is_perfect():
        raise InputError("pairing is degenerate")
    a1 = subgroup_from_generators(a3, a1_gens)
    a2 = subgroup_from_generators(a3, a2_gens)
    for g in a1.generators:
        if not a2.contains(g):
            raise InputError("A1 is not contained in A2")

    # transport annihilators through the pairing: x is in Aperp iff
    # <x, a> == 0 for all generators a of A
    def perp(sub: Subgroup) -> Subgroup:
        n = a3.exponent
        r = a3.rank
        rows = []
        for g in sub.generators:
            rows.append([sum(pairing.matrix[i][j] * g[j] for j in range(r))
                         for i in range(r)])
        if not rows:
            basis = [list(row) for row in identity_matrix(r)]
            return subgroup_from_generators(a3, basis)
        gens = kernel_mod_lattice(rows, [n] * len(rows), r)
        return subgroup_from_generators(a3, gens)

    a1_perp = perp(a1)
    a2_perp = perp(a2)

    quotient_order = a2.order // a1.order
    perp_quotient_order = a1_perp.order // a2_perp.order
    if quotient_order != perp_quotient_order:
        raise AssertionError("duality order mismatch: |A2/A1| != |A1perp/A2perp|")

    # elementwise witness: classes of A1perp mod A2perp, with their induced
    # character on A2 (values on the generators of A2)
    a2_elems = a2.elements()
    a2perp_elems = set(a2_perp.elements())
    seen = {}
    table = []
    for x in a1_perp.elements():
        key = tuple(sorted(a3.add(x, t) for t in a2perp_elems))[0]
        if key in seen:
            continue
        vals = tuple(pairing.value(x, g) for g in a2_elems)
        seen[key] = vals
        table.append((key, vals))
    if len(seen) != perp_quotient_order:
        raise AssertionError("class enumeration does not match the computed order")
    if len(set(v for _, v in table)) != len(table):
        raise AssertionError("two perp classes induce the same character on A2/A1")
    return ChainDuality(a1_perp, a2_perp, quotient_order, tuple(table))
