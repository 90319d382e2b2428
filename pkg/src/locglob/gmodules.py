"""Finite modules over a finite group: validated actions, cyclotomic
characters, duals, and the central-homothety criterion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .abelian import (FinAb, apply_matrix, matrix_is_automorphism,
                      matrix_is_compatible)
from .errors import InputError, SelfCheckError
from .groups import GroupTable, subgroup_table


@dataclass(frozen=True)
class GModule:
    """A FinAb space with a G-action by automorphisms.

    action[g] is an integer matrix (tuple of row tuples) acting on column
    vectors; action[0] must be the identity and action respects the table,
    both checked exhaustively.
    """

    group: GroupTable
    space: FinAb
    action: tuple

    def __post_init__(self):
        m = self.group.order
        if len(self.action) != m:
            raise InputError("need one action matrix per group element")
        act = tuple(tuple(tuple(int(x) for x in row) for row in mat)
                    for mat in self.action)
        object.__setattr__(self, "action", act)
        for g, mat in enumerate(act):
            if not matrix_is_compatible(mat, self.space):
                raise InputError("action matrix %d is not compatible with the moduli" % g)
            if not matrix_is_automorphism(mat, self.space):
                raise InputError("action matrix %d is not an automorphism" % g)
        ident = self._matrix_mod(act[0])
        if ident != self._matrix_mod(_identity(self.space.rank)):
            raise InputError("identity element must act trivially")
        for g in range(m):
            for h in range(m):
                gh = self.group.mul(g, h)
                lhs = self._compose(act[g], act[h])
                if self._matrix_mod(lhs) != self._matrix_mod(act[gh]):
                    raise InputError("action is not a homomorphism at (%d, %d)" % (g, h))

    def _matrix_mod(self, mat):
        d = self.space.invariant_factors
        return tuple(tuple(x % d[i] for x in row) for i, row in enumerate(mat))

    def _compose(self, a, b):
        r = self.space.rank
        return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(r))
                           for j in range(r)) for i in range(r))

    def act(self, g: int, vec) -> tuple:
        return apply_matrix(self.action[g], vec, self.space)

    def restrict(self, elements) -> tuple["GModule", dict]:
        """Module over a subgroup (reindexed); returns (module, index map)."""
        sub, local = subgroup_table(self.group, elements)
        act = tuple(self.action[e] for e in sorted(set(elements)))
        return GModule(sub, self.space, act), local


def _identity(r):
    return tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))


@dataclass(frozen=True)
class CyclotomicData:
    """A character from the group to the units mod n (multiplicative)."""

    modulus: int
    character: tuple   # character[g] is a unit mod modulus

    def __post_init__(self):
        if self.modulus < 1:
            raise InputError("character modulus must be >= 1")
        object.__setattr__(self, "character",
                           tuple(int(c) % self.modulus for c in self.character))

    def validate(self, group: GroupTable):
        if len(self.character) != group.order:
            raise InputError("need one character value per group element")
        n = self.modulus
        if self.character[0] % n != 1 % n:
            raise InputError("character must send the identity to 1")
        for g in range(group.order):
            if gcd(self.character[g], n) != 1:
                raise InputError("character values must be units")
            for h in range(group.order):
                if (self.character[g] * self.character[h]
                        - self.character[group.mul(g, h)]) % n:
                    raise InputError("character is not multiplicative")


def trivial_character(group: GroupTable, n: int) -> CyclotomicData:
    chi = CyclotomicData(n, (1,) * group.order)
    chi.validate(group)
    return chi


def dual_module(module: GModule, chi: CyclotomicData) -> GModule:
    """Hom(M, Z/n) with the twisted action (g.f)(m) = chi(g) f(g^-1 m).

    Coordinates: the dual of Z/d1 x ... x Z/dr has the same invariant
    factors, a character b sending e_j to (n/d_j) b_j mod n.  Requires the
    exponent of M to divide n.
    """
    chi.validate(module.group)
    n = chi.modulus
    d = module.space.invariant_factors
    if n % module.space.exponent:
        raise InputError("module exponent must divide the character modulus")
    r = module.space.rank
    act = []
    for g in range(module.group.order):
        ginv = module.group.inv(g)
        a = module.action[ginv]
        c = chi.character[g]
        mat = []
        for i in range(r):
            row = []
            for j in range(r):
                num = c * a[j][i] * d[i]
                if num % d[j]:
                    raise SelfCheckError("dual action entry is not integral")
                row.append((num // d[j]) % d[i])
            mat.append(tuple(row))
        act.append(tuple(mat))
    return GModule(module.group, FinAb(d), tuple(act))


def dual_pairing_value(module: GModule, chi: CyclotomicData, dual_elem, elem) -> int:
    """Evaluation pairing M^ x M -> Z/n in coordinates."""
    n = chi.modulus
    d = module.space.invariant_factors
    return sum((n // dj) * b * a for dj, b, a in zip(d, dual_elem, elem)) % n


def double_dual_is_identity(module: GModule, chi: CyclotomicData) -> bool:
    """The evaluation map M -> (M^)^ is the identity in coordinates; check
    that the double-dual action matrices agree with the original ones."""
    dd = dual_module(dual_module(module, chi), chi)
    return all(dd._matrix_mod(dd.action[g]) == module._matrix_mod(module.action[g])
               for g in range(module.group.order))


def double_dual_isomorphism(module: GModule, chi: CyclotomicData):
    """The natural isomorphism M -> (M^)^ (evaluation), as a callable.

    In the chosen coordinates evaluation is the identity; this is verified
    at the matrix level always, and elementwise over every module and group
    element when |M| <= 512.  Returns the map."""
    dd = dual_module(dual_module(module, chi), chi)
    if not double_dual_is_identity(module, chi):
        raise SelfCheckError("double dual does not match the module")
    if module.space.order <= 512:
        for g in range(module.group.order):
            for m in module.space.elements():
                if dd.act(g, m) != module.act(g, m):
                    raise SelfCheckError("double dual disagrees on an element")
    return lambda m: module.space.reduce(m)


def homothety_criterion(module: GModule):
    """Look for a central element acting as multiplication by m with
    gcd(m - 1, exponent) = 1.

    Returns (element index, m) or None.  When such an element exists the
    first cohomology must vanish (Sah); this is verified and a failure
    raises, since it would mean the cohomology engine is broken.
    """
    d = module.space.invariant_factors
    expo = module.space.exponent
    g_ord = module.group.order
    found = None
    for s in range(g_ord):
        if any(module.group.mul(s, h) != module.group.mul(h, s) for h in range(g_ord)):
            continue
        mat = module.action[s]
        r = module.space.rank
        if r == 0:
            found = (s, 0)
            break
        ok = True
        for i in range(r):
            for j in range(r):
                if i != j and mat[i][j] % d[i]:
                    ok = False
        if not ok:
            continue
        m = mat[r - 1][r - 1] % expo
        for i in range(r):
            if (mat[i][i] - m) % d[i]:
                ok = False
        if not ok:
            continue
        if gcd(m - 1, expo) == 1:
            found = (s, m)
            break
    if found is None:
        return None
    from .cohomology import h1
    if h1(module).structure.invariant_factors != ():
        raise SelfCheckError("homothety found but H1 is nonzero")
    return found


# ---------------------------------------------------------------------------
# constructors and enumeration helpers


def trivial_action_module(group: GroupTable, space: FinAb) -> GModule:
    ident = _identity(space.rank)
    return GModule(group, space, tuple(ident for _ in range(group.order)))


def homothety_module(group: GroupTable, space: FinAb, multipliers) -> GModule:
    """Each group element acts as multiplication by an integer."""
    r = space.rank
    act = tuple(tuple(tuple(m if i == j else 0 for j in range(r)) for i in range(r))
                for m in multipliers)
    return GModule(group, space, act)


def mu_model(n: int, units) -> tuple[GModule, CyclotomicData]:
    """The module Z/n with a subgroup of units mod n acting by multiplication,
    together with the tautological character.  Models mu_n over the field cut
    out by those units."""
    from .groups import unit_group_mod
    group, labels = unit_group_mod(n, units)
    module = homothety_module(group, FinAb((n,)), labels)
    chi = CyclotomicData(n, labels)
    chi.validate(group)
    return module, chi


def mu8_klein_model() -> tuple[GModule, CyclotomicData]:
    """Z/8 acted on by {1,3,5,7} mod 8; the minimal field of the 8th roots
    of unity over the rationals."""
    return mu_model(8, (1, 3, 5, 7))


def enumerate_automorphisms(space: FinAb) -> list[tuple]:
    """All automorphisms of a small FinAb as matrices; cached per shape."""
    key = space.invariant_factors
    if key in _AUT_CACHE:
        return _AUT_CACHE[key]
    d = space.invariant_factors
    r = space.rank
    choices = []
    for i in range(r):
        for j in range(r):
            step = d[i] // gcd(d[i], d[j])
            choices.append(range(0, d[i], step))
    elems = list(space.elements())
    out = []
    for flat in itertools.product(*choices):
        mat = tuple(tuple(flat[i * r + j] for j in range(r)) for i in range(r))
        # entries are compatible by construction; bijectivity by image count
        image = {apply_matrix(mat, e, space) for e in elems}
        if len(image) == len(elems):
            out.append(mat)
    _AUT_CACHE[key] = out
    return out


_AUT_CACHE: dict = {}
