"""First group cohomology of finite groups by exact integer linear algebra.

A 1-cocycle is determined by its values on a generating set; the cocycle
identity becomes a linear system over Z with per-row moduli, solved by
Smith normal form.  Small instances are cross-checked against brute-force
enumeration of all maps G -> M.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .abelian import FinAb, Subgroup, subgroup_from_generators
from .errors import InputError, SelfCheckError
from .gmodules import GModule
from .groups import cyclic_subgroups
from .linalg import LatticeQuotient, kernel_mod_lattice, lattice_quotient

BRUTE_FORCE_LIMIT = 2 ** 20
_CANONICAL_LIMIT = 4096


@dataclass(frozen=True)
class CocycleClass:
    """A 1-cocycle: values f(g) with f(gh) = f(g) + g.f(h), f(1) = 0."""

    module: GModule
    values: tuple

    def __post_init__(self):
        m = self.module.group.order
        space = self.module.space
        vals = tuple(space.reduce(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != m:
            raise InputError("need one value per group element")
        if vals[0] != space.zero():
            raise InputError("cocycle must vanish at the identity")
        for g in range(m):
            for h in range(m):
                gh = self.module.group.mul(g, h)
                want = space.add(vals[g], self.module.act(g, vals[h]))
                if vals[gh] != want:
                    raise InputError("cocycle identity fails at (%d, %d)" % (g, h))

    @classmethod
    def _unchecked(cls, module, values):
        # internal fast path: cocycle arithmetic preserves the identity, so
        # results of add/scale/coboundary skip the exhaustive revalidation
        obj = object.__new__(cls)
        object.__setattr__(obj, "module", module)
        object.__setattr__(obj, "values", values)
        return obj

    def flat(self) -> tuple:
        return tuple(x for v in self.values for x in v)

    def add(self, other: "CocycleClass") -> "CocycleClass":
        space = self.module.space
        return CocycleClass._unchecked(self.module,
                                       tuple(space.add(a, b)
                                             for a, b in zip(self.values, other.values)))

    def scale(self, k: int) -> "CocycleClass":
        space = self.module.space
        return CocycleClass._unchecked(self.module,
                                       tuple(space.scale(k, v) for v in self.values))


def zero_cocycle(module: GModule) -> CocycleClass:
    return CocycleClass._unchecked(module, tuple(module.space.zero()
                                                 for _ in range(module.group.order)))


def coboundary(module: GModule, elem) -> CocycleClass:
    """g -> g.m - m."""
    space = module.space
    elem = space.reduce(elem)
    return CocycleClass._unchecked(module,
                                   tuple(space.sub(module.act(g, elem), elem)
                                         for g in range(module.group.order)))


@dataclass(frozen=True)
class H1Group:
    """H1(G, M) in invariant-factor form with explicit representatives.

    coordinates_of maps any cocycle to its class; a cocycle maps to the zero
    tuple exactly when it is a coboundary.
    """

    module: GModule
    structure: FinAb
    representatives: tuple
    generators: tuple = field(repr=False)          # generating set of G used
    expressions: tuple = field(repr=False)         # value of f(g) from generator values
    quotient: LatticeQuotient | None = field(repr=False)

    @property
    def order(self) -> int:
        return self.structure.order

    def is_trivial(self) -> bool:
        return self.structure.invariant_factors == ()

    def _generator_values(self, c: CocycleClass) -> list[int]:
        out = []
        for s in self.generators:
            out.extend(c.values[s])
        return out

    def coordinates_of(self, c: CocycleClass) -> tuple:
        if c.module != self.module:
            raise InputError("cocycle belongs to a different module")
        if self.quotient is None:
            return ()
        return self.quotient.coordinates(self._generator_values(c))

    def is_coboundary(self, c: CocycleClass) -> bool:
        return all(x == 0 for x in self.coordinates_of(c))

    def cocycle_from_coordinates(self, coords) -> CocycleClass:
        if len(coords) != len(self.structure.invariant_factors):
            raise InputError("coordinate vector has wrong length")
        out = zero_cocycle(self.module)
        for k, rep in zip(coords, self.representatives):
            out = out.add(rep.scale(k))
        return out

    def all_classes(self):
        """(coords, cocycle) for every element of H1; small groups only."""
        for coords in self.structure.elements():
            yield coords, self.cocycle_from_coordinates(coords)


def _expand_from_generator_values(module: GModule, gens, exprs, x):
    """Full value map of the cocycle with generator values x (stacked)."""
    space = module.space
    r = space.rank
    vals = []
    for g in range(module.group.order):
        mat = exprs[g]
        vals.append(space.reduce([sum(mat[i][j] * x[j] for j in range(len(x)))
                                  for i in range(r)]))
    return tuple(vals)


def _expression_matrices(module: GModule, gens):
    """exprs[g]: integer (r x k*r) matrix with f(g) = exprs[g] @ x, built by
    breadth-first search along right multiplication by generators."""
    grp = module.group
    r = module.space.rank
    k = len(gens)
    zero = tuple(tuple(0 for _ in range(k * r)) for _ in range(r))
    exprs = {0: zero}
    queue = [0]
    while queue:
        g = queue.pop(0)
        for si, s in enumerate(gens):
            gs = grp.mul(g, s)
            if gs in exprs:
                continue
            base = exprs[g]
            a = module.action[g]
            mat = [list(row) for row in base]
            for i in range(r):
                for j in range(r):
                    mat[i][si * r + j] += a[i][j]
            exprs[gs] = tuple(tuple(row) for row in mat)
            queue.append(gs)
    if len(exprs) != grp.order:
        raise SelfCheckError("generating set does not reach the whole group")
    return tuple(exprs[g] for g in range(grp.order))


_H1_CACHE: dict = {}


def h1(module: GModule) -> H1Group:
    """H1(G, M) = Z1/B1 by Smith normal form on the lifted cocycle system.

    For |M| ** |G| <= 2**20 (and |G| > 1) the invariant factors are
    cross-checked against brute-force enumeration of all maps G -> M; a
    mismatch raises SelfCheckError.
    """
    cached = _H1_CACHE.get(module)
    if cached is not None:
        return cached
    grp = module.group
    space = module.space
    r = space.rank
    gens = grp.generating_set()
    k = len(gens)
    n_unknowns = k * r

    if n_unknowns == 0:
        out = H1Group(module, FinAb(()), (), gens,
                      _expression_matrices(module, gens), None)
        _H1_CACHE[module] = out
        return out

    exprs = _expression_matrices(module, gens)

    # cocycle conditions: f(g s) = f(g) + g.f(s) for all g in G, s in gens
    rows = []
    moduli = []
    d = space.invariant_factors
    for g in range(grp.order):
        a = module.action[g]
        for si, s in enumerate(gens):
            gs = grp.mul(g, s)
            for i in range(r):
                row = [exprs[gs][i][j] - exprs[g][i][j] for j in range(n_unknowns)]
                for j in range(r):
                    row[si * r + j] -= a[i][j]
                if any(row):
                    rows.append(row)
                    moduli.append(d[i])

    x_gens = kernel_mod_lattice(rows, moduli, n_unknowns)

    y_gens = []
    for j in range(r):
        basis = [1 if t == j else 0 for t in range(r)]
        vec = []
        for s in gens:
            a = module.action[s]
            vec.extend(a[i][j] - basis[i] for i in range(r))
        y_gens.append(vec)
    for si in range(k):
        for j in range(r):
            vec = [0] * n_unknowns
            vec[si * r + j] = d[j]
            y_gens.append(vec)

    quo = lattice_quotient(x_gens, y_gens, n_unknowns)
    structure = FinAb(quo.invariant_factors)

    reps = []
    for idx in range(len(structure.invariant_factors)):
        x = quo.representative(idx)
        vals = _expand_from_generator_values(module, gens, exprs, x)
        reps.append(_canonical_representative(CocycleClass(module, vals)))

    out = H1Group(module, structure, tuple(reps), gens, exprs, quo)

    if grp.order > 1 and space.order ** grp.order <= BRUTE_FORCE_LIMIT:
        from .oracles import brute_force_h1
        oracle = brute_force_h1(module)
        if oracle.order != structure.order:
            raise SelfCheckError("H1 order %d disagrees with brute force %d"
                                 % (structure.order, oracle.order))
        for kk, cnt in oracle.torsion_counts.items():
            expect = 1
            for s in structure.invariant_factors:
                expect *= gcd(kk, s)
            if cnt != expect:
                raise SelfCheckError("H1 %d-torsion disagrees with brute force" % kk)

    _H1_CACHE[module] = out
    return out


def _canonical_representative(c: CocycleClass) -> CocycleClass:
    """Lexicographically least cocycle in the class; skipped for big modules."""
    space = c.module.space
    if space.order > _CANONICAL_LIMIT:
        return c
    best = c
    best_flat = c.flat()
    for elem in space.elements():
        shifted = c.add(coboundary(c.module, elem))
        f = shifted.flat()
        if f < best_flat:
            best, best_flat = shifted, f
    return best


def restrict_class(c: CocycleClass, elements) -> CocycleClass:
    """Restriction of a cocycle to a subgroup (given by its element set)."""
    sub_mod, _ = _restricted_module(c.module, elements)
    elems = tuple(sorted(set(elements)))
    return CocycleClass._unchecked(sub_mod, tuple(c.values[e] for e in elems))


def _restricted_module(module: GModule, elements):
    key = (module, tuple(sorted(set(elements))))
    cached = _RESTRICT_CACHE.get(key)
    if cached is None:
        cached = module.restrict(elements)
        _RESTRICT_CACHE[key] = cached
    return cached


_RESTRICT_CACHE: dict = {}


@dataclass(frozen=True)
class H1Subgroup:
    """A subgroup of an H1Group with explicit cocycle representatives."""

    ambient: H1Group
    structure: FinAb
    coordinate_generators: tuple
    representatives: tuple
    coordinate_subgroup: Subgroup

    @property
    def order(self) -> int:
        return self.structure.order

    def is_trivial(self) -> bool:
        return self.structure.invariant_factors == ()

    def contains(self, c: CocycleClass) -> bool:
        return self.coordinate_subgroup.contains(self.ambient.coordinates_of(c))

    def all_classes(self):
        """Every member as (subgroup coords, cocycle); small groups only."""
        for coords in self.structure.elements():
            c = zero_cocycle(self.ambient.module)
            for k, rep in zip(coords, self.representatives):
                c = c.add(rep.scale(k))
            yield coords, c


def joint_restriction_kernel(h: H1Group, element_sets) -> H1Subgroup:
    """Classes whose restriction to each listed subgroup is a coboundary."""
    a = len(h.structure.invariant_factors)
    if a == 0:
        return _trivial_subgroup(h)
    rows = []
    moduli = []
    for elems in element_sets:
        sub_mod, _ = _restricted_module(h.module, elems)
        hz = h1(sub_mod)
        tz = hz.structure.invariant_factors
        if not tz:
            continue
        cols = [hz.coordinates_of(restrict_class(rep, elems))
                for rep in h.representatives]
        for i, t in enumerate(tz):
            rows.append([cols[j][i] for j in range(a)])
            moduli.append(t)
    gens = kernel_mod_lattice(rows, moduli, a)
    sub = subgroup_from_generators(h.structure, gens)
    return subgroup_to_h1subgroup(h, sub)


def _trivial_subgroup(h: H1Group) -> H1Subgroup:
    sub = subgroup_from_generators(h.structure, [])
    return H1Subgroup(h, FinAb(()), (), (), sub)


def subgroup_to_h1subgroup(h: H1Group, sub: Subgroup) -> H1Subgroup:
    """Wrap a subgroup of the coordinate group as an H1Subgroup with
    canonical cocycle representatives."""
    coord_gens = []
    reps = []
    for idx in range(len(sub.structure.invariant_factors)):
        vec = sub.structure_generator(idx)
        coord_gens.append(vec)
        reps.append(_canonical_representative(h.cocycle_from_coordinates(vec)))
    return H1Subgroup(h, sub.structure, tuple(coord_gens), tuple(reps), sub)


def h1_star(module: GModule) -> H1Subgroup:
    """Tate's group: classes restricting to coboundaries on every cyclic
    subgroup."""
    h = h1(module)
    sets = [z.elements for z in cyclic_subgroups(module.group) if z.order > 1]
    return joint_restriction_kernel(h, sets)
