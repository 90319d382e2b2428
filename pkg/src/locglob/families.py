"""Deterministic families of groups, modules, and place models.

Used by the consistency sweeps: the exhaustive small-model family for the
strong-Hasse/cyclic-kernel comparison, random place models, and random
modules admitting a fixed-point-free central homothety.
"""

from __future__ import annotations

import random

from .abelian import FinAb
from .gmodules import GModule, enumerate_automorphisms
from .groups import (GroupTable, cyclic_group, direct_product,
                     klein_four_group, symmetric_group_3, trivial_group)
from .models import PlaceModel


def groups_up_to_order_6():
    """All isomorphism classes of groups of order at most 6."""
    return [
        ("1", trivial_group()),
        ("Z2", cyclic_group(2)),
        ("Z3", cyclic_group(3)),
        ("Z4", cyclic_group(4)),
        ("V4", klein_four_group()),
        ("Z5", cyclic_group(5)),
        ("Z6", cyclic_group(6)),
        ("S3", symmetric_group_3()),
    ]


def abelian_shapes_up_to(max_order: int):
    """All invariant-factor shapes with group order <= max_order, trivial
    shape included: chains d1 | d2 | ... with bounded product."""
    out = [FinAb(())]
    stack = [((), 2)]
    while stack:
        prefix, start = stack.pop()
        prod = _prod(prefix)
        for d in range(start, max_order + 1):
            if prefix and d % prefix[-1]:
                continue
            if prod * d > max_order:
                continue
            shape = prefix + (d,)
            out.append(FinAb(shape))
            stack.append((shape, d))
    out.sort(key=lambda s: (s.order, s.invariant_factors))
    return out


def _prod(xs):
    p = 1
    for x in xs:
        p *= x
    return p


def _mat_mul_mod(a, b, space: FinAb):
    r = space.rank
    d = space.invariant_factors
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(r)) % d[i]
                       for j in range(r)) for i in range(r))


def _mat_pow_mod(a, k, space: FinAb):
    r = space.rank
    out = tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))
    base = a
    while k:
        if k & 1:
            out = _mat_mul_mod(out, base, space)
        base = _mat_mul_mod(base, base, space)
        k >>= 1
    return out


_PERM_CACHE: dict = {}
_CLASS_REP_CACHE: dict = {}


def _aut_permutations(space: FinAb):
    """Automorphisms as permutations of the element list, with inverses;
    conjugation and powers become cheap tuple compositions.  The batch image
    computation is vectorized, Aut((Z/2)^4) alone has 20160 members."""
    import numpy as np
    key = space.invariant_factors
    cached = _PERM_CACHE.get(key)
    if cached is not None:
        return cached
    elems = list(space.elements())
    mats = enumerate_automorphisms(space)
    r = space.rank
    if r == 0:
        out = (elems, mats, [(0,)], [(0,)])
        _PERM_CACHE[key] = out
        return out
    d = np.array(space.invariant_factors, dtype=np.int64)
    evecs = np.array(elems, dtype=np.int64).reshape(len(elems), r)
    # radix weights turning a reduced vector into its lexicographic index
    weights = np.ones(r, dtype=np.int64)
    for i in range(r - 2, -1, -1):
        weights[i] = weights[i + 1] * space.invariant_factors[i + 1]
    perms = []
    for m in mats:
        images = (evecs @ np.array(m, dtype=np.int64).T) % d
        perms.append(tuple((images @ weights).tolist()))
    invs = []
    for p in perms:
        q = [0] * len(p)
        for i, pi in enumerate(p):
            q[pi] = i
        invs.append(tuple(q))
    out = (elems, mats, perms, invs)
    _PERM_CACHE[key] = out
    return out


def _perm_power(p, k, ident):
    out = ident
    for _ in range(k):
        out = tuple(map(p.__getitem__, out))
    return out


def _conjugacy_class_representatives(space: FinAb, order: int):
    """One representative per Aut(space)-conjugacy class of automorphisms of
    order dividing `order`; exact, by sweeping out whole conjugacy orbits in
    the permutation domain."""
    key = (space.invariant_factors, order)
    cached = _CLASS_REP_CACHE.get(key)
    if cached is not None:
        return cached
    elems, mats, perms, invs = _aut_permutations(space)
    n = len(elems)
    ident = tuple(range(n))
    kept = []
    seen = set()
    for mat, p in zip(mats, perms):
        if _perm_power(p, order, ident) != ident:
            continue
        if p in seen:
            continue
        kept.append(mat)
        for g, ginv in zip(perms, invs):
            seen.add(tuple(g[p[ginv[i]]] for i in range(n)))
    _CLASS_REP_CACHE[key] = kept
    return kept


def all_actions(group: GroupTable, space: FinAb, dedup_first: bool = True):
    """Every homomorphism from the group into Aut(space), enumerated by
    generator images.

    With dedup_first, the image of the first generator runs over one
    representative per conjugacy class; this still reaches every
    homomorphism up to Aut(space)-conjugacy, because conjugating the first
    image back to its representative carries the other images along, and
    those range over the full candidate set."""
    gens = group.generating_set()
    r = space.rank
    ident = tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))
    if not gens:
        yield (ident,) * group.order
        return
    elems, mats, perms, _ = _aut_permutations(space)
    pident = tuple(range(len(elems)))
    per_gen = []
    for idx, g in enumerate(gens):
        c = group.element_order(g)
        if idx == 0 and dedup_first:
            candidates = _conjugacy_class_representatives(space, c)
        else:
            candidates = [m for m, p in zip(mats, perms)
                          if _perm_power(p, c, pident) == pident]
        per_gen.append(candidates)

    import itertools
    for images in itertools.product(*per_gen):
        act = _extend_action(group, space, gens, images)
        if act is not None:
            yield act


def _extend_action(group: GroupTable, space: FinAb, gens, images):
    """Extend generator images along the Cayley graph, then verify the
    result is a homomorphism; None when the images violate a relation."""
    r = space.rank
    ident = tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))
    act = {0: ident}
    queue = [0]
    img = dict(zip(gens, images))
    while queue:
        g = queue.pop(0)
        for s in gens:
            gs = group.mul(g, s)
            if gs not in act:
                act[gs] = _mat_mul_mod(act[g], img[s], space)
                queue.append(gs)
    table = tuple(act[g] for g in range(group.order))
    for g in range(group.order):
        for h in range(group.order):
            if _mat_mul_mod(table[g], table[h], space) != table[group.mul(g, h)]:
                return None
    return table


def lemma_consistency_family(max_group: int = 6, max_module: int = 16):
    """The exhaustive small family: every group of order <= max_group, every
    module shape of order <= max_module, every action up to conjugation of
    the first generator image."""
    for gname, group in groups_up_to_order_6():
        if group.order > max_group:
            continue
        for space in abelian_shapes_up_to(max_module):
            for act in all_actions(group, space):
                yield gname, GModule(group, space, act)


# ---------------------------------------------------------------------------
# random models


def random_place_model(rng: random.Random, require_full_place: bool = True) -> PlaceModel:
    """A random PlaceModel over a small module.

    With require_full_place, one designated place carries the full group,
    the analogue of a totally ramified prime; this forces the Hasse
    principle for the model, which is the regime where vanishing off the
    non-cyclic support set is guaranteed.
    """
    pool = _random_module_pool()
    module = pool[rng.randrange(len(pool))]
    grp = module.group
    designated = {}
    if require_full_place:
        designated["ram"] = tuple(range(grp.order))
    for i in range(rng.randrange(1, 4)):
        g = rng.randrange(grp.order)
        designated["p%d" % i] = grp.generated_subgroup((g,))
    archimedean = set()
    invol = [g for g in range(grp.order) if grp.element_order(g) <= 2]
    if rng.random() < 0.7:
        designated["inf"] = grp.generated_subgroup((rng.choice(invol),))
        archimedean.add("inf")
    return PlaceModel(module, designated, frozenset(archimedean))


_MODULE_POOL: list | None = None


def _random_module_pool():
    """A fixed, deterministic pool of small modules with varied actions."""
    global _MODULE_POOL
    if _MODULE_POOL is not None:
        return _MODULE_POOL
    pool = []
    specs = [
        (cyclic_group(2), FinAb((2,))),
        (cyclic_group(2), FinAb((4,))),
        (cyclic_group(2), FinAb((2, 2))),
        (cyclic_group(3), FinAb((3,))),
        (cyclic_group(4), FinAb((8,))),
        (klein_four_group(), FinAb((2,))),
        (klein_four_group(), FinAb((8,))),
        (klein_four_group(), FinAb((2, 4))),
        (symmetric_group_3(), FinAb((3,))),
        (symmetric_group_3(), FinAb((2, 2))),
        (cyclic_group(6), FinAb((9,))),
    ]
    for group, space in specs:
        count = 0
        for act in all_actions(group, space):
            pool.append(GModule(group, space, act))
            count += 1
            if count >= 12:
                break
    _MODULE_POOL = pool
    return pool


def random_homothety_module(rng: random.Random) -> GModule:
    """A random module admitting a fixed-point-free central homothety.

    The first factor of an abelian group acts as multiplication by a unit m
    of order dividing p - 1 with m != 1 mod p (so m - 1 is invertible); the
    optional second factor acts by any automorphism of small order, which
    commutes with the homothety since homotheties are central in Aut."""
    p = rng.choice((3, 5, 7, 13))
    e = rng.choice((1, 1, 2))
    q = p ** e
    shape = FinAb(tuple(rng.choice([(q,), (p, q)])))
    # m = g^(p^(e-1)) has order dividing p - 1 and stays != 1 mod p
    while True:
        g = rng.randrange(2, q)
        if g % p not in (0, 1):
            break
    m = pow(g, p ** (e - 1), q)
    c = 1
    acc = m % q
    while acc != 1:
        acc = acc * m % q
        c += 1
    group = cyclic_group(c)
    r = shape.rank
    homothety = [_scalar_matrix(pow(m, k, q), r) for k in range(c)]
    if rng.random() < 0.5 or shape.order > 50:
        return GModule(group, shape, tuple(homothety))
    # add an independent commuting factor of small order
    auts = enumerate_automorphisms(shape)
    b = auts[rng.randrange(len(auts))]
    k = 1
    power = b
    ident = _scalar_matrix(1, r)
    while _mat_mod(power, shape) != _mat_mod(ident, shape):
        power = _mat_mul_mod(power, b, shape)
        k += 1
        if k > 8:
            return GModule(group, shape, tuple(homothety))
    prod = direct_product(group, cyclic_group(k))
    act = []
    for a in range(c):
        for bb in range(k):
            act.append(_mat_mul_mod(_scalar_matrix(pow(m, a, q), r),
                                    _mat_pow_mod(b, bb, shape), shape))
    return GModule(prod, shape, tuple(act))


def _scalar_matrix(m: int, r: int):
    return tuple(tuple(m if i == j else 0 for j in range(r)) for i in range(r))


def _mat_mod(mat, space: FinAb):
    d = space.invariant_factors
    return tuple(tuple(x % d[i] for x in row) for i, row in enumerate(mat))
