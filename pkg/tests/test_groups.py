import pytest

from locglob.errors import InputError
from locglob.groups import (GroupTable, cyclic_group, cyclic_subgroups,
                            direct_product, klein_four_group, subgroup_table,
                            symmetric_group_3, trivial_group, unit_group_mod)


def test_table_validation():
    with pytest.raises(InputError):
        GroupTable(2, ((0, 1), (1, 1)))          # 1 has no inverse
    with pytest.raises(InputError):
        GroupTable(2, ((1, 0), (0, 1)))          # 0 is not the identity
    with pytest.raises(InputError):
        GroupTable(2, ((0,), (1, 0)))            # ragged
    # a valid non-group shape: left translations that are not associative
    with pytest.raises(InputError):
        GroupTable(3, ((0, 1, 2), (1, 2, 0), (2, 1, 0)))


def test_constructors():
    assert trivial_group().order == 1
    z6 = cyclic_group(6)
    assert z6.element_order(1) == 6
    assert z6.inv(2) == 4
    v4 = klein_four_group()
    assert all(v4.element_order(g) <= 2 for g in range(4))
    s3 = symmetric_group_3()
    assert not s3.is_abelian()
    assert sorted(s3.element_order(g) for g in range(6)) == [1, 2, 2, 2, 3, 3]
    z2xz3 = direct_product(cyclic_group(2), cyclic_group(3))
    assert z2xz3.order == 6 and z2xz3.is_abelian()


def test_unit_group_mod():
    grp, labels = unit_group_mod(8, (1, 3, 5, 7))
    assert grp.order == 4
    assert labels == (1, 3, 5, 7)
    assert all(grp.element_order(g) <= 2 for g in range(4))
    with pytest.raises(InputError):
        unit_group_mod(8, (1, 3, 5))             # not closed: 3*5 = 7


@pytest.mark.parametrize("group,count", [
    (trivial_group(), 1),
    (cyclic_group(4), 3),
    (klein_four_group(), 4),
    (cyclic_group(6), 4),
    (symmetric_group_3(), 5),
])
def test_cyclic_subgroup_counts(group, count):
    subs = cyclic_subgroups(group)
    assert len(subs) == count
    seen = set()
    for sub in subs:
        assert sub.elements not in seen
        seen.add(sub.elements)
        assert group.is_subgroup(sub.elements)
        assert group.generated_subgroup((sub.generator,)) == sub.elements


def test_generating_set():
    assert cyclic_group(5).generating_set() == (1,)
    v4 = klein_four_group()
    gens = v4.generating_set()
    assert len(gens) == 2
    assert v4.generated_subgroup(gens) == (0, 1, 2, 3)
    assert trivial_group().generating_set() == ()


def test_subgroup_table():
    z6 = cyclic_group(6)
    sub, local = subgroup_table(z6, (0, 2, 4))
    assert sub.order == 3
    assert local == {0: 0, 2: 1, 4: 2}
    with pytest.raises(InputError):
        subgroup_table(z6, (0, 2, 3))
