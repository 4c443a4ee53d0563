import itertools

import pytest

from hopflat.certificate import InvalidTable, NotASubgroup
from hopflat.hopfcore import dual, verify_hopf
from hopflat.subquot import check_normal
from hopflat.zoo import (
    GROUPS,
    GroupTable,
    builtin_algebra,
    builtin_inclusion,
    cyclic,
    function_hopf,
    group_algebra,
    normal_subgroup_pairs,
    quotient_group,
    subgroup_inclusion,
    subgroups,
)

SUBGROUP_COUNTS = {"C2": 2, "C3": 2, "C4": 3, "C2xC2": 5, "S3": 6, "D4": 10, "Q8": 6}
NORMAL_COUNTS = {"C2": 2, "C3": 2, "C4": 3, "C2xC2": 5, "S3": 3, "D4": 6, "Q8": 6}


def conjugation_normal(g, elems):
    return all(g.mul(g.mul(x, h), g.inverse[x]) in elems for x in range(g.order) for h in elems)


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_group_axioms_by_brute_force(name):
    g = GROUPS[name]()
    e = g.identity
    for a, b, c in itertools.product(range(g.order), repeat=3):
        assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))
    for a in range(g.order):
        assert g.mul(a, e) == a == g.mul(e, a)
        assert g.mul(a, g.inverse[a]) == e


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_subgroup_lattice_sizes(name):
    g = GROUPS[name]()
    subs = subgroups(g)
    assert len(subs) == SUBGROUP_COUNTS[name]
    assert sum(conjugation_normal(g, h) for h in subs) == NORMAL_COUNTS[name]


def test_twenty_seven_normal_pairs():
    assert len(normal_subgroup_pairs()) == 27


@pytest.mark.parametrize("name", ["S3", "D4", "Q8"])
def test_hopf_normality_matches_conjugation(name):
    g = GROUPS[name]()
    for h in subgroups(g):
        inc = subgroup_inclusion(g, sorted(h))
        cert = check_normal(inc)
        assert cert.passed
        assert (cert.verdict == "normal") == conjugation_normal(g, h)


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_function_algebra_is_dual_group_algebra(name):
    g = GROUPS[name]()
    f = function_hopf(g)
    assert f == dual(group_algebra(g))
    assert verify_hopf(f).passed


def test_function_algebra_comultiplication_sums_over_factorizations():
    g = GROUPS["S3"]()
    f = function_hopf(g)
    for x in range(g.order):
        for a, b in itertools.product(range(g.order), repeat=2):
            assert f.comult[x][a][b] == (1 if g.mul(a, b) == x else 0)


def test_quotient_group_orders():
    g = GROUPS["D4"]()
    for h in subgroups(g):
        if conjugation_normal(g, h):
            assert quotient_group(g, h).order * len(h) == g.order


def test_invalid_table_rejected():
    with pytest.raises(InvalidTable):
        GroupTable.from_table([[0, 1], [0, 1]])


def test_non_subgroup_rejected():
    with pytest.raises(NotASubgroup):
        subgroup_inclusion(cyclic(4), [0, 1])


def test_builtin_names():
    assert builtin_algebra("S3").rank == 6
    assert builtin_algebra("Q8").rank == 8
    assert builtin_algebra("dual:C3") == builtin_algebra("C3*")
    assert builtin_inclusion("A3-in-S3").sub.rank == 3
    with pytest.raises(KeyError):
        builtin_algebra("S4")
