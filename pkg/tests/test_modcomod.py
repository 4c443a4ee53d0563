import pytest

from hopflat.exactlin import GF, QQ, ZZ, SMat
from hopflat.flatcert import module_over_fiber
from hopflat.modcomod import (
    LEFT,
    RIGHT,
    ComoduleData,
    ModuleData,
    base_change_cotensor_check,
    check_hopf_module,
    coinvariant_lattice,
    cotensor_lattice,
    hom_comodules,
    hom_modules,
    hopf_module_C_tensor_B,
    hopf_module_M_tensor_C,
    induction_adjunction_check,
    module_generators,
    module_splitting,
    pushforward_comodule,
    regular_comodule,
    regular_module,
    restricted_module,
    subcomodule,
    tensor_over_algebra,
    trivial_comodule,
    trivial_module,
    twist_iso,
)
from hopflat.subquot import build_quotient
from hopflat.zoo import CORPUS, builtin_algebra, builtin_inclusion


@pytest.fixture(scope="module")
def s3_quotient():
    q = build_quotient(builtin_inclusion("A3-in-S3"))
    return q, q.inclusion.amb, q.quotient, q.projection


@pytest.mark.parametrize("name", CORPUS)
@pytest.mark.parametrize("side", [LEFT, RIGHT])
def test_regular_structures_validate(name, side):
    h = builtin_algebra(name)
    assert all(regular_module(h, side).checks().values())
    assert all(regular_comodule(h, side).checks().values())
    assert all(trivial_module(h, 2, side).checks().values())
    assert all(trivial_comodule(h, 2, side).checks().values())


def test_broken_coaction_detected():
    h = builtin_algebra("C2")
    bad = ComoduleData(h, 2, SMat.from_dense([[1, 0], [0, 0], [0, 0], [0, 1]]).scale(2), RIGHT)
    assert not all(bad.checks().values())


def test_cotensor_of_S3_with_itself_over_C2(s3_quotient):
    _, B, C, pi = s3_quotient
    right = pushforward_comodule(regular_comodule(B, RIGHT), pi, C)
    left = pushforward_comodule(regular_comodule(B, LEFT), pi, C)
    box = cotensor_lattice(right, left)
    assert box.rank == 18  # = rank(A (x) B)
    assert box == box.saturate()


def test_coinvariants_through_projection_are_A3(s3_quotient):
    q, B, C, pi = s3_quotient
    com = pushforward_comodule(regular_comodule(B), pi, C)
    co = coinvariant_lattice(com)
    assert co.rank == 3
    assert co == q.inclusion.image


def test_tensor_down_to_the_quotient(s3_quotient):
    q, B, C, pi = s3_quotient
    A = q.inclusion.sub
    b_left = restricted_module(regular_module(B, LEFT), q.inclusion.embedding, A)
    pres = tensor_over_algebra(trivial_module(A), b_left)
    assert pres.free_rank == 2
    assert list(pres.torsion_invariants) == []


def test_hopf_modules_from_remark(s3_quotient):
    _, B, C, pi = s3_quotient
    assert check_hopf_module(hopf_module_M_tensor_C(regular_module(B), C, pi)).passed
    assert check_hopf_module(hopf_module_C_tensor_B(B, C, pi)).passed


def test_twist_isomorphism(s3_quotient):
    _, B, C, pi = s3_quotient
    cert = twist_iso(B, C, pi)
    assert cert.passed, cert.checks


@pytest.mark.parametrize("name", ["A3-in-S3", "C2-in-C4", "center-in-Q8"])
def test_induction_adjunction(name):
    q = build_quotient(builtin_inclusion(name))
    B, C, pi = q.inclusion.amb, q.quotient, q.projection
    for m in (regular_comodule(B), trivial_comodule(B)):
        for n in (regular_comodule(C), trivial_comodule(C)):
            cert = induction_adjunction_check(m, n, pi)
            assert cert.passed, (m.rank, n.rank, cert.checks)


def test_cotensor_commutes_with_tensoring(s3_quotient):
    q, B, C, pi = s3_quotient
    A = q.inclusion.sub
    m_com = pushforward_comodule(regular_comodule(B), pi, C)
    m_mod = restricted_module(regular_module(B, LEFT), q.inclusion.embedding, A)
    ranks = {}
    for nname, n in (("C", regular_comodule(C, LEFT)), ("R", trivial_comodule(C, 1, LEFT))):
        for pname, p in (("R", trivial_module(A)), ("A", regular_module(A, RIGHT))):
            cert = base_change_cotensor_check(p, m_mod, m_com, n)
            assert cert.passed, cert.checks
            ranks[pname, nname] = cert.witness["rank"]
    assert ranks == {("R", "C"): 2, ("A", "C"): 6, ("R", "R"): 1, ("A", "R"): 3}


def test_hom_lattices_of_regular_objects():
    h = builtin_algebra("S3")
    # End of the regular comodule is H* acting by convolution: rank n
    assert len(hom_comodules(regular_comodule(h), regular_comodule(h))) == 6
    # module maps H -> H for the right regular module are left multiplications
    assert len(hom_modules(regular_module(h), regular_module(h))) == 6


def test_subcomodule_of_coset_representatives():
    h = builtin_algebra("S3")
    sub = subcomodule(regular_comodule(h), [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]])
    assert sub.rank == 2
    assert all(sub.checks().values())


def test_splitting_of_trivial_module_over_C2():
    h = builtin_algebra("C2")
    triv = trivial_module(h)
    # Z with g acting as 1 is not projective over Z[C2]; over Q it is
    assert module_splitting(triv, ZZ) is None
    assert module_splitting(module_over_fiber(triv, QQ), QQ) is not None
    assert module_splitting(module_over_fiber(triv, GF(2)), GF(2)) is None
    assert module_splitting(module_over_fiber(triv, GF(3)), GF(3)) is not None


def test_generators_cover_finite_index_gaps():
    h = builtin_algebra("C2")
    assert module_generators(regular_module(h), ZZ) == [0]
    # g acts by [[1, 0], [2, -1]]: e_0 and g e_0 = e_0 + 2 e_1 span an index-2 sublattice
    act = SMat.from_dense([[1, 1, 0, 0], [0, 2, 1, -1]])
    m = ModuleData(h, 2, act, RIGHT)
    assert all(m.checks().values())
    assert module_generators(m, ZZ) == [0, 1]
    assert module_generators(m, QQ) == [0]
