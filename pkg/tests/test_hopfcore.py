import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from hopflat.certificate import BialgebraInvalid, DimensionMismatch
from hopflat.exactlin import GF, QQ, ZZ, SMat
from hopflat.hopfcore import (
    AXIOMS,
    HopfAlgebraData,
    LinearFunctional,
    antipode_determinant,
    base_change,
    convolution,
    counit_functional,
    dual,
    is_hopf_map,
    solve_antipode,
    verify_hopf,
)
from hopflat.zoo import CORPUS, builtin_algebra, sweedler_over_Z

ALL = [n for n in CORPUS] + [n + "*" for n in CORPUS]


@pytest.mark.parametrize("name", ALL)
@pytest.mark.parametrize("fiber", [ZZ, QQ, GF(2), GF(3), GF(5)], ids=str)
def test_corpus_passes_axioms_on_every_fiber(name, fiber):
    h = builtin_algebra(name)
    if fiber != ZZ:
        h = base_change(h, fiber)
    cert = verify_hopf(h)
    assert cert.passed, cert.counterexample
    assert set(cert.checks) == set(AXIOMS)


@pytest.mark.parametrize("name", ALL)
def test_solved_antipode_matches_stored(name):
    h = builtin_algebra(name)
    assert tuple(map(tuple, solve_antipode(h))) == h.antipode


@pytest.mark.parametrize("name", CORPUS)
def test_double_dual_is_identity(name):
    h = builtin_algebra(name)
    assert dual(dual(h)) == h


def test_sweedler_relations():
    h = sweedler_over_Z()
    one, g, x, gx = (h.basis(i) for i in range(4))
    assert h.mul(g, g) == one
    assert h.mul(x, x) == [0, 0, 0, 0]
    assert h.mul(x, g) == [-v for v in h.mul(g, x)]
    assert h.mul(g, x) == gx
    # Delta x = x (x) 1 + g (x) x
    expected = [0] * 16
    expected[2 * 4 + 0] = 1
    expected[1 * 4 + 2] = 1
    assert h.delta(x) == expected
    assert abs(antipode_determinant(h)) == 1


def test_doubled_antipode_fails_only_antipode_axiom():
    h = builtin_algebra("S3")
    bad = HopfAlgebraData.build(h.mult, h.unit, h.comult, h.counit,
                                [[2 * v for v in row] for row in h.antipode], names=h.names)
    cert = verify_hopf(bad)
    assert not cert.passed
    assert [k for k, v in cert.checks.items() if not v] == ["antipode"]
    assert cert.counterexample["axiom"] == "antipode"


def test_corrupted_multiplication_reports_associativity():
    h = builtin_algebra("S3")
    mult = [[list(v) for v in row] for row in h.mult]
    mult[1][1][0] = 2
    bad = HopfAlgebraData.build(mult, h.unit, h.comult, h.counit, h.antipode)
    cert = verify_hopf(bad)
    assert cert.counterexample["axiom"] == "associativity"


def test_solve_antipode_rejects_non_bialgebra():
    h = builtin_algebra("C2")
    comult = [[list(r) for r in m] for m in h.comult]
    comult[1][1][1] = 2
    bad = HopfAlgebraData.build(h.mult, h.unit, comult, h.counit)
    with pytest.raises(BialgebraInvalid):
        solve_antipode(bad)


def test_bialgebra_without_antipode_over_Z():
    # the monoid algebra of {1, z} with z^2 = z is a bialgebra; z has no inverse
    mult = [[[1, 0], [0, 1]], [[0, 1], [0, 1]]]
    comult = [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]
    h = HopfAlgebraData.build(mult, [1, 0], comult, [1, 1])
    assert solve_antipode(h) is None


def test_shape_errors():
    with pytest.raises(DimensionMismatch):
        HopfAlgebraData.build([[[1]]], [1], [[[1]]], [1, 0])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS), st.data())
def test_convolution_with_counit_is_neutral(name, data):
    h = builtin_algebra(name)
    coeffs = data.draw(st.lists(st.integers(-5, 5), min_size=h.rank, max_size=h.rank))
    f = LinearFunctional(tuple(coeffs))
    eps = counit_functional(h)
    assert convolution(f, eps, h) == f
    assert convolution(eps, f, h) == f


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS), st.data())
def test_comultiplication_is_multiplicative_on_random_elements(name, data):
    h = builtin_algebra(name)
    vec = st.lists(st.integers(-3, 3), min_size=h.rank, max_size=h.rank)
    x, y = data.draw(vec), data.draw(vec)
    lhs = h.delta(h.mul(x, y))
    dx, dy = h.delta(x), h.delta(y)
    n = h.rank
    rhs = [0] * (n * n)
    for i1 in range(n):
        for j1 in range(n):
            a = dx[i1 * n + j1]
            if not a:
                continue
            for i2 in range(n):
                for j2 in range(n):
                    b = dy[i2 * n + j2]
                    if not b:
                        continue
                    left = h.mult[i1][i2]
                    right = h.mult[j1][j2]
                    for p, u in enumerate(left):
                        for q, w in enumerate(right):
                            rhs[p * n + q] += a * b * u * w
    assert lhs == rhs


def test_identity_is_hopf_map_and_zero_is_not():
    h = builtin_algebra("sweedler")
    assert all(is_hopf_map(SMat.identity(4), h, h).values())
    assert not is_hopf_map(SMat.zero(4, 4), h, h)["unital"]
