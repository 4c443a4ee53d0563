import math

import pytest

from hopflat.exactlin import GF, QQ
from hopflat.hopfcore import HopfAlgebraData, base_change
from hopflat.integrals import (
    antipode_bijectivity,
    dual_coaction_closed_form,
    dual_hopf_module,
    enough_integrals_index,
    fundamental_iso_check,
    hom_from_H_iso,
    integral_elements,
    integral_functionals,
    is_integral,
    projective_over_dual,
    solve_dual_coaction,
    verify_rank_one_and_base_change,
)
from hopflat.modcomod import (
    check_hopf_module,
    regular_comodule,
    regular_hopf_module,
    subcomodule,
    tensor_hopf_module,
    trivial_comodule,
)
from hopflat.zoo import CORPUS, builtin_algebra

ALL = list(CORPUS) + [n + "*" for n in CORPUS]


def brute_integral_condition(h, coeffs, side, p=None):
    """Rows of sum h1 phi(h2) - phi(h) 1 (left) or its mirror, for each basis h."""
    n = h.rank
    out = []
    for i in range(n):
        acc = [0] * n
        for j in range(n):
            for k in range(n):
                c = h.comult[i][j][k]
                if not c:
                    continue
                if side == "left":
                    acc[j] += c * coeffs[k]
                else:
                    acc[k] += c * coeffs[j]
        for r in range(n):
            acc[r] -= coeffs[i] * h.unit[r]
        out.extend(acc)
    return [x % p for x in out] if p else out


@pytest.mark.parametrize("name", ALL)
def test_integral_module_rank_one(name):
    h = builtin_algebra(name)
    for side in ("left", "right"):
        mod = integral_functionals(h, side)
        assert mod.rank == 1
        phi = mod.basis[0]
        assert not any(brute_integral_condition(h, phi.coefficients, side))
        assert math.gcd(*phi.coefficients) == 1


@pytest.mark.parametrize("name", ALL)
@pytest.mark.parametrize("p", [2, 3, 5])
def test_reduced_integral_spans_fiber_integrals(name, p):
    h = builtin_algebra(name)
    hk = base_change(h, GF(p))
    for side in ("left", "right"):
        fiber_mod = integral_functionals(hk, side)
        assert fiber_mod.rank == 1
        phi = [c % p for c in integral_functionals(h, side).basis[0].coefficients]
        assert any(phi)
        assert not any(brute_integral_condition(h, phi, side, p))


@pytest.mark.parametrize("name", ALL)
def test_rank_one_certificate(name):
    cert = verify_rank_one_and_base_change(builtin_algebra(name), [QQ, GF(2), GF(3), GF(5)])
    assert cert.passed, cert.checks


def test_sweedler_integrals_explicit():
    h = builtin_algebra("sweedler")
    assert integral_functionals(h, "left").basis[0].coefficients in [(0, 0, 0, 1), (0, 0, 0, -1)]
    assert integral_functionals(h, "right").basis[0].coefficients in [(0, 0, 1, 0), (0, 0, -1, 0)]
    # right integral element x - gx, left integral element x + gx
    assert integral_elements(h, "right").basis[0] in [(0, 0, 1, -1), (0, 0, -1, 1)]
    assert integral_elements(h, "left").basis[0] in [(0, 0, 1, 1), (0, 0, -1, -1)]


def test_sweedler_is_not_unimodular():
    h = builtin_algebra("sweedler")
    left = integral_functionals(h, "left").basis[0]
    assert not is_integral(left, h, "right")


@pytest.mark.parametrize("name", ["S3", "D4", "Q8"])
def test_group_algebra_integrals(name):
    h = builtin_algebra(name)
    delta_e = [0] * h.rank
    delta_e[0] = 1
    assert integral_functionals(h, "left").basis[0].coefficients == tuple(delta_e)
    assert integral_elements(h, "right").basis[0] == tuple([1] * h.rank)


@pytest.mark.parametrize("name", ALL)
def test_enough_integrals_and_antipode(name):
    h = builtin_algebra(name)
    c = enough_integrals_index(h)
    assert c.passed and c.witness["gcd"] == 1
    d = antipode_bijectivity(h)
    assert d.passed and abs(d.witness["determinant"]) == 1


def test_corrupted_antipode_flagged():
    h = builtin_algebra("C3")
    bad = HopfAlgebraData.build(h.mult, h.unit, h.comult, h.counit,
                                [[2 * v for v in row] for row in h.antipode])
    cert = antipode_bijectivity(bad)
    assert abs(cert.witness["determinant"]) == 8
    assert cert.verdict != "bijective"


@pytest.mark.parametrize("name", CORPUS)
def test_dual_coaction_solved_equals_closed_form(name):
    h = builtin_algebra(name)
    assert solve_dual_coaction(h) == dual_coaction_closed_form(h)
    assert check_hopf_module(dual_hopf_module(h)).passed


@pytest.mark.parametrize("name", ALL)
def test_fundamental_isomorphism(name):
    h = builtin_algebra(name)
    reg = fundamental_iso_check(regular_hopf_module(h))
    assert reg.passed and reg.witness["coinvariant_rank"] == 1
    dm = fundamental_iso_check(dual_hopf_module(h))
    assert dm.passed and dm.witness["coinvariant_rank"] == 1
    tm = fundamental_iso_check(tensor_hopf_module(h))
    assert tm.passed and tm.witness["coinvariant_rank"] == h.rank
    assert set(reg.witness["divisors"]) == {1}


def test_dual_module_coinvariants_are_left_integrals():
    h = builtin_algebra("C3")
    cert = fundamental_iso_check(dual_hopf_module(h))
    phi = integral_functionals(h, "left").basis[0].coefficients
    assert [tuple(v) for v in cert.witness["coinvariants"]] in ([phi], [tuple(-x for x in phi)])


@pytest.mark.parametrize("name", ALL)
def test_hom_from_H(name):
    h = builtin_algebra(name)
    triv = hom_from_H_iso(h, trivial_comodule(h))
    assert triv.passed and triv.witness["hom_rank"] == 1
    reg = hom_from_H_iso(h, regular_comodule(h))
    assert reg.passed and reg.witness["hom_rank"] == h.rank


def test_hom_from_H_coset_comodule():
    h = builtin_algebra("S3")
    m = subcomodule(regular_comodule(h), [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]])
    cert = hom_from_H_iso(h, m)
    assert cert.passed
    assert cert.witness["hom_rank"] == cert.witness["comodule_rank"] == 2


@pytest.mark.parametrize("name", CORPUS)
def test_projective_over_dual(name):
    assert projective_over_dual(builtin_algebra(name)).passed
