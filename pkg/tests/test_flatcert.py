import random

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from hopflat.certificate import HypothesisUnmet
from hopflat.exactlin import GF, QQ, ZZ, det
from hopflat.flatcert import (
    RandomInstanceConfig,
    candidate_primes,
    certify_faithfully_flat,
    certify_module,
    certify_projective_over_normal,
    fiber_criterion_crosscheck,
    fiber_flat,
    find_free_basis,
    global_projective,
    module_over_fiber,
    random_submodule,
)
from hopflat.modcomod import free_cover, module_splitting, regular_module, restricted_module, trivial_module
from hopflat.zoo import builtin_algebra, builtin_inclusion, cyclic, group_algebra

FLAT_CASES = ["A3-in-S3", "C2-in-C4", "C2-in-S3", "C2-in-C2xC2", "center-in-Q8", "C4-in-D4", "g-in-sweedler"]


def b_over_a(name, side="right"):
    inc = builtin_inclusion(name)
    return restricted_module(regular_module(inc.amb, side), inc.embedding, inc.sub)


def test_candidate_primes_for_S3_over_A3():
    assert {2, 3} <= set(candidate_primes(b_over_a("A3-in-S3")))


def test_candidate_primes_do_not_mutate_module():
    mod = b_over_a("A3-in-S3")
    before = mod.action.copy()
    candidate_primes(mod)
    assert mod.action == before


@pytest.mark.parametrize("name", FLAT_CASES)
def test_faithfully_flat(name):
    cert = certify_faithfully_flat(builtin_inclusion(name))
    assert cert.passed, cert.checks
    assert cert.verdict == "faithfully-flat"
    inc = builtin_inclusion(name)
    basis = cert.witness["free_basis"]
    assert len(basis) == inc.amb.rank // inc.sub.rank


def test_S3_over_A3_free_on_e_and_s():
    cert = certify_faithfully_flat(builtin_inclusion("A3-in-S3"))
    assert cert.witness["free_basis_names"] == ["e", "s"]


@pytest.mark.parametrize("name", ["A3-in-S3", "C2-in-C4"])
def test_free_basis_witness_is_bijective(name):
    mod = b_over_a(name, "left")
    basis = find_free_basis(mod, ZZ)
    p, _ = free_cover(mod, basis)
    assert abs(det(p.to_dense())) == 1


def test_trivial_module_flat_off_two():
    mod = trivial_module(builtin_algebra("C2"))
    assert not fiber_flat(mod, GF(2)).flat
    assert fiber_flat(mod, GF(3)).flat
    assert fiber_flat(mod, QQ).flat
    assert global_projective(mod) is None
    cert = certify_module(mod)
    assert cert.verdict == "not-flat"
    assert all(cert.checks.values())


def test_flat_cert_needs_saturation():
    with pytest.raises(HypothesisUnmet):
        certify_faithfully_flat(builtin_inclusion("C2-to-C2*"))


@pytest.mark.parametrize("name", ["A3-in-S3", "C2-in-C2xC2", "center-in-Q8", "C4-in-D4"])
def test_projective_over_normal(name):
    cert = certify_projective_over_normal(builtin_inclusion(name))
    assert cert.passed, cert.checks
    assert set(cert.checks) == {"quotient_nonzero_integral", "twist_isomorphism",
                                "coinvariants_are_B", "global_splitting"}


def test_projective_over_normal_needs_normality():
    with pytest.raises(HypothesisUnmet) as err:
        certify_projective_over_normal(builtin_inclusion("g-in-sweedler"))
    assert "normal" in err.value.missing


def test_fiber_criterion_default_seed():
    cert = fiber_criterion_crosscheck()
    assert cert.passed
    assert cert.witness["count"] >= 100
    # both outcomes occur, so agreement is not vacuous
    assert cert.witness["projective"] > 0 and cert.witness["not_projective"] > 0


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_fiber_criterion_on_random_submodules(seed, order):
    A = group_algebra(cyclic(order))
    mod = random_submodule(A, random.Random(seed), RandomInstanceConfig())
    assert all(mod.checks().values())
    primes = candidate_primes(mod)
    fibers = [QQ] + [GF(p) for p in primes]
    all_flat = all(module_splitting(module_over_fiber(mod, k), k) is not None for k in fibers)
    assert (global_projective(mod) is not None) == all_flat


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_global_section_really_splits(seed):
    A = group_algebra(cyclic(3))
    mod = random_submodule(A, random.Random(seed), RandomInstanceConfig())
    split = global_projective(mod)
    if split is not None:
        assert split["projection"] @ split["section"] == type(split["section"]).identity(mod.rank)
