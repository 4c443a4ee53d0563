"""Acceptance criteria, one test each; every test records a PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) to print the lines without pytest.
"""

import json
import math
import sys

from hopflat.cli import main
from hopflat.exactlin import GF, QQ, Lattice, det
from hopflat.flatcert import (
    RandomInstanceConfig,
    certify_faithfully_flat,
    certify_projective_over_normal,
    fiber_criterion_crosscheck,
)
from hopflat.hopfcore import base_change
from hopflat.integrals import (
    antipode_bijectivity,
    dual_hopf_module,
    enough_integrals_index,
    fundamental_iso_check,
    hom_from_H_iso,
    integral_functionals,
    verify_rank_one_and_base_change,
)
from hopflat.modcomod import (
    free_cover,
    regular_comodule,
    regular_hopf_module,
    regular_module,
    restricted_module,
    subcomodule,
    tensor_hopf_module,
    trivial_comodule,
)
from hopflat.subquot import (
    build_quotient,
    check_normal,
    coinvariant_recovery,
    f_B_map,
    gamma_iso,
    ideal_generators,
    integral_transfer,
    same_hopf_structure,
    theta_iso,
)
from hopflat.zoo import (
    CORPUS,
    GROUPS,
    builtin_algebra,
    builtin_inclusion,
    group_algebra,
    normal_subgroup_pairs,
    quotient_group,
    subgroup_inclusion,
    subgroups,
)

RESULTS: list[str] = []
FIBERS = [QQ, GF(2), GF(3), GF(5)]
ALGEBRAS = list(CORPUS) + [n + "*" for n in CORPUS]


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {title}" + (f" ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


def _brute_integral(h, coeffs, side, p=None):
    n = h.rank
    for i in range(n):
        acc = [0] * n
        for j in range(n):
            for k in range(n):
                c = h.comult[i][j][k]
                if c:
                    if side == "left":
                        acc[j] += c * coeffs[k]
                    else:
                        acc[k] += c * coeffs[j]
        for r in range(n):
            acc[r] -= coeffs[i] * h.unit[r]
        if any((x % p if p else x) for x in acc):
            return False
    return True


def _normal_incs():
    return [(f"{name}>{sorted(h)}", g, h, subgroup_inclusion(g, sorted(h)))
            for name, g, h in normal_subgroup_pairs()]


def test_01_integral_rank_one():
    bad = []
    for name in ALGEBRAS:
        h = builtin_algebra(name)
        cert = verify_rank_one_and_base_change(h, FIBERS)
        if not cert.passed:
            bad.append(name)
            continue
        for side in ("left", "right"):
            mod = integral_functionals(h, side)
            phi = mod.basis[0].coefficients
            if mod.rank != 1 or not _brute_integral(h, phi, side):
                bad.append(f"{name}/{side}")
            for k in FIBERS[1:]:
                # the fiber space is one-dimensional and contains the reduction
                fk = integral_functionals(base_change(h, k), side)
                if fk.rank != 1 or not _brute_integral(h, [c % k.p for c in phi], side, k.p):
                    bad.append(f"{name}/{side}/{k}")
    record(1, "integral rank one and base change", not bad,
           f"{len(ALGEBRAS)} algebras, fibers Q,F2,F3,F5" + (f"; failures {bad}" if bad else ""))


def test_02_enough_integrals():
    values = {}
    for name in ALGEBRAS:
        h = builtin_algebra(name)
        cert = enough_integrals_index(h)
        phi = integral_functionals(h, "left").basis[0].coefficients
        values[name] = (cert.witness["gcd"], math.gcd(*phi))
    ok = all(a == b == 1 for a, b in values.values())
    record(2, "gcd of integral values is 1", ok, f"{len(values)} algebras")


def test_03_antipode_bijective():
    dets = {}
    for name in ALGEBRAS:
        h = builtin_algebra(name)
        dets[name] = (antipode_bijectivity(h).witness["determinant"], det(h.antipode))
    ok = all(a == b and abs(a) == 1 for a, b in dets.values())
    record(3, "det(S) = +-1", ok, f"{len(dets)} algebras")


def test_04_normality_oracle():
    mismatches, total = [], 0
    for name in ("S3", "D4", "Q8"):
        g = GROUPS[name]()
        for h in subgroups(g):
            total += 1
            conj = all(g.mul(g.mul(x, y), g.inverse[x]) in h for x in range(g.order) for y in h)
            cert = check_normal(subgroup_inclusion(g, sorted(h)))
            if not cert.passed or (cert.verdict == "normal") != conj:
                mismatches.append(f"{name}>{sorted(h)}")
    record(4, "Hopf normality matches group normality", not mismatches,
           f"{total} subgroups, {len(mismatches)} mismatches")


def test_05_quotients():
    bad = []
    pairs = _normal_incs()
    for label, g, h, inc in pairs:
        q = build_quotient(inc)
        n = inc.amb.rank
        right = Lattice.span(n, ideal_generators(inc, "right"))
        left = Lattice.span(n, ideal_generators(inc, "left"))
        expected = group_algebra(quotient_group(g, h))
        if not (same_hopf_structure(q.quotient, expected) and right == left and right.saturate() == right):
            bad.append(label)
    record(5, "C = Z[G/N] exactly, B A+ = A+ B saturated", not bad,
           f"{len(pairs)} normal pairs" + (f"; failures {bad}" if bad else ""))


def test_06_correspondence_round_trip():
    bad = [label for label, _, _, inc in _normal_incs()
           if not coinvariant_recovery(build_quotient(inc)).passed]
    record(6, "subalgebra/ideal correspondence round trip", not bad,
           f"{len(normal_subgroup_pairs())} normal pairs")


def test_07_canonical_isomorphisms():
    bad = []
    for label, _, _, inc in _normal_incs():
        q = build_quotient(inc)
        for f in (gamma_iso, theta_iso, f_B_map):
            if not f(q).passed:
                bad.append(f"{label}/{f.__name__}")
    record(7, "gamma, theta and f_B", not bad, f"{len(normal_subgroup_pairs())} normal pairs")


def test_08_fiber_criterion():
    cert = fiber_criterion_crosscheck(RandomInstanceConfig(count=120))
    w = cert.witness
    ok = cert.passed and w["count"] >= 100 and w["projective"] > 0 and w["not_projective"] > 0
    record(8, "global splitting agrees with all-fiber flatness", ok,
           f"{cert.verdict}, {w['projective']} projective, {w['not_projective']} not")


def test_09_faithful_flatness_pipeline():
    details, ok = [], True
    for name in ("A3-in-S3", "C2-in-C4"):
        inc = builtin_inclusion(name)
        cert = certify_faithfully_flat(inc)
        basis = cert.witness["free_basis"]
        mod = restricted_module(regular_module(inc.amb, "left"), inc.embedding, inc.sub)
        p, _ = free_cover(mod, basis)
        bij = abs(det(p.to_dense())) == 1
        ok &= cert.passed and cert.verdict == "faithfully-flat" and len(basis) == 2 and bij
        details.append(f"{name}: {cert.witness['free_basis_names']}")
    record(9, "faithfully flat with free basis of rank 2", ok, "; ".join(details))


def test_10_integral_transfer():
    q = build_quotient(builtin_inclusion("A3-in-S3"))
    cert = integral_transfer(q)
    psi = cert.witness["psi"]
    lattice = Lattice.span(q.quotient.rank,
                           [phi.coefficients for phi in integral_functionals(q.quotient, "right").basis])
    ok = cert.passed and any(psi) and psi in lattice
    record(10, "transferred psi is a nonzero right integral on C", ok, f"psi = {psi}")


def test_11_projectivity_pipeline():
    ok, details = True, []
    for name in ("A3-in-S3", "C2-in-C2xC2"):
        cert = certify_projective_over_normal(builtin_inclusion(name))
        ok &= cert.passed and len(cert.checks) == 4 and all(cert.checks.values())
        details.append(f"{name}: {sum(cert.checks.values())}/4")
    record(11, "projectivity over a normal subalgebra", ok, "; ".join(details))


def test_12_fundamental_and_hom_isomorphisms():
    bad = []
    for name in CORPUS:
        h = builtin_algebra(name)
        for label, m in (("regular", regular_hopf_module(h)), ("tensor", tensor_hopf_module(h))):
            c = fundamental_iso_check(m)
            if not c.passed or set(c.witness["divisors"]) != {1}:
                bad.append(f"{name}/{label}")
    c3 = builtin_algebra("C3")
    c = fundamental_iso_check(dual_hopf_module(c3))
    if not c.passed or set(c.witness["divisors"]) != {1}:
        bad.append("C3/dual")
    c2, s3 = builtin_algebra("C2"), builtin_algebra("S3")
    coset = subcomodule(regular_comodule(s3), [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]])
    for label, h, m in (("R", c2, trivial_comodule(c2)), ("C2", c2, regular_comodule(c2)),
                        ("S3/C", s3, coset)):
        if not hom_from_H_iso(h, m).passed:
            bad.append(f"hom/{label}")
    record(12, "fundamental isomorphism and hom isomorphism bijective", not bad,
           f"{len(CORPUS) * 2 + 4} instances")


def test_13_cli_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    code_a = main(["all", "--out", str(a)])
    code_b = main(["all", "--out", str(b)])
    same = a.read_bytes() == b.read_bytes()
    total = json.loads(a.read_text())["summary"]["total"]
    record(13, "CLI `all` is byte-identical across runs", code_a == code_b == 0 and same,
           f"exit {code_a}, {total} certificates")


if __name__ == "__main__":
    import tempfile
    from pathlib import Path

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    failed = 0
    for t in tests:
        try:
            if t.__code__.co_argcount:
                with tempfile.TemporaryDirectory() as d:
                    t(Path(d))
            else:
                t()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
