"""Flatness, freeness and projectivity of a finite-rank module over a finite-rank algebra.

Over a field a finite-dimensional module is flat iff projective iff a free cover
splits, and a split is an exact linear system. Over Z the same system decides
projectivity directly; the fiber criterion compares the two.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .certificate import Certificate, HypothesisUnmet
from .exactlin import (
    QQ,
    ZZ,
    Fiber,
    GF,
    Lattice,
    SMat,
    det,
    elementary_divisors,
    field_rank,
    prime_factors,
    solve_integer,
)
from .hopfcore import HopfAlgebraData, base_change
from .integrals import LEFT_SIDE, integral_functionals
from .modcomod import (
    LEFT,
    RIGHT,
    ModuleData,
    coinvariant_lattice,
    free_cover,
    hopf_module_M_tensor_C,
    module_generators,
    module_splitting,
    regular_module,
    restricted_module,
    splitting_system,
    twist_iso,
)
from .subquot import HopfInclusion, build_quotient, integral_transfer

YES, NO, UNDETERMINED = "yes", "no", "undetermined"


@dataclass
class FiberReport:
    fiber: Fiber
    flat: bool
    free: bool | None = None
    basis: list[int] | None = None
    faithfully_flat: str = UNDETERMINED
    note: str = ""

    def to_dict(self) -> dict:
        return {"fiber": str(self.fiber), "flat": self.flat, "free": self.free, "basis": self.basis,
                "faithfully_flat": self.faithfully_flat, "note": self.note}


@dataclass
class FlatnessCertificate:
    fibers: list[FiberReport]
    candidate_primes: list[int]
    global_projective: bool
    splitting_generators: list[int] | None
    verdict: str
    free_basis_global: list[int] | None = None
    checks: dict = field(default_factory=dict)

    def to_certificate(self, claim: str, names=None) -> Certificate:
        named = [names[i] for i in self.free_basis_global] if names and self.free_basis_global else None
        return Certificate(
            claim=claim,
            passed=all(self.checks.values()),
            verdict=self.verdict,
            checks=dict(self.checks),
            witness={
                "fibers": [f.to_dict() for f in self.fibers],
                "candidate_primes": self.candidate_primes,
                "global_projective": self.global_projective,
                "splitting_generators": self.splitting_generators,
                "free_basis": self.free_basis_global,
                "free_basis_names": named,
            },
            error=None if all(self.checks.values()) else "InternalCriterionMismatch",
            anchor="faithful flatness over a saturated normal Hopf subalgebra",
        )


def module_over_fiber(mod: ModuleData, k: Fiber) -> ModuleData:
    return ModuleData(base_change(mod.algebra, k), mod.rank, mod.action.reduce(k), mod.side)


def candidate_primes(mod: ModuleData, floor=(2, 3)) -> list[int]:
    """Primes where a fiber can behave differently from the generic one.

    These are the primes of the Smith divisors of the splitting system and of
    the system augmented by its right-hand side, together with a small floor.
    """
    primes = set(floor)
    gens = module_generators(mod, ZZ)
    system, rhs, _ = splitting_system(mod, gens)
    aug = system.hstack(SMat.from_columns(system.nrows, [rhs]))
    for m in (system, aug):
        for d in elementary_divisors(m):
            primes.update(prime_factors(d))
    for d in elementary_divisors(mod.action):
        primes.update(prime_factors(d))
    return sorted(primes)


def _free_on(mod: ModuleData, chosen: list[int], k: Fiber) -> SMat:
    """Matrix of ``X^len(chosen) -> M`` sending the generators to the chosen basis vectors."""
    p, _ = free_cover(mod, chosen)
    return p.reduce(k) if k.kind == "F" else p


def find_free_basis(mod: ModuleData, k: Fiber) -> list[int] | None:
    """Depth-first search for basis vectors of ``mod`` forming a free ``X``-basis.

    Candidates are the standard basis vectors in order; partial choices are kept
    only while the generated submodule is free on them. Returns None when the
    rank does not divide or no such subset exists.
    """
    n, m = mod.algebra.rank, mod.rank
    if m % n:
        return None
    target = m // n

    def free_so_far(chosen):
        p = _free_on(mod, chosen, k)
        return field_rank(p.to_dense(), QQ if k.kind == "Z" else k) == len(chosen) * n

    seen: dict[tuple, bool] = {}

    def dfs(start, chosen):
        if len(chosen) == target:
            p = _free_on(mod, chosen, k)
            if k.kind == "Z":
                return chosen if abs(det(p.to_dense())) == 1 else None
            return chosen
        for c in range(start, m):
            trial = chosen + [c]
            key = tuple(trial)
            if key not in seen:
                seen[key] = free_so_far(trial)
            if seen[key]:
                found = dfs(c + 1, trial)
                if found is not None:
                    return found
        return None

    return dfs(0, [])


def fiber_flat(mod: ModuleData, k: Fiber) -> FiberReport:
    if not k.is_field:
        raise ValueError("fiber_flat needs a field")
    mk = module_over_fiber(mod, k)
    split = module_splitting(mk, k)
    flat = split is not None
    n, m = mod.algebra.rank, mod.rank
    if m % n:
        return FiberReport(k, flat, None, None, UNDETERMINED, "rank not divisible; freeness search skipped")
    basis = find_free_basis(mk, k)
    free = basis is not None
    if free:
        ff = YES
    elif not flat:
        ff = NO
    else:
        ff = UNDETERMINED
    return FiberReport(k, flat, free if free else None, basis, ff,
                       "" if free or not flat else "flat but no free basis among basis vectors")


def global_projective(mod: ModuleData):
    """An ``X``-linear section of a free cover over Z, or None."""
    return module_splitting(mod, ZZ)


def fibers_for(mod: ModuleData, fibers=None) -> tuple[list[int], list[Fiber]]:
    primes = candidate_primes(mod)
    if fibers is not None:
        return primes, list(fibers)
    return primes, [QQ] + [GF(p) for p in primes]


def certify_module(mod: ModuleData, fibers=None) -> FlatnessCertificate:
    primes, ks = fibers_for(mod, fibers)
    reports = [fiber_flat(mod, k) for k in ks]
    split = global_projective(mod)
    all_flat = all(r.flat for r in reports)
    basis = find_free_basis(mod, ZZ)
    if not all_flat:
        verdict = "not-flat"
    elif all(r.faithfully_flat == YES for r in reports):
        verdict = "faithfully-flat"
    else:
        verdict = "flat-faithfulness-undetermined"
    checks = {"criterion_agrees": (split is not None) == all_flat}
    if basis is not None:
        p = _free_on(mod, basis, ZZ)
        checks["free_basis_bijective"] = abs(det(p.to_dense())) == 1
    for r in reports:
        if r.free:
            checks[f"free_implies_flat_{r.fiber}"] = r.flat
    return FlatnessCertificate(reports, primes, split is not None,
                               split["generators"] if split else None, verdict, basis, checks)


def _b_over_a(inc: HopfInclusion, side: str) -> ModuleData:
    return restricted_module(regular_module(inc.amb, side), inc.embedding, inc.sub)


def certify_faithfully_flat(inc: HopfInclusion, fibers=None) -> Certificate:
    """Fiberwise faithful flatness of ``B`` over ``A`` on both sides, cross-checked over Z."""
    if not inc.is_saturated:
        raise HypothesisUnmet(["saturated"])
    left = certify_module(_b_over_a(inc, LEFT), fibers)
    right = certify_module(_b_over_a(inc, RIGHT), fibers)
    cert = left.to_certificate("faithfully-flat", inc.amb.names)
    cert.checks.update({f"right_{k}": v for k, v in right.checks.items()})
    cert.checks["right_verdict_agrees"] = right.verdict == left.verdict
    cert.passed = all(cert.checks.values())
    cert.witness["right_free_basis"] = right.free_basis_global
    cert.witness["normal"] = inc.is_normal
    cert.witness["rank"] = inc.amb.rank // inc.sub.rank if left.free_basis_global else None
    cert.verdict = left.verdict
    return cert


# ----------------------------------------------------------------------------
# projectivity over a normal subalgebra


def certify_projective_over_normal(inc: HopfInclusion) -> Certificate:
    missing = []
    if not inc.is_saturated:
        missing.append("saturated")
    if not inc.is_normal:
        missing.append("normal")
    B = inc.amb
    if not integral_functionals(B, LEFT_SIDE).nonzero:
        missing.append("nonzero left integral on B")
    if B.antipode is None or not B.fiber.is_unit(det(B.antipode)):
        missing.append("bijective antipode")
    if missing:
        raise HypothesisUnmet(missing)
    q = build_quotient(inc)
    C = q.quotient
    transfer = integral_transfer(q)
    twist = twist_iso(B, C, q.projection)
    # (B (x) C)^co(C) = B (x) 1 as right A-modules
    hm = hopf_module_M_tensor_C(regular_module(B), C, q.projection)
    co = coinvariant_lattice(hm.comodule)
    n, r = B.rank, C.rank
    J = B.identity_map.kron(C.unit_map)
    j_lat = Lattice.span(n * r, [J.column(i) for i in range(n)])
    linear = True
    for i in range(n):
        for a in range(inc.sub.rank):
            fa = inc.f(inc.sub.basis(a))
            lhs = J.apply(B.mul(B.basis(i), fa))
            rhs = hm.module.act(J.column(i), fa)
            if lhs != rhs:
                linear = False
    coinv_ok = co == j_lat and linear
    bright = _b_over_a(inc, RIGHT)
    split = global_projective(bright)
    checks = {
        "quotient_nonzero_integral": transfer.passed,
        "twist_isomorphism": twist.passed,
        "coinvariants_are_B": coinv_ok,
        "global_splitting": split is not None,
    }
    basis = find_free_basis(bright, ZZ)
    return Certificate(
        claim="projective-over-normal",
        passed=all(checks.values()),
        verdict="right-projective" if all(checks.values()) else "theorem-violation",
        checks=checks,
        witness={
            "psi": transfer.witness.get("psi"),
            "coinvariant_rank": co.rank,
            "splitting_generators": split["generators"] if split else None,
            "section": split["section"] if split else None,
            "free_basis": basis,
            "free_basis_names": [B.name_of(i) for i in basis] if basis else None,
        },
        anchor="B is right projective over A",
    )


# ----------------------------------------------------------------------------
# randomized cross-check of the fiber criterion


@dataclass(frozen=True)
class RandomInstanceConfig:
    seed: int = 20240601
    count: int = 100
    max_copies: int = 2
    max_generators: int = 2
    entry_bound: int = 2


def random_submodule(A: HopfAlgebraData, rng: random.Random, cfg: RandomInstanceConfig) -> ModuleData:
    """The ``A``-submodule of ``A^k`` generated by random integer vectors, as a left module."""
    n = A.rank
    k = rng.randint(1, cfg.max_copies)
    while True:
        gens = [[rng.randint(-cfg.entry_bound, cfg.entry_bound) for _ in range(n * k)]
                for _ in range(rng.randint(1, cfg.max_generators))]
        if any(any(g) for g in gens):
            break

    def left_mul(a, v):
        out = []
        for c in range(k):
            out.extend(A.mul(A.basis(a), v[c * n:(c + 1) * n]))
        return out

    span = [left_mul(a, g) for g in gens for a in range(n)]
    lat = Lattice.span(n * k, span)
    basis = [list(b) for b in lat.basis]
    r = len(basis)
    M = [list(col) for col in zip(*basis)]
    cols = []
    for a in range(n):
        images = [left_mul(a, b) for b in basis]
        coords = solve_integer(M, [list(x) for x in zip(*images)])
        for i in range(r):
            cols.append({j: coords[j][i] for j in range(r) if coords[j][i]})
    return ModuleData(A, r, SMat(r, n * r, cols), LEFT)


def fiber_criterion_crosscheck(cfg: RandomInstanceConfig = RandomInstanceConfig(), algebras=None) -> Certificate:
    from .zoo import cyclic, group_algebra

    algebras = algebras or [group_algebra(cyclic(2)), group_algebra(cyclic(3))]
    rng = random.Random(cfg.seed)
    agree = 0
    rows = []
    projective_count = 0
    for i in range(cfg.count):
        A = algebras[i % len(algebras)]
        mod = random_submodule(A, rng, cfg)
        primes, ks = fibers_for(mod)
        all_flat = all(module_splitting(module_over_fiber(mod, k), k) is not None for k in ks)
        glob = global_projective(mod) is not None
        projective_count += glob
        agree += glob == all_flat
        if glob != all_flat:
            rows.append({"instance": i, "rank": mod.rank, "global": glob, "fibers": all_flat})
    return Certificate(
        claim="fiber-criterion",
        passed=agree == cfg.count,
        verdict=f"{agree}/{cfg.count} agree",
        checks={"all_agree": agree == cfg.count},
        witness={"seed": cfg.seed, "count": cfg.count, "projective": projective_count,
                 "not_projective": cfg.count - projective_count},
        counterexample={"disagreements": rows} if rows else None,
        anchor="flatness is detected on the fibers",
    )
