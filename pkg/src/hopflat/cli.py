"""File format, command surface and report emission.

Algebras and inclusions are JSON documents with explicit dimensions::

    {"format": "hopflat/algebra", "format_version": 1, "base": "integers",
     "rank": 2, "basis_names": ["e", "g"],
     "mult": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]],
     "comult": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]],
     "counit": [1, 1],
     "antipode": [[1, 0], [0, 1]]}

``mult[i][j]`` is the vector of ``e_i e_j``; ``comult[i]`` is the ``n x n``
matrix of coefficients of ``e_j (x) e_k`` in ``Delta(e_i)``; column ``j`` of
``antipode`` is ``S(e_j)``. ``antipode`` and ``unit`` are optional and solved for
when absent. An inclusion document has ``"format": "hopflat/inclusion"``, a
``sub`` algebra (a document or a ``builtin:`` reference) and an ``embedding``
matrix with one row per basis vector of the ambient algebra.

Exit codes: 0 when every certificate passes, 1 when a mathematical claim fails,
2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .certificate import (
    AlgebraMismatch,
    AxiomFailure,
    Certificate,
    DimensionMismatch,
    HopfError,
    IdealNotSaturated,
    ParseError,
    jsonable,
)
from .exactlin import GF, QQ, ZZ, Fiber, SMat, parse_fiber, solve_field, solve_integer
from .flatcert import (
    RandomInstanceConfig,
    certify_faithfully_flat,
    certify_projective_over_normal,
    fiber_criterion_crosscheck,
)
from .hopfcore import HopfAlgebraData, solve_antipode, verify_hopf
from .integrals import (
    antipode_bijectivity,
    dual_hopf_module,
    enough_integrals_index,
    fundamental_iso_check,
    hom_from_H_iso,
    projective_over_dual,
    verify_rank_one_and_base_change,
)
from .modcomod import (
    regular_comodule,
    regular_hopf_module,
    subcomodule,
    tensor_hopf_module,
    trivial_comodule,
)
from .subquot import (
    HopfInclusion,
    build_quotient,
    check_inclusion,
    check_normal,
    coinvariant_recovery,
    compare_with,
    equivalence_unit_check,
    f_B_map,
    gamma_iso,
    integral_transfer,
    quotient_certificate,
    theta_iso,
)
from .zoo import (
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

FORMAT_VERSION = 1
ALGEBRA_FORMAT = "hopflat/algebra"
INCLUSION_FORMAT = "hopflat/inclusion"
REPORT_FORMAT = "hopflat/report"
COMMANDS = ("verify", "integrals", "normality", "quotient", "flat-cert", "proj-cert",
            "transfer", "fundamental", "all", "emit")
NEEDS_SUB = ("normality", "quotient", "flat-cert", "proj-cert", "transfer")
VIOLATION_NOTE = ("a theorem check failed on input that passed validation; "
                  "this indicates an implementation bug")


# ----------------------------------------------------------------------------
# file format


def base_name(k: Fiber) -> str:
    if k.kind == "Z":
        return "integers"
    if k.kind == "Q":
        return "rationals"
    return f"prime:{k.p}"


def parse_base(text: str, where: str = "base") -> Fiber:
    if text == "integers":
        return ZZ
    if text == "rationals":
        return QQ
    if isinstance(text, str) and text.startswith("prime:"):
        try:
            return GF(int(text[6:]))
        except ValueError as e:
            raise ParseError(where, str(e)) from None
    raise ParseError(where, f"expected 'integers', 'rationals' or 'prime:p', got {text!r}")


def _scalar_out(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


def _scalar_in(x, k: Fiber, where: str):
    if isinstance(x, bool):
        raise ParseError(where, "expected a number, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str) and k.kind == "Q":
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError):
            pass
    raise ParseError(where, f"expected an integer{' or a fraction string' if k.kind == 'Q' else ''}, got {x!r}")


def _array(x, shape: tuple[int, ...], k: Fiber, where: str):
    """Check ``x`` is a nested list of exactly ``shape`` and convert the scalars."""
    if not shape:
        return _scalar_in(x, k, where)
    if not isinstance(x, list):
        raise ParseError(where, f"expected a list of length {shape[0]}")
    if len(x) != shape[0]:
        raise DimensionMismatch(f"{where}: length {len(x)}, expected {shape[0]}")
    return [_array(y, shape[1:], k, f"{where}[{i}]") for i, y in enumerate(x)]


def emit_algebra(h: HopfAlgebraData) -> dict:
    n = h.rank
    doc = {
        "format": ALGEBRA_FORMAT,
        "format_version": FORMAT_VERSION,
        "base": base_name(h.fiber),
        "rank": n,
        "mult": [[[_scalar_out(x) for x in h.mult[i][j]] for j in range(n)] for i in range(n)],
        "comult": [[[_scalar_out(x) for x in row] for row in h.comult[i]] for i in range(n)],
        "counit": [_scalar_out(x) for x in h.counit],
        "unit": [_scalar_out(x) for x in h.unit],
    }
    if h.antipode is not None:
        doc["antipode"] = [[_scalar_out(x) for x in row] for row in h.antipode]
    if h.names is not None:
        doc["basis_names"] = list(h.names)
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _solve_unit(n: int, mult, k: Fiber, where: str) -> list:
    # u e_i = e_i = e_i u for every i
    rows, rhs = [], []
    for i in range(n):
        for c in range(n):
            rows.append([mult[j][i][c] for j in range(n)])
            rhs.append(1 if c == i else 0)
            rows.append([mult[i][j][c] for j in range(n)])
            rhs.append(1 if c == i else 0)
    sol = solve_integer(rows, rhs) if k.kind == "Z" else solve_field(rows, [k.norm(v) for v in rhs], k)
    if sol is None:
        raise AxiomFailure("unitality", f"{where}: no two-sided unit")
    return list(sol)


def parse_algebra_doc(doc, where: str = "<document>") -> tuple[HopfAlgebraData, dict]:
    """Validated algebra and a note of what was solved for."""
    if not isinstance(doc, dict):
        raise ParseError(where, "expected an object")
    fmt = doc.get("format", ALGEBRA_FORMAT)
    if fmt != ALGEBRA_FORMAT:
        raise ParseError(f"{where}: format", f"expected {ALGEBRA_FORMAT!r}, got {fmt!r}")
    for key in ("rank", "mult", "comult", "counit"):
        if key not in doc:
            raise ParseError(f"{where}: {key}", "missing field")
    unknown = set(doc) - {"format", "format_version", "base", "rank", "mult", "comult", "counit",
                          "unit", "antipode", "basis_names", "label"}
    if unknown:
        raise ParseError(where, f"unknown fields {sorted(unknown)}")
    n = doc["rank"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"{where}: rank", "expected a positive integer")
    k = parse_base(doc.get("base", "integers"), f"{where}: base")
    mult = _array(doc["mult"], (n, n, n), k, f"{where}: mult")
    comult = _array(doc["comult"], (n, n, n), k, f"{where}: comult")
    counit = _array(doc["counit"], (n,), k, f"{where}: counit")
    names = doc.get("basis_names")
    if names is not None:
        if not isinstance(names, list) or not all(isinstance(s, str) for s in names):
            raise ParseError(f"{where}: basis_names", "expected a list of strings")
        if len(names) != n:
            raise DimensionMismatch(f"{where}: basis_names: length {len(names)}, expected {n}")
        if len(set(names)) != n:
            raise ParseError(f"{where}: basis_names", "names must be distinct")
    info = {"unit_solved": "unit" not in doc, "antipode_solved": False}
    if "unit" in doc:
        unit = _array(doc["unit"], (n,), k, f"{where}: unit")
    else:
        unit = _solve_unit(n, [[[k.norm(x) for x in v] for v in r] for r in mult], k, where)
    antipode = _array(doc["antipode"], (n, n), k, f"{where}: antipode") if "antipode" in doc else None
    h = HopfAlgebraData.build(mult, unit, comult, counit, antipode, fiber=k, names=names)
    if antipode is None:
        h = _fill_antipode(h, where)
        info["antipode_solved"] = True
        info["antipode"] = [list(r) for r in h.antipode]
    cert = verify_hopf(h)
    if not cert.passed:
        ce = cert.counterexample or {}
        raise AxiomFailure(ce.get("axiom", "unknown"), f"{where}: basis {ce.get('basis')}")
    return h, info


def _fill_antipode(h: HopfAlgebraData, where: str) -> HopfAlgebraData:
    try:
        s = solve_antipode(h)
    except HopfError:
        cert = verify_hopf(h)
        ce = cert.counterexample or {}
        raise AxiomFailure(ce.get("axiom", "unknown"), f"{where}: basis {ce.get('basis')}") from None
    if s is None:
        raise AxiomFailure("antipode", f"{where}: the bialgebra has no antipode over its base")
    return HopfAlgebraData.build(h.mult, h.unit, h.comult, h.counit, s, fiber=h.fiber, names=h.names)


def _load_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(path, f"cannot read: {e.strerror}") from None
    try:
        return json.loads(text.replace("\r\n", "\n"))
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}:{e.lineno}:{e.colno}", e.msg) from None


def load_algebra(ref) -> tuple[HopfAlgebraData, dict]:
    """``builtin:NAME``, a path, or an already decoded document."""
    if isinstance(ref, dict):
        return parse_algebra_doc(ref)
    if ref.startswith("builtin:"):
        try:
            return builtin_algebra(ref[8:]), {"builtin": ref[8:]}
        except KeyError as e:
            raise ParseError(ref, e.args[0]) from None
    return parse_algebra_doc(_load_json(ref), ref)


def parse_algebra(text: str) -> HopfAlgebraData:
    """Parse an algebra document from a string."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}:{e.colno}", e.msg) from None
    return parse_algebra_doc(doc)[0]


def emit_inclusion(inc: HopfInclusion) -> dict:
    return {
        "format": INCLUSION_FORMAT,
        "format_version": FORMAT_VERSION,
        "label": inc.label,
        "sub": emit_algebra(inc.sub),
        "amb": emit_algebra(inc.amb),
        "embedding": inc.embedding.to_dense(),
    }


def load_inclusion(ref, amb: HopfAlgebraData | None = None) -> HopfInclusion:
    if isinstance(ref, str) and ref.startswith("builtin:"):
        try:
            inc = builtin_inclusion(ref[8:])
        except KeyError as e:
            raise ParseError(ref, e.args[0]) from None
    else:
        where = ref if isinstance(ref, str) else "<document>"
        doc = ref if isinstance(ref, dict) else _load_json(ref)
        if not isinstance(doc, dict) or doc.get("format") != INCLUSION_FORMAT:
            raise ParseError(f"{where}: format", f"expected {INCLUSION_FORMAT!r}")
        for key in ("sub", "embedding"):
            if key not in doc:
                raise ParseError(f"{where}: {key}", "missing field")
        sub, _ = load_algebra(doc["sub"])
        if "amb" in doc:
            big, _ = load_algebra(doc["amb"])
        elif amb is not None:
            big = amb
        else:
            raise ParseError(f"{where}: amb", "missing field and no ambient algebra given")
        emb = _array(doc["embedding"], (big.rank, sub.rank), ZZ, f"{where}: embedding")
        inc = HopfInclusion(sub, big, SMat.from_dense(emb, sub.rank), doc.get("label", ""))
    if amb is not None and (inc.amb.mult, inc.amb.comult) != (amb.mult, amb.comult):
        raise AlgebraMismatch(f"{inc.label or 'inclusion'}: ambient algebra differs from the input algebra")
    check_inclusion(inc)
    return inc


# ----------------------------------------------------------------------------
# certificate pipelines


@dataclass(frozen=True)
class RunOptions:
    fibers: tuple[Fiber, ...] | None = None
    seed: int | None = None
    strict_saturation: bool = False
    crosscheck_count: int = 100


@dataclass
class Report:
    command: str
    inputs: list[str]
    options: RunOptions
    entries: list[tuple[str, Certificate]] = field(default_factory=list)
    extras: dict = field(default_factory=dict)
    input_error: str | None = None

    def add(self, subject: str, cert: Certificate) -> None:
        self.entries.append((subject, cert))

    @property
    def exit_code(self) -> int:
        if self.input_error is not None:
            return 2
        return 0 if all(c.passed for _, c in self.entries) else 1

    def to_dict(self) -> dict:
        certs = []
        for subject, c in self.entries:
            d = c.to_dict()
            if not d["witness"] and d["counterexample"] is None:
                d["witness"] = {"checks": d["checks"]}
            d["subject"] = subject
            certs.append(d)
        certs.sort(key=lambda d: (d["subject"], d["claim"]))
        opts = self.options
        doc = {
            "format": REPORT_FORMAT,
            "format_version": FORMAT_VERSION,
            "command": self.command,
            "inputs": list(self.inputs),
            "flags": {
                "fibers": [str(k) for k in opts.fibers] if opts.fibers else None,
                "seed": opts.seed,
                "strict_saturation": opts.strict_saturation,
            },
            "certificates": certs,
            "summary": {
                "total": len(certs),
                "passed": sum(d["passed"] for d in certs),
                "failed": [f"{d['subject']}/{d['claim']}" for d in certs if not d["passed"]],
            },
            "exit_code": self.exit_code,
        }
        if self.exit_code == 1:
            doc["note"] = VIOLATION_NOTE
        if self.input_error is not None:
            doc["input_error"] = self.input_error
        doc.update(jsonable(self.extras))
        return doc


def verify_certificates(h: HopfAlgebraData) -> list[tuple[str, Certificate]]:
    return [("axioms", verify_hopf(h))]


def integral_certificates(h: HopfAlgebraData, opts: RunOptions) -> list[tuple[str, Certificate]]:
    fibers = list(opts.fibers) if opts.fibers else [QQ, GF(2), GF(3), GF(5)]
    return [
        ("rank-one", verify_rank_one_and_base_change(h, fibers)),
        ("enough-integrals", enough_integrals_index(h)),
        ("antipode", antipode_bijectivity(h)),
    ]


def fundamental_certificates(h: HopfAlgebraData) -> list[tuple[str, Certificate]]:
    out = [
        ("regular", fundamental_iso_check(regular_hopf_module(h))),
        ("dual", fundamental_iso_check(dual_hopf_module(h))),
        ("tensor", fundamental_iso_check(tensor_hopf_module(h))),
        ("hom-trivial", hom_from_H_iso(h, trivial_comodule(h))),
        ("hom-regular", hom_from_H_iso(h, regular_comodule(h))),
    ]
    if h.fiber.kind == "Z":
        out.append(("projective-over-dual", projective_over_dual(h)))
    return out


def normality_certificates(inc: HopfInclusion) -> list[tuple[str, Certificate]]:
    return [("normality", check_normal(inc))]


def _scope_stop(claim: str, e: Exception, opts: RunOptions) -> Certificate:
    torsion = list(getattr(e, "torsion", ()))
    return Certificate(
        claim=claim,
        passed=not opts.strict_saturation,
        verdict="scope-stop: B A+ not saturated",
        witness={"torsion": torsion, "message": str(e)},
        anchor="saturated quotient",
    )


def quotient_certificates(inc: HopfInclusion, opts: RunOptions, expected=None) -> list[tuple[str, Certificate]]:
    try:
        q = build_quotient(inc)
    except IdealNotSaturated as e:
        return [("quotient", _scope_stop("quotient", e, opts))]
    out = [
        ("quotient", quotient_certificate(q)),
        ("correspondence", coinvariant_recovery(q)),
        ("gamma", gamma_iso(q)),
        ("theta", theta_iso(q)),
        ("f_B", f_B_map(q)),
        ("unit", equivalence_unit_check(q)),
    ]
    if expected is not None:
        out.append(("compare", compare_with(q, expected)))
    return out


def transfer_certificates(inc: HopfInclusion, opts: RunOptions) -> list[tuple[str, Certificate]]:
    try:
        q = build_quotient(inc)
    except IdealNotSaturated as e:
        return [("transfer", _scope_stop("integral-transfer", e, opts))]
    return [("transfer", integral_transfer(q))]


def flat_certificates(inc: HopfInclusion, opts: RunOptions) -> list[tuple[str, Certificate]]:
    out = [("faithfully-flat", certify_faithfully_flat(inc, opts.fibers))]
    if opts.seed is not None:
        cfg = RandomInstanceConfig(seed=opts.seed, count=opts.crosscheck_count)
        out.append(("fiber-criterion", fiber_criterion_crosscheck(cfg)))
    return out


def proj_certificates(inc: HopfInclusion, opts: RunOptions) -> list[tuple[str, Certificate]]:
    try:
        return [("projective", certify_projective_over_normal(inc))]
    except IdealNotSaturated as e:
        return [("projective", _scope_stop("projective-over-normal", e, opts))]


def _subset_label(gname: str, g, elems) -> str:
    return f"{gname}>{{{','.join(g.names[i] for i in sorted(elems))}}}"


def run_all(report: Report, opts: RunOptions) -> None:
    """Every certificate over the builtin corpus."""
    for name in CORPUS:
        for ref in (name, f"{name}*"):
            h = builtin_algebra(ref)
            for sub, c in verify_certificates(h) + integral_certificates(h, opts) + fundamental_certificates(h):
                report.add(f"{ref}/{sub}", c)
    for gname in ("S3", "D4", "Q8"):
        g = GROUPS[gname]()
        for elems in subgroups(g):
            label = _subset_label(gname, g, elems)
            report.add(f"{label}/normality", check_normal(subgroup_inclusion(g, sorted(elems), label)))
    for gname, g, elems in normal_subgroup_pairs():
        label = _subset_label(gname, g, elems)
        inc = subgroup_inclusion(g, sorted(elems), label)
        expected = group_algebra(quotient_group(g, elems))
        for sub, c in quotient_certificates(inc, opts, expected):
            report.add(f"{label}/{sub}", c)
    sweedler = builtin_inclusion("g-in-sweedler")
    report.add("g-in-sweedler/normality", check_normal(sweedler))
    for name in ("A3-in-S3", "C2-in-C4"):
        for sub, c in flat_certificates(builtin_inclusion(name), RunOptions(fibers=opts.fibers)):
            report.add(f"{name}/{sub}", c)
    report.add("A3-in-S3/transfer", transfer_certificates(builtin_inclusion("A3-in-S3"), opts)[0][1])
    for name in ("A3-in-S3", "C2-in-C2xC2"):
        report.add(f"{name}/projective", certify_projective_over_normal(builtin_inclusion(name)))
    s3 = builtin_algebra("S3")
    c_sub = subcomodule(regular_comodule(s3), [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]])
    report.add("S3/hom-quotient-comodule", hom_from_H_iso(s3, c_sub))
    cfg = RandomInstanceConfig(seed=opts.seed if opts.seed is not None else RandomInstanceConfig.seed,
                               count=opts.crosscheck_count)
    report.add("random/fiber-criterion", fiber_criterion_crosscheck(cfg))


def run(command: str, inputs: list[str], sub: str | None = None, opts: RunOptions = RunOptions()) -> Report:
    """Run one command; input errors are recorded on the report, not raised."""
    report = Report(command, list(inputs) + ([f"--sub {sub}"] if sub else []), opts)
    try:
        if command not in COMMANDS:
            raise ParseError("command", f"unknown command {command!r}")
        if command == "all":
            run_all(report, opts)
            return report
        if len(inputs) != 1:
            raise ParseError("inputs", f"{command} takes exactly one algebra")
        h, info = load_algebra(inputs[0])
        if info.get("antipode_solved"):
            report.extras["solved_antipode"] = info["antipode"]
        if command == "emit":
            report.extras["algebra"] = emit_algebra(h)
            return report
        inc = None
        if command in NEEDS_SUB:
            if sub is None:
                raise ParseError("--sub", f"{command} needs a Hopf subalgebra")
            inc = load_inclusion(sub, h)
        elif sub is not None:
            raise ParseError("--sub", f"{command} takes no Hopf subalgebra")
        label = inc.label if inc is not None and inc.label else inputs[0]
        pipeline = {
            "verify": lambda: verify_certificates(h),
            "integrals": lambda: integral_certificates(h, opts),
            "fundamental": lambda: fundamental_certificates(h),
            "normality": lambda: normality_certificates(inc),
            "quotient": lambda: quotient_certificates(inc, opts),
            "transfer": lambda: transfer_certificates(inc, opts),
            "flat-cert": lambda: flat_certificates(inc, opts),
            "proj-cert": lambda: proj_certificates(inc, opts),
        }[command]
        for name, cert in pipeline():
            report.add(f"{label}/{name}", cert)
    except (HopfError, KeyError, ValueError) as e:
        report.entries.clear()
        report.input_error = f"{type(e).__name__}: {e}"
    return report


def parse_fibers(text: str) -> tuple[Fiber, ...]:
    return tuple(parse_fiber(part) for part in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hopflat", description="Certify Hopf algebra constructions over Z.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("inputs", nargs="*", help="builtin:NAME or a path to an algebra document")
    p.add_argument("--sub", help="builtin:NAME or a path to an inclusion document")
    p.add_argument("--fibers", help='comma list such as "Q,2,3,5"; overrides the candidate primes')
    p.add_argument("--out", help="write the report (or the emitted document) here")
    p.add_argument("--seed", type=int, help="seed for the randomized fiber-criterion cross-check")
    p.add_argument("--strict-saturation", action="store_true",
                   help="a non-saturated B A+ fails the run instead of stopping the scope")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        fibers = parse_fibers(args.fibers) if args.fibers else None
    except ValueError as e:
        fibers, bad = None, str(e)
    else:
        bad = None
    opts = RunOptions(fibers=fibers, seed=args.seed, strict_saturation=args.strict_saturation)
    report = run(args.command, args.inputs, args.sub, opts)
    if bad is not None:
        report.entries.clear()
        report.input_error = f"ParseError: --fibers: {bad}"
    doc = report.to_dict()
    if args.command == "emit" and report.input_error is None:
        doc = doc["algebra"]
    text = dumps(doc)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if report.input_error is not None:
        print(report.input_error, file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
