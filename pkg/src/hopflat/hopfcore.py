"""Finite-rank Hopf algebras given by structure constants.

Basis ``e_0 .. e_{n-1}``. The stored tensors are

* ``mult[i][j]``  -- coordinates of ``e_i e_j``;
* ``unit``        -- coordinates of ``1``;
* ``comult[i]``   -- ``n x n`` matrix, ``Delta(e_i) = sum comult[i][j][k] e_j (x) e_k``;
* ``counit[i]``   -- ``eps(e_i)``, a functional rather than a matrix;
* ``antipode``    -- ``n x n`` matrix whose column ``j`` is ``S(e_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .certificate import BialgebraInvalid, Certificate, DimensionMismatch
from .exactlin import (
    ZZ,
    Fiber,
    SMat,
    det,
    solve_field,
    solve_integer,
)

AXIOMS = (
    "associativity",
    "unitality",
    "coassociativity",
    "counitality",
    "comult_multiplicative",
    "counit_multiplicative",
    "antipode",
)
BIALGEBRA_AXIOMS = AXIOMS[:-1]


def _tup(x):
    if isinstance(x, (list, tuple)):
        return tuple(_tup(y) for y in x)
    return x


@dataclass(frozen=True)
class HopfAlgebraData:
    mult: tuple
    unit: tuple
    comult: tuple
    counit: tuple
    antipode: tuple | None = None
    fiber: Fiber = ZZ
    names: tuple[str, ...] | None = None

    @classmethod
    def build(cls, mult, unit, comult, counit, antipode=None, fiber: Fiber = ZZ, names=None) -> HopfAlgebraData:
        """Validate shapes, reduce entries into ``fiber`` and freeze."""
        n = len(unit)
        _check_dims(n, mult, comult, counit, antipode, names)
        nm = fiber.norm
        mult = [[[nm(x) for x in v] for v in row] for row in mult]
        comult = [[[nm(x) for x in r] for r in m] for m in comult]
        unit = [nm(x) for x in unit]
        counit = [nm(x) for x in counit]
        if antipode is not None:
            antipode = [[nm(x) for x in r] for r in antipode]
        return cls(_tup(mult), _tup(unit), _tup(comult), _tup(counit), _tup(antipode), fiber,
                   tuple(names) if names is not None else None)

    @property
    def rank(self) -> int:
        return len(self.unit)

    # structure maps as sparse matrices

    @cached_property
    def mult_map(self) -> SMat:
        n = self.rank
        return SMat.from_columns(n, [self.mult[i][j] for i in range(n) for j in range(n)])

    @cached_property
    def unit_map(self) -> SMat:
        return SMat.from_columns(self.rank, [self.unit])

    @cached_property
    def comult_map(self) -> SMat:
        n = self.rank
        return SMat.from_columns(n * n, [[x for r in self.comult[i] for x in r] for i in range(n)])

    @cached_property
    def counit_map(self) -> SMat:
        return SMat.from_dense([list(self.counit)], self.rank)

    @cached_property
    def antipode_map(self) -> SMat:
        if self.antipode is None:
            raise ValueError("no antipode stored")
        return SMat.from_dense(self.antipode, self.rank)

    @cached_property
    def cocomult_map(self) -> SMat:
        """Comultiplication of the co-opposite coalgebra."""
        n = self.rank
        return SMat.swap(n, n) @ self.comult_map

    @cached_property
    def identity_map(self) -> SMat:
        return SMat.identity(self.rank)

    # elements

    def basis(self, i: int) -> list:
        v = [0] * self.rank
        v[i] = 1
        return v

    @property
    def one(self) -> list:
        return list(self.unit)

    def mul(self, x: Sequence, y: Sequence) -> list:
        n = self.rank
        out = [0] * n
        cols = self.mult_map.cols
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    c = xi * yj
                    for k, v in cols[i * n + j].items():
                        out[k] += c * v
        return self.fiber.vec(out)

    def prod(self, *xs: Sequence) -> list:
        out = self.one
        for x in xs:
            out = self.mul(out, x)
        return out

    def delta(self, x: Sequence) -> list:
        """``Delta(x)`` as a flat vector in ``H (x) H``."""
        return self.fiber.vec(self.comult_map.apply(x))

    def eps(self, x: Sequence):
        return self.fiber.norm(sum(c * v for c, v in zip(self.counit, x)))

    def S(self, x: Sequence) -> list:
        return self.fiber.vec(self.antipode_map.apply(x))

    def name_of(self, i: int) -> str:
        return self.names[i] if self.names else f"e{i}"

    def describe(self, v: Sequence) -> str:
        terms = [f"{c}*{self.name_of(i)}" for i, c in enumerate(v) if c]
        return " + ".join(terms) or "0"


def _check_dims(n, mult, comult, counit, antipode, names):
    def bad(what):
        raise DimensionMismatch(f"{what} inconsistent with rank {n}")

    if len(mult) != n or any(len(r) != n or any(len(v) != n for v in r) for r in mult):
        bad("mult")
    if len(comult) != n or any(len(m) != n or any(len(r) != n for r in m) for m in comult):
        bad("comult")
    if len(counit) != n:
        bad("counit")
    if antipode is not None and (len(antipode) != n or any(len(r) != n for r in antipode)):
        bad("antipode")
    if names is not None and len(names) != n:
        bad("basis_names")


@dataclass(frozen=True)
class LinearFunctional:
    """Element of ``H*`` in the dual basis."""

    coefficients: tuple

    def __call__(self, x: Sequence):
        return sum(c * v for c, v in zip(self.coefficients, x))

    def __len__(self) -> int:
        return len(self.coefficients)


def _decode(col: int, dims: Sequence[int]) -> tuple[int, ...]:
    out = []
    for d in reversed(dims):
        out.append(col % d)
        col //= d
    return tuple(reversed(out))


def _axiom_checks(h: HopfAlgebraData, with_antipode: bool) -> tuple[dict[str, bool], dict | None]:
    n, f = h.rank, h.fiber
    I = h.identity_map
    m, u, d, e = h.mult_map, h.unit_map, h.comult_map, h.counit_map
    one = SMat.identity(1)
    pairs = {
        "associativity": [(m @ m.kron(I), m @ I.kron(m), (n, n, n))],
        "unitality": [(m @ u.kron(I), I, (n,)), (m @ I.kron(u), I, (n,))],
        "coassociativity": [(d.kron(I) @ d, I.kron(d) @ d, (n,))],
        "counitality": [(e.kron(I) @ d, I, (n,)), (I.kron(e) @ d, I, (n,))],
        "comult_multiplicative": [
            (d @ m, m.kron(m) @ I.kron(SMat.swap(n, n)).kron(I) @ d.kron(d), (n, n)),
            (d @ u, u.kron(u), (1,)),
        ],
        "counit_multiplicative": [(e @ m, e.kron(e), (n, n)), (e @ u, one, (1,))],
    }
    if with_antipode:
        s = h.antipode_map
        ue = u @ e
        pairs["antipode"] = [(m @ s.kron(I) @ d, ue, (n,)), (m @ I.kron(s) @ d, ue, (n,))]
    checks: dict[str, bool] = {}
    first = None
    for name, items in pairs.items():
        ok = True
        for lhs, rhs, dims in items:
            j = lhs.first_difference(rhs, f)
            if j is not None:
                ok = False
                if first is None:
                    first = {"axiom": name, "basis": [h.name_of(i) if len(dims) and dims[0] == n else i
                                                       for i in _decode(j, dims)]}
                break
        checks[name] = ok
    return checks, first


def verify_hopf(h: HopfAlgebraData) -> Certificate:
    """Check every Hopf axiom as an exact identity of structure tensors."""
    checks, first = _axiom_checks(h, h.antipode is not None)
    if h.antipode is None:
        checks["antipode"] = False
    passed = all(checks.values())
    return Certificate(
        claim="hopf-axioms",
        passed=passed,
        verdict="hopf-algebra" if passed else "axiom-violation",
        checks=checks,
        witness={"rank": h.rank, "fiber": str(h.fiber)},
        counterexample=first if not passed else None,
        anchor="Hopf algebra axioms",
    )


def solve_antipode(h: HopfAlgebraData) -> list[list] | None:
    """The convolution inverse of the identity, or None if the system has no solution.

    Raises BialgebraInvalid when the bialgebra axioms fail.
    """
    checks, first = _axiom_checks(h, False)
    if not all(checks.values()):
        raise BialgebraInvalid(f"bialgebra axiom fails: {first}")
    n = h.rank
    mcols = h.mult_map.cols
    cols: list[dict] = [{} for _ in range(n * n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                c = h.comult[i][j][k]
                if not c:
                    continue
                for a in range(n):
                    # S(e_j) e_k, left-hand composite
                    col = cols[a * n + j]
                    for l, v in mcols[a * n + k].items():
                        r = i * n + l
                        col[r] = col.get(r, 0) + c * v
                    # e_j S(e_k), right-hand composite
                    col = cols[a * n + k]
                    for l, v in mcols[j * n + a].items():
                        r = n * n + i * n + l
                        col[r] = col.get(r, 0) + c * v
    system = SMat(2 * n * n, n * n, [{r: v for r, v in c.items() if v} for c in cols])
    rhs = [h.counit[i] * h.unit[l] for i in range(n) for l in range(n)] * 2
    if h.fiber.is_field:
        x = solve_field(system.to_dense(), rhs, h.fiber)
    else:
        x = solve_integer(system, rhs)
    if x is None:
        return None
    return [[h.fiber.norm(x[a * n + j]) for j in range(n)] for a in range(n)]


def with_antipode(h: HopfAlgebraData) -> HopfAlgebraData:
    """Return ``h`` with its antipode solved for if it was absent."""
    if h.antipode is not None:
        return h
    s = solve_antipode(h)
    if s is None:
        raise BialgebraInvalid("bialgebra has no antipode over its fiber")
    return HopfAlgebraData(h.mult, h.unit, h.comult, h.counit, _tup(s), h.fiber, h.names)


def base_change(h: HopfAlgebraData, k: Fiber) -> HopfAlgebraData:
    if h.fiber == k:
        return h
    if h.fiber != ZZ:
        raise ValueError("base change is defined from Z only")
    return HopfAlgebraData.build(h.mult, h.unit, h.comult, h.counit, h.antipode, k, h.names)


def dual(h: HopfAlgebraData) -> HopfAlgebraData:
    """``H*`` in the dual basis: convolution product, transposed multiplication."""
    n = h.rank
    mult = [[[h.comult[i][j][k] for i in range(n)] for k in range(n)] for j in range(n)]
    comult = [[[h.mult[j][k][i] for k in range(n)] for j in range(n)] for i in range(n)]
    antipode = None
    if h.antipode is not None:
        antipode = [[h.antipode[j][i] for j in range(n)] for i in range(n)]
    names = tuple(_dual_name(x) for x in h.names) if h.names else None
    return HopfAlgebraData(_tup(mult), h.counit, _tup(comult), h.unit, _tup(antipode), h.fiber, names)


def _dual_name(x: str) -> str:
    # the dual of the dual basis vector d(x) is x again under H** = H
    if x.startswith("d(") and x.endswith(")"):
        depth = 0
        for i, ch in enumerate(x[1:], start=1):
            depth += {"(": 1, ")": -1}.get(ch, 0)
            if depth == 0:
                if i == len(x) - 1:
                    return x[2:-1]
                break
    return f"d({x})"


def convolution(f: LinearFunctional, g: LinearFunctional, h: HopfAlgebraData) -> LinearFunctional:
    """``(f . g)(x) = sum f(x_1) g(x_2)``."""
    n = h.rank
    out = []
    for i in range(n):
        d = h.comult[i]
        out.append(h.fiber.norm(sum(d[j][k] * f.coefficients[j] * g.coefficients[k]
                                    for j in range(n) for k in range(n) if d[j][k])))
    return LinearFunctional(tuple(out))


def counit_functional(h: HopfAlgebraData) -> LinearFunctional:
    return LinearFunctional(tuple(h.counit))


def antipode_determinant(h: HopfAlgebraData):
    if h.antipode is None:
        raise ValueError("no antipode stored")
    return h.fiber.norm(det(h.antipode))


def is_hopf_map(f: SMat, src: HopfAlgebraData, dst: HopfAlgebraData) -> dict[str, bool]:
    """Which Hopf-map identities the matrix ``f: src -> dst`` satisfies."""
    fib = dst.fiber
    out = {
        "multiplicative": (f @ src.mult_map).first_difference(dst.mult_map @ f.kron(f), fib) is None,
        "unital": (f @ src.unit_map).first_difference(dst.unit_map, fib) is None,
        "comultiplicative": (f.kron(f) @ src.comult_map).first_difference(dst.comult_map @ f, fib) is None,
        "counital": (dst.counit_map @ f).first_difference(src.counit_map, fib) is None,
    }
    if src.antipode is not None and dst.antipode is not None:
        out["antipode"] = (f @ src.antipode_map).first_difference(dst.antipode_map @ f, fib) is None
    return out
