"""Exact linear algebra over the integers, the rationals and prime fields.

Dense matrices are plain lists of rows. Structure maps of Hopf algebras are
mostly permutation-like, so they are kept as :class:`SMat`, a sparse matrix
holding one ``{row: value}`` dict per column; compositions and Kronecker
products stay cheap in that form.

Conventions used throughout the package:

* matrices act on column vectors, so a map ``V -> W`` has ``dim W`` rows;
* the basis of ``V (x) W`` is ordered ``i * dim W + j``;
* the Hermite normal form is column style: ``H = M U`` with ``U`` unimodular,
  ``H`` lower echelon, positive pivots, and the entries left of a pivot
  reduced into ``[0, pivot)``. Pivot rule: smallest nonzero absolute value,
  leftmost column on ties.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Matrix = list[list[int]]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``|n|`` (empty for 0 and +-1)."""
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class Fiber:
    """Base ring of a computation: ``Z``, ``Q`` or a prime field ``F_p``."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "F"):
            raise ValueError(f"unknown fiber kind {self.kind!r}")
        if self.kind == "F":
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"prime field needs a prime, got {self.p!r}")
        elif self.p is not None:
            raise ValueError("only prime fields carry a characteristic")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "F" else 0

    def norm(self, x):
        """Canonical representative of ``x``."""
        if self.kind == "F":
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return x % self.p
        if self.kind == "Q":
            if isinstance(x, Fraction) and x.denominator == 1:
                return x.numerator
            return x
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator
        return x

    def inv(self, x):
        if self.kind == "F":
            return pow(x % self.p, -1, self.p)
        if self.kind == "Q":
            return Fraction(1) / x
        if x in (1, -1):
            return x
        raise ZeroDivisionError(f"{x} is not a unit in Z")

    def is_unit(self, x) -> bool:
        x = self.norm(x)
        if self.kind == "Z":
            return x in (1, -1)
        return x != 0

    def vec(self, v: Iterable) -> list:
        return [self.norm(x) for x in v]

    def __str__(self) -> str:
        return {"Z": "Z", "Q": "Q"}.get(self.kind) or f"F{self.p}"


ZZ = Fiber("Z")
QQ = Fiber("Q")


def GF(p: int) -> Fiber:
    return Fiber("F", p)


def parse_fiber(text: str) -> Fiber:
    """Accepts ``Z``/``integers``, ``Q``/``rationals``, ``prime:p`` or a bare prime."""
    t = text.strip()
    if t in ("Z", "integers"):
        return ZZ
    if t in ("Q", "rationals"):
        return QQ
    if t.startswith("prime:"):
        t = t[len("prime:"):]
    if t.startswith("F"):
        t = t[1:]
    try:
        return GF(int(t))
    except ValueError:
        raise ValueError(f"cannot parse fiber {text!r}") from None


# ----------------------------------------------------------------------------
# dense helpers


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def transpose(m: Sequence[Sequence]) -> Matrix:
    return [list(r) for r in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def det(m: Sequence[Sequence]) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_unimodular(m: Sequence[Sequence]) -> bool:
    if not m:
        return True
    return all(len(r) == len(m) for r in m) and det(m) in (1, -1)


# ----------------------------------------------------------------------------
# sparse matrices


def _axpy(dst: dict, a, src: dict) -> None:
    """``dst += a * src`` on sparse vectors."""
    for k, v in src.items():
        nv = dst.get(k, 0) + a * v
        if nv:
            dst[k] = nv
        else:
            dst.pop(k, None)


class SMat:
    """Sparse matrix stored column-wise as ``{row: value}`` dicts."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: list[dict]):
        if len(cols) != ncols:
            raise ValueError("column count mismatch")
        self.nrows = nrows
        self.ncols = ncols
        self.cols = cols

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], ncols: int | None = None) -> SMat:
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols: list[dict] = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                if v:
                    cols[j][i] = v
        return cls(nrows, ncols, cols)

    @classmethod
    def from_columns(cls, nrows: int, vectors: Sequence[Sequence]) -> SMat:
        return cls(nrows, len(vectors), [{i: v for i, v in enumerate(vec) if v} for vec in vectors])

    @classmethod
    def identity(cls, n: int) -> SMat:
        return cls(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def zero(cls, r: int, c: int) -> SMat:
        return cls(r, c, [{} for _ in range(c)])

    @classmethod
    def swap(cls, a: int, b: int) -> SMat:
        """Flip ``V (x) W -> W (x) V`` for ``dim V = a``, ``dim W = b``."""
        cols = [{j * a + i: 1} for i in range(a) for j in range(b)]
        return cls(a * b, a * b, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def copy(self) -> SMat:
        return SMat(self.nrows, self.ncols, [dict(c) for c in self.cols])

    def to_dense(self) -> Matrix:
        m = zeros(self.nrows, self.ncols)
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                m[i][j] = v
        return m

    def column(self, j: int) -> list:
        v = [0] * self.nrows
        for i, x in self.cols[j].items():
            v[i] = x
        return v

    def apply(self, vec: Sequence) -> list:
        out = [0] * self.nrows
        for j, x in enumerate(vec):
            if x:
                for i, v in self.cols[j].items():
                    out[i] += x * v
        return out

    def apply_sparse(self, vec: dict) -> dict:
        out: dict = {}
        for j, x in vec.items():
            _axpy(out, x, self.cols[j])
        return out

    def __matmul__(self, other: SMat) -> SMat:
        if self.ncols != other.nrows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        cols = []
        for col in other.cols:
            out: dict = {}
            for k, x in col.items():
                _axpy(out, x, self.cols[k])
            cols.append(out)
        return SMat(self.nrows, other.ncols, cols)

    def kron(self, other: SMat) -> SMat:
        r2 = other.nrows
        cols = []
        for ca in self.cols:
            for cb in other.cols:
                cols.append({i * r2 + k: x * y for i, x in ca.items() for k, y in cb.items()})
        return SMat(self.nrows * r2, self.ncols * other.ncols, cols)

    def __add__(self, other: SMat) -> SMat:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            _axpy(c, 1, b)
            cols.append(c)
        return SMat(self.nrows, self.ncols, cols)

    def __neg__(self) -> SMat:
        return SMat(self.nrows, self.ncols, [{i: -v for i, v in c.items()} for c in self.cols])

    def __sub__(self, other: SMat) -> SMat:
        return self + (-other)

    def scale(self, a) -> SMat:
        return SMat(self.nrows, self.ncols, [{i: a * v for i, v in c.items() if a * v} for c in self.cols])

    def hstack(self, other: SMat) -> SMat:
        if self.nrows != other.nrows:
            raise ValueError("row mismatch")
        return SMat(self.nrows, self.ncols + other.ncols, [dict(c) for c in self.cols + other.cols])

    def vstack(self, other: SMat) -> SMat:
        if self.ncols != other.ncols:
            raise ValueError("column mismatch")
        r = self.nrows
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            c.update({i + r: v for i, v in b.items()})
            cols.append(c)
        return SMat(self.nrows + other.nrows, self.ncols, cols)

    def select_columns(self, idx: Sequence[int]) -> SMat:
        return SMat(self.nrows, len(idx), [dict(self.cols[j]) for j in idx])

    def transpose(self) -> SMat:
        cols: list[dict] = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                cols[i][j] = v
        return SMat(self.ncols, self.nrows, cols)

    def reduce(self, fiber: Fiber) -> SMat:
        cols = []
        for col in self.cols:
            c = {}
            for i, v in col.items():
                v = fiber.norm(v)
                if v:
                    c[i] = v
            cols.append(c)
        return SMat(self.nrows, self.ncols, cols)

    def is_zero(self, fiber: Fiber | None = None) -> bool:
        if fiber is None or fiber.kind != "F":
            return all(not c for c in self.cols)
        return all(v % fiber.p == 0 for c in self.cols for v in c.values())

    def first_difference(self, other: SMat, fiber: Fiber | None = None) -> int | None:
        """Index of the first column where ``self`` and ``other`` differ."""
        diff = self - other
        for j, c in enumerate(diff.cols):
            if fiber is not None and fiber.kind == "F":
                if any(v % fiber.p for v in c.values()):
                    return j
            elif c:
                return j
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, SMat):
            return NotImplemented
        return self.shape == other.shape and self.first_difference(other) is None

    __hash__ = None

    def __repr__(self) -> str:
        return f"SMat({self.nrows}x{self.ncols}, nnz={sum(len(c) for c in self.cols)})"


def _as_columns(m) -> tuple[int, list[dict]]:
    """(nrows, fresh list of sparse columns) for a dense matrix or SMat."""
    if isinstance(m, SMat):
        return m.nrows, [dict(c) for c in m.cols]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    cols: list[dict] = [{} for _ in range(ncols)]
    for i, row in enumerate(m):
        for j, v in enumerate(row):
            if v:
                cols[j][i] = v
    return nrows, cols


def _dense_vector(col: dict, n: int) -> tuple:
    v = [0] * n
    for i, x in col.items():
        v[i] = x
    return tuple(v)


# ----------------------------------------------------------------------------
# Hermite reduction over Z


def _echelon(cols: list[dict], nrows: int, track: bool) -> tuple[list[int], list[dict] | None]:
    """Column-style Hermite reduction in place.

    Returns the pivot rows (one per leading nonzero column) and, if requested,
    the unimodular transform ``U`` with ``original @ U == reduced`` as columns.
    """
    ncols = len(cols)
    trans = [{j: 1} for j in range(ncols)] if track else None
    pivots: list[int] = []
    k = 0
    for i in range(nrows):
        if k == ncols:
            break
        while True:
            best, bestv = -1, 0
            for j in range(k, ncols):
                v = cols[j].get(i)
                if v and (best < 0 or abs(v) < bestv):
                    best, bestv = j, abs(v)
            if best < 0:
                break
            if best != k:
                cols[k], cols[best] = cols[best], cols[k]
                if track:
                    trans[k], trans[best] = trans[best], trans[k]
            pv = cols[k][i]
            clean = True
            for j in range(k + 1, ncols):
                v = cols[j].get(i)
                if v:
                    q = v // pv
                    _axpy(cols[j], -q, cols[k])
                    if track:
                        _axpy(trans[j], -q, trans[k])
                    if i in cols[j]:
                        clean = False
            if clean:
                if pv < 0:
                    cols[k] = {r: -v for r, v in cols[k].items()}
                    if track:
                        trans[k] = {r: -v for r, v in trans[k].items()}
                    pv = -pv
                for j in range(k):
                    v = cols[j].get(i)
                    if v:
                        q = v // pv
                        if q:
                            _axpy(cols[j], -q, cols[k])
                            if track:
                                _axpy(trans[j], -q, trans[k])
                pivots.append(i)
                k += 1
                break
    return pivots, trans


def hnf(m) -> Matrix:
    """Column-style Hermite normal form, same shape as ``m``."""
    nrows, cols = _as_columns(m)
    _echelon(cols, nrows, False)
    return SMat(nrows, len(cols), cols).to_dense()


# ----------------------------------------------------------------------------
# lattices


@dataclass(frozen=True)
class Lattice:
    """Submodule of ``Z^n`` held by its Hermite basis.

    Build instances with :meth:`span`; two lattices are equal iff their reduced
    bases are.
    """

    ambient_rank: int
    basis: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, n: int, vectors: Iterable[Sequence[int]]) -> Lattice:
        cols = [{i: v for i, v in enumerate(vec) if v} for vec in vectors]
        for c in cols:
            if c and max(c) >= n:
                raise ValueError("vector longer than the ambient rank")
        return cls._from_columns(n, cols)

    @classmethod
    def _from_columns(cls, n: int, cols: list[dict]) -> Lattice:
        pivots, _ = _echelon(cols, n, False)
        basis = tuple(_dense_vector(cols[k], n) for k in range(len(pivots)))
        return cls(n, basis, tuple(pivots))

    @classmethod
    def zero(cls, n: int) -> Lattice:
        return cls(n, (), ())

    @classmethod
    def full(cls, n: int) -> Lattice:
        return cls.span(n, identity(n))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def matrix(self) -> Matrix:
        """``n x rank`` matrix whose columns are the basis."""
        return transpose(self.basis) if self.basis else [[] for _ in range(self.ambient_rank)]

    def coordinates(self, v: Sequence[int]) -> list[int] | None:
        """Integer coordinates of ``v`` in the Hermite basis, or None if ``v`` is outside."""
        if len(v) != self.ambient_rank:
            raise ValueError("ambient rank mismatch")
        w = list(v)
        coords = []
        for b, p in zip(self.basis, self.pivots):
            x = w[p]
            if x % b[p]:
                return None
            c = x // b[p]
            coords.append(c)
            if c:
                for i in range(p, self.ambient_rank):
                    if b[i]:
                        w[i] -= c * b[i]
        if any(w):
            return None
        return coords

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def contains_lattice(self, other: Lattice) -> bool:
        return all(b in self for b in other.basis)

    def __add__(self, other: Lattice) -> Lattice:
        if self.ambient_rank != other.ambient_rank:
            raise ValueError("ambient rank mismatch")
        return Lattice.span(self.ambient_rank, self.basis + other.basis)

    def saturate(self) -> Lattice:
        return saturate(self)

    def is_saturated(self) -> bool:
        return saturate(self) == self

    def index_in(self, other: Lattice) -> int:
        """Index ``[other : self]`` for ``self`` inside ``other`` of the same rank."""
        if self.rank != other.rank or not other.contains_lattice(self):
            raise ValueError("index only defined for a finite-index sublattice")
        coords = [other.coordinates(b) for b in self.basis]
        return abs(det(transpose(coords))) if coords else 1


def kernel_lattice(m) -> Lattice:
    """Saturated kernel of an integer matrix (dense or :class:`SMat`)."""
    nrows, cols = _as_columns(m)
    ncols = len(cols)
    pivots, trans = _echelon(cols, nrows, True)
    return Lattice._from_columns(ncols, trans[len(pivots):])


def saturate(lat: Lattice) -> Lattice:
    """``(Q L) & Z^n``, via the double orthogonal complement."""
    n = lat.ambient_rank
    if lat.rank == 0:
        return lat
    orth = kernel_lattice([list(b) for b in lat.basis])
    if orth.rank == 0:
        return Lattice.full(n)
    return kernel_lattice([list(b) for b in orth.basis])


def membership(v: Sequence[int], lat: Lattice) -> bool:
    return v in lat


def solve_integer(m, rhs):
    """Integer solution ``x`` of ``m x = rhs``, or None when there is none.

    ``rhs`` may be a vector (a vector is returned) or a matrix with one
    right-hand side per column.
    """
    nrows, cols = _as_columns(m)
    ncols = len(cols)
    vector_rhs = not isinstance(rhs, SMat) and (len(rhs) == 0 or not isinstance(rhs[0], (list, tuple)))
    if vector_rhs:
        rhs_cols = [{i: v for i, v in enumerate(rhs) if v}]
        if len(rhs) != nrows:
            raise ValueError("right-hand side length mismatch")
    else:
        rn, rhs_cols = _as_columns(rhs)
        if rn != nrows and not (nrows == 0 and rn == 0):
            raise ValueError("right-hand side row mismatch")
    pivots, trans = _echelon(cols, nrows, True)
    sols = []
    for b in rhs_cols:
        w = dict(b)
        x: dict = {}
        for k, p in enumerate(pivots):
            val = w.get(p, 0)
            if val:
                pv = cols[k][p]
                if val % pv:
                    return None
                c = val // pv
                _axpy(w, -c, cols[k])
                _axpy(x, c, trans[k])
        if w:
            return None
        sols.append(_dense_vector(x, ncols))
    if vector_rhs:
        return list(sols[0])
    return transpose(sols) if sols else [[] for _ in range(ncols)]


# ----------------------------------------------------------------------------
# Smith normal form


def _smith(m, want_left=True, want_left_inv=False, want_right=True):
    """Smith form ``D = U m V`` with unimodular ``U``, ``V``.

    Returns ``(D, U, Uinv, V)``; transforms not requested are None.
    """
    a = [list(r) for r in m]
    r = len(a)
    c = len(a[0]) if r else 0
    U = identity(r) if want_left else None
    Ui = identity(r) if want_left_inv else None
    V = identity(c) if want_right else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]
        if Ui is not None:
            for row in Ui:
                row[i], row[j] = row[j], row[i]

    def add_row(i, j, q):  # row_i += q row_j
        ai, aj = a[i], a[j]
        for t in range(c):
            if aj[t]:
                ai[t] += q * aj[t]
        if U is not None:
            ui, uj = U[i], U[j]
            for t in range(r):
                if uj[t]:
                    ui[t] += q * uj[t]
        if Ui is not None:
            for row in Ui:  # col_j -= q col_i
                if row[i]:
                    row[j] -= q * row[i]

    def neg_row(i):
        a[i] = [-x for x in a[i]]
        if U is not None:
            U[i] = [-x for x in U[i]]
        if Ui is not None:
            for row in Ui:
                row[i] = -row[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_col(i, j, q):  # col_i += q col_j
        for row in a:
            if row[j]:
                row[i] += q * row[j]
        if V is not None:
            for row in V:
                if row[j]:
                    row[i] += q * row[j]

    for t in range(min(r, c)):
        best = None
        for j in range(t, c):
            for i in range(t, r):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        while True:
            changed = False
            pv = a[t][t]
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // pv))
                    if a[i][t]:
                        changed = True
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // pv))
                    if a[t][j]:
                        changed = True
            if changed:
                best = None
                for i in range(t + 1, r):
                    v = a[i][t]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, "row")
                for j in range(t + 1, c):
                    v = a[t][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), j, "col")
                if best[2] == "row":
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[1])
                continue
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if a[i][j] % pv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            neg_row(t)
    return a, U, Ui, V


def snf(m) -> tuple[list[int], Matrix, Matrix]:
    """Smith normal form: ``(divisors, left, right)`` with ``left @ m @ right`` diagonal.

    ``divisors`` has ``min(rows, cols)`` entries, ``d_i | d_{i+1}``, zeros last.
    """
    if isinstance(m, SMat):
        m = m.to_dense()
    d, u, _, v = _smith(m)
    k = min(len(d), len(d[0]) if d else 0)
    return [d[i][i] for i in range(k)], u, v


def elementary_divisors(m) -> list[int]:
    """Nonzero Smith divisors of ``m``."""
    nrows, lat_cols = _as_columns(m)
    lat_cols = [c for c in lat_cols if c]
    # Hermite first so the Smith pass runs on at most nrows columns.
    pivots, _ = _echelon(lat_cols, nrows, False)
    if not pivots:
        return []
    dense = SMat(nrows, len(pivots), lat_cols[: len(pivots)]).to_dense()
    d, _, _, _ = _smith(dense, want_left=False, want_right=False)
    return [d[i][i] for i in range(len(pivots))]


@dataclass(frozen=True)
class QuotientPresentation:
    """``Z^n / sublattice`` as free part plus torsion.

    ``projection`` maps ``Z^n`` onto the free part ``Z^r``; ``section`` lifts
    it back, and ``projection @ section`` is the identity.
    """

    ambient_rank: int
    sublattice: Lattice
    projection: tuple[tuple[int, ...], ...]
    section: tuple[tuple[int, ...], ...]
    torsion_invariants: tuple[int, ...]

    @property
    def free_rank(self) -> int:
        return len(self.projection)

    def project(self, v: Sequence[int]) -> list[int]:
        return [sum(x * y for x, y in zip(row, v)) for row in self.projection]

    def lift(self, y: Sequence[int]) -> list[int]:
        return [sum(x * c for x, c in zip(row, y)) for row in self.section]

    def projection_map(self) -> SMat:
        return SMat.from_dense(self.projection, self.ambient_rank)

    def section_map(self) -> SMat:
        return SMat.from_dense(self.section, self.free_rank)


def quotient(n: int, sub: Lattice) -> QuotientPresentation:
    if sub.ambient_rank != n:
        raise ValueError("sublattice lives in a different ambient lattice")
    r = sub.rank
    if r == 0:
        eye = tuple(tuple(row) for row in identity(n))
        return QuotientPresentation(n, sub, eye, eye, ())
    d, u, ui, _ = _smith(sub.matrix(), want_left=True, want_left_inv=True, want_right=False)
    divisors = [d[i][i] for i in range(r)]
    projection = tuple(tuple(row) for row in u[r:])
    section = tuple(tuple(row[r:]) for row in ui)
    return QuotientPresentation(n, sub, projection, section, tuple(x for x in divisors if x > 1))


# ----------------------------------------------------------------------------
# fields


def rref(m: Sequence[Sequence], fiber: Fiber) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over a field fiber; returns (rows, pivot columns)."""
    if not fiber.is_field:
        raise ValueError("rref needs a field")
    a = [fiber.vec(r) for r in m]
    if fiber.kind == "Q":
        a = [[Fraction(x) for x in r] for r in a]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    pivots = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        piv = next((i for i in range(row, nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = fiber.inv(a[row][col])
        a[row] = [fiber.norm(x * inv) for x in a[row]]
        for i in range(nrows):
            if i != row and a[i][col]:
                f = a[i][col]
                ri = a[row]
                a[i] = [fiber.norm(x - f * y) for x, y in zip(a[i], ri)]
        pivots.append(col)
        row += 1
    a = [[fiber.norm(x) for x in r] for r in a[:row]]
    return a, pivots


def field_rank(m, fiber: Fiber) -> int:
    if isinstance(m, SMat):
        m = m.to_dense()
    if not m:
        return 0
    if fiber.kind == "Z":
        return len(elementary_divisors(m))
    return len(rref(m, fiber)[1])


def nullspace(m, fiber: Fiber, ncols: int | None = None) -> list[list]:
    """Null-space basis over a field, read off the reduced row echelon form."""
    if isinstance(m, SMat):
        ncols = m.ncols
        m = m.to_dense()
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if not m:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    r, piv = rref(m, fiber)
    free = [j for j in range(ncols) if j not in set(piv)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, p in zip(r, piv):
            v[p] = fiber.norm(-row[f])
        basis.append(v)
    return basis


def solve_field(m, rhs: Sequence, fiber: Fiber) -> list | None:
    """One solution of ``m x = rhs`` over a field fiber, or None."""
    if isinstance(m, SMat):
        ncols = m.ncols
        m = m.to_dense()
    else:
        ncols = len(m[0]) if m else 0
    aug = [list(row) + [b] for row, b in zip(m, rhs)]
    if not aug:
        return [0] * ncols
    r, piv = rref(aug, fiber)
    if ncols in piv:
        return None
    x = [0] * ncols
    for row, p in zip(r, piv):
        x[p] = row[ncols]
    return x


def span_basis(vectors: Sequence[Sequence], fiber: Fiber, n: int) -> list[list]:
    """Canonical basis (RREF rows) of the span of ``vectors`` over a field."""
    vs = [list(v) for v in vectors]
    if not vs:
        return []
    return rref(vs, fiber)[0]


def spans_equal(vs: Sequence[Sequence], ws: Sequence[Sequence], fiber: Fiber, n: int) -> bool:
    return span_basis(vs, fiber, n) == span_basis(ws, fiber, n)


def kernel(m, fiber: Fiber = ZZ):
    """Kernel of ``m``: a saturated :class:`Lattice` over Z, a basis list over a field."""
    if fiber.kind == "Z":
        return kernel_lattice(m)
    return nullspace(m, fiber)


def content(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
