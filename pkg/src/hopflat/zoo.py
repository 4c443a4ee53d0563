"""Built-in corpus: finite groups as multiplication tables, their Hopf algebras, and inclusions.

Basis orders are fixed so that reports are byte-stable:

* cyclic ``Cn``: ``e, g, g2, ...``;
* ``C2xC2``: ``e, b, a, ab``;
* ``S3`` and ``D4``: permutations of ``0..n-1`` in lexicographic order, named by
  their normal form ``r^k s^j`` (``S3`` uses ``r = 120``, ``s = 021``);
* ``Q8``: ``1, -1, i, -i, j, -j, k, -k``;
* Sweedler: ``1, g, x, gx``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

from .certificate import InvalidTable, NotASubgroup
from .exactlin import SMat
from .hopfcore import HopfAlgebraData, dual


@dataclass(frozen=True)
class GroupTable:
    order: int
    table: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]
    identity: int
    names: tuple[str, ...]
    label: str = ""

    def __post_init__(self):
        n = self.order
        t = self.table
        if len(t) != n or any(len(r) != n for r in t) or len(self.names) != n:
            raise InvalidTable("table shape does not match the order")
        if any(not 0 <= x < n for r in t for x in r):
            raise InvalidTable("entry outside the group")
        e = self.identity
        if any(t[e][g] != g or t[g][e] != g for g in range(n)):
            raise InvalidTable("identity law fails")
        if any(t[g][self.inverse[g]] != e or t[self.inverse[g]][g] != e for g in range(n)):
            raise InvalidTable("inverse law fails")
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise InvalidTable(f"associativity fails at ({a}, {b}, {c})")

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], names=None, label: str = "") -> GroupTable:
        n = len(table)
        ident = next((e for e in range(n) if all(table[e][g] == g for g in range(n))), None)
        if ident is None:
            raise InvalidTable("no identity element")
        inv = []
        for g in range(n):
            h = next((h for h in range(n) if table[g][h] == ident), None)
            if h is None:
                raise InvalidTable(f"element {g} has no inverse")
            inv.append(h)
        names = tuple(names) if names else tuple(f"g{i}" for i in range(n))
        return cls(n, tuple(tuple(r) for r in table), tuple(inv), ident, names, label)

    @classmethod
    def from_elements(cls, elements: Sequence[Hashable], op: Callable, names=None, label: str = "") -> GroupTable:
        index = {x: i for i, x in enumerate(elements)}
        try:
            table = [[index[op(a, b)] for b in elements] for a in elements]
        except KeyError as exc:
            raise InvalidTable(f"product {exc} leaves the element list") from None
        return cls.from_table(table, names, label)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def closure(self, gens: Sequence[int]) -> frozenset[int]:
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)


def _compose(p, q):
    return tuple(p[x] for x in q)


def _permutation_group(gens, label, word_gens):
    """Group generated by permutations, in lex order, named by normal forms r^k s^j."""
    e = tuple(range(len(gens[0])))
    elems = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _compose(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    elems = sorted(elems)
    r, s = word_gens
    names = {}
    power = e
    k = 0
    while True:
        for j, suffix in ((0, ""), (1, "s")):
            w = _compose(power, s) if j else power
            stem = "" if k == 0 else ("r" if k == 1 else f"r{k}")
            names.setdefault(w, (stem + suffix) or "e")
        power = _compose(power, r)
        k += 1
        if power == e:
            break
    return GroupTable.from_elements(elems, _compose, [names[x] for x in elems], label)


def cyclic(n: int) -> GroupTable:
    names = ["e", "g"] + [f"g{k}" for k in range(2, n)]
    return GroupTable.from_elements(list(range(n)), lambda a, b: (a + b) % n, names[:n], f"C{n}")


def klein_four() -> GroupTable:
    elems = [(0, 0), (0, 1), (1, 0), (1, 1)]
    return GroupTable.from_elements(elems, lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2),
                                    ["e", "b", "a", "ab"], "C2xC2")


def symmetric3() -> GroupTable:
    return _permutation_group([(1, 2, 0), (0, 2, 1)], "S3", ((1, 2, 0), (0, 2, 1)))


def dihedral4() -> GroupTable:
    return _permutation_group([(1, 2, 3, 0), (0, 3, 2, 1)], "D4", ((1, 2, 3, 0), (0, 3, 2, 1)))


_QUAT = {  # unit * unit -> (sign, unit)
    ("1", u): (1, u) for u in "1ijk"
}
_QUAT.update({(u, "1"): (1, u) for u in "1ijk"})
_QUAT.update({
    ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
    ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
    ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
})


def quaternion8() -> GroupTable:
    elems = [(s, u) for u in "1ijk" for s in (1, -1)]

    def op(x, y):
        s, u = _QUAT[(x[1], y[1])]
        return (x[0] * y[0] * s, u)

    names = [("" if s == 1 else "-") + u for s, u in elems]
    return GroupTable.from_elements(elems, op, names, "Q8")


GROUPS: dict[str, Callable[[], GroupTable]] = {
    "C2": lambda: cyclic(2),
    "C3": lambda: cyclic(3),
    "C4": lambda: cyclic(4),
    "C2xC2": klein_four,
    "S3": symmetric3,
    "D4": dihedral4,
    "Q8": quaternion8,
}


# ----------------------------------------------------------------------------
# Hopf algebras


def group_algebra(g: GroupTable) -> HopfAlgebraData:
    n = g.order
    mult = [[[1 if k == g.table[a][b] else 0 for k in range(n)] for b in range(n)] for a in range(n)]
    unit = [1 if k == g.identity else 0 for k in range(n)]
    comult = [[[1 if i == j == k else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    antipode = [[1 if i == g.inverse[j] else 0 for j in range(n)] for i in range(n)]
    return HopfAlgebraData.build(mult, unit, comult, [1] * n, antipode, names=g.names)


def function_hopf(g: GroupTable) -> HopfAlgebraData:
    """Functions on ``g`` in the basis of point indicators ``d(x)``."""
    n = g.order
    mult = [[[1 if a == b == k else 0 for k in range(n)] for b in range(n)] for a in range(n)]
    comult = [[[1 if g.table[j][k] == i else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    counit = [1 if k == g.identity else 0 for k in range(n)]
    antipode = [[1 if i == g.inverse[j] else 0 for j in range(n)] for i in range(n)]
    return HopfAlgebraData.build(mult, [1] * n, comult, counit, antipode,
                                 names=[f"d({x})" for x in g.names])


def sweedler_over_Z() -> HopfAlgebraData:
    """Sweedler's four-dimensional algebra, which only needs the unit -1 and so lives over Z."""
    mono = [(0, 0), (1, 0), (0, 1), (1, 1)]  # g^a x^b
    idx = {m: i for i, m in enumerate(mono)}

    def times(p, q):
        (a, b), (c, d) = p, q
        if b + d > 1:
            return None, 0
        return idx[((a + c) % 2, b + d)], (-1) ** (b * c)

    mult = []
    for p in mono:
        row = []
        for q in mono:
            v = [0] * 4
            k, s = times(p, q)
            if k is not None:
                v[k] = s
            row.append(v)
        mult.append(row)

    def tensor(*terms):
        m = [[0] * 4 for _ in range(4)]
        for c, j, k in terms:
            m[j][k] += c
        return m

    comult = [
        tensor((1, 0, 0)),
        tensor((1, 1, 1)),
        tensor((1, 2, 0), (1, 1, 2)),
        tensor((1, 3, 1), (1, 0, 3)),
    ]
    antipode = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
    return HopfAlgebraData.build(mult, [1, 0, 0, 0], comult, [1, 1, 0, 0], antipode,
                                 names=["1", "g", "x", "gx"])


def trivial_hopf() -> HopfAlgebraData:
    return HopfAlgebraData.build([[[1]]], [1], [[[1]]], [1], [[1]], names=["1"])


# ----------------------------------------------------------------------------
# subgroups


def subgroups(g: GroupTable) -> list[frozenset[int]]:
    """All subgroups: cyclic ones, closed under joins."""
    subs = {g.closure([x]) for x in range(g.order)}
    changed = True
    while changed:
        changed = False
        for a, b in itertools.combinations(list(subs), 2):
            j = g.closure(sorted(a | b))
            if j not in subs:
                subs.add(j)
                changed = True
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


def is_subgroup(g: GroupTable, elems) -> bool:
    s = set(elems)
    return g.identity in s and all(g.table[a][b] in s for a in s for b in s) and all(g.inverse[a] in s for a in s)


def is_normal(g: GroupTable, elems) -> bool:
    s = set(elems)
    return all(g.table[g.table[x][h]][g.inverse[x]] in s for x in range(g.order) for h in s)


def quotient_group(g: GroupTable, normal) -> GroupTable:
    """``G/N`` with cosets ordered by their smallest member."""
    n = set(normal)
    if not is_subgroup(g, n) or not is_normal(g, n):
        raise NotASubgroup("quotient needs a normal subgroup")
    cosets = []
    owner = {}
    for x in range(g.order):
        if x in owner:
            continue
        c = sorted(g.table[x][h] for h in n)
        for y in c:
            owner[y] = len(cosets)
        cosets.append(c)
    table = [[owner[g.table[a[0]][b[0]]] for b in cosets] for a in cosets]
    names = [g.names[c[0]] + ("N" if len(n) > 1 else "") for c in cosets]
    return GroupTable.from_table(table, names, f"{g.label}/N")


def subgroup_inclusion(g: GroupTable, elems, label: str = ""):
    """Inclusion ``Z[H] -> Z[G]`` along basis indices; ``H`` keeps the order of ``g``."""
    from .subquot import HopfInclusion

    elems = sorted(set(elems))
    if not is_subgroup(g, elems):
        raise NotASubgroup(f"{elems} is not closed in {g.label}")
    pos = {x: i for i, x in enumerate(elems)}
    sub_table = [[pos[g.table[a][b]] for b in elems] for a in elems]
    h = GroupTable.from_table(sub_table, [g.names[x] for x in elems], label or "H")
    emb = SMat(g.order, len(elems), [{x: 1} for x in elems])
    return HopfInclusion(group_algebra(h), group_algebra(g), emb, label)


def trivial_inclusion(b: HopfAlgebraData, label: str = ""):
    """``Z -> B`` along the unit."""
    from .subquot import HopfInclusion

    return HopfInclusion(trivial_hopf(), b, SMat.from_columns(b.rank, [b.unit]), label)


def identity_inclusion(b: HopfAlgebraData, label: str = ""):
    from .subquot import HopfInclusion

    return HopfInclusion(b, b, SMat.identity(b.rank), label)


def sweedler_grouplike_inclusion():
    """``Z[C2] -> Sweedler`` sending the generator to ``g``."""
    from .subquot import HopfInclusion

    return HopfInclusion(group_algebra(cyclic(2)), sweedler_over_Z(),
                         SMat.from_columns(4, [[1, 0, 0, 0], [0, 1, 0, 0]]), "g-in-sweedler")


def character_inclusion():
    """``Z[C2] -> Z[C2]*`` sending ``g`` to the sign character ``d(e) - d(g)``.

    An injective Hopf map whose image has index 2, so ``B A+`` is not saturated.
    """
    from .subquot import HopfInclusion

    c2 = group_algebra(cyclic(2))
    return HopfInclusion(c2, dual(c2), SMat.from_columns(2, [[1, 1], [1, -1]]), "C2-to-C2*")


# ----------------------------------------------------------------------------
# registry


def _algebra_builders() -> dict[str, Callable[[], HopfAlgebraData]]:
    out = {name: (lambda f=f: group_algebra(f())) for name, f in GROUPS.items()}
    out["sweedler"] = sweedler_over_Z
    out["Z"] = trivial_hopf
    return out


ALGEBRAS = _algebra_builders()
CORPUS = ("C2", "C3", "C4", "C2xC2", "S3", "D4", "Q8", "sweedler")

# name -> (ambient algebra, group, subgroup elements) or a custom builder
_SUBGROUP_INCLUSIONS = {
    "A3-in-S3": ("S3", ("e", "r", "r2")),
    "C2-in-S3": ("S3", ("e", "s")),
    "C2-in-C4": ("C4", ("e", "g2")),
    "C2-in-C2xC2": ("C2xC2", ("e", "a")),
    "center-in-Q8": ("Q8", ("1", "-1")),
    "C4-in-D4": ("D4", ("e", "r", "r2", "r3")),
}


def builtin_algebra(name: str) -> HopfAlgebraData:
    """Look up ``C2``, ``S3``, ``sweedler``, ``Z`` ...; a ``*`` suffix or ``dual:`` prefix dualizes."""
    if name.startswith("dual:"):
        return dual(builtin_algebra(name[5:]))
    if name.endswith("*"):
        return dual(builtin_algebra(name[:-1]))
    try:
        return ALGEBRAS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin algebra {name!r}") from None


def builtin_inclusion(name: str):
    if name == "g-in-sweedler":
        return sweedler_grouplike_inclusion()
    if name == "C2-to-C2*":
        return character_inclusion()
    if name in _SUBGROUP_INCLUSIONS:
        gname, elem_names = _SUBGROUP_INCLUSIONS[name]
        g = GROUPS[gname]()
        elems = [g.names.index(x) for x in elem_names]
        return subgroup_inclusion(g, elems, name)
    if name.startswith("Z-in-"):
        return trivial_inclusion(builtin_algebra(name[5:]), name)
    if name.startswith("id-"):
        return identity_inclusion(builtin_algebra(name[3:]), name)
    raise KeyError(f"unknown builtin inclusion {name!r}")


BUILTIN_INCLUSIONS = tuple(_SUBGROUP_INCLUSIONS) + ("g-in-sweedler",)


def normal_subgroup_pairs(names: Sequence[str] = ("C2", "C3", "C4", "C2xC2", "S3", "D4", "Q8")):
    """Every (group, normal subgroup) pair over the named groups."""
    out = []
    for name in names:
        g = GROUPS[name]()
        for h in subgroups(g):
            if is_normal(g, h):
                out.append((name, g, h))
    return out
