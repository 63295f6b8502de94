"""Pseudo effect algebras: explicit finite tables and group intervals.

A :class:`FinitePEA` is a partial addition table over string ids.  Internally
the ids are indexed ``0..n-1`` and the table is a list of rows with ``-1``
for "undefined"; the induced order is computed once and cached as bitmasks.

An :class:`IntervalPEA` is ``Gamma(G, u) = {g : 0 <= g <= u}`` with the group
addition restricted to the interval.  It answers pointwise queries on group
elements and can be turned into a table with :func:`materialize`.

Partial sums are returned as ``None`` when undefined.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Mapping, Sequence

from .groups import BudgetExceeded, Element, PoGroup


class MalformedTable(ValueError):
    pass


class PeaParseError(ValueError):
    pass


class NotBelow(ValueError):
    """Raised by the minus operations when the first argument is not below the second."""


@dataclass(frozen=True)
class Check:
    """Outcome of a yes/no check with an optional witness."""

    ok: bool
    witness: tuple = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class AxiomReport:
    valid: bool
    axiom: str | None = None
    witness: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.valid

    def __str__(self) -> str:
        if self.valid:
            return "valid"
        return f"violation {self.axiom} witness={','.join(self.witness)}"


class FinitePEA:
    """Finite partial algebra (E; +, 0, 1) given by its defined sums."""

    def __init__(
        self,
        elements: Sequence[str],
        table: Mapping[tuple[str, str], str],
        zero: str,
        unit: str,
        name: str = "",
    ):
        self.ids = list(elements)
        if len(set(self.ids)) != len(self.ids):
            raise MalformedTable("duplicate element ids")
        self.index = {x: i for i, x in enumerate(self.ids)}
        for x in (zero, unit):
            if x not in self.index:
                raise MalformedTable(f"constant {x!r} is not an element")
        self.zero, self.unit = zero, unit
        self.z, self.u = self.index[zero], self.index[unit]
        self.name = name
        n = len(self.ids)
        self.n = n
        self._add = [[-1] * n for _ in range(n)]
        for (x, y), s in table.items():
            for v in (x, y, s):
                if v not in self.index:
                    raise MalformedTable(f"table references unknown id {v!r}")
            self._add[self.index[x]][self.index[y]] = self.index[s]

    @classmethod
    def from_indices(cls, n: int, add: Sequence[Sequence[int]], names: Sequence[str] | None = None, name: str = "") -> "FinitePEA":
        """Build from an index table with 0 = index 0 and 1 = index n-1."""
        names = list(names) if names else [str(i) for i in range(n)]
        E = cls.__new__(cls)
        E.ids = names
        E.index = {x: i for i, x in enumerate(names)}
        E.zero, E.unit = names[0], names[-1]
        E.z, E.u = 0, n - 1
        E.n = n
        E.name = name
        E._add = [list(row) for row in add]
        return E

    # -- basic access ------------------------------------------------------
    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"<FinitePEA {self.name or ''} n={self.n}>"

    @property
    def elements(self) -> list[str]:
        return list(self.ids)

    def table(self) -> dict[tuple[str, str], str]:
        return {
            (self.ids[i], self.ids[j]): self.ids[s]
            for i, row in enumerate(self._add)
            for j, s in enumerate(row)
            if s >= 0
        }

    def i_add(self, i: int, j: int) -> int:
        return self._add[i][j]

    def add(self, a: str, b: str) -> str | None:
        s = self._add[self.index[a]][self.index[b]]
        return None if s < 0 else self.ids[s]

    def sum(self, xs: Iterable[str]) -> str | None:
        acc = self.zero
        for x in xs:
            acc = self.add(acc, x)
            if acc is None:
                return None
        return acc

    # -- order ---------------------------------------------------------------
    @cached_property
    def _up(self) -> list[int]:
        """_up[i] = bitmask of j with i <= j (i + c = j for some c)."""
        up = [0] * self.n
        for i, row in enumerate(self._add):
            for s in row:
                if s >= 0:
                    up[i] |= 1 << s
        return up

    @cached_property
    def _down(self) -> list[int]:
        down = [0] * self.n
        for i in range(self.n):
            m = self._up[i]
            for j in range(self.n):
                if m >> j & 1:
                    down[j] |= 1 << i
        return down

    def i_leq(self, i: int, j: int) -> bool:
        return bool(self._up[i] >> j & 1)

    def leq(self, a: str, b: str) -> bool:
        return self.i_leq(self.index[a], self.index[b])

    def i_below(self, i: int) -> list[int]:
        m = self._down[i]
        return [j for j in range(self.n) if m >> j & 1]

    def below(self, a: str) -> list[str]:
        return [self.ids[j] for j in self.i_below(self.index[a])]

    def i_right_minus(self, i: int, j: int) -> int:
        """c with i + c = j, or -1."""
        row = self._add[i]
        for c in range(self.n):
            if row[c] == j:
                return c
        return -1

    def i_left_minus(self, i: int, j: int) -> int:
        """d with d + i = j, or -1."""
        for d in range(self.n):
            if self._add[d][i] == j:
                return d
        return -1

    def right_minus(self, a: str, b: str) -> str:
        """a / b: the c with a + c = b."""
        c = self.i_right_minus(self.index[a], self.index[b])
        if c < 0:
            raise NotBelow(f"{a} is not below {b}")
        return self.ids[c]

    def left_minus(self, a: str, b: str) -> str:
        """b \\ a: the d with d + a = b."""
        d = self.i_left_minus(self.index[a], self.index[b])
        if d < 0:
            raise NotBelow(f"{a} is not below {b}")
        return self.ids[d]

    def comp_left(self, a: str) -> str:
        return self.left_minus(a, self.unit)

    def comp_right(self, a: str) -> str:
        return self.right_minus(a, self.unit)

    def nfold(self, a: str, n: int) -> str | None:
        if n < 0:
            raise ValueError("n must be >= 0")
        return self.sum([a] * n)

    def i_meet(self, i: int, j: int) -> int:
        """Greatest lower bound in the cached order, or -1."""
        common = self._down[i] & self._down[j]
        for k in range(self.n):
            if common >> k & 1 and (self._down[k] | common) == self._down[k]:
                return k
        return -1

    def meet(self, a: str, b: str) -> str | None:
        k = self.i_meet(self.index[a], self.index[b])
        return None if k < 0 else self.ids[k]


# ---------------------------------------------------------------------------
def check_axioms(E: FinitePEA) -> AxiomReport:
    """Check PE1-PE4 exhaustively; report the first failing axiom.

    Witnesses are the lexicographically first failing tuple in element order.
    """
    n, A, u, z = E.n, E._add, E.u, E.z
    ids = E.ids
    for a, b, c in itertools.product(range(n), repeat=3):
        ab = A[a][b]
        lhs = A[ab][c] if ab >= 0 else -1
        bc = A[b][c]
        rhs = A[a][bc] if bc >= 0 else -1
        if lhs != rhs:
            return AxiomReport(False, "PE1", (ids[a], ids[b], ids[c]))
    for a in range(n):
        ds = [d for d in range(n) if A[a][d] == u]
        es = [e for e in range(n) if A[e][a] == u]
        if len(ds) != 1 or len(es) != 1:
            return AxiomReport(False, "PE2", (ids[a],))
    for a, b in itertools.product(range(n), repeat=2):
        s = A[a][b]
        if s < 0:
            continue
        if not any(A[d][a] == s for d in range(n)) or not any(A[b][e] == s for e in range(n)):
            return AxiomReport(False, "PE3", (ids[a], ids[b]))
    for a in range(n):
        if a != z and (A[a][u] >= 0 or A[u][a] >= 0):
            return AxiomReport(False, "PE4", (ids[a],))
    return AxiomReport(True)


def pea_add(E, a, b):
    return E.add(a, b)


def left_minus(E, a, b):
    """b \\ a for a <= b."""
    return E.left_minus(a, b)


def right_minus(E, a, b):
    """a / b for a <= b."""
    return E.right_minus(a, b)


def comp_left(E, a):
    return E.comp_left(a)


def comp_right(E, a):
    return E.comp_right(a)


def nfold(E, a, n: int):
    return E.nfold(a, n)


def is_commutative(E: FinitePEA) -> Check:
    for i, j in itertools.combinations(range(E.n), 2):
        if E._add[i][j] != E._add[j][i]:
            return Check(False, (E.ids[i], E.ids[j]))
    return Check(True)


def _closure(E: FinitePEA, mask: int) -> int:
    while True:
        new = mask
        members = [i for i in range(E.n) if new >> i & 1]
        for i in members:
            new |= E._down[i]
        members = [i for i in range(E.n) if new >> i & 1]
        for i in members:
            for j in members:
                s = E._add[i][j]
                if s >= 0:
                    new |= 1 << s
        if new == mask:
            return mask
        mask = new


def _mask_ids(E: FinitePEA, mask: int) -> frozenset[str]:
    return frozenset(E.ids[i] for i in range(E.n) if mask >> i & 1)


def ideals(E: FinitePEA) -> list[frozenset[str]]:
    """All proper ideals: nonempty, downward closed, closed under defined sums."""
    start = _closure(E, 1 << E.z)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(E.n):
                if m >> i & 1:
                    continue
                c = _closure(E, m | 1 << i)
                if c >> E.u & 1 or c in seen:
                    continue
                seen.add(c)
                nxt.append(c)
        frontier = nxt
    if start >> E.u & 1:
        seen.discard(start)
    out = sorted(seen, key=lambda m: (bin(m).count("1"), m))
    return [_mask_ids(E, m) for m in out]


def maximal_ideals(E: FinitePEA) -> list[frozenset[str]]:
    all_ = ideals(E)
    return [I for I in all_ if not any(I < J for J in all_)]


def is_homomorphism(f: Mapping[str, str], E: FinitePEA, F: FinitePEA) -> Check:
    """h(1) = 1 and h(a+b) = h(a)+h(b) whenever a+b is defined."""
    for x in E.ids:
        if x not in f:
            raise ValueError(f"map is not defined on {x!r}")
    if f[E.unit] != F.unit:
        return Check(False, (E.unit,), "h(1) != 1")
    for a, b in itertools.product(E.ids, repeat=2):
        s = E.add(a, b)
        if s is None:
            continue
        t = F.add(f[a], f[b])
        if t is None:
            return Check(False, (a, b), "h(a)+h(b) undefined")
        if t != f[s]:
            return Check(False, (a, b), f"h(a+b)={f[s]} but h(a)+h(b)={t}")
    return Check(True)


# ---------------------------------------------------------------------------
@dataclass
class IntervalPEA:
    """Gamma(G, u) evaluated lazily over group elements."""

    group: PoGroup
    unit: Element
    warnings: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.group.in_cone(self.unit):
            raise ValueError(f"unit {self.group.format(self.unit)} is not positive")

    @property
    def zero(self) -> Element:
        return self.group.zero

    def contains(self, x: Element) -> bool:
        G = self.group
        return G.in_cone(x) and G.leq(x, self.unit)

    def _need(self, *xs):
        for x in xs:
            if not self.contains(x):
                raise ValueError(f"{self.group.format(x)} is not in the interval")

    def add(self, x, y):
        self._need(x, y)
        s = self.group.add(x, y)
        return s if self.group.leq(s, self.unit) else None

    def sum(self, xs):
        acc = self.zero
        for x in xs:
            acc = self.add(acc, x)
            if acc is None:
                return None
        return acc

    def leq(self, x, y):
        self._need(x, y)
        return self.group.leq(x, y)

    def right_minus(self, a, b):
        if not self.leq(a, b):
            raise NotBelow(f"{self.group.format(a)} is not below {self.group.format(b)}")
        return self.group.rsub(a, b)

    def left_minus(self, a, b):
        if not self.leq(a, b):
            raise NotBelow(f"{self.group.format(a)} is not below {self.group.format(b)}")
        return self.group.sub(b, a)

    def comp_left(self, a):
        return self.left_minus(a, self.unit)

    def comp_right(self, a):
        return self.right_minus(a, self.unit)

    def nfold(self, a, n):
        if n < 0:
            raise ValueError("n must be >= 0")
        return self.sum([a] * n)

    def elements(self, budget: int = 10_000) -> list[Element]:
        return self.group.interval(self.group.zero, self.unit, budget)

    def format(self, x) -> str:
        return self.group.format(x)


def gamma(G: PoGroup, u: Element) -> IntervalPEA:
    return IntervalPEA(G, G.check(u))


def materialize(E: IntervalPEA, budget: int = 10_000) -> FinitePEA:
    G = E.group
    elems = E.elements(budget)
    if len(elems) > budget:
        raise BudgetExceeded(f"interval has {len(elems)} elements (budget {budget})")
    # 0 first, u last, the rest in enumeration order
    elems = [G.zero] + [x for x in elems if x not in (G.zero, E.unit)] + [E.unit]
    ids = [G.format(x) for x in elems]
    pos = {x: i for i, x in enumerate(elems)}
    n = len(elems)
    add = [[-1] * n for _ in range(n)]
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            s = G.add(x, y)
            k = pos.get(s)
            if k is not None:
                add[i][j] = k
    return FinitePEA.from_indices(n, add, ids, name=f"Gamma({G.desc},{G.format(E.unit)})")


# -- file format ---------------------------------------------------------------
def dumps_pea(E: FinitePEA) -> str:
    lines = ["pea v1", "elements: " + " ".join(E.ids), f"zero: {E.zero}", f"unit: {E.unit}"]
    for i, row in enumerate(E._add):
        for j, s in enumerate(row):
            if s >= 0:
                lines.append(f"add: {E.ids[i]} {E.ids[j]} {E.ids[s]}")
    return "\n".join(lines) + "\n"


def loads_pea(text: str) -> FinitePEA:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != "pea v1":
        raise PeaParseError("first line must be 'pea v1'")
    elements = zero = unit = None
    table: dict[tuple[str, str], str] = {}
    for no, ln in enumerate(lines[1:], start=2):
        key, _, rest = ln.partition(":")
        vals = rest.split()
        if key == "elements":
            if elements is not None:
                raise PeaParseError("duplicate elements line")
            elements = vals
        elif key in ("zero", "unit"):
            if len(vals) != 1:
                raise PeaParseError(f"line {no}: {key} takes one id")
            if key == "zero":
                zero = vals[0]
            else:
                unit = vals[0]
        elif key == "add":
            if len(vals) != 3:
                raise PeaParseError(f"line {no}: add takes three ids")
            x, y, z = vals
            if table.get((x, y), z) != z:
                raise PeaParseError(f"line {no}: conflicting results for {x} + {y}")
            table[x, y] = z
        else:
            raise PeaParseError(f"line {no}: unknown key {key!r}")
    if elements is None or zero is None or unit is None:
        raise PeaParseError("missing elements, zero or unit line")
    try:
        return FinitePEA(elements, table, zero, unit)
    except MalformedTable as exc:
        raise PeaParseError(str(exc)) from None


def chain(n: int) -> FinitePEA:
    """Gamma(Z, n): the (n+1)-element chain 0 < 1 < ... < n."""
    table = {(str(i), str(j)): str(i + j) for i in range(n + 1) for j in range(n + 1) if i + j <= n}
    return FinitePEA([str(i) for i in range(n + 1)], table, "0", str(n), name=f"C{n + 1}")
