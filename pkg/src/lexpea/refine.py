"""Constructive refinements: oracles, lifts through Z x_lex G, and m x n growth.

A refinement of ``a1 + a2 = b1 + b2`` is a table::

    a1 | c11 c12
    a2 | c21 c22
       +--------
         b1  b2

with rows summing left to right and columns top to bottom.  Every function
here returns tables that callers can revalidate with :func:`validate_table`.

Elements of ``Z x_lex G`` are pairs ``(m, g)`` with ``m`` an int.
"""
from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .groups import BudgetExceeded, CapabilityError, Integers, Lex, PoGroup
from .pea import FinitePEA
from .riesz import _Ctx

Element = Any
Quadruple = tuple[Element, Element, Element, Element]


class RefineError(RuntimeError):
    """An oracle or construction could not produce a table."""


class InvalidQuadruple(ValueError):
    pass


@dataclass(frozen=True)
class RefinementTable:
    c11: Element
    c12: Element
    c21: Element
    c22: Element
    com: bool = False  # True when the construction guarantees com(c12, c21)

    def entries(self) -> tuple[Element, Element, Element, Element]:
        return (self.c11, self.c12, self.c21, self.c22)

    def transpose(self) -> "RefinementTable":
        return RefinementTable(self.c11, self.c21, self.c12, self.c22, self.com)

    def with_com(self, flag: bool) -> "RefinementTable":
        return RefinementTable(self.c11, self.c12, self.c21, self.c22, flag)


@dataclass
class RefinementMatrix:
    rows: list[list[Element]]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def column(self, j: int) -> list[Element]:
        return [r[j] for r in self.rows]

    def transpose(self) -> "RefinementMatrix":
        return RefinementMatrix([list(c) for c in zip(*self.rows)])


@dataclass
class RefineOracle:
    """Supplies 2x2 refinements over some positive cone or interval.

    ``com`` is True when every table it returns satisfies com(c12, c21).
    """

    name: str
    refine: Callable[[Element, Element, Element, Element], RefinementTable]
    add: Callable[[Element, Element], Element]
    zero: Element
    lower_bound: Callable[[Sequence[Element]], Element] | None = None
    com: bool = False

    def __call__(self, a1, a2, b1, b2) -> RefinementTable:
        return self.refine(a1, a2, b1, b2)


# -- validation -----------------------------------------------------------
def _ops(S) -> tuple[Callable, Callable, Callable]:
    """(add, is_positive, equal) for a po-group or a finite algebra."""
    if isinstance(S, FinitePEA):
        return S.add, (lambda x: x in S.index), (lambda x, y: x == y)
    if isinstance(S, Bounded):
        G, u = S.group, S.unit
        return G.add, (lambda x: G.in_cone(x) and G.leq(x, u)), (lambda x, y: x == y)
    return S.add, S.in_cone, (lambda x, y: x == y)


@dataclass(frozen=True)
class Bounded:
    """The interval [0, unit] of a po-group, for validation of interval tables."""

    group: PoGroup
    unit: Element


def validate_table(S, q: Quadruple, t: RefinementTable) -> list[str]:
    """Problems with ``t`` as a refinement of ``q`` (empty list = valid)."""
    add, pos, _ = _ops(S)
    a1, a2, b1, b2 = q
    problems = []
    for name, x in zip(("c11", "c12", "c21", "c22"), t.entries()):
        try:
            ok = pos(x)
        except (TypeError, ValueError):
            ok = False
        if not ok:
            problems.append(f"{name}={x!r} is not positive")
    if problems:
        return problems
    for label, (x, y), want in (
        ("row 1", (t.c11, t.c12), a1),
        ("row 2", (t.c21, t.c22), a2),
        ("column 1", (t.c11, t.c21), b1),
        ("column 2", (t.c12, t.c22), b2),
    ):
        got = add(x, y)
        if got != want:
            problems.append(f"{label} sums to {got!r}, expected {want!r}")
    return problems


def validate_matrix(S, a: Sequence, b: Sequence, M: RefinementMatrix) -> list[str]:
    add, pos, _ = _ops(S)
    problems = []
    m, n = len(a), len(b)
    if M.shape != (m, n):
        return [f"shape {M.shape} != {(m, n)}"]
    for i, row in enumerate(M.rows):
        for j, x in enumerate(row):
            if not pos(x):
                problems.append(f"c[{i + 1}][{j + 1}]={x!r} is not positive")
    if problems:
        return problems

    def total(xs):
        acc = xs[0]
        for x in xs[1:]:
            if acc is None:
                return None
            acc = add(acc, x)
        return acc

    for i in range(m):
        got = total(M.rows[i])
        if got != a[i]:
            problems.append(f"row {i + 1} sums to {got!r}, expected {a[i]!r}")
    for j in range(n):
        got = total(M.column(j))
        if got != b[j]:
            problems.append(f"column {j + 1} sums to {got!r}, expected {b[j]!r}")
    return problems


def check_quadruple(G: PoGroup, q: Quadruple) -> None:
    a1, a2, b1, b2 = q
    for x in q:
        if not G.in_cone(x):
            raise InvalidQuadruple(f"{G.format(x)} is not positive")
    if G.add(a1, a2) != G.add(b1, b2):
        raise InvalidQuadruple(
            f"{G.format(a1)}+{G.format(a2)} != {G.format(b1)}+{G.format(b2)}"
        )


# -- com sampling in infinite groups ------------------------------------------
@functools.lru_cache(maxsize=None)
def _signed_box(G: PoGroup, radius: int) -> tuple[tuple, tuple]:
    box = G.box(radius)
    pos = tuple(x for x in box if G.in_cone(x))
    neg = tuple(x for x in box if G.in_cone(G.neg(x)))
    return pos, neg


def sample_below(G: PoGroup, c: Element, radius: int = 3) -> list[Element]:
    """Elements of [0, c] in a radius box around 0 and around c, plus both ends."""
    if c == G.zero:
        return [c]
    pos, neg = _signed_box(G, radius)
    out = {G.zero, c}
    out.update(x for x in pos if G.leq(x, c))
    for y in neg:
        x = G.add(c, y)
        if G.in_cone(x):
            out.add(x)
    return list(out)


def com_sampled(G: PoGroup, x: Element, y: Element, radius: int = 3) -> tuple[bool, tuple | None]:
    """com(x, y) on the sampled sub-intervals; returns (ok, noncommuting pair)."""
    if x == G.zero or y == G.zero:
        return True, None
    xs: dict = {}
    for s in sample_below(G, x, radius):
        xs.setdefault(G.commutation_class(s), s)
    ys: dict = {}
    for s in sample_below(G, y, radius):
        ys.setdefault(G.commutation_class(s), s)
    for s in xs.values():
        for t in ys.values():
            if not G.commutes(s, t):
                return False, (s, t)
    return True, None


# -- built-in oracles ---------------------------------------------------------
def builtin_oracle(G: PoGroup) -> RefineOracle:
    """Closed-form refinements for linearly ordered or lattice-ordered groups."""
    if G.caps.linear:

        def refine(a1, a2, b1, b2):
            if G.leq(a1, b1):
                return RefinementTable(a1, G.zero, G.rsub(a1, b1), b2, True)
            return RefinementTable(b1, G.rsub(b1, a1), G.zero, a2, True)

        kind = "linear"
    elif G.caps.lattice:

        def refine(a1, a2, b1, b2):
            c11 = G.meet(a1, b1)
            c12 = G.rsub(c11, a1)
            c21 = G.rsub(c11, b1)
            c22 = G.rsub(c21, a2)
            # c12 ^ c21 = 0, and disjoint elements of an l-group commute
            return RefinementTable(c11, c12, c21, c22, True)

        kind = "lattice"
    else:
        raise CapabilityError(f"{G.desc} is neither linearly nor lattice ordered")
    return RefineOracle(f"builtin[{kind}]({G.desc})", refine, G.add, G.zero, G.lower_bound, com=True)


def finite_oracle(E: FinitePEA, prefer_com: bool = True) -> RefineOracle:
    """Search-based oracle on a finite algebra (element ids).

    Prefers a table satisfying com(c12, c21) when one exists, so the oracle is
    com-flagged exactly when the algebra has RDP1.
    """
    from .riesz import check_rdp1

    ctx = _Ctx(E)
    flagged = prefer_com and check_rdp1(E, ctx).holds

    def refine(a1, a2, b1, b2):
        ix = E.index
        q = (ix[a1], ix[a2], ix[b1], ix[b2])
        first = None
        for t in ctx.tables(*q):
            ok = ctx.com(t[1], t[2])
            if ok or not prefer_com:
                return RefinementTable(*(E.ids[i] for i in t), com=ok)
            first = first or t
        if first is None:
            raise RefineError(f"no refinement of {a1}+{a2}={b1}+{b2}")
        return RefinementTable(*(E.ids[i] for i in first), com=False)

    def add(x, y):
        return E.add(x, y)

    return RefineOracle(f"search({E.name or 'E'})", refine, add, E.zero, None, com=flagged)


def _need_lower_bound(O: RefineOracle, xs: Sequence[Element]) -> Element:
    if O.lower_bound is None:
        raise CapabilityError(f"{O.name} supplies no lower bounds (directedness unavailable)")
    d = O.lower_bound(list(xs))
    if d is None:
        raise CapabilityError(f"{O.name} found no common lower bound")
    return d


@functools.lru_cache(maxsize=None)
def lex_over(G: PoGroup) -> Lex:
    return Lex(Integers(1), G)


def _trivially_com(G: PoGroup, t: RefinementTable) -> bool:
    z = (0, G.zero)
    return t.c12 == z or t.c21 == z


# -- lifting to Gamma(Z x_lex G, (1,0)) -----------------------------------------
def lift_pea_refine(O: RefineOracle, G: PoGroup, a1, a2, b1, b2) -> RefinementTable:
    """Refine a1 + a2 = b1 + b2 inside the interval [0, (1,0)] of Z x_lex G."""
    L = lex_over(G)
    unit = (1, G.zero)
    q = (a1, a2, b1, b2)
    for x in q:
        if not (L.in_cone(x) and L.leq(x, unit)):
            raise InvalidQuadruple(f"{L.format(x)} is not in [0, (1,0)]")
    if L.add(a1, a2) != L.add(b1, b2):
        raise InvalidQuadruple("row and column sums differ")
    (m1, g1), (m2, g2), (n1, h1), (n2, h2) = q
    firsts = (m1, m2, n1, n2)
    if firsts == (0, 0, 0, 0):
        e = O.refine(g1, g2, h1, h2)
        return RefinementTable(*((0, x) for x in e.entries()), com=e.com and O.com)
    if firsts == (1, 0, 1, 0):
        d = _need_lower_bound(O, [g1, h1])
        e = O.refine(G.rsub(d, g1), g2, G.rsub(d, h1), h2)
        return RefinementTable(
            (1, G.add(d, e.c11)), (0, e.c12), (0, e.c21), (0, e.c22), com=e.com and O.com
        )
    if firsts == (0, 1, 0, 1):
        d = _need_lower_bound(O, [g2, h2])
        e = O.refine(g1, G.sub(g2, d), h1, G.sub(h2, d))
        return RefinementTable(
            (0, e.c11), (0, e.c12), (0, e.c21), (1, G.add(e.c22, d)), com=e.com and O.com
        )
    if firsts == (1, 0, 0, 1):
        return RefinementTable((0, h1), (1, G.rsub(h1, g1)), (0, G.zero), (0, g2), com=True)
    if firsts == (0, 1, 1, 0):
        # the mirror case is the previous one read with the roles of a and b swapped
        return lift_pea_refine(O, G, b1, b2, a1, a2).transpose()
    raise InvalidQuadruple(f"first coordinates {firsts} do not fit in [0, (1,0)]")


def pea_lift_oracle(O: RefineOracle, G: PoGroup) -> RefineOracle:
    """The refinement oracle of Gamma(Z x_lex G, (1,0)) built from one for G."""
    L = lex_over(G)
    return RefineOracle(
        f"lift[{O.name}]",
        lambda a1, a2, b1, b2: lift_pea_refine(O, G, a1, a2, b1, b2),
        L.add,
        L.zero,
        None,
        com=O.com,
    )


# -- lifting to (Z x_lex G)^+ -------------------------------------------------------
def lift_group_refine(O: RefineOracle, G: PoGroup, a1, a2, b1, b2) -> RefinementTable:
    """Refine a1 + a2 = b1 + b2 in the positive cone of Z x_lex G."""
    L = lex_over(G)
    check_quadruple(L, (a1, a2, b1, b2))
    return _lift_group(O, G, L, a1, a2, b1, b2)


def _lift_group(O, G, L, a1, a2, b1, b2) -> RefinementTable:
    (m1, g1), (m2, g2), (n1, h1), (n2, h2) = a1, a2, b1, b2
    firsts = (m1, m2, n1, n2)
    zero = (0, G.zero)
    if max(firsts) == 0:
        e = O.refine(g1, g2, h1, h2)
        return RefinementTable(*((0, x) for x in e.entries()), com=e.com and O.com)
    if min(firsts) == 0:
        if m2 == 0:
            if n2 > 0:
                return RefinementTable((n1, h1), (n2, G.rsub(h1, g1)), zero, (0, g2), com=True)
            # n2 = 0 forces m1 = n1 >= 1
            d = _need_lower_bound(O, [g1, h1])
            e = O.refine(G.rsub(d, g1), g2, G.rsub(d, h1), h2)
            t = RefinementTable((n1, G.add(d, e.c11)), (0, e.c12), (0, e.c21), (0, e.c22))
            return t.with_com(e.com and O.com)
        if m1 == 0:
            if n1 > 0:
                return RefinementTable((0, g1), zero, (n1, G.rsub(g1, h1)), (n2, h2), com=True)
            # n1 = 0 forces m2 = n2 >= 1
            d = _need_lower_bound(O, [g2, h2])
            e = O.refine(g1, G.sub(g2, d), h1, G.sub(h2, d))
            t = RefinementTable((0, e.c11), (0, e.c12), (0, e.c21), (m2, G.add(e.c22, d)))
            return t.with_com(e.com and O.com)
        # the zero sits on the b side: swap the roles of the two decompositions
        return _lift_group(O, G, L, b1, b2, a1, a2).transpose()
    d = _need_lower_bound(O, [g1, g2, h1, h2])
    e = O.refine(G.rsub(d, g1), G.sub(g2, d), G.rsub(d, h1), G.sub(h2, d))
    if m1 >= n1:
        t = RefinementTable(
            (n1, G.add(d, e.c11)), (m1 - n1, e.c12), (0, e.c21), (m2, G.add(e.c22, d))
        )
    else:
        t = RefinementTable(
            (m1, G.add(d, e.c11)), (0, e.c12), (n1 - m1, e.c21), (n2, G.add(e.c22, d))
        )
    # an off-diagonal (k, e) with k >= 1 sits above all of (0, G^+), so com is
    # only guaranteed when one off-diagonal entry is zero
    return t.with_com(_trivially_com(G, t))


def group_lift_oracle(O: RefineOracle, G: PoGroup) -> RefineOracle:
    L = lex_over(G)
    return RefineOracle(
        f"lex-lift[{O.name}]",
        lambda a1, a2, b1, b2: lift_group_refine(O, G, a1, a2, b1, b2),
        L.add,
        L.zero,
        L.lower_bound,
        com=False,
    )


# -- from the unit interval to the whole cone ------------------------------------------
def _unit_chunk(G: PoGroup, u: Element, b: Element) -> Element:
    """A piece p with 0 < p <= u and b - p >= 0, taken as large as possible."""
    if G.caps.linear:
        return u if G.leq(u, b) else b
    if G.caps.lattice:
        return G.meet(b, u)
    raise CapabilityError(f"no unit-bounded decomposition procedure for {G.desc}")


def extend_to_group(
    O_E: RefineOracle,
    G: PoGroup,
    u: Element,
    a1,
    a2,
    b1,
    b2,
    budget: int = 10_000,
) -> RefinementTable:
    """Refine a1 + a2 = b1 + b2 in G^+ using only refinements inside [0, u].

    Needs interpolation in G (to find a1, b1 <= z <= a1 + a2, u) and a way to
    peel unit-bounded pieces off b1 (or a1).
    """
    check_quadruple(G, (a1, a2, b1, b2))
    calls = [0]

    def tick():
        calls[0] += 1
        if calls[0] > budget:
            raise BudgetExceeded("unit-bounded decomposition did not finish within budget")

    def go(a1, a2, b1, b2) -> RefinementTable:
        tick()
        a_small, b_small = G.leq(a1, u), G.leq(b1, u)
        if a_small and b_small:
            s = G.add(a1, a2)
            z = G.interpolate([a1, b1], [s, u])
            if z is None:
                raise CapabilityError(f"no interpolant available in {G.desc}")
            x, y = G.rsub(a1, z), G.rsub(b1, z)
            t = O_E.refine(a1, x, b1, y)
            v = G.rsub(z, s)
            return RefinementTable(t.c11, t.c12, t.c21, G.add(t.c22, v), t.com and O_E.com)
        if not b_small:
            p = _unit_chunk(G, u, b1)
            if p == G.zero:
                raise BudgetExceeded(f"cannot split {G.format(b1)} into pieces below the unit")
            rest = G.sub(b1, p)  # b1 = rest + p
            c = go(a1, a2, rest, G.add(p, b2))
            d = go(c.c12, c.c22, p, b2)
            return RefinementTable(
                G.add(c.c11, d.c11),
                d.c12,
                G.add(c.c21, d.c21),
                d.c22,
                c.com and d.com,
            )
        return go(b1, b2, a1, a2).transpose()

    return go(a1, a2, b1, b2)


def interval_group_oracle(O: RefineOracle, G: PoGroup) -> RefineOracle:
    """RDP1 refinements on (Z x_lex G)^+ by extending the interval oracle of
    Gamma(Z x_lex G, (1,0)) built from ``O``."""
    L = lex_over(G)
    OE = pea_lift_oracle(O, G)
    unit = (1, G.zero)
    return RefineOracle(
        f"extend[{OE.name}]",
        lambda a1, a2, b1, b2: extend_to_group(OE, L, unit, a1, a2, b1, b2),
        L.add,
        L.zero,
        L.lower_bound,
        com=O.com,
    )


# -- m x n -------------------------------------------------------------------------------
def mn_refine(O: RefineOracle, a: Sequence, b: Sequence) -> RefinementMatrix:
    """Grow 2x2 refinements into an m x n matrix by merging trailing summands."""
    a, b = list(a), list(b)
    m, n = len(a), len(b)
    if m < 1 or n < 1:
        raise ValueError("both sequences must be nonempty")
    if m == 1:
        return RefinementMatrix([b[:]])
    if n == 1:
        return RefinementMatrix([[x] for x in a])
    if n >= 3:
        merged = O.add(b[-2], b[-1])
        M = mn_refine(O, a, b[:-2] + [merged])
        last = M.column(n - 2)
        S = mn_refine(O, last, [b[-2], b[-1]])
        return RefinementMatrix([row[:-1] + srow for row, srow in zip(M.rows, S.rows)])
    if m >= 3:
        return mn_refine(O, b, a).transpose()
    t = O.refine(a[0], a[1], b[0], b[1])
    return RefinementMatrix([[t.c11, t.c12], [t.c21, t.c22]])


# -- quadruples ------------------------------------------------------------------------
def random_lex_quadruple(
    G: PoGroup, rng: random.Random, bound: int = 30, max_first: int = 3, tries: int = 100_000
) -> Quadruple:
    """A random a1 + a2 = b1 + b2 in (Z x_lex G)^+ with G-coordinates in [-bound, bound]."""
    L = lex_over(G)

    def in_bound(x):
        flat = x[1] if isinstance(x[1], tuple) else (x[1],)
        return all(-bound <= v <= bound for v in flat)

    def draw():
        return (rng.randint(0, max_first), G.random_element(rng, bound))

    for _ in range(tries):
        a1, a2, b1 = draw(), draw(), draw()
        if not all(L.in_cone(x) for x in (a1, a2, b1)):
            continue
        b2 = L.rsub(b1, L.add(a1, a2))
        if L.in_cone(b2) and in_bound(b2):
            return a1, a2, b1, b2
    raise BudgetExceeded("could not sample a positive quadruple")


def random_lex_quadruples(G: PoGroup, seed: int, count: int, bound: int = 30) -> list[Quadruple]:
    rng = random.Random(seed)
    return [random_lex_quadruple(G, rng, bound) for _ in range(count)]


def parse_quadruple(text: str, G: PoGroup) -> Quadruple:
    """Parse ``x;y=z;w`` into (x, y, z, w) using G's element syntax."""
    try:
        left, right = text.split("=")
        a1, a2 = left.split(";")
        b1, b2 = right.split(";")
    except ValueError:
        raise InvalidQuadruple(f"expected 'a1;a2=b1;b2', got {text!r}") from None
    return tuple(G.parse(s.strip()) for s in (a1, a2, b1, b2))  # type: ignore[return-value]


def format_table(G: PoGroup, t: RefinementTable) -> str:
    return ";".join(G.format(x) for x in t.entries())


def all_quadruples(E: FinitePEA) -> list[tuple[str, str, str, str]]:
    ctx = _Ctx(E)
    return [tuple(E.ids[i] for i in q) for q in ctx.quadruples()]


def equal_sum_sequences(E: FinitePEA, m: int, n: int):
    """All pairs (a, b) of id sequences with a1+...+am = b1+...+bn."""
    from .riesz import sequences_by_sum

    left = sequences_by_sum(E, m)
    right = sequences_by_sum(E, n)
    for s in sorted(left):
        for a, b in itertools.product(left[s], right.get(s, ())):
            yield [E.ids[i] for i in a], [E.ids[i] for i in b]
