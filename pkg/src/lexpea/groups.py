"""Computable partially ordered groups.

Elements are plain hashable Python values whose shape is fixed by the group:

* ``Z``: ``int``; ``Z^k`` (k >= 2) and the custom-cone groups: ``tuple`` of k ints
* ``heis`` (upper unitriangular 3x3 integer matrices): ``(a, b, c)``
* finite groups: label strings, the identity printed as ``"0"``
* ``lex(G1, G2)``: ``(x1, x2)`` with ``x1`` in G1 and ``x2`` in G2

Every group checks the shape of the values it is handed and raises
:class:`CarrierError` on a mismatch.

The order is always the one induced by the positive cone:
``x <= y`` iff ``-x + y`` is in the cone.

Capability flags (abelian, directed, lattice, linear, torsion-free) are
declared metadata.  For the built-in groups each flag is backed by an
argument stored in ``PoGroup.notes``; user-defined cones get only the flags
that hold for the underlying group ``Z^k`` itself.  ``spot_check`` samples the
declared flags against the actual operations.
"""
from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence

from .cones import EX29, EX210, ConeSpec, Unbounded, parse_cone, solve_disjunctive

Element = Any


class CarrierError(TypeError):
    """An element does not belong to the carrier of the group it is used with."""


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed its budget or is infinite."""


class CapabilityError(ValueError):
    """The group lacks a capability an operation needs (e.g. meets)."""


@dataclass(frozen=True)
class Capabilities:
    abelian: bool = False
    directed: bool = False
    lattice: bool = False
    linear: bool = False
    torsion_free: bool = False


class Status(enum.Enum):
    CERTIFIED = "certified"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"
    NO_VIOLATION_FOUND = "no-violation-found"


@dataclass(frozen=True)
class Verdict:
    status: Status
    witness: Any = None
    reason: str = ""

    def __bool__(self) -> bool:  # pragma: no cover - guard against misuse
        raise TypeError("Verdict is three-valued; compare .status explicitly")


def certified(reason: str) -> Verdict:
    return Verdict(Status.CERTIFIED, None, reason)


def refuted(witness: Any, reason: str = "") -> Verdict:
    return Verdict(Status.REFUTED, witness, reason)


INCONCLUSIVE = Verdict(Status.INCONCLUSIVE)


def _is_int(x: Any) -> bool:
    return type(x) is int


def _split_top(s: str) -> list[str]:
    """Split on commas that are not nested in parentheses/brackets."""
    depth = 0
    parts, cur = [], []
    for ch in s:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _strip_parens(s: str) -> str:
    s = s.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"expected parenthesised tuple, got {s!r}")
    return s[1:-1]


class PoGroup:
    """Base class: a group with a positive cone.

    Subclasses implement ``check``, ``add``, ``neg``, ``in_cone``, ``format``,
    ``parse``, ``box`` and ``random_element``; the rest is derived.
    """

    desc: str = "?"
    zero: Element
    caps: Capabilities
    finite: bool = False

    def __init__(self) -> None:
        self.notes: dict[str, str] = {}

    # -- carrier ---------------------------------------------------------
    def check(self, x: Element) -> Element:
        raise NotImplementedError

    def is_element(self, x: Element) -> bool:
        try:
            self.check(x)
        except CarrierError:
            return False
        return True

    @property
    def trivial(self) -> bool:
        return False

    # -- group -----------------------------------------------------------
    def add(self, x: Element, y: Element) -> Element:
        raise NotImplementedError

    def neg(self, x: Element) -> Element:
        raise NotImplementedError

    def sum(self, xs: Iterable[Element]) -> Element:
        acc = self.zero
        for x in xs:
            acc = self.add(acc, x)
        return acc

    def sub(self, x: Element, y: Element) -> Element:
        """``x - y``, i.e. ``x + (-y)``."""
        return self.add(x, self.neg(y))

    def rsub(self, x: Element, y: Element) -> Element:
        """``-x + y``."""
        return self.add(self.neg(x), y)

    def mul(self, x: Element, n: int) -> Element:
        if n < 0:
            return self.mul(self.neg(x), -n)
        acc = self.zero
        for _ in range(n):
            acc = self.add(acc, x)
        return acc

    def commutes(self, x: Element, y: Element) -> bool:
        return self.add(x, y) == self.add(y, x)

    def commutation_class(self, x: Element) -> Any:
        """A key such that whether x and y commute depends only on their keys."""
        return None if self.caps.abelian else x

    # -- order -----------------------------------------------------------
    def in_cone(self, x: Element) -> bool:
        raise NotImplementedError

    def leq(self, x: Element, y: Element) -> bool:
        return self.in_cone(self.rsub(self.check(x), self.check(y)))

    def lt(self, x: Element, y: Element) -> bool:
        return x != y and self.leq(x, y)

    def meet(self, x: Element, y: Element) -> Element:
        raise CapabilityError(f"{self.desc} has no meet operation")

    def join(self, x: Element, y: Element) -> Element:
        # x v y = -((-x) ^ (-y)) in any l-group
        return self.neg(self.meet(self.neg(x), self.neg(y)))

    def lower_bound(self, xs: Sequence[Element]) -> Element | None:
        """Some d with d <= every listed element, or None if unavailable."""
        if self.caps.lattice:
            d = xs[0]
            for x in xs[1:]:
                d = self.meet(d, x)
            return d
        return None

    def upper_bound(self, xs: Sequence[Element]) -> Element | None:
        d = self.lower_bound([self.neg(x) for x in xs])
        return None if d is None else self.neg(d)

    def interpolate(self, lows: Sequence[Element], highs: Sequence[Element]) -> Element | None:
        """Some c with lows <= c <= highs (assuming every low <= every high)."""
        if self.caps.lattice:
            if lows:
                c = lows[0]
                for x in lows[1:]:
                    c = self.join(c, x)
                return c
            return self.lower_bound(list(highs))
        return None

    def interval(self, lo: Element, hi: Element, budget: int = 10_000) -> list[Element]:
        """All x with lo <= x <= hi; raises BudgetExceeded when not finite/too big."""
        d = self.rsub(lo, hi)
        if not self.in_cone(d):
            return []
        return [self.add(lo, y) for y in self.below(d, budget)]

    def below(self, d: Element, budget: int) -> list[Element]:
        """All y with 0 <= y <= d."""
        raise BudgetExceeded(f"interval enumeration not supported for {self.desc}")

    # -- enumeration -----------------------------------------------------
    def box(self, radius: int) -> list[Element]:
        raise NotImplementedError

    def elements(self) -> list[Element]:
        raise BudgetExceeded(f"{self.desc} is infinite")

    def random_element(self, rng: random.Random, radius: int) -> Element:
        raise NotImplementedError

    def random_positive(self, rng: random.Random, radius: int, tries: int = 10_000) -> Element:
        for _ in range(tries):
            x = self.random_element(rng, radius)
            if self.in_cone(x):
                return x
        return self.zero

    # -- printing --------------------------------------------------------
    def format(self, x: Element) -> str:
        raise NotImplementedError

    def parse(self, s: str) -> Element:
        raise NotImplementedError

    # -- analytic certificates used by the bounded probes ----------------
    def strong_unit_verdict(self, u: Element) -> Verdict:
        return INCONCLUSIVE

    def central_verdict(self, c: Element) -> Verdict:
        if self.caps.abelian:
            return certified("abelian group")
        return INCONCLUSIVE

    def directed_verdict(self) -> Verdict:
        if self.caps.directed:
            return certified(self.notes.get("directed", "declared directed"))
        return INCONCLUSIVE

    def __repr__(self) -> str:
        return f"<PoGroup {self.desc}>"


# ---------------------------------------------------------------------------
class Integers(PoGroup):
    """Z^k with the componentwise (product) order; rank 1 uses plain ints."""

    def __init__(self, rank: int = 1):
        super().__init__()
        if rank < 1:
            raise ValueError("rank must be >= 1")
        self.rank = rank
        self.zero = 0 if rank == 1 else (0,) * rank
        self.desc = "Z" if rank == 1 else f"Z^{rank}:product"
        self.caps = Capabilities(
            abelian=True, directed=True, lattice=True, linear=rank == 1, torsion_free=True
        )
        self.notes = {
            "directed": "componentwise max is an upper bound",
            "lattice": "componentwise min/max are meet/join",
            "torsion_free": "Z^k has no torsion",
        }
        if rank == 1:
            self.notes["linear"] = "the usual order of Z is total"

    def _vec(self, x: Element) -> tuple[int, ...]:
        return (x,) if self.rank == 1 else x

    def _unvec(self, v: Sequence[int]) -> Element:
        return v[0] if self.rank == 1 else tuple(v)

    def check(self, x):
        if self.rank == 1:
            if not _is_int(x):
                raise CarrierError(f"{x!r} is not an element of Z")
        elif not (isinstance(x, tuple) and len(x) == self.rank and all(map(_is_int, x))):
            raise CarrierError(f"{x!r} is not an element of Z^{self.rank}")
        return x

    def add(self, x, y):
        if self.rank == 1:
            return self.check(x) + self.check(y)
        self.check(x), self.check(y)
        return tuple(a + b for a, b in zip(x, y))

    def neg(self, x):
        if self.rank == 1:
            return -self.check(x)
        return tuple(-a for a in self.check(x))

    def in_cone(self, x):
        return all(v >= 0 for v in self._vec(self.check(x)))

    def meet(self, x, y):
        self.check(x), self.check(y)
        return self._unvec([min(a, b) for a, b in zip(self._vec(x), self._vec(y))])

    def join(self, x, y):
        self.check(x), self.check(y)
        return self._unvec([max(a, b) for a, b in zip(self._vec(x), self._vec(y))])

    def commutes(self, x, y):
        return True

    def below(self, d, budget):
        ranges = [range(0, v + 1) for v in self._vec(d)]
        size = 1
        for r in ranges:
            size *= len(r)
        if size > budget:
            raise BudgetExceeded(f"interval has {size} elements (budget {budget})")
        return [self._unvec(v) for v in itertools.product(*ranges)]

    def box(self, radius):
        r = range(-radius, radius + 1)
        return [self._unvec(v) for v in itertools.product(r, repeat=self.rank)]

    def random_element(self, rng, radius):
        return self._unvec([rng.randint(-radius, radius) for _ in range(self.rank)])

    def format(self, x):
        self.check(x)
        if self.rank == 1:
            return str(x)
        return "(" + ",".join(map(str, x)) + ")"

    def parse(self, s):
        s = s.strip()
        if self.rank == 1:
            try:
                return int(s)
            except ValueError:
                raise CarrierError(f"{s!r} is not an integer") from None
        parts = _split_top(_strip_parens(s))
        if len(parts) != self.rank:
            raise CarrierError(f"{s!r} does not have {self.rank} coordinates")
        return tuple(int(p) for p in parts)

    def strong_unit_verdict(self, u):
        v = self._vec(u)
        for i, ui in enumerate(v):
            if ui <= 0:
                w = [0] * self.rank
                w[i] = 1
                return refuted(self._unvec(w), f"coordinate {i + 1} of u is 0, so n*u never exceeds it")
        return certified("every coordinate of u is positive; n >= max|g_i| works")


class ConeGroup(Integers):
    """Z^k ordered by a user-supplied :class:`ConeSpec`.

    Intervals and interpolants are computed exactly from the case split over
    the cone's disjuncts (see :mod:`lexpea.cones`).  Capability flags other than
    ``abelian`` and ``torsion_free`` are only set by the presets.
    """

    def __init__(self, cone: ConeSpec, name: str | None = None):
        super().__init__(cone.rank)
        self.cone = cone
        self.desc = f"Z^{cone.rank}:cone={name or cone.source}"
        self.caps = Capabilities(abelian=True, torsion_free=True)
        self.notes = {"torsion_free": "Z^k has no torsion"}
        self._lower: Callable[[Sequence[Element]], Element] | None = None
        self._unit: Callable[[Element], Verdict] | None = None

    def in_cone(self, x):
        return self.cone.contains(self._vec(self.check(x)))

    def meet(self, x, y):
        raise CapabilityError(f"{self.desc} is not lattice ordered")

    join = meet

    def commutes(self, x, y):
        return True

    def _solve(self, lows, highs, budget):
        sets = [self.cone.branches_at(1, [-v for v in self._vec(a)]) for a in lows]
        sets += [self.cone.branches_at(-1, self._vec(b)) for b in highs]
        return solve_disjunctive(sets, self.rank, budget)

    def interval(self, lo, hi, budget=10_000):
        try:
            pts = sorted(self._solve([lo], [hi], budget))
        except Unbounded as exc:
            raise BudgetExceeded(f"interval [{lo}, {hi}] is not bounded: {exc}") from None
        except OverflowError as exc:
            raise BudgetExceeded(str(exc)) from None
        if len(pts) > budget:
            raise BudgetExceeded(f"interval has {len(pts)} elements (budget {budget})")
        return [self._unvec(p) for p in pts]

    def below(self, d, budget):
        return self.interval(self.zero, d, budget)

    def interpolate(self, lows, highs):
        for p in self._solve(lows, highs, 100_000):
            return self._unvec(p)
        return None

    def lower_bound(self, xs):
        return None if self._lower is None else self._lower(xs)

    def strong_unit_verdict(self, u):
        if self._unit is not None:
            return self._unit(u)
        return INCONCLUSIVE


def _sum_cone_group(source: str, name: str, gap: int) -> ConeGroup:
    """The Z^2 cones whose 'sum branch' needs (c+d)-(a+b) >= gap."""
    G = ConeGroup(parse_cone(source, 2), name)
    G.caps = Capabilities(abelian=True, directed=True, torsion_free=True)
    G.notes = {
        "directed": "u=(1,0) is a strong unit and a unital po-group is directed",
        "torsion_free": "Z^2 has no torsion",
        "region": (
            f"x <= y holds through the sum branch as soon as s(y)-s(x) >= {gap}, where s is "
            "the coordinate sum; a constraint x <= c forces either the componentwise branch "
            f"(c bounded below coordinatewise) or s(c) >= s(x)+{gap}, and c <= y forces the "
            f"componentwise branch or s(c) <= s(y)-{gap}; each of the finitely many branch "
            "combinations is a polyhedron decided exactly by Fourier-Motzkin."
        ),
    }

    def lower(xs):
        s = min(a + b for a, b in xs)
        return (s - gap, 0)

    def unit(u):
        if u[0] + u[1] >= 1:
            return certified(f"s(n*u) = n*s(u) grows without bound, so s(n*u)-s(g) >= {gap} eventually")
        return INCONCLUSIVE

    G._lower = lower
    G._unit = unit
    return G


def ex29_group() -> ConeGroup:
    """Z^2 with (a,b) <= (c,d) iff a<=c and b<=d, or (c+d)-(a+b) >= 2."""
    return _sum_cone_group(EX29, "ex2.9", 2)


def ex210_group() -> ConeGroup:
    """Z^2 with (a,b) <= (c,d) iff (a,b) = (c,d), or a+b < c+d."""
    return _sum_cone_group(EX210, "ex2.10", 1)


# ---------------------------------------------------------------------------
class Heisenberg(PoGroup):
    """UT(3, Z) with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').

    Positive cone: (a,b) >lex (0,0), or (a,b) = (0,0) and c >= 0.  The cone
    is the lexicographic order of the central series, so the order is total
    and conjugation invariant.
    """

    desc = "heis"
    zero = (0, 0, 0)

    def __init__(self):
        super().__init__()
        self.caps = Capabilities(
            abelian=False, directed=True, lattice=True, linear=True, torsion_free=True
        )
        self.notes = {
            "linear": "lex order on (a,b) refined by c is total",
            "lattice": "linear orders are lattices",
            "directed": "linear orders are directed",
            "torsion_free": "n*(a,b,c) = (na, nb, nc + n(n-1)ab/2) is 0 only for (0,0,0)",
        }

    def check(self, x):
        if not (isinstance(x, tuple) and len(x) == 3 and all(map(_is_int, x))):
            raise CarrierError(f"{x!r} is not an element of heis")
        return x

    def add(self, x, y):
        self.check(x), self.check(y)
        return (x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1])

    def neg(self, x):
        a, b, c = self.check(x)
        return (-a, -b, a * b - c)

    def commutes(self, x, y):
        self.check(x), self.check(y)
        return x[0] * y[1] == y[0] * x[1]

    def commutation_class(self, x):
        return (x[0], x[1])

    def in_cone(self, x):
        a, b, c = self.check(x)
        return (a, b) > (0, 0) or (a == 0 and b == 0 and c >= 0)

    def meet(self, x, y):
        return x if self.leq(x, y) else y

    def join(self, x, y):
        return y if self.leq(x, y) else x

    def below(self, d, budget):
        if d[0] == 0 and d[1] == 0:
            if d[2] + 1 > budget:
                raise BudgetExceeded("interval too large")
            return [(0, 0, t) for t in range(d[2] + 1)]
        raise BudgetExceeded("interval below a non-central element is infinite")

    def box(self, radius):
        r = range(-radius, radius + 1)
        return list(itertools.product(r, repeat=3))

    def random_element(self, rng, radius):
        return tuple(rng.randint(-radius, radius) for _ in range(3))

    def format(self, x):
        return "(" + ",".join(map(str, self.check(x))) + ")"

    def parse(self, s):
        parts = _split_top(_strip_parens(s))
        if len(parts) != 3:
            raise CarrierError(f"{s!r} is not a heis element")
        return tuple(int(p) for p in parts)

    def strong_unit_verdict(self, u):
        if u[0] > 0:
            return certified("first coordinate of n*u exceeds that of any g for large n")
        return refuted((1, 0, 0), "-g + n*u has first coordinate -1 for g=(1,0,0)")

    def central_verdict(self, c):
        if c[0] == 0 and c[1] == 0:
            return certified("the centre of UT(3,Z) is {(0,0,c)}")
        w = (0, 1, 0) if c[0] != 0 else (1, 0, 0)
        return refuted(w, "a*b' != a'*b")


# ---------------------------------------------------------------------------
class FiniteGroup(PoGroup):
    """A finite group with the trivial order (cone = {identity})."""

    finite = True

    def __init__(self, name: str, labels: Sequence[str], table: dict[tuple[str, str], str]):
        super().__init__()
        self.desc = f"finite:{name}"
        self.labels = list(labels)
        self.table = table
        self.zero = self.labels[0]
        self._inv = {}
        for x in self.labels:
            for y in self.labels:
                if table[x, y] == self.zero:
                    self._inv[x] = y
        abelian = all(table[x, y] == table[y, x] for x in labels for y in labels)
        one = len(self.labels) == 1
        self.caps = Capabilities(
            abelian=abelian, directed=one, lattice=one, linear=one, torsion_free=one
        )
        self.notes = {"torsion_free": "finite nontrivial groups have torsion" if not one else "trivial"}

    @property
    def trivial(self):
        return len(self.labels) == 1

    def check(self, x):
        if x not in self._inv:
            raise CarrierError(f"{x!r} is not an element of {self.desc}")
        return x

    def add(self, x, y):
        self.check(x), self.check(y)
        return self.table[x, y]

    def neg(self, x):
        return self._inv[self.check(x)]

    def in_cone(self, x):
        return self.check(x) == self.zero

    def meet(self, x, y):
        if x == y:
            return x
        raise CapabilityError("trivially ordered group has no meet of distinct elements")

    def lower_bound(self, xs):
        return xs[0] if len(set(xs)) == 1 else None

    def interpolate(self, lows, highs):
        vals = set(lows) | set(highs)
        return next(iter(vals)) if len(vals) == 1 else None

    def below(self, d, budget):
        return [self.zero]

    def box(self, radius):
        return list(self.labels)

    def elements(self):
        return list(self.labels)

    def random_element(self, rng, radius):
        return rng.choice(self.labels)

    def format(self, x):
        return self.check(x)

    def parse(self, s):
        s = s.strip()
        if s in ("e", "()", "id"):
            s = self.zero
        return self.check(s)

    def strong_unit_verdict(self, u):
        # n*u cycles with period dividing |G|, so n <= |G| is exhaustive
        for g in self.labels:
            if not any(self.leq(g, self.mul(u, n)) for n in range(1, len(self.labels) + 1)):
                return refuted(g, "exhaustive over the finite group")
        return certified("exhaustive over the finite group")

    def central_verdict(self, c):
        for g in self.labels:
            if not self.commutes(c, g):
                return refuted(g, "exhaustive over the finite group")
        return certified("exhaustive over the finite group")

    def directed_verdict(self):
        # prefer a witness of two non-identity elements
        pairs = list(itertools.combinations(self.labels[1:], 2)) + [
            (self.zero, y) for y in self.labels[1:]
        ]
        for x, y in pairs:
            if not any(self.leq(x, g) and self.leq(y, g) for g in self.labels):
                return refuted((x, y), "exhaustive over the finite group")
        return certified("exhaustive over the finite group")


_S3_NAMES = {
    (1, 2, 3): "0",
    (2, 1, 3): "(12)",
    (3, 2, 1): "(13)",
    (1, 3, 2): "(23)",
    (2, 3, 1): "(123)",
    (3, 1, 2): "(132)",
}


def symmetric3() -> FiniteGroup:
    """S3 on {1,2,3}; ``g + h`` is the composite "apply h, then g"."""
    perms = list(_S3_NAMES)
    table = {}
    for g in perms:
        for h in perms:
            gh = tuple(g[h[i] - 1] for i in range(3))
            table[_S3_NAMES[g], _S3_NAMES[h]] = _S3_NAMES[gh]
    return FiniteGroup("S3", list(_S3_NAMES.values()), table)


def cyclic(k: int) -> FiniteGroup:
    if k < 1:
        raise ValueError("cyclic group order must be >= 1")
    labels = [str(i) for i in range(k)]
    table = {(str(i), str(j)): str((i + j) % k) for i in range(k) for j in range(k)}
    return FiniteGroup(f"C{k}", labels, table)


# ---------------------------------------------------------------------------
class Lex(PoGroup):
    """The lexicographic product G1 x_lex G2.

    (a, b) is positive iff a > 0 in G1, or a = 0 and b >= 0 in G2.
    """

    def __init__(self, left: PoGroup, right: PoGroup):
        super().__init__()
        self.left, self.right = left, right
        self.desc = f"lex({left.desc},{right.desc})"
        self.zero = (left.zero, right.zero)
        self.finite = left.finite and right.finite
        l, r = left.caps, right.caps
        if left.trivial:
            directed, lattice = r.directed, r.lattice
        elif right.trivial:
            directed, lattice = l.directed, l.lattice
        else:
            directed = l.directed
            lattice = l.linear and r.lattice
        self.caps = Capabilities(
            abelian=l.abelian and r.abelian,
            directed=directed,
            lattice=lattice,
            linear=l.linear and r.linear,
            torsion_free=l.torsion_free and r.torsion_free,
        )
        self.notes = {
            "directed": "G1 x_lex G2 with nontrivial factors is directed iff G1 is",
            "lattice": "l-group iff G1 linear and G2 lattice (nontrivial factors)",
            "linear": "both factors linear",
            "torsion_free": "metadata: torsion-free iff both factors are (not verified)",
        }

    @property
    def trivial(self):
        return self.left.trivial and self.right.trivial

    def check(self, x):
        if not (isinstance(x, tuple) and len(x) == 2):
            raise CarrierError(f"{x!r} is not an element of {self.desc}")
        self.left.check(x[0])
        self.right.check(x[1])
        return x

    def add(self, x, y):
        self.check(x), self.check(y)
        return (self.left.add(x[0], y[0]), self.right.add(x[1], y[1]))

    def neg(self, x):
        self.check(x)
        return (self.left.neg(x[0]), self.right.neg(x[1]))

    def commutes(self, x, y):
        return self.left.commutes(x[0], y[0]) and self.right.commutes(x[1], y[1])

    def commutation_class(self, x):
        return (self.left.commutation_class(x[0]), self.right.commutation_class(x[1]))

    def in_cone(self, x):
        self.check(x)
        if x[0] != self.left.zero:
            return self.left.in_cone(x[0])
        return self.right.in_cone(x[1])

    def meet(self, x, y):
        if not self.caps.lattice:
            raise CapabilityError(f"{self.desc} is not lattice ordered")
        if self.left.trivial:
            return (x[0], self.right.meet(x[1], y[1]))
        if self.right.trivial:
            return (self.left.meet(x[0], y[0]), x[1])
        if x[0] == y[0]:
            return (x[0], self.right.meet(x[1], y[1]))
        return x if self.left.leq(x[0], y[0]) else y

    def join(self, x, y):
        if not self.caps.lattice:
            raise CapabilityError(f"{self.desc} is not lattice ordered")
        if self.left.trivial:
            return (x[0], self.right.join(x[1], y[1]))
        if self.right.trivial:
            return (self.left.join(x[0], y[0]), x[1])
        if x[0] == y[0]:
            return (x[0], self.right.join(x[1], y[1]))
        return y if self.left.leq(x[0], y[0]) else x

    def lower_bound(self, xs):
        if self.caps.lattice:
            return super().lower_bound(xs)
        if not self.left.caps.linear:
            return None
        m = xs[0][0]
        for x in xs[1:]:
            m = self.left.meet(m, x[0])
        seconds = [x[1] for x in xs if x[0] == m]
        d2 = self.right.lower_bound(seconds)
        return None if d2 is None else (m, d2)

    def interpolate(self, lows, highs):
        if self.caps.lattice:
            return super().interpolate(lows, highs)
        if not self.left.caps.linear or not (lows or highs):
            return None
        L, R = self.left, self.right
        if lows:
            mlo = lows[0][0]
            for x in lows[1:]:
                mlo = L.join(mlo, x[0])
        if highs:
            mhi = highs[0][0]
            for x in highs[1:]:
                mhi = L.meet(mhi, x[0])
        if lows and (not highs or mlo != mhi):
            ub = R.upper_bound([x[1] for x in lows if x[0] == mlo])
            return None if ub is None else (mlo, ub)
        if not lows:
            lb = R.lower_bound([x[1] for x in highs if x[0] == mhi])
            return None if lb is None else (mhi, lb)
        c2 = R.interpolate([x[1] for x in lows if x[0] == mlo], [x[1] for x in highs if x[0] == mhi])
        return None if c2 is None else (mlo, c2)

    def below(self, d, budget):
        L, R = self.left, self.right
        d1, d2 = d
        out = []
        right_all = None
        for y1 in L.below(d1, budget):
            at_bottom = y1 == L.zero
            at_top = y1 == d1
            if at_bottom and at_top:
                seconds = R.below(d2, budget)
            else:
                if right_all is None:
                    right_all = R.elements()
                if at_bottom:
                    seconds = [g for g in right_all if R.in_cone(g)]
                elif at_top:
                    seconds = [g for g in right_all if R.leq(g, d2)]
                else:
                    seconds = right_all
            out.extend((y1, g) for g in seconds)
            if len(out) > budget:
                raise BudgetExceeded(f"interval exceeds budget {budget}")
        return out

    def box(self, radius):
        return list(itertools.product(self.left.box(radius), self.right.box(radius)))

    def elements(self):
        return list(itertools.product(self.left.elements(), self.right.elements()))

    def random_element(self, rng, radius):
        return (self.left.random_element(rng, radius), self.right.random_element(rng, radius))

    def format(self, x):
        self.check(x)
        return f"({self.left.format(x[0])},{self.right.format(x[1])})"

    def parse(self, s):
        parts = _split_top(_strip_parens(s))
        if len(parts) != 2:
            raise CarrierError(f"{s!r} is not a pair")
        return self.check((self.left.parse(parts[0]), self.right.parse(parts[1])))

    def strong_unit_verdict(self, u):
        if self.right.trivial:
            v = self.left.strong_unit_verdict(u[0])
            if v.status is Status.REFUTED:
                return refuted((v.witness, self.right.zero), v.reason)
            return v
        if isinstance(self.left, Integers) and self.left.rank == 1:
            if u[0] >= 1:
                return certified("(g1,g2) < (n*u1, .) once n*u1 > g1")
            return refuted((1, self.right.zero), "first coordinate of n*u stays 0")
        return INCONCLUSIVE

    def central_verdict(self, c):
        v1 = self.left.central_verdict(c[0])
        v2 = self.right.central_verdict(c[1])
        if v1.status is Status.REFUTED:
            return refuted((v1.witness, self.right.zero), v1.reason)
        if v2.status is Status.REFUTED:
            return refuted((self.left.zero, v2.witness), v2.reason)
        if v1.status is Status.CERTIFIED and v2.status is Status.CERTIFIED:
            return certified(f"componentwise: {v1.reason}; {v2.reason}")
        return INCONCLUSIVE

    def directed_verdict(self):
        if self.caps.directed:
            return certified(self.notes["directed"])
        if self.left.trivial:
            v = self.right.directed_verdict()
            if v.status is Status.REFUTED:
                x, y = v.witness
                return refuted(((self.left.zero, x), (self.left.zero, y)), v.reason)
            return v
        v = self.left.directed_verdict()
        if v.status is Status.REFUTED:
            x, y = v.witness
            z = self.right.zero
            return refuted(((x, z), (y, z)), "an upper bound (w,.) needs x,y <= w in G1")
        return v


# ---------------------------------------------------------------------------
def leq(G: PoGroup, x: Element, y: Element) -> bool:
    return G.leq(x, y)


def lex(G1: PoGroup, G2: PoGroup) -> Lex:
    return Lex(G1, G2)


def heisenberg() -> Heisenberg:
    return Heisenberg()


def _ordered_box(G: PoGroup, radius: int) -> list[Element]:
    def key(x):
        flat = list(_flatten(x))
        return (sum(abs(v) if isinstance(v, int) else 0 for v in flat), repr(flat))

    return sorted(G.box(radius), key=key)


def _flatten(x):
    if isinstance(x, tuple):
        for v in x:
            yield from _flatten(v)
    else:
        yield x


def is_directed_bounded(G: PoGroup, radius: int) -> Verdict:
    """Certified only from declared metadata; refutations are exact.

    Finite groups are scanned completely; lexicographic products inherit a
    refutation from their left factor.  ``radius`` is kept for interface
    symmetry with the other probes.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    return G.directed_verdict()


def is_strong_unit_bounded(G: PoGroup, u: Element, radius: int) -> Verdict:
    if not G.in_cone(u):
        raise ValueError(f"{G.format(u)} is not positive")
    v = G.strong_unit_verdict(u)
    if v.status is not Status.INCONCLUSIVE:
        return v
    if u == G.zero:
        for g in _ordered_box(G, max(radius, 1)):
            if not G.leq(g, G.zero):
                return refuted(g, "n*0 = 0 and g is not below 0")
    return INCONCLUSIVE


def srip_bounded(G: PoGroup, radius: int, budget: int = 2_000) -> Verdict:
    """Search a box for a1,a2 < b1,b2 with no strict interpolant.

    A candidate interpolant c must lie in the order interval [a1, b1]; a
    quadruple is only reported when that interval is finite and has been
    enumerated completely, so every refutation is exact.
    """
    if radius <= 0:
        return Verdict(Status.NO_VIOLATION_FOUND)
    pts = _ordered_box(G, radius)

    def no_strict(lows, highs):
        try:
            cands = G.interval(lows[0], highs[0], budget)
        except BudgetExceeded:
            return False
        return not any(
            all(G.lt(a, c) for a in lows) and all(G.lt(c, b) for b in highs) for c in cands
        )

    for a in pts:
        for b in pts:
            if G.lt(a, b) and no_strict([a], [b]):
                return refuted((a, a, b, b), "no element strictly between")
    for a1, a2 in itertools.combinations(pts, 2):
        ups = [b for b in pts if G.lt(a1, b) and G.lt(a2, b)]
        for b1, b2 in itertools.combinations(ups, 2):
            if no_strict([a1, a2], [b1, b2]):
                return refuted((a1, a2, b1, b2), "no strict interpolant")
    return Verdict(Status.NO_VIOLATION_FOUND)


def spot_check(G: PoGroup, radius: int = 2, samples: int | None = None, seed: int = 0) -> list[str]:
    """Sample the po-group axioms and declared capabilities; return problems found."""
    pts = G.box(radius)
    rng = random.Random(seed)
    if samples is not None and len(pts) > samples:
        pts = rng.sample(pts, samples)
    problems: list[str] = []
    if not G.in_cone(G.zero):
        problems.append("zero not in cone")
    for x in pts:
        if x != G.zero and G.in_cone(x) and G.in_cone(G.neg(x)):
            problems.append(f"antisymmetry fails at {G.format(x)}")
        if G.in_cone(x):
            for g in pts[:25]:
                if not G.in_cone(G.add(G.add(g, x), G.neg(g))):
                    problems.append(f"cone not normal: {G.format(x)} conj by {G.format(g)}")
    pos = [x for x in pts if G.in_cone(x)]
    for x in pos[:40]:
        for y in pos[:40]:
            if not G.in_cone(G.add(x, y)):
                problems.append(f"cone not closed under +: {G.format(x)}, {G.format(y)}")
    c = G.caps
    if c.linear and not c.lattice:
        problems.append("linear but not lattice")
    if c.lattice and not c.directed:
        problems.append("lattice but not directed")
    for x in pts[:40]:
        for y in pts[:40]:
            if c.linear and not (G.leq(x, y) or G.leq(y, x)):
                problems.append(f"declared linear but {G.format(x)}, {G.format(y)} incomparable")
            if c.abelian and G.add(x, y) != G.add(y, x):
                problems.append("declared abelian but does not commute")
            if c.lattice:
                m = G.meet(x, y)
                if not (G.leq(m, x) and G.leq(m, y)):
                    problems.append(f"meet not a lower bound at {G.format(x)}, {G.format(y)}")
                for z in pts[:15]:
                    if G.leq(z, x) and G.leq(z, y) and not G.leq(z, m):
                        problems.append("meet not greatest")
    return problems
