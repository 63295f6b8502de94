"""Integer-linear cone formulas on Z^k and exact integer-point enumeration.

A cone formula is a disjunction of conjunctions of atoms ``c . x >= r`` with
integer coefficients.  Strict and equality atoms are normalised into ``>=``
form when parsed (over the integers ``c.x > r`` is ``c.x >= r + 1``).

Finite search regions for the custom-cone groups come from a case split on the
disjuncts: every relation ``x <= y`` is the disjunction of the cone branches
applied to ``y - x``, so a system of order constraints expands into finitely
many conjunctions of linear inequalities.  Each conjunction is a rational
polyhedron; Fourier-Motzkin projection gives exact bounds on the first
coordinate, and the integer points are enumerated coordinate by coordinate.
A branch whose projection is unbounded cannot be certified by enumeration and
raises :class:`Unbounded`.

Example, the two custom cones shipped with the package::

    ex2.9   x1>=0 & x2>=0 | x1+x2>=2
    ex2.10  x1=0 & x2=0 | x1+x2>0
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


class Unbounded(Exception):
    """Raised when a polyhedron has infinitely many candidate integer points."""


class ConeSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Atom:
    """``coeffs . x >= rhs``."""

    coeffs: tuple[int, ...]
    rhs: int

    def holds(self, x: Sequence[int]) -> bool:
        return sum(c * v for c, v in zip(self.coeffs, x)) >= self.rhs

    def shifted(self, sign: int, offset: Sequence[int]) -> "Atom":
        """The atom evaluated at ``sign * x + offset`` as an atom in ``x``."""
        coeffs = tuple(sign * c for c in self.coeffs)
        rhs = self.rhs - sum(c * o for c, o in zip(self.coeffs, offset))
        return Atom(coeffs, rhs)


@dataclass(frozen=True)
class ConeSpec:
    rank: int
    disjuncts: tuple[tuple[Atom, ...], ...]
    source: str = ""

    def contains(self, x: Sequence[int]) -> bool:
        return any(all(a.holds(x) for a in conj) for conj in self.disjuncts)

    def branches_at(self, sign: int, offset: Sequence[int]) -> list[tuple[Atom, ...]]:
        """Branches of ``sign * x + offset in cone`` as constraint lists in ``x``."""
        return [tuple(a.shifted(sign, offset) for a in conj) for conj in self.disjuncts]

    def __str__(self) -> str:
        return self.source or repr(self)


_ATOM_RE = re.compile(r"^(.*?)(>=|<=|==|=|>|<)(.*)$")
_TERM_RE = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(x(\d+))?")


def _parse_linear(expr: str, rank: int) -> tuple[list[int], int]:
    """Parse ``2*x1 - x2 + 3`` into (coefficients, constant)."""
    coeffs = [0] * rank
    const = 0
    s = expr.replace(" ", "")
    if not s:
        raise ConeSyntaxError("empty side in inequality")
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if m is None or m.end() == pos:
            raise ConeSyntaxError(f"cannot parse term at {s[pos:]!r}")
        sign, num, var, idx = m.group(1), m.group(2), m.group(3), m.group(4)
        if not num and not var:
            raise ConeSyntaxError(f"cannot parse term at {s[pos:]!r}")
        value = int(num) if num else 1
        if sign == "-":
            value = -value
        if var:
            i = int(idx)
            if not 1 <= i <= rank:
                raise ConeSyntaxError(f"variable x{i} out of range for rank {rank}")
            coeffs[i - 1] += value
        else:
            const += value
        pos = m.end()
        if pos < len(s) and s[pos] not in "+-":
            raise ConeSyntaxError(f"unexpected character {s[pos]!r}")
    return coeffs, const


def parse_cone(text: str, rank: int) -> ConeSpec:
    """Parse a literal such as ``x1>=0 & x2>=0 | x1+x2>=2``."""
    disjuncts = []
    for part in text.split("|"):
        atoms: list[Atom] = []
        for raw in part.split("&"):
            m = _ATOM_RE.match(raw.strip())
            if m is None:
                raise ConeSyntaxError(f"no comparison in atom {raw!r}")
            lc, lk = _parse_linear(m.group(1), rank)
            rc, rk = _parse_linear(m.group(3), rank)
            diff = tuple(a - b for a, b in zip(lc, rc))
            bound = rk - lk  # diff . x (op) bound
            neg = tuple(-d for d in diff)
            op = m.group(2)
            if op == ">=":
                atoms.append(Atom(diff, bound))
            elif op == ">":
                atoms.append(Atom(diff, bound + 1))
            elif op == "<=":
                atoms.append(Atom(neg, -bound))
            elif op == "<":
                atoms.append(Atom(neg, -bound + 1))
            else:
                atoms.extend([Atom(diff, bound), Atom(neg, -bound)])
        disjuncts.append(tuple(atoms))
    return ConeSpec(rank, tuple(disjuncts), text.strip())


EX29 = "x1>=0 & x2>=0 | x1+x2>=2"
EX210 = "x1=0 & x2=0 | x1+x2>0"


# -- Fourier-Motzkin ---------------------------------------------------------

Row = tuple[tuple[Fraction, ...], Fraction]


def _eliminate(rows: list[Row], var: int) -> list[Row]:
    pos, neg, keep = [], [], []
    for coeffs, rhs in rows:
        c = coeffs[var]
        if c > 0:
            pos.append((coeffs, rhs))
        elif c < 0:
            neg.append((coeffs, rhs))
        else:
            keep.append((coeffs, rhs))
    for (pc, pr), (nc, nr) in itertools.product(pos, neg):
        a, b = pc[var], -nc[var]
        coeffs = tuple(b * p + a * q for p, q in zip(pc, nc))
        keep.append((coeffs, b * pr + a * nr))
    # drop exact duplicates to limit growth
    return list(dict.fromkeys(keep))


def _bounds(rows: list[Row], k: int) -> tuple[Fraction | None, Fraction | None] | None:
    """Exact rational bounds on coordinate 0, or None when infeasible."""
    for var in range(1, k):
        rows = _eliminate(rows, var)
    lo: Fraction | None = None
    hi: Fraction | None = None
    for coeffs, rhs in rows:
        c = coeffs[0]
        if c == 0:
            if rhs > 0:
                return None
        elif c > 0:
            b = rhs / c
            lo = b if lo is None else max(lo, b)
        else:
            b = rhs / c
            hi = b if hi is None else min(hi, b)
    if lo is not None and hi is not None and lo > hi:
        return None
    return lo, hi


def integer_points(atoms: Iterable[Atom], k: int, budget: int = 100_000) -> list[tuple[int, ...]]:
    """All integer points satisfying every atom.

    Raises :class:`Unbounded` if some coordinate range is infinite and
    ``BudgetExceeded``-style :class:`OverflowError` if more than ``budget``
    candidate values would be scanned.
    """
    rows = [(tuple(Fraction(c) for c in a.coeffs), Fraction(a.rhs)) for a in atoms]
    out: list[tuple[int, ...]] = []
    counter = [0]

    def rec(rows: list[Row], k: int, prefix: tuple[int, ...]) -> None:
        if k == 0:
            if all(rhs <= 0 for _, rhs in rows):
                out.append(prefix)
            return
        b = _bounds(rows, k)
        if b is None:
            return
        lo, hi = b
        if lo is None or hi is None:
            raise Unbounded(f"coordinate {len(prefix) + 1} is unbounded")
        for v in range(math.ceil(lo), math.floor(hi) + 1):
            counter[0] += 1
            if counter[0] > budget:
                raise OverflowError("integer point enumeration exceeded budget")
            sub = [(coeffs[1:], rhs - coeffs[0] * v) for coeffs, rhs in rows]
            rec(sub, k - 1, prefix + (v,))

    rec(rows, k, ())
    return out


def solve_disjunctive(
    constraint_sets: Sequence[Sequence[tuple[Atom, ...]]], k: int, budget: int = 100_000
) -> Iterator[tuple[int, ...]]:
    """Integer solutions of a conjunction of disjunctions.

    ``constraint_sets[i]`` is a list of alternative branches; a point is a
    solution if for every ``i`` it satisfies some branch.  Every combination
    of branches is enumerated exactly; :class:`Unbounded` propagates.
    """
    seen: set[tuple[int, ...]] = set()
    for combo in itertools.product(*constraint_sets):
        atoms = [a for branch in combo for a in branch]
        for p in integer_points(atoms, k, budget):
            if p not in seen:
                seen.add(p)
                yield p
