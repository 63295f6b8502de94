"""Exhaustive Riesz-property checkers for finite pseudo effect algebras.

All checkers work on the index representation of a :class:`FinitePEA`.
A 2x2 refinement of ``a1 + a2 = b1 + b2`` is determined by its corner
``c11``: ``c12 = c11 / a1``, ``c21 = c11 / b1``, ``c22 = c21 / a2``, and the
table is admissible iff all of these exist and ``c12 + c22 = b2``.

RDP1 and RDP2 are existential over tables: a quadruple passes if *some*
admissible table satisfies the side condition.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .groups import BudgetExceeded
from .pea import FinitePEA

PROPS = ("rip", "rdp0", "rdp", "rdp1", "rdp2")


@dataclass
class PropertyReport:
    prop: str
    holds: bool
    witness: tuple | None = None
    reason: str = ""
    tables: dict = field(default_factory=dict, repr=False)

    def __bool__(self) -> bool:
        return self.holds

    def line(self) -> str:
        if self.holds:
            return f"{self.prop}: HOLDS"
        w = ",".join(_fmt(x) for x in self.witness or ())
        extra = f" reason={self.reason}" if self.reason else ""
        return f"{self.prop}: FAILS witness={w}{extra}"

    def to_json(self) -> dict:
        return {
            "property": self.prop,
            "holds": self.holds,
            "witness": None if self.witness is None else [_jsonable(x) for x in self.witness],
            "reason": self.reason or None,
        }


def _fmt(x) -> str:
    if isinstance(x, tuple):
        return "[" + " ".join(_fmt(v) for v in x) + "]"
    return str(x)


def _jsonable(x):
    return list(x) if isinstance(x, tuple) else x


class _Ctx:
    """Cached index-level helpers for one algebra."""

    def __init__(self, E: FinitePEA):
        self.E = E
        n = E.n
        self.n = n
        A = E._add
        self.A = A
        # rm[i][j] = c with i + c = j (-1 if none)
        self.rm = [[-1] * n for _ in range(n)]
        for i in range(n):
            for c in range(n):
                s = A[i][c]
                if s >= 0:
                    self.rm[i][s] = c
        self.up = E._up
        self.down = E._down
        self.below = [E.i_below(i) for i in range(n)]
        self.height = [len(b) for b in self.below]
        self.pairs_by_sum: dict[int, list[tuple[int, int]]] = {}
        for i in range(n):
            for j in range(n):
                s = A[i][j]
                if s >= 0:
                    self.pairs_by_sum.setdefault(s, []).append((i, j))
        self._com: dict[tuple[int, int], bool] = {}

    def com(self, a: int, b: int) -> bool:
        key = (a, b)
        r = self._com.get(key)
        if r is None:
            A = self.A
            r = all(A[x][y] == A[y][x] for x in self.below[a] for y in self.below[b])
            self._com[key] = r
        return r

    def tables(self, a1: int, a2: int, b1: int, b2: int, prefer_high: bool = False) -> Iterator[tuple[int, int, int, int]]:
        order = range(self.n)
        if prefer_high:
            order = sorted(order, key=lambda c: (-self.height[c], c))
        rm, A = self.rm, self.A
        for c11 in order:
            c12 = rm[c11][a1]
            if c12 < 0:
                continue
            c21 = rm[c11][b1]
            if c21 < 0:
                continue
            c22 = rm[c21][a2]
            if c22 < 0 or A[c12][c22] != b2:
                continue
            yield c11, c12, c21, c22

    def quadruples(self) -> Iterator[tuple[int, int, int, int]]:
        for s in sorted(self.pairs_by_sum):
            ps = self.pairs_by_sum[s]
            for (a1, a2), (b1, b2) in itertools.product(ps, ps):
                yield a1, a2, b1, b2


def _ids(E: FinitePEA, xs: Sequence[int]) -> tuple[str, ...]:
    return tuple(E.ids[i] for i in xs)


def com(E: FinitePEA, a: str, b: str) -> bool:
    """Every x <= a and y <= b commute (both sums undefined, or both equal)."""
    A = E._add
    xs = E.i_below(E.index[a])
    ys = E.i_below(E.index[b])
    return all(A[x][y] == A[y][x] for x in xs for y in ys)


def check_rip(E: FinitePEA, ctx: _Ctx | None = None) -> PropertyReport:
    c = ctx or _Ctx(E)
    n = c.n
    for a1 in range(n):
        for a2 in range(a1, n):
            ub = c.up[a1] & c.up[a2]
            highs = [b for b in range(n) if ub >> b & 1]
            for b1 in highs:
                for b2 in highs:
                    if b2 < b1:
                        continue
                    if not (ub & c.down[b1] & c.down[b2]):
                        return PropertyReport("rip", False, _ids(E, (a1, a2, b1, b2)))
    return PropertyReport("rip", True)


def check_rdp0(E: FinitePEA, ctx: _Ctx | None = None) -> PropertyReport:
    """a <= b + c implies a = b1 + c1 with b1 <= b, c1 <= c.  Witness (a, b, c)."""
    c = ctx or _Ctx(E)
    A = c.A
    for b in range(c.n):
        for cc in range(c.n):
            s = A[b][cc]
            if s < 0:
                continue
            reach = {A[x][y] for x in c.below[b] for y in c.below[cc]}
            for a in c.below[s]:
                if a not in reach:
                    return PropertyReport("rdp0", False, _ids(E, (a, b, cc)))
    return PropertyReport("rdp0", True)


def _rdp_family(E: FinitePEA, prop: str, ctx: _Ctx | None, keep_tables: bool) -> PropertyReport:
    c = ctx or _Ctx(E)
    kept = {}
    for q in c.quadruples():
        found = None
        meet_missing = False
        for t in c.tables(*q):
            if prop == "rdp":
                found = t
            elif prop == "rdp1":
                if c.com(t[1], t[2]):
                    found = t
            else:
                m = E.i_meet(t[1], t[2])
                if m < 0:
                    meet_missing = True
                elif m == E.z:
                    found = t
            if found:
                break
        if found is None:
            reason = "meet undefined" if meet_missing else ""
            return PropertyReport(prop, False, _ids(E, q), reason)
        if keep_tables:
            kept[_ids(E, q)] = _ids(E, found)
    return PropertyReport(prop, True, tables=kept)


def check_rdp(E: FinitePEA, ctx=None, keep_tables: bool = False) -> PropertyReport:
    return _rdp_family(E, "rdp", ctx, keep_tables)


def check_rdp1(E: FinitePEA, ctx=None, keep_tables: bool = False) -> PropertyReport:
    return _rdp_family(E, "rdp1", ctx, keep_tables)


def check_rdp2(E: FinitePEA, ctx=None, keep_tables: bool = False) -> PropertyReport:
    return _rdp_family(E, "rdp2", ctx, keep_tables)


def has_table(E: FinitePEA, a1: str, a2: str, b1: str, b2: str) -> bool:
    """Direct scan over all 4-tuples (independent of the corner-driven search)."""
    ix = E.index
    A = E._add
    q = (ix[a1], ix[a2], ix[b1], ix[b2])
    for c in itertools.product(range(E.n), repeat=4):
        if (
            A[c[0]][c[1]] == q[0]
            and A[c[2]][c[3]] == q[1]
            and A[c[0]][c[2]] == q[2]
            and A[c[1]][c[3]] == q[3]
        ):
            return True
    return False


def check_property(E: FinitePEA, prop: str, ctx=None) -> PropertyReport:
    fn = {
        "rip": check_rip,
        "rdp0": check_rdp0,
        "rdp": check_rdp,
        "rdp1": check_rdp1,
        "rdp2": check_rdp2,
    }[prop]
    return fn(E, ctx)


def profile(E: FinitePEA) -> dict[str, PropertyReport]:
    ctx = _Ctx(E)
    return {p: check_property(E, p, ctx) for p in PROPS}


# -- (m,n)-RDP ---------------------------------------------------------------
def sequences_by_sum(E: FinitePEA, m: int) -> dict[int, list[tuple[int, ...]]]:
    A = E._add
    out: dict[int, list[tuple[int, ...]]] = {}

    def rec(prefix, acc):
        if len(prefix) == m:
            out.setdefault(acc, []).append(prefix)
            return
        for x in range(E.n):
            s = A[acc][x]
            if s >= 0:
                rec(prefix + (x,), s)

    rec((), E.z)
    return out


def eq31_holds(E: FinitePEA, M: Sequence[Sequence[int]], ctx: _Ctx | None = None) -> bool:
    """c_{i+1,j}+...+c_{m,j} com c_{i,j+1}+...+c_{i,n} for all i < m, j < n."""
    c = ctx or _Ctx(E)
    A = c.A
    m, n = len(M), len(M[0])
    for i in range(m - 1):
        for j in range(n - 1):
            down = E.z
            for k in range(i + 1, m):
                down = A[down][M[k][j]]
            right = E.z
            for k in range(j + 1, n):
                right = A[right][M[i][k]]
            if down < 0 or right < 0:
                return False
            if not c.com(down, right):
                return False
    return True


def find_matrix(
    E: FinitePEA,
    a: Sequence[int],
    b: Sequence[int],
    with_com: bool = False,
    ctx: _Ctx | None = None,
    budget: int = 1_000_000,
) -> list[list[int]] | None:
    """Backtracking search for an m x n refinement matrix (index level)."""
    c = ctx or _Ctx(E)
    A, rm, up = c.A, c.rm, c.up
    m, n = len(a), len(b)
    M = [[-1] * n for _ in range(m)]
    rp = [E.z] * m
    cp = [E.z] * n
    nodes = [0]

    def place(i, j, x):
        """Try x at (i, j); return undo info or None."""
        r = A[rp[i]][x]
        col = A[cp[j]][x]
        if r < 0 or col < 0:
            return None
        if not (up[r] >> a[i] & 1) or not (up[col] >> b[j] & 1):
            return None
        if j == n - 1 and r != a[i]:
            return None
        if i == m - 1 and col != b[j]:
            return None
        return r, col

    def rec(k):
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceeded("(m,n) search exceeded its node budget")
        if k == m * n:
            return (not with_com) or eq31_holds(E, M, c)
        i, j = divmod(k, n)
        if j == n - 1:
            cands = [rm[rp[i]][a[i]]]
        elif i == m - 1:
            cands = [rm[cp[j]][b[j]]]
        else:
            cands = range(c.n)
        for x in cands:
            if x < 0:
                continue
            res = place(i, j, x)
            if res is None:
                continue
            old = rp[i], cp[j]
            rp[i], cp[j] = res
            M[i][j] = x
            if rec(k + 1):
                return True
            rp[i], cp[j] = old
            M[i][j] = -1
        return False

    return [row[:] for row in M] if rec(0) else None


def check_mn_rdp(E: FinitePEA, m: int, n: int, with_com: bool = False, budget: int = 5_000_000) -> PropertyReport:
    if m < 1 or n < 1:
        raise ValueError("m, n must be >= 1")
    ctx = _Ctx(E)
    prop = f"({m},{n})-rdp" + ("1" if with_com else "")
    left = sequences_by_sum(E, m)
    right = sequences_by_sum(E, n) if n != m else left
    spent = 0
    for s in sorted(left):
        for a in left[s]:
            for b in right.get(s, ()):
                M = find_matrix(E, a, b, with_com, ctx, budget - spent)
                if M is None:
                    return PropertyReport(prop, False, (_ids(E, a), _ids(E, b)))
    return PropertyReport(prop, True)


# -- implication audit ---------------------------------------------------------
CHAIN = (("rdp2", "rdp1"), ("rdp1", "rdp"), ("rdp", "rdp0"), ("rdp0", "rip"), ("rip", "rdp0"))


@dataclass
class AuditReport:
    profile: dict[str, bool]
    violations: list[str]

    @property
    def consistent(self) -> bool:
        return not self.violations


class AuditViolation(AssertionError):
    pass


def implication_audit(E: FinitePEA, fatal: bool = False) -> AuditReport:
    """RDP2 => RDP1 => RDP => RDP0 <=> RIP on this instance."""
    prof = {p: r.holds for p, r in profile(E).items()}
    bad = [f"{p} holds but {q} fails" for p, q in CHAIN if prof[p] and not prof[q]]
    if bad and fatal:
        raise AuditViolation(f"{E!r}: " + "; ".join(bad))
    return AuditReport(prof, bad)
