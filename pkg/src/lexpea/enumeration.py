"""Small-model enumeration of pseudo effect algebras up to isomorphism.

Elements are ``0..n-1`` with 0 the zero and ``n-1`` the unit; only the block
of sums between "middle" elements is free (sums with 0 are forced, sums with
1 are undefined by PE4).  The backtracking search fills the block row by row
and prunes with consequences of the axioms:

* cancellation: rows and columns are injective, and ``x + y`` is neither
  ``x`` nor ``y``;
* PE2: every row and every column of the block contains the unit exactly once;
* PE1 on every triple whose four cells are already fixed.

Leaves are checked with :func:`lexpea.pea.check_axioms` and deduplicated by a
canonical form: the lexicographically least block over all relabellings of
the middle elements.
"""
from __future__ import annotations

import itertools
from typing import Iterator

from .groups import BudgetExceeded
from .pea import FinitePEA, check_axioms

MAX_SIZE = 6


def _full_table(n: int, block: dict[tuple[int, int], int]) -> list[list[int]]:
    A = [[-1] * n for _ in range(n)]
    for x in range(n):
        A[0][x] = x
        A[x][0] = x
    for (x, y), v in block.items():
        A[x][y] = v
    return A


def canonical_key(n: int, A: list[list[int]]) -> tuple[int, ...]:
    mid = list(range(1, n - 1))
    best = None
    for perm in itertools.permutations(mid):
        # perm[k] is the new label of old element mid[k]
        relabel = {0: 0, n - 1: n - 1}
        relabel.update({old: new for old, new in zip(mid, perm)})
        inv = {v: k for k, v in relabel.items()}
        key = tuple(
            relabel[A[inv[x]][inv[y]]] if A[inv[x]][inv[y]] >= 0 else -1
            for x in mid
            for y in mid
        )
        if best is None or key < best:
            best = key
    return best if best is not None else ()


def _from_key(n: int, key: tuple[int, ...]) -> FinitePEA:
    mid = list(range(1, n - 1))
    block = {(x, y): v for (x, y), v in zip(itertools.product(mid, mid), key) if v >= 0}
    A = _full_table(n, block)
    return FinitePEA.from_indices(n, A, name=f"E{n}")


def _search(n: int) -> Iterator[list[list[int]]]:
    u = n - 1
    mid = list(range(1, n - 1))
    cells = list(itertools.product(mid, mid))
    A = _full_table(n, {})
    if not mid:
        yield [row[:] for row in A]
        return
    k = len(mid)
    row_used = {x: set() for x in mid}
    col_used = {y: set() for y in mid}
    UNSET = -2
    for x, y in cells:
        A[x][y] = UNSET

    def val(x, y):
        return A[x][y]

    def pe1_ok() -> bool:
        for a, b, c in itertools.product(mid, repeat=3):
            ab = val(a, b)
            if ab == UNSET:
                continue
            if ab < 0:
                lhs = -1
            else:
                lhs = val(ab, c)
                if lhs == UNSET:
                    continue
            bc = val(b, c)
            if bc == UNSET:
                continue
            if bc < 0:
                rhs = -1
            else:
                rhs = val(a, bc)
                if rhs == UNSET:
                    continue
            if lhs != rhs:
                return False
        return True

    def rec(idx):
        if idx == len(cells):
            yield [row[:] for row in A]
            return
        x, y = cells[idx]
        last_in_row = y == mid[-1]
        last_in_col = x == mid[-1]
        for v in [-1] + mid + [u]:
            if v >= 0:
                if v in (x, y) or v in row_used[x] or v in col_used[y]:
                    continue
            if last_in_row and v != u and u not in row_used[x]:
                continue
            if last_in_col and v != u and u not in col_used[y]:
                continue
            A[x][y] = v
            if v >= 0:
                row_used[x].add(v)
                col_used[y].add(v)
            if pe1_ok():
                yield from rec(idx + 1)
            if v >= 0:
                row_used[x].discard(v)
                col_used[y].discard(v)
            A[x][y] = UNSET

    yield from rec(0)


def enumerate_peas(max_size: int) -> Iterator[FinitePEA]:
    """All PEAs with 2..max_size elements (0 != 1), one per isomorphism class."""
    if max_size > MAX_SIZE:
        raise BudgetExceeded(f"max_size {max_size} exceeds the guard {MAX_SIZE}")
    for n in range(2, max_size + 1):
        keys = set()
        for A in _search(n):
            E = FinitePEA.from_indices(n, A)
            if not check_axioms(E):
                continue
            keys.add(canonical_key(n, A))
        for i, key in enumerate(sorted(keys)):
            E = _from_key(n, key)
            E.name = f"E{n}.{i}"
            yield E


def brute_force_peas(n: int) -> list[tuple[int, ...]]:
    """Independent oracle: canonical keys of all PEAs of size n.

    Only PE2 (one unit per block row and column) is used to cut the raw
    product of table entries; everything else is left to ``check_axioms``.
    """
    u = n - 1
    mid = list(range(1, n - 1))
    k = len(mid)
    values = [-1] + mid + [u]
    rows = [r for r in itertools.product(values, repeat=k) if r.count(u) == 1] if k else [()]
    keys = set()
    for block_rows in itertools.product(rows, repeat=k):
        if k and any([r[j] for r in block_rows].count(u) != 1 for j in range(k)):
            continue
        block = {(mid[i], mid[j]): v for i, r in enumerate(block_rows) for j, v in enumerate(r) if v >= 0}
        A = _full_table(n, block)
        if check_axioms(FinitePEA.from_indices(n, A)):
            keys.add(canonical_key(n, A))
    return sorted(keys)
