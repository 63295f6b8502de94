"""n-perfect algebras: slicings, cyclic and central elements, and the functor
G -> Gamma(Z x_lex G, (n, 0)) on objects and morphisms.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .groups import (
    INCONCLUSIVE,
    BudgetExceeded,
    Integers,
    PoGroup,
    Status,
    Verdict,
    _ordered_box,
    certified,
    refuted,
)
from .pea import Check, FinitePEA, IntervalPEA, gamma, maximal_ideals
from .refine import lex_over

Element = Any


@dataclass
class NDecomposition:
    n: int
    slices: list[frozenset[str]]
    maximal_ideal: frozenset[str]

    def slice_of(self, x: str) -> int:
        for i, s in enumerate(self.slices):
            if x in s:
                return i
        raise KeyError(x)

    @property
    def sizes(self) -> list[int]:
        return [len(s) for s in self.slices]

    def report(self) -> str:
        ideal = "{" + ",".join(sorted(self.maximal_ideal)) + "}"
        return f"{self.n}-decomposition slices={'/'.join(map(str, self.sizes))} E0={ideal}"


@dataclass
class NotFound:
    reason: str

    def __bool__(self) -> bool:
        return False

    def report(self) -> str:
        return f"NotFound: {self.reason}"


def verify_decomposition(E: FinitePEA, slices: Sequence[frozenset[str]]) -> Check:
    """Direct scan of the three slicing conditions."""
    n = len(slices) - 1
    seen: set[str] = set()
    for s in slices:
        if seen & s:
            return Check(False, tuple(sorted(seen & s)), "slices overlap")
        seen |= s
    if seen != set(E.ids):
        return Check(False, tuple(sorted(set(E.ids) - seen)), "slices do not cover E")
    for i, j in itertools.product(range(n + 1), repeat=2):
        if i + j >= n:
            continue
        landing = set()
        for x in slices[i]:
            for y in slices[j]:
                s = E.add(x, y)
                if s is None:
                    return Check(False, (x, y), f"E{i}+E{j} has an undefined sum")
                landing.add(next(k for k, sl in enumerate(slices) if s in sl))
        if len(landing) > 1:
            return Check(False, (i, j), f"E{i}+E{j} meets several slices")
    maxi = maximal_ideals(E)
    if len(maxi) != 1 or maxi[0] != frozenset(slices[0]):
        return Check(False, None, "E0 is not the unique maximal ideal")
    return Check(True)


def _levels(E: FinitePEA, base: frozenset[str]) -> list[int]:
    """level(x) = the largest k with x a sum of k elements outside ``base``."""
    A = E._add
    outside = [E.ids[i] not in base for i in range(E.n)]
    order = sorted(range(E.n), key=lambda i: bin(E._down[i]).count("1"))
    level = [0] * E.n
    for x in order:
        if not outside[x]:
            continue
        best = 1
        for y in range(E.n):
            if not outside[y]:
                continue
            for z in range(E.n):
                if outside[z] and A[y][z] == x:
                    best = max(best, 1 + level[z])
        level[x] = best
    return level


def find_n_decomposition(E: FinitePEA, n: int, brute_force: bool = False) -> NDecomposition | NotFound:
    """Slice E as E0, ..., En with E0 the unique maximal ideal.

    The canonical slicing puts x in E_k where k is the longest way of writing
    x as a sum of elements outside E0.  With ``brute_force`` every assignment
    of the remaining elements to slices 1..n is tried instead (|E| <= 10).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    maxi = maximal_ideals(E)
    if len(maxi) != 1:
        return NotFound(f"{len(maxi)} maximal ideals")
    E0 = maxi[0]
    if brute_force:
        return _brute_force(E, n, E0)
    level = _levels(E, E0)
    if max(level) > n:
        return NotFound(f"an element is a sum of {max(level)} elements outside E0")
    slices = [frozenset(E.ids[i] for i in range(E.n) if level[i] == k) for k in range(n + 1)]
    ok = verify_decomposition(E, slices)
    if not ok:
        return NotFound(ok.reason)
    return NDecomposition(n, slices, E0)


def _brute_force(E: FinitePEA, n: int, E0: frozenset[str]) -> NDecomposition | NotFound:
    if E.n > 10:
        raise BudgetExceeded("brute-force slicing is limited to 10 elements")
    rest = [x for x in E.ids if x not in E0]
    for assign in itertools.product(range(1, n + 1), repeat=len(rest)):
        slices = [set(E0)] + [set() for _ in range(n)]
        for x, k in zip(rest, assign):
            slices[k].add(x)
        fs = [frozenset(s) for s in slices]
        if verify_decomposition(E, fs):
            return NDecomposition(n, fs, E0)
    return NotFound("no slicing satisfies the conditions")


# -- cyclic and central elements -------------------------------------------------------
@dataclass(frozen=True)
class CyclicWitness:
    c: Any
    n: int
    complements_agree: bool = True  # c- = c~ = (n-1)c


def find_cyclic(E: FinitePEA, n: int) -> list[CyclicWitness]:
    """Every c with n*c = 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    for c in E.ids:
        if E.nfold(c, n) == E.unit:
            m = E.nfold(c, n - 1)
            agree = E.comp_left(c) == m and E.comp_right(c) == m
            out.append(CyclicWitness(c, n, agree))
    return out


def is_central(G: PoGroup, c: Element, radius: int = 3) -> Verdict:
    """Refuted by a noncommuting element, Certified from group metadata."""
    G.check(c)
    v = G.central_verdict(c)
    if v.status is Status.REFUTED:
        if not G.commutes(c, v.witness):
            return v
    elif v.status is Status.CERTIFIED:
        return v
    for x in _ordered_box(G, radius):
        if not G.commutes(c, x):
            return refuted(x, "c + x != x + c")
    if G.finite:
        return certified("commutes with every element of a finite group")
    return INCONCLUSIVE


@dataclass
class StrongNPerfect:
    algebra: IntervalPEA
    cyclic: CyclicWitness
    n: int
    warnings: list[str] = field(default_factory=list)

    def slice_of(self, x) -> int:
        return x[0]


def build_strong_nperfect(G: PoGroup, n: int) -> StrongNPerfect:
    """Gamma(Z x_lex G, (n,0)) with its cyclic element c = (1, 0)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    L = lex_over(G)
    u = (n, G.zero)
    E = gamma(L, u)
    warnings = []
    if G.directed_verdict().status is not Status.CERTIFIED:
        warnings.append(f"{G.desc}: directedness not certified")
    if not G.caps.torsion_free and not G.trivial:
        warnings.append(f"{G.desc}: not torsion-free (metadata)")
    if not (G.caps.linear or G.caps.lattice):
        warnings.append(f"{G.desc}: no RDP1 oracle available")
    E.warnings.extend(warnings)
    c = (1, G.zero)
    if E.nfold(c, n) != u:
        raise AssertionError("n*c != u")  # cannot happen: n*(1,0) = (n,0)
    central = is_central(L, c)
    if central.status is Status.REFUTED:
        raise AssertionError(f"c is not central: {central.witness}")
    m = E.nfold(c, n - 1)
    agree = E.comp_left(c) == m and E.comp_right(c) == m
    return StrongNPerfect(E, CyclicWitness(c, n, agree), n, warnings)


# -- morphisms and the functor ---------------------------------------------------------------
class HomomorphismError(ValueError):
    pass


@dataclass(frozen=True)
class MatrixMorphism:
    """x -> M x from Z^j to Z^k (rank-1 groups use plain ints)."""

    matrix: tuple[tuple[int, ...], ...]

    @property
    def source_rank(self) -> int:
        return len(self.matrix[0])

    @property
    def target_rank(self) -> int:
        return len(self.matrix)

    def source(self) -> Integers:
        return Integers(self.source_rank)

    def target(self) -> Integers:
        return Integers(self.target_rank)

    def __call__(self, x):
        v = (x,) if self.source_rank == 1 else x
        out = tuple(sum(a * b for a, b in zip(row, v)) for row in self.matrix)
        return out[0] if self.target_rank == 1 else out

    def then(self, other: "MatrixMorphism") -> "MatrixMorphism":
        """other after self."""
        rows = tuple(
            tuple(sum(other.matrix[i][k] * self.matrix[k][j] for k in range(self.target_rank))
                  for j in range(self.source_rank))
            for i in range(other.target_rank)
        )
        return MatrixMorphism(rows)

    @classmethod
    def identity(cls, rank: int) -> "MatrixMorphism":
        return cls(tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank)))


def parse_morphism(text: str) -> MatrixMorphism:
    if not text.startswith("matrix:"):
        raise ValueError(f"expected 'matrix:[[...],...]', got {text!r}")
    rows = json.loads(text[len("matrix:"):])
    if not rows or not all(isinstance(r, list) and r for r in rows):
        raise ValueError("matrix must be a nonempty list of nonempty rows")
    if len({len(r) for r in rows}) != 1 or not all(isinstance(v, int) for r in rows for v in r):
        raise ValueError("matrix rows must be integer lists of equal length")
    return MatrixMorphism(tuple(tuple(r) for r in rows))


def check_po_homomorphism(h: Callable, G: PoGroup, H: PoGroup, radius: int = 2) -> Check:
    """Additivity and cone preservation on a box of G."""
    pts = G.box(radius)
    for x in pts:
        if G.in_cone(x) and not H.in_cone(h(x)):
            return Check(False, (x,), "positive element mapped outside the cone")
    for x, y in itertools.product(pts, repeat=2):
        if h(G.add(x, y)) != H.add(h(x), h(y)):
            return Check(False, (x, y), "h(x+y) != h(x)+h(y)")
    return Check(True)


def interval_points(G: PoGroup, n: int, count: int, seed: int = 0, radius: int = 10) -> list:
    """Random elements of Gamma(Z x_lex G, (n,0))."""
    rng = random.Random(seed)
    E = gamma(lex_over(G), (n, G.zero))
    out = []
    while len(out) < count:
        x = (rng.randint(0, n), G.random_element(rng, radius))
        if E.contains(x):
            out.append(x)
    return out


def functor_on_morphism(
    h: Callable, G: PoGroup, H: PoGroup, n: int, samples: int = 50, seed: int = 0, check: bool = True
) -> Callable:
    """The algebra map (i, g) -> (i, h(g)), with g read off from (i c) / x."""
    LG, LH = lex_over(G), lex_over(H)
    if check:
        ok = check_po_homomorphism(h, G, H)
        if not ok:
            raise HomomorphismError(f"not a po-group homomorphism: {ok.reason} at {ok.witness}")

    def F(x):
        i = x[0]
        ic = (i, G.zero)  # i-fold sum of c = (1, 0)
        _, g = LG.rsub(ic, x)
        return (i, h(g))

    if check:
        EG = gamma(LG, (n, G.zero))
        EH = gamma(LH, (n, H.zero))
        if F(EG.unit) != EH.unit:
            raise HomomorphismError("unit not preserved")
        pts = interval_points(G, n, samples, seed)
        for x, y in itertools.product(pts, repeat=2):
            s = EG.add(x, y)
            if s is not None and EH.add(F(x), F(y)) != F(s):
                raise HomomorphismError(f"sum not preserved at {x}, {y}")
    return F


@dataclass
class FunctorLawReport:
    identity: bool
    composition: bool
    faithful_witness: Any
    points: int

    @property
    def ok(self) -> bool:
        return self.identity and self.composition and self.faithful_witness is not None


def check_functor_laws(n: int = 2, samples: int = 50, seed: int = 0, hom_samples: int = 20) -> FunctorLawReport:
    """E_n(id) = id and E_n(h2 . h1) = E_n(h2) . E_n(h1) for Z -> Z^2 -> Z.

    Each functor image is first spot-checked as an algebra map on
    ``hom_samples`` points; the laws are then compared on ``samples`` points.
    """
    Z, Z2 = Integers(1), Integers(2)
    diag = MatrixMorphism(((1,), (1,)))
    total = MatrixMorphism(((1, 1),))
    pts = interval_points(Z, n, samples, seed)
    ident = functor_on_morphism(MatrixMorphism.identity(1), Z, Z, n, hom_samples, seed)
    identity_ok = all(ident(x) == x for x in pts)
    F1 = functor_on_morphism(diag, Z, Z2, n, hom_samples, seed)
    F2 = functor_on_morphism(total, Z2, Z, n, hom_samples, seed)
    F21 = functor_on_morphism(diag.then(total), Z, Z, n, hom_samples, seed)
    composition_ok = all(F21(x) == F2(F1(x)) for x in pts)
    double = functor_on_morphism(MatrixMorphism(((2,),)), Z, Z, n, hom_samples, seed)
    witness = next(((x, ident(x), double(x)) for x in pts if ident(x) != double(x)), None)
    return FunctorLawReport(identity_ok, composition_ok, witness, len(pts))
