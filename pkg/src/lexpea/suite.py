"""Fixed verification suite: worked examples and seeded lift batches."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from .groups import (
    ConeGroup,
    Integers,
    PoGroup,
    Status,
    Verdict,
    certified,
    ex29_group,
    ex210_group,
    heisenberg,
    refuted,
    symmetric3,
    INCONCLUSIVE,
)
from .nperfect import NDecomposition, find_n_decomposition
from .pea import chain, check_axioms, gamma, materialize
from .refine import (
    builtin_oracle,
    com_sampled,
    interval_group_oracle,
    lex_over,
    lift_group_refine,
    lift_pea_refine,
    random_lex_quadruples,
    validate_table,
)
from .riesz import check_rdp, check_rdp1, check_rdp2, has_table


def rip_verdict(G: PoGroup, lows, highs) -> Verdict:
    """Does some c satisfy lows <= c <= highs?

    CERTIFIED carries an interpolant; REFUTED is only returned for cone
    groups, where the search runs over every branch of the cone's case split.
    """
    for a in lows:
        for b in highs:
            if not G.leq(a, b):
                raise ValueError(f"{G.format(a)} is not below {G.format(b)}")
    c = G.interpolate(lows, highs)
    if c is not None:
        return certified(f"interpolant {G.format(c)}")
    if isinstance(G, ConeGroup):
        reason = G.notes.get("region", "exhaustive search over the cone's branches")
        return refuted((tuple(lows), tuple(highs)), reason)
    return INCONCLUSIVE


@dataclass
class Item:
    name: str
    passed: bool
    detail: str = ""
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def _cone_example(G: ConeGroup, label: str, lows, highs) -> Item:
    E = gamma(G, (1, 0))
    elems = sorted(E.elements())
    F = materialize(E)
    v = rip_verdict(G, lows, highs)
    alg = {p.__name__[6:]: p(F).holds for p in (check_rdp, check_rdp1, check_rdp2)}
    ok = (
        elems == [(0, 0), (1, 0)]
        and v.status is Status.REFUTED
        and bool(check_axioms(F))
        and all(alg.values())
    )
    w = ",".join(map(G.format, lows)) + " <= " + ",".join(map(G.format, highs))
    detail = f"|Gamma|={len(elems)} RIP refuted for {w}; algebra " + " ".join(
        f"{k}={'HOLDS' if h else 'FAILS'}" for k, h in alg.items()
    )
    return Item(label, ok, detail, {"elements": elems, "rip": v.status.value, "certificate": v.reason})


def lift_batch(G: PoGroup, seed: int, count: int, route: str = "rdp", check_com: bool = False) -> Item:
    """Validate ``count`` seeded lifts over Z x_lex G."""
    L = lex_over(G)
    O = builtin_oracle(G)
    refine: Callable
    if route == "rdp":
        refine = lambda *q: lift_group_refine(O, G, *q)  # noqa: E731
    else:
        refine = interval_group_oracle(O, G).refine
    bad, com_bad = [], []
    for q in random_lex_quadruples(G, seed, count):
        t = refine(*q)
        if validate_table(L, q, t):
            bad.append(q)
        if check_com and not com_sampled(L, t.c12, t.c21)[0]:
            com_bad.append(q)
    ok = not bad and not com_bad
    detail = f"{count - len(bad)}/{count} validated"
    if check_com:
        detail += f", com confirmed on {count - len(com_bad)}/{count}"
    return Item(f"lift {L.desc} seed={seed} route={route}", ok, detail, {"failures": bad + com_bad})


def run_suite(seed: int = 42) -> list[Item]:
    items = [
        _cone_example(ex29_group(), "sum-cone gap 2", [(1, 0), (0, 1)], [(0, 3), (3, 0)]),
        _cone_example(ex210_group(), "sum-cone gap 1", [(1, 0), (0, 1)], [(0, 2), (2, 0)]),
    ]
    Z = Integers(1)
    O = builtin_oracle(Z)
    t = lift_pea_refine(O, Z, (1, -2), (0, 1), (0, 3), (1, -4))
    items.append(Item(
        "interval lift (1,-2)+(0,1)=(0,3)+(1,-4)",
        t.entries() == ((0, 3), (1, -5), (0, 0), (0, 1)),
        str(t.entries()),
    ))
    t = lift_group_refine(O, Z, (2, -1), (1, 5), (1, 2), (2, 2))
    items.append(Item(
        "cone lift (2,-1)+(1,5)=(1,2)+(2,2)",
        t.entries() == ((1, -1), (1, 0), (0, 3), (1, 2)),
        str(t.entries()),
    ))
    items.append(lift_batch(Z, seed, 200))
    items.append(lift_batch(Integers(2), seed, 500))
    items.append(lift_batch(heisenberg(), seed, 200, route="extend", check_com=True))

    S = materialize(gamma(lex_over(symmetric3()), (3, "0")))
    r = check_rdp(S)
    w = r.witness
    items.append(Item(
        "RDP fails on Gamma(Z x_lex S3,(3,0))",
        not r.holds and w is not None and not has_table(S, *w),
        r.line(),
    ))
    d = find_n_decomposition(S, 3)
    items.append(Item(
        "3-decomposition of Gamma(Z x_lex S3,(3,0))",
        isinstance(d, NDecomposition) and d.sizes == [1, 6, 6, 1] and d.maximal_ideal == {"(0,0)"},
        d.report(),
    ))
    D = materialize(gamma(Integers(2), (1, 1)))
    d = find_n_decomposition(D, 1)
    items.append(Item("diamond is not 1-perfect", not d, d.report()))
    chains_ok = all(
        isinstance(x := find_n_decomposition(chain(n), n), NDecomposition) and x.sizes == [1] * (n + 1)
        for n in range(1, 7)
    )
    items.append(Item("chains Gamma(Z,n) are n-perfect", chains_ok, "n=1..6"))
    return items
