import itertools

import pytest

from lexpea.enumeration import enumerate_peas
from lexpea.groups import BudgetExceeded, ex29_group, ex210_group
from lexpea.pea import FinitePEA, chain, gamma, is_commutative, materialize
from lexpea.riesz import (
    PROPS,
    AuditViolation,
    check_mn_rdp,
    check_rdp,
    check_rdp0,
    check_rdp1,
    check_rdp2,
    check_rip,
    com,
    has_table,
    implication_audit,
    profile,
)

CATALOG = list(enumerate_peas(5)) + [chain(n) for n in range(1, 7)]


# -- naive transcriptions of the definitions ------------------------------------------
def n_leq(E, a, b):
    return any(E.add(a, c) == b for c in E.ids)


def n_com(E, a, b):
    xs = [x for x in E.ids if n_leq(E, x, a)]
    ys = [y for y in E.ids if n_leq(E, y, b)]
    return all(E.add(x, y) == E.add(y, x) for x in xs for y in ys)


def n_meet(E, a, b):
    lows = [x for x in E.ids if n_leq(E, x, a) and n_leq(E, x, b)]
    top = [m for m in lows if all(n_leq(E, x, m) for x in lows)]
    return top[0] if top else None


def n_tables(E, a1, a2, b1, b2):
    for c in itertools.product(E.ids, repeat=4):
        if (E.add(c[0], c[1]), E.add(c[2], c[3]), E.add(c[0], c[2]), E.add(c[1], c[3])) == (a1, a2, b1, b2):
            yield c


def n_quads(E):
    for a1, a2, b1, b2 in itertools.product(E.ids, repeat=4):
        s = E.add(a1, a2)
        if s is not None and s == E.add(b1, b2):
            yield a1, a2, b1, b2


def naive(E, prop):
    ids = E.ids
    if prop == "rip":
        return all(
            any(all(n_leq(E, a, c) for a in (a1, a2)) and all(n_leq(E, c, b) for b in (b1, b2)) for c in ids)
            for a1, a2, b1, b2 in itertools.product(ids, repeat=4)
            if all(n_leq(E, a, b) for a in (a1, a2) for b in (b1, b2))
        )
    if prop == "rdp0":
        return all(
            any(E.add(x, y) == a for x in ids if n_leq(E, x, b) for y in ids if n_leq(E, y, c))
            for a, b, c in itertools.product(ids, repeat=3)
            if E.add(b, c) is not None and n_leq(E, a, E.add(b, c))
        )
    side = {
        "rdp": lambda t: True,
        "rdp1": lambda t: n_com(E, t[1], t[2]),
        "rdp2": lambda t: n_meet(E, t[1], t[2]) == E.zero,
    }[prop]
    return all(any(side(t) for t in n_tables(E, *q)) for q in n_quads(E))


@pytest.mark.parametrize("E", CATALOG, ids=lambda E: E.name)
def test_checkers_match_naive_definitions(E):
    prof = profile(E)
    for p in PROPS:
        assert prof[p].holds == naive(E, p), p


def test_checkers_match_naive_on_lex_s3_small(lex_s3_small):
    prof = profile(lex_s3_small)
    for p in ("rip", "rdp0", "rdp"):
        assert prof[p].holds == naive(lex_s3_small, p)


@pytest.mark.parametrize("E", CATALOG, ids=lambda E: E.name)
def test_failure_witnesses_have_no_table(E):
    for p in ("rdp", "rdp1", "rdp2"):
        r = profile(E)[p]
        if not r.holds:
            q = r.witness
            assert E.add(q[0], q[1]) == E.add(q[2], q[3]) is not None
            if p == "rdp":
                assert not has_table(E, *q)


@pytest.mark.parametrize("E", CATALOG, ids=lambda E: E.name)
def test_stored_tables_revalidate(E):
    for fn, side in ((check_rdp, None), (check_rdp1, "com")):
        r = fn(E, keep_tables=True)
        if not r.holds:
            continue
        for (a1, a2, b1, b2), (c11, c12, c21, c22) in r.tables.items():
            assert E.add(c11, c12) == a1 and E.add(c21, c22) == a2
            assert E.add(c11, c21) == b1 and E.add(c12, c22) == b2
            if side:
                assert com(E, c12, c21)


def test_com_examples(c4, lex_s3):
    assert com(c4, "0", "3") and com(c4, "1", "2")
    assert not com(lex_s3, "(1,(12))", "(1,(13))")
    assert com(lex_s3, "(0,0)", "(2,(12))")


def test_chain_and_diamond(c4, diamond):
    assert all(r.holds for r in profile(c4).values())
    assert check_rip(diamond).holds and check_rdp2(diamond).holds


@pytest.mark.parametrize("G", [ex29_group(), ex210_group()], ids=["gap2", "gap1"])
def test_two_element_algebras(G):
    E = materialize(gamma(G, (1, 0)))
    assert len(E) == 2
    assert all(r.holds for r in profile(E).values())


def test_lex_s3_rdp_fails(lex_s3):
    r = check_rdp(lex_s3)
    assert not r.holds and not has_table(lex_s3, *r.witness)
    # the conjugation witness (1,g)+(1,h) = (1,h)+(1,h^-1 g h) for g=(12), h=(13)
    q = ("(1,(12))", "(1,(13))", "(1,(13))", "(1,(23))")
    assert lex_s3.add(q[0], q[1]) == lex_s3.add(q[2], q[3])
    assert not has_table(lex_s3, *q)
    assert r.line().startswith("rdp: FAILS witness=")


def test_rdp2_meet_undefined_reason():
    # two atoms a, b below both c and d: {a, b} has no meet-compatible structure
    ids = ["0", "a", "b", "c", "d", "1"]
    t = {("0", x): x for x in ids}
    t.update({(x, "0"): x for x in ids})
    t.update({("a", "c"): "1", ("c", "a"): "1", ("b", "d"): "1", ("d", "b"): "1"})
    E = FinitePEA(ids, t, "0", "1")
    r = check_rdp2(E)
    assert r.holds == naive(E, "rdp2")


@pytest.mark.parametrize("E", CATALOG, ids=lambda E: E.name)
def test_mn_22_agrees(E):
    assert check_mn_rdp(E, 2, 2).holds == check_rdp(E).holds
    assert check_mn_rdp(E, 2, 2, with_com=True).holds == check_rdp1(E).holds


@pytest.mark.parametrize("E", [e for e in CATALOG if is_commutative(e)], ids=lambda E: E.name)
def test_commutative_rdp_equals_rdp1(E):
    assert check_rdp(E).holds == check_rdp1(E).holds


def test_mn_examples(c4):
    assert check_mn_rdp(c4, 1, 3).holds
    assert check_mn_rdp(c4, 2, 3).holds
    assert check_mn_rdp(c4, 3, 3, with_com=True).holds
    with pytest.raises(ValueError):
        check_mn_rdp(c4, 0, 2)
    with pytest.raises(BudgetExceeded):
        check_mn_rdp(chain(6), 3, 3, budget=10)


def test_audit_consistent_cases(c4, lex_s3):
    assert implication_audit(c4).consistent
    rep = implication_audit(lex_s3)
    assert rep.consistent and not any(rep.profile.values())


def test_audit_flags_rip_without_rdp0():
    # 0 < a, b < 1 with a+a = 1 = b+b: a lattice, so RIP holds, but a <= b+b is
    # not a sum of pieces below b
    ids = ["0", "a", "b", "1"]
    t = {("0", x): x for x in ids}
    t.update({(x, "0"): x for x in ids})
    t.update({("a", "a"): "1", ("b", "b"): "1"})
    E = FinitePEA(ids, t, "0", "1")
    assert naive(E, "rip") and not naive(E, "rdp0")
    rep = implication_audit(E)
    assert rep.violations == ["rip holds but rdp0 fails"]
    with pytest.raises(AuditViolation):
        implication_audit(E, fatal=True)


def test_report_json(lex_s3):
    j = check_rdp(lex_s3).to_json()
    assert j["property"] == "rdp" and j["holds"] is False and len(j["witness"]) == 4
    assert check_rip(chain(2)).to_json() == {"property": "rip", "holds": True, "witness": None, "reason": None}
