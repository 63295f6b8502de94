import itertools

import pytest
from hypothesis import given, strategies as st

from lexpea.descriptors import parse_group
from lexpea.enumeration import enumerate_peas
from lexpea.groups import BudgetExceeded, Integers, ex29_group
from lexpea.pea import (
    FinitePEA,
    MalformedTable,
    NotBelow,
    PeaParseError,
    chain,
    check_axioms,
    comp_left,
    comp_right,
    dumps_pea,
    gamma,
    ideals,
    is_commutative,
    is_homomorphism,
    left_minus,
    loads_pea,
    materialize,
    maximal_ideals,
    nfold,
    pea_add,
    right_minus,
)

CATALOG = list(enumerate_peas(5))


def test_chains_valid():
    for n in range(1, 7):
        assert check_axioms(chain(n))


def test_gamma_z_is_chain():
    C = materialize(gamma(Integers(1), 3))
    assert C.elements == ["0", "1", "2", "3"]
    assert C.table() == chain(3).table()


def test_diamond_and_lex_valid(diamond, lex_s3):
    assert check_axioms(diamond)
    assert len(lex_s3) == 14 and check_axioms(lex_s3)


def _mutations(E):
    """Every single-entry change: delete a defined sum or redirect it."""
    table = E.table()
    for key in table:
        t = dict(table)
        del t[key]
        yield t
        for z in E.ids:
            if z != table[key]:
                t = dict(table)
                t[key] = z
                yield t
    for key in itertools.product(E.ids, repeat=2):
        if key not in table:
            for z in E.ids:
                t = dict(table)
                t[key] = z
                yield t


def naive_axioms(ids, t, zero, unit) -> bool:
    """Direct transcription of PE1-PE4 over a dict table."""

    def add(a, b):
        return None if a is None or b is None else t.get((a, b))

    for a, b, c in itertools.product(ids, repeat=3):
        if add(add(a, b), c) != add(a, add(b, c)):
            return False
    for a in ids:
        if sum(add(a, d) == unit for d in ids) != 1 or sum(add(e, a) == unit for e in ids) != 1:
            return False
    for (a, b), s in t.items():
        if not any(add(d, a) == s for d in ids) or not any(add(b, e) == s for e in ids):
            return False
    for a in ids:
        if a != zero and (add(a, unit) is not None or add(unit, a) is not None):
            return False
    return True


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_mutations_agree_with_naive_axioms(n):
    C = chain(n)
    survivors = 0
    for t in _mutations(C):
        rep = check_axioms(FinitePEA(C.ids, t, C.zero, C.unit))
        assert rep.valid == naive_axioms(C.ids, t, C.zero, C.unit)
        if rep.valid:
            survivors += 1
        else:
            assert rep.axiom in {"PE1", "PE2", "PE3", "PE4"} and rep.witness
    # deleting 1+1=2 from the 4-chain leaves the four-element Boolean algebra
    assert survivors == (1 if n == 3 else 0)


def test_deleting_one_plus_two(c4):
    t = c4.table()
    del t["1", "2"]
    rep = check_axioms(FinitePEA(c4.ids, t, "0", "3"))
    assert rep.axiom in ("PE1", "PE2", "PE3")


def test_malformed_table():
    with pytest.raises(MalformedTable):
        FinitePEA(["0", "1"], {("0", "0"): "9"}, "0", "1")
    with pytest.raises(MalformedTable):
        FinitePEA(["0", "1"], {}, "0", "2")


def test_derived_ops_chain(c4):
    assert comp_left(c4, "1") == "2" and comp_right(c4, "1") == "2"
    assert pea_add(c4, "2", "2") is None
    assert left_minus(c4, "1", "3") == "2" and right_minus(c4, "1", "3") == "2"
    assert nfold(c4, "1", 3) == "3" and nfold(c4, "1", 0) == "0" and nfold(c4, "2", 2) is None
    with pytest.raises(NotBelow):
        right_minus(c4, "3", "1")


def test_lex_s3_complements(lex_s3):
    G = parse_group("finite:S3")
    for g in G.labels:
        a = f"(1,{g})" if g != "0" else "(1,0)"
        inv = G.neg(g)
        want = f"(2,{inv})" if inv != "0" else "(2,0)"
        assert comp_left(lex_s3, a) == want == comp_right(lex_s3, a)


def test_commutativity(c4, lex_s3, lex_s3_small):
    assert is_commutative(c4)
    r = is_commutative(lex_s3)
    assert not r
    a, b = r.witness
    assert lex_s3.add(a, b) != lex_s3.add(b, a)
    assert not is_commutative(lex_s3).ok
    assert pea_add(lex_s3, "(1,(12))", "(1,(13))") != pea_add(lex_s3, "(1,(13))", "(1,(12))")
    assert len(lex_s3_small) == 8 and is_commutative(lex_s3_small)


def test_ideals(c4, diamond, lex_s3):
    assert ideals(c4) == [frozenset({"0"})]
    assert maximal_ideals(c4) == [frozenset({"0"})]
    assert len(ideals(diamond)) == 3
    assert len(maximal_ideals(diamond)) == 2
    assert maximal_ideals(lex_s3) == [frozenset({"(0,0)"})]


def test_homomorphisms(c4):
    ident = {x: x for x in c4.ids}
    assert is_homomorphism(ident, c4, c4)
    c2 = chain(1)
    f = {"0": "0", "1": "0", "2": "0", "3": "1"}
    r = is_homomorphism(f, c4, c2)
    assert not r and r.witness == ("1", "2")


def test_gamma_membership():
    E = gamma(parse_group("lex(Z,finite:S3)"), (3, "0"))
    assert E.contains((2, "(12)")) and not E.contains((0, "(12)"))
    assert sorted(gamma(ex29_group(), (1, 0)).elements()) == [(0, 0), (1, 0)]
    with pytest.raises(ValueError):
        gamma(Integers(1), -1)


def test_materialize_budget():
    with pytest.raises(BudgetExceeded):
        materialize(gamma(parse_group("lex(Z,Z)"), (1, 0)))


def test_nfold_cyclic_element():
    for n in range(1, 5):
        E = gamma(parse_group("lex(Z,heis)"), (n, (0, 0, 0)))
        assert E.nfold((1, (0, 0, 0)), n) == (n, (0, 0, 0))


def test_file_round_trip(lex_s3):
    F = loads_pea(dumps_pea(lex_s3))
    assert F.table() == lex_s3.table() and F.zero == lex_s3.zero and F.unit == lex_s3.unit


@pytest.mark.parametrize(
    "text",
    [
        "pea v2\n",
        "pea v1\nelements: 0 1\nzero: 0\n",
        "pea v1\nelements: 0 1\nzero: 0\nunit: 1\nadd: 0 1 1\nadd: 0 1 0\n",
        "pea v1\nelements: 0 1\nzero: 0\nunit: 1\nadd: 0 1 7\n",
        "pea v1\nelements: 0 1\nzero: 0\nunit: 1\nbogus: 1\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(PeaParseError):
        loads_pea(text)


def test_duplicate_consistent_triple_accepted():
    E = loads_pea("pea v1\nelements: 0 1\nzero: 0\nunit: 1\nadd: 0 0 0\nadd: 0 1 1\nadd: 0 1 1\nadd: 1 0 1\n")
    assert check_axioms(E)


# -- laws over every small algebra ------------------------------------------------
@pytest.mark.parametrize("E", CATALOG, ids=lambda E: E.name)
def test_order_is_partial_order_with_bounds(E):
    ids = E.ids
    for a in ids:
        assert E.leq(a, a) and E.leq(E.zero, a) and E.leq(a, E.unit)
    for a, b in itertools.product(ids, repeat=2):
        if E.leq(a, b) and E.leq(b, a):
            assert a == b
    for a, b, c in itertools.product(ids, repeat=3):
        if E.leq(a, b) and E.leq(b, c):
            assert E.leq(a, c)


@pytest.mark.parametrize("E", CATALOG, ids=lambda E: E.name)
def test_two_sided_order(E):
    for a, b in itertools.product(E.ids, repeat=2):
        right = any(E.add(a, c) == b for c in E.ids)
        left = any(E.add(d, a) == b for d in E.ids)
        assert right == left == E.leq(a, b)


@pytest.mark.parametrize("E", CATALOG, ids=lambda E: E.name)
def test_complement_identities(E):
    for a in E.ids:
        assert comp_right(E, comp_left(E, a)) == a
        assert comp_left(E, comp_right(E, a)) == a
        assert E.add(a, comp_right(E, a)) == E.unit == E.add(comp_left(E, a), a)


@pytest.mark.parametrize("E", CATALOG, ids=lambda E: E.name)
def test_minus_identities(E):
    for a, b in itertools.product(E.ids, repeat=2):
        if E.leq(a, b):
            assert E.add(left_minus(E, a, b), a) == b
            assert E.add(a, right_minus(E, a, b)) == b


@given(st.integers(0, 4), st.integers(-3, 3), st.integers(0, 4), st.integers(-3, 3))
def test_gamma_materialize_agree(i, g, j, h):
    G = parse_group("lex(Z,finite:C4)")
    E = gamma(G, (4, "0"))
    F = materialize(E)
    x, y = (i, str(g % 4)), (j, str(h % 4))
    if not (E.contains(x) and E.contains(y)):
        return
    fx, fy = G.format(x), G.format(y)
    s = E.add(x, y)
    assert F.add(fx, fy) == (None if s is None else G.format(s))
    assert F.leq(fx, fy) == E.leq(x, y)
