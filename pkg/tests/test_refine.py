import random

import pytest
from hypothesis import given, strategies as st

from lexpea.enumeration import enumerate_peas
from lexpea.groups import CapabilityError, Integers, heisenberg, symmetric3
from lexpea.pea import chain
from lexpea.refine import (
    Bounded,
    InvalidQuadruple,
    RefinementTable,
    builtin_oracle,
    com_sampled,
    equal_sum_sequences,
    extend_to_group,
    finite_oracle,
    format_table,
    interval_group_oracle,
    lex_over,
    lift_group_refine,
    lift_pea_refine,
    mn_refine,
    parse_quadruple,
    random_lex_quadruple,
    random_lex_quadruples,
    validate_matrix,
    validate_table,
)
from lexpea.riesz import _Ctx, check_rdp, check_rdp1, eq31_holds

Z, Z2, H = Integers(1), Integers(2), heisenberg()


# -- worked examples ---------------------------------------------------------------
def test_integers_oracle():
    t = builtin_oracle(Z).refine(3, 2, 4, 1)
    assert t.entries() == (3, 0, 1, 1) and t.com


def test_lattice_oracle():
    q = ((1, 1), (1, 0), (1, 0), (1, 1))
    t = builtin_oracle(Z2).refine(*q)
    assert t.entries() == ((1, 0), (0, 1), (0, 0), (1, 0))
    assert validate_table(Z2, q, t) == []


def test_oracle_needs_linear_or_lattice():
    with pytest.raises(CapabilityError):
        builtin_oracle(symmetric3())


@pytest.mark.parametrize(
    "q, want",
    [
        (((1, -2), (0, 1), (0, 3), (1, -4)), ((0, 3), (1, -5), (0, 0), (0, 1))),
        (((1, -1), (0, 2), (1, -2), (0, 3)), ((1, -2), (0, 1), (0, 0), (0, 2))),
    ],
)
def test_interval_lift_examples(q, want):
    t = lift_pea_refine(builtin_oracle(Z), Z, *q)
    assert t.entries() == want
    assert validate_table(Bounded(lex_over(Z), (1, 0)), q, t) == []


def test_cone_lift_examples():
    O = builtin_oracle(Z)
    t = lift_group_refine(O, Z, (2, -1), (1, 5), (1, 2), (2, 2))
    assert t.entries() == ((1, -1), (1, 0), (0, 3), (1, 2)) and not t.com
    t = lift_group_refine(O, Z, (1, 4), (0, 1), (0, 2), (1, 3))
    assert t.entries() == ((0, 2), (1, 2), (0, 0), (0, 1)) and t.com


def test_invalid_quadruples():
    O = builtin_oracle(Z)
    with pytest.raises(InvalidQuadruple):
        lift_group_refine(O, Z, (1, 0), (1, 0), (1, 0), (1, 1))
    with pytest.raises(InvalidQuadruple):
        lift_group_refine(O, Z, (0, -1), (1, 1), (1, 0), (0, 0))
    with pytest.raises(InvalidQuadruple):
        lift_pea_refine(O, Z, (2, 0), (0, 0), (2, 0), (0, 0))


def test_parse_and_format():
    L = lex_over(Z)
    q = parse_quadruple("(2,-1);(1,5)=(1,2);(2,2)", L)
    assert q == ((2, -1), (1, 5), (1, 2), (2, 2))
    t = lift_group_refine(builtin_oracle(Z), Z, *q)
    assert format_table(L, t) == "(1,-1);(1,0);(0,3);(1,2)"
    with pytest.raises(InvalidQuadruple):
        parse_quadruple("(1,0);(1,0)", L)


def test_validate_reports_problems():
    q = (3, 2, 4, 1)
    assert validate_table(Z, q, RefinementTable(3, 0, 1, 1)) == []
    assert validate_table(Z, q, RefinementTable(4, -1, 0, 2))
    assert validate_table(Z, q, RefinementTable(3, 0, 1, 2))


# -- lifts at random ---------------------------------------------------------------------
def _interval_quads(G, seed, count):
    """Random a1 + a2 = b1 + b2 inside [0, (1,0)] of Z x_lex G."""
    L, rng, out = lex_over(G), random.Random(seed), []
    unit = (1, G.zero)
    while len(out) < count:
        a1, a2, b1, b2 = random_lex_quadruple(G, rng, bound=4, max_first=1)
        if all(L.leq(x, unit) for x in (a1, a2, b1, b2, L.add(a1, a2))):
            out.append((a1, a2, b1, b2))
    return out


@pytest.mark.parametrize("G", [Z, Z2, H], ids=["Z", "Z2", "heis"])
def test_interval_lift_random(G):
    O = builtin_oracle(G)
    B = Bounded(lex_over(G), (1, G.zero))
    for q in _interval_quads(G, 3, 40):
        assert validate_table(B, q, lift_pea_refine(O, G, *q)) == []


@given(st.integers(0, 10**6))
def test_cone_lift_validates_over_z2(seed):
    O = builtin_oracle(Z2)
    for q in random_lex_quadruples(Z2, seed, 5):
        assert validate_table(lex_over(Z2), q, lift_group_refine(O, Z2, *q)) == []


@given(st.integers(0, 10**6))
def test_extend_route_over_heis(seed):
    R = interval_group_oracle(builtin_oracle(H), H)
    L = lex_over(H)
    for q in random_lex_quadruples(H, seed, 3):
        t = R.refine(*q)
        assert validate_table(L, q, t) == []
        assert com_sampled(L, t.c12, t.c21)[0]


def test_extend_matches_oracle_on_integers():
    # every table is determined by c11, so agreement of c11 pins the table down
    rng = random.Random(7)
    O = builtin_oracle(Z)
    OE = builtin_oracle(Z)  # closed form, used only inside [0, 1]
    for _ in range(100):
        a1, a2, b1 = (rng.randint(0, 50) for _ in range(3))
        b2 = a1 + a2 - b1
        if b2 < 0:
            continue
        t = extend_to_group(OE, Z, 1, a1, a2, b1, b2)
        assert validate_table(Z, (a1, a2, b1, b2), t) == []
        assert t.entries() == O.refine(a1, a2, b1, b2).entries()


def test_direct_lift_is_not_com_over_heis():
    # the direct case tables can put a noncommuting pair off the diagonal;
    # the sampler sees it, which shows the com check has teeth
    O, L = builtin_oracle(H), lex_over(H)
    bad = 0
    for q in random_lex_quadruples(H, 42, 200):
        t = lift_group_refine(O, H, *q)
        assert validate_table(L, q, t) == []
        ok, pair = com_sampled(L, t.c12, t.c21)
        if not ok:
            bad += 1
            assert not t.com and not L.commutes(*pair)
    assert bad > 0


# -- finite algebras and m x n ------------------------------------------------------
RDP_ALGEBRAS = [E for E in list(enumerate_peas(5)) + [chain(n) for n in range(1, 7)] if check_rdp(E).holds]


@pytest.mark.parametrize("E", RDP_ALGEBRAS, ids=lambda E: E.name)
def test_mn_refine_on_finite_algebras(E):
    O = finite_oracle(E)
    ctx = _Ctx(E)
    for m in (1, 2, 3):
        for n in (1, 2, 3):
            for a, b in equal_sum_sequences(E, m, n):
                M = mn_refine(O, a, b)
                assert M.shape == (m, n)
                assert validate_matrix(E, a, b, M) == []
                if O.com:
                    assert eq31_holds(E, [[E.index[x] for x in r] for r in M.rows], ctx)


def test_finite_oracle_flag():
    assert finite_oracle(chain(4)).com == check_rdp1(chain(4)).holds


def test_mn_chain_example():
    E = chain(3)
    M = mn_refine(finite_oracle(E), ["2", "1"], ["1", "1", "1"])
    assert validate_matrix(E, ["2", "1"], ["1", "1", "1"], M) == []
    assert [E.sum(r) for r in M.rows] == ["2", "1"]


def test_mn_refine_over_z2():
    O = builtin_oracle(Z2)
    a = [(2, 1), (0, 3), (1, 1)]
    b = [(1, 0), (1, 2), (1, 3)]
    M = mn_refine(O, a, b)
    assert validate_matrix(Z2, a, b, M) == []
    with pytest.raises(ValueError):
        mn_refine(O, [], b)
