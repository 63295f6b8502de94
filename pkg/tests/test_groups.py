import itertools

import pytest
from hypothesis import given, strategies as st

from lexpea.groups import (
    CarrierError,
    Integers,
    Status,
    ex29_group,
    ex210_group,
    heisenberg,
    is_directed_bounded,
    is_strong_unit_bounded,
    leq,
    lex,
    spot_check,
    srip_bounded,
    symmetric3,
)
from lexpea.descriptors import parse_group

ints = st.integers(-6, 6)
heis_el = st.tuples(ints, ints, ints)

BUILTINS = [
    "Z",
    "Z^2:product",
    "Z^3:product",
    "heis",
    "finite:S3",
    "finite:C4",
    "Z^2:cone=ex2.9",
    "Z^2:cone=ex2.10",
    "lex(Z,Z)",
    "lex(Z,heis)",
    "lex(Z,finite:S3)",
    "lex(Z,Z^2:product)",
]


def test_leq_examples():
    G = ex29_group()
    assert leq(G, (1, 0), (0, 3))
    assert not leq(Integers(2), (0, 1), (3, 0))
    assert leq(heisenberg(), (2, -1, 4), (2, -1, 4))


def test_carrier_mismatch_raises():
    with pytest.raises(CarrierError):
        Integers(2).add((1, 2), (1, 2, 3))
    with pytest.raises(CarrierError):
        heisenberg().in_cone((1, 2))


def test_lex_cone_examples():
    assert lex(Integers(1), Integers(1)).in_cone((1, -5))
    assert not lex(Integers(1), Integers(2)).in_cone((0, (1, -1)))
    L = lex(Integers(1), symmetric3())
    assert L.caps.directed
    assert not symmetric3().caps.directed


def test_lex_capability_derivation():
    L = parse_group("lex(Z,heis)")
    assert L.caps.linear and L.caps.torsion_free and not L.caps.abelian
    M = parse_group("lex(Z^2:product,Z)")
    assert not M.caps.linear and M.caps.directed and not M.caps.lattice


def test_heisenberg_product():
    H = heisenberg()
    assert H.add((1, 0, 0), (0, 1, 0)) == (1, 1, 1)
    assert H.add((0, 1, 0), (1, 0, 0)) == (1, 1, 0)
    assert H.in_cone((0, 0, 5))


@given(heis_el, heis_el, heis_el)
def test_heisenberg_group_laws(x, y, z):
    H = heisenberg()
    assert H.add(H.add(x, y), z) == H.add(x, H.add(y, z))
    assert H.add(x, H.neg(x)) == H.zero == H.add(H.neg(x), x)
    assert H.commutes(x, y) == (H.add(x, y) == H.add(y, x))


@given(heis_el, heis_el)
def test_heisenberg_cone_conjugation_invariant(x, g):
    H = heisenberg()
    conj = H.add(H.add(g, x), H.neg(g))
    assert H.in_cone(x) == H.in_cone(conj)


@given(heis_el)
def test_heisenberg_centre_fixed(g):
    H = heisenberg()
    assert H.add(H.add(g, (0, 0, 1)), H.neg(g)) == (0, 0, 1)


@pytest.mark.parametrize("desc", BUILTINS)
def test_order_axioms_on_box(desc):
    G = parse_group(desc)
    pts = G.box(1) if "heis" in desc or "^3" in desc else G.box(2)
    for x, y in itertools.product(pts, repeat=2):
        if G.leq(x, y) and G.leq(y, x):
            assert x == y
    for x in pts:
        assert G.leq(x, x)
    pos = [x for x in pts if G.in_cone(x)]
    for x, y in itertools.product(pos, repeat=2):
        assert G.in_cone(G.add(x, y))


@pytest.mark.parametrize("desc", BUILTINS)
def test_spot_check_clean(desc):
    G = parse_group(desc)
    assert spot_check(G, radius=1, samples=40) == []


@pytest.mark.parametrize("desc", BUILTINS)
def test_capability_chain(desc):
    c = parse_group(desc).caps
    assert not c.linear or c.lattice
    assert not c.lattice or c.directed


@given(st.lists(st.tuples(ints, ints), min_size=3, max_size=3))
def test_translation_invariance_product(pts):
    G = Integers(2)
    x, y, g = pts
    if G.leq(x, y):
        assert G.leq(G.add(g, x), G.add(g, y))
        assert G.leq(G.add(x, g), G.add(y, g))


@given(heis_el, heis_el, heis_el, heis_el)
def test_translation_invariance_heis(x, y, g, h):
    H = heisenberg()
    if H.leq(x, y):
        assert H.leq(H.add(H.add(g, x), h), H.add(H.add(g, y), h))


@given(st.tuples(ints, ints), st.tuples(ints, ints))
def test_lattice_meet_is_infimum(x, y):
    G = Integers(2)
    m = G.meet(x, y)
    assert G.leq(m, x) and G.leq(m, y)
    for z in G.box(2):
        if G.leq(z, x) and G.leq(z, y):
            assert G.leq(z, m)


@given(heis_el, heis_el, heis_el)
def test_lower_bound_below_all(x, y, z):
    H = heisenberg()
    d = H.lower_bound([x, y, z])
    assert all(H.leq(d, w) for w in (x, y, z))


@given(st.tuples(ints, st.tuples(ints, ints)), st.tuples(ints, st.tuples(ints, ints)))
def test_lex_lower_bound(x, y):
    L = parse_group("lex(Z,Z^2:product)")
    d = L.lower_bound([x, y])
    assert L.leq(d, x) and L.leq(d, y)


@given(ints, ints, ints, ints, ints, ints)
def test_lex_associativity_of_cones(a, b, c, d, e, f):
    Z = Integers(1)
    left = lex(lex(Z, Z), Z)
    right = lex(Z, lex(Z, Z))
    assert left.in_cone(((a, b), c)) == right.in_cone((a, (b, c)))


def test_directed_verdicts():
    v = is_directed_bounded(symmetric3(), 0)
    assert v.status is Status.REFUTED
    x, y = v.witness
    assert x != y and "0" not in (x, y)
    assert is_directed_bounded(Integers(2), 3).status is Status.CERTIFIED
    assert is_directed_bounded(ex29_group(), 3).status is Status.CERTIFIED


def test_strong_unit_verdicts():
    assert is_strong_unit_bounded(parse_group("lex(Z,heis)"), (1, (0, 0, 0)), 3).status is Status.CERTIFIED
    assert is_strong_unit_bounded(Integers(2), (1, 1), 3).status is Status.CERTIFIED
    v = is_strong_unit_bounded(Integers(2), (1, 0), 3)
    assert v.status is Status.REFUTED and v.witness == (0, 1)
    with pytest.raises(ValueError):
        is_strong_unit_bounded(Integers(1), -1, 3)


def test_srip():
    v = srip_bounded(Integers(1), 2)
    assert v.status is Status.REFUTED
    a1, a2, b1, b2 = v.witness
    assert a1 < b1 and b1 - a1 == 1
    v = srip_bounded(heisenberg(), 1)
    assert v.status is Status.REFUTED
    assert v.witness == ((0, 0, 0), (0, 0, 0), (0, 0, 1), (0, 0, 1))
    assert srip_bounded(Integers(1), 0).status is Status.NO_VIOLATION_FOUND


def test_verdict_is_not_a_bool():
    with pytest.raises(TypeError):
        bool(is_directed_bounded(Integers(1), 1))


def test_ex210_order():
    G = ex210_group()
    assert G.leq((1, 0), (0, 2)) and not G.leq((1, 0), (0, 1))
