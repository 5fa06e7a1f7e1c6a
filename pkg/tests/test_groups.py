"""Group arithmetic: presentations, canonical forms, enumeration order."""
from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from cayley_ricci.groups import (
    CYCLIC,
    DIHEDRAL,
    QUATERNION,
    GroupElement,
    GroupSpec,
    element_label,
    elements,
    identity,
    inverse,
    mul,
    parse_element,
    parse_group,
)

D3 = GroupSpec(DIHEDRAL, 3)
D6 = GroupSpec(DIHEDRAL, 6)
Q8 = GroupSpec(QUATERNION, 2)
Q12 = GroupSpec(QUATERNION, 3)
Z7 = GroupSpec(CYCLIC, 7)

ALL_SMALL = [D3, D6, Q8, Q12, Z7, GroupSpec(CYCLIC, 1), GroupSpec(DIHEDRAL, 4)]


def test_orders():
    assert D3.order == 6
    assert D6.order == 12
    assert Q8.order == 8
    assert Q12.order == 12
    assert Z7.order == 7


def test_invalid_specs_rejected():
    with pytest.raises(ValueError):
        GroupSpec(DIHEDRAL, 2)
    with pytest.raises(ValueError):
        GroupSpec(QUATERNION, 1)
    with pytest.raises(ValueError):
        GroupSpec(CYCLIC, 0)
    with pytest.raises(ValueError):
        GroupSpec("X", 5)


def test_parse_group_round_trip():
    assert parse_group("D:6") == D6
    assert parse_group("Q:8") == Q8
    assert parse_group("Q:12") == Q12
    assert parse_group("Z:7") == Z7
    for spec in ALL_SMALL:
        assert parse_group(str(spec)) == spec


def test_parse_group_rejects_garbage():
    for bad in ["D6", "Q:10", "Z:-3", "E:5", "Q:eight", ""]:
        with pytest.raises(ValueError):
            parse_group(bad)


def test_dihedral_relations():
    s = GroupElement(1, 0)
    t = GroupElement(0, 1)
    e = identity(D6)
    # sigma^n = e, tau^2 = e, tau sigma = sigma^(n-1) tau
    acc = e
    for _ in range(6):
        acc = mul(D6, acc, s)
    assert acc == e
    assert mul(D6, t, t) == e
    assert mul(D6, t, s) == mul(D6, GroupElement(5, 0), t)


def test_quaternion_relations():
    s = GroupElement(1, 0)
    t = GroupElement(0, 1)
    e = identity(Q8)
    # sigma^2m = e, tau^2 = sigma^m, tau^-1 sigma tau = sigma^-1
    acc = e
    for _ in range(4):
        acc = mul(Q8, acc, s)
    assert acc == e
    assert mul(Q8, t, t) == GroupElement(2, 0)
    t_inv = inverse(Q8, t)
    conj = mul(Q8, mul(Q8, t_inv, s), t)
    assert conj == inverse(Q8, s)


def test_quaternion_tau_inverse_by_enumeration():
    # search confirms the closed form: tau^-1 = sigma^m tau, not tau itself
    t = GroupElement(0, 1)
    found = [g for g in elements(Q8) if mul(Q8, t, g) == identity(Q8)]
    assert found == [GroupElement(2, 1)]
    assert inverse(Q8, t) == GroupElement(2, 1)
    assert inverse(Q8, t) != t


def test_quaternion_unique_involution():
    # Q_4m has exactly one element of order 2: sigma^m
    invs = [g for g in elements(Q12) if g != identity(Q12) and mul(Q12, g, g) == identity(Q12)]
    assert invs == [GroupElement(3, 0)]


def test_dihedral_reflections_are_involutions():
    for i in range(6):
        r = GroupElement(i, 1)
        assert mul(D6, r, r) == identity(D6)
        assert inverse(D6, r) == r


def test_enumeration_order_and_size():
    assert [element_label(D3, g) for g in elements(D3)] == ["e", "t", "s", "st", "s2", "s2t"]
    assert [element_label(Z7, g) for g in elements(Z7)] == ["0", "1", "2", "3", "4", "5", "6"]
    for spec in ALL_SMALL:
        els = elements(spec)
        assert len(els) == spec.order
        assert len(set(els)) == spec.order
        assert els[0] == identity(spec)


def test_label_round_trip():
    for spec in ALL_SMALL:
        for g in elements(spec):
            assert parse_element(spec, element_label(spec, g)) == g


def test_parse_element_rejects_garbage():
    with pytest.raises(ValueError):
        parse_element(D3, "x3")
    with pytest.raises(ValueError):
        parse_element(D3, "")
    with pytest.raises(ValueError):
        parse_element(Z7, "st")


def test_mul_rejects_non_canonical():
    with pytest.raises(ValueError):
        mul(D3, GroupElement(3, 0), GroupElement(0, 0))
    with pytest.raises(ValueError):
        mul(Z7, GroupElement(1, 1), GroupElement(0, 0))
    with pytest.raises(ValueError):
        inverse(Q8, GroupElement(0, 2))


@pytest.mark.parametrize("spec", ALL_SMALL, ids=str)
def test_group_axioms_exhaustive(spec):
    els = elements(spec)
    e = identity(spec)
    for g in els:
        assert mul(spec, g, e) == g
        assert mul(spec, e, g) == g
        assert mul(spec, g, inverse(spec, g)) == e
        assert mul(spec, inverse(spec, g), g) == e
    # each row of the Cayley table is a permutation
    for g in els:
        row = {mul(spec, g, h) for h in els}
        assert len(row) == spec.order


@given(st.data())
def test_associativity(data):
    spec = data.draw(st.sampled_from(ALL_SMALL))
    els = elements(spec)
    a = data.draw(st.sampled_from(els))
    b = data.draw(st.sampled_from(els))
    c = data.draw(st.sampled_from(els))
    assert mul(spec, mul(spec, a, b), c) == mul(spec, a, mul(spec, b, c))


def test_dihedral_element_orders():
    # D_6: rotations sigma^i have order 6/gcd(i,6); all 6 reflections order 2
    import math

    for g in elements(D6):
        k, acc = 1, g
        while acc != identity(D6):
            acc = mul(D6, acc, g)
            k += 1
        if g.j == 1:
            assert k == 2
        elif g == identity(D6):
            assert k == 1
        else:
            assert k == 6 // math.gcd(g.i, 6)


def test_cayley_table_matches_itertools_oracle():
    # independent closure check: products of canonical forms stay canonical
    for spec in [D3, Q8]:
        els = set(elements(spec))
        for a, b in itertools.product(els, repeat=2):
            assert mul(spec, a, b) in els
