from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from w1coh.bimodules import (
    TENSOR_PARTS,
    Tensor2Element,
    Wedge2Element,
    act,
    act_tensor,
    act_wedge,
    coboundary_value,
    decompose_tensor,
    decompose_wedge,
    element_from_json,
    part_of,
    tensor_to_wedge,
    unit_pair,
    wedge_to_tensor,
)
from w1coh.errors import GenusError, ParseError
from w1coh.lattice_poisson import LaurentElement, bracket

ONE, X, Y = (0, 0), (1, 0), (0, 1)


def mono(genus, r=2):
    return st.tuples(*[st.integers(-r, r)] * (2 * genus))


def coeffs():
    return st.fractions(max_denominator=3).filter(bool)


def laurent(genus, size=2):
    return st.dictionaries(mono(genus), coeffs(), max_size=size).map(
        lambda d: LaurentElement(genus, d))


def pairs(cls, genus, size=3):
    return st.dictionaries(st.tuples(mono(genus), mono(genus)), coeffs(), max_size=size).map(
        lambda d: cls(genus, d))


# -- storage --------------------------------------------------------------------

def test_wedge_canonical_orientation():
    w = Wedge2Element(1, {(Y, X): 2})
    assert w.terms == {(X, Y): Fraction(-2)}
    assert w.coefficient(X, Y) == -2 and w.coefficient(Y, X) == 2
    assert not Wedge2Element(1, {(X, X): 5})
    assert Wedge2Element(1, {(X, Y): 1, (Y, X): 1}) == Wedge2Element.zero(1)


def test_tensor_is_not_symmetrised():
    t = Tensor2Element(1, {(X, Y): 1, (Y, X): 1})
    assert t.coefficient(X, Y) == t.coefficient(Y, X) == 1
    assert len(t) == 2


def test_pair_arithmetic():
    a = Tensor2Element.pair(X, Y, 2)
    b = Tensor2Element.pair(Y, X)
    s = a + b - a.scale(Fraction(1, 2))
    assert s.coefficient(X, Y) == 1 and s.coefficient(Y, X) == 1
    assert 2 * b == b + b
    with pytest.raises(GenusError):
        a + Tensor2Element.zero(2)


def test_unit_pair():
    assert unit_pair(1) == Tensor2Element.pair(ONE, ONE)
    assert not unit_pair(1, "wedge")


# -- action -----------------------------------------------------------------------

def test_action_frozen_values():
    x = LaurentElement.mono(X)
    # x . (y (x) 1) = {x,y} (x) 1 = xy (x) 1
    assert act_tensor(x, Tensor2Element.pair(Y, ONE)) == Tensor2Element.pair((1, 1), ONE)
    # x . (y ^ y^-1) = xy ^ y^-1 - y ^ x y^-1
    w = act_wedge(x, Wedge2Element.pair(Y, (0, -1)))
    assert w == Wedge2Element(1, {((1, 1), (0, -1)): 1, (Y, (1, -1)): -1})
    # 1 (x) 1 is invariant
    assert not act(LaurentElement.mono((3, -2)), unit_pair(1))


def test_coboundary_value_is_the_action():
    m = Wedge2Element.pair(X, Y)
    Z = LaurentElement.mono((1, 1))
    assert coboundary_value(m, Z) == act_wedge(Z, m)


def test_act_type_and_genus_errors():
    with pytest.raises(TypeError):
        act(LaurentElement.one(1), LaurentElement.one(1))
    with pytest.raises(GenusError):
        act_tensor(LaurentElement.one(2), Tensor2Element.pair(X, Y))


@given(laurent(1), pairs(Tensor2Element, 1))
def test_tensor_action_matches_oracle(Z, t):
    assert act_tensor(Z, t).terms == oracles.act_tensor(Z.terms, t.terms)


@given(laurent(1), pairs(Wedge2Element, 1))
def test_wedge_action_matches_oracle(Z, w):
    T = oracles.act_tensor(Z.terms, oracles.wedge_as_tensor(w.terms))
    got = act_wedge(Z, w)
    assert oracles.wedge_as_tensor(got.terms) == T


@given(laurent(2), laurent(2), pairs(Tensor2Element, 2))
def test_tensor_action_axiom(P, Q, t):
    assert act(P, act(Q, t)) - act(Q, act(P, t)) == act(bracket(P, Q), t)


@given(laurent(2), laurent(2), pairs(Wedge2Element, 2))
def test_wedge_action_axiom(P, Q, w):
    assert act(P, act(Q, w)) - act(Q, act(P, w)) == act(bracket(P, Q), w)


# -- maps and decomposition ------------------------------------------------------------

def test_maps_frozen():
    w = Wedge2Element.pair(X, Y, 3)
    assert wedge_to_tensor(w) == Tensor2Element(1, {(X, Y): 3, (Y, X): -3})
    assert tensor_to_wedge(Tensor2Element.pair(X, ONE)) == Wedge2Element.pair(X, ONE, Fraction(1, 2))
    assert not tensor_to_wedge(Tensor2Element(1, {(X, Y): 1, (Y, X): 1}))


@given(laurent(2), pairs(Wedge2Element, 2), pairs(Tensor2Element, 2))
def test_maps_intertwine(Z, w, t):
    assert wedge_to_tensor(act(Z, w)) == act(Z, wedge_to_tensor(w))
    assert tensor_to_wedge(act(Z, t)) == act(Z, tensor_to_wedge(t))


@given(pairs(Wedge2Element, 2))
def test_p_after_s_is_identity(w):
    assert tensor_to_wedge(wedge_to_tensor(w)) == w


def test_part_labels():
    assert [part_of("tensor", u, v) for u, v in
            ((ONE, ONE), (X, ONE), (ONE, X), (X, Y))] == list(TENSOR_PARTS)
    assert part_of("wedge", X, ONE) == part_of("wedge", ONE, X) == "left"
    assert part_of("wedge", X, Y) == "prime"


@given(pairs(Tensor2Element, 1, 6), pairs(Wedge2Element, 1, 6))
def test_decomposition_is_a_direct_sum(t, w):
    tp = decompose_tensor(t)
    assert sum(tp, Tensor2Element.zero(1)) == t
    for label, piece in zip(TENSOR_PARTS, tp):
        assert all(part_of("tensor", u, v) == label for (u, v), _ in piece.items())
    wl, wp = decompose_wedge(w)
    assert wl + wp == w


@given(laurent(1), pairs(Tensor2Element, 1, 6))
def test_decomposition_is_equivariant(Z, t):
    # each summand is a submodule
    for piece, image in zip(decompose_tensor(act(Z, t)), map(lambda p: act(Z, p),
                                                             decompose_tensor(t))):
        assert piece == image


# -- serialization ------------------------------------------------------------------------

@given(pairs(Tensor2Element, 2), pairs(Wedge2Element, 2))
def test_json_round_trip(t, w):
    assert element_from_json(t.to_json()) == t
    assert element_from_json(w.to_json()) == w


def test_json_schema():
    data = Wedge2Element.pair(X, Y, Fraction(1, 2)).to_json()
    assert data == {"genus": 1, "kind": "wedge",
                    "terms": [{"u": [1, 0], "v": [0, 1], "coef": "1/2"}]}


@pytest.mark.parametrize("bad", [
    {"genus": 1, "kind": "sym", "terms": []},
    {"genus": 1, "kind": "wedge", "terms": [{"u": [0, 1], "v": [1, 0], "coef": "1"}]},
    {"genus": 1, "kind": "tensor", "terms": [{"u": [1, 0], "coef": "1"}]},
    [1, 2],
])
def test_json_rejects_malformed(bad):
    with pytest.raises(ParseError):
        element_from_json(bad)
