"""Group arithmetic tests: table fidelity, laws, presentation, text forms."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dihedral_codes.channels import default_labeling
from dihedral_codes.group import (
    D6,
    IDENTITY,
    ROTATION_COSET,
    Z6_INDEX2,
    Z6_INDEX3,
    DihedralElement,
    DihedralGroup,
    coset_label,
    crt_index,
)

# the full D6 operation table in the element order 1, x, x^2, y, xy, x^2y
D6_TABLE = [
    ["1", "x", "x^2", "y", "xy", "x^2y"],
    ["x", "x^2", "1", "xy", "x^2y", "y"],
    ["x^2", "1", "x", "x^2y", "y", "xy"],
    ["y", "x^2y", "xy", "1", "x^2", "x"],
    ["xy", "y", "x^2y", "x", "1", "x^2"],
    ["x^2y", "xy", "y", "x^2", "x", "1"],
]

ELEMS = D6.elements()


def test_mul_matches_full_operation_table():
    for i, a in enumerate(ELEMS):
        for j, b in enumerate(ELEMS):
            assert D6.render(D6.mul(a, b)) == D6_TABLE[i][j]


def test_mul_examples():
    x = D6.parse("x")
    y = D6.parse("y")
    assert D6.mul(x, y) == D6.parse("xy")
    assert D6.mul(IDENTITY, D6.parse("x^2y")) == D6.parse("x^2y")
    assert D6.mul(y, x) == D6.parse("x^2y")


def test_inv_examples():
    assert D6.inv(D6.parse("x")) == D6.parse("x^2")
    assert D6.inv(D6.parse("xy")) == D6.parse("xy")
    assert D6.inv(IDENTITY) == IDENTITY
    for a in ELEMS:
        assert D6.mul(a, D6.inv(a)) == IDENTITY
        assert D6.mul(D6.inv(a), a) == IDENTITY


def test_power_examples():
    x = D6.parse("x")
    y = D6.parse("y")
    assert D6.power(x, 3) == IDENTITY
    assert D6.power(y, 2) == IDENTITY
    assert D6.power(x, -1) == D6.inv(x)
    assert D6.power(x, 0) == IDENTITY
    for a in ELEMS:
        acc = IDENTITY
        for e in range(7):
            assert D6.power(a, e) == acc
            acc = D6.mul(acc, a)
        assert D6.power(a, -3) == D6.inv(D6.power(a, 3))


def test_associativity_exhaustive_p3():
    for a in ELEMS:
        for b in ELEMS:
            ab = D6.mul(a, b)
            for c in ELEMS:
                assert D6.mul(ab, c) == D6.mul(a, D6.mul(b, c))


@given(st.sampled_from([5, 7, 11]), st.data())
def test_associativity_randomized_larger_p(p, data):
    g = DihedralGroup(p)
    elem = st.builds(
        DihedralElement, st.integers(0, p - 1), st.integers(0, 1)
    )
    a, b, c = data.draw(elem), data.draw(elem), data.draw(elem)
    assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))
    assert g.mul(a, g.inv(a)) == g.identity


@pytest.mark.parametrize("p", [3, 5, 7])
def test_noncommutativity_witness(p):
    g = DihedralGroup(p)
    assert any(
        g.mul(a, b) != g.mul(b, a)
        for a in g.elements()
        for b in g.elements()
    )


def test_beta_additivity():
    for a in ELEMS:
        for b in ELEMS:
            assert D6.mul(a, b).beta == a.beta ^ b.beta


@pytest.mark.parametrize("p", [3, 5])
def test_presentation_pairs_are_exactly_rotations_times_reflections(p):
    g = DihedralGroup(p)
    good = {
        (a, b)
        for a in g.elements()
        for b in g.elements()
        if g.verify_presentation(a, b)
    }
    expected = {
        (a, b)
        for a in g.elements()
        for b in g.elements()
        if a.beta == 0 and b.beta == 1
    }
    expected.add((g.identity, g.identity))
    assert good == expected
    assert len(good) == p * p + 1


def test_presentation_examples():
    assert D6.verify_presentation(D6.parse("x"), D6.parse("y"))
    assert not D6.verify_presentation(D6.parse("x"), IDENTITY)
    assert D6.verify_presentation(IDENTITY, IDENTITY)


def test_render_parse_round_trip():
    for p in (3, 5):
        g = DihedralGroup(p)
        for a in g.elements():
            assert g.parse(g.render(a)) == a
    assert D6.parse(" x^2 y ") == DihedralElement(2, 1)
    assert D6.parse("x^-1") == DihedralElement(2, 0)
    assert [D6.render(a) for a in ELEMS] == ["1", "x", "x^2", "y", "xy", "x^2y"]


@pytest.mark.parametrize("bad", ["", "z", "x^", "yy", "2x", "x2"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ValueError):
        D6.parse(bad)


def test_invalid_group_orders():
    for p in (1, 2, 4, 9, 15):
        with pytest.raises(ValueError):
            DihedralGroup(p)


def test_noncanonical_elements_rejected():
    with pytest.raises(ValueError):
        D6.mul(DihedralElement(3, 0), IDENTITY)
    with pytest.raises(ValueError):
        D6.index(DihedralElement(0, 2))
    assert D6.element(4, 3) == DihedralElement(1, 1)


def test_index_round_trip():
    for i in range(6):
        assert D6.index(D6.from_index(i)) == i


def test_crt_index_is_the_default_labeling():
    lab = default_labeling(3)
    for m in range(6):
        assert crt_index(lab.element_of_input(m)) == m


def test_coset_labels():
    lab = default_labeling(3)
    assert coset_label(D6.parse("x^2"), ROTATION_COSET).value == 0
    assert coset_label(D6.parse("x^2y"), ROTATION_COSET).value == 1
    # y carries label 3 and 3 is in the coset {0, 3}
    assert coset_label(D6.parse("y"), Z6_INDEX2, lab).value == 0
    assert coset_label(D6.parse("y"), Z6_INDEX2).value == 0
    # z6-index3 cosets are {0,2,4} vs {1,3,5}, i.e. exactly the rotation coset
    for a in ELEMS:
        assert coset_label(a, Z6_INDEX3, lab).value == a.beta
    with pytest.raises(ValueError):
        coset_label(D6.parse("y"), "no-such-partition")
