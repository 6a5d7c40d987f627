"""Tests for root data, Weyl groups and Levi subsets."""

from fractions import Fraction

import numpy as np
import pytest

from tiltver.errors import UnsupportedType
from tiltver.linkage import alpha0_pairing
from tiltver.rootdata import (
    LeviSubset,
    build_root_datum,
    dot_action,
    normalize_weyl,
    parse_type_label,
    pair,
    parse_weight,
    root_datum_from_label,
    weyl_orbit,
)


@pytest.mark.parametrize(
    "label, positive, order, coxeter",
    [
        ("A1", 1, 2, 2),
        ("A2", 3, 6, 3),
        ("A3", 6, 24, 4),
        ("B2", 4, 8, 4),
        ("C3", 9, 48, 6),
        ("D4", 12, 192, 6),
        ("G2", 6, 12, 6),
    ],
)
def test_root_system_sizes(label, positive, order, coxeter):
    datum = root_datum_from_label(label)
    assert len(datum.positive_roots) == positive
    assert len(datum.weyl_group) == order
    assert datum.coxeter_number == coxeter


def test_parse_type_label():
    assert parse_type_label("b2") == ("B", 2)
    assert parse_type_label(" G2 ") == ("G", 2)
    with pytest.raises(UnsupportedType):
        parse_type_label("E6")
    with pytest.raises(UnsupportedType):
        parse_type_label("A9")
    with pytest.raises(UnsupportedType):
        parse_type_label("two")


def test_parse_weight():
    assert parse_weight("1,2", 2) == (1, 2)
    assert parse_weight(" -1,0 ") == (-1, 0)
    with pytest.raises(ValueError):
        parse_weight("1,x")
    with pytest.raises(ValueError):
        parse_weight("1,2,3", 2)


def test_simple_roots_are_cartan_columns():
    assert root_datum_from_label("A2").simple_roots == ((2, -1), (-1, 2))
    # alpha_2 short in B2, alpha_1 short in G2
    assert root_datum_from_label("B2").simple_roots == ((2, -2), (-1, 2))
    assert root_datum_from_label("G2").simple_roots == ((2, -1), (-3, 2))


def test_highest_short_coroot():
    assert root_datum_from_label("A2").highest_short_root.coroot == (1, 1)
    assert root_datum_from_label("B2").highest_short_root.coroot == (2, 1)
    assert root_datum_from_label("G2").highest_short_root.coroot == (2, 3)


def test_height_vector_is_twice_rho_check():
    assert root_datum_from_label("A2").height_vector == (2, 2)
    assert root_datum_from_label("G2").height_vector == (6, 10)


def test_b2_simple_root_coordinates():
    datum = root_datum_from_label("B2")
    assert datum.simple_root_coordinates((2, -2)) == (1, 0)
    assert datum.simple_root_coordinates((0, 1)) == (Fraction(1, 2), 1)
    assert datum.in_rational_root_cone((0, 1))
    assert not datum.in_root_semigroup((0, 1))
    assert datum.in_root_semigroup((0, 2))


def test_weyl_orbit_of_fundamental_weight():
    datum = root_datum_from_label("A2")
    assert weyl_orbit((1, 0), datum) == {(1, 0), (-1, 1), (0, -1)}


def test_longest_element_and_dominant_conjugate():
    datum = root_datum_from_label("A2")
    assert datum.longest.act((1, 0)) == (0, -1)
    assert datum.longest.length == 3
    assert datum.dominant_conjugate((-1, 0)) == ((0, 1), 0)


def test_normalize_weyl():
    a1 = root_datum_from_label("A1")
    assert normalize_weyl((-1,), a1) is None
    assert normalize_weyl((-3,), a1) == ((1,), -1)
    assert normalize_weyl((2,), a1) == ((2,), 1)
    a2 = root_datum_from_label("A2")
    assert normalize_weyl((-2, 0), a2) is None


def test_dot_action_fixes_minus_rho():
    datum = root_datum_from_label("B2")
    for element in datum.weyl_group:
        assert dot_action(element, (-1, -1), datum) == (-1, -1)


def test_restricted_weights_are_sorted():
    datum = root_datum_from_label("A2")
    weights = datum.restricted_weights(2)
    assert len(weights) == 4
    assert weights[0] == (0, 0)
    assert weights[-1] == (1, 1)


def test_levi_datum_shares_the_weight_lattice():
    datum = root_datum_from_label("A2")
    levi = LeviSubset(datum, (0,))
    assert levi.datum.label == "A2[J=1]"
    assert levi.datum.ambient == "A2"
    assert len(levi.positive_roots) == 1
    assert len(levi.weyl_group) == 2
    assert levi.is_proper
    assert levi.rho_j == (Fraction(1), Fraction(-1, 2))
    assert levi.contains((2, -1))
    assert not levi.contains((-1, 2))


def test_levi_of_full_set_is_the_datum():
    datum = root_datum_from_label("B2")
    assert datum.levi((0, 1)) is datum
    with pytest.raises(ValueError):
        LeviSubset(datum, (2,))


def test_build_root_datum_g2():
    datum = build_root_datum("g", 2)
    assert datum.coxeter_number == 6
    assert datum.highest_short_root.weight == (1, 0)
    assert datum.rho == (1, 1)


@pytest.mark.parametrize("family, rank", [("E", 6), ("A", 5), ("D", 3), ("G", 3)])
def test_build_root_datum_rejects_unsupported(family, rank):
    with pytest.raises(UnsupportedType):
        build_root_datum(family, rank)


def test_pair_with_highest_short_coroot():
    a2, g2 = root_datum_from_label("A2"), root_datum_from_label("G2")
    assert pair(a2.rho, a2.highest_short_root.coroot) == 2
    assert pair((2, 0), g2.highest_short_root.coroot) == 4


def test_build_root_datum_c2():
    datum = build_root_datum("C", 2)
    assert datum.label == "C2"
    # alpha_1 short, alpha_2 long
    assert datum.simple_roots == ((2, -1), (-2, 2))
    assert len(datum.positive_roots) == 4
    assert len(datum.weyl_group) == 8
    assert datum.coxeter_number == 4
    assert datum.highest_short_root.weight == (0, 1)
    assert datum.highest_short_root.coroot == (1, 2)
    assert datum.convention == "Bourbaki C2: alpha_2 long (dual of B2)"


RANK2 = ("A2", "B2", "C2", "G2")


@pytest.mark.parametrize("label", RANK2)
def test_longest_element_is_an_involution(label):
    datum = root_datum_from_label(label)
    square = datum.longest.array @ datum.longest.array
    assert np.array_equal(square, np.eye(datum.rank, dtype=np.int64))
    assert datum.longest.length == len(datum.positive_roots)


@pytest.mark.parametrize("label", RANK2)
def test_weyl_group_permutes_the_roots(label):
    datum = root_datum_from_label(label)
    roots = {r.weight for r in datum.positive_roots}
    roots |= {tuple(-x for x in root) for root in roots}
    for element in datum.weyl_group:
        assert {element.act(root) for root in roots} == roots


@pytest.mark.parametrize("label", RANK2)
def test_sign_is_the_determinant(label):
    for element in root_datum_from_label(label).weyl_group:
        assert round(np.linalg.det(element.array)) == element.sign


@pytest.mark.parametrize("label", RANK2)
def test_longest_element_negates_alpha0_pairing(label):
    datum = root_datum_from_label(label)
    for weight in datum.restricted_weights(5):
        assert alpha0_pairing(datum.longest.act(weight), datum) == -alpha0_pairing(weight, datum)


@pytest.mark.parametrize("label", RANK2)
def test_orbit_sizes_divide_the_group_order(label):
    datum = root_datum_from_label(label)
    order = len(datum.weyl_group)
    for weight in datum.restricted_weights(4):
        assert order % len(weyl_orbit(weight, datum)) == 0
