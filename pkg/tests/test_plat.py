"""Plat parsing, front traversal, classical invariants, and gradings."""

from __future__ import annotations

import pytest
from hypothesis import assume, given, settings, strategies as st

from lch import refdata
from lch.plat import (
    FrontDiagram,
    build_front,
    classical_invariants,
    maslov_grading,
    parse_plat,
)


@pytest.fixture(scope="module")
def k1():
    return refdata.k1_front()


@pytest.fixture(scope="module")
def k2():
    return refdata.k2_front()


# ---- parsing ----

def test_parse_plat_basic():
    w = parse_plat("2,2,2", 4)
    assert w.letters == (2, 2, 2) and w.strand_count == 4


def test_parse_plat_empty_word():
    assert parse_plat("", 2).letters == ()


def test_parse_plat_whitespace():
    assert parse_plat(" 2 , 1 ", 4).letters == (2, 1)


def test_parse_plat_rejects_odd_strands():
    with pytest.raises(ValueError):
        parse_plat("1", 3)


def test_parse_plat_rejects_out_of_range_letters():
    with pytest.raises(ValueError):
        parse_plat("4", 4)
    with pytest.raises(ValueError):
        parse_plat("0", 4)


def test_parse_plat_rejects_garbage():
    with pytest.raises(ValueError):
        parse_plat("2,x", 4)


# ---- front construction ----

def test_build_front_rejects_links():
    # two parallel unknots
    with pytest.raises(ValueError, match="components"):
        build_front(parse_plat("", 4))


def test_unknot_front_has_one_generator():
    front = build_front(parse_plat("", 2))
    assert front.generator_names == ("x1",)


def test_trefoil_front_generators():
    front = build_front(parse_plat("2,2,2", 4))
    assert front.generator_names == ("x1", "x2", "x3", "x4", "x5")
    assert front.cusp_names == ("x4", "x5")


def test_k1_front_counts(k1):
    assert len(k1.generator_names) == 23
    assert len(k1.cusp_names) == 4


def test_k2_front_counts(k2):
    assert len(k2.generator_names) == 25
    assert len(k2.cusp_names) == 3


def test_base_cusp_defaults_to_last(k2):
    assert k2.base_cusp == "x25"


def test_base_cusp_override():
    front = build_front(parse_plat("2,2,2", 4), base_cusp="x4")
    assert front.base_cusp == "x4"


def test_base_cusp_must_be_a_right_cusp():
    with pytest.raises(ValueError, match="cusp"):
        build_front(parse_plat("2,2,2", 4), base_cusp="x1")


# ---- classical invariants ----

def test_trefoil_invariants():
    assert classical_invariants(build_front(parse_plat("2,2,2", 4))) == (1, 0)


def test_unknot_invariants():
    assert classical_invariants(build_front(parse_plat("", 2))) == (-1, 0)


def test_k1_invariants(k1):
    assert classical_invariants(k1) == (-1, 0)


def test_k2_invariants(k2):
    assert classical_invariants(k2) == (-1, 0)


@pytest.mark.parametrize("p,q", refdata.TORUS_ACCEPTANCE_PAIRS)
def test_torus_tb(p, q):
    from lch.dga import torus_front

    front, _ = torus_front(p, q)
    tb, _ = classical_invariants(front)
    assert tb == -p * q


# ---- gradings ----

def test_trefoil_grading():
    table = maslov_grading(build_front(parse_plat("2,2,2", 4)))
    assert table.modulus == 0
    assert table.grading == {"x1": 0, "x2": 0, "x3": 0, "x4": 1, "x5": 1}


def test_k1_odd_grading_set(k1):
    table = maslov_grading(k1)
    assert table.modulus == 0
    odd = {g for g, d in table.grading.items() if d % 2 == 1}
    assert odd == {"x2", "x3", "x5", "x9", "x11", "x12", "x13", "x15",
                   "x20", "x21", "x22", "x23"}


def test_k2_cusps_have_degree_one(k2):
    table = maslov_grading(k2)
    assert all(table.grading[c] == 1 for c in k2.cusp_names)


def test_grading_rejects_links():
    front = FrontDiagram(4, [])
    # bypassing build_front leaves a two-component closure in place
    from lch.plat import Event

    events = [Event("L", (1, 2)), Event("L", (3, 4)),
              Event("R", (1, 2), name="x1"), Event("R", (3, 4), name="x2")]
    with pytest.raises(ValueError):
        maslov_grading(FrontDiagram(4, events))


# ---- random plats ----

small_plats = st.tuples(
    st.sampled_from([2, 4, 6]),
    st.lists(st.integers(1, 5), max_size=8),
).filter(lambda sw: all(k < sw[0] for k in sw[1]))


@settings(max_examples=150, deadline=None)
@given(small_plats)
def test_random_plat_invariants_consistent(sw):
    strands, letters = sw
    word = parse_plat(",".join(map(str, letters)), strands)
    try:
        front = build_front(word)
    except ValueError:
        assume(False)
    tb, r = classical_invariants(front)
    table = maslov_grading(front)
    # cusp degrees are 1 mod the grading modulus, and tb + 1 counts crossings
    # minus twice the negative ones, so tb has the parity of the crossing count
    m = table.modulus
    assert all(table.grading[c] == (1 % m if m else 1) for c in front.cusp_names)
    assert (tb + len(front.cusp_names)) % 2 == len(letters) % 2
    assert m % 2 == 0
