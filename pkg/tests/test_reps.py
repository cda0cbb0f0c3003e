"""Augmentations, matrix representations, and the truncated operator action."""

from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from lch import refdata
from lch.dga import compute_dga, torus_dga
from lch.freealg import F2, ZT, NcPoly, parse
from lch.plat import build_front, parse_plat
from lch.reps import (
    MatRepAssignment,
    TruncatedOp,
    build_R_truncated,
    check_R_relations,
    decode_matrix,
    deserialize_rep,
    encode_matrix,
    evaluate_poly,
    exhaustive_augmentations,
    find_augmentations,
    mat2_presentation_check,
    mat_add,
    mat_identity,
    mat_mul,
    mat_zero,
    search_matrix_rep,
    serialize_rep,
    torus_rep,
    verify_matrix_rep,
    verify_R_relations,
    _op_from_map,
)


@pytest.fixture(scope="module")
def trefoil():
    return compute_dga(build_front(parse_plat("2,2,2", 4)), F2)


@pytest.fixture(scope="module")
def k2():
    return compute_dga(refdata.k2_front(), F2)


# ---- matrix arithmetic ----

def test_mat_identity_neutral():
    m = (3, 1, 7)
    assert mat_mul(m, mat_identity(3), 3) == m
    assert mat_mul(mat_identity(3), m, 3) == m


def test_mat_mul_matches_by_hand():
    a = (2, 0)  # upper right
    b = (0, 1)  # lower left
    assert mat_mul(a, b, 2) == (1, 0)
    assert mat_mul(b, a, 2) == (0, 2)
    assert mat_add(mat_mul(a, b, 2), mat_mul(b, a, 2)) == mat_identity(2)


@given(st.integers(0, 511), st.integers(0, 511), st.integers(0, 511))
def test_mat_mul_associative(x, y, z):
    a, b, c = (decode_matrix(v, 3) for v in (x, y, z))
    assert mat_mul(mat_mul(a, b, 3), c, 3) == mat_mul(a, mat_mul(b, c, 3), 3)


@given(st.integers(1, 3), st.data())
def test_encode_decode_round_trip(n, data):
    code = data.draw(st.integers(0, (1 << (n * n)) - 1))
    assert encode_matrix(decode_matrix(code, n), n) == code


def test_evaluate_poly_unit_is_identity(trefoil):
    images = {g: mat_zero(2) for g in trefoil.presentation.generators}
    assert evaluate_poly(NcPoly.one(F2), images, 2) == mat_identity(2)


def test_evaluate_poly_needs_all_images():
    with pytest.raises(ValueError, match="no image"):
        evaluate_poly(parse("x1", F2), {}, 2)


def test_evaluate_poly_rejects_laurent_ring():
    with pytest.raises(ValueError, match="F2"):
        evaluate_poly(NcPoly.one(ZT), {}, 2)


# ---- augmentations ----

def test_trefoil_augmentations_nonempty(trefoil):
    augs = find_augmentations(trefoil)
    assert augs
    assert augs == exhaustive_augmentations(trefoil)


def test_trefoil_graded_augmentations(trefoil):
    graded = find_augmentations(trefoil, graded=True)
    crossings = [tuple(a[f"x{i}"] for i in (1, 2, 3)) for a in graded]
    assert sorted(crossings) == [(0, 0, 1), (0, 1, 1), (1, 0, 0), (1, 1, 0), (1, 1, 1)]
    assert all(a["x4"] == 0 and a["x5"] == 0 for a in graded)


def test_augmentations_verify_as_one_dim_reps(trefoil):
    for aug in find_augmentations(trefoil):
        rho = MatRepAssignment(1, {g: (v,) for g, v in aug.items()})
        assert verify_matrix_rep(trefoil, rho)


def test_k2_has_no_augmentations(k2):
    assert find_augmentations(k2) == []


def test_torus_3_4_has_no_augmentations():
    _, g, _ = torus_dga(3, 4)
    assert find_augmentations(g) == []


def test_unknot_augmentations():
    g = compute_dga(build_front(parse_plat("", 2)), F2)
    # over F2 the cusp differential 1 + t^-1 collapses to zero, so both
    # assignments survive
    assert find_augmentations(g) == [{"x1": 0}, {"x1": 1}]


def test_m942_augmentations_match_oracle():
    g = compute_dga(refdata.m942_front(), F2)
    assert find_augmentations(g) == exhaustive_augmentations(g)


def test_exhaustive_oracle_refuses_large_inputs(k2):
    with pytest.raises(ValueError, match="brute force"):
        exhaustive_augmentations(k2)


# ---- matrix representation search ----

def test_search_dim_one_agrees_with_augmentations(trefoil):
    hit = search_matrix_rep(trefoil, 1)
    first = find_augmentations(trefoil)[0]
    assert hit is not None
    assert hit.images == {g: (v,) for g, v in first.items()}


def test_search_trefoil_dim_two_finds_and_verifies(trefoil):
    rho = search_matrix_rep(trefoil, 2)
    assert rho is not None
    assert verify_matrix_rep(trefoil, rho)


def test_search_is_deterministic(trefoil):
    a = search_matrix_rep(trefoil, 2)
    b = search_matrix_rep(trefoil, 2)
    assert a.images == b.images


def test_search_budget_exhaustion_is_inconclusive(k2):
    assert search_matrix_rep(k2, 2, budget=50_000) is None


def test_search_rejects_nonpositive_dimension(trefoil):
    with pytest.raises(ValueError):
        search_matrix_rep(trefoil, 0)


# ---- torus representations ----

@pytest.mark.parametrize("p,q", [(3, 4), (3, 5), (5, 8)])
def test_torus_rep_verifies(p, q):
    _, g, lab = torus_dga(p, q)
    rho = torus_rep(p, q, lab)
    assert verify_matrix_rep(g, rho)


def test_torus_rep_images_satisfy_presentation():
    _, _, lab = torus_dga(3, 4)
    rho = torus_rep(3, 4, lab)
    a = rho.images[lab.x[(1, 2)]]
    b = rho.images[lab.x[(1, 3)]]
    assert mat_mul(a, a, 2) == mat_zero(2)
    assert mat_mul(b, b, 2) == mat_zero(2)
    assert mat_add(mat_mul(a, b, 2), mat_mul(b, a, 2)) == mat_identity(2)
    assert all(rho.images[name] == mat_zero(2) for name in lab.z.values())


def test_torus_rep_requires_complete_labeling():
    from lch.dga import TorusLabeling

    _, _, lab = torus_dga(3, 4)
    broken = TorusLabeling({k: v for k, v in lab.x.items() if k != (1, 2)}, lab.y, lab.z)
    with pytest.raises(ValueError, match="missing"):
        torus_rep(3, 4, broken)


def test_all_zero_assignment_fails_on_cusp_constant(trefoil):
    rho = MatRepAssignment(2, {g: mat_zero(2) for g in trefoil.presentation.generators})
    assert not verify_matrix_rep(trefoil, rho)


def test_verify_raises_on_missing_generator(trefoil):
    rho = MatRepAssignment(2, {"x1": mat_zero(2)})
    with pytest.raises(ValueError, match="no image"):
        verify_matrix_rep(trefoil, rho)


def test_mat2_presentation():
    assert mat2_presentation_check()


# ---- truncated operators ----

def test_build_rejects_tiny_truncation():
    with pytest.raises(ValueError):
        build_R_truncated(4)


def test_doubling_map_valid_domain():
    ops = build_R_truncated(256)
    assert ops["f"].valid_domain == 127
    assert ops["p"].valid_domain == 255


def test_truncated_rows_match_block_diagram_oracle():
    # recompose the defining block diagrams directly: an even basis index 2i
    # is the first summand's copy of index i, an odd index 2i+1 the second's
    def embed1(i):
        return 2 * i

    def embed2(i):
        return 2 * i + 1

    def oracle_a(m):
        if m % 2 == 0:
            i = m // 2
            return set() if i == 0 else {embed2(i - 1)}
        return {embed1((m - 1) // 2)}

    def oracle_b(m):
        if m % 2 == 0:
            i = m // 2
            return {embed1(2 * i + 1), embed2(i)}
        i = (m - 1) // 2
        return {embed1(i + 1), embed1(2 * i + 2)}

    def oracle_c(m):
        return {m // 2} if m % 2 == 0 else set()

    N = 128
    ops = build_R_truncated(N)
    for key, oracle in (("a", oracle_a), ("b", oracle_b), ("c", oracle_c)):
        op = ops[key]
        for m in range(op.valid_domain + 1):
            got = {j for j in range(N) if op.rows[m] >> j & 1}
            assert got == oracle(m), (key, m)


def test_truncation_stability():
    small, big = build_R_truncated(64), build_R_truncated(128)
    for key in small:
        upto = small[key].valid_domain
        assert small[key].rows[:upto + 1] == big[key].rows[:upto + 1]


def test_verify_R_relations_ok():
    report = verify_R_relations(256)
    assert report.ok
    assert len(report.checks) == 7
    assert all(c.checked_upto >= 31 for c in report.checks)
    assert any("1 + c(1+ab) + ac(1+ba)" == c.name for c in report.checks)


def test_verify_R_relations_rejects_small_truncation():
    with pytest.raises(ValueError):
        verify_R_relations(32)


def test_corrupted_b_breaks_relations():
    N = 256
    ops = dict(build_R_truncated(N))
    # drop the index-doubling summand from b
    ops["b"] = _op_from_map(N, lambda i: (i + 1,), 2, 2)
    assert not check_R_relations(ops, N).ok


def test_report_lines_are_readable():
    lines = verify_R_relations(128).lines()
    assert len(lines) == 7 and all(ln.startswith("ok") for ln in lines)


def test_truncated_op_growth_validation():
    with pytest.raises(ValueError):
        TruncatedOp(4, (0, 0, 0, 0), 0, 0)
    with pytest.raises(ValueError):
        TruncatedOp(4, (0, 0), 1, 0)


# ---- representation files ----

def test_rep_file_round_trip():
    text = "rep n=2\nmap x1 = 0100\nmap x2 = 0000\nmap x10 = 1001\n"
    rho = deserialize_rep(text)
    assert rho.images["x1"] == (2, 0)
    assert rho.images["x10"] == (1, 2)
    assert serialize_rep(rho) == text


def test_rep_file_rejects_bad_header():
    with pytest.raises(ValueError, match="header"):
        deserialize_rep("n=2\nmap x1 = 0100\n")


def test_rep_file_rejects_wrong_bit_count():
    with pytest.raises(ValueError, match="bits"):
        deserialize_rep("rep n=2\nmap x1 = 010\n")


def test_rep_file_rejects_duplicates():
    with pytest.raises(ValueError, match="duplicate"):
        deserialize_rep("rep n=1\nmap x1 = 0\nmap x1 = 1\n")


@given(st.integers(1, 3), st.data())
def test_rep_file_round_trips_random(n, data):
    gens = [f"x{i}" for i in range(1, data.draw(st.integers(1, 5)) + 1)]
    images = {g: decode_matrix(data.draw(st.integers(0, (1 << (n * n)) - 1)), n)
              for g in gens}
    rho = MatRepAssignment(n, images)
    again = deserialize_rep(serialize_rep(rho))
    assert again.n == rho.n and dict(again.images) == dict(rho.images)
