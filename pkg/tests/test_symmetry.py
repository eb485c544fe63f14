import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from octaplex.exactnum import (
    DUAL_UNIT,
    HALF,
    INV_SQRT2,
    OMEGA,
    ONE,
    QSqrt2,
    QUAT_I,
    QUAT_J,
    QUAT_K,
    QUAT_ONE,
    QuatEx,
    ZERO,
)
from octaplex.polytope import build_complex, build_compound, make_vertices
from octaplex import symmetry as S
from octaplex.symmetry import (
    ClosureCapExceeded,
    CyclicLift,
    Fibration,
    Isometry,
    conjugation_rotation,
    directed_edges,
    edge_rings,
    edge_rotation,
    extend_reflections,
    fibration_partition,
    generate_group,
    hopf_fiber,
    orbits,
    point_stabilizer,
    product_group,
    rotation_angle_axis,
    same_fiber,
    slide,
    slide_exact,
    stabilizer,
)

V24 = make_vertices("V24")
unit_points = st.sampled_from(V24.points)


def _random_isometries(n, seed=7):
    rng = random.Random(seed)
    els = S.cell24_rotations().elements
    return [els[rng.randrange(len(els))] for _ in range(n)]


# ---------------------------------------------------------------------------
# isometry basics


def test_apply_left_mult_moves_one_to_omega():
    g = Isometry.left_mult(OMEGA)
    assert g.apply(QUAT_ONE) == OMEGA


def test_apply_right_mult_dual_unit():
    g = Isometry.right_mult(DUAL_UNIT)
    assert g.apply(QUAT_ONE) == DUAL_UNIT
    assert DUAL_UNIT in make_vertices("V24'")


def test_reflection_conjugates():
    g = Isometry(QUAT_ONE, QUAT_ONE, reflect=True)
    assert g.apply(QUAT_I) == -QUAT_I
    assert g.apply(QUAT_ONE) == QUAT_ONE


def test_sign_canonicalization():
    assert Isometry(OMEGA, QUAT_I) == Isometry(-OMEGA, -QUAT_I)
    assert hash(Isometry(OMEGA, QUAT_I)) == hash(Isometry(-OMEGA, -QUAT_I))


def test_non_unit_rejected():
    with pytest.raises(ValueError):
        Isometry(QUAT_ONE + QUAT_ONE, QUAT_ONE)


@given(unit_points)
def test_apply_preserves_unit_norm(x):
    g = Isometry(OMEGA, DUAL_UNIT)
    assert g.apply(x).norm_sq() == ONE


@given(unit_points)
@settings(max_examples=40)
def test_composition_law(x):
    g = Isometry(OMEGA, QUAT_I)
    h = Isometry(DUAL_UNIT, QUAT_J, reflect=True)
    assert (g * h).apply(x) == g.apply(h.apply(x))
    assert (h * g).apply(x) == h.apply(g.apply(x))


@given(unit_points)
@settings(max_examples=40)
def test_inverse_law(x):
    for g in (Isometry(OMEGA, QUAT_I), Isometry(DUAL_UNIT, QUAT_J, reflect=True)):
        assert (g * g.inverse()).apply(x) == x
        assert g.inverse().apply(g.apply(x)) == x


def test_left_and_right_multiplications_commute():
    a = Isometry.left_mult(OMEGA)
    b = Isometry.right_mult(DUAL_UNIT)
    for x in V24.points:
        assert (a * b).apply(x) == (b * a).apply(x)


# ---------------------------------------------------------------------------
# conjugation rotations


def test_conjugation_quarter_turn_about_k():
    rq = QuatEx(ZERO, ZERO, INV_SQRT2, INV_SQRT2)  # (1+k)/sqrt2
    g = conjugation_rotation(rq)
    assert g.apply(QUAT_I) == -QUAT_J
    assert g.apply(QUAT_ONE) == QUAT_ONE


def test_conjugation_identity():
    g = conjugation_rotation(QUAT_ONE)
    assert g == Isometry.identity()


def test_conjugation_by_omega_cycles_axes():
    # three-fold rotation about (i+j+k), clockwise seen from the axis
    g = conjugation_rotation(OMEGA)
    assert g.apply(QUAT_I) == QUAT_K
    assert g.apply(QUAT_K) == QUAT_J
    assert g.apply(QUAT_J) == QUAT_I


def test_conjugation_two_to_one():
    assert conjugation_rotation(OMEGA) == conjugation_rotation(-OMEGA)


def test_conjugation_matches_rotation_matrix_oracle():
    # oracle: Rodrigues rotation by -2*arccos(re r) about im(r) (counterclockwise),
    # i.e. clockwise by 2*arccos(re r) as seen from the axis toward 1
    cases = [
        QuatEx(ZERO, ZERO, INV_SQRT2, INV_SQRT2),
        OMEGA,
        QuatEx(INV_SQRT2, ZERO, ZERO, INV_SQRT2),
        QuatEx(HALF, -HALF, HALF, HALF),
    ]
    for rq in cases:
        g = conjugation_rotation(rq)
        x4 = rq.to_float()
        re, im = x4[3], x4[:3]
        n = math.sqrt(sum(c * c for c in im))
        ux, uy, uz = (c / n for c in im)
        phi = -2.0 * math.acos(max(-1.0, min(1.0, re)))
        c, s = math.cos(phi), math.sin(phi)
        C = 1 - c
        R = [
            [c + ux * ux * C, ux * uy * C - uz * s, ux * uz * C + uy * s],
            [uy * ux * C + uz * s, c + uy * uy * C, uy * uz * C - ux * s],
            [uz * ux * C - uy * s, uz * uy * C + ux * s, c + uz * uz * C],
        ]
        for basis in (QUAT_I, QUAT_J, QUAT_K):
            got = g.apply(basis).to_float()[:3]
            v = basis.to_float()[:3]
            want = [sum(R[i][k] * v[k] for k in range(3)) for i in range(3)]
            assert max(abs(a - b) for a, b in zip(got, want)) < 1e-12


def test_rotation_angle_axis():
    rq = QuatEx(ZERO, ZERO, INV_SQRT2, INV_SQRT2)
    axis, angle = rotation_angle_axis(conjugation_rotation(rq))
    assert angle == pytest.approx(math.pi / 2)
    assert axis == pytest.approx((0.0, 0.0, 1.0))

    axis, angle = rotation_angle_axis(conjugation_rotation(OMEGA))
    assert angle == pytest.approx(2 * math.pi / 3)
    assert axis == pytest.approx(tuple([1 / math.sqrt(3)] * 3))

    axis, angle = rotation_angle_axis(Isometry.identity())
    assert angle == 0.0 and axis is None

    with pytest.raises(ValueError):
        rotation_angle_axis(Isometry.left_mult(OMEGA))


# ---------------------------------------------------------------------------
# group generation


def test_left_tstar_closure():
    g = S.left_tstar_group()
    assert g.order == 24
    orbit_of_one = {e.apply(QUAT_ONE) for e in g.elements}
    assert orbit_of_one == V24.as_set()


def test_left_ostar_closure():
    g = S.left_ostar_group()
    assert g.order == 48
    orbit_of_one = {e.apply(QUAT_ONE) for e in g.elements}
    assert orbit_of_one == set(S.o_star())


def test_empty_generators_trivial_group():
    g = generate_group([])
    assert g.order == 1
    assert g.elements[0] == Isometry.identity()


def test_closure_cap():
    with pytest.raises(ClosureCapExceeded):
        generate_group([Isometry.left_mult(OMEGA), Isometry.left_mult(DUAL_UNIT)], cap=10)


def test_product_group_orders():
    assert S.dual_pair_rotations().order == 1152
    assert S.t_cross_c6_group().order == 144  # 24*12/2
    assert S.c2_cross_c11_group().order == 44  # 4*22/2


def test_product_group_closure_crosscheck():
    ostar = S.o_star()
    assert S.dual_pair_rotations().order == len(ostar) * len(ostar) // 2
    gens, ok = S.minimal_generators(S.dual_pair_rotations().elements)
    assert ok


def test_product_group_rejects_unclosed_input():
    with pytest.raises(ValueError):
        product_group([QUAT_ONE, QUAT_I], [QUAT_ONE, -QUAT_ONE])  # no -1/-i closure


def test_paired_rotor_group_is_closed():
    g = S.c2_cross_c11_group()
    assert g.verify_closed()


# ---------------------------------------------------------------------------
# stabilizers


def test_cell24_rotation_stabilizer():
    assert S.cell24_rotations().order == 576


def test_cell24_full_symmetry():
    assert S.cell24_full_symmetry().order == 1152


def test_dual_pair_full_symmetry():
    assert S.dual_pair_full_symmetry().order == 2304


def test_tesseract_stabilizer():
    g = S.tesseract_stabilizer(0)
    assert g.order == 192
    assert 576 // g.order == 3  # three tesseracts


def test_sixteen_cell_stabilizer_matches_complement():
    assert S.sixteen_cell_stabilizer(0).order == 192


def test_directed_edge_stabilizer_hedged():
    rep = S.directed_edge_report()
    assert rep["order"] == 288
    assert rep["left_projection_is_Tstar"] and rep["right_projection_is_Tstar"]
    assert "hedge" in rep["label"] or "paper-hedged" in rep["label"]


def test_extend_reflections_idempotent():
    full = S.cell24_full_symmetry()
    again = extend_reflections(full, Isometry(QUAT_ONE, QUAT_ONE, reflect=True))
    assert set(again.elements) == set(full.elements)


def test_extend_reflections_bad_witness():
    with pytest.raises(ValueError):
        extend_reflections(S.cell24_rotations(), Isometry.left_mult(OMEGA))
    # witness moving V24 off itself: conjugation then dual map reflection
    w = Isometry(QUAT_ONE, DUAL_UNIT, reflect=True)
    with pytest.raises(ValueError):
        extend_reflections(
            S.cell24_rotations(), w, structure=make_vertices("V24")
        )


# ---------------------------------------------------------------------------
# orbits


def test_edges_single_orbit_under_576():
    cx = build_complex("cell24")
    items = [frozenset(cx.edge_points(e)) for e in range(96)]
    parts = orbits(S.cell24_rotations(), items)
    assert len(parts) == 1 and len(parts[0]) == 96


def test_vertex_orbits_under_tesseract_stabilizer():
    parts = orbits(S.tesseract_stabilizer(0), list(V24.points))
    assert sorted(len(p) for p in parts) == [8, 16]


def test_orbits_under_trivial_group():
    g = generate_group([])
    parts = orbits(g, list(V24.points))
    assert len(parts) == 24 and all(len(p) == 1 for p in parts)


def test_orbit_sizes_divide_group_order():
    for g in (S.cell24_rotations(), S.tesseract_stabilizer(0)):
        for part in orbits(g, list(V24.points)):
            assert g.order % len(part) == 0


def test_orbit_stabilizer_product():
    for g in (S.cell24_rotations(), S.tesseract_stabilizer(0), S.left_tstar_group()):
        for x in (QUAT_ONE, OMEGA):
            orbit = {e.apply(x) for e in g.elements}
            stab = point_stabilizer(g, x)
            assert len(orbit) * stab.order == g.order


def test_orbits_rejects_nonpreserved_items():
    with pytest.raises(ValueError):
        orbits(S.left_ostar_group(), list(V24.points)[:5])


# ---------------------------------------------------------------------------
# edge <-> rotation correspondence


def test_edge_rotation_omega():
    e = edge_rotation(OMEGA, QUAT_ONE)
    assert e == OMEGA
    assert e ** 3 == -QUAT_ONE
    back = edge_rotation(QUAT_ONE, OMEGA)
    assert back == OMEGA.inv()
    assert back ** 3 == -QUAT_ONE


def test_edge_rotation_rejects_non_edges():
    with pytest.raises(ValueError):
        edge_rotation(QUAT_ONE, -QUAT_ONE)


def test_all_192_directed_edges_cube_to_minus_one():
    cx = build_complex("cell24")
    pts = cx.vertices.points
    count = 0
    for i, j in cx.edges:
        for p, r in ((pts[i], pts[j]), (pts[j], pts[i])):
            assert edge_rotation(p, r) ** 3 == -QUAT_ONE
            count += 1
    assert count == 192


def test_ring_through_one_and_omega():
    cx = build_complex("cell24")
    rp = edge_rings(cx)
    idx_one = cx.vertices.index(QUAT_ONE)
    ring = next(r for r in rp.rings if idx_one in r.vertices)
    pts = {cx.vertices.points[v] for v in ring.vertices}
    w2 = OMEGA * OMEGA
    assert pts == {QUAT_ONE, OMEGA, w2, -QUAT_ONE, -OMEGA, -w2}


def test_ring_partition_counts():
    rp = edge_rings(build_complex("cell24"))
    assert len(rp.rings) == 16
    assert len(rp.families) == 4
    assert all(len(f) == 4 for f in rp.families)
    seen = [e for r in rp.rings for e in r.edges]
    assert sorted(seen) == list(range(96))  # every edge exactly once


def test_rings_lie_on_great_circles():
    cx = build_complex("cell24")
    rp = edge_rings(cx)
    for ring in rp.rings[:4]:
        # all six vertices lie in the 2-plane spanned by the first two
        import numpy as np

        pts = np.array([cx.vertices.points[v].to_float() for v in ring.vertices])
        rank = np.linalg.matrix_rank(pts, tol=1e-9)
        assert rank == 2


# ---------------------------------------------------------------------------
# Hopf fibrations


def test_fiber_through_one_and_i():
    f = Fibration(QUAT_I, "left")
    fib = hopf_fiber(f, QUAT_ONE)
    assert fib.point(0.0) == pytest.approx((0, 0, 0, 1))
    assert fib.point(math.pi / 2) == pytest.approx((1, 0, 0, 0))
    assert fib.contains(QUAT_I)
    assert fib.contains(-QUAT_ONE)
    assert not fib.contains(QUAT_J)


def test_v24_partitions_into_six_fibers():
    f = Fibration(QUAT_I, "left")
    parts = fibration_partition(f, V24.points)
    assert len(parts) == 6
    assert all(len(p) == 4 for p in parts)
    v8 = make_vertices("V8").as_set()
    covering_v8 = [p for p in parts if set(p) <= v8]
    assert len(covering_v8) == 2
    v16 = make_vertices("V16").as_set()
    assert sum(1 for p in parts if set(p) <= v16) == 4


def test_fibers_through_antipodes_coincide():
    f = Fibration(QUAT_J, "right")
    for x in (QUAT_ONE, OMEGA):
        assert same_fiber(f, x, -x)


#: a sliding axis whose circle meets V8 only at +-1, so the six slid copies
#: of the 16-cell stay distinct (axes like i degenerate to three copies)
SLIDE_AXIS = QuatEx(INV_SQRT2, INV_SQRT2, ZERO, ZERO)


def test_slide_zero_is_identity():
    f = Fibration(QUAT_I, "left")
    pts = make_vertices("V8").points
    out = slide(f, 0.0, pts)
    for got, p in zip(out, pts):
        assert got == pytest.approx(p.to_float(), abs=1e-15)


def test_slide_by_pi_negates():
    f = Fibration(QUAT_I, "left")
    pts = make_vertices("V8").points
    out = slide_exact(f, 6, 6, pts)
    assert out == [-p for p in pts]


def test_twelve_sixth_turns_return_exactly():
    f = Fibration(SLIDE_AXIS, "left")
    pts = make_vertices("V8").points
    assert slide_exact(f, 12, 6, pts) == list(pts)


def test_six_distinct_16cell_images():
    # the +-[TxC6] model: a 16-cell slid in pi/6 steps has six distinct images
    f = Fibration(SLIDE_AXIS, "left")
    pts = make_vertices("V8").points
    images = set()
    for k in range(12):
        img = frozenset(
            tuple(round(c, 9) for c in q) for q in slide(f, k * math.pi / 6, pts)
        )
        images.add(img)
    assert len(images) == 6
    assert S.t_cross_c6_group().order == 2 * 12 * len(images)  # 144 = 24*12/2


def test_slide_exact_rejects_non_exact_angles():
    f = Fibration(QUAT_I, "left")
    with pytest.raises(ValueError):
        slide_exact(f, 1, 6, make_vertices("V8").points)


def test_fibration_validation():
    with pytest.raises(ValueError):
        Fibration(OMEGA, "left")  # not imaginary
    with pytest.raises(ValueError):
        Fibration(QUAT_I, "sideways")
