import itertools
import math

import numpy as np
import pytest

from octaplex._fquat import fdot, fmul, fnormalize, fsub
from octaplex.exactnum import OMEGA, QUAT_I, QUAT_J, QUAT_ONE, QuatEx
from octaplex.polytope import build_complex, make_vertices
from octaplex.projection import (
    AT_INFINITY,
    ProjectedArc,
    ViewPose,
    project_edge,
    sample_arc,
    stereo,
)
from octaplex.symmetry import edge_rings


def lsq_circle_fit(points):
    """Oracle: plane by SVD, then algebraic least-squares circle in-plane.

    Returns max deviation of the points from the fitted circle (distance to
    the plane and radial error combined).
    """
    P = np.asarray(points, dtype=float)
    centroid = P.mean(axis=0)
    Q = P - centroid
    _, _, vt = np.linalg.svd(Q, full_matrices=False)
    normal = vt[2]
    plane_dev = np.abs(Q @ normal)
    e1, e2 = vt[0], vt[1]
    xy = np.stack([Q @ e1, Q @ e2], axis=1)
    A = np.column_stack([2 * xy, np.ones(len(xy))])
    b = (xy ** 2).sum(axis=1)
    sol, *_ = np.linalg.lstsq(A, b, rcond=None)
    cx, cy, c0 = sol
    radius = math.sqrt(c0 + cx * cx + cy * cy)
    radial_dev = np.abs(np.hypot(xy[:, 0] - cx, xy[:, 1] - cy) - radius)
    return max(plane_dev.max(), radial_dev.max())


def lsq_line_fit(points):
    """Oracle: max distance of points from their least-squares line."""
    P = np.asarray(points, dtype=float)
    centroid = P.mean(axis=0)
    Q = P - centroid
    _, _, vt = np.linalg.svd(Q, full_matrices=False)
    d = vt[0]
    perp = Q - np.outer(Q @ d, d)
    return float(np.linalg.norm(perp, axis=1).max())


# ---------------------------------------------------------------------------
# point projection


def test_one_projects_to_origin():
    assert stereo(QUAT_ONE) == (0.0, 0.0, 0.0)


def test_i_projects_to_unit_x():
    assert stereo(QUAT_I) == (1.0, 0.0, 0.0)


def test_minus_one_is_at_infinity():
    assert stereo(-QUAT_ONE) is AT_INFINITY


def test_non_unit_rejected():
    with pytest.raises(ValueError):
        stereo((0.0, 0.0, 0.0, 0.5))


def test_distinct_vertices_stay_distinct():
    pose = ViewPose.of(left=(0.12, 0.23, 0.34, 0.9), right=(0.05, -0.1, 0.2, 0.95))
    pts = list(make_vertices("V24").points) + list(make_vertices("V24'").points)
    images = [stereo(pose.apply(p)) for p in pts]
    assert all(im is not AT_INFINITY for im in images)
    for a, b in itertools.combinations(images, 2):
        assert math.dist(a, b) > 1e-6


# ---------------------------------------------------------------------------
# edge arcs


def test_i_to_j_arc_is_circular_on_unit_sphere():
    arc = project_edge(QUAT_I, QUAT_J)
    assert arc.kind == "circular"
    assert arc.endpoints3[0] == pytest.approx((1, 0, 0))
    assert arc.endpoints3[1] == pytest.approx((0, 1, 0))
    for pt in sample_arc(arc, 17):
        assert math.sqrt(sum(c * c for c in pt)) == pytest.approx(1.0, abs=1e-12)


def test_one_to_i_is_straight():
    # the great circle through 1 and i passes through -1
    arc = project_edge(QUAT_ONE, QUAT_I)
    assert arc.kind == "straight"
    assert arc.endpoints3[0] == pytest.approx((0, 0, 0))
    assert arc.endpoints3[1] == pytest.approx((1, 0, 0))
    assert lsq_line_fit(sample_arc(arc, 33)) < 1e-9


def test_circle_fit_oracle_on_all_24cell_edges():
    cx = build_complex("cell24")
    kinds = {"circular": 0, "straight": 0}
    for e in range(96):
        p, r = cx.edge_points(e)
        arc = project_edge(p, r, edge=e)
        pts = sample_arc(arc, 64)
        kinds[arc.kind] += 1
        if arc.kind == "circular":
            assert lsq_circle_fit(pts) < 1e-9
            # endpoints lie on the described circle
            for q in arc.endpoints3:
                assert abs(math.dist(q, arc.center) - arc.radius) < 1e-9
            assert 0.0 < arc.sweep < 2 * math.pi
        else:
            assert lsq_line_fit(pts) < 1e-9
    # the 4 hexagonal rings through +-1 lie on great circles through the
    # pole, so exactly their 24 edges project straight
    assert kinds == {"circular": 72, "straight": 24}


def test_circle_fit_under_generic_pose():
    pose = ViewPose.of(left=(0.1, 0.2, 0.3, 1.0))
    for p, r in ((QUAT_I, QUAT_J), (QUAT_ONE, OMEGA), (OMEGA, OMEGA * OMEGA)):
        arc = project_edge(p, r, pose)
        assert arc.kind == "circular"
        assert lsq_circle_fit(sample_arc(arc, 64)) < 1e-9


def test_antipodal_rejected():
    with pytest.raises(ValueError):
        project_edge(QUAT_ONE, -QUAT_ONE)


def test_sample_counts_and_endpoints():
    arc = project_edge(QUAT_I, QUAT_J)
    two = sample_arc(arc, 2)
    assert two[0] == pytest.approx(arc.endpoints3[0])
    assert two[1] == pytest.approx(arc.endpoints3[1])
    with pytest.raises(ValueError):
        sample_arc(arc, 1)


def test_ring_samples_close_up():
    cx = build_complex("cell24")
    rp = edge_rings(cx)
    pose = ViewPose.of(left=(0.1, 0.2, 0.3, 1.0))
    ring = rp.rings[0]
    loop = []
    for m in range(6):
        a = cx.vertices.points[ring.vertices[m]]
        b = cx.vertices.points[ring.vertices[(m + 1) % 6]]
        loop.extend(sample_arc(project_edge(a, b, pose), 16))
    assert math.dist(loop[0], loop[-1]) < 1e-9
    for m in range(1, 6):
        assert math.dist(loop[16 * m - 1], loop[16 * m]) < 1e-9


def test_pose_equivariance():
    # project(pose(edge)) computed two ways gives identical samples
    pose = ViewPose.of(left=(0.3, 0.1, -0.2, 0.92), right=(0.0, 0.4, 0.1, 0.9))
    for p, r in ((QUAT_I, QUAT_J), (QUAT_ONE, OMEGA)):
        a = project_edge(p, r, pose)
        pre_p, pre_r = pose.apply(p), pose.apply(r)
        b = project_edge(pre_p, pre_r, ViewPose.identity())
        sa, sb = sample_arc(a, 32), sample_arc(b, 32)
        for qa, qb in zip(sa, sb):
            assert math.dist(qa, qb) < 1e-9


def test_angle_preservation_at_crossing():
    # two great circles meeting at i: one toward j, one toward 1;
    # compare the 4D tangent angle with the projected tangent angle
    pose = ViewPose.of(left=(0.05, 0.15, 0.25, 1.0))
    p = QUAT_I.to_float()

    def tangent(q4):
        d = fdot(q4, p)
        return fnormalize(fsub(q4, tuple(d * c for c in p)))

    t1 = tangent(QUAT_J.to_float())
    t2 = tangent(QUAT_ONE.to_float())
    ang4 = math.acos(max(-1, min(1, fdot(t1, t2))))

    eps = 1e-6
    base = stereo(pose.apply(p))

    def proj_dir(t4):
        q4 = fnormalize(tuple(pc + eps * tc for pc, tc in zip(p, t4)))
        moved = stereo(pose.apply(q4))
        return fnormalize(fsub(moved, base))

    d1, d2 = proj_dir(t1), proj_dir(t2)
    ang3 = math.acos(max(-1, min(1, fdot(d1, d2))))
    assert abs(ang3 - ang4) < 1e-5


def test_pose_validation():
    with pytest.raises(ValueError):
        ViewPose(left=(0.0, 0.0, 0.0, 1.1))
