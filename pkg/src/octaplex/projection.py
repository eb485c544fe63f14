"""Stereographic projection of S³ points and edge arcs into 3-space.

Projection is from the pole -1 onto the hyperplane w = 0, which sends 1 to
the origin, the unit imaginaries to the unit sphere, and -1 to infinity.
Great-circle edges project to circular arcs, or to straight segments when
their great circle passes through the pole.  Poses rotate the scene before
projection; the pole never moves.  All math here is double precision: the
exact world ends at this module's boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from . import _fquat
from .exactnum import QuatEx

UNIT_TOL = 1e-9
POLE_TOL = 1e-9

#: straight arcs are unbounded in principle; rendering clips them here
DEFAULT_CLIP_RADIUS = 10.0


class AtInfinity:
    """The image of the projection pole: a value, not an error."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "AtInfinity"


AT_INFINITY = AtInfinity()


def _as4(p) -> tuple[float, float, float, float]:
    if isinstance(p, QuatEx):
        return p.to_float()
    t = tuple(float(c) for c in p)
    if len(t) != 4:
        raise ValueError("expected a 4-vector")
    return t


def stereo(p) -> tuple[float, float, float] | AtInfinity:
    """Project a unit 4-vector (x, y, z, w) to (x, y, z)/(1 + w)."""
    x, y, z, w = _as4(p)
    n = math.sqrt(x * x + y * y + z * z + w * w)
    if abs(n - 1.0) > UNIT_TOL:
        raise ValueError(f"stereo input has norm {n}, not 1")
    if abs(w + 1.0) <= POLE_TOL:
        return AT_INFINITY
    d = 1.0 + w
    return (x / d, y / d, z / d)


@dataclass(frozen=True)
class ViewPose:
    """A float rotation x ↦ left·x·right applied to the scene before projection."""

    left: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 1.0)
    right: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 1.0)

    def __post_init__(self):
        for q in (self.left, self.right):
            if abs(_fquat.fnorm(q) - 1.0) > 1e-12:
                raise ValueError("pose quaternions must be unit within 1e-12")

    @classmethod
    def identity(cls) -> "ViewPose":
        return cls()

    @classmethod
    def of(cls, left=None, right=None) -> "ViewPose":
        norm = lambda q: _fquat.fnormalize(tuple(float(c) for c in q))
        return cls(
            norm(left) if left is not None else (0.0, 0.0, 0.0, 1.0),
            norm(right) if right is not None else (0.0, 0.0, 0.0, 1.0),
        )

    def apply(self, p) -> tuple[float, float, float, float]:
        return _fquat.fmul(_fquat.fmul(self.left, _as4(p)), self.right)


@dataclass(frozen=True)
class ProjectedArc:
    """The projected image of one great-circle edge arc.

    ``endpoints4`` are the pose-transformed 4D endpoints; sampling walks the
    4D arc (equal 4D arc length) and projects, so straight and circular arcs
    share one parameterization.  For circular arcs the fitted circle data
    (center, radius, unit plane normal, sweep angle) describe the image; for
    straight arcs they are None and the endpoints may be clipped.
    """

    kind: str  # "circular" | "straight"
    endpoints3: tuple[tuple[float, float, float], tuple[float, float, float]]
    endpoints4: tuple[tuple[float, float, float, float], tuple[float, float, float, float]]
    center: tuple[float, float, float] | None = None
    radius: float | None = None
    normal: tuple[float, float, float] | None = None
    sweep: float = 0.0
    edge: int | None = None


def _arc_point(p4, u4, angle, t):
    c, s = math.cos(t * angle), math.sin(t * angle)
    return tuple(c * a + s * b for a, b in zip(p4, u4))


def _project_clipped(p4, clip_radius):
    img = stereo(p4)
    if img is AT_INFINITY:
        raise ValueError("sample at the pole")
    n = math.sqrt(sum(c * c for c in img))
    if n > clip_radius:
        img = tuple(c * clip_radius / n for c in img)
    return img


def _circumcircle(a, b, m):
    """Center, radius and unit normal of the circle through three 3D points."""
    u = _fquat.fsub(b, a)
    v = _fquat.fsub(m, a)
    n = _fquat.cross3(u, v)
    nn = _fquat.fdot(n, n)
    if nn < 1e-18:
        raise ValueError("points are collinear")
    uu = _fquat.fdot(u, u)
    vv = _fquat.fdot(v, v)
    rel = _fquat.fscale(
        _fquat.fadd(
            _fquat.fscale(_fquat.cross3(n, u), -vv),
            _fquat.fscale(_fquat.cross3(n, v), uu),
        ),
        -0.5 / nn,
    )
    center = _fquat.fadd(a, rel)
    radius = math.sqrt(_fquat.fdot(rel, rel))
    normal = _fquat.fnormalize(n)
    return center, radius, normal


def project_edge(p, r, pose: ViewPose = ViewPose(), edge: int | None = None,
                 clip_radius: float = DEFAULT_CLIP_RADIUS) -> ProjectedArc:
    """Project the minor great-circle arc from p to r.

    The image is circular unless the (pose-transformed) great circle passes
    through the pole -1 within POLE_TOL, in which case it is a straight
    segment, clipped to ``clip_radius`` where it runs off to infinity.
    """
    p4 = pose.apply(_as4(p))
    r4 = pose.apply(_as4(r))
    d = _fquat.fdot(p4, r4)
    if d < -1.0 + 1e-12:
        raise ValueError("antipodal endpoints: arc is ambiguous")
    if d > 1.0 - 1e-12:
        raise ValueError("coincident endpoints")
    # orthonormal frame of the great circle: p4, u4
    u4 = _fquat.fnormalize(_fquat.fsub(r4, _fquat.fscale(p4, d)))
    angle = math.acos(max(-1.0, min(1.0, d)))

    # does span{p4, u4} contain the pole N = (0,0,0,-1)?
    pole = (0.0, 0.0, 0.0, -1.0)
    coeff_p = _fquat.fdot(pole, p4)
    coeff_u = _fquat.fdot(pole, u4)
    resid = _fquat.fsub(pole, _fquat.fadd(_fquat.fscale(p4, coeff_p),
                                          _fquat.fscale(u4, coeff_u)))
    through_pole = _fquat.fnorm(resid) <= POLE_TOL

    if through_pole:
        # endpoints at the pole are replaced by a clipped point slightly
        # inside the arc (1e-3 of the sweep clears POLE_TOL comfortably)
        a3 = _project_clipped(p4, clip_radius) if abs(p4[3] + 1) > POLE_TOL else None
        b3 = _project_clipped(r4, clip_radius) if abs(r4[3] + 1) > POLE_TOL else None
        if a3 is None:
            a3 = _project_clipped(_arc_point(p4, u4, angle, 1e-3), clip_radius)
        if b3 is None:
            b3 = _project_clipped(_arc_point(p4, u4, angle, 1.0 - 1e-3), clip_radius)
        return ProjectedArc("straight", (a3, b3), (p4, r4), edge=edge, sweep=angle)

    a3 = stereo(p4)
    b3 = stereo(r4)
    m3 = stereo(_arc_point(p4, u4, angle, 0.5))
    center, radius, normal = _circumcircle(a3, b3, m3)

    # orient the normal so the arc a -> m -> b is counterclockwise
    e1 = _fquat.fnormalize(_fquat.fsub(a3, center))
    e2 = _fquat.cross3(normal, e1)
    ang = lambda pt: math.atan2(
        _fquat.fdot(_fquat.fsub(pt, center), e2),
        _fquat.fdot(_fquat.fsub(pt, center), e1),
    ) % (2 * math.pi)
    if not (0.0 < ang(m3) < ang(b3)):
        normal = tuple(-c for c in normal)
        e2 = _fquat.cross3(normal, e1)
        if not (0.0 < ang(m3) < ang(b3)):
            raise RuntimeError("could not orient projected arc")
    sweep = ang(b3)
    return ProjectedArc(
        "circular", (a3, b3), (p4, r4),
        center=center, radius=radius, normal=normal, sweep=sweep, edge=edge,
    )


def sample_arc(arc: ProjectedArc, n: int,
               clip_radius: float = DEFAULT_CLIP_RADIUS
               ) -> list[tuple[float, float, float]]:
    """n projected points at equal steps of 4D arc length, endpoints included.

    Circular images are returned unclipped; straight images (which run off
    to infinity when the 4D arc meets the pole) are clipped to the radius.
    """
    if n < 2:
        raise ValueError("need at least 2 samples")
    p4, r4 = arc.endpoints4
    d = max(-1.0, min(1.0, _fquat.fdot(p4, r4)))
    u4 = _fquat.fnormalize(_fquat.fsub(r4, _fquat.fscale(p4, d)))
    angle = math.acos(d)
    clip = arc.kind == "straight"
    out = []
    for k in range(n):
        t = k / (n - 1)
        x4 = _arc_point(p4, u4, angle, t)
        img = stereo(x4)
        if img is AT_INFINITY:
            nudged = t - 1e-3 if t > 0.5 else t + 1e-3
            img = _project_clipped(_arc_point(p4, u4, angle, nudged), clip_radius)
        elif clip:
            nrm = math.sqrt(sum(c * c for c in img))
            if nrm > clip_radius:
                img = tuple(c * clip_radius / nrm for c in img)
        out.append(img)
    return out
