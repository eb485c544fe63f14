"""Small float-quaternion and float-vector helpers shared by the rendering
side of the package (projection, fixtures, Hopf-slide animation).

Quaternions are (x, y, z, w) tuples matching ``QuatEx.to_float``.
"""

from __future__ import annotations

import math
from typing import Sequence

Vec4 = tuple[float, float, float, float]
Vec3 = tuple[float, float, float]


def fmul(p: Sequence[float], q: Sequence[float]) -> Vec4:
    x1, y1, z1, w1 = p
    x2, y2, z2, w2 = q
    return (
        w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
        w1 * y2 + y1 * w2 + z1 * x2 - x1 * z2,
        w1 * z2 + z1 * w2 + x1 * y2 - y1 * x2,
        w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
    )


def fconj(p: Sequence[float]) -> Vec4:
    return (-p[0], -p[1], -p[2], p[3])


def fdot(p: Sequence[float], q: Sequence[float]) -> float:
    return sum(a * b for a, b in zip(p, q))


def fnorm(p: Sequence[float]) -> float:
    return math.sqrt(fdot(p, p))


def fnormalize(p: Sequence[float]) -> Vec4:
    n = fnorm(p)
    if n == 0.0:
        raise ZeroDivisionError("cannot normalize zero vector")
    return tuple(a / n for a in p)  # type: ignore[return-value]


def fscale(p: Sequence[float], s: float) -> tuple[float, ...]:
    return tuple(a * s for a in p)


def fadd(p: Sequence[float], q: Sequence[float]) -> tuple[float, ...]:
    return tuple(a + b for a, b in zip(p, q))


def fsub(p: Sequence[float], q: Sequence[float]) -> tuple[float, ...]:
    return tuple(a - b for a, b in zip(p, q))


def cross3(a: Sequence[float], b: Sequence[float]) -> Vec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def rotor(axis: Sequence[float], theta: float) -> Vec4:
    """cosθ + sinθ·axis for a unit imaginary axis given as (x, y, z)."""
    c, s = math.cos(theta), math.sin(theta)
    return (s * axis[0], s * axis[1], s * axis[2], c)


def slerp(p: Sequence[float], q: Sequence[float], t: float) -> Vec4:
    """Point at arc-length fraction t along the minor great arc from p to q."""
    d = max(-1.0, min(1.0, fdot(p, q)))
    ang = math.acos(d)
    if ang < 1e-14:
        return tuple(p)  # type: ignore[return-value]
    s = math.sin(ang)
    a = math.sin((1.0 - t) * ang) / s
    b = math.sin(t * ang) / s
    return tuple(a * pc + b * qc for pc, qc in zip(p, q))  # type: ignore[return-value]
