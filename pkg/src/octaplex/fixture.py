"""The virtual LED fixture: strands, addressing, and per-LED positions.

A fixture lays ``leds_per_edge`` lights along every projected edge arc of a
complex, organized into quadrants (by the sign pair of each edge's projected
midpoint) and strands within quadrants.  LED parameters are centered samples
of 4D arc length, so the 4D position is pose-independent while the 3D
position reflects the build pose.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _fquat
from .polytope import CellComplex
from .projection import AT_INFINITY, ViewPose, stereo

_SIGN_QUADRANT = {(1, 1): 0, (-1, 1): 1, (-1, -1): 2, (1, -1): 3}
_AMBIG_TOL = 1e-9


@dataclass(frozen=True)
class FixtureConfig:
    leds_per_edge: int = 146
    quadrants: int = 4
    strands_per_quadrant: int = 7

    def __post_init__(self):
        if min(self.leds_per_edge, self.quadrants, self.strands_per_quadrant) < 1:
            raise ValueError("fixture config values must be positive")
        if self.quadrants != 4:
            raise ValueError("quadrant assignment is defined for exactly 4 quadrants")


@dataclass(frozen=True)
class Led:
    index: int
    strand: int
    offset: int
    edge: int
    t: float
    pos4: tuple[float, float, float, float]
    pos3: tuple[float, float, float]


@dataclass(frozen=True)
class Strand:
    id: int
    quadrant: int
    edges: tuple[int, ...]


@dataclass(frozen=True)
class Fixture:
    config: FixtureConfig
    complex: CellComplex
    pose: ViewPose
    strands: tuple[Strand, ...]
    leds: tuple[Led, ...]
    round_robin_fallback: bool

    def __post_init__(self):
        object.__setattr__(
            self, "_by_address", {(l.strand, l.offset): l for l in self.leds}
        )

    def lookup(self, strand: int, offset: int) -> Led:
        led = self._by_address.get((strand, offset))
        if led is None:
            raise KeyError(f"no LED at strand {strand}, offset {offset}")
        return led

    @property
    def led_count(self) -> int:
        return len(self.leds)


def _quadrant_assignment(cx: CellComplex, pose: ViewPose) -> tuple[list[int], bool]:
    """Assign edges to quadrants by projected-midpoint sign pair.

    Edges whose midpoint sits on a quadrant boundary (|x| or |y| below
    tolerance) may go to either adjacent quadrant; a small augmenting-path
    matching balances the loads to the per-quadrant targets.  If no balanced
    assignment exists, falls back to round-robin and reports it.
    """
    n_edges = len(cx.edges)
    targets = [n_edges // 4 + (1 if q < n_edges % 4 else 0) for q in range(4)]
    loads = [0, 0, 0, 0]
    assignment: list[int | None] = [None] * n_edges
    candidates: dict[int, tuple[int, ...]] = {}

    for e in range(n_edges):
        p, r = cx.edge_points(e)
        m4 = _fquat.fnormalize(_fquat.fadd(p.to_float(), r.to_float()))
        m3 = stereo(pose.apply(m4))
        if m3 is AT_INFINITY:
            candidates[e] = (0, 1, 2, 3)
            continue
        x, y = m3[0], m3[1]
        xs = [1, -1] if abs(x) <= _AMBIG_TOL else [1 if x > 0 else -1]
        ys = [1, -1] if abs(y) <= _AMBIG_TOL else [1 if y > 0 else -1]
        quads = tuple(sorted(_SIGN_QUADRANT[(sx, sy)] for sx in xs for sy in ys))
        if len(quads) == 1:
            assignment[e] = quads[0]
            loads[quads[0]] += 1
        else:
            candidates[e] = quads

    feasible = all(loads[q] <= targets[q] for q in range(4))

    def place(e: int, visited: set[int]) -> bool:
        # direct placement, then try to evict a movable boundary edge
        for q in candidates[e]:
            if loads[q] < targets[q]:
                assignment[e] = q
                loads[q] += 1
                return True
        for q in candidates[e]:
            if q in visited:
                continue
            visited.add(q)
            for f in sorted(f for f, qs in candidates.items()
                            if assignment[f] == q):
                assignment[f] = None
                loads[q] -= 1
                if place(f, visited):
                    assignment[e] = q
                    loads[q] += 1
                    return True
                assignment[f] = q
                loads[q] += 1
        return False

    if feasible:
        for e in sorted(candidates):
            if not place(e, set()):
                feasible = False
                break

    if not feasible:
        return [e % 4 for e in range(n_edges)], True
    return [q for q in assignment], False  # type: ignore[misc]


def build_fixture(cx: CellComplex, cfg: FixtureConfig = FixtureConfig(),
                  pose: ViewPose = ViewPose.identity()) -> Fixture:
    """Deterministically lay out LEDs: total = edges x leds_per_edge."""
    if not cx.edges:
        raise ValueError("complex has no edges")
    quad_of, fallback = _quadrant_assignment(cx, pose)

    strands: list[Strand] = []
    for q in range(cfg.quadrants):
        edges_q = [e for e in range(len(cx.edges)) if quad_of[e] == q]
        n, s_count = len(edges_q), cfg.strands_per_quadrant
        base, extra = divmod(n, s_count)
        pos = 0
        for s in range(s_count):
            take = base + (1 if s < extra else 0)
            strands.append(
                Strand(q * s_count + s, q, tuple(edges_q[pos:pos + take]))
            )
            pos += take

    leds: list[Led] = []
    n_per = cfg.leds_per_edge
    for strand in strands:
        offset = 0
        for e in strand.edges:
            p, r = cx.edge_points(e)
            p4, r4 = p.to_float(), r.to_float()
            for k in range(n_per):
                t = (k + 0.5) / n_per
                pos4 = _fquat.slerp(p4, r4, t)
                img = stereo(pose.apply(pos4))
                if img is AT_INFINITY:
                    raise ValueError(
                        f"LED on edge {e} sits at the projection pole; adjust pose"
                    )
                leds.append(Led(len(leds), strand.id, offset, e, t, pos4, img))
                offset += 1

    return Fixture(cfg, cx, pose, tuple(strands), tuple(leds), fallback)


def led_lookup(fixture: Fixture, strand: int, offset: int) -> Led:
    return fixture.lookup(strand, offset)
