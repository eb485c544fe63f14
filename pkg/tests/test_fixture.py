import math

import pytest

from octaplex._fquat import fdot
from octaplex.fixture import Fixture, FixtureConfig, build_fixture, led_lookup
from octaplex.polytope import build_complex
from octaplex.projection import ViewPose


@pytest.fixture(scope="module")
def cell24():
    return build_complex("cell24")


@pytest.fixture(scope="module")
def default_fixture(cell24):
    return build_fixture(cell24)


def test_default_counts(default_fixture):
    assert default_fixture.led_count == 96 * 146 == 14016
    assert len(default_fixture.strands) == 28


def test_quadrants_balanced_without_fallback(default_fixture):
    assert not default_fixture.round_robin_fallback
    per_quadrant = [0, 0, 0, 0]
    for s in default_fixture.strands:
        per_quadrant[s.quadrant] += len(s.edges)
    assert per_quadrant == [24, 24, 24, 24]


def test_strand_loads(default_fixture):
    for q in range(4):
        loads = sorted(
            (len(s.edges) for s in default_fixture.strands if s.quadrant == q),
            reverse=True,
        )
        assert loads == [4, 4, 4, 3, 3, 3, 3]


def test_every_edge_once(default_fixture):
    seen = [e for s in default_fixture.strands for e in s.edges]
    assert sorted(seen) == list(range(96))


def test_t_values_centered_and_increasing(default_fixture):
    per_edge: dict[int, list[float]] = {}
    for led in default_fixture.leds:
        per_edge.setdefault(led.edge, []).append(led.t)
    for ts in per_edge.values():
        assert ts == sorted(ts)
        assert ts[0] == pytest.approx(0.5 / 146)
        assert ts[-1] == pytest.approx(145.5 / 146)


def test_offsets_contiguous(default_fixture):
    by_strand: dict[int, list[int]] = {}
    for led in default_fixture.leds:
        by_strand.setdefault(led.strand, []).append(led.offset)
    assert len(by_strand) == 28
    for offsets in by_strand.values():
        assert offsets == list(range(len(offsets)))
    assert sum(len(v) for v in by_strand.values()) == default_fixture.led_count


def test_positions_on_arc(cell24, default_fixture):
    for led in default_fixture.leds[:500]:
        n = math.sqrt(fdot(led.pos4, led.pos4))
        assert abs(n - 1.0) < 1e-9
        p, r = cell24.edge_points(led.edge)
        p4, r4 = p.to_float(), r.to_float()
        full = math.acos(max(-1, min(1, fdot(p4, r4))))
        a = math.acos(max(-1, min(1, fdot(p4, led.pos4))))
        b = math.acos(max(-1, min(1, fdot(led.pos4, r4))))
        assert abs(a + b - full) < 1e-9
        assert a == pytest.approx(led.t * full, abs=1e-9)


def test_lookup_round_trip(default_fixture):
    for led in default_fixture.leds[::997]:
        assert led_lookup(default_fixture, led.strand, led.offset) is led
    assert led_lookup(default_fixture, 0, 0).index == 0


def test_lookup_out_of_range(default_fixture):
    with pytest.raises(KeyError):
        led_lookup(default_fixture, 28, 0)
    with pytest.raises(KeyError):
        led_lookup(default_fixture, 0, 10**6)


def test_single_led_per_edge():
    cx = build_complex("cell16")
    f = build_fixture(cx, FixtureConfig(leds_per_edge=1))
    assert f.led_count == 24
    assert all(led.t == 0.5 for led in f.leds)


def test_rebuild_is_identical(cell24):
    a = build_fixture(cell24)
    b = build_fixture(cell24)
    assert a.leds == b.leds
    assert a.strands == b.strands


def test_pose_changes_projection_not_4d_layout(cell24, default_fixture):
    posed = build_fixture(cell24, pose=ViewPose.of(left=(0.1, 0.2, 0.3, 1.0)))

    def by_edge(f):
        out: dict[tuple[int, float], tuple] = {}
        for led in f.leds:
            out[(led.edge, led.t)] = led.pos4
        return out

    # same 4D layout per (edge, t), independent of pose
    assert by_edge(default_fixture) == by_edge(posed)
    # but the 3D projections move
    a0 = default_fixture.leds[0]
    twin = next(
        l for l in posed.leds if l.edge == a0.edge and l.t == a0.t
    )
    assert a0.pos3 != pytest.approx(twin.pos3)


def test_config_validation():
    with pytest.raises(ValueError):
        FixtureConfig(leds_per_edge=0)
    with pytest.raises(ValueError):
        FixtureConfig(quadrants=3)
