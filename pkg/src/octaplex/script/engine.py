"""Scene evaluation: from a parsed Program and a Fixture to RGB frames.

Each scene resolves its group selector to a partition of the fixture's
edges into color classes (group orbits, ring families, or singletons) with
an associated symmetry group used for consistency checks.  Per frame, a
small table of byte triples is built per (class, animation-key) pair and
the frame is assembled by indexed lookup, so cost per frame is O(LED count)
while class/orbit work happens once per scene.
"""

from __future__ import annotations

import colorsys
import csv as _csv
import io
import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterator

from .. import symmetry as _sym
from ..fixture import Fixture
from ..polytope import build_compound
from . import palettes
from .lang import (
    BrightMul,
    BrightNum,
    BrightSignal,
    Brightness,
    GroupSel,
    HueShift,
    OrbitColor,
    Program,
    Scene,
    Slide,
    SolidColor,
    Sweep,
)

GAMMA = 2.2


@dataclass(frozen=True)
class Signal:
    """A scalar modulation envelope in [0, 1], looked up by interpolation."""

    samples: tuple[tuple[float, float], ...]

    def __post_init__(self):
        times = [t for t, _ in self.samples]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("signal times must be strictly increasing")

    @classmethod
    def constant(cls, value: float = 1.0) -> "Signal":
        return cls(((0.0, min(1.0, max(0.0, value))),))

    @classmethod
    def from_csv(cls, text: str) -> "Signal":
        rows = []
        for row in _csv.reader(io.StringIO(text)):
            if not row or not "".join(row).strip():
                continue
            try:
                t, a = float(row[0]), float(row[1])
            except (ValueError, IndexError):
                if rows:
                    raise ValueError(f"bad signal row: {row!r}")
                continue  # header
            rows.append((t, min(1.0, max(0.0, a))))
        if not rows:
            raise ValueError("signal file has no samples")
        return cls(tuple(rows))

    def __call__(self, t: float) -> float:
        s = self.samples
        if t <= s[0][0]:
            return s[0][1]
        if t >= s[-1][0]:
            return s[-1][1]
        i = bisect_right([x for x, _ in s], t)
        (t0, a0), (t1, a1) = s[i - 1], s[i]
        return a0 + (a1 - a0) * (t - t0) / (t1 - t0)


@dataclass(frozen=True)
class Frame:
    rgb: bytes
    index: int
    timestamp: float

    def __post_init__(self):
        if len(self.rgb) % 3:
            raise ValueError("frame byte length must be a multiple of 3")


def _gamma_byte(v: float) -> int:
    return round(255.0 * (min(1.0, max(0.0, v)) ** GAMMA))


def _rgb_bytes(rgb: tuple[float, float, float], scale: float) -> bytes:
    return bytes((_gamma_byte(rgb[0] * scale),
                  _gamma_byte(rgb[1] * scale),
                  _gamma_byte(rgb[2] * scale)))


def eval_brightness(b: Brightness, signal_value: float) -> float:
    if isinstance(b, BrightNum):
        return b.value
    if isinstance(b, BrightSignal):
        return signal_value
    return eval_brightness(b.a, signal_value) * eval_brightness(b.b, signal_value)


# ---------------------------------------------------------------------------
# group selector resolution


@dataclass(frozen=True)
class EdgeClasses:
    """Edge -> color-class map plus the group used for consistency checks."""

    class_of: tuple[int, ...]
    count: int
    group: _sym.SymGroup


def resolve_selector(sel: GroupSel, fixture: Fixture) -> EdgeClasses:
    cx = fixture.complex
    if sel.kind == "trivial":
        return EdgeClasses(tuple(range(len(cx.edges))), len(cx.edges),
                           _sym.generate_group([], name="trivial"))
    if sel.kind == "rings":
        rp = _sym.edge_rings(cx)
        class_of = [0] * len(cx.edges)
        for ring in rp.rings:
            for e in ring.edges:
                class_of[e] = ring.family
        return EdgeClasses(tuple(class_of), len(rp.families),
                           _sym.right_tstar_group())
    if sel.kind == "full24":
        group = _sym.cell24_rotations()
    elif sel.kind == "dualpair":
        group = _sym.dual_pair_rotations()
    elif sel.kind == "directed24":
        group = _sym.directed_edge_stabilizer()
    elif sel.kind == "tess":
        group = _sym.tesseract_stabilizer(sel.arg or 0)
    elif sel.kind == "sixteen":
        group = _sym.sixteen_cell_stabilizer(sel.arg or 0)
    else:
        raise ValueError(f"unknown group selector {sel.kind!r}")
    items = [frozenset(cx.edge_points(e)) for e in range(len(cx.edges))]
    parts = _sym.orbits(group, items)
    class_of = [0] * len(items)
    for cls, part in enumerate(parts):
        for e in part:
            class_of[e] = cls
    return EdgeClasses(tuple(class_of), len(parts), group)


# ---------------------------------------------------------------------------
# renderer


def _class_colors(color, count: int) -> list[tuple[float, float, float]]:
    if isinstance(color, SolidColor):
        lin = tuple(c / 255.0 for c in color.rgb)
        return [lin] * count
    out = []
    for cls in range(count):
        pos = cls / (count - 1) if count > 1 else 0.5
        out.append(palettes.sample(color.palette, pos))
    return out


@dataclass
class _SceneRuntime:
    scene: Scene
    classes: EdgeClasses
    colors: list[tuple[float, float, float]]
    cells: list[tuple[int, ...]] | None  # edge indices per swept cell
    orient: list[int] | None  # per-edge +-1 slide direction


class Renderer:
    """Evaluates one program against one fixture; scene data is prepared
    once per scene, frames cost O(LED count)."""

    def __init__(self, program: Program, fixture: Fixture):
        self.program = program
        self.fixture = fixture
        self._starts: list[float] = []
        acc = 0.0
        for s in program.scenes:
            self._starts.append(acc)
            acc += s.duration
        self._total = acc
        self._runtimes: dict[int, _SceneRuntime] = {}
        leds = fixture.leds
        n_per = fixture.config.leds_per_edge
        self._led_edge = [led.edge for led in leds]
        self._led_k = [int(led.t * n_per) for led in leds]
        self._key_cache: dict[tuple, list[int]] = {}

    @property
    def total_duration(self) -> float:
        return self._total

    def scene_index_at(self, t: float) -> int:
        if not (0.0 <= t < self._total):
            raise ValueError(f"time {t} outside program [0, {self._total})")
        i = bisect_right(self._starts, t) - 1
        return max(0, i)

    def scene_group(self, index: int) -> _sym.SymGroup:
        return self._runtime(index).classes.group

    def scene_classes(self, index: int) -> EdgeClasses:
        return self._runtime(index).classes

    def _runtime(self, index: int) -> _SceneRuntime:
        rt = self._runtimes.get(index)
        if rt is not None:
            return rt
        scene = self.program.scenes[index]
        classes = resolve_selector(scene.group, self.fixture)
        colors = _class_colors(scene.color, classes.count)
        cells = None
        orient = None
        if isinstance(scene.animate, Sweep):
            cells = self._sweep_cells(scene.animate.what)
        if isinstance(scene.animate, Slide):
            orient = self._edge_orientations(scene.animate.side)
        rt = _SceneRuntime(scene, classes, colors, cells, orient)
        self._runtimes[index] = rt
        return rt

    def _sweep_cells(self, what: str) -> list[tuple[int, ...]]:
        cx = self.fixture.complex
        eidx = cx.edge_index()
        if what == "cells":
            out = []
            for cell in cx.cells:
                cell_set = set(cell)
                out.append(tuple(
                    eidx[e] for e in cx.edges_of_cell(cell)
                ) if hasattr(cx, "edges_of_cell") else tuple(
                    i for i, (a, b) in enumerate(cx.edges)
                    if a in cell_set and b in cell_set
                ))
            if not out:
                raise ValueError("complex has no cells to sweep")
            return out
        # cubes: the 24 cube cells of the three tesseracts, as 24-cell edges
        compound = build_compound("threeTesseracts")
        pts = cx.vertices
        out = []
        for _, tess in compound.components:
            for cell in tess.cells:
                cell_pts = [tess.vertices.points[v] for v in cell]
                idxs = {pts.index(p) for p in cell_pts}
                out.append(tuple(
                    i for i, (a, b) in enumerate(cx.edges)
                    if a in idxs and b in idxs
                ))
        return out

    def _edge_orientations(self, side: str) -> list[int]:
        cx = self.fixture.complex
        try:
            dirs = _sym.directed_edges(cx)
        except ValueError:
            return [1] * len(cx.edges)
        flip = -1 if side == "right" else 1
        return [flip * (1 if (i, j) == d else -1)
                for (i, j), d in zip(cx.edges, dirs)]

    def frame(self, t: float, signal: Signal, index: int = 0) -> Frame:
        rt = self._runtime(self.scene_index_at(t))
        scene = rt.scene
        t_local = t - self._starts[self.scene_index_at(t)]
        sig = signal(t)
        bright = eval_brightness(scene.brightness, sig)
        n_per = self.fixture.config.leds_per_edge
        anim = scene.animate

        if anim is None or isinstance(anim, HueShift):
            colors = rt.colors
            if isinstance(anim, HueShift):
                shifted = []
                for rgb in colors:
                    h, s, v = colorsys.rgb_to_hsv(*rgb)
                    shifted.append(colorsys.hsv_to_rgb((h + sig) % 1.0, s, v))
                colors = shifted
            table = [_rgb_bytes(c, bright) for c in colors]
            keys = self._keys(("class",), lambda led: rt.classes.class_of[
                self._led_edge[led]])
            return Frame(b"".join(map(table.__getitem__, keys)), index, t)

        if isinstance(anim, Sweep):
            active = int(t_local // anim.step) % len(rt.cells)
            lit = set(rt.cells[active])
            table = []
            for cls in range(rt.classes.count):
                table.append(_rgb_bytes(rt.colors[cls], bright))  # lit
            black = bytes(3)
            keys = self._keys(("sweep", active), lambda led: (
                rt.classes.class_of[self._led_edge[led]]
                if self._led_edge[led] in lit else -1))
            full = table + [black]
            return Frame(b"".join(full[k] for k in keys), index, t)

        # slide: brightness wave traveling along each edge's parameter
        speed = anim.speed
        n_cls = rt.classes.count
        table = []
        for cls in range(n_cls):
            for direction in (1, -1):
                for k in range(n_per):
                    t_param = (k + 0.5) / n_per
                    wave = 0.5 * (1.0 + math.cos(
                        2.0 * math.pi * (t_param - direction * speed * t_local)))
                    table.append(_rgb_bytes(rt.colors[cls], bright * wave))
        keys = self._keys(("slide",), lambda led: (
            rt.classes.class_of[self._led_edge[led]] * 2 * n_per
            + (0 if rt.orient[self._led_edge[led]] > 0 else 1) * n_per
            + self._led_k[led]))
        return Frame(b"".join(map(table.__getitem__, keys)), index, t)

    def _keys(self, cache_key: tuple, fn) -> list[int]:
        scene_key = (id(self._runtimes),) + cache_key
        keys = self._key_cache.get(scene_key)
        if keys is None:
            keys = [fn(i) for i in range(len(self.fixture.leds))]
            self._key_cache[scene_key] = keys
        return keys


_renderers: dict[tuple[int, int], Renderer] = {}


def evaluate(program: Program, fixture: Fixture, t: float,
             signal: Signal | None = None) -> Frame:
    """One frame at time t; renderer state is memoized per (program, fixture)."""
    key = (id(program), id(fixture))
    r = _renderers.get(key)
    if r is None or r.program is not program or r.fixture is not fixture:
        r = Renderer(program, fixture)
        _renderers[key] = r
    return r.frame(t, signal or Signal.constant())


def render(program: Program, fixture: Fixture, fps: float,
           signal: Signal | None = None) -> Iterator[Frame]:
    """Frames at k/fps for the whole program; count = ceil(duration * fps)."""
    if fps <= 0:
        raise ValueError("fps must be positive")
    sig = signal or Signal.constant()
    r = Renderer(program, fixture)
    count = math.ceil(r.total_duration * fps)
    for k in range(count):
        yield r.frame(k / fps, sig, index=k)


def frame_count(program: Program, fps: float) -> int:
    return math.ceil(program.total_duration * fps)
