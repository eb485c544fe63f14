"""Vertex sets, incidence and compounds for the 24-cell family.

Everything here is derived by exact brute force over Q(√2) coordinates:
edges are pairs at a prescribed inner product, cells are the nearest-vertex
sets of dual directions (or maximal orthogonal cliques for the cross
polytope), faces are intersections of adjacent cells.  Nothing is
hand-tabulated, so the construction doubles as its own consistency check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .exactnum import (
    DUAL_UNIT,
    HALF,
    INV_SQRT2,
    OMEGA,
    QSqrt2,
    QUAT_I,
    QUAT_J,
    QUAT_K,
    QUAT_ONE,
    QuatEx,
    ZERO,
)

VERTEX_SET_NAMES = ("V8", "V16", "V16+", "V16-", "V24", "V24'")

_AXES = (QUAT_ONE, QUAT_I, QUAT_J, QUAT_K)


@dataclass(frozen=True)
class VertexSet:
    """A named, canonically ordered list of exact unit quaternions."""

    name: str
    points: tuple[QuatEx, ...]

    def __post_init__(self):
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.points)})

    def index(self, p: QuatEx) -> int:
        return self._index[p]

    def __contains__(self, p: QuatEx) -> bool:
        return p in self._index

    def __len__(self) -> int:
        return len(self.points)

    def as_set(self) -> frozenset[QuatEx]:
        return frozenset(self.points)


def _canonical(points: Iterable[QuatEx]) -> tuple[QuatEx, ...]:
    return tuple(sorted(set(points)))


def _check_unit_antipodal(points: Sequence[QuatEx]) -> None:
    pts = set(points)
    for p in points:
        if not p.is_unit():
            raise ValueError(f"non-unit vertex {p}")
        if -p not in pts:
            raise ValueError(f"vertex set not closed under negation at {p}")


def _minus_count(q: QuatEx) -> int:
    return sum(1 for c in (q.x, q.y, q.z, q.w) if c.sign() < 0)


def make_vertices(name: str) -> VertexSet:
    """Build one of the named exact vertex sets.

    V8 is the vertex-down 16-cell {±1, ±i, ±j, ±k}; V16 the cell-down
    tesseract (±i±j±k±1)/2, split by sign parity into V16+ and V16-;
    V24 = V8 ∪ V16 is the vertex-down 24-cell and V24' = (±x±y)/√2 its
    cell-down dual.
    """
    if name == "V8":
        pts = [a for u in _AXES for a in (u, -u)]
    elif name in ("V16", "V16+", "V16-"):
        pts = []
        for signs in itertools.product((HALF, -HALF), repeat=4):
            q = QuatEx(*signs)
            if name == "V16+" and _minus_count(q) % 2 == 1:
                continue
            if name == "V16-" and _minus_count(q) % 2 == 0:
                continue
            pts.append(q)
    elif name == "V24":
        pts = list(make_vertices("V8").points) + list(make_vertices("V16").points)
    elif name == "V24'":
        pts = []
        for ax, bx in itertools.combinations(_AXES, 2):
            for sa in (INV_SQRT2, -INV_SQRT2):
                for sb in (INV_SQRT2, -INV_SQRT2):
                    pts.append(ax * sa + bx * sb)
    else:
        raise ValueError(f"unknown vertex set {name!r}")
    points = _canonical(pts)
    _check_unit_antipodal(points)
    expected = {"V8": 8, "V16": 16, "V16+": 8, "V16-": 8, "V24": 24, "V24'": 24}[name]
    assert len(points) == expected, (name, len(points))
    return VertexSet(name, points)


# ---------------------------------------------------------------------------
# incidence


def derive_edges(vs: VertexSet, inner: QSqrt2) -> tuple[tuple[int, int], ...]:
    """All unordered index pairs whose points have exact inner product ``inner``."""
    out = []
    pts = vs.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if pts[i].dot(pts[j]) == inner:
                out.append((i, j))
    return tuple(out)


def tesseract_edges(vs: VertexSet) -> tuple[tuple[int, int], ...]:
    """Tesseract edges: vertices differing in exactly one coordinate.

    For a tesseract in standard position (all coordinates ±1/2) the literal
    differ-in-one rule applies; for a rotated copy the equivalent invariant
    criterion (inner product exactly 1/2) is used.  Either way the result
    must be a 4-regular graph on 32 edges.
    """
    if len(vs) != 16:
        raise ValueError(f"wrong cardinality: expected 16 vertices, got {len(vs)}")
    standard = all(
        c == HALF or c == -HALF
        for p in vs.points
        for c in (p.x, p.y, p.z, p.w)
    )
    if standard:
        edges = []
        for i in range(16):
            for j in range(i + 1, 16):
                p, q = vs.points[i], vs.points[j]
                diff = sum(
                    1 for a, b in zip((p.x, p.y, p.z, p.w), (q.x, q.y, q.z, q.w))
                    if a != b
                )
                if diff == 1:
                    edges.append((i, j))
        edges = tuple(edges)
    else:
        edges = derive_edges(vs, HALF)
    degree = [0] * 16
    for i, j in edges:
        degree[i] += 1
        degree[j] += 1
    if len(edges) != 32 or any(d != 4 for d in degree):
        raise ValueError("vertex set does not carry tesseract edge structure")
    return edges


def derive_cells_24cell(
    vs24: VertexSet, dual: VertexSet
) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """Octahedral cells of a 24-cell and its triangular faces.

    Each dual vertex c picks out the cell of the six vertices maximizing the
    inner product with c (the exact maximum is 1/√2).  Faces are the
    3-vertex intersections of adjacent cells.
    """
    cells = []
    for c in dual.points:
        dots = [v.dot(c) for v in vs24.points]
        best = max(dots)
        cell = tuple(i for i, d in enumerate(dots) if d == best)
        if len(cell) != 6 or best != INV_SQRT2:
            raise ValueError("inputs are not a dual 24-cell pair")
        cells.append(cell)
    faces = set()
    for a, b in itertools.combinations(cells, 2):
        shared = tuple(sorted(set(a) & set(b)))
        if len(shared) == 3:
            faces.add(shared)
    return tuple(sorted(set(cells))), tuple(sorted(faces))


def _orthogonal_cliques(
    points: Sequence[QuatEx], size: int
) -> tuple[tuple[int, ...], ...]:
    """Index subsets of the given size that are pairwise orthogonal."""
    n = len(points)
    orth = [[points[i].dot(points[j]) == ZERO for j in range(n)] for i in range(n)]
    out = []
    for combo in itertools.combinations(range(n), size):
        if all(orth[a][b] for a, b in itertools.combinations(combo, 2)):
            out.append(combo)
    return tuple(sorted(out))


def _cells_by_dual(
    points: Sequence[QuatEx], dual_dirs: Sequence[QuatEx], size: int
) -> tuple[tuple[int, ...], ...]:
    cells = []
    for c in dual_dirs:
        dots = [v.dot(c) for v in points]
        best = max(dots)
        cell = tuple(i for i, d in enumerate(dots) if d == best)
        if len(cell) != size:
            raise ValueError("dual directions do not induce cells of expected size")
        cells.append(cell)
    return tuple(sorted(set(cells)))


def _quad_cycle(
    quad: Sequence[int], edge_set: frozenset[tuple[int, int]]
) -> tuple[int, ...]:
    """Order 4 vertices into a cycle whose consecutive pairs are edges."""
    a = min(quad)
    rest = [v for v in quad if v != a]
    nbrs = [v for v in rest if tuple(sorted((a, v))) in edge_set]
    if len(nbrs) != 2:
        raise ValueError("quad is not a 4-cycle of edges")
    b = min(nbrs)
    d = max(nbrs)
    c = next(v for v in rest if v not in (b, d))
    if tuple(sorted((b, c))) not in edge_set or tuple(sorted((c, d))) not in edge_set:
        raise ValueError("quad is not a 4-cycle of edges")
    return (a, b, c, d)


@dataclass(frozen=True)
class CellComplex:
    """Vertices, edges, faces and cells of one polytope (or compound union).

    Faces are triangles for the simplex-faced polytopes and cyclically
    ordered quadruples for the tesseract, so consecutive face vertices are
    always edges.  ``vertex_tags``/``edge_tags`` carry compound membership.
    """

    kind: str
    vertices: VertexSet
    edges: tuple[tuple[int, int], ...]
    faces: tuple[tuple[int, ...], ...]
    cells: tuple[tuple[int, ...], ...]
    vertex_tags: tuple[frozenset[str], ...] = ()
    edge_tags: tuple[frozenset[str], ...] = ()

    @property
    def counts(self) -> tuple[int, int, int, int]:
        return (len(self.vertices), len(self.edges), len(self.faces), len(self.cells))

    @property
    def euler(self) -> int:
        v, e, f, c = self.counts
        return v - e + f - c

    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def edge_points(self, idx: int) -> tuple[QuatEx, QuatEx]:
        i, j = self.edges[idx]
        return (self.vertices.points[i], self.vertices.points[j])

    def neighbors(self) -> list[set[int]]:
        nbrs: list[set[int]] = [set() for _ in self.vertices.points]
        for i, j in self.edges:
            nbrs[i].add(j)
            nbrs[j].add(i)
        return nbrs

    def validate(self, boundary_of_s3: bool = True) -> None:
        """Check incidence consistency, raising ValueError on any defect."""
        edge_set = frozenset(self.edges)
        if tuple(sorted(edge_set)) != self.edges:
            raise ValueError("edges not canonically sorted/unique")
        for e in self.edges:
            if not (0 <= e[0] < e[1] < len(self.vertices)):
                raise ValueError(f"bad edge {e}")
        for f in self.faces:
            ring = list(f) + [f[0]]
            pairs = (
                itertools.combinations(f, 2)
                if len(f) == 3
                else zip(ring, ring[1:])
            )
            for a, b in pairs:
                if tuple(sorted((a, b))) not in edge_set:
                    raise ValueError(f"face {f} uses non-edge ({a},{b})")
        if self.cells:
            for f in self.faces:
                holders = [c for c in self.cells if set(f) <= set(c)]
                if len(holders) != 2:
                    raise ValueError(f"face {f} lies in {len(holders)} cells, not 2")
        if boundary_of_s3 and self.euler != 0:
            raise ValueError(f"Euler count {self.euler} != 0")

    def transformed(self, point_map: Callable[[QuatEx], QuatEx], kind: str | None = None,
                    name: str | None = None) -> "CellComplex":
        """Apply an exact point map and re-canonicalize vertex order."""
        new_pts = [point_map(p) for p in self.vertices.points]
        order = sorted(range(len(new_pts)), key=lambda i: new_pts[i])
        remap = {old: new for new, old in enumerate(order)}
        vs = VertexSet(name or self.vertices.name, tuple(new_pts[i] for i in order))
        edges = tuple(sorted(tuple(sorted((remap[i], remap[j]))) for i, j in self.edges))
        faces = []
        edge_set = frozenset(edges)
        for f in self.faces:
            mapped = tuple(remap[v] for v in f)
            if len(f) == 3:
                faces.append(tuple(sorted(mapped)))
            else:
                faces.append(_quad_cycle(mapped, edge_set))
        cells = tuple(sorted(tuple(sorted(remap[v] for v in c)) for c in self.cells))
        vtags = tuple(self.vertex_tags[i] for i in order) if self.vertex_tags else ()
        return CellComplex(
            kind or self.kind, vs, edges, tuple(sorted(faces)), cells, vtags, ()
        )


def _build_16cell_on(points: Sequence[QuatEx], name: str) -> CellComplex:
    """A 16-cell on 8 given vertices (4 orthogonal antipodal pairs)."""
    vs = VertexSet(name, _canonical(points))
    if len(vs) != 8:
        raise ValueError("16-cell needs 8 distinct vertices")
    edges = derive_edges(vs, ZERO)
    faces = _orthogonal_cliques(vs.points, 3)
    cells = _orthogonal_cliques(vs.points, 4)
    cx = CellComplex("cell16", vs, edges, faces, cells)
    if cx.counts != (8, 24, 32, 16):
        raise ValueError(f"not a 16-cell: counts {cx.counts}")
    cx.validate()
    return cx


def _build_tesseract_on(
    points: Sequence[QuatEx], dual_dirs: Sequence[QuatEx], name: str
) -> CellComplex:
    """A tesseract on 16 given vertices; cube cells point at ``dual_dirs``."""
    vs = VertexSet(name, _canonical(points))
    edges = tesseract_edges(vs)
    cells = _cells_by_dual(vs.points, dual_dirs, 8)
    edge_set = frozenset(edges)
    quads = set()
    for a, b in itertools.combinations(cells, 2):
        shared = tuple(sorted(set(a) & set(b)))
        if len(shared) == 4:
            quads.add(_quad_cycle(shared, edge_set))
    cx = CellComplex("tesseract", vs, edges, tuple(sorted(quads)), cells)
    if cx.counts != (16, 32, 24, 8):
        raise ValueError(f"not a tesseract: counts {cx.counts}")
    cx.validate()
    return cx


def build_complex(kind: str) -> CellComplex:
    """Full incidence for one of: cell16, tesseract, cell24, cell24-dual."""
    if kind == "cell16":
        return _build_16cell_on(make_vertices("V8").points, "V8")
    if kind == "tesseract":
        return _build_tesseract_on(
            make_vertices("V16").points, make_vertices("V8").points, "V16"
        )
    if kind == "cell24":
        vs = make_vertices("V24")
        dual = make_vertices("V24'")
        edges = derive_edges(vs, HALF)
        cells, faces = derive_cells_24cell(vs, dual)
        cx = CellComplex("cell24", vs, edges, faces, cells)
        if cx.counts != (24, 96, 96, 24):
            raise ValueError(f"not a 24-cell: counts {cx.counts}")
        cx.validate()
        return cx
    if kind == "cell24-dual":
        # rotated copy of the standard complex, not a separate construction
        return build_complex("cell24").transformed(
            lambda p: p * DUAL_UNIT, kind="cell24-dual", name="V24'"
        )
    raise ValueError(f"unknown complex kind {kind!r}")


# ---------------------------------------------------------------------------
# compounds


@dataclass(frozen=True)
class Compound:
    """Congruent polytopes sharing one ambient vertex set, with labels."""

    kind: str
    ambient: VertexSet
    components: tuple[tuple[str, CellComplex], ...]

    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.components)

    def component(self, label: str) -> CellComplex:
        for lab, cx in self.components:
            if lab == label:
                return cx
        raise KeyError(label)

    def union_complex(self) -> CellComplex:
        """Union of component edges on the shared ambient, with provenance tags."""
        amb = self.ambient
        for _, cx in self.components:
            for p in cx.vertices.points:
                if p not in amb:
                    raise ValueError("component vertex outside ambient")
        edge_tags: dict[tuple[int, int], set[str]] = {}
        vertex_tags: list[set[str]] = [set() for _ in amb.points]
        for label, cx in self.components:
            for p in cx.vertices.points:
                vertex_tags[amb.index(p)].add(label)
            for i, j in cx.edges:
                a = amb.index(cx.vertices.points[i])
                b = amb.index(cx.vertices.points[j])
                edge_tags.setdefault(tuple(sorted((a, b))), set()).add(label)
        edges = tuple(sorted(edge_tags))
        return CellComplex(
            f"compound:{self.kind}",
            amb,
            edges,
            (),
            (),
            tuple(frozenset(t) for t in vertex_tags),
            tuple(frozenset(edge_tags[e]) for e in edges),
        )


def _find_16cells(points: Sequence[QuatEx]) -> list[tuple[QuatEx, ...]]:
    """All 16-cell vertex subsets: 4 mutually orthogonal antipodal pairs."""
    reps = sorted({max(p, -p) for p in points})
    found = []
    for combo in itertools.combinations(reps, 4):
        if all(a.dot(b) == ZERO for a, b in itertools.combinations(combo, 2)):
            found.append(_canonical([s * q for q in combo for s in (1, -1)]))
    return found


_SIXTEEN_CELL_ORDER = ("V8", "V16+", "V16-")


def _labelled_16cells(points: Sequence[QuatEx]) -> list[tuple[str, tuple[QuatEx, ...]]]:
    cells16 = _find_16cells(points)
    if len(cells16) != 3:
        raise ValueError(f"expected 3 16-cells, found {len(cells16)}")
    by_name = {}
    for sub in cells16:
        for name in _SIXTEEN_CELL_ORDER:
            if frozenset(sub) == make_vertices(name).as_set():
                by_name[name] = sub
    if len(by_name) != 3:
        raise ValueError("16-cells do not match V8/V16+/V16-")
    return [(name, by_name[name]) for name in _SIXTEEN_CELL_ORDER]


def _standardizing_rotation(tess: frozenset[QuatEx]) -> int:
    """Power m with ω^m·T = V16, certifying T is a rotated tesseract."""
    v16 = make_vertices("V16").as_set()
    for m in range(3):
        w = OMEGA ** m
        if frozenset(w * p for p in tess) == v16:
            return m
    raise ValueError("vertex set is not a rotated copy of V16")


def build_compound(kind: str) -> Compound:
    """Build one of: three16, threeTesseracts, dualPair24, twoThree16."""
    if kind == "three16":
        v24 = make_vertices("V24")
        comps = tuple(
            (name, _build_16cell_on(sub, name))
            for name, sub in _labelled_16cells(v24.points)
        )
        return Compound(kind, v24, comps)

    if kind == "threeTesseracts":
        v24 = make_vertices("V24")
        comps = []
        for idx, (name, sub) in enumerate(_labelled_16cells(v24.points)):
            tess = [p for p in v24.points if p not in set(sub)]
            m = _standardizing_rotation(frozenset(tess))
            w = OMEGA ** m
            # differ-by-one-coordinate structure must hold after rotation
            std = _build_tesseract_on(
                [w * p for p in tess], make_vertices("V8").points, "std"
            )
            cx = _build_tesseract_on(tess, sub, f"tess{idx}")
            back = {w * p: p for p in tess}
            pulled = {
                tuple(sorted((back[std.vertices.points[i]], back[std.vertices.points[j]])))
                for i, j in std.edges
            }
            direct = {
                tuple(sorted(cx.edge_points(e))) for e in range(len(cx.edges))
            }
            if pulled != direct:
                raise ValueError("rotated edge structure disagrees with inner-product edges")
            comps.append((f"tess{idx}", cx))
        compound = Compound(kind, v24, tuple(comps))
        _check_tesseract_partition(compound)
        return compound

    if kind == "dualPair24":
        a = build_complex("cell24")
        b = build_complex("cell24-dual")
        ambient = VertexSet(
            "V24∪V24'", _canonical(a.vertices.points + b.vertices.points)
        )
        return Compound(kind, ambient, (("V24", a), ("V24'", b)))

    if kind == "twoThree16":
        v24 = make_vertices("V24")
        vdual = make_vertices("V24'")
        ambient = VertexSet("V24∪V24'", _canonical(v24.points + vdual.points))
        comps = []
        for name, sub in _labelled_16cells(v24.points):
            comps.append((name, _build_16cell_on(sub, name)))
        for name, sub in _labelled_16cells(v24.points):
            image = [p * DUAL_UNIT for p in sub]
            comps.append((name + "'", _build_16cell_on(image, name + "'")))
        return Compound(kind, ambient, tuple(comps))

    raise ValueError(f"unknown compound kind {kind!r}")


def _check_tesseract_partition(compound: Compound) -> None:
    """Three tesseracts must partition the 24-cell's 96 edges, 2 per vertex."""
    cell24 = build_complex("cell24")
    all_edges = {tuple(sorted(cell24.edge_points(e))) for e in range(96)}
    seen: set[tuple[QuatEx, QuatEx]] = set()
    for _, cx in compound.components:
        mine = {tuple(sorted(cx.edge_points(e))) for e in range(len(cx.edges))}
        if mine & seen:
            raise ValueError("tesseract edge sets overlap")
        seen |= mine
    if seen != all_edges:
        raise ValueError("tesseract edges do not cover the 24-cell")
    for p in compound.ambient.points:
        count = sum(1 for _, cx in compound.components if p in cx.vertices)
        if count != 2:
            raise ValueError(f"vertex {p} lies in {count} tesseracts, not 2")


def crossing_points(compound: Compound) -> tuple[QuatEx, ...]:
    """Normalized edge midpoints of three 16-cells: exactly the dual vertices.

    Every 16-cell edge joins orthogonal unit vertices, so p + r has squared
    norm exactly 2 and normalizes inside Q(√2).  Each of the 24 points of
    V24' is hit by exactly 3 edges, one per 16-cell.
    """
    if compound.kind != "three16":
        raise ValueError("crossing points are defined for the three16 compound")
    dual = make_vertices("V24'")
    hits: dict[QuatEx, int] = {}
    for _, cx in compound.components:
        for e in range(len(cx.edges)):
            p, r = cx.edge_points(e)
            s = p + r
            nrm = s.norm_sq().sqrt()
            if nrm.is_zero():
                raise ValueError(f"degenerate midpoint for edge {p}, {r}")
            mid = QuatEx(s.x / nrm, s.y / nrm, s.z / nrm, s.w / nrm)
            if mid not in dual:
                raise ValueError(f"midpoint {mid} is not a dual vertex")
            hits[mid] = hits.get(mid, 0) + 1
    if sorted(hits) != list(dual.points) or set(hits.values()) != {3}:
        raise ValueError("crossing incidence is not 3 edges per dual vertex")
    return tuple(sorted(hits))
