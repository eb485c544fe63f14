"""4D isometries as quaternion pairs, finite group machinery, and fibrations.

An orientation-preserving isometry of S³ is x ↦ l·x·r for unit quaternions
l, r; allowing x ↦ l·x̄·r adds the reflections.  The pair is only determined
up to a joint sign, so elements are stored sign-canonicalized, which makes
exact hashing and set arithmetic on whole groups possible.  Groups are
generated by brute-force closure; the named stabilizers of the 24-cell
family are computed by filtering, never tabulated.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import _fquat
from .exactnum import (
    DUAL_UNIT,
    HALF,
    INV_SQRT2,
    OMEGA,
    ONE,
    QSqrt2,
    QUAT_I,
    QUAT_ONE,
    QuatEx,
    ZERO,
)
from .polytope import (
    CellComplex,
    Compound,
    VertexSet,
    build_complex,
    build_compound,
    make_vertices,
)


class ClosureCapExceeded(RuntimeError):
    """Raised when group closure exceeds its element cap."""


# Group scans multiply the same few dozen quaternions millions of times
# (everything stays inside O* and the vertex sets), so memoizing the exact
# product and the unit check makes closure and stabilizer filters cheap.
@lru_cache(maxsize=1 << 18)
def _qmul(p: QuatEx, q: QuatEx) -> QuatEx:
    return p * q


@lru_cache(maxsize=1 << 16)
def _is_unit(q: QuatEx) -> bool:
    return q.norm_sq() == ONE


# ---------------------------------------------------------------------------
# isometries


def _canonical_sign(l: QuatEx) -> int:
    """+1 if l is already canonical, -1 if the pair must be negated.

    Canonical means the first nonzero coordinate of l, in the order
    (w, x, y, z), is positive.
    """
    for c in (l.w, l.x, l.y, l.z):
        s = c.sign()
        if s:
            return s
    raise ValueError("zero quaternion cannot appear in an isometry")


class Isometry:
    """x ↦ l·x·r (or l·x̄·r with the reflect flag), sign-canonicalized."""

    __slots__ = ("l", "r", "reflect", "_hash")

    def __init__(self, l: QuatEx, r: QuatEx, reflect: bool = False):
        if not (_is_unit(l) and _is_unit(r)):
            raise ValueError("isometry parts must be exact unit quaternions")
        if _canonical_sign(l) < 0:
            l, r = -l, -r
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "reflect", bool(reflect))
        object.__setattr__(self, "_hash", hash((l, r, reflect)))

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("Isometry is immutable")

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(QUAT_ONE, QUAT_ONE)

    @classmethod
    def left_mult(cls, q: QuatEx) -> "Isometry":
        return cls(q, QUAT_ONE)

    @classmethod
    def right_mult(cls, q: QuatEx) -> "Isometry":
        return cls(QUAT_ONE, q)

    def apply(self, x: QuatEx) -> QuatEx:
        if self.reflect:
            x = x.conj()
        return _qmul(_qmul(self.l, x), self.r)

    def __mul__(self, other: "Isometry") -> "Isometry":
        """Composition: (g * h)(x) = g(h(x))."""
        if not isinstance(other, Isometry):
            return NotImplemented
        if self.reflect:
            l = _qmul(self.l, other.r.conj())
            r = _qmul(other.l.conj(), self.r)
        else:
            l = _qmul(self.l, other.l)
            r = _qmul(other.r, self.r)
        return Isometry(l, r, self.reflect ^ other.reflect)

    def inverse(self) -> "Isometry":
        if self.reflect:
            return Isometry(self.r.inv().conj(), self.l.inv().conj(), True)
        return Isometry(self.l.inv(), self.r.inv())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Isometry):
            return NotImplemented
        return (self.reflect == other.reflect
                and self.l == other.l and self.r == other.r)

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self):
        lq, rq = self.l, self.r
        return (self.reflect, (lq.x, lq.y, lq.z, lq.w), (rq.x, rq.y, rq.z, rq.w))

    def __repr__(self) -> str:
        tag = ", reflect" if self.reflect else ""
        return f"Isometry({self.l}, {self.r}{tag})"


def conjugation_rotation(rq: QuatEx) -> Isometry:
    """x ↦ r⁻¹·x·r: fixes ±1 and rotates the imaginary 3-space about
    im(rq) by 2·arccos(re(rq)), clockwise seen from the axis toward 1."""
    return Isometry(rq.inv(), rq)


def rotation_angle_axis(g: Isometry) -> tuple[tuple[float, float, float] | None, float]:
    """Axis and angle of a rotation fixing 1 (l = r⁻¹, reflect off).

    Returns (axis, angle) with angle = 2·arccos(re(r)) in [0, 2π) and axis
    None for the identity.
    """
    if g.reflect or g.l * g.r != QUAT_ONE:
        raise ValueError("isometry does not fix 1")
    re = max(-1.0, min(1.0, float(g.r.w)))
    angle = 2.0 * math.acos(re)
    im = (float(g.r.x), float(g.r.y), float(g.r.z))
    n = math.sqrt(sum(c * c for c in im))
    if n < 1e-15 or angle == 0.0:
        return (None, 0.0)
    return (tuple(c / n for c in im), angle)


# ---------------------------------------------------------------------------
# symbolic cyclic lifts (for ±[A×C_n] with cos(π/n) outside Q(√2))

_COS_QUARTERS = (ONE, INV_SQRT2, ZERO, -INV_SQRT2, -ONE, -INV_SQRT2, ZERO, INV_SQRT2)
_SIN_QUARTERS = (ZERO, INV_SQRT2, ONE, INV_SQRT2, ZERO, -INV_SQRT2, -ONE, -INV_SQRT2)


@dataclass(frozen=True)
class CyclicLift:
    """Binary lift of the cyclic rotation group C_n about a fixed axis.

    The lift is the order-2n quaternion subgroup generated by
    cos(π/n) + sin(π/n)·axis; elements are tracked by their integer index
    so group bookkeeping stays exact even when the angle leaves Q(√2).
    """

    axis: QuatEx
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("cyclic order must be >= 1")
        if not (self.axis.is_unit() and self.axis.w.is_zero()):
            raise ValueError("fibration axis must be an exact unit imaginary quaternion")

    @property
    def order(self) -> int:
        return 2 * self.n

    def exact_rotor(self, k: int) -> QuatEx:
        """cos(kπ/n) + sin(kπ/n)·axis, when those values lie in Q(√2)."""
        t = Fraction(k % self.order, self.n) * 4  # angle in quarter-π units
        if t.denominator != 1:
            raise ValueError(f"cos/sin of {k}π/{self.n} lie outside Q(√2)")
        m = int(t) % 8
        return QuatEx(
            self.axis.x * _SIN_QUARTERS[m],
            self.axis.y * _SIN_QUARTERS[m],
            self.axis.z * _SIN_QUARTERS[m],
            _COS_QUARTERS[m],
        )

    def all_exact(self) -> bool:
        return self.n in (1, 2, 4)

    def float_rotor(self, k: int) -> tuple[float, float, float, float]:
        theta = math.pi * (k % self.order) / self.n
        ax = self.axis.to_float()
        return _fquat.rotor((ax[0], ax[1], ax[2]), theta)


class PairedRotor:
    """x ↦ a·x·r_k with exact left part and symbolic cyclic right index."""

    __slots__ = ("a", "k", "lift", "_hash")

    def __init__(self, a: QuatEx, k: int, lift: CyclicLift):
        if not a.is_unit():
            raise ValueError("left part must be an exact unit quaternion")
        k %= lift.order
        if _canonical_sign(a) < 0:
            a, k = -a, (k + lift.n) % lift.order
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "lift", lift)
        object.__setattr__(self, "_hash", hash((a, k, lift)))

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("PairedRotor is immutable")

    def __mul__(self, other: "PairedRotor") -> "PairedRotor":
        if not isinstance(other, PairedRotor):
            return NotImplemented
        if other.lift != self.lift:
            raise ValueError("rotors belong to different cyclic lifts")
        # right factors share one axis circle, hence commute
        return PairedRotor(self.a * other.a, self.k + other.k, self.lift)

    def inverse(self) -> "PairedRotor":
        return PairedRotor(self.a.inv(), -self.k, self.lift)

    def apply_float(self, x4: Sequence[float]) -> tuple[float, float, float, float]:
        return _fquat.fmul(
            _fquat.fmul(self.a.to_float(), x4), self.lift.float_rotor(self.k)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PairedRotor):
            return NotImplemented
        return self.a == other.a and self.k == other.k and self.lift == other.lift

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self):
        a = self.a
        return (False, (a.x, a.y, a.z, a.w), (self.k,))

    def __repr__(self) -> str:
        return f"PairedRotor({self.a}, k={self.k}/{self.lift.order})"


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class SymGroup:
    """A finite, closed set of isometries with a generating set."""

    elements: tuple
    generators: tuple = ()
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "_members", frozenset(self.elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return g in self._members

    def __iter__(self):
        return iter(self.elements)

    def verify_closed(self) -> bool:
        """Full multiplication-table closure check (quadratic; small groups)."""
        return all(a * b in self._members for a in self.elements for b in self.elements)


def _sorted_elements(els: Iterable) -> tuple:
    return tuple(sorted(els, key=lambda e: e.sort_key()))


def _close(generators: Sequence, cap: int) -> set:
    gens = list(generators)
    ident = gens[0] * gens[0].inverse()
    els = {ident}
    gens = gens + [g.inverse() for g in gens]
    frontier = [ident]
    while frontier:
        fresh = []
        for b in frontier:
            for g in gens:
                c = g * b
                if c not in els:
                    els.add(c)
                    fresh.append(c)
                    if len(els) > cap:
                        raise ClosureCapExceeded(
                            f"group closure exceeded cap of {cap} elements"
                        )
        frontier = fresh
    return els


def generate_group(generators: Sequence, cap: int = 20000,
                   name: str | None = None) -> SymGroup:
    """Closure of the generators under composition and inverse."""
    gens = tuple(generators)
    if not gens:
        return SymGroup((Isometry.identity(),), (), name)
    els = _close(gens, cap)
    return SymGroup(_sorted_elements(els), gens, name)


def minimal_generators(elements: Sequence) -> tuple[tuple, bool]:
    """Greedy small generating set, plus whether its closure is the input set.

    The boolean doubles as a subgroup certificate: if the closure of a
    subset of the input equals the input, the input is closed.
    """
    els = _sorted_elements(set(elements))
    target = set(els)
    gens: list = []
    closed = {els[0] * els[0].inverse()}
    for e in els:
        if e not in closed:
            gens.append(e)
            closed = _close(gens, cap=4 * len(els) + 16)
    return tuple(gens), closed == target


def product_group(left, right, name: str | None = None) -> SymGroup:
    """The group of maps x ↦ a·x·b with a, b over two binary lifts.

    Each side is either an explicit set of exact unit quaternions (closed
    under multiplication and negation) or a ``CyclicLift``; a symbolic lift
    is supported on the right side.  The order is |L|·|R|/2 because (a, b)
    and (-a, -b) act identically.
    """
    if isinstance(left, CyclicLift):
        if not left.all_exact():
            raise ValueError("symbolic cyclic lift supported on the right side only")
        left = tuple(left.exact_rotor(k) for k in range(left.order))
    lset = _validated_lift(left, "left")

    if isinstance(right, CyclicLift) and right.all_exact():
        right = tuple(right.exact_rotor(k) for k in range(right.order))

    if isinstance(right, CyclicLift):
        els = {PairedRotor(a, k, right) for a in lset for k in range(right.order)}
        expected = len(lset) * right.order // 2
        gens, ok = minimal_generators(els)
    else:
        rset = _validated_lift(right, "right")
        els = {Isometry(a, b) for a in lset for b in rset}
        expected = len(lset) * len(rset) // 2
        gens, ok = minimal_generators(els)
    if len(els) != expected or not ok:
        raise ValueError("product inputs are not closed binary lifts")
    return SymGroup(_sorted_elements(els), gens, name)


def _validated_lift(side, label: str) -> frozenset[QuatEx]:
    pts = frozenset(side)
    for q in pts:
        if not q.is_unit():
            raise ValueError(f"{label} lift contains a non-unit quaternion")
        if -q not in pts:
            raise ValueError(f"{label} lift is not closed under negation")
    for a, b in itertools.product(pts, repeat=2):
        if a * b not in pts:
            raise ValueError(f"{label} lift is not closed under multiplication")
    return pts


# ---------------------------------------------------------------------------
# stabilizers and orbits


def _vertex_permutation(iso: Isometry, points: Sequence[QuatEx],
                        index: dict[QuatEx, int]) -> list[int] | None:
    """Index permutation induced by iso on the point set, or None."""
    perm = []
    for p in points:
        j = index.get(iso.apply(p))
        if j is None:
            return None
        perm.append(j)
    return perm


def _structure_parts(structure):
    if isinstance(structure, VertexSet):
        return structure.points, None, None
    if isinstance(structure, CellComplex):
        return structure.vertices.points, structure, None
    if isinstance(structure, Compound):
        return structure.ambient.points, None, structure
    raise TypeError(f"unsupported structure {type(structure).__name__}")


def stabilizer(group: SymGroup, structure, mode: str = "vertices",
               name: str | None = None) -> SymGroup:
    """Subgroup of ``group`` preserving the structure setwise.

    mode selects what must be preserved: the vertex set, the unordered edge
    set, the canonically directed edge set, or a compound's components (which
    may be permuted).  The result carries a verified small generating set.
    """
    points, cx, compound = _structure_parts(structure)
    index = {p: i for i, p in enumerate(points)}
    if mode == "vertices":
        check = lambda perm: True
    elif mode == "edges":
        if cx is None:
            raise TypeError("edges mode needs a CellComplex")
        edge_set = {frozenset(e) for e in cx.edges}
        check = lambda perm: all(
            frozenset((perm[i], perm[j])) in edge_set for i, j in cx.edges
        )
    elif mode == "directed-edges":
        if cx is None:
            raise TypeError("directed-edges mode needs a CellComplex")
        dirs = directed_edges(cx)
        dir_set = set(dirs)
        check = lambda perm: all((perm[t], perm[h]) in dir_set for t, h in dirs)
    elif mode == "components":
        if compound is None:
            raise TypeError("components mode needs a Compound")
        comp_sets = [
            frozenset(index[p] for p in c.vertices.points)
            for _, c in compound.components
        ]
        universe = set(map(frozenset, comp_sets))
        check = lambda perm: all(
            frozenset(perm[i] for i in c) in universe for c in comp_sets
        )
    else:
        raise ValueError(f"unknown stabilizer mode {mode!r}")

    kept = []
    for g in group.elements:
        if not isinstance(g, Isometry):
            raise TypeError("stabilizers require exact isometry groups")
        perm = _vertex_permutation(g, points, index)
        if perm is not None and check(perm):
            kept.append(g)
    gens, ok = minimal_generators(kept)
    if not ok:
        raise RuntimeError("stabilizer filter did not yield a closed subgroup")
    return SymGroup(_sorted_elements(kept), gens, name)


def point_stabilizer(group: SymGroup, x: QuatEx, name: str | None = None) -> SymGroup:
    kept = [g for g in group.elements if g.apply(x) == x]
    gens, ok = minimal_generators(kept)
    if not ok:
        raise RuntimeError("point stabilizer is not closed")
    return SymGroup(_sorted_elements(kept), gens, name)


def extend_reflections(group: SymGroup, witness: Isometry,
                       structure=None, mode: str = "vertices",
                       name: str | None = None) -> SymGroup:
    """Adjoin a reflection witness, doubling the group (idempotently).

    If a structure is supplied, the witness must preserve it; the extension
    must close at exactly twice the order (or leave the set unchanged when
    the witness is already present).
    """
    if not witness.reflect:
        raise ValueError("witness must be a reflection")
    if structure is not None:
        points, _, _ = _structure_parts(structure)
        index = {p: i for i, p in enumerate(points)}
        if _vertex_permutation(witness, points, index) is None:
            raise ValueError("witness does not preserve structure")
    base = set(group.elements)
    extended = base | {g * witness for g in group.elements}
    if extended == base:
        return group
    if len(extended) != 2 * group.order:
        raise ValueError("witness does not normalize the group")
    gens, ok = minimal_generators(extended)
    if not ok:
        raise ValueError("extension did not close at twice the order")
    return SymGroup(_sorted_elements(extended), gens, name)


def _apply_item(g: Isometry, item):
    if isinstance(item, QuatEx):
        return g.apply(item)
    if isinstance(item, tuple):
        return tuple(g.apply(p) for p in item)
    if isinstance(item, frozenset):
        return frozenset(g.apply(p) for p in item)
    raise TypeError(f"cannot act on item of type {type(item).__name__}")


def orbits(group: SymGroup, items: Sequence) -> tuple[tuple[int, ...], ...]:
    """Partition of the items into group orbits, as sorted index tuples.

    Items may be points (QuatEx), directed tuples of points, or frozensets
    of points (unordered edges, cells).  Raises if the group moves an item
    outside the given set.
    """
    index = {item: i for i, item in enumerate(items)}
    if len(index) != len(items):
        raise ValueError("duplicate items")
    gens = group.generators or group.elements
    unassigned = set(range(len(items)))
    parts = []
    for start in range(len(items)):
        if start not in unassigned:
            continue
        unassigned.discard(start)
        orbit = {start}
        frontier = [items[start]]
        while frontier:
            fresh = []
            for it in frontier:
                for g in gens:
                    image = _apply_item(g, it)
                    j = index.get(image)
                    if j is None:
                        raise ValueError("group does not preserve the item set")
                    if j in unassigned:
                        unassigned.discard(j)
                        orbit.add(j)
                        fresh.append(image)
            frontier = fresh
        parts.append(tuple(sorted(orbit)))
    return tuple(parts)


# ---------------------------------------------------------------------------
# the edge <-> three-fold-rotation correspondence


def _is_hurwitz_unit(q: QuatEx) -> bool:
    return all(c == HALF or c == -HALF for c in (q.x, q.y, q.z, q.w))


def _even_parity(q: QuatEx) -> bool:
    return sum(1 for c in (q.x, q.y, q.z, q.w) if c.sign() < 0) % 2 == 0


def edge_rotation(p: QuatEx, r: QuatEx) -> QuatEx:
    """The quotient e = p·r⁻¹ of a directed 24-cell edge; satisfies e³ = -1."""
    if p.dot(r) != HALF:
        raise ValueError("pair is not an edge of the vertex-down 24-cell")
    return p * r.inv()


def directed_edges(cx: CellComplex) -> tuple[tuple[int, int], ...]:
    """Each 24-cell edge directed so head·tail⁻¹ has even sign parity.

    This is the orientation induced by the parity-advancing three-fold
    rotations (the V16+ quotients); exactly one direction per edge qualifies.
    """
    pts = cx.vertices.points
    out = []
    for i, j in cx.edges:
        q = pts[j] * pts[i].inv()
        if not _is_hurwitz_unit(q):
            raise ValueError("complex is not a vertex-down 24-cell")
        out.append((i, j) if _even_parity(q) else (j, i))
    return tuple(out)


@dataclass(frozen=True)
class Ring:
    """A closed 6-edge great-circle ring with its rotation quotient."""

    edges: tuple[int, ...]
    vertices: tuple[int, ...]
    quotient: QuatEx
    axis_key: tuple[int, int, int]
    family: int


@dataclass(frozen=True)
class RingPartition:
    rings: tuple[Ring, ...]
    families: tuple[tuple[int, ...], ...]


def _axis_key(q: QuatEx) -> tuple[int, int, int]:
    signs = (q.x.sign(), q.y.sign(), q.z.sign())
    return signs if signs[0] > 0 else tuple(-s for s in signs)


def edge_rings(cx: CellComplex) -> RingPartition:
    """Partition the 96 edges into 16 hexagonal rings in 4 axis families.

    Walking an edge's even-parity quotient e around (e has order 6) closes a
    ring of six vertices on one great circle; rings sharing the three-fold
    rotation axis of their quotient form a family.
    """
    pts = cx.vertices.points
    eidx = cx.edge_index()
    dirs = directed_edges(cx)
    assigned: dict[int, int] = {}
    raw: list[tuple[tuple[int, ...], tuple[int, ...], QuatEx]] = []
    for e0 in range(len(cx.edges)):
        if e0 in assigned:
            continue
        tail, head = dirs[e0]
        q = pts[head] * pts[tail].inv()
        seq = [tail]
        cur = pts[tail]
        for _ in range(5):
            cur = q * cur
            seq.append(cx.vertices.index(cur))
        ring_edges = tuple(
            eidx[tuple(sorted((seq[m], seq[(m + 1) % 6])))] for m in range(6)
        )
        for re_ in ring_edges:
            if re_ in assigned:
                raise RuntimeError("edge assigned to two rings")
            assigned[re_] = len(raw)
        raw.append((ring_edges, tuple(seq), q))
    if len(assigned) != len(cx.edges):
        raise RuntimeError("rings do not cover all edges")
    keys = sorted({_axis_key(q) for _, _, q in raw})
    rings = tuple(
        Ring(edges, vertices, q, _axis_key(q), keys.index(_axis_key(q)))
        for edges, vertices, q in raw
    )
    families = tuple(
        tuple(i for i, r in enumerate(rings) if r.family == f)
        for f in range(len(keys))
    )
    return RingPartition(rings, families)


# ---------------------------------------------------------------------------
# Hopf fibrations and sliding


@dataclass(frozen=True)
class Fibration:
    """A fibration of S³ into great-circle rails: one-sided multiplication
    by the circle through 1 and the given exact imaginary unit axis."""

    axis: QuatEx
    side: str = "left"

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        if not (self.axis.is_unit() and self.axis.w.is_zero()):
            raise ValueError("fibration axis must be an exact unit imaginary quaternion")


@dataclass(frozen=True)
class Fiber:
    """The great-circle fiber through a base point, with 2π-periodic parameter."""

    fibration: Fibration
    base: QuatEx

    def point(self, theta: float) -> tuple[float, float, float, float]:
        ax = self.fibration.axis.to_float()
        rot = _fquat.rotor((ax[0], ax[1], ax[2]), theta)
        x = self.base.to_float()
        return _fquat.fmul(rot, x) if self.fibration.side == "left" else _fquat.fmul(x, rot)

    def contains(self, y: QuatEx) -> bool:
        return same_fiber(self.fibration, self.base, y)


def same_fiber(f: Fibration, x: QuatEx, y: QuatEx) -> bool:
    """Exact test: y is reachable from x by the fibration's multiplication."""
    u = y * x.inv() if f.side == "left" else x.inv() * y
    ax = f.axis
    cx = u.y * ax.z - u.z * ax.y
    cy = u.z * ax.x - u.x * ax.z
    cz = u.x * ax.y - u.y * ax.x
    return cx.is_zero() and cy.is_zero() and cz.is_zero()


def hopf_fiber(f: Fibration, x: QuatEx) -> Fiber:
    return Fiber(f, x)


def fibration_partition(f: Fibration, points: Sequence[QuatEx]
                        ) -> tuple[tuple[QuatEx, ...], ...]:
    """Partition points into fibers, each fiber canonically sorted."""
    remaining = sorted(points)
    fibers = []
    while remaining:
        base = remaining[0]
        mine = tuple(p for p in remaining if same_fiber(f, base, p))
        fibers.append(mine)
        remaining = [p for p in remaining if p not in set(mine)]
    return tuple(fibers)


def slide(f: Fibration, theta: float, points: Iterable
          ) -> list[tuple[float, float, float, float]]:
    """Slide points along the fibration by angle theta (float pipeline)."""
    ax = f.axis.to_float()
    rot = _fquat.rotor((ax[0], ax[1], ax[2]), theta)
    out = []
    for p in points:
        x = p.to_float() if isinstance(p, QuatEx) else tuple(p)
        out.append(_fquat.fmul(rot, x) if f.side == "left" else _fquat.fmul(x, rot))
    return out


def slide_exact(f: Fibration, k: int, n: int, points: Iterable[QuatEx]
                ) -> list[QuatEx]:
    """Slide by kπ/n exactly; only quarter-π multiples stay inside Q(√2)."""
    rot = CyclicLift(f.axis, n).exact_rotor(k)
    if f.side == "left":
        return [rot * p for p in points]
    return [p * rot for p in points]


# ---------------------------------------------------------------------------
# the named groups of the 24-cell family (computed, cached)


def t_star() -> tuple[QuatEx, ...]:
    """The binary tetrahedral group as a point set: exactly V24."""
    return make_vertices("V24").points


def o_star() -> tuple[QuatEx, ...]:
    """The binary octahedral group as a point set: V24 ∪ V24'."""
    return tuple(sorted(set(make_vertices("V24").points)
                        | set(make_vertices("V24'").points)))


@lru_cache(maxsize=None)
def left_tstar_group() -> SymGroup:
    return generate_group(
        [Isometry.left_mult(OMEGA), Isometry.left_mult(QUAT_I)], name="T* (left)"
    )


@lru_cache(maxsize=None)
def left_ostar_group() -> SymGroup:
    return generate_group(
        [Isometry.left_mult(OMEGA), Isometry.left_mult(QUAT_I),
         Isometry.left_mult(DUAL_UNIT)],
        name="O* (left)",
    )


@lru_cache(maxsize=None)
def right_tstar_group() -> SymGroup:
    return generate_group(
        [Isometry.right_mult(OMEGA), Isometry.right_mult(QUAT_I)], name="T* (right)"
    )


@lru_cache(maxsize=None)
def dual_pair_rotations() -> SymGroup:
    """±[O×O]: the rotation group of the dual pair of 24-cells, order 1152."""
    g = product_group(o_star(), o_star(), name="±[O×O]")
    return g


@lru_cache(maxsize=None)
def cell24_rotations() -> SymGroup:
    """Rotations preserving V24 setwise: order 576 (±½[O×O] rotations)."""
    return stabilizer(
        dual_pair_rotations(), make_vertices("V24"), "vertices",
        name="±½[O×O] (rotations)",
    )


@lru_cache(maxsize=None)
def cell24_full_symmetry() -> SymGroup:
    """Rotations + reflections fixing V24: order 1152 (the F4 Weyl group)."""
    return extend_reflections(
        cell24_rotations(), Isometry(QUAT_ONE, QUAT_ONE, reflect=True),
        structure=make_vertices("V24"), name="24-cell full symmetry",
    )


@lru_cache(maxsize=None)
def dual_pair_full_symmetry() -> SymGroup:
    """±[O×O]·2: all isometries of the dual pair, order 2304."""
    amb = build_compound("dualPair24").ambient
    return extend_reflections(
        dual_pair_rotations(), Isometry(QUAT_ONE, QUAT_ONE, reflect=True),
        structure=amb, name="±[O×O]·2",
    )


@lru_cache(maxsize=None)
def tesseract_stabilizer(k: int = 0) -> SymGroup:
    """Rotations preserving one tesseract of the compound: order 192."""
    compound = build_compound("threeTesseracts")
    label, cx = compound.components[k]
    return stabilizer(
        dual_pair_rotations(), cx.vertices, "vertices",
        name=f"±⅙[O×O] (rotations, {label})",
    )


@lru_cache(maxsize=None)
def sixteen_cell_stabilizer(k: int = 0) -> SymGroup:
    """Rotations preserving one 16-cell of the three16 compound."""
    compound = build_compound("three16")
    label, cx = compound.components[k]
    return stabilizer(
        dual_pair_rotations(), cx.vertices, "vertices",
        name=f"16-cell stabilizer ({label})",
    )


@lru_cache(maxsize=None)
def directed_edge_stabilizer() -> SymGroup:
    """Rotations preserving the directed 24-cell edge set: order 288.

    The name ±[T×T] is reported as a hedge, not asserted; see
    ``directed_edge_report`` for the computed structural evidence.
    """
    return stabilizer(
        cell24_rotations(), build_complex("cell24"), "directed-edges",
        name="directed-edge stabilizer (paper-hedged ±[T×T])",
    )


def directed_edge_report() -> dict:
    """Computed facts about the directed-edge stabilizer, hedge included."""
    g = directed_edge_stabilizer()
    tset = set(t_star())
    lefts = {s * e.l for e in g.elements for s in (1, -1)}
    rights = {s * e.r for e in g.elements for s in (1, -1)}
    return {
        "order": g.order,
        "left_projection_is_Tstar": lefts == tset,
        "right_projection_is_Tstar": rights == tset,
        "label": "paper-hedged ±[T×T]",
    }


@lru_cache(maxsize=None)
def t_cross_c6_group() -> SymGroup:
    """±[T×C6] with the order-12 cyclic lift about i: order 144."""
    return product_group(t_star(), CyclicLift(QUAT_I, 6), name="±[T×C6]")


@lru_cache(maxsize=None)
def c2_cross_c11_group() -> SymGroup:
    """±[C2×C11]: order 4·22/2 = 44."""
    return product_group(CyclicLift(QUAT_I, 2), CyclicLift(QUAT_I, 11),
                         name="±[C2×C11]")
