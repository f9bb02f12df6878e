"""Realize admissible standard vectors as normal surfaces.

Inside each tetrahedron the discs are stacked in the only embedded way:
triangles around a corner nest toward it, and the (single) quad type sits
between the triangle blocks.  Parallel quads of type ``q`` are numbered
from the side holding vertex 0.  A normal arc on a face is named
``(tet, face, corner, k)``: the ``k``-th arc, counting outward from the
corner it cuts off.  Arcs on glued faces are matched in that order, and the
points where the surface meets the 1-skeleton are named by their position
along each tetrahedron edge.

The realized surface is a cell complex (points, arcs, discs) from which
components, Euler characteristic, orientability, weight and boundary
curves are read off.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .coordinates import QUAD_SIDES, is_admissible, standard_matching_system
from .triangulation import EDGE_INDEX, EDGES, BoundarySurface, Triangulation, _UnionFind


class NotAdmissibleError(ValueError):
    def __init__(self, report):
        parts = []
        if not report.nonnegative:
            parts.append(f"negative coordinates {list(report.negative_coordinates)}")
        if not report.matching:
            parts.append(f"matching equations {list(report.offending_rows)} fail")
        if not report.quad_condition:
            parts.append(f"tetrahedra {list(report.offending_tetrahedra)} break the quad condition")
        super().__init__("vector is not admissible: " + "; ".join(parts))
        self.report = report


class UnsupportedBoundaryError(ValueError):
    pass


@dataclass(frozen=True)
class Disc:
    tet: int
    type: int  # 0..3 triangle at that corner, 4..6 quad 0..2
    index: int

    @property
    def is_quad(self) -> bool:
        return self.type >= 4


@dataclass(frozen=True)
class _Arc:
    """One side of a normal arc, as seen from the disc that owns it."""

    tet: int
    face: int
    corner: int
    pos: int
    # the owning disc runs from edge (corner, src) to edge (corner, dst)
    src: int
    dst: int

    @property
    def key(self) -> tuple[int, int, int, int]:
        return (self.tet, self.face, self.corner, self.pos)


def edge_weight(v: Sequence[int], tet: int, x: int, y: int) -> int:
    """Number of times the surface meets edge ``xy`` of ``tet``."""
    base = 7 * tet
    w = v[base + x] + v[base + y]
    for q, (side0, _side1) in enumerate(QUAD_SIDES):
        if (x in side0) != (y in side0):
            w += v[base + 4 + q]
    return w


def _disc_arcs(v: Sequence[int], disc: Disc) -> list[_Arc]:
    a, base = disc.tet, 7 * disc.tet
    if not disc.is_quad:
        c = disc.type
        o1, o2, o3 = (x for x in range(4) if x != c)
        return [
            _Arc(a, o3, c, disc.index, o1, o2),
            _Arc(a, o1, c, disc.index, o2, o3),
            _Arc(a, o2, c, disc.index, o3, o1),
        ]
    q = disc.type - 4
    (p, r), (s, u) = QUAD_SIDES[q]
    count = v[base + 4 + q]

    def pos(x):
        j = disc.index if x in (p, r) else count - 1 - disc.index
        return v[base + x] + j

    # boundary cycle e(p,s) -> e(p,u) -> e(r,u) -> e(r,s) -> e(p,s)
    return [
        _Arc(a, r, p, pos(p), s, u),
        _Arc(a, s, u, pos(u), p, r),
        _Arc(a, p, r, pos(r), u, s),
        _Arc(a, u, s, pos(s), r, p),
    ]


@dataclass
class NormalSurface:
    """An embedded normal surface given by a standard vector."""

    triangulation: Triangulation
    vector: tuple[int, ...]
    discs: list[Disc]
    disc_arcs: list[list[_Arc]]
    arc_partner: dict[tuple, tuple]  # glued arc key -> arc key on the other side
    arc_owner: dict[tuple, int]  # arc key -> disc number
    point_class: dict[tuple, int]  # (tet, edge, position from lower label) -> point id
    num_points: int
    disc_component: list[int]
    num_components: int
    _cache: dict = field(default_factory=dict, repr=False)

    def arc_endpoints(self, arc: _Arc) -> tuple[int, int]:
        """Point ids at the start and end of the arc in its owner's direction."""
        return (self._point(arc.tet, arc.corner, arc.src, arc.pos),
                self._point(arc.tet, arc.corner, arc.dst, arc.pos))

    def _point(self, tet, x, y, k):
        e = EDGE_INDEX[(x, y)]
        if x > y:
            k = edge_weight(self.vector, tet, x, y) - 1 - k
        return self.point_class[(tet, e, k)]

    @property
    def is_empty(self) -> bool:
        return not self.discs

    def component_vector(self, component: int) -> tuple[int, ...]:
        vec = [0] * len(self.vector)
        for d, disc in enumerate(self.discs):
            if self.disc_component[d] == component:
                vec[7 * disc.tet + disc.type] += 1
        return tuple(vec)


def realize(v: Sequence[int], tri: Triangulation) -> NormalSurface:
    v = tuple(v)
    report = is_admissible(v, standard_matching_system(tri))
    if not report.admissible:
        raise NotAdmissibleError(report)
    t = tri.num_tetrahedra

    discs = [
        Disc(a, typ, i) for a in range(t) for typ in range(7) for i in range(v[7 * a + typ])
    ]
    disc_arcs = [_disc_arcs(v, d) for d in discs]
    arc_owner = {arc.key: n for n, arcs in enumerate(disc_arcs) for arc in arcs}

    arc_partner: dict[tuple, tuple] = {}
    for (a, f), (b, g, p) in tri.gluings.items():
        for x in range(4):
            if x == f:
                continue
            count = v[7 * a + x] + _quad_cutting(v, a, x, f)
            for k in range(count):
                arc_partner[(a, f, x, k)] = (b, g, p(x), k)

    # points on the 1-skeleton
    point_index: dict[tuple, int] = {}
    for a in range(t):
        for e, (x, y) in enumerate(EDGES):
            for k in range(edge_weight(v, a, x, y)):
                point_index[(a, e, k)] = len(point_index)
    uf = _UnionFind(len(point_index))
    for (a, f), (b, g, p) in tri.gluings.items():
        for x, y in EDGES:
            if f in (x, y):
                continue
            w = edge_weight(v, a, x, y)
            px, py = p(x), p(y)
            e2 = EDGE_INDEX[(px, py)]
            for k in range(w):
                k2 = k if px < py else w - 1 - k
                uf.union(point_index[(a, EDGE_INDEX[(x, y)], k)], point_index[(b, e2, k2)])
    roots: dict[int, int] = {}
    point_class = {}
    for key, idx in point_index.items():
        point_class[key] = roots.setdefault(uf.find(idx), len(roots))

    # components: discs joined along glued arcs
    duf = _UnionFind(len(discs))
    for key, other in arc_partner.items():
        duf.union(arc_owner[key], arc_owner[other])
    comp_ids: dict[int, int] = {}
    disc_component = [comp_ids.setdefault(duf.find(d), len(comp_ids)) for d in range(len(discs))]

    return NormalSurface(
        triangulation=tri,
        vector=v,
        discs=discs,
        disc_arcs=disc_arcs,
        arc_partner=arc_partner,
        arc_owner=arc_owner,
        point_class=point_class,
        num_points=len(roots),
        disc_component=disc_component,
        num_components=len(comp_ids),
    )


def _quad_cutting(v, a, corner, face):
    """Number of quads in ``a`` whose arc on ``face`` cuts off ``corner``."""
    for q, (side0, side1) in enumerate(QUAD_SIDES):
        if {corner, face} in (set(side0), set(side1)):
            return v[7 * a + 4 + q]
    raise AssertionError("unreachable")


# ----------------------------------------------------------------------
# Invariants


@dataclass(frozen=True)
class BoundaryCurveClass:
    surface_component: int
    boundary_component: int
    homology: tuple[int, ...]
    length: int  # number of normal arcs

    @property
    def is_trivial(self) -> bool:
        return not any(self.homology)


@dataclass(frozen=True)
class ComponentInvariants:
    index: int
    vector: tuple[int, ...]
    euler_characteristic: int
    orientable: bool
    two_sided: bool | None
    closed: bool
    boundary_curves: int
    weight: int
    size: int
    boundary_classes: tuple[BoundaryCurveClass, ...] = ()

    def to_dict(self) -> dict:
        return {
            "vector": [str(x) for x in self.vector],
            "euler_characteristic": self.euler_characteristic,
            "orientable": self.orientable,
            "two_sided": self.two_sided,
            "closed": self.closed,
            "boundary_curves": self.boundary_curves,
            "weight": self.weight,
            "size": self.size,
            "boundary_classes": [
                {"boundary_component": c.boundary_component, "homology": list(c.homology)}
                for c in self.boundary_classes
            ],
        }


@dataclass(frozen=True)
class SurfaceInvariants:
    components: tuple[ComponentInvariants, ...]
    edge_weights: tuple[int, ...]  # per edge class of the triangulation

    @property
    def num_components(self) -> int:
        return len(self.components)

    @property
    def euler_characteristic(self) -> int:
        return sum(c.euler_characteristic for c in self.components)

    @property
    def weight(self) -> int:
        return sum(self.edge_weights)

    @property
    def orientable(self) -> bool:
        return all(c.orientable for c in self.components)

    @property
    def connected(self) -> bool:
        return len(self.components) == 1


def edge_class_weights(v: Sequence[int], tri: Triangulation) -> list[list[int]]:
    """Intersection count at every incidence of every edge class."""
    return [
        [edge_weight(v, inc.tet, inc.tail, inc.head) for inc in edge.incidences]
        for edge in tri.edge_classes
    ]


def _orientations(S: NormalSurface) -> list[bool]:
    """Per component: can the discs be oriented coherently?"""
    tri = S.triangulation
    flip: list[int | None] = [None] * len(S.discs)
    ok = [True] * S.num_components
    arc_by_key = {arc.key: arc for arcs in S.disc_arcs for arc in arcs}
    for start in range(len(S.discs)):
        if flip[start] is not None:
            continue
        flip[start] = 0
        queue = deque([start])
        while queue:
            d = queue.popleft()
            for arc in S.disc_arcs[d]:
                other_key = S.arc_partner.get(arc.key)
                if other_key is None:
                    continue
                _b, _g, p = tri.gluings[(arc.tet, arc.face)]
                other = arc_by_key[other_key]
                same = (other.src, other.dst) == (p(arc.src), p(arc.dst))
                want = flip[d] ^ int(same)
                e = S.arc_owner[other_key]
                if flip[e] is None:
                    flip[e] = want
                    queue.append(e)
                elif flip[e] != want:
                    ok[S.disc_component[d]] = False
    return ok


def _boundary_cycles(S: NormalSurface) -> list[list[tuple[_Arc, bool]]]:
    """Closed curves of unglued arcs, as (arc, traversed forwards) lists."""
    boundary_arcs = [
        arc for arcs in S.disc_arcs for arc in arcs if arc.key not in S.arc_partner
    ]
    at_point: dict[int, list[int]] = {}
    ends = []
    for n, arc in enumerate(boundary_arcs):
        p0, p1 = S.arc_endpoints(arc)
        ends.append((p0, p1))
        at_point.setdefault(p0, []).append(n)
        at_point.setdefault(p1, []).append(n)
    for p, arcs in at_point.items():
        if len(arcs) != 2:
            raise RuntimeError(f"boundary point {p} meets {len(arcs)} boundary arcs")
    used = [False] * len(boundary_arcs)
    cycles = []
    for start in range(len(boundary_arcs)):
        if used[start]:
            continue
        cycle = []
        n, forward = start, True
        while True:
            used[n] = True
            cycle.append((boundary_arcs[n], forward))
            here = ends[n][1] if forward else ends[n][0]
            first, second = at_point[here]
            if first == second == n:  # a single arc closing up on itself
                break
            nxt = second if first == n else first
            if used[nxt]:
                break
            forward = ends[nxt][0] == here
            n = nxt
        cycles.append(cycle)
    return cycles


def _tail_local(tri: Triangulation, tet: int, x: int, y: int) -> int:
    return min(x, y) if tri.edge_sign[(tet, EDGE_INDEX[(x, y)])] > 0 else max(x, y)


def _curve_chain(tri: Triangulation, cycle) -> dict[int, int]:
    """Push a normal curve on the boundary into the boundary 1-skeleton.

    Each crossing point slides to the tail of its edge; an arc then becomes
    the triangle edge joining the two tails, or nothing if they coincide.
    """
    chain: dict[int, int] = {}
    for arc, forward in cycle:
        src, dst = (arc.src, arc.dst) if forward else (arc.dst, arc.src)
        u = _tail_local(tri, arc.tet, arc.corner, src)
        w = _tail_local(tri, arc.tet, arc.corner, dst)
        if u == w:
            continue
        e = tri.edge_of[(arc.tet, EDGE_INDEX[(u, w)])]
        sign = 1 if _tail_local(tri, arc.tet, u, w) == u else -1
        chain[e] = chain.get(e, 0) + sign
    return {e: c for e, c in chain.items() if c}


def boundary_curves(S: NormalSurface, B: BoundarySurface | None = None) -> list[BoundaryCurveClass]:
    tri = S.triangulation
    if B is None:
        B = tri.boundary()
    face_comp = {face: i for i, comp in enumerate(B.components) for face in comp.faces}
    out = []
    for cycle in _boundary_cycles(S):
        arc = cycle[0][0]
        bcomp = face_comp[(arc.tet, arc.face)]
        chain = _curve_chain(tri, cycle)
        out.append(
            BoundaryCurveClass(
                surface_component=S.disc_component[S.arc_owner[arc.key]],
                boundary_component=bcomp,
                homology=B.homology_class(bcomp, chain),
                length=len(cycle),
            )
        )
    out.sort(key=lambda c: (c.surface_component, c.boundary_component, c.homology, c.length))
    return out


def invariants(S: NormalSurface) -> SurfaceInvariants:
    if "invariants" in S._cache:
        return S._cache["invariants"]
    tri = S.triangulation
    ncomp = S.num_components
    faces = [0] * ncomp
    for comp in S.disc_component:
        faces[comp] += 1
    arcs_seen: set[tuple] = set()
    edges = [0] * ncomp
    points: list[set[int]] = [set() for _ in range(ncomp)]
    for d, disc_arcs in enumerate(S.disc_arcs):
        comp = S.disc_component[d]
        for arc in disc_arcs:
            key = arc.key
            other = S.arc_partner.get(key)
            canon = min(key, other) if other is not None else key
            if canon not in arcs_seen:
                arcs_seen.add(canon)
                edges[comp] += 1
            points[comp].update(S.arc_endpoints(arc))
    orientable = _orientations(S)
    curves = boundary_curves(S) if tri.boundary_faces else []
    per_edge = edge_class_weights(S.vector, tri)
    edge_weights = tuple(ws[0] for ws in per_edge)
    components = []
    for c in range(ncomp):
        vec = S.component_vector(c)
        mine = tuple(cv for cv in curves if cv.surface_component == c)
        weight = sum(ws[0] for ws in edge_class_weights(vec, tri))
        components.append(
            ComponentInvariants(
                index=c,
                vector=vec,
                euler_characteristic=len(points[c]) - edges[c] + faces[c],
                orientable=orientable[c],
                two_sided=orientable[c] if tri.is_orientable() else None,
                closed=not mine,
                boundary_curves=len(mine),
                weight=weight,
                size=sum(1 for x in vec if x),
                boundary_classes=mine,
            )
        )
    result = SurfaceInvariants(tuple(components), edge_weights)
    S._cache["invariants"] = result
    return result


def is_essential_disc(component: ComponentInvariants, B: BoundarySurface) -> bool:
    """A disc whose boundary is homologically nontrivial in a torus boundary."""
    for curve in component.boundary_classes:
        if not B.components[curve.boundary_component].is_torus:
            raise UnsupportedBoundaryError(
                f"boundary component {curve.boundary_component} is not a torus"
            )
    if component.euler_characteristic != 1 or component.boundary_curves != 1:
        return False
    return not component.boundary_classes[0].is_trivial
