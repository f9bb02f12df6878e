"""Triangulations of compact 3-manifolds.

A triangulation is a set of tetrahedra with some faces glued in pairs.  Each
gluing is recorded from both sides as ``(tet, face) -> (tet', face', perm)``
where ``perm`` maps the vertex labels of ``tet`` to those of ``tet'``.

Local labelling conventions used throughout the package:

* vertices are ``0..3``; face ``f`` is the face opposite vertex ``f``;
* edges are indexed by vertex pairs in the fixed order ``EDGES``.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .linalg import integer_homology

EDGES: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX: dict[tuple[int, int], int] = {}
for _i, (_a, _b) in enumerate(EDGES):
    EDGE_INDEX[(_a, _b)] = _i
    EDGE_INDEX[(_b, _a)] = _i


class TriangulationError(ValueError):
    """Raised for malformed triangulation input."""


class TriangulationSyntaxError(TriangulationError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class InvalidGluingError(TriangulationError):
    pass


@dataclass(frozen=True)
class Perm4:
    """A permutation of ``{0, 1, 2, 3}``; ``images[i]`` is the image of ``i``."""

    images: tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.images) != 4 or sorted(self.images) != [0, 1, 2, 3]:
            raise ValueError(f"not a permutation of 0..3: {self.images!r}")

    @classmethod
    def from_string(cls, text: str) -> "Perm4":
        if len(text) != 4 or not text.isdigit():
            raise ValueError(f"bad permutation {text!r}")
        return cls(tuple(int(c) for c in text))  # type: ignore[arg-type]

    @classmethod
    def identity(cls) -> "Perm4":
        return cls((0, 1, 2, 3))

    def __call__(self, i: int) -> int:
        return self.images[i]

    def inverse(self) -> "Perm4":
        inv = [0] * 4
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm4(tuple(inv))  # type: ignore[arg-type]

    def __mul__(self, other: "Perm4") -> "Perm4":
        """Composition: ``(p * q)(i) == p(q(i))``."""
        return Perm4(tuple(self.images[other.images[i]] for i in range(4)))  # type: ignore[arg-type]

    def sign(self) -> int:
        return permutation_sign(self.images)

    def __str__(self) -> str:
        return "".join(map(str, self.images))


def permutation_sign(seq: Sequence[int]) -> int:
    inversions = sum(1 for i, j in itertools.combinations(range(len(seq)), 2) if seq[i] > seq[j])
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class EdgeIncidence:
    """One appearance of an edge class inside a tetrahedron.

    ``tail`` and ``head`` are the local vertex labels that the edge class's
    chosen orientation runs between.
    """

    tet: int
    tail: int
    head: int

    @property
    def edge(self) -> int:
        return EDGE_INDEX[(self.tail, self.head)]


@dataclass(frozen=True)
class EdgeClass:
    index: int
    incidences: tuple[EdgeIncidence, ...]
    is_interior: bool


@dataclass(frozen=True)
class BoundaryComponent:
    faces: tuple[tuple[int, int], ...]
    edges: tuple[int, ...]
    vertices: tuple[int, ...]
    euler_characteristic: int
    orientable: bool
    # Each basis cycle maps edge class index -> integer coefficient.
    homology_basis: tuple[dict[int, int], ...]
    torsion: tuple[int, ...]

    @property
    def genus(self) -> int:
        if self.orientable:
            return (2 - self.euler_characteristic) // 2
        return 2 - self.euler_characteristic

    @property
    def is_torus(self) -> bool:
        return self.orientable and self.euler_characteristic == 0

    @property
    def is_sphere(self) -> bool:
        return self.orientable and self.euler_characteristic == 2


@dataclass(frozen=True)
class BoundarySurface:
    components: tuple[BoundaryComponent, ...]
    _reducers: tuple = field(default=(), repr=False, compare=False)

    def component_of_edge(self, edge_class: int) -> int:
        for i, comp in enumerate(self.components):
            if edge_class in comp.edges:
                return i
        raise KeyError(edge_class)

    def homology_class(self, component: int, chain: dict[int, int]) -> tuple[int, ...]:
        """Coordinates of a 1-cycle of boundary edges in the component's homology.

        Free coordinates come first, then torsion coordinates reduced modulo
        their orders.
        """
        return self._reducers[component](chain)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


class Triangulation:
    """An immutable triangulation with its derived skeleton.

    ``gluings`` maps ``(tet, face)`` to ``(tet', face', Perm4)``; only one
    direction of each gluing needs to be supplied, the inverse is filled in.
    """

    def __init__(self, num_tetrahedra: int, gluings: dict | Iterable = ()):
        if num_tetrahedra < 1:
            raise TriangulationError("a triangulation needs at least one tetrahedron")
        self.num_tetrahedra = num_tetrahedra
        items = gluings.items() if isinstance(gluings, dict) else (
            ((a, f), (b, g, p)) for a, f, b, g, p in gluings
        )
        glue: dict[tuple[int, int], tuple[int, int, Perm4]] = {}
        for (a, f), (b, g, perm) in items:
            if not isinstance(perm, Perm4):
                perm = Perm4(tuple(perm))
            _check_gluing(num_tetrahedra, a, f, b, g, perm)
            for key, val in (((a, f), (b, g, perm)), ((b, g), (a, f, perm.inverse()))):
                old = glue.get(key)
                if old is not None and old != val:
                    raise InvalidGluingError(
                        f"face {key[1]} of tetrahedron {key[0]} is glued inconsistently"
                    )
                glue[key] = val
        self.gluings: dict[tuple[int, int], tuple[int, int, Perm4]] = dict(sorted(glue.items()))
        self._build_skeleton()
        self._orientation = _compute_orientation(self)
        self._boundary: BoundarySurface | None = None

    # ------------------------------------------------------------------
    # Construction of derived data

    def _build_skeleton(self) -> None:
        t = self.num_tetrahedra
        self.boundary_faces: tuple[tuple[int, int], ...] = tuple(
            (a, f) for a in range(t) for f in range(4) if (a, f) not in self.gluings
        )

        # vertex classes
        uf = _UnionFind(4 * t)
        for (a, f), (b, _g, p) in self.gluings.items():
            for v in range(4):
                if v != f:
                    uf.union(4 * a + v, 4 * b + p(v))
        roots: dict[int, int] = {}
        self.vertex_of: dict[tuple[int, int], int] = {}
        classes: list[list[tuple[int, int]]] = []
        for a in range(t):
            for v in range(4):
                r = uf.find(4 * a + v)
                if r not in roots:
                    roots[r] = len(classes)
                    classes.append([])
                roots_idx = roots[r]
                classes[roots_idx].append((a, v))
                self.vertex_of[(a, v)] = roots_idx
        self.vertex_classes: tuple[tuple[tuple[int, int], ...], ...] = tuple(map(tuple, classes))

        # edge classes, walked around the edge so incidences come out in order
        self.edge_of: dict[tuple[int, int], int] = {}
        # +1 when the class orientation runs from the lower local label
        self.edge_sign: dict[tuple[int, int], int] = {}
        edge_classes = []
        for a in range(t):
            for e, (x, y) in enumerate(EDGES):
                if (a, e) in self.edge_of:
                    continue
                incidences, interior = self._walk_edge(a, x, y)
                idx = len(edge_classes)
                for inc in incidences:
                    self.edge_of[(inc.tet, inc.edge)] = idx
                    self.edge_sign[(inc.tet, inc.edge)] = 1 if inc.tail < inc.head else -1
                edge_classes.append(EdgeClass(idx, tuple(incidences), interior))
        self.edge_classes: tuple[EdgeClass, ...] = tuple(edge_classes)

        self.vertex_is_boundary = [False] * len(self.vertex_classes)
        for a, f in self.boundary_faces:
            for v in range(4):
                if v != f:
                    self.vertex_is_boundary[self.vertex_of[(a, v)]] = True

    def _walk_edge(self, tet: int, tail: int, head: int) -> tuple[list[EdgeIncidence], bool]:
        c, d = (v for v in range(4) if v not in (tail, head))

        def step(state, exit_face_pos):
            # state = (tet, a, b, c, d): forwards leaves through the face
            # opposite c, backwards through the face opposite d
            a_t, a, b, cc, dd = state
            if exit_face_pos == 0:
                leave, other = cc, dd
            else:
                leave, other = dd, cc
            glued = self.gluings.get((a_t, leave))
            if glued is None:
                return None
            nt, _g, p = glued
            if exit_face_pos == 0:
                return (nt, p(a), p(b), p(other), p(leave))
            return (nt, p(a), p(b), p(leave), p(other))

        start = (tet, tail, head, c, d)
        # rewind backwards to a boundary face, if there is one
        state = start
        seen = {start}
        interior = True
        while True:
            nxt = step(state, 1)
            if nxt is None:
                interior = False
                break
            if nxt == start or nxt in seen:
                break
            seen.add(nxt)
            state = nxt
        if interior:
            state = start
        first = state
        out = [first]
        while True:
            nxt = step(state, 0)
            if nxt is None or nxt == first:
                break
            out.append(nxt)
            state = nxt
        incidences = [EdgeIncidence(s[0], s[1], s[2]) for s in out]
        # canonical orientation: tail is the lower label at the lowest incidence
        lowest = min(incidences, key=lambda inc: (inc.tet, inc.edge))
        if lowest.tail > lowest.head:
            incidences = [EdgeIncidence(i.tet, i.head, i.tail) for i in reversed(incidences)]
        if interior:
            k = incidences.index(min(incidences, key=lambda inc: (inc.tet, inc.edge)))
            incidences = incidences[k:] + incidences[:k]
        return incidences, interior

    # ------------------------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_classes)

    @property
    def num_edges(self) -> int:
        return len(self.edge_classes)

    @property
    def num_faces(self) -> int:
        return len(self.boundary_faces) + len(self.gluings) // 2

    @property
    def interior_edges(self) -> tuple[EdgeClass, ...]:
        return tuple(e for e in self.edge_classes if e.is_interior)

    @property
    def is_closed(self) -> bool:
        return not self.boundary_faces

    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.num_faces - self.num_tetrahedra

    def is_orientable(self) -> bool:
        return self._orientation is not None

    @property
    def orientation(self) -> tuple[int, ...] | None:
        """Per-tetrahedron signs making every gluing odd, or ``None``."""
        return self._orientation

    def face_pairs(self) -> list[tuple[int, int, int, int, Perm4]]:
        """Each glued face pair once, lower ``(tet, face)`` side first."""
        return [
            (a, f, b, g, p) for (a, f), (b, g, p) in self.gluings.items() if (a, f) < (b, g)
        ]

    def boundary(self) -> BoundarySurface:
        if self._boundary is None:
            self._boundary = _analyse_boundary(self)
        return self._boundary

    def vertex_link(self, vertex: int) -> tuple[int, ...]:
        """Standard coordinates of the link of a vertex class."""
        vec = [0] * (7 * self.num_tetrahedra)
        for a, v in self.vertex_classes[vertex]:
            vec[7 * a + v] = 1
        return tuple(vec)

    def relabel(self, tet_perm: Sequence[int]) -> "Triangulation":
        """Rename tetrahedron ``i`` to ``tet_perm[i]``."""
        return Triangulation(
            self.num_tetrahedra,
            {
                (tet_perm[a], f): (tet_perm[b], g, p)
                for (a, f), (b, g, p) in self.gluings.items()
            },
        )

    def to_text(self) -> str:
        lines = [f"tets {self.num_tetrahedra}"]
        for a, f, b, g, p in self.face_pairs():
            lines.append(f"glue {a} {f} {b} {g} {p}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        return (
            isinstance(other, Triangulation)
            and self.num_tetrahedra == other.num_tetrahedra
            and self.gluings == other.gluings
        )

    def __hash__(self):
        return hash((self.num_tetrahedra, tuple(self.gluings.items())))

    def __repr__(self) -> str:
        return (
            f"Triangulation(tets={self.num_tetrahedra}, vertices={self.num_vertices}, "
            f"edges={self.num_edges}, boundary_faces={len(self.boundary_faces)})"
        )


def _check_gluing(t: int, a: int, f: int, b: int, g: int, perm: Perm4) -> None:
    for tet in (a, b):
        if not 0 <= tet < t:
            raise InvalidGluingError(f"tetrahedron index {tet} out of range 0..{t - 1}")
    for face in (f, g):
        if not 0 <= face < 4:
            raise TriangulationError(f"face index {face} out of range 0..3")
    if (a, f) == (b, g):
        raise InvalidGluingError(f"face {f} of tetrahedron {a} is glued to itself")
    if perm(f) != g:
        raise InvalidGluingError(
            f"permutation {perm} does not carry face {f} of tetrahedron {a} onto face {g}"
        )


def _compute_orientation(tri: Triangulation) -> tuple[int, ...] | None:
    signs: list[int | None] = [None] * tri.num_tetrahedra
    for root in range(tri.num_tetrahedra):
        if signs[root] is not None:
            continue
        signs[root] = 1
        queue = deque([root])
        while queue:
            a = queue.popleft()
            for f in range(4):
                glued = tri.gluings.get((a, f))
                if glued is None:
                    continue
                b, _g, p = glued
                want = -signs[a] * p.sign()
                if signs[b] is None:
                    signs[b] = want
                    queue.append(b)
                elif signs[b] != want:
                    return None
    return tuple(signs)  # type: ignore[arg-type]


def _face_cycle(tri: Triangulation, a: int, f: int) -> list[tuple[int, int]]:
    """Boundary of face ``f`` of ``a`` as (edge class, sign) for the cycle i->j->k->i."""
    i, j, k = (v for v in range(4) if v != f)
    out = []
    for x, y in ((i, j), (j, k), (k, i)):
        e = EDGE_INDEX[(x, y)]
        sign = tri.edge_sign[(a, e)] * (1 if x < y else -1)
        out.append((tri.edge_of[(a, e)], sign))
    return out


def _analyse_boundary(tri: Triangulation) -> BoundarySurface:
    faces = tri.boundary_faces
    if not faces:
        return BoundarySurface(())
    uf = _UnionFind(len(faces))
    first_face_of_edge: dict[int, int] = {}
    for n, (a, f) in enumerate(faces):
        for e, _s in _face_cycle(tri, a, f):
            if e in first_face_of_edge:
                uf.union(n, first_face_of_edge[e])
            else:
                first_face_of_edge[e] = n
    groups: dict[int, list[int]] = {}
    for n in range(len(faces)):
        groups.setdefault(uf.find(n), []).append(n)

    components = []
    reducers = []
    for members in sorted(groups.values()):
        comp_faces = [faces[n] for n in members]
        edges = sorted({e for a, f in comp_faces for e, _s in _face_cycle(tri, a, f)})
        verts = sorted(
            {tri.vertex_of[(a, v)] for a, f in comp_faces for v in range(4) if v != f}
        )
        chi = len(verts) - len(edges) + len(comp_faces)
        orientable = _boundary_orientable(tri, comp_faces)

        edge_pos = {e: i for i, e in enumerate(edges)}
        vert_pos = {v: i for i, v in enumerate(verts)}
        d1 = [[0] * len(edges) for _ in verts]
        for e in edges:
            inc = tri.edge_classes[e].incidences[0]
            d1[vert_pos[tri.vertex_of[(inc.tet, inc.head)]]][edge_pos[e]] += 1
            d1[vert_pos[tri.vertex_of[(inc.tet, inc.tail)]]][edge_pos[e]] -= 1
        d2 = [[0] * len(comp_faces) for _ in edges]
        for col, (a, f) in enumerate(comp_faces):
            for e, s in _face_cycle(tri, a, f):
                d2[edge_pos[e]][col] += s
        hom = integer_homology(d1, d2, len(edges))
        basis = tuple(
            {edges[i]: c for i, c in enumerate(gen) if c} for gen in hom.free_generators
        )
        components.append(
            BoundaryComponent(
                faces=tuple(comp_faces),
                edges=tuple(edges),
                vertices=tuple(verts),
                euler_characteristic=chi,
                orientable=orientable,
                homology_basis=basis,
                torsion=tuple(hom.torsion),
            )
        )

        def reduce(chain, _hom=hom, _pos=edge_pos):
            vec = [0] * len(_pos)
            for e, c in chain.items():
                if c:
                    vec[_pos[e]] += c
            return _hom.coordinates(vec)

        reducers.append(reduce)
    return BoundarySurface(tuple(components), tuple(reducers))


def _boundary_orientable(tri: Triangulation, comp_faces: list[tuple[int, int]]) -> bool:
    # orient each face; neighbouring faces must traverse shared edges oppositely
    cycles = [_face_cycle(tri, a, f) for a, f in comp_faces]
    by_edge: dict[int, list[tuple[int, int]]] = {}
    for n, cyc in enumerate(cycles):
        for e, s in cyc:
            by_edge.setdefault(e, []).append((n, s))
    flip: list[int | None] = [None] * len(cycles)
    flip[0] = 1
    queue = deque([0])
    while queue:
        n = queue.popleft()
        for e, s in cycles[n]:
            for m, t in by_edge[e]:
                if (m, t) == (n, s):
                    continue
                want = -flip[n] * s * t
                if flip[m] is None:
                    flip[m] = want
                    queue.append(m)
                elif flip[m] != want:
                    return False
    return True


# ----------------------------------------------------------------------
# Text format

_COMMENT = re.compile(r"#.*$")


def parse_triangulation(text: str) -> Triangulation:
    """Parse the ``tets N`` / ``glue A f B g pppp`` text format."""
    count: int | None = None
    gluings: dict[tuple[int, int], tuple[int, int, Perm4]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _COMMENT.sub("", raw).strip()
        if not line:
            continue
        tokens = line.split()
        column = raw.index(tokens[0]) + 1
        if count is None:
            if tokens[0] != "tets" or len(tokens) != 2:
                raise TriangulationSyntaxError("expected 'tets N'", lineno, column)
            try:
                count = int(tokens[1])
            except ValueError:
                raise TriangulationSyntaxError(
                    f"bad tetrahedron count {tokens[1]!r}", lineno, raw.index(tokens[1]) + 1
                ) from None
            if count < 1:
                raise TriangulationSyntaxError("tetrahedron count must be positive", lineno, column)
            continue
        if tokens[0] != "glue":
            raise TriangulationSyntaxError(f"unknown directive {tokens[0]!r}", lineno, column)
        if len(tokens) != 6:
            raise TriangulationSyntaxError("expected 'glue A f B g p0p1p2p3'", lineno, column)
        try:
            a, f, b, g = (int(x) for x in tokens[1:5])
        except ValueError:
            raise TriangulationSyntaxError("indices must be integers", lineno, column) from None
        try:
            perm = Perm4.from_string(tokens[5])
        except ValueError as exc:
            raise TriangulationSyntaxError(str(exc), lineno, raw.index(tokens[5]) + 1) from None
        _check_gluing(count, a, f, b, g, perm)
        for key, val in (((a, f), (b, g, perm)), ((b, g), (a, f, perm.inverse()))):
            old = gluings.get(key)
            if old is not None:
                if old != val:
                    raise InvalidGluingError(
                        f"line {lineno}: face {key[1]} of tetrahedron {key[0]} "
                        "is already glued differently"
                    )
                if key == (a, f) and old == val and (b, g) not in gluings:
                    raise InvalidGluingError(f"line {lineno}: duplicate gluing")
            gluings[key] = val
    if count is None:
        raise TriangulationSyntaxError("missing 'tets N' header", 1)
    return Triangulation(count, gluings)


def load_triangulation(path) -> Triangulation:
    with open(path, encoding="utf-8") as fh:
        return parse_triangulation(fh.read())


# ----------------------------------------------------------------------
# Layered solid tori


def layered_solid_torus(n: int) -> Triangulation:
    """The layered solid torus built from ``n`` tetrahedra.

    One tetrahedron with faces 0 and 1 folded together gives a solid torus
    bounded by two triangles; each further tetrahedron is layered over a
    boundary edge, replacing that edge by its flip.
    """
    if n < 1:
        raise ValueError("need at least one tetrahedron")
    gluings: dict = {(0, 0): (0, 1, Perm4((1, 2, 3, 0)))}
    # faces 2 and 3 of the top tetrahedron form the boundary torus; the next
    # tetrahedron folds its faces 0 and 1 over them
    for top in range(1, n):
        gluings[(top, 0)] = (top - 1, 3, Perm4((3, 1, 2, 0)))
        gluings[(top, 1)] = (top - 1, 2, Perm4((0, 2, 1, 3)))
    return Triangulation(n, gluings)
