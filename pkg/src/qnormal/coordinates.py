"""Normal coordinates: matching systems, admissibility, Haken sums.

Standard vectors have 7 entries per tetrahedron: four triangle coordinates
indexed by the corner they cut off, then three quad coordinates.  Quad ``q``
(``q = 0, 1, 2``) separates vertices ``{0, q + 1}`` from the other two.
Quad vectors keep only the three quad entries per tetrahedron.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .triangulation import Triangulation, permutation_sign

STANDARD = "standard"
QUAD = "quad"

# quad type separating the pair {x, y} from its complement
QUAD_OF_PAIR: dict[tuple[int, int], int] = {}
for _q, (_p, _r) in enumerate((((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))):
    for _x, _y in (_p, _r):
        QUAD_OF_PAIR[(_x, _y)] = _q
        QUAD_OF_PAIR[(_y, _x)] = _q
QUAD_SIDES: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = (
    ((0, 1), (2, 3)),
    ((0, 2), (1, 3)),
    ((0, 3), (1, 2)),
)


class NonOrientableError(ValueError):
    pass


class IncompatibleQuadsError(ValueError):
    def __init__(self, tet: int):
        super().__init__(f"tetrahedron {tet} would contain two different quad types")
        self.tet = tet


class InconsistentQuadVectorError(ValueError):
    """The triangle coordinates cannot be integrated around a vertex class."""


def block_size(kind: str) -> int:
    return 7 if kind == STANDARD else 3


def quad_offset(kind: str) -> int:
    return 4 if kind == STANDARD else 0


def tri_col(tet: int, vertex: int) -> int:
    return 7 * tet + vertex


def quad_col(tet: int, quad: int, kind: str = STANDARD) -> int:
    return block_size(kind) * tet + quad_offset(kind) + quad


def num_tetrahedra_of(v: Sequence[int], kind: str) -> int:
    size = block_size(kind)
    if len(v) % size:
        raise ValueError(f"length {len(v)} is not a multiple of {size}")
    return len(v) // size


def quad_groups(num_tets: int, kind: str) -> list[tuple[int, int, int]]:
    return [tuple(quad_col(a, q, kind) for q in range(3)) for a in range(num_tets)]  # type: ignore[misc]


@dataclass(frozen=True)
class MatchingSystem:
    """An integer equation system ``A x = 0`` on normal coordinates.

    ``terms`` keeps, for every row, the individual contributions before they
    were summed into ``rows`` (they differ only when a tetrahedron meets the
    same face pair or edge class more than once).
    """

    kind: str
    num_tetrahedra: int
    rows: tuple[tuple[int, ...], ...]
    labels: tuple[tuple, ...]
    terms: tuple[tuple[tuple[int, int], ...], ...] = field(repr=False)

    @property
    def num_columns(self) -> int:
        return block_size(self.kind) * self.num_tetrahedra

    @property
    def quad_groups(self) -> list[tuple[int, int, int]]:
        return quad_groups(self.num_tetrahedra, self.kind)

    def residual(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.num_columns:
            raise ValueError(f"expected {self.num_columns} coordinates, got {len(v)}")
        return tuple(sum(c * x for c, x in zip(row, v) if c) for row in self.rows)

    def satisfied_by(self, v: Sequence[int]) -> bool:
        return not any(self.residual(v))

    def scaled(self, factor: int) -> "MatchingSystem":
        return MatchingSystem(
            self.kind,
            self.num_tetrahedra,
            tuple(tuple(factor * c for c in row) for row in self.rows),
            self.labels,
            tuple(tuple((col, factor * c) for col, c in t) for t in self.terms),
        )

    def to_triplets(self) -> str:
        """Sparse ``row col coeff`` lines."""
        out = []
        for i, row in enumerate(self.rows):
            for j, c in enumerate(row):
                if c:
                    out.append(f"{i} {j} {c}")
        return "\n".join(out) + ("\n" if out else "")


def _build(kind, tri, labels, terms) -> MatchingSystem:
    n = block_size(kind) * tri.num_tetrahedra
    rows = []
    for ts in terms:
        row = [0] * n
        for col, c in ts:
            row[col] += c
        rows.append(tuple(row))
    return MatchingSystem(kind, tri.num_tetrahedra, tuple(rows), tuple(labels), tuple(terms))


def standard_matching_system(tri: Triangulation) -> MatchingSystem:
    labels, terms = [], []
    for a, f, b, g, p in tri.face_pairs():
        for v in range(4):
            if v == f:
                continue
            w = p(v)
            labels.append(("face", a, f, b, g, v))
            terms.append(
                (
                    (tri_col(a, v), 1),
                    (quad_col(a, QUAD_OF_PAIR[(v, f)]), 1),
                    (tri_col(b, w), -1),
                    (quad_col(b, QUAD_OF_PAIR[(w, g)]), -1),
                )
            )
    return _build(STANDARD, tri, labels, terms)


def edge_quad_coefficients(orientation_sign: int, tail: int, head: int) -> dict[int, int]:
    """Signed quad coefficients for one appearance of an oriented edge.

    The two faces through the edge are ordered by the rotation that the
    tetrahedron's orientation induces around ``tail -> head``.  A quad whose
    arcs cut off the tail on the first face and the head on the second gets
    +1, the reverse gets -1, and the quad missing the edge gets 0.
    """
    c, d = (x for x in range(4) if x not in (tail, head))
    if orientation_sign * permutation_sign((tail, head, c, d)) < 0:
        c, d = d, c
    # first face is {tail, head, c}; the quad pairing tail with d cuts off the
    # tail there and the head on {tail, head, d}
    return {
        QUAD_OF_PAIR[(tail, d)]: 1,
        QUAD_OF_PAIR[(tail, c)]: -1,
        QUAD_OF_PAIR[(tail, head)]: 0,
    }


def q_matching_system(tri: Triangulation, flipped_edges: Iterable[int] = ()) -> MatchingSystem:
    """One row per interior edge class.

    The rotation direction around each edge is derived from the manifold
    orientation and the default edge orientation.  ``flipped_edges``
    reverses the orientation of the listed edge classes while keeping their
    rotation direction, which negates their rows; it exists to check that
    the solution cone does not depend on the choice.
    """
    signs = tri.orientation
    if signs is None:
        raise NonOrientableError("quad matching equations need an orientable triangulation")
    flipped = set(flipped_edges)
    labels, terms = [], []
    for edge in tri.interior_edges:
        row_terms = []
        for inc in edge.incidences:
            # with the faces kept in rotation order, swapping tail and head
            # swaps which quad cuts off the tail first
            direction = -1 if edge.index in flipped else 1
            coeffs = edge_quad_coefficients(signs[inc.tet], inc.tail, inc.head)
            for q, c in sorted(coeffs.items()):
                if c:
                    row_terms.append((quad_col(inc.tet, q, QUAD), direction * c))
        labels.append(("edge", edge.index))
        terms.append(tuple(row_terms))
    return _build(QUAD, tri, labels, terms)


def matching_system(tri: Triangulation, kind: str) -> MatchingSystem:
    if kind == STANDARD:
        return standard_matching_system(tri)
    if kind == QUAD:
        return q_matching_system(tri)
    raise ValueError(f"unknown coordinate kind {kind!r}")


# ----------------------------------------------------------------------
# Admissibility


@dataclass(frozen=True)
class AdmissibilityReport:
    nonnegative: bool
    matching: bool
    quad_condition: bool
    offending_tetrahedra: tuple[int, ...] = ()
    offending_rows: tuple[int, ...] = ()
    negative_coordinates: tuple[int, ...] = ()

    @property
    def admissible(self) -> bool:
        return self.nonnegative and self.matching and self.quad_condition

    def __bool__(self) -> bool:
        return self.admissible


def quad_violations(v: Sequence[int], kind: str = STANDARD) -> tuple[int, ...]:
    t = num_tetrahedra_of(v, kind)
    return tuple(
        a
        for a, cols in enumerate(quad_groups(t, kind))
        if sum(1 for c in cols if v[c] > 0) > 1
    )


def quad_condition(v: Sequence[int], kind: str = STANDARD) -> AdmissibilityReport:
    bad = quad_violations(v, kind)
    return AdmissibilityReport(
        nonnegative=True, matching=True, quad_condition=not bad, offending_tetrahedra=bad
    )


def is_admissible(v: Sequence[int], system: MatchingSystem) -> AdmissibilityReport:
    residual = system.residual(v)
    bad = quad_violations(v, system.kind)
    negatives = tuple(i for i, x in enumerate(v) if x < 0)
    return AdmissibilityReport(
        nonnegative=not negatives,
        matching=not any(residual),
        quad_condition=not bad,
        offending_tetrahedra=bad,
        offending_rows=tuple(i for i, r in enumerate(residual) if r),
        negative_coordinates=negatives,
    )


# ----------------------------------------------------------------------
# Conversions and sums


def project_to_quad(v: Sequence[int]) -> tuple[int, ...]:
    t = num_tetrahedra_of(v, STANDARD)
    return tuple(v[7 * a + 4 + q] for a in range(t) for q in range(3))


def quad_to_standard(q: Sequence[int], tri: Triangulation) -> tuple[int, ...]:
    """The smallest standard vector whose quad coordinates are ``q``.

    Triangle counts around each vertex class are pinned down up to a
    constant by the standard matching equations; the constant is chosen so
    that each vertex class has some corner with no triangles.
    """
    t = tri.num_tetrahedra
    if len(q) != 3 * t:
        raise ValueError(f"expected {3 * t} quad coordinates, got {len(q)}")
    if any(x < 0 for x in q):
        raise ValueError("quad coordinates must be nonnegative")

    def quad(a, x, y):
        return q[3 * a + QUAD_OF_PAIR[(x, y)]]

    # corner graph: (a, v) -- (b, p(v)) across each glued face
    neighbours: dict[tuple[int, int], list[tuple[tuple[int, int], int]]] = {}
    for (a, f), (b, g, p) in tri.gluings.items():
        for v in range(4):
            if v == f:
                continue
            w = p(v)
            # t_b[w] - t_a[v] = quad_a{v,f} - quad_b{w,g}
            neighbours.setdefault((a, v), []).append(((b, w), quad(a, v, f) - quad(b, w, g)))

    vec = [0] * (7 * t)
    for a in range(t):
        for x in range(3):
            vec[7 * a + 4 + x] = q[3 * a + x]
    for corners in tri.vertex_classes:
        start = corners[0]
        value = {start: 0}
        queue = deque([start])
        while queue:
            c = queue.popleft()
            for nb, diff in neighbours.get(c, ()):
                want = value[c] + diff
                if nb not in value:
                    value[nb] = want
                    queue.append(nb)
                elif value[nb] != want:
                    raise InconsistentQuadVectorError(
                        f"triangle coordinates around vertex of tetrahedron {c[0]} "
                        "do not close up; the vector fails the quad matching equations"
                    )
        low = min(value.values())
        for (a, v), x in value.items():
            vec[7 * a + v] = x - low
    return tuple(vec)


def haken_sum(v1: Sequence[int], v2: Sequence[int], kind: str = STANDARD) -> tuple[int, ...]:
    if len(v1) != len(v2):
        raise ValueError("vectors have different lengths")
    total = tuple(x + y for x, y in zip(v1, v2))
    bad = quad_violations(total, kind)
    if bad:
        raise IncompatibleQuadsError(bad[0])
    return total


def vertex_link_coefficients(diff: Sequence[int], tri: Triangulation) -> list[int] | None:
    """Write ``diff`` as an integer combination of vertex links, if possible."""
    t = tri.num_tetrahedra
    if len(diff) != 7 * t:
        raise ValueError("length mismatch")
    if any(diff[7 * a + 4 + x] for a in range(t) for x in range(3)):
        return None
    coeffs = []
    for corners in tri.vertex_classes:
        values = {diff[7 * a + v] for a, v in corners}
        if len(values) != 1:
            return None
        coeffs.append(values.pop())
    return coeffs


# ----------------------------------------------------------------------
# Serialization


def vector_to_json(v: Sequence[int]) -> str:
    return json.dumps([str(x) for x in v])


def vector_from_json(text: str) -> tuple[int, ...]:
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("expected a JSON array")
    return tuple(int(x) for x in data)


def sparse_string(v: Sequence[int]) -> str:
    return " ".join(f"{i}:{x}" for i, x in enumerate(v) if x)
