"""Double description enumeration of admissible extreme rays.

Equations are inserted one at a time into the positive orthant.  After each
insertion the ray set is exactly the set of extreme rays of the cone cut
out so far, each kept as a primitive integer vector with its support as a
bitset.  With filtering on, rays that break the quad condition are dropped
as soon as they appear: a conic combination of nonnegative rays has the
union of their supports, so no admissible ray is ever built from one.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from ..coordinates import MatchingSystem, quad_violations, sparse_string
from ..linalg import RowEchelon, primitive
from . import _select_kernel

DEFAULT_MAX_RAYS = 200_000


class RayLimitError(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class VertexSolution:
    vector: tuple[int, ...]
    kind: str = field(compare=False)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.vector) if x)


@dataclass
class EnumerationResult:
    kind: str
    vertices: tuple[VertexSolution, ...]
    statistics: dict = field(default_factory=dict)

    @property
    def vectors(self) -> list[tuple[int, ...]]:
        return [v.vector for v in self.vertices]

    def __len__(self) -> int:
        return len(self.vertices)

    def to_dict(self, timing: bool = True) -> dict:
        stats = dict(self.statistics)
        if not timing:
            stats.pop("seconds", None)
        return {
            "schema": 1,
            "kind": self.kind,
            "vertices": [
                {"vector": [str(x) for x in v.vector], "support": list(v.support)}
                for v in self.vertices
            ],
            "statistics": stats,
        }

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)

    def dump_rays(self) -> str:
        return "".join(sparse_string(v.vector) + "\n" for v in self.vertices)


def _nnz(row: Sequence[int]) -> int:
    return sum(1 for x in row if x)


def enumerate_dd(
    system: MatchingSystem,
    filter: bool = True,
    max_rays: int | None = DEFAULT_MAX_RAYS,
    row_order: Sequence[int] | None = None,
    kernel: str | Callable | None = None,
) -> EnumerationResult:
    """All admissible extreme rays of ``{A x = 0, x >= 0}``.

    ``row_order`` overrides the default insertion order (fewest nonzeros
    first).  ``kernel`` picks the adjacency backend: ``"cython"``,
    ``"python"`` or a callable with the kernel signature.
    """
    started = time.perf_counter()
    adjacent_pairs = kernel if callable(kernel) else _select_kernel(kernel)
    n = system.num_columns
    groups = system.quad_groups
    rows = list(system.rows)
    if row_order is None:
        row_order = sorted(range(len(rows)), key=lambda i: (_nnz(rows[i]), i))

    rays: list[tuple[int, ...]] = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    masks: list[int] = [1 << i for i in range(n)]
    echelon = RowEchelon()
    stages = []
    filtered_total = 0

    for r in row_order:
        row = rows[r]
        rank_before = len(echelon.pivots)
        if not echelon.add(row):
            # implied by earlier equations: every current ray satisfies it
            continue
        nz = [(j, c) for j, c in enumerate(row) if c]
        values = [sum(c * ray[j] for j, c in nz) for ray in rays]
        zero = [k for k, x in enumerate(values) if x == 0]
        pos = [k for k, x in enumerate(values) if x > 0]
        neg = [k for k, x in enumerate(values) if x < 0]
        pairs = adjacent_pairs(masks, pos, neg, rank_before + 2, groups, filter)
        new_rays = [rays[k] for k in zero]
        new_masks = [masks[k] for k in zero]
        for i, j in pairs:
            vi, vj = values[i], -values[j]
            ray = primitive([vi * y + vj * x for x, y in zip(rays[i], rays[j])])
            new_rays.append(ray)
            new_masks.append(masks[i] | masks[j])
        rays, masks = new_rays, new_masks
        stages.append(
            {
                "row": r,
                "zero": len(zero),
                "positive": len(pos),
                "negative": len(neg),
                "combined": len(pairs),
                "rays": len(rays),
            }
        )
        if max_rays is not None and len(rays) > max_rays:
            raise RayLimitError(f"intermediate ray count {len(rays)} exceeds cap {max_rays}")

    admissible = []
    dropped = 0
    for ray in rays:
        if quad_violations(ray, system.kind):
            dropped += 1
        else:
            admissible.append(ray)
    filtered_total += dropped
    vertices = tuple(VertexSolution(v, system.kind) for v in sorted(set(admissible)))
    stats = {
        "method": "double-description",
        "filter": filter,
        "stages": stages,
        "dropped_at_end": filtered_total,
        "vertices": len(vertices),
        "seconds": time.perf_counter() - started,
    }
    return EnumerationResult(system.kind, vertices, stats)
