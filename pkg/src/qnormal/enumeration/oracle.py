"""Brute-force extreme ray enumeration, used as an independent check.

The support of an extreme ray of ``{A x = 0, x >= 0}`` is a minimal set of
columns of ``A`` that is linearly dependent (a circuit) whose dependency
has a single sign.  We walk every linearly independent set of columns in
increasing index order; adding a column either keeps the set independent
(recurse) or closes a dependency, which is recorded when it uses every
column with one sign.  Each circuit is met exactly once, as its largest
column closing the independent set of the others.

Branches are cut only by conditions every admissible ray must meet: at most
one quad per tetrahedron, and every row touched by the support must be
touched with both signs.
"""

from __future__ import annotations

import time
from math import gcd

from ..coordinates import MatchingSystem
from ..linalg import primitive
from .dd import EnumerationResult, VertexSolution

DEFAULT_ORACLE_LIMIT = 24


class OracleLimitError(RuntimeError):
    pass


def _row_gcd_normalise(v: list[int]) -> list[int]:
    g = 0
    for x in v:
        if x:
            g = gcd(g, x)
    if g > 1:
        return [x // g for x in v]
    return v


def enumerate_bruteforce(system: MatchingSystem, limit: int = DEFAULT_ORACLE_LIMIT) -> EnumerationResult:
    n = system.num_columns
    if n > limit:
        raise OracleLimitError(f"{n} coordinates exceeds the oracle limit of {limit}")
    started = time.perf_counter()
    rows = [r for r in system.rows if any(r)]
    m = len(rows)
    cols = [[rows[i][j] for i in range(m)] for j in range(n)]
    group_of = {c: g for g, cols_g in enumerate(system.quad_groups) for c in cols_g}

    # last column index with a positive / negative entry in each row
    last_pos = [max((j for j in range(n) if rows[i][j] > 0), default=-1) for i in range(m)]
    last_neg = [max((j for j in range(n) if rows[i][j] < 0), default=-1) for i in range(m)]

    found: set[tuple[int, ...]] = set()
    nodes = 0

    def hopeless(pos_rows: int, neg_rows: int, start: int) -> bool:
        unmatched_pos = pos_rows & ~neg_rows
        unmatched_neg = neg_rows & ~pos_rows
        i = 0
        while unmatched_pos:
            if unmatched_pos & 1 and last_neg[i] < start:
                return True
            unmatched_pos >>= 1
            i += 1
        i = 0
        while unmatched_neg:
            if unmatched_neg & 1 and last_pos[i] < start:
                return True
            unmatched_neg >>= 1
            i += 1
        return False

    def extend(start, basis, members, groups_used, pos_rows, neg_rows):
        # basis: list of (pivot, row-vector, coefficient-vector) with the
        # invariant  vector == sum(coef[k] * cols[members[k]])
        nonlocal nodes
        nodes += 1
        for c in range(start, n):
            g = group_of.get(c)
            if g is not None and g in groups_used:
                continue
            vec = list(cols[c])
            coef = [0] * len(members) + [1]
            for piv, bvec, bcoef in basis:
                if vec[piv]:
                    a, b = bvec[piv], vec[piv]
                    vec = [a * x - b * y for x, y in zip(vec, bvec)]
                    coef = [a * x for x in coef]
                    for k, y in enumerate(bcoef):
                        coef[k] -= b * y
                    vec = _row_gcd_normalise(vec + coef)
                    vec, coef = vec[:m], vec[m:]
            piv = next((i for i, x in enumerate(vec) if x), None)
            if piv is None:
                if all(coef) and (all(x > 0 for x in coef) or all(x < 0 for x in coef)):
                    ray = [0] * n
                    for k, col in enumerate(members + [c]):
                        ray[col] = abs(coef[k])
                    found.add(primitive(ray))
                continue
            new_pos, new_neg = pos_rows, neg_rows
            for i, x in enumerate(cols[c]):
                if x > 0:
                    new_pos |= 1 << i
                elif x < 0:
                    new_neg |= 1 << i
            if hopeless(new_pos, new_neg, c + 1):
                continue
            padded = [(p, bv, bc + [0]) for p, bv, bc in basis]
            extend(
                c + 1,
                padded + [(piv, vec, coef)],
                members + [c],
                groups_used | {g} if g is not None else groups_used,
                new_pos,
                new_neg,
            )

    extend(0, [], [], frozenset(), 0, 0)
    vertices = tuple(VertexSolution(v, system.kind) for v in sorted(found))
    stats = {
        "method": "bruteforce",
        "search_nodes": nodes,
        "vertices": len(vertices),
        "seconds": time.perf_counter() - started,
    }
    return EnumerationResult(system.kind, vertices, stats)
