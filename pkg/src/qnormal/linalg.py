"""Exact integer and rational linear algebra on small dense matrices.

Matrices are lists of rows of Python ints (or ``Fraction``s); nothing here
uses floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [
        [sum(row[k] * b[k][j] for k in range(len(b)) if row[k]) for j in range(cols)]
        for row in a
    ]


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v) if x) for row in a]


def vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    return g


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = vector_gcd(v)
    if g == 0:
        raise ValueError("the zero vector has no primitive representative")
    return tuple(x // g for x in v)


@dataclass
class SmithForm:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal."""

    diagonal: list[int]
    D: Matrix
    U: Matrix
    U_inv: Matrix
    V: Matrix
    V_inv: Matrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(a: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    m = len(a)
    n = len(a[0]) if m else (ncols or 0)
    A = [list(row) for row in a]
    U, U_inv = identity(m), identity(m)
    V, V_inv = identity(n), identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for row in U_inv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        V_inv[i], V_inv[j] = V_inv[j], V_inv[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        if not c:
            return
        A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]
        for row in U_inv:
            row[src] -= c * row[dst]

    def add_col(dst, src, c):
        # col_dst += c * col_src
        if not c:
            return
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]
        V_inv[src] = [x - c * y for x, y in zip(V_inv[src], V_inv[dst])]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for row in U_inv:
            row[i] = -row[i]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            negate_row(t)
        t += 1
    diagonal = [A[i][i] for i in range(min(m, n))]
    return SmithForm(diagonal, A, U, U_inv, V, V_inv)


@dataclass
class Homology:
    """First homology of a chain complex ``C2 -> C1 -> C0``."""

    free_generators: list[list[int]]
    torsion_generators: list[list[int]]
    torsion: list[int]
    _kernel_coords: Matrix
    _reduce: Matrix
    _d1: Matrix
    _free_slice: slice

    @property
    def rank(self) -> int:
        return len(self.free_generators)

    def coordinates(self, cycle: Sequence[int]) -> tuple[int, ...]:
        if any(matvec(self._d1, cycle)):
            raise ValueError("chain is not a cycle")
        y = matvec(self._kernel_coords, cycle)
        z = matvec(self._reduce, y)
        free = z[self._free_slice]
        tors_start = self._free_slice.start - len(self.torsion)
        tors = [z[tors_start + i] % d for i, d in enumerate(self.torsion)]
        return tuple(free) + tuple(tors)


def integer_homology(d1: Matrix, d2: Matrix, num_edges: int) -> Homology:
    """H_1 for boundary maps ``d1`` (vertices x edges) and ``d2`` (edges x faces)."""
    s1 = smith_normal_form(d1, ncols=num_edges) if d1 else None
    r1 = s1.rank if s1 else 0
    V1 = s1.V if s1 else identity(num_edges)
    V1_inv = s1.V_inv if s1 else identity(num_edges)
    kernel = [[V1[i][j] for j in range(r1, num_edges)] for i in range(num_edges)]
    kernel_coords = V1_inv[r1:]
    k = num_edges - r1
    boundaries = matmul(kernel_coords, d2) if d2 and d2[0] else [[] for _ in range(k)]
    nfaces = len(d2[0]) if d2 and d2[0] else 0
    if k and nfaces:
        s2 = smith_normal_form(boundaries)
        r2, diag, U2, U2_inv = s2.rank, s2.diagonal, s2.U, s2.U_inv
    else:
        r2, diag, U2, U2_inv = 0, [], identity(k), identity(k)
    gens = matmul(kernel, U2_inv) if k else []
    column = lambda j: [gens[i][j] for i in range(num_edges)]  # noqa: E731
    torsion_idx = [i for i in range(r2) if abs(diag[i]) > 1]
    # torsion indices are a suffix of range(r2) because of divisibility
    return Homology(
        free_generators=[column(j) for j in range(r2, k)],
        torsion_generators=[column(j) for j in torsion_idx],
        torsion=[abs(diag[i]) for i in torsion_idx],
        _kernel_coords=kernel_coords,
        _reduce=U2,
        _d1=d1 if d1 else [],
        _free_slice=slice(r2, k),
    )


# ----------------------------------------------------------------------
# Rational elimination


def rank(rows: Sequence[Sequence[int]]) -> int:
    return len(RowEchelon(rows).pivots)


class RowEchelon:
    """Incrementally maintained reduced row space over the rationals."""

    def __init__(self, rows: Sequence[Sequence[int]] = ()):
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []
        for row in rows:
            self.add(row)

    def reduce(self, row: Sequence) -> list[Fraction]:
        v = [Fraction(x) for x in row]
        for piv_row, p in zip(self.rows, self.pivots):
            if v[p]:
                c = v[p]
                v = [x - c * y for x, y in zip(v, piv_row)]
        return v

    def add(self, row: Sequence) -> bool:
        """Add a row; return True if it increased the rank."""
        v = self.reduce(row)
        p = next((i for i, x in enumerate(v) if x), None)
        if p is None:
            return False
        c = v[p]
        v = [x / c for x in v]
        for i, r in enumerate(self.rows):
            if r[p]:
                d = r[p]
                self.rows[i] = [x - d * y for x, y in zip(r, v)]
        self.rows.append(v)
        self.pivots.append(p)
        return True


def nullspace(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Integer basis (primitive vectors) of the rational null space."""
    ech = RowEchelon(rows)
    pivots = set(ech.pivots)
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for r, p in zip(ech.rows, ech.pivots):
            vec[p] = -r[free]
        denom = 1
        for x in vec:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        basis.append(primitive([int(x * denom) for x in vec]))
    return basis
