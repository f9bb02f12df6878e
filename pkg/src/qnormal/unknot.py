"""Solid torus / unknot recognition by searching Q-vertex surfaces for a disc.

For an irreducible knot complement, a normal essential disc of least
(weight, size) sits at a vertex of the quad solution space, so looking at
every Q-vertex surface is a complete search: finding no essential disc
there means the knot is nontrivial.
"""

from __future__ import annotations

import enum
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .coordinates import (
    QUAD,
    STANDARD,
    NonOrientableError,
    is_admissible,
    project_to_quad,
    q_matching_system,
    quad_to_standard,
    sparse_string,
    standard_matching_system,
    vertex_link_coefficients,
)
from .enumeration import (
    DEFAULT_MAX_RAYS,
    DEFAULT_ORACLE_LIMIT,
    OracleLimitError,
    enumerate_bruteforce,
    enumerate_dd,
)
from .surface import ComponentInvariants, invariants, is_essential_disc, realize
from .triangulation import Triangulation, parse_triangulation

log = logging.getLogger(__name__)

SCHEMA = 1

CONTRACT = (
    "If the input is an irreducible knot complement: DISC_FOUND certifies the "
    "knot is trivial (it bounds the witness disc) and NO_DISC certifies it is "
    "knotted, since a minimal essential disc would appear among the Q-vertex "
    "surfaces. Irreducibility is assumed, not checked."
)


class Verdict(str, enum.Enum):
    DISC_FOUND = "DISC_FOUND"
    NO_DISC = "NO_DISC"
    UNSUPPORTED = "UNSUPPORTED"


class EnumerationMismatchError(RuntimeError):
    pass


@dataclass(frozen=True)
class PipelineConfig:
    coords: str = QUAD
    filter: bool = True
    oracle: bool = False
    max_rays: int = DEFAULT_MAX_RAYS
    output_format: str = "text"
    jobs: int = 1
    flipped_edges: tuple[int, ...] = ()  # edge classes whose default orientation is reversed

    def __post_init__(self):
        if self.coords not in (QUAD, STANDARD):
            raise ValueError(f"unknown coordinate kind {self.coords!r}")
        if self.max_rays <= 0 or self.jobs <= 0:
            raise ValueError("caps must be positive")


@dataclass(frozen=True)
class SurveyRow:
    vertex: tuple[int, ...]
    kind: str
    standard: tuple[int, ...]
    components: tuple[ComponentInvariants, ...]
    essential_disc: bool | None

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    @property
    def euler_characteristic(self) -> int:
        return sum(c.euler_characteristic for c in self.components)

    @property
    def weight(self) -> int:
        return sum(c.weight for c in self.components)

    @property
    def size(self) -> int:
        return sum(1 for x in self.standard if x)

    def to_dict(self) -> dict:
        return {
            "vertex": sparse_string(self.vertex),
            "kind": self.kind,
            "standard": sparse_string(self.standard),
            "components": len(self.components),
            "euler_characteristic": self.euler_characteristic,
            "orientable": all(c.orientable for c in self.components),
            "closed": all(c.closed for c in self.components),
            "weight": self.weight,
            "size": self.size,
            "boundary_classes": [
                list(b.homology) for c in self.components for b in c.boundary_classes
            ],
            "essential_disc": self.essential_disc,
        }


def _has_single_torus_boundary(tri: Triangulation) -> bool:
    comps = tri.boundary().components
    return len(comps) == 1 and comps[0].is_torus


def _analyse(args) -> SurveyRow:
    tri, vertex, kind, check_discs = args
    if isinstance(tri, str):  # sent to a worker process as text
        tri = parse_triangulation(tri)
    standard = quad_to_standard(vertex, tri) if kind == QUAD else vertex
    inv = invariants(realize(standard, tri))
    essential = None
    if check_discs:
        B = tri.boundary()
        essential = inv.connected and is_essential_disc(inv.components[0], B)
    return SurveyRow(tuple(vertex), kind, tuple(standard), inv.components, essential)


def _vertices(tri: Triangulation, cfg: PipelineConfig):
    if cfg.coords == QUAD:
        system = q_matching_system(tri, cfg.flipped_edges)
    else:
        system = standard_matching_system(tri)
    result = enumerate_dd(system, cfg.filter, cfg.max_rays)
    if cfg.oracle:
        oracle = enumerate_bruteforce(system)
        if oracle.vectors != result.vectors:
            raise EnumerationMismatchError(
                f"double description found {len(result)} vertices, brute force {len(oracle)}"
            )
    return result


def survey(tri: Triangulation, cfg: PipelineConfig = PipelineConfig()) -> list[SurveyRow]:
    """Every vertex surface with its invariants, in vertex order."""
    result = _vertices(tri, cfg)
    check = _has_single_torus_boundary(tri)
    if cfg.jobs > 1 and len(result) > 1:
        text = tri.to_text()
        jobs = [(text, v, cfg.coords, check) for v in result.vectors]
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            return list(pool.map(_analyse, jobs))
    return [_analyse((tri, v, cfg.coords, check)) for v in result.vectors]


def survey_to_json(tri: Triangulation, rows: list[SurveyRow], cfg: PipelineConfig) -> str:
    doc = {
        "schema": SCHEMA,
        "coords": cfg.coords,
        "tetrahedra": tri.num_tetrahedra,
        "vertices": len(rows),
        "rows": [r.to_dict() for r in rows],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


@dataclass
class RecognitionReport:
    verdict: Verdict
    reason: str = ""
    witness: SurveyRow | None = None
    minimal_witness: SurveyRow | None = None
    witness_rechecked: bool | None = None
    survey: list[SurveyRow] = field(default_factory=list)
    preconditions: dict = field(default_factory=dict)
    coords: str = QUAD

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "verdict": self.verdict.value,
            "reason": self.reason,
            "coords": self.coords,
            "witness": self.witness.to_dict() if self.witness else None,
            "minimal_witness": self.minimal_witness.to_dict() if self.minimal_witness else None,
            "witness_rechecked": self.witness_rechecked,
            "preconditions": self.preconditions,
            "contract": CONTRACT,
            "survey": [r.to_dict() for r in self.survey],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [f"verdict: {self.verdict.value}"]
        if self.reason:
            lines.append(f"reason: {self.reason}")
        for key, value in self.preconditions.items():
            lines.append(f"  {key}: {value}")
        if self.witness is not None:
            w = self.witness
            lines.append(f"witness ({self.coords} vertex): {sparse_string(w.vertex)}")
            lines.append(f"  standard: {sparse_string(w.standard)}")
            lines.append(
                f"  euler={w.euler_characteristic} weight={w.weight} size={w.size} "
                f"boundary={[list(b.homology) for b in w.components[0].boundary_classes]}"
            )
            m = self.minimal_witness
            if m is not None and m is not w:
                lines.append(f"minimal (weight, size) disc: {sparse_string(m.vertex)}")
        if self.survey:
            lines.append(f"vertex surfaces examined: {len(self.survey)}")
        return "\n".join(lines) + "\n"


def recognize(tri: Triangulation, cfg: PipelineConfig = PipelineConfig()) -> RecognitionReport:
    pre = {
        "orientable": "checked" if tri.is_orientable() else "failed",
        "single_torus_boundary": "checked" if _has_single_torus_boundary(tri) else "failed",
        "irreducible": "assumed",
        "boundary_irreducible": "unknown",
    }
    if not tri.is_orientable():
        return RecognitionReport(Verdict.UNSUPPORTED, "triangulation is not orientable",
                                 preconditions=pre, coords=cfg.coords)
    if tri.is_closed:
        return RecognitionReport(Verdict.UNSUPPORTED, "manifold is closed",
                                 preconditions=pre, coords=cfg.coords)
    comps = tri.boundary().components
    if len(comps) != 1:
        return RecognitionReport(Verdict.UNSUPPORTED,
                                 f"{len(comps)} boundary components, expected one",
                                 preconditions=pre, coords=cfg.coords)
    if not comps[0].is_torus:
        return RecognitionReport(Verdict.UNSUPPORTED, "boundary is not a torus",
                                 preconditions=pre, coords=cfg.coords)

    rows = survey(tri, cfg)
    discs = [r for r in rows if r.essential_disc]
    if not discs:
        return RecognitionReport(Verdict.NO_DISC, survey=rows, preconditions=pre, coords=cfg.coords)
    witness = discs[0]
    minimal = min(discs, key=lambda r: (r.weight, r.size, r.vertex))
    # independent second realization of the witness
    again = invariants(realize(quad_to_standard(witness.vertex, tri) if cfg.coords == QUAD
                               else witness.vertex, tri))
    rechecked = again.components == witness.components
    log.debug("witness %s rechecked=%s", witness.vertex, rechecked)
    return RecognitionReport(
        Verdict.DISC_FOUND,
        witness=witness,
        minimal_witness=minimal,
        witness_rechecked=rechecked,
        survey=rows,
        preconditions=pre,
        coords=cfg.coords,
    )


# ----------------------------------------------------------------------
# Cross checks


@dataclass
class CrossCheckReport:
    discrepancies: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    # Q-vertices whose canonical standard vector is itself a standard vertex
    quad_vertices_at_standard_vertices: int | None = None

    @property
    def passed(self) -> bool:
        return not self.discrepancies

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "passed": self.passed,
            "discrepancies": self.discrepancies,
            "warnings": self.warnings,
            "counts": self.counts,
            "quad_vertices_at_standard_vertices": self.quad_vertices_at_standard_vertices,
        }


def cross_check(
    tri: Triangulation,
    oracle_limit: int = DEFAULT_ORACLE_LIMIT,
    max_rays: int = DEFAULT_MAX_RAYS,
) -> CrossCheckReport:
    if not tri.is_orientable():
        raise NonOrientableError("cross checks need an orientable triangulation")
    report = CrossCheckReport()
    results = {}
    for kind, system in ((STANDARD, standard_matching_system(tri)), (QUAD, q_matching_system(tri))):
        filtered = enumerate_dd(system, True, max_rays).vectors
        unfiltered = enumerate_dd(system, False, max_rays).vectors
        report.counts[kind] = len(filtered)
        if filtered != unfiltered:
            report.discrepancies.append(
                f"{kind}: filtered and unfiltered enumeration differ "
                f"({len(filtered)} vs {len(unfiltered)})"
            )
        try:
            brute = enumerate_bruteforce(system, oracle_limit).vectors
        except OracleLimitError as exc:
            report.warnings.append(f"{kind}: brute-force leg skipped ({exc})")
        else:
            for v in sorted(set(brute) ^ set(filtered)):
                side = "brute force" if v in brute else "double description"
                report.discrepancies.append(f"{kind}: vertex {sparse_string(v)} only in {side}")
        results[kind] = filtered

    Q = q_matching_system(tri)
    for v in results[STANDARD]:
        if vertex_link_coefficients(v, tri) is not None:
            if any(project_to_quad(v)):
                report.discrepancies.append(f"vertex link {sparse_string(v)} has quads")
            continue
        if not Q.satisfied_by(project_to_quad(v)):
            report.discrepancies.append(
                f"quad projection of standard vertex {sparse_string(v)} fails Q-matching"
            )

    S = standard_matching_system(tri)
    standard_set = set(results[STANDARD])
    shared = 0
    for q in results[QUAD]:
        try:
            w = quad_to_standard(q, tri)
        except ValueError as exc:
            report.discrepancies.append(f"quad vertex {sparse_string(q)}: {exc}")
            continue
        if not is_admissible(w, S):
            report.discrepancies.append(
                f"canonical standard vector of quad vertex {sparse_string(q)} is not admissible"
            )
        if project_to_quad(w) != tuple(q):
            report.discrepancies.append(f"quad vertex {sparse_string(q)} does not round-trip")
        shared += w in standard_set
    report.quad_vertices_at_standard_vertices = shared
    return report
