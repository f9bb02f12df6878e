"""Regenerate the ``*.expected.json`` sidecars for the bundled corpus.

Vertex sets come from the brute-force oracle when the system is small
enough and from the double description method otherwise; the sidecar
records which.  Run from the repository root:

    python scripts/make_sidecars.py
"""

import json
import sys

from qnormal import corpus
from qnormal.coordinates import QUAD, STANDARD, matching_system, sparse_string
from qnormal.enumeration import (
    DEFAULT_ORACLE_LIMIT,
    enumerate_bruteforce,
    enumerate_dd,
)
from qnormal.unknot import PipelineConfig, recognize, survey


def vertices(tri, kind):
    system = matching_system(tri, kind)
    if system.num_columns <= DEFAULT_ORACLE_LIMIT:
        method, result = "bruteforce", enumerate_bruteforce(system)
    else:
        method, result = "double-description", enumerate_dd(system)
    return {
        "method": method,
        "count": len(result),
        "vertices": [sparse_string(v) for v in result.vectors],
    }


def sidecar(name):
    tri = corpus.load(name)
    doc = {
        "schema": 1,
        "name": name,
        "tetrahedra": tri.num_tetrahedra,
        "closed": tri.is_closed,
        "orientable": tri.is_orientable(),
        "boundary_euler_characteristics": sorted(
            c.euler_characteristic for c in tri.boundary().components
        ),
        STANDARD: vertices(tri, STANDARD),
    }
    if tri.is_orientable():
        doc[QUAD] = vertices(tri, QUAD)
        doc["quad_vertex_euler_characteristics"] = sorted(
            r.euler_characteristic for r in survey(tri, PipelineConfig())
        )
        doc["verdict"] = recognize(tri).verdict.value
    else:
        doc["verdict"] = "UNSUPPORTED"
    return doc


def main(argv):
    for name in argv or corpus.names():
        out = corpus.path(name).with_name(f"{name}.expected.json")
        out.write_text(json.dumps(sidecar(name), indent=2, sort_keys=True) + "\n")
        print(out)


if __name__ == "__main__":
    main(sys.argv[1:])
