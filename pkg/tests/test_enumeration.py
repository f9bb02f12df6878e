import json
import random

import pytest

from qnormal import corpus
from qnormal.coordinates import QUAD, STANDARD, matching_system, sparse_string
from qnormal.enumeration import (
    OracleLimitError,
    RayLimitError,
    available_kernels,
    enumerate_bruteforce,
    enumerate_dd,
)
from qnormal.linalg import rank, vector_gcd

from conftest import ORIENTABLE, SMALL

KINDS = [STANDARD, QUAD]


def systems(names, kinds=KINDS):
    out = []
    for name in names:
        T = corpus.load(name)
        for kind in kinds:
            if kind == QUAD and not T.is_orientable():
                continue
            out.append(pytest.param(matching_system(T, kind), id=f"{name}-{kind}"))
    return out


@pytest.mark.parametrize("system", systems(SMALL))
def test_dd_matches_oracle(system):
    oracle = enumerate_bruteforce(system).vectors
    assert enumerate_dd(system, filter=True).vectors == oracle
    assert enumerate_dd(system, filter=False).vectors == oracle


@pytest.mark.parametrize("name", ORIENTABLE)
def test_quad_vertices_match_sidecar(name):
    system = matching_system(corpus.load(name), QUAD)
    expected = corpus.expected(name)[QUAD]
    assert [sparse_string(v) for v in enumerate_dd(system).vectors] == expected["vertices"]


@pytest.mark.parametrize("system", systems(corpus.names()))
def test_vertices_are_primitive_admissible_extreme(system):
    if system.num_columns > 40:
        pytest.skip("standard figure-eight enumeration is covered elsewhere")
    result = enumerate_dd(system)
    n = system.num_columns
    for v in result.vectors:
        assert vector_gcd(v) == 1
        assert all(x >= 0 for x in v) and system.satisfied_by(v)
        # extreme: the active constraints have rank n - 1
        active = list(system.rows) + [
            [int(j == i) for j in range(n)] for i in range(n) if v[i] == 0
        ]
        assert rank(active) == n - 1


@pytest.mark.parametrize("system", systems(["lst2", "lst3", "trefoil"]))
def test_scale_and_row_order_invariance(system):
    base = enumerate_dd(system).vectors
    assert enumerate_dd(system.scaled(-3)).vectors == base
    rng = random.Random(7)
    for _ in range(3):
        order = list(range(len(system.rows)))
        rng.shuffle(order)
        assert enumerate_dd(system, row_order=order).vectors == base


def test_filtering_only_prunes():
    S = matching_system(corpus.load("trefoil"), STANDARD)
    f = enumerate_dd(S, filter=True)
    u = enumerate_dd(S, filter=False)
    assert f.vectors == u.vectors
    assert u.statistics["dropped_at_end"] > 0
    assert f.statistics["dropped_at_end"] == 0
    assert sum(s["rays"] for s in f.statistics["stages"]) <= sum(
        s["rays"] for s in u.statistics["stages"]
    )


def test_caps():
    S = matching_system(corpus.load("trefoil"), STANDARD)
    with pytest.raises(RayLimitError):
        enumerate_dd(S, max_rays=10)
    with pytest.raises(OracleLimitError):
        enumerate_bruteforce(S)


@pytest.mark.parametrize("kernel", available_kernels())
def test_kernel_choice_does_not_change_result(kernel):
    S = matching_system(corpus.load("trefoil"), QUAD)
    assert enumerate_dd(S, kernel=kernel).vectors == enumerate_dd(S, kernel="python").vectors


def test_json_output_is_stable():
    S = matching_system(corpus.load("lst2"), STANDARD)
    a = enumerate_dd(S).to_json(timing=False)
    b = enumerate_dd(S).to_json(timing=False)
    assert a == b
    doc = json.loads(a)
    assert doc["schema"] == 1 and "seconds" not in doc["statistics"]
    assert all(isinstance(x, str) for v in doc["vertices"] for x in v["vector"])
