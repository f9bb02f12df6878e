import pytest

from qnormal import corpus
from qnormal.coordinates import q_matching_system, quad_to_standard, standard_matching_system
from qnormal.enumeration import enumerate_dd
from qnormal.surface import (
    NotAdmissibleError,
    UnsupportedBoundaryError,
    edge_class_weights,
    invariants,
    is_essential_disc,
    realize,
)
from qnormal.triangulation import Triangulation


def standard_vertices(name):
    return enumerate_dd(standard_matching_system(corpus.load(name))).vectors


def test_vertex_links():
    for name in corpus.names():
        T = corpus.load(name)
        for k in range(T.num_vertices):
            inv = invariants(realize(T.vertex_link(k), T))
            assert inv.connected
            (c,) = inv.components
            expected = 1 if T.vertex_is_boundary[k] else 2
            assert c.euler_characteristic == expected
            assert c.orientable
            if expected == 1:
                assert c.boundary_curves == 1
                assert all(b.is_trivial for b in c.boundary_classes)


def test_lst1_meridian_disc():
    T = corpus.load("lst1")
    disc = quad_to_standard((0, 0, 1), T)
    (c,) = invariants(realize(disc, T)).components
    assert (c.euler_characteristic, c.boundary_curves, c.orientable) == (1, 1, True)
    assert is_essential_disc(c, T.boundary())
    assert not c.boundary_classes[0].is_trivial


def test_edge_weights_agree_across_incidences(corpus_name):
    T = corpus.load(corpus_name)
    if T.num_tetrahedra <= 5:
        vectors = standard_vertices(corpus_name)
    else:
        vectors = [quad_to_standard(q, T) for q in enumerate_dd(q_matching_system(T)).vectors]
    for v in vectors:
        for ws in edge_class_weights(v, T):
            assert len(set(ws)) == 1


def test_multiples_split_into_parallel_copies():
    T = corpus.load("lst2")
    for v in standard_vertices("lst2"):
        one = invariants(realize(v, T))
        if not one.connected or not one.orientable:
            continue
        two = invariants(realize(tuple(2 * x for x in v), T))
        assert two.num_components == 2
        assert two.euler_characteristic == 2 * one.euler_characteristic
        assert two.weight == 2 * one.weight


def test_one_sided_double_is_connected():
    T = corpus.load("lst1")
    mobius = next(
        v for v in standard_vertices("lst1") if not invariants(realize(v, T)).orientable
    )
    two = invariants(realize(tuple(2 * x for x in mobius), T))
    # the boundary of a regular neighbourhood of a one-sided surface is connected
    assert two.connected and two.orientable


def test_component_vectors_sum_to_surface():
    T = corpus.load("trefoil")
    for q in enumerate_dd(q_matching_system(T)).vectors:
        w = quad_to_standard(q, T)
        S = realize(tuple(3 * x for x in w), T)
        inv = invariants(S)
        total = [sum(c.vector[i] for c in inv.components) for i in range(len(w))]
        assert tuple(total) == tuple(3 * x for x in w)


def test_rejects_inadmissible():
    T = corpus.load("lst1")
    with pytest.raises(NotAdmissibleError):
        realize((0, 0, 0, 0, 1, 1, 0), T)
    with pytest.raises(NotAdmissibleError):
        realize((1, 0, 0, 0, 0, 0, 0), T)


def test_essential_disc_needs_torus_boundary():
    T = Triangulation(1, {})
    (c,) = invariants(realize(T.vertex_link(0), T)).components
    with pytest.raises(UnsupportedBoundaryError):
        is_essential_disc(c, T.boundary())


def test_closed_surfaces_in_closed_manifold():
    T = corpus.load("lens_3_1")
    for v in standard_vertices("lens_3_1"):
        for c in invariants(realize(v, T)).components:
            assert c.closed and c.boundary_curves == 0
