import pytest

from qnormal import corpus
from qnormal.coordinates import (
    QUAD,
    QUAD_OF_PAIR,
    STANDARD,
    IncompatibleQuadsError,
    InconsistentQuadVectorError,
    NonOrientableError,
    edge_quad_coefficients,
    haken_sum,
    is_admissible,
    matching_system,
    project_to_quad,
    q_matching_system,
    quad_col,
    quad_to_standard,
    standard_matching_system,
    tri_col,
    vector_from_json,
    vector_to_json,
    vertex_link_coefficients,
)
from qnormal.enumeration import enumerate_dd
from qnormal.triangulation import parse_triangulation

from conftest import ORIENTABLE


def test_quad_of_pair_is_symmetric_partition():
    for (x, y), q in QUAD_OF_PAIR.items():
        assert QUAD_OF_PAIR[(y, x)] == q
        others = tuple(z for z in range(4) if z not in (x, y))
        assert QUAD_OF_PAIR[others] == q
    assert QUAD_OF_PAIR[(0, 1)] == 0 and QUAD_OF_PAIR[(0, 2)] == 1 and QUAD_OF_PAIR[(0, 3)] == 2


def test_columns():
    assert tri_col(2, 3) == 17
    assert quad_col(2, 1) == 19
    assert quad_col(2, 1, QUAD) == 7


def test_standard_row_template(corpus_name):
    T = corpus.load(corpus_name)
    S = standard_matching_system(T)
    assert len(S.rows) == 3 * len(T.face_pairs())
    for terms in S.terms:
        # T_a[v] + Q_a - T_b[w] - Q_b: four distinct raw contributions
        assert sorted(c for _, c in terms) == [-1, -1, 1, 1]
        tris = [col for col, _ in terms if col % 7 < 4]
        assert len(tris) == 2


def test_self_glued_row_collapses():
    S = standard_matching_system(corpus.load("lst1"))
    # the face glued to the same tetrahedron cancels its quad terms
    assert any(sum(1 for c in row if c) == 2 for row in S.rows)


@pytest.mark.parametrize("sign", [1, -1])
def test_edge_coefficients_are_permutation(sign):
    for tail in range(4):
        for head in range(4):
            if tail == head:
                continue
            coeffs = edge_quad_coefficients(sign, tail, head)
            assert sorted(coeffs.values()) == [-1, 0, 1]
            assert coeffs[QUAD_OF_PAIR[(tail, head)]] == 0
            # the rotation is derived from the edge direction, so reversing
            # both leaves the coefficients alone
            assert edge_quad_coefficients(sign, head, tail) == coeffs
            assert edge_quad_coefficients(-sign, tail, head) == {q: -c for q, c in coeffs.items()}


def test_q_rows_one_per_interior_edge(corpus_name):
    T = corpus.load(corpus_name)
    if not T.is_orientable():
        return
    Q = q_matching_system(T)
    assert [lab[1] for lab in Q.labels] == [e.index for e in T.interior_edges]
    for edge, terms in zip(T.interior_edges, Q.terms):
        assert len(terms) == 2 * len(edge.incidences)


def test_flipping_an_edge_negates_its_row():
    T = corpus.load("trefoil")
    Q = q_matching_system(T)
    for k, edge in enumerate(T.interior_edges):
        F = q_matching_system(T, flipped_edges=[edge.index])
        assert F.rows[k] == tuple(-c for c in Q.rows[k])
        assert F.rows[:k] + F.rows[k + 1 :] == Q.rows[:k] + Q.rows[k + 1 :]


def test_q_system_requires_orientation():
    T = parse_triangulation("tets 1\nglue 0 0 0 1 1032\n")
    with pytest.raises(NonOrientableError):
        q_matching_system(T)
    assert standard_matching_system(T).num_columns == 7


@pytest.mark.parametrize("name", ORIENTABLE)
def test_quad_to_standard_round_trip(name):
    T = corpus.load(name)
    S = standard_matching_system(T)
    for q in enumerate_dd(q_matching_system(T)).vectors:
        w = quad_to_standard(q, T)
        assert project_to_quad(w) == q
        assert is_admissible(w, S)
        # canonical: every vertex class has a corner with no triangles
        for corners in T.vertex_classes:
            assert min(w[7 * a + v] for a, v in corners) == 0


def test_quad_to_standard_rejects_non_solution():
    T = corpus.load("lst2")
    Q = q_matching_system(T)
    bad = next(
        v for v in ([1, 0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [1, 0, 0, 0, 1, 0])
        if not Q.satisfied_by(v)
    )
    with pytest.raises(InconsistentQuadVectorError):
        quad_to_standard(bad, T)
    with pytest.raises(ValueError):
        quad_to_standard([0, 0, -1, 0, 0, 0], T)
    with pytest.raises(ValueError):
        quad_to_standard([0, 0, 0], T)


def test_vertex_links_satisfy_matching(corpus_name):
    T = corpus.load(corpus_name)
    S = standard_matching_system(T)
    for k in range(T.num_vertices):
        link = T.vertex_link(k)
        assert S.satisfied_by(link)
        assert not any(project_to_quad(link))
        coeffs = vertex_link_coefficients(link, T)
        assert coeffs == [int(i == k) for i in range(T.num_vertices)]


def test_haken_sum():
    T = corpus.load("lst1")
    S = standard_matching_system(T)
    vs = enumerate_dd(S).vectors
    link = T.vertex_link(0)
    for v in vs:
        assert haken_sum(v, link) == tuple(a + b for a, b in zip(v, link))
    quads = [v for v in vs if any(project_to_quad(v))]
    clash = [(a, b) for a in quads for b in quads if project_to_quad(a) != project_to_quad(b)]
    with pytest.raises(IncompatibleQuadsError):
        haken_sum(*clash[0])
    with pytest.raises(ValueError):
        haken_sum((1,), (1, 2))


def test_admissibility_report():
    S = standard_matching_system(corpus.load("lst1"))
    r = is_admissible((0, 0, 0, 0, 1, 1, 0), S)
    assert not r.admissible and not r.quad_condition and r.offending_tetrahedra == (0,)
    r = is_admissible((-1, 0, 0, 0, 0, 0, 0), S)
    assert not r.nonnegative and r.negative_coordinates == (0,)
    assert not r.matching and r.offending_rows


def test_json_round_trip_big_integers():
    v = (0, 2**80, 3)
    assert vector_from_json(vector_to_json(v)) == v


def test_scaled_system_same_kernel():
    S = matching_system(corpus.load("lst3"), STANDARD)
    assert S.scaled(7).rows[0] == tuple(7 * c for c in S.rows[0])
