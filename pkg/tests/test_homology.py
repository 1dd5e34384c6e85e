import numpy as np
import pytest

from config import Config
from errors import CutVertex, MixedLabels, NotBipartite, NotSquare
from homology import (
    bareiss_determinant,
    block_matrices,
    check_dominant_det,
    cofactor_determinant,
    dominance_holds,
    dominance_sweep,
    homology_matrix,
    random_dominant_matrix,
    sharp_family,
    vertex_signs,
)
from state import make_state, smooth
from stategraph import build_graph, reduce


def reduced_graph(diagram, label):
    state = make_state(diagram, label * diagram.crossing_count)
    return reduce(build_graph(smooth(diagram, state)))


def test_vertex_signs_alternate_along_edges(diagrams):
    signs = vertex_signs(reduced_graph(diagrams["kink"], "A"))
    assert signs.signs == {0: 1, 1: -1}
    square = vertex_signs(reduced_graph(diagrams["t24"], "A"))
    assert sorted(square.signs.values()) == [-1, -1, 1, 1]
    assert square.to_dict()["0"] == "+"


def test_odd_cycles_have_no_signs(diagrams):
    with pytest.raises(NotBipartite):
        vertex_signs(reduced_graph(diagrams["3_1"], "A"))
    with pytest.raises(NotBipartite, match="loop"):
        vertex_signs(reduced_graph(diagrams["kink"], "B"))


def test_trees_give_the_empty_matrix(diagrams):
    for name, label in [("kink", "A"), ("3_1", "B"), ("5_1", "B"), ("hopf", "A")]:
        m = homology_matrix(reduced_graph(diagrams[name], label))
        assert m.size == 0
        assert m.determinant == 1


def test_single_square_face(diagrams):
    m = homology_matrix(reduced_graph(diagrams["t24"], "A"))
    assert m.entries == ((2,),)
    assert m.cycle_index[0].length == 4


def test_longer_single_faces(diagrams):
    assert homology_matrix(reduced_graph(diagrams["5_2"], "A")).entries == ((2,),)
    assert homology_matrix(reduced_graph(diagrams["7_2"], "B")).entries == ((3,),)


def test_two_faces_sharing_an_edge(diagrams):
    m = homology_matrix(reduced_graph(diagrams["7_4"], "B"))
    assert m.entries == ((2, 0), (-1, 2))
    assert m.determinant == 4
    assert [c.length for c in m.cycle_index] == [4, 4]
    assert m.as_array().shape == (2, 2)


def test_cut_vertices_are_refused(diagrams):
    with pytest.raises(CutVertex) as info:
        homology_matrix(reduced_graph(diagrams["granny"], "A"))
    assert info.value.vertex == 2
    assert "vertex 2" in str(info.value)


def test_mixed_labels_are_refused(diagrams):
    annulus = build_graph(smooth(diagrams["r2_unlink"], make_state(diagrams["r2_unlink"], "AB")))
    with pytest.raises(MixedLabels):
        homology_matrix(annulus)


def test_block_matrices(diagrams):
    blocks = block_matrices(reduced_graph(diagrams["granny"], "B"))
    assert len(blocks) == 2
    assert all(m.size == 0 for _, m in blocks)
    ((block, m),) = block_matrices(reduced_graph(diagrams["t24"], "A"))
    assert m.entries == ((2,),)
    assert len(block.edges) == 4


def test_matrix_to_dict(diagrams):
    data = homology_matrix(reduced_graph(diagrams["7_4"], "B")).to_dict()
    assert data["matrix"] == [[2, 0], [-1, 2]]
    assert data["determinant"] == 4
    assert len(data["cycles"]) == 2


def test_uniform_state_matrices_meet_the_determinant_bound(corpus):
    computed = 0
    for entry in corpus:
        for label in "AB":
            try:
                m = homology_matrix(reduced_graph(entry.diagram, label))
            except (NotBipartite, CutVertex):
                continue
            if m.size == 0:
                continue
            computed += 1
            report = check_dominant_det(m.entries)
            assert report.hypotheses_hold, (entry.name, label, m.entries)
            assert report.determinant >= 2, (entry.name, label)
            # each face contributes one + to - step per two edges
            for i, cycle in enumerate(m.cycle_index):
                assert m.entries[i][i] == cycle.length // 2
            a = m.as_array()
            off = a - np.diag(np.diag(a))
            assert (off <= 0).all(), (entry.name, label)
            # columns are dominant as well as rows
            assert (np.diag(a) >= np.abs(off).sum(axis=0)).all(), (entry.name, label)
    assert computed >= 5


def test_determinants_agree():
    rng = np.random.default_rng(7)
    for _ in range(50):
        n = int(rng.integers(1, 6))
        a = rng.integers(-9, 10, size=(n, n)).tolist()
        assert bareiss_determinant(a) == cofactor_determinant(a)
    assert bareiss_determinant([]) == 1
    assert bareiss_determinant([[0, 1], [1, 0]]) == -1
    assert bareiss_determinant([[1, 2], [2, 4]]) == 0


def test_determinants_need_square_integer_input():
    with pytest.raises(NotSquare):
        bareiss_determinant([[1, 2]])
    with pytest.raises(NotSquare):
        bareiss_determinant([1, 2])


def test_check_dominant_det():
    report = check_dominant_det([[2]])
    assert report.hypotheses_hold and report.determinant == 2 and report.conclusion_verified
    identity = check_dominant_det([[1, 0], [0, 1]])
    assert not identity.hypotheses_hold
    assert identity.conclusion_verified
    assert not dominance_holds([[2, 3], [0, 2]])


def test_sharp_family():
    assert sharp_family(1) == [[2]]
    assert sharp_family(2) == [[2, 2], [1, 2]]
    for n in range(1, Config.SHARP_FAMILY_MAX + 1):
        a = sharp_family(n)
        assert dominance_holds(a), n
        assert bareiss_determinant(a) == 2, n


def test_random_matrices_are_dominant():
    rng = np.random.default_rng(0)
    for _ in range(100):
        assert dominance_holds(random_dominant_matrix(rng, int(rng.integers(1, 7)), 10))


def test_small_sweep_is_reproducible():
    first = dominance_sweep(samples=200, seed=11)
    second = dominance_sweep(samples=200, seed=11)
    assert first == second
    assert first.violations == ()
    assert first.negative == 0


@pytest.mark.slow
def test_full_sweep():
    result = dominance_sweep()
    assert result.samples == Config.SWEEP_SAMPLES
    assert result.violations == ()
    assert result.negative == 0
    assert result.minimum_nonzero >= 2
