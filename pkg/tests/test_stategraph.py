import networkx as nx
import pytest

from errors import NotAdjacent, NotDecomposing
from state import make_state, seifert_state, smooth
from stategraph import (
    block_summands,
    build_graph,
    cut_vertices,
    decompose_at_pair,
    edge_faces,
    find_alternating_inner_cycle,
    find_cycle,
    inner_cycles,
    is_tree,
    mixed_parallel_pairs,
    odd_cycle,
    reduce,
)


def graph_of(diagram, state):
    return build_graph(smooth(diagram, make_state(diagram, state)))


def seifert_graph(diagram):
    return build_graph(smooth(diagram, seifert_state(diagram)))


def test_hopf_all_a_graph(diagrams):
    g = graph_of(diagrams["hopf"], "AA")
    assert g.vertices == (0, 1)
    assert [(e.endpoints, e.label) for e in g.edges] == [((0, 1), "A"), ((0, 1), "A")]


def test_kink_graph_is_a_tree(diagrams):
    g = graph_of(diagrams["kink"], "A")
    assert len(g.vertices) == 2 and len(g.edges) == 1
    assert is_tree(g)


def test_trefoil_seifert_graph_and_reduction(diagrams):
    g = seifert_graph(diagrams["3_1"])
    assert len(g.vertices) == 2
    assert len(g.edges) == 3
    assert g.labels == {"B"}
    r = reduce(g)
    assert r.edge_ids == (0,)
    assert r.collapsed == {0: (0, 1, 2)}
    assert r.multiplicity(0) == 3
    assert is_tree(r)


def test_mixed_parallels_are_not_collapsed(diagrams):
    g = graph_of(diagrams["r2_unlink"], "AB")
    r = reduce(g)
    assert r.edge_ids == (0, 1)
    assert not is_tree(r)
    assert r.collapsed == {}


def test_reduce_is_idempotent(diagrams):
    r = reduce(seifert_graph(diagrams["granny"]))
    again = reduce(r)
    assert again.edge_ids == r.edge_ids
    assert again.reduction_log == r.reduction_log


def test_reducing_a_tree_changes_nothing(diagrams):
    g = graph_of(diagrams["kink"], "A")
    r = reduce(g)
    assert r.edge_ids == g.edge_ids
    assert r.collapsed == {}


def test_is_tree_small_cases(diagrams):
    assert not is_tree(graph_of(diagrams["hopf"], "AA"))
    # self-loop
    assert not is_tree(graph_of(diagrams["kink"], "B"))


def test_mixed_parallel_pairs(diagrams):
    assert mixed_parallel_pairs(graph_of(diagrams["r2_unlink"], "AB")) == [(0, 1)]
    assert mixed_parallel_pairs(graph_of(diagrams["hopf"], "AA")) == []
    assert mixed_parallel_pairs(seifert_graph(diagrams["3_1"])) == []


def test_find_cycle_closes_a_triangle(diagrams):
    r = reduce(graph_of(diagrams["3_1"], "AAA"))
    edges, vertices = find_cycle(r)
    assert sorted(edges) == [0, 1, 2]
    assert len(vertices) == 3
    assert find_cycle(graph_of(diagrams["kink"], "A")) is None


def test_odd_cycle(diagrams):
    edges, vertices = odd_cycle(graph_of(diagrams["3_1"], "AAA"))
    assert len(edges) == 3 and len(vertices) == 3
    assert odd_cycle(graph_of(diagrams["t24"], "AAAA")) is None
    assert odd_cycle(graph_of(diagrams["kink"], "B")) == ((0,), (0,))


def test_decompose_parallel_pair(diagrams):
    g = graph_of(diagrams["hopf"], "AA")
    split = decompose_at_pair(g, 0, 1, 0)
    assert split.groups == ((1,),)
    assert split.x_component.edge_ids == (0,)
    assert [s.edge_ids for s in split.summands] == [(0, 1)]


def test_decompose_theta_graph(diagrams):
    g = seifert_graph(diagrams["3_1"])
    split = decompose_at_pair(g, 0, 1, 0)
    assert sorted(split.groups) == [(1,), (2,)]
    assert all(len(s.edges) == 2 and 0 in s.edge_ids for s in split.summands)
    assert len(split.components) == 3


def test_decompose_errors(diagrams):
    tree = reduce(seifert_graph(diagrams["4_1"]))
    x = tree.edges[0]
    with pytest.raises(NotDecomposing):
        decompose_at_pair(tree, x.u, x.v, x.id)
    with pytest.raises(NotAdjacent):
        decompose_at_pair(graph_of(diagrams["hopf"], "AA"), 0, 1, 7)


def test_inner_cycles(diagrams):
    assert inner_cycles(reduce(seifert_graph(diagrams["4_1"]))) == []
    hopf = inner_cycles(graph_of(diagrams["hopf"], "AA"))
    assert len(hopf) == 1 and hopf[0].length == 2
    theta = inner_cycles(seifert_graph(diagrams["3_1"]))
    assert len(theta) == 2
    assert all(c.length == 2 for c in theta)


def test_include_outer_counts_every_face(diagrams):
    g = seifert_graph(diagrams["3_1"])
    assert len(inner_cycles(g, include_outer=True)) == 3
    assert len(inner_cycles(graph_of(diagrams["hopf"], "AA"), include_outer=True)) == 2


def test_alternating_inner_cycle(diagrams):
    annulus = find_alternating_inner_cycle(graph_of(diagrams["r2_unlink"], "AB"))
    assert annulus is not None
    assert sorted(annulus.label_sequence) == ["A", "B"]
    assert find_alternating_inner_cycle(graph_of(diagrams["hopf"], "AA")) is None
    assert find_alternating_inner_cycle(graph_of(diagrams["kink"], "A")) is None


def test_exactly_one_outer_walk(diagrams):
    for name, state in [("hopf", "AA"), ("3_1", "AAA"), ("5_2", "AAAAA"), ("4_1", "AABB")]:
        g = graph_of(diagrams[name], state)
        faces = edge_faces(g.smoothed, g.edge_ids)
        assert sum(w.is_outer for w in faces.walks) == 1
        assert faces.outer.steps


def test_blocks_and_cut_vertices(diagrams):
    r = reduce(seifert_graph(diagrams["granny"]))
    blocks = block_summands(r)
    assert len(blocks) == 2
    assert all(len(b.edges) == 1 for b in blocks)
    assert cut_vertices(r) == [1]
    assert cut_vertices(graph_of(diagrams["t24"], "AAAA")) == []


def test_graph_to_dict(diagrams):
    data = reduce(seifert_graph(diagrams["3_1"])).to_dict()
    assert data["vertices"] == [0, 1]
    assert data["reduction_log"] == {"0": [0, 1, 2]}


def cycle_rank(graph):
    g = graph.to_networkx()
    return g.number_of_edges() - g.number_of_nodes() + nx.number_connected_components(g)


def test_decomposition_partitions_edges_and_adds_cycle_ranks(diagrams):
    split_count = 0
    for name in ("hopf", "3_1", "4_1", "granny", "5_1", "t24"):
        g = seifert_graph(diagrams[name])
        x = g.edges[0]
        try:
            split = decompose_at_pair(g, x.u, x.v, x.id)
        except NotDecomposing:
            continue
        split_count += 1
        pieces = [split.x_component.edge_ids] + list(split.groups)
        flat = [e for piece in pieces for e in piece]
        assert sorted(flat) == sorted(g.edge_ids), name
        assert len(flat) == len(set(flat)), name
        assert sum(cycle_rank(s) for s in split.summands) == cycle_rank(g), name
        assert cycle_rank(split.x_component) == 0
    assert split_count >= 3


def test_face_lengths_use_every_edge_twice(diagrams):
    cases = [
        graph_of(diagrams["hopf"], "AA"),
        seifert_graph(diagrams["3_1"]),
        graph_of(diagrams["t24"], "AAAA"),
        reduce(graph_of(diagrams["3_1"], "AAA")),
        reduce(graph_of(diagrams["5_2"], "AAAAA")),
        reduce(graph_of(diagrams["7_4"], "B" * 7)),
    ]
    for g in cases:
        assert cut_vertices(g) == []
        faces = inner_cycles(g, include_outer=True)
        assert sum(c.length for c in faces) == 2 * len(g.edges)
