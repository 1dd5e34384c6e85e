import pytest

from classify import (
    ALTERNATING_VIOLATION,
    HOMOGENEITY_VIOLATION,
    classify,
    homogeneous_by_blocks,
    is_alternating_state,
    is_homogeneous_state,
    replay_witness,
)
from diagram import parse_pd
from errors import Disconnected
from state import make_state, seifert_state, smooth
from stategraph import build_graph, reduce


def seifert_smoothing(diagram):
    return smooth(diagram, seifert_state(diagram))


def test_figure_eight_seifert_state_is_in_both_classes(diagrams):
    result = classify(seifert_smoothing(diagrams["4_1"]))
    assert result.alternating and result.homogeneous
    assert result.state_class == frozenset({"alternating", "homogeneous"})
    assert result.witnesses == ()


def test_granny_seifert_state_is_homogeneous_not_alternating(diagrams):
    smoothed = seifert_smoothing(diagrams["granny"])
    ok, witness = is_alternating_state(smoothed)
    assert not ok
    assert witness.kind == ALTERNATING_VIOLATION
    assert witness.events[0].label == witness.events[1].label
    assert replay_witness(smoothed, witness)
    assert is_homogeneous_state(smoothed) == (True, None)


def test_square_seifert_state_is_alternating_not_homogeneous(diagrams):
    smoothed = seifert_smoothing(diagrams["square"])
    result = classify(smoothed)
    assert result.state_class == frozenset({"alternating"})
    (witness,) = result.witnesses
    assert witness.kind == HOMOGENEITY_VIOLATION
    assert witness.crossings == (0, 3)
    assert replay_witness(smoothed, witness)


def test_uniform_states_are_homogeneous(diagrams):
    for name in ("3_1", "5_2", "8_18", "hopf"):
        d = diagrams[name]
        assert is_homogeneous_state(smooth(d, make_state(d, "A" * d.crossing_count)))[0]


def test_trefoil_all_a_is_not_alternating(diagrams):
    smoothed = smooth(diagrams["3_1"], make_state(diagrams["3_1"], "AAA"))
    result = classify(smoothed)
    assert result.state_class == frozenset({"homogeneous"})
    assert replay_witness(smoothed, result.witnesses[0])


def test_single_attachment_per_region_is_vacuously_alternating(diagrams):
    kink = diagrams["kink"]
    assert is_alternating_state(smooth(kink, make_state(kink, "A")))[0]


def test_mixed_bigon_is_alternating_only(diagrams):
    result = classify(smooth(diagrams["r2_unlink"], make_state(diagrams["r2_unlink"], "AB")))
    assert result.state_class == frozenset({"alternating"})


def test_strict_consecutive_is_weaker(diagrams):
    # neighbours on a circle are consecutive in both readings, so strict never finds more
    for name in ("granny", "6_2", "7_6"):
        smoothed = seifert_smoothing(diagrams[name])
        if is_alternating_state(smoothed)[0]:
            assert is_alternating_state(smoothed, strict=True)[0]


def test_homogeneous_by_blocks(diagrams):
    assert homogeneous_by_blocks(build_graph(seifert_smoothing(diagrams["granny"])))
    assert not homogeneous_by_blocks(
        build_graph(smooth(diagrams["r2_unlink"], make_state(diagrams["r2_unlink"], "AB")))
    )
    # a tree with both labels: every block is one edge
    tree = reduce(build_graph(seifert_smoothing(diagrams["4_1"])))
    assert tree.labels == {"A", "B"}
    assert homogeneous_by_blocks(tree)


def test_homogeneous_by_blocks_needs_a_connected_graph():
    split = parse_pd("X[1,1,2,2] X[3,3,4,4]", allow_split=True)
    graph = build_graph(smooth(split, make_state(split, "AA")))
    with pytest.raises(Disconnected):
        homogeneous_by_blocks(graph)


def test_witness_serializes(diagrams):
    result = classify(seifert_smoothing(diagrams["granny"]))
    data = result.to_dict()
    assert data["alternating"] is False
    assert data["witnesses"][0]["kind"] == ALTERNATING_VIOLATION
