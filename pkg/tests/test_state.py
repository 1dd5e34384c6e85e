import itertools

import pytest

from errors import BadCharacter, LengthMismatch
from state import (
    ALL_A,
    ALL_B,
    KauffmanState,
    band_multigraph,
    make_state,
    seifert_genus,
    seifert_state,
    smooth,
    smoothing_partner,
    surface_invariants,
)


def test_make_state(diagrams):
    trefoil = diagrams["3_1"]
    assert make_state(trefoil, "AAA").labels == ("A", "A", "A")
    assert make_state(trefoil, ALL_B).labels == ("B", "B", "B")
    assert str(make_state(trefoil, ALL_A)) == "AAA"


def test_make_state_errors(diagrams):
    with pytest.raises(LengthMismatch):
        make_state(diagrams["3_1"], "AB")
    with pytest.raises(BadCharacter, match="position 2"):
        make_state(diagrams["3_1"], "ABC")
    with pytest.raises(BadCharacter, match="position 0"):
        make_state(diagrams["3_1"], "aba")
    with pytest.raises(LengthMismatch):
        make_state(diagrams["3_1"], " ABA")


def test_smoothing_partners():
    assert [smoothing_partner("A", s) for s in range(4)] == [1, 0, 3, 2]
    assert [smoothing_partner("B", s) for s in range(4)] == [3, 2, 1, 0]


def test_complement():
    state = KauffmanState(("A", "B", "B"))
    assert str(state.complement()) == "BAA"
    assert not state.is_uniform
    assert KauffmanState(("B", "B")).is_uniform


def test_seifert_states(diagrams):
    kink = diagrams["kink"]
    assert smooth(kink, seifert_state(kink)).circle_count == 2
    trefoil_state = seifert_state(diagrams["3_1"])
    assert trefoil_state.is_uniform
    assert smooth(diagrams["3_1"], trefoil_state).circle_count == 2
    assert smooth(diagrams["4_1"], seifert_state(diagrams["4_1"])).circle_count == 3
    assert str(seifert_state(diagrams["granny"])) == "BBBBBB"
    assert str(seifert_state(diagrams["square"])) == "BBBAAA"


def test_kink_smoothings(diagrams):
    kink = diagrams["kink"]
    assert smooth(kink, make_state(kink, "A")).circle_count == 2
    looped = smooth(kink, make_state(kink, "B"))
    assert looped.circle_count == 1
    assert looped.bands[0].is_loop


def test_hopf_all_a(diagrams):
    smoothed = smooth(diagrams["hopf"], make_state(diagrams["hopf"], ALL_A))
    assert smoothed.circle_count == 2
    assert len(smoothed.bands) == 2
    first, second = smoothed.bands
    assert set(first.circles) == set(second.circles) == {0, 1}
    assert first.label == second.label == "A"


def test_trefoil_all_a(diagrams):
    smoothed = smooth(diagrams["3_1"], make_state(diagrams["3_1"], ALL_A))
    assert smoothed.circle_count == 3
    assert surface_invariants(smoothed).euler_characteristic == 0


def test_circles_cover_every_dart_once(diagrams):
    smoothed = smooth(diagrams["4_1"], make_state(diagrams["4_1"], "ABAB"))
    darts = sorted(d for c in smoothed.circles for d in c.darts)
    assert darts == list(range(diagrams["4_1"].dart_count))


def test_regions_partition_the_faces(diagrams):
    d = diagrams["6_2"]
    smoothed = smooth(d, seifert_state(d))
    faces = sorted(f for r in smoothed.regions for f in r.faces)
    assert faces == list(range(len(d.faces)))
    assert smoothed.outer_region == smoothed.region_of_face[d.outer_face]
    for region in smoothed.regions:
        assert region.id == min(region.faces)


def test_every_band_is_attached_twice(diagrams):
    d = diagrams["5_2"]
    smoothed = smooth(d, seifert_state(d))
    seen = [ev.crossing for seq in smoothed.attachment_sequences for ev in seq]
    assert sorted(seen) == sorted(list(range(d.crossing_count)) * 2)


def test_invariants_of_small_surfaces(diagrams):
    kink = diagrams["kink"]
    disk = surface_invariants(smooth(kink, make_state(kink, "A")))
    assert disk.euler_characteristic == 1
    assert disk.first_betti == 0
    assert disk.orientable

    hopf = surface_invariants(smooth(diagrams["hopf"], make_state(diagrams["hopf"], ALL_A)))
    assert hopf.euler_characteristic == 0
    assert hopf.first_betti == 1
    assert hopf.boundary_components == 2

    mobius = surface_invariants(smooth(kink, make_state(kink, "B")))
    assert not mobius.orientable
    assert mobius.genus is None


def test_trefoil_all_a_is_not_orientable(diagrams):
    # three bands around a triangle of circles
    smoothed = smooth(diagrams["3_1"], make_state(diagrams["3_1"], ALL_A))
    assert not surface_invariants(smoothed).orientable


@pytest.mark.parametrize("name, genus", [("3_1", 1), ("4_1", 1), ("5_1", 2), ("granny", 2), ("7_1", 3)])
def test_seifert_genus(diagrams, name, genus):
    assert seifert_genus(diagrams[name]) == genus


def test_band_multigraph_matches_bands(diagrams):
    smoothed = smooth(diagrams["4_1"], seifert_state(diagrams["4_1"]))
    graph = band_multigraph(smoothed)
    assert graph.number_of_nodes() == 3
    assert graph.number_of_edges() == 4


def test_smoothed_map_to_dict(diagrams):
    data = smooth(diagrams["3_1"], seifert_state(diagrams["3_1"])).to_dict()
    assert data["state"] == "BBB"
    assert len(data["circles"]) == 2
    assert len(data["bands"]) == 3


@pytest.mark.parametrize("name", ["kink", "hopf", "3_1", "r2_unlink", "t24"])
def test_boundary_is_the_link_for_every_state(diagrams, name):
    d = diagrams[name]
    for labels in itertools.product("AB", repeat=d.crossing_count):
        smoothed = smooth(d, KauffmanState(labels))
        assert surface_invariants(smoothed).boundary_components == len(d.components)
