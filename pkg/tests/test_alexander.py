import pytest

from alexander import (
    FIBERED,
    NOT_FIBERED,
    LaurentPolynomial,
    adjacent_face_pairs,
    alexander_polynomial,
    knot_determinant,
    murasugi_verdict,
    region_matrix,
)
from errors import (
    InvalidInput,
    NotAKnot,
    NotAlternatingDiagram,
    NotReduced,
    PolynomialFormatError,
)


def test_trefoil_and_figure_eight(diagrams):
    assert alexander_polynomial(diagrams["3_1"]).serialize() == "0:1 1:-1 2:1"
    assert alexander_polynomial(diagrams["4_1"]).serialize() == "0:1 1:-3 2:1"


def test_region_matrix_shape(diagrams):
    d = diagrams["4_1"]
    m = region_matrix(d)
    assert m.shape == (4, 6)
    # every row sums to zero at t = 1
    assert all(sum(m.row(i).subs("t", 1)) == 0 for i in range(4))


def test_polynomial_does_not_depend_on_the_deleted_pair(diagrams):
    for name in ("3_1", "5_2", "6_2"):
        d = diagrams[name]
        polys = {alexander_polynomial(d, pair) for pair in adjacent_face_pairs(d)}
        assert len(polys) == 1, name


def test_deleted_faces_must_be_adjacent(diagrams):
    d = diagrams["4_1"]
    pairs = set(adjacent_face_pairs(d))
    far = next((a, b) for a in range(6) for b in range(a + 1, 6) if (a, b) not in pairs)
    with pytest.raises(InvalidInput, match="do not share an edge"):
        alexander_polynomial(d, far)


def test_knot_determinants(diagrams):
    expected = {"3_1": 3, "4_1": 5, "5_2": 7, "6_1": 9}
    assert {name: knot_determinant(diagrams[name]) for name in expected} == expected


def test_murasugi_verdicts(diagrams):
    assert murasugi_verdict(diagrams["3_1"]) == FIBERED
    assert murasugi_verdict(diagrams["4_1"]) == FIBERED
    assert murasugi_verdict(diagrams["5_2"]) == NOT_FIBERED
    assert murasugi_verdict(diagrams["7_4"]) == NOT_FIBERED


def test_murasugi_preconditions(diagrams):
    with pytest.raises(NotAlternatingDiagram):
        murasugi_verdict(diagrams["square"])
    with pytest.raises(NotReduced, match="crossing 0"):
        murasugi_verdict(diagrams["kink"])
    with pytest.raises(NotAKnot):
        murasugi_verdict(diagrams["hopf"])
    with pytest.raises(NotAKnot):
        alexander_polynomial(diagrams["t24"])


def test_polynomial_agrees_with_the_corpus(corpus):
    for entry in corpus:
        if entry.is_knot:
            assert alexander_polynomial(entry.diagram) == entry.alexander, entry.name


def test_reduced_alternating_knots_match_recorded_fiberedness(corpus):
    for entry in corpus:
        if entry.is_knot and entry.alternating_diagram and entry.name != "kink":
            assert (murasugi_verdict(entry.diagram) == FIBERED) == entry.fibered, entry.name


def test_parse_and_serialize():
    p = LaurentPolynomial.parse("2:1 0:1  1:-1")
    assert p.terms == ((0, 1), (1, -1), (2, 1))
    assert p.serialize() == "0:1 1:-1 2:1"
    assert str(p) == "t**2 - t + 1"
    assert LaurentPolynomial.parse("0:3 1:0").terms == ((0, 3),)


@pytest.mark.parametrize("text", ["", "1", "a:b", "0:1 0:2", "1:2:3"])
def test_parse_errors(text):
    with pytest.raises(PolynomialFormatError):
        LaurentPolynomial.parse(text)


def test_normalize_and_properties():
    p = LaurentPolynomial.parse("-1:-1 0:3 1:-1")
    n = p.normalize()
    assert n.serialize() == "0:1 1:-3 2:1"
    assert n.degree == 2
    assert n.is_monic and n.is_symmetric
    assert n.determinant == 5
    assert p.evaluate(1) == 1

    lopsided = LaurentPolynomial.parse("0:2 1:-3")
    assert not lopsided.is_symmetric
    assert not lopsided.is_monic


def test_zero_polynomial():
    zero = LaurentPolynomial.from_dict({})
    assert zero.is_zero
    assert zero.degree == 0
    assert str(zero) == "0"
    assert zero.normalize() == zero
