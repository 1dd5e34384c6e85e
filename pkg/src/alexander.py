"""
Alexander polynomial of a knot diagram by the region method, and the
monic-polynomial fiberedness test for reduced alternating knot diagrams.

Each crossing is a row, each face a column. The corners of crossing c carry

    corner (c,0) -> -1    corner (c,1) -> 1
    corner (c,2) -> -t    corner (c,3) -> t

and entries add up when one face meets a crossing twice. Deleting the columns
of two faces that share an edge leaves a square matrix whose determinant is
the polynomial up to a unit +-t^k.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import sympy as sym

from diagram import is_alternating_diagram, nugatory_crossings
from errors import (
    InvalidInput,
    NotAKnot,
    NotAlternatingDiagram,
    NotReduced,
    PolynomialFormatError,
)

log = logging.getLogger(__name__)

t = sym.Symbol("t")

FIBERED = "FIBERED"
NOT_FIBERED = "NOT_FIBERED"

CORNER_WEIGHTS = (-1, 1, -t, t)


@dataclass(frozen=True)
class LaurentPolynomial:
    """Integer Laurent polynomial, stored as sorted (exponent, coefficient) terms."""

    terms: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, coefficients):
        """Drop zero coefficients and sort by exponent."""
        return cls(tuple(sorted((int(e), int(c)) for e, c in coefficients.items() if c)))

    @classmethod
    def from_sympy(cls, expr):
        """From a sympy polynomial in ``t`` (non-negative powers)."""
        expr = sym.expand(expr)
        if expr == 0:
            return cls(())
        poly = sym.Poly(expr, t)
        return cls.from_dict({m[0]: int(c) for m, c in poly.terms()})

    @classmethod
    def parse(cls, text):
        """Read the ``exponent:coefficient`` form, e.g. ``"0:1 1:-1 2:1"``."""
        if text is None or not str(text).strip():
            raise PolynomialFormatError("empty polynomial")
        coefficients = {}
        for token in str(text).split():
            try:
                exponent, coefficient = (int(x) for x in token.split(":"))
            except ValueError:
                raise PolynomialFormatError(f"bad term {token!r}; expected exponent:coefficient") from None
            if exponent in coefficients:
                raise PolynomialFormatError(f"exponent {exponent} appears twice")
            coefficients[exponent] = coefficient
        return cls.from_dict(coefficients)

    @property
    def coefficients(self):
        """Exponent to coefficient."""
        return dict(self.terms)

    @property
    def is_zero(self):
        """No terms."""
        return not self.terms

    @property
    def degree(self):
        """Span between the highest and lowest exponent."""
        if self.is_zero:
            return 0
        return self.terms[-1][0] - self.terms[0][0]

    @property
    def leading_coefficient(self):
        """Coefficient of the highest power; 0 for the zero polynomial."""
        return self.terms[-1][1] if self.terms else 0

    @property
    def is_monic(self):
        """Leading coefficient is +-1."""
        return abs(self.leading_coefficient) == 1

    def normalize(self):
        """Multiply by +-t^k: lowest exponent 0, positive leading coefficient."""
        if self.is_zero:
            return self
        low = self.terms[0][0]
        sign = 1 if self.leading_coefficient > 0 else -1
        return LaurentPolynomial(tuple((e - low, sign * c) for e, c in self.terms))

    @property
    def is_symmetric(self):
        """Palindromic up to sign."""
        coeffs = [c for _, c in self.normalize().dense()]
        return coeffs == coeffs[::-1] or coeffs == [-c for c in coeffs[::-1]]

    def dense(self):
        """Every exponent from lowest to highest, zeros included."""
        if self.is_zero:
            return []
        low, high = self.terms[0][0], self.terms[-1][0]
        coefficients = self.coefficients
        return [(e, coefficients.get(e, 0)) for e in range(low, high + 1)]

    def evaluate(self, value):
        """Exact value at ``value``."""
        total = 0
        for e, c in self.terms:
            total += c * (Fraction(value) ** e if e < 0 else value ** e)
        return total

    @property
    def determinant(self):
        """|value at t = -1|."""
        return abs(int(self.evaluate(-1)))

    def to_sympy(self):
        """As a sympy expression in ``t``."""
        return sum((c * t ** e for e, c in self.terms), sym.Integer(0))

    def serialize(self):
        """The ``exponent:coefficient`` form read by ``parse``."""
        return " ".join(f"{e}:{c}" for e, c in self.terms)

    def __str__(self):
        if self.is_zero:
            return "0"
        return str(sym.expand(self.to_sympy()))


def region_matrix(diagram):
    """Crossings by faces, corner weights summed per face."""
    matrix = sym.zeros(diagram.crossing_count, len(diagram.faces))
    for c in range(diagram.crossing_count):
        for s in range(4):
            matrix[c, diagram.corner_face(c, s)] += CORNER_WEIGHTS[s]
    return matrix


def _edge_sides(diagram, edge):
    """Sorted pair of faces on the two sides of ``edge``."""
    left = diagram.face_of[diagram.rotate_back(diagram.heads[edge])]
    right = diagram.face_of[diagram.rotate_back(diagram.tail(edge))]
    return (min(left, right), max(left, right))


def adjacent_face_pairs(diagram):
    """Pairs of distinct faces that share an edge, one per pair."""
    pairs = {_edge_sides(diagram, edge) for edge in range(diagram.edge_count)}
    return sorted(p for p in pairs if p[0] != p[1])


def default_deleted_pair(diagram):
    """Faces on either side of edge 0."""
    return _edge_sides(diagram, 0)


def _require_knot(diagram):
    """NotAKnot for links."""
    if len(diagram.components) != 1:
        raise NotAKnot(f"diagram has {len(diagram.components)} components; knots only")


class AlexanderCalculator:
    """Region-matrix determinant of a knot diagram with two adjacent faces deleted."""

    def __init__(self, diagram, deleted=None):
        _require_knot(diagram)
        pair = tuple(sorted(deleted)) if deleted is not None else default_deleted_pair(diagram)
        if pair not in adjacent_face_pairs(diagram):
            raise InvalidInput(f"faces {pair[0]} and {pair[1]} do not share an edge")
        self.diagram = diagram
        self.deleted = pair

    def raw_determinant(self):
        """Determinant before normalization, as a sympy expression."""
        diagram = self.diagram
        keep = [f for f in range(len(diagram.faces)) if f not in self.deleted]
        square = region_matrix(diagram).extract(list(range(diagram.crossing_count)), keep)
        return sym.expand(square.det(method="bareiss"))

    def calculate(self):
        """Normalized Alexander polynomial."""
        poly = LaurentPolynomial.from_sympy(self.raw_determinant()).normalize()
        log.info("alexander polynomial: %s (faces %s deleted)", poly, self.deleted)
        return poly


def raw_determinant(diagram, deleted=None):
    """Unnormalized region-matrix determinant."""
    return AlexanderCalculator(diagram, deleted).raw_determinant()


def alexander_polynomial(diagram, deleted=None):
    """Alexander polynomial, lowest exponent 0 and positive leading coefficient."""
    return AlexanderCalculator(diagram, deleted).calculate()


def knot_determinant(diagram):
    """|Alexander polynomial at -1|."""
    return alexander_polynomial(diagram).determinant


def murasugi_verdict(diagram, poly=None):
    """Reduced alternating knot diagrams are fibered exactly when the polynomial is monic."""
    _require_knot(diagram)
    if not is_alternating_diagram(diagram):
        raise NotAlternatingDiagram("crossings do not alternate under/over along the knot")
    nugatory = nugatory_crossings(diagram)
    if nugatory:
        raise NotReduced(f"crossing {nugatory[0]} is nugatory")
    poly = poly or alexander_polynomial(diagram)
    return FIBERED if poly.is_monic else NOT_FIBERED
