"""
Link diagrams as combinatorial maps.

A PD term X[a,b,c,d] lists the four edges at a crossing counterclockwise,
starting from the incoming under-strand. Dart 4*c + s is slot s of crossing c.
Two permutations describe the map:

    rotate(d)   next slot counterclockwise at the same crossing
    alpha(d)    the other end of the edge through d

Faces are the orbits of alpha . rotate. The face of dart d is the region
between slots s and s+1 at its crossing (corner (c, s)).
"""

import logging
import re
from dataclasses import dataclass

import networkx as nx

from errors import (
    BadLabels,
    EmptyDiagram,
    NonPlanar,
    OrientationConflict,
    PDSyntaxError,
    SplitDiagram,
)

log = logging.getLogger(__name__)

_TERM = r"X\[(\d+),(\d+),(\d+),(\d+)\]"
_PD_RE = re.compile(rf"\s*{_TERM}(?:\s+{_TERM})*\s*")
_TERM_RE = re.compile(_TERM)


@dataclass(frozen=True)
class Crossing:
    """Edge labels (as given in the PD code) counterclockwise from slot 0."""
    labels: tuple[int, int, int, int]


@dataclass(frozen=True)
class Face:
    id: int
    boundary: tuple[int, ...]


@dataclass(frozen=True)
class Diagram:
    """A validated, oriented link diagram."""

    crossings: tuple[Crossing, ...]
    labels: tuple[int, ...]            # dense edge index -> original label
    pairing: tuple[int, ...]           # dart -> partner dart
    dart_edges: tuple[int, ...]        # dart -> dense edge index
    faces: tuple[Face, ...]
    face_of: tuple[int, ...]           # dart -> face id
    heads: tuple[int, ...]             # edge -> dart where it enters a crossing
    components: tuple[tuple[int, ...], ...]
    outer_face: int
    pieces: int = 1

    # -- map primitives -------------------------------------------------

    @property
    def crossing_count(self):
        """Number of crossings."""
        return len(self.crossings)

    @property
    def edge_count(self):
        """Number of edges, always twice the crossing count."""
        return len(self.labels)

    @property
    def dart_count(self):
        """Number of darts, four per crossing."""
        return len(self.pairing)

    @staticmethod
    def rotate(d, steps=1):
        """Dart ``steps`` slots counterclockwise at the same crossing."""
        return 4 * (d // 4) + (d % 4 + steps) % 4

    @staticmethod
    def rotate_back(d):
        """Previous slot at the same crossing."""
        return 4 * (d // 4) + (d % 4 + 3) % 4

    def alpha(self, d):
        """Other end of the edge through ``d``."""
        return self.pairing[d]

    def tail(self, edge):
        """Dart where the edge leaves its crossing."""
        return self.pairing[self.heads[edge]]

    def is_entering(self, d):
        """True when the edge through ``d`` enters the crossing there."""
        return self.heads[self.dart_edges[d]] == d

    def corner_face(self, crossing, slot):
        """Face at corner (crossing, slot), between slots slot and slot+1."""
        return self.face_of[4 * crossing + slot % 4]

    # -- orientation derived data --------------------------------------

    def over_entry_slot(self, crossing):
        """Slot (1 or 3) where the over-strand enters."""
        return 3 if self.is_entering(4 * crossing + 3) else 1

    def sign(self, crossing):
        """+1 or -1 by the right-hand rule."""
        return 1 if self.over_entry_slot(crossing) == 3 else -1

    @property
    def crossing_signs(self):
        """Signs of all crossings, in crossing order."""
        return tuple(self.sign(c) for c in range(self.crossing_count))

    @property
    def writhe(self):
        """Sum of the crossing signs."""
        return sum(self.crossing_signs)

    # -- serialization -------------------------------------------------

    def to_pd(self):
        """PD text with the original labels."""
        return " ".join("X[{},{},{},{}]".format(*c.labels) for c in self.crossings)

    def to_dict(self):
        """Crossing rows as plain lists."""
        return {"crossings": [list(c.labels) for c in self.crossings]}

    def summary(self):
        """Counts, signs and flags for the validate report."""
        return {
            "crossings": self.crossing_count,
            "edges": self.edge_count,
            "faces": len(self.faces),
            "components": len(self.components),
            "pieces": self.pieces,
            "outer_face": self.outer_face,
            "signs": list(self.crossing_signs),
            "writhe": self.writhe,
            "alternating": is_alternating_diagram(self),
            "nugatory": nugatory_crossings(self),
        }


class DiagramBuilder:
    """
    Validates crossing rows and assembles the plane map.

    Checks run in order: label multiplicities, split pieces, planarity by
    the Euler characteristic, then the slot-0 orientation convention.
    """

    def __init__(self, rows, allow_split=False):
        self.rows = [tuple(r) for r in rows]
        self.allow_split = allow_split
        self.n = len(self.rows)

    def build(self):
        """Run every check and return the Diagram."""
        if not self.rows:
            raise EmptyDiagram("diagram has no crossings")
        n = self.n

        occurrences = self._occurrences()
        labels = tuple(sorted(occurrences))
        dense = {label: i for i, label in enumerate(labels)}
        pairing = [0] * (4 * n)
        dart_edges = [0] * (4 * n)
        for label, (d1, d2) in occurrences.items():
            pairing[d1], pairing[d2] = d2, d1
            dart_edges[d1] = dart_edges[d2] = dense[label]

        pieces = self._count_pieces(pairing)
        if pieces > 1 and not self.allow_split:
            raise SplitDiagram(f"diagram splits into {pieces} pieces; pass allow_split to accept it")

        faces, face_of = self._trace_faces(pairing)
        if n - 2 * n + len(faces) != 2 * pieces:
            raise NonPlanar(
                f"V - E + F = {n} - {2 * n} + {len(faces)} != {2 * pieces}: not a planar map"
            )

        heads, components = self._orient(pairing, dart_edges, occurrences, dense)

        top = len(labels) - 1
        outer = face_of[Diagram.rotate_back(heads[top])]

        diagram = Diagram(
            crossings=tuple(Crossing(row) for row in self.rows),
            labels=labels,
            pairing=tuple(pairing),
            dart_edges=tuple(dart_edges),
            faces=tuple(faces),
            face_of=tuple(face_of),
            heads=tuple(heads),
            components=tuple(components),
            outer_face=outer,
            pieces=pieces,
        )
        log.info(
            "parsed diagram: %d crossings, %d faces, %d components",
            n, len(faces), len(components),
        )
        return diagram

    def _occurrences(self):
        """Darts of every label; each label must occur exactly twice."""
        occurrences = {}
        for c, row in enumerate(self.rows):
            for s, label in enumerate(row):
                occurrences.setdefault(label, []).append(4 * c + s)
        for label, darts in sorted(occurrences.items()):
            if len(darts) != 2:
                raise BadLabels(f"label {label} occurs {len(darts)} times, expected 2")
        if len(occurrences) != 2 * self.n:
            raise BadLabels(f"{self.n} crossings need {2 * self.n} edges, found {len(occurrences)}")
        return occurrences

    def _count_pieces(self, pairing):
        """Connected pieces of the crossing graph."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from((d // 4, e // 4) for d, e in enumerate(pairing))
        return nx.number_connected_components(graph)

    @staticmethod
    def _trace_faces(pairing):
        """Orbits of alpha . rotate, numbered by their lowest dart."""
        face_of = [-1] * len(pairing)
        faces = []
        for start in range(len(pairing)):
            if face_of[start] >= 0:
                continue
            boundary = []
            d = start
            while face_of[d] < 0:
                face_of[d] = len(faces)
                boundary.append(d)
                d = pairing[Diagram.rotate(d)]
            faces.append(Face(len(faces), tuple(boundary)))
        return faces, face_of

    def _orient(self, pairing, dart_edges, occurrences, dense):
        """Direct every edge so that slot 0 is always an incoming under-strand."""
        heads = [None] * len(dense)
        components = []

        def trace(entry):
            """Follow a component from ``entry``, recording heads."""
            edges = []
            d = entry
            while True:
                edge = dart_edges[d]
                heads[edge] = d
                edges.append(edge)
                d = pairing[Diagram.rotate(d, 2)]
                if d == entry:
                    return tuple(edges)

        for c in range(self.n):
            if heads[dart_edges[4 * c]] is None:
                components.append(trace(4 * c))
        # components that never pass under: the lowest dart of the smallest label is the tail
        for label in sorted(occurrences):
            edge = dense[label]
            if heads[edge] is None:
                components.append(trace(pairing[min(occurrences[label])]))

        for edge, head in enumerate(heads):
            if head % 4 == 2:
                c = head // 4
                raise OrientationConflict(
                    f"crossing {c}: under-strand leaves through slot 0 (edge label entering slot 2)"
                )
        return heads, components


def parse_pd(text, allow_split=False):
    """Parse and validate a PD code such as ``X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]``."""
    if text is None or not text.strip():
        raise EmptyDiagram("empty PD code: crossingless diagrams are not representable")
    if not _PD_RE.fullmatch(text):
        bad = _first_bad_token(text)
        raise PDSyntaxError(f"malformed PD code near {bad!r}")

    rows = [tuple(int(x) for x in m.groups()) for m in _TERM_RE.finditer(text)]
    if any(label == 0 for row in rows for label in row):
        raise PDSyntaxError("edge labels must be positive integers")
    return DiagramBuilder(rows, allow_split=allow_split).build()


def _first_bad_token(text):
    """First whitespace-separated token that is not a PD term."""
    for token in text.split():
        if not _TERM_RE.fullmatch(token):
            return token
    return text.strip()[:20]


# -- transformations ----------------------------------------------------

def change_crossings(diagram, crossings):
    """Swap over and under at the given crossings; the new under-strand enters at slot 0."""
    chosen = set(crossings)
    rows = []
    for c, crossing in enumerate(diagram.crossings):
        a, b, cc, d = crossing.labels
        if c not in chosen:
            rows.append((a, b, cc, d))
        elif diagram.over_entry_slot(c) == 1:
            rows.append((b, cc, d, a))
        else:
            rows.append((d, a, b, cc))
    return DiagramBuilder(rows, allow_split=diagram.pieces > 1).build()


def mirror(diagram):
    """Swap over and under at every crossing; A and B trade places."""
    return change_crossings(diagram, range(diagram.crossing_count))


def relabel(diagram, mapping):
    """Rename edge labels; labels missing from ``mapping`` are kept."""
    rows = [tuple(mapping.get(x, x) for x in c.labels) for c in diagram.crossings]
    return DiagramBuilder(rows, allow_split=diagram.pieces > 1).build()


# -- diagram properties -------------------------------------------------

def faces(diagram):
    """Faces of the plane map, numbered by their lowest dart."""
    return diagram.faces


def orientation(diagram):
    """Per-edge direction (tail dart -> head dart) and the component list."""
    directions = {
        diagram.labels[e]: {"tail": diagram.tail(e), "head": diagram.heads[e]}
        for e in range(diagram.edge_count)
    }
    comps = [[diagram.labels[e] for e in comp] for comp in diagram.components]
    return {"edges": directions, "components": comps}


def passages(diagram, component):
    """'U' or 'O' for each crossing passage along a component, in order."""
    return ["U" if diagram.heads[e] % 4 == 0 else "O" for e in component]


def is_alternating_diagram(diagram):
    """Every component alternates between under and over passages."""
    for comp in diagram.components:
        seq = passages(diagram, comp)
        if any(seq[i] == seq[(i + 1) % len(seq)] for i in range(len(seq))):
            return False
    return True


def nugatory_crossings(diagram):
    """Crossings that touch one face at two of their corners."""
    found = []
    for c in range(diagram.crossing_count):
        corner_faces = [diagram.corner_face(c, s) for s in range(4)]
        if len(set(corner_faces)) < 4:
            found.append(c)
    return found
