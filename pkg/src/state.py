"""
Kauffman states and their smoothings.

Resolution at a crossing, by slot:

    A   joins slots (0,1) and (2,3)
    B   joins slots (0,3) and (1,2)

The two corners cut off by the smoothing arcs stay separate; the other two
corners merge through the removed crossing point, and the band of that
crossing lives in the merged region.
"""

import logging
from dataclasses import dataclass

import networkx as nx

from diagram import Diagram
from errors import BadCharacter, LengthMismatch

log = logging.getLogger(__name__)

A = "A"
B = "B"
LABELS = (A, B)

ALL_A = "ALL_A"
ALL_B = "ALL_B"

_MERGED = {A: (1, 3), B: (0, 2)}


def smoothing_partner(label, slot):
    """Slot joined to ``slot`` by the smoothing arc."""
    return slot ^ 1 if label == A else 3 - slot


def merged_corners(label):
    """The two corners joined through the crossing point by this label."""
    return _MERGED[label]


def opposite(label):
    """The other label."""
    return B if label == A else A


@dataclass(frozen=True)
class KauffmanState:
    labels: tuple[str, ...]

    def __len__(self):
        return len(self.labels)

    def __str__(self):
        return "".join(self.labels)

    def __getitem__(self, crossing):
        return self.labels[crossing]

    def complement(self):
        """Every label swapped."""
        return KauffmanState(tuple(opposite(x) for x in self.labels))

    @property
    def is_uniform(self):
        """All crossings carry one label."""
        return len(set(self.labels)) <= 1


def make_state(diagram, value):
    """Build a state from an A/B string or the ALL_A / ALL_B fill markers."""
    n = diagram.crossing_count
    if isinstance(value, KauffmanState):
        value = str(value)
    if value == ALL_A:
        return KauffmanState((A,) * n)
    if value == ALL_B:
        return KauffmanState((B,) * n)

    if len(value) != n:
        raise LengthMismatch(f"state {value!r} has {len(value)} labels, diagram has {n} crossings")
    for i, ch in enumerate(value):
        if ch not in LABELS:
            raise BadCharacter(f"state character {ch!r} at position {i} is not A or B")
    return KauffmanState(tuple(value))


def seifert_state(diagram):
    """Orientation-respecting smoothing: A at positive crossings, B at negative ones."""
    return KauffmanState(tuple(A if s > 0 else B for s in diagram.crossing_signs))


@dataclass(frozen=True)
class Circle:
    id: int
    darts: tuple[int, ...]


@dataclass(frozen=True)
class Region:
    id: int
    faces: tuple[int, ...]


@dataclass(frozen=True)
class Band:
    crossing: int
    label: str
    circles: tuple[int, int]       # circles of darts 4c and 4c+2
    region: int
    attachment_darts: tuple[int, int]

    @property
    def is_loop(self):
        """Both ends on one circle."""
        return self.circles[0] == self.circles[1]


@dataclass(frozen=True)
class AttachmentEvent:
    crossing: int
    label: str
    other_circle: int
    region: int
    dart: int                      # the smoothing-arc dart where the circle meets the band


@dataclass(frozen=True)
class SurfaceInvariants:
    euler_characteristic: int
    first_betti: int
    boundary_components: int
    orientable: bool

    @property
    def genus(self):
        """Genus of an orientable surface; None when one-sided."""
        if not self.orientable:
            return None
        return (2 - self.euler_characteristic - self.boundary_components) // 2


@dataclass(frozen=True)
class SmoothedMap:
    diagram: Diagram
    state: KauffmanState
    circles: tuple[Circle, ...]
    circle_of: tuple[int, ...]               # dart -> circle id
    regions: tuple[Region, ...]
    region_of_face: tuple[int, ...]          # face id -> region id
    outer_region: int
    bands: tuple[Band, ...]
    attachment_sequences: tuple[tuple[AttachmentEvent, ...], ...]

    @property
    def circle_count(self):
        """Number of state circles."""
        return len(self.circles)

    @property
    def crossing_count(self):
        """Number of crossings, one band each."""
        return self.diagram.crossing_count

    def to_dict(self):
        """Plain data for the JSON report."""
        return {
            "state": str(self.state),
            "circles": [{"id": c.id, "darts": list(c.darts)} for c in self.circles],
            "regions": [{"id": r.id, "faces": list(r.faces)} for r in self.regions],
            "outer_region": self.outer_region,
            "bands": [
                {
                    "crossing": b.crossing,
                    "label": b.label,
                    "circles": list(b.circles),
                    "region": b.region,
                    "attachment_darts": list(b.attachment_darts),
                }
                for b in self.bands
            ],
            "attachment_sequences": [
                [
                    {
                        "crossing": ev.crossing,
                        "label": ev.label,
                        "other_circle": ev.other_circle,
                        "region": ev.region,
                    }
                    for ev in seq
                ]
                for seq in self.attachment_sequences
            ],
        }


class StateSmoother:
    """Replaces every crossing by its resolution and reads off circles, regions and bands."""

    def __init__(self, diagram, state):
        n = diagram.crossing_count
        if len(state) != n:
            raise LengthMismatch(f"state has {len(state)} labels, diagram has {n} crossings")
        self.diagram = diagram
        self.state = state

    def calculate(self):
        """Build the SmoothedMap."""
        circles, circle_of = self._trace_circles()
        regions, region_of_face = self._merge_regions()
        bands = self._bands(circle_of, region_of_face)
        sequences = self._attachment_sequences(circles, circle_of, bands)

        smoothed = SmoothedMap(
            diagram=self.diagram,
            state=self.state,
            circles=circles,
            circle_of=tuple(circle_of),
            regions=regions,
            region_of_face=region_of_face,
            outer_region=region_of_face[self.diagram.outer_face],
            bands=bands,
            attachment_sequences=sequences,
        )
        log.info("state %s: %d circles, %d regions", self.state, len(circles), len(regions))
        return smoothed

    def _tau(self, d):
        """Dart at the other end of the smoothing arc through ``d``."""
        c, s = divmod(d, 4)
        return 4 * c + smoothing_partner(self.state[c], s)

    def _trace_circles(self):
        """Alternate the smoothing arc and the diagram edge until the circle closes."""
        diagram = self.diagram
        circle_of = [-1] * diagram.dart_count
        orbits = []
        for start in range(diagram.dart_count):
            if circle_of[start] >= 0:
                continue
            cid = len(orbits)
            orbit = []
            d = start
            while circle_of[d] < 0:
                t = self._tau(d)
                circle_of[d] = circle_of[t] = cid
                orbit.extend((d, t))
                d = diagram.alpha(t)
            orbits.append(orbit)
        return tuple(Circle(i, tuple(o)) for i, o in enumerate(orbits)), circle_of

    def _merge_regions(self):
        """Faces merged through each removed crossing point; a region takes its lowest face id."""
        diagram = self.diagram
        merge = nx.Graph()
        merge.add_nodes_from(range(len(diagram.faces)))
        for c in range(diagram.crossing_count):
            m1, m2 = merged_corners(self.state[c])
            merge.add_edge(diagram.corner_face(c, m1), diagram.corner_face(c, m2))

        region_of_face = [0] * len(diagram.faces)
        regions = []
        for members in sorted(sorted(comp) for comp in nx.connected_components(merge)):
            for f in members:
                region_of_face[f] = members[0]
            regions.append(Region(members[0], tuple(members)))
        return tuple(regions), tuple(region_of_face)

    def _bands(self, circle_of, region_of_face):
        """One band per crossing, in the region of its merged corners."""
        bands = []
        for c in range(self.diagram.crossing_count):
            label = self.state[c]
            m1 = merged_corners(label)[0]
            bands.append(Band(
                crossing=c,
                label=label,
                circles=(circle_of[4 * c], circle_of[4 * c + 2]),
                region=region_of_face[self.diagram.corner_face(c, m1)],
                attachment_darts=(4 * c, 4 * c + 2),
            ))
        return tuple(bands)

    @staticmethod
    def _attachment_sequences(circles, circle_of, bands):
        """Bands met along each circle, in trace order."""
        sequences = []
        for circle in circles:
            events = []
            # darts come in (d, tau(d)) pairs; each pair is one pass by a crossing
            for d in circle.darts[::2]:
                c, s = divmod(d, 4)
                band = bands[c]
                events.append(AttachmentEvent(
                    crossing=c,
                    label=band.label,
                    other_circle=circle_of[4 * c + (s + 2) % 4],
                    region=band.region,
                    dart=d,
                ))
            sequences.append(tuple(events))
        return tuple(sequences)


class SurfaceAnalyzer:
    """Euler characteristic, orientability and boundary of a state surface."""

    def __init__(self, smoothed):
        self.smoothed = smoothed
        self.graph = band_multigraph(smoothed)

    def analyze(self):
        """Compute the SurfaceInvariants."""
        smoothed = self.smoothed
        components = nx.number_connected_components(self.graph)
        invariants = SurfaceInvariants(
            euler_characteristic=smoothed.circle_count - smoothed.crossing_count,
            first_betti=self.graph.number_of_edges() - self.graph.number_of_nodes() + components,
            boundary_components=boundary_components(smoothed),
            orientable=nx.is_bipartite(self.graph),
        )
        log.debug("surface invariants %s", invariants)
        return invariants


def smooth(diagram, state):
    """Smooth ``diagram`` by ``state``."""
    return StateSmoother(diagram, state).calculate()


def band_multigraph(smoothed):
    """Circles as nodes, one edge per band keyed by its crossing."""
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(smoothed.circle_count))
    for band in smoothed.bands:
        graph.add_edge(*band.circles, key=band.crossing, label=band.label)
    return graph


def boundary_components(smoothed):
    """Number of boundary curves of the state surface.

    The boundary runs along a diagram edge, then along the side of the band
    at the next crossing. That side joins slot s to slot s + 2 whichever
    label the crossing carries, so the boundary is the link itself and the
    count does not depend on the state. It always equals the number of
    link components.
    """
    diagram = smoothed.diagram
    seen = set()
    count = 0
    for start in diagram.heads:
        if start in seen:
            continue
        count += 1
        d = start
        while d not in seen:
            seen.add(d)
            d = diagram.alpha(diagram.rotate(d, 2))
    return count


def surface_invariants(smoothed):
    """Invariants of the state surface of ``smoothed``."""
    return SurfaceAnalyzer(smoothed).analyze()


def seifert_genus(diagram):
    """Genus of the Seifert surface built from the diagram's Seifert state."""
    return surface_invariants(smooth(diagram, seifert_state(diagram))).genus
