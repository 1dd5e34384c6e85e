"""
Alternating and homogeneous states.

A state is alternating when, on every circle, two consecutive attachments in
the same region with the same label join the same pair of circles. It is
homogeneous when all bands in a region carry one label.
"""

import logging
from dataclasses import dataclass, field

from errors import Disconnected
from state import AttachmentEvent
from stategraph import block_summands

log = logging.getLogger(__name__)

ALTERNATING_VIOLATION = "ALTERNATING_VIOLATION"
HOMOGENEITY_VIOLATION = "HOMOGENEITY_VIOLATION"


@dataclass(frozen=True)
class ClassificationWitness:
    kind: str
    circle: int | None
    region: int
    events: tuple[AttachmentEvent, ...]

    @property
    def crossings(self):
        """Crossings of the two offending bands."""
        return tuple(ev.crossing for ev in self.events)

    def to_dict(self):
        """Plain data for the JSON report."""
        return {
            "kind": self.kind,
            "circle": self.circle,
            "region": self.region,
            "crossings": list(self.crossings),
            "labels": [ev.label for ev in self.events],
        }


@dataclass(frozen=True)
class Classification:
    alternating: bool
    homogeneous: bool
    witnesses: tuple[ClassificationWitness, ...] = field(default_factory=tuple)

    @property
    def state_class(self):
        """Subset of {'alternating', 'homogeneous'}."""
        found = set()
        if self.alternating:
            found.add("alternating")
        if self.homogeneous:
            found.add("homogeneous")
        return frozenset(found)

    def to_dict(self):
        """Plain data for the JSON report."""
        return {
            "alternating": self.alternating,
            "homogeneous": self.homogeneous,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


def _band_circles(smoothed, event):
    """Sorted circle pair of the band met at ``event``."""
    u, v = smoothed.bands[event.crossing].circles
    return (min(u, v), max(u, v))


def _cyclic_pairs(items):
    """Neighbouring pairs around a cycle; two items give one pair."""
    if len(items) < 2:
        return []
    if len(items) == 2:
        return [(items[0], items[1])]
    return [(items[i], items[(i + 1) % len(items)]) for i in range(len(items))]


def consecutive_pairs(smoothed, circle, strict=False):
    """Yield (region, first, second) for every consecutive same-region pair on a circle.

    By default "consecutive" means no other event of the same region lies
    between the two; ``strict`` requires them to be neighbours on the circle.
    """
    sequence = list(smoothed.attachment_sequences[circle])
    if strict:
        for first, second in _cyclic_pairs(sequence):
            if first.region == second.region:
                yield first.region, first, second
        return
    regions = sorted({ev.region for ev in sequence})
    for region in regions:
        sub = [ev for ev in sequence if ev.region == region]
        for first, second in _cyclic_pairs(sub):
            yield region, first, second


def _violates(smoothed, first, second):
    """Same label but different circle pairs."""
    return (
        first.label == second.label
        and _band_circles(smoothed, first) != _band_circles(smoothed, second)
    )


class StateClassifier:
    """Decides the alternating and homogeneous classes of a smoothing, with witnesses."""

    def __init__(self, smoothed, strict=False):
        self.smoothed = smoothed
        self.strict = strict

    def analyze(self):
        """Run both tests and return the Classification."""
        alternating, alt_witness = self.alternating()
        homogeneous, hom_witness = self.homogeneous()
        witnesses = tuple(w for w in (alt_witness, hom_witness) if w is not None)
        log.info(
            "state %s: alternating=%s homogeneous=%s",
            self.smoothed.state, alternating, homogeneous,
        )
        return Classification(alternating, homogeneous, witnesses)

    def alternating(self):
        """(True, None), or (False, witness) for the first offending pair."""
        smoothed = self.smoothed
        for circle in range(smoothed.circle_count):
            for region, first, second in consecutive_pairs(smoothed, circle, self.strict):
                if _violates(smoothed, first, second):
                    witness = ClassificationWitness(
                        ALTERNATING_VIOLATION, circle, region, (first, second)
                    )
                    log.debug("alternating violation: %s", witness.to_dict())
                    return False, witness
        return True, None

    def homogeneous(self):
        """(True, None), or (False, witness) for the first region with two labels."""
        by_region = {}
        for band in self.smoothed.bands:
            by_region.setdefault(band.region, []).append(band)
        for region in sorted(by_region):
            bands = by_region[region]
            first = bands[0]
            clash = next((b for b in bands if b.label != first.label), None)
            if clash is not None:
                events = tuple(
                    AttachmentEvent(b.crossing, b.label, b.circles[1], region, 4 * b.crossing)
                    for b in (first, clash)
                )
                return False, ClassificationWitness(HOMOGENEITY_VIOLATION, None, region, events)
        return True, None


def is_alternating_state(smoothed, strict=False):
    """Alternating test with its witness."""
    return StateClassifier(smoothed, strict).alternating()


def is_homogeneous_state(smoothed):
    """Homogeneity test with its witness."""
    return StateClassifier(smoothed).homogeneous()


def homogeneous_by_blocks(graph):
    """Every 2-connected block of the state graph carries a single label."""
    if not graph.is_connected():
        raise Disconnected("block test needs a connected state graph")
    return all(len(block.labels) <= 1 for block in block_summands(graph))


def classify(smoothed, strict=False):
    """Alternating and homogeneous classes of ``smoothed``."""
    return StateClassifier(smoothed, strict).analyze()


def replay_witness(smoothed, witness, strict=False):
    """Check a witness against the smoothing from scratch."""
    if witness.kind == HOMOGENEITY_VIOLATION:
        bands = [smoothed.bands[c] for c in witness.crossings]
        return (
            len(bands) == 2
            and all(b.region == witness.region for b in bands)
            and bands[0].label != bands[1].label
        )
    if witness.kind == ALTERNATING_VIOLATION and len(witness.events) == 2:
        wanted = tuple((ev.crossing, ev.dart) for ev in witness.events)
        for region, first, second in consecutive_pairs(smoothed, witness.circle, strict):
            found = ((first.crossing, first.dart), (second.crossing, second.dart))
            if region == witness.region and found == wanted:
                return _violates(smoothed, first, second)
    return False
