"""
Fiberedness verdicts with certificates, and whole-diagram censuses.

A tree reduced graph means the reduced surface is a disk, so the state
surface is a fiber for any state. For alternating or homogeneous states a
non-tree reduced graph means it is not, and the certificate is a cycle of
the reduced graph. Outside those classes a negative answer is only given
with a concrete obstruction: a mixed parallel pair, an alternating inner
cycle, or an odd cycle.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import pandas as pd

from classify import classify, homogeneous_by_blocks, is_homogeneous_state
from config import Config
from diagram import mirror
from errors import BoundExceeded, InvariantViolation
from state import KauffmanState, make_state, smooth, surface_invariants
from stategraph import (
    build_graph,
    edge_faces,
    find_alternating_inner_cycle,
    find_cycle,
    is_tree,
    mixed_parallel_pairs,
    odd_cycle,
    reduce,
)

log = logging.getLogger(__name__)

FIBERED = "FIBERED"
NOT_FIBERED = "NOT_FIBERED"
UNKNOWN = "UNKNOWN"

SPANNING_TREE = "SPANNING_TREE"
NOT_A_TREE = "NOT_A_TREE"
MIXED_PARALLEL = "MIXED_PARALLEL"
ALTERNATING_INNER_CYCLE = "ALTERNATING_INNER_CYCLE"
NON_ORIENTABLE = "NON_ORIENTABLE"
NONE = "NONE"

ALTERNATING_THEOREM = "ALTERNATING_THEOREM"
HOMOGENEOUS_THEOREM = "HOMOGENEOUS_THEOREM"
DUPLICATED_EDGES = "DUPLICATED_EDGES"
INNER_CYCLE_LEMMA = "INNER_CYCLE_LEMMA"
ORIENTABILITY = "ORIENTABILITY"


@dataclass(frozen=True)
class Certificate:
    kind: str
    edges: tuple[int, ...] = ()
    vertices: tuple[int, ...] = ()
    labels: str = ""
    region: int | None = None

    def to_dict(self):
        """Plain data for the JSON report."""
        data = {"kind": self.kind, "edges": list(self.edges), "vertices": list(self.vertices)}
        if self.labels:
            data["labels"] = self.labels
        if self.region is not None:
            data["region"] = self.region
        return data


@dataclass(frozen=True)
class FiberVerdict:
    """Verdict, its certificate and, for classified states, the concrete obstruction if one exists."""

    verdict: str
    certificate: Certificate
    state_class: frozenset
    basis: str
    state: str = ""
    classification: object = field(default=None, compare=False)
    obstruction: Certificate | None = None

    def to_dict(self):
        """Plain data for the JSON report."""
        data = {
            "state": self.state,
            "verdict": self.verdict,
            "certificate": self.certificate.to_dict(),
            "state_class": sorted(self.state_class),
            "basis": self.basis,
        }
        if self.obstruction is not None:
            data["obstruction"] = self.obstruction.to_dict()
        return data


def _labels(graph, edges):
    """Labels of ``edges`` as one string."""
    return "".join(graph.edge(e).label for e in edges)


class FiberDecider:
    """
    Runs the decision procedure for one state.

    Order: tree, then the class theorems, then mixed parallel pairs and
    alternating inner cycles, then an odd cycle; anything left is UNKNOWN.
    """

    def __init__(self, diagram, state):
        self.diagram = diagram
        self.state = make_state(diagram, state)
        self.smoothed = smooth(diagram, self.state)
        self.graph = build_graph(self.smoothed)
        self.reduced = reduce(self.graph)

    def analyze(self):
        """Return the FiberVerdict."""
        classification = classify(self.smoothed)
        state_class = classification.state_class

        def verdict(kind, certificate, basis, obstruction=None):
            """Build and log the FiberVerdict."""
            result = FiberVerdict(
                kind, certificate, state_class, basis, str(self.state), classification, obstruction
            )
            log.info("state %s: %s via %s (%s)", self.state, kind, certificate.kind, basis)
            return result

        if is_tree(self.reduced):
            return verdict(FIBERED, Certificate(SPANNING_TREE, self.reduced.edge_ids), SPANNING_TREE)

        negative = self._mixed_certificate() or self._inner_cycle_certificate()

        if state_class:
            basis = ALTERNATING_THEOREM if classification.alternating else HOMOGENEOUS_THEOREM
            edges, vertices = find_cycle(self.reduced)
            cycle = Certificate(NOT_A_TREE, edges, vertices, _labels(self.reduced, edges))
            return verdict(NOT_FIBERED, cycle, basis, negative)

        if negative is not None:
            basis = DUPLICATED_EDGES if negative.kind == MIXED_PARALLEL else INNER_CYCLE_LEMMA
            return verdict(NOT_FIBERED, negative, basis)

        odd = odd_cycle(self.graph)
        if odd is not None:
            edges, vertices = odd
            return verdict(
                NOT_FIBERED,
                Certificate(NON_ORIENTABLE, edges, vertices, _labels(self.graph, edges)),
                ORIENTABILITY,
            )

        return verdict(UNKNOWN, Certificate(NONE), NONE)

    def _mixed_certificate(self):
        """Lowest mixed parallel pair, or None."""
        pairs = mixed_parallel_pairs(self.graph)
        if not pairs:
            return None
        e, f = pairs[0]
        graph = self.graph
        return Certificate(MIXED_PARALLEL, (e, f), graph.edge(e).endpoints, _labels(graph, (e, f)))

    def _inner_cycle_certificate(self):
        """First alternating face cycle, the unbounded face included, or None."""
        cycle = find_alternating_inner_cycle(self.graph, include_outer=True)
        if cycle is None:
            return None
        return Certificate(
            ALTERNATING_INNER_CYCLE,
            cycle.edges,
            cycle.vertices,
            "".join(cycle.label_sequence),
            cycle.region,
        )


def decide_fiber(diagram, state):
    """Certified verdict on whether the state surface of ``state`` is a fiber."""
    return FiberDecider(diagram, state).analyze()


class CertificateChecker:
    """Re-derives a verdict's certificate from the diagram and state alone."""

    def __init__(self, diagram, state, verdict):
        self.state = make_state(diagram, state)
        self.smoothed = smooth(diagram, self.state)
        self.graph = build_graph(self.smoothed)
        self.reduced = reduce(self.graph)
        self.verdict = verdict

    def fail(self, cert, reason):
        """Raise InvariantViolation for ``cert``."""
        raise InvariantViolation(f"certificate {cert.kind} for state {self.state}: {reason}")

    def analyze(self):
        """True when the certificate and any obstruction check out; raise otherwise."""
        verdict = self.verdict
        cert = verdict.certificate
        if (verdict.verdict == FIBERED) != (cert.kind == SPANNING_TREE):
            self.fail(cert, f"verdict {verdict.verdict} does not match the certificate kind")
        self._check(cert)
        if verdict.obstruction is not None:
            if cert.kind != NOT_A_TREE:
                self.fail(verdict.obstruction, "an obstruction only accompanies NOT_A_TREE")
            if verdict.obstruction.kind not in (MIXED_PARALLEL, ALTERNATING_INNER_CYCLE):
                self.fail(verdict.obstruction, "not an obstruction kind")
            self._check(verdict.obstruction)
        return True

    def _check(self, cert):
        """Dispatch on the certificate kind."""
        graph, reduced = self.graph, self.reduced
        if cert.kind == SPANNING_TREE:
            if set(cert.edges) != set(reduced.edge_ids):
                self.fail(cert, "edge set differs from the reduced graph")
            if not reduced.is_connected() or len(cert.edges) != len(reduced.vertices) - 1:
                self.fail(cert, "reduced graph is not a tree")
        elif cert.kind == MIXED_PARALLEL:
            try:
                e, f = (graph.edge(i) for i in cert.edges)
            except (KeyError, ValueError):
                self.fail(cert, "not a pair of state graph edges")
            if e.endpoints != f.endpoints or e.label == f.label:
                self.fail(cert, "edges are not a mixed parallel pair")
        elif cert.kind == ALTERNATING_INNER_CYCLE:
            walks = edge_faces(self.smoothed, graph.edge_ids).walks
            if not any(
                w.is_simple_cycle and tuple(s.edge for s in w.steps) == cert.edges for w in walks
            ):
                self.fail(cert, "edges do not bound a face of the embedded state graph")
            labels = _labels(graph, cert.edges)
            if len(labels) % 2 or any(labels[i] == labels[i - 1] for i in range(len(labels))):
                self.fail(cert, "labels do not alternate")
        elif cert.kind == NOT_A_TREE:
            self._check_closed_walk(reduced, cert)
            if not self.verdict.state_class:
                self.fail(cert, "NOT_A_TREE needs an alternating or homogeneous state")
        elif cert.kind == NON_ORIENTABLE:
            self._check_closed_walk(graph, cert)
            if len(cert.edges) % 2 == 0:
                self.fail(cert, "cycle is even")
        elif cert.kind == NONE:
            if self.verdict.verdict != UNKNOWN or is_tree(reduced) or self.verdict.state_class:
                self.fail(cert, "UNKNOWN requires an unclassified state with a non-tree reduced graph")
        else:
            self.fail(cert, "unknown certificate kind")

    def _check_closed_walk(self, graph, cert):
        """Edges close up through the listed vertices as a simple cycle of ``graph``."""
        k = len(cert.edges)
        if k == 0 or len(cert.vertices) != k or len(set(cert.edges)) != k:
            self.fail(cert, "not a simple cycle")
        for i, edge_id in enumerate(cert.edges):
            a, b = cert.vertices[i], cert.vertices[(i + 1) % k]
            try:
                edge = graph.edge(edge_id)
            except KeyError:
                self.fail(cert, f"edge {edge_id} is not in the graph")
            if {edge.u, edge.v} != {a, b}:
                self.fail(cert, f"edge {edge_id} does not join {a} and {b}")


def replay_certificate(diagram, state, verdict):
    """Re-derive the certificate's claim from the inputs; raise on any mismatch."""
    return CertificateChecker(diagram, state, verdict).analyze()


# -- census ----------------------------------------------------------------

@dataclass(frozen=True)
class Census:
    table: pd.DataFrame = field(compare=False)
    summary: dict[str, int] = field(compare=False)

    @property
    def rows(self):
        """Number of states in the table."""
        return len(self.table)


def all_states(n):
    """Every state of an n-crossing diagram, in lexicographic A < B order."""
    for labels in itertools.product("AB", repeat=n):
        yield KauffmanState(labels)


def census_row(diagram, state):
    """One census line: circle count, Euler characteristic, classes and verdict."""
    smoothed = smooth(diagram, state)
    result = decide_fiber(diagram, state)
    invariants = surface_invariants(smoothed)
    return {
        "state": str(state),
        "circles": smoothed.circle_count,
        "euler_characteristic": invariants.euler_characteristic,
        "alternating": "alternating" in result.state_class,
        "homogeneous": "homogeneous" in result.state_class,
        "verdict": result.verdict,
        "certificate": result.certificate.kind,
        "basis": result.basis,
        "obstruction": result.obstruction.kind if result.obstruction else "",
    }


class CensusRunner:
    """Decides every state of a diagram and tallies the outcomes."""

    def __init__(self, diagram, bound=Config.CENSUS_BOUND, workers=Config.CENSUS_WORKERS):
        n = diagram.crossing_count
        if n > bound:
            raise BoundExceeded(f"{n} crossings exceed the census bound of {bound}")
        self.diagram = diagram
        self.workers = max(1, workers)

    def run(self):
        """Return the Census, rows in lexicographic state order."""
        states = list(all_states(self.diagram.crossing_count))
        # map keeps input order whatever the scheduling
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            rows = list(pool.map(lambda s: census_row(self.diagram, s), states))

        table = pd.DataFrame(rows, columns=list(Config.CENSUS_COLUMNS))
        summary = self._summary(table)
        log.info("census of %d states: %s", len(table), summary)
        return Census(table, summary)

    @staticmethod
    def _summary(table):
        """Counts per verdict, certificate kind and class."""
        summary = {"states": len(table)}
        for column in ("verdict", "certificate"):
            for key, count in table[column].value_counts().sort_index().items():
                summary[f"{column}:{key}"] = int(count)
        classes = {
            "both": table["alternating"] & table["homogeneous"],
            "alternating_only": table["alternating"] & ~table["homogeneous"],
            "homogeneous_only": ~table["alternating"] & table["homogeneous"],
            "neither": ~table["alternating"] & ~table["homogeneous"],
        }
        for name, mask in classes.items():
            summary[f"class:{name}"] = int(mask.sum())
        return summary


def census(diagram, bound=Config.CENSUS_BOUND, workers=Config.CENSUS_WORKERS):
    """Census of every state of ``diagram``."""
    return CensusRunner(diagram, bound, workers).run()


# -- exhaustive cross-checks ------------------------------------------------

@dataclass(frozen=True)
class HomogeneityDivergence:
    """A connected state where the region test and the block test disagree."""

    state: str
    by_regions: bool
    by_blocks: bool

    def __str__(self):
        return f"{self.state}: regions {self.by_regions}, blocks {self.by_blocks}"


@dataclass(frozen=True)
class StateCheckReport:
    states: int
    problems: tuple[str, ...]
    divergences: tuple[HomogeneityDivergence, ...]

    @property
    def ok(self):
        """No failed check; divergences are reported, not failed."""
        return not self.problems


class StateChecker:
    """
    Runs every state through the cross-checks.

    Checks the Euler characteristic, certificate replay, that reducing twice
    changes nothing, and that the mirror diagram with the complementary state
    gets the same verdict, certificate kind and obstruction kind. States where
    homogeneity by regions and by blocks disagree are collected separately.
    """

    def __init__(self, diagram, bound=Config.EXHAUSTIVE_BOUND):
        n = diagram.crossing_count
        if n > bound:
            raise BoundExceeded(f"{n} crossings exceed the exhaustive bound of {bound}")
        self.diagram = diagram
        self.mirrored = mirror(diagram)

    def run(self):
        """Return the StateCheckReport."""
        n = self.diagram.crossing_count
        problems = []
        divergences = []
        for state in all_states(n):
            problems.extend(self._check_state(state, divergences))
        report = StateCheckReport(2 ** n, tuple(problems), tuple(divergences))
        log.info(
            "checked %d states: %d problems, %d homogeneity divergences",
            report.states, len(problems), len(divergences),
        )
        return report

    def _check_state(self, state, divergences):
        """Failures for one state; appends to ``divergences`` as a side effect."""
        diagram = self.diagram
        problems = []
        smoothed = smooth(diagram, state)
        invariants = surface_invariants(smoothed)
        if invariants.euler_characteristic != smoothed.circle_count - diagram.crossing_count:
            problems.append(f"{state}: euler characteristic {invariants.euler_characteristic}")

        graph = build_graph(smoothed)
        if graph.is_connected():
            by_regions, _ = is_homogeneous_state(smoothed)
            by_blocks = homogeneous_by_blocks(graph)
            if by_regions != by_blocks:
                divergence = HomogeneityDivergence(str(state), by_regions, by_blocks)
                log.debug("homogeneity divergence %s", divergence)
                divergences.append(divergence)

        reduced = reduce(graph)
        if reduce(reduced).edge_ids != reduced.edge_ids:
            problems.append(f"{state}: reduction is not idempotent")

        result = decide_fiber(diagram, state)
        try:
            replay_certificate(diagram, state, result)
        except InvariantViolation as e:
            problems.append(str(e))

        dual = decide_fiber(self.mirrored, state.complement())
        if _outcome(dual) != _outcome(result):
            problems.append(
                f"{state}: mirror gives {'/'.join(_outcome(dual))}, "
                f"expected {'/'.join(_outcome(result))}"
            )
        return problems


def _outcome(result):
    """Verdict, certificate kind and obstruction kind."""
    return result.verdict, result.certificate.kind, result.obstruction.kind if result.obstruction else "-"


def check_all_states(diagram, bound=Config.EXHAUSTIVE_BOUND):
    """Cross-check every state of ``diagram``."""
    return StateChecker(diagram, bound).run()
