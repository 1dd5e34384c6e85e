"""
Abelianized map on the first homology of a checkerboard state surface, and
the determinant bound for diagonally dominant integer matrices.

For a uniform-label, 2-connected, bipartite reduced graph the bounded faces
alpha_1..alpha_n give the basis. Each face is walked counterclockwise: an
edge from a + vertex to a - vertex adds 1 to a_ii; an edge from - to + adds
-1 to a_ji, where alpha_j is the face across that edge (nothing when the
across-face is the unbounded one).
"""

import logging
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from config import Config
from errors import (
    CutVertex,
    Disconnected,
    InvalidInput,
    MixedLabels,
    NotBipartite,
    NotCheckerboard,
    NotSquare,
)
from stategraph import InnerCycle, block_summands, cut_vertices, edge_faces

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SignedVertexLabeling:
    signs: dict[int, int] = field(compare=True)

    def __getitem__(self, vertex):
        return self.signs[vertex]

    def to_dict(self):
        """Vertex id to '+' or '-'."""
        return {str(v): "+" if s > 0 else "-" for v, s in sorted(self.signs.items())}


@dataclass(frozen=True)
class HomologyMatrix:
    entries: tuple[tuple[int, ...], ...]
    cycle_index: tuple[InnerCycle, ...] = field(compare=False)
    outer_region: int = 0
    signs: SignedVertexLabeling = field(default=None, compare=False)

    @property
    def size(self):
        """Rank of the homology group."""
        return len(self.entries)

    def as_array(self):
        """Entries as an object-dtype numpy array, exact integers kept."""
        return np.array(self.entries, dtype=object).reshape(self.size, self.size)

    @property
    def determinant(self):
        """Exact determinant; 1 for the empty matrix."""
        return bareiss_determinant(self.entries)

    def to_dict(self):
        """Plain data for the JSON report."""
        return {
            "matrix": [list(row) for row in self.entries],
            "cycles": [c.to_dict() for c in self.cycle_index],
            "outer_region": self.outer_region,
            "signs": self.signs.to_dict() if self.signs else {},
            "determinant": self.determinant,
        }


def vertex_signs(graph):
    """Proper 2-colouring with the lowest vertex marked +."""
    if not graph.is_connected():
        raise Disconnected("sign labelling needs a connected graph")
    for e in graph.edges:
        if e.is_loop:
            raise NotBipartite(f"edge {e.id} is a loop at vertex {e.u}")
    try:
        colour = nx.bipartite.color(graph.simple_graph())
    except nx.NetworkXError:
        raise NotBipartite("state graph has an odd cycle") from None
    root = colour[min(graph.vertices)]
    return SignedVertexLabeling({v: 1 if colour[v] == root else -1 for v in sorted(colour)})


class HomologyCalculator:
    """
    Builds the homology matrix of a checkerboard reduced graph.

    Refusals come in a fixed order: mixed labels, then a cut vertex, then
    an odd cycle, then faces that are not simple cycles.
    """

    def __init__(self, graph):
        if not graph.is_connected():
            raise Disconnected("homology matrix needs a connected graph")
        self.graph = graph
        self.outer_region = graph.smoothed.outer_region

    def calculate(self):
        """Return the HomologyMatrix; 0x0 for a tree."""
        graph = self.graph
        if len(graph.edges) == len(graph.vertices) - 1:
            # a tree spans a disk: the map is between trivial groups
            return HomologyMatrix((), (), self.outer_region, vertex_signs(graph))

        self._check_hypotheses()
        signs = vertex_signs(graph)
        faces = edge_faces(graph.smoothed, graph.edge_ids)
        bounded = self._bounded_faces(faces)

        index = {w.id: i for i, w in enumerate(bounded)}
        n = len(bounded)
        matrix = [[0] * n for _ in range(n)]
        for i, walk in enumerate(bounded):
            # face walks run clockwise; reversing gives the counterclockwise orientation
            for step in reversed(walk.steps):
                start, end = step.head, step.tail
                if signs[start] > 0 and signs[end] < 0:
                    matrix[i][i] += 1
                else:
                    across = faces.across(step)
                    if not across.is_outer:
                        matrix[index[across.id]][i] -= 1

        result = HomologyMatrix(
            tuple(tuple(r) for r in matrix), self._cycles(bounded), self.outer_region, signs
        )
        log.info("homology matrix %dx%d, det %d", n, n, result.determinant)
        return result

    def _check_hypotheses(self):
        """Uniform labels and no cut vertex."""
        graph = self.graph
        if len(graph.labels) > 1:
            raise MixedLabels(
                f"labels {sorted(graph.labels)} are mixed; need an all-A or all-B graph"
            )
        if len(graph.vertices) >= 3:
            cuts = cut_vertices(graph)
            if cuts:
                raise CutVertex(cuts[0])

    def _bounded_faces(self, faces):
        """Bounded face walks; there must be one simple cycle per independent cycle."""
        graph = self.graph
        bounded = [w for w in faces.walks if w.steps and not w.is_outer]
        expected = len(graph.edges) - len(graph.vertices) + 1
        if len(bounded) != expected or not all(w.is_simple_cycle for w in bounded):
            raise NotCheckerboard(
                f"found {len(bounded)} bounded faces, expected {expected} simple cycles"
            )
        return bounded

    def _cycles(self, bounded):
        """Inner cycles in matrix order."""
        labels = {e.id: e.label for e in self.graph.edges}
        return tuple(
            InnerCycle(
                id=w.id,
                edges=tuple(s.edge for s in w.steps),
                vertices=tuple(s.tail for s in w.steps),
                region=w.region,
                label_sequence=tuple(labels[s.edge] for s in w.steps),
                walk=w,
            )
            for w in bounded
        )


def homology_matrix(graph):
    """Homology matrix of a uniform-label, 2-connected, bipartite reduced graph."""
    return HomologyCalculator(graph).calculate()


def block_matrices(graph):
    """One matrix per Murasugi block of the graph."""
    return [(block, homology_matrix(block)) for block in block_summands(graph)]


# -- exact determinants ------------------------------------------------------

def _square(matrix):
    """Rows as lists of Python ints; NotSquare otherwise."""
    try:
        rows = [[int(x) for x in row] for row in matrix]
    except TypeError:
        raise NotSquare("matrix rows must be integer sequences") from None
    if any(len(row) != len(rows) for row in rows):
        raise NotSquare(f"matrix with {len(rows)} rows is not square")
    return rows


def bareiss_determinant(matrix):
    """Fraction-free elimination over Python integers."""
    a = _square(matrix)
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def cofactor_determinant(matrix):
    """Expansion along the first row; slow, used as a cross-check."""
    a = _square(matrix)
    if not a:
        return 1
    if len(a) == 1:
        return a[0][0]
    total = 0
    for j, value in enumerate(a[0]):
        if value:
            minor = [row[:j] + row[j + 1:] for row in a[1:]]
            total += (-1) ** j * value * cofactor_determinant(minor)
    return total


@dataclass(frozen=True)
class DominanceReport:
    hypotheses_hold: bool
    determinant: int
    conclusion_verified: bool
    nonnegative: bool

    def to_dict(self):
        """Plain data for the JSON report."""
        return {
            "hypotheses_hold": self.hypotheses_hold,
            "determinant": self.determinant,
            "conclusion_verified": self.conclusion_verified,
            "nonnegative": self.nonnegative,
        }


def dominance_holds(matrix):
    """a_ii >= max(2, sum of |a_ij| over j != i) for every row."""
    a = _square(matrix)
    return all(
        row[i] >= max(2, sum(abs(x) for j, x in enumerate(row) if j != i))
        for i, row in enumerate(a)
    )


def check_dominant_det(matrix):
    """Hypothesis, exact determinant and whether det is 0 or at least 2."""
    hypotheses = dominance_holds(matrix)
    det = bareiss_determinant(matrix)
    return DominanceReport(
        hypotheses_hold=hypotheses,
        determinant=det,
        conclusion_verified=(not hypotheses) or det == 0 or det >= 2,
        nonnegative=(not hypotheses) or det >= 0,
    )


def sharp_family(n):
    """n x n dominant matrix with determinant 2."""
    if n < 1:
        raise InvalidInput(f"sharp family needs n >= 1, got {n}")
    size = max(n, 3)
    a = [[0] * size for _ in range(size)]
    a[0][0], a[0][1] = 2, 2
    a[1][0], a[1][1], a[1][2] = 1, 2, -1
    a[2][0], a[2][2] = 1, 2
    if size > 3:
        a[2][3] = 1
    for i in range(3, size):
        a[i][i - 1], a[i][i] = 1, 2
        if i + 1 < size:
            a[i][i + 1] = 1
    return [row[:n] for row in a[:n]]


def random_dominant_matrix(rng, n, bound):
    """Random integer matrix meeting the dominance hypothesis, entries within ``bound``."""
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        diag = int(rng.integers(2, bound + 1))
        a[i][i] = diag
        budget = diag
        for j in rng.permutation(n):
            j = int(j)
            if j == i or budget == 0:
                continue
            value = int(rng.integers(-budget, budget + 1))
            a[i][j] = value
            budget -= abs(value)
    return a


@dataclass(frozen=True)
class SweepResult:
    samples: int
    violations: tuple[tuple[tuple[int, ...], ...], ...]
    negative: int
    zero: int
    minimum_nonzero: int
    histogram: dict[int, int]

    def to_dict(self):
        """Counts for the JSON report."""
        return {
            "samples": self.samples,
            "violations": len(self.violations),
            "negative_determinants": self.negative,
            "zero_determinants": self.zero,
            "minimum_nonzero_determinant": self.minimum_nonzero,
        }


class DominanceSweep:
    """Seeded random test of the determinant bound on dominant integer matrices."""

    def __init__(self, samples=Config.SWEEP_SAMPLES, max_n=Config.SWEEP_MAX_N,
                 bound=Config.SWEEP_ENTRY_BOUND, seed=Config.SWEEP_SEED):
        self.samples = samples
        self.max_n = max_n
        self.bound = bound
        self.rng = np.random.default_rng(seed)

    def run(self):
        """Check every sample and tally the determinants."""
        violations = []
        histogram = {}
        negative = zero = 0
        for _ in range(self.samples):
            n = int(self.rng.integers(1, self.max_n + 1))
            a = random_dominant_matrix(self.rng, n, self.bound)
            report = check_dominant_det(a)
            det = report.determinant
            histogram[det] = histogram.get(det, 0) + 1
            if not report.conclusion_verified:
                violations.append(tuple(tuple(r) for r in a))
            if det < 0:
                negative += 1
            if det == 0:
                zero += 1
        nonzero = [d for d in histogram if d != 0]
        result = SweepResult(
            samples=self.samples,
            violations=tuple(violations),
            negative=negative,
            zero=zero,
            minimum_nonzero=min(nonzero) if nonzero else 0,
            histogram=dict(sorted(histogram.items())),
        )
        log.info("dominance sweep: %s", result.to_dict())
        return result


def dominance_sweep(samples=Config.SWEEP_SAMPLES, max_n=Config.SWEEP_MAX_N,
                    bound=Config.SWEEP_ENTRY_BOUND, seed=Config.SWEEP_SEED):
    """Run a DominanceSweep with the given parameters."""
    return DominanceSweep(samples, max_n, bound, seed).run()
