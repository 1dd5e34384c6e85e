"""
State graphs: one vertex per state circle, one edge per band.

The graph keeps the plane embedding of its smoothing. Faces of the plane map
made of the circles and any subset of the bands are traced directly on the
diagram's darts, which gives inner cycles for the full graph, for its
reduction and for every Murasugi summand with one routine.
"""

import logging
from dataclasses import dataclass, field

import networkx as nx

from errors import Disconnected, NotAdjacent, NotDecomposing
from state import SmoothedMap, merged_corners

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GraphEdge:
    id: int                 # crossing index, i.e. ordered by lowest incident dart
    u: int
    v: int
    label: str

    @property
    def endpoints(self):
        """Sorted vertex pair."""
        return (min(self.u, self.v), max(self.u, self.v))

    @property
    def is_loop(self):
        """Both ends on one vertex."""
        return self.u == self.v

    def other(self, vertex):
        """The end that is not ``vertex``."""
        return self.v if vertex == self.u else self.u


@dataclass(frozen=True)
class EdgeEnd:
    edge: int
    region: int
    dart: int


@dataclass(frozen=True)
class StateGraph:
    smoothed: SmoothedMap
    vertices: tuple[int, ...]
    edges: tuple[GraphEdge, ...]
    rotation: dict[int, tuple[EdgeEnd, ...]] = field(compare=False)

    @property
    def edge_ids(self):
        """Edge ids in increasing order."""
        return tuple(e.id for e in self.edges)

    def edge(self, edge_id):
        """Edge by id; KeyError when absent."""
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise KeyError(edge_id)

    @property
    def labels(self):
        """Set of labels carried by the edges."""
        return {e.label for e in self.edges}

    def to_networkx(self):
        """MultiGraph keyed by edge id."""
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.vertices)
        for e in self.edges:
            graph.add_edge(e.u, e.v, key=e.id, label=e.label)
        return graph

    def simple_graph(self):
        """Underlying simple graph: parallels merged, loops dropped."""
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from((e.u, e.v) for e in self.edges if not e.is_loop)
        return graph

    def is_connected(self):
        """True for a nonempty connected graph."""
        return len(self.vertices) > 0 and nx.is_connected(self.to_networkx())

    def subgraph(self, edge_ids):
        """Graph on the given edges and their ends, embedding kept."""
        keep = set(edge_ids)
        edges = tuple(e for e in self.edges if e.id in keep)
        vertices = tuple(sorted({x for e in edges for x in (e.u, e.v)})) or self.vertices
        return StateGraph(self.smoothed, vertices, edges, _rotation(self.smoothed, vertices, keep))

    def to_dict(self):
        """Plain data for the JSON report."""
        return {
            "vertices": list(self.vertices),
            "edges": [
                {"id": e.id, "endpoints": [e.u, e.v], "label": e.label} for e in self.edges
            ],
            "rotation": {
                str(v): [{"edge": end.edge, "region": end.region} for end in ends]
                for v, ends in self.rotation.items()
            },
        }


@dataclass(frozen=True)
class ReducedGraph(StateGraph):
    reduction_log: dict[int, tuple[int, ...]] = field(default_factory=dict, compare=False)

    @property
    def collapsed(self):
        """Only the kept edges that stand for more than one band."""
        return {k: v for k, v in self.reduction_log.items() if len(v) > 1}

    def multiplicity(self, edge_id):
        """Number of bands the kept edge stands for."""
        return len(self.reduction_log.get(edge_id, (edge_id,)))

    def subgraph(self, edge_ids):
        """Subgraph that keeps the reduction log of its edges."""
        base = StateGraph.subgraph(self, edge_ids)
        keep = set(base.edge_ids)
        return ReducedGraph(
            base.smoothed, base.vertices, base.edges, base.rotation,
            {k: v for k, v in self.reduction_log.items() if k in keep},
        )

    def to_dict(self):
        """Plain data including the reduction log."""
        data = super().to_dict()
        data["reduction_log"] = {str(k): list(v) for k, v in self.reduction_log.items()}
        return data


def _rotation(smoothed, vertices, kept):
    """Kept edge ends around each vertex, in circle order."""
    return {
        v: tuple(
            EdgeEnd(ev.crossing, ev.region, ev.dart)
            for ev in smoothed.attachment_sequences[v]
            if ev.crossing in kept
        )
        for v in vertices
    }


def build_graph(smoothed):
    """State graph G of a smoothing: circles and labelled bands."""
    edges = tuple(
        GraphEdge(b.crossing, b.circles[0], b.circles[1], b.label) for b in smoothed.bands
    )
    vertices = tuple(range(smoothed.circle_count))
    kept = {e.id for e in edges}
    graph = StateGraph(smoothed, vertices, edges, _rotation(smoothed, vertices, kept))
    log.info("state graph: %d vertices, %d edges", len(vertices), len(edges))
    return graph


def reduce(graph):
    """Collapse parallel edges that carry the same label; keep the lowest id."""
    groups = {}
    for e in graph.edges:
        groups.setdefault((e.endpoints, e.label), []).append(e.id)
    reduction_log = {min(ids): tuple(sorted(ids)) for ids in groups.values()}
    # an already-reduced input keeps its accumulated log
    if isinstance(graph, ReducedGraph):
        reduction_log = {
            k: tuple(sorted(x for i in ids for x in graph.reduction_log.get(i, (i,))))
            for k, ids in reduction_log.items()
        }
    keep = set(reduction_log)
    base = StateGraph.subgraph(graph, keep)
    reduced = ReducedGraph(
        graph.smoothed, graph.vertices, base.edges,
        _rotation(graph.smoothed, graph.vertices, keep),
        dict(sorted(reduction_log.items())),
    )
    log.info(
        "reduced graph: %d of %d edges kept", len(reduced.edges), len(graph.edges)
    )
    return reduced


def is_tree(graph):
    """Connected with one edge fewer than vertices; Disconnected otherwise."""
    if not graph.is_connected():
        raise Disconnected(f"state graph has {len(graph.vertices)} vertices in several components")
    return len(graph.edges) == len(graph.vertices) - 1


def mixed_parallel_pairs(graph):
    """Pairs of edges (lower id first) with the same ends and different labels."""
    pairs = []
    edges = sorted(graph.edges, key=lambda e: e.id)
    for i, e in enumerate(edges):
        for f in edges[i + 1:]:
            if e.endpoints == f.endpoints and e.label != f.label:
                pairs.append((e.id, f.id))
    return pairs


def find_cycle(graph):
    """First cycle closed when edges are added in id order: (edges, vertices)."""
    forest = nx.Graph()
    forest.add_nodes_from(graph.vertices)
    for e in sorted(graph.edges, key=lambda e: e.id):
        if e.is_loop:
            return (e.id,), (e.u,)
        if forest.has_node(e.u) and nx.has_path(forest, e.u, e.v):
            path = nx.shortest_path(forest, e.v, e.u)
            cycle_edges = [forest.edges[a, b]["id"] for a, b in zip(path, path[1:])]
            return tuple(cycle_edges + [e.id]), tuple(path)
        forest.add_edge(e.u, e.v, id=e.id)
    return None


def odd_cycle(graph):
    """An odd cycle (edges, vertices), or None when the graph is bipartite.

    A breadth-first layering from the lowest vertex of each component is a
    proper colouring unless some edge joins two vertices of one layer; the
    tree paths from that edge's ends back to their meeting point close it.
    """
    edges = sorted(graph.edges, key=lambda e: e.id)
    for e in edges:
        if e.is_loop:
            return (e.id,), (e.u,)
    simple = graph.simple_graph()
    if nx.is_bipartite(simple):
        return None

    lowest = {}
    for e in edges:
        lowest.setdefault(e.endpoints, e.id)

    for component in sorted(nx.connected_components(simple), key=min):
        root = min(component)
        depth = nx.single_source_shortest_path_length(simple, root)
        clash = next(
            (e for e in edges if e.u in component and depth[e.u] == depth[e.v]), None
        )
        if clash is None:
            continue
        tree = nx.bfs_tree(simple, root)
        up = nx.shortest_path(tree, root, clash.u)
        down = nx.shortest_path(tree, root, clash.v)
        meet = 0
        while meet + 1 < len(up) and up[meet + 1] == down[meet + 1]:
            meet += 1
        vertices = up[meet:][::-1] + down[meet + 1:]
        cycle_edges = [
            lowest[(min(a, b), max(a, b))] for a, b in zip(vertices, vertices[1:])
        ]
        return tuple(cycle_edges + [clash.id]), tuple(vertices)
    return None


# -- Murasugi decomposition at a vertex pair -------------------------------

@dataclass(frozen=True)
class Decomposition:
    pair: tuple[int, int]
    x: int
    x_component: StateGraph
    groups: tuple[tuple[int, ...], ...]
    summands: tuple[StateGraph, ...]

    @property
    def components(self):
        """The edge x on its own, then every summand."""
        return (self.x_component,) + self.summands


class PairDecomposer:
    """
    Splits a state graph at the two ends of an edge x.

    The edges other than x fall into groups that only meet at v or w. Each
    group, glued back to x, is one Murasugi summand; summands are ordered by
    where their edges first appear around v (then w) after x.
    """

    def __init__(self, graph, v, w, x):
        try:
            xe = graph.edge(x)
        except KeyError:
            raise NotAdjacent(f"edge {x} is not in the graph") from None
        if {xe.u, xe.v} != {v, w} or v == w:
            raise NotAdjacent(f"edge {x} joins {xe.u} and {xe.v}, not {v} and {w}")
        self.graph = graph
        self.v = v
        self.w = w
        self.x = x

    def calculate(self):
        """Return the Decomposition; NotDecomposing when nothing splits off."""
        graph, v, w, x = self.graph, self.v, self.w, self.x
        groups = self._groups()

        if not groups:
            raise NotDecomposing(f"removing edge {x} leaves nothing to split off")
        if len(groups) == 1:
            only = groups[0]
            outside = {z for i in only for z in (graph.edge(i).u, graph.edge(i).v)} - {v, w}
            if outside:
                raise NotDecomposing(
                    f"removing edge {x} at ({v}, {w}) leaves a single component"
                )

        groups.sort(key=self._group_order)
        summands = tuple(graph.subgraph((x,) + g) for g in groups)
        log.debug("decomposed at (%d, %d) along edge %d into %d summands", v, w, x, len(summands))
        return Decomposition(
            pair=(v, w),
            x=x,
            x_component=graph.subgraph((x,)),
            groups=tuple(groups),
            summands=summands,
        )

    def _groups(self):
        """Components of the edges other than x, joined through vertices other than v and w."""
        rest = [e for e in self.graph.edges if e.id != self.x]
        touching = nx.Graph()
        touching.add_nodes_from(e.id for e in rest)
        by_vertex = {}
        for e in rest:
            for z in {e.u, e.v} - {self.v, self.w}:
                by_vertex.setdefault(z, []).append(e.id)
        for ids in by_vertex.values():
            touching.add_edges_from((ids[0], i) for i in ids[1:])
        return [tuple(sorted(comp)) for comp in nx.connected_components(touching)]

    def _group_order(self, group):
        """Sort key: first position around v, then w, after the edge x."""
        members = set(group)
        for rank, vertex in enumerate((self.v, self.w)):
            ends = self.graph.rotation.get(vertex, ())
            start = next((i for i, end in enumerate(ends) if end.edge == self.x), 0)
            offsets = [
                (i - start) % len(ends) for i, end in enumerate(ends) if end.edge in members
            ]
            if offsets:
                return (rank, min(offsets), min(group))
        return (2, 0, min(group))


def decompose_at_pair(graph, v, w, x):
    """Split off the pieces H_i hanging between v and w, each glued back to x."""
    return PairDecomposer(graph, v, w, x).calculate()


# -- faces of the circles-plus-bands plane map -----------------------------

@dataclass(frozen=True)
class BandStep:
    """Crossing band ``edge`` at merged corner ``dart`` from circle ``tail`` to ``head``."""
    edge: int
    tail: int
    head: int
    dart: int


@dataclass(frozen=True)
class FaceWalk:
    id: int                     # lowest dart on the walk
    darts: tuple[int, ...]
    steps: tuple[BandStep, ...]
    region: int
    is_outer: bool

    @property
    def is_simple_cycle(self):
        """At least two band steps, no band or circle repeated."""
        k = len(self.steps)
        return (
            k >= 2
            and len({s.edge for s in self.steps}) == k
            and len({s.tail for s in self.steps}) == k
        )


@dataclass(frozen=True)
class EmbeddedFaces:
    walks: tuple[FaceWalk, ...]
    walk_of: tuple[int, ...]    # dart -> index into walks

    def across(self, step):
        """The walk on the other side of the band crossed by ``step``."""
        c, m = divmod(step.dart, 4)
        # merged corners sit opposite each other
        return self.walks[self.walk_of[4 * c + (m + 2) % 4]]

    @property
    def outer(self):
        """The unbounded walk."""
        return next(w for w in self.walks if w.is_outer)


class FaceTracer:
    """
    Traces the faces of the plane map of all circles and a chosen set of bands.

    Walks keep the face on their right, so bounded faces run clockwise. A
    band left out of the set is stepped over at its crossing.
    """

    def __init__(self, smoothed, edge_ids):
        self.smoothed = smoothed
        self.diagram = smoothed.diagram
        self.state = smoothed.state
        self.kept = set(edge_ids)

    def calculate(self):
        """Return the EmbeddedFaces with the unbounded walk marked."""
        diagram = self.diagram
        walk_of = [-1] * diagram.dart_count
        traced = []
        for start in range(diagram.dart_count):
            if walk_of[start] >= 0:
                continue
            darts = []
            steps = []
            d = start
            while walk_of[d] < 0:
                walk_of[d] = len(traced)
                darts.append(d)
                step = self._step(d)
                if step is not None:
                    steps.append(step)
                d = diagram.alpha(self._turn(d))
            traced.append((start, darts, steps))

        outer = self._outer_walk(traced, walk_of)
        walks = tuple(
            FaceWalk(
                id=start,
                darts=tuple(darts),
                steps=tuple(steps),
                region=self.smoothed.region_of_face[diagram.face_of[start]],
                is_outer=i == outer,
            )
            for i, (start, darts, steps) in enumerate(traced)
        )
        return EmbeddedFaces(walks, tuple(walk_of))

    def _turn(self, d):
        """Next dart around the face: across a dropped band, or on to the next slot."""
        c, s = divmod(d, 4)
        m1, m2 = merged_corners(self.state[c])
        if c not in self.kept and s in (m1, m2):
            other = m2 if s == m1 else m1
            return 4 * c + (other + 1) % 4
        return self.diagram.rotate(d)

    def _step(self, d):
        """The band step at dart ``d``, if a kept band is crossed there."""
        c, s = divmod(d, 4)
        if c not in self.kept or s not in merged_corners(self.state[c]):
            return None
        return BandStep(
            edge=c,
            tail=self.smoothed.circle_of[d],
            head=self.smoothed.circle_of[self.diagram.rotate(d)],
            dart=d,
        )

    def _outer_walk(self, traced, walk_of):
        """Index of the unbounded walk."""
        outer_dart = self.diagram.rotate_back(self.diagram.heads[self.diagram.edge_count - 1])
        outer = walk_of[outer_dart]
        if traced[outer][2]:
            return outer
        # the unbounded face meets no band: push infinity across the outermost
        # circle into the first face that crosses a band at that circle
        circle = self.smoothed.circle_of[outer_dart]
        return next(
            (i for i, (_, _, steps) in enumerate(traced)
             if any(circle in (s.tail, s.head) for s in steps)),
            outer,
        )


def edge_faces(smoothed, edge_ids):
    """Faces of the plane map of all circles and the bands in ``edge_ids``."""
    return FaceTracer(smoothed, edge_ids).calculate()


@dataclass(frozen=True)
class InnerCycle:
    id: int
    edges: tuple[int, ...]
    vertices: tuple[int, ...]
    region: int
    label_sequence: tuple[str, ...]
    walk: FaceWalk = field(compare=False, repr=False)

    @property
    def length(self):
        """Number of edges on the cycle."""
        return len(self.edges)

    @property
    def is_alternating(self):
        """Even length with labels alternating around the cycle."""
        seq = self.label_sequence
        return len(seq) % 2 == 0 and all(
            seq[i] != seq[(i + 1) % len(seq)] for i in range(len(seq))
        )

    def to_dict(self):
        """Plain data for the JSON report."""
        return {
            "id": self.id,
            "edges": list(self.edges),
            "vertices": list(self.vertices),
            "region": self.region,
            "labels": "".join(self.label_sequence),
        }


def inner_cycles(graph, include_outer=False):
    """Faces of the embedded graph whose band walk is a simple cycle.

    The unbounded face is left out unless ``include_outer`` is set; on the
    sphere every face is bounded, so the flag gives a labelling-free answer.
    """
    faces = edge_faces(graph.smoothed, graph.edge_ids)
    labels = {e.id: e.label for e in graph.edges}
    cycles = []
    for walk in faces.walks:
        if not walk.is_simple_cycle or (walk.is_outer and not include_outer):
            continue
        cycles.append(InnerCycle(
            id=walk.id,
            edges=tuple(s.edge for s in walk.steps),
            vertices=tuple(s.tail for s in walk.steps),
            region=walk.region,
            label_sequence=tuple(labels[s.edge] for s in walk.steps),
            walk=walk,
        ))
    return cycles


def find_alternating_inner_cycle(graph, include_outer=False):
    """First inner cycle whose labels alternate, or None."""
    for cycle in inner_cycles(graph, include_outer=include_outer):
        if cycle.is_alternating:
            return cycle
    return None


# -- blocks ----------------------------------------------------------------

def block_summands(graph):
    """2-connected blocks as subgraphs; parallels stay together, loops are their own block."""
    simple = graph.simple_graph()
    pair_block = {}
    for i, block in enumerate(nx.biconnected_component_edges(simple)):
        for a, b in block:
            pair_block[(min(a, b), max(a, b))] = i

    members = {}
    for e in graph.edges:
        key = ("loop", e.id) if e.is_loop else ("block", pair_block[e.endpoints])
        members.setdefault(key, []).append(e.id)
    ordered = sorted(members.values(), key=min)
    return [graph.subgraph(ids) for ids in ordered]


def cut_vertices(graph):
    """Articulation points of the underlying simple graph."""
    return sorted(nx.articulation_points(graph.simple_graph()))
