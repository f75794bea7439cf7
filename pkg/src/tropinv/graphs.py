"""Polarized metric graphs with exact rational edge lengths.

A graph is a connected multigraph (loops and parallel edges allowed) whose
edges carry positive rational lengths and whose vertices carry a non-negative
integer polarization q.  The genus is h = b1 + sum(q), with b1 = |E| - |V| + 1.
Graphs are immutable; refinements (valence-2 point insertions) build new
graphs and leave every metric quantity unchanged.

Points of the underlying metric space are addressed either as a vertex or as
an interior position on an edge, measured from the edge's first stored
endpoint.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import json

from .errors import (
    DisconnectedGraph,
    GenusZero,
    NonPositiveLength,
    OffsetOutOfRange,
    ParseError,
    UnknownPoint,
)
from .rational import as_fraction, format_rational


@dataclass(frozen=True)
class Vertex:
    id: str
    q: int


@dataclass(frozen=True)
class Edge:
    id: str
    ends: tuple  # (vertex id, vertex id); equal ids for a loop
    length: Fraction

    @property
    def is_loop(self):
        return self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class PolarizedMetricGraph:
    """Immutable polarized metric multigraph in canonical form.

    Vertex and edge tuples are sorted by id; edge endpoint order is kept as
    given (it fixes the orientation interior offsets are measured against).
    """

    vertices: tuple
    edges: tuple

    def __hash__(self):
        # graphs key many memo tables; hash once, not per lookup
        cached = self.__dict__.get("_hash")
        if cached is None:
            cached = hash((self.vertices, self.edges))
            object.__setattr__(self, "_hash", cached)
        return cached

    @classmethod
    def build(cls, vertices, edges):
        """Construct from iterables of (id, q) and (id, (end, end), length).

        Enforces local well-formedness: at least one vertex, unique ids,
        known endpoints, integer q >= 0, positive lengths.  Connectivity is
        *not* enforced here; operations that need it raise DisconnectedGraph.
        """
        vs = []
        seen = set()
        for vid, q in vertices:
            if not isinstance(vid, str) or not vid:
                raise ParseError(f"vertex id must be a non-empty string, got {vid!r}")
            if vid in seen:
                raise ParseError(f"duplicate vertex id {vid!r}")
            seen.add(vid)
            if isinstance(q, bool) or not isinstance(q, int) or q < 0:
                raise ParseError(f"polarization of vertex {vid!r} must be a non-negative integer, got {q!r}")
            vs.append(Vertex(vid, q))
        if not vs:
            raise ParseError("a graph needs at least one vertex")
        es = []
        eseen = set()
        for eid, ends, length in edges:
            if not isinstance(eid, str) or not eid:
                raise ParseError(f"edge id must be a non-empty string, got {eid!r}")
            if eid in eseen:
                raise ParseError(f"duplicate edge id {eid!r}")
            eseen.add(eid)
            a, b = ends
            if a not in seen or b not in seen:
                raise ParseError(f"edge {eid!r} references unknown vertex {a if a not in seen else b!r}")
            frac = as_fraction(length)
            if frac <= 0:
                raise NonPositiveLength(f"edge {eid!r} has non-positive length {format_rational(frac)}")
            es.append(Edge(eid, (a, b), frac))
        vs.sort(key=lambda v: v.id)
        es.sort(key=lambda e: e.id)
        return cls(tuple(vs), tuple(es))

    def vertex(self, vid):
        v = _vertex_map(self).get(vid)
        if v is None:
            raise UnknownPoint(f"unknown vertex {vid!r}")
        return v

    def edge(self, eid):
        e = _edge_map(self).get(eid)
        if e is None:
            raise UnknownPoint(f"unknown edge {eid!r}")
        return e

    def vertex_ids(self):
        return tuple(v.id for v in self.vertices)

    def edge_ids(self):
        return tuple(e.id for e in self.edges)

    def q(self, vid):
        return self.vertex(vid).q

    def valence(self, vid):
        return _valences(self).get(vid, 0)


@dataclass(frozen=True)
class VertexPoint:
    vertex: str


@dataclass(frozen=True)
class EdgePoint:
    """Interior point of an edge; offset measured from the first stored end."""

    edge: str
    offset: Fraction


def at_vertex(vid):
    return VertexPoint(vid)


def on_edge(eid, offset):
    return EdgePoint(eid, as_fraction(offset))


class Divisor:
    """Rational coefficients on vertices; missing vertices read as zero."""

    def __init__(self, coefficients):
        self._coeffs = {vid: Fraction(c) for vid, c in coefficients.items() if c != 0}

    def __getitem__(self, vid):
        return self._coeffs.get(vid, Fraction(0))

    def items(self):
        return sorted(self._coeffs.items())

    @property
    def degree(self):
        return sum(self._coeffs.values(), Fraction(0))

    def __eq__(self, other):
        return isinstance(other, Divisor) and self._coeffs == other._coeffs

    def __repr__(self):
        inside = ", ".join(f"{v}: {format_rational(c)}" for v, c in self.items())
        return f"Divisor({{{inside}}})"


@dataclass(frozen=True)
class ValidationReport:
    connected: bool
    positive_lengths: bool
    b1: int
    h: int
    stable: bool
    issues: tuple

    @property
    def structurally_valid(self):
        return self.connected and self.positive_lengths


@lru_cache(maxsize=None)
def _vertex_map(g):
    return {v.id: v for v in g.vertices}


@lru_cache(maxsize=None)
def _edge_map(g):
    return {e.id: e for e in g.edges}


@lru_cache(maxsize=None)
def _valences(g):
    out = {v.id: 0 for v in g.vertices}
    for e in g.edges:
        out[e.ends[0]] += 1
        out[e.ends[1]] += 1
    return out


@lru_cache(maxsize=None)
def _components(g):
    """Connected components as a frozenset of frozensets of vertex ids."""
    adjacency = {v.id: set() for v in g.vertices}
    for e in g.edges:
        adjacency[e.ends[0]].add(e.ends[1])
        adjacency[e.ends[1]].add(e.ends[0])
    remaining = set(adjacency)
    comps = []
    while remaining:
        start = min(remaining)
        stack = [start]
        comp = {start}
        while stack:
            u = stack.pop()
            for w in adjacency[u]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
        remaining -= comp
    return frozenset(comps)


def is_connected(g):
    return len(_components(g)) == 1


def require_connected(g):
    comps = _components(g)
    if len(comps) > 1:
        sample = sorted(min(c) for c in comps)
        raise DisconnectedGraph(
            f"graph has {len(comps)} components (e.g. vertices {sample[0]!r} and {sample[1]!r} are separated)"
        )


def genus(g):
    """(b1, h) of a connected graph: b1 = |E|-|V|+1, h = b1 + sum of q."""
    require_connected(g)
    b1 = len(g.edges) - len(g.vertices) + 1
    h = b1 + sum(v.q for v in g.vertices)
    return b1, h


def require_positive_genus(g):
    _, h = genus(g)
    if h < 1:
        raise GenusZero(f"graph has genus {h}; this operation needs h >= 1")
    return h


def total_length(g):
    """Total length: the sum of all edge lengths."""
    return sum((e.length for e in g.edges), Fraction(0))


def canonical_divisor(g):
    """valence(x) - 2 at each vertex; a loop contributes 2 to the valence."""
    require_connected(g)
    return Divisor({v.id: Fraction(g.valence(v.id) - 2) for v in g.vertices})


def polarized_divisor(g):
    """The canonical divisor shifted by twice the polarization."""
    require_connected(g)
    return Divisor({v.id: Fraction(g.valence(v.id) - 2 + 2 * v.q) for v in g.vertices})


def is_stable(g):
    """Every vertex with q = 0 has at least three emanating half-edges."""
    return all(v.q > 0 or g.valence(v.id) >= 3 for v in g.vertices)


def validate(g):
    """Structural report: connectivity, lengths, genus, stability.

    Never raises; positive lengths are already guaranteed by construction,
    the flag is kept so reports are self-describing.
    """
    issues = []
    connected = is_connected(g)
    if not connected:
        comps = sorted(min(c) for c in _components(g))
        issues.append(f"disconnected: vertices {comps[0]!r} and {comps[1]!r} lie in different components")
    b1 = len(g.edges) - len(g.vertices) + len(_components(g))
    h = b1 + sum(v.q for v in g.vertices)
    if h < 1:
        issues.append("genus is 0: measure and invariant operations are undefined")
    stable = is_stable(g)
    if not stable:
        bad = sorted(v.id for v in g.vertices if v.q == 0 and g.valence(v.id) < 3)
        issues.append(f"unstable: q=0 vertex {bad[0]!r} has fewer than 3 half-edges")
    return ValidationReport(
        connected=connected,
        positive_lengths=True,
        b1=b1,
        h=h,
        stable=stable,
        issues=tuple(issues),
    )


def _fresh_id(base, taken):
    candidate = base
    while candidate in taken:
        candidate += "'"
    return candidate


def check_point(g, point):
    """Validate a point against the graph; returns the point unchanged."""
    if isinstance(point, VertexPoint):
        g.vertex(point.vertex)
        return point
    if isinstance(point, EdgePoint):
        e = g.edge(point.edge)
        off = as_fraction(point.offset)
        if not (0 < off < e.length):
            raise OffsetOutOfRange(
                f"offset {format_rational(off)} not strictly inside edge {e.id!r} of length {format_rational(e.length)}"
            )
        return EdgePoint(point.edge, off)
    raise UnknownPoint(f"not a graph point: {point!r}")


def _split_edge(g, eid, offset):
    """Split an edge at an interior offset.

    Returns (new graph, new vertex id, left edge id, right edge id); the left
    edge carries [0, offset] of the old edge, preserving orientation.
    """
    e = g.edge(eid)
    off = as_fraction(offset)
    if not (0 < off < e.length):
        raise OffsetOutOfRange(
            f"offset {format_rational(off)} not strictly inside edge {eid!r} of length {format_rational(e.length)}"
        )
    vids = set(v.id for v in g.vertices)
    eids = set(x.id for x in g.edges)
    new_vid = _fresh_id(f"{eid}@{format_rational(off)}", vids)
    left_id = _fresh_id(f"{eid}:0", eids)
    right_id = _fresh_id(f"{eid}:1", eids | {left_id})
    vertices = [(v.id, v.q) for v in g.vertices] + [(new_vid, 0)]
    edges = [(x.id, x.ends, x.length) for x in g.edges if x.id != eid]
    edges.append((left_id, (e.ends[0], new_vid), off))
    edges.append((right_id, (new_vid, e.ends[1]), e.length - off))
    return PolarizedMetricGraph.build(vertices, edges), new_vid, left_id, right_id


def insert_point(g, point):
    """Insert an interior point as a new valence-2 vertex with q = 0.

    Returns (refined graph, vertex id).  Vertex points are a no-op and return
    the existing id, so callers can refine unconditionally.
    """
    point = check_point(g, point)
    if isinstance(point, VertexPoint):
        return g, point.vertex
    g2, vid, _, _ = _split_edge(g, point.edge, point.offset)
    return g2, vid


def remap_point_after_split(point, eid, offset, new_vid, left_id, right_id):
    """Where a point of the old graph lives after one edge split."""
    if isinstance(point, VertexPoint) or point.edge != eid:
        return point
    if point.offset < offset:
        return EdgePoint(left_id, point.offset)
    if point.offset > offset:
        return EdgePoint(right_id, point.offset - offset)
    return VertexPoint(new_vid)


def with_points(g, points):
    """Insert several points at once; returns (graph, tuple of vertex ids).

    Coinciding points share one vertex; points on the same edge are handled
    by remapping pending offsets after each split.
    """
    current = [check_point(g, p) for p in points]
    graph = g
    for i in range(len(current)):
        p = current[i]
        if isinstance(p, VertexPoint):
            continue
        graph, new_vid, left_id, right_id = _split_edge(graph, p.edge, p.offset)
        for j in range(len(current)):
            current[j] = remap_point_after_split(current[j], p.edge, p.offset, new_vid, left_id, right_id)
    return graph, tuple(p.vertex for p in current)


def with_lengths(g, lengths):
    """Same topology with new edge lengths; `lengths` maps edge id -> length."""
    edges = []
    for e in g.edges:
        new_len = as_fraction(lengths.get(e.id, e.length))
        edges.append((e.id, e.ends, new_len))
    return PolarizedMetricGraph.build([(v.id, v.q) for v in g.vertices], edges)


def scaled(g, factor):
    """All edge lengths multiplied by a positive rational factor."""
    f = as_fraction(factor)
    if f <= 0:
        raise NonPositiveLength(f"scale factor must be positive, got {format_rational(f)}")
    return with_lengths(g, {e.id: e.length * f for e in g.edges})


# ---------------------------------------------------------------------------
# JSON wire format
# ---------------------------------------------------------------------------

def graph_to_json(g):
    return {
        "vertices": [{"id": v.id, "q": v.q} for v in g.vertices],
        "edges": [
            {"id": e.id, "ends": [e.ends[0], e.ends[1]], "length": format_rational(e.length)}
            for e in g.edges
        ],
    }


def graph_from_json(obj):
    if not isinstance(obj, dict):
        raise ParseError("graph JSON must be an object")
    for key in ("vertices", "edges"):
        if key not in obj or not isinstance(obj[key], list):
            raise ParseError(f"graph JSON needs a {key!r} list")
    vertices = []
    for item in obj["vertices"]:
        if not isinstance(item, dict) or "id" not in item or "q" not in item:
            raise ParseError(f"vertex entry must have 'id' and 'q': {item!r}")
        vertices.append((item["id"], item["q"]))
    edges = []
    for item in obj["edges"]:
        if not isinstance(item, dict) or not {"id", "ends", "length"} <= set(item):
            raise ParseError(f"edge entry must have 'id', 'ends' and 'length': {item!r}")
        ends = item["ends"]
        if not isinstance(ends, list) or len(ends) != 2:
            raise ParseError(f"edge {item.get('id')!r}: 'ends' must list two vertex ids")
        edges.append((item["id"], (ends[0], ends[1]), as_fraction(item["length"])))
    return PolarizedMetricGraph.build(vertices, edges)


def dumps(g, indent=None):
    return json.dumps(graph_to_json(g), sort_keys=True, indent=indent)


def loads(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return graph_from_json(obj)
