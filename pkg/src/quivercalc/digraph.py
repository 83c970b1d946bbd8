"""Finite directed graphs (quivers) with named vertices and edges.

Vertices and edges are opaque strings.  Degenerate loops are never stored:
every vertex implicitly carries one, and graph morphisms are allowed to
collapse a real edge onto the degenerate loop at a vertex.  All enumeration
follows declaration order, so results are reproducible.
"""
from __future__ import annotations

from typing import Iterable, NamedTuple


class UnknownVertex(ValueError):
    pass


class UnknownEdge(ValueError):
    pass


class NotACover(ValueError):
    """The two pieces of a would-be closed cover do not exhaust the graph."""


class Edge(NamedTuple):
    eid: str
    src: str
    tgt: str


class Valence(NamedTuple):
    incoming: int
    outgoing: int


class Digraph:
    """A finite directed graph.  Immutable once built."""

    def __init__(self, vertices: Iterable[str], edges: Iterable):
        self.vertices = tuple(vertices)
        es = []
        for e in edges:
            if isinstance(e, Edge):
                es.append(e)
            else:
                eid, src, tgt = e
                es.append(Edge(eid, src, tgt))
        self.edges = tuple(es)

        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        if len(set(e.eid for e in self.edges)) != len(self.edges):
            raise ValueError("duplicate edge names")
        self._vset = set(self.vertices)
        for e in self.edges:
            if e.src not in self._vset:
                raise UnknownVertex(f"edge {e.eid!r} has undeclared source {e.src!r}")
            if e.tgt not in self._vset:
                raise UnknownVertex(f"edge {e.eid!r} has undeclared target {e.tgt!r}")

        self._by_id = {e.eid: e for e in self.edges}
        self._vindex = {v: i for i, v in enumerate(self.vertices)}
        self._eindex = {e.eid: i for i, e in enumerate(self.edges)}
        self._out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        self._in: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            self._out[e.src].append(e)
            self._in[e.tgt].append(e)

    def edge(self, eid: str) -> Edge:
        if eid not in self._by_id:
            raise UnknownEdge(eid)
        return self._by_id[eid]

    def has_vertex(self, v: str) -> bool:
        return v in self._vset

    def has_edge(self, eid: str) -> bool:
        return eid in self._by_id

    def out_edges(self, v: str) -> list[Edge]:
        if v not in self._vset:
            raise UnknownVertex(v)
        return list(self._out[v])

    def in_edges(self, v: str) -> list[Edge]:
        if v not in self._vset:
            raise UnknownVertex(v)
        return list(self._in[v])

    def valence(self, v: str) -> Valence:
        return Valence(len(self.in_edges(v)), len(self.out_edges(v)))

    def vertex_index(self, v: str) -> int:
        if v not in self._vindex:
            raise UnknownVertex(v)
        return self._vindex[v]

    def edge_index(self, eid: str) -> int:
        if eid not in self._eindex:
            raise UnknownEdge(eid)
        return self._eindex[eid]

    def subgraph(self, vertices: Iterable[str], edge_ids: Iterable[str]) -> "Digraph":
        vs = [v for v in self.vertices if v in set(vertices)]
        eids = set(edge_ids)
        for x in set(vertices):
            if x not in self._vset:
                raise UnknownVertex(x)
        es = []
        for e in self.edges:
            if e.eid in eids:
                if e.src not in set(vs) or e.tgt not in set(vs):
                    raise ValueError(
                        f"edge {e.eid!r} of the subgraph has an endpoint "
                        "outside the chosen vertex set"
                    )
                es.append(e)
        missing = eids - set(e.eid for e in es)
        if missing:
            raise UnknownEdge(sorted(missing)[0])
        return Digraph(vs, es)

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"Digraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    # serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e.eid, "src": e.src, "tgt": e.tgt} for e in self.edges],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Digraph":
        if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
            raise ValueError("digraph JSON needs 'vertices' and 'edges'")
        edges = [(e["id"], e["src"], e["tgt"]) for e in data["edges"]]
        return cls(data["vertices"], edges)

    def to_dot(self, name: str = "G") -> str:
        lines = [f"digraph {name} {{"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for e in self.edges:
            lines.append(f'  "{e.src}" -> "{e.tgt}" [label="{e.eid}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def standard_digraph(kind: str, size: int | None = None) -> Digraph:
    """The standard shapes: linear(p), cyclic(n), bouquet(k), point, interval.

    linear(p) is a directed chain with p edges (p = 0 gives a point);
    cyclic(n) is a directed n-cycle (n >= 1, so cyclic(1) is one loop);
    bouquet(k) is one vertex with k loops; interval = linear(1).
    """
    if kind == "point":
        return Digraph(["0"], [])
    if kind == "interval":
        return standard_digraph("linear", 1)
    if size is None:
        raise ValueError(f"standard digraph {kind!r} needs a size")
    if kind == "linear":
        if size < 0:
            raise ValueError("linear(p) needs p >= 0")
        vs = [str(i) for i in range(size + 1)]
        es = [(f"e{i}", str(i), str(i + 1)) for i in range(size)]
        return Digraph(vs, es)
    if kind == "cyclic":
        if size < 1:
            raise ValueError("cyclic(n) needs n >= 1; there is no empty cycle")
        vs = [str(i) for i in range(size)]
        es = [(f"e{i}", str(i), str((i + 1) % size)) for i in range(size)]
        return Digraph(vs, es)
    if kind == "bouquet":
        if size < 0:
            raise ValueError("bouquet(k) needs k >= 0")
        return Digraph(["0"], [(f"e{i}", "0", "0") for i in range(size)])
    raise ValueError(f"unknown standard digraph kind {kind!r}")


def disjoint_union(graphs: list[Digraph], prefixes: list[str] | None = None) -> Digraph:
    """Disjoint union; name clashes are resolved by the given prefixes."""
    if prefixes is None:
        all_vs = [v for g in graphs for v in g.vertices]
        all_es = [e.eid for g in graphs for e in g.edges]
        if len(set(all_vs)) == len(all_vs) and len(set(all_es)) == len(all_es):
            prefixes = ["" for _ in graphs]
        else:
            prefixes = [f"{i}." for i in range(len(graphs))]
    assert len(prefixes) == len(graphs)
    vs, es = [], []
    for g, p in zip(graphs, prefixes):
        vs.extend(p + v for v in g.vertices)
        es.extend((p + e.eid, p + e.src, p + e.tgt) for e in g.edges)
    return Digraph(vs, es)


# --- structure of a digraph ---------------------------------------------


class DigraphShape(NamedTuple):
    connected: bool
    cyclically_directed: bool
    linearly_directed: bool
    valences: dict


def weak_components(d: Digraph) -> list[list[str]]:
    """Connected components of the underlying undirected graph,
    each listed in vertex declaration order."""
    adj: dict[str, set[str]] = {v: set() for v in d.vertices}
    for e in d.edges:
        adj[e.src].add(e.tgt)
        adj[e.tgt].add(e.src)
    seen: set[str] = set()
    comps = []
    for v in d.vertices:
        if v in seen:
            continue
        stack, comp = [v], set()
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack.extend(adj[x] - comp)
        seen |= comp
        comps.append([u for u in d.vertices if u in comp])
    return comps


def has_directed_cycle(d: Digraph) -> bool:
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {v: WHITE for v in d.vertices}
    for root in d.vertices:
        if color[root] != WHITE:
            continue
        stack = [(root, iter(d.out_edges(root)))]
        color[root] = GRAY
        while stack:
            v, it = stack[-1]
            adv = False
            for e in it:
                w = e.tgt
                if color[w] == GRAY:
                    return True
                if color[w] == WHITE:
                    color[w] = GRAY
                    stack.append((w, iter(d.out_edges(w))))
                    adv = True
                    break
            if not adv:
                color[v] = BLACK
                stack.pop()
    return False


def classify_digraph(d: Digraph) -> DigraphShape:
    """Connectivity and the two distinguished shapes.

    A graph is cyclically directed when it is connected and every vertex has
    exactly one incoming and one outgoing edge (it is then a directed cycle);
    linearly directed when it is connected, acyclic, and every vertex has at
    most one incoming and one outgoing edge (a directed chain).
    """
    valences = {v: d.valence(v) for v in d.vertices}
    connected = len(weak_components(d)) == 1
    cyclic = connected and all(val == (1, 1) for val in valences.values())
    linear = (
        connected
        and all(val.incoming <= 1 and val.outgoing <= 1 for val in valences.values())
        and not has_directed_cycle(d)
    )
    return DigraphShape(connected, cyclic, linear, valences)


# --- strict graph morphisms ----------------------------------------------


class DigraphMor:
    """A map of digraphs: vertices to vertices, each edge to an edge or to
    the (implicit) degenerate loop at a vertex.

    ``edge_map[e] = eid`` sends e to a real edge; ``edge_map[e] = None``
    collapses e onto the degenerate loop at the image of its source.
    """

    def __init__(self, source: Digraph, target: Digraph,
                 vertex_map: dict, edge_map: dict):
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)
        self.edge_map = dict(edge_map)

        for v in source.vertices:
            if v not in self.vertex_map:
                raise UnknownVertex(f"vertex {v!r} has no image")
            if not target.has_vertex(self.vertex_map[v]):
                raise UnknownVertex(self.vertex_map[v])
        for e in source.edges:
            if e.eid not in self.edge_map:
                raise UnknownEdge(f"edge {e.eid!r} has no image")
            im = self.edge_map[e.eid]
            a, b = self.vertex_map[e.src], self.vertex_map[e.tgt]
            if im is None:
                if a != b:
                    raise ValueError(
                        f"edge {e.eid!r} cannot collapse: its endpoints map "
                        f"to distinct vertices {a!r}, {b!r}"
                    )
            else:
                f = target.edge(im)
                if (f.src, f.tgt) != (a, b):
                    raise ValueError(
                        f"edge {e.eid!r} maps to {im!r} but endpoints disagree"
                    )

    @classmethod
    def identity(cls, d: Digraph) -> "DigraphMor":
        return cls(d, d, {v: v for v in d.vertices},
                   {e.eid: e.eid for e in d.edges})

    def __eq__(self, other):
        if not isinstance(other, DigraphMor):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.vertex_map == other.vertex_map
                and self.edge_map == other.edge_map)

    def __hash__(self):
        return hash((self.source, self.target,
                     tuple(sorted(self.vertex_map.items())),
                     tuple(sorted((k, v if v is not None else "")
                                  for k, v in self.edge_map.items()))))

    def __repr__(self):
        return f"DigraphMor({self.vertex_map}, {self.edge_map})"


def compose_digraph_mor(g: DigraphMor, f: DigraphMor) -> DigraphMor:
    if f.target != g.source:
        raise ValueError("digraph morphisms not composable")
    vmap = {v: g.vertex_map[f.vertex_map[v]] for v in f.source.vertices}
    emap = {}
    for e in f.source.edges:
        mid = f.edge_map[e.eid]
        emap[e.eid] = None if mid is None else g.edge_map[mid]
    return DigraphMor(f.source, g.target, vmap, emap)


# --- closed covers --------------------------------------------------------


class ClosedCover:
    """Two subgraphs covering the whole graph, with their intersection."""

    def __init__(self, ambient: Digraph, left: Digraph, right: Digraph):
        self.ambient = ambient
        self.left = left
        self.right = right
        vs = [v for v in ambient.vertices
              if left.has_vertex(v) and right.has_vertex(v)]
        es = [e.eid for e in ambient.edges
              if left.has_edge(e.eid) and right.has_edge(e.eid)]
        self.intersection = ambient.subgraph(vs, es)


def make_closed_cover(d: Digraph, left, right) -> ClosedCover:
    """Build a closed cover from two (vertices, edge_ids) pairs.

    Raises NotACover if the union misses a vertex or an edge, and the usual
    subgraph errors if a piece is not actually a subgraph.
    """
    lv, le = left
    rv, re_ = right
    lg = d.subgraph(lv, le)
    rg = d.subgraph(rv, re_)
    missing_v = [v for v in d.vertices
                 if not (lg.has_vertex(v) or rg.has_vertex(v))]
    missing_e = [e.eid for e in d.edges
                 if not (lg.has_edge(e.eid) or rg.has_edge(e.eid))]
    if missing_v or missing_e:
        raise NotACover(f"uncovered vertices {missing_v}, edges {missing_e}")
    return ClosedCover(d, lg, rg)


# --- the exit-path category ----------------------------------------------


def exit_path(d: Digraph):
    """The exit-path category of a digraph.

    Objects: one per vertex ("v:x") and one per edge ("e:f").  Besides
    identities there is one morphism v:x -> e:f for every way x occurs as an
    endpoint of f (a self-loop contributes two).  No two non-identity
    morphisms are composable, so the composition table holds only identity
    laws.  The category is a poset exactly when the graph has no self-loops.
    """
    from .fincat import FinCat

    objects = [f"v:{v}" for v in d.vertices] + [f"e:{e.eid}" for e in d.edges]
    ids = {ob: f"id:{ob}" for ob in objects}
    morphisms = [(ids[ob], ob, ob) for ob in objects]
    for e in d.edges:
        morphisms.append((f"src:{e.eid}", f"v:{e.src}", f"e:{e.eid}"))
        morphisms.append((f"tgt:{e.eid}", f"v:{e.tgt}", f"e:{e.eid}"))
    compose = {}
    for mid, src, tgt in morphisms:
        compose[(ids[tgt], mid)] = mid
        compose[(mid, ids[src])] = mid
    return FinCat(objects, morphisms, ids, compose)
