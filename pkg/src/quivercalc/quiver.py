"""Paths, free categories, and quiver morphisms.

The free category on a digraph has the vertices as objects and directed edge
paths as morphisms (the empty path at a vertex is its identity).  A quiver
morphism sends vertices to vertices and each edge to a PATH in the target --
possibly empty, which collapses the edge.  These are more flexible than
strict graph maps and compose by path substitution.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .digraph import (Digraph, DigraphMor, UnknownVertex, has_directed_cycle,
                      standard_digraph, weak_components)


class Path:
    """A head-to-tail chain of edges in a fixed digraph.

    The edges are listed in traversal order: the path (e1, e2) means e1
    followed by e2, so its composite in the free category is e2∘e1.
    """

    def __init__(self, graph: Digraph, start: str, edges: Iterable[str]):
        self.graph = graph
        self.start = start
        self.edges = tuple(edges)
        if not graph.has_vertex(start):
            raise UnknownVertex(start)
        at = start
        for eid in self.edges:
            e = graph.edge(eid)
            if e.src != at:
                raise ValueError(f"edge {eid!r} starts at {e.src!r}, not {at!r}")
            at = e.tgt
        self.end = at

    @classmethod
    def empty(cls, graph: Digraph, v: str) -> "Path":
        return cls(graph, v, ())

    @classmethod
    def of_edge(cls, graph: Digraph, eid: str) -> "Path":
        return cls(graph, graph.edge(eid).src, (eid,))

    @property
    def length(self) -> int:
        return len(self.edges)

    def then(self, other: "Path") -> "Path":
        if self.graph != other.graph or self.end != other.start:
            raise ValueError("paths do not chain")
        return Path(self.graph, self.start, self.edges + other.edges)

    def vertices(self) -> list[str]:
        """All visited vertices in order, endpoints included."""
        out = [self.start]
        for eid in self.edges:
            out.append(self.graph.edge(eid).tgt)
        return out

    def key(self) -> tuple:
        return (self.length, tuple(self.graph.edge_index(e) for e in self.edges))

    def __eq__(self, other):
        if not isinstance(other, Path):
            return NotImplemented
        return (self.graph == other.graph and self.start == other.start
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.start, self.edges))

    def __repr__(self):
        if not self.edges:
            return f"Path(∅ at {self.start})"
        return f"Path({'·'.join(self.edges)})"


def enumerate_paths(graph: Digraph, src: str, tgt: str, max_len: int) -> list[Path]:
    """All paths src -> tgt of length <= max_len, sorted by length then by
    edge indices lexicographically."""
    graph.vertex_index(src), graph.vertex_index(tgt)
    found: list[Path] = []
    walk: list[str] = []

    def dfs(at: str):
        if at == tgt:
            found.append(Path(graph, src, tuple(walk)))
        if len(walk) == max_len:
            return
        for e in graph.out_edges(at):
            walk.append(e.eid)
            dfs(e.tgt)
            walk.pop()

    dfs(src)
    found.sort(key=Path.key)
    return found


def hom_is_finite(graph: Digraph, src: str, tgt: str) -> tuple[bool, int | None]:
    """Whether the free category has finitely many morphisms src -> tgt,
    and the exact count when it does.

    The hom-set is infinite exactly when some directed cycle lies on a route
    from src to tgt.  Otherwise the relevant subgraph is acyclic and the
    paths are counted by a descending recursion.
    """
    graph.vertex_index(src), graph.vertex_index(tgt)
    reach_fwd = _reachable(graph, src, forward=True)
    reach_bwd = _reachable(graph, tgt, forward=False)
    mid = reach_fwd & reach_bwd
    if not mid:
        return (True, 0)
    mid_edges = [e.eid for e in graph.edges if e.src in mid and e.tgt in mid]
    sub = graph.subgraph([v for v in graph.vertices if v in mid], mid_edges)
    if has_directed_cycle(sub):
        return (False, None)

    counts: dict[str, int] = {}

    def count_from(v: str) -> int:
        if v in counts:
            return counts[v]
        total = 1 if v == tgt else 0
        for e in sub.out_edges(v):
            total += count_from(e.tgt)
        counts[v] = total
        return total

    return (True, count_from(src))


def _reachable(graph: Digraph, v: str, forward: bool) -> set[str]:
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        step = graph.out_edges(x) if forward else graph.in_edges(x)
        for e in step:
            w = e.tgt if forward else e.src
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


# --- monotone maps of finite ordinals --------------------------------------


class DeltaMor:
    """A monotone map [p] -> [q] between finite ordinals, given by its
    value list (length p+1)."""

    def __init__(self, p: int, q: int, values: Iterable[int]):
        self.p = p
        self.q = q
        self.values = tuple(values)
        assert p >= 0 and q >= 0
        assert len(self.values) == p + 1, "need one value per point of [p]"
        for v in self.values:
            assert 0 <= v <= q, f"value {v} outside [0..{q}]"
        for a, b in zip(self.values, self.values[1:]):
            assert a <= b, "values must be monotone"

    @classmethod
    def identity(cls, p: int) -> "DeltaMor":
        return cls(p, p, range(p + 1))

    def __call__(self, i: int) -> int:
        return self.values[i]

    def __eq__(self, other):
        if not isinstance(other, DeltaMor):
            return NotImplemented
        return (self.p, self.q, self.values) == (other.p, other.q, other.values)

    def __hash__(self):
        return hash((self.p, self.q, self.values))

    def __repr__(self):
        return f"DeltaMor([{self.p}]→[{self.q}]: {list(self.values)})"


def compose_delta(g: DeltaMor, f: DeltaMor) -> DeltaMor:
    if f.q != g.p:
        raise ValueError("ordinal maps not composable")
    return DeltaMor(f.p, g.q, [g(v) for v in f.values])


def factor_active_closed(f: DeltaMor) -> tuple[DeltaMor, DeltaMor]:
    """The unique factorization of a monotone map as an endpoint-preserving
    (active) map followed by a convex inclusion (closed map)."""
    lo, hi = f.values[0], f.values[-1]
    mid = hi - lo
    active = DeltaMor(f.p, mid, [v - lo for v in f.values])
    closed = DeltaMor(mid, f.q, [lo + j for j in range(mid + 1)])
    return active, closed


def is_active_delta(f: DeltaMor) -> bool:
    return f.values[0] == 0 and f.values[-1] == f.q


def is_closed_delta(f: DeltaMor) -> bool:
    return all(b == a + 1 for a, b in zip(f.values, f.values[1:]))


# --- quiver morphisms -------------------------------------------------------


class QuiverMor:
    """Vertices to vertices, edges to paths; empty paths collapse edges."""

    def __init__(self, source: Digraph, target: Digraph,
                 vertex_map: dict, edge_paths: dict):
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)
        self.edge_paths = dict(edge_paths)

        for v in source.vertices:
            if v not in self.vertex_map:
                raise UnknownVertex(f"vertex {v!r} has no image")
            target.vertex_index(self.vertex_map[v])
        for e in source.edges:
            p = self.edge_paths.get(e.eid)
            if p is None:
                raise ValueError(f"edge {e.eid!r} has no image path")
            if p.graph != target:
                raise ValueError(f"image path of {e.eid!r} lives in the wrong graph")
            if p.start != self.vertex_map[e.src] or p.end != self.vertex_map[e.tgt]:
                raise ValueError(f"image path of {e.eid!r} has the wrong endpoints")

    @classmethod
    def identity(cls, d: Digraph) -> "QuiverMor":
        return cls(d, d, {v: v for v in d.vertices},
                   {e.eid: Path.of_edge(d, e.eid) for e in d.edges})

    @classmethod
    def from_digraph_mor(cls, f: DigraphMor) -> "QuiverMor":
        paths = {}
        for e in f.source.edges:
            im = f.edge_map[e.eid]
            if im is None:
                paths[e.eid] = Path.empty(f.target, f.vertex_map[e.src])
            else:
                paths[e.eid] = Path.of_edge(f.target, im)
        return cls(f.source, f.target, f.vertex_map, paths)

    def map_path(self, p: Path) -> Path:
        if p.graph != self.source:
            raise ValueError("path lives in the wrong graph")
        out = Path.empty(self.target, self.vertex_map[p.start])
        for eid in p.edges:
            out = out.then(self.edge_paths[eid])
        return out

    def __eq__(self, other):
        if not isinstance(other, QuiverMor):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.vertex_map == other.vertex_map
                and self.edge_paths == other.edge_paths)

    def __hash__(self):
        return hash((tuple(sorted(self.vertex_map.items())),
                     tuple(sorted((k, p.edges) for k, p in self.edge_paths.items()))))

    def __repr__(self):
        return f"QuiverMor({self.vertex_map}, " + \
            "{" + ", ".join(f"{e}↦{list(p.edges)}"
                            for e, p in self.edge_paths.items()) + "})"


def compose_quiver_mor(g: QuiverMor, f: QuiverMor) -> QuiverMor:
    """g∘f by path substitution."""
    if f.target != g.source:
        raise ValueError("quiver morphisms not composable")
    vmap = {v: g.vertex_map[f.vertex_map[v]] for v in f.source.vertices}
    paths = {e.eid: g.map_path(f.edge_paths[e.eid]) for e in f.source.edges}
    return QuiverMor(f.source, g.target, vmap, paths)


@dataclass
class QuiverMorClass:
    idle: bool
    closed: bool
    creation: bool
    active: bool
    refinement: bool


def classify_quiver_mor(f: QuiverMor) -> QuiverMorClass:
    """Which of the five structural classes a quiver morphism belongs to.

    idle: nothing is stretched (every image path has length <= 1).
    closed: an isomorphism onto a subgraph (injective, no collapsing).
    creation: idle and surjective on vertices and on edges.
    active: every target edge appears in some image path.
    refinement: an iso-composite of single-edge subdivisions; the image paths
    cut the target's edges into disjoint runs whose interior vertices are
    fresh and used exactly once.
    """
    paths = list(f.edge_paths.values())
    idle = all(p.length <= 1 for p in paths)

    vmap_values = [f.vertex_map[v] for v in f.source.vertices]
    v_injective = len(set(vmap_values)) == len(vmap_values)
    v_surjective = set(vmap_values) == set(f.target.vertices)

    unit_edges = [p.edges[0] for p in paths if p.length == 1]
    closed = (idle and v_injective
              and all(p.length == 1 for p in paths)
              and len(set(unit_edges)) == len(unit_edges))

    hit_edges = set(unit_edges)
    creation = idle and v_surjective and hit_edges == set(e.eid for e in f.target.edges)

    used = set()
    for p in paths:
        used.update(p.edges)
    active = used >= set(e.eid for e in f.target.edges)

    refinement = _is_refinement(f, v_injective)
    return QuiverMorClass(idle, closed, creation, active, refinement)


def _is_refinement(f: QuiverMor, v_injective: bool) -> bool:
    # (1) injective on vertices, (2) no collapsed edges,
    # (3) each target edge traversed exactly once over all image paths,
    # (4) each non-image target vertex is strictly inside exactly one image
    #     path position, and image vertices are never strictly inside one.
    if not v_injective:
        return False
    if any(p.length == 0 for p in f.edge_paths.values()):
        return False
    edge_uses: dict[str, int] = {}
    interior_uses: dict[str, int] = {}
    for e in f.source.edges:
        p = f.edge_paths[e.eid]
        for eid in p.edges:
            edge_uses[eid] = edge_uses.get(eid, 0) + 1
        for w in p.vertices()[1:-1]:
            interior_uses[w] = interior_uses.get(w, 0) + 1
    if any(n != 1 for n in edge_uses.values()):
        return False
    if set(edge_uses) != set(e.eid for e in f.target.edges):
        return False
    image = set(f.vertex_map.values())
    for w in f.target.vertices:
        inside = interior_uses.get(w, 0)
        if w in image:
            if inside != 0:
                return False
        elif inside != 1:
            return False
    return True


def delta_mor_to_quiver(f: DeltaMor) -> QuiverMor:
    """A monotone map [p] -> [q] as a quiver morphism of directed chains."""
    src = standard_digraph("linear", f.p)
    tgt = standard_digraph("linear", f.q)
    vmap = {str(i): str(f(i)) for i in range(f.p + 1)}
    paths = {}
    for i in range(f.p):
        a, b = f(i), f(i + 1)
        paths[f"e{i}"] = Path(tgt, str(a), [f"e{j}" for j in range(a, b)])
    return QuiverMor(src, tgt, vmap, paths)


# --- components and hom counting --------------------------------------------


def components(d: Digraph) -> list[tuple[Digraph, DigraphMor]]:
    """Weakly connected components with their inclusions."""
    out = []
    for verts in weak_components(d):
        vset = set(verts)
        eids = [e.eid for e in d.edges if e.src in vset]
        sub = d.subgraph(verts, eids)
        incl = DigraphMor(sub, d, {v: v for v in verts},
                          {e: e for e in eids})
        out.append((sub, incl))
    return out


def _path_options(tgt: Digraph, a: str, b: str, path_cap: int | None,
                  cache: dict) -> tuple[list[Path], bool]:
    """All candidate image paths a -> b; second value says the list is exact."""
    key = (a, b)
    if key in cache:
        return cache[key]
    finite, _ = hom_is_finite(tgt, a, b)
    if finite:
        # in the acyclic relevant region no path repeats an edge
        full = enumerate_paths(tgt, a, b, len(tgt.edges))
        if path_cap is not None and any(p.length > path_cap for p in full):
            res = ([p for p in full if p.length <= path_cap], False)
        else:
            res = (full, True)
    else:
        if path_cap is None:
            raise ValueError(f"infinitely many paths {a!r} -> {b!r}; "
                             "a path cap is required")
        res = (enumerate_paths(tgt, a, b, path_cap), False)
    cache[key] = res
    return res


def enumerate_quiver_mors(src: Digraph, tgt: Digraph,
                          path_cap: int | None = None
                          ) -> tuple[list[QuiverMor], bool]:
    """All quiver morphisms src -> tgt, with a truncation flag.

    Exact (flag False) whenever every consulted hom-set of paths is finite;
    otherwise image paths are capped at path_cap and the flag is True.
    """
    cache: dict = {}
    mors = []
    truncated = False
    vs = src.vertices
    for assignment in itertools.product(tgt.vertices, repeat=len(vs)):
        vmap = dict(zip(vs, assignment))
        options = []
        for e in src.edges:
            paths, exact = _path_options(tgt, vmap[e.src], vmap[e.tgt],
                                         path_cap, cache)
            if not exact:
                truncated = True
            options.append(paths)
        for choice in itertools.product(*options):
            epaths = {e.eid: p for e, p in zip(src.edges, choice)}
            mors.append(QuiverMor(src, tgt, vmap, epaths))
    return mors, truncated


def hom_quiver_count(src: Digraph, tgt: Digraph,
                     path_cap: int | None = None) -> tuple[int, bool]:
    """Count quiver morphisms componentwise: a product over source components
    of a sum over target components."""
    total = 1
    truncated = False
    tgt_comps = [c for c, _ in components(tgt)]
    for cs, _ in components(src):
        ways = 0
        for ct in tgt_comps:
            mors, trunc = enumerate_quiver_mors(cs, ct, path_cap)
            ways += len(mors)
            truncated = truncated or trunc
        total *= ways
    return total, truncated
