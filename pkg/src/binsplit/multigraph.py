"""Multigraphs with loops and parallel edges, and their circuit matroids.

Isomorphism testing uses colour refinement on the vertices (edge
multiplicities and loop counts included) followed by individualisation
backtracking. The same refinement gives a cheap invariant key used to bucket
graphs before exact comparison in :class:`GraphClassStore`.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Sequence

from .errors import FormatError, LabelError, ResourceError, StructureError
from .gf2 import Gf2Matrix
from .matroid import BinaryMatroid, from_matrix, is_isomorphic

Edge = tuple[str, str, str]  # (label, u, v)


@dataclass(frozen=True, eq=False)
class Multigraph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise LabelError("duplicate vertex labels")
        labels = [e[0] for e in self.edges]
        if len(set(labels)) != len(labels):
            dup = sorted(k for k, c in Counter(labels).items() if c > 1)
            raise LabelError(f"duplicate edge labels {dup}")
        vs = set(self.vertices)
        for lab, u, v in self.edges:
            if u not in vs or v not in vs:
                raise LabelError(f"edge {lab!r} uses an unknown vertex")

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence], vertices: Iterable | None = None) -> "Multigraph":
        """Build from ``(label, u, v)`` triples; vertices default to first-appearance order."""
        edges = [(str(a), str(u), str(v)) for a, u, v in edges]
        if vertices is None:
            seen: dict[str, None] = {}
            for _, u, v in edges:
                seen.setdefault(u)
                seen.setdefault(v)
            vertices = list(seen)
        return cls(tuple(str(v) for v in vertices), tuple(edges))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], prefix: str = "e") -> "Multigraph":
        """Integer endpoint pairs; vertices are ``0..n-1`` and edges ``e1, e2, ...``."""
        pairs = list(pairs)
        n = 1 + max((max(p) for p in pairs), default=-1)
        return cls.from_edges(
            [(f"{prefix}{k + 1}", u, v) for k, (u, v) in enumerate(pairs)], vertices=range(n)
        )

    # --- basic structure --------------------------------------------------

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def edge_labels(self) -> tuple[str, ...]:
        return tuple(e[0] for e in self.edges)

    @cached_property
    def _vindex(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _int_edges(self) -> tuple[tuple[int, int], ...]:
        ix = self._vindex
        return tuple((ix[u], ix[v]) for _, u, v in self.edges)

    def edge(self, label: str) -> Edge:
        for e in self.edges:
            if e[0] == label:
                return e
        raise LabelError(f"unknown edge {label!r}")

    def degree(self, v: str) -> int:
        return sum((u == v) + (w == v) for _, u, w in self.edges)

    def loops(self) -> list[str]:
        return [lab for lab, u, v in self.edges if u == v]

    def parallel_classes(self) -> list[list[str]]:
        """Edges grouped by unordered endpoint pair (loops excluded)."""
        groups: dict[frozenset, list[str]] = defaultdict(list)
        for lab, u, v in self.edges:
            if u != v:
                groups[frozenset((u, v))].append(lab)
        return list(groups.values())

    def components(self) -> list[set[str]]:
        parent = {v: v for v in self.vertices}

        def find(x: str) -> str:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for _, u, v in self.edges:
            parent[find(u)] = find(v)
        groups: dict[str, set[str]] = defaultdict(set)
        for v in self.vertices:
            groups[find(v)].add(v)
        return list(groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def delete_edges(self, labels: Iterable[str]) -> "Multigraph":
        drop = set(labels)
        return Multigraph(self.vertices, tuple(e for e in self.edges if e[0] not in drop))

    def contract_edge(self, label: str) -> "Multigraph":
        _, u, v = self.edge(label)
        rest = [e for e in self.edges if e[0] != label]
        if u == v:
            return Multigraph(self.vertices, tuple(rest))
        moved = tuple((a, u if x == v else x, u if y == v else y) for a, x, y in rest)
        return Multigraph(tuple(w for w in self.vertices if w != v), moved)

    def relabel_edges(self, mapping: dict[str, str]) -> "Multigraph":
        return Multigraph(self.vertices, tuple((mapping.get(a, a), u, v) for a, u, v in self.edges))

    def with_edge(self, label: str, u: str, v: str) -> "Multigraph":
        verts = self.vertices
        for w in (u, v):
            if w not in self._vindex and w not in verts:
                verts = verts + (w,)
        return Multigraph(verts, self.edges + ((label, u, v),))

    def fresh_label(self, stem: str = "e") -> str:
        used = set(self.edge_labels)
        k = len(self.edges) + 1
        while f"{stem}{k}" in used:
            k += 1
        return f"{stem}{k}"

    def fresh_vertex(self) -> str:
        used = set(self.vertices)
        k = len(self.vertices)
        while str(k) in used:
            k += 1
        return str(k)

    # --- text format -------------------------------------------------------

    def to_text(self, name: str = "G") -> str:
        lines = [f"graph {name}"] + [f"edge {a} {u} {v}" for a, u, v in self.edges]
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"Multigraph(|V|={len(self.vertices)}, |E|={len(self.edges)})"


def parse_graph(text: str) -> tuple[str, Multigraph]:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise FormatError("empty graph file")
    head = lines[0].split()
    if head[0] != "graph" or len(head) != 2:
        raise FormatError(f"expected 'graph <name>', got {lines[0]!r}")
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if parts[0] != "edge" or len(parts) != 4:
            raise FormatError(f"expected 'edge <label> <u> <v>', got {line!r}")
        edges.append(tuple(parts[1:]))
    return head[1], Multigraph.from_edges(edges)


# --- circuit matroid -------------------------------------------------------


def circuit_matroid(G: Multigraph) -> BinaryMatroid:
    """Matroid of the mod-2 vertex-edge incidence matrix; loops are zero columns."""
    rows = [0] * len(G.vertices)
    for j, (u, v) in enumerate(G._int_edges):
        if u != v:
            rows[u] |= 1 << j
            rows[v] |= 1 << j
    return from_matrix(G.edge_labels, Gf2Matrix(tuple(rows), len(G.edges)))


def cycle_edge_sets(G: Multigraph) -> set[frozenset[str]]:
    """Edge sets of cycles, by brute force over edge subsets (small graphs only).

    A nonempty edge set is a cycle when it is connected, every vertex it
    touches has degree two in it (a loop counts two), and it is minimal with
    that property, which for such sets just means it is connected.
    """
    out = set()
    E = G.edges
    for mask in range(1, 1 << len(E)):
        chosen = [E[i] for i in range(len(E)) if mask >> i & 1]
        deg: Counter = Counter()
        for _, u, v in chosen:
            deg[u] += 1
            deg[v] += 1
        if any(d != 2 for d in deg.values()):
            continue
        sub = Multigraph(tuple(deg), tuple(chosen))
        if sub.is_connected():
            out.add(frozenset(e[0] for e in chosen))
    return out


# --- structural predicates --------------------------------------------------


def is_eulerian(G: Multigraph) -> bool:
    touched = {u for _, u, _ in G.edges} | {v for _, _, v in G.edges}
    if not touched:
        return True
    sub = Multigraph(tuple(w for w in G.vertices if w in touched), G.edges)
    if not sub.is_connected():
        return False
    return all(G.degree(v) % 2 == 0 for v in touched)


def _require_connected(G: Multigraph) -> None:
    if not G.is_connected():
        raise StructureError("graph is not connected")


def blocks(G: Multigraph) -> list[frozenset[str]]:
    """Edge sets of the blocks; each loop is a block on its own."""
    _require_connected(G)
    n = len(G.vertices)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    out: list[frozenset[str]] = []
    for k, (u, v) in enumerate(G._int_edges):
        if u == v:
            out.append(frozenset([G.edges[k][0]]))
        else:
            adj[u].append((v, k))
            adj[v].append((u, k))
    disc = [-1] * n
    low = [0] * n
    stack: list[int] = []
    clock = 0

    def dfs(u: int, via: int) -> None:
        nonlocal clock
        disc[u] = low[u] = clock
        clock += 1
        for w, k in adj[u]:
            if k == via:
                continue
            if disc[w] == -1:
                stack.append(k)
                dfs(w, k)
                low[u] = min(low[u], low[w])
                if low[w] >= disc[u]:
                    comp = []
                    while True:
                        e = stack.pop()
                        comp.append(G.edges[e][0])
                        if e == k:
                            break
                    out.append(frozenset(comp))
            elif disc[w] < disc[u]:
                stack.append(k)
                low[u] = min(low[u], disc[w])

    if n:
        dfs(0, -1)
    return sorted(out, key=lambda b: sorted(b))


def has_two_edge_cut(G: Multigraph) -> frozenset[str] | None:
    """The first two-edge set (in label order) whose removal disconnects ``G``."""
    _require_connected(G)
    labels = sorted(G.edge_labels)
    for a, b in itertools.combinations(labels, 2):
        if not G.delete_edges((a, b)).is_connected():
            return frozenset((a, b))
    return None


def no_two_edge_cut(G: Multigraph) -> bool:
    return has_two_edge_cut(G) is None


@dataclass(frozen=True)
class StructuralProfile:
    loop_count: int
    parallel_class_sizes: tuple[int, ...]
    block_count: int
    loop_blocks: int
    eulerian: bool
    two_edge_cut: frozenset[str] | None

    @property
    def block_rule(self) -> bool:
        """A single block, or two blocks one of which is a loop."""
        return self.block_count == 1 or (self.block_count == 2 and self.loop_blocks >= 1)

    def admissible(self, require_eulerian: bool = False) -> bool:
        return (
            self.loop_count <= 1
            and max(self.parallel_class_sizes, default=1) <= 2
            and self.block_rule
            and self.two_edge_cut is None
            and (self.eulerian or not require_eulerian)
        )

    def as_record(self) -> dict[str, str]:
        cut = "-" if self.two_edge_cut is None else ",".join(sorted(self.two_edge_cut))
        return {
            "loops": str(self.loop_count),
            "parallel_classes": ",".join(map(str, self.parallel_class_sizes)),
            "blocks": str(self.block_count),
            "eulerian": str(self.eulerian).lower(),
            "two_edge_cut": cut,
        }


def structural_profile(G: Multigraph) -> StructuralProfile:
    bl = blocks(G)
    loops = set(G.loops())
    return StructuralProfile(
        loop_count=len(loops),
        parallel_class_sizes=tuple(sorted((len(c) for c in G.parallel_classes()), reverse=True)),
        block_count=len(bl),
        loop_blocks=sum(1 for b in bl if b <= loops),
        eulerian=is_eulerian(G),
        two_edge_cut=has_two_edge_cut(G),
    )


# --- isomorphism -------------------------------------------------------------


def _adjacency(G: Multigraph) -> tuple[list[dict[int, int]], list[int]]:
    n = len(G.vertices)
    adj: list[dict[int, int]] = [defaultdict(int) for _ in range(n)]
    loops = [0] * n
    for u, v in G._int_edges:
        if u == v:
            loops[u] += 1
        else:
            adj[u][v] += 1
            adj[v][u] += 1
    return adj, loops


def _refine(adj: Sequence[dict[int, int]], colours: list) -> list:
    """Stable colour refinement; colours are canonical nested-free ints."""
    n = len(adj)
    current = list(colours)
    ncls = len(set(current))
    while True:
        sigs = [
            (current[v], tuple(sorted((current[w], m) for w, m in adj[v].items())))
            for v in range(n)
        ]
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        nxt = [order[s] for s in sigs]
        k = len(order)
        # canonical relabel keeps colours comparable across graphs refined jointly
        current = nxt
        if k == ncls:
            return current
        ncls = k


def graph_invariant(G: Multigraph) -> tuple:
    """Isomorphism invariant from refinement on ``G`` alone."""
    adj, loops = _adjacency(G)
    n = len(adj)
    colours = [loops[v] for v in range(n)]
    history = []
    # refine while recording the signature multiset so the key is canonical
    while True:
        sigs = [
            (colours[v], tuple(sorted((colours[w], m) for w, m in adj[v].items())))
            for v in range(n)
        ]
        distinct = sorted(set(sigs))
        history.append(tuple(sorted(Counter(sigs).items())))
        order = {s: i for i, s in enumerate(distinct)}
        nxt = [order[s] for s in sigs]
        if len(distinct) == len(set(colours)):
            break
        colours = nxt
    return (n, len(G.edges), tuple(history))


def graph_isomorphic(G: Multigraph, H: Multigraph) -> tuple[dict[str, str], dict[str, str]] | None:
    """Vertex and edge bijections carrying ``G`` onto ``H``, or None."""
    n = len(G.vertices)
    if n != len(H.vertices) or len(G.edges) != len(H.edges):
        return None
    # refine on the disjoint union so colours are shared
    ag, lg = _adjacency(G)
    ah, lh = _adjacency(H)
    union: list[dict[int, int]] = [dict(d) for d in ag] + [{w + n: m for w, m in d.items()} for d in ah]
    start = lg + lh

    def balanced(col: list) -> bool:
        return Counter(col[:n]) == Counter(col[n:])

    def search(col: list) -> list[int] | None:
        col = _refine(union, col)
        if not balanced(col):
            return None
        groups: dict[int, list[int]] = defaultdict(list)
        for v, c in enumerate(col):
            groups[c].append(v)
        cell = None
        for c in sorted(groups):
            if len(groups[c]) > 2:
                cell = groups[c]
                break
        if cell is None:
            # discrete: each colour has one vertex on each side
            perm = [0] * n
            for c, vs in groups.items():
                perm[vs[0]] = vs[1] - n
            for u in range(n):
                for w, m in ag[u].items():
                    if ah[perm[u]].get(perm[w], 0) != m:
                        return None
                if lg[u] != lh[perm[u]]:
                    return None
            return perm
        fresh = max(col) + 1
        u = cell[0]
        for v in (x for x in cell if x >= n):
            trial = list(col)
            trial[u] = trial[v] = fresh
            res = search(trial)
            if res is not None:
                return res
        return None

    perm = search(start)
    if perm is None:
        return None
    vmap = {G.vertices[i]: H.vertices[perm[i]] for i in range(n)}
    # match edges between corresponding endpoint pairs in label order
    pool: dict[tuple, list[str]] = defaultdict(list)
    for lab, u, v in sorted(H.edges):
        pool[frozenset((u, v)) if u != v else (u,)].append(lab)
    emap = {}
    for lab, u, v in sorted(G.edges):
        key = frozenset((vmap[u], vmap[v])) if u != v else (vmap[u],)
        emap[lab] = pool[key].pop(0)
    return vmap, emap


class GraphClassStore:
    """Collects graphs, keeping one representative per isomorphism class."""

    def __init__(self) -> None:
        self._buckets: dict[tuple, list[int]] = defaultdict(list)
        self.items: list[Multigraph] = []

    def find(self, G: Multigraph) -> int | None:
        for i in self._buckets[graph_invariant(G)]:
            if graph_isomorphic(G, self.items[i]) is not None:
                return i
        return None

    def add(self, G: Multigraph) -> bool:
        """Insert ``G`` unless an isomorphic copy is present; True if inserted."""
        key = graph_invariant(G)
        for i in self._buckets[key]:
            if graph_isomorphic(G, self.items[i]) is not None:
                return False
        self._buckets[key].append(len(self.items))
        self.items.append(G)
        return True

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[Multigraph]:
        return iter(self.items)


def dedupe(graphs: Iterable[Multigraph]) -> list[Multigraph]:
    store = GraphClassStore()
    for G in graphs:
        store.add(G)
    return store.items


# --- extensions and coextensions ---------------------------------------------


def vertex_splits(G: Multigraph, label: str, allow_coloops: bool = False) -> Iterator[Multigraph]:
    """Every graph whose contraction of the new edge ``label`` gives back ``G``.

    For each vertex, the edge-ends there are shared out between the old vertex
    and a new neighbour joined to it by ``label``; a loop has two ends.
    Splits that leave either side with no other edge make ``label`` a pendant
    edge and are produced only when ``allow_coloops`` is set.
    """
    if label in G.edge_labels:
        raise LabelError(f"label {label!r} already in use")
    for v in G.vertices:
        w = G.fresh_vertex()
        ends = []  # (edge index, which end)
        for k, (_, a, b) in enumerate(G.edges):
            if a == v:
                ends.append((k, 0))
            if b == v:
                ends.append((k, 1))
        nends = len(ends)
        # fix the first end on the old side to halve the symmetric duplicates
        for mask in range(0, 1 << max(nends - 1, 0)):
            moved = {ends[i + 1] for i in range(nends - 1) if mask >> i & 1}
            if not allow_coloops and (not moved or len(moved) == nends):
                continue
            new_edges = []
            for k, (lab, a, b) in enumerate(G.edges):
                a2 = w if (k, 0) in moved else a
                b2 = w if (k, 1) in moved else b
                new_edges.append((lab, a2, b2))
            new_edges.append((label, v, w))
            yield Multigraph(G.vertices + (w,), tuple(new_edges))
        if nends == 0 and allow_coloops:
            yield Multigraph(G.vertices + (w,), G.edges + ((label, v, w),))


def dedupe_by_matroid(graphs: Iterable[Multigraph]) -> list[Multigraph]:
    """Keep the first graph of each circuit-matroid isomorphism class."""
    kept: list[tuple[BinaryMatroid, Multigraph]] = []
    for G in graphs:
        M = circuit_matroid(G)
        if all(is_isomorphic(M, N) is None for N, _ in kept):
            kept.append((M, G))
    return [G for _, G in kept]


def one_element_coextensions(
    G: Multigraph,
    filter: Callable[[Multigraph], bool] | None = None,
    *,
    allow_coloops: bool = False,
    label: str = "e",
    up_to: str = "matroid",
) -> list[Multigraph]:
    """Coextensions ``G'`` with ``G'/label`` equal to ``G``.

    Results are deduplicated up to graph isomorphism and then, when ``up_to``
    is ``"matroid"`` (the default), up to isomorphism of circuit matroids;
    graphs that differ only by a Whitney flip collapse to one class there.
    """
    if up_to not in ("graph", "matroid"):
        raise ValueError(f"up_to must be 'graph' or 'matroid', not {up_to!r}")
    _require_connected(G)
    keep = filter or (lambda H: True)
    found = dedupe(H for H in vertex_splits(G, label, allow_coloops) if keep(H))
    return dedupe_by_matroid(found) if up_to == "matroid" else found


def one_element_extensions(G: Multigraph, mode: str = "any", *, label: str = "e") -> list[Multigraph]:
    """Add one edge: ``loop`` at a vertex, ``parallel`` to an existing edge, or ``any`` pair."""
    if label in G.edge_labels:
        raise LabelError(f"label {label!r} already in use")
    if mode == "loop":
        pairs = [(v, v) for v in G.vertices]
    elif mode == "parallel":
        pairs = sorted({(u, v) for _, u, v in G.edges if u != v})
    elif mode == "any":
        pairs = [(u, v) for i, u in enumerate(G.vertices) for v in G.vertices[i:]]
    else:
        raise ValueError(f"unknown extension mode {mode!r}")
    return dedupe(G.with_edge(label, u, v) for u, v in pairs)


# --- enumeration ----------------------------------------------------------------

MAX_ENUMERATION_EDGES = 10


@dataclass(frozen=True)
class GraphConstraints:
    vertices: int | None = None
    edges: int | None = None
    simple: bool = False
    two_connected: bool = False
    max_loops: int | None = None
    max_multiplicity: int | None = None
    eulerian: bool = False

    def prunes(self, G: Multigraph) -> bool:
        """Conditions that can only get worse as edges are added."""
        if self.vertices is not None and len(G.vertices) > self.vertices:
            return True
        loops = len(G.loops())
        if (self.simple or self.max_loops is not None) and loops > (0 if self.simple else self.max_loops):
            return True
        cap = 1 if self.simple else self.max_multiplicity
        if cap is not None and any(len(c) > cap for c in G.parallel_classes()):
            return True
        return False

    def accepts(self, G: Multigraph) -> bool:
        if self.prunes(G):
            return False
        if self.vertices is not None and len(G.vertices) != self.vertices:
            return False
        if self.edges is not None and len(G.edges) != self.edges:
            return False
        if self.two_connected and not _two_connected(G):
            return False
        if self.eulerian and not is_eulerian(G):
            return False
        return True


def _two_connected(G: Multigraph) -> bool:
    """Loopless, at least three vertices, and no cut vertex."""
    if len(G.vertices) < 3 or G.loops() or not G.is_connected():
        return False
    return len(blocks(G)) == 1


def _canonical_pairs(G: Multigraph) -> list[tuple[int, int]]:
    return [tuple(sorted(p)) for p in G._int_edges]


def growth_children(G: Multigraph) -> Iterator[Multigraph]:
    """One more edge: between existing vertices (loops included) or pendant to a new vertex.

    Every connected graph with at least one edge is a child of a connected
    graph with one edge fewer: delete an edge lying on a cycle, or else a leaf
    edge of the tree.
    """
    label = G.fresh_label()
    verts = G.vertices
    for i, u in enumerate(verts):
        for v in verts[i:]:
            yield G.with_edge(label, u, v)
    w = G.fresh_vertex()
    for u in verts:
        yield G.with_edge(label, u, w)


def _normalise(G: Multigraph) -> Multigraph:
    """Relabel to vertices ``0..n-1`` and edges ``e1..em`` in sorted endpoint order."""
    pairs = sorted(_canonical_pairs(G))
    return Multigraph.from_edges([(f"e{k + 1}", u, v) for k, (u, v) in enumerate(pairs)], range(len(G.vertices)))


def grow_connected(
    max_edges: int,
    *,
    expand: Callable[[Multigraph], bool] | None = None,
    prune: Callable[[Multigraph], bool] | None = None,
) -> Iterator[Multigraph]:
    """Level-by-level growth of connected multigraphs, one per isomorphism class.

    Each level is yielded in full before ``expand`` is consulted on its
    graphs, so a consumer may record verdicts while iterating. Children for
    which ``prune`` is true are discarded before deduplication.
    """
    level = [Multigraph(("0",), ())]
    for m in range(0, max_edges + 1):
        yield from level
        if m == max_edges:
            return
        store = GraphClassStore()
        for G in level:
            if expand is not None and not expand(G):
                continue
            for H in growth_children(G):
                if prune is None or not prune(H):
                    store.add(H)
        level = store.items


def enumerate_connected_multigraphs(
    max_edges: int, constraints: GraphConstraints | None = None
) -> Iterator[Multigraph]:
    """All connected multigraphs with at most ``max_edges`` edges, one per isomorphism class.

    Graphs come in order of edge count and, within one count, in discovery
    order, which is deterministic. Vertices are renamed ``0..n-1`` and edges
    ``e1..em``.
    """
    if max_edges > MAX_ENUMERATION_EDGES:
        raise ResourceError(f"max_edges {max_edges} exceeds the guard of {MAX_ENUMERATION_EDGES}")
    cons = constraints or GraphConstraints()
    for G in grow_connected(max_edges, prune=cons.prunes):
        if cons.accepts(G):
            yield _normalise(G)


# --- realizing a binary matroid as a graph -------------------------------------------


def _tree_shapes(n: int) -> list[list[tuple[int, int]]]:
    """Edge lists of the trees on vertices ``0..n-1``, one per isomorphism class."""
    if n == 1:
        return [[]]
    store = GraphClassStore()
    shapes = []
    for seq in itertools.product(range(n), repeat=n - 2):
        degree = [1] * n
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = min(i for i in range(n) if degree[i] == 1)
            edges.append((leaf, x))
            degree[leaf] -= 1
            degree[x] -= 1
        u, v = [i for i in range(n) if degree[i] == 1]
        edges.append((u, v))
        T = Multigraph(tuple(map(str, range(n))), tuple((f"t{i}", str(a), str(b)) for i, (a, b) in enumerate(edges)))
        if store.add(T):
            shapes.append(edges)
    return shapes


def _path_ends(tree: list[tuple[int, int]], used: Sequence[int]) -> tuple[int, int] | None:
    deg: Counter = Counter()
    for i in used:
        a, b = tree[i]
        deg[a] += 1
        deg[b] += 1
    if any(d > 2 for d in deg.values()):
        return None
    ends = [x for x, d in deg.items() if d == 1]
    if len(ends) != 2:
        return None
    # a path plus disjoint cycles is impossible in a tree, so degree checks suffice
    # once the edge set is connected: a forest with two leaves and no branching is a path
    if len(deg) != len(used) + 1:
        return None
    return ends[0], ends[1]


def graph_realizations(M: BinaryMatroid) -> list[Multigraph]:
    """Connected graphs on ``rank + 1`` vertices whose circuit matroid is ``M``, edges labelled by ``M``.

    One graph per isomorphism class. A basis of ``M`` is laid out as a
    spanning tree in every possible way and each other element joins the
    ends of its fundamental path; loops go to every vertex in turn. Empty
    when ``M`` is not graphic.
    """
    r, rows = M.rank, M.rep.rows
    pivots = [(row & -row).bit_length() - 1 for row in rows]
    basis = [M.elements[p] for p in pivots]
    others = [j for j in range(len(M)) if j not in set(pivots)]
    fund = {j: [i for i in range(r) if rows[i] >> j & 1] for j in others}
    store = GraphClassStore()
    for shape in _tree_shapes(r + 1):
        for perm in itertools.permutations(range(r)):
            # basis element perm[i] sits on tree edge i
            where = {perm[i]: i for i in range(r)}
            placed: dict[int, tuple[int, int]] = {}
            loops = []
            for j in others:
                if not fund[j]:
                    loops.append(j)
                    continue
                ends = _path_ends(shape, [where[i] for i in fund[j]])
                if ends is None:
                    break
                placed[j] = ends
            else:
                for spots in itertools.product(range(r + 1), repeat=len(loops)):
                    ends_of = {pivots[b]: shape[where[b]] for b in range(r)}
                    ends_of.update(placed)
                    ends_of.update({j: (s, s) for j, s in zip(loops, spots)})
                    edges = tuple((M.elements[j], str(ends_of[j][0]), str(ends_of[j][1])) for j in range(len(M)))
                    G = Multigraph(tuple(map(str, range(r + 1))), edges)
                    store.add(G)
    out = list(store)
    for G in out:
        assert circuit_matroid(G) == M
    return out
