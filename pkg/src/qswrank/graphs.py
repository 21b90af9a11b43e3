"""Network construction: random graph families, fixed test graphs, edge-list I/O.

All generators are deterministic functions of their parameters and an integer
seed.  Vertices are 1-indexed.  Undirected graphs store both orientations of
every edge internally; the reported edge count collapses them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Graph",
    "GraphError",
    "EdgeListParseError",
    "gen_bernoulli",
    "gen_watts_strogatz",
    "gen_barabasi_albert",
    "gen_price",
    "gen_spatial",
    "zachary",
    "eight_vertex",
    "random_orientation",
    "load_edgelist",
    "save_edgelist",
]


class GraphError(ValueError):
    """Invalid graph parameters or malformed graph operations."""


class EdgeListParseError(GraphError):
    """Malformed edge-list file; carries the offending line number."""

    def __init__(self, message, line_number):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


@dataclass(frozen=True)
class Graph:
    """A simple graph on vertices 1..vertex_count.

    ``edges`` holds ordered pairs (u, v).  For undirected graphs the set is
    symmetric-closed, and both orientations count as a single edge in
    ``edge_count``.  ``coords`` optionally carries planar positions for
    geometrically generated graphs.
    """

    vertex_count: int
    edges: frozenset
    directed: bool
    coords: tuple = field(default=None, compare=False)

    def __post_init__(self):
        m = self.vertex_count
        if m < 1:
            raise GraphError(f"vertex_count must be >= 1, got {m}")
        for (u, v) in self.edges:
            if not (1 <= u <= m and 1 <= v <= m):
                raise GraphError(f"edge ({u},{v}) out of range 1..{m}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
        if not self.directed:
            for (u, v) in self.edges:
                if (v, u) not in self.edges:
                    raise GraphError(
                        f"undirected graph missing reverse of ({u},{v})"
                    )
        if self.coords is not None and len(self.coords) != m:
            raise GraphError("coords length must equal vertex_count")

    @property
    def edge_count(self):
        return len(self.edges) if self.directed else len(self.edges) // 2

    def adjacency(self):
        """Dense 0/1 matrix with A[i-1, j-1] = 1 iff edge j -> i exists."""
        a = np.zeros((self.vertex_count, self.vertex_count))
        for (u, v) in self.edges:
            a[v - 1, u - 1] = 1.0
        return a

    def undirected_view(self):
        """Symmetric closure of the edge set (coords dropped are kept)."""
        if not self.directed:
            return self
        sym = set()
        for (u, v) in self.edges:
            sym.add((u, v))
            sym.add((v, u))
        return Graph(self.vertex_count, frozenset(sym), False, self.coords)

    def degrees(self):
        """Undirected degree of every vertex (1-indexed result at [v-1])."""
        und = self.undirected_view()
        d = np.zeros(self.vertex_count, dtype=int)
        for (u, _) in und.edges:
            d[u - 1] += 1
        return d


def _undirected(n, pair_set, coords=None):
    edges = set()
    for (u, v) in pair_set:
        edges.add((u, v))
        edges.add((v, u))
    return Graph(n, frozenset(edges), False, coords)


def gen_bernoulli(n, p, seed):
    """Erdos-Renyi style graph: each unordered pair is an edge w.p. ``p``."""
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability must be in [0,1], got {p}")
    if n < 1:
        raise GraphError(f"need n >= 1, got {n}")
    rng = np.random.default_rng(seed)
    pairs = set()
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.random() < p:
                pairs.add((u, v))
    return _undirected(n, pairs)


def gen_watts_strogatz(n, p_rewire, k=1, seed=None):
    """Ring lattice with k neighbours per side, then seeded edge rewiring.

    Rewiring keeps the first endpoint and redraws the second uniformly among
    vertices not already adjacent to it.  Edge count is conserved exactly.
    """
    if n < 3:
        raise GraphError(f"need n >= 3, got {n}")
    if k < 1 or 2 * k >= n:
        raise GraphError(f"need 1 <= k and 2k < n, got k={k}, n={n}")
    if not 0.0 <= p_rewire <= 1.0:
        raise GraphError(f"rewiring probability must be in [0,1], got {p_rewire}")
    rng = np.random.default_rng(seed)
    neighbours = {u: set() for u in range(1, n + 1)}
    edge_list = []
    for u in range(1, n + 1):
        for j in range(1, k + 1):
            v = (u - 1 + j) % n + 1
            edge_list.append((u, v))
            neighbours[u].add(v)
            neighbours[v].add(u)
    for idx, (u, v) in enumerate(edge_list):
        if rng.random() >= p_rewire:
            continue
        candidates = [w for w in range(1, n + 1)
                      if w != u and w not in neighbours[u]]
        if not candidates:
            continue
        w = candidates[rng.integers(len(candidates))]
        neighbours[u].discard(v)
        neighbours[v].discard(u)
        neighbours[u].add(w)
        neighbours[w].add(u)
        edge_list[idx] = (u, w)
    pairs = {(min(u, v), max(u, v)) for (u, v) in edge_list}
    return _undirected(n, pairs)


def gen_barabasi_albert(n, k, seed):
    """Preferential attachment from a single starting vertex.

    Each new vertex attaches min(k, existing) edges to distinct targets with
    probability proportional to current degree; degree-0 targets get weight 1
    so growth can bootstrap.
    """
    if k < 1:
        raise GraphError(f"need k >= 1, got {k}")
    if n < k + 1:
        raise GraphError(f"need n >= k+1, got n={n}, k={k}")
    rng = np.random.default_rng(seed)
    degree = np.zeros(n + 1)
    pairs = set()
    for new in range(2, n + 1):
        existing = new - 1
        targets = set()
        for _ in range(min(k, existing)):
            weights = np.array([
                degree[t] if degree[t] > 0 else 1.0
                for t in range(1, new)
            ])
            weights[[t - 1 for t in targets]] = 0.0
            weights /= weights.sum()
            t = int(rng.choice(np.arange(1, new), p=weights))
            targets.add(t)
        for t in targets:
            pairs.add((min(new, t), max(new, t)))
            degree[new] += 1
            degree[t] += 1
    return _undirected(n, pairs)


def gen_price(n, k, a, seed):
    """Directed preferential attachment: new vertex points at existing ones
    with probability proportional to in-degree + a."""
    if a <= 0:
        raise GraphError(f"attractiveness offset must be > 0, got {a}")
    if k < 1:
        raise GraphError(f"need k >= 1, got {k}")
    if n < 2:
        raise GraphError(f"need n >= 2, got {n}")
    rng = np.random.default_rng(seed)
    indeg = np.zeros(n + 1)
    edges = set()
    for new in range(2, n + 1):
        existing = new - 1
        targets = set()
        for _ in range(min(k, existing)):
            weights = np.array([indeg[t] + a for t in range(1, new)])
            weights[[t - 1 for t in targets]] = 0.0
            weights /= weights.sum()
            t = int(rng.choice(np.arange(1, new), p=weights))
            targets.add(t)
        for t in targets:
            edges.add((new, t))
            indeg[t] += 1
    return Graph(n, frozenset(edges), True)


def gen_spatial(n, r, seed):
    """Random geometric graph on the unit square with distance threshold r."""
    if n < 1:
        raise GraphError(f"need n >= 1, got {n}")
    if r < 0:
        raise GraphError(f"distance threshold must be >= 0, got {r}")
    rng = np.random.default_rng(seed)
    pts = rng.random((n, 2))
    pairs = set()
    for u in range(n):
        for v in range(u + 1, n):
            if np.hypot(*(pts[u] - pts[v])) <= r:
                pairs.add((u + 1, v + 1))
    coords = tuple((float(x), float(y)) for x, y in pts)
    return _undirected(n, pairs, coords)


# Zachary's karate club, canonical 34-vertex / 78-edge social network.
_ZACHARY_EDGES = (
    (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7), (1, 8), (1, 9), (1, 11),
    (1, 12), (1, 13), (1, 14), (1, 18), (1, 20), (1, 22), (1, 32), (2, 3),
    (2, 4), (2, 8), (2, 14), (2, 18), (2, 20), (2, 22), (2, 31), (3, 4),
    (3, 8), (3, 9), (3, 10), (3, 14), (3, 28), (3, 29), (3, 33), (4, 8),
    (4, 13), (4, 14), (5, 7), (5, 11), (6, 7), (6, 11), (6, 17), (7, 17),
    (9, 31), (9, 33), (9, 34), (10, 34), (14, 34), (15, 33), (15, 34),
    (16, 33), (16, 34), (19, 33), (19, 34), (20, 34), (21, 33), (21, 34),
    (23, 33), (23, 34), (24, 26), (24, 28), (24, 30), (24, 33), (24, 34),
    (25, 26), (25, 28), (25, 32), (26, 32), (27, 30), (27, 34), (28, 34),
    (29, 32), (29, 34), (30, 33), (30, 34), (31, 33), (31, 34), (32, 33),
    (32, 34), (33, 34),
)


def zachary():
    """The fixed Zachary karate club network (34 vertices, 78 edges)."""
    return _undirected(34, set(_ZACHARY_EDGES))


# Small directed benchmark network: a near-complete core on vertices 1-4
# feeding a chain 3->5->7->{6,8}, with 6->5 and 8->2 closing the loops.
_EIGHT_VERTEX_EDGES = (
    (1, 2), (1, 3), (1, 4), (2, 1), (2, 3), (2, 4), (3, 1), (3, 2), (3, 4),
    (3, 5), (4, 1), (4, 2), (4, 3), (5, 7), (6, 5), (7, 6), (7, 8), (8, 2),
)


def eight_vertex():
    """Fixed directed 8-vertex benchmark graph with known rank degeneracies."""
    return Graph(8, frozenset(_EIGHT_VERTEX_EDGES), True)


def random_orientation(g, seed):
    """Replace each undirected edge by one orientation, chosen uniformly."""
    if g.directed:
        raise GraphError("random_orientation expects an undirected graph")
    rng = np.random.default_rng(seed)
    edges = set()
    for (u, v) in sorted(g.edges):
        if u > v:
            continue
        edges.add((u, v) if rng.random() < 0.5 else (v, u))
    return Graph(g.vertex_count, frozenset(edges), True, g.coords)


def save_edgelist(g, path):
    """Write a graph in the plain edge-list text format.

    Line 1 is the vertex count, then one "u v" line per stored directed edge
    (undirected graphs emit each edge once, lower endpoint first).  Spatial
    coordinates append as a "#coords" block.
    """
    lines = [str(g.vertex_count)]
    if g.directed:
        pairs = sorted(g.edges)
    else:
        pairs = sorted((u, v) for (u, v) in g.edges if u < v)
    lines.extend(f"{u} {v}" for (u, v) in pairs)
    if not g.directed:
        lines.append("#undirected")
    if g.coords is not None:
        lines.append("#coords")
        lines.extend(f"{x!r} {y!r}" for (x, y) in g.coords)
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_edgelist(path):
    """Parse the edge-list format written by :func:`save_edgelist`."""
    with open(path) as fh:
        raw = fh.read().splitlines()
    if not raw:
        raise EdgeListParseError("empty file", 1)
    try:
        n = int(raw[0])
    except ValueError:
        raise EdgeListParseError(f"expected vertex count, got {raw[0]!r}", 1)
    if n < 1:
        raise EdgeListParseError(f"vertex count must be >= 1, got {n}", 1)
    edges = set()
    directed = True
    coords = None
    i = 1
    while i < len(raw):
        line = raw[i]
        lineno = i + 1
        if line == "#undirected":
            directed = False
            i += 1
            continue
        if line == "#coords":
            block = raw[i + 1 : i + 1 + n]
            if len(block) != n:
                raise EdgeListParseError(
                    f"#coords block needs {n} lines", lineno
                )
            coords = []
            for j, cline in enumerate(block):
                parts = cline.split()
                if len(parts) != 2:
                    raise EdgeListParseError(
                        f"bad coordinate line {cline!r}", lineno + 1 + j
                    )
                coords.append((float(parts[0]), float(parts[1])))
            coords = tuple(coords)
            i += 1 + n
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(f"non-integer vertex in {line!r}", lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise EdgeListParseError(
                f"vertex id out of range 1..{n} in {line!r}", lineno
            )
        if u == v:
            raise EdgeListParseError(f"self-loop {line!r}", lineno)
        if (u, v) in edges:
            raise EdgeListParseError(f"duplicate edge {line!r}", lineno)
        edges.add((u, v))
        i += 1
    if directed:
        return Graph(n, frozenset(edges), True, coords)
    sym = set()
    for (u, v) in edges:
        sym.add((u, v))
        sym.add((v, u))
    return Graph(n, frozenset(sym), False, coords)
