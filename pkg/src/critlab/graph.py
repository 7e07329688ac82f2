"""Small simple undirected graphs with one integer bitset per vertex."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 62


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``adj[v]`` is the neighbour bitset of ``v``.  Construction validates
    symmetry and the absence of loops, so every ``Graph`` in circulation is
    a well-formed simple graph.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside the graph")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")

    # construction -----------------------------------------------------

    @classmethod
    def _trusted(cls, n: int, adj: tuple[int, ...]) -> Graph:
        # skips validation; only for rows built from an already valid graph
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        return g

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls.from_edges(n, combinations(range(n), 2))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    # basic queries ----------------------------------------------------

    @property
    def v(self) -> int:
        return self.n

    @property
    def e(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(self.degrees(), reverse=True))

    # derived graphs ---------------------------------------------------

    def add_edge(self, u: int, v: int) -> Graph:
        if u == v:
            raise ValueError("cannot add a loop")
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.n, tuple(adj))

    def remove_edge(self, u: int, v: int) -> Graph:
        if not self.has_edge(u, v):
            raise ValueError(f"{u}{v} is not an edge")
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.n, tuple(adj))

    def add_vertex(self, neighbours: int) -> Graph:
        """Append vertex ``n`` adjacent to the bitset ``neighbours``."""
        adj = [row | ((neighbours >> u & 1) << self.n) for u, row in enumerate(self.adj)]
        adj.append(neighbours)
        return Graph._trusted(self.n + 1, tuple(adj))

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph, relabelled in increasing order of the kept vertices."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        kmask = mask_of(keep)
        adj = []
        for v in keep:
            row = 0
            for u in bits(self.adj[v] & kmask):
                row |= 1 << index[u]
            adj.append(row)
        return Graph._trusted(len(keep), tuple(adj))

    def induced_mask(self, mask: int) -> Graph:
        return self.induced(bits(mask))

    def remove_vertices(self, vertices: Iterable[int]) -> Graph:
        drop = mask_of(vertices)
        return self.induced(v for v in range(self.n) if not drop >> v & 1)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph in which old vertex ``v`` becomes ``perm[v]``."""
        adj = [0] * self.n
        for v, row in enumerate(self.adj):
            new = 0
            for u in bits(row):
                new |= 1 << perm[u]
            adj[perm[v]] = new
        return Graph._trusted(self.n, tuple(adj))

    def identify(self, u: int, v: int) -> Graph:
        """Merge ``v`` into ``u`` and drop ``v``; requires ``u``, ``v`` nonadjacent."""
        if self.has_edge(u, v):
            raise ValueError("cannot identify adjacent vertices")
        adj = list(self.adj)
        merged = adj[u] | adj[v]
        for w in bits(adj[v]):
            adj[w] |= 1 << u
        adj[u] = merged
        g = Graph(self.n, tuple(a & ~(1 << v) if i != v else 0 for i, a in enumerate(adj)))
        return g.remove_vertices([v])

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return self.component_mask(0) == self.vertex_mask

    def component_mask(self, start: int, within: int | None = None) -> int:
        within = self.vertex_mask if within is None else within
        seen = 1 << start
        frontier = seen
        while frontier:
            nxt = 0
            for w in bits(frontier):
                nxt |= self.adj[w]
            nxt &= within & ~seen
            seen |= nxt
            frontier = nxt
        return seen

    def components(self, within: int | None = None) -> list[int]:
        """Connected components (as bitsets) of the subgraph induced by ``within``."""
        rest = self.vertex_mask if within is None else within
        comps = []
        while rest:
            start = (rest & -rest).bit_length() - 1
            comp = self.component_mask(start, rest)
            comps.append(comp)
            rest &= ~comp
        return comps

    def triangles(self) -> list[int]:
        """All triangles as 3-vertex bitsets, in increasing lexicographic order."""
        out = []
        for u in range(self.n):
            higher = self.adj[u] >> (u + 1) << (u + 1)
            for v in bits(higher):
                for w in bits(higher & self.adj[v] >> (v + 1) << (v + 1)):
                    out.append((1 << u) | (1 << v) | (1 << w))
        return out

    def has_triangle(self) -> bool:
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1) << (u + 1)):
                if self.adj[u] & self.adj[v]:
                    return True
        return False

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"
