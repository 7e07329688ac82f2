"""Exact colouring, homomorphism search and colour-criticality."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .graph import Graph, bits


@dataclass(frozen=True)
class Coloring:
    """A proper colouring; ``assignment[v]`` is the colour of ``v`` in ``0..k-1``."""

    assignment: tuple[int, ...]
    k: int

    def classes(self) -> list[int]:
        out = [0] * self.k
        for v, c in enumerate(self.assignment):
            out[c] |= 1 << v
        return out

    def is_proper_for(self, g: Graph) -> bool:
        return len(self.assignment) == g.n and all(
            self.assignment[u] != self.assignment[v] for u, v in g.edges()
        )


def find_coloring(g: Graph, k: int) -> Coloring | None:
    """Return a proper ``k``-colouring of ``g`` or ``None``.

    DSatur-style backtracking: always branch on the uncoloured vertex with
    the fewest available colours, and never open more than one new colour
    per step (colour symmetry breaking).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    n = g.n
    if n == 0:
        return Coloring((), k)
    adj = g.adj
    colour = [-1] * n
    classes = [0] * k
    deg = [row.bit_count() for row in adj]

    def solve(uncoloured: int, used: int) -> bool:
        if not uncoloured:
            return True
        best = -1
        best_free = k + 1
        best_deg = -1
        for v in bits(uncoloured):
            row = adj[v]
            free = 0
            for c in range(used):
                if not classes[c] & row:
                    free += 1
            if used < k:
                free += 1
            if free < best_free or (free == best_free and deg[v] > best_deg):
                best, best_free, best_deg = v, free, deg[v]
                if free == 0:
                    return False
        v = best
        row = adj[v]
        rest = uncoloured & ~(1 << v)
        for c in range(min(used + 1, k)):
            if classes[c] & row:
                continue
            classes[c] |= 1 << v
            colour[v] = c
            if solve(rest, max(used, c + 1)):
                return True
            classes[c] &= ~(1 << v)
        colour[v] = -1
        return False

    if solve(g.vertex_mask, 0):
        return Coloring(tuple(colour), k)
    return None


def is_colourable(g: Graph, k: int) -> bool:
    return find_coloring(g, k) is not None


def chromatic_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    k = 1
    while find_coloring(g, k) is None:
        k += 1
    return k


def find_homomorphism(g: Graph, h: Graph) -> dict[int, int] | None:
    """A map ``V(g) -> V(h)`` sending edges to edges, or ``None`` if none exists."""
    if g.n == 0:
        return {}
    if h.n == 0:
        return None
    order = _connected_order(g)
    image = [-1] * g.n
    hadj = h.adj

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        cand = h.vertex_mask
        for u in bits(g.adj[v]):
            if image[u] >= 0:
                cand &= hadj[image[u]]
        for w in bits(cand):
            image[v] = w
            if extend(i + 1):
                return True
        image[v] = -1
        return False

    if extend(0):
        return dict(enumerate(image))
    return None


def is_homomorphism(g: Graph, h: Graph, phi: dict[int, int] | Sequence[int]) -> bool:
    return all(h.has_edge(phi[u], phi[v]) for u, v in g.edges())


def _connected_order(g: Graph) -> list[int]:
    """Vertices ordered so each one has as many earlier neighbours as possible."""
    remaining = g.vertex_mask
    placed = 0
    order = []
    while remaining:
        best = max(
            bits(remaining),
            key=lambda v: ((g.adj[v] & placed).bit_count(), g.adj[v].bit_count(), -v),
        )
        order.append(best)
        placed |= 1 << best
        remaining &= ~(1 << best)
    return order


@dataclass(frozen=True)
class CriticalityVerdict:
    """Outcome of a k-criticality test.

    Exactly one witness field is populated when ``is_critical`` is false:
    ``coloring`` when ``g`` itself is (k-1)-colourable, ``edge`` when some
    ``g - e`` is still not (k-1)-colourable, ``isolated`` when an isolated
    vertex could be dropped.  For critical graphs ``edge_colorings`` holds a
    (k-1)-colouring of ``g - e`` for each edge, in ``g.edges()`` order.
    """

    is_critical: bool
    k: int
    coloring: Coloring | None = None
    edge: tuple[int, int] | None = None
    isolated: int | None = None
    edge_colorings: tuple[Coloring, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.is_critical


def is_k_critical(g: Graph, k: int) -> CriticalityVerdict:
    if k < 2:
        raise ValueError("k must be at least 2")
    col = find_coloring(g, k - 1)
    if col is not None:
        return CriticalityVerdict(False, k, coloring=col)
    for v in range(g.n):
        if not g.adj[v]:
            return CriticalityVerdict(False, k, isolated=v)
    witnesses = []
    for u, v in g.edges():
        c = find_coloring(g.remove_edge(u, v), k - 1)
        if c is None:
            return CriticalityVerdict(False, k, edge=(u, v))
        witnesses.append(c)
    return CriticalityVerdict(True, k, edge_colorings=tuple(witnesses))


def is_critical(g: Graph, k: int = 4) -> bool:
    """Boolean shortcut with cheap necessary conditions checked first."""
    if g.n < k or g.min_degree() < k - 1:
        return False
    return is_k_critical(g, k).is_critical


def identifiable_pairs(r: Graph, k: int = 4) -> set[tuple[int, int]]:
    """Nonadjacent pairs ``(u, v)``, ``u < v``, with ``r + uv`` not (k-1)-colourable."""
    out = set()
    for u, v in combinations(range(r.n), 2):
        if r.has_edge(u, v):
            continue
        if find_coloring(r.add_edge(u, v), k - 1) is None:
            out.add((u, v))
    return out


@dataclass(frozen=True)
class GallaiReport:
    """Sub-checks for a cycle of degree-3 vertices in a 4-critical graph."""

    cycle: tuple[int, ...]
    odd: bool
    boundary: tuple[int, ...]
    independent: bool
    adjacent_pair: tuple[int, int] | None
    monochromatic: bool
    split_coloring: dict[int, int] | None

    @property
    def passed(self) -> bool:
        return self.odd and self.independent and self.monochromatic


def _check_cycle(g: Graph, c: Sequence[int]) -> None:
    if len(c) < 3 or len(set(c)) != len(c):
        raise ValueError("cycle must list at least three distinct vertices")
    for i, v in enumerate(c):
        if not 0 <= v < g.n:
            raise ValueError(f"cycle vertex {v} not in graph")
        if not g.has_edge(v, c[(i + 1) % len(c)]):
            raise ValueError(f"cycle edge {v}{c[(i + 1) % len(c)]} missing from graph")
        if g.degree(v) != 3:
            raise ValueError(f"cycle vertex {v} has degree {g.degree(v)}, not three")


def gallai_cycle_check(g: Graph, c: Sequence[int]) -> GallaiReport:
    """Check parity, independence of N(C), and the forced colour on N(C).

    The third sub-check uses that N(C) is monochromatic in every
    3-colouring of ``g - C`` iff ``g - C + ab`` is not 3-colourable for
    every pair ``a, b`` in N(C); a counterexample colouring is returned
    otherwise.
    """
    if not is_critical(g, 4):
        raise ValueError("premise failed: graph is not 4-critical")
    _check_cycle(g, c)
    cmask = 0
    for v in c:
        cmask |= 1 << v
    boundary_mask = 0
    for v in c:
        boundary_mask |= g.adj[v]
    boundary_mask &= ~cmask
    boundary = tuple(bits(boundary_mask))
    adjacent_pair = None
    for a, b in combinations(boundary, 2):
        if g.has_edge(a, b):
            adjacent_pair = (a, b)
            break
    rest = [v for v in range(g.n) if not cmask >> v & 1]
    index = {v: i for i, v in enumerate(rest)}
    h = g.induced(rest)
    split = None
    for a, b in combinations(boundary, 2):
        if g.has_edge(a, b):
            col = find_coloring(h, 3)
        else:
            col = find_coloring(h.add_edge(index[a], index[b]), 3)
        if col is not None:
            split = {v: col.assignment[i] for v, i in index.items()}
            break
    return GallaiReport(
        cycle=tuple(c),
        odd=len(c) % 2 == 1,
        boundary=boundary,
        independent=adjacent_pair is None,
        adjacent_pair=adjacent_pair,
        monochromatic=split is None,
        split_coloring=split,
    )
