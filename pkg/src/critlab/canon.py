"""Canonical labelling by partition refinement and individualisation.

The search follows the usual McKay scheme: refine an ordered partition to
an equitable one, individualise a vertex of the first non-singleton cell,
and recurse.  Every discrete leaf gives a relabelled adjacency certificate;
the largest certificate is canonical.  Leaves with equal certificates yield
automorphisms, which prune children lying in an already explored orbit of
the pointwise stabiliser of the current prefix.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .graph import Graph, bits
from .graph6 import to_graph6


@dataclass(frozen=True)
class CanonicalForm:
    """``bytes`` is the graph6 text of the canonical relabelling.

    ``labeling[v]`` is the canonical label of input vertex ``v``.
    """

    bytes: str
    labeling: tuple[int, ...]


def _refine(adj: tuple[int, ...], cells: list[list[int]], queue: list[int]) -> list[list[int]]:
    """Refine ``cells`` to the coarsest equitable partition below it.

    ``queue`` holds indices of cells to use as splitters.  Fragments keep
    their position in the cell order and are ordered by neighbour count, so
    the result commutes with relabelling.
    """
    cells = [c[:] for c in cells]
    in_queue = set(queue)
    queue = list(queue)
    while queue and len(cells) < len(adj):
        w = queue.pop(0)
        in_queue.discard(w)
        wmask = 0
        for x in cells[w]:
            wmask |= 1 << x
        i = 0
        while i < len(cells):
            cell = cells[i]
            if len(cell) == 1:
                i += 1
                continue
            counts = {}
            for x in cell:
                counts.setdefault((adj[x] & wmask).bit_count(), []).append(x)
            if len(counts) == 1:
                i += 1
                continue
            frags = [counts[k] for k in sorted(counts)]
            cells[i:i + 1] = frags
            shift = len(frags) - 1
            # indices after i move right
            queue = [q + shift if q > i else q for q in queue]
            in_queue = set(queue)
            if i in in_queue:
                extra = range(i + 1, i + len(frags))
            else:
                extra = range(i, i + len(frags))
            for j in extra:
                if j not in in_queue:
                    queue.append(j)
                    in_queue.add(j)
            if w > i:
                w += shift
            i += len(frags)
    return cells


def _certificate(adj: tuple[int, ...], order: list[int]) -> tuple[int, ...]:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    cert = []
    for v in order:
        row = 0
        for u in bits(adj[v]):
            row |= 1 << pos[u]
        cert.append(row)
    return tuple(cert)


def _orbits_of(gens: list[tuple[int, ...]], n: int) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x in range(n):
            a, b = find(x), find(g[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(x) for x in range(n)]


class _Search:
    def __init__(self, g: Graph) -> None:
        self.adj = g.adj
        self.n = g.n
        self.best_cert: tuple[int, ...] | None = None
        self.best_order: list[int] | None = None
        self.first_cert: tuple[int, ...] | None = None
        self.first_order: list[int] | None = None
        self.autos: list[tuple[int, ...]] = []
        self._auto_set: set[tuple[int, ...]] = set()

    def _record_auto(self, order_a: list[int], order_b: list[int]) -> None:
        gamma = list(range(self.n))
        for a, b in zip(order_a, order_b):
            gamma[a] = b
        gamma_t = tuple(gamma)
        if gamma_t not in self._auto_set and gamma_t != tuple(range(self.n)):
            self._auto_set.add(gamma_t)
            self.autos.append(gamma_t)

    def run(self) -> list[int]:
        cells = _refine(self.adj, [list(range(self.n))], [0])
        self._visit(cells, [])
        assert self.best_order is not None
        return self.best_order

    def _visit(self, cells: list[list[int]], prefix: list[int]) -> None:
        if len(cells) == self.n:
            order = [c[0] for c in cells]
            cert = _certificate(self.adj, order)
            if self.first_cert is None:
                self.first_cert, self.first_order = cert, order
                self.best_cert, self.best_order = cert, order
                return
            if cert == self.first_cert:
                self._record_auto(self.first_order, order)
            if cert == self.best_cert:
                self._record_auto(self.best_order, order)
            elif cert > self.best_cert:
                self.best_cert, self.best_order = cert, order
            return
        t = next(i for i, c in enumerate(cells) if len(c) > 1)
        target = sorted(cells[t])
        explored: list[int] = []
        seen_autos = 0
        orb: list[int] | None = None
        for v in target:
            if explored and self.autos:
                if len(self.autos) != seen_autos:
                    seen_autos = len(self.autos)
                    stab = [a for a in self.autos if all(a[p] == p for p in prefix)]
                    orb = _orbits_of(stab, self.n) if stab else None
                if orb is not None and any(orb[v] == orb[u] for u in explored):
                    continue
            explored.append(v)
            child = cells[:t] + [[v], [x for x in cells[t] if x != v]] + cells[t + 1:]
            self._visit(_refine(self.adj, child, [t]), prefix + [v])


def canonical_order(g: Graph) -> list[int]:
    """Vertices listed in canonical order (position i holds canonical label i)."""
    if g.n <= 1:
        return list(range(g.n))
    return _Search(g).run()


def canonical(g: Graph) -> CanonicalForm:
    order = canonical_order(g)
    labeling = [0] * g.n
    for i, v in enumerate(order):
        labeling[v] = i
    return CanonicalForm(to_graph6(g.relabel(labeling)), tuple(labeling))


def canonical_key(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Hashable isomorphism-class key; cheaper than ``canonical`` when no text is needed."""
    if g.n <= 1:
        return (g.n, g.adj)
    order = _Search(g).run()
    return (g.n, _certificate(g.adj, order))


def canonical_with_orbits(g: Graph) -> tuple[list[int], list[int]]:
    """Canonical vertex order plus the automorphism-orbit representative of each vertex."""
    if g.n <= 1:
        return list(range(g.n)), list(range(g.n))
    search = _Search(g)
    order = search.run()
    return order, _orbits_of(search.autos, g.n)


def automorphism_generators(g: Graph) -> list[tuple[int, ...]]:
    if g.n <= 1:
        return []
    search = _Search(g)
    search.run()
    return list(search.autos)


def canonical_bruteforce(g: Graph) -> str:
    """All-permutations oracle for small graphs: max certificate over n! orderings."""
    if g.n > 8:
        raise ValueError("brute-force canonical form is limited to 8 vertices")
    best = None
    best_order = None
    for order in permutations(range(g.n)):
        cert = _certificate(g.adj, list(order))
        if best is None or cert > best:
            best, best_order = cert, list(order)
    labeling = [0] * g.n
    for i, v in enumerate(best_order or []):
        labeling[v] = i
    return to_graph6(g.relabel(labeling))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.e != h.e or g.degree_sequence() != h.degree_sequence():
        return False
    return canonical_key(g) == canonical_key(h)
