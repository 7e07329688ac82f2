"""Isomorph-free generation of small graphs by canonical augmentation.

Graphs on ``m`` vertices are produced from the representatives on ``m - 1``
vertices by appending a vertex with every possible neighbourhood.  A child
is kept only if the appended vertex lies in the automorphism orbit of the
child's canonical deletion vertex, so each isomorphism class has exactly
one parent class; isomorphic siblings from the same parent are removed
with a per-parent set of canonical keys.
"""

from __future__ import annotations

from math import comb, factorial, gcd
from collections import Counter
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterator

from .canon import _certificate, canonical_with_orbits
from .graph import Graph, bits

MAX_BUILTIN_N = 10

Predicate = Callable[[Graph], bool]


class CapabilityError(RuntimeError):
    """Requested universe is beyond the built-in budget."""


def _invariant(g: Graph, v: int) -> tuple[int, int]:
    adj = g.adj
    return adj[v].bit_count(), sum(adj[u].bit_count() for u in bits(adj[v]))


def _accept(g: Graph) -> tuple[int, ...] | None:
    """Return the canonical certificate of ``g`` if its last vertex is a canonical deletion."""
    last = g.n - 1
    invs = [_invariant(g, v) for v in range(g.n)]
    top = max(invs)
    if invs[last] != top:
        return None
    order, orbits = canonical_with_orbits(g)
    cert = _certificate(g.adj, order)
    ties = [v for v in range(g.n) if invs[v] == top]
    if len(ties) > 1:
        pos = {v: i for i, v in enumerate(order)}
        chosen = max(ties, key=pos.__getitem__)
        if orbits[chosen] != orbits[last]:
            return None
    return cert


def _children(parent: Graph, keep: Predicate | None) -> Iterator[Graph]:
    seen: set[tuple[int, ...]] = set()
    for nbrs in range(1 << parent.n):
        child = parent.add_vertex(nbrs)
        if keep is not None and not keep(child):
            continue
        cert = _accept(child)
        if cert is None or cert in seen:
            continue
        seen.add(cert)
        yield child


def enumerate_graphs(
    n: int,
    filter: Predicate | None = None,
    hereditary: Predicate | None = None,
) -> Iterator[Graph]:
    """Yield one graph per isomorphism class on ``n`` vertices satisfying ``filter``.

    ``hereditary`` is an optional pruning predicate that must hold on every
    proper induced subgraph of every wanted graph (for instance
    3-colourability when the target is 4-critical graphs, or
    triangle-freeness).  It is applied to the intermediate orders only.
    """
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    if n > MAX_BUILTIN_N:
        raise CapabilityError(
            f"built-in enumeration stops at n={MAX_BUILTIN_N}; supply larger universes as graph6 files"
        )
    if n == 0:
        g = Graph.empty(0)
        if filter is None or filter(g):
            yield g
        return
    if n == 1:
        g = Graph.empty(1)
        if filter is None or filter(g):
            yield g
        return
    level = [Graph.empty(1)]
    for m in range(2, n):
        level = [c for p in level for c in _children(p, hereditary)]
    for parent in level:
        yield from _children(parent, filter)


def count_graphs_burnside(n: int) -> int:
    """Number of unlabelled graphs on ``n`` vertices via Burnside over cycle types of S_n.

    Independent of any canonical labelling; used as an oracle.
    """
    total = Fraction(0)
    for cycle_type in _partitions(n):
        counts = Counter(cycle_type)
        # number of permutations with this cycle type
        perms = factorial(n)
        for length, mult in counts.items():
            perms //= length ** mult * factorial(mult)
        # cycles induced on unordered pairs
        pair_cycles = 0
        for length in cycle_type:
            pair_cycles += length // 2  # pairs within one cycle
        for a, b in combinations(range(len(cycle_type)), 2):
            la, lb = cycle_type[a], cycle_type[b]
            pair_cycles += gcd(la, lb)
        total += perms * 2 ** pair_cycles
    result = total / factorial(n)
    assert result.denominator == 1
    return int(result)


def _partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def labelled_graph_count(n: int) -> int:
    return 2 ** comb(n, 2)
