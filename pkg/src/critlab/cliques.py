"""Clique packings, kites, foundational edges, M-gadgets and the degree-3 subgraph."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterator

from .graph import Graph, bits, mask_of


def cliques_of_order(g: Graph, r: int) -> list[int]:
    """All ``r``-cliques of ``g`` as vertex bitsets, in lexicographic order."""
    if r < 1:
        raise ValueError("clique order must be positive")
    out: list[int] = []

    def grow(mask: int, cand: int, size: int) -> None:
        if size == r:
            out.append(mask)
            return
        for v in bits(cand):
            grow(mask | (1 << v), cand & g.adj[v] & ~((2 << v) - 1), size + 1)

    grow(0, g.vertex_mask, 0)
    return out


@dataclass(frozen=True)
class CliquePacking:
    """A maximum family of vertex-disjoint ``r``-cliques."""

    cliques: tuple[tuple[int, ...], ...]
    r: int

    @property
    def size(self) -> int:
        return len(self.cliques)

    def is_valid_for(self, g: Graph) -> bool:
        used = 0
        for c in self.cliques:
            m = mask_of(c)
            if len(c) != self.r or m & used:
                return False
            if any(not g.has_edge(u, v) for u, v in combinations(c, 2)):
                return False
            used |= m
        return True


def _max_disjoint(cands: list[int], r: int) -> list[int]:
    """Maximum set of pairwise disjoint masks from ``cands`` (all of popcount ``r``)."""
    best: list[int] = []
    chosen: list[int] = []

    def go(avail: list[int]) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = chosen[:]
        if not avail:
            return
        union = 0
        for c in avail:
            union |= c
        if len(chosen) + min(len(avail), union.bit_count() // r) <= len(best):
            return
        low = union & -union
        with_v = [c for c in avail if c & low]
        without_v = [c for c in avail if not c & low]
        for c in with_v:
            chosen.append(c)
            go([d for d in without_v if not d & c])
            chosen.pop()
        go(without_v)

    go(cands)
    return best


def _packing(cands: list[int], r: int) -> CliquePacking:
    chosen = _max_disjoint(cands, r)
    return CliquePacking(tuple(tuple(bits(c)) for c in sorted(chosen)), r)


def clique_packing(g: Graph, r: int = 3) -> CliquePacking:
    """Exact maximum packing of vertex-disjoint ``r``-cliques (branch and bound)."""
    if r < 2:
        raise ValueError("clique order must be at least 2")
    return _packing(cliques_of_order(g, r), r)


def packing_number(g: Graph, r: int = 3) -> int:
    """``T^r(g)``: the maximum number of vertex-disjoint ``K_r`` subgraphs."""
    return clique_packing(g, r).size


def packing_avoiding(
    g: Graph,
    r: int = 3,
    *,
    vertices: tuple[int, ...] | list[int] = (),
    edge: tuple[int, int] | None = None,
) -> CliquePacking:
    """Maximum packing using no clique that meets ``vertices`` or contains ``edge``."""
    bad_v = mask_of(vertices)
    bad_e = mask_of(edge) if edge is not None else 0
    cands = [
        c for c in cliques_of_order(g, r)
        if not c & bad_v and (not bad_e or c & bad_e != bad_e)
    ]
    return _packing(cands, r)


def packing_oracle(g: Graph, r: int = 3) -> int:
    """Exponential reference: try every subfamily of the clique list, no pruning."""
    cands = cliques_of_order(g, r)
    best = 0

    def go(i: int, used: int, count: int) -> None:
        nonlocal best
        if i == len(cands):
            best = max(best, count)
            return
        if not cands[i] & used:
            go(i + 1, used | cands[i], count + 1)
        go(i + 1, used, count)

    go(0, 0, 0)
    return best


# kites and K4 - e -----------------------------------------------------


@dataclass(frozen=True)
class Kite:
    """A K4-e subgraph whose two spar vertices have degree three in the host.

    ``missing`` is the pair absent from the K4-e; it may still be an edge of
    the host when the four vertices induce K4.
    """

    vertices: tuple[int, int, int, int]
    spar: tuple[int, int]
    missing: tuple[int, int]

    def edges(self) -> set[tuple[int, int]]:
        s = set()
        for u, v in combinations(self.vertices, 2):
            if (u, v) != self.missing:
                s.add((u, v))
        return s


def _diamonds(g: Graph) -> Iterator[tuple[tuple[int, int], tuple[int, int]]]:
    """Yield ``(spar, tips)`` for every K4-e subgraph; the spar is unique per subgraph."""
    for c, d in g.edges():
        common = g.adj[c] & g.adj[d]
        for a, b in combinations(bits(common), 2):
            yield (c, d), (a, b)


def find_kites(g: Graph) -> list[Kite]:
    out = []
    for (c, d), (a, b) in _diamonds(g):
        if g.degree(c) == 3 and g.degree(d) == 3:
            out.append(Kite(tuple(sorted((a, b, c, d))), (c, d), (a, b)))
    return out


def has_kite(g: Graph) -> bool:
    for c, d in g.edges():
        if g.adj[c].bit_count() == 3 and g.adj[d].bit_count() == 3:
            if (g.adj[c] & g.adj[d]).bit_count() >= 2:
                return True
    return False


def kite_spars(g: Graph) -> set[tuple[int, int]]:
    return {k.spar for k in find_kites(g)}


def find_k4_minus_e(g: Graph) -> list[tuple[int, int, int, int]]:
    """Vertex 4-sets containing K4-e as a (not necessarily induced) subgraph."""
    found = {tuple(sorted((a, b, c, d))) for (c, d), (a, b) in _diamonds(g)}
    return sorted(found)


def has_k4_minus_e(g: Graph) -> bool:
    return any((g.adj[c] & g.adj[d]).bit_count() >= 2 for c, d in g.edges())


# foundational edges ---------------------------------------------------


class Regime(str, Enum):
    FOUR_ORE_T3 = "FourOreT3"
    CLASS_B = "ClassB"


@dataclass(frozen=True)
class FoundationalEdge:
    edge: tuple[int, int]
    regime: Regime


def is_foundational(g: Graph, edge: tuple[int, int], regime: Regime) -> bool:
    h = g.remove_edge(*edge)
    if regime is Regime.FOUR_ORE_T3:
        return packing_number(h, 3) == 2 and not has_kite(h)
    return packing_number(h, 3) == 1 and not has_k4_minus_e(h)


def foundational_edges(g: Graph, regime: Regime | str, *, check: bool = True) -> list[FoundationalEdge]:
    """Foundational edges of ``g`` under ``regime``.

    With ``check`` the regime's premise is verified first: a 4-Ore graph
    with three disjoint triangles, or a member of class B.
    """
    regime = Regime(regime)
    if check:
        from . import ore

        if regime is Regime.FOUR_ORE_T3:
            if packing_number(g, 3) != 3:
                raise ValueError("FourOreT3 regime needs a triangle packing number of 3")
            if ore.is_k_ore(g, 4) is None:
                raise ValueError("FourOreT3 regime needs a 4-Ore graph")
        elif not ore.is_class_b(g):
            raise ValueError("ClassB regime needs a member of class B")
    return [FoundationalEdge(e, regime) for e in g.edges() if is_foundational(g, e, regime)]


# M-gadgets ------------------------------------------------------------


@dataclass(frozen=True)
class MGadget:
    vertices: tuple[int, ...]
    end: int
    split_pair: tuple[int, int]


def m_gadget_templates() -> list[tuple[Graph, int, tuple[int, int]]]:
    """Every M-gadget up to labelling: ``(graph, end, (v1, v2))``.

    The Moser spindle's degree-4 vertex is split over all bipartitions of
    its neighbourhood into nonempty parts, keeping those that leave no K4-e;
    the end vertex is then joined to both halves.
    """
    from .canon import canonical_key
    from .catalog import catalog
    from .ore import split_vertex, SplitSpec

    m = catalog("MoserSpindle")
    hub = next(v for v in range(m.n) if m.degree(v) == 4)
    nbrs = m.neighbors(hub)
    out = []
    seen = set()
    for size in range(1, len(nbrs)):
        for part1 in combinations(nbrs, size):
            part2 = tuple(v for v in nbrs if v not in part1)
            if part1 > part2:
                continue
            split = split_vertex(m, SplitSpec(hub, frozenset(part1), frozenset(part2)))
            if has_k4_minus_e(split.graph):
                continue
            v1, v2 = split.z1, split.z2
            gadget = split.graph.add_vertex((1 << v1) | (1 << v2))
            key = canonical_key(gadget)
            if key in seen:
                continue
            seen.add(key)
            out.append((gadget, gadget.n - 1, (v1, v2)))
    return out


def subgraph_embeddings(pattern: Graph, host: Graph, induced: bool = True) -> Iterator[tuple[int, ...]]:
    """Injective maps ``pattern -> host`` preserving edges (and non-edges if ``induced``)."""
    order = sorted(range(pattern.n), key=lambda v: -pattern.degree(v))
    # prefer an order where each vertex touches an earlier one
    placed: list[int] = []
    rest = set(order)
    while rest:
        nxt = max(rest, key=lambda v: (sum(pattern.has_edge(v, u) for u in placed), pattern.degree(v), -v))
        placed.append(nxt)
        rest.remove(nxt)
    image = [-1] * pattern.n
    used = 0
    pdeg = pattern.degrees()
    hdeg = host.degrees()

    def go(i: int) -> Iterator[tuple[int, ...]]:
        nonlocal used
        if i == len(placed):
            yield tuple(image)
            return
        v = placed[i]
        cand = host.vertex_mask & ~used
        for u in bits(pattern.adj[v]):
            if image[u] >= 0:
                cand &= host.adj[image[u]]
        if induced:
            for u in range(pattern.n):
                if image[u] >= 0 and not pattern.has_edge(u, v):
                    cand &= ~host.adj[image[u]]
        for w in bits(cand):
            if hdeg[w] < pdeg[v]:
                continue
            image[v] = w
            used |= 1 << w
            yield from go(i + 1)
            used &= ~(1 << w)
            image[v] = -1

    yield from go(0)


def find_m_gadgets(g: Graph, induced: bool = True) -> list[MGadget]:
    if g.n < 9:
        return []
    found = {}
    for tmpl, end, (v1, v2) in m_gadget_templates():
        for emb in subgraph_embeddings(tmpl, g, induced):
            verts = tuple(sorted(emb))
            pair = tuple(sorted((emb[v1], emb[v2])))
            key = (verts, emb[end], pair)
            found.setdefault(key, MGadget(verts, emb[end], pair))
    return [found[k] for k in sorted(found)]


# degree-3 subgraph ----------------------------------------------------


@dataclass(frozen=True)
class D3Component:
    vertices: tuple[int, ...]
    shape: str  # isolated | path | star | tree | cyclic


@dataclass(frozen=True)
class D3:
    """``D_3(g)``: the subgraph induced by degree-3 vertices (original labels kept)."""

    vertices: tuple[int, ...]
    graph: Graph
    components: tuple[D3Component, ...]

    def isolated(self) -> set[int]:
        return {c.vertices[0] for c in self.components if c.shape == "isolated"}


def _shape(g: Graph, comp: int) -> str:
    size = comp.bit_count()
    if size == 1:
        return "isolated"
    edges = sum((g.adj[v] & comp).bit_count() for v in bits(comp)) // 2
    if edges >= size:
        return "cyclic"
    degs = sorted((g.adj[v] & comp).bit_count() for v in bits(comp))
    if degs[-1] <= 2:
        return "path"
    if degs[-2] == 1:
        return "star"
    return "tree"


def degree3_subgraph(g: Graph) -> D3:
    verts = tuple(v for v in range(g.n) if g.degree(v) == 3)
    within = mask_of(verts)
    comps = tuple(
        D3Component(tuple(bits(c)), _shape(g, c))
        for c in sorted(g.components(within), key=lambda m: (m & -m))
    )
    return D3(verts, g.induced(verts), comps)


def cycles(g: Graph, within: int | None = None, induced: bool = False) -> list[tuple[int, ...]]:
    """Every cycle of ``g[within]`` once, starting at its least vertex, second vertex < last."""
    within = g.vertex_mask if within is None else within
    out = []
    for start in bits(within):
        allowed = within & ~((1 << start) - 1)
        path = [start]

        def extend(v: int, seen: int) -> None:
            for w in bits(g.adj[v] & allowed):
                if w == start and len(path) >= 3 and path[1] < path[-1]:
                    out.append(tuple(path))
                elif not seen >> w & 1:
                    path.append(w)
                    extend(w, seen | (1 << w))
                    path.pop()

        extend(start, 1 << start)
    if induced:
        out = [c for c in out if sum((g.adj[v] & mask_of(c)).bit_count() for v in c) == 2 * len(c)]
    return out


def degree3_cycles(g: Graph, induced: bool = True) -> list[tuple[int, ...]]:
    within = mask_of(v for v in range(g.n) if g.degree(v) == 3)
    return cycles(g, within, induced)
