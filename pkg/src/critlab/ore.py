"""Ore composition, vertex splitting, the k-Ore family and class B."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Iterator

from .canon import canonical, canonical_key, canonical_with_orbits, automorphism_generators
from .catalog import catalog
from .cliques import packing_avoiding, packing_number
from .enumerate import CapabilityError
from .graph import Graph, bits, mask_of
from .graph6 import from_graph6


@dataclass(frozen=True)
class SplitSpec:
    """Split ``z`` into ``z1`` (adjacent to ``part1``) and ``z2`` (adjacent to ``part2``)."""

    z: int
    part1: frozenset[int]
    part2: frozenset[int]

    def validate(self, g: Graph) -> None:
        if not 0 <= self.z < g.n:
            raise ValueError(f"split vertex {self.z} not in graph")
        if not self.part1 or not self.part2:
            raise ValueError("both split parts must be nonempty")
        if self.part1 & self.part2:
            raise ValueError("split parts overlap")
        if set(self.part1 | self.part2) != set(g.neighbors(self.z)):
            raise ValueError("split parts must cover exactly the neighbourhood of z")


@dataclass(frozen=True)
class Split:
    """Result of a split: ``z1`` keeps the old label, ``z2`` is the new last vertex."""

    graph: Graph
    z1: int
    z2: int


def split_vertex(g: Graph, spec: SplitSpec) -> Split:
    spec.validate(g)
    z = spec.z
    p2 = mask_of(spec.part2)
    adj = list(g.adj)
    new = g.n
    adj[z] = mask_of(spec.part1)
    for w in spec.part2:
        adj[w] = (adj[w] & ~(1 << z)) | (1 << new)
    adj.append(p2)
    return Split(Graph(g.n + 1, tuple(adj)), z, new)


def splits_of(g: Graph, v: int) -> Iterator[SplitSpec]:
    """Every split of ``v`` into two vertices of positive degree, unordered."""
    nbrs = g.neighbors(v)
    if len(nbrs) < 2:
        return
    first, rest = nbrs[0], nbrs[1:]
    # fix the first neighbour in part1 so {A, B} and {B, A} are produced once
    for size in range(0, len(rest)):
        for extra in combinations(rest, size):
            part1 = frozenset((first,) + extra)
            part2 = frozenset(nbrs) - part1
            yield SplitSpec(v, part1, part2)


def ordered_splits_of(g: Graph, v: int) -> Iterator[SplitSpec]:
    for s in splits_of(g, v):
        yield s
        yield SplitSpec(v, s.part2, s.part1)


@dataclass(frozen=True)
class OreComposition:
    """``edge_side - xy`` glued to ``split_side`` split at ``z`` with x=z1, y=z2.

    In ``result`` the edge side keeps its labels and the split side's
    vertices other than ``z`` follow in increasing order.
    """

    edge_side: Graph
    deleted_edge: tuple[int, int]
    split_side: Graph
    split: SplitSpec
    result: Graph
    split_side_map: tuple[int, ...]

    @property
    def identification(self) -> tuple[tuple[int, str], tuple[int, str]]:
        x, y = self.deleted_edge
        return (x, "z1"), (y, "z2")


def ore_compose(h1: Graph, xy: tuple[int, int], h2: Graph, spec: SplitSpec) -> OreComposition:
    x, y = xy
    if not h1.has_edge(x, y):
        raise ValueError(f"{xy} is not an edge of the edge side")
    spec.validate(h2)
    z = spec.z
    n1 = h1.n
    remap = [-1] * h2.n
    nxt = n1
    for w in range(h2.n):
        if w != z:
            remap[w] = nxt
            nxt += 1
    n = n1 + h2.n - 1
    adj = list(h1.adj) + [0] * (h2.n - 1)
    adj[x] &= ~(1 << y)
    adj[y] &= ~(1 << x)
    for a, b in h2.edges():
        if z in (a, b):
            continue
        adj[remap[a]] |= 1 << remap[b]
        adj[remap[b]] |= 1 << remap[a]
    for w, end in [(w, x) for w in spec.part1] + [(w, y) for w in spec.part2]:
        adj[remap[w]] |= 1 << end
        adj[end] |= 1 << remap[w]
    remap[z] = -1
    return OreComposition(h1, (x, y), h2, spec, Graph(n, tuple(adj)), tuple(remap))


def ky_potential(g: Graph) -> int:
    return 5 * g.n - 3 * g.e


def ore_edge_count(v: int, k: int) -> int | None:
    """Edge count of a k-Ore graph on ``v`` vertices, or ``None`` if not integral."""
    num = (k + 1) * (k - 2) * v - k * (k - 3)
    den = 2 * (k - 1)
    return num // den if num % den == 0 else None


def _edge_orbit_reps(g: Graph) -> list[tuple[int, int]]:
    gens = automorphism_generators(g)
    edges = g.edges()
    if not gens:
        return edges
    index = {e: i for i, e in enumerate(edges)}
    parent = list(range(len(edges)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for gamma in gens:
        for i, (u, v) in enumerate(edges):
            a, b = gamma[u], gamma[v]
            j = index[(min(a, b), max(a, b))]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    return [e for i, e in enumerate(edges) if find(i) == i]


def _vertex_orbit_reps(g: Graph) -> list[int]:
    _, orbits = canonical_with_orbits(g)
    return [v for v in range(g.n) if orbits[v] == v]


def all_compositions(h1: Graph, h2: Graph, *, reduce: bool = True) -> Iterator[OreComposition]:
    """Every composition with ``h1`` as edge side and ``h2`` as split side.

    With ``reduce`` the edge and split vertex range over automorphism orbit
    representatives; the results still cover every isomorphism class.
    """
    edges = _edge_orbit_reps(h1) if reduce else h1.edges()
    zs = _vertex_orbit_reps(h2) if reduce else range(h2.n)
    for x, y in edges:
        for z in zs:
            for spec in ordered_splits_of(h2, z):
                yield ore_compose(h1, (x, y), h2, spec)


def enumerate_compositions(h1: Graph, h2: Graph) -> Iterator[OreComposition]:
    """One composition per isomorphism class of result, ``h1`` on the edge side."""
    seen = set()
    for comp in all_compositions(h1, h2):
        key = canonical_key(comp.result)
        if key not in seen:
            seen.add(key)
            yield comp


# families -------------------------------------------------------------


@dataclass(frozen=True)
class Recipe:
    """How a family member was first obtained; graphs are parents' canonical graph6."""

    edge_side: str
    split_side: str
    edge: tuple[int, int]
    z: int
    part1: tuple[int, ...]
    part2: tuple[int, ...]

    def replay(self) -> Graph:
        comp = ore_compose(
            from_graph6(self.edge_side), self.edge, from_graph6(self.split_side),
            SplitSpec(self.z, frozenset(self.part1), frozenset(self.part2)),
        )
        return comp.result


@dataclass
class FamilyIndex:
    """Members of a family up to ``max_n`` vertices, keyed by canonical graph6."""

    family: str
    k: int
    max_n: int
    members: dict[str, Recipe | None] = field(default_factory=dict)
    complete: bool = True

    def graphs(self, n: int | None = None) -> list[Graph]:
        return [from_graph6(s) for s in self.sorted_keys() if n is None or ord(s[0]) - 63 == n]

    def sorted_keys(self) -> list[str]:
        return sorted(self.members, key=lambda s: (len(s), ord(s[0]), s))

    def __contains__(self, g: object) -> bool:
        if isinstance(g, Graph):
            return canonical(g).bytes in self.members
        return g in self.members

    def __len__(self) -> int:
        return len(self.members)

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for s in self.members:
            out[ord(s[0]) - 63] = out.get(ord(s[0]) - 63, 0) + 1
        return dict(sorted(out.items()))

    # persistence ------------------------------------------------------

    def save(self, directory: str | Path) -> None:
        d = Path(directory)
        d.mkdir(parents=True, exist_ok=True)
        keys = self.sorted_keys()
        (d / "members.g6").write_text("".join(k + "\n" for k in keys), encoding="ascii")
        prov = {
            "family": self.family,
            "k": self.k,
            "max_n": self.max_n,
            "complete": self.complete,
            "members": [
                {"graph6": key, "recipe": None if self.members[key] is None else _recipe_json(self.members[key])}
                for key in keys
            ],
        }
        (d / "provenance.json").write_text(json.dumps(prov, indent=1, sort_keys=True) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, directory: str | Path) -> FamilyIndex:
        d = Path(directory)
        keys = [line.strip() for line in (d / "members.g6").read_text(encoding="ascii").splitlines() if line.strip()]
        prov = json.loads((d / "provenance.json").read_text(encoding="utf-8"))
        recipes = {m["graph6"]: m["recipe"] for m in prov["members"]}
        if set(keys) != set(recipes):
            raise ValueError(f"{d}: members.g6 and provenance.json disagree")
        members = {k: None if recipes[k] is None else _recipe_from_json(recipes[k]) for k in keys}
        return cls(prov["family"], prov["k"], prov["max_n"], members, prov["complete"])


def _recipe_json(r: Recipe) -> dict:
    return {
        "edge_side": r.edge_side, "split_side": r.split_side, "edge": list(r.edge),
        "split": {"z": r.z, "part1": list(r.part1), "part2": list(r.part2)},
    }


def _recipe_from_json(d: dict) -> Recipe:
    s = d["split"]
    return Recipe(d["edge_side"], d["split_side"], tuple(d["edge"]), s["z"], tuple(s["part1"]), tuple(s["part2"]))


FAMILY_BUDGET = 14


def _canonical_graph(g: Graph) -> tuple[str, Graph]:
    key = canonical(g).bytes
    return key, from_graph6(key)


def _recipe(comp: OreComposition, edge_key: str, split_key: str) -> Recipe:
    s = comp.split
    return Recipe(edge_key, split_key, comp.deleted_edge, s.z, tuple(sorted(s.part1)), tuple(sorted(s.part2)))


def family_name(family: str, k: int = 4) -> str:
    f = family.lower().replace("-", "").replace("_", "")
    if f in ("classb", "b"):
        return "ClassB"
    if f.endswith("ore"):
        return f"kOre({k if f == 'kore' else int(f[:-3])})"
    raise ValueError(f"unknown family {family!r}")


def generate_family(family: str, max_n: int, k: int = 4, *, budget: int | None = None) -> FamilyIndex:
    """Closure of the family's base graph under composition, up to ``max_n`` vertices.

    ``family`` is ``"4ore"`` (or ``"kore"`` with ``k``) or ``"classb"``.
    ``budget`` caps the number of compositions tried; exceeding it raises
    ``CapabilityError`` whose ``partial`` attribute is the incomplete index.
    """
    name = family_name(family, k)
    if name == "ClassB":
        return _generate_class_b(max_n, budget)
    k = int(name[5:-1])
    if max_n > FAMILY_BUDGET:
        raise CapabilityError(f"family generation is capped at max_n={FAMILY_BUDGET}")
    index = FamilyIndex(name, k, max_n)
    base_key, base = _canonical_graph(Graph.complete(k))
    if max_n < k:
        return index
    index.members[base_key] = None
    tried = 0
    by_n: dict[int, list[tuple[str, Graph]]] = {k: [(base_key, base)]}
    for n in range(k + 1, max_n + 1):
        found: dict[str, Recipe] = {}
        for n1 in sorted(by_n):
            n2 = n + 1 - n1
            for key1, g1 in by_n[n1]:
                for key2, g2 in by_n.get(n2, []):
                    for comp in all_compositions(g1, g2):
                        tried += 1
                        if budget is not None and tried > budget:
                            index.members.update(found)
                            index.complete = False
                            exc = CapabilityError(f"composition budget {budget} exhausted at n={n}")
                            exc.partial = index  # type: ignore[attr-defined]
                            raise exc
                        key = canonical(comp.result).bytes
                        if key not in found and key not in index.members:
                            found[key] = _recipe(comp, key1, key2)
        if found:
            by_n[n] = [(key, from_graph6(key)) for key in sorted(found)]
            index.members.update(found)
    return index


def _generate_class_b(max_n: int, budget: int | None) -> FamilyIndex:
    if max_n > FAMILY_BUDGET:
        raise CapabilityError(f"family generation is capped at max_n={FAMILY_BUDGET}")
    index = FamilyIndex("ClassB", 4, max_n)
    if max_n < 8:
        return index
    ore4 = generate_family("4ore", max(max_n - 7, 4))
    ore_by_n: dict[int, list[tuple[str, Graph]]] = {}
    for key in ore4.sorted_keys():
        ore_by_n.setdefault(ord(key[0]) - 63, []).append((key, from_graph6(key)))
    t8_key, t8 = _canonical_graph(catalog("T8"))
    index.members[t8_key] = None
    b_by_n: dict[int, list[tuple[str, Graph]]] = {8: [(t8_key, t8)]}
    tried = 0
    for n in range(9, max_n + 1):
        found: dict[str, Recipe] = {}
        for nb in sorted(b_by_n):
            nh = n + 1 - nb
            for bkey, bg in b_by_n[nb]:
                for hkey, hg in ore_by_n.get(nh, []):
                    for g1, k1, g2, k2 in ((bg, bkey, hg, hkey), (hg, hkey, bg, bkey)):
                        for comp in all_compositions(g1, g2):
                            tried += 1
                            if budget is not None and tried > budget:
                                index.members.update(found)
                                index.complete = False
                                exc = CapabilityError(f"composition budget {budget} exhausted at n={n}")
                                exc.partial = index  # type: ignore[attr-defined]
                                raise exc
                            if packing_number(comp.result, 3) != 2:
                                continue
                            key = canonical(comp.result).bytes
                            if key not in found and key not in index.members:
                                found[key] = _recipe(comp, k1, k2)
        if found:
            b_by_n[n] = [(key, from_graph6(key)) for key in sorted(found)]
            index.members.update(found)
    return index


# recognition ----------------------------------------------------------


@dataclass(frozen=True)
class OreTree:
    """Decomposition of a k-Ore graph into copies of K_k.

    Leaves carry ``composition=None``.  For internal nodes ``graph`` is
    isomorphic to ``composition.result``.
    """

    graph: Graph
    composition: OreComposition | None = None
    edge_side: OreTree | None = None
    split_side: OreTree | None = None

    def leaves(self) -> int:
        if self.composition is None:
            return 1
        assert self.edge_side is not None and self.split_side is not None
        return self.edge_side.leaves() + self.split_side.leaves()


def two_cut_decompositions(g: Graph) -> Iterator[tuple[Graph, tuple[int, int], Graph, SplitSpec]]:
    """Candidate ``(h1, xy, h2, spec)`` with ``ore_compose`` isomorphic to ``g``.

    Every nonadjacent pair ``{a, b}`` whose removal disconnects ``g`` is
    tried with every grouping of the components into an edge side and a
    split side.
    """
    for a, b in combinations(range(g.n), 2):
        if g.has_edge(a, b):
            continue
        rest = g.vertex_mask & ~((1 << a) | (1 << b))
        comps = g.components(rest)
        if len(comps) < 2:
            continue
        for size in range(1, len(comps)):
            for side in combinations(range(len(comps)), size):
                amask = 0
                for i in side:
                    amask |= comps[i]
                bmask = rest & ~amask
                yield from _cut_pair(g, a, b, amask, bmask)


def _cut_pair(g: Graph, a: int, b: int, amask: int, bmask: int):
    # edge side: A + {a, b} + ab ; split side: B + z where z merges a and b
    na, nb = g.adj[a] & bmask, g.adj[b] & bmask
    if not na or not nb or na & nb:
        return
    keep1 = sorted(list(bits(amask)) + [a, b])
    idx1 = {v: i for i, v in enumerate(keep1)}
    h1 = g.induced(keep1).add_edge(idx1[a], idx1[b])
    keep2 = sorted(list(bits(bmask)) + [a])
    idx2 = {v: i for i, v in enumerate(keep2)}
    base = g.induced(keep2)
    adj = list(base.adj)
    za = idx2[a]
    for w in bits(nb):
        adj[za] |= 1 << idx2[w]
        adj[idx2[w]] |= 1 << za
    h2 = Graph(len(keep2), tuple(adj))
    spec = SplitSpec(za, frozenset(idx2[w] for w in bits(na)), frozenset(idx2[w] for w in bits(nb)))
    yield h1, (idx1[a], idx1[b]), h2, spec


def is_k_ore(g: Graph, k: int = 4, index: FamilyIndex | None = None) -> OreTree | None:
    """Decomposition tree witnessing that ``g`` is k-Ore, or ``None``."""
    if ore_edge_count(g.n, k) != g.e:
        return None
    if index is not None and index.k == k and index.family.startswith("kOre") and g.n <= index.max_n and index.complete:
        key = canonical(g).bytes
        if key not in index.members:
            return None
        return _tree_from_index(key, index, g)
    return _decompose(g, k)


def _tree_from_index(key: str, index: FamilyIndex, g: Graph | None = None) -> OreTree:
    recipe = index.members[key]
    graph = g if g is not None else from_graph6(key)
    if recipe is None:
        return OreTree(graph)
    h1, h2 = from_graph6(recipe.edge_side), from_graph6(recipe.split_side)
    comp = ore_compose(h1, recipe.edge, h2, SplitSpec(recipe.z, frozenset(recipe.part1), frozenset(recipe.part2)))
    return OreTree(graph, comp, _tree_from_index(recipe.edge_side, index), _tree_from_index(recipe.split_side, index))


def _decompose(g: Graph, k: int) -> OreTree | None:
    return _decompose_cached(g, k)


@lru_cache(maxsize=4096)
def _decompose_cached(g: Graph, k: int) -> OreTree | None:
    if ore_edge_count(g.n, k) != g.e:
        return None
    if g.n == k:
        return OreTree(g) if g.e == k * (k - 1) // 2 else None
    if g.n < 2 * k - 1:
        return None
    for h1, xy, h2, spec in two_cut_decompositions(g):
        t1 = _decompose_cached(h1, k)
        if t1 is None:
            continue
        t2 = _decompose_cached(h2, k)
        if t2 is None:
            continue
        return OreTree(g, ore_compose(h1, xy, h2, spec), t1, t2)
    return None


def is_class_b(g: Graph, index: FamilyIndex | None = None) -> bool:
    """Membership in class B: T8, or a composition of a member with a 4-Ore graph having T^3 = 2."""
    if ky_potential(g) != 1:
        return False
    if index is not None and index.family == "ClassB" and g.n <= index.max_n and index.complete:
        return g in index
    return _class_b_cached(g)


@lru_cache(maxsize=4096)
def _class_b_cached(g: Graph) -> bool:
    if g.n < 8 or ky_potential(g) != 1:
        return False
    if g.n == 8:
        return canonical_key(g) == canonical_key(catalog("T8"))
    if packing_number(g, 3) != 2:
        return False
    for h1, _, h2, _ in two_cut_decompositions(g):
        if _class_b_cached(h1) and _decompose_cached(h2, 4) is not None:
            return True
        if _decompose_cached(h1, 4) is not None and _class_b_cached(h2):
            return True
    return False


def f_correction(h1: Graph, xy: tuple[int, int], h2: Graph, spec: SplitSpec, r: int = 3) -> int:
    """Number of forced sides: every maximum packing of ``h1`` uses ``xy``, of ``h2`` uses ``z``.

    The bound checked downstream is ``T(G) >= T(h1) + T(h2) - f_correction``.
    """
    forced = 0
    if packing_avoiding(h1, r, edge=xy).size < packing_number(h1, r):
        forced += 1
    if packing_avoiding(h2, r, vertices=(spec.z,)).size < packing_number(h2, r):
        forced += 1
    return forced
