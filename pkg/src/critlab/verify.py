"""Executable lemma checks over finite universes, with replayable witnesses.

Each registered lemma names a universe of *subjects* (family members, or
pairs of members for composition statements), expands every subject into
*instances* (all vertices, triangles, splits, subgraph/colouring choices)
and evaluates the statement on each instance.  A witness is a JSON dict
that holds the graph6 string(s) and the quantified choices; feeding it back
to :func:`replay` re-evaluates exactly that instance.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Any, Callable, Iterable, Iterator, Sequence

from .canon import canonical, canonical_key, is_isomorphic
from .catalog import catalog
from .cliques import (
    Regime,
    cliques_of_order,
    degree3_cycles,
    find_kites,
    has_k4_minus_e,
    has_kite,
    is_foundational,
    kite_spars,
    packing_number,
)
from .colorings import find_coloring, gallai_cycle_check, is_critical
from .enumerate import CapabilityError, enumerate_graphs
from .errors import VerificationFailure
from .graph import Graph, bits
from .graph6 import Graph6Error, from_graph6, read_graph6_lines, to_graph6
from .ore import (
    FamilyIndex,
    SplitSpec,
    all_compositions,
    f_correction,
    family_name,
    generate_family,
    ky_potential,
    ore_compose,
    split_vertex,
    splits_of,
)
from .potential import (
    check_potential_extension,
    classify_critical,
    counting_check,
    find_extension,
    homomorphism_check,
    potential,
    quotient,
)

Witness = dict[str, Any]


# verdicts and corpora -------------------------------------------------


@dataclass
class LemmaVerdict:
    lemma: str
    universe: dict[str, Any]
    count: int
    verdict: str  # "pass" | "fail"
    witness: Witness | None = None
    complete: bool = True
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "lemma": self.lemma,
            "universe": self.universe,
            "count": self.count,
            "verdict": self.verdict,
            "complete": self.complete,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.info:
            out["info"] = self.info
        return out

    def to_line(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


PREDICATES: dict[str, Callable[[Graph], bool]] = {
    "4-critical": lambda g: is_critical(g, 4),
    "triangle-free": lambda g: not g.has_triangle(),
}


@dataclass
class Corpus:
    """A named list of graphs; declared predicates are re-checked on admission."""

    name: str
    graphs: list[Graph]
    provenance: str = "generated"
    predicates: tuple[str, ...] = ()
    rejected: list[tuple[int, str]] = field(default_factory=list)

    @classmethod
    def admit(
        cls,
        name: str,
        graphs: Iterable[Graph],
        predicates: Sequence[str] = (),
        provenance: str = "generated",
    ) -> Corpus:
        kept, rejected = [], []
        for i, g in enumerate(graphs, 1):
            bad = next((p for p in predicates if not PREDICATES[p](g)), None)
            if bad is None:
                kept.append(g)
            else:
                rejected.append((i, f"not {bad}"))
        return cls(name, kept, provenance, tuple(predicates), rejected)

    @classmethod
    def from_lines(cls, name: str, lines: Iterable[str], predicates: Sequence[str] = (), provenance: str = "external") -> Corpus:
        """Parse graph6 lines; malformed lines are recorded in ``rejected`` with their line number."""
        parsed: list[tuple[int, Graph]] = []
        errors: list[tuple[int, str]] = []
        for lineno, text in read_graph6_lines(lines):
            try:
                parsed.append((lineno, from_graph6(text)))
            except Graph6Error as exc:
                errors.append((lineno, str(exc)))
        corpus = cls.admit(name, (g for _, g in parsed), predicates, provenance)
        # translate admission indices back to source line numbers
        corpus.rejected = sorted(errors + [(parsed[i - 1][0], why) for i, why in corpus.rejected])
        return corpus

    @classmethod
    def from_file(cls, path: str | Path, predicates: Sequence[str] = ()) -> Corpus:
        with open(path, encoding="ascii") as fh:
            return cls.from_lines(Path(path).name, fh, predicates, f"external:{path}")


# universes ------------------------------------------------------------


@dataclass(frozen=True)
class Limits:
    """Per-universe order caps; the defaults are the declared verification universes."""

    ore_max: int = 13
    b_max: int = 14
    ore5_max: int = 9
    crit_max: int = 8

    @classmethod
    def capped(cls, max_n: int | None) -> Limits:
        base = cls()
        if max_n is None:
            return base
        return cls(min(base.ore_max, max_n), min(base.b_max, max_n), min(base.ore5_max, max_n), min(base.crit_max, max_n))


def _cache_dir() -> Path | None:
    d = os.environ.get("CRITLAB_CACHE")
    return Path(d) if d else None


@lru_cache(maxsize=None)
def family_index(family: str, max_n: int, k: int = 4) -> FamilyIndex:
    """Generate (or load from ``$CRITLAB_CACHE``) a family index."""
    name = family_name(family, k)
    cache = _cache_dir()
    slug = f"{name.replace('(', '').replace(')', '')}-{max_n}"
    if cache is not None and (cache / slug / "members.g6").exists():
        index = FamilyIndex.load(cache / slug)
        # cached members are untrusted: replay every recipe
        for key, recipe in index.members.items():
            if recipe is not None and canonical_key(recipe.replay()) != canonical_key(from_graph6(key)):
                raise ValueError(f"cached {slug} member {key} does not match its recipe")
        return index
    index = generate_family(family, max_n, k)
    if cache is not None:
        index.save(cache / slug)
    return index


def is_3_colourable(g: Graph) -> bool:
    return find_coloring(g, 3) is not None


def _critical_filter(g: Graph) -> bool:
    return g.min_degree() >= 3 and is_critical(g, 4)


def critical_graphs(n: int) -> list[Graph]:
    """All 4-critical graphs on exactly ``n`` vertices, one per isomorphism class."""
    if n < 4:
        return []
    return list(enumerate_graphs(n, filter=_critical_filter, hereditary=is_3_colourable))


@lru_cache(maxsize=None)
def critical_keys(max_n: int) -> tuple[str, ...]:
    return tuple(to_graph6(g) for n in range(4, max_n + 1) for g in critical_graphs(n))


def _members(family: str, max_n: int, k: int = 4, t3: int | None = None) -> list[str]:
    index = family_index(family, max_n, k)
    keys = index.sorted_keys()
    if t3 is not None:
        keys = [s for s in keys if packing_number(G(s), k - 1) == t3]
    return keys


@lru_cache(maxsize=4096)
def G(s: str) -> Graph:
    return from_graph6(s)


# shared helpers -----------------------------------------------------------


@lru_cache(maxsize=4096)
def _T(s: str, r: int = 3) -> int:
    return packing_number(G(s), r)


@lru_cache(maxsize=1024)
def _foundational(s: str, regime: Regime) -> tuple[tuple[int, int], ...]:
    g = G(s)
    return tuple(e for e in g.edges() if is_foundational(g, e, regime))


@lru_cache(maxsize=1024)
def _spars(s: str) -> frozenset[tuple[int, int]]:
    return frozenset(kite_spars(G(s)))


def _split_instances(s: str) -> Iterator[Witness]:
    g = G(s)
    for v in range(g.n):
        for spec in splits_of(g, v):
            yield {"graph6": s, "vertex": v, "part1": sorted(spec.part1), "part2": sorted(spec.part2)}


def _split_of(w: Witness) -> tuple[Graph, Graph, int, list[int], list[int]]:
    g = G(w["graph6"])
    v, p1, p2 = w["vertex"], w["part1"], w["part2"]
    gv = split_vertex(g, SplitSpec(v, frozenset(p1), frozenset(p2))).graph
    return g, gv, v, p1, p2


def _pendant_edges(v: int, p1: list[int], p2: list[int]) -> list[tuple[int, int]]:
    """Original edges at the split halves that ended up with degree one."""
    return [(min(v, p[0]), max(v, p[0])) for p in (p1, p2) if len(p) == 1]


def _composition_pairs(family: str, max_n: int, k: int, only_kk: bool = False) -> list[Witness]:
    keys = _members(family, max_n, k)
    kk = to_graph6_canon(Graph.complete(k))
    out = []
    for a in keys:
        for b in keys:
            if G(a).n + G(b).n - 1 > max_n:
                continue
            if only_kk and kk not in (a, b):
                continue
            out.append({"edge_side": a, "split_side": b, "k": k})
    return out


def to_graph6_canon(g: Graph) -> str:
    return canonical(g).bytes


def _composition_instances(pair: Witness) -> Iterator[Witness]:
    h1, h2 = G(pair["edge_side"]), G(pair["split_side"])
    for comp in all_compositions(h1, h2):
        s = comp.split
        yield {
            **pair,
            "edge": list(comp.deleted_edge),
            "z": s.z,
            "part1": sorted(s.part1),
            "part2": sorted(s.part2),
            "graph6": to_graph6(comp.result),
        }


def _composition_of(w: Witness):
    h1, h2 = G(w["edge_side"]), G(w["split_side"])
    comp = ore_compose(h1, tuple(w["edge"]), h2, SplitSpec(w["z"], frozenset(w["part1"]), frozenset(w["part2"])))
    return h1, h2, comp


def _colourings(g: Graph, k: int = 3) -> Iterator[tuple[int, ...]]:
    """Proper k-colourings up to permuting colours (first occurrence order)."""
    n = g.n
    col = [-1] * n

    def go(v: int, used: int) -> Iterator[tuple[int, ...]]:
        if v == n:
            yield tuple(col)
            return
        banned = {col[u] for u in bits(g.adj[v] & ((1 << v) - 1))}
        for c in range(min(used + 1, k)):
            if c not in banned:
                col[v] = c
                yield from go(v + 1, max(used, c + 1))
        col[v] = -1

    yield from go(0, 0)


def _potential_instances(s: str) -> Iterator[Witness]:
    g = G(s)
    full = (1 << g.n) - 1
    for fmask in range(1, full):
        F = list(bits(fmask))
        for col in _colourings(g.induced(F)):
            yield {"graph6": s, "F": F, "f": list(col)}


def _extension(w: Witness):
    g = G(w["graph6"])
    t = find_extension(g, w["F"], w["f"], check=False)
    if t is None:
        raise VerificationFailure("quotient of a 4-critical graph is 3-colourable", dict(w))
    return t


# lemma predicates -----------------------------------------------------------
# each takes a witness (instance) and returns True when the statement holds


def _deleting_a_vertex(w: Witness) -> bool:
    g = G(w["graph6"])
    return bool(cliques_of_order(g.remove_vertices([w["vertex"]]), w["k"] - 1))


def _deleting_a_clique(w: Witness) -> bool:
    g = G(w["graph6"])
    return bool(cliques_of_order(g.remove_vertices(w["clique"]), w["k"] - 1))


def _clique_bound(w: Witness) -> bool:
    h1, h2, comp = _composition_of(w)
    r = w["k"] - 1
    forced = f_correction(h1, comp.deleted_edge, h2, comp.split, r)
    return packing_number(comp.result, r) >= packing_number(h1, r) + packing_number(h2, r) - forced


def _kk_bound(w: Witness) -> bool:
    h1, h2, comp = _composition_of(w)
    r = w["k"] - 1
    other = h2 if h1.n == w["k"] else h1
    return packing_number(comp.result, r) >= packing_number(other, r)


def _one_clique(w: Witness) -> bool:
    g = G(w["graph6"])
    return _T(w["graph6"], w["k"] - 1) != 1 or g.n == w["k"]


def _kite_pairs(g: Graph, vertex_disjoint: bool) -> list[tuple]:
    kites = find_kites(g)
    out = []
    for a, b in combinations(kites, 2):
        shared = len(set(a.vertices) & set(b.vertices))
        if a.edges() & b.edges():
            continue
        if shared <= (0 if vertex_disjoint else 1):
            out.append((a, b))
    return out


def _k4e(w: Witness) -> bool:
    g = G(w["graph6"])
    if not _kite_pairs(g, vertex_disjoint=False):
        return False
    if is_isomorphic(g, catalog("MoserSpindle")):
        return True
    return bool(_kite_pairs(g, vertex_disjoint=True))


def _k4e_three(w: Witness) -> bool:
    # mutant: demands three kites, pairwise edge-disjoint and sharing at most one vertex
    g = G(w["graph6"])
    kites = find_kites(g)
    for trio in combinations(kites, 3):
        if all(
            not (a.edges() & b.edges()) and len(set(a.vertices) & set(b.vertices)) <= 1
            for a, b in combinations(trio, 2)
        ):
            return True
    return False


def _splitting(w: Witness, need: int = 2) -> bool:
    g, gv, v, p1, p2 = _split_of(w)
    if packing_number(gv, 3) >= need:
        return True
    if g.degree(v) != 3:
        return False
    spars = _spars(w["graph6"])
    return any(e in spars for e in _pendant_edges(v, p1, p2))


def _splitting_mutant(w: Witness) -> bool:
    # mutant: the packing alternative asks for three triangles
    return _splitting(w, need=3)


def _deleting_a_triangle(w: Witness) -> bool:
    g = G(w["graph6"])
    h = g.remove_vertices(w["triangle"])
    return packing_number(h, 3) >= 2 or has_kite(h)


def _foundational_4ore(w: Witness) -> bool:
    found = _foundational(w["graph6"], Regime.FOUR_ORE_T3)
    spars = _spars(w["graph6"])
    return len(found) <= 1 and all(e in spars for e in found)


def _split_3triangle(w: Witness) -> bool:
    g, gv, v, p1, p2 = _split_of(w)
    if packing_number(gv, 3) >= 3 or has_kite(gv):
        return True
    found = _foundational(w["graph6"], Regime.FOUR_ORE_T3)
    return any(e in found for e in _pendant_edges(v, p1, p2))


def _ore_arithmetic(w: Witness) -> bool:
    if "edge_side" not in w:
        g = G(w["graph6"])
        k = w["k"]
        num = (k + 1) * (k - 2) * g.n - k * (k - 3)
        return 2 * (k - 1) * g.e == num and (k != 4 or ky_potential(g) == 2)
    h1, h2, comp = _composition_of(w)
    g = comp.result
    return (
        g.n == h1.n + h2.n - 1
        and g.e == h1.e + h2.e - 1
        and ky_potential(g) == ky_potential(h1) + ky_potential(h2) - 2
    )


def _ky_class_b(w: Witness) -> bool:
    g = G(w["graph6"])
    return ky_potential(g) == 1 and potential(g) == -1


def _foundational_b(w: Witness) -> bool:
    s = w["graph6"]
    found = _foundational(s, Regime.CLASS_B)
    if len(found) > 1:
        return False
    g = G(s)
    if g.n == 8 and is_isomorphic(g, catalog("T8")):
        # in the fixed labelling the only one is u1u2
        t8 = catalog("T8")
        return [e for e in t8.edges() if is_foundational(t8, e, Regime.CLASS_B)] == [(0, 1)]
    return all(e in _spars(s) for e in found)


def _foundational_b_none(w: Witness) -> bool:
    # mutant: claims no member has a foundational edge
    return not _foundational(w["graph6"], Regime.CLASS_B)


def _t8_splits(w: Witness) -> bool:
    g, gv, v, p1, p2 = _split_of(w)
    if packing_number(gv, 3) >= 2 or has_k4_minus_e(gv):
        return True
    found = _foundational(w["graph6"], Regime.CLASS_B)
    return any(e in found for e in _pendant_edges(v, p1, p2))


def _easyhom(w: Witness) -> bool:
    g = G(w["graph6"])
    qr = quotient(g, w["F"], w["f"])
    return homomorphism_check(g, qr) and find_coloring(qr.quotient, 3) is None


def _counting(w: Witness) -> bool:
    return counting_check(_extension(w)).passed


def _potential_extension(w: Witness) -> bool:
    try:
        return check_potential_extension(_extension(w)).passed
    except VerificationFailure:
        return False


def _gallai(w: Witness) -> bool:
    return gallai_cycle_check(G(w["graph6"]), w["cycle"]).passed


# instance generators ---------------------------------------------------------


def _per_vertex(s: str, k: int) -> Iterator[Witness]:
    for v in range(G(s).n):
        yield {"graph6": s, "k": k, "vertex": v}


def _per_clique(s: str, k: int) -> Iterator[Witness]:
    g = G(s)
    if g.n == k:
        return
    for c in cliques_of_order(g, k - 1):
        yield {"graph6": s, "k": k, "clique": list(bits(c))}


def _per_triangle(s: str) -> Iterator[Witness]:
    for t in G(s).triangles():
        yield {"graph6": s, "triangle": list(bits(t))}


def _per_cycle(s: str) -> Iterator[Witness]:
    for c in degree3_cycles(G(s), induced=True):
        yield {"graph6": s, "cycle": list(c)}


def _whole(s: str, **extra: Any) -> Iterator[Witness]:
    yield {"graph6": s, **extra}


# registry ---------------------------------------------------------------------


@dataclass(frozen=True)
class Lemma:
    id: str
    statement: str
    universe: Callable[[Limits], tuple[dict[str, Any], list[Any]]]
    instances: Callable[[Any], Iterator[Witness]]
    holds: Callable[[Witness], bool]


def _ore_subjects(lim: Limits, t3: int | None = None, general_k: bool = False):
    subjects = [("4", s) for s in _members("4ore", lim.ore_max, 4, t3)]
    desc: dict[str, Any] = {"family": "kOre(4)", "max_n": lim.ore_max}
    if t3 is not None:
        desc["T3"] = t3
    if general_k:
        subjects += [("5", s) for s in _members("kore", lim.ore5_max, 5)]
        desc["also"] = {"family": "kOre(5)", "max_n": lim.ore5_max}
    return desc, subjects


def _b_subjects(lim: Limits):
    return {"family": "ClassB", "max_n": lim.b_max}, _members("classb", lim.b_max)


def _crit_subjects(lim: Limits):
    return {"family": "4-critical", "max_n": lim.crit_max, "F": "all nonempty strict", "f": "all 3-colourings up to renaming"}, list(
        critical_keys(lim.crit_max)
    )


def _gallai_subjects(lim: Limits):
    keys = list(critical_keys(lim.crit_max))
    keys += _members("4ore", lim.ore_max)
    keys += _members("classb", lim.b_max)
    keys.append(to_graph6(catalog("Grotzsch")))
    seen: dict[str, None] = {}
    for s in keys:
        seen.setdefault(to_graph6_canon(G(s)), None)
    desc = {"family": "4-critical", "sources": [f"exhaustive<= {lim.crit_max}", f"kOre(4)<= {lim.ore_max}", f"ClassB<= {lim.b_max}", "Grotzsch"], "cycles": "induced, degree 3"}
    return desc, list(seen)


def _pairs(lim: Limits, only_kk: bool = False):
    subjects = _composition_pairs("4ore", lim.ore_max, 4, only_kk) + _composition_pairs("kore", lim.ore5_max, 5, only_kk)
    desc = {"family": "kOre(4) x kOre(4)", "max_n": lim.ore_max, "also": {"family": "kOre(5) x kOre(5)", "max_n": lim.ore5_max}, "choices": "all edge/vertex orbits, ordered splits"}
    return desc, subjects


def _tagged(gen: Callable[[str, int], Iterator[Witness]]):
    return lambda subj: gen(subj[1], int(subj[0]))


def _arith_universe(lim: Limits):
    desc, pairs = _pairs(lim)
    _, members = _ore_subjects(lim, general_k=True)
    return desc, [("member", m) for m in members] + [("pair", p) for p in pairs]


def _arith_instances(subj) -> Iterator[Witness]:
    kind, payload = subj
    if kind == "member":
        yield {"graph6": payload[1], "k": int(payload[0])}
    else:
        yield from _composition_instances(payload)


REGISTRY: dict[str, Lemma] = {
    lem.id: lem
    for lem in [
        Lemma("deletingavertex", "k-Ore G, any v: G - v contains K_{k-1}",
              lambda lim: _ore_subjects(lim, general_k=True), _tagged(_per_vertex), _deleting_a_vertex),
        Lemma("deletingaclique", "k-Ore G != K_k, any K_{k-1} subgraph K: G - K contains K_{k-1}",
              lambda lim: _ore_subjects(lim, general_k=True), _tagged(_per_clique), _deleting_a_clique),
        Lemma("cliqueboundinequality", "T(G) >= T(H1) + T(H2) - (number of forced sides)",
              _pairs, _composition_instances, _clique_bound),
        Lemma("kkbound", "composition of H with K_k: T(G) >= T(H)",
              lambda lim: _pairs(lim, only_kk=True), _composition_instances, _kk_bound),
        Lemma("onecliquecharacterization", "k-Ore G with T^{k-1}(G) = 1 is K_k",
              lambda lim: _ore_subjects(lim, general_k=True), _tagged(lambda s, k: _whole(s, k=k)), _one_clique),
        Lemma("K4e", "4-Ore, T3 = 2: two edge-disjoint kites sharing <= 1 vertex; vertex-disjoint unless M",
              lambda lim: _ore_subjects(lim, t3=2), lambda subj: _whole(subj[1]), _k4e),
        Lemma("splittinglemma", "4-Ore, T3 = 2, any split: T(G^v) >= 2 or a degree-one half hangs on a kite spar",
              lambda lim: _ore_subjects(lim, t3=2), lambda subj: _split_instances(subj[1]), _splitting),
        Lemma("deletingatriangle", "4-Ore, T3 = 3, any triangle T: T(G - T) >= 2 or G - T has a kite",
              lambda lim: _ore_subjects(lim, t3=3), lambda subj: _per_triangle(subj[1]), _deleting_a_triangle),
        Lemma("foundational4Ore", "4-Ore, T3 = 3: at most one foundational edge, and it is a kite spar",
              lambda lim: _ore_subjects(lim, t3=3), lambda subj: _whole(subj[1]), _foundational_4ore),
        Lemma("split3triangle", "4-Ore, T3 = 3, any split: T(G^v) >= 3, or G^v has a kite, or a degree-one half is on a foundational edge",
              lambda lim: _ore_subjects(lim, t3=3), lambda subj: _split_instances(subj[1]), _split_3triangle),
        Lemma("oreArithmetic", "v, e and KY add across a composition; 4-Ore members have KY = 2",
              _arith_universe, _arith_instances, _ore_arithmetic),
        Lemma("kyClassB", "class B: KY = 1 and p = -1",
              _b_subjects, _whole, _ky_class_b),
        Lemma("foundationalB", "class B: at most one foundational edge; a kite spar unless T8 (where it is u1u2)",
              _b_subjects, _whole, _foundational_b),
        Lemma("t8splits", "class B, any split: T(G^v) >= 2, or G^v has K4-e, or a degree-one half is on a foundational edge",
              _b_subjects, _split_instances, _t8_splits),
        Lemma("easyhom", "G -> G_f[F] via the natural map, and G_f[F] is not 3-colourable",
              _crit_subjects, _potential_instances, _easyhom),
        Lemma("counting", "v(F') = v(F)+v(W)-v(X), e(F') >= e(F)+e(W)-e(X), T(F') >= T(F)+T(W-X)",
              _crit_subjects, _potential_instances, _counting),
        Lemma("potentialExtension", "both potential-extension bounds and T(W) <= T(W-X) + v(X)",
              _crit_subjects, _potential_instances, _potential_extension),
        Lemma("gallaiCycle", "cycle of degree-3 vertices: odd, N(C) independent, N(C) monochromatic in every 3-colouring of G - C",
              _gallai_subjects, _per_cycle, _gallai),
    ]
}

# deliberately falsified statements used to show the harness detects failures
MUTANTS: dict[str, tuple[str, Callable[[Witness], bool]]] = {
    "K4e:three-kites": ("K4e", _k4e_three),
    "splittinglemma:T3>=3": ("splittinglemma", _splitting_mutant),
    "foundationalB:none": ("foundationalB", _foundational_b_none),
}


def _predicate(lemma_id: str, mutation: str | None) -> Callable[[Witness], bool]:
    if mutation is None:
        return REGISTRY[lemma_id].holds
    target, pred = MUTANTS[mutation]
    if target != lemma_id:
        raise ValueError(f"mutation {mutation} does not apply to {lemma_id}")
    return pred


def _check_subject(lemma_id: str, mutation: str | None, subject: Any) -> tuple[int, Witness | None]:
    lemma = REGISTRY[lemma_id]
    holds = _predicate(lemma_id, mutation)
    count, failure = 0, None
    for w in lemma.instances(subject):
        count += 1
        try:
            ok = holds(w)
        except VerificationFailure as exc:
            ok = False
            w = {**w, "error": str(exc)}
        if not ok and failure is None:
            failure = w
    return count, failure


def _check_subject_star(args: tuple) -> tuple[int, Witness | None]:
    return _check_subject(*args)


def verify_lemma(
    lemma_id: str,
    limits: Limits | None = None,
    *,
    mutation: str | None = None,
    jobs: int = 1,
    budget: int | None = None,
) -> LemmaVerdict:
    """Check one registered statement over its universe.

    ``budget`` caps the number of subjects; a capped or ungeneratable
    universe yields a verdict with ``complete=False``.
    """
    if lemma_id not in REGISTRY:
        raise KeyError(f"unknown lemma id {lemma_id!r}")
    limits = limits or Limits()
    label = lemma_id if mutation is None else mutation
    try:
        desc, subjects = REGISTRY[lemma_id].universe(limits)
    except CapabilityError as exc:
        return LemmaVerdict(label, {"error": str(exc)}, 0, "fail", complete=False)
    complete = True
    if budget is not None and len(subjects) > budget:
        subjects, complete = subjects[:budget], False
    desc = {**desc, "subjects": len(subjects)}
    args = [(lemma_id, mutation, s) for s in subjects]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_subject_star, args, chunksize=max(1, len(args) // (4 * jobs))))
    else:
        results = [_check_subject_star(a) for a in args]
    count = sum(c for c, _ in results)
    witness = next((w for _, w in results if w is not None), None)
    if witness is not None:
        witness = {"lemma": lemma_id, "mutation": mutation, **witness}
    verdict = "fail" if witness is not None else "pass"
    return LemmaVerdict(label, desc, count, verdict, witness, complete)


def replay(witness: Witness) -> bool:
    """Re-evaluate the single instance recorded in a witness; True means the statement holds."""
    w = {k: v for k, v in witness.items() if k not in ("lemma", "mutation", "error")}
    return _predicate(witness["lemma"], witness.get("mutation"))(w)


def verify_all(limits: Limits | None = None, *, jobs: int = 1, ids: Iterable[str] | None = None) -> Iterator[LemmaVerdict]:
    for lemma_id in ids or REGISTRY:
        yield verify_lemma(lemma_id, limits, jobs=jobs)


# whole-corpus statements ---------------------------------------------------------


def verify_main_theorem(corpus: Corpus) -> LemmaVerdict:
    """Classify every member; fail on any class/potential pair that contradicts the four cases."""
    classes: dict[str, int] = {}
    witness = None
    for g in corpus.graphs:
        try:
            c = classify_critical(g, check=False)
            classes[c.cls] = classes.get(c.cls, 0) + 1
        except VerificationFailure as exc:
            if witness is None:
                witness = {"lemma": "maintheorem", **exc.instance}
    return LemmaVerdict(
        "maintheorem",
        {"corpus": corpus.name, "provenance": corpus.provenance},
        len(corpus.graphs),
        "fail" if witness else "pass",
        witness,
        info={"classes": dict(sorted(classes.items()))},
    )


def verify_density(corpus: Corpus) -> LemmaVerdict:
    """``3e >= 5v + 2`` on each member; the stronger ``3e >= 5v + 5`` is reported, not enforced."""
    witness = None
    conj_fail, tight = [], []
    for g in corpus.graphs:
        s = to_graph6(g)
        if 3 * g.e < 5 * g.n + 2 and witness is None:
            witness = {"lemma": "density", "graph6": s, "v": g.n, "e": g.e}
        if 3 * g.e < 5 * g.n + 5:
            conj_fail.append(s)
        elif 3 * g.e == 5 * g.n + 5:
            tight.append(s)
    return LemmaVerdict(
        "density",
        {"corpus": corpus.name, "provenance": corpus.provenance, "predicates": list(corpus.predicates)},
        len(corpus.graphs),
        "fail" if witness else "pass",
        witness,
        info={"conjecture_holds": not conj_fail, "conjecture_violations": conj_fail, "conjecture_tight": tight,
              "rejected": [list(r) for r in corpus.rejected]},
    )


def _triangle_free_3col(g: Graph) -> bool:
    return not g.has_triangle() and find_coloring(g, 3) is not None


def _triangle_free_critical_filter(g: Graph) -> bool:
    return g.min_degree() >= 3 and not g.has_triangle() and is_critical(g, 4)


def triangle_free_critical(max_n: int) -> list[Graph]:
    """Every triangle-free 4-critical graph with at most ``max_n`` vertices (built-in range only)."""
    out: list[Graph] = []
    for n in range(4, max_n + 1):
        out.extend(enumerate_graphs(n, filter=_triangle_free_critical_filter, hereditary=_triangle_free_3col))
    return out
