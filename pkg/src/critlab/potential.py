"""Potentials, quotients by a colouring, and the extension bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .canon import is_isomorphic
from .catalog import catalog
from .cliques import packing_number
from .colorings import Coloring, find_coloring, is_critical, is_homomorphism
from .errors import VerificationFailure
from .graph import Graph, bits, mask_of
from .graph6 import to_graph6
from .ore import FamilyIndex, is_class_b, is_k_ore, ky_potential

__all__ = [
    "PotentialParams", "DEFAULT_PARAMS", "potential", "ky_potential", "QuotientResult",
    "quotient", "ExtensionTriple", "find_extension", "counting_check", "check_potential_extension",
    "Classification", "classify_critical", "SOURCE_BOUND", "source_bound",
]


@dataclass(frozen=True)
class PotentialParams:
    a: int = 5
    b: int = 3
    c: int = 1
    k: int = 4


DEFAULT_PARAMS = PotentialParams()


def potential(g: Graph, params: PotentialParams = DEFAULT_PARAMS) -> int:
    """``a*v - b*e - c*T^(k-1)``; the clique term is skipped when ``c`` is zero."""
    t = packing_number(g, params.k - 1) if params.c else 0
    return params.a * g.n - params.b * g.e - params.c * t


# bookkeeping used when replaying the minimal-counterexample inequalities:
# the potential allowance indexed by the number of source vertices
SOURCE_BOUND = {1: 5, 2: 7, 3: 6}


def source_bound(vx: int) -> int:
    try:
        return SOURCE_BOUND[vx]
    except KeyError:
        raise KeyError(f"source size {vx} outside 1..3") from None


# quotient ---------------------------------------------------------------


@dataclass(frozen=True)
class QuotientResult:
    """``G_f[F]``: vertices outside F first (in order), then one vertex per nonempty colour class.

    ``phi[v]`` is the image of ``G``-vertex ``v`` under the natural map, which
    is a homomorphism from ``G`` onto the quotient.
    """

    quotient: Graph
    class_vertices: dict[int, int]
    originals: dict[int, frozenset[int]]
    phi: tuple[int, ...]
    outside: tuple[int, ...]

    def is_class_vertex(self, q: int) -> bool:
        return q >= len(self.outside)


def _as_mapping(F: tuple[int, ...], f: Mapping[int, int] | Coloring | Iterable[int]) -> dict[int, int]:
    if isinstance(f, Coloring):
        if len(f.assignment) != len(F):
            raise ValueError("colouring of G[F] must have one entry per vertex of F")
        return dict(zip(F, f.assignment))
    if isinstance(f, Mapping):
        return dict(f)
    seq = list(f)
    if len(seq) != len(F):
        raise ValueError("colouring must have one entry per vertex of F")
    return dict(zip(F, seq))


def quotient(g: Graph, F: Iterable[int], f: Mapping[int, int] | Coloring | Iterable[int]) -> QuotientResult:
    Fv = tuple(sorted(set(F)))
    if len(Fv) >= g.n:
        raise ValueError("F must be a strict subgraph of G")
    col = _as_mapping(Fv, f)
    if set(col) != set(Fv):
        raise ValueError("colouring must be defined exactly on F")
    fmask = mask_of(Fv)
    for u in Fv:
        for w in bits(g.adj[u] & fmask):
            if col[u] == col[w]:
                raise ValueError(f"colouring is improper on edge {u}{w}")
    outside = tuple(v for v in range(g.n) if not fmask >> v & 1)
    colours = sorted(set(col.values()))
    class_vertices = {c: len(outside) + i for i, c in enumerate(colours)}
    phi = [0] * g.n
    for i, v in enumerate(outside):
        phi[v] = i
    for v in Fv:
        phi[v] = class_vertices[col[v]]
    adj = [0] * (len(outside) + len(colours))
    for u, w in g.edges():
        a, b = phi[u], phi[w]
        if a != b:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
    originals = {i: frozenset((v,)) for i, v in enumerate(outside)}
    for c, q in class_vertices.items():
        originals[q] = frozenset(v for v in Fv if col[v] == c)
    return QuotientResult(Graph(len(adj), tuple(adj)), class_vertices, originals, tuple(phi), outside)


# extension --------------------------------------------------------------


@dataclass(frozen=True)
class ExtensionTriple:
    """Extender ``W`` (a 4-critical subgraph of the quotient), source ``X`` and extension ``F'``.

    ``w_vertices``/``x_vertices`` are quotient labels; ``w`` and ``x`` are
    relabelled in that order.  ``fprime_vertices`` are ``G`` labels.
    """

    g: Graph
    F: tuple[int, ...]
    quotient: QuotientResult
    w_vertices: tuple[int, ...]
    w: Graph
    x_vertices: tuple[int, ...]
    x: Graph
    fprime_vertices: tuple[int, ...]
    fprime: Graph

    @property
    def f_graph(self) -> Graph:
        return self.g.induced(self.F)

    @property
    def w_minus_x(self) -> Graph:
        keep = [i for i, q in enumerate(self.w_vertices) if q not in set(self.x_vertices)]
        return self.w.induced(keep)


def _greedy_critical_subgraph(q: Graph, k: int) -> tuple[tuple[int, ...], Graph]:
    """Delete edges in ``q.edges()`` order while the graph stays non-(k-1)-colourable."""
    h = q
    for u, v in q.edges():
        trial = h.remove_edge(u, v)
        if find_coloring(trial, k - 1) is None:
            h = trial
    keep = tuple(v for v in range(h.n) if h.adj[v])
    return keep, h.induced(keep)


def find_extension(
    g: Graph,
    F: Iterable[int],
    f: Mapping[int, int] | Coloring | Iterable[int],
    *,
    w: tuple[Iterable[int], Iterable[tuple[int, int]]] | None = None,
    k: int = 4,
    check: bool = True,
) -> ExtensionTriple | None:
    """Build extender, source and extension for ``(g, F, f)``.

    ``w`` optionally supplies the extender as ``(quotient vertices, quotient
    edges)``; it is validated as a k-critical subgraph.  Otherwise the
    deterministic greedy one is used.  Returns ``None`` when the quotient is
    (k-1)-colourable.
    """
    if check and not is_critical(g, k):
        raise ValueError("premise failed: g is not k-critical")
    Fv = tuple(sorted(set(F)))
    qr = quotient(g, Fv, f)
    q = qr.quotient
    if w is None:
        if find_coloring(q, k - 1) is not None:
            return None
        w_vertices, w_graph = _greedy_critical_subgraph(q, k)
    else:
        verts, edges = w
        w_vertices = tuple(sorted(set(verts)))
        pos = {v: i for i, v in enumerate(w_vertices)}
        elist = []
        for a, b in edges:
            if not q.has_edge(a, b):
                raise ValueError(f"{a}{b} is not an edge of the quotient")
            elist.append((pos[a], pos[b]))
        w_graph = Graph.from_edges(len(w_vertices), elist)
        if not is_critical(w_graph, k):
            raise ValueError("supplied extender is not k-critical")
    x_pos = [i for i, qv in enumerate(w_vertices) if qr.is_class_vertex(qv)]
    if len(x_pos) == len(w_vertices):
        raise VerificationFailure("extender lies entirely inside the class vertices", {"graph6": to_graph6(g)})
    x_vertices = tuple(w_vertices[i] for i in x_pos)
    x_graph = w_graph.induced(x_pos)
    # F' = G[V(F) + (V(W) - X)]
    fprime_vertices = tuple(sorted(set(Fv) | {qr.outside[qv] for qv in w_vertices if not qr.is_class_vertex(qv)}))
    return ExtensionTriple(g, Fv, qr, w_vertices, w_graph, x_vertices, x_graph, fprime_vertices, g.induced(fprime_vertices))


@dataclass(frozen=True)
class CountingReport:
    vertex_identity: bool
    edge_slack: int
    packing_slack: int

    @property
    def passed(self) -> bool:
        return self.vertex_identity and self.edge_slack >= 0 and self.packing_slack >= 0


def counting_check(t: ExtensionTriple, k: int = 4) -> CountingReport:
    """Vertex identity and the edge / clique-packing inequalities for an extension."""
    F = t.f_graph
    r = k - 1
    return CountingReport(
        vertex_identity=t.fprime.n == F.n + t.w.n - t.x.n,
        edge_slack=t.fprime.e - (F.e + t.w.e - t.x.e),
        packing_slack=packing_number(t.fprime, r) - (packing_number(F, r) + packing_number(t.w_minus_x, r)),
    )


@dataclass(frozen=True)
class ExtensionReport:
    """Slack (right side minus left side) of both potential-extension bounds."""

    p_fprime: int
    clique_form_slack: int
    source_form_slack: int
    packing_ingredient_slack: int

    @property
    def passed(self) -> bool:
        return min(self.clique_form_slack, self.source_form_slack, self.packing_ingredient_slack) >= 0


def _dump(t: ExtensionTriple) -> dict:
    return {
        "graph6": to_graph6(t.g),
        "F": list(t.F),
        "colouring": {str(v): c for c, q in t.quotient.class_vertices.items() for v in t.quotient.originals[q]},
        "W": list(t.w_vertices),
        "X": list(t.x_vertices),
        "Fprime": list(t.fprime_vertices),
    }


def check_potential_extension(t: ExtensionTriple, params: PotentialParams = DEFAULT_PARAMS) -> ExtensionReport:
    a, b, c = params.a, params.b, params.c
    r = params.k - 1
    pF = potential(t.f_graph, params)
    pW = potential(t.w, params)
    pFp = potential(t.fprime, params)
    tW = packing_number(t.w, r)
    tWX = packing_number(t.w_minus_x, r)
    vX, eX = t.x.n, t.x.e
    base = pF + pW - a * vX + b * eX
    report = ExtensionReport(
        p_fprime=pFp,
        clique_form_slack=base + c * tW - c * tWX - pFp,
        source_form_slack=base + c * vX - pFp,
        packing_ingredient_slack=tWX + vX - tW,
    )
    if not report.passed:
        raise VerificationFailure(f"potential-extension bound violated: {report}", _dump(t))
    return report


# classification of 4-critical graphs ---------------------------------------

EXPECTED_POTENTIAL = {"K4": 1, "FourOreT2": 0, "W5": -1, "ClassB": -1, "FourOreT3": -1}


@dataclass(frozen=True)
class Classification:
    cls: str
    p: int
    t3: int


def classify_critical(
    g: Graph,
    *,
    ore_index: FamilyIndex | None = None,
    b_index: FamilyIndex | None = None,
    check: bool = True,
) -> Classification:
    """Place a 4-critical graph in its potential class and check the predicted value.

    Classes: K4, FourOreT2, W5, ClassB, FourOreT3, Other.  ``Other`` must
    have potential at most -2.
    """
    if check and not is_critical(g, 4):
        raise ValueError("premise failed: graph is not 4-critical")
    t3 = packing_number(g, 3)
    p = 5 * g.n - 3 * g.e - t3
    if g.n == 4:
        cls = "K4"
    elif is_k_ore(g, 4, ore_index) is not None and t3 in (2, 3):
        cls = "FourOreT2" if t3 == 2 else "FourOreT3"
    elif g.n == 6 and is_isomorphic(g, catalog("W5")):
        cls = "W5"
    elif is_class_b(g, b_index):
        cls = "ClassB"
    else:
        cls = "Other"
    expected = EXPECTED_POTENTIAL.get(cls)
    if (expected is not None and p != expected) or (expected is None and p > -2):
        raise VerificationFailure(
            f"{cls} graph has potential {p}", {"graph6": to_graph6(g), "class": cls, "p": p, "T3": t3}
        )
    return Classification(cls, p, t3)


def homomorphism_check(g: Graph, qr: QuotientResult) -> bool:
    """The natural map ``G -> G_f[F]`` is a homomorphism."""
    return is_homomorphism(g, qr.quotient, qr.phi)
