"""Three-step discharging with exact rational charges and a per-step audit."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .cliques import degree3_subgraph
from .graph import Graph, bits

STEPS = ("init", "step1", "step2", "step3")
TARGET = Fraction(10, 3)
ISOLATED_SEND = Fraction(1, 18)


def step1_amount(deg: int, deg3: int) -> Fraction:
    """What a vertex of degree ``deg`` sends to each of its ``deg3`` degree-3 neighbours."""
    return Fraction(3 * deg - 10, 3 * deg3)


@dataclass(frozen=True)
class VertexMeta:
    deg: int
    deg3: int
    i3: int
    f: Fraction  # received in step 2


@dataclass
class ChargeLedger:
    g: Graph
    meta: tuple[VertexMeta, ...]
    snapshots: dict[str, tuple[Fraction, ...]] = field(default_factory=dict)

    @property
    def final(self) -> tuple[Fraction, ...]:
        return self.snapshots["step3"]

    def total(self, step: str) -> Fraction:
        return sum(self.snapshots[step], Fraction(0))

    def to_json(self) -> dict[str, Any]:
        return {
            "v": self.g.n,
            "e": self.g.e,
            "conservation": all(self.total(s) == 2 * self.g.e for s in STEPS),
            "vertices": [
                {
                    "vertex": v,
                    "deg": m.deg,
                    "deg3": m.deg3,
                    "i3": m.i3,
                    "f": frac_str(m.f),
                    "charges": {s: frac_str(self.snapshots[s][v]) for s in STEPS},
                }
                for v, m in enumerate(self.meta)
            ],
        }


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def run_discharging(g: Graph) -> ChargeLedger:
    if g.n == 0 or g.min_degree() < 3:
        raise ValueError("discharging needs minimum degree at least 3")
    deg = g.degrees()
    three = sum(1 << v for v in range(g.n) if deg[v] == 3)
    isolated = sum(1 << v for v in bits(three) if not g.adj[v] & three)
    deg3 = [(g.adj[v] & three).bit_count() for v in range(g.n)]
    i3 = [(g.adj[v] & isolated).bit_count() for v in range(g.n)]

    ch0 = [Fraction(d) for d in deg]

    ch1 = list(ch0)
    for u in range(g.n):
        if deg[u] >= 4 and deg3[u]:
            amt = step1_amount(deg[u], deg3[u])
            for v in bits(g.adj[u] & three):
                ch1[u] -= amt
                ch1[v] += amt

    ch2 = list(ch1)
    received = [Fraction(0)] * g.n
    for v in bits(isolated):
        for w in bits(g.adj[v]):
            ch2[v] -= ISOLATED_SEND
            ch2[w] += ISOLATED_SEND
            received[w] += ISOLATED_SEND

    ch3 = list(ch2)
    for u in range(g.n):
        if deg[u] >= 4 and received[u] and deg3[u] > i3[u]:
            amt = received[u] / (deg3[u] - i3[u])
            for v in bits(g.adj[u] & three & ~isolated):
                ch3[u] -= amt
                ch3[v] += amt

    meta = tuple(VertexMeta(deg[v], deg3[v], i3[v], received[v]) for v in range(g.n))
    snaps = dict(zip(STEPS, (tuple(ch0), tuple(ch1), tuple(ch2), tuple(ch3))))
    return ChargeLedger(g, meta, snaps)


@dataclass(frozen=True)
class ComponentCharge:
    vertices: tuple[int, ...]
    total: Fraction
    meets_target: bool


@dataclass(frozen=True)
class AuditReport:
    conservation: dict[str, bool]
    components: tuple[ComponentCharge, ...]
    min_final: Fraction
    isolated_bound: bool
    shortfall: tuple[int, ...]  # vertices whose final charge is below 10/3

    @property
    def conserved(self) -> bool:
        return all(self.conservation.values())

    def to_json(self) -> dict[str, Any]:
        return {
            "conservation": self.conserved,
            "per_step": self.conservation,
            "components": [
                {"vertices": list(c.vertices), "total": frac_str(c.total), "meets_target": c.meets_target}
                for c in self.components
            ],
            "min_final": frac_str(self.min_final),
            "isolated_bound": self.isolated_bound,
            "shortfall": list(self.shortfall),
        }


def audit(g: Graph, ledger: ChargeLedger) -> AuditReport:
    """Measure the outcome of a discharging run; nothing about the input graph is assumed."""
    conservation = {s: ledger.total(s) == 2 * g.e for s in STEPS}
    if not all(conservation.values()):
        raise RuntimeError(f"charge not conserved: {conservation}")
    final = ledger.final
    d3 = degree3_subgraph(g)
    comps = []
    for comp in d3.components:
        total = sum((final[v] for v in comp.vertices), Fraction(0))
        comps.append(ComponentCharge(tuple(comp.vertices), total, total >= TARGET * len(comp.vertices)))
    iso = d3.isolated()
    return AuditReport(
        conservation=conservation,
        components=tuple(comps),
        min_final=min(final),
        isolated_bound=all(final[v] >= TARGET for v in iso),
        shortfall=tuple(v for v in range(g.n) if final[v] < TARGET),
    )
