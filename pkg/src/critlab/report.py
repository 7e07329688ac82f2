"""Summary tables plus PNG figures for the generated families and the discharging run."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .catalog import catalog
from .cliques import packing_number
from .discharging import STEPS, audit, frac_str, run_discharging
from .graph6 import from_graph6
from .potential import classify_critical


def _family_rows(max_n: int | None) -> list[dict]:
    from .verify import Limits, critical_keys, family_index

    lim = Limits.capped(max_n)
    sources = [
        ("kOre(4)", family_index("4ore", lim.ore_max).sorted_keys()),
        ("ClassB", family_index("classb", lim.b_max).sorted_keys()),
        ("4-critical", list(critical_keys(lim.crit_max))),
    ]
    rows = []
    for family, keys in sources:
        for s in keys:
            g = from_graph6(s)
            c = classify_critical(g, check=False)
            rows.append({"family": family, "graph6": s, "v": g.n, "e": g.e,
                         "T3": packing_number(g, 3), "p": c.p, "class": c.cls})
    return rows


def _write_table(path: Path, rows: list[dict], fmt: str) -> Path:
    if fmt == "json":
        path = path.with_suffix(".jsonl")
        path.write_text("".join(json.dumps(r, sort_keys=True) + "\n" for r in rows), encoding="utf-8")
        return path
    path = path.with_suffix(".tsv")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]), delimiter="\t", lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return path


def _potential_figure(rows: list[dict], path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    markers = {"kOre(4)": "o", "ClassB": "s", "4-critical": "x"}
    for family, marker in markers.items():
        pts = sorted({(r["v"], r["p"]) for r in rows if r["family"] == family})
        if pts:
            ax.scatter([v for v, _ in pts], [p for _, p in pts], marker=marker, label=family)
    ax.axhline(-2, linestyle="--", linewidth=0.8, color="grey")
    ax.set_xlabel("vertices")
    ax.set_ylabel("potential 5v - 3e - T3")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _charge_figure(ledger, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(7, 4))
    n = ledger.g.n
    width = 0.2
    for i, step in enumerate(STEPS):
        ax.bar([v + (i - 1.5) * width for v in range(n)], [float(x) for x in ledger.snapshots[step]],
               width=width, label=step)
    ax.axhline(10 / 3, linestyle="--", linewidth=0.8, color="black")
    ax.set_xlabel("vertex")
    ax.set_ylabel("charge")
    ax.set_xticks(range(n))
    ax.legend(ncol=4, fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def build_report(out: str | Path, *, max_n: int | None = None, fmt: str = "tsv") -> list[Path]:
    """Write family/potential table, Grotzsch charge table and two figures into ``out``."""
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    rows = _family_rows(max_n)
    written.append(_write_table(out / "families", rows, fmt))

    g = catalog("Grotzsch")
    ledger = run_discharging(g)
    report = audit(g, ledger)
    charge_rows = [
        {"vertex": v, "deg": m.deg, **{s: frac_str(ledger.snapshots[s][v]) for s in STEPS}}
        for v, m in enumerate(ledger.meta)
    ]
    written.append(_write_table(out / "grotzsch_charges", charge_rows, fmt))
    summary = out / "summary.json"
    summary.write_text(json.dumps({"grotzsch_audit": report.to_json(), "members": len(rows)},
                                  indent=1, sort_keys=True) + "\n", encoding="utf-8")
    written.append(summary)
    written.append(_potential_figure(rows, out / "potential_by_order.png"))
    written.append(_charge_figure(ledger, out / "grotzsch_charges.png"))
    return written
