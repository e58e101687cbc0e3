"""Serialization of prediction tables and zeta reports, plus figures.

All text output is deterministic: keys are sorted, columns are fixed, and no
timestamps enter the payload, so identical configurations produce identical
bytes.  Figures (optional, written next to the delimited output) show the
prediction table's degree/exponent profile and the reciprocal roots of
extracted factors against the Weil circle.
"""

from __future__ import annotations

import csv
import io
import json

PREDICT_COLUMNS = ("class", "m_a", "deg_Q", "exponent", "D_a", "omega")


def predictions_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _row_cells(row):
    return ["[" + ",".join(str(x) for x in row["class"]) + "]",
            str(row["m_a"]), str(row["deg_Q"]), str(row["exponent"]),
            row["D_a"], row["omega"],
            "yes" if row.get("excluded") else ""]


def predictions_to_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(PREDICT_COLUMNS) + ["excluded"])
    for row in report["rows"]:
        writer.writerow(_row_cells(row))
    writer.writerow([])
    writer.writerow(["total_dimension", report["total_dimension"]])
    return buf.getvalue()


def predictions_to_markdown(report: dict) -> str:
    headers = list(PREDICT_COLUMNS) + ["excluded"]
    rows = [_row_cells(row) for row in report["rows"]]
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(headers)]

    def fmt(cells):
        return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"

    lines = [fmt(headers),
             "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
    lines += [fmt(r) for r in rows]
    lines.append("")
    lines.append(f"total dimension: {report['total_dimension']} "
                 f"(H_prim = {report['dim_H_prim']})")
    return "\n".join(lines) + "\n"


def zeta_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"


def zeta_to_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["kind", "class", "degree", "exponent", "omega_exp",
                     "poly", "certificates"])
    for row in report["factors"]:
        writer.writerow(["orbit", row["class"], row["degree"], row["exponent"],
                         "", row["poly"], json.dumps(row["certificates"],
                                                     sort_keys=True)])
    for row in report["omega_factors"]:
        writer.writerow(["omega", row["class"], row["degree"], row["exponent"],
                         row["omega_exp"], row["poly"],
                         json.dumps(row["certificates"], sort_keys=True)])
    return buf.getvalue()


def zeta_to_markdown(report: dict) -> str:
    lines = [f"# zeta report for n={report['instance']['n']} "
             f"q={report['instance']['q']} psi={report['instance']['psi']}",
             "", "## predicted factorization", "",
             predictions_to_markdown(report["predictions"])]
    if report["factors"]:
        lines += ["## extracted factors", ""]
        for row in report["factors"]:
            lines.append(f"- class {row['class']}: ({row['poly_str']})"
                         f"^{row['exponent']}")
        for row in report["omega_factors"]:
            lines.append(f"- omega piece (exp {row['omega_exp']}) of "
                         f"{row['class']}: {row['poly_str']}")
        lines.append("")
    if report.get("consistency"):
        lines.append("## power-sum consistency")
        lines.append("")
        for r, chk in sorted(report["consistency"].items()):
            lines.append(f"- r={r}: direct {chk['direct']} vs assembled "
                         f"{chk['assembled']}: "
                         + ("ok" if chk["equal"] else "MISMATCH"))
        lines.append("")
    return "\n".join(lines)


def render(report: dict, fmt: str) -> str:
    is_zeta = "instance" in report
    if fmt == "json":
        return zeta_to_json(report) if is_zeta else predictions_to_json(report)
    if fmt == "csv":
        return zeta_to_csv(report) if is_zeta else predictions_to_csv(report)
    if fmt == "md":
        return zeta_to_markdown(report) if is_zeta else predictions_to_markdown(report)
    raise ValueError(f"unknown format {fmt}")


# ---------------------------------------------------------------------------
# figures (rendered only on request, alongside the delimited output)

def _matplotlib():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def prediction_figure(report: dict, path):
    """Bar chart of per-orbit dimension contributions d * deg_Q * exponent."""
    plt = _matplotlib()
    rows = [r for r in report["rows"] if not r.get("excluded")]
    labels = ["[" + ",".join(str(x) for x in r["class"]) + "]" for r in rows]
    dims = [r["dimension"] for r in rows]
    fig, ax = plt.subplots(figsize=(max(4, 0.9 * len(rows) + 2), 3.2))
    ax.bar(range(len(rows)), dims, color="#4878a8")
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=7)
    ax.set_ylabel("dimension")
    ax.set_yscale("log" if max(dims) > 50 * min(dims) else "linear")
    ax.set_title(f"n={report['n']}: orbit contributions "
                 f"(total {report['total_dimension']})")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def roots_figure(report: dict, path):
    """Reciprocal roots of all extracted factors against the Weil circle."""
    import mpmath as mp
    plt = _matplotlib()
    inst = report["instance"]
    n, q = inst["n"], inst["q"]
    radius = float(q) ** ((n - 2) / 2.0)
    xs, ys = [], []
    for row in report["factors"] + report["omega_factors"]:
        poly = row["poly"]
        deg = len(poly) - 1
        if deg < 1:
            continue
        roots = mp.polyroots([mp.mpf(int(c)) for c in reversed(poly)],
                             maxsteps=500, extraprec=100)
        for t_root in roots:
            alpha = 1 / mp.mpc(t_root)
            xs.append(float(mp.re(alpha)))
            ys.append(float(mp.im(alpha)))
    fig, ax = plt.subplots(figsize=(4.2, 4.2))
    circle = plt.Circle((0, 0), radius, fill=False, color="#888888",
                        linestyle="--", linewidth=1)
    ax.add_patch(circle)
    ax.plot(xs, ys, "o", color="#a84848", markersize=5)
    lim = radius * 1.25
    ax.set_xlim(-lim, lim)
    ax.set_ylim(-lim, lim)
    ax.set_aspect("equal")
    ax.set_title(f"Frobenius reciprocal roots vs |alpha| = q^{{(n-2)/2}}"
                 f" = {radius:.2f}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
