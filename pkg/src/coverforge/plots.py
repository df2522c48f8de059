"""Figure rendering for experiment reports.

Each report kind gets one matplotlib figure saved next to the delimited
output.  Rendering is backend-free (Agg) so it works headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def _new_axes(title: str):
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.set_title(title)
    ax.grid(alpha=0.3)
    return fig, ax


def _int_histogram(ax, histogram: dict, label: str | None = None, offset: float = 0.0, width: float = 0.8, color=None):
    xs = [int(k) + offset for k in histogram]
    ys = [histogram[k] for k in histogram]
    ax.bar(xs, ys, width=width, label=label, color=color)


def _plot_lemma1(rep: dict):
    n = rep["params"]["n"]
    vals = [t["uncovered_float"] for t in rep["trials"]]
    fig, ax = _new_axes(f"Uncovered fraction of single balls (n={n})")
    ax.hist(vals, bins=30, color="#4878cf")
    ax.axvline(1.0 / n, color="#d65f5f", linestyle="--", label="1/n")
    ax.set_xlabel("uncovered fraction")
    ax.set_ylabel("trials")
    freq = rep["summary"]["freq_uncovered_ge_1_over_n"]
    bound = rep["summary"]["reference_bound_1_over_n2"]
    ax.legend(title=f"freq >= 1/n: {freq}   ref 1/n^2: {bound:.4g}")
    return fig


def _plot_moments(rep: dict):
    n = rep["params"]["n"]
    counts = [t["count"] for t in rep["trials"]]
    fig, ax = _new_axes(f"Shifted-code ball intersections (n={n})")
    ax.hist(counts, bins=30, color="#4878cf")
    mean = rep["summary"]["empirical_mean"]
    target = rep["summary"]["expected_mean_float"]
    if mean is not None:
        ax.axvline(mean, color="#d65f5f", linestyle="-", label=f"empirical {mean:.2f}")
    ax.axvline(target, color="#2f7e4e", linestyle="--", label=f"target {target:.2f}")
    ax.set_xlabel("intersection count")
    ax.set_ylabel("samples")
    ax.legend()
    return fig


def _plot_lemma2(rep: dict):
    m = rep["params"]["m"]
    fig, ax = _new_axes(f"Uncovered-set decay under random translates (m={m})")
    shown = 0
    for t in rep["trials"]:
        steps = t.get("steps")
        if not steps:
            continue
        xs = list(range(len(steps) + 1))
        ys = [t["u0"]] + [s["size"] for s in steps]
        ax.plot(xs, ys, color="#4878cf", alpha=0.25)
        shown += 1
        if shown >= 200:
            break
    if shown:
        ax.set_yscale("symlog")
    ax.set_xlabel("step")
    ax.set_ylabel("uncovered points")
    tail = rep["summary"].get("tail_freq")
    bound = rep["summary"].get("tail_bound")
    if tail is not None:
        ax.set_title(
            f"Uncovered-set decay (m={m}); tail freq {tail:.4g} vs bound {bound:.4g}"
        )
    return fig


def _plot_theorem1(rep: dict):
    n = rep["params"]["n"]
    covers = sum(1 for t in rep["trials"] if t["covers"])
    fails = len(rep["trials"]) - covers
    fig, ax = _new_axes(f"Augmented-ensemble full coverage (n={n})")
    ax.bar(["covers", "fails"], [covers, fails], color=["#2f7e4e", "#d65f5f"])
    ax.set_ylabel("trials")
    rate = rep["summary"]["failure_rate"]
    ax.set_title(
        f"Full coverage at n={n}, t={rep['params']['t']}: failure rate {rate}"
    )
    return fig


def _plot_sweep(rep: dict):
    fig, ax = _new_axes("Coverage failure rate across n")
    xs = [row["n"] for row in rep["trials"]]
    ys = [row["failure_rate"] for row in rep["trials"]]
    ax.plot(xs, ys, marker="o", color="#4878cf")
    ax.set_xlabel("n")
    ax.set_ylabel("failure rate")
    ax.set_xticks(xs)
    return fig


def _plot_directsum(rep: dict):
    fig, ax = _new_axes("Covering radius additivity under direct sums")
    xs = [t["radius_a"] + t["radius_b"] for t in rep["trials"]]
    ys = [t["radius_sum"] for t in rep["trials"]]
    lim = max(xs + ys + [1])
    ax.plot([0, lim], [0, lim], color="#999999", linestyle="--")
    ax.scatter(xs, ys, color="#4878cf", alpha=0.6)
    ax.set_xlabel("radius(A) + radius(B)")
    ax.set_ylabel("radius(A direct-sum B)")
    return fig


def _plot_gv(rep: dict):
    n = rep["params"]["n"]
    fig, ax = _new_axes(f"Minimum distance distribution (n={n})")
    _int_histogram(ax, rep["summary"]["distance_histogram"], color="#4878cf")
    dstar = rep["summary"]["varshamov_distance"]
    ax.axvline(dstar - 0.5, color="#d65f5f", linestyle="--", label=f"threshold d={dstar}")
    ax.set_xlabel("minimum distance")
    ax.set_ylabel("samples")
    frac = rep["summary"]["fraction_meeting"]
    ax.legend(title=f"fraction meeting: {frac}")
    return fig


def _plot_concat(rep: dict):
    fig, ax = _new_axes("Member covering radii")
    radii = [t["radius"] for t in rep["trials"]]
    ax.hist(radii, bins=range(min(radii), max(radii) + 2), color="#4878cf")
    ax.set_xlabel("member covering radius")
    ax.set_ylabel("members")
    rel = rep["summary"]["relative_radius"]
    ax.set_title(f"Member covering radii; aggregate relative radius {rel:.4f}")
    return fig


def _plot_quasicyclic(rep: dict):
    n = rep["params"]["n"]
    fig, ax = _new_axes(f"Covering radii by ensemble (n={n})")
    colors = {"qc": "#4878cf", "woz": "#2f7e4e", "rl": "#d65f5f"}
    offsets = {"qc": -0.25, "woz": 0.0, "rl": 0.25}
    for key in ("qc", "woz", "rl"):
        _int_histogram(
            ax,
            rep["summary"][key]["histogram"],
            label=key,
            offset=offsets[key],
            width=0.22,
            color=colors[key],
        )
    ax.set_xlabel("covering radius")
    ax.set_ylabel("trials")
    ax.legend()
    return fig


def _plot_fallback(rep: dict):
    fig, ax = _new_axes(rep.get("name", "report"))
    ax.text(0.5, 0.5, "no figure defined for this report", ha="center", va="center")
    ax.set_axis_off()
    return fig


_BUILDERS = {
    "lemma1": _plot_lemma1,
    "moments": _plot_moments,
    "lemma2": _plot_lemma2,
    "theorem1": _plot_theorem1,
    "sweep": _plot_sweep,
    "directsum": _plot_directsum,
    "gv": _plot_gv,
    "concat": _plot_concat,
    "quasicyclic": _plot_quasicyclic,
}


def render(report, path: str) -> str:
    """Save the figure for a report (or its JSON dict form) to path."""
    rep = report if isinstance(report, dict) else report.to_json_dict()
    builder = _BUILDERS.get(rep.get("name"), _plot_fallback)
    fig = builder(rep)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
