"""Matplotlib rendering of sweep panels to vector files."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .sweep import series  # noqa: E402

STYLES = {
    "linear": dict(color="red", linestyle="-", label="linear"),
    "circular": dict(color="blue", linestyle="--", label="circular"),
    "inertial": dict(color="black", linestyle=":", label="inertial"),
}

RC = {
    "font.size": 10,
    "axes.labelsize": 11,
    "axes.linewidth": 0.8,
    "lines.linewidth": 1.5,
    "legend.frameon": False,
    "xtick.direction": "in",
    "ytick.direction": "in",
    "svg.fonttype": "none",
    "svg.hashsalt": "accelphase",
}


def render_panels(panels, path, suptitle=None):
    """Draw ``panels`` side by side and save to ``path``.

    ``panels`` is a sequence of ``(title, xlabel, ylabel, rows)``; each rows
    list is split by scenario and method. Output format follows the file
    suffix; SVG output carries no timestamp.
    """
    with plt.rc_context(RC):
        fig, axes = plt.subplots(1, len(panels), figsize=(3.6 * len(panels), 3.0), squeeze=False)
        for ax, (title, xlabel, ylabel, rows) in zip(axes[0], panels):
            pairs = sorted({(s, m) for _, s, m, _ in rows}, key=lambda p: (list(STYLES).index(p[0]), p[1]))
            methods = {m for _, m in pairs}
            for scenario, method in pairs:
                x, y = series(rows, scenario, method)
                style = dict(STYLES[scenario])
                if len(methods) > 1:
                    style["label"] = f"{scenario} ({method})"
                ax.plot(x, y, **style)
            ax.set_title(title)
            ax.set_xlabel(xlabel)
            ax.set_ylabel(ylabel)
            ax.legend(loc="best")
        if suptitle:
            fig.suptitle(suptitle)
        fig.tight_layout()
        fig.savefig(path, metadata={"Date": None} if str(path).endswith(".svg") else None)
        plt.close(fig)
    return path
