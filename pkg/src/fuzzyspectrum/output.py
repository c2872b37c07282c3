"""Artifacts of a run: metric CSVs, the possibility grid, plot scripts and snapshots.

Every file is rendered in memory first and then moved into place with
``os.replace`` from a temp file in the same directory, so a failed run never
leaves a half-written CSV behind.
"""

from __future__ import annotations

import csv
import io
import logging
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from fuzzyspectrum.config.experiment import RadioConfig, SimConfig
from fuzzyspectrum.fuzzy.engine import DescriptorVector, FlsEngine, select_user
from fuzzyspectrum.radio.model import SecondaryUser, compute_descriptors, euclidean_distance
from fuzzyspectrum.simulation.metrics import MetricsRow
from fuzzyspectrum.simulation.runner import SweepPoint

logger = logging.getLogger(__name__)

METRICS_HEADER = (
    "arrival_rate",
    "policy",
    "blocking",
    "free_spectrum",
    "allocated_spectrum",
    "interference_hz",
    "system_efficiency",
    "channel_utilization",
)
REPLICATIONS_HEADER = METRICS_HEADER + ("seed", "dropping_probability")
GRID_HEADER = ("utilization_efficiency", "mobility", "distance", "possibility")
SNAPSHOT_HEADER = (
    "user",
    "x_m",
    "y_m",
    "distance_m",
    "utilization_efficiency",
    "mobility",
    "distance",
    "possibility",
)

GRID_STEPS = 21


def fmt(value: float) -> str:
    """Six significant digits, ``format(x, ".6g")``."""
    return format(float(value), ".6g")


def _csv_text(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def atomic_write_text(path: Path, text: str) -> Path:
    """Write ``text`` to ``path`` through a temp file and ``os.replace``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with tempfile.NamedTemporaryFile(
        "w", encoding="utf-8", dir=path.parent, prefix=f".{path.name}.", delete=False
    ) as tmp:
        tmp_path = Path(tmp.name)
        try:
            tmp.write(text)
        except BaseException:
            tmp.close()
            tmp_path.unlink(missing_ok=True)
            raise
    try:
        os.replace(tmp_path, path)
    except BaseException:
        tmp_path.unlink(missing_ok=True)
        raise
    logger.info("Wrote %s", path)
    return path


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------


def _metric_cells(row: MetricsRow) -> List[str]:
    return [
        fmt(row.arrival_rate),
        row.policy,
        fmt(row.blocking_probability),
        fmt(row.mean_free_spectrum),
        fmt(row.mean_allocated_spectrum),
        fmt(row.interference_spread),
        fmt(row.system_efficiency),
        fmt(row.channel_utilization),
    ]


def render_metrics_csv(points: Sequence[SweepPoint]) -> str:
    """One row per (arrival rate, policy), ordered by rate then policy."""
    rows = [
        _metric_cells(point.rows[policy])
        for point in sorted(points, key=lambda p: p.arrival_rate)
        for policy in sorted(point.rows)
    ]
    return _csv_text(METRICS_HEADER, rows)


def render_replications_csv(points: Sequence[SweepPoint]) -> str:
    rows = []
    for point in sorted(points, key=lambda p: p.arrival_rate):
        for policy in sorted(point.replications):
            for row in sorted(point.replications[policy], key=lambda r: r.seed):
                rows.append(
                    _metric_cells(row) + [str(row.seed), fmt(row.dropping_probability)]
                )
    return _csv_text(REPLICATIONS_HEADER, rows)


# ---------------------------------------------------------------------------
# Possibility grid
# ---------------------------------------------------------------------------


def possibility_grid(engine: FlsEngine, steps: int = GRID_STEPS) -> List[Tuple[float, float, float, float]]:
    """FLS output on a ``steps**3`` grid spanning each input variable's domain."""
    axes = [np.linspace(var.domain[0], var.domain[1], steps) for var in engine.variables]
    grid = []
    for u in axes[0]:
        for m in axes[1]:
            for d in axes[2]:
                descriptor = DescriptorVector(float(u), float(m), float(d))
                grid.append((float(u), float(m), float(d), engine.infer(descriptor)))
    return grid


def render_grid_csv(engine: FlsEngine, steps: int = GRID_STEPS) -> str:
    return _csv_text(
        GRID_HEADER,
        ([fmt(u), fmt(m), fmt(d), fmt(p)] for u, m, d, p in possibility_grid(engine, steps)),
    )


# ---------------------------------------------------------------------------
# Plot scripts
# ---------------------------------------------------------------------------

_METRIC_PLOT = '''"""{title}: FLS vs NSU over the arrival-rate sweep."""

import csv
from pathlib import Path

import matplotlib.pyplot as plt

HERE = Path(__file__).resolve().parent

series = {{}}
with open(HERE / "metrics.csv", newline="") as fh:
    for row in csv.DictReader(fh):
        series.setdefault(row["policy"], []).append(
            (float(row["arrival_rate"]), float(row["{column}"]))
        )

for policy, label, marker in (("fls", "Fuzzy Logic System", "o"), ("nsu", "NSU", "s")):
    points = sorted(series.get(policy, []))
    if points:
        plt.plot([p[0] for p in points], [p[1] for p in points], marker=marker, label=label)

plt.xlabel("Mean arrival rate")
plt.ylabel("{ylabel}")
plt.title("{title}")
plt.legend()
plt.grid(True)
plt.savefig(HERE / "{stem}.png", dpi=150)
'''

_DISTANCE_PLOT = '''"""Possibility against distance at mobility 5 for three utilization levels."""

import csv
from pathlib import Path

import matplotlib.pyplot as plt

HERE = Path(__file__).resolve().parent
MOBILITY = 5.0

curves = {{0.0: [], 50.0: [], 100.0: []}}
with open(HERE / "possibility_grid.csv", newline="") as fh:
    for row in csv.DictReader(fh):
        u = float(row["utilization_efficiency"])
        if u in curves and abs(float(row["mobility"]) - MOBILITY) < 1e-9:
            curves[u].append((float(row["distance"]), float(row["possibility"])))

for u, points in curves.items():
    points.sort()
    plt.plot([p[0] for p in points], [p[1] for p in points], label=f"utilization {{u:g}}")

plt.xlabel("Distance")
plt.ylabel("Possibility")
plt.title("{title}")
plt.legend()
plt.grid(True)
plt.savefig(HERE / "{stem}.png", dpi=150)
'''

# stem -> (metrics.csv column, y label, title)
METRIC_PLOTS: Dict[str, Tuple[str, str, str]] = {
    "plot_blocking": ("blocking", "Call blocking probability", "Mean arrival vs call blocking"),
    "plot_free_spectrum": ("free_spectrum", "Free channels", "Mean arrival vs free spectrum"),
    "plot_allocated_spectrum": (
        "allocated_spectrum",
        "Allocated channels",
        "Mean arrival vs allocated spectrum",
    ),
    "plot_interference": ("interference_hz", "Interference spread (Hz)", "Mean arrival vs interference"),
    "plot_system_efficiency": (
        "system_efficiency",
        "System efficiency",
        "Mean arrival vs system efficiency",
    ),
    "plot_channel_utilization": (
        "channel_utilization",
        "Channel utilization",
        "Mean arrival vs spectrum utilization",
    ),
}


def render_plot_scripts() -> Dict[str, str]:
    """File name -> script text for every figure."""
    scripts = {
        f"{stem}.py": _METRIC_PLOT.format(column=column, ylabel=ylabel, title=title, stem=stem)
        for stem, (column, ylabel, title) in METRIC_PLOTS.items()
    }
    scripts["plot_distance_possibility.py"] = _DISTANCE_PLOT.format(
        title="Distance vs possibility", stem="plot_distance_possibility"
    )
    return scripts


# ---------------------------------------------------------------------------
# Artifact set
# ---------------------------------------------------------------------------


def write_run_artifacts(
    directory: Path,
    points: Sequence[SweepPoint],
    engine: FlsEngine,
    emit_plots: bool = True,
) -> List[Path]:
    """Render every artifact, then move each into ``directory``."""
    files: Dict[str, str] = {
        "metrics.csv": render_metrics_csv(points),
        "replications.csv": render_replications_csv(points),
        "possibility_grid.csv": render_grid_csv(engine),
    }
    if emit_plots:
        files.update(render_plot_scripts())
    return [atomic_write_text(Path(directory) / name, text) for name, text in files.items()]


# ---------------------------------------------------------------------------
# Snapshot
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SnapshotEntry:
    user: int
    position: Tuple[float, float]
    distance_m: float
    descriptor: DescriptorVector
    possibility: float


@dataclass(frozen=True)
class Snapshot:
    """One static placement of users around a primary, scored by the FLS."""

    primary_position: Tuple[float, float]
    entries: Tuple[SnapshotEntry, ...]
    selected: int

    def _argmax(self, key) -> int:
        best = 0
        for i, entry in enumerate(self.entries):
            if key(entry) > key(self.entries[best]):
                best = i
        return self.entries[best].user

    @property
    def highest_utilization(self) -> int:
        return self._argmax(lambda e: e.descriptor.utilization_efficiency)

    @property
    def furthest(self) -> int:
        return self._argmax(lambda e: e.descriptor.distance)

    @property
    def lowest_mobility(self) -> int:
        return self._argmax(lambda e: -e.descriptor.mobility)


def take_snapshot(
    config: SimConfig,
    engine: FlsEngine,
    radio: Optional[RadioConfig] = None,
    seed: Optional[int] = None,
) -> Snapshot:
    """Place users and one primary at random and rank every user.

    Utilization is drawn on [0, 100] and speed on [0, max_speed]; distances are
    normalized over the placed population.
    """
    radio = radio or RadioConfig()
    rng = np.random.default_rng(np.random.SeedSequence(config.rng_seed if seed is None else seed))
    width, height = config.area
    pu = radio.primary_user((float(rng.uniform(0, width)), float(rng.uniform(0, height))))

    users: List[SecondaryUser] = []
    utilizations: List[float] = []
    for i in range(config.num_secondary_users):
        position = (float(rng.uniform(0, width)), float(rng.uniform(0, height)))
        users.append(SecondaryUser(id=i, position=position, speed=float(rng.uniform(0, config.max_speed))))
        utilizations.append(float(rng.uniform(0, 100)))

    descriptors = compute_descriptors(users, pu, config.max_speed, utilizations)
    selection = select_user(engine, descriptors)
    entries = tuple(
        SnapshotEntry(
            user=su.id,
            position=su.position,
            distance_m=euclidean_distance(su, pu),
            descriptor=d,
            possibility=p,
        )
        for su, d, p in zip(users, descriptors, selection.possibilities)
    )
    return Snapshot(primary_position=pu.position, entries=entries, selected=users[selection.index].id)


def render_snapshot_csv(snapshot: Snapshot) -> str:
    return _csv_text(
        SNAPSHOT_HEADER,
        (
            [
                str(e.user),
                fmt(e.position[0]),
                fmt(e.position[1]),
                fmt(e.distance_m),
                fmt(e.descriptor.utilization_efficiency),
                fmt(e.descriptor.mobility),
                fmt(e.descriptor.distance),
                fmt(e.possibility),
            ]
            for e in snapshot.entries
        ),
    )


def format_snapshot(snapshot: Snapshot) -> str:
    """Human-readable table with the selected and extreme users."""
    lines = [
        f"Primary user at ({snapshot.primary_position[0]:.2f}, {snapshot.primary_position[1]:.2f})",
        f"{'user':>4}  {'util':>8}  {'mobility':>8}  {'distance':>8}  {'possibility':>11}",
    ]
    for e in snapshot.entries:
        d = e.descriptor
        mark = "  *" if e.user == snapshot.selected else ""
        lines.append(
            f"{e.user:>4}  {d.utilization_efficiency:>8.4f}  {d.mobility:>8.4f}  "
            f"{d.distance:>8.4f}  {e.possibility:>11.4f}{mark}"
        )
    lines += [
        f"Selected user        : {snapshot.selected}",
        f"Highest utilization  : {snapshot.highest_utilization}",
        f"Furthest from primary: {snapshot.furthest}",
        f"Lowest mobility      : {snapshot.lowest_mobility}",
    ]
    return "\n".join(lines)


__all__ = [
    "METRICS_HEADER",
    "REPLICATIONS_HEADER",
    "GRID_HEADER",
    "SNAPSHOT_HEADER",
    "fmt",
    "atomic_write_text",
    "render_metrics_csv",
    "render_replications_csv",
    "possibility_grid",
    "render_grid_csv",
    "render_plot_scripts",
    "write_run_artifacts",
    "Snapshot",
    "SnapshotEntry",
    "take_snapshot",
    "render_snapshot_csv",
    "format_snapshot",
]
