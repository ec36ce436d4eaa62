"""
CSV and SVG output for experiment records.

Both writers go through a temporary file in the target directory that is
renamed into place, so a failed run leaves no partial file behind.
"""

import csv
import logging
import os
import tempfile
from contextlib import contextmanager
from typing import Callable, Iterator, List, Sequence, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from constants import GRID_COLUMNS, TRACE_COLUMNS, TWO_QUBIT_COLUMNS  # noqa: E402
from errors import RecordIOError  # noqa: E402
from experiments.records import GridRecord, TimeSeriesRecord  # noqa: E402
from utils import format_sig  # noqa: E402

logger = logging.getLogger(__name__)

Record = Union[TimeSeriesRecord, GridRecord]

SVG_HASH_SALT = "qarrow"


@contextmanager
def _atomic_path(path: str, suffix: str) -> Iterator[str]:
    """Yield a temp path next to `path`; rename it over `path` on success, remove it on failure"""
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp_path = tempfile.mkstemp(prefix=".tmp-", suffix=suffix, dir=directory)
        os.close(fd)
    except OSError as e:
        raise RecordIOError(f"cannot write {path}: {e}") from e
    try:
        yield tmp_path
        os.replace(tmp_path, path)
    except OSError as e:
        raise RecordIOError(f"cannot write {path}: {e}") from e
    finally:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)


def _check_records(records: Sequence[Record]) -> List[str]:
    if not records:
        raise RecordIOError("no records to write")
    columns = records[0].columns()
    if any(r.columns() != columns for r in records):
        raise RecordIOError("records mix different schemas")
    return columns


def emit_csv(records: Sequence[Record], path: str) -> str:
    """
    Write records as CSV

    Args:
        records: Non-empty list of records sharing one schema
        path: Target file

    Returns:
        The path written
    """
    columns = _check_records(records)
    with _atomic_path(path, ".csv") as tmp_path:
        with open(tmp_path, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(columns)
            for record in records:
                writer.writerow([format_sig(v) for v in record.values()])
    logger.info(f"Wrote {len(records)} rows to {path}")
    return path


def _time_series_from_row(row: dict, time_key: str) -> TimeSeriesRecord:
    values = {k: float(v) for k, v in row.items() if k != time_key}
    return TimeSeriesRecord(time=float(row[time_key]), **values)


def load_records(path: str) -> List[Record]:
    """
    Read back a CSV written by emit_csv

    The schema is recognized from the header row.
    """
    try:
        with open(path, "r", newline="") as f:
            reader = csv.DictReader(f)
            header = list(reader.fieldnames or [])
            rows = list(reader)
    except OSError as e:
        raise RecordIOError(f"cannot read {path}: {e}") from e

    try:
        if header == TWO_QUBIT_COLUMNS:
            records = [_time_series_from_row(row, "time") for row in rows]
        elif header == TRACE_COLUMNS:
            records = [_time_series_from_row(row, "tau") for row in rows]
        elif header == GRID_COLUMNS:
            records = [GridRecord(**{k: float(v) for k, v in row.items()}) for row in rows]
        else:
            raise RecordIOError(f"{path}: unrecognized header {','.join(header)}")
    except (TypeError, ValueError) as e:
        raise RecordIOError(f"{path}: malformed row: {e}") from e

    if not records:
        raise RecordIOError(f"{path}: no data rows")
    logger.debug(f"Loaded {len(records)} records from {path}")
    return records


def _plot_time_series(records: Sequence[TimeSeriesRecord]):
    times = [r.time for r in records]
    fig, (ax_energy, ax_metric) = plt.subplots(2, 1, sharex=True, figsize=(7, 6), constrained_layout=True)

    if records[0].is_three_qubit:
        energies = [("e_a", "$E_A$"), ("e_b", "$E_B$"), ("e_c", "$E_C$")]
        metrics = [("c_ab", r"$C(\rho_{AB})$"), ("c_bc", r"$C(\rho_{BC})$"), ("c_ac", r"$C(\rho_{AC})$")]
        x_label = r"$\tau$"
    else:
        energies = [("e_a", "$E_A$"), ("e_b", "$E_B$")]
        metrics = [("complexity", "complexity"), ("concurrence", "concurrence")]
        x_label = "$t$"

    for key, label in energies:
        ax_energy.plot(times, [getattr(r, key) for r in records], label=label)
    for key, label in metrics:
        ax_metric.plot(times, [getattr(r, key) for r in records], label=label)

    ax_energy.set_ylabel("internal energy")
    ax_metric.set_ylabel("complexity / entanglement")
    ax_metric.set_xlabel(x_label)
    ax_energy.legend()
    ax_metric.legend()
    return fig


def _plot_grid(records: Sequence[GridRecord]):
    s_values = sorted({r.s for r in records})
    t_values = sorted({r.t for r in records})
    shape = (len(t_values), len(s_values))
    if shape[0] * shape[1] != len(records):
        raise RecordIOError(f"grid records do not form a full {shape[0]}x{shape[1]} grid")

    panels = [("e_a", "$E_A$"), ("e_b", "$E_B$"), ("e_c", "$E_C$"),
              ("c_ab", r"$C(\rho_{AB})$"), ("c_bc", r"$C(\rho_{BC})$"), ("c_ac", r"$C(\rho_{AC})$")]
    extent = [s_values[0], s_values[-1], t_values[0], t_values[-1]]

    fig, axes = plt.subplots(2, 3, figsize=(13, 8), constrained_layout=True)
    for ax, (key, label) in zip(axes.flat, panels):
        # records are t-major, so rows are t and columns are s
        surface = np.array([getattr(r, key) for r in records]).reshape(shape)
        image = ax.imshow(surface, origin="lower", extent=extent, aspect="auto", cmap="viridis")
        fig.colorbar(image, ax=ax)
        ax.set_title(f"{label}\nmin {surface.min():.4g}, max {surface.max():.4g}")
        ax.set_xlabel("$s$")
        ax.set_ylabel("$t$")
    return fig


def emit_plot(records: Sequence[Record], path: str) -> str:
    """
    Render records as a standalone SVG

    Time series become two panels sharing the time axis (energies, then
    complexity and concurrence); grids become a 2x3 panel of heatmaps.
    """
    _check_records(records)
    builder: Callable = _plot_grid if isinstance(records[0], GridRecord) else _plot_time_series

    with matplotlib.rc_context({"svg.hashsalt": SVG_HASH_SALT, "svg.fonttype": "none"}):
        fig = builder(records)
        try:
            with _atomic_path(path, ".svg") as tmp_path:
                fig.savefig(tmp_path, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)

    logger.info(f"Wrote plot to {path}")
    return path
