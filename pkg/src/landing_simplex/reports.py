"""Plot-data and metrics files for simulation runs.

Trace CSVs start with a ``# schema=<n>`` line followed by a header row; the
column order is fixed per schema version so downstream scripts can rely on
it. Readers should reject versions they do not know.
"""

from __future__ import annotations

import csv
import dataclasses
import json
from pathlib import Path

import numpy as np

from .detectability import detectability_curve
from .envelope import envelope_curve
from .harness import TRACE_COLUMNS, RunResult

TRACE_SCHEMA_VERSION = 1


def write_trace_csv(result: RunResult, path) -> Path:
    path = Path(path)
    tr = result.trace
    with open(path, "w", newline="") as fh:
        fh.write(f"# schema={TRACE_SCHEMA_VERSION}\n")
        w = csv.writer(fh)
        w.writerow(TRACE_COLUMNS)
        cols = [tr[c] for c in TRACE_COLUMNS]
        for row in zip(*cols):
            w.writerow([_cell(v) for v in row])
    return path


def _cell(v):
    if isinstance(v, (float, np.floating)):
        return "" if np.isnan(v) else repr(float(v))
    return v.item() if isinstance(v, np.generic) else v


def read_trace_csv(path) -> dict[str, np.ndarray]:
    with open(path, newline="") as fh:
        first = fh.readline().strip()
        if first != f"# schema={TRACE_SCHEMA_VERSION}":
            raise ValueError(f"unsupported trace schema line {first!r}")
        rows = list(csv.DictReader(fh))
    out = {}
    for col in TRACE_COLUMNS:
        vals = [r[col] for r in rows]
        if col in ("decision", "envelope"):
            out[col] = np.asarray(vals)
        else:
            out[col] = np.array([float(v) if v != "" else np.nan for v in vals])
    return out


def metrics_record(result: RunResult) -> dict:
    rec = dataclasses.asdict(result.metrics)
    rec["terminal"] = result.metrics.terminal
    rec["D_det"] = result.D_det
    rec["a_max_wc"] = result.a_max_wc
    rec["violations"] = [list(v) for v in result.violations]
    rec["transitions"] = [
        {"t": tr.t, "from": tr.previous.value, "to": tr.current.value,
         "cause_range": tr.cause_range, "stopping_reach": tr.stopping_reach}
        for tr in result.transitions
    ]
    return rec


def append_jsonl(record: dict, path) -> Path:
    path = Path(path)
    with open(path, "a") as fh:
        fh.write(json.dumps(record, sort_keys=True) + "\n")
    return path


def write_envelope_csvs(out_dir, a_max_wc: float, a_max_dc: float, L_max: float, D_det: float,
                        distances=None) -> list[Path]:
    """Safe-speed boundary vs obstacle distance for {WC, DC} x {no latency, L_max}."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    distances = np.linspace(0.0, 1.2 * D_det, 121) if distances is None else np.asarray(distances)
    paths = []
    for label, a in (("wc", a_max_wc), ("dc", a_max_dc)):
        for lat_label, L in (("L0", 0.0), ("Lmax", L_max)):
            path = out_dir / f"envelope_{label}_{lat_label}.csv"
            v = envelope_curve(a, L, D_det, distances)
            with open(path, "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["distance", "v_safe_max", "a_max", "L_max", "D_det"])
                for d, vs in zip(distances, v):
                    w.writerow([repr(float(d)), repr(float(vs)), a, L, D_det])
            paths.append(path)
    return paths


def write_detectability_csv(path, gap_deg: float, max_distance: float = 120.0, n: int = 121) -> Path:
    path = Path(path)
    d, dim = detectability_curve(gap_deg, max_distance, n)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["distance", "min_dimension"])
        for a, b in zip(d, dim):
            w.writerow([repr(float(a)), repr(float(b))])
    return path


def emit_reports(result: RunResult, out_dir, stem: str | None = None) -> dict[str, Path]:
    """Trace CSV, metrics JSON and a JSON-lines record for one run."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = stem or f"{result.metrics.scenario}_{result.metrics.mode}"
    rec = metrics_record(result)
    metrics_path = out_dir / f"{stem}_metrics.json"
    metrics_path.write_text(json.dumps(rec, indent=2, sort_keys=True) + "\n")
    return {
        "trace": write_trace_csv(result, out_dir / f"{stem}_trace.csv"),
        "metrics": metrics_path,
        "runs": append_jsonl(rec, out_dir / "runs.jsonl"),
    }
