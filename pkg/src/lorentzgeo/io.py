"""Fixture and report files.

Fixtures are JSON (schema-versioned, human-diffable): the space matrices,
optional line samples, chains, and the generator base when the fixture is
a product.  Reports are JSON with deterministic ordering; the runtime
block is excluded from the determinism contract.  Plot-ready series are
emitted as CSV, one file per series, stable column order.
"""

import hashlib
import json
from pathlib import Path

import numpy as np

from .errors import NoSeries, ShapeError
from .parallels import LineSample
from .sampled import Chain, SampledSpace
from .splitting import MetricSampleIn

FIXTURE_SCHEMA = 1
REPORT_SCHEMA = 1


def fixture_to_dict(space: SampledSpace, lines=(), chains=(), base: MetricSampleIn | None = None, meta=None) -> dict:
    doc = {
        "schema_version": FIXTURE_SCHEMA,
        "space": {
            "n": space.n,
            "tau": space.tau.tolist(),
            "causal": space.causal.astype(int).tolist(),
            "labels": space.labels,
            "meta": _plain(space.meta),
        },
        "lines": [
            {
                "points": ln.points.tolist(),
                "t0": ln.t0,
                "step": ln.step,
                "kind": ln.kind,
                "label": ln.label,
            }
            for ln in lines
        ],
        "chains": [
            {"points": ch.points.tolist(), "params": ch.params.tolist()} for ch in chains
        ],
        "base": None,
        "meta": _plain(meta or {}),
    }
    if base is not None:
        doc["base"] = {
            "dist": base.dist.tolist(),
            "labels": base.labels,
            "midpoints": [[int(i), int(j), int(m)] for (i, j), m in sorted(base.midpoints.items())],
            "meta": _plain(base.meta),
        }
    return doc


def fixture_from_dict(doc: dict):
    """Validate and rebuild (space, lines, chains, base, meta) from JSON."""
    if doc.get("schema_version") != FIXTURE_SCHEMA:
        raise ShapeError(f"unsupported fixture schema {doc.get('schema_version')!r}")
    sp = doc["space"]
    n = int(sp["n"])
    tau = np.asarray(sp["tau"], dtype=float)
    causal = np.asarray(sp["causal"], dtype=bool)
    if tau.shape != (n, n) or causal.shape != (n, n):
        raise ShapeError("fixture matrices do not match the declared point count")
    space = SampledSpace(tau=tau, causal=causal, labels=sp.get("labels"), meta=sp.get("meta", {}))
    lines = []
    for ln in doc.get("lines", []):
        pts = np.asarray(ln["points"], dtype=int)
        if pts.size and (pts.min() < 0 or pts.max() >= n):
            raise ShapeError("line references out-of-range point indices")
        lines.append(
            LineSample(points=pts, t0=float(ln["t0"]), step=float(ln["step"]), kind=ln.get("kind", "line"), label=ln.get("label"))
        )
    chains = []
    for ch in doc.get("chains", []):
        pts = np.asarray(ch["points"], dtype=int)
        if pts.size and (pts.min() < 0 or pts.max() >= n):
            raise ShapeError("chain references out-of-range point indices")
        chains.append(Chain(points=pts, params=np.asarray(ch["params"], dtype=float)))
    base = None
    if doc.get("base"):
        b = doc["base"]
        base = MetricSampleIn(
            dist=np.asarray(b["dist"], dtype=float),
            labels=b.get("labels"),
            midpoints={(int(i), int(j)): int(m) for i, j, m in b.get("midpoints", [])},
            meta=b.get("meta", {}),
        )
    return space, lines, chains, base, doc.get("meta", {})


def save_fixture(path, space, lines=(), chains=(), base=None, meta=None):
    doc = fixture_to_dict(space, lines, chains, base, meta)
    Path(path).write_text(json.dumps(doc, sort_keys=True))
    return path


def load_fixture(path):
    return fixture_from_dict(json.loads(Path(path).read_text()))


def _plain(obj):
    """Recursively convert numpy scalars/arrays so json can serialize them."""
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def file_digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def make_report(command: str, inputs: dict, tolerances: dict, checks: list, series: dict | None = None, runtime: dict | None = None) -> dict:
    return {
        "schema_version": REPORT_SCHEMA,
        "command": command,
        "inputs": _plain(inputs),
        "tolerances": _plain(tolerances),
        "checks": _plain(checks),
        "series": _plain(series or {}),
        "runtime": _plain(runtime or {}),
    }


def report_status(report: dict) -> int:
    """Exit code for a report: 0 all PASS/SKIP/INFO, 1 if any FAIL."""
    return 1 if any(c.get("status") == "FAIL" for c in report["checks"]) else 0


def save_report(path, report: dict):
    Path(path).write_text(json.dumps(report, sort_keys=True))
    return path


def load_report(path) -> dict:
    return json.loads(Path(path).read_text())


def deterministic_view(report: dict) -> str:
    """Serialized report without the runtime block (the determinism contract)."""
    clean = {k: v for k, v in report.items() if k != "runtime"}
    return json.dumps(clean, sort_keys=True)


def emit_plotdata(report: dict, out_dir, stem: str = "series"):
    """One CSV per series in the report; returns the written paths."""
    series = report.get("series") or {}
    if not series:
        raise NoSeries("report contains no plottable series")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name in sorted(series):
        table = series[name]
        cols = table["columns"]
        rows = table["rows"]
        lines = [",".join(cols)]
        for row in rows:
            lines.append(",".join(repr(float(v)) if isinstance(v, (int, float)) else str(v) for v in row))
        path = out_dir / f"{stem}_{name}.csv"
        path.write_text("\n".join(lines) + "\n")
        written.append(path)
    return written
