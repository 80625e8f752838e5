"""
export.py

CSV and JSON writers for CLI results. Every float is printed with 10
significant digits so deterministic outputs are byte-stable; absent values are
empty CSV cells and JSON nulls.
"""

import io
import json
import math
from typing import Any, Iterable, Optional, Sequence

import pandas as pd
from pydantic import BaseModel

from schemas.cutoff import SeparationProfile
from schemas.measure import RateMeasure
from schemas.walk import SimResult

FLOAT_FORMAT = "%.10g"
# Measure files keep full precision so they read back to the same atoms
EXACT_FORMAT = "%.17g"

PROFILE_COLUMNS = ["c", "t", "sep", "lower", "upper"]
SAMPLE_COLUMNS = ["replica", "time"]


def round_floats(value: Any) -> Any:
    """Recursively round floats to 10 significant digits (non-finite floats become None)."""
    if isinstance(value, float):
        return float(FLOAT_FORMAT % value) if math.isfinite(value) else None
    if isinstance(value, dict):
        return {k: round_floats(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_floats(v) for v in value]
    return value


def to_json(payload: Any) -> str:
    """Serialize a model, a list of models or plain data to indented JSON."""
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json")
    elif isinstance(payload, list):
        payload = [p.model_dump(mode="json") if isinstance(p, BaseModel) else p for p in payload]
    return json.dumps(round_floats(payload), indent=2) + "\n"


def frame_to_csv(frame: pd.DataFrame) -> str:
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, na_rep="", lineterminator="\n")
    return buffer.getvalue()


def table_to_csv(columns: Sequence[str], rows: Iterable[Sequence[Optional[float]]]) -> str:
    """Write rows as CSV; None becomes an empty cell."""
    frame = pd.DataFrame(list(rows), columns=list(columns))
    return frame_to_csv(frame)


def profile_to_csv(profile: SeparationProfile) -> str:
    """CSV with header `c,t,sep,lower,upper`."""
    rows = [(r.c, r.t, r.sep, r.lower, r.upper) for r in profile.rows]
    frame = pd.DataFrame(rows, columns=PROFILE_COLUMNS).astype(float)
    return frame_to_csv(frame)


def samples_to_csv(result: SimResult) -> str:
    """CSV with header `replica,time`, one row per replica."""
    frame = pd.DataFrame({"replica": range(result.replicas), "time": list(result.samples)})
    return frame_to_csv(frame)


def simulation_summary(result: SimResult, extra: Optional[dict] = None) -> dict:
    """JSON summary: seed, replicas, kind and the 0.5/0.9/0.99 quantiles."""
    summary = {
        "seed": result.seed,
        "replicas": result.replicas,
        "kind": result.kind,
        "n": result.spec.n,
        "quantiles": result.quantiles(),
    }
    summary.update(extra or {})
    return summary


def measure_to_csv(measure: RateMeasure) -> str:
    """
    Write a measure in the format `read_measure_csv` accepts.

    Measures with counts are written as `rate,count` and carry their own n;
    the others as `rate,mass`, which need n again when read back.
    """
    if measure.counts is not None:
        frame = pd.DataFrame({"rate": list(measure.rates), "count": list(measure.counts)})
    else:
        frame = pd.DataFrame({"rate": list(measure.rates), "mass": list(measure.masses)})
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format=EXACT_FORMAT, lineterminator="\n")
    return buffer.getvalue()


def measure_to_json(measure: RateMeasure) -> str:
    atoms = [{"rate": r, "mass": m} for r, m in zip(measure.rates, measure.masses)]
    return json.dumps({"n": measure.n, "atoms": atoms}, indent=2) + "\n"
