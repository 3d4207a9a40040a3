"""Machine-readable reports: CSV rows or a single JSON document."""
from __future__ import annotations

import csv
import io
import json
import math
import platform
from dataclasses import dataclass, field

from .. import _accel
from ..numerics.logcomplex import LogComplex


def _clean(v):
    if isinstance(v, float) and not math.isfinite(v):
        return "nan" if math.isnan(v) else ("inf" if v > 0 else "-inf")
    if isinstance(v, complex):
        return [_clean(v.real), _clean(v.imag)]
    if isinstance(v, dict):
        return {k: _clean(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_clean(x) for x in v]
    if hasattr(v, "item"):  # numpy scalars
        return _clean(v.item())
    return v


def value_fields(value) -> dict:
    """``log_mag`` and ``arg`` of a LogComplex (or anything convertible to complex)."""
    if not isinstance(value, LogComplex):
        value = LogComplex.from_complex(complex(value))
    return {"log_mag": float(value.log_mag), "arg": float(value.arg)}


def sum_record(rid: str, inputs: dict, s, **extra) -> dict:
    """Record for a TruncatedSum: value, tail, rounding allowance and flags."""
    rec = {"id": rid, **inputs, **value_fields(s.value), "tail_estimate": float(s.tail_estimate),
           "rounding_error": float(s.rounding_error), "terms": int(s.terms), **extra,
           "flags": list(s.flags)}
    return rec


@dataclass
class Report:
    command: dict
    records: list = field(default_factory=list)
    environment: dict = field(default_factory=dict)
    wall_time: float = 0.0
    summary: dict = field(default_factory=dict)

    def add(self, rec: dict) -> None:
        self.records.append(rec)

    def to_json(self) -> str:
        env = {"backend": _accel.backend(), "python": platform.python_version(), **self.environment}
        doc = {"command": self.command, "records": self.records, "summary": self.summary,
               "environment": env, "wall_time": self.wall_time}
        return json.dumps(_clean(doc), indent=2, sort_keys=False)

    def to_csv(self) -> str:
        cols: list[str] = []
        for r in self.records:
            for k in r:
                if k not in cols:
                    cols.append(k)
        if "flags" in cols:  # flags last, as in the column contract
            cols.remove("flags")
            cols.append("flags")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in self.records:
            row = []
            for c in cols:
                v = _clean(r.get(c, ""))
                if c == "flags":
                    v = "|".join(v) if v else ""
                elif isinstance(v, float):
                    v = repr(v)
                elif isinstance(v, list):
                    v = " ".join(str(x) for x in v)
                row.append(v)
            w.writerow(row)
        for k, v in self.summary.items():
            buf.write(f"# {k}: {_clean(v)}\n")
        return buf.getvalue()
