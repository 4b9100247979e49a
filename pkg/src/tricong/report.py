"""Sweep configuration and machine-readable reports.

Reports are deterministic: records are sorted by (id, parameters) before
emission and the payload carries no timestamps, so identical configurations
produce byte-identical output at any parallelism level.  Large values are
serialized as decimal strings to survive 64-bit consumers.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, fields

from . import __version__


class ReportWriteError(OSError):
    """The report destination could not be written."""


_KIND_ORDER = {"congruence": 0, "identity": 1, "lemma": 2}


@dataclass
class SweepConfig:
    """Everything a sweep needs; also the schema of ``--config`` files."""

    targets: list = field(default_factory=list)
    prime_min: int = 5
    prime_max: int = 97
    b_range: tuple = (-4, 4)
    c_range: tuple = (-4, 4)
    x_range: tuple = (1, 8)
    n_max: int = 40
    modulus_margin: int = 2
    output_format: str = "json"
    output_path: str | None = None
    parallelism: int | str = 1

    def validate(self):
        if self.prime_min < 5:
            raise ValueError(f"prime_min={self.prime_min} must be >= 5")
        if self.prime_max < self.prime_min:
            raise ValueError(f"prime_max={self.prime_max} < prime_min={self.prime_min}")
        for name in ("b_range", "c_range", "x_range"):
            lo, hi = getattr(self, name)
            if hi < lo:
                raise ValueError(f"{name}=({lo}, {hi}) is empty")
        if self.n_max < 0:
            raise ValueError(f"n_max={self.n_max} must be >= 0")
        if self.modulus_margin < 2:
            raise ValueError(
                f"modulus_margin={self.modulus_margin} must be >= 2 (the deepest "
                "division nest is two p-divisions)"
            )
        if self.output_format not in ("json", "csv"):
            raise ValueError(f"output_format={self.output_format!r} not in {{json, csv}}")
        if not (self.parallelism == "auto" or (isinstance(self.parallelism, int) and self.parallelism >= 1)):
            raise ValueError(f"parallelism={self.parallelism!r} must be a positive count or 'auto'")

    def echo(self) -> dict:
        # parallelism and output_path are execution details: leaving them out
        # keeps reports byte-identical across worker counts and destinations
        return {
            "targets": list(self.targets),
            "prime_min": self.prime_min,
            "prime_max": self.prime_max,
            "b_range": list(self.b_range),
            "c_range": list(self.c_range),
            "x_range": list(self.x_range),
            "n_max": self.n_max,
            "modulus_margin": self.modulus_margin,
            "output_format": self.output_format,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SweepConfig":
        known = {f.name for f in fields(cls)}
        bad = sorted(set(data) - known)
        if bad:
            raise ValueError(f"unknown config fields: {', '.join(bad)}")
        cfg = cls(**{k: v for k, v in data.items() if k in known})
        for name in ("b_range", "c_range", "x_range"):
            setattr(cfg, name, tuple(getattr(cfg, name)))
        return cfg


@dataclass
class Report:
    """Sorted records plus per-target accounting; ``failed == 0`` means exit 0."""

    config: SweepConfig
    records: list
    summary: dict
    notes: list
    flags: list
    wall_time: float = 0.0  # informational only; never serialized (determinism)
    tool_version: str = __version__

    @classmethod
    def build(cls, records, config, notes=(), wall_time: float = 0.0) -> "Report":
        records = sorted(records, key=lambda r: (_KIND_ORDER[r.kind], r.sort_key()))
        per_target: dict[str, dict] = {}
        for rec in records:
            fieldsd = rec.to_fields()
            tid = fieldsd["id"]
            entry = per_target.setdefault(
                tid,
                {"checked": 0, "passed": 0, "skipped": 0, "failed": 0, "min_verified_exponent": None},
            )
            if rec.status == "skip":
                entry["skipped"] += 1
                continue
            entry["checked"] += 1
            if rec.status == "pass":
                entry["passed"] += 1
            else:
                entry["failed"] += 1
            v = fieldsd["residual_valuation"]
            if v is not None:
                cur = entry["min_verified_exponent"]
                entry["min_verified_exponent"] = v if cur is None else min(cur, v)
        totals = {
            "checked": sum(e["checked"] for e in per_target.values()),
            "passed": sum(e["passed"] for e in per_target.values()),
            "skipped": sum(e["skipped"] for e in per_target.values()),
            "failed": sum(e["failed"] for e in per_target.values()),
        }
        flags = []
        for tid in sorted(per_target):
            entry = per_target[tid]
            stated = _stated_exponent(tid)
            if stated is None or entry["checked"] == 0:
                continue
            top = entry.get("min_verified_exponent")
            if entry["failed"] == entry["checked"] and top is not None and top < stated:
                flags.append(
                    f"{tid}: stated exponent {stated} never reached; "
                    f"records verify at >= {top} everywhere"
                )
        summary = dict(totals)
        summary["per_target"] = {tid: per_target[tid] for tid in sorted(per_target)}
        return cls(
            config=config,
            records=records,
            summary=summary,
            notes=sorted(set(notes)),
            flags=flags,
            wall_time=wall_time,
        )

    @property
    def failed(self) -> int:
        return self.summary["failed"]

    def to_json_doc(self) -> dict:
        return {
            "version": self.tool_version,
            "config": self.config.echo(),
            "summary": self.summary,
            "notes": self.notes,
            "flags": self.flags,
            "records": [_json_record(r) for r in self.records],
        }


def _stated_exponent(target_id: str):
    from .identity_suite import LEMMAS
    from .verifier import TARGETS

    if target_id in TARGETS:
        return TARGETS[target_id].stated_exponent
    if target_id in LEMMAS:
        return LEMMAS[target_id].required_valuation
    return None


_CSV_COLUMNS = ("kind", "id", "p", "b", "c", "lhs", "rhs", "residual_valuation", "status", "args")


def _json_record(rec) -> dict:
    f = rec.to_fields()
    out = {"kind": f["kind"], "id": f["id"]}
    for key in ("p", "b", "c", "x"):
        if f[key] is not None:
            out[key] = f[key]
    out["lhs"] = f["lhs"]
    out["rhs"] = f["rhs"]
    out["residual_valuation"] = f["residual_valuation"]
    out["status"] = f["status"]
    if f["args"]:
        out["args"] = f["args"]
    return out


def _csv_cell(v) -> str:
    return "" if v is None else str(v)


def render(report: Report, output_format: str) -> str:
    """Serialize a report to its JSON or CSV text form."""
    if output_format == "json":
        return json.dumps(report.to_json_doc(), indent=2) + "\n"
    if output_format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(_CSV_COLUMNS)
        for rec in report.records:
            f = rec.to_fields()
            extra = f["args"] or ""
            if f["x"] is not None:
                extra = f"x={f['x']}" + (f";{extra}" if extra else "")
            writer.writerow(
                [
                    _csv_cell(f["kind"]),
                    _csv_cell(f["id"]),
                    _csv_cell(f["p"]),
                    _csv_cell(f["b"]),
                    _csv_cell(f["c"]),
                    _csv_cell(f["lhs"]),
                    _csv_cell(f["rhs"]),
                    _csv_cell(f["residual_valuation"]),
                    _csv_cell(f["status"]),
                    extra,
                ]
            )
        return buf.getvalue()
    raise ValueError(f"unknown format {output_format!r}")


def emit_report(report: Report, output_format: str, path: str | None) -> None:
    """Write the rendered report to ``path`` (or stdout when path is None)."""
    text = render(report, output_format)
    if path is None:
        import sys

        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ReportWriteError(f"cannot write report to {path}: {exc}") from exc
