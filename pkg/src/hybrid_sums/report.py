"""Serialization of check and audit results into deterministic reports.

Records are plain dicts with stable field names.  Rationals are written as
"num/den", high-precision values as ``{"value": ..., "bits": ...}``.  The
report body carries no timestamp; :func:`write_report` puts one in a sidecar
file next to the body.
"""
from __future__ import annotations

import csv
import io
import json
import os
from collections import defaultdict
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Dict, List, Optional

from . import __version__
from .audit import FAIL, PASS, THEOREM_FORMS, UNMET, AuditVerdict, CheckResult
from .hp_numeric import hp_to_json
from .rational_core import PiPower, format_rational

__all__ = [
    "Report",
    "check_record",
    "audit_record",
    "unmet_audit_record",
    "record_sort_key",
    "summarize",
    "findings",
    "render_json",
    "render_csv",
    "write_report",
    "ResultCache",
]


def _value(x, ctx):
    if x is None:
        return None
    if isinstance(x, (Fraction, int)):
        return format_rational(Fraction(x))
    if isinstance(x, PiPower):
        return x.to_json()
    return hp_to_json(x, ctx)


def _tol(tol, ctx) -> str:
    if ctx is None:
        return format_rational(Fraction(tol or 0))
    return ctx.mp.nstr(tol, 12)


def check_record(r: CheckResult) -> dict:
    return {
        "id": r.id,
        "params": dict(r.params),
        "kind": r.kind,
        "lhs": _value(r.lhs, r.ctx),
        "rhs": _value(r.rhs, r.ctx),
        "diff": {"abs": _value(r.abs_diff, r.ctx), "rel": _value(r.rel_diff, r.ctx)},
        "status": r.status,
        "pass": r.passed,
        "bits": r.bits,
        "tol": _tol(r.tol, r.ctx) if r.status != UNMET else None,
        "note": r.note,
    }


def audit_record(v: AuditVerdict) -> dict:
    ctx = v.ctx
    rec = {
        "id": f"Theorem{v.theorem}",
        "params": {"q": v.q, "h": None, "m": v.m, "n": v.n},
        "kind": "audit",
        "lhs": _value(v.lhs, ctx),
        "imag_residue": _value(v.imag_residue, ctx),
        "candidates": {k: format_rational(c) for k, c in v.candidates.items()},
        "diff": {k: _value(d, ctx) for k, d in v.rel_diffs.items()},
        "verdict": list(v.verdict),
        "pipeline": {
            "value": _value(v.pipeline, ctx),
            "rel_diff": _value(v.pipeline_rel_diff, ctx),
            "pass": v.pipeline_pass,
        },
        "status": PASS if v.pipeline_pass else FAIL,
        "bits": v.bits,
        "tol": _tol(v.tol, ctx),
    }
    if v.secondary:
        sec = dict(v.secondary)
        sec["lhs"] = _value(sec["lhs"], ctx)
        sec["imag_residue"] = _value(sec["imag_residue"], ctx)
        sec["verdict"] = list(sec["verdict"])
        rec["secondary"] = sec
    return rec


def unmet_audit_record(theorem: int, q: int, m: int, n: int, reason: str) -> dict:
    return {
        "id": f"Theorem{theorem}",
        "params": {"q": q, "h": None, "m": m, "n": n},
        "kind": "audit",
        "status": UNMET,
        "pass": False,
        "note": reason,
    }


def record_sort_key(rec: dict):
    p = rec["params"]
    key = [rec["id"]]
    for name in ("q", "m", "n", "h", "chi"):
        v = p.get(name)
        key.append(-1 if v is None else v)
    return tuple(key)


def _float(value) -> float:
    """Magnitude of a serialized value ("num/den" or an HP dict) for ranking."""
    if not value:
        return 0.0
    if isinstance(value, dict):
        return float(value["value"])
    return float(Fraction(value))


def _where(rec: dict) -> str:
    p = rec["params"]
    return ", ".join(f"{k}={p[k]}" for k in ("q", "h", "m", "n", "chi") if p.get(k) is not None)


def summarize(records: List[dict]) -> dict:
    counts = {PASS: 0, FAIL: 0, UNMET: 0}
    by_id: Dict[str, Dict[str, int]] = defaultdict(lambda: {PASS: 0, FAIL: 0, UNMET: 0})
    hard = 0
    for rec in records:
        counts[rec["status"]] += 1
        by_id[rec["id"]][rec["status"]] += 1
        if rec["kind"] == "exact" and rec["status"] == FAIL:
            hard += 1
    audits = sum(1 for r in records if r["kind"] == "audit" and r["status"] != UNMET)
    return {
        **counts,
        "records": len(records),
        "audits": audits,
        "hard_failures": hard,
        "by_id": {k: by_id[k] for k in sorted(by_id)},
    }


def _audit_findings(theorem_id: str, recs: List[dict]) -> List[str]:
    out = []
    label = lambda s: "{" + ", ".join(s) + "}"
    groups: Dict[tuple, List[dict]] = defaultdict(list)
    for r in recs:
        groups[tuple(r["verdict"])].append(r)
    name = theorem_id.replace("Theorem", "Theorem ")
    if len(groups) == 1:
        (only,) = groups
        out.append(f"{name}: verdict {label(only)} is consistent across all {len(recs)} instances")
    else:
        parts = []
        for s, members in sorted(groups.items(), key=lambda kv: (-len(kv[1]), kv[0])):
            where = "; ".join(_where(r) for r in members[:4])
            more = "" if len(members) <= 4 else f" and {len(members) - 4} more"
            parts.append(f"{label(s)} on {len(members)} ({where}{more})")
        out.append(f"{name}: verdict is NOT consistent across instances: " + " | ".join(parts))
    differ = [r for r in recs if r["candidates"]["statement"] != r["candidates"]["proof"]]
    if differ:
        out.append(f"{name}: statement and proof-final forms disagree on {len(differ)}/{len(recs)} instances")
    for form in THEOREM_FORMS:
        worst = max(recs, key=lambda r: _float(r["diff"][form]))
        matched = sum(1 for r in recs if form in r["verdict"])
        if matched < len(recs):
            out.append(
                f"{name}: {form} form matches brute force on {matched}/{len(recs)} instances, "
                f"max rel. discrepancy {_float(worst['diff'][form]):.6g} at {_where(worst)}"
            )
        else:
            out.append(f"{name}: {form} form matches brute force on all {len(recs)} instances")
    bad = [r for r in recs if not r["pipeline"]["pass"]]
    out.append(f"{name}: L-function pipeline agrees with brute force on {len(recs) - len(bad)}/{len(recs)} instances")
    secondary = [r for r in recs if "secondary" in r]
    if secondary:
        agree = sum(1 for r in secondary if r["secondary"]["verdict"] == r["verdict"])
        out.append(
            f"{name}: units-only summation range gives the same verdict on {agree}/{len(secondary)} instances"
        )
    return out


def findings(records: List[dict]) -> List[str]:
    """Human-readable summary lines; one block per identity id, in id order."""
    by_id: Dict[str, List[dict]] = defaultdict(list)
    for rec in records:
        by_id[rec["id"]].append(rec)
    out: List[str] = []
    for id_ in sorted(by_id):
        recs = by_id[id_]
        tested = [r for r in recs if r["status"] != UNMET]
        if not tested:
            continue
        if tested[0]["kind"] == "audit":
            out.extend(_audit_findings(id_, tested))
            continue
        failed = [r for r in tested if r["status"] == FAIL]
        if failed:
            worst = max(failed, key=lambda r: _float(r["diff"]["rel"]))
            gap = f"{_float(worst['diff']['rel']):.6g}"
            out.append(
                f"{id_}: {len(failed)}/{len(tested)} {tested[0]['kind']} checks fail; "
                f"first at {_where(failed[0])}; largest rel. difference {gap} at {_where(worst)}"
            )
    readings = [by_id.get("Prop1.1/s1[h/2]", []), by_id.get("Prop1.1/s1[2bar*h]", [])]
    if all(readings):
        same = sum(1 for a, b in zip(*readings) if a["status"] == b["status"] and a["rhs"] == b["rhs"])
        out.append(f"Prop1.1/s1: the h/2 and 2bar*h readings agree on {same}/{len(readings[0])} instances")
    return out


@dataclass
class Report:
    config: dict
    records: List[dict]
    version: str = __version__
    summary: dict = field(init=False)
    findings: List[str] = field(init=False)

    def __post_init__(self):
        self.records = sorted(self.records, key=record_sort_key)
        self.summary = summarize(self.records)
        self.findings = findings(self.records)

    def body(self) -> dict:
        return {
            "version": self.version,
            "config": self.config,
            "records": self.records,
            "summary": self.summary,
            "findings": self.findings,
        }


def render_json(report: Report) -> str:
    return json.dumps(report.body(), indent=2, sort_keys=True) + "\n"


def _flatten(prefix: str, value, out: dict) -> None:
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else k, value[k], out)
    elif isinstance(value, list):
        out[prefix] = "|".join(str(v) for v in value)
    else:
        out[prefix] = "" if value is None else value


def render_csv(report: Report) -> str:
    rows = []
    for rec in report.records:
        flat: dict = {}
        _flatten("", rec, flat)
        rows.append(flat)
    lead = ["id", "params.q", "params.h", "params.m", "params.n", "kind", "status"]
    rest = sorted({k for row in rows for k in row} - set(lead))
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=lead + rest, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: row.get(k, "") for k in lead + rest})
    return buf.getvalue()


def write_report(report: Report, path: Optional[str], fmt: str = "json") -> str:
    """Render ``report``; write it (and a timestamp sidecar) when ``path`` is given."""
    text = render_json(report) if fmt == "json" else render_csv(report)
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        sidecar = {"generated_at": datetime.now(timezone.utc).isoformat(), "report": os.path.basename(path)}
        with open(path + ".meta.json", "w", encoding="utf-8") as fh:
            json.dump(sidecar, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return text


class ResultCache:
    """Append-only JSON-lines store of serialized records, keyed by task."""

    def __init__(self, path: Optional[str]):
        self.path = path
        self._entries: Dict[str, List[dict]] = {}
        if path and os.path.exists(path):
            with open(path, encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        entry = json.loads(line)
                        self._entries[entry["key"]] = entry["records"]

    @staticmethod
    def key(task) -> str:
        return json.dumps(task, sort_keys=True, separators=(",", ":"))

    def get(self, task) -> Optional[List[dict]]:
        return self._entries.get(self.key(task))

    def put(self, task, records: List[dict]) -> None:
        k = self.key(task)
        if k in self._entries:
            return
        self._entries[k] = records
        if self.path:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps({"key": k, "records": records}, sort_keys=True) + "\n")
