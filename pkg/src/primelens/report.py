"""Aggregation of emitted CSVs into plot data and a pass/fail summary.

Inputs are recognized by their exact header row. Plot data is two-column
x y text, one point per line; rendering is left to external tools so the
outputs stay diffable. The JSON summary is versioned and deterministic.
"""

import csv
import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DomainError
from .mertens import MERTENS_LIMIT_CONSTANT

SCHEMA_VERSION = 1

# exact header -> section name
HEADERS = {
    ("n", "p_n", "p_next", "gap"): "prime_gaps",
    ("n", "entropy", "q_n", "entropy_rate", "ratio_to_loglog"): "levelset",
    ("n", "product", "corrected", "delta", "bound", "entropy", "loglog", "ratio", "scaled"): "mertens",
    ("n", "p_n", "p_next", "gap", "ratio", "halting_lower", "mean_halting"): "cramer",
    ("N", "pi", "bits_per_prime", "ln_N", "harmonic", "k_proxy", "info_I"): "pnt",
    ("corpus", "k", "N", "raw_acc", "N0", "N1", "acc0", "acc1", "balanced"): "predict",
}

THRESHOLDS = {
    "mertens_loglog_band": (0.85, 1.05),
    "mertens_scaled_rel_tol": 0.05,
    "pnt_ratio_1e6": (1.0845, 0.001),
    "cramer_max_ratio": (1.0564, 1e-4),
    "cramer_tail_cap": 0.8,
    "predict_primes_cap": 0.55,
    "predict_periodic_floor": 0.99,
    "predict_coin_band": (0.46, 0.54),
}


class ReportInputError(DomainError):
    """A CSV input does not match any known schema."""


def _classify_header(path: Path, header) -> str:
    key = tuple(header)
    if key in HEADERS:
        return HEADERS[key]
    # name the first offending column against the closest schema
    best, best_score = None, -1
    for candidate in HEADERS:
        score = sum(a == b for a, b in zip(candidate, key))
        if score > best_score:
            best, best_score = candidate, score
    for pos, expected in enumerate(best):
        got = key[pos] if pos < len(key) else "<missing>"
        if got != expected:
            raise ReportInputError(
                f"{path}: unrecognized schema: column {pos + 1} is {got!r}, "
                f"expected {expected!r}")
    raise ReportInputError(f"{path}: unrecognized schema: extra columns {key[len(best):]}")


def load_csv(path) -> tuple:
    """Return (section_name, rows) for an artifact CSV, typed per column."""
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ReportInputError(f"{path}: empty file, no header row")
        section = _classify_header(path, header)
        rows = []
        for raw in reader:
            if not raw:
                continue
            row = {}
            for name, value in zip(header, raw):
                if name == "corpus":
                    row[name] = value
                elif name in ("n", "N", "p_n", "p_next", "gap", "k", "pi", "N0", "N1"):
                    row[name] = int(value)
                else:
                    row[name] = float(value) if value != "" else None
            rows.append(row)
    return section, rows


def _write_xy(path: Path, pairs) -> None:
    with open(path, "w") as fh:
        for x, y in pairs:
            fh.write(f"{x!r} {y!r}\n")


def _check(name: str, passed: bool, value, threshold) -> dict:
    return {"name": name, "pass": bool(passed), "value": value, "threshold": threshold}


def _mertens_checks(rows) -> tuple:
    checks = []
    checks.append(_check(
        "mertens_delta_within_bound",
        all(r["delta"] <= r["bound"] for r in rows),
        max(r["delta"] - r["bound"] for r in rows),
        0.0))
    lo, hi = THRESHOLDS["mertens_loglog_band"]
    big = [r for r in rows if r["n"] >= 10_000]
    if big:
        checks.append(_check(
            "mertens_loglog_ratio_band",
            all(lo <= r["ratio"] <= hi for r in big),
            [r["ratio"] for r in big], [lo, hi]))
    top = max(rows, key=lambda r: r["n"])
    flags = {}
    if top["n"] >= 1_000_000:
        rel = abs(top["scaled"] - MERTENS_LIMIT_CONSTANT) / MERTENS_LIMIT_CONSTANT
        checks.append(_check(
            "mertens_scaled_constant",
            rel <= THRESHOLDS["mertens_scaled_rel_tol"],
            top["scaled"], MERTENS_LIMIT_CONSTANT))
    flags["mertens_paper_constant"] = {
        "claimed_scaled_constant": 0.9,
        "computed_scaled_constant": top["scaled"],
        "asymptotic_constant": MERTENS_LIMIT_CONSTANT,
        "reproduced": abs(top["scaled"] - 0.9) <= 0.05 * 0.9,
    }
    return checks, flags


def _pnt_checks(rows) -> list:
    checks = []
    target, tol = THRESHOLDS["pnt_ratio_1e6"]
    by_n = {r["N"]: r["k_proxy"] for r in rows}
    if 1_000_000 in by_n:
        v = by_n[1_000_000]
        checks.append(_check("pnt_ratio_at_1e6", abs(v - target) <= tol, v, [target, tol]))
    even = [by_n[n] for n in (100, 10_000, 1_000_000, 100_000_000) if n in by_n]
    if len(even) >= 2:
        checks.append(_check(
            "pnt_ratio_decreasing_even_decades",
            all(a > b for a, b in zip(even, even[1:])), even, "strictly decreasing"))
    ordered = [r["k_proxy"] for r in sorted(rows, key=lambda r: r["N"])]
    checks.append(_check(
        "pnt_ratio_decreasing_all_rows",
        all(a > b for a, b in zip(ordered, ordered[1:])),
        ordered, "strictly decreasing (known false when both 10^2 and 10^3 present)"))
    return checks


def _cramer_checks(rows) -> list:
    checks = []
    target, tol = THRESHOLDS["cramer_max_ratio"]
    filtered = [r for r in rows if r["p_n"] >= 5]
    if filtered:
        best = max(filtered, key=lambda r: r["ratio"])
        span = max(r["p_n"] for r in rows)
        if span >= 1_000_000:
            checks.append(_check(
                "cramer_max_ratio",
                abs(best["ratio"] - target) <= tol and best["p_n"] == 7,
                {"ratio": best["ratio"], "p_n": best["p_n"]}, [target, tol]))
        tail = [r["ratio"] for r in rows if r["p_n"] >= 11]
        if tail:
            cap = THRESHOLDS["cramer_tail_cap"]
            checks.append(_check(
                "cramer_tail_below_cap", max(tail) <= cap, max(tail), cap))
    return checks


def _predict_checks(rows) -> list:
    checks = []
    split = {}
    for r in rows:
        split.setdefault(r["corpus"], []).append(r)
    if "primes" in split:
        vals = [r["balanced"] for r in split["primes"] if r["balanced"] is not None]
        cap = THRESHOLDS["predict_primes_cap"]
        checks.append(_check("predict_primes_balanced_cap",
                             bool(vals) and max(vals) <= cap,
                             max(vals) if vals else None, cap))
    if "periodic" in split:
        vals = [r["balanced"] for r in split["periodic"] if r["balanced"] is not None]
        floor = THRESHOLDS["predict_periodic_floor"]
        checks.append(_check("predict_periodic_balanced_floor",
                             bool(vals) and min(vals) >= floor,
                             min(vals) if vals else None, floor))
    if "coin" in split:
        vals = [r["balanced"] for r in split["coin"] if r["balanced"] is not None]
        lo, hi = THRESHOLDS["predict_coin_band"]
        inside = sum(lo <= v <= hi for v in vals)
        checks.append(_check("predict_coin_band",
                             bool(vals) and inside == len(vals),
                             {"inside": inside, "total": len(vals)}, [lo, hi]))
    return checks


def build_report(paths, out_dir) -> dict:
    """Aggregate artifact CSVs into plot data plus a pass/fail summary.

    Writes <out_dir>/<figure>.dat files for every recognized section and
    <out_dir>/summary.json; returns the summary dict.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    sections = {}
    for path in paths:
        section, rows = load_csv(path)
        sections.setdefault(section, []).extend(rows)

    checks = []
    flags = {}
    outputs = []
    if "mertens" in sections:
        rows = sorted(sections["mertens"], key=lambda r: r["n"])
        _write_xy(out_dir / "entropy_vs_loglog.dat", [(r["n"], r["ratio"]) for r in rows])
        outputs.append("entropy_vs_loglog.dat")
        got, fl = _mertens_checks(rows)
        checks.extend(got)
        flags.update(fl)
    if "pnt" in sections:
        rows = sorted(sections["pnt"], key=lambda r: r["N"])
        _write_xy(out_dir / "pnt_ratio.dat", [(r["N"], r["k_proxy"]) for r in rows])
        outputs.append("pnt_ratio.dat")
        checks.extend(_pnt_checks(rows))
    if "cramer" in sections:
        rows = sorted(sections["cramer"], key=lambda r: r["n"])
        _write_xy(out_dir / "cramer_ratio.dat", [(r["p_n"], r["ratio"]) for r in rows])
        outputs.append("cramer_ratio.dat")
        checks.extend(_cramer_checks(rows))
    if "predict" in sections:
        rows = sections["predict"]
        grid = [r for r in rows if r["corpus"] == "primes"] or rows
        grid = sorted(grid, key=lambda r: (r["corpus"], r["k"]))
        _write_xy(out_dir / "balanced_accuracy.dat",
                  [(r["k"], r["balanced"] if r["balanced"] is not None else math.nan)
                   for r in grid])
        outputs.append("balanced_accuracy.dat")
        checks.extend(_predict_checks(rows))

    summary = {
        "schema_version": SCHEMA_VERSION,
        "sections": {name: len(rows) for name, rows in sections.items()},
        "checks": checks,
        "flags": flags,
        "plot_data": outputs,
        "all_passed": all(c["pass"] for c in checks),
    }
    with open(out_dir / "summary.json", "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return summary


@dataclass
class RunManifest:
    """Provenance record for one CLI run; every data file a run emits is
    referenced by exactly one manifest."""

    subcommand: str
    flags: dict
    seed: object
    artifact_version: str
    input_digests: dict = field(default_factory=dict)
    output_paths: list = field(default_factory=list)
    duration_seconds: float = 0.0

    @staticmethod
    def digest(path) -> str:
        h = hashlib.sha256()
        with open(path, "rb") as fh:
            for block in iter(lambda: fh.read(1 << 20), b""):
                h.update(block)
        return h.hexdigest()

    def write(self, path) -> None:
        payload = {
            "subcommand": self.subcommand,
            "flags": self.flags,
            "seed": self.seed,
            "artifact_version": self.artifact_version,
            "input_digests": self.input_digests,
            "output_paths": [str(p) for p in self.output_paths],
            "duration_seconds": self.duration_seconds,
        }
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
