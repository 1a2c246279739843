"""Check results, errata entries and their JSON/CSV serialization."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
import tempfile
from dataclasses import asdict, dataclass, field
from pathlib import Path

log = logging.getLogger(__name__)


@dataclass
class Check:
    id: str
    measured: float
    tolerance: float
    passed: bool
    inputs: dict = field(default_factory=dict)


@dataclass
class Erratum:
    equation: str
    printed: str
    corrected: str
    evidence: float
    tolerance: float


def _clean(v):
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    if isinstance(v, dict):
        return {k: _clean(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_clean(x) for x in v]
    if hasattr(v, "item"):
        return _clean(v.item())
    return v


@dataclass
class Report:
    name: str
    checks: list = field(default_factory=list)
    errata: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add(self, check_id: str, measured: float, tolerance: float, *, below: bool = True, **inputs) -> Check:
        """Record a check passing when ``measured < tolerance`` (or ``>=`` if not ``below``)."""
        if any(c.id == check_id for c in self.checks):
            raise ValueError(f"duplicate check id {check_id!r}")
        measured = float(measured)
        ok = measured < tolerance if below else measured >= tolerance
        ok = bool(ok and math.isfinite(measured))
        c = Check(check_id, measured, float(tolerance), ok, _clean(inputs))
        self.checks.append(c)
        log.info("%s %s measured=%.3e tol=%.1e", "PASS" if ok else "FAIL", check_id, measured, tolerance)
        return c

    def add_erratum(self, equation, printed, corrected, evidence, tolerance) -> Erratum:
        e = Erratum(equation, printed, corrected, float(evidence), float(tolerance))
        self.errata.append(e)
        return e

    def merge(self, other: "Report") -> None:
        for c in other.checks:
            if any(x.id == c.id for x in self.checks):
                raise ValueError(f"duplicate check id {c.id!r}")
            self.checks.append(c)
        self.errata.extend(other.errata)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "meta": _clean(self.meta),
            "checks": [_clean(asdict(c)) for c in self.checks],
            "errata": [_clean(asdict(e)) for e in self.errata],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def checks_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "passed", "measured", "tolerance", "inputs"])
        for c in self.checks:
            w.writerow([c.id, c.passed, f"{c.measured:.17g}", f"{c.tolerance:.17g}",
                        json.dumps(c.inputs, sort_keys=True)])
        return buf.getvalue()

    def errata_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["equation", "printed", "corrected", "evidence", "tolerance"])
        for e in self.errata:
            w.writerow([e.equation, e.printed, e.corrected, f"{e.evidence:.17g}", f"{e.tolerance:.17g}"])
        return buf.getvalue()

    def summary(self) -> str:
        lines = [f"{self.name}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            lines.append(f"  [{'PASS' if c.passed else 'FAIL'}] {c.id}: {c.measured:.3e} (tol {c.tolerance:.1e})")
        if self.errata:
            lines.append("errata:")
            for e in self.errata:
                lines.append(f"  {e.equation}: {e.printed} -> {e.corrected} (evidence {e.evidence:.3e}, tol {e.tolerance:.1e})")
        return "\n".join(lines) + "\n"


def ensure_dir(path) -> Path:
    p = Path(path)
    if not p.exists():
        log.warning("output directory %s does not exist; creating it", p)
        p.mkdir(parents=True)
    return p


def write_atomic(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def rows_to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([f"{v:.17g}" if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def write_report(report: Report, out_dir, fmt: str = "json") -> list[Path]:
    out = ensure_dir(out_dir)
    written = []
    if fmt == "json":
        p = out / f"{report.name}.json"
        write_atomic(p, report.to_json())
        written.append(p)
    else:
        p = out / f"{report.name}_checks.csv"
        write_atomic(p, report.checks_csv())
        written.append(p)
        if report.errata:
            p = out / f"{report.name}_errata.csv"
            write_atomic(p, report.errata_csv())
            written.append(p)
    p = out / f"{report.name}_summary.txt"
    write_atomic(p, report.summary())
    written.append(p)
    return written
