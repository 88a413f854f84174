"""Verification reports and their table / JSON lines / CSV renderings."""
import csv
import io
import json
import os
from dataclasses import asdict, dataclass, field

import jinja2

TEMPLATE_DIR = os.path.join(os.path.dirname(os.path.realpath(__file__)), "templates")

PASS, FAIL, SKIPPED = "PASS", "FAIL", "SKIPPED"


@dataclass
class VerificationReport:
    family: str
    m: int
    f: list
    p: int
    genus: int = None
    counts: list = field(default_factory=list)
    l_polynomial: list = field(default_factory=list)
    slopes: list = field(default_factory=list)
    supersingular: bool = None
    p_rank: int = None
    galois: dict = None
    cross_check: dict = None
    expected_supersingular: bool = None
    verdict: str = None
    reason: str = ""
    timings: dict = field(default_factory=dict)

    def to_record(self, with_timings=True):
        record = asdict(self)
        timings = record.pop("timings")
        if self.verdict is None:
            # single-curve reports carry no theorem to judge against
            del record["verdict"], record["reason"]
        if with_timings:
            # kept last so the canonical prefix is byte-stable
            record["timings"] = {k: round(v, 4) for k, v in timings.items()}
        return record

    @property
    def slope_text(self):
        parts = []
        for s in self.slopes:
            frac = str(s["num"]) if s["den"] == 1 else f"{s['num']}/{s['den']}"
            parts.append(f"{frac}x{s['mult']}")
        return " ".join(parts)


def exit_code(reports):
    return 1 if any(r.verdict == FAIL for r in reports) else 0


def _environment():
    env = jinja2.Environment(loader=jinja2.FileSystemLoader(TEMPLATE_DIR), trim_blocks=True, lstrip_blocks=True)
    env.filters["poly"] = poly_text
    return env


def poly_text(coeffs, var="x"):
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        body = f"{mag}{mono}" if mag != 1 or i == 0 else mono
        sign = "-" if c < 0 else "+"
        terms.append(f"{sign} {body}" if terms else (f"-{body}" if c < 0 else body))
    return " ".join(terms) or "0"


def render_reports(reports, fmt="table", with_timings=True):
    if fmt == "jsonl":
        return "".join(json.dumps(r.to_record(with_timings)) + "\n" for r in reports)
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["family", "p", "m", "f", "genus", "counts", "l_polynomial", "slopes",
                         "supersingular", "p_rank", "expected_supersingular", "verdict", "reason"])
        for r in reports:
            writer.writerow([r.family, r.p, r.m, " ".join(map(str, r.f)), r.genus,
                             " ".join(map(str, r.counts)), " ".join(map(str, r.l_polynomial)),
                             r.slope_text, r.supersingular, r.p_rank, r.expected_supersingular,
                             r.verdict, r.reason])
        return out.getvalue()
    template = _environment().get_template("report_table.txt")
    return template.render(reports=reports, with_timings=with_timings)


def render_rows(rows, columns, fmt="table", title=""):
    """Render flat dict rows (galois table, cross-checks, summaries)."""
    if fmt == "jsonl":
        return "".join(json.dumps(row) + "\n" for row in rows)
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.DictWriter(out, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return out.getvalue()
    widths = {c: max([len(c)] + [len(str(row.get(c, ""))) for row in rows]) for c in columns}
    template = _environment().get_template("rows_table.txt")
    return template.render(rows=rows, columns=columns, widths=widths, title=title)
