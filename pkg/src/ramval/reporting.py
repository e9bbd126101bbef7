"""Delimited / JSON / Markdown rendering of report tables.

Reports are pure functions of the run configuration; the configuration and
seed are embedded in every header so runs are reproducible.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

SCHEMA_VERSION = 1


@dataclass
class RunConfig:
    p: int = 2
    c: int = 1
    q: int | None = None  # field size; defaults to p
    levels: int = 3
    length: int = 6
    bound: str = "2"
    samples: int = 200
    prec: int | None = None
    fmt: str = "text"
    seed: int = 0
    jobs: int = 1

    def header(self) -> dict:
        d = asdict(self)
        d["schema"] = SCHEMA_VERSION
        return d


def _cell(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render_table(rows: list[dict], fmt: str, title: str = "") -> str:
    if not rows:
        return f"{title}: (empty)\n" if fmt == "text" else ""
    cols = list(rows[0].keys())
    for r in rows[1:]:
        for k in r:
            if k not in cols:
                cols.append(k)
    if fmt == "tsv":
        lines = ["\t".join(cols)]
        lines += ["\t".join(_cell(r.get(c, "")) for c in cols) for r in rows]
        return "\n".join(lines) + "\n"
    if fmt == "md":
        lines = []
        if title:
            lines.append(f"### {title}")
            lines.append("")
        lines.append("| " + " | ".join(cols) + " |")
        lines.append("|" + "|".join("---" for _ in cols) + "|")
        lines += ["| " + " | ".join(_cell(r.get(c, "")) for c in cols) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    # text
    widths = [max(len(c), *(len(_cell(r.get(c, ""))) for r in rows)) for c in cols]
    lines = []
    if title:
        lines.append(title)
    lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)))
    for r in rows:
        lines.append("  ".join(_cell(r.get(c, "")).ljust(w) for c, w in zip(cols, widths)))
    return "\n".join(lines) + "\n"


@dataclass
class Report:
    config: RunConfig
    sections: list = field(default_factory=list)  # (title, rows) pairs
    ok: bool = True

    def add(self, title: str, rows: list[dict], ok: bool = True):
        self.sections.append((title, rows))
        self.ok = self.ok and ok

    def render(self) -> str:
        fmt = self.config.fmt
        if fmt == "json":
            payload = {
                "config": self.config.header(),
                "ok": self.ok,
                "sections": [
                    {"title": title, "rows": rows} for title, rows in self.sections
                ],
            }
            return json.dumps(payload, indent=2, default=str) + "\n"
        parts = []
        head = self.config.header()
        if fmt == "md":
            parts.append("## ramval report")
            parts.append("")
            parts.append("`" + json.dumps(head, default=str) + "`")
            parts.append("")
        else:
            parts.append("# config: " + json.dumps(head, default=str))
        for title, rows in self.sections:
            parts.append(render_table(rows, fmt, title))
        parts.append(("verified: yes" if self.ok else "verified: NO") + "\n")
        return "\n".join(parts)
