"""Rendering scan outcomes and traces as tables, JSON lines or CSV."""

from __future__ import annotations

import csv
import io
import json

from .scans import Algorithm, ScanOutcome, TraceRow

__all__ = ["outcome_record", "render", "render_csv", "render_jsonl", "render_table", "witness_record"]

# (header, TraceRow attribute) per algorithm
COLUMNS = {
    Algorithm.INVARIANT: [("Iteration", "iteration"), ("C1", "c1"), ("C2", "c2")],
    Algorithm.QUADRATIC: [("Iteration P1", "iteration"), ("C2", "c2"), ("P2", "p2")],
    Algorithm.TRIANGULAR: [
        ("Iteration C1", "iteration"), ("C2", "c2"), ("P2", "p2"),
        ("C3", "c3"), ("P3", "p3"),
    ],
}


def witness_record(witness) -> dict | None:
    if witness is None:
        return None
    return {"type": type(witness).__name__, **vars(witness)}


def outcome_record(outcome: ScanOutcome) -> dict:
    return {
        "m": int(outcome.m),
        "algorithm": outcome.algorithm.value,
        "direction": outcome.direction.value,
        "verdict": outcome.verdict.value,
        "witness": witness_record(outcome.witness),
        "iterations": outcome.iterations,
        "hit_iteration": outcome.hit_iteration,
    }


def _cell(v) -> str:
    return "" if v is None else str(v)


def render_table(outcome: ScanOutcome) -> str:
    cols = COLUMNS[outcome.algorithm] + [("Result", "note")]
    body = [[_cell(getattr(r, attr)) for _, attr in cols] for r in outcome.trace or []]
    widths = [max([len(h)] + [len(row[i]) for row in body]) for i, (h, _) in enumerate(cols)]

    def line(cells):
        return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"

    out = [
        f"# m={outcome.m} algorithm={outcome.algorithm.value} direction={outcome.direction.value}",
        line([h for h, _ in cols]),
        "|" + "|".join("-" * (w + 2) for w in widths) + "|",
    ]
    out += [line(row) for row in body]
    out.append(f"# verdict={outcome.verdict.value} iterations={outcome.iterations}")
    return "\n".join(out) + "\n"


def render_jsonl(outcome: ScanOutcome) -> str:
    lines = [json.dumps(r.as_dict()) for r in outcome.trace or []]
    lines.append(json.dumps(outcome_record(outcome)))
    return "\n".join(lines) + "\n"


def render_csv(outcome: ScanOutcome) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=TraceRow.FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in outcome.trace or []:
        writer.writerow(r.as_dict())
    return buf.getvalue()


RENDERERS = {"table": render_table, "json-lines": render_jsonl, "csv": render_csv}


def render(outcome: ScanOutcome, fmt: str = "table") -> str:
    return RENDERERS[fmt](outcome)
