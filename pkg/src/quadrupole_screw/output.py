"""Table writers. Floats are rendered with 17 significant digits so that every
value re-parses to the same double."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Iterable, Sequence, TextIO


def format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return f"{value:.17g}"
    if value is None:
        return ""
    return str(value)


def write_csv(
    stream: TextIO,
    columns: Sequence[str],
    rows: Iterable[dict],
    comments: Sequence[str] = (),
) -> None:
    for line in comments:
        stream.write(f"# {line}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(c)) for c in columns])


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, tuple):
        return list(value)
    return value


def write_json_lines(stream: TextIO, rows: Iterable[dict]) -> None:
    for row in rows:
        stream.write(json.dumps({k: _json_safe(v) for k, v in row.items()}, sort_keys=False))
        stream.write("\n")


def write_table(stream, fmt, columns, rows, comments=()):
    if fmt == "json-lines":
        write_json_lines(stream, rows)
    else:
        write_csv(stream, columns, rows, comments)


def _coerce(text: str):
    for kind in (int, float):
        try:
            return kind(text)
        except ValueError:
            pass
    return text


def read_csv(source: str | TextIO) -> tuple[list[str], list[dict]]:
    """Parse a file written by :func:`write_csv` (``#`` comments skipped).

    Returns the comment lines and the typed rows.
    """
    text = source if isinstance(source, str) else source.read()
    comments, body = [], []
    for line in text.splitlines():
        if line.startswith("# "):
            comments.append(line[2:])
        else:
            body.append(line)
    reader = csv.DictReader(io.StringIO("\n".join(body)))
    rows = [{k: _coerce(v) for k, v in row.items()} for row in reader]
    return comments, rows
