"""Plain-text family files.

A sequence family (``QSEQ1``) or matrix family (``QMAT1``) document is a
header of ``key value`` lines, a blank line, then the body of exponents
as space-separated decimal integers::

    QMAT1
    order 9
    flock 9
    length 9
    members 18
    declared 9.0
    name thm41
    meta kind thm41

    0 0 0 0 0 0 0 0 0
    ...

Matrices are written one row per line with a blank line between
members; sequences one member per line. ``declared``, ``name`` and
``meta`` lines are optional. Declared values are written with Python's
shortest round-trip float repr so that reading a file back gives the
same float.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .model import ComplementaryMatrix, PhaseExponentSequence, QcssFamily, SequenceFamily

SEQ_TAG = "QSEQ1"
MAT_TAG = "QMAT1"


class FormatError(ValueError):
    """Malformed family document; the message carries the 1-based line number."""

    def __init__(self, lineno: int | None, message: str):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno is not None else ""
        super().__init__(prefix + message)


def _header(fam) -> list[str]:
    if isinstance(fam, QcssFamily):
        lines = [MAT_TAG, f"order {fam.order}", f"flock {fam.flock_size}",
                 f"length {fam.length}", f"members {fam.size}"]
    elif isinstance(fam, SequenceFamily):
        lines = [SEQ_TAG, f"order {fam.order}", f"period {fam.period}", f"members {fam.size}"]
    else:
        raise TypeError(f"cannot serialize {type(fam).__name__}")
    if fam.declared is not None:
        lines.append(f"declared {float(fam.declared)!r}")
    if fam.name:
        lines.append(f"name {fam.name}")
    for key, value in fam.params.items():
        key, value = str(key), str(value)
        if not key or any(c.isspace() for c in key) or "\n" in value:
            raise ValueError(f"metadata key {key!r} or its value cannot be serialized")
        lines.append(f"meta {key} {value}".rstrip())
    return lines


def _row(values) -> str:
    return " ".join(str(int(v)) for v in values)


def serialize(fam: SequenceFamily | QcssFamily) -> str:
    lines = _header(fam)
    lines.append("")
    if isinstance(fam, QcssFamily):
        blocks = ["\n".join(_row(r) for r in m.exponents) for m in fam.members]
        body = "\n\n".join(blocks)
    else:
        body = "\n".join(_row(m.exponents) for m in fam.members)
    return "\n".join(lines) + "\n" + body + "\n"


def _int_field(value: str, key: str, lineno: int, minimum: int = 1) -> int:
    try:
        v = int(value)
    except ValueError:
        raise FormatError(lineno, f"{key} must be an integer, got {value!r}") from None
    if v < minimum:
        raise FormatError(lineno, f"{key} must be at least {minimum}, got {v}")
    return v


def parse(text: str) -> SequenceFamily | QcssFamily:
    lines = text.splitlines()
    if not lines:
        raise FormatError(1, "empty document")
    tag = lines[0].strip()
    if tag not in (SEQ_TAG, MAT_TAG):
        raise FormatError(1, f"unknown format tag {tag!r}")
    is_mat = tag == MAT_TAG

    header: dict[str, int] = {}
    declared = None
    name = ""
    params: dict[str, str] = {}
    required = ("order", "flock", "length", "members") if is_mat else ("order", "period", "members")
    i = 1
    while i < len(lines) and lines[i].strip():
        lineno = i + 1
        key, _, value = lines[i].strip().partition(" ")
        value = value.strip()
        if key in required:
            if key in header:
                raise FormatError(lineno, f"duplicate header key {key!r}")
            header[key] = _int_field(value, key, lineno)
        elif key == "declared":
            try:
                declared = float(value)
            except ValueError:
                raise FormatError(lineno, f"declared must be a number, got {value!r}") from None
            if not declared >= 0:
                raise FormatError(lineno, "declared must be nonnegative")
        elif key == "name":
            name = value
        elif key == "meta":
            mkey, _, mval = value.partition(" ")
            if not mkey:
                raise FormatError(lineno, "meta line needs a key")
            params[mkey] = mval.strip()
        else:
            raise FormatError(lineno, f"unknown header key {key!r}")
        i += 1
    missing = [k for k in required if k not in header]
    if missing:
        raise FormatError(i + 1, f"header is missing {', '.join(missing)}")
    i += 1  # blank separator

    order = header["order"]
    rows_per_member = header["flock"] if is_mat else 1
    width = header["length"] if is_mat else header["period"]

    records: list[list[tuple[int, str]]] = []
    current: list[tuple[int, str]] = []
    for j in range(i, len(lines)):
        stripped = lines[j].strip()
        if not stripped:
            if current:
                records.append(current)
                current = []
            continue
        current.append((j + 1, stripped))
    if current:
        records.append(current)
    if not is_mat:
        # sequences are one per line; blank lines are not significant
        records = [[row] for rec in records for row in rec]

    if len(records) != header["members"]:
        raise FormatError(None, f"header declares {header['members']} members, body has {len(records)}")

    members = []
    for rec in records:
        if len(rec) != rows_per_member:
            raise FormatError(rec[0][0], f"member has {len(rec)} rows, expected {rows_per_member}")
        grid = []
        for lineno, row in rec:
            try:
                vals = [int(tok) for tok in row.split()]
            except ValueError:
                raise FormatError(lineno, "exponents must be integers") from None
            if len(vals) != width:
                raise FormatError(lineno, f"row has {len(vals)} entries, expected {width}")
            bad = [v for v in vals if not 0 <= v < order]
            if bad:
                raise FormatError(lineno, f"exponent {bad[0]} outside [0, {order})")
            grid.append(vals)
        arr = np.array(grid, dtype=np.int64)
        members.append(ComplementaryMatrix(order, arr) if is_mat
                       else PhaseExponentSequence(order, arr[0]))
    if is_mat:
        return QcssFamily(tuple(members), declared, name=name, params=params)
    return SequenceFamily(tuple(members), declared, name=name, params=params)


def load(path: str | Path) -> SequenceFamily | QcssFamily:
    return parse(Path(path).read_text())


def dump(fam: SequenceFamily | QcssFamily, path: str | Path) -> None:
    Path(path).write_text(serialize(fam))
