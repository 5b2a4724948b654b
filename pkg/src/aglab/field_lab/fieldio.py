"""Plain-text field files.

Header ``nx ny h ox oy role``, then one record per node, ``i`` outermost:
``i j v1 v2`` for vector fields, ``i j s`` for scalar fields and
``i j re im`` for complex fields. Lines ``# singular i j`` restore the
singular mask; other ``#`` lines are ignored.
"""

from __future__ import annotations

import os
from typing import TextIO

import numpy as np

from .grid import ROLES, GridSpec, PlanarField

_WIDTH = {"vector": 4, "scalar": 3, "complex": 4}


def format_field(m: PlanarField) -> str:
    s = m.spec
    lines = [f"{s.nx} {s.ny} {s.h!r} {s.origin[0]!r} {s.origin[1]!r} {m.role}"]
    for i, j in zip(*np.nonzero(m.singular)):
        lines.append(f"# singular {i} {j}")
    v = m.values
    for i in range(s.nx):
        for j in range(s.ny):
            if m.role == "vector":
                lines.append(f"{i} {j} {float(v[i, j, 0])!r} {float(v[i, j, 1])!r}")
            elif m.role == "scalar":
                lines.append(f"{i} {j} {float(v[i, j])!r}")
            else:
                lines.append(f"{i} {j} {float(v[i, j].real)!r} {float(v[i, j].imag)!r}")
    return "\n".join(lines) + "\n"


def parse_field(text: str) -> PlanarField:
    header = None
    spec = role = None
    values = seen = None
    singular = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if parts and parts[0] == "singular":
                if len(parts) != 3:
                    raise ValueError(f"line {lineno}: malformed singular marker")
                singular.append((int(parts[1]), int(parts[2])))
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 6 or parts[5] not in ROLES:
                raise ValueError(f"line {lineno}: expected header 'nx ny h ox oy role', got {line!r}")
            try:
                nx, ny = int(parts[0]), int(parts[1])
                spec = GridSpec((float(parts[3]), float(parts[4])), float(parts[2]), nx, ny)
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
            role = parts[5]
            header = parts
            shape = spec.shape + ((2,) if role == "vector" else ())
            values = np.zeros(shape, dtype=complex if role == "complex" else float)
            seen = np.zeros(spec.shape, dtype=bool)
            continue
        if len(parts) != _WIDTH[role]:
            raise ValueError(f"line {lineno}: expected {_WIDTH[role]} columns for a {role} record, got {len(parts)}")
        try:
            i, j = int(parts[0]), int(parts[1])
            nums = [float(p) for p in parts[2:]]
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        if not (0 <= i < spec.nx and 0 <= j < spec.ny):
            raise ValueError(f"line {lineno}: node ({i}, {j}) outside the {spec.nx}x{spec.ny} grid")
        if role == "vector":
            values[i, j] = nums
        elif role == "scalar":
            values[i, j] = nums[0]
        else:
            values[i, j] = complex(nums[0], nums[1])
        seen[i, j] = True
    if header is None:
        raise ValueError("line 1: missing header")
    if not seen.all():
        i, j = np.argwhere(~seen)[0]
        raise ValueError(f"missing record for node ({i}, {j})")
    mask = np.zeros(spec.shape, dtype=bool)
    for i, j in singular:
        mask[i, j] = True
    return PlanarField(spec, values, role, mask)


def write_field(m: PlanarField, target: str | os.PathLike | TextIO) -> None:
    text = format_field(m)
    if hasattr(target, "write"):
        target.write(text)
    else:
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def read_field(source: str | os.PathLike | TextIO) -> PlanarField:
    if hasattr(source, "read"):
        return parse_field(source.read())
    with open(source, encoding="utf-8") as fh:
        return parse_field(fh.read())
