"""JSON coefficient files shared between the library and the CLI.

Schema: ``{"n": int, "radius": int, "entries": [[k_1, ..., k_n, re, im], ...]}``.
Indices omitted from ``entries`` carry coefficient zero; a duplicated index is
an error, as is an index outside the declared radius or a non-finite value.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .lattice import SpectralField, make_lattice


class CoeffFileError(ValueError):
    """Malformed coefficient file."""


def field_to_dict(u: SpectralField) -> dict:
    lattice = u.lattice
    entries = []
    for k, value in zip(lattice.indices, u.coeffs):
        if value != 0:
            entries.append([*(int(c) for c in k), float(value.real), float(value.imag)])
    return {"n": lattice.n, "radius": lattice.radius, "entries": entries}


def field_from_dict(data: dict) -> SpectralField:
    if not isinstance(data, dict):
        raise CoeffFileError("coefficient file must be a JSON object")
    for key in ("n", "radius", "entries"):
        if key not in data:
            raise CoeffFileError(f"missing required key {key!r}")
    n, radius = data["n"], data["radius"]
    if not (isinstance(n, int) and isinstance(radius, int)):
        raise CoeffFileError("'n' and 'radius' must be integers")
    lattice = make_lattice(n, radius)
    coeffs = np.zeros(lattice.size, dtype=np.complex128)
    seen = set()
    for entry in data["entries"]:
        if not isinstance(entry, list) or len(entry) != n + 2:
            raise CoeffFileError(
                f"each entry must be [k_1,...,k_{n}, re, im]; got {entry!r}"
            )
        k = tuple(entry[:n])
        if not all(isinstance(c, int) for c in k):
            raise CoeffFileError(f"index components must be integers, got {k!r}")
        if not lattice.contains(k):
            raise CoeffFileError(f"index {k} outside declared radius {radius}")
        if k in seen:
            raise CoeffFileError(f"duplicate index {k}")
        seen.add(k)
        re, im = float(entry[n]), float(entry[n + 1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise CoeffFileError(f"non-finite coefficient at index {k}")
        coeffs[lattice.position(k)] = complex(re, im)
    return SpectralField(lattice, coeffs)


def write_coeff_file(path, u: SpectralField):
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(field_to_dict(u), handle)
        handle.write("\n")


def parse_coeff_file(path) -> SpectralField:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except json.JSONDecodeError as exc:
        raise CoeffFileError(f"malformed JSON in {path}: {exc}") from exc
    return field_from_dict(data)
