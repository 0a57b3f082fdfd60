"""
JSON schemas of the command line tools.

Rationals are "p/q" strings, matrices {"rows": r, "cols": c, "entries": [[...]]}.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from typing import Any

import json
from fractions import Fraction
from pathlib import Path

from . import constructions, exceptions, lie, linalg, logger
from .lie import JordanSpec, Representation
from .linalg import Matrix

log = logger.get_logger(__name__)


class CustomJSONEncoder(json.JSONEncoder):
    """Custom JSON encoder that handles exact rationals, matrices and result objects"""

    def default(self, o: Any) -> Any:
        """
        Convert rationals into strings, matrices into their schema and any
        object with a to_dict method into its dictionary.

        Args:
            o (Any): Object to be checked and converted

        Returns:
            Any: Unchanged or converted object
        """
        if isinstance(o, Fraction):
            return linalg.format_rational(o)
        if isinstance(o, Matrix):
            return {
                "rows": o.rows,
                "cols": o.cols,
                "entries": [[linalg.format_rational(v) for v in row] for row in o.entries],
            }
        if hasattr(o, "to_dict"):
            return o.to_dict()

        return json.JSONEncoder.default(self=self, o=o)


def dumps(obj: Any) -> str:
    """
    Deterministic JSON: sorted keys, two-space indent, trailing newline.
    """
    return json.dumps(obj, cls=CustomJSONEncoder, sort_keys=True, indent=2) + "\n"


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise exceptions.ParseException(f"{source}: invalid JSON, {e}")


def read_json(path: Path | str) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise exceptions.ParseException(f"Cannot read {path}: {e}")
    return loads(text, str(path))


# Decoders


def _require(data: Any, key: str, path: str) -> Any:
    if not isinstance(data, dict):
        raise exceptions.ParseException(f"{path}: expected an object")
    if key not in data:
        raise exceptions.ParseException(f"{path}: missing key '{key}'")
    return data[key]


def _integer(value: Any, path: str) -> int:
    if isinstance(value, bool):
        raise exceptions.ParseException(f"{path}: expected an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and value.strip().lstrip("-").isdigit():
        return int(value)
    raise exceptions.ParseException(f"{path}: expected an integer, got {value!r}")


def decode_rational(value: Any, path: str = "$") -> Fraction:
    if isinstance(value, float):
        raise exceptions.ParseException(f"{path}: floats are not exact, use a \"p/q\" string")
    try:
        return linalg.to_rational(value)
    except exceptions.InputException as e:
        raise exceptions.ParseException(f"{path}: {e}")


def decode_matrix(data: Any, path: str = "$") -> Matrix:
    rows = _integer(_require(data, "rows", path), f"{path}.rows")
    cols = _integer(_require(data, "cols", path), f"{path}.cols")
    entries = _require(data, "entries", path)
    if not isinstance(entries, list) or len(entries) != rows:
        raise exceptions.ParseException(f"{path}.entries: expected {rows} rows")
    grid = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != cols:
            raise exceptions.ParseException(f"{path}.entries[{i}]: expected {cols} entries")
        grid.append([decode_rational(v, f"{path}.entries[{i}][{j}]") for j, v in enumerate(row)])
    try:
        return Matrix(grid)
    except exceptions.InputException as e:
        raise exceptions.ParseException(f"{path}: {e}")


def decode_spec(data: Any, path: str = "$") -> JordanSpec:
    """
    Accepts a list of blocks or an object with a "spec" list. Blocks are
    {"eigenvalue": "p/q", "size": n} objects or [eigenvalue, size] pairs.
    """
    if isinstance(data, dict):
        data = _require(data, "spec", path)
        path = f"{path}.spec"
    if not isinstance(data, list):
        raise exceptions.ParseException(f"{path}: expected a list of blocks")

    pairs = []
    for i, block in enumerate(data):
        where = f"{path}[{i}]"
        if isinstance(block, dict):
            eigenvalue = _require(block, "eigenvalue", where)
            size = _require(block, "size", where)
        elif isinstance(block, list) and len(block) == 2:
            eigenvalue, size = block
        else:
            raise exceptions.ParseException(f"{where}: expected a block")
        pairs.append((decode_rational(eigenvalue, f"{where}.eigenvalue"), _integer(size, f"{where}.size")))

    try:
        return JordanSpec.from_pairs(pairs)
    except exceptions.InputException as e:
        raise exceptions.ParseException(f"{path}: {e}")


def decode_representation(data: Any, path: str = "$") -> Representation:
    spec = decode_spec(_require(data, "spec", path), f"{path}.spec")
    d = _integer(_require(data, "d", path), f"{path}.d")
    A = decode_matrix(_require(data, "A", path), f"{path}.A")
    generators = _require(data, "generators", path)
    if not isinstance(generators, list):
        raise exceptions.ParseException(f"{path}.generators: expected a list")
    images = tuple(
        decode_matrix(g, f"{path}.generators[{i}]") for i, g in enumerate(generators)
    )
    try:
        return Representation(lie.build_algebra(spec), d, A, images)
    except exceptions.InputException as e:
        raise exceptions.ParseException(f"{path}: {e}")


def decode_label(data: Any, path: str = "$") -> constructions.ClassLabel:
    if isinstance(data, dict) and "label" in data:
        data = data["label"]
        path = f"{path}.label"
    variant = _require(data, "variant", path)
    cls = constructions.LABEL_VARIANTS.get(variant)
    if cls is None:
        raise exceptions.ParseException(f"{path}.variant: unknown variant {variant!r}")

    alpha = decode_rational(_require(data, "alpha", path), f"{path}.alpha")
    lam = decode_rational(_require(data, "lambda", path), f"{path}.lambda")
    try:
        match variant:
            case "KX":
                n = _integer(_require(data, "n", path), f"{path}.n")
                k = _integer(_require(data, "k", path), f"{path}.k")
                X = decode_matrix(_require(data, "X", path), f"{path}.X")
                return constructions.KXLabel(alpha, lam, n, k, X)
            case "TOP" | "BOTTOM":
                n = _integer(_require(data, "n", path), f"{path}.n")
                return cls(alpha, lam, n)  # type: ignore
            case "AA":
                n = _integer(_require(data, "n", path), f"{path}.n")
                a = _require(data, "a", path)
                if not isinstance(a, list):
                    raise exceptions.ParseException(f"{path}.a: expected a list")
                values = tuple(decode_rational(v, f"{path}.a[{i}]") for i, v in enumerate(a))
                return constructions.AALabel(alpha, lam, n, values)
            case _:
                ell = _integer(_require(data, "ell", path), f"{path}.ell")
                return constructions.DiagLabel(alpha, lam, ell)
    except exceptions.ParseException:
        raise
    except exceptions.InputException as e:
        raise exceptions.ParseException(f"{path}: {e}")


def decode_parameters(data: Any, path: str = "$") -> dict[constructions.ParameterSlot, Fraction]:
    """
    Parameter assignment, either {"params": [...]} or a bare list of
    {"block", "generator", "power", "value"} objects.
    """
    if isinstance(data, dict):
        data = _require(data, "params", path)
        path = f"{path}.params"
    if not isinstance(data, list):
        raise exceptions.ParseException(f"{path}: expected a list of parameters")

    values = {}
    for i, entry in enumerate(data):
        where = f"{path}[{i}]"
        slot = constructions.ParameterSlot(
            _integer(_require(entry, "block", where), f"{where}.block"),
            _integer(_require(entry, "generator", where), f"{where}.generator"),
            _integer(_require(entry, "power", where), f"{where}.power"),
        )
        values[slot] = decode_rational(_require(entry, "value", where), f"{where}.value")
    return values


def encode_parameters(values: dict[constructions.ParameterSlot, Fraction]) -> dict:
    return {
        "params": [
            slot._asdict() | {"value": value}
            for slot, value in sorted(values.items())
            if value != 0
        ]
    }
