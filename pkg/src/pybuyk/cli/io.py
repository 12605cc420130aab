"""
Reading and writing instance files.

An instance file is a JSON document::

    {
      "n": 2,
      "support": [{"prob": "1/3", "values": ["2", "0"]}, ...],
      "menus": [[{"alloc": ["1", "0"], "price": "2"}, ...], ...],
      "sequences": {"Q": [["0", "0"], ...], "X": [...]}
    }

``menus`` and ``sequences`` are optional. Rationals are strings ``"p/q"`` or
``"p"``; JSON integers are accepted on input. ``sequences.Q`` starts with the
zero vector. The canonical form has reduced rationals, sorted keys, an
indentation of two and a final newline, and is reproduced exactly by
:func:`serialize_instance` after :func:`parse_instance`.
"""
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pybuyk.core.types import DiscreteDistribution, Menu, MenuEntry, Vector
from pybuyk.core.validation import validate
from pybuyk.menugap.sequences import SequencePair
from pybuyk.utils.numeric import as_rational, format_rational

__all__ = [
    "InstanceFile",
    "InstanceFileError",
    "parse_instance",
    "serialize_instance",
    "load_instance",
    "save_instance",
]

_TOP_LEVEL = {"n", "support", "menus", "sequences"}


class InstanceFileError(ValueError):
    """A malformed instance file.

    :param location: ``line:col`` of a syntax error, or the path of the
        offending field, e.g. ``support[2].prob``
    :param message: what is wrong
    """

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location
        self.message = message


@dataclass(frozen=True)
class InstanceFile:
    """Contents of an instance file.

    :param n: number of items
    :param dist: the distribution, possibly with empty support
    :param menus: menus to analyze, ``None`` if the file has none
    :param sequences: sequence pair, if any
    """

    n: int
    dist: DiscreteDistribution
    menus: Optional[Tuple[Menu, ...]] = None
    sequences: Optional[SequencePair] = None


def _rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InstanceFileError(where, f"expected a rational string, got {value!r}")
    try:
        return as_rational(value)
    except (TypeError, ValueError) as e:
        raise InstanceFileError(where, str(e)) from e


def _vector(value: Any, n: int, where: str) -> Vector:
    if not isinstance(value, list):
        raise InstanceFileError(where, "expected a list of rationals")
    if len(value) != n:
        raise InstanceFileError(where, f"dimension mismatch: {len(value)} != {n}")
    return tuple(_rational(x, f"{where}[{j}]") for j, x in enumerate(value))


def _object(value: Any, keys: set, where: str) -> Dict[str, Any]:
    if not isinstance(value, dict):
        raise InstanceFileError(where, "expected an object")
    if unknown := set(value) - keys:
        raise InstanceFileError(where, f"unknown fields {sorted(unknown)}")
    if missing := keys - set(value):
        raise InstanceFileError(where, f"missing fields {sorted(missing)}")
    return value


def _list(value: Any, where: str) -> List[Any]:
    if not isinstance(value, list):
        raise InstanceFileError(where, "expected a list")
    return value


def _raise_invalid(obj: Any, prefix: str):
    report = validate(obj)
    if not report.ok:
        d = report.diagnostics[0]
        raise InstanceFileError(f"{prefix}{d.location}", d.message)


def parse_instance(text: str) -> InstanceFile:
    """Parses and validates an instance document.

    :param text: the JSON document
    :raises InstanceFileError: on syntax errors, unknown or missing fields,
        malformed rationals, dimension mismatches and any violated invariant
        of the distribution, the menus or the sequences
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceFileError(f"{e.lineno}:{e.colno}", e.msg) from e
    if not isinstance(doc, dict):
        raise InstanceFileError("1:1", "expected an object at the top level")
    if unknown := set(doc) - _TOP_LEVEL:
        raise InstanceFileError("<root>", f"unknown fields {sorted(unknown)}")
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InstanceFileError("n", "expected a positive integer")

    support = []
    for i, item in enumerate(_list(doc.get("support", []), "support")):
        where = f"support[{i}]"
        item = _object(item, {"values", "prob"}, where)
        support.append(
            (
                _vector(item["values"], n, f"{where}.values"),
                _rational(item["prob"], f"{where}.prob"),
            )
        )
    dist = DiscreteDistribution(n, tuple(support))
    _raise_invalid(dist, "")

    menus: Optional[Tuple[Menu, ...]] = None
    if "menus" in doc:
        parsed = []
        for m, entries in enumerate(_list(doc["menus"], "menus")):
            items = []
            for i, item in enumerate(_list(entries, f"menus[{m}]")):
                where = f"menus[{m}][{i}]"
                item = _object(item, {"price", "alloc"}, where)
                items.append(
                    MenuEntry(
                        _rational(item["price"], f"{where}.price"),
                        _vector(item["alloc"], n, f"{where}.alloc"),
                    )
                )
            menu = Menu(n, tuple(items))
            _raise_invalid(menu, f"menus[{m}].")
            parsed.append(menu)
        menus = tuple(parsed)

    sequences: Optional[SequencePair] = None
    if "sequences" in doc:
        seq = _object(doc["sequences"], {"X", "Q"}, "sequences")
        X = [
            _vector(x, n, f"sequences.X[{i}]")
            for i, x in enumerate(_list(seq["X"], "sequences.X"))
        ]
        Q = [
            _vector(q, n, f"sequences.Q[{i}]")
            for i, q in enumerate(_list(seq["Q"], "sequences.Q"))
        ]
        if len(Q) != len(X) + 1:
            raise InstanceFileError(
                "sequences.Q", f"expected {len(X) + 1} allocations, got {len(Q)}"
            )
        for i, x in enumerate(X):
            if not any(x):
                raise InstanceFileError(
                    f"sequences.X[{i}]", "valuation must be non-zero"
                )
        sequences = SequencePair(n, tuple(X), tuple(Q))
        _raise_invalid(sequences, "sequences.")

    return InstanceFile(n, dist, menus, sequences)


def _strings(v: Vector) -> List[str]:
    return [format_rational(x) for x in v]


def serialize_instance(instance: InstanceFile) -> str:
    """Canonical text of an instance: sorted keys, two-space indentation,
    rationals as reduced strings and a trailing newline."""
    doc: Dict[str, Any] = {
        "n": instance.n,
        "support": [
            {"values": _strings(v), "prob": format_rational(p)}
            for v, p in instance.dist.support
        ],
    }
    if instance.menus is not None:
        doc["menus"] = [
            [
                {"price": format_rational(e.price), "alloc": _strings(e.allocation)}
                for e in menu
            ]
            for menu in instance.menus
        ]
    if instance.sequences is not None:
        doc["sequences"] = {
            "X": [_strings(x) for x in instance.sequences.X],
            "Q": [_strings(q) for q in instance.sequences.Q],
        }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load_instance(path: Union[str, Path]) -> InstanceFile:
    return parse_instance(Path(path).read_text())


def save_instance(instance: InstanceFile, path: Union[str, Path]):
    Path(path).write_text(serialize_instance(instance))
