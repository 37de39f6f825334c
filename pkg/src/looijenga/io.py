"""JSON documents: pairs, configurations, period points and maps."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .lattice import IntLattice, LatticeIsometry
from .pair import ExceptionalConfiguration, PairModel
from .period import BoundaryMarking, PeriodPoint


class DocumentError(ValueError):
    pass


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc})") from None


@dataclass(frozen=True)
class PairDocument:
    pair: PairModel
    marking: BoundaryMarking | None = None
    name: str | None = None

    def to_json(self):
        out = self.pair.to_json()
        if self.marking is not None:
            out["marking"] = self.marking.to_json()
        if self.name is not None:
            out["name"] = self.name
        return out

    def dumps(self) -> str:
        return dumps(self.to_json())

    @classmethod
    def from_json(cls, data) -> "PairDocument":
        if not isinstance(data, dict):
            raise DocumentError("a pair document is a JSON object")
        unknown = set(data) - {"fan", "blowups", "marking", "name"}
        if unknown:
            raise DocumentError(f"unknown keys {sorted(unknown)}")
        if "fan" not in data:
            raise DocumentError("missing key 'fan'")
        fan = data["fan"]
        if not isinstance(fan, list) or not all(
            isinstance(v, list) and len(v) == 2 and all(isinstance(t, int) for t in v) for v in fan
        ):
            raise DocumentError("'fan' must be a list of [x, y] integer pairs")
        bl = data.get("blowups", [])
        if not isinstance(bl, list):
            raise DocumentError("'blowups' must be a list")
        for k, b in enumerate(bl):
            if not isinstance(b, dict) or "component" not in b or "coordinate" not in b:
                raise DocumentError(f"blowup {k} needs 'component' and 'coordinate'")
        try:
            pair = PairModel.from_json(data)
            marking = BoundaryMarking.from_json(data["marking"]) if "marking" in data else None
        except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
            raise DocumentError(str(exc)) from None
        if marking is not None and len(marking.points) != pair.n:
            raise DocumentError("marking needs one point per boundary component")
        return cls(pair, marking, data.get("name"))

    @classmethod
    def load(cls, path) -> "PairDocument":
        return cls.from_json(read_json(path))


def load_configuration(path_or_data, lattice: IntLattice | None = None):
    """Configuration file: either a list of groups, or an object with
    ``groups`` plus the reference ``gram`` and ``boundary`` classes.

    Returns (configuration, lattice or None, boundary or None).
    """
    data = read_json(path_or_data) if isinstance(path_or_data, (str, Path)) else path_or_data
    if isinstance(data, list):
        return ExceptionalConfiguration.from_json(data), lattice, None
    if not isinstance(data, dict) or "groups" not in data:
        raise DocumentError("configuration must be a list of groups or an object with 'groups'")
    config = ExceptionalConfiguration.from_json(data["groups"])
    lat = lattice
    if "gram" in data:
        lat = IntLattice(tuple(tuple(r) for r in data["gram"]), tuple(data.get("labels", ())))
    boundary = tuple(tuple(b) for b in data["boundary"]) if "boundary" in data else None
    return config, lat, boundary


def configuration_document(config: ExceptionalConfiguration, lattice: IntLattice, boundary):
    return {
        "groups": config.to_json(),
        "gram": [list(r) for r in lattice.gram],
        "labels": list(lattice.labels),
        "boundary": [list(b) for b in boundary],
    }


def load_map(path, source: IntLattice, target: IntLattice) -> LatticeIsometry:
    data = read_json(path)
    if isinstance(data, dict):
        data = data.get("matrix")
    if not isinstance(data, list) or len(data) != target.rank or any(
        not isinstance(r, list) or len(r) != source.rank for r in data
    ):
        raise DocumentError(f"map must be a {target.rank}x{source.rank} integer matrix")
    try:
        return LatticeIsometry(tuple(tuple(r) for r in data), source, target)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def load_period(path, lattice: IntLattice) -> PeriodPoint:
    try:
        return PeriodPoint.from_json(read_json(path), lattice)
    except (ValueError, KeyError, TypeError) as exc:
        raise DocumentError(str(exc)) from None
