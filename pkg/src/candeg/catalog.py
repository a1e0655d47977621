"""Declarative catalog of covers, generating pairs and numeric records.

The catalog is a JSON document validated against ``data/catalog.schema.json``
and then checked semantically. Divisor classes and expected values are small
arithmetic expressions over the surface's named classes (``h``, ``F1``,
``e2``, ``K`` ...) and the entry's parameters, evaluated exactly.
"""

from __future__ import annotations

import ast
import copy
import json
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

import jsonschema

from .abgroup import GroupSpec
from .bounds import SurfaceRecord
from .cover import BranchComponent, BuildingData, ConfigMode, ConfigurationAssumption
from .errors import CatalogError
from .genpair import GeneratingPairSpec
from .picard import (
    BaseSurface,
    DivisorClass,
    del_pezzo,
    declared_product,
    declared_surface,
    projective_plane,
    quadric,
)

__all__ = [
    "CatalogEntry",
    "evaluate",
    "load_catalog",
    "load_document",
    "dump_catalog",
    "default_catalog_path",
    "build_surface",
]

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv,
    ast.Pow: operator.pow,
}


def evaluate(expr: Any, env: Mapping[str, Any] | None = None) -> Any:
    """Exact value of an integer literal or an arithmetic expression string.

    Allowed: integers, names from ``env``, unary minus, + - * // ** and /,
    where / between integers gives a Fraction.
    """
    if isinstance(expr, bool) or not isinstance(expr, (int, str)):
        raise CatalogError(f"cannot evaluate {expr!r}")
    if isinstance(expr, int):
        return expr
    env = env or {}
    try:
        tree = ast.parse(expr, mode="eval")
    except SyntaxError as exc:
        raise CatalogError(f"malformed expression {expr!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise CatalogError(f"unknown name {node.id!r} in {expr!r}")
            return env[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Div):
                if isinstance(a, int) and isinstance(b, int):
                    return Fraction(a, b)
                return a / b
            if type(node.op) in _BINOPS:
                return _BINOPS[type(node.op)](a, b)
        raise CatalogError(f"unsupported construct in {expr!r}")

    value = ev(tree)
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


def _rational(value, env) -> Fraction | int:
    if isinstance(value, list):
        num, den = value
        r = Fraction(num, den)
        return int(r) if r.denominator == 1 else r
    return evaluate(value, env)


def default_catalog_path() -> Path:
    return Path(str(resources.files("candeg") / "data" / "catalog.json"))


def _schema() -> dict:
    return json.loads((resources.files("candeg") / "data" / "catalog.schema.json").read_text())


def build_surface(spec: Mapping[str, Any]) -> BaseSurface:
    kind = spec["kind"]
    if kind == "ProjectivePlane":
        return projective_plane()
    if kind == "QuadricProduct":
        return quadric()
    if kind == "DelPezzoBlowup":
        return del_pezzo(spec["points"])
    if kind == "DeclaredProduct":
        table = {
            (row["degree"], tuple(row.get("torsion", []))): (row["h0"], row["h1"])
            for row in spec.get("curve_table", [])
        }
        return declared_product(
            spec["genus"], tuple(spec.get("torsion", [])), table, tuple(spec.get("torsion_names", []))
        )
    if kind == "Declared":
        table = {tuple(row["class"]): tuple(row["h"]) for row in spec.get("cohomology_table", [])}
        return declared_surface(
            spec["gram"], spec["canonical"], spec["q"], spec["pg"], table, spec.get("names")
        )
    raise CatalogError(f"unknown surface kind {kind!r}")


@dataclass
class CatalogEntry:
    id: str
    kind: str
    doc: str
    data: dict = field(repr=False)

    @property
    def params(self) -> dict[str, dict]:
        return self.data.get("params", {})

    @property
    def facts(self) -> dict[str, Any]:
        return {f["name"]: f.get("value", True) for f in self.data.get("facts", [])}

    @property
    def notes(self) -> list[str]:
        return list(self.data.get("notes", []))

    def to_dict(self) -> dict:
        return copy.deepcopy(self.data)

    def param_values(self, overrides: Mapping[str, int] | None = None) -> dict[str, int]:
        overrides = dict(overrides or {})
        unknown = set(overrides) - set(self.params)
        if unknown:
            raise CatalogError(f"unknown parameter(s) {sorted(unknown)}", self.id)
        values = {}
        for name, spec in self.params.items():
            v = int(overrides.get(name, spec["default"]))
            if "min" in spec and v < spec["min"]:
                raise CatalogError(f"parameter {name}={v} is below its minimum {spec['min']}", self.id)
            values[name] = v
        return values

    def surface(self) -> BaseSurface:
        return build_surface(self.data["surface"])

    def env(self, params: Mapping[str, int] | None = None) -> dict[str, Any]:
        env: dict[str, Any] = dict(self.param_values(params))
        if self.kind == "abelian_cover":
            env.update(self.surface().names)
        return env

    def build(self, params: Mapping[str, int] | None = None):
        """The payload: BuildingData, GeneratingPairSpec or SurfaceRecord."""
        try:
            if self.kind == "abelian_cover":
                return self._build_cover(params)
            if self.kind == "generating_pair":
                return GeneratingPairSpec(name=self.id, notes=" ".join(self.notes), **self.data["pair"])
            return SurfaceRecord(**self.data["record"])
        except CatalogError as exc:
            if exc.location:
                raise
            raise CatalogError(exc.message, self.id) from exc
        except (ValueError, KeyError) as exc:
            raise CatalogError(str(exc), self.id) from exc

    def _build_cover(self, params) -> BuildingData:
        S = self.surface()
        env = self.env(params)
        G = GroupSpec(tuple(self.data["group"]))

        def cls(expr):
            value = evaluate(expr, env)
            if isinstance(value, int) and value == 0:
                return DivisorClass.zero(S.dim)
            if not isinstance(value, DivisorClass):
                raise CatalogError(f"{expr!r} is not a divisor class", self.id)
            return S.reduce(value)

        branch = [
            BranchComponent(
                b["label"],
                G.elem(b["v"]),
                cls(b["cls"]),
                b.get("smooth", True),
                b.get("irreducible", True),
            )
            for b in self.data["branch"]
        ]
        conf = self.data.get("config", {})
        config = ConfigurationAssumption(
            ConfigMode(conf.get("mode", "GeneralPosition")),
            tuple((p["id"], tuple(p["labels"])) for p in conf.get("points", [])),
        )
        bundles = self.data.get("L")
        if bundles is None:
            return BuildingData.from_reduced(S, G, branch, config=config)
        given = {G.elem(row["chi"]): cls(row["cls"]) for row in bundles["values"]}
        if bundles.get("reduced", True):
            basis = bundles.get("basis") or [row["chi"] for row in bundles["values"]]
            return BuildingData.from_reduced(S, G, branch, given, basis, config)
        return BuildingData(S, G, tuple(branch), given, config)

    def expect(self, params: Mapping[str, int] | None = None) -> dict[str, tuple[Any, str]]:
        """Expected values after evaluation, as ``key -> (value, tag)``."""
        env = self.env(params)
        out = {}
        for key, item in self.data.get("expect", {}).items():
            out[key] = (_decode_expect(key, item["value"], env, self.id), item["tag"])
        return out


_RATIONAL_KEYS = {"quotient_K2", "slope_limit", "sigma_slope_limit", "K2"}


def _decode_expect(key: str, value: Any, env, where: str) -> Any:
    try:
        if key in ("gamma", "contributing"):
            return [tuple(v) for v in value]
        if key == "quotient_groups":
            return sorted(tuple(sorted(g)) for g in value)
        if key in ("fixed_part",):
            return {lab: evaluate(x, env) for lab, x in value.items()}
        if key == "L":
            return [(tuple(row["chi"]), evaluate(row["cls"], env)) for row in value]
        if key == "h0":
            return [(row["cls"], evaluate(row["cls"], env), evaluate(row["value"], env)) for row in value]
        if key == "identities":
            return [(row["lhs"], row["rhs"]) for row in value]
        if key in ("samples", "verdicts", "slack"):
            return value
        if key in _RATIONAL_KEYS:
            return _rational(value, env)
        if isinstance(value, (bool, list, dict)) or value is None:
            return value
        if key in ("case", "smooth", "minimal"):
            return value
        return evaluate(value, env)
    except CatalogError as exc:
        raise CatalogError(f"expect.{key}: {exc.message}", where) from exc


def _semantic_checks(doc: dict) -> None:
    seen = set()
    for i, raw in enumerate(doc["entries"]):
        where = f"entries[{i}]"
        eid = raw["id"]
        if eid in seen:
            raise CatalogError(f"duplicate id {eid!r}", where)
        seen.add(eid)
        if raw["kind"] != "abelian_cover":
            continue
        orders = raw["group"]
        for j, b in enumerate(raw["branch"]):
            if len(b["v"]) != len(orders):
                raise CatalogError(f"inertia element {b['v']} has wrong length", f"{where}.branch[{j}]")
            if all(x % d == 0 for x, d in zip(b["v"], orders)):
                raise CatalogError("inertia element v must be nonzero", f"{where}.branch[{j}].v")


def _is_kind_mismatch(e) -> bool:
    return e.validator in ("const", "enum") and list(e.path)[-1:] == ["kind"]


def _deepest(err):
    """Follow oneOf/anyOf failures into the alternative selected by its "kind"."""
    while err.context:
        branches: dict[int, list] = {}
        for e in err.context:
            branches.setdefault(e.relative_schema_path[0], []).append(e)
        intended = [errs for errs in branches.values() if not any(_is_kind_mismatch(e) for e in errs)]
        if not intended:
            kind = err.instance.get("kind") if isinstance(err.instance, dict) else None
            err.message = f"unknown kind {kind!r}"
            return err
        err = max((e for errs in intended for e in errs), key=lambda e: len(e.absolute_path))
    return err


def load_document(doc: dict) -> list[CatalogEntry]:
    validator = jsonschema.Draft202012Validator(_schema())
    err = jsonschema.exceptions.best_match(validator.iter_errors(doc))
    if err is not None:
        err = _deepest(err)
        location = "/".join(str(p) for p in err.absolute_path) or "<root>"
        raise CatalogError(f"schema violation: {err.message}", location)
    _semantic_checks(doc)
    entries = [CatalogEntry(raw["id"], raw["kind"], raw.get("doc", ""), copy.deepcopy(raw)) for raw in doc["entries"]]
    return sorted(entries, key=lambda e: e.id)


def load_catalog(path: str | Path | None = None) -> list[CatalogEntry]:
    path = Path(path) if path else default_catalog_path()
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise CatalogError(f"invalid JSON: {exc}", str(path)) from exc
    except OSError as exc:
        raise CatalogError(str(exc), str(path)) from exc
    return load_document(doc)


def dump_catalog(entries: list[CatalogEntry]) -> dict:
    return {"version": 1, "entries": [e.to_dict() for e in entries]}
