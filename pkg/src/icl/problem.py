"""Problem files: a ring, named objects and a list of tasks, as JSON."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

import jsonschema

from .bourbaki import FModule
from .errors import SchemaError
from .groebner import Ideal
from .monomial import MonomialIdeal
from .poly import Field, Ring

__all__ = ["ProblemFile", "Task", "load_problem", "parse_problem", "problem_schema"]

SCHEMA_NAME = "problem-v1.json"


def problem_schema() -> dict:
    text = resources.files("icl").joinpath("schema").joinpath(SCHEMA_NAME).read_text(encoding="utf-8")
    return json.loads(text)


@dataclass
class Task:
    op: str
    target: str
    args: dict = field(default_factory=dict)
    caps: dict = field(default_factory=dict)
    seeds: list = field(default_factory=list)


@dataclass
class ProblemFile:
    ring: Ring
    objects: dict
    tasks: list


def _pointer(parts) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in parts)


def _schema_error(err: jsonschema.ValidationError) -> SchemaError:
    path = list(err.absolute_path)
    if err.validator == "required":
        missing = [k for k in err.validator_value if k not in err.instance]
        if missing:
            return SchemaError(f"missing required key {missing[0]!r}", _pointer(path + [missing[0]]))
    return SchemaError(err.message, _pointer(path))


def parse_problem(data) -> ProblemFile:
    validator = jsonschema.Draft202012Validator(problem_schema())
    errors = sorted(validator.iter_errors(data), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        raise _schema_error(jsonschema.exceptions.best_match(errors))
    r = data["ring"]
    ring = Ring(tuple(r["vars"]), Field.parse(r["field"]))
    objects = {}
    for name, entry in data["objects"].items():
        if "gens" in entry:
            objects[name] = Ideal(ring, [ring.parse(g) for g in entry["gens"]])
        elif "monomial_gens" in entry:
            for i, v in enumerate(entry["monomial_gens"]):
                if len(v) != ring.nvars:
                    raise SchemaError(f"exponent vector needs {ring.nvars} entries",
                                      _pointer(["objects", name, "monomial_gens", i]))
            objects[name] = MonomialIdeal([tuple(v) for v in entry["monomial_gens"]], ring=ring)
        else:
            cols = entry["columns"]
            if len({len(c) for c in cols}) != 1:
                raise SchemaError("columns have different lengths", _pointer(["objects", name, "columns"]))
            objects[name] = FModule.parse(ring, cols)
    tasks = []
    for i, t in enumerate(data["tasks"]):
        if t["target"] not in objects:
            raise SchemaError(f"undefined object {t['target']!r}", _pointer(["tasks", i, "target"]))
        tasks.append(Task(t["op"], t["target"], t.get("args", {}), t.get("caps", {}), t.get("seeds", [])))
    return ProblemFile(ring, objects, tasks)


def load_problem(path) -> ProblemFile:
    """Read, validate and parse a problem file.

    Raises SchemaError (with a JSON pointer) for structural problems and
    ParseError, a SyntaxError, for bad polynomial text."""
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc.msg} at line {exc.lineno}", "") from None
    return parse_problem(data)
