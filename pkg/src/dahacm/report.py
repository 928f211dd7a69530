"""Check reports: assembly, deterministic serialization, schema validation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema

FORMAT = "dahacm-report/1"


def load_schema() -> dict:
    return json.loads(resources.files("dahacm").joinpath("report_schema.json").read_text())


@dataclass
class Check:
    id: str
    trial: int
    instance: str
    passed: bool
    witness: dict | None = None
    detail: dict | None = None

    def to_json(self) -> dict:
        out = {"id": self.id, "trial": self.trial, "instance": self.instance, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    subcommand: str
    params: dict
    checks: list[Check] = field(default_factory=list)

    def add(self, id: str, trial: int, instance: str, passed: bool, witness=None, detail=None):
        self.checks.append(Check(id, trial, instance, bool(passed), witness, detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        checks = sorted(self.checks, key=lambda c: c.trial)  # stable: keeps order within a trial
        return {
            "format": FORMAT,
            "subcommand": self.subcommand,
            "params": self.params,
            "passed": self.passed,
            "checks": [c.to_json() for c in checks],
            "summary": {"total": len(checks), "failed": sum(not c.passed for c in checks)},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


class _FloatLiteral(ValueError):
    pass


def _reject(token):
    raise _FloatLiteral(f"non-integer number literal {token!r}")


def validation_errors(text: str) -> list[str]:
    """Empty list iff `text` is a valid report."""
    try:
        doc = json.loads(text, parse_float=_reject, parse_constant=_reject)
    except _FloatLiteral as exc:
        return [str(exc)]
    except json.JSONDecodeError as exc:
        return [f"malformed JSON: {exc}"]
    validator = jsonschema.Draft202012Validator(load_schema())
    return [f"{'/'.join(map(str, e.absolute_path)) or '<root>'}: {e.message}"
            for e in sorted(validator.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))]


def report_schema_validate(path) -> bool:
    return not validation_errors(Path(path).read_text())
