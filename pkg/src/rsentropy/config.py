"""Run configuration: schema validation, exact scalar parsing, defaults.

Exact scalars in configs are fraction strings or {"re": "p/q", "im": "r/s"}
objects, never JSON floats, so exact data is never laundered through binary
floating point on ingestion. Every default is filled explicitly and echoed
back into the report.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

import jsonschema

from .correspondence import GeneratorSet
from .errors import (
    BadScalarLiteral,
    RsentropyError,
    SchemaViolation,
    UnreadableFile,
)
from .gaussian import GaussianRational
from .ratmap import make_map

DEFAULTS = {
    "space": "P1",
    "n": 1,
    "multiplicities": None,  # all ones
    "seed": 0,
    "estimator": {
        "epsilon_grid": [0.02, 0.05, 0.1, 0.2],
        "nu_min": 2,
        "nu_max": 12,
        "start_pool": 200,
        "tree_budget": 20000,
        "mp_beta": 0.9,
    },
    "budgets": {
        "word_budget": 10 ** 6,
        "degree_budget": 10 ** 4,
        "orbit_budget": 200_000,
        "node_budget": 20_000,
    },
    "tolerances": {
        "compare": 1e-12,
        "residual": 1e-9,
        "recurrence": 1e-9,
    },
    "relations_word_length": 2,
    "recurrence_depth": 12,
    "output": {"report_path": None, "csv_path": None},
}


def config_schema() -> dict:
    text = resources.files("rsentropy").joinpath("config_schema.json").read_text()
    return json.loads(text)


def parse_scalar(raw) -> GaussianRational:
    """One exact scalar from an int, 'p/q' string, or {re, im} object."""
    if isinstance(raw, bool):
        raise BadScalarLiteral("booleans are not scalars")
    if isinstance(raw, int):
        return GaussianRational(raw)
    if isinstance(raw, str):
        return GaussianRational(raw)
    if isinstance(raw, dict):
        return GaussianRational(raw.get("re", 0), raw.get("im", 0))
    raise BadScalarLiteral(f"cannot parse scalar {raw!r}")


@dataclass
class RunConfig:
    """Validated configuration with all defaults resolved."""

    space: str
    n: int
    generators: tuple  # of RationalMap, possibly empty for Pn runs
    degrees: tuple
    multiplicities: tuple
    seed: int
    estimator: dict
    budgets: dict
    tolerances: dict
    relations_word_length: int
    recurrence_depth: int
    output: dict
    raw: dict = field(repr=False, default_factory=dict)

    def generator_set(self) -> GeneratorSet:
        if not self.generators:
            raise SchemaViolation("this run needs explicit generators", "/generators")
        return GeneratorSet(self.generators)

    def echo(self) -> dict:
        """The resolved configuration as written into reports."""
        return {
            "space": self.space,
            "n": self.n,
            "generators": [
                {
                    "num": [c.literal() for c in g.num],
                    "den": [c.literal() for c in g.den],
                    "degree": g.degree,
                    "exact": g.exact_coeffs,
                }
                for g in self.generators
            ],
            "degrees": list(self.degrees),
            "multiplicities": list(self.multiplicities),
            "seed": self.seed,
            "estimator": dict(self.estimator),
            "budgets": dict(self.budgets),
            "tolerances": dict(self.tolerances),
            "relations_word_length": self.relations_word_length,
            "recurrence_depth": self.recurrence_depth,
            "output": dict(self.output),
        }


def _merged(defaults: dict, given: dict) -> dict:
    out = dict(defaults)
    for key, value in given.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merged(out[key], value)
        else:
            out[key] = value
    return out


def load_config(data: dict) -> RunConfig:
    """Validate a config dict and resolve it to a RunConfig."""
    try:
        jsonschema.validate(data, config_schema())
    except jsonschema.ValidationError as exc:
        pointer = "/" + "/".join(str(p) for p in exc.absolute_path)
        raise SchemaViolation(exc.message, pointer) from exc

    space = data.get("space", DEFAULTS["space"])
    n = data.get("n", DEFAULTS["n"])
    if space == "P1" and n != 1:
        raise SchemaViolation("P1 runs require n = 1", "/n")
    if space == "Pn" and "degrees" not in data and "generators" not in data:
        raise SchemaViolation("Pn runs need a degrees list", "/degrees")

    generators = []
    for idx, g in enumerate(data.get("generators", [])):
        try:
            num = [parse_scalar(c) for c in g["num"]]
            den = [parse_scalar(c) for c in g["den"]]
            generators.append(make_map(num, den))
        except RsentropyError as exc:
            raise SchemaViolation(str(exc), f"/generators/{idx}") from exc
    generators = tuple(generators)

    if "degrees" in data:
        degrees = tuple(data["degrees"])
    else:
        degrees = tuple(g.degree for g in generators)
    if not degrees:
        raise SchemaViolation("no generators and no degrees", "/generators")

    mults = data.get("multiplicities")
    if mults is None:
        mults = (1,) * len(degrees)
    mults = tuple(mults)
    if len(mults) != len(degrees):
        raise SchemaViolation(
            f"{len(mults)} multiplicities for {len(degrees)} generators",
            "/multiplicities")

    return RunConfig(
        space=space,
        n=n,
        generators=generators,
        degrees=degrees,
        multiplicities=mults,
        seed=data.get("seed", DEFAULTS["seed"]),
        estimator=_merged(DEFAULTS["estimator"], data.get("estimator", {})),
        budgets=_merged(DEFAULTS["budgets"], data.get("budgets", {})),
        tolerances=_merged(DEFAULTS["tolerances"], data.get("tolerances", {})),
        relations_word_length=data.get(
            "relations_word_length", DEFAULTS["relations_word_length"]),
        recurrence_depth=data.get(
            "recurrence_depth", DEFAULTS["recurrence_depth"]),
        output=_merged(DEFAULTS["output"], data.get("output", {})),
        raw=data,
    )


def parse_config(path) -> RunConfig:
    """Load, validate and resolve a JSON config file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UnreadableFile(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"config is not valid JSON: {exc}", "") from exc
    return load_config(data)
