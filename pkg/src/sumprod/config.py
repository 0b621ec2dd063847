"""INI-style experiment configuration for ``sumprod verify``.

Example::

    [field]
    p = 2003

    [generator]
    kinds = random, arithmetic_progression, geometric_progression, subgroup

    [ensemble]
    sizes = 20, 40, 60
    trials = 10
    seed = 20140721

    [checkers]
    names = sumprod

    [assert]
    # optional: sumprod = 0.5 asserts ratio >= 0.5 on the primary claim,
    # sumprod.SP_plus = 0.1 on a named claim

    [output]
    csv = sumprod.csv
    summary = sumprod_summary.jsonl

Unknown sections or keys are errors.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path

from .ensemble import CHECKERS, GENERATORS, EnsembleSpec

_KEYS = {
    "field": {"p"},
    "generator": {"kinds", "start", "step", "ratio", "cosets"},
    "ensemble": {"sizes", "trials", "seed", "workers"},
    "checkers": {"names", "k", "variant", "eps", "c", "nu"},
    "assert": None,
    "output": {"csv", "summary", "format"},
}
_REQUIRED = {"field": {"p"}, "generator": {"kinds"}, "ensemble": {"sizes", "trials"},
             "checkers": {"names"}}


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    ensemble: EnsembleSpec
    checkers: list[str]
    constants: dict[str, float] = field(default_factory=dict)
    csv_path: Path | None = None
    summary_path: Path | None = None
    format: str = "csv"
    workers: int = 1


def _ints(text: str, key: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise ConfigError(f"{key}: expected integers, got {text!r}") from None


def _names(text: str) -> list[str]:
    return [v for v in text.replace(",", " ").split() if v]


def _number(text: str, key: str):
    try:
        return int(text)
    except ValueError:
        try:
            return float(text)
        except ValueError:
            return text


def parse_config(text: str, base_dir: Path | str = ".") -> ExperimentConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None
    for section in parser.sections():
        if section not in _KEYS:
            raise ConfigError(f"unknown section [{section}]")
        allowed = _KEYS[section]
        for key in parser[section]:
            if allowed is not None and key not in allowed:
                raise ConfigError(f"unknown key {key!r} in [{section}]")
    for section, keys in _REQUIRED.items():
        if section not in parser:
            raise ConfigError(f"missing section [{section}]")
        for key in keys:
            if key not in parser[section]:
                raise ConfigError(f"missing key {key!r} in [{section}]")

    moduli = _ints(parser["field"]["p"], "p")
    kinds = _names(parser["generator"]["kinds"])
    for kind in kinds:
        if kind not in GENERATORS:
            raise ConfigError(f"unknown generator {kind!r}")
    gen_params = {k: int(v) for k, v in parser["generator"].items() if k != "kinds"}
    ens = parser["ensemble"]
    if "seed" in ens:
        seed = _ints(ens["seed"], "seed")[0]
    elif any(kind != "subgroup" for kind in kinds):
        raise ConfigError("seed is mandatory for randomized generators")
    else:
        seed = 0
    names = _names(parser["checkers"]["names"])
    for name in names:
        if name not in CHECKERS:
            raise ConfigError(f"unknown checker {name!r}")
    checker_params = {k: _number(v, k) for k, v in parser["checkers"].items() if k != "names"}

    constants = {}
    if "assert" in parser:
        for key, value in parser["assert"].items():
            if key.split(".", 1)[0] not in CHECKERS:
                raise ConfigError(f"unknown key {key!r} in [assert]: not a checker")
            try:
                constants[key] = float(value)
            except ValueError:
                raise ConfigError(f"assert {key}: not a number: {value!r}") from None

    try:
        spec = EnsembleSpec(
            moduli=tuple(moduli),
            generators=tuple(kinds),
            sizes=tuple(_ints(ens["sizes"], "sizes")),
            trials=_ints(ens["trials"], "trials")[0],
            seed=seed,
            generator_params={kind: gen_params for kind in kinds},
            checker_params=checker_params,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    base = Path(base_dir)
    out = parser["output"] if "output" in parser else {}
    fmt = out.get("format", "csv")
    if fmt not in ("csv", "jsonl"):
        raise ConfigError(f"format must be csv or jsonl, got {fmt!r}")
    return ExperimentConfig(
        ensemble=spec,
        checkers=names,
        constants=constants,
        csv_path=base / out["csv"] if "csv" in out else None,
        summary_path=base / out["summary"] if "summary" in out else None,
        format=fmt,
        workers=_ints(ens.get("workers", "1"), "workers")[0],
    )


def load_config(path: str | Path) -> ExperimentConfig:
    path = Path(path)
    return parse_config(path.read_text(), path.parent)
