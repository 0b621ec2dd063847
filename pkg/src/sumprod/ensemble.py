"""Seeded set generators and ensemble runs over the checkers."""

from __future__ import annotations

import csv
import io
import json
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

import numpy as np

from . import harness
from .harness import CheckerResult, with_seed
from .prime_field import as_modulus, divisors, find_primitive_root, multiplicative_order, subgroup_elements
from .sets import ResidueSet

GENERATORS = (
    "random",
    "arithmetic_progression",
    "geometric_progression",
    "subgroup",
    "subgroup_union_cosets",
)


class IncompatibleError(ValueError):
    """Generator cannot feed the requested checker."""


def trial_seed(master: int, cell: int, trial: int) -> int:
    """64-bit seed depending only on (master seed, cell index, trial index)."""
    ss = np.random.SeedSequence([master & (2**64 - 1), cell, trial])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _floor_divisor(n: int, size: int) -> int:
    return max(d for d in divisors(n) if d <= size)


def generate_set(kind: str, p: int, size: int, rng: np.random.Generator, *,
                 zero_free: bool = False, exact_size: bool = True,
                 start: int | None = None, step: int | None = None,
                 ratio: int | None = None, cosets: int = 3) -> ResidueSet:
    """Draw one set of the given kind.

    With ``exact_size=False`` the subgroup kinds shrink ``size`` to the
    nearest attainable value (a divisor of p - 1, times the coset count);
    otherwise an unattainable size is an error.
    """
    modulus = as_modulus(p)
    p = modulus.p
    limit = p - 1 if zero_free or kind.startswith("subgroup") or kind == "geometric_progression" else p
    if not 1 <= size <= limit:
        raise ValueError(f"size {size} outside [1, {limit}] for {kind} over F_{p}")

    if kind == "random":
        low = 1 if zero_free else 0
        values = rng.choice(p - low, size=size, replace=False) + low
        return ResidueSet(modulus, values)

    if kind == "arithmetic_progression":
        j = np.arange(size, dtype=np.int64)
        for _ in range(1000):
            s0 = int(rng.integers(0, p)) if start is None else start % p
            d = int(rng.integers(1, p)) if step is None else step % p
            if d == 0:
                raise ValueError("step must be nonzero")
            values = (s0 + j * d) % p
            if not (zero_free and (values == 0).any()):
                return ResidueSet(modulus, values)
            if start is not None and step is not None:
                break
        raise ValueError("could not place a zero-free progression")

    if kind == "geometric_progression":
        for _ in range(1000):
            r = int(rng.integers(2, p)) if ratio is None else ratio % p
            if r != 0 and multiplicative_order(r, p) >= size:
                break
            if ratio is not None:
                raise ValueError(f"ratio {ratio} has order < {size}")
        else:
            r = find_primitive_root(p).value
        b = int(rng.integers(1, p)) if start is None else start % p
        if b == 0:
            raise ValueError("start must be nonzero")
        values, x = [], b
        for _ in range(size):
            values.append(x)
            x = x * r % p
        return ResidueSet(modulus, values)

    if kind == "subgroup":
        d = size if exact_size else _floor_divisor(p - 1, size)
        return ResidueSet(modulus, subgroup_elements(p, d))

    if kind == "subgroup_union_cosets":
        return generate_coset_union(p, size, rng, cosets=cosets, exact_size=exact_size)[1]

    raise ValueError(f"unknown generator {kind!r}; choose from {GENERATORS}")


def generate_coset_union(p: int, size: int, rng: np.random.Generator, *, cosets: int = 3,
                         exact_size: bool = True) -> tuple[ResidueSet, ResidueSet]:
    """(Γ, Q) with Q the union of Γ and cosets - 1 further random cosets of Γ."""
    p = as_modulus(p).p
    if cosets < 1:
        raise ValueError("cosets must be >= 1")
    if exact_size:
        if size % cosets or (p - 1) % (size // cosets):
            raise ValueError(f"size {size} is not {cosets} times a divisor of p - 1")
        d = size // cosets
    else:
        options = [d for d in divisors(p - 1) if d * cosets <= size and (p - 1) // d >= cosets]
        if not options:
            raise ValueError(f"no subgroup admits {cosets} cosets within size {size}")
        d = max(options)
    G = subgroup_elements(p, d)
    index = (p - 1) // d
    if cosets > index:
        raise ValueError(f"Γ of order {d} has only {index} cosets")
    g = find_primitive_root(p).value
    # coset g^i Γ for 0 <= i < index
    chosen = [0] + sorted(rng.choice(np.arange(1, index), size=cosets - 1, replace=False).tolist())
    Q = [x * pow(g, i, p) % p for i in chosen for x in G]
    return ResidueSet(p, G), ResidueSet(p, Q)


@dataclass(frozen=True)
class CheckerSpec:
    func: Callable[..., CheckerResult]
    arity: str
    zero_free: bool = False
    params: tuple[str, ...] = ()


CHECKERS: dict[str, CheckerSpec] = {
    "T1": CheckerSpec(harness.check_T1, "triple"),
    "T2": CheckerSpec(harness.check_T2, "triple", params=("c",)),
    "energy_T4": CheckerSpec(harness.check_energy_T4, "triple", zero_free=True),
    "sumprod": CheckerSpec(harness.check_sumprod, "single"),
    "aux": CheckerSpec(harness.check_aux, "single_a"),
    "3A": CheckerSpec(harness.check_3A, "single"),
    "4A": CheckerSpec(harness.check_4A, "single"),
    "A_times_sums": CheckerSpec(harness.check_A_times_sums, "single", params=("variant", "eps")),
    "katz_koester": CheckerSpec(harness.check_katz_koester, "pair"),
    "energy_connection": CheckerSpec(harness.check_energy_connection, "single", True, ("k",)),
    "critical_corollary": CheckerSpec(harness.check_critical_corollary, "single", True),
    "subgroup_energy": CheckerSpec(harness.check_subgroup_energy, "subgroup", True),
    "expsum_double": CheckerSpec(harness.check_expsum_double, "range"),
    "expsum_single": CheckerSpec(harness.check_expsum_single, "range"),
    "fourth_moment": CheckerSpec(harness.check_fourth_moment, "range"),
    "hole": CheckerSpec(harness.check_hole, "range", params=("c", "nu")),
}

_ARITY = {"single": 1, "single_a": 1, "pair": 2, "triple": 3}


def check_compatible(checker_id: str, generator: str) -> None:
    if checker_id not in CHECKERS:
        raise ValueError(f"unknown checker {checker_id!r}; choose from {sorted(CHECKERS)}")
    if generator not in GENERATORS:
        raise ValueError(f"unknown generator {generator!r}; choose from {GENERATORS}")
    arity = CHECKERS[checker_id].arity
    if arity == "range" and generator != "geometric_progression":
        raise IncompatibleError(f"{checker_id} runs on primitive-root powers; "
                                "use generator geometric_progression")
    if arity == "subgroup" and generator not in ("subgroup", "subgroup_union_cosets"):
        raise IncompatibleError(f"{checker_id} needs a subgroup generator")


@dataclass(frozen=True)
class EnsembleSpec:
    moduli: tuple[int, ...]
    generators: tuple[str, ...]
    sizes: tuple[int, ...]
    trials: int
    seed: int
    generator_params: dict = field(default_factory=dict)
    checker_params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be positive")
        for p in self.moduli:
            as_modulus(p)

    def cells(self) -> list[tuple[int, str, int]]:
        return list(product(self.moduli, self.generators, self.sizes))


def trial_inputs(checker_id: str, p: int, generator: str, size: int, seed: int,
                 generator_params: dict | None = None) -> tuple[tuple, dict]:
    """Positional and keyword inputs a trial feeds its checker."""
    spec = CHECKERS[checker_id]
    gp = dict(generator_params or {})
    rng = np.random.default_rng(seed)
    draw = dict(zero_free=spec.zero_free, exact_size=False, **gp)
    if spec.arity in _ARITY:
        sets = tuple(generate_set(generator, p, size, rng, **draw)
                     for _ in range(_ARITY[spec.arity]))
        if spec.arity == "single_a":
            return sets, {"a": int(rng.integers(1, p))}
        return sets, {}
    if spec.arity == "subgroup":
        if generator == "subgroup":
            G = generate_set("subgroup", p, size, rng, exact_size=False)
            return (G, G, G), {}
        G, Q = generate_coset_union(p, size, rng, cosets=gp.get("cosets", 3), exact_size=False)
        return (G, G, Q), {}
    # range checkers: size is N (or X = Y = size)
    a = int(rng.integers(1, p))
    if checker_id == "expsum_double":
        return (p, size, size, a), {}
    if checker_id == "expsum_single":
        return (p, size, a), {}
    if checker_id == "fourth_moment":
        return (p, size), {}
    return (p, a, size), {}


def _run_trial(job) -> CheckerResult:
    checker_id, cell, trial, p, generator, size, seed, gparams, cparams = job
    args, kwargs = trial_inputs(checker_id, p, generator, size, seed, gparams)
    spec = CHECKERS[checker_id]
    kwargs.update({k: v for k, v in cparams.items() if k in spec.params})
    result = spec.func(*args, strict=False, **kwargs)
    return with_seed(result, seed, generator=generator, cell=cell, trial=trial)


@dataclass
class EnsembleReport:
    checker_id: str
    results: list[CheckerResult]
    summary: list[dict]
    constants: dict[str, float] = field(default_factory=dict)

    @property
    def exact_violations(self) -> int:
        return sum(len(r.violations) for r in self.results)

    def constant_for(self, result: CheckerResult, claim_name: str) -> float | None:
        """Configured constant for a claim; a bare checker id covers its primary claim."""
        key = f"{result.checker_id}.{claim_name}"
        if key in self.constants:
            return self.constants[key]
        if claim_name == result.primary.name:
            return self.constants.get(result.checker_id)
        return None

    @property
    def constant_violations(self) -> int:
        bad = 0
        for r in self.results:
            for c in r.claims:
                C = self.constant_for(r, c.name)
                if C is not None and not c.holds_with_constant(C):
                    bad += 1
        return bad

    @property
    def failed(self) -> bool:
        return self.exact_violations > 0 or self.constant_violations > 0


def run_ensemble(spec: EnsembleSpec, checker_id: str, *, workers: int = 1,
                 constants: dict[str, float] | None = None) -> EnsembleReport:
    """Run ``trials`` seeded trials per (p, generator, size) cell.

    Output depends only on (spec, checker_id); ``workers`` changes wall time,
    never results.
    """
    for gen in spec.generators:
        check_compatible(checker_id, gen)
    jobs = []
    for cell, (p, gen, size) in enumerate(spec.cells()):
        for trial in range(spec.trials):
            jobs.append((checker_id, cell, trial, p, gen, size,
                         trial_seed(spec.seed, cell, trial),
                         spec.generator_params.get(gen, {}), spec.checker_params))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_trial, jobs, chunksize=4))
    else:
        results = [_run_trial(job) for job in jobs]
    return EnsembleReport(checker_id, results, summarize(results), dict(constants or {}))


def summarize(results: list[CheckerResult]) -> list[dict]:
    """Min/median/max ratio per (cell, claim), plus the observed implied constant."""
    groups: dict[tuple, list] = {}
    for r in results:
        for c in r.claims:
            key = (r.checker_id, r.params.get("cell"), r.params["p"],
                   r.params.get("generator", ""), c.name, c.direction, c.exact)
            groups.setdefault(key, []).append((r, c))
    out = []
    for (checker_id, cell, p, gen, name, direction, exact), rows in groups.items():
        ratios = [c.ratio for _, c in rows]
        sizes = sorted({";".join(map(str, r.params["sizes"])) for r, _ in rows})
        out.append({
            "checker_id": checker_id,
            "claim": name,
            "cell": cell,
            "p": p,
            "generator": gen,
            "sizes": sizes,
            "trials": len(rows),
            "direction": direction,
            "min_ratio": min(ratios),
            "median_ratio": statistics.median(ratios),
            "max_ratio": max(ratios),
            # an upper bound needs a constant >= max ratio, a lower bound one <= min ratio
            "observed_constant": max(ratios) if direction == "upper" else min(ratios),
            "exact": exact,
            "exact_violations": sum(1 for _, c in rows if c.holds is False),
        })
    return out


CSV_COLUMNS = ["checker_id", "claim", "p", "generator", "sizes", "seed", "lhs", "rhs",
               "rhs_alt", "ratio", "direction", "exact", "holds"]


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, float):
        return repr(v)
    return str(v)


def result_rows(results: list[CheckerResult]) -> tuple[list[str], list[list[str]]]:
    flag_names = sorted({f for r in results for f in r.flags})
    header = CSV_COLUMNS + [f"flag_{f}" for f in flag_names]
    rows = []
    for r in results:
        for c in r.claims:
            rows.append([
                r.checker_id, c.name, _fmt(r.params["p"]), r.params.get("generator", ""),
                ";".join(map(str, r.params["sizes"])), _fmt(r.seed), _fmt(c.lhs), _fmt(c.rhs),
                _fmt(c.rhs_alt), _fmt(c.ratio), c.direction, _fmt(c.exact), _fmt(c.holds),
            ] + [_fmt(r.flags[f]) if f in r.flags else "" for f in flag_names])
    return header, rows


def results_to_csv(results: list[CheckerResult]) -> str:
    header, rows = result_rows(results)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def results_to_jsonl(results: list[CheckerResult]) -> str:
    header, rows = result_rows(results)
    return "".join(json.dumps(dict(zip(header, row))) + "\n" for row in rows)


def summary_to_jsonl(summary: list[dict]) -> str:
    return "".join(json.dumps(s, sort_keys=True) + "\n" for s in summary)
