"""Baseline Pareto-archive search: SEMO and GSEMO, plus a seeded experiment
harness for hitting-time measurements.

Determinism contract: runs are driven by random.Random (Mersenne Twister),
whose output for a given integer seed is identical across platforms and
Python versions. Bounded integers are drawn by rejection on getrandbits and
per-bit mutation uses random() against 1/n, so no library call with a
version-dependent algorithm is involved. Same config, same seed: bit
identical results everywhere.
"""

from __future__ import annotations

import random
import statistics
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .bitstring import BitString
from .dominance import dominates, weakly_dominates
from .errors import ValidationError
from .oracles import reference_front
from .problems import ObjectiveVector, ProblemInstance, index_evaluator

ALGORITHMS = ("semo", "gsemo")


@dataclass(frozen=True)
class Target:
    """Stopping target for a run.

    kind "full_front": every Pareto-front vector present in the archive.
    kind "front_point": one named front vector present.
    kind "coverage": at least the given fraction of front vectors present.
    """

    kind: str
    vector: ObjectiveVector | None = None
    fraction: Fraction | None = None

    @classmethod
    def full_front(cls) -> "Target":
        return cls("full_front")

    @classmethod
    def front_point(cls, vector: ObjectiveVector) -> "Target":
        return cls("front_point", vector=(int(vector[0]), int(vector[1])))

    @classmethod
    def coverage(cls, fraction) -> "Target":
        # Floats go through str() so 0.95 means the decimal 95/100, not the
        # binary double slightly above it.
        frac = Fraction(str(fraction)) if isinstance(fraction, float) else Fraction(fraction)
        if not 0 < frac <= 1:
            raise ValidationError(f"coverage fraction must be in (0, 1], got {fraction!r}")
        return cls("coverage", fraction=frac)


@dataclass(frozen=True)
class RunConfig:
    algorithm: str
    instance: ProblemInstance
    seed: int
    budget: int
    target: Target = Target.full_front()
    check_archive: bool = False
    cap: int | None = None


@dataclass(frozen=True)
class RunResult:
    config: RunConfig
    hit: bool
    hitting_time: int | None
    evaluations_used: int
    archive: tuple[tuple[BitString, ObjectiveVector], ...]


def _rand_below(rng: random.Random, bound: int) -> int:
    """Uniform int in [0, bound) via rejection on getrandbits."""
    bits = (bound - 1).bit_length()
    if bound == 1:
        return 0
    while True:
        value = rng.getrandbits(bits)
        if value < bound:
            return value


def _check_archive_invariant(archive: list[tuple[int, ObjectiveVector]]) -> None:
    vectors = [vec for _, vec in archive]
    for i, a in enumerate(vectors):
        for j, b in enumerate(vectors):
            if i != j and weakly_dominates(a, b):
                raise AssertionError(f"archive invariant violated: {a} vs {b}")


def _needed_count(target: Target, front_size: int) -> int:
    if target.kind == "full_front":
        return front_size
    if target.kind == "coverage":
        num = target.fraction.numerator * front_size
        den = target.fraction.denominator
        return -(-num // den)
    return 1


def run(cfg: RunConfig) -> RunResult:
    """Execute one seeded run until the target is hit or the budget is spent."""
    if cfg.algorithm not in ALGORITHMS:
        raise ValidationError(f"algorithm must be one of {ALGORITHMS}, got {cfg.algorithm!r}")
    if not isinstance(cfg.budget, int) or cfg.budget < 1:
        raise ValidationError(f"budget must be a positive int, got {cfg.budget!r}")
    if cfg.target.kind not in ("full_front", "front_point", "coverage"):
        raise ValidationError(f"unknown target kind {cfg.target.kind!r}")

    inst = cfg.instance
    n = inst.n
    ev = index_evaluator(inst)
    front = set(reference_front(inst, cfg.cap))
    if cfg.target.kind == "front_point":
        if cfg.target.vector not in front:
            raise ValidationError(
                f"target vector {cfg.target.vector} is not on the Pareto front of {inst.descriptor}"
            )
        wanted = {cfg.target.vector}
    else:
        wanted = front
    needed = _needed_count(cfg.target, len(wanted))

    rng = random.Random(cfg.seed)
    gsemo = cfg.algorithm == "gsemo"
    flip_p = 1.0 / n

    archive: list[tuple[int, ObjectiveVector]] = []
    have = 0

    def consider(idx: int, vec: ObjectiveVector) -> None:
        nonlocal have
        for _, held in archive:
            if weakly_dominates(held, vec):
                return
        archive[:] = [(i, v) for i, v in archive if not dominates(vec, v)]
        archive.append((idx, vec))
        if vec in wanted:
            # Front vectors are globally non-dominated, so once present they
            # can never be evicted; counting them is monotone.
            have += 1

    start = rng.getrandbits(n)
    evaluations = 1
    consider(start, ev(start))
    hit = have >= needed
    hitting_time = evaluations if hit else None

    while not hit and evaluations < cfg.budget:
        parent = archive[_rand_below(rng, len(archive))][0]
        if gsemo:
            child = parent
            for b in range(n):
                if rng.random() < flip_p:
                    child ^= 1 << b
        else:
            child = parent ^ (1 << _rand_below(rng, n))
        evaluations += 1
        consider(child, ev(child))
        if cfg.check_archive:
            _check_archive_invariant(archive)
        if have >= needed:
            hit = True
            hitting_time = evaluations

    final = tuple(
        (BitString(n, idx), vec) for idx, vec in sorted(archive, key=lambda item: item[1])
    )
    return RunResult(cfg, hit, hitting_time, evaluations, final)


def semo_run(cfg: RunConfig) -> RunResult:
    """SEMO: uniform parent from the archive, one uniformly chosen bit flipped."""
    if cfg.algorithm != "semo":
        raise ValidationError(f"semo_run got algorithm {cfg.algorithm!r}")
    return run(cfg)


def gsemo_run(cfg: RunConfig) -> RunResult:
    """GSEMO: uniform parent, each bit flipped independently with rate 1/n."""
    if cfg.algorithm != "gsemo":
        raise ValidationError(f"gsemo_run got algorithm {cfg.algorithm!r}")
    return run(cfg)


@dataclass(frozen=True)
class ExperimentResult:
    template: RunConfig
    results: tuple[RunResult, ...]
    success_fraction: Fraction
    median_hitting_time: float | int | None
    mean_hitting_time: float | None


def hitting_time_experiment(
    template: RunConfig, seeds: Sequence[int], threads: int = 1
) -> ExperimentResult:
    """Run the template once per seed and summarize the hitting times.

    Runs are independent; with threads > 1 they execute in worker processes.
    Results are collected in seed order either way, so the outcome does not
    depend on the degree of parallelism.
    """
    if not seeds:
        raise ValidationError("experiment needs at least one seed")
    configs = [replace(template, seed=seed) for seed in seeds]
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = tuple(pool.map(run, configs))
    else:
        results = tuple(run(cfg) for cfg in configs)
    times = [r.hitting_time for r in results if r.hit]
    return ExperimentResult(
        template=template,
        results=results,
        success_fraction=Fraction(len(times), len(results)),
        median_hitting_time=statistics.median(times) if times else None,
        mean_hitting_time=statistics.fmean(times) if times else None,
    )


def render_experiment(experiment: ExperimentResult) -> str:
    """Per-seed rows plus a summary line, stable formatting."""
    lines = ["seed,hit,hitting_time,evaluations_used"]
    for result in experiment.results:
        ht = result.hitting_time if result.hitting_time is not None else "-"
        lines.append(
            f"{result.config.seed},{str(result.hit).lower()},{ht},{result.evaluations_used}"
        )
    frac = experiment.success_fraction
    median = experiment.median_hitting_time
    mean = experiment.mean_hitting_time
    lines.append(
        f"summary: success={frac.numerator}/{frac.denominator}"
        f" median_hitting_time={'-' if median is None else median}"
        f" mean_hitting_time={'-' if mean is None else mean}"
    )
    return "\n".join(lines) + "\n"
