"""Experiment orchestration, regret accounting, CSV persistence, and the CLI.

A run plays the interaction loop round by round: sample (or schedule) a
context, compress it, let the policy pick an action, draw the stochastic
reward, update, and log the exact-mean gap of the chosen action.  Expected
regret accrues those exact gaps (pseudo-regret); classifier regret counts
rounds where the choice differs from the exact argmax.

Reproducibility: repetition r of a run with master seed s draws every
random number from numpy's SeedSequence(s, spawn_key=(1, r)); instance
setup (hard environments) uses SeedSequence(s, spawn_key=(0,)).
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import hamiltonians
from .environments import Environment, stabilizer_environment
from .errors import ConfigurationError, NumericalError, QcbError
from .hard_instances import (
    HardInstance,
    build_hard_instance,
    context_observable,
    hard_context_at,
    hard_environment,
)
from .linucb import (
    AUTO,
    FIXED,
    AlphaSchedule,
    PlainLinUCB,
    PolicyState,
    gram_update,
    select_action,
    update,
)
from .paulis import Observable, all_pauli_strings
from .stabilizer import random_product_state

ISING = hamiltonians.ISING
CLUSTER = hamiltonians.CLUSTER
LOWER_BOUND = "lower_bound"
FAMILIES = (ISING, CLUSTER, LOWER_BOUND)

# basis-size caps used when sizing the default confidence width
_D_CAP = {ISING: 2, CLUSTER: 3}


@dataclass
class ExperimentConfig:
    family: str
    qubits: int = 10
    rounds: int = 2000
    reps: int = 20
    seed: int = 0
    h_min: float = -2.0
    h_max: float = 2.0
    j1_min: float = -2.0
    j1_max: float = 2.0
    j2_min: float = -2.0
    j2_max: float = 2.0
    actions: int = 4
    contexts: int = 3
    delta: float | None = None
    alpha_mode: str = AUTO
    alpha_fixed: float = 1.0
    alpha_m: float | None = None
    alpha_L: float | None = None
    alpha_delta: float = 0.01
    out_dir: str = "results"
    phase_log_start: int | None = None

    def __post_init__(self) -> None:
        # default: skip the warm-up tenth of the run, capped at round 200
        if self.phase_log_start is None:
            self.phase_log_start = min(200, self.rounds // 10)

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise ConfigurationError(f"unknown family {self.family!r}")
        if self.rounds < 1:
            raise ConfigurationError(f"rounds must be >= 1, got {self.rounds}")
        if self.reps < 1:
            raise ConfigurationError(f"reps must be >= 1, got {self.reps}")
        if not 0 <= self.phase_log_start < self.rounds:
            raise ConfigurationError(
                f"phase_log_start {self.phase_log_start} must lie in [0, rounds)"
            )
        if self.family in (ISING, CLUSTER):
            if self.qubits % 2 != 0 or self.qubits < 4:
                raise ConfigurationError(
                    f"{self.family} runs need an even qubit count >= 4, got {self.qubits}"
                )
        else:
            if self.qubits < 1:
                raise ConfigurationError(f"qubits must be >= 1, got {self.qubits}")
            if self.actions < 2:
                raise ConfigurationError(f"actions must be >= 2, got {self.actions}")
            if self.contexts < 1:
                raise ConfigurationError(f"contexts must be >= 1, got {self.contexts}")
        if self.alpha_mode not in (AUTO, FIXED):
            raise ConfigurationError("alpha mode must be auto or fixed:<value>")


@dataclass(frozen=True, slots=True)
class RoundRecord:
    t: int
    params: tuple[float, ...]
    chosen: int
    optimal: int
    gap: float
    realized_reward: float


@dataclass
class RegretCurve:
    mean_regret: np.ndarray
    stderr_regret: np.ndarray
    mean_classifier: np.ndarray
    stderr_classifier: np.ndarray


@dataclass
class ExperimentSetup:
    env: Environment
    schedule: AlphaSchedule
    context_source: Callable[[int, np.random.Generator], tuple[tuple[float, ...], Observable]]
    rounds: int
    d_cap: int
    instance: HardInstance | None = None


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    curve: RegretCurve
    phase_points: list[tuple[int, int, tuple[float, ...], int, int, float]]
    d_eff: int
    schedule: AlphaSchedule
    rounds: int
    action_labels: tuple[str, ...] = ()


def setup_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0,)))


def rep_rng(seed: int, rep_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(1, rep_index)))


def _resolve_schedule(config: ExperimentConfig, d_cap: int) -> AlphaSchedule:
    """Fill in the norm bounds of the auto schedule from the context ranges."""
    if config.alpha_mode == FIXED:
        return AlphaSchedule(mode=FIXED, fixed_value=config.alpha_fixed)
    n = config.qubits
    if config.alpha_L is not None:
        L = config.alpha_L
    elif config.family == ISING:
        L = math.sqrt(n * (1.0 + max(config.h_min**2, config.h_max**2)))
    elif config.family == CLUSTER:
        L = math.sqrt(
            n
            * (
                1.0
                + max(config.j1_min**2, config.j1_max**2)
                + max(config.j2_min**2, config.j2_max**2)
            )
        )
    else:
        L = 1.0
    m = config.alpha_m if config.alpha_m is not None else n * math.sqrt(d_cap)
    return AlphaSchedule(mode=AUTO, m=m, L=L, delta=config.alpha_delta, d=d_cap)


def build_setup(config: ExperimentConfig) -> ExperimentSetup:
    n = config.qubits
    if config.family == ISING:
        dist = hamiltonians.ising_distribution(config.h_min, config.h_max)
        env = stabilizer_environment(hamiltonians.ising_actions(n))

        def source(t: int, rng: np.random.Generator):
            params, obs = hamiltonians.sample_context(dist, n, rng)
            return params.as_tuple(), obs

        return ExperimentSetup(env, _resolve_schedule(config, _D_CAP[ISING]), source,
                               config.rounds, _D_CAP[ISING])
    if config.family == CLUSTER:
        dist = hamiltonians.cluster_distribution(
            config.j1_min, config.j1_max, config.j2_min, config.j2_max
        )
        env = stabilizer_environment(hamiltonians.cluster_actions(n))

        def source(t: int, rng: np.random.Generator):
            params, obs = hamiltonians.sample_context(dist, n, rng)
            return params.as_tuple(), obs

        return ExperimentSetup(env, _resolve_schedule(config, _D_CAP[CLUSTER]), source,
                               config.rounds, _D_CAP[CLUSTER])
    inst = build_hard_instance(
        n, config.actions, config.contexts, config.rounds, config.delta,
        setup_rng(config.seed),
    )

    def source(t: int, rng: np.random.Generator):
        ctx = hard_context_at(inst, t)
        return (float(ctx),), context_observable(inst, ctx)

    # only whole groups are played; the remainder rounds are dropped
    return ExperimentSetup(hard_environment(inst), _resolve_schedule(config, inst.c_prime),
                           source, inst.scheduled_rounds, inst.c_prime, inst)


def run_single(
    config: ExperimentConfig, setup: ExperimentSetup, rep_index: int
) -> tuple[list[RoundRecord], int]:
    """One repetition of the interaction loop; returns records and final d_eff."""
    rng = rep_rng(config.seed, rep_index)
    policy = PolicyState(setup.env.k, replace(setup.schedule))
    records = []
    for t in range(setup.rounds):
        params, obs = setup.context_source(t, rng)
        coords = gram_update(policy, obs)
        chosen, _ = select_action(policy, coords)
        reward = setup.env.actions[chosen].reward_sampler(obs, rng)
        update(policy, chosen, coords, reward)
        means = [action.mean_oracle(obs) for action in setup.env.actions]
        best = max(means)
        records.append(
            RoundRecord(t, params, chosen, means.index(best), best - means[chosen], reward)
        )
    return records, policy.d_eff


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    config.validate()
    setup = build_setup(config)
    T, reps = setup.rounds, config.reps
    gaps = np.zeros((reps, T))
    misses = np.zeros((reps, T))
    phase_points = []
    d_eff = 0
    for rep in range(reps):
        records, rep_d_eff = run_single(config, setup, rep)
        d_eff = max(d_eff, rep_d_eff)
        for rec in records:
            gaps[rep, rec.t] = rec.gap
            misses[rep, rec.t] = 1.0 if rec.chosen != rec.optimal else 0.0
            if rec.t >= config.phase_log_start:
                phase_points.append(
                    (rep, rec.t, rec.params, rec.chosen, rec.optimal, rec.gap)
                )
    cum_regret = np.cumsum(gaps, axis=1)
    cum_class = np.cumsum(misses, axis=1)
    if reps > 1:
        stderr_regret = cum_regret.std(axis=0, ddof=1) / math.sqrt(reps)
        stderr_class = cum_class.std(axis=0, ddof=1) / math.sqrt(reps)
    else:
        stderr_regret = np.zeros(T)
        stderr_class = np.zeros(T)
    curve = RegretCurve(
        mean_regret=cum_regret.mean(axis=0),
        stderr_regret=stderr_regret,
        mean_classifier=cum_class.mean(axis=0),
        stderr_classifier=stderr_class,
    )
    labels = tuple(action.label for action in setup.env.actions)
    return ExperimentResult(config, curve, phase_points, d_eff, setup.schedule, T, labels)


def _fmt(value: float) -> str:
    return repr(float(value))


def write_outputs(result: ExperimentResult, out_dir: str | Path | None = None) -> list[Path]:
    """Write regret.csv, phase.csv and config_echo into the output directory."""
    directory = Path(out_dir if out_dir is not None else result.config.out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    curve = result.curve

    regret_path = directory / "regret.csv"
    lines = ["round,mean_regret,stderr_regret,mean_classifier_regret,stderr_classifier_regret"]
    for t in range(result.rounds):
        lines.append(
            f"{t + 1},{_fmt(curve.mean_regret[t])},{_fmt(curve.stderr_regret[t])},"
            f"{_fmt(curve.mean_classifier[t])},{_fmt(curve.stderr_classifier[t])}"
        )
    regret_path.write_text("\n".join(lines) + "\n")

    phase_path = directory / "phase.csv"
    lines = ["rep,round,param1,param2,chosen_action,optimal_action,gap"]
    for rep, t, params, chosen, optimal, gap in result.phase_points:
        param1 = _fmt(params[0]) if params else ""
        param2 = _fmt(params[1]) if len(params) > 1 else ""
        lines.append(f"{rep},{t + 1},{param1},{param2},{chosen},{optimal},{_fmt(gap)}")
    phase_path.write_text("\n".join(lines) + "\n")

    echo_path = directory / "config_echo"
    echo = []
    for f in fields(result.config):
        echo.append(f"{f.name} = {getattr(result.config, f.name)}")
    sched = result.schedule
    echo.append(f"alpha_mode_resolved = {sched.mode}")
    if sched.mode == FIXED:
        echo.append(f"alpha_fixed_resolved = {_fmt(sched.fixed_value)}")
    else:
        echo.append(f"alpha_m_resolved = {_fmt(sched.m)}")
        echo.append(f"alpha_L_resolved = {_fmt(sched.L)}")
        echo.append(f"alpha_delta_resolved = {_fmt(sched.delta)}")
    echo.append(f"rounds_effective = {result.rounds}")
    echo.append(f"d_eff_final = {result.d_eff}")
    echo.append(f"action_labels = {','.join(result.action_labels)}")
    for rep in range(result.config.reps):
        echo.append(
            f"rep_seed.{rep} = SeedSequence({result.config.seed}, spawn_key=(1, {rep}))"
        )
    echo_path.write_text("\n".join(echo) + "\n")
    return [regret_path, phase_path, echo_path]


# ---------------------------------------------------------------------------
# Gram-basis vs ambient-basis equivalence check


@dataclass
class EquivalenceReport:
    rounds: int
    runs: int
    agreements: int
    max_score_diff: float

    @property
    def total_rounds(self) -> int:
        return self.rounds * self.runs

    @property
    def passed(self) -> bool:
        return self.agreements == self.total_rounds and self.max_score_diff < 1e-8


def _random_dense_observable(n: int, rng: np.random.Generator) -> Observable:
    """Gaussian coefficient on every Pauli string.

    Dense contexts keep action scores in general position: sparse ones make
    exact score ties between actions with different play histories common
    (disjoint supports), and an exact tie is broken by representation-
    dependent rounding rather than by the index rule.
    """
    strings = list(all_pauli_strings(n))
    coeffs = rng.normal(size=len(strings))
    return Observable(n, zip(strings, coeffs))


def run_equivalence_check(
    qubits: int = 2,
    k: int = 3,
    rounds: int = 500,
    runs: int = 20,
    seed: int = 0,
    alpha: float = 1.0,
) -> EquivalenceReport:
    """Drive compressed and ambient LinUCB with one shared reward stream.

    Both policies see the same contexts; the reward each round is drawn once
    for the compressed policy's choice and fed to both, so any divergence in
    decisions or scores is the compression's fault.
    """
    if qubits > 3:
        raise ConfigurationError("ambient comparison is limited to n <= 3")
    dim = 4**qubits
    position = {p: i for i, p in enumerate(all_pauli_strings(qubits))}
    agreements = 0
    max_diff = 0.0
    for run in range(runs):
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(run,)))
        states = [random_product_state(qubits, rng, f"random_{i}") for i in range(k)]
        env = stabilizer_environment(states)
        compressed = PolicyState(k, AlphaSchedule(mode=FIXED, fixed_value=alpha))
        ambient = PlainLinUCB(k, dim, alpha)
        for _ in range(rounds):
            obs = _random_dense_observable(qubits, rng)
            coords = gram_update(compressed, obs)
            choice_c, scores_c = select_action(compressed, coords)
            vec = np.zeros(dim)
            for p, w in obs.items():
                vec[position[p]] = w
            choice_a, scores_a = ambient.select(vec)
            max_diff = max(max_diff, float(np.max(np.abs(scores_c - scores_a))))
            if choice_c == choice_a:
                agreements += 1
            reward = env.actions[choice_c].reward_sampler(obs, rng)
            update(compressed, choice_c, coords, reward)
            ambient.update(choice_c, vec, reward)
    return EquivalenceReport(rounds, runs, agreements, max_diff)


# ---------------------------------------------------------------------------
# CLI


def _parse_alpha(text: str) -> tuple[str, float]:
    if text == AUTO:
        return AUTO, 1.0
    if text.startswith("fixed:"):
        try:
            return FIXED, float(text.split(":", 1)[1])
        except ValueError:
            raise ConfigurationError(f"bad fixed alpha value in {text!r}") from None
    raise ConfigurationError(f"--alpha must be 'auto' or 'fixed:<value>', got {text!r}")


def load_config_file(path: str | Path) -> dict[str, str]:
    """Parse a line-oriented ``key = value`` file; '#' starts a comment line."""
    values: dict[str, str] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigurationError(f"config line has no '=': {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


_OPTION_TYPES: dict[str, Callable[[str], object]] = {
    "qubits": int,
    "rounds": int,
    "reps": int,
    "seed": int,
    "h_min": float,
    "h_max": float,
    "j1_min": float,
    "j1_max": float,
    "j2_min": float,
    "j2_max": float,
    "actions": int,
    "contexts": int,
    "delta": float,
    "alpha": str,
    "alpha_m": float,
    "alpha_L": float,
    "alpha_delta": float,
    "out": str,
    "phase_log_start": int,
    "runs": int,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcbandit",
        description="Contextual-bandit simulations over quantum observables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", type=str, default=None, help="key = value file")
        p.add_argument("--qubits", type=int, default=None)
        p.add_argument("--rounds", type=int, default=None)
        p.add_argument("--reps", type=int, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", type=str, default=None)
        p.add_argument("--alpha", type=str, default=None, help="auto or fixed:<value>")
        p.add_argument("--alpha-m", dest="alpha_m", type=float, default=None)
        p.add_argument("--alpha-L", dest="alpha_L", type=float, default=None)
        p.add_argument("--alpha-delta", dest="alpha_delta", type=float, default=None)
        p.add_argument("--phase-log-start", dest="phase_log_start", type=int, default=None)

    ising = sub.add_parser("ising", help="transverse-field Ising contexts")
    add_common(ising)
    ising.add_argument("--h-min", dest="h_min", type=float, default=None)
    ising.add_argument("--h-max", dest="h_max", type=float, default=None)

    cluster = sub.add_parser("cluster", help="generalized cluster contexts")
    add_common(cluster)
    cluster.add_argument("--j1-min", dest="j1_min", type=float, default=None)
    cluster.add_argument("--j1-max", dest="j1_max", type=float, default=None)
    cluster.add_argument("--j2-min", dest="j2_min", type=float, default=None)
    cluster.add_argument("--j2-max", dest="j2_max", type=float, default=None)

    lower = sub.add_parser("lower-bound", help="grouped hard-instance schedule")
    add_common(lower)
    lower.add_argument("--actions", type=int, default=None)
    lower.add_argument("--contexts", type=int, default=None)
    lower.add_argument("--delta", type=float, default=None)

    equiv = sub.add_parser(
        "equivalence-check",
        help="compare compressed and ambient LinUCB decisions on small systems",
    )
    equiv.add_argument("--config", type=str, default=None)
    equiv.add_argument("--qubits", type=int, default=None)
    equiv.add_argument("--rounds", type=int, default=None)
    equiv.add_argument("--actions", type=int, default=None)
    equiv.add_argument("--runs", type=int, default=None)
    equiv.add_argument("--seed", type=int, default=None)
    equiv.add_argument("--alpha", type=str, default=None, help="fixed:<value> only")
    return parser


def _merged_option(name: str, cli_value, file_values: dict[str, str], default):
    if cli_value is not None:
        return cli_value
    if name in file_values:
        return _OPTION_TYPES[name](file_values[name])
    return default


def _config_from_args(args: argparse.Namespace, family: str) -> ExperimentConfig:
    file_values = load_config_file(args.config) if args.config else {}
    get = lambda name, default: _merged_option(
        name, getattr(args, name, None), file_values, default
    )
    alpha_mode, alpha_fixed = _parse_alpha(str(get("alpha", AUTO)))
    qubits_default = 1 if family == LOWER_BOUND else 10
    return ExperimentConfig(
        family=family,
        qubits=get("qubits", qubits_default),
        rounds=get("rounds", 2000),
        reps=get("reps", 20),
        seed=get("seed", 0),
        h_min=get("h_min", -2.0),
        h_max=get("h_max", 2.0),
        j1_min=get("j1_min", -2.0),
        j1_max=get("j1_max", 2.0),
        j2_min=get("j2_min", -2.0),
        j2_max=get("j2_max", 2.0),
        actions=get("actions", 4),
        contexts=get("contexts", 3),
        delta=get("delta", None),
        alpha_mode=alpha_mode,
        alpha_fixed=alpha_fixed,
        alpha_m=get("alpha_m", None),
        alpha_L=get("alpha_L", None),
        alpha_delta=get("alpha_delta", 0.01),
        out_dir=get("out", "results"),
        phase_log_start=get("phase_log_start", None),
    )


def cli_main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        if args.command == "equivalence-check":
            file_values = load_config_file(args.config) if args.config else {}
            get = lambda name, default: _merged_option(
                name, getattr(args, name, None), file_values, default
            )
            alpha_text = str(get("alpha", "fixed:1.0"))
            alpha_mode, alpha_fixed = _parse_alpha(alpha_text)
            if alpha_mode != FIXED:
                raise ConfigurationError("equivalence-check needs a fixed alpha")
            report = run_equivalence_check(
                qubits=get("qubits", 2),
                k=get("actions", 3),
                rounds=get("rounds", 500),
                runs=get("runs", 20),
                seed=get("seed", 0),
                alpha=alpha_fixed,
            )
            print(
                f"action agreement: {report.agreements}/{report.total_rounds} rounds "
                f"({report.runs} runs x {report.rounds} rounds)"
            )
            print(f"max score difference: {report.max_score_diff:.3e}")
            print("PASS" if report.passed else "FAIL")
            return 0 if report.passed else 2
        family = args.command.replace("-", "_")
        config = _config_from_args(args, family)
        result = run_experiment(config)
        paths = write_outputs(result)
        final_regret = result.curve.mean_regret[-1]
        final_class = result.curve.mean_classifier[-1]
        print(f"rounds = {result.rounds}, reps = {config.reps}, d_eff = {result.d_eff}")
        print(f"final mean regret = {final_regret:.4f}")
        print(f"final mean classifier regret = {final_class:.4f}")
        for path in paths:
            print(f"wrote {path}")
        return 0
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1
    except (NumericalError, QcbError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
