import logging
import os
import time
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from pydantic import ValidationError

from . import cli, const, curves, executors, game, inputs, outputs, simulation, sweep
from .errors import (
    ConfigurationError,
    ContractViolation,
    InfeasibleError,
    OracleBoundError,
    ParseError,
)
from .executors import Executor
from .models.config import GameConfig
from .models.curve import TradeoffCurve
from .models.damage import DamageSeries
from .models.report import (
    AdaptiveReport,
    BestResponseReport,
    FixedReport,
    InputEcho,
    Runtime,
    SolutionReport,
)
from .models.run_spec import Command, RunSpec
from .models.schedule import ThresholdSchedule
from .models.simulation import ObserverModel, SimConfig
from .models.solutions import AdaptiveSolution, DamageCap, FixedSolution
from .solvers import adaptive, fixed, oracle


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class _Game:
    damage: DamageSeries
    damage_source: str
    curve: TradeoffCurve
    curve_source: str
    config: GameConfig
    alpha: Optional[float]


@dataclass(frozen=True)
class _Sections:
    payoff_trace: List[float]
    fixed: Optional[FixedReport] = None
    adaptive: Optional[AdaptiveReport] = None
    best_response: Optional[BestResponseReport] = None


def _load_damage(spec: RunSpec) -> Tuple[DamageSeries, str, Optional[float]]:
    if spec.case_study:
        alpha = spec.alpha if spec.alpha is not None else const.DEFAULT_ALPHA
        return inputs.load_case_study(alpha), "case-study", alpha
    if spec.demand_path is not None:
        damage = inputs.load_damage_csv(spec.demand_path, spec.alpha)
        return damage, spec.demand_path, spec.alpha
    assert spec.damage_path is not None
    return inputs.load_damage_csv(spec.damage_path), spec.damage_path, None


def _load_curve(spec: RunSpec) -> Tuple[TradeoffCurve, str]:
    if spec.curve_path is not None:
        return inputs.load_curve_csv(spec.curve_path), spec.curve_path
    if spec.curve_from_sim is not None:
        empirical = inputs.read_empirical_curve_csv(spec.curve_from_sim)
        return simulation.to_tradeoff_curve(empirical), spec.curve_from_sim

    fp0, max_delay, fp_max = spec.fit_exp or (
        const.DEFAULT_FIT_FP0,
        const.DEFAULT_FIT_MAX_DELAY,
        const.DEFAULT_FIT_FP_MAX,
    )
    source = f"fit-exp:{fp0},{max_delay},{fp_max}"
    return curves.fit_curve_exponential(fp0, max_delay, fp_max), source


def _load_game(spec: RunSpec) -> _Game:
    damage, damage_source, alpha = _load_damage(spec)
    curve, curve_source = _load_curve(spec)
    config = GameConfig(
        fp_cost=spec.fp_cost, change_cost=spec.change_cost, horizon=damage.horizon
    )
    return _Game(damage, damage_source, curve, curve_source, config, alpha)


def _echo(spec: RunSpec, loaded: _Game) -> InputEcho:
    return InputEcho(
        damage_source=loaded.damage_source,
        damage_sha256=outputs.digest(outputs.damage_frame(loaded.damage)),
        horizon=loaded.damage.horizon,
        curve_source=loaded.curve_source,
        curve_sha256=outputs.digest(outputs.curve_frame(loaded.curve)),
        curve_points=len(loaded.curve),
        fp_cost=loaded.config.fp_cost,
        change_cost=loaded.config.change_cost,
        alpha=loaded.alpha,
        cap=spec.cap,
        seed=spec.seed,
        dp_mode=str(spec.dp_mode),
    )


def _fixed_report(c: TradeoffCurve, solution: FixedSolution) -> FixedReport:
    return FixedReport(
        optimal_delay=solution.optimal_delay,
        threshold=c.threshold(solution.optimal_delay),
        defender_loss=solution.defender_loss,
        best_response=solution.best_response,
        attacker_payoff=solution.attacker_payoff,
    )


def _adaptive_report(c: TradeoffCurve, solution: AdaptiveSolution) -> AdaptiveReport:
    return AdaptiveReport(
        schedule=list(solution.schedule.delays),
        thresholds=game.thresholds_for(c, solution.schedule),
        change_points=game.change_points(solution.schedule),
        change_count=game.change_count(solution.schedule),
        total_cost=solution.total_cost,
        defender_loss=solution.defender_loss,
        best_response=solution.best_response,
        attacker_payoff=solution.attacker_payoff,
        chosen_cap=solution.chosen_cap.value,
    )


def _solve_fixed(loaded: _Game, executor: Executor) -> _Sections:
    d, c = loaded.damage, loaded.curve
    solution = fixed.solve_fixed(d, c, loaded.config, executor)
    return _Sections(
        payoff_trace=game.payoff_trace_fixed(d, solution.optimal_delay),
        fixed=_fixed_report(c, solution),
    )


def _solve_cap(loaded: _Game, cap: float, mode: adaptive.DpMode) -> AdaptiveSolution:
    d = loaded.damage
    solution = adaptive.minimum_cost_thresholds(
        d, loaded.curve, loaded.config, DamageCap(value=cap), mode
    )
    if solution.schedule is None:
        raise InfeasibleError(f"No threshold schedule keeps every attack within {cap}")

    k_a, payoff = adaptive.best_response_adaptive(d, solution.schedule)
    return AdaptiveSolution(
        schedule=solution.schedule,
        total_cost=solution.total_cost,
        defender_loss=solution.total_cost + payoff,
        best_response=k_a,
        attacker_payoff=payoff,
        chosen_cap=solution.cap,
    )


def _solve_adaptive(spec: RunSpec, loaded: _Game, executor: Executor) -> _Sections:
    d, c, g = loaded.damage, loaded.curve, loaded.config
    if spec.cap is not None:
        solution = _solve_cap(loaded, spec.cap, spec.dp_mode)
        fixed_report = None
    else:
        solution = adaptive.solve_adaptive(d, c, g, executor, spec.dp_mode)
        fixed_report = _fixed_report(c, fixed.solve_fixed(d, c, g, executor))
    return _Sections(
        payoff_trace=game.payoff_trace_adaptive(d, solution.schedule),
        fixed=fixed_report,
        adaptive=_adaptive_report(c, solution),
    )


def _best_response(spec: RunSpec, loaded: _Game) -> _Sections:
    d, c, g = loaded.damage, loaded.curve, loaded.config
    if spec.delay is not None:
        k_a, payoff = fixed.best_response_fixed(d, spec.delay)
        loss = game.defender_loss_fixed(d, c, g, spec.delay, k_a)
        schedule = ThresholdSchedule.constant(spec.delay, d.horizon)
        trace = game.payoff_trace_fixed(d, spec.delay)
    else:
        assert spec.schedule is not None
        schedule = ThresholdSchedule(delays=spec.schedule)
        trace = game.payoff_trace_adaptive(d, schedule)
        k_a, payoff = adaptive.best_response_adaptive(d, schedule)
        loss = game.defender_loss_adaptive(d, c, g, schedule, k_a)

    report = BestResponseReport(
        schedule=list(schedule.delays),
        fixed=spec.delay is not None,
        best_response=k_a,
        attacker_payoff=payoff,
        defender_loss=loss,
    )
    return _Sections(payoff_trace=trace, best_response=report)


def _oracle(loaded: _Game) -> _Sections:
    d, c, g = loaded.damage, loaded.curve, loaded.config
    fixed_solution = oracle.oracle_fixed(d, c, g)
    adaptive_solution = oracle.oracle_adaptive(d, c, g)
    return _Sections(
        payoff_trace=game.payoff_trace_adaptive(d, adaptive_solution.schedule),
        fixed=_fixed_report(c, fixed_solution),
        adaptive=_adaptive_report(c, adaptive_solution),
    )


def _simulate(spec: RunSpec, executor: Executor) -> outputs.Result:
    model = ObserverModel(
        normal_mean=spec.normal_mean,
        attack_mean=spec.attack_mean,
        noise_std=spec.noise_std,
    )
    cfg = SimConfig(
        threshold_grid=spec.eta_grid,
        trials=spec.trials,
        run_length=spec.run_length,
        rng_seed=spec.seed,
    )
    return simulation.estimate_curve(model, cfg, executor).to_frame()


def run_command(spec: RunSpec) -> outputs.Result:
    """
    Runs one command; solve commands produce a report, the others a table.
    """
    threads = spec.threads or os.cpu_count() or 1
    executor = executors.executor_for(threads)
    start_time = time.perf_counter()

    if spec.command == Command.SIMULATE_CURVE:
        return _simulate(spec, executor)

    loaded = _load_game(spec)
    if spec.command == Command.SWEEP:
        assert spec.sweep_param is not None
        rows = sweep.sweep(
            loaded.damage,
            loaded.curve,
            loaded.config,
            spec.sweep_param,
            spec.sweep_values,
            executor,
            spec.dp_mode,
        )
        return sweep.to_frame(rows)

    if spec.command == Command.SOLVE_FIXED:
        sections = _solve_fixed(loaded, executor)
    elif spec.command == Command.SOLVE_ADAPTIVE:
        sections = _solve_adaptive(spec, loaded, executor)
    elif spec.command == Command.BEST_RESPONSE:
        sections = _best_response(spec, loaded)
    elif spec.command == Command.ORACLE:
        sections = _oracle(loaded)
    else:
        raise ValueError(f"The command '{spec.command}' is not supported")

    end_time = time.perf_counter()
    return SolutionReport(
        command=str(spec.command),
        inputs=_echo(spec, loaded),
        fixed=sections.fixed,
        adaptive=sections.adaptive,
        best_response=sections.best_response,
        payoff_trace=sections.payoff_trace,
        runtime=Runtime(seconds=end_time - start_time, threads=threads),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = cli.get_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else const.EXIT_PARSE

    logging.basicConfig(level=args.log_level, format=const.LOG_FORMAT)
    start_time = time.perf_counter()
    try:
        spec = cli.to_run_spec(args)
        result = run_command(spec)
        outputs.write_result(spec.output, result)
    except ParseError as e:
        logger.error("%s", e)
        return const.EXIT_PARSE
    except (InfeasibleError, OracleBoundError) as e:
        logger.error("%s", e)
        return const.EXIT_INFEASIBLE
    except (ConfigurationError, ContractViolation, ValidationError, OSError) as e:
        logger.error("%s", e)
        return const.EXIT_CONFIG

    end_time = time.perf_counter()
    logger.info("Total time: %.6fs", end_time - start_time)
    return const.EXIT_OK
