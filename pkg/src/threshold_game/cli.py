import argparse
import logging
from typing import Callable, Optional, Sequence, Tuple, TypeVar

from . import const, utils
from .errors import ParseError
from .models.run_spec import Command, RunSpec, SweepParameter
from .solvers.adaptive import DpMode


_T = TypeVar("_T")


def _argument(parse: Callable[[str], _T]) -> Callable[[str], _T]:
    def convert(text: str) -> _T:
        try:
            return parse(text)
        except ParseError as e:
            raise argparse.ArgumentTypeError(str(e)) from e

    return convert


def _fit(text: str) -> Tuple[float, int, float]:
    values = utils.parse_floats(text)
    if len(values) != 3 or not values[1].is_integer():
        raise ParseError(
            f"Expected fp0,max_delay,fp_max with an integer delay, got '{text}'"
        )
    return values[0], int(values[1]), values[2]


def _add_common_args(arg_parser: argparse.ArgumentParser) -> None:
    arg_parser.add_argument("-o", "--output", help="write here instead of stdout")
    arg_parser.add_argument(
        "--threads", type=int, help="worker threads (default: all cores)"
    )
    arg_parser.add_argument("--seed", type=int, default=const.DEFAULT_SEED)
    arg_parser.add_argument("--dev", action="store_true", help=argparse.SUPPRESS)
    verbosity = arg_parser.add_mutually_exclusive_group()
    verbosity.add_argument(
        "-v", "--verbose", dest="log_level", action="store_const", const=logging.DEBUG
    )
    verbosity.add_argument(
        "-q", "--quiet", dest="log_level", action="store_const", const=logging.WARNING
    )
    arg_parser.set_defaults(log_level=logging.INFO)


def _add_game_args(arg_parser: argparse.ArgumentParser) -> None:
    damage = arg_parser.add_mutually_exclusive_group()
    damage.add_argument("--damage", dest="damage_path", help="CSV with k,damage")
    damage.add_argument("--demand", dest="demand_path", help="CSV with k,demand")
    damage.add_argument(
        "--case-study",
        action="store_true",
        help="bundled hourly water demand, scaled by --alpha",
    )
    arg_parser.add_argument("--alpha", type=float, help="damage per unit of demand")

    curve = arg_parser.add_mutually_exclusive_group()
    curve.add_argument("--curve", dest="curve_path", help="CSV with delay,fp")
    curve.add_argument(
        "--fit-exp",
        type=_argument(_fit),
        metavar="FP0,DMAX,FPMAX",
        help="exponential curve through (0, FP0) and (DMAX, FPMAX)",
    )
    curve.add_argument(
        "--curve-from-sim", help="simulate-curve output to convert into a curve"
    )

    arg_parser.add_argument(
        "--fp-cost", type=float, default=const.DEFAULT_FP_COST, help="C"
    )
    arg_parser.add_argument(
        "--change-cost", type=float, default=const.DEFAULT_CHANGE_COST, help="C_d"
    )
    arg_parser.add_argument(
        "--dp-mode", type=DpMode, choices=list(DpMode), default=DpMode.LAZY
    )


def _get_arg_parser() -> argparse.ArgumentParser:
    arg_parser = argparse.ArgumentParser(
        prog="threshold-game",
        description="Optimal detection thresholds against a worst-case attacker.",
    )
    commands = arg_parser.add_subparsers(dest="command", required=True)

    solve_fixed = commands.add_parser(
        str(Command.SOLVE_FIXED), help="best threshold held for the whole horizon"
    )
    _add_game_args(solve_fixed)
    _add_common_args(solve_fixed)

    solve_adaptive = commands.add_parser(
        str(Command.SOLVE_ADAPTIVE), help="best per-timestep threshold schedule"
    )
    _add_game_args(solve_adaptive)
    _add_common_args(solve_adaptive)
    solve_adaptive.add_argument(
        "--cap", type=float, help="only minimise cost under this damage cap"
    )

    best_response = commands.add_parser(
        str(Command.BEST_RESPONSE), help="the attacker's reply to a given defence"
    )
    _add_game_args(best_response)
    _add_common_args(best_response)
    strategy = best_response.add_mutually_exclusive_group(required=True)
    strategy.add_argument("--delay", type=int, help="fixed detection delay")
    strategy.add_argument(
        "--schedule",
        type=_argument(utils.parse_ints),
        help="comma-separated detection delay per timestep",
    )

    simulate = commands.add_parser(
        str(Command.SIMULATE_CURVE), help="estimate a CUSUM trade-off curve"
    )
    _add_common_args(simulate)
    simulate.add_argument("--mu0", type=float, default=const.DEFAULT_NORMAL_MEAN)
    simulate.add_argument("--mu1", type=float, default=const.DEFAULT_ATTACK_MEAN)
    simulate.add_argument("--sigma", type=float, default=const.DEFAULT_NOISE_STD)
    simulate.add_argument(
        "--eta-grid",
        type=_argument(utils.parse_range),
        default=utils.parse_range(const.DEFAULT_ETA_GRID),
        metavar="START:STOP:STEP",
    )
    simulate.add_argument("--trials", type=int, default=const.DEFAULT_TRIALS)
    simulate.add_argument("--run-length", type=int, default=const.DEFAULT_RUN_LENGTH)

    sweep = commands.add_parser(
        str(Command.SWEEP), help="re-solve both games over a grid of one cost"
    )
    _add_game_args(sweep)
    _add_common_args(sweep)
    sweep.add_argument(
        "--sweep-param",
        type=SweepParameter,
        choices=list(SweepParameter),
        required=True,
    )
    sweep.add_argument(
        "--sweep-range",
        type=_argument(utils.parse_range),
        required=True,
        metavar="START:STOP:STEP",
    )

    oracle = commands.add_parser(str(Command.ORACLE))
    _add_game_args(oracle)
    _add_common_args(oracle)

    return arg_parser


def get_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    arg_parser = _get_arg_parser()
    args = arg_parser.parse_args(argv)
    return args


def to_run_spec(args: argparse.Namespace) -> RunSpec:
    command = Command(args.command)
    fields = {
        "command": command,
        "seed": args.seed,
        "threads": args.threads,
        "output": args.output,
        "dev": args.dev,
    }
    if command == Command.SIMULATE_CURVE:
        fields.update(
            normal_mean=args.mu0,
            attack_mean=args.mu1,
            noise_std=args.sigma,
            eta_grid=tuple(args.eta_grid),
            trials=args.trials,
            run_length=args.run_length,
        )
        return RunSpec(**fields)

    fields.update(
        damage_path=args.damage_path,
        demand_path=args.demand_path,
        alpha=args.alpha,
        case_study=args.case_study,
        curve_path=args.curve_path,
        fit_exp=args.fit_exp,
        curve_from_sim=args.curve_from_sim,
        fp_cost=args.fp_cost,
        change_cost=args.change_cost,
        dp_mode=args.dp_mode,
    )
    if command == Command.SOLVE_ADAPTIVE:
        fields.update(cap=args.cap)
    elif command == Command.BEST_RESPONSE:
        fields.update(delay=args.delay, schedule=args.schedule)
    elif command == Command.SWEEP:
        fields.update(
            sweep_param=args.sweep_param, sweep_values=tuple(args.sweep_range)
        )
    return RunSpec(**fields)
