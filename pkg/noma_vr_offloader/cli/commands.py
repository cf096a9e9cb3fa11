"""CLI command handlers for the NOMA VR offloading simulator."""

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from noma_vr_offloader import __version__
from noma_vr_offloader.core.config import ConfigManager, RunConfig, parse_seeds
from noma_vr_offloader.core.errors import ConfigError, OffloaderError
from noma_vr_offloader.experiment import ProgressReporter, evaluate_checkpoint
from noma_vr_offloader.experiment.campaign import run_campaign
from noma_vr_offloader.experiment.report import comparison_table
from noma_vr_offloader.nets import RELATIVE_ERROR_FLOOR, DenseNet, gradient_check, load_checkpoint, random_layer_sizes
from noma_vr_offloader.oracle import certify_instance, make_tiny_instance, tiny_config

logger = logging.getLogger(__name__)

EXIT_CONFIG_ERROR = 1
EXIT_RUNTIME_FAULT = 2

GRADCHECK_TOLERANCE = 1e-6
GRADCHECK_PROBES = 400


def _config_manager(args) -> ConfigManager:
    manager = ConfigManager(getattr(args, "config", None), preset=getattr(args, "preset", None))
    overrides = {
        "agent": getattr(args, "agent", None),
        "total_steps": getattr(args, "steps", None),
        "eval_interval": getattr(args, "eval_interval", None),
        "out_dir": getattr(args, "out", None),
        "workers": getattr(args, "workers", None),
    }
    if getattr(args, "seed", None) is not None:
        overrides["seeds"] = (args.seed,)
    if getattr(args, "seeds", None) is not None:
        overrides["seeds"] = parse_seeds(args.seeds)
    if getattr(args, "paper_exact_clip", False):
        overrides["paper_exact_clip"] = True
    manager.update(overrides)
    return manager


def _print_config(run: RunConfig) -> None:
    for section in ("env", "agent", "experiment"):
        print(f"\n📋 {section}:")
        print("-" * 54)
        for key, value in getattr(run, section).to_dict().items():
            print(f"{key + ':':<26}{value}")


def cmd_show_config(args):
    ProgressReporter.print_banner("VR Offloader - Effective Configuration")
    manager = _config_manager(args)
    _print_config(manager.effective())
    source = manager.config_path if manager.config_path else "(defaults only)"
    print(f"\n📍 Config file: {source}")


def cmd_train(args):
    manager = _config_manager(args)
    run = manager.effective()
    spec = run.experiment
    ProgressReporter.print_banner(f"VR Offloader - Training {spec.agent}")
    print(f"📊 Users: {run.env.n_users}, channels: {run.env.n_channels}, slots: {run.env.frames_per_second}")
    print(f"📊 Seeds: {list(spec.seeds)}, env steps: {spec.total_steps}, eval every {spec.eval_interval}")
    print(f"📁 Output: {spec.out_dir}\n")
    run_campaign(run, report=True)
    print("\n✅ Training complete")


def cmd_eval(args):
    manager = _config_manager(args)
    run = manager.effective()
    checkpoint = load_checkpoint(args.checkpoint)
    seed = args.seed if args.seed is not None else 0
    ProgressReporter.print_banner("VR Offloader - Evaluation")
    row = evaluate_checkpoint(checkpoint, run.env, args.episodes, seed)
    print(f"📄 Checkpoint: {args.checkpoint}")
    print(f"📊 Episodes: {args.episodes}, seed {seed}\n")
    ProgressReporter.print_metrics_row(row)


def cmd_oracle_check(args):
    ProgressReporter.print_banner("VR Offloader - Oracle Check")
    rng = np.random.default_rng(args.seed)
    outcomes = []
    details = []
    for k in range(args.instances):
        config = tiny_config(args.users, args.channels, args.slots, rng_seed=args.seed)
        instance = make_tiny_instance(config, episode_seed=k)
        report = certify_instance(instance, args.samples, rng)
        outcomes.append(report.passed)
        status = "feasible" if report.search.feasible else "infeasible"
        detail = f"instance {k}: optimum {report.search.objective:.6g} ({status}), replay {report.replay_objective:.6g}"
        if report.problems:
            detail += f" - {report.problems[0]}"
        details.append(detail)
    ProgressReporter.print_check_results("ORACLE CHECK", outcomes, details)
    if not all(outcomes):
        sys.exit(EXIT_RUNTIME_FAULT)


def cmd_gradcheck(args):
    ProgressReporter.print_banner("VR Offloader - Gradient Check")
    print(
        f"📐 Relative error |analytic - numeric| / max(|analytic|, |numeric|, {RELATIVE_ERROR_FLOOR:g}), "
        f"pass at ≤ {GRADCHECK_TOLERANCE:g} (at most {GRADCHECK_PROBES} parameters per net)\n"
    )
    rng = np.random.default_rng(args.seed)
    outcomes = []
    details = []
    for k in range(args.nets):
        sizes = random_layer_sizes(rng)
        net = DenseNet(sizes, rng=rng)
        error = gradient_check(net, rng, max_params=GRADCHECK_PROBES)
        outcomes.append(error <= GRADCHECK_TOLERANCE)
        details.append(f"net {k} {sizes}: max relative error {error:.2e}")
    ProgressReporter.print_check_results("GRADIENT CHECK", outcomes, details)
    if not all(outcomes):
        sys.exit(EXIT_RUNTIME_FAULT)


def cmd_compare(args):
    ProgressReporter.print_comparison(comparison_table(args.out))


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", "-c", default=None, help="Flat YAML config file")
    parser.add_argument("--preset", choices=["desk", "paper"], default=None, help="Campaign preset (default: desk)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vr-offloader",
        description="NOMA VR offloading simulator - train and evaluate channel-allocation agents",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info logs, -vv for debug")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    train_parser = subparsers.add_parser("train", help="Run a training campaign")
    _add_config_flags(train_parser)
    train_parser.add_argument("--agent", choices=["hrppo", "ppo", "hrdqn", "random"], default=None)
    seed_group = train_parser.add_mutually_exclusive_group()
    seed_group.add_argument("--seed", type=int, default=None, help="Single campaign seed")
    seed_group.add_argument("--seeds", default=None, help="Seed range A..B or list A,B,C")
    train_parser.add_argument("--steps", type=int, default=None, help="Env steps per seed")
    train_parser.add_argument("--eval-interval", type=int, default=None, help="Env steps between eval points")
    train_parser.add_argument("--out", "-o", default=None, help="Output directory")
    train_parser.add_argument(
        "--paper-exact-clip", action="store_true", help="Use min(r, clip(r)) * A as the actor objective"
    )
    train_parser.add_argument("--workers", type=int, default=None, help="Seeds trained in parallel")
    train_parser.set_defaults(func=cmd_train)

    eval_parser = subparsers.add_parser("eval", help="Evaluate a checkpoint greedily")
    _add_config_flags(eval_parser)
    eval_parser.add_argument("--checkpoint", required=True, type=Path)
    eval_parser.add_argument("--episodes", type=int, default=10)
    eval_parser.add_argument("--seed", type=int, default=None)
    eval_parser.set_defaults(func=cmd_eval)

    oracle_parser = subparsers.add_parser("oracle-check", help="Certify env-core against exhaustive search")
    oracle_parser.add_argument("--instances", type=int, default=5)
    oracle_parser.add_argument("--users", type=int, default=2)
    oracle_parser.add_argument("--channels", type=int, default=1)
    oracle_parser.add_argument("--slots", type=int, default=5)
    oracle_parser.add_argument("--samples", type=int, default=200, help="Random sequences per instance")
    oracle_parser.add_argument("--seed", type=int, default=0)
    oracle_parser.set_defaults(func=cmd_oracle_check)

    grad_parser = subparsers.add_parser("gradcheck", help="Finite-difference check of dense-net gradients")
    grad_parser.add_argument("--nets", type=int, default=10)
    grad_parser.add_argument("--seed", type=int, default=0)
    grad_parser.set_defaults(func=cmd_gradcheck)

    show_parser = subparsers.add_parser("show-config", help="Show the effective configuration")
    _add_config_flags(show_parser)
    show_parser.set_defaults(func=cmd_show_config)

    compare_parser = subparsers.add_parser("compare", help="Compare finished campaigns")
    compare_parser.add_argument("--out", "-o", action="append", required=True, help="Campaign directory (repeatable)")
    compare_parser.set_defaults(func=cmd_compare)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse reports bad flags with status 2; they are configuration errors here
        if e.code == 2:
            sys.exit(EXIT_CONFIG_ERROR)
        raise

    if args.command is None:
        parser.print_help()
        sys.exit(EXIT_CONFIG_ERROR)

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")

    try:
        args.func(args)
    except ConfigError as e:
        print(f"\n❌ Configuration error: {e}")
        sys.exit(EXIT_CONFIG_ERROR)
    except (OffloaderError, OSError) as e:
        logger.debug("Command failed", exc_info=True)
        print(f"\n❌ {type(e).__name__}: {e}")
        sys.exit(EXIT_RUNTIME_FAULT)


if __name__ == "__main__":
    main()
