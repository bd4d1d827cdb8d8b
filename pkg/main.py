"""
Command-line entry point for replicated bandit experiments.

    python main.py run experiment.txt --out results/my-run
    python main.py preset case1 --reps 20 --seed 7
"""

import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from cli import PRESET_NAMES, ConfigError, OutputError, emit_config, execute, load_config, preset
from harness import HarnessConfig

# Logging
logging.basicConfig(
    level=getattr(logging, HarnessConfig.LOG_LEVEL, logging.INFO),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
)
logger = logging.getLogger(__name__)


# ============================================================================
# Argument parsing
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="driftbandit", description="Dynamic Bernoulli bandit experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment file")
    run.add_argument("config", help="path to a key = value experiment file")
    run.add_argument("--out", default=None, help="output directory (default: DRIFTBANDIT_OUTPUT_DIR)")

    pre = sub.add_parser("preset", help="run a canned benchmark experiment")
    pre.add_argument("name", choices=PRESET_NAMES)
    pre.add_argument("--arms", type=int, default=None, help="arm count for large-arms (50 or 100)")
    pre.add_argument("--case", type=int, default=None, help="benchmark case 1-4 for large-arms")
    pre.add_argument("--reps", type=int, default=None, help="replications (default 100)")
    pre.add_argument("--seed", type=int, default=None, help="master seed")
    pre.add_argument("--horizon", type=int, default=None, help="steps per replication (default 10000)")
    pre.add_argument("--out", default=None, help="output directory (default: <DRIFTBANDIT_OUTPUT_DIR>/<name>)")
    pre.add_argument("--steps-log", type=int, default=1, metavar="K", help="keep every K-th step in steps.csv; 0 disables it")
    pre.add_argument("--emit-config", action="store_true", help="print the preset as an experiment file and exit")
    return parser


# ============================================================================
# Entry point
# ============================================================================

def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if HarnessConfig.TRACING:
        logger.info("Langfuse tracing enabled")
    try:
        if args.command == "run":
            config = load_config(args.config)
            execute(config, args.out or HarnessConfig.OUTPUT_DIR)
        else:
            try:
                config = preset(
                    args.name,
                    arms=args.arms,
                    case=args.case,
                    reps=args.reps,
                    seed=args.seed,
                    horizon=args.horizon,
                    steps_every=args.steps_log,
                )
            except ValidationError as e:
                raise ConfigError(e.errors()[0]["msg"].removeprefix("Value error, "), field="preset") from None
            if args.emit_config:
                sys.stdout.write(emit_config(config))
                return 0
            execute(config, args.out or f"{HarnessConfig.OUTPUT_DIR}/{args.name}", preset_name=args.name)
    except (ConfigError, OutputError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
