"""Experiment defaults, RNG stream ids and CSV schemas."""

DEFAULT_HORIZON = 10_000
DEFAULT_REPLICATIONS = 100
DEFAULT_SEED = 20_240_601

# Independent random streams inside one replication
STREAM_TRAJECTORY = 0
STREAM_REWARDS = 1
STREAM_DECISIONS = 2
STREAM_COMMON_REWARDS = 3

SWEEP_PARAMETERS = ("eta", "lambda_fixed", "W", "C")
EPSILON_GRID = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)

STEP_COLUMNS = ["rep", "policy", "t", "arm", "reward", "mu_chosen", "mu_opt", "regret_inst", "regret_cum", "correct"]
SUMMARY_COLUMNS = ["policy", "reps", "mean_total_regret", "min", "q1", "median", "q3", "max"]
CURVE_COLUMNS = ["policy", "t", "mean_cum_regret", "pct_correct"]
