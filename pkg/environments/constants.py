"""Names and scenario parameters for the reward-mean models."""

MODEL_FIXED = "fixed"
MODEL_SMALL_CHANGE = "small_change"
MODEL_EXPONENTIAL_CLOCK = "exponential_clock"
MODEL_REFLECTING_WALK = "reflecting_walk"
MODEL_LOGISTIC_WALK = "logistic_walk"

MODEL_NAMES = (
    MODEL_FIXED,
    MODEL_SMALL_CHANGE,
    MODEL_EXPONENTIAL_CLOCK,
    MODEL_REFLECTING_WALK,
    MODEL_LOGISTIC_WALK,
)

# Per-arm parameter keys accepted by each model
MODEL_PARAMS = {
    MODEL_FIXED: ("means",),
    MODEL_SMALL_CHANGE: (),
    MODEL_EXPONENTIAL_CLOCK: ("theta", "r_low", "r_high"),
    MODEL_REFLECTING_WALK: ("sigma2",),
    MODEL_LOGISTIC_WALK: ("sigma2",),
}

# Three-arm scenario with one upward jump of arm 3 and a return
SMALL_CHANGE_BASE = (0.5, 0.3, 0.4)
SMALL_CHANGE_JUMP_ARM = 2
SMALL_CHANGE_JUMP_MEAN = 0.8
SMALL_CHANGE_JUMP_START = 3000
SMALL_CHANGE_JUMP_END = 5000

ASSIGNMENT_CYCLIC = "cyclic"

# Benchmark cases: two-arm parameter sets, repeated cyclically for more arms
CASES = {
    1: (MODEL_EXPONENTIAL_CLOCK, {"theta": (0.001, 0.01), "r_low": (0.0, 0.0), "r_high": (1.0, 1.0)}),
    2: (MODEL_EXPONENTIAL_CLOCK, {"theta": (0.001, 0.01), "r_low": (0.3, 0.0), "r_high": (1.0, 0.7)}),
    3: (MODEL_REFLECTING_WALK, {"sigma2": (0.0001,)}),
    4: (MODEL_LOGISTIC_WALK, {"sigma2": (0.001,)}),
}
CASE_ARMS = 2
