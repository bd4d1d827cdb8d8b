"""Shared constants for the policy family. Single source of truth for names and defaults."""

# Baselines
POLICY_EPS_GREEDY = "eps_greedy"
POLICY_UCB = "ucb"
POLICY_TS = "ts"
POLICY_OTS = "ots"
POLICY_DTS = "dts"
POLICY_D_UCB = "d_ucb"
POLICY_SW_UCB = "sw_ucb"

# AFF variants
POLICY_AFF_D_GREEDY = "aff_d_greedy"
POLICY_AFF_UCB1 = "aff_ucb1"
POLICY_AFF_UCB2 = "aff_ucb2"
POLICY_AFF_TS = "aff_ts"
POLICY_AFF_OTS = "aff_ots"
POLICY_AFF_DTS1 = "aff_dts1"
POLICY_AFF_DTS2 = "aff_dts2"

# Reference policies (harness checks)
POLICY_ORACLE = "oracle"
POLICY_FIXED_ARM = "fixed_arm"

BASELINE_POLICIES = (
    POLICY_EPS_GREEDY,
    POLICY_UCB,
    POLICY_TS,
    POLICY_OTS,
    POLICY_DTS,
    POLICY_D_UCB,
    POLICY_SW_UCB,
)

AFF_POLICIES = (
    POLICY_AFF_D_GREEDY,
    POLICY_AFF_UCB1,
    POLICY_AFF_UCB2,
    POLICY_AFF_TS,
    POLICY_AFF_OTS,
    POLICY_AFF_DTS1,
    POLICY_AFF_DTS2,
)

REFERENCE_POLICIES = (POLICY_ORACLE, POLICY_FIXED_ARM)

POLICY_NAMES = BASELINE_POLICIES + AFF_POLICIES + REFERENCE_POLICIES

# Parameter keys
PARAM_EPSILON = "epsilon"
PARAM_D = "d"
PARAM_ETA = "eta"
PARAM_ETA_MODE = "eta_mode"
PARAM_M = "M"
PARAM_XI = "xi"
PARAM_ALPHA0 = "alpha0"
PARAM_BETA0 = "beta0"
PARAM_C = "C"
PARAM_LAMBDA_FIXED = "lambda_fixed"
PARAM_W = "W"
PARAM_B = "B"
PARAM_ARM = "arm"

ETA_MODE_FIXED = "fixed"
ETA_MODE_ADAPTIVE = "adaptive"
AUTO = "auto"

# Defaults (step size, priors and burn-in used throughout the experiments)
DEFAULT_ETA = 0.001
DEFAULT_ADAPTIVE_ETA = 0.0001
DEFAULT_EPSILON = 0.1
DEFAULT_ALPHA0 = 2.0
DEFAULT_BETA0 = 2.0
DEFAULT_M = 10
DEFAULT_C = 10.0
DEFAULT_HOEFFDING_XI = 0.05
DEFAULT_BASELINE_XI = 0.5
DEFAULT_D_UCB_B = 1.0

# Which policies a sweep parameter applies to
PARAM_TARGETS = {
    PARAM_EPSILON: (POLICY_EPS_GREEDY,),
    PARAM_ETA: AFF_POLICIES,
    PARAM_LAMBDA_FIXED: (POLICY_D_UCB,),
    PARAM_W: (POLICY_SW_UCB,),
    PARAM_C: (POLICY_DTS, POLICY_AFF_DTS1, POLICY_AFF_DTS2),
}
