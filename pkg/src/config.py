"""
src/config.py

Central configuration for spinhiggs.
Reads run defaults and numerical guards from the environment.
Supports .env files (via python-dotenv) but works fine without one.

Environment variables:
  SPINHIGGS_SEED        default seed for `check` and random initial states (default 7)
  SPINHIGGS_OUTPUT_DIR  where run outputs land (default data/runs)
  SPINHIGGS_TRUNC_TOL   theta-series truncation tolerance (default 1e-16)
  SPINHIGGS_MAX_TERMS   theta-series term cap (default 64)
  SPINHIGGS_LOG_LEVEL   logging level for library diagnostics (default WARNING)
"""

import os

try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass  # python-dotenv not installed; fall back to plain env vars


# ── Run defaults ──────────────────────────────────────────────────────────────
DEFAULT_SEED: int      = int(os.getenv("SPINHIGGS_SEED", "7"))
OUTPUT_DIR: str        = os.getenv("SPINHIGGS_OUTPUT_DIR", "data/runs")
LOG_LEVEL: str         = os.getenv("SPINHIGGS_LOG_LEVEL", "WARNING")

# ── Theta series ──────────────────────────────────────────────────────────────
TRUNC_TOL: float       = float(os.getenv("SPINHIGGS_TRUNC_TOL", "1e-16"))
MAX_TERMS: int         = int(os.getenv("SPINHIGGS_MAX_TERMS", "64"))
MIN_TERMS: int         = 3      # pairs summed before the stopping rule may fire

# ── Integrator defaults ───────────────────────────────────────────────────────
DEFAULT_DT: float          = 1e-3
DEFAULT_T_END: float       = 10.0
DEFAULT_TOL: float         = 1e-10
DEFAULT_PROJECT_EVERY: int = 10

# ── Numerical guards ──────────────────────────────────────────────────────────
POLE_GUARD: float      = 1e-10  # |ϑ| < POLE_GUARD·|ϑ'(0)| is a lattice point
DET_GUARD: float       = 1e-12  # |det| below this is singular
ONSHELL_TOL: float     = 1e-8   # |c_i| allowed at bracket / vector-field inputs
BASIN_BOUND: float     = 1e-1   # |c_i| above this is outside the projection basin
NEWTON_MAX_ITER: int   = 50
DEGENERATE_Q: float    = 1e-12  # ‖q‖ below this has no projection direction
FD_STEP: float         = 1e-6   # central-difference step for observable gradients

# ── Sampling ──────────────────────────────────────────────────────────────────
P_RADIUS: float        = 2.0    # momentum ball radius for random on-shell points
S_MAX: float           = 2.0    # hyperboloid patch |s| ≤ S_MAX
CM_SPIN_SCALE: float   = 0.25   # |X| of random Calogero–Moser starts
CM_U_RANGE: tuple[float, float] = (0.2, 0.3)    # 2u stays between the poles at 0 and 1
CM_V_RANGE: tuple[float, float] = (-0.2, 0.2)
CM_REDRAWS: int        = 32
