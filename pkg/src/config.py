"""Global configs and constants"""

import os
from datetime import datetime

from dotenv import load_dotenv

load_dotenv()

BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

SCHEMA_DIR = os.path.join(BASE_DIR, "schemas")


def get_max_workers() -> int:
    """Return the sweep worker count from MSF_THREADS (0 = auto)"""
    raw = os.getenv("MSF_THREADS", "0")
    try:
        threads = int(raw)
    except ValueError:
        threads = 0
    if threads <= 0:
        return min(8, os.cpu_count() or 1)
    return threads


# Logging config.

LOG_DIR = os.getenv("MSF_LOG_DIR", os.path.join(BASE_DIR, "logs"))
LOG_LEVEL = os.getenv("MSF_LOG_LEVEL", "INFO")

FORMAT = (
    "[%(asctime)s][%(levelname)s] %(name)s "
    "%(filename)s:%(funcName)s:%(lineno)d | %(message)s"
)
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
date_str = datetime.now().strftime("%Y-%m-%d")
LOG_FILENAME = os.path.join(LOG_DIR, f"{date_str}.log")

# Graphene defaults (design section of the reference device).

DEFAULT_CHEMICAL_POTENTIAL_EV = 0.5
DEFAULT_RELAXATION_TIME = 0.1e-12
DEFAULT_TEMPERATURE = 300.0
DEFAULT_MOBILITY = 2000e-4  # 2000 cm^2/Vs in m^2/Vs
FERMI_VELOCITY = 1.0e6

# Device defaults.

DEFAULT_DESIGN_FREQUENCY = 2.5e12
SILICON_PERMITTIVITY = 11.9
DEFAULT_LOSS_TANGENT = 0.0
GROUND_THICKNESS = 0.3e-6

# Geometry as fractions of the free-space wavelength at the design frequency.
THICKNESS_WAVELENGTH_DIVISOR = 13.0
PATCH_WAVELENGTH_DIVISOR = 14.0
PERIOD_WAVELENGTH_DIVISOR = 10.0

# Sweep defaults.

DEFAULT_F_START = 1.0e12
DEFAULT_F_STOP = 4.0e12
DEFAULT_N_POINTS = 601
DEFAULT_ANGLES_DEG = [0.0, 10.0, 20.0, 30.0, 40.0, 50.0]
DEFAULT_RECONFIG_MU_C_EV = [0.50, 0.525, 0.55, 0.575, 0.60]
DEFAULT_BANDWIDTH_THRESHOLD = 0.80

# Tolerances.

MOBILITY_CONSISTENCY_RTOL = 0.05
BRANCH_CUT_RTOL = 1e-12
TAN_SINGULARITY_RTOL = 1e-9
FLAT_SPECTRUM_TOL = 1e-12
PEAK_REFINE_RTOL = 1e-4
VALIDATION_TOLERANCE = 1e-10

# Solver defaults.

ROOT_FREQUENCY_RTOL = 1e-3
ROOT_XTOL_EV = 1e-6
ROOT_MAX_ITERATIONS = 100
DEFAULT_MU_C_BOUNDS_EV = (0.3, 0.8)
MATCH_TOLERANCE = 0.01
MATCH_MAX_ITERATIONS = 200
DEFAULT_MIN_ABSORPTION = 0.9
MU_C_SEARCH_BOUNDS_EV = (0.1, 1.0)
GEOMETRY_SEARCH_SCALE = (0.5, 2.0)
MATCH_XTOL = 1e-6
MATCH_FTOL = 1e-12
INVALID_DESIGN_PENALTY = 2.0
# Peak search window around the target, as fractions of f_target.
SOLVER_GRID_SPAN = (0.4, 1.6)

# Output.

FLOAT_SIGNIFICANT_DIGITS = 17
SPECTRUM_CSV_HEADER = [
    "frequency_hz",
    "s11_real",
    "s11_imag",
    "s11_mag_db",
    "absorption",
]

INVALID_GEOMETRY = "Invalid patch geometry"
NO_PEAK = "Spectrum is flat, no absorption peak"
