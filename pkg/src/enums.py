"""Project Enums"""

from enum import Enum


class ConductivityModel(str, Enum):
    """Graphene conductivity model"""

    DRUDE = "drude"
    KUBO = "kubo"


class Polarization(str, Enum):
    """Incident wave polarization"""

    TE = "te"
    TM = "tm"


class OutputFormat(str, Enum):
    """Artifact file format"""

    CSV = "csv"
    JSON = "json"


class Subcommand(str, Enum):
    """CLI subcommands"""

    SPECTRUM = "spectrum"
    ANGLES = "angles"
    RECONFIG = "reconfig"
    SOLVE = "solve"
    VALIDATE = "validate"


class SolveMode(str, Enum):
    """Inverse design strategy"""

    PEAK = "peak"
    MATCH = "match"


class FreeParameter(str, Enum):
    """Design variables the solvers may move"""

    MU_C = "mu_c"
    PATCH_WIDTH = "d"
    PERIOD = "P"
    THICKNESS = "h"


class PeakStatus(str, Enum):
    """Outcome of a peak search"""

    INTERIOR = "interior"
    BOUNDARY = "boundary"
    NONE = "none"


class BandwidthStatus(str, Enum):
    """Outcome of a bandwidth search"""

    OK = "ok"
    BELOW_THRESHOLD = "below_threshold"


class LayerKind(str, Enum):
    """Transfer-matrix layer kinds"""

    SHEET = "sheet"
    DIELECTRIC = "dielectric"
    PEC = "pec_termination"
