"""layercore: a layered 2D finite-volume dynamical core for dry mesoscale flows."""

__version__ = "0.1.0"

from .cases import CaseConfig, case_catalog, default_config, init_case  # noqa: F401
from .diagnostics import audit  # noqa: F401
from .errors import ConfigError, InadmissibleStateError, StepRejectedError  # noqa: F401
from .integrate import SchemeParams, compute_dt, strang_step  # noqa: F401
from .thermo import DEFAULT_CONSTANTS, PhysicalConstants  # noqa: F401
