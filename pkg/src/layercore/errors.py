"""Exception types shared across the solver."""


class ConfigError(ValueError):
    """Invalid configuration: unknown keys, bad values, impossible case setup."""


class InadmissibleStateError(RuntimeError):
    """A state with non-positive density or density-weighted potential temperature
    was produced (reconstruction overshoot, Lax-Wendroff intermediate, or RK stage)."""


class StepRejectedError(RuntimeError):
    """A time step could not complete even after the retry cascade."""
