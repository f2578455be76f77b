"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A scenario config or geometric setup value is invalid."""


class StageError(RuntimeError):
    """A pipeline stage cannot produce its artifact (bad seed pixel, missing input, ...)."""


class PlanningError(ValueError):
    """No route exists, or plan inputs refer to unknown cameras/pixels."""


class FieldDomainError(RuntimeError):
    """The potential-field gradient is undefined at the requested position."""


class OffMaskError(RuntimeError):
    """A controller was handed a detection that does not lie on its drivable mask."""
