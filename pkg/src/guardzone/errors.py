class GuardZoneError(Exception):
    """Base class for errors raised by this package."""


class DomainError(GuardZoneError, ValueError):
    """An argument lies outside the domain of the operation."""


class CapacityError(GuardZoneError):
    """The CDMA reverse link is loaded beyond its pole capacity."""


class ConfigError(GuardZoneError, ValueError):
    """A configuration or parameter record failed validation.

    ``errors`` holds one message per violated invariant.
    """

    def __init__(self, errors):
        if isinstance(errors, str):
            errors = [errors]
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))
