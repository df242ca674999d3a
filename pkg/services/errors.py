"""Exception hierarchy shared by the simulation services."""


class UarncError(Exception):
    """Base class for all simulator and optimizer failures."""


class InvalidGeometryError(UarncError, ValueError):
    """UAV altitude or a position is not physically meaningful."""


class ChannelDomainError(UarncError, ValueError):
    """A channel quantity (SNR, BER) is outside its mathematical domain."""


class ParameterError(UarncError, ValueError):
    """Coding or analytics parameters violate 1 <= l <= L <= T or similar bounds."""


class InconsistentSystemError(UarncError, ValueError):
    """Received payloads contradict their coefficient vectors."""


class InstanceTooLargeError(UarncError, ValueError):
    """Exact enumeration requested on an instance with K*T above the limit."""


class InfeasibleProblemError(UarncError):
    """No position satisfying the fairness constraint could be found."""


class SweepDomainError(UarncError, ValueError):
    """A sweep value produces a (L, T) pair with T < L."""


class ConfigError(UarncError, ValueError):
    """Experiment configuration could not be parsed or validated."""


class ResultsIOError(UarncError, OSError):
    """Result files could not be written or read."""

    def __init__(self, path, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
