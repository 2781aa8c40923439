"""Exception types shared across the package."""


class InputError(ValueError):
    """An argument violates an operation's preconditions."""


class DomainError(ValueError):
    """Inputs are well formed but outside the mathematical validity domain
    (e.g. a perimeter above the cap for the given curvature and lambda)."""


class ConsistencyError(RuntimeError):
    """Two internal computation routes disagreed beyond tolerance."""


class SamplingError(RuntimeError):
    """Random curve generation failed to close after the configured retries."""


class CertificationError(RuntimeError):
    """A lune certification check failed; the message lists the violated check."""
