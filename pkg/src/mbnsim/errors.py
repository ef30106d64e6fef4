"""Exception types shared across the simulator."""


class MbnError(Exception):
    """Base class for simulator errors."""


class ConfigurationError(MbnError):
    """Invalid parameters, deployment specs, or serialized configs.

    ``problems`` holds one message per violated constraint so callers can
    report every problem at once instead of the first one found.
    """

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class DomainError(MbnError):
    """Structurally valid input that is outside an operation's domain."""
