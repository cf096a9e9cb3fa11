"""Exception types shared by the simulator, the learning stack and the harness."""

from typing import Optional


class OffloaderError(Exception):
    pass


class ConfigError(OffloaderError, ValueError):
    """Invalid configuration: unknown key, malformed value, violated bound."""


class DomainError(OffloaderError, ValueError):
    """An argument lies outside the domain of an operation (range, shape, finiteness)."""


class UsageError(OffloaderError, RuntimeError):
    """An operation was called in a state where it is not legal."""


class TrainingFault(OffloaderError, RuntimeError):
    def __init__(self, message: str, step: Optional[int] = None):
        self.step = step
        if step is not None:
            message = f"training step {step}: {message}"
        super().__init__(message)
