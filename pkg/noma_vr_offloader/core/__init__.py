"""Core functionality: configuration and the error hierarchy."""

from .errors import ConfigError, DomainError, OffloaderError, TrainingFault, UsageError

__all__ = ["ConfigError", "DomainError", "OffloaderError", "TrainingFault", "UsageError"]
