"""Bogomolov multipliers of finite p-groups given by polycyclic presentations."""

__version__ = "0.1.0"

from .errors import (B0KitError, BudgetExceeded, InconsistentPresentation, PreconditionError,
                     PresentationError)

__all__ = ["__version__", "B0KitError", "BudgetExceeded", "InconsistentPresentation",
           "PreconditionError", "PresentationError"]
