"""Exception types shared across the package."""


class B0KitError(Exception):
    """Base class; the CLI maps these to exit code 1."""


class PresentationError(B0KitError):
    """Malformed DSL source or presentation data."""

    def __init__(self, message: str, line: int | None = None):
        self.message = message
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)

    def at(self, line: int) -> "PresentationError":
        if self.line is not None:
            return self
        return PresentationError(self.message, line)


class InconsistentPresentation(B0KitError):
    def __init__(self, violations):
        self.violations = list(violations)
        shown = "; ".join(self.violations[:5])
        more = f" (+{len(self.violations) - 5} more)" if len(self.violations) > 5 else ""
        super().__init__(f"inconsistent presentation: {shown}{more}")


class BudgetExceeded(B0KitError):
    def __init__(self, size: int, budget: int, what: str = "enumeration"):
        self.size = size
        self.budget = budget
        super().__init__(f"{what} of {size} elements exceeds budget {budget} (set B0KIT_BUDGET)")


class PreconditionError(B0KitError):
    """An operation was called outside its documented domain."""
