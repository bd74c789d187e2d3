"""Exception hierarchy; every error knows the CLI exit code it maps to."""


class AuditError(Exception):
    """Base class for hard errors raised by the audit tool."""

    exit_code = 2


class InvalidInputError(AuditError, ValueError):
    """A precondition on an operation's inputs does not hold."""

    exit_code = 1


class NumericalError(AuditError):
    """A numerical computation failed or produced an impossible result."""

    exit_code = 2


class VerdictMismatchError(NumericalError):
    """Floating-point and exact robustness verdicts disagree."""

    def __init__(self, label: str, floating_only, exact_only):
        self.label = label
        self.floating_only = sorted(floating_only)
        self.exact_only = sorted(exact_only)
        super().__init__(
            f"{label}: floating/exact dependence disagree "
            f"(floating-only {self.floating_only[:5]}, exact-only {self.exact_only[:5]})"
        )


class BudgetExceededError(AuditError):
    """Exhaustive enumeration refused because it exceeds the configured budget."""

    exit_code = 3


class OutputError(AuditError, IOError):
    """The output location cannot be created or written."""

    exit_code = 1
