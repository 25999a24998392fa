"""
src/errors.py

Exception hierarchy shared by every spinhiggs module.

Two families, split by the CLI exit status they map to:
  ValidationError  (exit 1)  bad input: scenario fields, group types, indices
  NumericalError   (exit 2)  the math failed: poles, truncation, projection

Pure functions raise these; nothing returns a sentinel on failure.
"""


class SpinHiggsError(Exception):
    """Root of every error raised by the toolkit."""

    exit_code: int = 2


# ── Input validation ──────────────────────────────────────────────────────────

class ValidationError(SpinHiggsError, ValueError):
    """
    Invalid input.  `field` carries a dotted path into the scenario
    (e.g. "curve.tau_im") when the error came from a config document.
    """

    exit_code = 1

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)


class CoincidentMarksError(ValidationError):
    """Two Gaudin marked points coincide."""


class GroupTypeError(ValidationError):
    """Unknown series or a rank outside the series' allowed range."""


class IndexOutOfRangeError(ValidationError, IndexError):
    """An index (ϕ_α label, site number) outside its allowed set."""


# ── Numerical failures ────────────────────────────────────────────────────────

class NumericalError(SpinHiggsError, ArithmeticError):
    """A numerical routine could not produce a trustworthy value."""

    exit_code = 2


class TruncationError(NumericalError):
    """Theta series did not converge within max_terms."""


class PoleError(NumericalError):
    """Evaluation at (or numerically at) a pole."""


class ProjectionError(NumericalError):
    """Projection onto the constraint surface failed or started outside its basin."""


class DegenerateDirectionError(ProjectionError):
    """Projection direction vanishes (q ≈ 0)."""


class OffShellError(NumericalError):
    """A point expected on the constraint surface is not."""


class SingularMatrixError(NumericalError):
    """Singular group element or constraint matrix."""


class EigenSolverError(NumericalError):
    """numpy's eigen-solver failed to converge."""


# ── Outputs ───────────────────────────────────────────────────────────────────

class ReportSchemaError(SpinHiggsError):
    """An emitted report does not match its shipped schema."""
