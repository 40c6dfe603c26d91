class PipelineError(Exception):
    """Base exception for all errors related to orchestration and reports."""


class ConfigError(PipelineError):
    """Raised when a pipeline config fails validation."""


class StageError(PipelineError):
    """Raised when a pipeline stage fails; wraps the original error."""

    def __init__(self, stage: str, cause: Exception, residual_history: list[float] | None = None):
        self.stage = stage
        self.cause = cause
        self.residual_history = residual_history or []
        super().__init__(f"stage '{stage}' failed: {cause}")


class UnknownQuantity(PipelineError):
    """Raised when an export names a quantity that has no grid."""
