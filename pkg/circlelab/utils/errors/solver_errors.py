class SolverError(Exception):
    """Base exception for all errors related to fields, connections and their solvers."""


class SolverNotConverged(SolverError):
    """Raised when the harmonic relaxation exhausts its sweep budget."""

    def __init__(self, residual_history: list[float], sweeps: int):
        self.residual_history = residual_history
        self.sweeps = sweeps
        last = residual_history[-1] if residual_history else float("nan")
        super().__init__(f"no convergence after {sweeps} sweeps, last residual {last:.3e}")


class AtomicMeasureError(SolverError):
    """Raised when a fiber measure concentrates in a single bin."""


class NonMonotoneCumulative(SolverError):
    """Raised when a fiber cumulative fails to increase strictly."""


class IncompleteStencil(SolverError):
    """Raised when a cell lacks the neighbors a difference quotient needs."""


class LoopOutsideMesh(SolverError):
    """Raised when a loop leaves the meshed part of the surface."""


class NonMaximalError(SolverError):
    """Raised when a map extraction is requested for a non-maximal field."""
