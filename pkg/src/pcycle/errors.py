class InfeasibleError(RuntimeError):
    """The protection model has no feasible plan (diagnosed or solver-reported)."""


class PlanError(ValueError):
    """A plan is structurally malformed for the given network and cycle set."""
