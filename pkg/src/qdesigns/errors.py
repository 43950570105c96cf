class GuardError(RuntimeError):
    """A request would materialize more objects than the configured guard allows."""


DEFAULT_GUARD = 10**6
