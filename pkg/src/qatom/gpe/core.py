"""High-level condensate-field operations (filled in with the solver API)."""

__all__ = []
