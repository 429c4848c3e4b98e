"""Shared exception types, kept together so the CLI can map them to exit codes."""


class CapExceeded(RuntimeError):
    """A configurable size cap (vertex count, face count, search budget) was hit."""


class ParseError(ValueError):
    """Malformed graph input (graph6 string or edge list text)."""
