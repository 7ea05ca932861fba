"""Exception hierarchy shared by every module."""


class LMGError(Exception):
    """Base class for all toolkit errors."""


class NodeNotFound(LMGError, KeyError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"unknown node {node!r}")

    def __str__(self):
        return self.args[0]


class MalformedPath(LMGError, ValueError):
    pass


class InvalidQuery(LMGError, ValueError):
    pass


class EnumerationLimit(LMGError):
    """Raised when an exhaustive routine is asked to run past its guard."""


class ClassViolation(LMGError, ValueError):
    """An operation was given a graph outside the class it requires."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DomainMismatch(LMGError, ValueError):
    pass


class PreconditionViolated(LMGError):
    """A transform was asked for a target class the input cannot be mapped to."""

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class TransformError(LMGError):
    pass


class ParseError(LMGError, ValueError):
    """Graph document could not be parsed.

    ``reason`` is one of ``DuplicateEdge``, ``Loop``, ``UnknownNode``,
    ``BadToken``.
    """

    def __init__(self, reason, line, message):
        self.reason = reason
        self.line = line
        super().__init__(f"line {line}: {reason}: {message}")
