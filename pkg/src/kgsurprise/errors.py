"""Exception hierarchy shared by every module."""


class KGError(Exception):
    """Base class for all errors raised by kgsurprise."""


class InvalidInputError(KGError, ValueError):
    """An argument violates an operation's precondition."""


class UnknownLabelError(InvalidInputError, KeyError):
    """A label does not name any entity (or relation) of the graph."""

    def __init__(self, label, kind="entity"):
        self.label = label
        self.kind = kind
        super().__init__(label)

    def __str__(self):
        return f"unknown {self.kind} label: {self.label!r}"


class CorruptStreamError(KGError):
    """An LZ77 token stream cannot be decoded."""
