"""Exception hierarchy shared by the library and the CLI."""


class SoberscopeError(Exception):
    pass


class InputError(SoberscopeError):
    """Malformed input: unknown element, duplicate identifier, bad document."""

    def __init__(self, message, location=None):
        super().__init__(message if location is None else f"{location}: {message}")
        self.location = location


class ContractError(SoberscopeError):
    """A documented precondition does not hold (e.g. order operation on a non-T0 space)."""


class LibraryBugError(SoberscopeError):
    """A check that the theory guarantees has failed."""
