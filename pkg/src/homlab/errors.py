"""Exception hierarchy.

Budget exhaustion is deliberately a separate branch from every "answer"
outcome: callers must never read a :class:`BudgetExceeded` as "no
homomorphism".
"""


class HomlabError(Exception):
    pass


class ArgumentError(HomlabError, ValueError):
    pass


class SignatureMismatch(ArgumentError):
    pass


class CapacityError(HomlabError):
    """An input exceeds a configured size cap."""


class BudgetExceeded(HomlabError):
    """A search ran out of nodes before reaching an answer."""

    def __init__(self, message="search node budget exhausted", nodes=None):
        super().__init__(message)
        self.nodes = nodes


class PreconditionError(HomlabError):
    pass


class ConstructionError(HomlabError):
    """A construction failed its own post-check (indicates a bug or a bad parameter)."""


class ParseError(HomlabError, ValueError):
    def __init__(self, message, line=None, path=None):
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + message)
        self.line = line
        self.path = path
