"""Exception hierarchy.  Every domain failure derives from GridhomError so the
CLI can map it to exit status 1."""


class GridhomError(Exception):
    """Base class for domain errors."""

    code = "GridhomError"

    def payload(self) -> dict:
        return {"error": type(self).__name__, "message": str(self)}


class ValidationError(GridhomError):
    def __init__(self, message: str, field: str = ""):
        super().__init__(message)
        self.field = field

    def payload(self) -> dict:
        d = super().payload()
        d["field"] = self.field
        return d


class IllegalMove(GridhomError):
    pass


class NotAKnot(GridhomError):
    pass


class NotDiagonal(GridhomError):
    pass


class SizeCapExceeded(GridhomError):
    pass


class ResourceBudgetExceeded(GridhomError):
    pass


class NotDivisible(GridhomError):
    pass


class PreconditionViolated(GridhomError):
    pass


class AdjacencyViolation(GridhomError):
    pass


class MalformedTangle(GridhomError):
    pass


class NoCrossings(GridhomError):
    pass


class CaseMismatch(GridhomError):
    pass


class ParseError(ValidationError):
    pass
