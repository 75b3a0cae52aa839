"""Exception hierarchy shared by every module."""


class PosatError(ValueError):
    """Base class for domain errors (CLI maps these to exit code 1)."""

    kind = "domain_error"

    def to_json(self):
        return {"error": self.kind, "message": str(self)}


class PosetSyntaxError(PosatError):
    kind = "syntax_error"

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset

    def to_json(self):
        return {"error": self.kind, "message": str(self), "offset": self.offset}


class SizeLimitError(PosatError):
    kind = "size_limit"


class FamilyFormatError(PosatError):
    kind = "format_error"


class PreconditionError(PosatError):
    kind = "precondition"
