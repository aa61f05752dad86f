"""Exception hierarchy shared by every subsystem.

Each exception carries a short machine-readable ``kind`` tag (for example
``"not-associative"``) and an ``exit_code`` used by the command line tool.
"""


class GtcfError(Exception):
    exit_code = 2
    kind = "error"

    def __init__(self, message, kind=None, **details):
        super().__init__(message)
        if kind is not None:
            self.kind = kind
        self.details = details

    def to_json(self):
        out = {"error": self.kind, "message": str(self)}
        for key, value in self.details.items():
            out[key] = value if isinstance(value, (str, int, float, bool, list, dict, type(None))) else str(value)
        return out


class ValidationError(GtcfError):
    """Malformed input: a table that is not a group, a bad injection, ..."""

    kind = "validation-error"


class ParseError(ValidationError):
    kind = "syntax-error"

    def __init__(self, message, position=None, kind=None, **details):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message, kind=kind, position=position, **details)
        self.position = position


class UnknownLetterError(ValidationError):
    kind = "unknown-letter"


class OracleError(GtcfError):
    kind = "oracle-failure"


class ResourceLimitError(GtcfError):
    """A Groebner computation exceeded the configured size or degree guard."""

    exit_code = 4
    kind = "resource-limit"


class CheckFailed(GtcfError):
    """A verification failed; ``report`` holds the witness."""

    exit_code = 3
    kind = "check-failed"

    def __init__(self, message, report=None, kind=None, **details):
        super().__init__(message, kind=kind, **details)
        self.report = report

    def to_json(self):
        out = super().to_json()
        if self.report is not None and hasattr(self.report, "to_json"):
            out["report"] = self.report.to_json()
        return out
