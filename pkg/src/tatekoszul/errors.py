"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes, so each class carries the code it
should produce.
"""


class TateKoszulError(Exception):
    exit_code = 1
    kind = "error"

    def record(self):
        return {"kind": self.kind, "message": str(self)}


class ParseError(TateKoszulError, ValueError):
    exit_code = 2
    kind = "parse"


class PreconditionError(TateKoszulError, ValueError):
    exit_code = 2
    kind = "precondition"


class RingMismatch(PreconditionError):
    kind = "ring-mismatch"


class BudgetExceeded(TateKoszulError, RuntimeError):
    exit_code = 3
    kind = "budget"


class VerificationError(TateKoszulError, AssertionError):
    """A mathematical identity failed to hold; always a bug."""

    exit_code = 4
    kind = "verification"
