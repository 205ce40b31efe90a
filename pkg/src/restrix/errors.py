class RestrixError(Exception):
    """Base class for all errors raised by this package."""

    kind = "error"


class InputError(RestrixError, ValueError):
    """Malformed or ill-typed input (bad tables, bad words, bad JSON)."""

    kind = "input-error"


class PreconditionError(InputError):
    """A documented precondition failed; names the axiom and a witness."""

    kind = "precondition-error"

    def __init__(self, axiom, witness=None):
        self.axiom = axiom
        self.witness = witness
        msg = f"precondition {axiom} violated"
        if witness is not None:
            msg += f" (witness: {witness})"
        super().__init__(msg)


class SizeLimitError(RestrixError, RuntimeError):
    """An instance exceeds the configured search bound."""

    kind = "size-limit"


class UnsupportedInstance(InputError):
    kind = "unsupported-instance"


class TheoremViolation(RestrixError, RuntimeError):
    """A mechanically verified theorem failed: this indicts the implementation."""

    kind = "theorem-violation"

    def __init__(self, statement, witness=None):
        self.statement = statement
        self.witness = witness
        msg = f"verified statement failed: {statement}"
        if witness is not None:
            msg += f" (witness: {witness})"
        super().__init__(msg)
