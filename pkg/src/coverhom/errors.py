"""Exception hierarchy shared by all modules.

Exit-code contract of the CLI: input errors map to 2, size limits to 3,
verification failures to 1.
"""


class CoverhomError(Exception):
    """Base class for all package errors."""


class InputError(CoverhomError):
    """Bad user input (CLI exit code 2)."""


class SizeLimitExceeded(CoverhomError):
    """A configurable desk-scale bound was exceeded (CLI exit code 3)."""


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class FaceNotInComplex(InputError):
    pass


class VertexNotPresent(InputError):
    pass


class VariableNotPresent(InputError):
    pass


class NotAGoodLeaf(InputError):
    pass


class NotAGoodLeafOrder(InputError):
    pass


class NotATree(InputError):
    pass


class NoEdges(InputError):
    pass


class NotSquarefree(InputError):
    pass


class NotAPolarizedGenerator(InputError):
    pass


class NotAPermutation(InputError):
    pass


class NotAShelling(InputError):
    pass


class KVectorLengthMismatch(InputError):
    pass


class StringTooShort(InputError):
    pass


class NotTerminated(InputError):
    pass


class InconsistentState(CoverhomError):
    pass


class DecompositionMismatch(CoverhomError):
    """Terminal state failed the block-decomposition isomorphism check."""


class UnknownSuite(InputError):
    pass


class ExponentOverflow(InputError):
    """Exponents or degrees exceed the guarded machine-word range."""
