"""Exception hierarchy shared by every checker and builder."""


class TensorlocError(Exception):
    """Base class for all library errors."""


class MalformedTable(TensorlocError):
    pass


class NotComposable(TensorlocError):
    pass


class NonCommutingSquare(TensorlocError):
    pass


class TypeMismatch(TensorlocError):
    pass


class MissingInverse(TensorlocError):
    def __init__(self, message, obj=None):
        super().__init__(message)
        self.obj = obj


class NotLeq(TensorlocError):
    pass


class IllTypedStrength(TensorlocError):
    pass


class InvalidClosure(TensorlocError):
    pass


class NotLocalisable(TensorlocError):
    """Raised when no strength family exists; ``pair`` names the first offending (u, v)."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class SizeLimitError(TensorlocError):
    pass


class NonConfluentAt(TensorlocError):
    def __init__(self, message, term=None):
        super().__init__(message)
        self.term = term
