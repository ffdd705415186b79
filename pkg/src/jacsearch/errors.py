"""Exception types shared across the package."""


class JacsearchError(Exception):
    pass


# ff
class CompositeCharacteristic(JacsearchError):
    pass


class ReduciblePolynomial(JacsearchError):
    pass


class UnsupportedDegree(JacsearchError):
    pass


class FieldMismatch(JacsearchError):
    pass


class DivisionByZero(JacsearchError, ZeroDivisionError):
    def __init__(self, msg="division by zero", index=None):
        super().__init__(msg if index is None else f"{msg} (index {index})")
        self.index = index


class ZeroInput(JacsearchError):
    pass


class ZeroPolynomial(JacsearchError):
    pass


# curve
class SingularCurve(JacsearchError):
    pass


class BadDegree(JacsearchError):
    pass


class NotMonic(JacsearchError):
    pass


class CurveMismatch(JacsearchError):
    pass


# genalg
class Reject(JacsearchError):
    pass


class HashCollision(JacsearchError):
    pass


class AmbiguousOrder(JacsearchError):
    pass


class NotPrimorial(JacsearchError):
    pass


# zeta
class NonDivisibleOrders(JacsearchError):
    pass


class NoCandidate(JacsearchError):
    pass


class Ambiguous(JacsearchError):
    pass


class FieldTooSmall(JacsearchError):
    pass


class InvalidCounts(JacsearchError):
    pass


class Inconclusive(JacsearchError):
    pass


class UnknownContext(JacsearchError):
    pass


# search / oracle
class OutOfCalibratedRange(JacsearchError):
    pass


class FieldTooLarge(JacsearchError):
    pass


class FamilyParseError(JacsearchError):
    def __init__(self, msg, position):
        super().__init__(f"{msg} at position {position}")
        self.position = position
