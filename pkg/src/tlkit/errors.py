"""Exception types shared across the package."""


class TLKitError(Exception):
    pass


class SizeMismatch(TLKitError):
    """Operands live in algebras of different strand counts."""


class IndexOutOfRange(TLKitError):
    pass


class InvalidDefectCount(TLKitError):
    pass


class DenominatorVanishes(TLKitError):
    """A rational expression is undefined at the requested root of unity."""


class RootOfUnityObstruction(TLKitError):
    """A construction needs a Jones-Wenzl projector of size >= pbar(q)."""


class InadmissibleTriple(TLKitError):
    pass


class ParameterMismatch(TLKitError):
    pass


class SingularGram(TLKitError):
    pass
