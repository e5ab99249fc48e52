class MaffkitError(Exception):
    exit_code = 3


class ParseError(MaffkitError):
    exit_code = 2


class NotHermitian(MaffkitError):
    pass


class NotPsd(MaffkitError):
    pass


class NotProjection(MaffkitError):
    pass


class DimensionMismatch(MaffkitError):
    pass


class RangeNotContained(MaffkitError):
    pass


class RangesDiffer(MaffkitError):
    pass


class NotInAlgebra(MaffkitError):
    pass


class NotAffiliated(MaffkitError):
    pass


class NullspaceViolation(MaffkitError):
    pass


class OutsideDomain(MaffkitError):
    pass


class NotInjective(MaffkitError):
    pass


class NotPositive(MaffkitError):
    pass


class NotInF(MaffkitError):
    pass


class NotAnExtension(MaffkitError):
    pass


class NotContractive(MaffkitError):
    pass


class InitialNotInF(MaffkitError):
    pass


class NotSingleValued(MaffkitError):
    pass


class NoConvergence(MaffkitError):
    exit_code = 4


class NoExtensionFound(MaffkitError):
    exit_code = 4
