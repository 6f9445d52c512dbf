"""Exception hierarchy shared by all modules."""


class UpqError(Exception):
    """Base class for errors raised by upqsl2."""


class SingularDenominator(UpqError, ZeroDivisionError):
    """A deformation denominator vanishes (within tolerance).

    ``locus`` names the offending condition, e.g. ``"pq=1"``.
    """

    def __init__(self, locus, detail=""):
        self.locus = locus
        msg = f"{locus} singular"
        if detail:
            msg = f"{msg}: {detail}"
        super().__init__(msg)


class ZeroParameter(UpqError, ValueError):
    pass


class ZeroBase(UpqError, ValueError):
    pass


class LogUndefined(UpqError, ValueError):
    pass


class DomainError(UpqError, ValueError):
    pass


class NonFiniteError(UpqError, ArithmeticError):
    pass


class ShapeMismatch(UpqError, ValueError):
    pass
