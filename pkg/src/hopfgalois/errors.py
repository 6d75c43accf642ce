"""Exception hierarchy shared by every module of the package."""


class HopfGaloisError(Exception):
    """Base class; the CLI maps every subclass to exit code 3."""


class DivisionByZero(HopfGaloisError, ZeroDivisionError):
    pass


class NonUnitDivisor(HopfGaloisError):
    pass


class UnknownSymbol(HopfGaloisError):
    pass


class OrderMismatch(HopfGaloisError):
    pass


class MalformedDatum(HopfGaloisError):
    pass


class CartanIncompatible(HopfGaloisError):
    pass


class NotFiniteCartanType(HopfGaloisError):
    pass


class SymbolicDatum(HopfGaloisError):
    """Raised when an operation needs concrete values for the unit symbols."""


class ExpansionCapExceeded(HopfGaloisError):
    pass


class MissingCartanMatrix(HopfGaloisError):
    pass


class NotMultihomogeneous(HopfGaloisError):
    pass


class WrongRank(HopfGaloisError):
    pass


class NotTypeA1(HopfGaloisError):
    pass


class ConditionsViolated(HopfGaloisError):
    pass


class UnsupportedParameters(HopfGaloisError):
    pass


class InvalidDynkin(HopfGaloisError):
    pass


class ClassificationMismatch(HopfGaloisError):
    """Structural and computational verdicts disagree (should never happen)."""


class EquivarianceViolated(HopfGaloisError):
    pass


class UnfaithfulGroupAction(HopfGaloisError):
    pass


class NoEquivariantMonomial(HopfGaloisError):
    pass


class DatumSyntaxError(HopfGaloisError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class DatumSemanticError(DatumSyntaxError):
    pass
