class PebblePathException(Exception):
    pass


class StructureException(PebblePathException):
    pass


class SignatureException(StructureException):
    pass


class BudgetExceededException(PebblePathException):
    pass


class DecompositionException(PebblePathException):
    pass


class GameException(PebblePathException):
    pass


class CertificateException(GameException):
    pass


class FormulaException(PebblePathException):
    pass


class FormulaParseException(FormulaException):
    pass


class UnboundVariableException(FormulaException):
    pass


class FormatException(PebblePathException):
    pass


class ConfigException(Exception):
    pass
