"""Exception hierarchy for mingenus."""


class MinGenusError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(MinGenusError, ValueError):
    """Vector length does not match the rank of the form."""


class ReflectionNotLicensed(MinGenusError, ValueError):
    """Reflection requested in a class whose square is not in {+-1, +-2}."""


class WrongRoutine(MinGenusError, ValueError):
    """A routine was called on a class outside its domain (e.g. sign of square)."""


class NonTermination(MinGenusError, RuntimeError):
    """An iterative reduction exceeded its iteration cap."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class Inapplicable(MinGenusError, ValueError):
    """A bound or formula does not apply to the given model or input."""


class DisconnectedConfiguration(MinGenusError, ValueError):
    """Surface configuration has several connected components; tube them first."""


class NotFound(MinGenusError, LookupError):
    """Search finished without producing a result."""


class UnknownManifold(MinGenusError, KeyError):
    pass


class CatalogParseError(MinGenusError, ValueError):
    def __init__(self, message, line, column=1, path=None):
        where = f"{path or '<catalog>'}:{line}:{column}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column
        self.path = path


class CatalogValidationError(MinGenusError, ValueError):
    def __init__(self, model_name, violations):
        lines = "; ".join(violations)
        super().__init__(f"model {model_name!r} failed validation: {lines}")
        self.model_name = model_name
        self.violations = list(violations)
