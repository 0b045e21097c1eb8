"""Exception hierarchy shared by the library and the command line."""


class QOrderError(Exception):
    """Base class for every error raised by qorder."""


class DomainError(QOrderError, ValueError):
    """An argument lies outside the domain of the operation."""


class ContractError(QOrderError, ValueError):
    """An input object violates one of its structural invariants."""


class LogFormatError(QOrderError, ValueError):
    """A query log line could not be parsed or failed validation.

    ``lineno`` is 1-based and ``None`` when the record did not come from a file.
    """

    def __init__(self, message, lineno=None, query_id=None):
        self.lineno = lineno
        self.query_id = query_id
        prefix = f"line {lineno}: " if lineno is not None else ""
        super().__init__(prefix + message)


class ConfigurationError(QOrderError, ValueError):
    """A synthetic-log configuration cannot be satisfied."""
