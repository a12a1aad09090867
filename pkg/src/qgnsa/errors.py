"""Exception hierarchy shared by every module in the package."""


class QgnsaError(Exception):
    """Base class for all errors raised by this package."""


class InvalidSizeError(QgnsaError, ValueError):
    """A size argument (register length, feature count, precision) is not positive."""


class DimensionError(QgnsaError, ValueError):
    """Two arrays that must agree in length do not."""


class InvalidInputError(QgnsaError, ValueError):
    """An input set is empty or a parameter is outside its domain."""


class DataError(QgnsaError):
    """Problem while reading or transforming tabular data."""


class MissingFileError(DataError, FileNotFoundError):
    pass


class EmptyFileError(DataError):
    pass


class MalformedRowError(DataError):
    def __init__(self, line, expected, got):
        self.line = line
        self.expected = expected
        self.got = got
        super().__init__(f"line {line}: expected {expected} fields, got {got}")


class UnknownColumnError(DataError, KeyError):
    def __init__(self, column):
        self.column = column
        super().__init__(column)

    def __str__(self):
        return f"unknown column {self.column!r}"


class NonNumericCellError(DataError):
    def __init__(self, column, row, value):
        self.column = column
        self.row = row
        self.value = value
        super().__init__(f"column {column!r}, row {row}: cannot parse {value!r} as a number")


class EngineError(QgnsaError):
    """An engine run failed; carries the protocol context it failed in."""

    def __init__(self, message, algorithm=None, fold=None, repetition=None):
        self.algorithm = algorithm
        self.fold = fold
        self.repetition = repetition
        super().__init__(message)
