"""Exception hierarchy shared across the package."""


class QuiringError(Exception):
    """Base class for all errors raised by this package."""


class EmptyInputError(QuiringError):
    """Raised when a formula string is empty or whitespace-only."""


class LetterNotInAlphabetError(QuiringError):
    """A range endpoint letter is not part of the configured alphabet."""

    def __init__(self, letter: str) -> None:
        super().__init__(f"letter {letter!r} is not in the signing alphabet")
        self.letter = letter


class EmptyRangeError(QuiringError):
    """A signature range denotes zero or negatively many gatherings."""


class FileUnreadableError(QuiringError):
    """An input file is missing or is not a readable catalogue."""


class SchemaMismatchError(QuiringError):
    """A catalogue file lacks an expected table or column."""


class HeaderMismatchError(QuiringError):
    """A CSV header row does not match the expected column names."""


class MalformedRowError(QuiringError):
    """A CSV data row has the wrong number of fields."""

    def __init__(self, line_number: int, message: str) -> None:
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class WriteFailureError(QuiringError):
    """An output file could not be written."""


class UnknownFormatError(QuiringError):
    """A filter names a bibliographic format outside the canonical nine."""

    def __init__(self, name: str) -> None:
        super().__init__(f"unknown bibliographic format: {name!r}")
        self.name = name
