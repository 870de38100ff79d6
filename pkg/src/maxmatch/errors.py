"""Exception hierarchy.

Everything derived from :class:`InputError` is caused by bad input data and
maps to exit code 2 on the command line.
"""


class InputError(Exception):
    """Base class for errors caused by malformed or inconsistent input."""


class AlignmentError(InputError):
    """A token text could not be located in its raw paragraph."""


class SpanError(InputError):
    """A character span cannot be mapped onto a token span."""


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class InvariantError(InputError):
    """A structure violates ordering or overlap invariants."""


class OverlapError(InvariantError):
    """Two edits for one sentence cover overlapping token spans."""


class SizeError(InputError):
    """An alignment table would exceed the configured cell cap."""


class LengthMismatchError(InputError):
    """Parallel input streams disagree on the number of sentences."""
