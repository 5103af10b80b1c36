from __future__ import annotations


class FormatError(ValueError):
    """A resource or corpus file could not be read.

    ``line`` is 1-based; ``source`` is whatever name the caller gave the
    stream (usually a path).
    """

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.source = source

    def with_source(self, source: str) -> "FormatError":
        return FormatError(self.message, self.line, source)

    def __str__(self) -> str:
        where = self.source or "<input>"
        if self.line is not None:
            where = f"{where}:{self.line}"
        return f"{where}: {self.message}"
