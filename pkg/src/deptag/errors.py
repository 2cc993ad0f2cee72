"""Exception types shared across the toolkit.

The CLI maps these onto exit codes: ParseError -> 2, ValidationError -> 3,
any other DeptagError -> 2.
"""

from typing import Optional


class DeptagError(Exception):
    """Base class for all toolkit errors."""


class ParseError(DeptagError):
    """Malformed input text (CoNLL-U columns, pattern file syntax, JSONL).

    Carries the 1-based line number when one is known; the number is also
    baked into the message so plain str(err) is self-contained.
    """

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None and not message.startswith("line "):
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(DeptagError):
    """Structurally invalid data: broken tree invariants, tag/token
    mismatches, inconsistent annotation inputs."""
