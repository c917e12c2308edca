"""Exception types raised across the solvo package.

Everything derives from :class:`SolvoError`, so callers (and the fuzz
tests) can catch one base class and know the failure was structured
rather than an interpreter crash.
"""

from __future__ import annotations


class SolvoError(Exception):
    """Base class for all errors raised by this package."""


# ---------------------------------------------------------------------------
# SMILES parsing


class SmilesSyntaxError(SolvoError):
    """Malformed SMILES input."""

    def __init__(self, position: int, reason: str) -> None:
        self.position = position
        self.reason = reason
        super().__init__(f"SMILES syntax error at position {position}: {reason}")


class UnclosedRingError(SmilesSyntaxError):
    """A ring-closure digit was opened but never closed."""

    def __init__(self, digit: int, position: int) -> None:
        self.digit = digit
        super(SmilesSyntaxError, self).__init__(
            f"ring-closure {digit} opened at position {position} was never closed"
        )
        self.position = position
        self.reason = f"unclosed ring {digit}"


class ValenceError(SolvoError):
    """An atom's bond-order sum exceeds its maximum standard valence."""

    def __init__(self, atom_index: int, detail: str = "") -> None:
        self.atom_index = atom_index
        msg = f"valence violation on atom {atom_index}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class UnsupportedFeatureError(SolvoError):
    """Input uses a construct outside the supported grammar."""


# ---------------------------------------------------------------------------
# Substructure patterns


class PatternSyntaxError(SolvoError):
    """Malformed substructure-pattern text."""

    def __init__(self, position: int, reason: str) -> None:
        self.position = position
        self.reason = reason
        super().__init__(f"pattern syntax error at position {position}: {reason}")


class UnsupportedPrimitiveError(PatternSyntaxError):
    """A pattern token is recognised SMARTS but outside our subset."""

    def __init__(self, token: str, position: int = 0) -> None:
        self.token = token
        super().__init__(position, f"unsupported primitive {token!r}")


class SearchBudgetExceeded(SolvoError):
    """Subgraph search explored more states than the configured cap."""


# ---------------------------------------------------------------------------
# Descriptors and fingerprints


class UnknownElementError(SolvoError):
    """The atomic-weight table has no entry for an element."""

    def __init__(self, symbol: str) -> None:
        self.symbol = symbol
        super().__init__(f"no atomic weight for element {symbol!r}")


class UntypedAtomError(SolvoError):
    """No contribution pattern matched an atom (gap in a shipped table)."""

    def __init__(self, atom_index: int, table: str) -> None:
        self.atom_index = atom_index
        self.table = table
        super().__init__(f"atom {atom_index} matched no pattern in table {table!r}")


class KeyFileError(SolvoError):
    """Malformed structural-key definition file."""

    def __init__(self, line: int, reason: str) -> None:
        self.line = line
        self.reason = reason
        super().__init__(f"key file error on line {line}: {reason}")


# ---------------------------------------------------------------------------
# Featurization and learning


class DegenerateTargetError(SolvoError):
    """Target vector has zero variance; standardizer cannot be fitted."""


class ShapeMismatchError(SolvoError):
    """Input arrays have incompatible shapes."""


class TrainBatchTooSmallError(SolvoError):
    """Train-mode forward needs at least two rows for batch statistics."""


class BadDimsError(SolvoError):
    """Model layer dimensions are not a valid chain."""


class EmptyDatasetError(SolvoError):
    """An operation received no samples."""


class EmptyInputError(SolvoError):
    """A metric received empty vectors."""


class ConstantTargetError(SolvoError):
    """R-squared is undefined for a constant target vector."""


class LayoutMismatchError(SolvoError):
    """Model was trained against a different feature layout version."""


class TrainingDivergedError(SolvoError):
    """Loss became non-finite during training."""


class TooFewSamplesError(SolvoError):
    """A split would leave one side empty."""


# ---------------------------------------------------------------------------
# Data files and model containers


class DataFileError(SolvoError):
    """Dataset file missing or unreadable."""


class HeaderError(SolvoError):
    """Dataset file lacks a required column."""

    def __init__(self, column: str) -> None:
        self.column = column
        super().__init__(f"missing required column {column!r}")


class RowErrors(SolvoError):
    """Too many rows failed validation; nothing was loaded."""

    def __init__(self, errors: list[tuple[int, str]]) -> None:
        self.errors = errors
        preview = "; ".join(f"row {r}: {m}" for r, m in errors[:5])
        more = f" (+{len(errors) - 5} more)" if len(errors) > 5 else ""
        super().__init__(f"{len(errors)} bad rows: {preview}{more}")


class FormatError(SolvoError):
    """Binary container is structurally invalid."""

    def __init__(self, offset: int, reason: str) -> None:
        self.offset = offset
        self.reason = reason
        super().__init__(f"container format error at byte {offset}: {reason}")


class ChecksumMismatchError(FormatError):
    """Container content does not match its stored checksum."""

    def __init__(self) -> None:
        super().__init__(-1, "content checksum mismatch")


class VersionMismatchError(FormatError):
    """Container was written by an incompatible format version."""

    def __init__(self, found: int, expected: int) -> None:
        super().__init__(8, f"format version {found}, expected {expected}")
        self.found = found
        self.expected = expected
