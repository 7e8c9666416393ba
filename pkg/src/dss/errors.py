"""Exception hierarchy shared by every DSS subsystem.

Each exception carries a stable ``code`` string (used by the validation
report and the CLI exit-code mapping) and an optional ``path`` pointing at
the offending element: a document pointer for description files, a layout
path for storage files.
"""

from __future__ import annotations


class DssError(Exception):
    """Base class for all DSS errors."""

    code = "dss_error"

    def __init__(self, message: str, *, path: str | None = None):
        self.message = message
        self.path = path
        super().__init__(message if path is None else f"{path}: {message}")


# --- description files ------------------------------------------------------

class DescriptionSyntaxError(DssError):
    """Malformed YAML text, with line/column when known."""

    code = "syntax_error"

    def __init__(self, message: str, *, line: int | None = None,
                 column: int | None = None):
        self.line = line
        self.column = column
        where = "" if line is None else f" (line {line}, column {column})"
        super().__init__(message + where)


class KindMismatchError(DssError):
    code = "kind_mismatch"


class FieldTypeError(DssError, TypeError):
    """A field is present but has the wrong primitive type."""

    code = "type_error"


class GrammarError(DssError, ValueError):
    code = "selector_grammar"


class UnresolvedRefError(DssError):
    code = "unresolved_ref"


class MappingError(DssError):
    code = "mapping_error"


# --- data model -------------------------------------------------------------

class UnknownTypeError(DssError):
    code = "unknown_type"


class ProfileViolation(DssError):
    code = "profile_violation"


class DuplicateTypeError(DssError):
    code = "duplicate_type"


class ReservedNameError(DssError):
    code = "reserved_name"


class AxisError(DssError, KeyError):
    code = "axis_error"

    def __str__(self):  # KeyError quotes its repr otherwise
        return self.message if self.path is None else f"{self.path}: {self.message}"


class DssIndexError(DssError, IndexError):
    code = "index_error"


class ShapeError(DssError, ValueError):
    code = "shape_error"


class NormError(DssError, ValueError):
    code = "norm_error"


class DssRangeError(DssError, ValueError):
    code = "range_error"


# --- storage ----------------------------------------------------------------

class IoError(DssError, OSError):
    code = "io_error"


class FormatError(DssError):
    """File violates the DSS storage layout; ``path`` names the offender."""

    code = "format_error"


class VersionError(DssError):
    code = "version_error"


class UnsupportedFeatureError(DssError):
    code = "unsupported_feature"


# --- analysis ---------------------------------------------------------------

class DomainError(DssError, ValueError):
    code = "domain_error"


class NonUniformGridError(DssError, ValueError):
    code = "non_uniform_grid"


class SelectionError(DssError, ValueError):
    code = "selection_error"


# --- synthesis --------------------------------------------------------------

class WindowError(DssError, ValueError):
    code = "window_error"
