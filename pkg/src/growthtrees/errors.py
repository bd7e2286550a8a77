"""Exception types shared across the package.

Every domain error derives from :class:`GrowthTreesError` so callers can
catch the whole family with one clause.  Each class additionally inherits
the closest builtin (ValueError, IndexError, ArithmeticError) so generic
handlers keep working.
"""


class GrowthTreesError(Exception):
    """Base class for all errors raised by this package."""


class ParameterOutOfRange(GrowthTreesError, ValueError):
    """An argument is outside its documented domain."""


class EdgeListNotATree(GrowthTreesError, ValueError):
    """An edge list does not describe a tree (wrong count, cycle, or disconnected)."""


class SourceOutOfRange(GrowthTreesError, IndexError):
    """BFS source vertex is not a valid index."""


class IndexOutOfRange(GrowthTreesError, IndexError):
    """A vertex index is not valid for this tree."""


class DegenerateTree(GrowthTreesError, ValueError):
    """The operation needs at least two vertices."""


class NoEdges(GrowthTreesError, ValueError):
    """Growth operations need at least one edge to act on."""


class SizeLimitExceeded(GrowthTreesError, ValueError):
    """A predicted or requested size is beyond the configured limit."""


class FormulaNonIntegral(GrowthTreesError, ArithmeticError):
    """A closed form that must produce an integer evaluated to a non-integer.

    This is a hard error on purpose: it catches transcription mistakes in
    the formulas instead of silently rounding them away.
    """


class SingularMatrix(GrowthTreesError, ArithmeticError):
    """A matrix inversion failed; for connected trees this signals a bug."""


class InsufficientPoints(GrowthTreesError, ValueError):
    """An exponent fit needs at least three points."""


class NonPositiveValue(GrowthTreesError, ValueError):
    """Log-log fitting requires strictly positive coordinates."""
