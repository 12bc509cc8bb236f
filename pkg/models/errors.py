# models/errors.py


class SnarkLabError(Exception):
    """Base class for all library errors."""


class MultipoleError(SnarkLabError, ValueError):
    """A structural operation was applied outside its precondition."""


class ColouringLimitError(SnarkLabError):
    """Colouring-set enumeration was asked for too many semiedges."""


class SearchTimeoutError(SnarkLabError):
    """A search ran past its deadline."""


class NotASnarkError(SnarkLabError):
    """A criticality query was made on a colourable graph."""


class MetricError(SnarkLabError, ValueError):
    """A structural metric is undefined for the input."""


class GraphFormatError(SnarkLabError, ValueError):
    """Malformed graph6 or multipole document."""


class RecipeError(SnarkLabError, ValueError):
    """A recipe could not be parsed or evaluated."""


class ClaimError(SnarkLabError):
    """Unknown claim or claim not runnable under the current flags."""
