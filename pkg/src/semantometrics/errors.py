"""Exception hierarchy shared by the pipeline stages."""


class SemantometricsError(Exception):
    """Base class for all errors raised by this package."""


class InputFormatError(SemantometricsError):
    """A file or record stream cannot be parsed at all."""


class MalformedDOIError(SemantometricsError, ValueError):
    pass


class VocabularyError(SemantometricsError, ValueError):
    """No text-bearing documents, so term statistics are undefined."""


class AnalysisError(SemantometricsError, ValueError):
    """Statistic undefined for the given data (constant series, n < k, ...)."""
