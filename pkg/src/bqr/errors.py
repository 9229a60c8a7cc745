"""Exception hierarchy for the bqr package.

Everything raised on purpose derives from BqrError so callers (CLI,
service) can separate user-fixable problems from genuine bugs.
"""


class BqrError(Exception):
    """Base class for all errors raised by this package."""


class CorpusFormatError(BqrError):
    """A corpus or topics file failed validation (carries line/topic context)."""


class DuplicateDocIdError(CorpusFormatError):
    """Two corpus documents share a doc_id."""


class UnknownDimensionError(BqrError):
    """An attribute dimension is not part of the corpus schema."""


class EmbeddingFormatError(BqrError):
    """A vectors file could not be loaded (no valid lines, dimension conflict)."""


class OutOfVocabularyError(BqrError):
    """No token of the query exists in the embedding vocabulary."""


class ProviderError(BqrError):
    """An LLM provider call failed; message carries provider diagnostics."""


class ResponseParseError(BqrError):
    """An LLM response contained no extractable query list."""

    def __init__(self, message: str, raw: str = ""):
        super().__init__(message)
        self.raw = raw


class InapplicableMethodError(BqrError):
    """A generation method cannot run for this query/topic (e.g. no keywords)."""


class EmptyBaselineError(BqrError):
    """The original query returned no documents, so nothing can be scored."""


class ConfigError(BqrError):
    """An engine or CLI configuration is invalid."""
