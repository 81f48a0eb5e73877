"""Exception and warning types shared across the pipeline."""

from __future__ import annotations


class PaeError(Exception):
    """Base class for all pipeline errors."""


# --- ingest ---------------------------------------------------------------

class NotAPdfError(PaeError):
    """The file is not a parseable PDF (bad magic bytes or broken xref)."""


class EncryptedPdfError(PaeError):
    """Password-protected PDFs are not supported."""


class PageOutOfRangeError(PaeError, IndexError):
    """Page index outside 0..page_count-1."""


class RenderFailureError(PaeError):
    """Page rasterization failed."""


class OcrEngineUnavailableError(PaeError):
    """No OCR engine is available; callers fall back to native text."""


class OcrEngineFailureError(PaeError):
    """The OCR engine raised; carries the engine diagnostics."""


# --- extract ---------------------------------------------------------------

class EmptyTextError(PaeError, ValueError):
    """An operation that requires non-empty text received a blank string."""


class WrongModalityError(PaeError, ValueError):
    """Prompt template modality does not match the requested build."""


class EmptyImageError(PaeError, ValueError):
    """Image payload is empty."""


class UnsupportedImageFormatError(PaeError, ValueError):
    """Image format cannot be sent inline (no known MIME type)."""


class TransientBackendError(PaeError):
    """Retryable backend failure (timeouts, 5xx, connection resets)."""


class BackendUnavailableError(PaeError):
    """Backend failed even after the configured retries."""


class BackendRejectedError(PaeError):
    """Non-retryable backend failure (bad auth, malformed request)."""


# --- normalize -------------------------------------------------------------

class EmptyValueError(PaeError, ValueError):
    """Attribute value is empty after trimming."""


class MixedPagesError(PaeError, ValueError):
    """Attribute sets from different pages cannot be merged."""


# --- match -----------------------------------------------------------------

class ProviderUnavailableError(PaeError):
    """Embedding provider cannot be reached."""


class DimensionMismatchError(PaeError, ValueError):
    """Vectors of different dimensionality."""


class ZeroVectorError(PaeError, ValueError):
    """Cosine similarity is undefined for all-zero vectors."""


class CatalogSchemaError(PaeError, ValueError):
    """Catalog file violates the attribute,value[,category] schema."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


# --- evaluation ------------------------------------------------------------

class MissingPagesError(PaeError, ValueError):
    """Predictions contain a page absent from the ground truth."""


# --- cli -------------------------------------------------------------------

class ConfigInvalidError(PaeError, ValueError):
    """Pipeline configuration failed validation."""


# --- warnings --------------------------------------------------------------

class PaeWarning(UserWarning):
    """Base class for recoverable pipeline conditions."""


class MalformedContentStreamWarning(PaeWarning):
    """A page content stream was only partially parseable."""


class ImageDecodeWarning(PaeWarning):
    """An embedded image could not be decoded and was skipped."""


class ParseWarning(PaeWarning):
    """An LLM response did not follow the expected key/value grammar."""


class UnknownAttributeWarning(ParseWarning):
    """A response line named an attribute key outside the known set."""
