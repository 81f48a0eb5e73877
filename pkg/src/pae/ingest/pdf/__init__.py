"""Minimal self-contained PDF reader.

Covers the subset of PDF 1.4-1.7 needed to pull text, embedded images
and page geometry out of report-style documents: classic and stream
xrefs, object streams, the common stream filters, simple-font and
CID/ToUnicode text decoding, and a content-stream interpreter tracking
enough graphics state to position text blocks and image placements.
"""

from .document import PdfFile
from .objects import Name, PdfStream, Ref

__all__ = ["PdfFile", "Name", "Ref", "PdfStream"]
