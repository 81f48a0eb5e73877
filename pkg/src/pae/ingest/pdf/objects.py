"""PDF object model: names, indirect references and streams.

Dictionaries are plain dicts keyed by the name text (no leading slash),
arrays are lists, strings are ``bytes``, numbers are int/float.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


class Name(str):
    """A PDF name token (/Foo). Subclasses str so dict keys stay ergonomic."""

    __slots__ = ()

    def __repr__(self) -> str:  # pragma: no cover - debug aid
        return f"/{str.__str__(self)}"


@dataclass(frozen=True)
class Ref:
    """Indirect object reference (``num gen R``)."""

    num: int
    gen: int = 0


class PdfStream:
    """A stream object: its dictionary plus the raw (still encoded) bytes."""

    __slots__ = ("dict", "raw")

    def __init__(self, dictionary: dict[str, Any], raw: bytes):
        self.dict = dictionary
        self.raw = raw

    def __repr__(self) -> str:  # pragma: no cover - debug aid
        return f"PdfStream({self.dict!r}, {len(self.raw)} bytes)"
