"""The eight product attribute keys and the attribute-set container.

Every extraction stage speaks in terms of :class:`AttributeSet`: a map
from each of the eight keys to a list of value strings, where a key with
no evidence holds exactly the ``"Not Mentioned"`` sentinel.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

SENTINEL = "Not Mentioned"


class AttributeKey(enum.Enum):
    """Target attribute keys, in canonical order."""

    COLOR = "Color"
    SLEEVE_STYLE = "Sleeve Style"
    PRODUCT_TYPE = "Product Type"
    MATERIAL = "Material"
    FEATURES = "Features"
    CATEGORIES = "Categories"
    AGE = "Age"
    NECK = "Neck"

    def __str__(self) -> str:
        return self.value


class AttributeSource(enum.Enum):
    TEXT = "text"
    IMAGE = "image"
    MERGED = "merged"


_NON_ALNUM = re.compile(r"[^a-z0-9]+")

# Accepted spellings beyond the canonical names. Responses and data files
# use both spaced and compact forms, plus a few common variants.
_KEY_SYNONYMS = {
    "colour": AttributeKey.COLOR,
    "colors": AttributeKey.COLOR,
    "sleeve": AttributeKey.SLEEVE_STYLE,
    "sleevestyles": AttributeKey.SLEEVE_STYLE,
    "producttypes": AttributeKey.PRODUCT_TYPE,
    "feature": AttributeKey.FEATURES,
    "clothfeatures": AttributeKey.FEATURES,
    "category": AttributeKey.CATEGORIES,
    "productcategories": AttributeKey.CATEGORIES,
    "agegroup": AttributeKey.AGE,
    "neckstyle": AttributeKey.NECK,
    "neckline": AttributeKey.NECK,
}


def _key_token(name: str) -> str:
    return _NON_ALNUM.sub("", name.lower())


_KEY_LOOKUP: dict[str, AttributeKey] = {
    _key_token(k.value): k for k in AttributeKey
}
_KEY_LOOKUP.update(_KEY_SYNONYMS)


def lookup_attribute_key(name: str) -> AttributeKey | None:
    """Resolve a key spelling ("Sleeve Style", "SleeveStyle", "Age Group"...)
    to its canonical :class:`AttributeKey`, or None if unknown."""
    return _KEY_LOOKUP.get(_key_token(name))


def is_sentinel(values: Iterable[str]) -> bool:
    vals = tuple(values)
    return len(vals) == 1 and vals[0] == SENTINEL


def sentinel_entries() -> dict[AttributeKey, tuple[str, ...]]:
    return {key: (SENTINEL,) for key in AttributeKey}


@dataclass(frozen=True)
class AttributeSet:
    """Values extracted for all eight attribute keys from one source.

    Invariants (checked on construction): every key is present; a key with
    no values holds exactly ``(SENTINEL,)`` and the sentinel never co-occurs
    with real values; all values are non-empty after trimming; image_hash
    is set if and only if the source is an image.
    """

    entries: Mapping[AttributeKey, tuple[str, ...]]
    source: AttributeSource
    page_index: int
    image_hash: str | None = None

    def __post_init__(self):
        missing = [k for k in AttributeKey if k not in self.entries]
        if missing:
            raise ValueError(f"attribute keys missing from set: {missing}")
        for key, values in self.entries.items():
            if not values:
                raise ValueError(f"{key.value}: empty value list (use the sentinel)")
            for v in values:
                if not v or v != v.strip():
                    raise ValueError(f"{key.value}: value {v!r} is empty or untrimmed")
            if SENTINEL in values and len(values) > 1:
                raise ValueError(f"{key.value}: sentinel mixed with real values")
        if (self.image_hash is not None) != (self.source is AttributeSource.IMAGE):
            raise ValueError("image_hash must be set exactly when source is image")

    @classmethod
    def build(
        cls,
        values: Mapping[AttributeKey, Iterable[str]],
        source: AttributeSource,
        page_index: int,
        image_hash: str | None = None,
    ) -> "AttributeSet":
        """Build a set from partial values: trims, drops empties and
        sentinel-typed strings, and fills absent keys with the sentinel."""
        entries: dict[AttributeKey, tuple[str, ...]] = {}
        for key in AttributeKey:
            cleaned = []
            for v in values.get(key, ()):  # preserves caller order
                v = v.strip()
                if v and v.casefold() != SENTINEL.casefold():
                    cleaned.append(v)
            entries[key] = tuple(cleaned) if cleaned else (SENTINEL,)
        return cls(entries=entries, source=source, page_index=page_index,
                   image_hash=image_hash)

    @classmethod
    def all_sentinel(
        cls,
        source: AttributeSource,
        page_index: int,
        image_hash: str | None = None,
    ) -> "AttributeSet":
        return cls(entries=sentinel_entries(), source=source,
                   page_index=page_index, image_hash=image_hash)

    def values_for(self, key: AttributeKey) -> tuple[str, ...]:
        """Real values for a key; empty tuple when the key is sentinel."""
        values = self.entries[key]
        return () if is_sentinel(values) else values
