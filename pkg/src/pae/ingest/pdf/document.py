"""Document-level PDF structure: xref chains, object store, page tree."""

from __future__ import annotations

import re
import warnings
from pathlib import Path
from typing import Any, Iterator

from ...errors import (
    EncryptedPdfError,
    MalformedContentStreamWarning,
    NotAPdfError,
    PageOutOfRangeError,
)
from .filters import FilterError, decode_stream
from .objects import Name, PdfStream, Ref
from .syntax import Keyword, ObjectParser, SyntaxError_

_OBJ_HEADER = re.compile(rb"(\d+)\s+(\d+)\s+obj\b")

# Page-tree attributes inherited from ancestor nodes.
_INHERITABLE = ("Resources", "MediaBox", "CropBox", "Rotate")


class PdfFile:
    """Random-access reader over one PDF file held in memory."""

    def __init__(self, data: bytes, source: str = "<bytes>"):
        if not data.lstrip()[:5].startswith(b"%PDF-"):
            raise NotAPdfError(f"{source}: missing %PDF header")
        self.data = data
        self.source = source
        self._cache: dict[int, Any] = {}
        self._objstm_cache: dict[int, dict[int, Any]] = {}
        self.xref: dict[int, tuple] = {}
        self.trailer: dict[str, Any] = {}
        self._load_xref()
        if "Encrypt" in self.trailer:
            raise EncryptedPdfError(f"{source}: encrypted PDFs are not supported")
        self._pages: list[dict[str, Any]] | None = None

    @classmethod
    def open(cls, path: str | Path) -> "PdfFile":
        p = Path(path)
        data = p.read_bytes()
        return cls(data, source=str(p))

    # -- xref ------------------------------------------------------------------

    def _load_xref(self) -> None:
        tail = self.data[-2048:]
        m = None
        for m in re.finditer(rb"startxref\s+(\d+)", tail):
            pass
        if m is None:
            self._rebuild_xref_by_scan()
            return
        offset = int(m.group(1))
        seen: set[int] = set()
        try:
            while offset and offset not in seen:
                seen.add(offset)
                offset = self._load_xref_section(offset)
        except (SyntaxError_, FilterError, ValueError, IndexError) as exc:
            if not self.xref:
                self._rebuild_xref_by_scan()
                if not self.xref:
                    raise NotAPdfError(f"{self.source}: broken xref ({exc})") from exc
        if not self.xref or "Root" not in self.trailer:
            self._rebuild_xref_by_scan()
        if "Root" not in self.trailer:
            raise NotAPdfError(f"{self.source}: no document catalog")

    def _load_xref_section(self, offset: int) -> int:
        """Parse one xref section (classic or stream); returns /Prev or 0."""
        if offset >= len(self.data):
            raise SyntaxError_("startxref beyond end of file")
        parser = ObjectParser(self.data, offset)
        token = parser.lexer.next_token()
        if isinstance(token, Keyword) and token.value == b"xref":
            trailer = self._parse_xref_table(parser)
        else:
            # xref stream: "num gen obj <<...>> stream"
            if not isinstance(token, int):
                raise SyntaxError_(f"no xref at offset {offset}")
            parser.lexer.next_token()          # generation
            kw = parser.lexer.next_token()
            if not (isinstance(kw, Keyword) and kw.value == b"obj"):
                raise SyntaxError_(f"no xref at offset {offset}")
            stream = parser.parse_object()
            if not isinstance(stream, PdfStream):
                raise SyntaxError_("xref object is not a stream")
            trailer = self._parse_xref_stream(stream)
        for key, value in trailer.items():
            self.trailer.setdefault(key, value)
        # Hybrid files point to an extra xref stream.
        xrefstm = trailer.get("XRefStm")
        if isinstance(xrefstm, int):
            try:
                self._load_xref_section(xrefstm)
            except (SyntaxError_, FilterError):
                pass
        prev = trailer.get("Prev")
        return int(prev) if isinstance(prev, (int, float)) else 0

    def _parse_xref_table(self, parser: ObjectParser) -> dict[str, Any]:
        lexer = parser.lexer
        while True:
            token = lexer.next_token()
            if isinstance(token, Keyword) and token.value == b"trailer":
                trailer = parser.parse_object()
                if not isinstance(trailer, dict):
                    raise SyntaxError_("trailer is not a dictionary")
                return trailer
            if not isinstance(token, int):
                raise SyntaxError_(f"bad xref subsection header: {token!r}")
            start = token
            count = lexer.next_token()
            if not isinstance(count, int):
                raise SyntaxError_("bad xref subsection count")
            for i in range(count):
                pos = lexer.next_token()
                gen = lexer.next_token()
                kind = lexer.next_token()
                if not (isinstance(pos, int) and isinstance(gen, int)
                        and isinstance(kind, Keyword)):
                    raise SyntaxError_("bad xref entry")
                num = start + i
                if kind.value == b"n" and num not in self.xref:
                    self.xref[num] = ("n", pos, gen)

    def _parse_xref_stream(self, stream: PdfStream) -> dict[str, Any]:
        data, codec = decode_stream(stream, self.resolve)
        if codec is not None:
            raise SyntaxError_("xref stream uses an image codec")
        w = [int(x) for x in stream.dict.get("W", [])]
        if len(w) < 3:
            raise SyntaxError_("xref stream missing /W")
        size = int(self.resolve(stream.dict.get("Size", 0)))
        index = stream.dict.get("Index") or [0, size]
        entry_len = sum(w)
        pos = 0

        def read_field(width: int, default: int) -> int:
            nonlocal pos
            if width == 0:
                return default
            val = int.from_bytes(data[pos:pos + width], "big")
            pos += width
            return val

        pairs = [(int(index[i]), int(index[i + 1])) for i in range(0, len(index) - 1, 2)]
        for first, count in pairs:
            for num in range(first, first + count):
                if pos + entry_len > len(data):
                    break
                ftype = read_field(w[0], 1)
                f2 = read_field(w[1], 0)
                f3 = read_field(w[2], 0)
                if num in self.xref:
                    continue
                if ftype == 1:
                    self.xref[num] = ("n", f2, f3)
                elif ftype == 2:
                    self.xref[num] = ("c", f2, f3)  # in object stream f2, index f3
        return dict(stream.dict)

    def _rebuild_xref_by_scan(self) -> None:
        """Last-resort recovery: index every ``N G obj`` in the file."""
        for m in _OBJ_HEADER.finditer(self.data):
            num, gen = int(m.group(1)), int(m.group(2))
            self.xref[num] = ("n", m.start(), gen)  # later wins: latest revision
        if "Root" not in self.trailer:
            m = re.search(rb"/Root\s+(\d+)\s+(\d+)\s+R", self.data)
            if m:
                self.trailer["Root"] = Ref(int(m.group(1)), int(m.group(2)))

    # -- object access -----------------------------------------------------------

    def get_object(self, ref: Ref) -> Any:
        if ref.num in self._cache:
            return self._cache[ref.num]
        entry = self.xref.get(ref.num)
        obj: Any = None
        if entry is None:
            obj = None
        elif entry[0] == "n":
            obj = self._parse_object_at(entry[1], ref.num)
        elif entry[0] == "c":
            obj = self._object_from_stream(entry[1], entry[2], ref.num)
        self._cache[ref.num] = obj
        return obj

    def _parse_object_at(self, offset: int, expected_num: int) -> Any:
        if offset >= len(self.data):
            return None
        parser = ObjectParser(self.data, offset,
                              resolve_length=lambda r: self.resolve(r))
        try:
            num = parser.lexer.next_token()
            gen = parser.lexer.next_token()
            kw = parser.lexer.next_token()
            if not (isinstance(num, int) and isinstance(gen, int)
                    and isinstance(kw, Keyword) and kw.value == b"obj"):
                return None
            if num != expected_num:
                return None
            return parser.parse_object()
        except (SyntaxError_, StopIteration):
            return None

    def _object_from_stream(self, stm_num: int, idx: int, expected_num: int) -> Any:
        table = self._objstm_cache.get(stm_num)
        if table is None:
            table = {}
            stm = self.get_object(Ref(stm_num, 0))
            if isinstance(stm, PdfStream):
                try:
                    data, codec = decode_stream(stm, self.resolve)
                    n = int(self.resolve(stm.dict.get("N", 0)))
                    first = int(self.resolve(stm.dict.get("First", 0)))
                    head = ObjectParser(data[:first])
                    offsets = []
                    for _ in range(n):
                        onum = head.lexer.next_token()
                        ooff = head.lexer.next_token()
                        offsets.append((int(onum), int(ooff)))
                    for onum, ooff in offsets:
                        body = ObjectParser(data, first + ooff)
                        table[onum] = body.parse_object()
                except (SyntaxError_, FilterError, ValueError, StopIteration):
                    pass
            self._objstm_cache[stm_num] = table
        return table.get(expected_num)

    def resolve(self, obj: Any, depth: int = 0) -> Any:
        while isinstance(obj, Ref):
            if depth > 32:
                return None
            obj = self.get_object(obj)
            depth += 1
        return obj

    # -- page tree ---------------------------------------------------------------

    @property
    def pages(self) -> list[dict[str, Any]]:
        if self._pages is None:
            self._pages = list(self._walk_pages())
        return self._pages

    @property
    def page_count(self) -> int:
        return len(self.pages)

    def _walk_pages(self) -> Iterator[dict[str, Any]]:
        root = self.resolve(self.trailer.get("Root"))
        if not isinstance(root, dict):
            raise NotAPdfError(f"{self.source}: catalog unreadable")
        tree = self.resolve(root.get("Pages"))
        if not isinstance(tree, dict):
            raise NotAPdfError(f"{self.source}: page tree unreadable")
        seen: set[int] = set()

        def walk(node: dict[str, Any], inherited: dict[str, Any]) -> Iterator[dict]:
            merged = dict(inherited)
            for key in _INHERITABLE:
                if key in node:
                    merged[key] = node[key]
            node_type = str(node.get("Type", ""))
            kids = node.get("Kids")
            if node_type == "Page" or (kids is None and "Contents" in node):
                page = dict(node)
                for key in _INHERITABLE:
                    page.setdefault(key, merged.get(key))
                yield page
                return
            for kid in self.resolve(kids) or []:
                if isinstance(kid, Ref):
                    if kid.num in seen:
                        continue
                    seen.add(kid.num)
                kid_obj = self.resolve(kid)
                if isinstance(kid_obj, dict):
                    yield from walk(kid_obj, merged)

        yield from walk(tree, {})

    def page(self, index: int) -> dict[str, Any]:
        if not 0 <= index < self.page_count:
            raise PageOutOfRangeError(
                f"page {index} out of range 0..{self.page_count - 1}")
        return self.pages[index]

    def media_box(self, index: int) -> tuple[float, float, float, float]:
        box = self.resolve(self.page(index).get("MediaBox")) or [0, 0, 612, 792]
        vals = [float(self.resolve(v)) for v in box]
        x0, y0, x1, y1 = vals[:4]
        return (min(x0, x1), min(y0, y1), max(x0, x1), max(y0, y1))

    def page_resources(self, index: int) -> dict[str, Any]:
        res = self.resolve(self.page(index).get("Resources"))
        return res if isinstance(res, dict) else {}

    def page_content(self, index: int) -> bytes:
        """Decoded content stream(s) of a page, concatenated."""
        contents = self.resolve(self.page(index).get("Contents"))
        streams: list[Any]
        if isinstance(contents, list):
            streams = [self.resolve(s) for s in contents]
        else:
            streams = [contents]
        chunks: list[bytes] = []
        for s in streams:
            if not isinstance(s, PdfStream):
                continue
            try:
                data, codec = decode_stream(s, self.resolve)
                if codec is None:
                    chunks.append(data)
            except FilterError as exc:
                warnings.warn(
                    f"{self.source}: page {index}: content stream undecodable ({exc})",
                    MalformedContentStreamWarning, stacklevel=2)
        return b"\n".join(chunks)
