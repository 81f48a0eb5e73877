"""PDF tokenizer and object parser.

Operates over an in-memory buffer with an explicit cursor so the xref
machinery can seek to byte offsets. The same tokenizer doubles as the
content-stream lexer (operators come out as ``Keyword`` tokens).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .objects import Name, PdfStream, Ref

WHITESPACE = b"\x00\t\n\x0c\r "
DELIMITERS = b"()<>[]{}/%"


class SyntaxError_(Exception):
    """Low-level PDF syntax violation (distinct from builtins.SyntaxError)."""


@dataclass(frozen=True)
class Keyword:
    """A bare keyword token: obj, endobj, stream, R, true, an operator..."""

    value: bytes


class Lexer:
    __slots__ = ("data", "pos")

    def __init__(self, data: bytes, pos: int = 0):
        self.data = data
        self.pos = pos

    # -- character helpers ---------------------------------------------------

    def _skip_ws(self) -> None:
        data, n = self.data, len(self.data)
        pos = self.pos
        while pos < n:
            c = data[pos]
            if c in WHITESPACE:
                pos += 1
            elif c == 0x25:  # '%' comment runs to end of line
                while pos < n and data[pos] not in b"\r\n":
                    pos += 1
            else:
                break
        self.pos = pos

    def at_end(self) -> bool:
        self._skip_ws()
        return self.pos >= len(self.data)

    # -- token reader ----------------------------------------------------------

    def next_token(self) -> Any:
        """Return the next token: int/float, Name, bytes (string), Keyword,
        or one of the delimiter markers b'[', b']', b'<<', b'>>'.
        Raises StopIteration at end of input."""
        self._skip_ws()
        data, n = self.data, len(self.data)
        if self.pos >= n:
            raise StopIteration
        c = data[self.pos]
        if c == 0x2F:  # /
            return self._read_name()
        if c == 0x28:  # (
            return self._read_literal_string()
        if c == 0x3C:  # <
            if self.pos + 1 < n and data[self.pos + 1] == 0x3C:
                self.pos += 2
                return b"<<"
            return self._read_hex_string()
        if c == 0x3E:  # >
            if self.pos + 1 < n and data[self.pos + 1] == 0x3E:
                self.pos += 2
                return b">>"
            raise SyntaxError_(f"stray '>' at offset {self.pos}")
        if c in b"[]{}":
            self.pos += 1
            return bytes([c])
        if c in b"+-.0123456789":
            return self._read_number()
        return self._read_keyword()

    def _read_name(self) -> Name:
        data, n = self.data, len(self.data)
        pos = self.pos + 1
        out = bytearray()
        while pos < n:
            c = data[pos]
            if c in WHITESPACE or c in DELIMITERS:
                break
            if c == 0x23 and pos + 2 < n:  # #xx hex escape
                try:
                    out.append(int(data[pos + 1:pos + 3], 16))
                    pos += 3
                    continue
                except ValueError:
                    pass
            out.append(c)
            pos += 1
        self.pos = pos
        return Name(out.decode("latin-1"))

    def _read_number(self):
        data, n = self.data, len(self.data)
        start = self.pos
        pos = start
        if data[pos] in b"+-":
            pos += 1
        is_float = False
        while pos < n and data[pos] in b"0123456789.":
            if data[pos] == 0x2E:
                is_float = True
            pos += 1
        self.pos = pos
        text = data[start:pos]
        try:
            return float(text) if is_float else int(text)
        except ValueError:
            # e.g. a lone '-' or '.'; treat as keyword-ish garbage
            raise SyntaxError_(f"bad number {text!r} at offset {start}")

    def _read_keyword(self) -> Keyword:
        data, n = self.data, len(self.data)
        start = self.pos
        pos = start
        while pos < n:
            c = data[pos]
            if c in WHITESPACE or c in DELIMITERS:
                break
            pos += 1
        if pos == start:
            raise SyntaxError_(f"unexpected byte {data[start]:#x} at offset {start}")
        self.pos = pos
        return Keyword(data[start:pos])

    _STRING_ESCAPES = {
        0x6E: b"\n", 0x72: b"\r", 0x74: b"\t", 0x62: b"\b",
        0x66: b"\x0c", 0x28: b"(", 0x29: b")", 0x5C: b"\\",
    }

    def _read_literal_string(self) -> bytes:
        data, n = self.data, len(self.data)
        pos = self.pos + 1
        out = bytearray()
        depth = 1
        while pos < n:
            c = data[pos]
            if c == 0x5C:  # backslash
                pos += 1
                if pos >= n:
                    break
                e = data[pos]
                esc = self._STRING_ESCAPES.get(e)
                if esc is not None:
                    out += esc
                    pos += 1
                elif e in b"01234567":
                    digits = bytearray([e])
                    pos += 1
                    while pos < n and len(digits) < 3 and data[pos] in b"01234567":
                        digits.append(data[pos])
                        pos += 1
                    out.append(int(digits, 8) & 0xFF)
                elif e in b"\r\n":  # line continuation
                    pos += 1
                    if e == 0x0D and pos < n and data[pos] == 0x0A:
                        pos += 1
                else:
                    out.append(e)
                    pos += 1
            elif c == 0x28:
                depth += 1
                out.append(c)
                pos += 1
            elif c == 0x29:
                depth -= 1
                if depth == 0:
                    pos += 1
                    break
                out.append(c)
                pos += 1
            else:
                out.append(c)
                pos += 1
        self.pos = pos
        return bytes(out)

    def _read_hex_string(self) -> bytes:
        data, n = self.data, len(self.data)
        pos = self.pos + 1
        digits = bytearray()
        while pos < n and data[pos] != 0x3E:
            if data[pos] not in WHITESPACE:
                digits.append(data[pos])
            pos += 1
        self.pos = pos + 1
        if len(digits) % 2:
            digits.append(0x30)
        try:
            return bytes.fromhex(digits.decode("ascii"))
        except ValueError as exc:
            raise SyntaxError_(f"bad hex string: {exc}")


class ObjectParser:
    """Parses full PDF objects (with lookahead for ``R`` references).

    ``resolve_length`` lets the document layer resolve an indirect /Length
    before the parser falls back to scanning for ``endstream``.
    """

    def __init__(self, data: bytes, pos: int = 0, resolve_length=None):
        self.lexer = Lexer(data, pos)
        self._resolve_length = resolve_length

    @property
    def pos(self) -> int:
        return self.lexer.pos

    @pos.setter
    def pos(self, value: int) -> None:
        self.lexer.pos = value

    def parse_object(self, token=None) -> Any:
        if token is None:
            token = self.lexer.next_token()
        if token == b"<<":
            return self._parse_dict_or_stream()
        if token == b"[":
            return self._parse_array()
        if isinstance(token, Keyword):
            if token.value == b"true":
                return True
            if token.value == b"false":
                return False
            if token.value == b"null":
                return None
            return token
        if isinstance(token, int):
            return self._maybe_reference(token)
        return token

    def _maybe_reference(self, first: int):
        # "num gen R" lookahead; rewind cleanly when it is just a number.
        save = self.lexer.pos
        try:
            second = self.lexer.next_token()
        except (StopIteration, SyntaxError_):
            self.lexer.pos = save
            return first
        if isinstance(second, int) and second >= 0:
            save2 = self.lexer.pos
            try:
                third = self.lexer.next_token()
            except (StopIteration, SyntaxError_):
                self.lexer.pos = save
                return first
            if isinstance(third, Keyword) and third.value == b"R":
                return Ref(first, second)
            self.lexer.pos = save
            return first
        self.lexer.pos = save
        return first

    def _parse_array(self) -> list:
        items = []
        while True:
            token = self.lexer.next_token()
            if token == b"]":
                return items
            items.append(self.parse_object(token))

    def _parse_dict_or_stream(self):
        d: dict[str, Any] = {}
        while True:
            token = self.lexer.next_token()
            if token == b">>":
                break
            if not isinstance(token, Name):
                raise SyntaxError_(f"dict key is not a name: {token!r}")
            d[str(token)] = self.parse_object()
        # A stream keyword may follow the dictionary.
        save = self.lexer.pos
        try:
            nxt = self.lexer.next_token()
        except StopIteration:
            return d
        if isinstance(nxt, Keyword) and nxt.value == b"stream":
            return self._parse_stream_body(d)
        self.lexer.pos = save
        return d

    def _parse_stream_body(self, d: dict[str, Any]) -> PdfStream:
        data = self.lexer.data
        pos = self.lexer.pos
        # EOL after 'stream': CRLF or LF (a lone CR is tolerated)
        if data[pos:pos + 2] == b"\r\n":
            pos += 2
        elif data[pos:pos + 1] in (b"\n", b"\r"):
            pos += 1
        length = d.get("Length")
        if isinstance(length, Ref) and self._resolve_length is not None:
            try:
                length = self._resolve_length(length)
            except Exception:
                length = None
        raw: bytes | None = None
        if isinstance(length, int) and length >= 0:
            candidate = data[pos:pos + length]
            tail = data[pos + length:pos + length + 20]
            if tail.lstrip(b"\r\n \t").startswith(b"endstream"):
                raw = candidate
                end = pos + length
        if raw is None:
            # Length missing, indirect, or wrong: scan for endstream.
            idx = data.find(b"endstream", pos)
            if idx == -1:
                raise SyntaxError_("unterminated stream")
            raw = data[pos:idx].rstrip(b"\r\n")
            end = idx
        self.lexer.pos = data.find(b"endstream", end) + len(b"endstream")
        return PdfStream(d, raw)
