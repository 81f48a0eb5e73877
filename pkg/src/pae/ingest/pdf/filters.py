"""Stream decode filters.

``decode_stream`` applies the filter chain up to (but never through) an
image codec: DCT/JPX/CCITT/JBIG2 payloads are returned as-is together
with the codec name so callers can treat them as image files.
"""

from __future__ import annotations

import base64
import zlib
from typing import Any

from .objects import PdfStream

IMAGE_CODECS = {"DCTDecode", "DCT", "JPXDecode", "CCITTFaxDecode", "CCF",
                "JBIG2Decode"}


class FilterError(Exception):
    pass


def _as_list(value) -> list:
    if value is None:
        return []
    if isinstance(value, list):
        return value
    return [value]


def _apply_png_predictor(data: bytes, colors: int, bpc: int, columns: int) -> bytes:
    bpp = max(1, (colors * bpc) // 8)
    row_len = (columns * colors * bpc + 7) // 8
    out = bytearray()
    prev = bytearray(row_len)
    pos = 0
    while pos < len(data):
        ftype = data[pos]
        row = bytearray(data[pos + 1:pos + 1 + row_len])
        pos += 1 + row_len
        if ftype == 0:
            pass
        elif ftype == 1:  # Sub
            for i in range(bpp, len(row)):
                row[i] = (row[i] + row[i - bpp]) & 0xFF
        elif ftype == 2:  # Up
            for i in range(len(row)):
                row[i] = (row[i] + prev[i]) & 0xFF
        elif ftype == 3:  # Average
            for i in range(len(row)):
                left = row[i - bpp] if i >= bpp else 0
                row[i] = (row[i] + (left + prev[i]) // 2) & 0xFF
        elif ftype == 4:  # Paeth
            for i in range(len(row)):
                a = row[i - bpp] if i >= bpp else 0
                b = prev[i]
                c = prev[i - bpp] if i >= bpp else 0
                p = a + b - c
                pa, pb, pc = abs(p - a), abs(p - b), abs(p - c)
                if pa <= pb and pa <= pc:
                    pred = a
                elif pb <= pc:
                    pred = b
                else:
                    pred = c
                row[i] = (row[i] + pred) & 0xFF
        else:
            raise FilterError(f"unknown PNG predictor row type {ftype}")
        out.extend(row)
        prev = row
    return bytes(out)


def _apply_tiff_predictor(data: bytes, colors: int, bpc: int, columns: int) -> bytes:
    if bpc != 8:
        raise FilterError("TIFF predictor only supported for 8-bit samples")
    row_len = columns * colors
    out = bytearray(data)
    for start in range(0, len(out) - row_len + 1, row_len):
        for i in range(colors, row_len):
            out[start + i] = (out[start + i] + out[start + i - colors]) & 0xFF
    return bytes(out)


def _apply_predictor(data: bytes, params: dict[str, Any] | None) -> bytes:
    if not params:
        return data
    predictor = params.get("Predictor", 1)
    if predictor in (None, 1):
        return data
    colors = params.get("Colors", 1)
    bpc = params.get("BitsPerComponent", 8)
    columns = params.get("Columns", 1)
    if predictor == 2:
        return _apply_tiff_predictor(data, colors, bpc, columns)
    if predictor >= 10:
        return _apply_png_predictor(data, colors, bpc, columns)
    raise FilterError(f"unsupported predictor {predictor}")


def flate_decode(data: bytes, params=None) -> bytes:
    try:
        out = zlib.decompress(data)
    except zlib.error:
        # Tolerate junk after the deflate payload.
        d = zlib.decompressobj()
        try:
            out = d.decompress(data)
        except zlib.error as exc:
            raise FilterError(f"flate decode failed: {exc}") from exc
    return _apply_predictor(out, params)


def lzw_decode(data: bytes, params=None) -> bytes:
    early = 1
    if params and params.get("EarlyChange") == 0:
        early = 0
    out = bytearray()
    table: list[bytes] = [bytes([i]) for i in range(256)] + [b"", b""]
    code_len = 9
    prev: bytes | None = None
    buf = 0
    bits = 0
    for byte in data:
        buf = (buf << 8) | byte
        bits += 8
        while bits >= code_len:
            bits -= code_len
            code = (buf >> bits) & ((1 << code_len) - 1)
            if code == 256:
                table = [bytes([i]) for i in range(256)] + [b"", b""]
                code_len = 9
                prev = None
                continue
            if code == 257:
                return _apply_predictor(bytes(out), params)
            if prev is None:
                entry = table[code]
            elif code < len(table):
                entry = table[code]
                table.append(prev + entry[:1])
            else:
                entry = prev + prev[:1]
                table.append(entry)
            out.extend(entry)
            prev = entry
            if len(table) + early - 1 >= (1 << code_len) and code_len < 12:
                code_len += 1
    return _apply_predictor(bytes(out), params)


def ascii85_decode(data: bytes, params=None) -> bytes:
    text = data.strip()
    if text.startswith(b"<~"):
        text = text[2:]
    if not text.endswith(b"~>"):
        text += b"~>"
    try:
        return base64.a85decode(text, adobe=True, ignorechars=b" \t\r\n\v\f")
    except ValueError as exc:
        raise FilterError(f"ascii85 decode failed: {exc}") from exc


def asciihex_decode(data: bytes, params=None) -> bytes:
    end = data.find(b">")
    if end != -1:
        data = data[:end]
    compact = b"".join(data.split())
    if len(compact) % 2:
        compact += b"0"
    try:
        return bytes.fromhex(compact.decode("ascii"))
    except ValueError as exc:
        raise FilterError(f"asciihex decode failed: {exc}") from exc


def runlength_decode(data: bytes, params=None) -> bytes:
    out = bytearray()
    i = 0
    while i < len(data):
        length = data[i]
        if length == 128:
            break
        if length < 128:
            out.extend(data[i + 1:i + 2 + length])
            i += 2 + length
        else:
            out.extend(data[i + 1:i + 2] * (257 - length))
            i += 2
    return bytes(out)


_DECODERS = {
    "FlateDecode": flate_decode,
    "Fl": flate_decode,
    "LZWDecode": lzw_decode,
    "LZW": lzw_decode,
    "ASCII85Decode": ascii85_decode,
    "A85": ascii85_decode,
    "ASCIIHexDecode": asciihex_decode,
    "AHx": asciihex_decode,
    "RunLengthDecode": runlength_decode,
    "RL": runlength_decode,
}


def decode_stream(stream: PdfStream, resolve=lambda obj: obj) -> tuple[bytes, str | None]:
    """Decode a stream's filter chain.

    Returns ``(data, image_codec)`` where image_codec is the name of the
    final image-compression filter if the chain ends in one (data is then
    the still-encoded image payload), else None.
    """
    filters = [str(f) for f in _as_list(resolve(stream.dict.get("Filter")))]
    params_list = [resolve(p) for p in _as_list(resolve(stream.dict.get("DecodeParms")))]
    params_list += [None] * (len(filters) - len(params_list))
    data = stream.raw
    for name, params in zip(filters, params_list):
        if name in IMAGE_CODECS:
            return data, name
        decoder = _DECODERS.get(name)
        if decoder is None:
            raise FilterError(f"unsupported stream filter /{name}")
        data = decoder(data, params if isinstance(params, dict) else None)
    return data, None
