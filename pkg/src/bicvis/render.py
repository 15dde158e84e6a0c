"""Raster output of a permuted matrix with the six-colour category scheme."""
from __future__ import annotations

import enum
import struct
import zlib
from dataclasses import dataclass

import numpy as np

from .model import Biclustering, BinaryMatrix, Layout, ValidationError
from .postprocess import Suggestions


class Zone(enum.IntEnum):
    CLUSTERED = 0
    SUGGESTED = 1
    UNCLUSTERED = 2


@dataclass(frozen=True)
class CellCategory:
    zone: Zone
    value: int


def _hex(s: str) -> tuple[int, int, int]:
    s = s.lstrip("#")
    return int(s[0:2], 16), int(s[2:4], 16), int(s[4:6], 16)


def luminance(rgb) -> float:
    r, g, b = rgb
    return 0.2126 * r + 0.7152 * g + 0.0722 * b


@dataclass(frozen=True)
class Palette:
    """Colours per (zone, value); ``one`` tones must be darker than ``zero`` tones."""

    clustered: tuple[tuple[int, int, int], tuple[int, int, int]] = (_hex("1B7837"), _hex("A6DBA0"))
    suggested: tuple[tuple[int, int, int], tuple[int, int, int]] = (_hex("B2182B"), _hex("F4A582"))
    unclustered: tuple[tuple[int, int, int], tuple[int, int, int]] = (_hex("2166AC"), _hex("92C5DE"))
    hull: tuple[int, int, int] = (255, 0, 0)
    scale: int = 1

    def __post_init__(self):
        if self.scale < 1:
            raise ValidationError("palette scale must be a positive integer")
        for name in ("clustered", "suggested", "unclustered"):
            one, zero = getattr(self, name)
            for rgb in (one, zero):
                if len(rgb) != 3 or not all(0 <= v <= 255 for v in rgb):
                    raise ValidationError(f"{name}: invalid RGB triple {rgb}")
            if not luminance(one) < luminance(zero):
                raise ValidationError(f"{name}: the 1-entry colour must be darker than the 0-entry colour")

    @classmethod
    def from_json(cls, doc: dict, scale: int = 1) -> "Palette":
        def pair(key, default):
            if key not in doc:
                return default
            return tuple(_hex(v) if isinstance(v, str) else tuple(v) for v in (doc[key]["one"], doc[key]["zero"]))

        base = cls()
        hull = doc.get("hull", base.hull)
        return cls(pair("clustered", base.clustered), pair("suggested", base.suggested),
                   pair("unclustered", base.unclustered), _hex(hull) if isinstance(hull, str) else tuple(hull), scale)

    def table(self) -> np.ndarray:
        """``(6, 3)`` colours indexed by ``2 * zone + (1 - value)``."""
        out = []
        for one, zero in (self.clustered, self.suggested, self.unclustered):
            out += [one, zero]
        return np.array(out, dtype=np.uint8)


BRIGHT = (255, 255, 255)
DARK = (0, 0, 0)


def categorize(cell: tuple[int, int], a: BinaryMatrix, bc: Biclustering,
               sugg: Suggestions | None = None) -> CellCategory:
    """Category of original cell ``(row, col)``."""
    r, c = cell
    value = int(cell in a.ones)
    if any(r in cl.rows and c in cl.cols for cl in bc):
        return CellCategory(Zone.CLUSTERED, value)
    if sugg is not None:
        for i, cl in enumerate(bc):
            if (r in sugg.rows.get(i, ()) and c in cl.cols) or (r in cl.rows and c in sugg.cols.get(i, ())):
                return CellCategory(Zone.SUGGESTED, value)
    return CellCategory(Zone.UNCLUSTERED, value)


def _indicator(size: int, sets) -> np.ndarray:
    out = np.zeros((size, len(sets)), dtype=np.int64)
    for i, s in enumerate(sets):
        if s:
            out[np.fromiter(s, dtype=np.int64) - 1, i] = 1
    return out


def category_grid(a: BinaryMatrix, bc: Biclustering, sugg: Suggestions | None = None) -> np.ndarray:
    """``(m, n)`` array of category codes ``2 * zone + (1 - value)`` in original order."""
    k = bc.k
    rm = _indicator(a.m, [cl.rows for cl in bc])
    cm = _indicator(a.n, [cl.cols for cl in bc])
    clustered = (rm @ cm.T) > 0 if k else np.zeros((a.m, a.n), dtype=bool)
    zone = np.full((a.m, a.n), int(Zone.UNCLUSTERED), dtype=np.int64)
    if sugg is not None and k:
        sr = _indicator(a.m, [sugg.rows.get(i, frozenset()) for i in range(k)])
        sc = _indicator(a.n, [sugg.cols.get(i, frozenset()) for i in range(k)])
        zone[((sr @ cm.T) + (rm @ sc.T)) > 0] = int(Zone.SUGGESTED)
    zone[clustered] = int(Zone.CLUSTERED)
    return 2 * zone + (1 - a.to_array().astype(np.int64))


def pixels(a: BinaryMatrix, layout: Layout, bc: Biclustering, sugg: Suggestions | None = None,
           palette: Palette = Palette(), mode: str = "six", hull: int | None = None) -> np.ndarray:
    """RGB array of shape ``(m * scale, n * scale, 3)``."""
    if a.m < 1 or a.n < 1:
        raise ValidationError("cannot render an empty matrix")
    rows = np.array(layout.row_order, dtype=np.int64) - 1
    cols = np.array(layout.col_order, dtype=np.int64) - 1
    if mode == "two":
        table = np.array([BRIGHT, DARK], dtype=np.uint8)
        codes = 1 - a.to_array().astype(np.int64)
    elif mode == "six":
        table = palette.table()
        codes = category_grid(a, bc, sugg)
    else:
        raise ValueError(f"unknown colour mode {mode!r}")
    img = table[codes[np.ix_(rows, cols)]]
    s = palette.scale
    if s > 1:
        img = np.repeat(np.repeat(img, s, axis=0), s, axis=1)
    if hull is not None:
        if not 0 <= hull < bc.k:
            raise ValidationError(f"hull cluster {hull + 1} does not exist")
        cl = bc[hull]
        vr = [layout.pi_r[r - 1] for r in cl.rows]
        vc = [layout.pi_c[c - 1] for c in cl.cols]
        r0, r1 = (min(vr) - 1) * s, max(vr) * s - 1
        c0, c1 = (min(vc) - 1) * s, max(vc) * s - 1
        img[r0, c0:c1 + 1] = palette.hull
        img[r1, c0:c1 + 1] = palette.hull
        img[r0:r1 + 1, c0] = palette.hull
        img[r0:r1 + 1, c1] = palette.hull
    return img


def encode_ppm(img: np.ndarray) -> bytes:
    """Plain (P3) pixmap, one image row per text line."""
    h, w, _ = img.shape
    flat = img.reshape(h, w * 3)
    lines = [f"P3\n{w} {h}\n255"] + [" ".join(map(str, row)) for row in flat.tolist()]
    return ("\n".join(lines) + "\n").encode("ascii")


def _chunk(tag: bytes, data: bytes) -> bytes:
    return struct.pack(">I", len(data)) + tag + data + struct.pack(">I", zlib.crc32(tag + data) & 0xFFFFFFFF)


def encode_png(img: np.ndarray) -> bytes:
    h, w, _ = img.shape
    raw = np.concatenate([np.zeros((h, 1), dtype=np.uint8), img.reshape(h, w * 3)], axis=1)
    return (b"\x89PNG\r\n\x1a\n"
            + _chunk(b"IHDR", struct.pack(">IIBBBBB", w, h, 8, 2, 0, 0, 0))
            + _chunk(b"IDAT", zlib.compress(raw.tobytes(), 9))
            + _chunk(b"IEND", b""))


def decode_ppm(data: bytes) -> np.ndarray:
    tokens = data.split()
    if tokens[0] != b"P3":
        raise ValueError("not a plain PPM")
    w, h, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
    if maxval != 255:
        raise ValueError("only 8-bit pixmaps are supported")
    vals = np.array(tokens[4:4 + w * h * 3], dtype=np.int64)
    return vals.astype(np.uint8).reshape(h, w, 3)


def render_image(a: BinaryMatrix, layout: Layout, bc: Biclustering, sugg: Suggestions | None = None,
                 palette: Palette = Palette(), mode: str = "six", fmt: str = "ppm",
                 hull: int | None = None) -> bytes:
    img = pixels(a, layout, bc, sugg, palette, mode, hull)
    if fmt == "ppm":
        return encode_ppm(img)
    if fmt == "png":
        return encode_png(img)
    raise ValueError(f"unknown image format {fmt!r}")
