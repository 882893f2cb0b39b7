"""Binary image input: decoding, padding and component labelling.

Pixels are addressed 1-based, pixel (i, j) sitting at the Cartesian point
(i, j) with the first axis oriented down the page.  Every image is padded
with one ring of background before anything else happens, so the outermost
ring is guaranteed background.
"""
from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np
from PIL import Image, UnidentifiedImageError
from scipy import ndimage


class ImageFormatError(ValueError):
    """Malformed or unsupported image input."""


_EIGHT = np.ones((3, 3), dtype=int)          # 8-connectivity structure
_FOUR = ndimage.generate_binary_structure(2, 1)  # 4-connectivity structure


@dataclass(frozen=True)
class BinaryImage:
    """Padded 0/1 pixel grid; value 1 is foreground."""

    pixels: np.ndarray  # uint8, shape (rows, cols), outer ring all 0

    def __post_init__(self) -> None:
        px = self.pixels
        if px.ndim != 2 or px.shape[0] < 3 or px.shape[1] < 3:
            raise ImageFormatError(f"padded image must be at least 3x3, got {px.shape}")
        ring = np.concatenate([px[0, :], px[-1, :], px[:, 0], px[:, -1]])
        if ring.any():
            raise ImageFormatError("outer ring must be background after padding")

    @property
    def rows(self) -> int:
        return self.pixels.shape[0]

    @property
    def cols(self) -> int:
        return self.pixels.shape[1]

    @staticmethod
    def from_array(arr: np.ndarray) -> "BinaryImage":
        """Wrap a raw 0/1 array, adding one background ring on all sides."""
        arr = np.asarray(arr)
        if arr.ndim != 2 or arr.size == 0:
            raise ImageFormatError("pixel grid must be a non-empty 2-d array")
        if not np.isin(arr, (0, 1)).all():
            raise ImageFormatError("pixel values must be 0 or 1")
        padded = np.pad(arr.astype(np.uint8), 1, constant_values=0)
        return BinaryImage(padded)

    def pad(self) -> "BinaryImage":
        """Add another background ring (translates content by (+1, +1))."""
        return BinaryImage(np.pad(self.pixels, 1, constant_values=0))

    def foreground_count(self) -> int:
        return int(self.pixels.sum())

    def value(self, i: int, j: int) -> int:
        """Pixel value at 1-based coordinates."""
        return int(self.pixels[i - 1, j - 1])


def _decode_text_grid(data: bytes) -> np.ndarray:
    rows = []
    for raw in data.decode("ascii", errors="replace").splitlines():
        line = raw.replace(" ", "").replace("\t", "").strip()
        if not line:
            continue
        if set(line) - {"0", "1"}:
            raise ImageFormatError(f"text grid rows must contain only 0/1: {raw!r}")
        rows.append([int(ch) for ch in line])
    if not rows:
        raise ImageFormatError("empty text grid")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ImageFormatError("text grid rows have unequal lengths")
    return np.array(rows, dtype=np.uint8)


def _pbm_tokens(data: bytes):
    """Yield whitespace-separated tokens of a PBM header, skipping comments."""
    i, n = 0, len(data)
    while i < n:
        c = data[i:i + 1]
        if c.isspace():
            i += 1
        elif c == b"#":
            while i < n and data[i:i + 1] != b"\n":
                i += 1
        else:
            j = i
            while j < n and not data[j:j + 1].isspace() and data[j:j + 1] != b"#":
                j += 1
            yield data[i:j], j
            i = j


def _decode_pbm(data: bytes) -> np.ndarray:
    toks = _pbm_tokens(data)
    try:
        magic, _ = next(toks)
        (w_tok, _), (h_tok, end) = next(toks), next(toks)
        width, height = int(w_tok), int(h_tok)
    except (StopIteration, ValueError) as exc:
        raise ImageFormatError("malformed PBM header") from exc
    if magic not in (b"P1", b"P4"):
        raise ImageFormatError(f"not a PBM file (magic {magic!r})")
    if width <= 0 or height <= 0:
        raise ImageFormatError("non-positive PBM dimensions")

    if magic == b"P1":
        bits = [int(ch) for ch in data[end:].decode("ascii", errors="replace") if ch in "01"]
        if len(bits) < width * height:
            raise ImageFormatError("PBM P1 data shorter than promised dimensions")
        arr = np.array(bits[: width * height], dtype=np.uint8)
    else:
        # P4: single whitespace byte after the header, then packed rows
        payload = data[end + 1:]
        row_bytes = (width + 7) // 8
        if len(payload) < row_bytes * height:
            raise ImageFormatError("PBM P4 data shorter than promised dimensions")
        raw = np.frombuffer(payload[: row_bytes * height], dtype=np.uint8)
        bits = np.unpackbits(raw.reshape(height, row_bytes), axis=1)[:, :width]
        arr = bits.astype(np.uint8)
    # PBM: 1 is black ink, which is the foreground
    return arr.reshape(height, width)


def _decode_png(data: bytes) -> np.ndarray:
    try:
        img = Image.open(io.BytesIO(data))
        img.load()
    except UnidentifiedImageError as exc:
        raise ImageFormatError("not a decodable PNG") from exc
    if img.mode not in ("1", "L", "LA", "I", "I;16", "P", "RGB", "RGBA"):
        raise ImageFormatError(f"unsupported PNG mode {img.mode}")
    gray = np.asarray(img.convert("L"))
    # dark ink is foreground: below the 128 threshold maps to 1
    return (gray < 128).astype(np.uint8)


_DECODERS = {"txt": _decode_text_grid, "pbm": _decode_pbm, "png": _decode_png}


def sniff_format(data: bytes) -> str:
    if data[:8] == b"\x89PNG\r\n\x1a\n":
        return "png"
    if data[:2] in (b"P1", b"P4"):
        return "pbm"
    return "txt"


def load_image(source, fmt: str | None = None) -> BinaryImage:
    """Decode a byte stream or path into a padded BinaryImage.

    fmt is one of "pbm", "png", "txt"; when omitted it is sniffed from the
    leading bytes.
    """
    if isinstance(source, (str, bytes)) and not isinstance(source, bytes):
        with open(source, "rb") as fh:
            data = fh.read()
    elif isinstance(source, bytes):
        data = source
    else:
        data = source.read()
    fmt = fmt or sniff_format(data)
    if fmt not in _DECODERS:
        raise ImageFormatError(f"unknown format {fmt!r}")
    return BinaryImage.from_array(_DECODERS[fmt](data))


@dataclass(frozen=True)
class ComponentLabels:
    """Foreground labels (8-adjacent) and background labels (4-adjacent)."""

    foreground: np.ndarray  # 0 where background, 1..n_fg on components
    background: np.ndarray  # 0 where foreground, 1..n_bg on components
    n_foreground: int
    n_background: int
    outer_label: int  # background label of the padding ring

    def interior_background_labels(self) -> list[int]:
        return [l for l in range(1, self.n_background + 1) if l != self.outer_label]


def label_components(img: BinaryImage) -> ComponentLabels:
    """Label components: 8-connectivity for foreground, 4 for background."""
    fg, n_fg = ndimage.label(img.pixels, structure=_EIGHT)
    bg, n_bg = ndimage.label(1 - img.pixels, structure=_FOUR)
    return ComponentLabels(fg, bg, int(n_fg), int(n_bg), int(bg[0, 0]))
