"""Raster images, cylindrical HSV conversion, and portable-pixmap/PNG I/O.

Images are 8-bit RGB, numpy-backed, treated as immutable once constructed.
Hue convention: degrees in [0, 360) with yellow at 60; achromatic pixels get
hue 0 and saturation 0.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

#: Fixed recolor used when burning a mask into an image.
OVERLAY_COLOR = (255, 0, 255)

#: Refuse to decode anything claiming more pixels than this.
MAX_PIXELS = 100_000_000


class ImageError(ValueError):
    """Base class for image decode/encode failures."""


class MalformedImageError(ImageError):
    """Header or payload does not parse as a supported image."""


class UnsupportedImageError(ImageError):
    """Parseable, but uses a feature we reject (e.g. >8-bit channels)."""


class DimensionOverflowError(ImageError):
    """Declared dimensions are non-positive or absurdly large."""


class HsvPixel(NamedTuple):
    hue: float  # degrees, [0, 360)
    saturation: float  # [0, 1]
    value: float  # [0, 1]


@dataclass(frozen=True)
class RgbImage:
    """8-bit RGB raster; ``pixels`` has shape (height, width, 3), dtype uint8."""

    pixels: np.ndarray

    def __post_init__(self):
        p = self.pixels
        if not isinstance(p, np.ndarray) or p.ndim != 3 or p.shape[2] != 3:
            raise ValueError("pixels must be an (h, w, 3) array")
        if p.dtype != np.uint8:
            raise ValueError("pixels must be uint8")
        if p.shape[0] < 1 or p.shape[1] < 1:
            raise ValueError("image dimensions must be at least 1x1")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @classmethod
    def filled(cls, width: int, height: int, color: tuple) -> "RgbImage":
        arr = np.empty((height, width, 3), np.uint8)
        arr[:, :] = np.asarray(color, np.uint8)
        return cls(arr)


@dataclass(frozen=True)
class BinaryMask:
    """Boolean raster aligned with the image it was derived from."""

    bits: np.ndarray

    def __post_init__(self):
        b = self.bits
        if not isinstance(b, np.ndarray) or b.ndim != 2 or b.dtype != np.bool_:
            raise ValueError("bits must be a 2-d bool array")
        if b.shape[0] < 1 or b.shape[1] < 1:
            raise ValueError("mask dimensions must be at least 1x1")

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    def count_true(self) -> int:
        return int(self.bits.sum())

    def fraction_true(self) -> float:
        return self.count_true() / (self.width * self.height)


def rgb_to_hsv(pixel: tuple) -> HsvPixel:
    """Hexcone RGB -> HSV for one 8-bit pixel.

    Achromatic inputs (r == g == b) map to hue 0, saturation 0.
    """
    r, g, b = pixel
    rf, gf, bf = r / 255.0, g / 255.0, b / 255.0
    maxc = max(rf, gf, bf)
    minc = min(rf, gf, bf)
    delta = maxc - minc
    val = maxc
    sat = 0.0 if maxc == 0.0 else delta / maxc
    if delta > 0.0:
        if maxc == rf:
            hue = 60.0 * (((gf - bf) / delta) % 6.0)
        elif maxc == gf:
            hue = 60.0 * ((bf - rf) / delta + 2.0)
        else:
            hue = 60.0 * ((rf - gf) / delta + 4.0)
    else:
        hue = 0.0
    return HsvPixel(hue, sat, val)


def hsv_to_rgb(hue: float, saturation: float, value: float) -> tuple:
    """Inverse hexcone conversion; used by the simulator renderer."""
    h = (hue % 360.0) / 60.0
    c = value * saturation
    x = c * (1.0 - abs(h % 2.0 - 1.0))
    m = value - c
    sector = int(h)
    rgbs = (
        (c, x, 0.0),
        (x, c, 0.0),
        (0.0, c, x),
        (0.0, x, c),
        (x, 0.0, c),
        (c, 0.0, x),
    )
    rp, gp, bp = rgbs[min(sector, 5)]
    return (
        int(round((rp + m) * 255.0)),
        int(round((gp + m) * 255.0)),
        int(round((bp + m) * 255.0)),
    )


def rgb_image_to_hsv(img: RgbImage) -> tuple:
    """Vectorized per-plane HSV arrays (hue_deg, sat, val) for a whole image."""
    rf = img.pixels[..., 0].astype(np.float64) / 255.0
    gf = img.pixels[..., 1].astype(np.float64) / 255.0
    bf = img.pixels[..., 2].astype(np.float64) / 255.0
    maxc = np.maximum(rf, np.maximum(gf, bf))
    minc = np.minimum(rf, np.minimum(gf, bf))
    delta = maxc - minc
    val = maxc
    sat = np.zeros_like(maxc)
    np.divide(delta, maxc, out=sat, where=maxc > 0.0)
    safe = np.where(delta > 0.0, delta, 1.0)
    hue_r = 60.0 * (((gf - bf) / safe) % 6.0)
    hue_g = 60.0 * ((bf - rf) / safe + 2.0)
    hue_b = 60.0 * ((rf - gf) / safe + 4.0)
    is_r = maxc == rf
    is_g = ~is_r & (maxc == gf)
    hue = np.where(delta > 0.0, np.where(is_r, hue_r, np.where(is_g, hue_g, hue_b)), 0.0)
    return hue, sat, val


# ---------------------------------------------------------------------------
# file I/O


def _parse_ppm_tokens(data: bytes, n: int, start: int):
    """Yield n whitespace-separated ASCII tokens from data[start:], skipping
    '#' comments. Returns (tokens, next_offset)."""
    tokens = []
    i = start
    length = len(data)
    while len(tokens) < n:
        while i < length and data[i : i + 1].isspace():
            i += 1
        if i < length and data[i : i + 1] == b"#":
            while i < length and data[i : i + 1] != b"\n":
                i += 1
            continue
        j = i
        while j < length and not data[j : j + 1].isspace() and data[j : j + 1] != b"#":
            j += 1
        if j == i:
            raise MalformedImageError("truncated pixmap header/body")
        tokens.append(data[i:j])
        i = j
    return tokens, i


def decode_image(data: bytes) -> RgbImage:
    """Decode P3/P6 portable pixmaps or PNG from raw bytes."""
    if len(data) < 2:
        raise MalformedImageError("file too short to contain an image header")
    magic = data[:2]
    if magic in (b"P3", b"P6"):
        return _decode_ppm(data, magic)
    if data[:8] == b"\x89PNG\r\n\x1a\n":
        return _decode_png(data)
    raise MalformedImageError("unrecognized image header (expected P3/P6 pixmap or PNG)")


def _check_dims(width: int, height: int):
    if width < 1 or height < 1 or width * height > MAX_PIXELS:
        raise DimensionOverflowError(f"bad image dimensions {width}x{height}")


def _decode_ppm(data: bytes, magic: bytes) -> RgbImage:
    try:
        header, offset = _parse_ppm_tokens(data, 3, 2)
        width, height, maxval = (int(tok) for tok in header)
    except MalformedImageError:
        raise
    except ValueError as exc:
        raise MalformedImageError(f"non-numeric pixmap header: {exc}") from exc
    _check_dims(width, height)
    if maxval <= 0:
        raise MalformedImageError(f"pixmap maxval must be positive, got {maxval}")
    if maxval > 255:
        raise UnsupportedImageError(f"only 8-bit channels supported, maxval={maxval}")

    n_values = width * height * 3
    if magic == b"P3":
        try:
            tokens, _ = _parse_ppm_tokens(data, n_values, offset)
            values = np.array([int(t) for t in tokens], dtype=np.int64)
        except (MalformedImageError, ValueError) as exc:
            raise MalformedImageError(f"bad P3 payload: {exc}") from exc
    else:
        # single whitespace byte after maxval, then raw samples
        payload = data[offset + 1 : offset + 1 + n_values]
        if len(payload) < n_values:
            raise MalformedImageError("truncated P6 payload")
        values = np.frombuffer(payload, dtype=np.uint8).astype(np.int64)

    if values.min() < 0 or values.max() > maxval:
        raise MalformedImageError("pixmap sample out of range")
    if maxval != 255:
        values = (values * 255 + maxval // 2) // maxval
    return RgbImage(values.astype(np.uint8).reshape(height, width, 3))


def _decode_png(data: bytes) -> RgbImage:
    from PIL import Image, UnidentifiedImageError

    try:
        with Image.open(io.BytesIO(data)) as im:
            if im.mode in ("I", "I;16", "I;16B", "I;16L", "F"):
                raise UnsupportedImageError(f"only 8-bit channels supported, PNG mode {im.mode}")
            _check_dims(im.width, im.height)
            rgb = im.convert("RGB")
            arr = np.asarray(rgb, dtype=np.uint8)
    except UnidentifiedImageError as exc:
        raise MalformedImageError(f"bad PNG payload: {exc}") from exc
    return RgbImage(arr.copy())


def load_image(path) -> RgbImage:
    """Load an image file. Raises FileNotFoundError for missing paths and
    ImageError subclasses for malformed/unsupported content."""
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"no such image file: {p}")
    return decode_image(p.read_bytes())


def encode_image(img: RgbImage, fmt: str) -> bytes:
    """Encode to 'ppm' (binary P6), 'ppm-ascii' (P3) or 'png'. Deterministic."""
    if fmt == "ppm":
        header = f"P6\n{img.width} {img.height}\n255\n".encode()
        return header + img.pixels.tobytes()
    if fmt == "ppm-ascii":
        lines = [f"P3\n{img.width} {img.height}\n255"]
        flat = img.pixels.reshape(-1, 3)
        for px in flat:
            lines.append(f"{px[0]} {px[1]} {px[2]}")
        return ("\n".join(lines) + "\n").encode()
    if fmt == "png":
        from PIL import Image

        buf = io.BytesIO()
        Image.fromarray(img.pixels, "RGB").save(buf, format="PNG")
        return buf.getvalue()
    raise ValueError(f"unknown image format {fmt!r}")


def _format_for_path(path: Path) -> str:
    ext = path.suffix.lower()
    if ext in (".ppm", ".pnm"):
        return "ppm"
    if ext == ".png":
        return "png"
    raise ValueError(f"cannot infer image format from extension {ext!r}")


def save_image(img: RgbImage, path, fmt: str | None = None) -> None:
    p = Path(path)
    p.write_bytes(encode_image(img, fmt or _format_for_path(p)))


def apply_mask_overlay(img: RgbImage, mask: BinaryMask) -> RgbImage:
    """Return a copy of img with mask-true pixels recolored to OVERLAY_COLOR."""
    if (mask.height, mask.width) != (img.height, img.width):
        raise ValueError(
            f"mask dimensions {mask.width}x{mask.height} do not match "
            f"image {img.width}x{img.height}"
        )
    out = img.pixels.copy()
    out[mask.bits] = np.asarray(OVERLAY_COLOR, np.uint8)
    return RgbImage(out)


def save_mask_overlay(img: RgbImage, mask: BinaryMask, path, fmt: str | None = None) -> None:
    """Write img with mask-true pixels highlighted; byte-identical for equal inputs."""
    save_image(apply_mask_overlay(img, mask), path, fmt)
