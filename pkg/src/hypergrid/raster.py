"""Image output: bit-exact binary PPM, a small stdlib PNG encoder, and a
software rasterizer that fills a 2D scene frame into a square image."""

from __future__ import annotations

import struct
import zlib
from pathlib import Path

import numpy as np

from .render3d import ImageBuf
from .scene import SceneFrame

PPM_MAXVAL = 255


def write_ppm(img: ImageBuf, path) -> None:
    """Binary P6, maxval 255, no comments."""
    header = f"P6\n{img.width} {img.height}\n{PPM_MAXVAL}\n".encode("ascii")
    Path(path).write_bytes(header + img.pixels.tobytes())


def read_ppm(path) -> ImageBuf:
    data = Path(path).read_bytes()
    fields = []
    i = 0
    while len(fields) < 4:
        while i < len(data) and data[i:i + 1].isspace():
            i += 1
        j = i
        while j < len(data) and not data[j:j + 1].isspace():
            j += 1
        fields.append(data[i:j])
        i = j
    if fields[0] != b"P6" or int(fields[3]) != PPM_MAXVAL:
        raise ValueError("not a maxval-255 binary PPM")
    width, height = int(fields[1]), int(fields[2])
    pixels = np.frombuffer(data[i + 1:], dtype=np.uint8)
    if len(pixels) != width * height * 3:
        raise ValueError("truncated PPM payload")
    return ImageBuf(width=width, height=height,
                    pixels=pixels.reshape(height, width, 3).copy())


def write_png(img: ImageBuf, path) -> None:
    """Minimal RGB8 PNG (filter 0 rows, single IDAT)."""
    def chunk(tag: bytes, payload: bytes) -> bytes:
        return (struct.pack(">I", len(payload)) + tag + payload
                + struct.pack(">I", zlib.crc32(tag + payload) & 0xFFFFFFFF))

    raw = b"".join(b"\x00" + img.pixels[row].tobytes()
                   for row in range(img.height))
    ihdr = struct.pack(">IIBBBBB", img.width, img.height, 8, 2, 0, 0, 0)
    blob = (b"\x89PNG\r\n\x1a\n"
            + chunk(b"IHDR", ihdr)
            + chunk(b"IDAT", zlib.compress(raw, 9))
            + chunk(b"IEND", b""))
    Path(path).write_bytes(blob)


def write_image(img: ImageBuf, path) -> None:
    """Dispatch on extension: .png gets PNG, anything else binary PPM."""
    if str(path).lower().endswith(".png"):
        write_png(img, path)
    else:
        write_ppm(img, path)


BACKGROUND = (18, 18, 24)
RING = (90, 90, 104)


def rasterize_frame(frame: SceneFrame, size: int) -> ImageBuf:
    """Fill the frame's polygons into a size x size image.

    The unit disk maps to the largest centered square; polygon interiors use
    the even-odd rule on the sampled boundaries; labels become small dots in
    the label color.
    """
    if size <= 0:
        raise ValueError("image size must be positive")
    img = np.empty((size, size, 3), dtype=np.uint8)
    img[:] = BACKGROUND

    def to_px(x, y):
        return ((x + 1.0) * 0.5 * (size - 1), (1.0 - y) * 0.5 * (size - 1))

    for poly in frame.polys:
        xs, ys = to_px(poly.boundary[:, 0], poly.boundary[:, 1])
        x0 = max(0, int(np.floor(xs.min())))
        x1 = min(size - 1, int(np.ceil(xs.max())))
        y0 = max(0, int(np.floor(ys.min())))
        y1 = min(size - 1, int(np.ceil(ys.max())))
        if x1 < x0 or y1 < y0:
            continue
        gx, gy = np.meshgrid(np.arange(x0, x1 + 1) + 0.5,
                             np.arange(y0, y1 + 1) + 0.5)
        inside = np.zeros(gx.shape, dtype=bool)
        nxs = np.roll(xs, -1)
        nys = np.roll(ys, -1)
        for ex, ey, fx, fy in zip(xs, ys, nxs, nys):
            if ey == fy:
                continue
            straddle = (ey > gy) != (fy > gy)
            with np.errstate(invalid="ignore", divide="ignore"):
                cross = ex + (gy - ey) * (fx - ex) / (fy - ey)
            inside ^= straddle & (cross > gx)
        img[y0:y1 + 1, x0:x1 + 1][inside] = poly.fill
        for _text, (lx, ly), color in poly.labels:
            px, py = to_px(lx, ly)
            rad = max(2, size // 160)
            yy, xx = np.ogrid[-rad:rad + 1, -rad:rad + 1]
            disk = xx * xx + yy * yy <= rad * rad
            cy, cx = int(round(py)), int(round(px))
            ys_lo, ys_hi = max(0, cy - rad), min(size, cy + rad + 1)
            xs_lo, xs_hi = max(0, cx - rad), min(size, cx + rad + 1)
            sub = disk[ys_lo - (cy - rad):ys_hi - (cy - rad),
                       xs_lo - (cx - rad):xs_hi - (cx - rad)]
            img[ys_lo:ys_hi, xs_lo:xs_hi][sub] = color

    # boundary circle of the disk model
    axis = (np.arange(size) + 0.5) / (size / 2.0) - 1.0
    gx, gy = np.meshgrid(axis, -axis)
    r = np.hypot(gx, gy)
    ring = np.abs(r - 1.0) < (1.5 / size * 2.0)
    img[ring] = RING
    return ImageBuf(width=size, height=size, pixels=img)
