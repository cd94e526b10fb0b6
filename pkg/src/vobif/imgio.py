"""Image loading (PGM, 8-bit grayscale PNG) and the VOB1 text format.

VOB1 layout::

    VOB1 <taxicab|euclidean> <width> <height> <exact|approx>
    V <v1> <v2> ...
    <x> <y> : (<v>,<off>) (<v>,<off>) ...      one line per pixel

Pixel lines run over ``y = 0, 1, ...`` with ``x`` ascending inside each row.
Taxicab offsets are signed integers; Euclidean offsets are ``s<m>`` or
``-s<m>`` with ``m`` the squared distance, or ``0``. Negative infinity is
``-inf`` for both.
"""

from __future__ import annotations

import io
import os
import re
import sys
from pathlib import Path
from typing import IO

import numpy as np

from .core import NEG_INF_CODE, BifiltrationResult, GrayImage, Metric


class ImageFormatError(ValueError):
    """Base class for unreadable image files."""


class UnsupportedFormatError(ImageFormatError):
    pass


class ColorImageError(ImageFormatError):
    pass


class CorruptHeaderError(ImageFormatError):
    pass


class MaxvalError(ImageFormatError):
    pass


class CorruptDataError(ImageFormatError):
    pass


class VobFormatError(ValueError):
    """Base class for unreadable VOB files."""


class VersionMismatchError(VobFormatError):
    pass


class MalformedTokenError(VobFormatError):
    pass


class StaircaseViolationError(VobFormatError):
    pass


# ---------------------------------------------------------------- images

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def _pgm_header(data: bytes, path: str) -> tuple[bytes, int, int, int, int]:
    """Parse magic, width, height and maxval; return them with the raster offset."""
    tokens: list[bytes] = []
    i = 0
    n = len(data)
    while len(tokens) < 4:
        while i < n and data[i:i + 1].isspace():
            i += 1
        if i >= n:
            raise CorruptHeaderError(f"{path}: header ends after {len(tokens)} fields")
        if data[i:i + 1] == b"#":
            while i < n and data[i:i + 1] not in (b"\n", b"\r"):
                i += 1
            continue
        j = i
        while j < n and not data[j:j + 1].isspace() and data[j:j + 1] != b"#":
            j += 1
        tokens.append(data[i:j])
        i = j
    # exactly one whitespace byte separates maxval from a binary raster
    if i < n and not data[i:i + 1].isspace():
        raise CorruptHeaderError(f"{path}: no whitespace after maxval")
    magic = tokens[0]
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise CorruptHeaderError(f"{path}: non-numeric width/height/maxval {tokens[1:]!r}") from None
    if width < 1 or height < 1:
        raise CorruptHeaderError(f"{path}: dimensions {width}x{height} must be positive")
    if maxval < 1 or maxval > 65535:
        raise MaxvalError(f"{path}: maxval {maxval} outside 1..65535")
    return magic, width, height, maxval, i + 1


def _read_pgm(data: bytes, path: str) -> GrayImage:
    magic, width, height, maxval, start = _pgm_header(data, path)
    count = width * height
    if magic == b"P5":
        dtype = ">u1" if maxval < 256 else ">u2"
        need = count * np.dtype(dtype).itemsize
        raster = data[start:start + need]
        if len(raster) < need:
            raise CorruptDataError(f"{path}: raster has {len(raster)} bytes, expected {need}")
        arr = np.frombuffer(raster, dtype=dtype).astype(np.int64)
    else:
        text = re.sub(rb"#[^\n\r]*", b" ", data[start - 1:])
        try:
            arr = np.array([int(t) for t in text.split()], dtype=np.int64)
        except ValueError:
            raise CorruptDataError(f"{path}: non-numeric sample in plain PGM raster") from None
        if arr.size < count:
            raise CorruptDataError(f"{path}: raster has {arr.size} samples, expected {count}")
        arr = arr[:count]
    if arr.size and arr.max() > maxval:
        raise CorruptDataError(f"{path}: sample {int(arr.max())} exceeds maxval {maxval}")
    # files list the top row first
    return GrayImage(arr.reshape(height, width)[::-1])


def _read_png(path: str) -> GrayImage:
    from PIL import Image

    with Image.open(path) as im:
        mode = im.mode
        if mode in ("RGB", "RGBA", "P", "CMYK", "YCbCr", "LAB", "HSV", "LA", "PA"):
            raise ColorImageError(f"{path}: PNG mode {mode} is not single-channel grayscale")
        if mode != "L":
            raise UnsupportedFormatError(f"{path}: PNG mode {mode} is not 8-bit grayscale")
        arr = np.asarray(im, dtype=np.int64)
    return GrayImage(arr[::-1])


def load_image(path: str | os.PathLike) -> GrayImage:
    """Load a PGM (P2/P5, up to 16-bit) or 8-bit grayscale PNG.

    Rows are flipped so that ``y = 0`` is the bottom row of the picture.
    """
    path = os.fspath(path)
    with open(path, "rb") as fh:
        data = fh.read()
    if data.startswith(_PNG_MAGIC):
        return _read_png(path)
    if data[:2] in (b"P2", b"P5"):
        return _read_pgm(data, path)
    if data[:2] in (b"P1", b"P3", b"P4", b"P6"):
        raise UnsupportedFormatError(f"{path}: netpbm type {data[:2].decode()} is not a grayscale map")
    raise UnsupportedFormatError(f"{path}: unrecognized image format")


def save_pgm(img: GrayImage, path: str | os.PathLike | IO[bytes], plain: bool = False) -> None:
    """Write a PGM; binary P5 by default, plain P2 when ``plain`` is set."""
    maxval = 255 if int(img.pixels.max()) <= 255 else 65535
    rows = img.pixels[::-1]
    if plain:
        lines = [f"P2\n{img.width} {img.height}\n{maxval}\n"]
        lines += [" ".join(str(v) for v in row) + "\n" for row in rows.tolist()]
        payload = "".join(lines).encode("ascii")
    else:
        header = f"P5\n{img.width} {img.height}\n{maxval}\n".encode("ascii")
        dtype = ">u1" if maxval == 255 else ">u2"
        payload = header + np.ascontiguousarray(rows, dtype=dtype).tobytes()
    _write_bytes(path, payload)


def pgm_bytes(img: GrayImage, plain: bool = False) -> bytes:
    buf = io.BytesIO()
    save_pgm(img, buf, plain=plain)
    return buf.getvalue()


def _write_bytes(path, payload: bytes) -> None:
    if hasattr(path, "write"):
        path.write(payload)
    elif os.fspath(path) == "-":
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(payload)


# ---------------------------------------------------------------- VOB1

def _offset_token(code: int, metric: Metric) -> str:
    if code == NEG_INF_CODE:
        return "-inf"
    if metric is Metric.TAXICAB or code == 0:
        return str(code)
    return f"s{code}" if code > 0 else f"-s{-code}"


def format_entrance_sets(result: BifiltrationResult) -> str:
    metric = result.metric
    out = [
        f"VOB1 {metric.value} {result.width} {result.height} {'exact' if result.exact else 'approx'}\n",
        "V " + " ".join(str(int(v)) for v in result.values) + "\n",
    ]
    ptr = result.indptr.tolist()
    vals = result.point_values.tolist()
    offs = result.point_offsets.tolist()
    w = result.width
    for i in range(result.num_pixels):
        toks = " ".join(
            f"({vals[j]},{_offset_token(offs[j], metric)})" for j in range(ptr[i], ptr[i + 1])
        )
        out.append(f"{i % w} {i // w} : {toks}\n")
    return "".join(out)


def write_entrance_sets(result: BifiltrationResult, path: str | os.PathLike | IO[bytes], format: str = "text") -> None:
    """Serialize to VOB1; ``path`` may be ``-`` for standard output."""
    if format != "text":
        raise ValueError(f"unsupported VOB format {format!r}; only 'text' exists")
    _write_bytes(path, format_entrance_sets(result).encode("ascii"))


_TOKEN = re.compile(r"\((\d+),(-inf|-?s\d+|-?\d+)\)")


def _parse_offset(tok: str, metric: Metric, where: str) -> int:
    if tok == "-inf":
        return NEG_INF_CODE
    if metric is Metric.EUCLIDEAN:
        if tok == "0":
            return 0
        m = re.fullmatch(r"(-?)s(\d+)", tok)
        if not m or int(m.group(2)) == 0:
            raise MalformedTokenError(f"{where}: Euclidean offset {tok!r} must be s<m>, -s<m> or 0")
        return -int(m.group(2)) if m.group(1) else int(m.group(2))
    if not re.fullmatch(r"-?\d+", tok):
        raise MalformedTokenError(f"{where}: taxicab offset {tok!r} must be an integer")
    return int(tok)


def parse_entrance_sets(text: str) -> BifiltrationResult:
    lines = text.splitlines()
    if not lines:
        raise VersionMismatchError("empty VOB file")
    head = lines[0].split()
    if not head or head[0] != "VOB1":
        raise VersionMismatchError(f"expected VOB1 header, found {lines[0][:20]!r}")
    if len(head) != 5:
        raise MalformedTokenError(f"header needs 5 fields, found {len(head)}")
    try:
        metric = Metric.parse(head[1])
    except ValueError as exc:
        raise MalformedTokenError(f"header: {exc}") from None
    try:
        width, height = int(head[2]), int(head[3])
    except ValueError:
        raise MalformedTokenError(f"header: bad dimensions {head[2]!r} {head[3]!r}") from None
    if width < 1 or height < 1:
        raise MalformedTokenError(f"header: dimensions {width}x{height} must be positive")
    if head[4] not in ("exact", "approx"):
        raise MalformedTokenError(f"header: exactness flag {head[4]!r} must be exact or approx")
    exact = head[4] == "exact"

    if len(lines) < 2 or not lines[1].startswith("V"):
        raise MalformedTokenError("line 2 must list the value set")
    vtoks = lines[1].split()
    if vtoks[0] != "V" or len(vtoks) < 2:
        raise MalformedTokenError("line 2 must be 'V <v1> <v2> ...'")
    try:
        values = [int(t) for t in vtoks[1:]]
    except ValueError:
        raise MalformedTokenError("value set contains a non-integer") from None
    if any(b <= a for a, b in zip(values, values[1:])):
        raise MalformedTokenError("value set must be strictly ascending")
    vset = set(values)
    vmax = values[-1]

    n = width * height
    body = [ln for ln in lines[2:] if ln.strip()]
    if len(body) != n:
        raise MalformedTokenError(f"expected {n} pixel lines, found {len(body)}")
    indptr = [0]
    pv: list[int] = []
    po: list[int] = []
    for i, line in enumerate(body):
        where = f"line {i + 3}"
        left, sep, right = line.partition(":")
        coords = left.split()
        if not sep or len(coords) != 2:
            raise MalformedTokenError(f"{where}: expected '<x> <y> : bigrades'")
        if (coords[0], coords[1]) != (str(i % width), str(i // width)):
            raise MalformedTokenError(f"{where}: pixel {coords[0]} {coords[1]} out of order")
        toks = right.split()
        prev_v = None
        prev_o = None
        for tok in toks:
            m = _TOKEN.fullmatch(tok)
            if not m:
                raise MalformedTokenError(f"{where}: malformed bigrade token {tok!r}")
            v = int(m.group(1))
            o = _parse_offset(m.group(2), metric, where)
            if v not in vset:
                raise MalformedTokenError(f"{where}: value {v} not in the value set")
            if prev_v is not None and not (v > prev_v and o < prev_o):
                raise StaircaseViolationError(f"{where}: {tok} breaks the staircase order")
            prev_v, prev_o = v, o
            pv.append(v)
            po.append(o)
        if prev_v is None or prev_o != NEG_INF_CODE or prev_v != vmax:
            raise StaircaseViolationError(f"{where}: entrance set must end with ({vmax},-inf)")
        indptr.append(len(pv))
    return BifiltrationResult(metric, width, height, np.asarray(values), np.asarray(indptr),
                              np.asarray(pv, dtype=np.int64), np.asarray(po, dtype=np.int64), exact)


def read_entrance_sets(path: str | os.PathLike) -> BifiltrationResult:
    """Inverse of :func:`write_entrance_sets`."""
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        text = raw.decode("ascii")
    except UnicodeDecodeError:
        raise MalformedTokenError(f"{os.fspath(path)}: VOB files are ASCII") from None
    return parse_entrance_sets(text)
