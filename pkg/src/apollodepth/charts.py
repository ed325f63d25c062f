"""Raster charts, sections, and area estimates for the depth fractal.

The per-pixel engines come in two flavors:

* the faithful chart loop (``bitexact=True``): integer pixel seeds
  ``(n, m, 1000)``, ascending sort each step, replace the last entry,
  stop on ``new <= 0`` or at the step cap, gray ``min(255, 30*depth)``,
  written symmetrically at (n, m) and (m, n);
* the general window mode: pixel centers map into the moduli window and
  run the same positional float process as :func:`~.descartes.depth_float`
  (zero rule for nonpositive coordinates, underflow guard included).

Both are vectorized with numpy; the scalar references live in
:func:`bitexact_depth` and :func:`~.descartes.depth_float`, and the
vectorized paths reproduce them bit for bit, which is what makes
multi-worker renders byte-identical to single-worker ones.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import multiprocessing

import numpy as np

from .descartes import DEFAULT_CAP, UNDERFLOW_ABS, UNDERFLOW_REL, depth_exact, depth_float

WORKERS_ENV = "APOLLODEPTH_WORKERS"
BITEXACT_SCALE = 1000.0
SIZE_SENTINEL = (255, 0, 255)

TRANSFER_NAMES = ("gray30", "gray30-wrap", "clamp-linear", "log", "sin", "cyclic-palette")
CHART_MODES = ("depth", "size", "barycentric", "squared")

__all__ = [
    "BITEXACT_SCALE",
    "ChartSpec",
    "Image",
    "SIZE_SENTINEL",
    "SectionSample",
    "bitexact_depth",
    "area_estimate",
    "parabolic_region_area",
    "read_ppm",
    "render_barycentric",
    "render_chart",
    "render_depth_chart",
    "render_size_chart",
    "render_squared",
    "section_profile",
    "write_csv",
    "write_ppm",
]


@dataclass(frozen=True)
class ChartSpec:
    """Parameters of one chart render."""

    width: int = 1000
    height: int = 1000
    window: Tuple[float, float, float, float] = (0.0, 0.0, 1.0, 1.0)
    mode: str = "depth"
    cap: int = DEFAULT_CAP
    transfer: str = "gray30"
    strict_boundary: bool = False
    bitexact: bool = False

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("image must be at least 1x1")
        x0, y0, x1, y1 = self.window
        if not (x1 > x0 and y1 > y0):
            raise ValueError("window must have positive area")
        if self.cap < 1:
            raise ValueError("cap must be >= 1")
        if self.mode not in CHART_MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.transfer not in TRANSFER_NAMES:
            raise ValueError(f"unknown transfer {self.transfer!r}")
        if self.bitexact and self.mode != "depth":
            raise ValueError("bitexact applies to depth charts only")


class Image:
    """Row-major 8-bit RGB raster."""

    def __init__(self, width: int, height: int, data: Optional[bytearray] = None):
        self.width = width
        self.height = height
        if data is None:
            data = bytearray(3 * width * height)
        if len(data) != 3 * width * height:
            raise ValueError("pixel buffer length must be 3*width*height")
        self.data = data

    def set_px(self, x: int, y: int, rgb: Tuple[int, int, int]) -> None:
        base = 3 * (y * self.width + x)
        self.data[base : base + 3] = bytes(rgb)

    def get_px(self, x: int, y: int) -> Tuple[int, int, int]:
        base = 3 * (y * self.width + x)
        return tuple(self.data[base : base + 3])

    def to_array(self) -> np.ndarray:
        return np.frombuffer(bytes(self.data), dtype=np.uint8).reshape(
            self.height, self.width, 3
        )

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "Image":
        arr = np.ascontiguousarray(arr, dtype=np.uint8)
        h, w, _ = arr.shape
        return cls(w, h, bytearray(arr.tobytes()))


def write_ppm(img: Image, path) -> None:
    """Binary P6, maxval 255."""
    try:
        with open(path, "wb") as fh:
            fh.write(f"P6\n{img.width} {img.height}\n255\n".encode("ascii"))
            fh.write(bytes(img.data))
    except OSError as exc:
        raise OSError(f"cannot write PPM to {path}: {exc}") from exc


def read_ppm(path) -> Image:
    with open(path, "rb") as fh:
        magic = fh.readline().strip()
        if magic != b"P6":
            raise ValueError(f"{path}: not a binary PPM")
        dims = fh.readline().split()
        maxval = int(fh.readline())
        if maxval != 255:
            raise ValueError(f"{path}: unsupported maxval {maxval}")
        w, h = int(dims[0]), int(dims[1])
        return Image(w, h, bytearray(fh.read(3 * w * h)))


def write_csv(rows: Iterable[Sequence], path, header: Sequence[str]) -> None:
    """CSV with a header row; an empty iterable writes the header alone."""
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc


# --- scalar reference for the faithful chart loop ---------------------------

def bitexact_depth(n: float, m: float, cap: int = DEFAULT_CAP,
                     scale: float = BITEXACT_SCALE) -> int:
    """One pixel of the faithful chart: the counter value of the original
    sort-and-replace loop on the seed (n, m, scale).  No zero shortcut, no
    underflow guard; capped pixels simply return ``cap``."""
    t = [float(n), float(m), float(scale)]
    new = 1.0
    depth = 0
    while new > 0.0 and depth < cap:
        depth += 1
        t.sort()
        a, b, c = t
        new = a + b + c - 2.0 * math.sqrt(a * b + b * c + c * a)
        t[2] = new
    return depth


# --- vectorized engines ------------------------------------------------------

def _bitexact_depths(ns: np.ndarray, ms: np.ndarray, cap: int) -> np.ndarray:
    """Vectorized twin of :func:`bitexact_depth` (identical float ops in
    identical order, so results agree bitwise)."""
    count = ns.size
    depth = np.zeros(count, dtype=np.int32)
    t0 = ns.astype(np.float64)
    t1 = ms.astype(np.float64)
    t2 = np.full(count, BITEXACT_SCALE)
    idx = np.arange(count)
    for _ in range(cap):
        if idx.size == 0:
            break
        depth[idx] += 1
        lo01 = np.minimum(t0, t1)
        hi01 = np.maximum(t0, t1)
        b = np.minimum(hi01, t2)
        c = np.maximum(hi01, t2)
        a = np.minimum(lo01, b)
        b = np.maximum(lo01, b)
        new = a + b + c - 2.0 * np.sqrt(a * b + b * c + c * a)
        keep = new > 0.0
        t0, t1, t2 = a[keep], b[keep], new[keep]
        idx = idx[keep]
    return depth


def _float_depths(
    t0: np.ndarray,
    t1: np.ndarray,
    t2: np.ndarray,
    cap: int,
    underflow_rel: float = UNDERFLOW_REL,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized twin of :func:`~.descartes.depth_float`.

    Returns ``(depth, major, capped)``: depth is the step count (0 for
    seeds with a nonpositive entry, ``cap`` for capped pixels), ``major``
    the first nonpositive value (NaN when capped or zero-depth), ``capped``
    the cap/underflow mask.
    """
    count = t0.size
    depth = np.zeros(count, dtype=np.int32)
    major = np.full(count, np.nan)
    capped = np.zeros(count, dtype=bool)
    alive = (t0 > 0.0) & (t1 > 0.0) & (t2 > 0.0)
    major[~alive] = np.minimum(np.minimum(t0, t1), t2)[~alive]
    floor = np.maximum(
        underflow_rel * np.maximum(np.maximum(t0, t1), t2), UNDERFLOW_ABS
    )
    idx = np.arange(count)[alive]
    t0, t1, t2, floor = t0[alive], t1[alive], t2[alive], floor[alive]
    steps = 0
    while idx.size and steps < cap:
        steps += 1
        q = t0 * t1 + t1 * t2 + t2 * t0
        s = t0 + t1 + t2
        new = s - 2.0 * np.sqrt(q)
        # positional argmax, lowest index wins ties
        first = np.where(t1 > t0, t1, t0)
        pick2 = t2 > first
        pick1 = (~pick2) & (t1 > t0)
        t2 = np.where(pick2, new, t2)
        t1 = np.where(pick1, new, t1)
        t0 = np.where(pick2 | pick1, t0, new)
        done = new <= 0.0
        under = (~done) & (new < floor)
        depth[idx[done]] = steps
        major[idx[done]] = new[done]
        capped[idx[under]] = True
        depth[idx[under]] = cap
        keep = ~(done | under)
        t0, t1, t2, floor, idx = t0[keep], t1[keep], t2[keep], floor[keep], idx[keep]
    if idx.size:
        capped[idx] = True
        depth[idx] = cap
    return depth, major, capped


# --- transfers ----------------------------------------------------------------

def _apply_transfer(name: str, values: np.ndarray) -> np.ndarray:
    """Map chart values to (N, 3) uint8 colors."""
    v = np.asarray(values, dtype=np.float64)
    if name == "gray30":
        g = np.clip(30.0 * v, 0, 255).astype(np.uint8)
    elif name == "gray30-wrap":
        g = np.mod(np.round(30.0 * v), 256).astype(np.uint8)
    elif name == "clamp-linear":
        g = np.clip(255.0 * np.abs(v), 0, 255).astype(np.uint8)
    elif name == "log":
        g = np.clip(96.0 * np.log1p(np.abs(v)), 0, 255).astype(np.uint8)
    elif name == "sin":
        g = np.round(127.5 * (1.0 + np.sin(10.0 * v))).astype(np.uint8)
    elif name == "cyclic-palette":
        from matplotlib.colors import hsv_to_rgb

        hue = np.mod(0.15 * v, 1.0)
        hsv = np.stack([hue, np.full_like(hue, 0.85), np.ones_like(hue)], axis=-1)
        return (hsv_to_rgb(hsv) * 255).round().astype(np.uint8)
    else:
        raise ValueError(f"unknown transfer {name!r}")
    return np.repeat(g[:, None], 3, axis=1)


# --- renderers ----------------------------------------------------------------

def _resolve_workers(workers: Optional[int]) -> int:
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1"))
    return max(1, workers)


def _bitexact_band(args) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    spec, n_lo, n_hi = args
    counts = np.arange(n_lo, n_hi, dtype=np.int64) + 1
    ns = np.repeat(np.arange(n_lo, n_hi, dtype=np.int64), counts)
    ms = np.concatenate([np.arange(n + 1, dtype=np.int64) for n in range(n_lo, n_hi)])
    depths = _bitexact_depths(ns, ms, spec.cap)
    if spec.strict_boundary:
        depths[(ms == 0) | (ns == 0)] = 0
    grays = np.clip(30 * depths, 0, 255).astype(np.uint8)
    return ns, ms, grays


def _render_bitexact(spec: ChartSpec, workers: int) -> Image:
    size = spec.width
    bands = _split_bands(size, workers * 4 if workers > 1 else 1)
    tasks = [(spec, lo, hi) for lo, hi in bands]
    gray = np.zeros((size, size), dtype=np.uint8)
    for ns, ms, grays in _map_tasks(_bitexact_band, tasks, workers):
        gray[ms, ns] = grays
        gray[ns, ms] = grays
    return Image.from_array(np.repeat(gray[:, :, None], 3, axis=2))


def _window_grid(spec: ChartSpec, row_lo: int, row_hi: int):
    x0, y0, x1, y1 = spec.window
    cols = (np.arange(spec.width) + 0.5) * ((x1 - x0) / spec.width) + x0
    rows = y1 - (np.arange(row_lo, row_hi) + 0.5) * ((y1 - y0) / spec.height)
    xs = np.tile(cols, row_hi - row_lo)
    ys = np.repeat(rows, spec.width)
    return xs, ys


def _general_band(args) -> Tuple[int, np.ndarray]:
    spec, row_lo, row_hi = args
    xs, ys = _window_grid(spec, row_lo, row_hi)
    if spec.mode == "squared":
        xs, ys = xs * xs, ys * ys
    if spec.mode == "barycentric":
        rgb = _barycentric_band(spec, xs, ys)
    elif spec.mode == "size":
        _, major, capped = _float_depths(np.ones_like(xs), xs, ys, spec.cap)
        values = np.where(np.isnan(major), 0.0, major)
        rgb = _apply_transfer(spec.transfer, values)
        rgb[capped] = SIZE_SENTINEL
    else:
        depth, _, _ = _float_depths(np.ones_like(xs), xs, ys, spec.cap)
        rgb = _apply_transfer(spec.transfer, depth)
    return row_lo, rgb.reshape(row_hi - row_lo, spec.width, 3)


def _barycentric_band(spec: ChartSpec, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    # Equilateral simplex {a+b+c=1} embedded with corners (0,0), (1,0),
    # (1/2, sqrt(3)/2); points outside render black.
    h = math.sqrt(3.0) / 2.0
    b2 = ys / h
    b1 = xs - 0.5 * b2
    b0 = 1.0 - b1 - b2
    inside = (b0 >= 0.0) & (b1 >= 0.0) & (b2 >= 0.0)
    depth = np.zeros(xs.size, dtype=np.int32)
    if inside.any():
        d, _, _ = _float_depths(b0[inside], b1[inside], b2[inside], spec.cap)
        depth[inside] = d
    rgb = _apply_transfer(spec.transfer, depth)
    rgb[~inside] = (0, 0, 0)
    return rgb


def _split_bands(total: int, parts: int) -> List[Tuple[int, int]]:
    parts = min(max(1, parts), total)
    step = (total + parts - 1) // parts
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def _map_tasks(fn, tasks, workers: int):
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        return list(pool.map(fn, tasks))


def render_chart(spec: ChartSpec, workers: Optional[int] = None) -> Image:
    """Render any chart mode; deterministic and independent of worker count."""
    workers = _resolve_workers(workers)
    if spec.bitexact:
        return _render_bitexact(spec, workers)
    img = Image(spec.width, spec.height)
    bands = _split_bands(spec.height, workers * 4 if workers > 1 else 1)
    tasks = [(spec, lo, hi) for lo, hi in bands]
    arr = np.zeros((spec.height, spec.width, 3), dtype=np.uint8)
    for row_lo, block in _map_tasks(_general_band, tasks, workers):
        arr[row_lo : row_lo + block.shape[0]] = block
    return Image.from_array(arr)


def render_depth_chart(spec: ChartSpec, workers: Optional[int] = None) -> Image:
    return render_chart(replace(spec, mode="depth"), workers)


def render_size_chart(spec: ChartSpec, workers: Optional[int] = None) -> Image:
    return render_chart(replace(spec, mode="size", bitexact=False), workers)


def render_barycentric(spec: ChartSpec, workers: Optional[int] = None) -> Image:
    return render_chart(replace(spec, mode="barycentric", bitexact=False), workers)


def render_squared(spec: ChartSpec, workers: Optional[int] = None) -> Image:
    return render_chart(replace(spec, mode="squared", bitexact=False), workers)


# --- sections, areas ----------------------------------------------------------

@dataclass(frozen=True)
class SectionSample:
    y: Fraction
    depth: Optional[int]
    capped: bool

    @property
    def ln_depth(self) -> Optional[float]:
        if self.capped or not self.depth:
            return None
        return math.log(self.depth)


def section_profile(
    x0,
    y_from=0,
    y_to=None,
    samples: int = 1000,
    cap: int = 2000,
    exact: bool = True,
) -> List[SectionSample]:
    """Depth along the vertical segment x = x0, y in [y_from, y_to].

    ``y_to`` defaults to the parabolic boundary (1 − √x0)², the top of the
    cascade above the x-axis.  Exact mode evaluates every rational sample
    point exactly; float mode runs the float engine.
    """
    if samples < 2:
        raise ValueError("samples must be >= 2")
    x0 = Fraction(x0)
    if y_to is None:
        y_to = Fraction((1.0 - math.sqrt(float(x0))) ** 2)
    y_from, y_to = Fraction(y_from), Fraction(y_to)
    step = (y_to - y_from) / (samples - 1)
    out = []
    for i in range(samples):
        y = y_from + i * step
        if exact:
            res = depth_exact((1, x0, y), cap)
        else:
            res = depth_float((1.0, float(x0), float(y)), cap)
        out.append(SectionSample(y=y, depth=res.depth, capped=res.capped))
    return out


def section_rows(profile: List[SectionSample]) -> List[list]:
    """CSV rows (y, depth, capped, ln_depth) for a section profile.
    The sample ordinate is emitted as a round-trippable decimal."""
    rows = []
    for s in profile:
        ln = s.ln_depth
        rows.append(
            [repr(float(s.y)), "" if s.depth is None else s.depth, int(s.capped),
             "" if ln is None else f"{ln:.12g}"]
        )
    return rows


SECTION_HEADER = ("y", "depth", "capped", "ln_depth")


def parabolic_region_area() -> Fraction:
    """Exact area of the depth-1 region inside the unit square.

    For fixed x the region is (1−√x)² <= y <= 1, so the area is
    ∫₀¹ (2√x − x) dx = 4/3 − 1/2 = 5/6.
    """
    return Fraction(4, 3) - Fraction(1, 2)


def area_estimate(
    depth_value: int,
    samples: int,
    rng_seed: int,
    cap: int = DEFAULT_CAP,
) -> float:
    """Monte-Carlo fraction of the unit square with the given depth,
    deterministic under ``rng_seed``."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(rng_seed)
    xs = rng.random(samples)
    ys = rng.random(samples)
    depth, _, capped = _float_depths(np.ones(samples), xs, ys, cap)
    hits = (depth == depth_value) & ~capped
    return float(hits.sum()) / samples
