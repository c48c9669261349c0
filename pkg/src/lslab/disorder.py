"""Poisson point configurations on a finite box.

A realization is a set of points thrown on the open box (-L/2, +L/2): the
point count is Poisson with mean nu*L and, given the count, the positions
are iid uniform (the exact conditional law of the homogeneous process).
The points cut the box into subintervals; interior gaps are iid Exp(nu)
while the two edge pieces are clipped by the box boundary.

Streams are counter-based: every (base_seed, realization_index) pair maps
to its own generator through a 64-bit finalizer, so ensemble members can be
produced in any order, in parallel, and replayed individually.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "EnsembleSeed",
    "DisorderRealization",
    "sample_realization",
    "longest_interval",
    "count_intervals_at_least",
    "interior_gaps",
    "realization_to_text",
    "realization_from_text",
]

_MASK64 = (1 << 64) - 1
_GOLDEN64 = 0x9E3779B97F4A7C15
_TILE_RTOL = 1e-9


def _splitmix64(state: int) -> int:
    # full-avalanche 64-bit finalizer of the splitmix64 counter sequence
    z = state & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


@dataclass(frozen=True)
class EnsembleSeed:
    """Reproducible per-realization stream label.

    The derived stream seed is a pure function of base_seed and
    realization_index, nothing else.
    """

    base_seed: int
    realization_index: int = 0

    def __post_init__(self):
        if not 0 <= int(self.base_seed) <= _MASK64:
            raise ValueError("base_seed must fit in an unsigned 64-bit word")
        if int(self.realization_index) < 0:
            raise ValueError("realization_index must be nonnegative")

    def stream_seed(self) -> int:
        state = (int(self.base_seed) + (int(self.realization_index) + 1) * _GOLDEN64) & _MASK64
        return _splitmix64(state)

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.stream_seed()))


@dataclass(frozen=True)
class DisorderRealization:
    """One point configuration and its interval decomposition.

    intervals is an (n_intervals, 3) array with rows (left, right, length)
    that tile the box; zero-length pieces are dropped at construction.
    """

    intensity: float
    box_length: float
    points: np.ndarray
    intervals: np.ndarray
    seed_info: EnsembleSeed

    def __post_init__(self):
        if self.intensity <= 0 or self.box_length <= 0:
            raise ValueError("intensity and box_length must be positive")
        half = self.box_length / 2.0
        pts = self.points
        if pts.ndim != 1:
            raise ValueError("points must be a 1-d array")
        if pts.size:
            if np.any(np.diff(pts) <= 0):
                raise ValueError("points must be strictly increasing")
            if pts[0] <= -half or pts[-1] >= half:
                raise ValueError("points must lie inside the open box")
        iv = self.intervals
        if iv.ndim != 2 or iv.shape[1] != 3:
            raise ValueError("intervals must be an (n, 3) array of (left, right, length)")
        if not 1 <= iv.shape[0] <= pts.size + 1:
            raise ValueError("interval count inconsistent with point count")
        lengths = iv[:, 2]
        if np.any(lengths <= 0):
            raise ValueError("interval lengths must be positive")
        if abs(float(lengths.sum()) - self.box_length) > _TILE_RTOL * self.box_length:
            raise ValueError("intervals do not tile the box")
        # realizations are immutable once built; shared freely across workers
        self.points.setflags(write=False)
        self.intervals.setflags(write=False)

    @property
    def n_points(self) -> int:
        return int(self.points.size)

    @property
    def n_intervals(self) -> int:
        return int(self.intervals.shape[0])

    @property
    def interval_lengths(self) -> np.ndarray:
        return self.intervals[:, 2]


def _assemble(intensity: float, box_length: float, points: np.ndarray,
              seed: EnsembleSeed) -> DisorderRealization:
    half = box_length / 2.0
    edges = np.concatenate(([-half], points, [half]))
    lengths = np.diff(edges)
    keep = lengths > 0.0
    intervals = np.column_stack((edges[:-1][keep], edges[1:][keep], lengths[keep]))
    return DisorderRealization(float(intensity), float(box_length),
                               np.asarray(points, dtype=float), intervals, seed)


def sample_realization(intensity: float, box_length: float,
                       seed: EnsembleSeed) -> DisorderRealization:
    """Draw one realization at the given intensity on a box of this length.

    Count first (Poisson with mean intensity*box_length), then that many
    sorted uniforms.  Coincident points are merged and points falling on a
    box edge are discarded, so the interval decomposition never contains a
    zero-length piece.
    """
    if intensity <= 0:
        raise ValueError("intensity must be positive")
    if box_length <= 0:
        raise ValueError("box_length must be positive")
    rng = seed.generator()
    count = int(rng.poisson(intensity * box_length))
    half = box_length / 2.0
    pts = rng.uniform(-half, half, size=count)
    pts = np.unique(pts[(pts > -half) & (pts < half)])
    return _assemble(intensity, box_length, pts, seed)


def longest_interval(realization: DisorderRealization) -> tuple[float, int]:
    """Maximum interval length and the first index attaining it."""
    lengths = realization.interval_lengths
    idx = int(np.argmax(lengths))
    return float(lengths[idx]), idx


def count_intervals_at_least(realization: DisorderRealization, threshold: float) -> int:
    """Number of intervals with length >= threshold."""
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    return int(np.count_nonzero(realization.interval_lengths >= threshold))


def interior_gaps(realization: DisorderRealization) -> np.ndarray:
    """Gaps between consecutive points (edge pieces excluded)."""
    return np.diff(realization.points)


def realization_to_text(realization: DisorderRealization) -> str:
    """Line-oriented dump: header fields, then one point per line."""
    r = realization
    lines = [
        "# disorder realization",
        f"intensity = {r.intensity:.17g}",
        f"box_length = {r.box_length:.17g}",
        f"base_seed = {r.seed_info.base_seed}",
        f"realization_index = {r.seed_info.realization_index}",
        f"n_points = {r.n_points}",
    ]
    lines.extend(f"{p:.17g}" for p in r.points)
    return "\n".join(lines) + "\n"


def realization_from_text(text: str) -> DisorderRealization:
    """Inverse of realization_to_text; intervals are rebuilt from the points."""
    header: dict[str, str] = {}
    pts: list[float] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" in line:
            key, _, val = line.partition("=")
            header[key.strip()] = val.strip()
        else:
            pts.append(float(line))
    try:
        intensity = float(header["intensity"])
        box_length = float(header["box_length"])
        seed = EnsembleSeed(int(header["base_seed"]), int(header["realization_index"]))
    except KeyError as err:
        raise ValueError(f"missing realization header field {err}") from None
    if "n_points" in header and int(header["n_points"]) != len(pts):
        raise ValueError("point count does not match the n_points header")
    return _assemble(intensity, box_length, np.asarray(pts, dtype=float), seed)
