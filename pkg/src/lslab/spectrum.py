"""Spectrum of the one-particle Hamiltonian on a disorder realization.

The operator decomposes over the subintervals with a wall at every point
and at the box edges; on a piece of length l the eigenvalues are
pi^2 n^2 / l^2 (n >= 1) with normalized sine eigenfunctions supported on
that piece alone.  A Spectrum is the energy-sorted union of all modes up
to a finite cutoff, stored column-wise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .disorder import DisorderRealization, longest_interval

__all__ = [
    "EmptySpectrumError",
    "EigenMode",
    "Spectrum",
    "dirichlet_energy",
    "build_spectrum",
    "ground_state_energy",
    "ground_mode",
    "eigenfunction_value",
    "mode_overlap",
    "weyl_mode_count",
    "default_cutoff",
    "cutoff_is_converged",
    "spectrum_to_text",
]

PI = math.pi
PI_SQ = math.pi ** 2

# neglected-Boltzmann-mass target used by default_cutoff / cutoff_is_converged
TAIL_WEIGHT_TARGET = 1e-12


class EmptySpectrumError(ValueError):
    """The requested energy cutoff lies below the ground-state energy."""


def dirichlet_energy(mode_number, length):
    """pi^2 n^2 / l^2, evaluated through one floating path for scalars and arrays."""
    n = np.asarray(mode_number, dtype=float)
    l = np.asarray(length, dtype=float)
    return PI_SQ * n**2 / l**2


@dataclass(frozen=True)
class EigenMode:
    """One Dirichlet mode: which interval, which harmonic, what energy."""

    interval_index: int
    mode_number: int
    energy: float
    interval_left: float
    interval_length: float

    def __post_init__(self):
        if self.mode_number < 1:
            raise ValueError("mode_number must be >= 1")
        if self.interval_length <= 0:
            raise ValueError("interval_length must be positive")


@dataclass(frozen=True)
class Spectrum:
    """Energy-sorted finite spectrum plus the interval table it came from."""

    energies: np.ndarray
    interval_indices: np.ndarray
    mode_numbers: np.ndarray
    interval_lefts: np.ndarray
    interval_lengths: np.ndarray
    energy_cutoff: float
    box_length: float
    realization_ref: str = ""

    def __post_init__(self):
        if self.energies.size == 0:
            raise EmptySpectrumError("spectrum contains no modes")
        if np.any(np.diff(self.energies) < 0):
            raise ValueError("energies must be sorted ascending")
        for arr in (self.energies, self.interval_indices, self.mode_numbers,
                    self.interval_lefts, self.interval_lengths):
            arr.setflags(write=False)

    def __len__(self) -> int:
        return int(self.energies.size)

    @property
    def ground_energy(self) -> float:
        return float(self.energies[0])

    def mode(self, k: int) -> EigenMode:
        j = int(self.interval_indices[k])
        return EigenMode(j, int(self.mode_numbers[k]), float(self.energies[k]),
                         float(self.interval_lefts[j]), float(self.interval_lengths[j]))


def _realization_ref(realization: DisorderRealization) -> str:
    s = realization.seed_info
    return (f"nu={realization.intensity:.17g};L={realization.box_length:.17g};"
            f"seed={s.base_seed}:{s.realization_index}")


def build_spectrum(realization: DisorderRealization, energy_cutoff: float) -> Spectrum:
    """All modes with energy <= cutoff, sorted by (energy, interval, harmonic).

    Raises EmptySpectrumError when the cutoff is below pi^2 / l_max^2.
    """
    if energy_cutoff <= 0 or not math.isfinite(energy_cutoff):
        raise ValueError("energy_cutoff must be positive and finite")
    lefts = realization.intervals[:, 0].copy()
    lengths = realization.intervals[:, 2].copy()
    n_max = np.floor(lengths * (math.sqrt(energy_cutoff) / PI)).astype(np.int64)
    # repair floating-point boundary cases against the exact energy formula
    while True:
        bump = dirichlet_energy(n_max + 1, lengths) <= energy_cutoff
        if not bump.any():
            break
        n_max[bump] += 1
    while True:
        drop = (n_max > 0) & (dirichlet_energy(np.maximum(n_max, 1), lengths) > energy_cutoff)
        if not drop.any():
            break
        n_max[drop] -= 1
    total = int(n_max.sum())
    if total == 0:
        raise EmptySpectrumError(
            f"cutoff {energy_cutoff:g} lies below the ground-state energy "
            f"{ground_state_energy(realization):g}")
    interval_idx = np.repeat(np.arange(n_max.size, dtype=np.int64), n_max)
    starts = np.concatenate(([0], np.cumsum(n_max)[:-1]))
    mode_num = np.arange(total, dtype=np.int64) - np.repeat(starts, n_max) + 1
    energies = dirichlet_energy(mode_num, lengths[interval_idx])
    order = np.lexsort((mode_num, interval_idx, energies))
    return Spectrum(energies[order], interval_idx[order], mode_num[order],
                    lefts, lengths, float(energy_cutoff), realization.box_length,
                    _realization_ref(realization))


def ground_state_energy(realization: DisorderRealization) -> float:
    """pi^2 / l_max^2: the first harmonic of the longest interval."""
    l_max, _ = longest_interval(realization)
    return float(dirichlet_energy(1, l_max))


def ground_mode(realization: DisorderRealization) -> EigenMode:
    """The lowest mode as an EigenMode record."""
    l_max, idx = longest_interval(realization)
    return EigenMode(idx, 1, float(dirichlet_energy(1, l_max)),
                     float(realization.intervals[idx, 0]), l_max)


def eigenfunction_value(mode: EigenMode, x):
    """sqrt(2/l) sin(n pi (x - left)/l) inside the mode's interval, 0 outside."""
    x = np.asarray(x, dtype=float)
    t = (x - mode.interval_left) / mode.interval_length
    amp = math.sqrt(2.0 / mode.interval_length)
    val = np.where((t > 0.0) & (t < 1.0),
                   amp * np.sin(mode.mode_number * PI * t), 0.0)
    return float(val) if val.ndim == 0 else val


def mode_overlap(a: EigenMode, b: EigenMode) -> float:
    """Closed-form L2 inner product of two modes (sine product identity)."""
    if a.interval_index != b.interval_index:
        return 0.0
    n, m = a.mode_number, b.mode_number
    if n == m:
        return 1.0 - math.sin(2.0 * PI * n) / (2.0 * PI * n)
    return (math.sin((n - m) * PI) / ((n - m) * PI)
            - math.sin((n + m) * PI) / ((n + m) * PI))


def weyl_mode_count(lengths, energy: float) -> int:
    """Exact mode count below an energy: sum of floor(l sqrt(E)/pi)."""
    if energy <= 0:
        return 0
    lengths = np.asarray(lengths, dtype=float)
    return int(np.floor(lengths * (math.sqrt(energy) / PI)).sum())


def default_cutoff(realization: DisorderRealization, beta: float) -> float:
    """Cutoff with a comfortably negligible Boltzmann tail at this beta.

    Picks E_cut so that exp(-beta (E_cut - e0)) times the number of modes
    below 4 E_cut stays under TAIL_WEIGHT_TARGET (with a factor-2 margin).
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    e0 = ground_state_energy(realization)
    lengths = realization.interval_lengths
    log_target = math.log(TAIL_WEIGHT_TARGET) + math.log(0.5)
    ecut = e0 + (math.log(2.0) - log_target) / beta
    for _ in range(64):
        count = max(weyl_mode_count(lengths, 4.0 * ecut), 1)
        new = e0 + (math.log(count) - log_target) / beta
        if new <= ecut * (1.0 + 1e-12):
            break
        ecut = new
    return ecut


def cutoff_is_converged(spectrum: Spectrum, beta: float) -> bool:
    """Whether the truncated Boltzmann weight is negligible at this beta."""
    if beta <= 0:
        raise ValueError("beta must be positive")
    if not math.isfinite(spectrum.energy_cutoff):
        return True
    count = max(weyl_mode_count(spectrum.interval_lengths, 4.0 * spectrum.energy_cutoff), 1)
    return math.exp(-beta * (spectrum.energy_cutoff - spectrum.ground_energy)) * count \
        < TAIL_WEIGHT_TARGET


def spectrum_to_text(spectrum: Spectrum) -> str:
    """Columnar dump (energy, interval_index, mode_number), energy-sorted."""
    lines = ["energy,interval_index,mode_number"]
    for e, j, n in zip(spectrum.energies, spectrum.interval_indices, spectrum.mode_numbers):
        lines.append(f"{e:.17g},{int(j)},{int(n)}")
    return "\n".join(lines) + "\n"
