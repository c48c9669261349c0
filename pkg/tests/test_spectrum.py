"""Dirichlet spectra: construction, eigenfunctions, cutoff policy."""

import math

import numpy as np
import pytest
from scipy import integrate

from lslab.disorder import EnsembleSeed, sample_realization
from lslab.spectrum import (
    PI_SQ,
    EigenMode,
    EmptySpectrumError,
    Spectrum,
    build_spectrum,
    cutoff_is_converged,
    default_cutoff,
    dirichlet_energy,
    eigenfunction_value,
    ground_mode,
    ground_state_energy,
    mode_overlap,
    spectrum_to_text,
    weyl_mode_count,
)

from conftest import make_realization


def test_dirichlet_energy_formula():
    assert dirichlet_energy(1, 1.0) == PI_SQ
    assert dirichlet_energy(3, 2.0) == pytest.approx(9.0 * PI_SQ / 4.0, rel=1e-15)
    np.testing.assert_allclose(dirichlet_energy(np.array([1, 2]), 1.0),
                               [PI_SQ, 4 * PI_SQ], rtol=1e-15)


def test_single_interval_pi_gives_square_energies():
    r = make_realization([], math.pi)
    s = build_spectrum(r, 10.0)
    np.testing.assert_allclose(s.energies, [1.0, 4.0, 9.0], rtol=1e-13)
    assert list(s.mode_numbers) == [1, 2, 3]


def test_two_interval_spectrum_with_degeneracy():
    # lengths (1, 2): energies pi^2/4, pi^2 (twice), 9 pi^2/4, ...
    r = make_realization([-0.5], 3.0)
    s = build_spectrum(r, 23.0)
    np.testing.assert_allclose(
        s.energies, [PI_SQ / 4, PI_SQ, PI_SQ, 9 * PI_SQ / 4], rtol=1e-13)
    degenerate = np.isclose(s.energies, PI_SQ, rtol=1e-12)
    assert degenerate.sum() == 2
    # deterministic tie-break: lower interval index first
    assert list(s.interval_indices[degenerate]) == [0, 1]
    # a tighter cutoff must exclude 9 pi^2/4 (~22.2) entirely
    s12 = build_spectrum(r, 12.0)
    np.testing.assert_allclose(s12.energies, [PI_SQ / 4, PI_SQ, PI_SQ], rtol=1e-13)
    assert s12.energies.max() <= 12.0


def test_ground_energy_is_first_entry():
    r = sample_realization(1.0, 200.0, EnsembleSeed(11, 0))
    s = build_spectrum(r, default_cutoff(r, 1.0))
    assert s.ground_energy == s.energies[0]
    assert s.ground_energy == pytest.approx(ground_state_energy(r), rel=1e-15)


def test_ground_state_energy_values():
    assert ground_state_energy(make_realization([], math.pi)) == pytest.approx(1.0, rel=1e-14)
    r = make_realization([], 10.0)
    assert ground_state_energy(r) == pytest.approx(PI_SQ / 100.0, rel=1e-15)
    assert ground_state_energy(r) == pytest.approx(0.0987, abs=2e-4)


def test_ground_mode_matches_spectrum_head():
    r = sample_realization(1.0, 300.0, EnsembleSeed(4, 2))
    s = build_spectrum(r, default_cutoff(r, 1.0))
    gm = ground_mode(r)
    head = s.mode(0)
    assert gm == head


def test_median_ground_energy_scales_like_inverse_log_squared():
    # nu=1, rho=1, N=10^4: median of pi^2/l_max^2 within a factor 4 of
    # pi^2 nu^2 / ln^2 L.
    L = 1e4
    vals = [ground_state_energy(sample_realization(1.0, L, EnsembleSeed(6, i)))
            for i in range(100)]
    target = PI_SQ / math.log(L) ** 2
    ratio = np.median(vals) / target
    assert 0.25 < ratio < 4.0


def test_eigenfunction_midpoint_and_boundary():
    mode = EigenMode(0, 1, PI_SQ, 0.0, 1.0)
    assert eigenfunction_value(mode, 0.5) == pytest.approx(math.sqrt(2.0), rel=1e-15)
    assert eigenfunction_value(mode, 0.0) == 0.0
    assert eigenfunction_value(mode, 1.0) == 0.0
    assert eigenfunction_value(mode, -3.7) == 0.0
    assert eigenfunction_value(mode, 1.0001) == 0.0


@pytest.mark.parametrize("left,length,n", [(0.0, 1.0, 1), (0.3, 1.4, 3), (-7.0, 2.5, 5)])
def test_eigenfunction_normalization_by_quadrature(left, length, n):
    e = float(dirichlet_energy(n, length))
    mode = EigenMode(0, n, e, left, length)
    val, _ = integrate.quad(lambda x: eigenfunction_value(mode, x) ** 2,
                            left, left + length, limit=200)
    assert abs(val - 1.0) < 1e-10


def test_mode_overlap_orthonormality():
    a = EigenMode(0, 2, float(dirichlet_energy(2, 1.7)), 0.3, 1.7)
    b = EigenMode(0, 5, float(dirichlet_energy(5, 1.7)), 0.3, 1.7)
    assert abs(mode_overlap(a, b)) < 1e-12
    assert mode_overlap(a, a) == pytest.approx(1.0, abs=1e-12)
    other = EigenMode(1, 2, float(dirichlet_energy(2, 1.7)), 5.0, 1.7)
    assert mode_overlap(a, other) == 0.0
    quad_val, _ = integrate.quad(
        lambda x: eigenfunction_value(a, x) * eigenfunction_value(b, x),
        0.3, 2.0, limit=400)
    assert abs(quad_val - mode_overlap(a, b)) < 1e-9


def test_weyl_count_matches_built_spectrum():
    r = sample_realization(1.0, 500.0, EnsembleSeed(21, 5))
    cutoff = 40.0
    s = build_spectrum(r, cutoff)
    assert len(s) == weyl_mode_count(r.interval_lengths, cutoff)
    counts = np.bincount(s.interval_indices, minlength=r.n_intervals)
    per_interval = np.floor(r.interval_lengths * math.sqrt(cutoff) / math.pi)
    np.testing.assert_array_equal(counts, per_interval.astype(int))


def test_cutoff_completeness_no_mode_missing_or_extra():
    r = sample_realization(1.0, 300.0, EnsembleSeed(8, 8))
    cutoff = 25.0
    s = build_spectrum(r, cutoff)
    assert s.energies.max() <= cutoff
    # for every interval the next harmonic would exceed the cutoff
    n_top = np.zeros(r.n_intervals, dtype=np.int64)
    np.maximum.at(n_top, s.interval_indices, s.mode_numbers)
    next_energy = dirichlet_energy(n_top + 1, r.interval_lengths)
    assert np.all(next_energy > cutoff)


def test_default_cutoff_is_converged():
    r = sample_realization(1.0, 1000.0, EnsembleSeed(14, 1))
    for beta in (0.25, 1.0, 4.0):
        ec = default_cutoff(r, beta)
        s = build_spectrum(r, ec)
        assert s.ground_energy < ec
        assert cutoff_is_converged(s, beta)


def test_tight_cutoff_is_flagged_unconverged():
    r = sample_realization(1.0, 1000.0, EnsembleSeed(14, 2))
    s = build_spectrum(r, ground_state_energy(r) * 1.5)
    assert not cutoff_is_converged(s, 1.0)


def test_empty_spectrum_error_and_validation():
    r = make_realization([], 1.0)  # ground energy pi^2
    with pytest.raises(EmptySpectrumError):
        build_spectrum(r, PI_SQ / 2.0)
    with pytest.raises(ValueError):
        build_spectrum(r, -3.0)
    with pytest.raises(ValueError):
        build_spectrum(r, math.inf)
    with pytest.raises(ValueError):
        default_cutoff(r, 0.0)


def test_spectrum_requires_sorted_energies():
    with pytest.raises(ValueError):
        Spectrum(np.array([2.0, 1.0]), np.zeros(2, dtype=np.int64),
                 np.array([1, 2], dtype=np.int64), np.array([0.0]),
                 np.array([1.0]), 10.0, 1.0, "bad")


def test_mode_accessor_consistency():
    r = sample_realization(1.0, 100.0, EnsembleSeed(19, 0))
    s = build_spectrum(r, 30.0)
    for k in (0, len(s) // 2, len(s) - 1):
        m = s.mode(k)
        assert m.energy == pytest.approx(
            float(dirichlet_energy(m.mode_number, m.interval_length)), rel=1e-15)
        assert m.interval_left == r.intervals[m.interval_index, 0]


def test_spectrum_text_export():
    r = make_realization([-0.5], 3.0)
    s = build_spectrum(r, 23.0)
    text = spectrum_to_text(s)
    lines = text.strip().split("\n")
    assert lines[0] == "energy,interval_index,mode_number"
    assert len(lines) == len(s) + 1
    first = lines[1].split(",")
    assert float(first[0]) == s.energies[0]
    assert (int(first[1]), int(first[2])) == (s.interval_indices[0], s.mode_numbers[0])
    parsed = np.array([float(ln.split(",")[0]) for ln in lines[1:]])
    np.testing.assert_array_equal(parsed, s.energies)
