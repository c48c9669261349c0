"""Laboratory for Bose gases in Poisson point disorder.

Exact spectra of the one-particle Hamiltonian with a wall at every disorder
point, exact canonical occupations of the ideal gas on top of them, and the
closed-form bounds and scaling diagnostics that govern when the condensate
survives.
"""

from .disorder import (DisorderRealization, EnsembleSeed, count_intervals_at_least,
                       interior_gaps, longest_interval, realization_from_text,
                       realization_to_text, sample_realization)
from .spectrum import (EigenMode, EmptySpectrumError, Spectrum, build_spectrum,
                       cutoff_is_converged, default_cutoff, dirichlet_energy,
                       eigenfunction_value, ground_mode, ground_state_energy,
                       mode_overlap, spectrum_to_text, weyl_mode_count)
from .thermo import (THERMO_MAX_N, CutoffConvergenceWarning, ThermoSolution,
                     boltzmann_sums, canonical_occupation, canonical_occupations,
                     canonical_partition, condensate_profile,
                     estimate_saturation_density,
                     grand_canonical_chemical_potential, saturation_density,
                     thermo_solution_to_text)
from .bounds import (BoundReport, CheckRecord, PowerLogLaw, ScalingDiagnostics,
                     ScalingSpec, TrialStateEnergy, VoidTrialStateError,
                     box_count_criterion, box_masses, check_appendix_count,
                     check_lemma21, critical_density, envelope_check,
                     localization_criterion, pule_aonghusa_bound,
                     records_to_text, scaling_diagnostics, theorem33_bound,
                     transition_kinetic_constant, transition_switch,
                     transition_switch_derivative, trial_state_energy)
from .lab import (ConfigError, EnsembleReport, ExperimentConfig, KNOWN_CHECKS,
                  default_scaling_spec, emit_report, load_config, main,
                  run_ensemble, single_realization_checks)

__version__ = "0.1.0"
