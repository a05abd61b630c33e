#pragma once

#include <map>
#include <string>
#include <vector>

#include "spinbench/spinsys.hpp"

namespace spinbench {

enum class ExperimentKind {
  rabi, larmor, ramsey, echo, carr_purcell, cpmg,
  inversion_recovery, saturation_recovery, spin_lock
};

std::string to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(const std::string& s);

enum class NoiseKind { none, static_lorentzian_inhomogeneity, ou_process };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::none;
  double width_hz = 0.0;        // Lorentzian FWHM (static inhomogeneity)
  double sigma_hz = 0.0;        // OU standard deviation
  double corr_time_s = 1e-3;    // OU correlation time
  int realizations = 1;
  unsigned long long seed = 1;
};

struct ExperimentParams {
  std::vector<double> grid;  // pulse widths (rabi) or times/durations (s)
  double amp_hz = 0.0;       // drive amplitude for rabi / spin_lock
  int n_pulses = 1;          // refocusing pulses for carr_purcell / cpmg
};

struct FitResult {
  double tau_s = 0;
  double amp = 0;
  double offset = 0;
  double residual = 0;
};

struct ExperimentResult {
  std::vector<double> abscissa;
  std::map<std::string, std::vector<double>> series;
  std::map<std::string, FitResult> fits;
};

// Single-spin experiments on spin 0 of sys (offset, T1, T2 taken from it),
// Monte-Carlo averaged over noise realizations. Static Lorentzian offsets are
// drawn by a stratified inverse-CDF rule (deterministic quadrature of the
// Cauchy average); OU paths use the seeded AR(1) discretization at step
// min(sequence step, corr_time/10).
ExperimentResult run_experiment(const SpinSystem& sys, ExperimentKind kind,
                                const ExperimentParams& params, const NoiseSpec& noise = {});

enum class DecayModel { exponential, exponential_with_offset };

FitResult fit_decay(const std::vector<double>& t, const std::vector<double>& y, DecayModel model);

struct SpectrumResult {
  std::vector<double> t_s;
  std::vector<cplx> fid;
  std::vector<double> freq_hz;       // fftshifted bins
  std::vector<cplx> spectrum;
};

// Free evolution of rho0 under the system Hamiltonian, transverse observable
// sum_i (-i sx - sy)_i, plain DFT with optional exponential line broadening.
SpectrumResult spectrum(const SpinSystem& sys, const Mat& rho0, double dwell_s, int points,
                        double line_broadening_hz = 0.0);

}  // namespace spinbench
