#pragma once

// Half-filled ground state, its curvature in the boundary coupling, location
// of the pseudo-critical point, finite-size scaling and midgap fidelity.

#include <stdexcept>
#include <string>
#include <vector>

#include "torus_qpt/bloch.hpp"
#include "torus_qpt/model.hpp"
#include "torus_qpt/ssh.hpp"

namespace tqpt {

enum class GroundStateMethod { exact, perturbative_midgap };

struct GroundStateResult {
  double e_g = 0.0;  // sum of occupied single-particle energies
  double e_m = 0.0;  // lower midgap level of every critical block
  double e_b = 0.0;  // e_g - e_m
  int occupied_count = 0;
  GroundStateMethod method = GroundStateMethod::exact;
};

/// Half filling = every negative level of the full spectrum.
GroundStateResult ground_energy_exact(const ModelSpec& spec);

/// Band part from exact block spectra, midgap part from midgap_perturbation().
GroundStateResult ground_energy_perturbative(const ModelSpec& spec,
                                             ExponentConvention conv = ExponentConvention::cells);

/// Sum over the critical set of t^4 c^2 sin^2(phi) / (Omega^4 (eps^-)^3).
/// Honeycomb only. Modes with c = 0 (k = pi) and sin(phi) = 0 contribute 0.
double d2_analytic(const ModelSpec& spec, double eta,
                   ExponentConvention conv = ExponentConvention::cells);

/// Same sum restricted to one momentum mode.
double d2_analytic_mode(const ModelSpec& spec, int mode, double eta,
                        ExponentConvention conv = ExponentConvention::cells);

struct EtaRange {
  double min = 0.0;
  double max = 1.0;
};

/// [0, 3 max_k c_k cos(phi)] clipped to [0, 1] on the honeycomb lattice,
/// [0, 1] on the square lattice.
EtaRange default_eta_range(const ModelSpec& spec,
                           ExponentConvention conv = ExponentConvention::cells);

inline constexpr int kMinSweepSteps = 64;

struct SweepResult {
  std::vector<double> eta_grid;
  std::vector<double> e_g_curve;
  std::vector<double> d2_numeric;
  std::vector<double> d2_analytic;  // NaN on the square lattice
  double step = 0.0;
  double eta_m = 0.0;             // parabolic refinement of argmax |d2_numeric|
  double peak = 0.0;              // Richardson-extrapolated d2 at eta_m
  double eta_m_analytic = 0.0;    // golden-section argmax of |d2_analytic|
  double peak_analytic = 0.0;
  bool peak_not_bracketed = false;
  bool first_order = false;       // peak narrower than the grid: level crossing
  std::vector<std::string> warnings;
};

/// Second central difference of E_g at `eta` with step h; one-sided when
/// eta - h would be negative.
double d2_central(const ModelSpec& spec, double eta, double h);

/// (4 D(h/2) - D(h)) / 3.
double d2_richardson(const ModelSpec& spec, double eta, double h);

SweepResult sweep(const ModelSpec& spec, double eta_min, double eta_max, int steps,
                  ExponentConvention conv = ExponentConvention::cells);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares y = slope x + intercept.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

struct PaperComparison {
  static constexpr double slope_ref = -1.0 / 5.0;
  static constexpr double intercept_ref = -6.0 / 5.0;
  static constexpr double slope_ref2 = 4.0 / 25.0;
  static constexpr double intercept_ref2 = -6.0 / 5.0;
  double slope_dev = 0.0;
  double intercept_dev = 0.0;
  double slope2_dev = 0.0;
  double intercept2_dev = 0.0;
};

struct ScalingReport {
  std::vector<int> n_values;
  std::vector<double> eta_m;
  std::vector<double> peak;
  std::vector<double> ln_eta_m;
  std::vector<double> ln_abs_peak;
  LinearFit fit_eta;
  LinearFit fit_peak;
  PaperComparison paper_comparison;
};

class PeakNotBracketed : public std::runtime_error {
 public:
  PeakNotBracketed(int n, const std::string& what) : std::runtime_error(what), n_(n) {}
  int n() const { return n_; }

 private:
  int n_;
};

/// One honeycomb sweep per N over its default eta range, then linear fits of
/// ln eta_m and ln |peak| against N.
ScalingReport scaling_scan(int M, double phi, double t, const std::vector<int>& n_list,
                           ExponentConvention conv = ExponentConvention::cells,
                           int steps = 256);

/// Slope of ln eta_m vs N predicted by eta_m = c cos(phi) for the critical
/// mode with the largest |lambda|.
double predicted_eta_slope(int M, ExponentConvention conv = ExponentConvention::cells);

struct FidelityCurve {
  std::vector<double> delta_grid;
  std::vector<double> f_perturbative;
  std::vector<double> f_exact;
  double eta_center = 0.0;
};

class MidgapNotIsolated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RingParams {
  double lambda = 0.5;
  int N = 20;
  double phi = 0.0;
  double t = 1.0;
};

/// Overlap of the upper midgap eigenvector of the exact ring at eta -/+ delta.
double fidelity_exact_point(const RingParams& ring, double eta, double delta);

FidelityCurve fidelity_exact(const RingParams& ring, double eta_center,
                             const std::vector<double>& delta_grid,
                             ExponentConvention conv = ExponentConvention::cells);

}  // namespace tqpt
