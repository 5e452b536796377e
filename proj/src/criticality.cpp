#include "torus_qpt/criticality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/SVD>

#include "torus_qpt/eigensolve.hpp"

namespace tqpt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool sin_vanishes(double phi) { return std::abs(std::sin(phi)) < 1e-12; }

double sum_negative(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) {
    if (v < 0.0) sum += v;
  }
  return sum;
}

double ground_energy_value(const ModelSpec& spec, double eta) {
  return sum_negative(eigenvalues(build_torus(spec.with_eta(eta)).entries()));
}

void require_honeycomb(const ModelSpec& spec, const char* what) {
  if (spec.kind != LatticeKind::honeycomb) {
    throw InvalidModel(std::string(what) + ": the midgap analysis applies to the honeycomb lattice only");
  }
}

// Lower midgap level of each critical block.
double midgap_energy_exact(const ModelSpec& spec) {
  if (spec.kind != LatticeKind::honeycomb) return 0.0;
  const auto modes = critical_modes(spec.M);
  if (modes.empty()) return 0.0;
  const auto blocks = honeycomb_blocks(spec);
  double e_m = 0.0;
  for (int m : modes) {
    const auto values = eigenvalues(blocks[m - 1].matrix);
    e_m += values[spec.N / 2 - 1];
  }
  return e_m;
}

template <class F>
double golden_section_max(F&& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (std::abs(b - a) > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

GroundStateResult ground_energy_exact(const ModelSpec& spec) {
  spec.validate();
  const auto values = eigenvalues(build_torus(spec).entries());
  GroundStateResult r;
  r.method = GroundStateMethod::exact;
  r.e_g = sum_negative(values);
  r.occupied_count = static_cast<int>(std::count_if(values.begin(), values.end(),
                                                    [](double v) { return v < 0.0; }));
  r.e_m = midgap_energy_exact(spec);
  r.e_b = r.e_g - r.e_m;
  return r;
}

GroundStateResult ground_energy_perturbative(const ModelSpec& spec, ExponentConvention conv) {
  require_honeycomb(spec, "ground_energy_perturbative");
  const GroundStateResult exact = ground_energy_exact(spec);
  GroundStateResult r = exact;
  r.method = GroundStateMethod::perturbative_midgap;
  r.e_m = 0.0;
  for (int m : critical_modes(spec.M)) {
    const double lambda = honeycomb_lambda(mode_momentum(m, spec.M));
    r.e_m += midgap_perturbation(lambda, spec.N, spec.eta, spec.phi, spec.t, conv).eps_minus;
  }
  r.e_b = exact.e_b;
  r.e_g = r.e_b + r.e_m;
  return r;
}

double d2_analytic_mode(const ModelSpec& spec, int mode, double eta, ExponentConvention conv) {
  require_honeycomb(spec, "d2_analytic");
  if (sin_vanishes(spec.phi)) return 0.0;
  const double lambda = honeycomb_lambda(mode_momentum(mode, spec.M));
  const auto sol = midgap_perturbation(lambda, spec.N, eta, spec.phi, spec.t, conv);
  if (sol.corner == 0.0) return 0.0;
  const double t = spec.t;
  const double s = std::sin(spec.phi);
  const double om2 = sol.omega * sol.omega;
  return t * t * t * t * sol.corner * sol.corner * s * s /
         (om2 * om2 * sol.eps_minus * sol.eps_minus * sol.eps_minus);
}

double d2_analytic(const ModelSpec& spec, double eta, ExponentConvention conv) {
  require_honeycomb(spec, "d2_analytic");
  spec.validate();
  double sum = 0.0;
  for (int m : critical_modes(spec.M)) sum += d2_analytic_mode(spec, m, eta, conv);
  return sum;
}

EtaRange default_eta_range(const ModelSpec& spec, ExponentConvention conv) {
  if (spec.kind == LatticeKind::square) return {0.0, 1.0};
  double c_max = 0.0;
  for (int m : critical_modes(spec.M)) {
    const double lambda = honeycomb_lambda(mode_momentum(m, spec.M));
    c_max = std::max(c_max, std::abs(corner_coupling(lambda, spec.N, conv)));
  }
  double hi = 3.0 * c_max * std::cos(spec.phi);
  if (!(hi > 0.0)) hi = 3.0 * c_max;
  if (!(hi > 0.0)) hi = 1.0;
  return {0.0, std::min(1.0, hi)};
}

double d2_central(const ModelSpec& spec, double eta, double h) {
  if (eta - h < 0.0) {
    // Forward difference; the coupling is only defined for eta >= 0.
    return (2.0 * ground_energy_value(spec, eta) - 5.0 * ground_energy_value(spec, eta + h) +
            4.0 * ground_energy_value(spec, eta + 2.0 * h) - ground_energy_value(spec, eta + 3.0 * h)) /
           (h * h);
  }
  const double e0 = ground_energy_value(spec, eta);
  const double ep = ground_energy_value(spec, eta + h);
  const double em = ground_energy_value(spec, eta - h);
  return (ep - 2.0 * e0 + em) / (h * h);
}

double d2_richardson(const ModelSpec& spec, double eta, double h) {
  const double coarse = d2_central(spec, eta, h);
  const double fine = d2_central(spec, eta, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

SweepResult sweep(const ModelSpec& spec, double eta_min, double eta_max, int steps,
                  ExponentConvention conv) {
  spec.validate();
  if (steps < kMinSweepSteps) {
    throw std::invalid_argument("sweep needs at least " + std::to_string(kMinSweepSteps) + " steps");
  }
  if (!(eta_max > eta_min) || eta_min < 0.0) {
    throw std::invalid_argument("sweep needs 0 <= eta_min < eta_max");
  }
  const bool honeycomb = spec.kind == LatticeKind::honeycomb;

  SweepResult r;
  r.step = (eta_max - eta_min) / steps;
  const double h = r.step;

  // Energies on the grid plus one ghost point on each side. Below eta = 0 the
  // boundary coupling changes sign, so no ghost point is placed there and the
  // first grid point takes a one-sided difference instead.
  const bool low_ghost = eta_min - h >= 0.0;
  std::vector<double> energy(steps + 3);
  for (int i = low_ghost ? -1 : 0; i <= steps + 1; ++i) {
    energy[i + 1] = ground_energy_value(spec, eta_min + i * h);
  }
  r.eta_grid.resize(steps + 1);
  r.e_g_curve.resize(steps + 1);
  r.d2_numeric.resize(steps + 1);
  r.d2_analytic.resize(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    const double eta = eta_min + i * h;
    r.eta_grid[i] = eta;
    r.e_g_curve[i] = energy[i + 1];
    r.d2_numeric[i] = (i == 0 && !low_ghost)
                          ? (2.0 * energy[1] - 5.0 * energy[2] + 4.0 * energy[3] - energy[4]) / (h * h)
                          : (energy[i + 2] - 2.0 * energy[i + 1] + energy[i]) / (h * h);
    r.d2_analytic[i] = honeycomb ? d2_analytic(spec, eta, conv) : kNaN;
  }

  const auto abs_less = [](double a, double b) { return std::abs(a) < std::abs(b); };
  const int ip = static_cast<int>(
      std::max_element(r.d2_numeric.begin(), r.d2_numeric.end(), abs_less) - r.d2_numeric.begin());
  const double top = std::abs(r.d2_numeric[ip]);

  const auto wide = std::count_if(r.d2_numeric.begin(), r.d2_numeric.end(),
                                  [&](double v) { return std::abs(v) >= 0.5 * top; });
  r.first_order = (honeycomb && sin_vanishes(spec.phi)) || (top > 0.0 && wide <= 2);

  if (ip == 0 || ip == steps) {
    r.peak_not_bracketed = true;
    r.eta_m = r.eta_grid[ip];
    r.peak = r.d2_numeric[ip];
    r.warnings.push_back("peak-not-bracketed: |d2| is largest at the grid edge eta=" +
                         std::to_string(r.eta_m));
  } else {
    const double ym = std::abs(r.d2_numeric[ip - 1]);
    const double y0 = top;
    const double yp = std::abs(r.d2_numeric[ip + 1]);
    const double denom = ym - 2.0 * y0 + yp;
    double offset = denom < 0.0 ? 0.5 * (ym - yp) / denom : 0.0;
    offset = std::clamp(offset, -0.5, 0.5);
    r.eta_m = r.eta_grid[ip] + offset * h;
    r.peak = r.first_order ? r.d2_numeric[ip] : d2_richardson(spec, r.eta_m, h);
  }
  if (r.first_order) {
    r.warnings.push_back("first-order: curvature spike narrower than the grid (level crossing)");
  }

  if (honeycomb) {
    for (int m : boundary_modes(spec.M)) {
      r.warnings.push_back("mode m=" + std::to_string(m) +
                           " has |lambda| = 1 and is excluded from the critical set");
    }
    if (!sin_vanishes(spec.phi)) {
      const int ia = static_cast<int>(
          std::max_element(r.d2_analytic.begin(), r.d2_analytic.end(), abs_less) -
          r.d2_analytic.begin());
      const double a = r.eta_grid[std::max(0, ia - 1)];
      const double b = r.eta_grid[std::min(steps, ia + 1)];
      r.eta_m_analytic = golden_section_max(
          [&](double eta) { return std::abs(d2_analytic(spec, eta, conv)); }, a, b,
          1e-12 * std::max(1.0, std::abs(b)));
      r.peak_analytic = d2_analytic(spec, r.eta_m_analytic, conv);
    }
  }
  return r;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("linear_fit needs two equally sized samples of length >= 2");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("linear_fit: all x values are equal");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.slope * x[i] + f.intercept);
    ss_res += e * e;
  }
  f.r2 = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return f;
}

double predicted_eta_slope(int M, ExponentConvention conv) {
  double lam = 0.0;
  for (int m : critical_modes(M)) {
    lam = std::max(lam, std::abs(honeycomb_lambda(mode_momentum(m, M))));
  }
  if (lam == 0.0) throw std::invalid_argument("predicted_eta_slope: no critical mode with lambda != 0");
  return conv == ExponentConvention::cells ? 0.5 * std::log(lam) : std::log(lam);
}

ScalingReport scaling_scan(int M, double phi, double t, const std::vector<int>& n_list,
                           ExponentConvention conv, int steps) {
  if (M < 3) throw InvalidModel("scaling_scan needs M >= 3");
  if (sin_vanishes(phi)) {
    throw std::invalid_argument("scaling_scan needs sin(phi) != 0; at sin(phi) = 0 the transition is first order");
  }
  if (n_list.size() < 2) throw std::invalid_argument("scaling_scan needs at least two N values");
  ScalingReport rep;
  for (int N : n_list) {
    if (N % 4 != 0) throw InvalidModel("scaling_scan: N=" + std::to_string(N) + " is not a multiple of 4");
    ModelSpec spec{LatticeKind::honeycomb, M, N, t, 0.0, phi};
    spec.validate();
    const EtaRange range = default_eta_range(spec, conv);
    const SweepResult s = sweep(spec, range.min, range.max, steps, conv);
    if (s.peak_not_bracketed) {
      throw PeakNotBracketed(N, "scaling_scan: peak not bracketed for N=" + std::to_string(N));
    }
    rep.n_values.push_back(N);
    rep.eta_m.push_back(s.eta_m);
    rep.peak.push_back(s.peak);
    rep.ln_eta_m.push_back(std::log(s.eta_m));
    rep.ln_abs_peak.push_back(std::log(std::abs(s.peak)));
  }
  const std::vector<double> xs(rep.n_values.begin(), rep.n_values.end());
  rep.fit_eta = linear_fit(xs, rep.ln_eta_m);
  rep.fit_peak = linear_fit(xs, rep.ln_abs_peak);
  auto& pc = rep.paper_comparison;
  pc.slope_dev = rep.fit_eta.slope - PaperComparison::slope_ref;
  pc.intercept_dev = rep.fit_eta.intercept - PaperComparison::intercept_ref;
  pc.slope2_dev = rep.fit_peak.slope - PaperComparison::slope_ref2;
  pc.intercept2_dev = rep.fit_peak.intercept - PaperComparison::intercept_ref2;
  return rep;
}

namespace {

// Columns spanning the upper midgap level; both midgap columns when the pair
// is degenerate.
ComplexMatrix upper_midgap_space(const RingParams& ring, double eta) {
  const Spectrum s = eigh(peierls_ring(ring.lambda, ring.N, eta, ring.phi, ring.t), true);
  const int up = ring.N / 2;
  const double splitting = s.values[up] - s.values[up - 1];
  const double band_gap = s.values[up + 1] - s.values[up];
  if (splitting < 1e-9 * ring.t) return s.vectors->middleCols(up - 1, 2);
  const double ratio = band_gap / splitting;
  if (ratio < 10.0) {
    throw MidgapNotIsolated("fidelity: midgap level at eta=" + std::to_string(eta) +
                            " is not isolated from the band (band gap / midgap splitting = " +
                            std::to_string(ratio) + ")");
  }
  return s.vectors->col(up);
}

}  // namespace

double fidelity_exact_point(const RingParams& ring, double eta, double delta) {
  if (!(std::abs(ring.lambda) < 1.0)) throw std::invalid_argument("fidelity needs |lambda| < 1");
  if (ring.N < 4 || ring.N % 2 != 0) throw std::invalid_argument("fidelity needs an even N >= 4");
  const ComplexMatrix lo = upper_midgap_space(ring, eta - delta);
  const ComplexMatrix hi = upper_midgap_space(ring, eta + delta);
  const ComplexMatrix overlap = lo.adjoint() * hi;
  // Cosine of the smallest principal angle between the two subspaces.
  Eigen::JacobiSVD<ComplexMatrix> svd(overlap);
  return std::min(1.0, svd.singularValues()(0));
}

FidelityCurve fidelity_exact(const RingParams& ring, double eta_center,
                             const std::vector<double>& delta_grid, ExponentConvention conv) {
  FidelityCurve curve;
  curve.eta_center = eta_center;
  curve.delta_grid = delta_grid;
  for (double delta : delta_grid) {
    if (!(delta > 0.0)) throw std::invalid_argument("fidelity: delta values must be positive");
    curve.f_exact.push_back(fidelity_exact_point(ring, eta_center, delta));
    curve.f_perturbative.push_back(
        fidelity_perturbative(ring.lambda, ring.N, eta_center, delta, ring.phi, ring.t, conv));
  }
  return curve;
}

}  // namespace tqpt
