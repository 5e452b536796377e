#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "torus_qpt/bloch.hpp"
#include "torus_qpt/criticality.hpp"
#include "torus_qpt/eigensolve.hpp"

using namespace tqpt;

namespace {

constexpr double kPi = std::numbers::pi;

ModelSpec honeycomb(int M, int N, double eta, double phi) {
  return {LatticeKind::honeycomb, M, N, 1.0, eta, phi};
}

double c_of(int M, int N, int mode) {
  return corner_coupling(honeycomb_lambda(mode_momentum(mode, M)), N, ExponentConvention::cells);
}

}  // namespace

TEST(GroundState, MatchesDenseOracle) {
  for (double eta : {0.0, 0.4, 1.0}) {
    const auto spec = honeycomb(3, 8, eta, 0.7);
    const auto w = oracle::eigvals(oracle::honeycomb(3, 8, 1.0, eta, 0.7));
    EXPECT_NEAR(ground_energy_exact(spec).e_g, oracle::sum_negative(w), 1e-11);
  }
}

TEST(GroundState, HalfOfAbsoluteSumOnBipartiteLattice) {
  const auto spec = honeycomb(5, 12, 0.3, 0.4);
  double abs_sum = 0.0;
  for (double x : eigenvalues(build_torus(spec).entries())) abs_sum += std::abs(x);
  EXPECT_NEAR(ground_energy_exact(spec).e_g, -0.5 * abs_sum, 1e-11);
}

TEST(GroundState, SumOverBlocks) {
  const auto spec = honeycomb(7, 20, 0.002, kPi / 4);
  double blockwise = 0.0;
  for (const auto& b : bloch_blocks(spec)) blockwise += oracle::sum_negative(eigenvalues(b.matrix));
  const auto r = ground_energy_exact(spec);
  EXPECT_NEAR(r.e_g, blockwise, 1e-10);
  EXPECT_EQ(r.occupied_count, 70);
  EXPECT_NEAR(r.e_b + r.e_m, r.e_g, 1e-12);
}

TEST(GroundState, SquareClosedFormAtFullCoupling) {
  const ModelSpec spec{LatticeKind::square, 4, 9, 1.0, 1.0, 0.3};
  double closed = 0.0;
  for (int m = 1; m <= 4; ++m) {
    const auto s = square_ring_closed_form(9, 0.3, square_lambda(mode_momentum(m, 4)), 1, 1.0);
    closed += oracle::sum_negative(s.values);
  }
  EXPECT_NEAR(ground_energy_exact(spec).e_g, closed, 1e-11);
}

TEST(GroundState, PerturbativeMidgapCloseToExact) {
  const double c = c_of(7, 20, 3);
  for (double eta : {0.0, 0.7 * c, c, 1.5 * c}) {
    const auto spec = honeycomb(7, 20, eta, kPi / 4);
    const auto exact = ground_energy_exact(spec);
    const auto pert = ground_energy_perturbative(spec);
    EXPECT_EQ(pert.method, GroundStateMethod::perturbative_midgap);
    EXPECT_NEAR(pert.e_m, exact.e_m, 1e-6);
    EXPECT_NEAR(pert.e_g, exact.e_g, 1e-6);
  }
}

TEST(Curvature, AnalyticVanishesWithoutFlux) {
  const auto spec = honeycomb(7, 20, 0.0, 0.0);
  EXPECT_EQ(d2_analytic(spec, c_of(7, 20, 3)), 0.0);
  EXPECT_EQ(d2_analytic(honeycomb(7, 20, 0.0, kPi), 0.001), 0.0);
}

TEST(Curvature, AnalyticPeakIsCurvatureOfLevel) {
  const double phi = kPi / 3;
  const auto spec = honeycomb(7, 20, 0.0, phi);
  const double c = c_of(7, 20, 3);
  const auto sol = midgap_perturbation(honeycomb_lambda(mode_momentum(3, 7)), 20, c * std::cos(phi), phi, 1.0);
  EXPECT_NEAR(d2_analytic_mode(spec, 3, c * std::cos(phi)), sol.curvature_max, 1e-9 * std::abs(sol.curvature_max));
  // Modes 3 and 4 are mirror images (lambda -> -lambda with N/2 even).
  EXPECT_NEAR(d2_analytic(spec, c * std::cos(phi)), 2 * sol.curvature_max, 1e-9 * std::abs(sol.curvature_max));
}

TEST(Curvature, AnalyticMatchesSecondDifferenceOfLevel) {
  // Independent route: finite differences of the perturbative eps^- itself.
  const double phi = 0.9;
  const double lambda = honeycomb_lambda(mode_momentum(3, 7));
  const double c = c_of(7, 20, 3);
  const auto spec = honeycomb(7, 20, 0.0, phi);
  for (double eta : {0.3 * c, c * std::cos(phi), 2 * c}) {
    const double h = 1e-3 * c;
    auto em = [&](double e) { return midgap_perturbation(lambda, 20, e, phi, 1.0).eps_minus; };
    const double fd = (em(eta + h) - 2 * em(eta) + em(eta - h)) / (h * h);
    EXPECT_NEAR(d2_analytic_mode(spec, 3, eta), fd, 1e-4 * std::abs(fd));
  }
}

TEST(Curvature, RichardsonImprovesOnCentral) {
  const auto spec = honeycomb(7, 12, 0.0, kPi / 4);
  const double c = c_of(7, 12, 3);
  const double eta = 0.5 * c;
  const double ref = d2_central(spec, eta, 1e-3 * c);
  const double h = 0.1 * c;
  EXPECT_LT(std::abs(d2_richardson(spec, eta, h) - ref), std::abs(d2_central(spec, eta, h) - ref));
}

TEST(Curvature, OneSidedAtOrigin) {
  // The forward stencil at eta = 0 is second order: halving h barely moves it.
  const auto spec = honeycomb(7, 12, 0.0, kPi / 4);
  const double c = c_of(7, 12, 3);
  const double d1 = d2_central(spec, 0.0, 0.01 * c);
  const double d2 = d2_central(spec, 0.0, 0.005 * c);
  EXPECT_NEAR(d1, d2, 1e-3 * std::abs(d2));
  EXPECT_LT(d2, 0.0);
}

TEST(Sweep, LocatesPseudoCriticalPoint) {
  const double phi = kPi / 4;
  const auto spec = honeycomb(7, 16, 0.0, phi);
  const auto range = default_eta_range(spec);
  const double c = c_of(7, 16, 3);
  EXPECT_NEAR(range.max, 3 * c * std::cos(phi), 1e-15);
  const auto r = sweep(spec, range.min, range.max, 128);
  EXPECT_FALSE(r.first_order);
  EXPECT_FALSE(r.peak_not_bracketed);
  EXPECT_NEAR(r.eta_m_analytic, c * std::cos(phi), 1e-6 * c);
  EXPECT_NEAR(r.eta_m, c * std::cos(phi), 0.02 * c);
  EXPECT_NEAR(r.peak, r.peak_analytic, 0.02 * std::abs(r.peak_analytic));
  EXPECT_LT(r.peak, 0.0);
  EXPECT_EQ(r.eta_grid.size(), 129u);
  EXPECT_DOUBLE_EQ(r.eta_grid.back(), range.max);
}

TEST(Sweep, NoFluxIsFirstOrder) {
  const auto spec = honeycomb(7, 12, 0.0, 0.0);
  const auto r = sweep(spec, 0.0, 3 * c_of(7, 12, 3), 64);
  EXPECT_TRUE(r.first_order);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Sweep, FlagsUnbracketedPeak) {
  const double c = c_of(7, 16, 3);
  const auto r = sweep(honeycomb(7, 16, 0.0, kPi / 4), 2 * c, 3 * c, 64);
  EXPECT_TRUE(r.peak_not_bracketed);
}

TEST(Sweep, WarnsAboutBoundaryModes) {
  const auto r = sweep(honeycomb(9, 12, 0.0, kPi / 4), 0.0, 0.1, 64);
  int boundary = 0;
  for (const auto& w : r.warnings) boundary += w.find("|lambda| = 1") != std::string::npos;
  EXPECT_EQ(boundary, 2);
}

TEST(Sweep, RejectsBadGrids) {
  const auto spec = honeycomb(7, 12, 0.0, 0.5);
  EXPECT_THROW(sweep(spec, 0.0, 1.0, 10), std::invalid_argument);
  EXPECT_THROW(sweep(spec, 0.5, 0.5, 64), std::invalid_argument);
  EXPECT_THROW(sweep(spec, -0.1, 0.5, 64), std::invalid_argument);
}

TEST(Sweep, SquareLatticeHasNoSharpPeak) {
  std::vector<double> peaks;
  for (int N : {8, 16}) {
    const auto r = sweep({LatticeKind::square, 3, N, 1.0, 0.0, kPi / 4}, 0.0, 1.0, 64);
    EXPECT_TRUE(std::isnan(r.d2_analytic[5]));
    double p = 0.0;
    for (double v : r.d2_numeric) p = std::max(p, std::abs(v));
    peaks.push_back(p);
  }
  EXPECT_LT(std::max(peaks[0], peaks[1]) / std::min(peaks[0], peaks[1]), 2.0);
}

TEST(Fit, ExactLine) {
  const auto f = linear_fit({1, 2, 3, 4}, {3, 5, 7, 9});
  EXPECT_NEAR(f.slope, 2.0, 1e-14);
  EXPECT_NEAR(f.intercept, 1.0, 1e-14);
  EXPECT_DOUBLE_EQ(f.r2, 1.0);
  EXPECT_THROW(linear_fit({1}, {1}), std::invalid_argument);
  EXPECT_THROW(linear_fit({1, 1}, {1, 2}), std::invalid_argument);
}

TEST(Fit, NoisyAgreesWithOracle) {
  std::mt19937 rng(5);
  std::normal_distribution<double> g(0.0, 0.3);
  std::vector<double> x, y;
  for (int i = 0; i < 20; ++i) {
    x.push_back(i);
    y.push_back(-0.4 * i + 1.0 + g(rng));
  }
  const auto f = linear_fit(x, y);
  const auto o = oracle::ols(x, y);
  EXPECT_NEAR(f.slope, o.slope, 1e-12);
  EXPECT_NEAR(f.intercept, o.intercept, 1e-12);
  EXPECT_NEAR(f.r2, o.r2, 1e-12);
}

TEST(Scaling, SharpensWithN) {
  const auto rep = scaling_scan(7, kPi / 4, 1.0, {8, 12, 16}, ExponentConvention::cells, 128);
  ASSERT_EQ(rep.n_values.size(), 3u);
  EXPECT_GT(rep.eta_m[0], rep.eta_m[1]);
  EXPECT_GT(rep.eta_m[1], rep.eta_m[2]);
  EXPECT_LT(std::abs(rep.peak[0]), std::abs(rep.peak[1]));
  EXPECT_LT(std::abs(rep.peak[1]), std::abs(rep.peak[2]));
  EXPECT_GT(rep.fit_eta.r2, 0.99);
  EXPECT_NEAR(rep.fit_eta.slope, predicted_eta_slope(7), 0.05 * std::abs(predicted_eta_slope(7)));
  EXPECT_DOUBLE_EQ(rep.paper_comparison.slope_dev, rep.fit_eta.slope + 0.2);
}

TEST(Scaling, PredictedSlope) {
  EXPECT_NEAR(predicted_eta_slope(7), std::log(std::abs(2 * std::cos(3 * kPi / 7))) / 2, 1e-15);
  EXPECT_NEAR(predicted_eta_slope(7), -0.4049, 5e-4);
  EXPECT_NEAR(predicted_eta_slope(7, ExponentConvention::sites), 2 * predicted_eta_slope(7), 1e-15);
}

TEST(Scaling, RejectsFirstOrderAndBadInput) {
  EXPECT_THROW(scaling_scan(7, 0.0, 1.0, {8, 12}), std::invalid_argument);
  EXPECT_THROW(scaling_scan(7, 0.5, 1.0, {8}), std::invalid_argument);
  EXPECT_THROW(scaling_scan(7, 0.5, 1.0, {8, 10}), InvalidModel);
}

TEST(Fidelity, ExactAtHalfGap) {
  const RingParams ring{0.5, 20, kPi / 4, 1.0};
  const double c = corner_coupling(0.5, 20, ExponentConvention::cells);
  const double s = c * std::sin(kPi / 4);
  EXPECT_NEAR(fidelity_exact_point(ring, c * std::cos(kPi / 4), s), 1 / std::sqrt(2.0), 1e-3);
  EXPECT_NEAR(fidelity_exact_point(ring, c * std::cos(kPi / 4), 1e-6 * s), 1.0, 1e-9);
}

TEST(Fidelity, CurveTracksPerturbation) {
  const RingParams ring{0.5, 20, kPi / 4, 1.0};
  const double c = corner_coupling(0.5, 20, ExponentConvention::cells);
  const auto curve = fidelity_exact(ring, c * std::cos(kPi / 4), {0.1 * c, c, 10 * c});
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(curve.f_exact[i], curve.f_perturbative[i], 1e-3);
  // Monotone decay away from the minimum.
  EXPECT_GT(curve.f_exact[0], curve.f_exact[1]);
  EXPECT_GT(curve.f_exact[1], curve.f_exact[2]);
  EXPECT_THROW(fidelity_exact(ring, c, {0.0}), std::invalid_argument);
}

TEST(Fidelity, DropsAcrossCrossing) {
  const RingParams ring{0.5, 20, 0.0, 1.0};
  const double c = corner_coupling(0.5, 20, ExponentConvention::cells);
  EXPECT_LT(fidelity_exact_point(ring, c, c), 0.1);
}

TEST(Fidelity, RejectsMidgapInsideBand) {
  const RingParams ring{0.9, 4, kPi / 4, 1.0};
  EXPECT_THROW(fidelity_exact_point(ring, 0.5, 0.1), MidgapNotIsolated);
  EXPECT_THROW(fidelity_exact_point({1.2, 8, 0.3, 1.0}, 0.1, 0.01), std::invalid_argument);
}
