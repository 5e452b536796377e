#include "torus_qpt/ssh.hpp"

#include <cmath>
#include <string>

namespace tqpt {

namespace {

double int_pow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

void require_ring(double lambda, int N) {
  if (!(std::abs(lambda) < 1.0)) {
    throw std::invalid_argument("zero modes need |lambda| < 1, got lambda=" + std::to_string(lambda));
  }
  if (N < 4 || N % 2 != 0) {
    throw std::invalid_argument("zero modes need an even ring length N >= 4, got N=" +
                                std::to_string(N));
  }
}

bool sin_vanishes(double phi) { return std::abs(std::sin(phi)) < 1e-12; }

}  // namespace

std::string_view to_string(ExponentConvention c) {
  return c == ExponentConvention::cells ? "cells" : "sites";
}

ExponentConvention exponent_convention_from_string(std::string_view name) {
  if (name == "cells") return ExponentConvention::cells;
  if (name == "sites") return ExponentConvention::sites;
  throw std::invalid_argument("unknown exponent convention '" + std::string(name) + "'");
}

double corner_coupling(double lambda, int N, ExponentConvention conv) {
  return int_pow(lambda, conv == ExponentConvention::cells ? N / 2 : N);
}

double zero_mode_norm(double lambda, int N, ExponentConvention conv) {
  if (conv == ExponentConvention::sites) {
    return (1.0 - int_pow(lambda, 2 * N)) / (1.0 - lambda * lambda);
  }
  // Squared norm of (1, 0, lambda, 0, ..., lambda^{N/2-1}, 0), summed directly.
  double omega = 0.0;
  double term = 1.0;
  for (int j = 0; j < N / 2; ++j) {
    omega += term;
    term *= lambda * lambda;
  }
  return omega;
}

ZeroModePair zero_modes(double lambda, int N, ExponentConvention conv) {
  require_ring(lambda, N);
  ZeroModePair z;
  z.lambda = lambda;
  z.n_sites = N;
  z.corner = corner_coupling(lambda, N, conv);
  z.omega = zero_mode_norm(lambda, N, conv);
  z.a_plus = RealVector::Zero(N);
  z.a_minus = RealVector::Zero(N);
  for (int l = 1; l <= N; ++l) {
    if (l % 2 == 1) {
      z.a_plus(l - 1) = int_pow(lambda, (l - 1) / 2);
    } else {
      z.a_minus(l - 1) = int_pow(lambda, (N - l) / 2);
    }
  }
  // Both vectors share the same squared norm; use the computed one so the
  // vectors are unit length under either convention.
  const double norm = z.a_plus.norm();
  z.a_plus /= norm;
  z.a_minus /= norm;
  return z;
}

MidgapSolution midgap_perturbation(double lambda, int N, double eta, double phi, double t,
                                   ExponentConvention conv) {
  const ZeroModePair zm = zero_modes(lambda, N, conv);
  const double c = zm.corner;
  const double omega = zm.omega;
  const Complex z = eta * std::polar(1.0, phi) - c;

  MidgapSolution s;
  s.corner = c;
  s.omega = omega;
  s.eps_plus = t / omega * std::abs(z);
  s.eps_minus = -s.eps_plus;
  s.eta_star = c * std::cos(phi);
  s.gap_min = 2.0 * t / omega * std::abs(c * std::sin(phi));
  if (!sin_vanishes(phi) && c != 0.0) {
    s.curvature_max = -t / (std::abs(c) * omega * std::abs(std::sin(phi)));
  }
  s.degenerate_crossing = std::abs(z) <= 1e-14 * std::max(std::abs(eta), std::abs(c));
  s.outside_validity = std::abs(eta) > 0.2 * (1.0 - std::abs(lambda)) * t;

  // sqrt(z / conj(z)) is the pure phase e^{i arg z}.
  const Complex mix = s.degenerate_crossing ? Complex(1.0, 0.0) : std::polar(1.0, std::arg(z));
  const ComplexVector ap = zm.a_plus.cast<Complex>();
  const ComplexVector am = zm.a_minus.cast<Complex>();
  const double r = 1.0 / std::sqrt(2.0);
  s.v_plus = r * (-mix * ap + am);
  s.v_minus = r * (mix * ap + am);
  return s;
}

double fidelity_perturbative(double lambda, int N, double eta, double delta, double phi,
                             double t, ExponentConvention conv) {
  const auto lo = midgap_perturbation(lambda, N, eta - delta, phi, t, conv);
  const auto hi = midgap_perturbation(lambda, N, eta + delta, phi, t, conv);
  return std::min(1.0, std::abs(lo.v_plus.dot(hi.v_plus)));
}

double fidelity_at_gap_minimum(double corner, double phi, double delta) {
  const double s = std::abs(corner * std::sin(phi));
  if (s == 0.0) return delta == 0.0 ? 1.0 : 0.0;
  return s / std::hypot(delta, s);
}

std::pair<ComplexMatrix, ComplexMatrix> build_h0_hprime(double lambda, int N, double eta,
                                                        double phi, ExponentConvention conv) {
  if (N < 4 || N % 2 != 0) throw std::invalid_argument("build_h0_hprime: N must be even and >= 4");
  const double c = corner_coupling(lambda, N, conv);
  ComplexMatrix h0 = ComplexMatrix::Zero(N, N);
  for (int i = 0; i + 1 < N; ++i) {
    const double v = (i % 2 == 0) ? -lambda : 1.0;
    h0(i, i + 1) = v;
    h0(i + 1, i) = v;
  }
  h0(0, N - 1) = c;
  h0(N - 1, 0) = c;

  ComplexMatrix hp = ComplexMatrix::Zero(N, N);
  hp(0, N - 1) = eta * std::polar(1.0, phi) - c;
  hp(N - 1, 0) = eta * std::polar(1.0, -phi) - c;
  return {std::move(h0), std::move(hp)};
}

namespace {
double gauge_sign(int i) {
  const int r = i % 4;
  return (r == 1 || r == 2) ? -1.0 : 1.0;
}
}  // namespace

ComplexMatrix to_ring_gauge(const ComplexMatrix& h, double t) {
  ComplexMatrix out = h.conjugate();
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      out(i, j) *= -t * gauge_sign(static_cast<int>(i)) * gauge_sign(static_cast<int>(j));
    }
  }
  return out;
}

ComplexVector to_ring_gauge(const ComplexVector& v) {
  ComplexVector out = v.conjugate();
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) *= gauge_sign(static_cast<int>(i));
  return out;
}

}  // namespace tqpt
