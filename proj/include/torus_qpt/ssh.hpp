#pragma once

// Zero modes of an open Peierls ring and their hybridization by the seam bond.
//
// Matrices in this header use the reference sign pattern
//   h0(2n-1, 2n) = -lambda,  h0(2n, 2n+1) = +1,  h0(1, N) = h0(N, 1) = c,
// with the seam perturbation h' carrying eta e^{+i phi} - c at (1, N). This is
// the Hamiltonian -t h, related to the ring produced by peierls_ring() through
// the sublattice sign gauge and complex conjugation implemented by
// to_ring_gauge(). Spectra agree; overlap magnitudes agree.

#include <limits>
#include <string_view>
#include <utility>

#include "torus_qpt/model.hpp"

namespace tqpt {

/// How the corner coupling c and the decay exponent count ring length.
///  cells: c = lambda^{N/2}, Omega = (1 - lambda^N) / (1 - lambda^2)
///  sites: c = lambda^N,     Omega = (1 - lambda^{2N}) / (1 - lambda^2)
/// Only `cells` makes h0 annihilate the zero modes exactly.
enum class ExponentConvention { cells, sites };

std::string_view to_string(ExponentConvention c);
ExponentConvention exponent_convention_from_string(std::string_view name);

double corner_coupling(double lambda, int N, ExponentConvention conv);
double zero_mode_norm(double lambda, int N, ExponentConvention conv);

struct ZeroModePair {
  double lambda = 0.0;
  int n_sites = 0;
  RealVector a_plus;   // unit norm, odd sites only
  RealVector a_minus;  // unit norm, even sites only
  double omega = 1.0;
  double corner = 0.0;
};

ZeroModePair zero_modes(double lambda, int N,
                        ExponentConvention conv = ExponentConvention::cells);

struct MidgapSolution {
  double eps_plus = 0.0;
  double eps_minus = 0.0;
  ComplexVector v_plus;   // reference gauge
  ComplexVector v_minus;
  double gap_min = 0.0;
  double eta_star = 0.0;
  /// -t / (|c| Omega |sin phi|); -infinity when sin phi = 0.
  double curvature_max = -std::numeric_limits<double>::infinity();
  double omega = 1.0;
  double corner = 0.0;
  /// sin phi = 0 and eta = c: the two levels cross and the mixing phase is undefined.
  bool degenerate_crossing = false;
  /// eta exceeds 0.2 (1 - |lambda|) t, where first-order degenerate perturbation
  /// stops being trustworthy.
  bool outside_validity = false;
};

/// First-order degenerate perturbation of the zero-mode pair by the seam.
/// Accepts any real eta; a negative eta is the same ring with phi + pi.
MidgapSolution midgap_perturbation(double lambda, int N, double eta, double phi, double t,
                                   ExponentConvention conv = ExponentConvention::cells);

/// |<A+(eta - delta), A+(eta + delta)>| from the perturbative vectors.
double fidelity_perturbative(double lambda, int N, double eta, double delta, double phi,
                             double t, ExponentConvention conv = ExponentConvention::cells);

/// Value of the fidelity at the gap minimum: |c sin phi| / sqrt(delta^2 + c^2 sin^2 phi).
double fidelity_at_gap_minimum(double corner, double phi, double delta);

/// Reference matrices (h0, h') with h0 + h' = h.
std::pair<ComplexMatrix, ComplexMatrix> build_h0_hprime(
    double lambda, int N, double eta, double phi,
    ExponentConvention conv = ExponentConvention::cells);

/// Maps a reference-gauge matrix h to the peierls_ring() gauge: -t S conj(h) S,
/// where S = diag(+1, -1, -1, +1, ...) repeats with period four. For N a
/// multiple of four the seam is untouched; for N = 2 mod 4 it picks up a sign.
ComplexMatrix to_ring_gauge(const ComplexMatrix& h, double t);

/// Vector counterpart of to_ring_gauge(): S conj(v).
ComplexVector to_ring_gauge(const ComplexVector& v);

}  // namespace tqpt
