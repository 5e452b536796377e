#include "torus_qpt/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

namespace tqpt {

std::string matrix_fingerprint(const ComplexMatrix& h) {
  // FNV-1a over the raw bytes, plus size and norm for a human-readable hint.
  std::uint64_t hash = 1469598103934665603ull;
  const auto* bytes = reinterpret_cast<const unsigned char*>(h.data());
  const std::size_t n = static_cast<std::size_t>(h.size()) * sizeof(Complex);
  for (std::size_t i = 0; i < n; ++i) {
    hash ^= bytes[i];
    hash *= 1099511628211ull;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "dim=%lld frob=%.6e fnv=%016llx",
                static_cast<long long>(h.rows()), h.norm(),
                static_cast<unsigned long long>(hash));
  return buf;
}

Spectrum eigh(const ComplexMatrix& h, bool want_vectors) {
  if (h.rows() != h.cols()) throw NotHermitian("eigh: matrix is not square");
  if (h.rows() > kMaxDenseDim) {
    throw std::invalid_argument("eigh: dimension " + std::to_string(h.rows()) +
                                " exceeds the dense limit");
  }
  if (h.rows() == 0) return Spectrum{};
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double defect = hermiticity_defect(h);
  if (!(defect <= 1e-12 * scale)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "eigh: input not Hermitian (defect %.3e)", defect);
    throw NotHermitian(buf);
  }

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      h, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw EigenSolverFailure("eigh: no convergence for matrix " + matrix_fingerprint(h));
  }
  Spectrum s;
  const auto& ev = solver.eigenvalues();
  s.values.assign(ev.data(), ev.data() + ev.size());
  if (want_vectors) s.vectors = solver.eigenvectors();
  return s;
}

Spectrum eigh(const HermitianOperator& op, bool want_vectors) {
  return eigh(op.entries(), want_vectors);
}

std::vector<double> eigenvalues(const ComplexMatrix& h) { return eigh(h, false).values; }

std::vector<std::pair<int, int>> degenerate_clusters(const std::vector<double>& values,
                                                     double tol) {
  std::vector<std::pair<int, int>> clusters;
  const int n = static_cast<int>(values.size());
  int first = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || values[i] - values[i - 1] > tol) {
      if (i - first > 1) clusters.emplace_back(first, i);
      first = i;
    }
  }
  return clusters;
}

Spectrum square_ring_closed_form(int N, double phi, double lambda2k, int eta, double t) {
  if (N < 2) throw std::invalid_argument("square_ring_closed_form: N must be >= 2");
  if (eta != 0 && eta != 1) {
    throw std::invalid_argument("square_ring_closed_form: only eta = 0 or eta = 1 have a closed form");
  }
  Spectrum s;
  s.values.reserve(N);
  for (int n = 1; n <= N; ++n) {
    const double arg = eta == 1 ? (2.0 * std::numbers::pi * n + phi) / N
                                : std::numbers::pi * n / (N + 1);
    s.values.push_back(-2.0 * t * std::cos(arg) - lambda2k * t);
  }
  std::sort(s.values.begin(), s.values.end());
  return s;
}

}  // namespace tqpt
