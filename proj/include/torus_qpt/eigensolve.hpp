#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "torus_qpt/model.hpp"

namespace tqpt {

/// Eigenvalues in ascending order; column i of `vectors` belongs to value i.
struct Spectrum {
  std::vector<double> values;
  std::optional<ComplexMatrix> vectors;

  int size() const { return static_cast<int>(values.size()); }
};

class NotHermitian : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EigenSolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxDenseDim = 8192;

/// Dense Hermitian eigendecomposition (Householder tridiagonalization followed
/// by implicit symmetric QR). Input must be Hermitian to 1e-12 relative to its
/// largest entry.
Spectrum eigh(const ComplexMatrix& h, bool want_vectors = false);
Spectrum eigh(const HermitianOperator& op, bool want_vectors = false);

/// Eigenvalues only, ascending.
std::vector<double> eigenvalues(const ComplexMatrix& h);

/// Half-open index ranges [first, last) of eigenvalues lying within `tol` of
/// their neighbour.
std::vector<std::pair<int, int>> degenerate_clusters(const std::vector<double>& values,
                                                     double tol = 1e-9);

/// Closed-form spectrum of the square-lattice ring at the two endpoints
/// eta = 1 (periodic with flux) and eta = 0 (open chain).
Spectrum square_ring_closed_form(int N, double phi, double lambda2k, int eta, double t);

/// Order-independent digest of a matrix, used in solver error messages.
std::string matrix_fingerprint(const ComplexMatrix& h);

}  // namespace tqpt
