#pragma once

// Tight-binding Hamiltonians on a honeycomb torus and a square torus with a
// tunable boundary coupling eta and a Peierls flux phase phi on the seam.

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace tqpt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Raised for any parameter set that violates a model or config invariant.
class InvalidModel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class LatticeKind { honeycomb, square };

std::string_view to_string(LatticeKind kind);
LatticeKind lattice_kind_from_string(std::string_view name);

/// Parameters of one torus. Rows m = 1..M run around the circumference,
/// columns n = 1..N along each ring; the seam bond joins column N to column 1.
struct ModelSpec {
  LatticeKind kind = LatticeKind::honeycomb;
  int M = 3;
  int N = 4;
  double t = 1.0;
  double eta = 0.0;
  double phi = 0.0;  // radians

  /// Throws InvalidModel if the spec cannot be built.
  void validate() const;

  /// phi folded into [0, 2pi).
  double reduced_phi() const;

  ModelSpec with_eta(double new_eta) const {
    ModelSpec s = *this;
    s.eta = new_eta;
    return s;
  }
};

/// Site (m, n) with 1-based indices, as used in the bond sums.
struct SiteLabel {
  int m;
  int n;
  friend bool operator==(const SiteLabel&, const SiteLabel&) = default;
};

/// Row-major index of site (m, n): m outer, n inner, both 1-based.
inline int site_index(int m, int n, int N) { return (m - 1) * N + (n - 1); }

/// A hopping term amplitude * a^dagger_{from} a_{to} on a translation-invariant
/// lattice, written for row m = 1; `row_offset` is the row of `to` minus the
/// row of `from`. The Hermitian conjugate is implied.
struct Bond {
  int from_col;
  int to_col;
  int row_offset;
  Complex amplitude;
};

/// Bond pattern of one row of the lattice (every row is a translate of it).
std::vector<Bond> row_bonds(const ModelSpec& spec);

/// Dense Hermitian single-particle Hamiltonian with its site ordering.
class HermitianOperator {
 public:
  HermitianOperator(ComplexMatrix entries, std::vector<SiteLabel> basis);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const ComplexMatrix& entries() const { return entries_; }
  const std::vector<SiteLabel>& basis() const { return basis_; }

  /// max |H - H^dagger| over all entries.
  double hermiticity_defect() const;

 private:
  ComplexMatrix entries_;
  std::vector<SiteLabel> basis_;
};

double hermiticity_defect(const ComplexMatrix& h);

HermitianOperator build_honeycomb_torus(const ModelSpec& spec);
HermitianOperator build_square_torus(const ModelSpec& spec);

/// Dispatches on spec.kind.
HermitianOperator build_torus(const ModelSpec& spec);

}  // namespace tqpt
