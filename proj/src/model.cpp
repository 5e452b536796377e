#include "torus_qpt/model.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace tqpt {

std::string_view to_string(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::honeycomb:
      return "honeycomb";
    case LatticeKind::square:
      return "square";
  }
  return "unknown";
}

LatticeKind lattice_kind_from_string(std::string_view name) {
  if (name == "honeycomb") return LatticeKind::honeycomb;
  if (name == "square") return LatticeKind::square;
  throw InvalidModel("unknown lattice kind '" + std::string(name) + "'");
}

void ModelSpec::validate() const {
  if (!(std::isfinite(t) && t > 0.0)) {
    throw InvalidModel("hopping t must be positive and finite");
  }
  if (!(std::isfinite(eta) && eta >= 0.0)) {
    throw InvalidModel("boundary coupling eta must be finite and >= 0");
  }
  if (!std::isfinite(phi)) throw InvalidModel("flux phase phi must be finite");
  switch (kind) {
    case LatticeKind::honeycomb:
      if (N < 4 || N % 4 != 0) {
        throw InvalidModel("honeycomb torus needs N to be a positive multiple of 4, got N=" +
                           std::to_string(N));
      }
      if (M < 3) {
        throw InvalidModel("honeycomb torus needs M >= 3, got M=" + std::to_string(M));
      }
      break;
    case LatticeKind::square:
      if (M < 2 || N < 2) {
        throw InvalidModel("square torus needs M >= 2 and N >= 2");
      }
      break;
  }
}

double ModelSpec::reduced_phi() const {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(phi, two_pi);
  if (r < 0.0) r += two_pi;
  return r;
}

std::vector<Bond> row_bonds(const ModelSpec& spec) {
  spec.validate();
  const Complex hop(-spec.t, 0.0);
  std::vector<Bond> bonds;
  for (int n = 1; n < spec.N; ++n) bonds.push_back({n, n + 1, 0, hop});
  if (spec.kind == LatticeKind::honeycomb) {
    for (int q = 1; q <= spec.N / 4; ++q) {
      bonds.push_back({4 * q, 4 * q - 1, 1, hop});
      bonds.push_back({4 * q - 3, 4 * q - 2, 1, hop});
    }
  } else {
    for (int n = 1; n <= spec.N; ++n) bonds.push_back({n, n, 1, hop});
  }
  if (spec.eta != 0.0) {
    bonds.push_back({spec.N, 1, 0, -spec.eta * spec.t * std::polar(1.0, spec.phi)});
  }
  return bonds;
}

HermitianOperator::HermitianOperator(ComplexMatrix entries, std::vector<SiteLabel> basis)
    : entries_(std::move(entries)), basis_(std::move(basis)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("HermitianOperator: matrix is not square");
  }
  if (static_cast<Eigen::Index>(basis_.size()) != entries_.rows()) {
    throw std::invalid_argument("HermitianOperator: basis size does not match dimension");
  }
}

double hermiticity_defect(const ComplexMatrix& h) {
  if (h.size() == 0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

double HermitianOperator::hermiticity_defect() const { return tqpt::hermiticity_defect(entries_); }

namespace {

HermitianOperator assemble(const ModelSpec& spec) {
  const int dim = spec.M * spec.N;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  const auto bonds = row_bonds(spec);
  for (int m = 1; m <= spec.M; ++m) {
    for (const Bond& b : bonds) {
      const int m_to = ((m - 1 + b.row_offset) % spec.M + spec.M) % spec.M + 1;
      const int i = site_index(m, b.from_col, spec.N);
      const int j = site_index(m_to, b.to_col, spec.N);
      // Accumulate: on small tori two bonds may land on the same matrix element.
      h(i, j) += b.amplitude;
      h(j, i) += std::conj(b.amplitude);
    }
  }
  std::vector<SiteLabel> basis;
  basis.reserve(dim);
  for (int m = 1; m <= spec.M; ++m) {
    for (int n = 1; n <= spec.N; ++n) basis.push_back({m, n});
  }
  return HermitianOperator(std::move(h), std::move(basis));
}

}  // namespace

HermitianOperator build_honeycomb_torus(const ModelSpec& spec) {
  if (spec.kind != LatticeKind::honeycomb) {
    throw InvalidModel("build_honeycomb_torus called with a square spec");
  }
  return assemble(spec);
}

HermitianOperator build_square_torus(const ModelSpec& spec) {
  if (spec.kind != LatticeKind::square) {
    throw InvalidModel("build_square_torus called with a honeycomb spec");
  }
  return assemble(spec);
}

HermitianOperator build_torus(const ModelSpec& spec) {
  return spec.kind == LatticeKind::honeycomb ? build_honeycomb_torus(spec)
                                             : build_square_torus(spec);
}

}  // namespace tqpt
