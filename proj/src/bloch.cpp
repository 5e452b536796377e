#include "torus_qpt/bloch.hpp"

#include <cmath>
#include <numbers>

namespace tqpt {

namespace {

constexpr double kPi = std::numbers::pi;

// Gauge factor of the honeycomb Fourier modes: columns 4n-1 and 4n-2 carry
// e^{-ik/2}, columns 4n and 4n-3 carry 1.
Complex sublattice_phase(int col, double k) {
  const int r = col % 4;
  return (r == 2 || r == 3) ? std::polar(1.0, -0.5 * k) : Complex(1.0, 0.0);
}

ComplexMatrix project_onto_mode(const ModelSpec& spec, const std::vector<Bond>& bonds, double k) {
  ComplexMatrix block = ComplexMatrix::Zero(spec.N, spec.N);
  const bool honeycomb = spec.kind == LatticeKind::honeycomb;
  for (const Bond& b : bonds) {
    Complex amp = b.amplitude * std::polar(1.0, k * b.row_offset);
    if (honeycomb) {
      amp *= std::conj(sublattice_phase(b.from_col, k)) * sublattice_phase(b.to_col, k);
    }
    const int i = b.from_col - 1;
    const int j = b.to_col - 1;
    block(i, j) += amp;
    block(j, i) += std::conj(amp);
  }
  return block;
}

std::vector<BlochBlock> reduce(const ModelSpec& spec) {
  const auto bonds = row_bonds(spec);
  std::vector<BlochBlock> blocks;
  blocks.reserve(spec.M);
  for (int m = 1; m <= spec.M; ++m) {
    BlochBlock b;
    b.mode = m;
    b.k = mode_momentum(m, spec.M);
    b.kind = spec.kind;
    b.lambda = spec.kind == LatticeKind::honeycomb ? honeycomb_lambda(b.k) : square_lambda(b.k);
    b.matrix = project_onto_mode(spec, bonds, b.k);
    blocks.push_back(std::move(b));
  }
  return blocks;
}

void add_seam(ComplexMatrix& h, int N, double eta, double phi, double t) {
  const Complex seam = -eta * t * std::polar(1.0, phi);
  h(N - 1, 0) += seam;
  h(0, N - 1) += std::conj(seam);
}

}  // namespace

double mode_momentum(int m, int M) { return 2.0 * kPi * m / M; }

double honeycomb_lambda(double k) { return 2.0 * std::cos(0.5 * k); }

double square_lambda(double k) { return 2.0 * std::cos(k); }

ComplexMatrix peierls_ring(double lambda, int N, double eta, double phi, double t) {
  if (N < 2 || N % 2 != 0) throw InvalidModel("Peierls ring needs an even N >= 2");
  ComplexMatrix h = ComplexMatrix::Zero(N, N);
  for (int i = 0; i + 1 < N; ++i) {
    const double hop = (i % 2 == 0) ? -lambda * t : -t;
    h(i, i + 1) += hop;
    h(i + 1, i) += hop;
  }
  add_seam(h, N, eta, phi, t);
  return h;
}

ComplexMatrix uniform_ring(double lambda2k, int N, double eta, double phi, double t) {
  if (N < 2) throw InvalidModel("ring needs N >= 2");
  ComplexMatrix h = ComplexMatrix::Zero(N, N);
  for (int i = 0; i < N; ++i) h(i, i) = -lambda2k * t;
  for (int i = 0; i + 1 < N; ++i) {
    h(i, i + 1) += -t;
    h(i + 1, i) += -t;
  }
  add_seam(h, N, eta, phi, t);
  return h;
}

std::vector<BlochBlock> honeycomb_blocks(const ModelSpec& spec) {
  if (spec.kind != LatticeKind::honeycomb) throw InvalidModel("honeycomb_blocks: square spec");
  return reduce(spec);
}

std::vector<BlochBlock> square_blocks(const ModelSpec& spec) {
  if (spec.kind != LatticeKind::square) throw InvalidModel("square_blocks: honeycomb spec");
  return reduce(spec);
}

std::vector<BlochBlock> bloch_blocks(const ModelSpec& spec) { return reduce(spec); }

bool in_critical_set(double k) {
  constexpr double eps = 1e-12;
  return k > 2.0 * kPi / 3.0 + eps && k < 4.0 * kPi / 3.0 - eps;
}

std::vector<int> critical_modes(int M) {
  std::vector<int> modes;
  for (int m = 1; m <= M; ++m) {
    if (M < 3 * m && 3 * m < 2 * M) modes.push_back(m);
  }
  return modes;
}

std::vector<int> boundary_modes(int M) {
  std::vector<int> modes;
  for (int m = 1; m <= M; ++m) {
    if (3 * m == M || 3 * m == 2 * M) modes.push_back(m);
  }
  return modes;
}

}  // namespace tqpt
