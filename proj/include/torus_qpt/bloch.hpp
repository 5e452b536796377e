#pragma once

// Reduction of the torus Hamiltonians to M independent momentum sectors.
// Translation by one row commutes with H for both lattices, so Fourier
// transforming the row index leaves one N x N ring per k = 2 pi m / M.

#include <vector>

#include "torus_qpt/model.hpp"

namespace tqpt {

struct BlochBlock {
  int mode = 0;         // m in 1..M
  double k = 0.0;       // 2 pi m / M
  double lambda = 0.0;  // 2 cos(k/2) (honeycomb) or 2 cos(k) (square)
  LatticeKind kind = LatticeKind::honeycomb;
  ComplexMatrix matrix;
};

/// k = 2 pi m / M, m = 1..M.
double mode_momentum(int m, int M);

double honeycomb_lambda(double k);
double square_lambda(double k);

/// Peierls ring: -lambda t on bonds (2n-1, 2n), -t on (2n, 2n+1), and
/// -eta t e^{i phi} at (N, 1) with its conjugate at (1, N). N must be even.
ComplexMatrix peierls_ring(double lambda, int N, double eta, double phi, double t);

/// Uniform ring with on-site energy -lambda2k t and the same seam bond.
ComplexMatrix uniform_ring(double lambda2k, int N, double eta, double phi, double t);

/// M blocks ordered by m = 1..M. Built by projecting the row bond pattern onto
/// each momentum sector; the honeycomb sublattice phases are absorbed so the
/// blocks come out as real-hopping Peierls rings.
std::vector<BlochBlock> honeycomb_blocks(const ModelSpec& spec);
std::vector<BlochBlock> square_blocks(const ModelSpec& spec);
std::vector<BlochBlock> bloch_blocks(const ModelSpec& spec);

/// 2pi/3 < k < 4pi/3 (strict), i.e. |2 cos(k/2)| < 1. Values within 1e-12 of
/// either boundary count as on the boundary.
bool in_critical_set(double k);

/// Modes m in 1..M whose momentum is strictly inside the critical window,
/// decided in integer arithmetic (M < 3m < 2M).
std::vector<int> critical_modes(int M);

/// Modes sitting exactly on the window boundary (|lambda| = 1); nonempty only
/// when 3 divides M.
std::vector<int> boundary_modes(int M);

}  // namespace tqpt
