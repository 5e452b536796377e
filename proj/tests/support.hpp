#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "torus_qpt/model.hpp"

namespace testing_support {

inline oracle::CMat from_eigen(const tqpt::ComplexMatrix& m) {
  oracle::CMat out = oracle::zeros(static_cast<int>(m.rows()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

inline double max_abs_diff(const oracle::CMat& a, const tqpt::ComplexMatrix& b) {
  double d = 0.0;
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) d = std::max(d, std::abs(a[i][j] - b(i, j)));
  return d;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return a.size() == b.size() ? d : INFINITY;
}

}  // namespace testing_support
