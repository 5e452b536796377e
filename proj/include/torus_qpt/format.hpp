#pragma once

// Plot-ready text outputs. All floats are written with 17 significant digits
// and '\n' line endings so identical inputs give byte-identical files.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "torus_qpt/bloch.hpp"
#include "torus_qpt/criticality.hpp"
#include "torus_qpt/eigensolve.hpp"

namespace tqpt {

std::string format_double(double v);

/// index,eigenvalue
std::string spectrum_csv(const Spectrum& s);

/// k,lambda,re_1_1,im_1_1,re_1_2,... one row per block.
std::string blocks_csv(const std::vector<BlochBlock>& blocks);

/// eta,e1,...,eN
std::string band_csv(const std::vector<double>& eta, const std::vector<std::vector<double>>& levels);

/// eta,e_g,d2_numeric,d2_analytic
std::string sweep_csv(const SweepResult& r);

/// delta,f_exact,f_perturbative
std::string fidelity_csv(const FidelityCurve& c);

nlohmann::ordered_json scaling_json(const ScalingReport& r);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace tqpt
