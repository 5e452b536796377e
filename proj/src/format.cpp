#include "torus_qpt/format.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace tqpt {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string spectrum_csv(const Spectrum& s) {
  std::string out = "index,eigenvalue\n";
  for (int i = 0; i < s.size(); ++i) {
    out += std::to_string(i) + "," + format_double(s.values[i]) + "\n";
  }
  return out;
}

std::string blocks_csv(const std::vector<BlochBlock>& blocks) {
  std::string out = "k,lambda";
  if (!blocks.empty()) {
    const auto n = blocks.front().matrix.rows();
    for (Eigen::Index i = 1; i <= n; ++i) {
      for (Eigen::Index j = 1; j <= n; ++j) {
        const std::string ij = std::to_string(i) + "_" + std::to_string(j);
        out += ",re_" + ij + ",im_" + ij;
      }
    }
  }
  out += "\n";
  for (const auto& b : blocks) {
    out += format_double(b.k) + "," + format_double(b.lambda);
    for (Eigen::Index i = 0; i < b.matrix.rows(); ++i) {
      for (Eigen::Index j = 0; j < b.matrix.cols(); ++j) {
        out += "," + format_double(b.matrix(i, j).real()) + "," + format_double(b.matrix(i, j).imag());
      }
    }
    out += "\n";
  }
  return out;
}

std::string band_csv(const std::vector<double>& eta, const std::vector<std::vector<double>>& levels) {
  if (eta.size() != levels.size()) throw std::invalid_argument("band_csv: size mismatch");
  std::string out = "eta";
  const std::size_t n = levels.empty() ? 0 : levels.front().size();
  for (std::size_t i = 1; i <= n; ++i) out += ",e" + std::to_string(i);
  out += "\n";
  for (std::size_t r = 0; r < eta.size(); ++r) {
    out += format_double(eta[r]);
    for (double v : levels[r]) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

std::string sweep_csv(const SweepResult& r) {
  std::string out = "eta,e_g,d2_numeric,d2_analytic\n";
  for (std::size_t i = 0; i < r.eta_grid.size(); ++i) {
    out += format_double(r.eta_grid[i]) + "," + format_double(r.e_g_curve[i]) + "," +
           format_double(r.d2_numeric[i]) + "," + format_double(r.d2_analytic[i]) + "\n";
  }
  return out;
}

std::string fidelity_csv(const FidelityCurve& c) {
  std::string out = "delta,f_exact,f_perturbative\n";
  for (std::size_t i = 0; i < c.delta_grid.size(); ++i) {
    out += format_double(c.delta_grid[i]) + "," + format_double(c.f_exact[i]) + "," +
           format_double(c.f_perturbative[i]) + "\n";
  }
  return out;
}

namespace {
nlohmann::ordered_json fit_json(const LinearFit& f) {
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}};
}
}  // namespace

nlohmann::ordered_json scaling_json(const ScalingReport& r) {
  nlohmann::ordered_json j;
  j["n_values"] = r.n_values;
  j["ln_eta_m"] = r.ln_eta_m;
  j["ln_abs_peak"] = r.ln_abs_peak;
  j["fit_eta"] = fit_json(r.fit_eta);
  j["fit_peak"] = fit_json(r.fit_peak);
  const auto& pc = r.paper_comparison;
  j["paper_comparison"] = {
      {"slope_ref", PaperComparison::slope_ref},
      {"intercept_ref", PaperComparison::intercept_ref},
      {"slope_ref2", PaperComparison::slope_ref2},
      {"intercept_ref2", PaperComparison::intercept_ref2},
      {"deviations",
       {{"slope", pc.slope_dev},
        {"intercept", pc.intercept_dev},
        {"slope2", pc.slope2_dev},
        {"intercept2", pc.intercept2_dev}}}};
  return j;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    if (!f) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace tqpt
