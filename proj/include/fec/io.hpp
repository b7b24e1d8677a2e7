#pragma once

#include <Eigen/Dense>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fec/frames.hpp"
#include "fec/geometry.hpp"
#include "fec/linalg.hpp"

namespace fec::io {

inline constexpr const char* kFormatVersion = "1";

/// Writes via a temp file + rename so readers never see partial output.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string nodes_csv(const std::vector<Point2>& interior,
                             const std::vector<Point2>& boundary) {
  std::ostringstream os;
  os << "x,y,kind\n";
  for (const auto& p : interior)
    os << fmt17(p.x) << ',' << fmt17(p.y) << ",interior\n";
  for (const auto& p : boundary)
    os << fmt17(p.x) << ',' << fmt17(p.y) << ",boundary\n";
  return os.str();
}

inline std::string error_curve_csv(const std::vector<std::pair<int, double>>& rows) {
  std::ostringstream os;
  os << "N,max_error\n";
  for (const auto& [n, err] : rows) os << n << ',' << fmt17(err) << '\n';
  return os.str();
}

inline std::string spectrum_csv(const Eigen::VectorXd& sigma) {
  std::ostringstream os;
  os << "i,sigma_raw,sigma_normalized\n";
  const double smax = sigma.size() ? sigma[0] : 0.0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    os << (i + 1) << ',' << fmt17(sigma[i]) << ','
       << fmt17(smax > 0 ? sigma[i] / smax : 0.0) << '\n';
  return os.str();
}

inline std::string coeffs_csv(const FrameSpec& spec, const Eigen::VectorXcd& coeffs) {
  std::ostringstream os;
  os << "l1,l2,re,im\n";
  const auto idx = linear_index(spec);
  for (std::size_t j = 0; j < idx.size(); ++j)
    os << idx[j].l1 << ',' << idx[j].l2 << ',' << fmt17(coeffs[j].real()) << ','
       << fmt17(coeffs[j].imag()) << '\n';
  return os.str();
}

}  // namespace fec::io
