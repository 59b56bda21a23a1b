#include "pfrec/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pfrec {

std::string format_ratio(double r) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, r, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

std::string format_rate(double r) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, r, std::chars_format::fixed, 6);
  return std::string(buf, res.ptr);
}

std::string csv_string(const PhaseGrid &grid) {
  std::string out = "omega_size,ratio,trials,successes,rate\n";
  for (std::size_t i = 0; i < grid.omega_sizes.size(); ++i) {
    for (std::size_t j = 0; j < grid.ratio_bins.size(); ++j) {
      out += std::to_string(grid.omega_sizes[i]);
      out += ',';
      out += format_ratio(grid.ratio_bins[j]);
      out += ',';
      out += std::to_string(grid.trials_per_cell);
      out += ',';
      out += std::to_string(grid.success_counts[i][j]);
      out += ',';
      out += format_rate(grid.rate(i, j));
      out += '\n';
    }
  }
  return out;
}

namespace {

void write_file(const std::string &path, const std::string &bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("failed writing " + path);
}

} // namespace

void write_csv(const PhaseGrid &grid, const std::string &path) { write_file(path, csv_string(grid)); }

std::string pgm_bytes(const Image2D &img, double *min_out, double *max_out) {
  const Eigen::MatrixXd re = img.real();
  const double lo = re.size() > 0 ? re.minCoeff() : 0.0;
  const double hi = re.size() > 0 ? re.maxCoeff() : 0.0;
  std::string out = "P5\n" + std::to_string(img.cols()) + " " + std::to_string(img.rows()) + "\n255\n";
  for (Index i = 0; i < img.rows(); ++i) {
    for (Index j = 0; j < img.cols(); ++j) {
      const double v = hi > lo ? (re(i, j) - lo) / (hi - lo) : 0.0;
      out += static_cast<char>(static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)));
    }
  }
  if (min_out) *min_out = lo;
  if (max_out) *max_out = hi;
  return out;
}

void write_pgm(const Image2D &img, const std::string &path) {
  double lo = 0.0, hi = 0.0;
  write_file(path, pgm_bytes(img, &lo, &hi));
  std::ostringstream side;
  side.precision(17);
  side << "min " << lo << "\nmax " << hi << "\nvalue = min + (max - min) * byte / 255\n";
  write_file(path + ".txt", side.str());
}

} // namespace pfrec
