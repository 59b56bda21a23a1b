#pragma once

#include <string>

#include "pfrec/bench.hpp"

namespace pfrec {

/// `omega_size,ratio,trials,successes,rate` with one row per cell, LF endings.
/// ratio uses shortest general form with 6 significant digits, rate 6 decimals.
std::string csv_string(const PhaseGrid &grid);
void write_csv(const PhaseGrid &grid, const std::string &path);

std::string format_ratio(double r);
std::string format_rate(double r);

/// Binary P5 of the real part, min-max scaled to 0..255. A sidecar
/// `<path>.txt` records the affine map from bytes back to values.
void write_pgm(const Image2D &img, const std::string &path);

/// Bytes of the P5 encoding (header included).
std::string pgm_bytes(const Image2D &img, double *min_out = nullptr, double *max_out = nullptr);

} // namespace pfrec
