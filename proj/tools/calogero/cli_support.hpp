#pragma once

// Argument parsing and output formatting for the calogero command-line tool.

#include <exception>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace calogero::cli {

/// Plain decimal ("0.25", "-1e-3") or a multiple of pi written pi, -pi, pi/k, -pi/k.
/// Throws DomainError on anything else.
double parse_number(std::string_view text);

/// Comma-separated list of parse_number values.
std::vector<double> parse_list(std::string_view text);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

/// Machine-parsable one-line error: {"error":"<kind>","message":"<what>"}.
std::string error_line(const std::exception& e);

/// Exception class name for the library hierarchy ("CausticError", ...).
std::string error_kind(const std::exception& e);

/// Binary P5 graymap; `values` row-major with row 0 at the top, mapped linearly from
/// [lo, hi] to [0, 255] (constant fields map to 0).
void write_pgm(const std::string& path, int width, int height, std::span<const double> values, double lo, double hi);

}  // namespace calogero::cli
