#include "cli_support.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "calogero/errors.hpp"

namespace calogero::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool parse_decimal(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

double parse_number(std::string_view text) {
  std::string_view s = trim(text);
  double value = 0.0;
  if (parse_decimal(s, value)) return value;

  double sign = 1.0;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    sign = s.front() == '-' ? -1.0 : 1.0;
    s.remove_prefix(1);
  }
  if (s.substr(0, 2) == "pi") {
    s.remove_prefix(2);
    if (s.empty()) return sign * std::numbers::pi;
    double k = 0.0;
    if (s.front() == '/' && parse_decimal(s.substr(1), k) && k != 0.0) return sign * std::numbers::pi / k;
  }
  throw DomainError("cannot parse number '" + std::string(text) + "' (expected a decimal or pi/k)");
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_number(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const CausticError*>(&e)) return "CausticError";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const SizeLimitError*>(&e)) return "SizeLimitError";
  if (dynamic_cast<const SingularityError*>(&e)) return "SingularityError";
  if (dynamic_cast<const DegenerateSamplingError*>(&e)) return "DegenerateSamplingError";
  if (dynamic_cast<const NoSolutionError*>(&e)) return "NoSolutionError";
  if (dynamic_cast<const ConjectureViolation*>(&e)) return "ConjectureViolation";
  if (dynamic_cast<const Error*>(&e)) return "Error";
  return "InternalError";
}

std::string error_line(const std::exception& e) {
  nlohmann::ordered_json j;
  j["error"] = error_kind(e);
  j["message"] = e.what();
  return j.dump();
}

void write_pgm(const std::string& path, int width, int height, std::span<const double> values, double lo, double hi) {
  if (values.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    throw DomainError("write_pgm: value count does not match image size");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << "P5\n" << width << ' ' << height << "\n255\n";
  const double span = hi - lo;
  std::vector<unsigned char> row(static_cast<std::size_t>(width));
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const double v = values[static_cast<std::size_t>(r) * width + c];
      const double level = span > 0.0 ? std::clamp((v - lo) / span, 0.0, 1.0) : 0.0;
      row[static_cast<std::size_t>(c)] = static_cast<unsigned char>(std::lround(255.0 * level));
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace calogero::cli
