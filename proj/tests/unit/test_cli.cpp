#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "calogero/errors.hpp"
#include "cli_support.hpp"

using namespace calogero;
using cli::parse_number;

TEST_CASE("numbers and multiples of pi") {
  CHECK(parse_number("0.25") == 0.25);
  CHECK(parse_number("-1e-3") == -1e-3);
  CHECK(parse_number("pi") == std::numbers::pi);
  CHECK(parse_number("-pi") == -std::numbers::pi);
  CHECK(parse_number("pi/16") == std::numbers::pi / 16);
  CHECK(parse_number("-pi/4") == -std::numbers::pi / 4);
  for (const char* bad : {"", "pi/", "pi/0", "2pi", "pi/x", "1.5abc", "nan", "inf"})
    CHECK_THROWS_AS(parse_number(bad), DomainError);
  CHECK(cli::parse_list("-1,0,pi/2") == std::vector<double>{-1.0, 0.0, std::numbers::pi / 2});
  CHECK_THROWS_AS(cli::parse_list("1,,2"), DomainError);
}

TEST_CASE("shortest round-trip formatting") {
  CHECK(cli::format_double(0.1) == "0.1");
  CHECK(cli::format_double(-2.0) == "-2");
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int k = 0; k < 1000; ++k) {
    const double v = u(rng) * std::pow(10.0, k % 30 - 15);
    CHECK(parse_number(cli::format_double(v)) == v);
  }
}

TEST_CASE("error lines") {
  const CausticError e("caustic at t=0", 0.0);
  CHECK(cli::error_kind(e) == "CausticError");
  CHECK(cli::error_line(e) == R"({"error":"CausticError","message":"caustic at t=0"})");
  CHECK(cli::error_kind(DomainError("x")) == "DomainError");
  const DomainError quoted("bad \"value\"");
  CHECK(cli::error_line(quoted).find(R"(bad \"value\")") != std::string::npos);
}

TEST_CASE("graymap output") {
  const auto path = (std::filesystem::temp_directory_path() / "calogero_test.pgm").string();
  const std::vector<double> values{0.0, 0.5, 1.0, 2.0};
  cli::write_pgm(path, 2, 2, values, 0.0, 1.0);
  std::ifstream in(path, std::ios::binary);
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  in >> magic >> w >> h >> maxval;
  in.get();
  std::vector<unsigned char> px(4);
  in.read(reinterpret_cast<char*>(px.data()), 4);
  CHECK(magic == "P5");
  CHECK(w == 2);
  CHECK(h == 2);
  CHECK(maxval == 255);
  CHECK(px[0] == 0);
  CHECK((px[1] == 127 || px[1] == 128));
  CHECK(px[2] == 255);
  CHECK(px[3] == 255);
  std::remove(path.c_str());
}
