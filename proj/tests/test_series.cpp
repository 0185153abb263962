#include "lagspec/error.hpp"
#include "lagspec/series.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

using lagspec::Error;
using lagspec::ErrorCode;
using lagspec::MultivariateSeries;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("series construction validates shape and values") {
  CHECK(code_of([] { MultivariateSeries(Eigen::MatrixXd::Zero(1, 2)); }) == ErrorCode::InsufficientData);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(4, 2);
  bad(2, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK(code_of([&] { MultivariateSeries{bad}; }) == ErrorCode::NonFinite);
}

TEST_CASE("CSV round trip is bit exact") {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> nd;
  Eigen::MatrixXd v(50, 3);
  for (Eigen::Index r = 0; r < v.rows(); ++r) {
    for (Eigen::Index c = 0; c < v.cols(); ++c) v(r, c) = nd(gen) * std::pow(10.0, static_cast<double>(c * 7 - 7));
  }
  const auto path = std::filesystem::temp_directory_path() / "lagspec_roundtrip.csv";
  lagspec::write_csv(MultivariateSeries(v), path);
  const auto back = lagspec::load_csv(path, false);
  CHECK(back.values() == v);
  std::filesystem::remove(path);
}

TEST_CASE("CSV parse errors carry coordinates") {
  const auto p1 = write_temp("lagspec_bad_cell.csv", "x,y\n1,2\n3,abc\n");
  try {
    lagspec::load_csv(p1, true);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    CHECK(std::string(e.what()).find("col 2") != std::string::npos);
  }
  const auto p2 = write_temp("lagspec_ragged.csv", "1,2\n3\n4,5\n");
  try {
    lagspec::load_csv(p2, false);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("ragged row 2") != std::string::npos);
  }
  const auto p3 = write_temp("lagspec_short.csv", "1,2\n");
  CHECK(code_of([&] { lagspec::load_csv(p3, false); }) == ErrorCode::InsufficientData);
  const auto p4 = write_temp("lagspec_plus.csv", "+1.5,-2\n\n3e2,4\n");
  const auto s = lagspec::load_csv(p4, false);
  CHECK(s.t_len() == 2);
  CHECK(s(0, 0) == 1.5);
  CHECK(s(1, 0) == 300.0);
  for (const auto& p : {p1, p2, p3, p4}) std::filesystem::remove(p);
}

TEST_CASE("centering removes column means and is idempotent") {
  Eigen::MatrixXd v(4, 2);
  v << 1, 10, 2, 20, 3, 30, 6, 40;
  const auto c = lagspec::center(MultivariateSeries(v));
  CHECK(c.centered());
  CHECK(c.values().colwise().sum().cwiseAbs().maxCoeff() < 1e-12);
  CHECK(c(0, 0) == doctest::Approx(-2.0));
  const auto cc = lagspec::center(c);
  CHECK(cc.values() == c.values());
}
