#include "lagspec/acov.hpp"
#include "lagspec/cli.hpp"
#include "lagspec/dependence.hpp"
#include "lagspec/json_io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lagspec;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "lagspec");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "lagspec_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("spectral grid JSON round trip") {
  const auto series = simulate(ProcessModel::default_var1(), 256, 2);
  const auto bw = Bandwidth::from_rule(256);
  const auto grid = estimate_spectrum(sample_autocov(series, bw.value), Kernel::bartlett(), bw, theorem_grid(bw));
  const auto j = to_json(grid);
  CHECK(j["schema_version"] == kSchemaVersion);
  const auto back = grid_from_json(Json::parse(j.dump()));
  REQUIRE(back.size() == grid.size());
  for (std::size_t l = 0; l < grid.size(); ++l) CHECK(back.matrices[l] == grid.matrices[l]);
  CHECK(back.freqs == grid.freqs);
}

TEST_CASE("kernel-info prints the kernel constants") {
  const auto r = cli({"kernel-info", "--kernel", "parzen"});
  CHECK(r.code == 0);
  CHECK(r.out.find("kappa: 0.5392857143") != std::string::npos);
  CHECK(r.out.find("K_q: 6") != std::string::npos);
  CHECK(r.out.find("psd_guarantee: true") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(cli({"bogus"}).code == 2);
  CHECK(cli({"estimate"}).code == 2);
  CHECK(cli({"kernel-info", "--unknown-flag"}).code == 2);
  const auto v = cli({"verify", "--experiment", "gumbel", "--reps", "50"});
  CHECK(v.code == 2);
  CHECK(v.err.find("reps") != std::string::npos);
}

TEST_CASE("simulate then estimate keeps the metadata chain") {
  const auto dir = temp_dir();
  const auto csv = (dir / "x.csv").string();
  const auto out = (dir / "spec.json").string();
  REQUIRE(cli({"simulate", "--model", "ar1:phi=0.5", "--seed", "7", "-T", "1024", "--out", csv}).code == 0);
  REQUIRE(cli({"estimate", "--input", csv, "--kernel", "bartlett", "--seed", "11", "--output", out}).code == 0);
  const auto j = read_json(out);
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["bandwidth"] == 16);
  CHECK(j["provenance"]["seed"] == 7);
  CHECK(j["provenance"]["model"] == "ar1:phi=0.5");
  CHECK(j["config"]["kernel"] == "bartlett");
  const auto grid = grid_from_json(j);
  CHECK(grid.size() == 17);

  const auto bands = cli({"bands", "--input", csv, "--level", "1.5"});
  CHECK(bands.code == 2);
  CHECK(bands.err.find("InvalidLevel") != std::string::npos);

  const auto ok = cli({"bands", "--input", csv, "--level", "0.9", "--method", "pointwise", "--assume-smooth"});
  CHECK(ok.code == 0);
  const auto bj = Json::parse(ok.out);
  CHECK(bj["method"] == "clt_pointwise");
  CHECK(bj["target"] == "f");
  CHECK(bj["entries"][0]["lower"].size() == 17);
  std::filesystem::remove_all(dir);
}

TEST_CASE("domain errors exit with 1 and name the error") {
  const auto dir = temp_dir();
  const auto csv = dir / "bad.csv";
  std::ofstream(csv) << "1,2\n3,x\n";
  const auto r = cli({"estimate", "--input", csv.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("ParseError") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("depmeasure report") {
  const auto r = cli({"depmeasure", "--model", "ar1:phi=0.5", "--p", "4", "--horizon", "8", "--reps", "500"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["profile"]["delta_max"].size() == 9);
  CHECK(j["conditions"]["geometric"] == "pass");
}
