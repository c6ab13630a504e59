#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gpdo/cli.hpp"
#include "gpdo/errors.hpp"

using namespace gpdo;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("gpdo-cli-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<fs::path> files_in(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json json_in(const fs::path& dir) {
  for (const auto& p : files_in(dir))
    if (p.extension() == ".json") return nlohmann::json::parse(slurp(p));
  return {};
}

std::string without_location(std::string text) {
  std::string out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const bool skip = line.rfind("# out=", 0) == 0 || line.rfind("# threads=", 0) == 0 ||
                      line.find("\"out\":") != std::string::npos || line.find("\"threads\":") != std::string::npos;
    if (!skip) out += line + "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("interval and threshold examples print the stated verdicts") {
  const auto dir = fresh_dir("examples");
  auto r = run_cli({"interval", "--n", "1", "--rho", "0.5", "--nu", "0.125", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out == "p in [1.3333333333333333, 4]\n");

  r = run_cli({"interval", "--n", "3", "--rho", "0.5", "--nu", "0.75", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out == "p in (1, inf) full range\n");

  r = run_cli({"threshold", "--n", "3", "--p", "4", "--rho", "0", "--delta", "0", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out == "kappa=2 ell=1 m0=0.5\n");

  r = run_cli({"threshold", "--n", "3", "--p", "4", "--rho", "0", "--delta", "1", "--out", dir.string()});
  CHECK(r.out == "kappa=2 ell=1 m0=1.5\n");
}

TEST_CASE("every subcommand writes one CSV and one JSON with the resolved config") {
  const std::vector<std::vector<std::string>> cases = {
      {"transform", "--samples", "3"},
      {"seminorm", "--symbol", "power", "--band", "64", "--class_m", "-1", "--class_l", "1"},
      {"classcheck", "--symbol", "power", "--band", "256", "--class_m", "-1", "--class_l", "1", "--window_lo", "16"},
      {"quantize", "--symbol", "power", "--band", "8"},
      {"hsnorm", "--group", "SU2", "--band", "3"},
      {"linf", "--symbol", "hlhw", "--band", "32", "--samples", "3"},
      {"lp-sharpness", "--lambdas", "8,16", "--iterations", "5", "--p", "3", "--nu", "0.1"},
      {"interval"},
      {"threshold"},
      {"weyl", "--group", "SU2", "--lambdas", "12,24", "--s", "3.1", "--levels", "8"},
      {"bmo", "--function", "log", "--band", "128"},
      {"audit", "--symbol", "schrodinger", "--band", "8", "--samples", "2"},
      {"selftest"},
  };
  for (auto args : cases) {
    CAPTURE(args[0]);
    const auto dir = fresh_dir("sub-" + args[0]);
    args.insert(args.end(), {"--out", dir.string()});
    const auto r = run_cli(args);
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') >= 1);
    const auto files = files_in(dir);
    REQUIRE(files.size() == 2);
    CHECK(files[0].extension() == ".csv");
    CHECK(files[1].extension() == ".json");
    CHECK(files[0].stem() == files[1].stem());
    CHECK(files[0].filename().string().rfind(args[0] + "-", 0) == 0);

    const auto j = json_in(dir);
    for (const char* key : {"name", "params", "series", "verdict", "tolerances"}) CHECK(j.contains(key));
    CHECK(j["name"] == args[0]);
    for (const auto& [key, def] : cli::default_config()) CHECK(j["params"].contains(key));

    const auto csv = slurp(files[0]);
    CHECK(csv.rfind("# experiment=" + args[0] + "\n", 0) == 0);
    CHECK(csv.find("# verdict=") != std::string::npos);
  }
}

TEST_CASE("identical config and seed give byte-identical outputs at any worker count") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"transform", "--group", "SU2", "--band", "2", "--seed", "9"},
        std::vector<std::string>{"lp-sharpness", "--lambdas", "8,16,32", "--iterations", "8", "--p", "4", "--nu", "0.1"},
        std::vector<std::string>{"audit", "--symbol", "random-gridded", "--band", "6"}}) {
    CAPTURE(args[0]);
    const auto a = fresh_dir("det-a"), moved = fresh_dir("det-moved"), b = fresh_dir("det-b");
    auto args_a = args, args_b = args;
    args_a.insert(args_a.end(), {"--out", a.string(), "--threads", "1"});
    args_b.insert(args_b.end(), {"--out", b.string(), "--threads", "4"});

    REQUIRE(run_cli(args_a).code == 0);
    fs::remove_all(moved);
    fs::rename(a, moved);
    REQUIRE(run_cli(args_a).code == 0);
    REQUIRE(run_cli(args_b).code == 0);
    const auto fa = files_in(a), fm = files_in(moved), fb = files_in(b);
    REQUIRE(fa.size() == 2);
    REQUIRE(fm.size() == 2);
    REQUIRE(fb.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(fa[i].filename() == fm[i].filename());
      CHECK(slurp(fa[i]) == slurp(fm[i]));
      CHECK(fa[i].filename() == fb[i].filename());
      CHECK(without_location(slurp(fa[i])) == without_location(slurp(fb[i])));
    }
  }
}

TEST_CASE("flags override GROUP_PDO_OUT which overrides the config file") {
  const auto from_file = fresh_dir("prec-file"), from_env = fresh_dir("prec-env"), from_flag = fresh_dir("prec-flag");
  const auto cfg = fresh_dir("prec-cfg") / "run.cfg";
  {
    std::ofstream c(cfg);
    c << "# test config\nn = 1\nrho = 0.5\nnu = 0.125   # trailing comment\nout = " << from_file.string() << "\n";
  }
  ::unsetenv("GROUP_PDO_OUT");
  auto r = run_cli({"interval", "--config", cfg.string()});
  CHECK(r.out == "p in [1.3333333333333333, 4]\n");
  CHECK(files_in(from_file).size() == 2);

  ::setenv("GROUP_PDO_OUT", from_env.string().c_str(), 1);
  r = run_cli({"interval", "--config", cfg.string(), "--nu", "0"});
  CHECK(r.out == "p in [2, 2]\n");
  CHECK(files_in(from_env).size() == 2);

  r = run_cli({"interval", "--config", cfg.string(), "--out", from_flag.string()});
  CHECK(files_in(from_flag).size() == 2);
  CHECK(json_in(from_flag)["params"]["nu"] == "0.125");
  ::unsetenv("GROUP_PDO_OUT");

  const auto resolved = cli::resolve_config({{"p", "3"}, {"out", "a"}}, {{"p", "5"}}, "b");
  CHECK(resolved.at("p") == "5");
  CHECK(resolved.at("out") == "b");
  CHECK(resolved.size() == cli::default_config().size());
}

TEST_CASE("config parsing rejects unknown keys and malformed lines") {
  CHECK(cli::parse_config("band = 4\n\n# c\n").at("band") == "4");
  CHECK_THROWS_AS(cli::parse_config("bogus = 1\n"), ArgumentError);
  CHECK_THROWS_AS(cli::parse_config("band 4\n"), ArgumentError);
}

TEST_CASE("hash ignores out and threads but tracks every other key") {
  auto c = cli::default_config();
  const auto h = cli::config_hash("interval", c);
  c["out"] = "/elsewhere";
  c["threads"] = "3";
  CHECK(cli::config_hash("interval", c) == h);
  c["nu"] = "0.3";
  CHECK(cli::config_hash("interval", c) != h);
  CHECK(cli::config_hash("threshold", cli::default_config()) != h);
}

TEST_CASE("usage errors exit 2 and precision errors exit 3 naming the constraint") {
  const auto dir = fresh_dir("errors");
  const std::string out = dir.string();
  CHECK(run_cli({"bogus"}).code == cli::kUsage);
  CHECK(run_cli({}).code == cli::kUsage);
  CHECK(run_cli({"hsnorm", "--symbol", "nope", "--out", out}).code == cli::kUsage);
  CHECK(run_cli({"quantize", "--function", "nope", "--out", out}).code == cli::kUsage);
  CHECK(run_cli({"interval", "--rho", "abc", "--out", out}).code == cli::kUsage);
  CHECK(run_cli({"interval", "--rho", "1.5", "--out", out}).code == cli::kUsage);
  CHECK(run_cli({"interval", "--config", (dir / "missing.cfg").string()}).code == cli::kUsage);
  CHECK(run_cli({"hsnorm", "--group", "SU2", "--symbol", "zc-inverse", "--c_re", "0", "--c_im", "-0.5", "--out", out})
            .code == cli::kUsage);

  auto r = run_cli({"transform", "--group", "SU2", "--band", "2.5", "--resolution", "3", "--out", out});
  CHECK(r.code == cli::kPrecision);
  CHECK(r.err.find("band <= grid exactness") != std::string::npos);

  r = run_cli({"transform", "--band", "40", "--resolution", "16", "--out", out});
  CHECK(r.code == cli::kPrecision);
  CHECK(files_in(dir).empty());
}

TEST_CASE("selftest passes on a fresh checkout") {
  const auto dir = fresh_dir("selftest");
  const auto r = run_cli({"selftest", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("selftest 11/11 passed") != std::string::npos);
}
