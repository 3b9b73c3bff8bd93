#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

std::string config_path(const std::string& name) {
  return std::string(SCALELAB_CONFIG_DIR) + "/" + name;
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "scalelab-cli-tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args, const fs::path& workdir) {
  fs::path out_file = workdir / "stdout.txt";
  fs::path err_file = workdir / "stderr.txt";
  std::string cmd = "cd '" + workdir.string() + "' && '" + SCALELAB_CLI_PATH + "' " + args +
                    " > '" + out_file.string() + "' 2> '" + err_file.string() + "'";
  int status = std::system(cmd.c_str());
  RunResult r;
  if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace

TEST_CASE("exponents subcommand emits the rational table") {
  fs::path dir = fresh_dir("exponents");
  RunResult r = run_cli("exponents --config '" + config_path("exponents.json") + "' --out .", dir);
  CHECK(r.code == 0);
  std::string csv = slurp(dir / "exponents.csv");
  REQUIRE_FALSE(csv.empty());
  std::vector<std::string> lines = lines_of(csv);
  CHECK(lines.front() == "quantity,case,value,note");
  bool found = false;
  for (const std::string& line : lines)
    if (line.rfind("q_gamma_low", 0) == 0 && line.find("6/5") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("kato-check subcommand writes the battery document") {
  fs::path dir = fresh_dir("kato");
  RunResult r = run_cli("kato-check --config '" + config_path("kato-check.json") + "' --out .", dir);
  CHECK(r.code == 0);
  Json doc = Json::parse(slurp(dir / "battery.json"));
  CHECK(doc["form"]["accretivity"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(doc["quasi_symmetry"].size() == 3);  // shifts 0, 1, 10
  CHECK(doc["quasi_symmetry"][0]["relation_deviation"].get<double>() <= 1e-8);
  CHECK(doc["sqrt_product"]["constants"]["c1"].get<double>() > 0.0);
  for (const Json& item : doc["imaginary_powers"])
    CHECK(item["norm"].get<double>() <= item["bound"].get<double>() + 1e-10);
}

TEST_CASE("fracpow subcommand computes the principal square root") {
  fs::path dir = fresh_dir("fracpow");
  RunResult r = run_cli("fracpow --config '" + config_path("fracpow.json") + "' --out .", dir);
  CHECK(r.code == 0);
  Json power = Json::parse(slurp(dir / "power.json"));
  REQUIRE(power["dim"].get<int>() == 2);
  CHECK(power["entries"][0][0].get<double>() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(power["entries"][0][1].get<double>() == doctest::Approx(0.0));
  Json report = Json::parse(slurp(dir / "report.json"));
  CHECK(report["decomposition"].get<std::string>() == "diagonalizable");
  CHECK(report["semigroup_check"]["max_identity_deviation"].get<double>() <= 1e-10);
  CHECK(report["imaginary"].size() == 2);
}

TEST_CASE("smoothing subcommand reproduces the self-adjoint supremum") {
  fs::path dir = fresh_dir("smoothing");
  RunResult r =
      run_cli("smoothing --config '" + config_path("smoothing.json") + "' --out . --plot", dir);
  CHECK(r.code == 0);
  Json doc = Json::parse(slurp(dir / "smoothing.json"));
  CHECK(doc["supremum"].get<double>() ==
        doctest::Approx(1.0 / std::sqrt(2.0 * std::exp(1.0))).epsilon(5e-4));
  CHECK(doc["deviation"].get<double>() <= 1e-4);
  std::vector<std::string> lines = lines_of(slurp(dir / "smoothing.csv"));
  CHECK(lines.front() == "t,value");
  CHECK(lines.size() == 401);
  std::string svg = slurp(dir / "smoothing.svg");
  CHECK(svg.find("<svg") != std::string::npos);
}

TEST_CASE("smoothing subcommand fails with exit 1 when the pinned value is missed") {
  fs::path dir = fresh_dir("smoothing-miss");
  Json cfg = Json::parse(slurp(config_path("smoothing.json")));
  cfg["expected"] = 0.9;
  cfg["tolerance"] = 1e-6;
  std::ofstream(dir / "bad.json") << cfg.dump(2) << "\n";
  RunResult r = run_cli("smoothing --config bad.json --out results", dir);
  CHECK(r.code == 1);
  CHECK(r.err.find("numerical failure") != std::string::npos);
  CHECK(fs::exists(dir / "results" / "smoothing.json"));  // artifacts land before the failure
}

TEST_CASE("stability-region subcommand scans and draws the diagram") {
  fs::path dir = fresh_dir("region");
  RunResult r = run_cli(
      "stability-region --config '" + config_path("stability-region.json") + "' --out . --plot",
      dir);
  CHECK(r.code == 0);
  Json summary = Json::parse(slurp(dir / "summary.json"));
  CHECK(summary["cells"].get<long>() == 3600);
  CHECK(summary["mismatches"].get<long>() == 0);
  CHECK(summary["region_test_available"].get<bool>());
  std::vector<std::string> region_lines = lines_of(slurp(dir / "region.csv"));
  CHECK(region_lines.front() == "d1,d2,in_region,gap");
  CHECK(region_lines.size() == 3601);
  std::vector<std::string> curve_lines = lines_of(slurp(dir / "curves.csv"));
  CHECK(curve_lines.front() == "k,d1,d2");
  CHECK(curve_lines.size() > 1);
  CHECK(fs::exists(dir / "region.svg"));
  CHECK(fs::exists(dir / "curves.svg"));
}

TEST_CASE("simulate then decay-fit round trip in one output directory") {
  fs::path dir = fresh_dir("simulate");
  RunResult r = run_cli("simulate --config '" + config_path("simulate.json") + "' --out .", dir);
  CHECK(r.code == 0);

  std::vector<std::string> traj = lines_of(slurp(dir / "trajectory.csv"));
  REQUIRE(traj.size() > 2);
  CHECK(traj.front().rfind("t,re(u_1),im(u_1)", 0) == 0);
  CHECK(traj.front().find("norm_0,norm_0.5") != std::string::npos);
  std::vector<std::string> first = split_csv(traj[1]);
  CHECK(first.front() == "0");  // simulation starts at t = 0
  CHECK(first[1] == "0.01");    // excited mode amplitude

  std::vector<std::string> decay = lines_of(slurp(dir / "decay.csv"));
  REQUIRE(decay.size() == 3);
  CHECK(decay.front() == "alpha,rate,prefactor,lambda0");
  std::vector<std::string> row0 = split_csv(decay[1]);
  CHECK(std::stod(row0[0]) == doctest::Approx(0.0));
  CHECK(std::stod(row0[1]) == doctest::Approx(0.11220427).epsilon(0.05));
  CHECK(std::stod(row0[3]) == doctest::Approx(0.11220427).epsilon(1e-4));

  // refit the written trajectory through the standalone subcommand
  RunResult fit =
      run_cli("decay-fit --config '" + config_path("decay-fit.json") + "' --out .", dir);
  CHECK(fit.code == 0);
  std::vector<std::string> refit = lines_of(slurp(dir / "decay.csv"));
  REQUIRE(refit.size() == 2);
  std::vector<std::string> row = split_csv(refit[1]);
  REQUIRE(row.size() == 4);
  CHECK(std::stod(row[0]) == doctest::Approx(0.5));
  CHECK(std::stod(row[1]) == doctest::Approx(0.11220427).epsilon(0.05));
  CHECK(row[3].empty());  // no gap information in a bare refit
}

TEST_CASE("simulate with a zero initial state stays exactly zero") {
  fs::path dir = fresh_dir("simulate-zero");
  Json cfg = Json::parse(slurp(config_path("simulate.json")));
  cfg["u0"]["amplitude"] = 0.0;
  cfg["horizon"] = 2.0;
  cfg["step"] = 0.1;
  std::ofstream(dir / "zero.json") << cfg.dump(2) << "\n";
  RunResult r = run_cli("simulate --config zero.json --out .", dir);
  CHECK(r.code == 0);
  std::vector<std::string> traj = lines_of(slurp(dir / "trajectory.csv"));
  REQUIRE(traj.size() == 22);
  for (std::size_t i = 1; i < traj.size(); ++i) {
    std::vector<std::string> fields = split_csv(traj[i]);
    for (std::size_t f = 1; f < fields.size(); ++f) CHECK(fields[f] == "0");
  }
}

TEST_CASE("unknown configuration keys are rejected by name") {
  fs::path dir = fresh_dir("unknown-key");
  Json cfg = Json::parse(slurp(config_path("simulate.json")));
  cfg["diffusivity"] = 0.1;
  std::ofstream(dir / "typo.json") << cfg.dump(2) << "\n";
  RunResult r = run_cli("simulate --config typo.json --out .", dir);
  CHECK(r.code == 2);
  CHECK(r.err.find("diffusivity") != std::string::npos);
}

TEST_CASE("configuration error paths exit with code 2") {
  fs::path dir = fresh_dir("config-errors");
  RunResult missing = run_cli("exponents --config does-not-exist.json --out .", dir);
  CHECK(missing.code == 2);
  CHECK(missing.err.find("cannot open") != std::string::npos);

  std::ofstream(dir / "broken.json") << "{ not json";
  RunResult broken = run_cli("exponents --config broken.json --out .", dir);
  CHECK(broken.code == 2);
  CHECK(broken.err.find("invalid JSON") != std::string::npos);

  RunResult no_sub = run_cli("--config whatever.json", dir);
  CHECK(no_sub.code == 2);
  RunResult bad_flag = run_cli("exponents --config x.json --frobnicate", dir);
  CHECK(bad_flag.code == 2);
}

TEST_CASE("fixed config and seed reproduce byte-identical artifacts") {
  fs::path a = fresh_dir("repeat-a");
  fs::path b = fresh_dir("repeat-b");
  std::string exp_args = "exponents --config '" + config_path("exponents.json") + "' --out .";
  CHECK(run_cli(exp_args, a).code == 0);
  CHECK(run_cli(exp_args, b).code == 0);
  CHECK(slurp(a / "exponents.csv") == slurp(b / "exponents.csv"));

  std::string frac_args =
      "fracpow --config '" + config_path("fracpow.json") + "' --out . --seed 7";
  CHECK(run_cli(frac_args, a).code == 0);
  CHECK(run_cli(frac_args, b).code == 0);
  CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
  CHECK(slurp(a / "power.json") == slurp(b / "power.json"));
}

TEST_CASE("help requests succeed") {
  fs::path dir = fresh_dir("help");
  RunResult top = run_cli("--help", dir);
  CHECK(top.code == 0);
  CHECK(top.out.find("simulate") != std::string::npos);
  RunResult sub = run_cli("simulate --help", dir);
  CHECK(sub.code == 0);
}
