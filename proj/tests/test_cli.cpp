#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using nlohmann::json;

namespace {

std::string g_cli_path;

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = "'" + g_cli_path + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult res;
  char buf[4096];
  size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  const int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  REQUIRE(is.good());
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("ground-state emits a parseable deterministic report") {
  const CliResult res = run_cli("ground-state --N 3 --p 4");
  REQUIRE(res.code == 0);
  const json j = json::parse(res.out);
  CHECK(j["N"] == 3);
  CHECK(j["p"] == 4.0);
  CHECK(j["lambda"] == 1.0);
  CHECK(j["beta"].get<double>() == doctest::Approx(4.3373876810).epsilon(1e-8));
  CHECK(j["identities"]["nehari_rel"].get<double>() <= 1e-6);
  CHECK(j["identities"]["pohozaev_rel"].get<double>() <= 1e-6);
  CHECK(j["nodes"].get<int>() > 1000);

  const CliResult again = run_cli("ground-state --N 3 --p 4");
  CHECK(again.code == 0);
  CHECK(again.out == res.out);  // byte-identical on repeated runs
}

TEST_CASE("ground-state csv output and file persistence") {
  const CliResult res = run_cli("ground-state --N 3 --p 4 --format csv");
  REQUIRE(res.code == 0);
  CHECK(res.out.rfind("# N=3\n", 0) == 0);
  CHECK(res.out.find("\nr,u,du\n") != std::string::npos);

  const std::string path = "cli_gs_out.csv";
  const CliResult save = run_cli("ground-state --N 3 --p 4 --out " + path);
  REQUIRE(save.code == 0);
  CHECK(json::parse(save.out)["N"] == 3);  // JSON still goes to stdout
  CHECK(slurp(path).rfind("# N=3\n", 0) == 0);
  std::remove(path.c_str());
}

TEST_CASE("invalid arguments exit with the argument error code") {
  CHECK(run_cli("ground-state --N 3 --p 7").code == 2);
  CHECK(run_cli("ground-state --N 2 --p 3").code == 2);
  CHECK(run_cli("ground-state --N 3").code == 2);          // missing required --p
  CHECK(run_cli("ground-state --N 3 --p 4 --format xml").code == 2);
  CHECK(run_cli("no-such-command").code == 2);
  CHECK(run_cli("").code == 2);                            // a subcommand is required
  CHECK(run_cli("verify --in no_such_profile.csv --a 1 --b 1").code == 2);
}

TEST_CASE("solve constructs, persists and verifies a full solution") {
  const std::string prefix = "cli_sol";
  const CliResult res =
      run_cli("solve --N 4 --p 3 --a 1 --b 5e-4 --profiles-out " + prefix);
  REQUIRE(res.code == 0);
  const json j = json::parse(res.out);
  CHECK(j["regime"] == "always");
  CHECK(j["roots"]["count"] == 1);
  REQUIRE(j["solutions"].size() == 1);
  CHECK(j["solutions"][0]["class"] == "M_MINUS");
  CHECK(j["solutions"][0]["energy"].get<double>() > 0.0);
  CHECK(j.contains("critical_b"));

  const std::string sol_csv = prefix + "_1.csv";
  CHECK(slurp(sol_csv).rfind("# N=4\n", 0) == 0);

  const CliResult verify = run_cli("verify --in " + sol_csv + " --a 1 --b 5e-4");
  CHECK(verify.code == 0);
  const json vj = json::parse(verify.out);
  CHECK(vj["pass"] == true);
  CHECK(vj["checks"]["pohozaev"]["pass"] == true);
  CHECK(vj["checks"]["ode_residual_norm"]["pass"] == true);

  // corrupt the stored amplitude and the certification must fail
  std::istringstream in(slurp(sol_csv));
  const std::string bad_csv = "cli_sol_bad.csv";
  std::ofstream bad(bad_csv);
  std::string line;
  bool past_header = false;
  while (std::getline(in, line)) {
    if (!past_header) {
      bad << line << '\n';
      past_header = line == "r,u,du";
      continue;
    }
    const size_t c1 = line.find(','), c2 = line.find(',', c1 + 1);
    REQUIRE(c2 != std::string::npos);
    const double u = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    const double du = std::stod(line.substr(c2 + 1));
    char row[128];
    std::snprintf(row, sizeof row, "%s,%.17g,%.17g\n", line.substr(0, c1).c_str(), 1.01 * u,
                  1.01 * du);
    bad << row;
  }
  bad.close();

  const CliResult tampered = run_cli("verify --in " + bad_csv + " --a 1 --b 5e-4");
  CHECK(tampered.code == 4);
  const json tj = json::parse(tampered.out);
  CHECK(tj["pass"] == false);
  CHECK(tj["checks"]["nehari"]["pass"] == false);

  std::remove(sol_csv.c_str());
  std::remove(bad_csv.c_str());
}

TEST_CASE("solve reports an empty set past the existence threshold") {
  const CliResult res = run_cli("solve --N 4 --p 3 --a 1 --b 0.2");
  REQUIRE(res.code == 0);
  const json j = json::parse(res.out);
  CHECK(j["regime"] == "above_threshold");
  CHECK(j["roots"]["count"] == 0);
  CHECK(j["solutions"].empty());
}

TEST_CASE("sweep tabulates the root count across the critical coefficient") {
  const CliResult res =
      run_cli("sweep --N 5 --p 2.2 --a 2 --b-min 1e-7 --b-max 1e-5 --steps 12 --log");
  REQUIRE(res.code == 0);

  std::istringstream is(res.out);
  std::string line;
  double bcrit = -1.0;
  bool saw_columns = false;
  int rows = 0, rows_two = 0, rows_zero = 0;
  while (std::getline(is, line)) {
    if (line.rfind("# critical_b=", 0) == 0) {
      bcrit = std::stod(line.substr(13));
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    if (!saw_columns) {
      CHECK(line == "b,count,threshold,gamma_1,gamma_2,A_1,A_2,E_1,E_2,class_1,class_2");
      saw_columns = true;
      continue;
    }
    const size_t c1 = line.find(','), c2 = line.find(',', c1 + 1);
    REQUIRE(c2 != std::string::npos);
    const double b = std::stod(line.substr(0, c1));
    const int count = std::stoi(line.substr(c1 + 1, c2 - c1 - 1));
    ++rows;
    if (count == 2) ++rows_two;
    if (count == 0) ++rows_zero;
    CHECK((b < bcrit) == (count == 2));
    CHECK((b > bcrit) == (count == 0));
  }
  REQUIRE(bcrit > 0.0);
  CHECK(rows == 12);
  CHECK(rows_two > 0);   // range must straddle the threshold
  CHECK(rows_zero > 0);
}

TEST_CASE("classify reports fibering data for a fresh local solve") {
  const CliResult res = run_cli("classify --N 3 --p 4 --a 1 --b 0.5 --t 1");
  REQUIRE(res.code == 0);
  const json j = json::parse(res.out);
  CHECK(j["class"] == "OFF_MANIFOLD");
  CHECK(j["dilation_critical_points"]["count"] == 1);
  CHECK(j["dilation_critical_points"]["classes"][0] == "M_MINUS");
  CHECK(j["functionals"]["A"].get<double>() > 0.0);

  CHECK(run_cli("classify --a 1 --b 0.5").code == 2);  // neither --in nor --N/--p
}

int run_main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <kirchhoff_cli binary> [doctest options]\n", argv[0]);
    return 2;
  }
  g_cli_path = argv[1];
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv + 1);
  return ctx.run();
}

int main(int argc, char** argv) { return run_main(argc, argv); }
