#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Spawn the installed CLI through the shell, capturing exit code and both
// streams. env_prefix is prepended verbatim (e.g. VAR=value).
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  ++counter;
  const fs::path dir = fs::temp_directory_path();
  const fs::path out_p = dir / ("omegax_cli_out_" + std::to_string(counter));
  const fs::path err_p = dir / ("omegax_cli_err_" + std::to_string(counter));

  std::string cmd;
  if (!env_prefix.empty()) cmd += env_prefix + " ";
  cmd += "\"";
  cmd += OMEGAX_CLI_BIN;
  cmd += "\" " + args;
  cmd += " >\"" + out_p.string() + "\" 2>\"" + err_p.string() + "\"";

  const int status = std::system(cmd.c_str());
  RunResult r;
  if (status >= 0 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
  r.out = read_file(out_p);
  r.err = read_file(err_p);
  fs::remove(out_p);
  fs::remove(err_p);
  return r;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::string zeros_file() {
  return (fs::path(OMEGAX_DATA_DIR) / "zeros100.txt").string();
}

}  // namespace

TEST_CASE("sum computes and cross-checks both methods") {
  const RunResult r = run_cli("sum 10");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "S(10) = 23, methods agree"));

  const RunResult edge = run_cli("sum 1");
  CHECK(edge.code == 0);
  CHECK(contains(edge.out, "S(1) = 1"));

  const RunResult sieve_only = run_cli("sum 100 --method=sieve");
  CHECK(sieve_only.code == 0);
  CHECK(contains(sieve_only.out, "S(100) = 359"));
  CHECK_FALSE(contains(sieve_only.out, "methods agree"));
}

TEST_CASE("sum usage errors exit with code 2") {
  CHECK(run_cli("sum 0").code == 2);
  CHECK(run_cli("sum 10 --method=banana").code == 2);
  const RunResult r = run_cli("sum 1000 --max-x=100");
  CHECK(r.code == 2);
  CHECK(contains(r.err, "exceeds --max-x"));
}

TEST_CASE("global flags are accepted after the subcommand") {
  const RunResult r = run_cli("sum 1000 --threads=4 --method=sieve");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "S(1000) = 4987"));
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("scan --help").code == 0);
}

TEST_CASE("verify identity reports a pass count") {
  const RunResult r = run_cli("verify --identity-up-to=500");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "500/500 pass"));
}

TEST_CASE("verify requires exactly one suite") {
  CHECK(run_cli("verify").code == 2);
}

TEST_CASE("zeros import validates the bundled table") {
  const RunResult r = run_cli("zeros import \"" + zeros_file() + "\"");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "100 ordinates loaded, all validated"));

  const RunResult missing = run_cli("zeros import /nonexistent/zeros.txt");
  CHECK(missing.code == 1);
}

TEST_CASE("zeros count with and without a table") {
  const RunResult r =
      run_cli("zeros count 100 --zeros \"" + zeros_file() + "\"");
  CHECK(r.code == 0);
  CHECK(r.out.substr(0, 3) == "29\n");
  CHECK(contains(r.out, "smooth count estimate"));

  CHECK(run_cli("zeros count 100").code == 2);

  // Beyond coverage is a numerical failure, not a usage error.
  const RunResult beyond =
      run_cli("zeros count 500 --zeros \"" + zeros_file() + "\"");
  CHECK(beyond.code == 1);
}

TEST_CASE("zeros refine polishes the table") {
  const RunResult r =
      run_cli("zeros refine --zeros \"" + zeros_file() + "\"");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "100 ordinates refined, max |Z(gamma)| ="));
}

TEST_CASE("environment supplies the table and flags override it") {
  const RunResult via_env =
      run_cli("zeros count 100", "OMEGAX_ZEROS=\"" + zeros_file() + "\"");
  CHECK(via_env.code == 0);
  CHECK(via_env.out.substr(0, 3) == "29\n");

  // A broken environment value loses to an explicit flag.
  const RunResult flag_wins =
      run_cli("zeros count 100 --zeros \"" + zeros_file() + "\"",
              "OMEGAX_ZEROS=/nonexistent/zeros.txt");
  CHECK(flag_wins.code == 0);
  CHECK(flag_wins.out.substr(0, 3) == "29\n");
}

TEST_CASE("cache import then reuse") {
  const fs::path cache = fs::temp_directory_path() / "omegax_cli_cache.bin";
  fs::remove(cache);

  const RunResult imported = run_cli("zeros import \"" + zeros_file() +
                                     "\" --cache \"" + cache.string() + "\"");
  CHECK(imported.code == 0);
  CHECK(contains(imported.out, "cache written to"));
  REQUIRE(fs::exists(cache));

  const RunResult reused =
      run_cli("zeros count 100 --cache \"" + cache.string() + "\"");
  CHECK(reused.code == 0);
  CHECK(reused.out.substr(0, 3) == "29\n");

  // Corrupting the cache turns reuse into a hard failure.
  {
    std::ofstream out(cache, std::ios::binary | std::ios::trunc);
    out << "ZET1garbage";
  }
  const RunResult corrupt =
      run_cli("zeros count 100 --cache \"" + cache.string() + "\"");
  CHECK(corrupt.code == 1);
  fs::remove(cache);
}

TEST_CASE("scan usage errors") {
  CHECK(run_cli("scan --mode=bogus").code == 2);
  CHECK(run_cli("scan --mode=conditional --from=1000 --to=10000").code == 2);
  CHECK(run_cli("scan --mode=conditional --from=10 --to=10000 --zeros \"" +
                zeros_file() + "\"")
            .code == 2);
  CHECK(run_cli("scan --from=1000 --to=1000000 --max-x=100000").code == 2);
}

TEST_CASE("scan emits the documented CSV layout") {
  const RunResult r =
      run_cli("scan --from=10000 --to=10000 --points=1 --mode=conditional "
              "--zeros \"" +
              zeros_file() + "\"");
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header ==
        "x,S_exact,main,const,zero_sum,residual,residual_over_x14,"
        "T_effective,zeros_used");
  CHECK(row.substr(0, 11) == "10000,63869");
  CHECK(contains(r.out, "# rms_residual_over_x14_mode="));
  CHECK(contains(r.out, "# rms_residual_over_x14_none="));
}

TEST_CASE("scan output is byte-stable across runs") {
  const fs::path f1 = fs::temp_directory_path() / "omegax_scan_a.csv";
  const fs::path f2 = fs::temp_directory_path() / "omegax_scan_b.csv";
  const std::string args =
      "scan --from=1000 --to=1000000 --points=6 --mode=conditional --zeros \"" +
      zeros_file() + "\" --output ";
  CHECK(run_cli(args + "\"" + f1.string() + "\"").code == 0);
  CHECK(run_cli(args + "\"" + f2.string() + "\"").code == 0);
  const std::string a = read_file(f1);
  const std::string b = read_file(f2);
  CHECK(!a.empty());
  CHECK(a == b);
  fs::remove(f1);
  fs::remove(f2);
}
