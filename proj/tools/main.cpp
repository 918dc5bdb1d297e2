// omegax command line: exact summatory runs, verification suites, zero-table
// management, and residual scans emitted as CSV.
//
// Exit codes: 0 success, 1 verification or numerical failure, 2 usage error.
// Configuration precedence: flags > environment (OMEGAX_*) > defaults.

#include <array>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "omegax/arithmetic.hpp"
#include "omegax/errors.hpp"
#include "omegax/explicit_formula.hpp"
#include "omegax/zeros.hpp"
#include "omegax/zeta.hpp"

namespace {

struct GlobalConfig {
  std::uint64_t max_x = omegax::kDefaultMaxX;
  std::size_t segment_size = omegax::kDefaultSegmentSize;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::string zeros_path;
  std::string cache_path;
  std::string output_path;

  unsigned effective_threads() const {
    if (threads != 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
  }
};

// Shortest round-trip formatting via to_chars: locale-independent, '.'
// decimal separator, byte-stable across runs.
std::string fmt(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string fmt_fixed(double v, int precision) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::fixed, precision);
  return std::string(buf.data(), res.ptr);
}

std::optional<omegax::ZeroTable> try_load_table(const GlobalConfig& cfg) {
  if (!cfg.zeros_path.empty()) return omegax::load_zeros(cfg.zeros_path);
  if (!cfg.cache_path.empty() && std::filesystem::exists(cfg.cache_path))
    return omegax::cache_load(cfg.cache_path);
  return std::nullopt;
}

int emit(const GlobalConfig& cfg, const std::string& text) {
  if (cfg.output_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return 0;
  }
  std::ofstream out(cfg.output_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "error: cannot open output file " << cfg.output_path << "\n";
    return 1;
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  return out ? 0 : 1;
}

int run_sum(const GlobalConfig& cfg, std::uint64_t x,
            const std::string& method) {
  if (x > cfg.max_x) {
    std::cerr << "usage error: x exceeds --max-x = " << cfg.max_x << "\n";
    return 2;
  }

  std::optional<omegax::SummatoryResult> sieve, hyper;
  if (method == "sieve" || method == "both")
    sieve = omegax::summatory_exact(x, cfg.segment_size,
                                    cfg.effective_threads(), cfg.max_x);
  if (method == "hyperbola" || method == "both")
    hyper = omegax::summatory_fast(x);

  if (sieve && hyper && sieve->value != hyper->value) {
    std::cerr << "MISMATCH: sieve S(" << x << ") = " << sieve->value
              << " but hyperbola S(" << x << ") = " << hyper->value << "\n";
    return 1;
  }

  const std::int64_t value = sieve ? sieve->value : hyper->value;
  std::ostringstream line;
  line << "S(" << x << ") = " << value;
  if (sieve && hyper) line << ", methods agree";
  line << " [";
  if (sieve) line << "sieve " << fmt_fixed(sieve->elapsed.count(), 3) << "s";
  if (sieve && hyper) line << ", ";
  if (hyper) line << "hyperbola " << fmt_fixed(hyper->elapsed.count(), 3) << "s";
  line << "]\n";
  std::cout << line.str();
  return 0;
}

int run_verify_identity(std::uint64_t up_to) {
  std::uint64_t pass = 0;
  std::uint64_t first_fail = 0;
  for (std::uint64_t n = 1; n <= up_to; ++n) {
    if (omegax::check_identity(n)) {
      ++pass;
    } else if (first_fail == 0) {
      first_fail = n;
    }
  }
  std::cout << pass << "/" << up_to << " pass\n";
  if (pass != up_to) {
    std::cerr << "identity first fails at n = " << first_fail << "\n";
    return 1;
  }
  return 0;
}

int run_verify_functional_equation() {
  // Deterministic sample set left of, on, and right of the critical line.
  // Re(s) >= -1.5 keeps both sides on independent direct evaluations, and
  // t <= 77.3 keeps |zeta(s)| small enough that the absolute 1e-7 tolerance
  // is meaningful (|chi| ~ (t/2pi)^(1/2-sigma) grows quickly left of 1/2).
  const std::array<double, 5> sigmas = {-1.5, -0.5, 0.25, 0.75, 2.0};
  const std::array<double, 10> heights = {3.7,  7.9,  13.1, 18.4, 26.2,
                                          33.3, 41.2, 52.6, 61.8, 77.3};
  double max_dev = 0.0;
  for (double sigma : sigmas) {
    for (double t : heights) {
      const std::complex<double> s(sigma, t);
      const std::complex<double> lhs = omegax::zeta(s).value();
      const std::complex<double> rhs =
          omegax::chi(s).value() * omegax::zeta(1.0 - s).value();
      max_dev = std::max(max_dev, std::abs(lhs - rhs));
    }
  }
  const bool fe_ok = max_dev <= 1e-7;
  std::cout << "max |zeta(s) - chi(s) zeta(1-s)| over 50 samples = "
            << fmt(max_dev) << (fe_ok ? " PASS" : " FAIL") << "\n";

  const std::complex<double> s0(0.3, 33.3);
  const double inv_dev = std::abs(
      omegax::chi(s0).value() * omegax::chi(1.0 - s0).value() - 1.0);
  const bool inv_ok = inv_dev <= 1e-9;
  std::cout << "|chi(s) chi(1-s) - 1| at s = 0.3+33.3i = " << fmt(inv_dev)
            << (inv_ok ? " PASS" : " FAIL") << "\n";

  // Modulus growth |chi(sigma+it)| ~ (t/2pi)^(1/2-sigma) at t = 200.
  const double t_mod = 200.0;
  bool mod_ok = true;
  for (double sigma : {-0.5, 0.0, 0.25}) {
    const double mod =
        std::abs(omegax::chi(std::complex<double>(sigma, t_mod)).value());
    const double ratio =
        mod * std::pow(t_mod / (2.0 * std::numbers::pi), sigma - 0.5);
    const bool ok = ratio > 0.98 && ratio < 1.02;
    mod_ok = mod_ok && ok;
    std::cout << "|chi(" << fmt(sigma) << "+200i)| * (t/2pi)^(sigma-1/2) = "
              << fmt(ratio) << (ok ? " PASS" : " FAIL") << "\n";
  }
  return (fe_ok && inv_ok && mod_ok) ? 0 : 1;
}

int run_verify_residues(const GlobalConfig& cfg) {
  const auto table = try_load_table(cfg);
  if (!table) {
    std::cerr << "usage error: --residues needs a zero table "
                 "(--zeros/OMEGAX_ZEROS or --cache/OMEGAX_CACHE)\n";
    return 2;
  }

  bool all_ok = true;
  for (double x : {1e2, 1e3, 1e4}) {
    const std::complex<double> contour = omegax::contour_residue_check(
        {1.0, 0.0}, 1e-3, x, *table);
    const double closed = omegax::main_terms(x);
    const double rel = std::abs(contour - std::complex<double>(closed, 0.0)) /
                       std::abs(closed);
    const bool ok = rel < 1e-5;
    all_ok = all_ok && ok;
    std::cout << "s=1  x=" << fmt(x) << "  contour=" << fmt(contour.real())
              << "  closed=" << fmt(closed) << "  rel=" << fmt(rel)
              << (ok ? " PASS" : " FAIL") << "\n";

    const std::complex<double> contour0 = omegax::contour_residue_check(
        {0.0, 0.0}, 1e-3, x, *table);
    const double closed0 = omegax::main_term_coeffs().const_term;
    const double rel0 =
        std::abs(contour0 - std::complex<double>(closed0, 0.0)) /
        std::abs(closed0);
    const bool ok0 = rel0 < 1e-5;
    all_ok = all_ok && ok0;
    std::cout << "s=0  x=" << fmt(x) << "  contour=" << fmt(contour0.real())
              << "  closed=" << fmt(closed0) << "  rel=" << fmt(rel0)
              << (ok0 ? " PASS" : " FAIL") << "\n";
  }

  const double x_pair = 1e3;
  const std::size_t n_pairs = std::min<std::size_t>(10, table->count());
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const double gamma = table->ordinates[i].gamma;
    const omegax::ZeroTerm term = omegax::zero_term(gamma);
    const std::complex<double> closed =
        term.coeff * std::exp(term.pole * std::log(x_pair));
    const std::complex<double> contour = omegax::contour_residue_check(
        term.pole, 1e-3, x_pair, *table);
    const double rel = std::abs(contour - closed) / std::abs(closed);
    const bool ok = rel < 1e-6;
    all_ok = all_ok && ok;
    std::cout << "pair gamma=" << fmt(gamma) << "  x=" << fmt(x_pair)
              << "  rel=" << fmt(rel) << (ok ? " PASS" : " FAIL") << "\n";
  }
  return all_ok ? 0 : 1;
}

int run_zeros_import(const GlobalConfig& cfg, const std::string& path) {
  const omegax::ZeroTable table = omegax::load_zeros(path);
  std::cout << table.count() << " ordinates loaded, all validated\n";
  if (!cfg.cache_path.empty()) {
    omegax::cache_store(table, cfg.cache_path);
    std::cout << "cache written to " << cfg.cache_path << "\n";
  }
  return 0;
}

int run_zeros_refine(const GlobalConfig& cfg) {
  const auto table = try_load_table(cfg);
  if (!table) {
    std::cerr << "usage error: refine needs a zero table "
                 "(--zeros/OMEGAX_ZEROS or --cache/OMEGAX_CACHE)\n";
    return 2;
  }
  const omegax::ZeroTable refined = omegax::refine_table(*table);
  double max_residual = 0.0;
  for (const omegax::ZeroOrdinate& z : refined.ordinates)
    max_residual = std::max(max_residual, z.residual);
  std::cout << refined.count() << " ordinates refined, max |Z(gamma)| = "
            << fmt(max_residual) << "\n";
  if (!cfg.cache_path.empty()) {
    omegax::cache_store(refined, cfg.cache_path);
    std::cout << "cache written to " << cfg.cache_path << "\n";
  }
  return 0;
}

int run_zeros_count(const GlobalConfig& cfg, double T) {
  const auto table = try_load_table(cfg);
  if (!table) {
    std::cerr << "usage error: count needs a zero table "
                 "(--zeros/OMEGAX_ZEROS or --cache/OMEGAX_CACHE)\n";
    return 2;
  }
  std::cout << omegax::zero_count(*table, T) << "\n";
  std::cout << "smooth count estimate " << fmt(omegax::rvm_count(T)) << "\n";
  return 0;
}

int run_scan(const GlobalConfig& cfg, std::uint64_t from, std::uint64_t to,
             std::uint32_t points, const std::string& mode_name) {
  omegax::ScanMode mode = omegax::ScanMode::none;
  if (mode_name == "conditional") mode = omegax::ScanMode::conditional;
  else if (mode_name == "unconditional") mode = omegax::ScanMode::unconditional;

  const std::uint64_t min_x = mode == omegax::ScanMode::none ? 2 : 100;
  if (from < min_x || to < from || points < 1) {
    std::cerr << "usage error: need " << min_x
              << " <= from <= to and points >= 1 (mode " << mode_name << ")\n";
    return 2;
  }
  if (to > cfg.max_x) {
    std::cerr << "usage error: --to exceeds --max-x = " << cfg.max_x << "\n";
    return 2;
  }

  // Log-spaced rounded grid; collisions after rounding are dropped.
  std::vector<std::uint64_t> grid;
  if (points == 1) {
    grid.push_back(from);
  } else {
    const double lf = std::log(static_cast<double>(from));
    const double lt = std::log(static_cast<double>(to));
    for (std::uint32_t i = 0; i < points; ++i) {
      const double lx = lf + (lt - lf) * i / (points - 1);
      const auto x = static_cast<std::uint64_t>(std::llround(std::exp(lx)));
      if (grid.empty() || x > grid.back()) grid.push_back(x);
    }
  }

  omegax::ZeroTable table;
  if (mode != omegax::ScanMode::none) {
    const auto loaded = try_load_table(cfg);
    if (!loaded) {
      std::cerr << "usage error: mode " << mode_name
                << " needs a zero table (--zeros/OMEGAX_ZEROS or "
                   "--cache/OMEGAX_CACHE)\n";
      return 2;
    }
    table = *loaded;
  }

  const omegax::ScanResult result =
      omegax::residual_scan(grid, table, mode, cfg.max_x);

  std::string csv =
      "x,S_exact,main,const,zero_sum,residual,residual_over_x14,"
      "T_effective,zeros_used\n";
  for (const omegax::ScanRow& row : result.rows) {
    const omegax::FormulaBreakdown& b = row.breakdown;
    csv += std::to_string(static_cast<std::uint64_t>(b.x));
    csv += ',';
    csv += std::to_string(b.exact);
    csv += ',';
    csv += fmt(b.main);
    csv += ',';
    csv += fmt(b.const_term);
    csv += ',';
    csv += fmt(b.zero_sum);
    csv += ',';
    csv += fmt(b.residual);
    csv += ',';
    csv += fmt(row.residual_over_x14);
    csv += ',';
    csv += fmt(b.truncation);
    csv += ',';
    csv += std::to_string(b.zeros_used);
    csv += '\n';
  }
  csv += "# rms_residual_over_x14_mode=" + fmt(result.summary.rms_mode) + "\n";
  csv += "# rms_residual_over_x14_none=" + fmt(result.summary.rms_none) + "\n";
  return emit(cfg, csv);
}

}  // namespace

int main(int argc, char** argv) {
  GlobalConfig cfg;
  CLI::App app{"Summatory function of 2^omega(n): exact computation, zeta-side "
               "verification, and explicit-formula residual scans"};
  app.require_subcommand(1);

  app.add_option("--max-x", cfg.max_x, "Upper limit for exact summatory runs")
      ->envname("OMEGAX_MAX_X")
      ->check(CLI::Range(std::uint64_t{10}, std::uint64_t{1} << 62));
  app.add_option("--segment-size", cfg.segment_size,
                 "Sieve segment size (power of two in [2^10, 2^26])")
      ->check([](const std::string& v) -> std::string {
        std::uint64_t n = 0;
        const auto res = std::from_chars(v.data(), v.data() + v.size(), n);
        if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
          return "not an integer";
        if (n < omegax::kMinSegmentSize || n > omegax::kMaxSegmentSize ||
            (n & (n - 1)) != 0)
          return "must be a power of two in [2^10, 2^26]";
        return {};
      });
  app.add_option("--threads", cfg.threads,
                 "Sieve worker threads (0 = hardware concurrency)");
  app.add_option("--zeros", cfg.zeros_path, "Zero ordinate text file")
      ->envname("OMEGAX_ZEROS");
  app.add_option("--cache", cfg.cache_path, "Binary zero cache path")
      ->envname("OMEGAX_CACHE");
  app.add_option("--output", cfg.output_path,
                 "Write CSV to this file instead of stdout");

  std::function<int()> action;

  // sum
  std::uint64_t sum_x = 0;
  std::string sum_method = "both";
  auto* sum_cmd = app.add_subcommand("sum", "Compute S(x) exactly");
  sum_cmd->fallthrough();
  sum_cmd->add_option("x", sum_x, "Argument x >= 1")
      ->required()
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 62));
  sum_cmd->add_option("--method", sum_method, "sieve, hyperbola, or both")
      ->check(CLI::IsMember({"sieve", "hyperbola", "both"}));
  sum_cmd->callback([&] { action = [&] { return run_sum(cfg, sum_x, sum_method); }; });

  // verify
  std::uint64_t identity_up_to = 0;
  bool verify_fe = false, verify_res = false;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->fallthrough();
  auto* verify_group = verify_cmd->add_option_group("suite");
  verify_group->add_option("--identity-up-to", identity_up_to,
                           "Check the coefficient identity for all n <= N");
  verify_group->add_flag("--functional-equation", verify_fe,
                         "Check zeta(s) = chi(s) zeta(1-s) on a sample");
  verify_group->add_flag("--residues", verify_res,
                         "Compare contour integrals with closed-form residues");
  verify_group->require_option(1);
  verify_cmd->callback([&] {
    action = [&]() -> int {
      if (identity_up_to > 0) return run_verify_identity(identity_up_to);
      if (verify_fe) return run_verify_functional_equation();
      return run_verify_residues(cfg);
    };
  });

  // zeros
  auto* zeros_cmd = app.add_subcommand("zeros", "Zero table operations");
  zeros_cmd->fallthrough();
  zeros_cmd->require_subcommand(1);
  std::string import_path;
  auto* import_cmd =
      zeros_cmd->add_subcommand("import", "Load and validate a text zero file");
  import_cmd->fallthrough();
  import_cmd->add_option("path", import_path, "Zero ordinate text file")
      ->required();
  import_cmd->callback(
      [&] { action = [&] { return run_zeros_import(cfg, import_path); }; });
  auto* refine_cmd = zeros_cmd->add_subcommand(
      "refine", "Refine every ordinate to |Z(gamma)| < 1e-8");
  refine_cmd->fallthrough();
  refine_cmd->callback([&] { action = [&] { return run_zeros_refine(cfg); }; });
  double count_T = 0.0;
  auto* count_cmd =
      zeros_cmd->add_subcommand("count", "Count ordinates <= T in the table");
  count_cmd->fallthrough();
  count_cmd->add_option("T", count_T, "Height T")->required();
  count_cmd->callback(
      [&] { action = [&] { return run_zeros_count(cfg, count_T); }; });

  // scan
  std::uint64_t scan_from = 1000, scan_to = 1'000'000;
  std::uint32_t scan_points = 16;
  std::string scan_mode = "none";
  auto* scan_cmd =
      app.add_subcommand("scan", "Residual study over a log-spaced grid (CSV)");
  scan_cmd->fallthrough();
  scan_cmd->add_option("--from", scan_from, "Grid start (inclusive)");
  scan_cmd->add_option("--to", scan_to, "Grid end (inclusive)");
  scan_cmd->add_option("--points", scan_points, "Number of grid points");
  scan_cmd->add_option("--mode", scan_mode,
                       "Zero-sum mode: none, conditional, or unconditional")
      ->check(CLI::IsMember({"none", "conditional", "unconditional"}));
  scan_cmd->callback([&] {
    action = [&] {
      return run_scan(cfg, scan_from, scan_to, scan_points, scan_mode);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  try {
    return action ? action() : 2;
  } catch (const omegax::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
