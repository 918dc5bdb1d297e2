#include "omegax/explicit_formula.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "omegax/errors.hpp"
#include "omegax/zeta.hpp"

namespace omegax {

namespace {

constexpr double kPi = std::numbers::pi;

// Compensated (Kahan) accumulator; used wherever a sum feeds a pinned or
// bit-reproducible result.
struct Kahan {
  double sum = 0.0;
  double comp = 0.0;

  void add(double term) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

double pair_value(const ZeroTerm& term, double x) {
  const std::complex<double> xs = std::exp(term.pole * std::log(x));
  return 2.0 * std::real(term.coeff * xs);
}

}  // namespace

double MainTermCoeffs::applied(double x) const {
  return a1 * x * std::log(x) + (a2 + a2_correction) * x;
}

const MainTermCoeffs& main_term_coeffs() {
  static const MainTermCoeffs coeffs = [] {
    MainTermCoeffs c;
    const double z2 = zeta(std::complex<double>(2.0, 0.0)).re;
    const double zp2 = zeta_derivative(std::complex<double>(2.0, 0.0)).re;
    const double g0 = stieltjes(0, 1'000'000);
    c.a1 = 1.0 / z2;
    c.a2 = (2.0 * g0 - 1.0) / z2;
    c.a2_correction = -2.0 * zp2 / (z2 * z2);
    c.const_term = zeta(std::complex<double>(0.0, 0.0)).re;
    return c;
  }();
  return coeffs;
}

double main_terms(double x) {
  if (!(x >= 2.0)) throw domain_error("main_terms requires x >= 2");
  return main_term_coeffs().applied(x);
}

ZeroTerm zero_term(double gamma) {
  if (!(gamma > 0.0))
    throw invalid_ordinate_error("ordinate must be positive");
  const std::complex<double> rho(0.5, gamma);
  const ComplexValue zv = zeta(rho);
  const ComplexValue dv = zeta_derivative(rho);
  const double newton = std::abs(zv.value() / dv.value());
  if (!(newton < 1e-6))
    throw invalid_ordinate_error(
        "gamma = " + std::to_string(gamma) +
        " is not within 1e-6 of a zero ordinate (Newton distance " +
        std::to_string(newton) + ")");

  ZeroTerm t;
  t.gamma = gamma;
  t.pole = {0.25, gamma / 2.0};
  const std::complex<double> zs0 = zeta(t.pole).value();
  t.coeff = zs0 * zs0 / (t.pole * (2.0 * dv.value()));
  return t;
}

double residue_at_zero_pair(double gamma, double x) {
  if (!(x >= 2.0)) throw domain_error("residue_at_zero_pair requires x >= 2");
  return pair_value(zero_term(gamma), x);
}

namespace {

std::vector<ZeroTerm> build_terms(const ZeroTable& table) {
  std::vector<ZeroTerm> terms;
  terms.reserve(table.count());
  for (const ZeroOrdinate& z : table.ordinates)
    terms.push_back(zero_term(z.gamma));
  return terms;
}

// Ascending compensated fold of the pair terms with gamma <= T. Every public
// path sums through here, so equal inputs give bit-identical sums.
double fold_pairs(const std::vector<ZeroTerm>& terms, double x, double T,
                  std::size_t* used = nullptr) {
  Kahan acc;
  std::size_t n = 0;
  for (const ZeroTerm& t : terms) {
    if (t.gamma > T) break;
    acc.add(pair_value(t, x));
    ++n;
  }
  if (used != nullptr) *used = n;
  return acc.sum;
}

}  // namespace

double zero_sum(double x, const ZeroTable& table, double T) {
  if (!(x >= 2.0)) throw domain_error("zero_sum requires x >= 2");
  if (T > table.max_gamma())
    throw coverage_error("zero_sum to T = " + std::to_string(T) +
                         " exceeds table coverage " +
                         std::to_string(table.max_gamma()));
  if (T > x / 10.0)
    throw domain_error("zero_sum truncation T must satisfy T <= x/10");
  std::vector<ZeroTerm> terms;
  for (const ZeroOrdinate& z : table.ordinates) {
    if (z.gamma > T) break;
    terms.push_back(zero_term(z.gamma));
  }
  return fold_pairs(terms, x, T);
}

namespace {

FormulaBreakdown make_breakdown(double x, const ZeroTable& table,
                                const std::vector<ZeroTerm>& terms,
                                ScanMode mode) {
  FormulaBreakdown b;
  b.x = x;
  b.exact = summatory_fast(static_cast<std::uint64_t>(std::floor(x))).value;
  b.main = main_terms(x);
  b.const_term = main_term_coeffs().const_term;

  if (mode != ScanMode::none) {
    const double t_formula = mode == ScanMode::conditional
                                 ? x / 10.0
                                 : std::pow(x, 21.0 / 29.0);
    b.truncation = std::min(t_formula, table.max_gamma());
    b.table_bound = table.max_gamma() < t_formula;
    b.zero_sum = fold_pairs(terms, x, b.truncation, &b.zeros_used);
  }

  b.residual = static_cast<double>(b.exact) - b.main - b.const_term - b.zero_sum;
  return b;
}

FormulaBreakdown formula_impl(double x, const ZeroTable& table,
                              ScanMode mode) {
  if (!(x >= 100.0))
    throw domain_error("explicit-formula decomposition requires x >= 100");
  if (table.ordinates.empty())
    throw empty_table_error("decomposition needs a nonempty zero table");
  return make_breakdown(x, table, build_terms(table), mode);
}

}  // namespace

FormulaBreakdown conditional_formula(double x, const ZeroTable& table) {
  return formula_impl(x, table, ScanMode::conditional);
}

FormulaBreakdown unconditional_formula(double x, const ZeroTable& table) {
  return formula_impl(x, table, ScanMode::unconditional);
}

namespace {

struct GaussLegendre12 {
  std::array<double, 12> node;
  std::array<double, 12> weight;
};

// Nodes and weights computed at startup by Newton iteration on P_12; no
// tabulated constants to mistype, and the values are deterministic.
const GaussLegendre12& gl12() {
  static const GaussLegendre12 g = [] {
    GaussLegendre12 out{};
    constexpr int n = 12;
    for (int i = 0; i < n / 2; ++i) {
      double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 60; ++it) {
        double p0 = 1.0, pm = 0.0;
        for (int j = 1; j <= n; ++j) {
          const double pj = ((2.0 * j - 1.0) * x * p0 - (j - 1.0) * pm) / j;
          pm = p0;
          p0 = pj;
        }
        dp = n * (x * p0 - pm) / (x * x - 1.0);
        const double dx = p0 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      out.node[static_cast<std::size_t>(i)] = x;
      out.weight[static_cast<std::size_t>(i)] = w;
      out.node[static_cast<std::size_t>(n - 1 - i)] = -x;
      out.weight[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return out;
  }();
  return g;
}

void validate_perron_args(double x, double epsilon) {
  const double frac = x - std::floor(x);
  if (!(x >= 1.5) || std::abs(frac - 0.5) > 1e-9)
    throw domain_error(
        "perron evaluation requires half-integer x = m + 1/2 with m >= 1");
  if (!(epsilon > 0.0) || epsilon > 0.5)
    throw domain_error("epsilon must lie in (0, 1/2]");
}

// 12-point Gauss-Legendre estimate of Int_a^b Re[F(c+it) x^{c+it}/(c+it)] dt.
double perron_panel(double c, double log_x, double a, double b) {
  const GaussLegendre12& g = gl12();
  const double mid = (a + b) / 2.0;
  const double half = (b - a) / 2.0;
  double panel_sum = 0.0;
  for (std::size_t j = 0; j < 12; ++j) {
    const double t = mid + half * g.node[j];
    const std::complex<double> s(c, t);
    const std::complex<double> f = big_f(s).value() * std::exp(s * log_x) / s;
    panel_sum += g.weight[j] * f.real();
  }
  return panel_sum * half;
}

// One cumulative sweep of (1/pi) Int_0^T Re[F(c+it) x^{c+it}/(c+it)] dt on
// fixed panels, reporting the cumulative value at every checkpoint. The
// checkpoints must be ascending multiples of the panel width.
std::vector<double> perron_sweep(double x, double epsilon,
                                 const std::vector<double>& checkpoints,
                                 double panel) {
  const double c = 1.0 + epsilon;
  const double log_x = std::log(x);

  std::vector<long long> panel_index(checkpoints.size());
  for (std::size_t i = 0; i < checkpoints.size(); ++i)
    panel_index[i] = std::llround(checkpoints[i] / panel);

  std::vector<double> out(checkpoints.size(), 0.0);
  Kahan acc;
  std::size_t next_cp = 0;
  const long long total_panels = panel_index.back();
  for (long long k = 0; k < total_panels; ++k) {
    const double a = static_cast<double>(k) * panel;
    acc.add(perron_panel(c, log_x, a, a + panel));
    while (next_cp < checkpoints.size() && panel_index[next_cp] == k + 1) {
      out[next_cp] = acc.sum / kPi;
      ++next_cp;
    }
  }
  return out;
}

// Single-height evaluation for arbitrary T: full panels plus one fractional
// tail panel when T is not a panel multiple.
double perron_single(double x, double epsilon, double T, double panel) {
  const double c = 1.0 + epsilon;
  const double log_x = std::log(x);
  const auto n_full = static_cast<long long>(std::floor(T / panel + 1e-9));
  Kahan acc;
  for (long long k = 0; k < n_full; ++k) {
    const double a = static_cast<double>(k) * panel;
    acc.add(perron_panel(c, log_x, a, a + panel));
  }
  const double tail_start = static_cast<double>(n_full) * panel;
  if (T - tail_start > 1e-9) acc.add(perron_panel(c, log_x, tail_start, T));
  return acc.sum / kPi;
}

}  // namespace

double perron_truncated(double x, double T, double epsilon) {
  validate_perron_args(x, epsilon);
  if (!(T >= 10.0) || !(T <= 600.0))
    throw domain_error("perron truncation height must lie in [10, 600]");

  double coarse = perron_single(x, epsilon, T, 0.25);
  double fine = perron_single(x, epsilon, T, 0.125);
  for (double width = 0.0625; width >= 0.03125; width /= 2.0) {
    if (std::abs(coarse - fine) <= 1e-6 * (1.0 + std::abs(fine))) return fine;
    coarse = fine;
    fine = perron_single(x, epsilon, T, width);
  }
  if (std::abs(coarse - fine) <= 1e-6 * (1.0 + std::abs(fine))) return fine;
  throw integration_error(
      "perron quadrature failed to stabilise under panel refinement");
}

std::vector<double> perron_checkpoints(double x,
                                       const std::vector<double>& checkpoints,
                                       double epsilon) {
  validate_perron_args(x, epsilon);
  if (checkpoints.empty())
    throw domain_error("at least one checkpoint is required");
  double prev = 0.0;
  for (double cp : checkpoints) {
    if (!(cp > prev))
      throw domain_error("checkpoints must be positive and ascending");
    if (std::abs(cp / 0.25 - std::round(cp / 0.25)) > 1e-9)
      throw domain_error("checkpoints must be multiples of the panel width 1/4");
    if (cp > 600.0)
      throw domain_error("checkpoints must not exceed the height limit 600");
    prev = cp;
  }

  const std::vector<double> coarse = perron_sweep(x, epsilon, checkpoints, 0.25);
  std::vector<double> fine = perron_sweep(x, epsilon, checkpoints, 0.125);
  for (std::size_t i = 0; i < fine.size(); ++i) {
    if (std::abs(coarse[i] - fine[i]) > 1e-6 * (1.0 + std::abs(fine[i])))
      throw integration_error(
          "perron quadrature disagreed at checkpoint T = " +
          std::to_string(checkpoints[i]));
  }
  return fine;
}

std::complex<double> contour_residue_check(std::complex<double> center,
                                           double radius, double x,
                                           const ZeroTable& table,
                                           int n_nodes) {
  if (!(radius >= 1e-4) || radius > 1e-2)
    throw domain_error("contour radius must lie in [1e-4, 1e-2]");
  if (n_nodes < 1024) throw domain_error("contour needs at least 1024 nodes");
  if (!(x >= 2.0)) throw domain_error("contour check requires x >= 2");

  // Singularity catalog of F(s) x^s / s: the poles 0 and 1, the trivial-zero
  // poles at the negative integers (zeta(2s) = 0 at s = -k), and the
  // zero-pair poles 1/4 +- i gamma/2 from the table.
  std::vector<std::complex<double>> catalog = {{0.0, 0.0}, {1.0, 0.0}};
  const int deepest =
      static_cast<int>(std::ceil(std::abs(center) + 3.0 * radius)) + 2;
  for (int k = 1; k <= deepest; ++k) catalog.emplace_back(-k, 0.0);
  for (const ZeroOrdinate& z : table.ordinates) {
    catalog.emplace_back(0.25, z.gamma / 2.0);
    catalog.emplace_back(0.25, -z.gamma / 2.0);
  }

  int enclosed = 0;
  for (const std::complex<double>& sing : catalog) {
    const double dist = std::abs(sing - center);
    if (dist < radius) {
      ++enclosed;
    } else if (dist < 3.0 * radius) {
      throw geometry_error(
          "catalog singularity within 3 radii of the contour but not enclosed");
    }
  }
  if (enclosed != 1)
    throw geometry_error("contour must enclose exactly one singularity, found " +
                         std::to_string(enclosed));

  const double log_x = std::log(x);
  Kahan re_acc, im_acc;
  for (int j = 0; j < n_nodes; ++j) {
    const double theta = 2.0 * kPi * j / n_nodes;
    const std::complex<double> offset =
        radius * std::exp(std::complex<double>(0.0, theta));
    const std::complex<double> s = center + offset;
    const std::complex<double> val =
        big_f(s).value() * std::exp(s * log_x) / s * offset;
    re_acc.add(val.real());
    im_acc.add(val.imag());
  }
  return {re_acc.sum / n_nodes, im_acc.sum / n_nodes};
}

ScanResult residual_scan(const std::vector<std::uint64_t>& grid,
                         const ZeroTable& table, ScanMode mode,
                         std::uint64_t max_x) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && grid[i] <= grid[i - 1])
      throw domain_error("scan grid must be strictly ascending");
    if (grid[i] > max_x)
      throw limit_error("scan grid value " + std::to_string(grid[i]) +
                        " exceeds the configured maximum " +
                        std::to_string(max_x));
    const std::uint64_t min_x = mode == ScanMode::none ? 2 : 100;
    if (grid[i] < min_x)
      throw domain_error("scan grid values must be >= " +
                         std::to_string(min_x) + " in this mode");
  }
  if (mode != ScanMode::none && table.ordinates.empty())
    throw empty_table_error("scan with a zero sum needs a nonempty table");

  const std::vector<ZeroTerm> terms =
      mode == ScanMode::none ? std::vector<ZeroTerm>{} : build_terms(table);

  ScanResult result;
  result.rows.reserve(grid.size());
  Kahan rms_mode_acc, rms_none_acc;
  for (std::uint64_t xi : grid) {
    const double x = static_cast<double>(xi);
    ScanRow row;
    row.breakdown = make_breakdown(x, table, terms, mode);
    const double x14 = std::pow(x, 0.25);
    row.residual_over_x14 = row.breakdown.residual / x14;
    rms_mode_acc.add(row.residual_over_x14 * row.residual_over_x14);

    const double residual_none = static_cast<double>(row.breakdown.exact) -
                                 row.breakdown.main - row.breakdown.const_term;
    const double none14 = residual_none / x14;
    rms_none_acc.add(none14 * none14);
    result.rows.push_back(row);
  }

  if (!grid.empty()) {
    const double n = static_cast<double>(grid.size());
    result.summary.rms_mode = std::sqrt(rms_mode_acc.sum / n);
    result.summary.rms_none = std::sqrt(rms_none_acc.sum / n);
  }
  return result;
}

}  // namespace omegax
