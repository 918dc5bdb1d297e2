#include "omegax/zeta.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "omegax/errors.hpp"

namespace omegax {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLnPi = 1.1447298858494001741;
constexpr double kLn2 = std::numbers::ln2;
// Unit roundoff for the rounding majorant attached to every bound.
constexpr double kUlp = 1.1e-16;

// B_2, B_4, ..., B_26: enough for bernoulli_order up to 12 plus the first
// omitted term that the remainder bound inspects.
constexpr std::array<double, 13> kBernoulli = {
    1.0 / 6.0,           -1.0 / 30.0,         1.0 / 42.0,
    -1.0 / 30.0,         5.0 / 66.0,          -691.0 / 2730.0,
    7.0 / 6.0,           -3617.0 / 510.0,     43867.0 / 798.0,
    -174611.0 / 330.0,   854513.0 / 138.0,    -236364091.0 / 2730.0,
    8553103.0 / 6.0};

void validate_params(const EvalParams& p) {
  if (p.bernoulli_order < 2 || p.bernoulli_order > 12)
    throw range_error("bernoulli_order must lie in [2, 12]");
  if (p.em_terms < 0) throw range_error("em_terms must be >= 0");
  if (!(p.target_abs_err > 0.0))
    throw range_error("target_abs_err must be positive");
}

int auto_cutoff(double abs_t, const EvalParams& p) {
  int n = std::max(25, static_cast<int>(std::ceil(1.3 * abs_t + 30.0)));
  return std::max(n, p.em_terms);
}

struct EmEval {
  std::complex<double> value;
  std::complex<double> deriv;
  double value_bound = 0.0;
  double deriv_bound = 0.0;
};

// One Euler-Maclaurin evaluation of zeta and zeta' with cutoff N and K
// Bernoulli terms. Valid for Re(s) > -(2K - 1); callers stay at Re(s) >= -2.
EmEval em_core(std::complex<double> s, int N, int K) {
  EmEval out;
  std::complex<double> tot = 0.0, dtot = 0.0;
  double abs_sum = 0.0, dabs_sum = 0.0;

  for (int n = 1; n <= N; ++n) {
    const double ln_n = std::log(static_cast<double>(n));
    const std::complex<double> term = std::exp(-s * ln_n);
    tot += term;
    dtot += -ln_n * term;
    abs_sum += std::abs(term);
    dabs_sum += ln_n * std::abs(term);
  }

  const double Nf = static_cast<double>(N);
  const double L = std::log(Nf);
  const std::complex<double> n_pow = std::exp(-s * L);  // N^(-s)

  const std::complex<double> sm1 = s - 1.0;
  const std::complex<double> tail1 = n_pow * Nf / sm1;  // N^(1-s)/(s-1)
  tot += tail1;
  dtot += n_pow * Nf * (-L * sm1 - 1.0) / (sm1 * sm1);
  abs_sum += std::abs(tail1);
  dabs_sum += std::abs(tail1) * (L + 1.0 / std::abs(sm1));

  tot += -0.5 * n_pow;
  dtot += 0.5 * L * n_pow;
  abs_sum += 0.5 * std::abs(n_pow);
  dabs_sum += 0.5 * L * std::abs(n_pow);

  // Bernoulli corrections; poch carries the rising factorial (s)_{2k-1} and
  // dpoch its s-derivative, both advanced by one recurrence per term.
  std::complex<double> poch = s, dpoch = 1.0;
  std::complex<double> npow = n_pow / Nf;  // N^(-s-2k+1) at k = 1
  double fact = 2.0;                       // (2k)! at k = 1
  for (int k = 1; k <= K; ++k) {
    const double c = kBernoulli[static_cast<std::size_t>(k - 1)] / fact;
    const std::complex<double> term = c * poch * npow;
    tot += term;
    dtot += c * (dpoch * npow - L * poch * npow);
    abs_sum += std::abs(term);
    dabs_sum +=
        std::abs(term) * L + std::abs(c) * std::abs(dpoch) * std::abs(npow);

    const std::complex<double> f1 = s + (2.0 * k - 1.0);
    const std::complex<double> f2 = s + 2.0 * k;
    dpoch = dpoch * f1 * f2 + poch * (f1 + f2);
    poch *= f1 * f2;
    npow /= Nf * Nf;
    fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }

  // Analytic remainder: first omitted term scaled by |(s+2K+1)/(sigma+2K+1)|.
  const double c_next = kBernoulli[static_cast<std::size_t>(K)] / fact;
  const double omitted = std::abs(c_next * poch * npow);
  const double scale =
      std::abs((s + (2.0 * K + 1.0)) / (s.real() + 2.0 * K + 1.0));
  const double rem = omitted * scale;
  const double rounding = (2.0 + std::sqrt(Nf)) * kUlp;

  out.value = tot;
  out.deriv = dtot;
  out.value_bound = rem + rounding * abs_sum;
  out.deriv_bound = rem * (L + 2.0) + rounding * dabs_sum;
  return out;
}

// Evaluate with automatic cutoff, doubling N (twice at most) while the
// claimed bound misses the target. The bound stays honest either way.
EmEval em_adaptive(std::complex<double> s, const EvalParams& p) {
  int N = auto_cutoff(std::abs(s.imag()), p);
  EmEval e = em_core(s, N, p.bernoulli_order);
  for (int attempt = 0; attempt < 2 && e.value_bound > p.target_abs_err;
       ++attempt) {
    N *= 2;
    e = em_core(s, N, p.bernoulli_order);
  }
  return e;
}

void validate_height(std::complex<double> s) {
  if (std::abs(s.imag()) > kMaxHeight)
    throw range_error("|Im s| exceeds the supported height " +
                      std::to_string(kMaxHeight));
}

bool is_real_integer(std::complex<double> s, long long& k) {
  if (std::abs(s.imag()) > 1e-9) return false;
  const double r = std::round(s.real());
  if (std::abs(s.real() - r) > 1e-9) return false;
  k = static_cast<long long>(r);
  return true;
}

// log sin z, stable for large |Im z|: the dominant exponential is factored
// out so neither overflow nor cancellation occurs. Branch only matters up to
// 2 pi i, which every consumer (chi, reflection) exponentiates away.
std::complex<double> log_sin(std::complex<double> z) {
  const std::complex<double> i(0.0, 1.0);
  if (z.imag() > 0.0)
    return i * (kPi / 2.0 - z) + std::log(1.0 - std::exp(2.0 * i * z)) - kLn2;
  return i * (z - kPi / 2.0) + std::log(1.0 - std::exp(-2.0 * i * z)) - kLn2;
}

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,    676.5203681218851,      -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,   9.9843695780195716e-6,  1.5056327351493116e-7};

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (z.real() < 0.5)
    return kLnPi - log_sin(kPi * z) - log_gamma(1.0 - z);
  const std::complex<double> zz = z - 1.0;
  std::complex<double> x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i)
    x += kLanczos[i] / (zz + static_cast<double>(i));
  const std::complex<double> t = zz + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (zz + 0.5) * std::log(t) - t +
         std::log(x);
}

ComplexValue chi(std::complex<double> s) {
  long long k = 0;
  if (is_real_integer(s, k)) {
    if (k % 2 == 0)
      throw domain_error("chi is singular in log form at even integer s = " +
                         std::to_string(k) + " (sin factor vanishes)");
    if (k >= 1)
      throw domain_error("chi has a Gamma pole at s = " + std::to_string(k));
  }
  const std::complex<double> log_chi = s * kLn2 + (s - 1.0) * kLnPi +
                                       log_sin(kPi * s / 2.0) +
                                       log_gamma(1.0 - s);
  const std::complex<double> v = std::exp(log_chi);
  ComplexValue out;
  out.re = v.real();
  out.im = v.imag();
  out.abs_err_bound = std::abs(v) * 1e-13;
  return out;
}

ComplexValue zeta(std::complex<double> s, const EvalParams& params) {
  validate_params(params);
  validate_height(s);
  if (std::abs(s - std::complex<double>(1.0, 0.0)) < 1e-14)
    throw pole_error("zeta has its pole at s = 1");

  if (s.real() < -2.0) {
    long long k = 0;
    if (is_real_integer(s, k) && k % 2 == 0) {
      // Trivial zero: the reflection's sin factor vanishes identically.
      ComplexValue zero;
      zero.abs_err_bound = 1e-15;
      return zero;
    }
    const ComplexValue c = chi(s);
    const ComplexValue zr = zeta(1.0 - s, params);
    const std::complex<double> v = c.value() * zr.value();
    ComplexValue out;
    out.re = v.real();
    out.im = v.imag();
    out.abs_err_bound = std::abs(c.value()) * zr.abs_err_bound +
                        std::abs(zr.value()) * c.abs_err_bound +
                        c.abs_err_bound * zr.abs_err_bound;
    return out;
  }

  const EmEval e = em_adaptive(s, params);
  ComplexValue out;
  out.re = e.value.real();
  out.im = e.value.imag();
  out.abs_err_bound = e.value_bound;
  return out;
}

ComplexValue zeta_derivative(std::complex<double> s, const EvalParams& params) {
  validate_params(params);
  validate_height(s);
  if (std::abs(s - std::complex<double>(1.0, 0.0)) < 1e-14)
    throw pole_error("zeta' has a double pole at s = 1");
  if (s.real() < -2.0)
    throw range_error("zeta_derivative supports Re(s) >= -2");

  const EmEval e = em_adaptive(s, params);
  ComplexValue out;
  out.re = e.deriv.real();
  out.im = e.deriv.imag();
  out.abs_err_bound = e.deriv_bound;
  return out;
}

ComplexValue big_f(std::complex<double> s, const EvalParams& params) {
  validate_params(params);
  validate_height(s);
  if (std::abs(s - std::complex<double>(1.0, 0.0)) < 1e-14)
    throw pole_error("F has a double pole at s = 1");

  const std::complex<double> w = 2.0 * s;
  const ComplexValue num = zeta(s, params);
  const std::complex<double> z1 = num.value();

  if (std::abs(w - 1.0) < 1e-8) {
    // Removable zero of 1/zeta(2s) at s = 1/2: invert the Laurent series
    // zeta(w) = 1/u + g0 - g1 u + (g2/2) u^2 + ..., u = w - 1.
    static const double g0 = stieltjes(0, 1'000'000);
    static const double g1 = stieltjes(1, 1'000'000);
    static const double g2 = stieltjes(2, 1'000'000);
    const std::complex<double> u = w - 1.0;
    const std::complex<double> inv =
        u / (1.0 + g0 * u - g1 * u * u + 0.5 * g2 * u * u * u);
    const std::complex<double> v = z1 * z1 * inv;
    ComplexValue out;
    out.re = v.real();
    out.im = v.imag();
    out.abs_err_bound =
        2.0 * std::abs(z1) * num.abs_err_bound * std::abs(inv) +
        std::abs(v) * 1e-12;
    return out;
  }

  // Guard against the poles of F at zeros of zeta(2s). Left of the strip the
  // zeros are exactly the even negative integers; inside, the Newton
  // distance |zeta/zeta'| estimates the separation.
  if (w.real() < -1.5) {
    const double nearest = -2.0 * std::round(-w.real() / 2.0);
    const std::complex<double> s_zero(nearest / 2.0, 0.0);
    if (std::abs(s - s_zero) < 1e-4)
      throw near_pole_error("F evaluated within 1e-4 of its pole at s = " +
                                std::to_string(s_zero.real()),
                            s_zero);
  }

  const ComplexValue den = zeta(w, params);
  const std::complex<double> z2 = den.value();

  if (w.real() >= -1.5 && std::abs(z2) < 0.05) {
    const ComplexValue dden = zeta_derivative(w, params);
    const std::complex<double> step = z2 / (2.0 * dden.value());
    if (std::abs(step) < 1e-4)
      throw near_pole_error(
          "F evaluated within 1e-4 of a pole (zero of zeta(2s))", s - step);
  }

  const std::complex<double> v = z1 * z1 / z2;
  ComplexValue out;
  out.re = v.real();
  out.im = v.imag();
  out.abs_err_bound = 2.0 * std::abs(z1) * num.abs_err_bound / std::abs(z2) +
                      std::abs(v) * den.abs_err_bound / std::abs(z2);
  return out;
}

namespace {

// Polynomial-in-log representation sum_i a[i] (log t)^i / t^p used for the
// derivatives of f(t) = (log t)^m / t in the Stieltjes tail correction.
struct LogPoly {
  std::vector<double> a;
  int p = 1;

  void differentiate() {
    std::vector<double> next(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0.0) continue;
      if (i > 0) next[i - 1] += static_cast<double>(i) * a[i];
      next[i] -= static_cast<double>(p) * a[i];
    }
    a = std::move(next);
    ++p;
  }

  double eval(double log_t, double t) const {
    double poly = 0.0;
    for (std::size_t i = a.size(); i-- > 0;) poly = poly * log_t + a[i];
    return poly / std::pow(t, p);
  }
};

}  // namespace

double stieltjes(int m, std::uint64_t n_max) {
  if (m < 0 || m > 2) throw range_error("stieltjes supports m in {0, 1, 2}");
  if (n_max < 1000)
    throw range_error("stieltjes needs n_max >= 1000 for the stated accuracy");

  // Compensated ascending sum of (log k)^m / k.
  double sum = 0.0, comp = 0.0;
  for (std::uint64_t k = 1; k <= n_max; ++k) {
    const double term =
        std::pow(std::log(static_cast<double>(k)), m) / static_cast<double>(k);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }

  const double n = static_cast<double>(n_max);
  const double L = std::log(n);
  double gamma_m = sum - std::pow(L, m + 1) / (m + 1);

  LogPoly f;
  f.a.assign(static_cast<std::size_t>(m) + 1, 0.0);
  f.a[static_cast<std::size_t>(m)] = 1.0;
  gamma_m -= 0.5 * f.eval(L, n);

  static constexpr std::array<double, 3> kTailCoeff = {
      1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0};  // B_2j / (2j)!
  for (int j = 0; j < 3; ++j) {
    f.differentiate();
    gamma_m -= kTailCoeff[static_cast<std::size_t>(j)] * f.eval(L, n);
    f.differentiate();
  }
  return gamma_m;
}

double hardy_theta(double t) {
  return std::imag(log_gamma(std::complex<double>(0.25, t / 2.0))) -
         (t / 2.0) * kLnPi;
}

double hardy_z(double t) {
  const ComplexValue zv = zeta(std::complex<double>(0.5, t));
  const std::complex<double> phase =
      std::exp(std::complex<double>(0.0, hardy_theta(t)));
  return std::real(phase * zv.value());
}

}  // namespace omegax
