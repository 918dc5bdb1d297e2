// Complex zeta machinery: Euler-Maclaurin zeta(s) and zeta'(s), the
// functional-equation factor chi(s), the quotient F(s) = zeta(s)^2/zeta(2s),
// Stieltjes constants, and the Hardy Z function.
//
// One evaluation kernel covers the whole supported strip: the truncated
// Dirichlet sum to N plus the Euler-Maclaurin tail
//   zeta(s) = sum_{n<=N} n^-s + N^(1-s)/(s-1) - N^-s/2
//           + sum_{k=1..K} B_2k/(2k)! * (s)_{2k-1} * N^(-s-2k+1) + R
// with |R| <= |first omitted term| * |(s+2K+1)/(Re s+2K+1)|. N grows
// linearly with |Im s|, so double precision reaches ~1e-12 absolute error
// throughout the supported height. For Re(s) < -2 the reflection
// zeta(s) = chi(s) zeta(1-s) is used instead.

#pragma once

#include <complex>
#include <cstdint>

namespace omegax {

// Supported height. Heights up to ~1120 are exercised by the Perron rate
// check (which evaluates zeta(2c + 2iT) for T up to 560); the cap keeps a
// margin above that while N = O(|t|) stays cheap.
inline constexpr double kMaxHeight = 1500.0;

// A computed complex value with a claimed absolute error bound. The bound is
// the analytic Euler-Maclaurin remainder plus a rounding majorant; exceeding
// it against a higher-precision recomputation is a defect, not noise.
struct ComplexValue {
  double re = 0.0;
  double im = 0.0;
  double abs_err_bound = 0.0;

  std::complex<double> value() const { return {re, im}; }
};

// Euler-Maclaurin evaluation parameters.
// em_terms = 0 selects the automatic cutoff N = max(25, ceil(1.3|t| + 30)),
// which already satisfies N >= max(10, ceil|t|); a positive value raises
// (never lowers) the cutoff. bernoulli_order must lie in [2, 12].
struct EvalParams {
  int em_terms = 0;
  int bernoulli_order = 10;
  double target_abs_err = 1e-12;
};

// zeta(s). Throws pole_error at s=1, range_error for |Im s| > kMaxHeight or
// bernoulli_order outside [2, 12].
ComplexValue zeta(std::complex<double> s, const EvalParams& params = {});

// zeta'(s) by term-wise differentiation of the same expansion. Supported for
// Re(s) >= -2 (nothing in the library needs the derivative left of the
// strip); range_error otherwise and for the same limits as zeta.
ComplexValue zeta_derivative(std::complex<double> s,
                             const EvalParams& params = {});

// chi(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s), computed in log form with a
// Lanczos log-Gamma so large heights neither overflow nor lose the phase.
// Throws domain_error at real integer s where the sine factor vanishes or
// the Gamma factor has a pole (even s, and s = 1, 3, 5, ...).
ComplexValue chi(std::complex<double> s);

// Lanczos log-Gamma (g = 7, 9 coefficients), analytically continued via the
// reflection formula for Re(z) < 1/2; the imaginary part is continuous on
// vertical lines (no 2*pi*i jumps), which hardy_theta relies on.
std::complex<double> log_gamma(std::complex<double> z);

// F(s) = zeta(s)^2 / zeta(2s). Throws pole_error at s=1, near_pole_error
// (carrying the estimated zero location) when s is within 1e-4 of a zero of
// zeta(2s). At s=1/2 the function has a removable zero: 1/zeta(2s) is
// evaluated by Laurent inversion for |2s-1| < 1e-8.
ComplexValue big_f(std::complex<double> s, const EvalParams& params = {});

// Stieltjes constant gamma_m via the limit
//   gamma_m = lim_n [ sum_{k<=n} (log k)^m/k - (log n)^(m+1)/(m+1) ]
// accelerated by the Euler-Maclaurin tail correction
//   - f(n)/2 - sum_{j<=3} B_2j/(2j)! f^(2j-1)(n),  f(t) = (log t)^m / t,
// which turns the O((log n)^(m+1)/n) raw convergence into ~1e-13 at n=10^3.
// Throws range_error for m outside {0,1,2} or n_max < 10^3.
double stieltjes(int m, std::uint64_t n_max);

// Hardy theta(t) = Im log_gamma(1/4 + it/2) - (t/2) log pi, and
// Z(t) = Re[ exp(i theta(t)) zeta(1/2 + it) ]: real, and Z(gamma) = 0
// exactly at ordinates of critical-line zeros. |Z(t)| = |zeta(1/2+it)|.
double hardy_theta(double t);
double hardy_z(double t);

}  // namespace omegax
