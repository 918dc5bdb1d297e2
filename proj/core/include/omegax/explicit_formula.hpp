// Explicit-formula layer for S(x) = sum_{n<=x} 2^omega(n), whose Dirichlet
// series is F(s) = zeta(s)^2 / zeta(2s):
//
//   S(x) ~ [Res at s=1] + [Res at s=0] + sum over zeros of zeta(2s) of the
//          pole residues of F(s) x^s / s.
//
// Residues, all computed from the zeta engine and cross-checkable against
// numerical contour integrals:
//  - s=1 is a double pole of F. Writing zeta(s)^2 = 1/(s-1)^2 + 2g/(s-1)+...
//    and expanding 1/zeta(2s) to FIRST order about s=1 (its derivative term
//    contributes at a double pole) gives
//      Res_{s=1} F(s) x^s / s
//        = (x/zeta(2)) (log x + 2g - 1 - 2 zeta'(2)/zeta(2))
//    i.e. coefficients a1 = 1/zeta(2) on x log x and
//    a2 + a2_correction = (2g-1)/zeta(2) - 2 zeta'(2)/zeta(2)^2 on x.
//    Dropping the derivative term (keeping a2 alone) leaves an O(x) hole in
//    the decomposition; the contour check pins the corrected value.
//  - s=0: Res = F(0) = zeta(0) = -1/2.
//  - s0 = 1/4 + i*gamma/2 (zeta(2 s0) = 0, simple): Res = A x^{s0} with
//      A = zeta(s0)^2 / (s0 * 2 zeta'(2 s0)),
//    and the conjugate zero folds into 2 Re[A x^{s0}], which is real.
//
// perron_truncated evaluates the truncated inversion integral
//   (1/2pi) Int_{-T}^{T} F(c+it) x^{c+it} / (c+it) dt,  c = 1 + epsilon,
// whose truncation error has the 1/T envelope C x^{1+eps} / T.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "omegax/arithmetic.hpp"
#include "omegax/zeros.hpp"

namespace omegax {

struct MainTermCoeffs {
  double a1 = 0.0;             // 1/zeta(2)
  double a2 = 0.0;             // (2 gamma - 1)/zeta(2)
  double a2_correction = 0.0;  // -2 zeta'(2)/zeta(2)^2, see header comment
  double const_term = 0.0;     // zeta(0) = -1/2

  double applied(double x) const;  // a1 x log x + (a2 + a2_correction) x
};

// Coefficients computed once from the zeta engine (no hard-coded literals).
const MainTermCoeffs& main_term_coeffs();

// Res_{s=1} applied at x (x >= 2).
double main_terms(double x);

struct ZeroTerm {
  double gamma = 0.0;               // ordinate of the zero 1/2 + i*gamma
  std::complex<double> coeff;       // A as above
  std::complex<double> pole;        // s0 = 1/4 + i*gamma/2, Re exactly 1/4
};

// Build the pair coefficient for one ordinate. Throws invalid_ordinate_error
// when gamma is not within 1e-6 of a true ordinate (Newton distance
// |zeta/zeta'| at 1/2 + i*gamma).
ZeroTerm zero_term(double gamma);

// Folded pair contribution 2 Re[A x^{s0}]; |result| <= 2|A| x^(1/4).
double residue_at_zero_pair(double gamma, double x);

// S1 truncation: sum of pair terms with 0 < gamma <= T, accumulated in
// ascending gamma with compensated summation (bit-reproducible).
// Throws coverage_error for T > table.max_gamma and domain_error for
// T > x/10 (the expansion's own truncation constraint).
double zero_sum(double x, const ZeroTable& table, double T);

struct FormulaBreakdown {
  double x = 0.0;
  std::int64_t exact = 0;    // S(floor(x))
  double main = 0.0;         // a1 x log x + (a2 + a2_correction) x
  double const_term = 0.0;   // -1/2
  double zero_sum = 0.0;
  double residual = 0.0;     // exact - main - const_term - zero_sum
  double truncation = 0.0;   // effective T actually summed to
  std::size_t zeros_used = 0;
  bool table_bound = false;  // true when the table, not the formula, set T
};

// Decomposition with T = min(x/10, table.max_gamma); x >= 100.
FormulaBreakdown conditional_formula(double x, const ZeroTable& table);

// Decomposition with T = min(x^(21/29), table.max_gamma); x >= 100.
FormulaBreakdown unconditional_formula(double x, const ZeroTable& table);

// Truncated inversion integral at c = 1 + epsilon, evaluated as
// (1/pi) Int_0^T Re[...] dt on fixed panels with 12-point Gauss-Legendre
// nodes, then verified against a half-width re-integration (integration_error
// if the two disagree beyond tolerance). Requirements: x = m + 1/2 (jump
// points excluded), 10 <= T <= 600, 0 < epsilon <= 1/2; domain_error
// otherwise.
double perron_truncated(double x, double T, double epsilon);

// One quadrature sweep to max(checkpoints) returning the integral value at
// each checkpoint (each must be a multiple of the panel width 1/4). Used by
// the error-envelope rate check, where one sweep supplies a whole window of
// truncation heights.
std::vector<double> perron_checkpoints(double x,
                                       const std::vector<double>& checkpoints,
                                       double epsilon);

// (1/2 pi i) closed-circle integral of F(s) x^s / s by the trapezoid rule
// (spectrally accurate on circles), n_nodes >= 1024. The circle must enclose
// exactly one singularity from the catalog {0, 1, -1, -2, -3, ...,
// 1/4 +- i*gamma/2} and keep every other catalog entry at distance
// >= 3*radius from the center; geometry_error otherwise. radius must lie in
// [1e-4, 1e-2] (domain_error).
std::complex<double> contour_residue_check(std::complex<double> center,
                                           double radius, double x,
                                           const ZeroTable& table,
                                           int n_nodes = 2048);

enum class ScanMode { none, conditional, unconditional };

struct ScanRow {
  FormulaBreakdown breakdown;
  double residual_over_x14 = 0.0;  // residual / x^(1/4)
};

struct ScanSummary {
  double rms_mode = 0.0;  // RMS of residual/x^(1/4) in the requested mode
  double rms_none = 0.0;  // same grid with zero_sum = 0 (mode none)
};

struct ScanResult {
  std::vector<ScanRow> rows;
  ScanSummary summary;
};

// Residual study over an ascending grid; every row also lands in the
// summary RMS pair. Grid values must be ascending and <= max_x.
ScanResult residual_scan(const std::vector<std::uint64_t>& grid,
                         const ZeroTable& table, ScanMode mode,
                         std::uint64_t max_x = kDefaultMaxX);

}  // namespace omegax
