// Zero table: ingestion, validation, Hardy-Z refinement, counting, and a
// small binary cache for ordinates gamma of critical-line zeros 1/2 + i*gamma.
//
// Text format: one positive decimal ordinate per line, strictly ascending,
// '#' comment lines and blank lines permitted, LF or CRLF endings. Every
// ordinate is re-validated through the zeta engine at load time
// (|zeta(1/2 + i*gamma)| < 1e-6) instead of being trusted.
//
// Cache format: magic "ZET" + version byte '1', then u32 little-endian
// count, then count f64 little-endian ordinates. Round trips preserve
// ordinates bit-exactly; the format carries no provenance fields, so loaded
// entries are marked imported and revalidated.

#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

namespace omegax {

enum class ZeroSource { imported, refined };

struct ZeroOrdinate {
  double gamma = 0.0;
  ZeroSource source = ZeroSource::imported;
  double residual = 0.0;  // |Z(gamma)| = |zeta(1/2 + i*gamma)| at this value
};

struct ZeroTable {
  std::vector<ZeroOrdinate> ordinates;  // strictly ascending gamma

  std::size_t count() const { return ordinates.size(); }
  double max_gamma() const {
    return ordinates.empty() ? 0.0 : ordinates.back().gamma;
  }
};

// Parse and validate a text zero file. Throws parse_error (with line
// number), order_error, empty_table_error, or invalid_ordinate_error (first
// ordinate outside (14.0, 14.2), or an ordinate failing the zeta check).
ZeroTable load_zeros(const std::filesystem::path& path);

// Polish gamma_approx to |zeta(1/2 + i*gamma)| < 1e-8 via a Hardy-Z sign
// bracket in [gamma_approx - 0.05, gamma_approx + 0.05] followed by
// bisection/secant steps. Throws refinement_error if no bracket exists or
// 50 iterations do not converge; range_error for gamma_approx > 500.
ZeroOrdinate refine_zero(double gamma_approx);

// Refine every ordinate of a table (order preserved).
ZeroTable refine_table(const ZeroTable& table);

// Number of ordinates <= T. Throws coverage_error for T > max_gamma: beyond
// coverage the true count is unknown and silence would misreport it.
std::size_t zero_count(const ZeroTable& table, double T);

// Smooth Riemann-von Mangoldt count (T/2pi) log(T/(2 pi e)) + 7/8.
double rvm_count(double T);

// Binary ordinate cache; see format note above. cache_load revalidates the
// ordinates through the zeta engine like the text path. Throws cache_error
// (format/version/truncation) and propagates table validation errors.
void cache_store(const ZeroTable& table, const std::filesystem::path& path);
ZeroTable cache_load(const std::filesystem::path& path);

}  // namespace omegax
