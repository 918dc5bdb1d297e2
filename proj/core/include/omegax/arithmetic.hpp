// Exact arithmetic layer: omega/mu/least-prime-factor sieving and the exact
// summatory function S(x) = sum_{n<=x} 2^omega(n).
//
// Two independent exact algorithms are provided:
//  - summatory_exact: streaming segmented sieve, O(x log log x) time,
//    O(segment) memory.
//  - summatory_fast: the sublinear identity S(x) = sum_{d<=sqrt(x)} mu(d) *
//    D(floor(x/d^2)) where D(y) = sum_{n<=y} d(n) is evaluated by the
//    Dirichlet hyperbola method; O(x^(1/2+eps)) time.
// The identity behind summatory_fast is the coefficient identity
// 2^omega(n) = sum_{d^2 | n} mu(d) d(n/d^2), checkable per-n with
// check_identity. All values are exact integers; equality of the two
// algorithms is a primary test oracle.

#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

namespace omegax {

inline constexpr std::size_t kDefaultSegmentSize = std::size_t{1} << 22;
inline constexpr std::size_t kMinSegmentSize = std::size_t{1} << 10;
inline constexpr std::size_t kMaxSegmentSize = std::size_t{1} << 26;
inline constexpr std::uint64_t kDefaultMaxX = 1'000'000'000ull;

// Per-offset multiplicative data for a contiguous range [segment_start,
// segment_start + size - 1].
//
// lpf stores the least prime factor, with 0 encoding "prime or 1" so the
// array never needs values above sqrt(hi) except via the prime convention.
struct FactorTable {
  std::uint64_t segment_start = 1;
  std::vector<std::uint32_t> lpf;  // 0 for n = 1 and for primes
  std::vector<std::uint8_t> omega;
  std::vector<std::int8_t> mu;     // in {-1, 0, +1}

  std::size_t size() const { return omega.size(); }

  // Accessors by absolute n; n must lie inside the segment.
  std::uint8_t omega_at(std::uint64_t n) const {
    return omega[static_cast<std::size_t>(n - segment_start)];
  }
  std::int8_t mu_at(std::uint64_t n) const {
    return mu[static_cast<std::size_t>(n - segment_start)];
  }
  std::uint32_t lpf_at(std::uint64_t n) const {
    return lpf[static_cast<std::size_t>(n - segment_start)];
  }
};

enum class SumMethod { sieve, hyperbola, perron };

struct SummatoryResult {
  std::uint64_t x = 0;
  std::int64_t value = 0;  // exact S(x); S(10^9) fits comfortably in 63 bits
  SumMethod method = SumMethod::sieve;
  std::chrono::duration<double> elapsed{0};
};

// Integer square root: largest r with r*r <= y. Integer Newton iteration
// seeded from floating point, then corrected; never trusts float rounding.
std::uint64_t isqrt(std::uint64_t y);

// Primes <= limit by a simple Eratosthenes sieve (used for base primes).
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

// Sieve omega, mu and least prime factor over [lo, hi].
// Throws domain_error unless 1 <= lo <= hi, sizing_error if the segment
// exceeds max_segment entries.
FactorTable sieve_segment(std::uint64_t lo, std::uint64_t hi,
                          std::size_t max_segment = kMaxSegmentSize);

// 2^omega(n) by trial division; exact for any n >= 1 (domain_error on n=0).
std::int64_t two_pow_omega(std::uint64_t n);

// Exact S(x) by streaming segmented sieve. Segments are independent and are
// distributed over `threads` workers; partial sums are exact integers, so
// the result is bit-identical for every parallelism degree and segment size.
// Throws domain_error on x=0, limit_error if x > max_x.
SummatoryResult summatory_exact(std::uint64_t x,
                                std::size_t segment_size = kDefaultSegmentSize,
                                unsigned threads = 1,
                                std::uint64_t max_x = kDefaultMaxX);

// D(y) = sum_{n<=y} d(n) in O(sqrt y) by the hyperbola formula
// D(y) = 2 * sum_{k<=floor(sqrt y)} floor(y/k) - floor(sqrt y)^2; D(0) = 0.
std::uint64_t divisor_summatory(std::uint64_t y);

// Exact S(x) by the sublinear identity; domain_error on x=0.
SummatoryResult summatory_fast(std::uint64_t x);

// Verify 2^omega(n) = sum_{d^2|n} mu(d) d(n/d^2) by explicit enumeration of
// the square divisors of n; domain_error on n=0.
bool check_identity(std::uint64_t n);

}  // namespace omegax
