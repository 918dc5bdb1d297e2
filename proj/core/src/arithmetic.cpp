#include "omegax/arithmetic.hpp"

#include <atomic>
#include <cassert>
#include <cmath>
#include <thread>

#include "omegax/errors.hpp"

namespace omegax {

std::uint64_t isqrt(std::uint64_t y) {
  if (y == 0) return 0;
  // Integer Newton from a floating seed; the correction loops below make the
  // result exact regardless of how the seed rounded.
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(y)));
  if (r == 0) r = 1;
  while (true) {
    std::uint64_t next = (r + y / r) / 2;
    if (next >= r) break;
    r = next;
  }
  while (r > y / r) --r;            // enforce r*r <= y without overflow
  while (r + 1 <= y / (r + 1)) ++r; // enforce (r+1)^2 > y
  return r;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> comp(static_cast<std::size_t>(limit) + 1, false);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (comp[p]) continue;
    out.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t m = p * p; m <= limit; m += p) comp[m] = true;
  }
  return out;
}

FactorTable sieve_segment(std::uint64_t lo, std::uint64_t hi,
                          std::size_t max_segment) {
  if (lo < 1 || lo > hi) throw domain_error("sieve_segment requires 1 <= lo <= hi");
  const std::uint64_t len64 = hi - lo + 1;
  if (len64 > max_segment)
    throw sizing_error("sieve segment of " + std::to_string(len64) +
                       " entries exceeds the budget of " +
                       std::to_string(max_segment));
  const std::size_t len = static_cast<std::size_t>(len64);

  FactorTable t;
  t.segment_start = lo;
  t.lpf.assign(len, 0);
  t.omega.assign(len, 0);
  t.mu.assign(len, 1);
  // prod accumulates the full contribution p^v_p(n) of every base prime, so
  // prod[i] < n afterwards happens exactly when n has one prime factor
  // above sqrt(hi) (necessarily to the first power).
  std::vector<std::uint64_t> prod(len, 1);

  const std::uint64_t root = isqrt(hi);
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(root))) {
    for (std::uint64_t q = p;; q *= p) {
      std::uint64_t start = ((lo + q - 1) / q) * q;
      for (std::uint64_t m = start; m <= hi; m += q) {
        const std::size_t i = static_cast<std::size_t>(m - lo);
        prod[i] *= p;
        if (q == p) {
          ++t.omega[i];
          t.mu[i] = static_cast<std::int8_t>(-t.mu[i]);
          if (t.lpf[i] == 0) t.lpf[i] = p;
        } else if (q == static_cast<std::uint64_t>(p) * p) {
          t.mu[i] = 0;
        }
      }
      if (q > hi / p) break;
    }
  }

  for (std::size_t i = 0; i < len; ++i) {
    const std::uint64_t n = lo + i;
    if (n == 1) {
      t.omega[i] = 0;
      t.mu[i] = 1;
      t.lpf[i] = 0;
      continue;
    }
    if (prod[i] < n) {
      // One leftover prime factor > sqrt(hi); its square exceeds hi >= n,
      // so it divides n exactly once.
      ++t.omega[i];
      t.mu[i] = static_cast<std::int8_t>(-t.mu[i]);
    }
    // lpf convention: 0 for primes. A prime p <= sqrt(hi) lying inside the
    // segment marked itself; a prime > sqrt(hi) was never marked at all.
    if (t.lpf[i] == n) t.lpf[i] = 0;
  }
  return t;
}

std::int64_t two_pow_omega(std::uint64_t n) {
  if (n == 0) throw domain_error("two_pow_omega requires n >= 1");
  int w = 0;
  std::uint64_t m = n;
  for (std::uint64_t d = 2; d * d <= m; d += (d == 2) ? 1 : 2) {
    if (m % d == 0) {
      ++w;
      do m /= d; while (m % d == 0);
    }
  }
  if (m > 1) ++w;
  return std::int64_t{1} << w;
}

namespace {

std::int64_t segment_power_sum(std::uint64_t lo, std::uint64_t hi,
                               std::size_t max_segment) {
  const FactorTable t = sieve_segment(lo, hi, max_segment);
  std::int64_t sum = 0;
  for (std::uint8_t w : t.omega) sum += std::int64_t{1} << w;
  return sum;
}

}  // namespace

SummatoryResult summatory_exact(std::uint64_t x, std::size_t segment_size,
                                unsigned threads, std::uint64_t max_x) {
  if (x == 0) throw domain_error("summatory_exact requires x >= 1");
  if (x > max_x)
    throw limit_error("x = " + std::to_string(x) + " exceeds the configured maximum " +
                      std::to_string(max_x));
  if (segment_size < kMinSegmentSize || segment_size > kMaxSegmentSize)
    throw sizing_error("segment_size must lie in [2^10, 2^26]");

  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t seg = segment_size;
  const std::uint64_t n_segments = (x + seg - 1) / seg;
  std::vector<std::int64_t> partial(static_cast<std::size_t>(n_segments), 0);

  auto run = [&](std::uint64_t i) {
    const std::uint64_t lo = 1 + i * seg;
    const std::uint64_t hi = std::min(x, lo + seg - 1);
    partial[static_cast<std::size_t>(i)] = segment_power_sum(lo, hi, segment_size);
  };

  unsigned workers = threads == 0 ? 1 : threads;
  if (workers <= 1 || n_segments <= 1) {
    for (std::uint64_t i = 0; i < n_segments; ++i) run(i);
  } else {
    workers = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, n_segments));
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::uint64_t i = next.fetch_add(1); i < n_segments;
             i = next.fetch_add(1))
          run(i);
      });
    for (auto& th : pool) th.join();
  }

  // Integer addition is associative, so the ordered reduction is
  // bit-identical to any parallel schedule that produced the partials.
  std::int64_t total = 0;
  for (std::int64_t part : partial) {
#ifndef NDEBUG
    std::int64_t check = 0;
    assert(!__builtin_add_overflow(total, part, &check));
#endif
    total += part;
  }

  SummatoryResult r;
  r.x = x;
  r.value = total;
  r.method = SumMethod::sieve;
  r.elapsed = std::chrono::steady_clock::now() - t0;
  return r;
}

std::uint64_t divisor_summatory(std::uint64_t y) {
  if (y == 0) return 0;
  const std::uint64_t r = isqrt(y);
  std::uint64_t sum = 0;
  for (std::uint64_t k = 1; k <= r; ++k) sum += y / k;
  return 2 * sum - r * r;
}

SummatoryResult summatory_fast(std::uint64_t x) {
  if (x == 0) throw domain_error("summatory_fast requires x >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t r = isqrt(x);
  const FactorTable small = sieve_segment(1, std::max<std::uint64_t>(r, 1));
  std::int64_t total = 0;
  for (std::uint64_t d = 1; d <= r; ++d) {
    const std::int8_t mu = small.mu_at(d);
    if (mu == 0) continue;
    const std::int64_t dsum =
        static_cast<std::int64_t>(divisor_summatory(x / (d * d)));
#ifndef NDEBUG
    std::int64_t check = 0;
    assert(!__builtin_add_overflow(total, mu * dsum, &check));
#endif
    total += mu * dsum;
  }
  SummatoryResult res;
  res.x = x;
  res.value = total;
  res.method = SumMethod::hyperbola;
  res.elapsed = std::chrono::steady_clock::now() - t0;
  return res;
}

namespace {

// Mobius and divisor-count by trial division, for the per-n identity check.
int mobius_td(std::uint64_t n) {
  int sign = 1;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2) ? 1 : 2) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      sign = -sign;
    }
  }
  if (n > 1) sign = -sign;
  return sign;
}

std::int64_t divisor_count_td(std::uint64_t n) {
  std::int64_t count = 1;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2) ? 1 : 2) {
    if (n % d == 0) {
      int e = 0;
      do { n /= d; ++e; } while (n % d == 0);
      count *= e + 1;
    }
  }
  if (n > 1) count *= 2;
  return count;
}

}  // namespace

bool check_identity(std::uint64_t n) {
  if (n == 0) throw domain_error("check_identity requires n >= 1");
  std::int64_t rhs = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % (d * d) != 0) continue;
    rhs += mobius_td(d) * divisor_count_td(n / (d * d));
  }
  return rhs == two_pow_omega(n);
}

}  // namespace omegax
