#include "omegax/zeros.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include "omegax/errors.hpp"
#include "omegax/zeta.hpp"

namespace omegax {

namespace {

// Shared validation for every ingestion path: cached tables get exactly the
// same scrutiny as text files.
ZeroTable validate_ordinates(const std::vector<double>& gammas) {
  if (gammas.empty())
    throw empty_table_error("zero table contains no ordinates");
  for (double g : gammas) {
    if (!std::isfinite(g) || g <= 0.0)
      throw invalid_ordinate_error("ordinate is not a positive finite value");
  }
  for (std::size_t i = 1; i < gammas.size(); ++i) {
    if (!(gammas[i] > gammas[i - 1]))
      throw order_error("ordinates must be strictly ascending (violated at index " +
                        std::to_string(i) + ")");
  }
  if (!(gammas.front() > 14.0 && gammas.front() < 14.2))
    throw invalid_ordinate_error(
        "first ordinate must lie in (14.0, 14.2); got " +
        std::to_string(gammas.front()));

  ZeroTable table;
  table.ordinates.reserve(gammas.size());
  for (double g : gammas) {
    const double residual = std::abs(zeta(std::complex<double>(0.5, g)).value());
    if (!(residual < 1e-6))
      throw invalid_ordinate_error(
          "|zeta(1/2 + i*" + std::to_string(g) + ")| = " +
          std::to_string(residual) + " fails the 1e-6 zero check");
    table.ordinates.push_back({g, ZeroSource::imported, residual});
  }
  return table;
}

}  // namespace

ZeroTable load_zeros(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open zero file: " + path.string());

  std::vector<double> gammas;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::size_t last = line.find_last_not_of(" \t");
    const char* begin = line.data() + first;
    const char* end = line.data() + last + 1;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
      throw parse_error("malformed ordinate '" +
                            std::string(begin, end) + "'",
                        line_no);
    if (!std::isfinite(value) || value <= 0.0)
      throw parse_error("ordinate must be a positive finite value", line_no);
    gammas.push_back(value);
  }
  return validate_ordinates(gammas);
}

ZeroOrdinate refine_zero(double gamma_approx) {
  if (!(gamma_approx > 0.0) || gamma_approx > 500.0)
    throw range_error("refine_zero supports ordinates in (0, 500]");

  // Sign bracket on a fixed grid around the estimate.
  constexpr double kHalfWidth = 0.05;
  constexpr int kGridSteps = 8;
  double a = 0.0, b = 0.0, za = 0.0, zb = 0.0;
  bool bracketed = false;
  double prev_t = gamma_approx - kHalfWidth;
  double prev_z = hardy_z(prev_t);
  for (int i = 1; i <= kGridSteps; ++i) {
    const double t = gamma_approx - kHalfWidth + i * (2.0 * kHalfWidth / kGridSteps);
    const double z = hardy_z(t);
    if (prev_z * z <= 0.0) {
      a = prev_t;
      b = t;
      za = prev_z;
      zb = z;
      bracketed = true;
      break;
    }
    prev_t = t;
    prev_z = z;
  }
  if (!bracketed)
    throw refinement_error("no Hardy-Z sign change within 0.05 of " +
                           std::to_string(gamma_approx));

  double best_t = std::abs(za) < std::abs(zb) ? a : b;
  double best_z = std::abs(za) < std::abs(zb) ? za : zb;
  for (int it = 0; it < 50 && std::abs(best_z) >= 1e-10; ++it) {
    double c = (zb != za) ? b - zb * (b - a) / (zb - za) : 0.5 * (a + b);
    if (!(c > std::min(a, b) && c < std::max(a, b))) c = 0.5 * (a + b);
    const double zc = hardy_z(c);
    if (std::abs(zc) < std::abs(best_z)) {
      best_t = c;
      best_z = zc;
    }
    if (za * zc <= 0.0) {
      b = c;
      zb = zc;
    } else {
      a = c;
      za = zc;
    }
    if (std::abs(b - a) < 1e-15 * std::max(1.0, std::abs(c))) break;
  }
  if (!(std::abs(best_z) < 1e-9))
    throw refinement_error("refinement stalled at |Z| = " +
                           std::to_string(std::abs(best_z)) + " near " +
                           std::to_string(gamma_approx));
  return {best_t, ZeroSource::refined, std::abs(best_z)};
}

ZeroTable refine_table(const ZeroTable& table) {
  ZeroTable out;
  out.ordinates.reserve(table.count());
  for (const ZeroOrdinate& z : table.ordinates)
    out.ordinates.push_back(refine_zero(z.gamma));
  for (std::size_t i = 1; i < out.ordinates.size(); ++i) {
    if (!(out.ordinates[i].gamma > out.ordinates[i - 1].gamma))
      throw order_error("refinement collapsed two ordinates near " +
                        std::to_string(out.ordinates[i].gamma));
  }
  return out;
}

std::size_t zero_count(const ZeroTable& table, double T) {
  if (T > table.max_gamma())
    throw coverage_error("count requested at T = " + std::to_string(T) +
                         " beyond table coverage " +
                         std::to_string(table.max_gamma()));
  const auto it = std::upper_bound(
      table.ordinates.begin(), table.ordinates.end(), T,
      [](double t, const ZeroOrdinate& z) { return t < z.gamma; });
  return static_cast<std::size_t>(it - table.ordinates.begin());
}

double rvm_count(double T) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return (T / two_pi) * std::log(T / (two_pi * std::numbers::e)) + 7.0 / 8.0;
}

namespace {

void append_u32_le(std::string& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i)
    buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void append_f64_le(std::string& buf, double d) {
  const auto v = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i)
    buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t read_le(const unsigned char* p, int bytes) {
  std::uint64_t v = 0;
  for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace

void cache_store(const ZeroTable& table, const std::filesystem::path& path) {
  std::string buf = "ZET1";
  append_u32_le(buf, static_cast<std::uint32_t>(table.count()));
  for (const ZeroOrdinate& z : table.ordinates) append_f64_le(buf, z.gamma);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw error("cannot open cache for writing: " + path.string());
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  out.flush();
  if (!out) throw error("cache write failed: " + path.string());
}

ZeroTable cache_load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open cache for reading: " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());

  if (data.size() < 4)
    throw cache_error("cache shorter than its 4-byte header",
                      cache_error::kind::truncation);
  if (data.compare(0, 3, "ZET") != 0)
    throw cache_error("bad cache magic (expected \"ZET\")",
                      cache_error::kind::format);
  if (data[3] != '1')
    throw cache_error("unsupported cache version byte", cache_error::kind::version);
  if (data.size() < 8)
    throw cache_error("cache truncated before the ordinate count",
                      cache_error::kind::truncation);

  const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
  const auto count = static_cast<std::uint32_t>(read_le(bytes + 4, 4));
  const std::size_t expected = 8 + std::size_t{8} * count;
  if (data.size() < expected)
    throw cache_error("cache payload truncated: expected " +
                          std::to_string(expected) + " bytes, have " +
                          std::to_string(data.size()),
                      cache_error::kind::truncation);
  if (data.size() > expected)
    throw cache_error("cache carries trailing bytes beyond its payload",
                      cache_error::kind::format);

  std::vector<double> gammas;
  gammas.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i)
    gammas.push_back(
        std::bit_cast<double>(read_le(bytes + 8 + std::size_t{8} * i, 8)));
  return validate_ordinates(gammas);
}

}  // namespace omegax
